"""Counting smooth numbers: exact psi(x, y), Dickman rho, lattice-simplex
sandwiches, the F/G weighted lattice sums, and iterated-log bounds."""

from .errors import BoundaryError, DomainError, OutOfRangeError, ResourceError, SmoothBoundError
from .logvalue import LogValue
from .primes import PrimeTable, build_prime_table
from .smooth import Convention, SmoothQuery, psi, psi_naive, psi_recursive

__version__ = "0.1.0"
