from dataclasses import dataclass, field
from math import gcd

from loguru import logger

from floerhp.constants import NAR_ORDER, TREFOIL_LONGITUDE_EXPONENT
from floerhp.errors import NotCoprime, PositiveDimensional, UnreachableStratum
from floerhp.utils.enum import EnumFromInput
from floerhp.utils.log import log_and_raise
from floerhp.utils.math import divisors, totient


class Chirality(EnumFromInput):
    RIGHT = "R"
    LEFT = "L"


@dataclass(frozen=True)
class RootCountSpec:
    """
    Meridional eigenvalue equation M^N = rhs_sign on the unit circle, counted up to M <-> M^-1, with the classes of
    the listed multiplicative orders removed.

    Order 1 is M = 1, order 2 is M = -1, order 4 is trace 0 and order 12 is trace ±√3.
    """
    exponent: int
    rhs_sign: int
    excluded_orders: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.exponent < 0:
            log_and_raise(ValueError, f"Exponent must be nonnegative, got {self.exponent}")
        if self.rhs_sign not in (1, -1):
            log_and_raise(ValueError, f"Right-hand side must be ±1, got {self.rhs_sign}")
        if any(d < 1 for d in self.excluded_orders):
            log_and_raise(ValueError, f"Orders must be positive, got {sorted(self.excluded_orders)}")
        object.__setattr__(self, "excluded_orders", frozenset(self.excluded_orders))


def solution_orders(spec: RootCountSpec) -> list[int]:
    """
    Multiplicative orders d whose primitive d-th roots of unity solve the equation (all of them or none do).

    For rhs +1 these are the divisors of N. For rhs -1, a primitive d-th root solves M^N = -1 exactly when d | 2N
    and 2N/d is odd.

    Raises:
        PositiveDimensional: if N = 0 and rhs = +1.
    """
    n = spec.exponent
    if n == 0:
        if spec.rhs_sign == 1:
            log_and_raise(PositiveDimensional, "M^0 = 1 holds for every M; the solution set is not finite")
        return []
    if spec.rhs_sign == 1:
        return divisors(n)
    return [d for d in divisors(2 * n) if (2 * n // d) % 2 == 1]


def classes_of_order(d: int) -> int:
    """
    Number of classes {M, M^-1} among the primitive d-th roots of unity.
    """
    return 1 if d <= 2 else totient(d) // 2


def surviving_orders(spec: RootCountSpec) -> list[int]:
    return [d for d in solution_orders(spec) if d not in spec.excluded_orders]


def count_conjugacy_classes(spec: RootCountSpec) -> int:
    """
    Count the solutions of M^N = ±1 on the unit circle up to inversion, minus the classes of excluded orders.

    Solutions of M^N = 1 are the N-th roots of unity and of M^N = -1 the odd powers of a primitive 2N-th root; both
    sets have N elements. The fixed points of inversion are M = ±1, so the class count is (N - fixed)/2 + fixed.

    Args:
        spec: the equation and exclusions.

    Returns:
        the number of surviving classes.

    Raises:
        PositiveDimensional: if N = 0 and rhs = +1.
    """
    orders = solution_orders(spec)
    n = spec.exponent
    fixed = sum(1 for d in orders if d <= 2)
    total = (n - fixed) // 2 + fixed
    removed = sum(classes_of_order(d) for d in orders if d in spec.excluded_orders)
    return total - removed


def trefoil_spec(p: int, q: int, chirality: Chirality | str, exclude_nar: bool = True) -> RootCountSpec:
    """
    Eigenvalue equation of the irreducible characters of p/q surgery on a trefoil: M^{p ∓ 6q} = (-1)^q, minus for
    the right-handed and plus for the left-handed trefoil.

    Raises:
        NotCoprime: if gcd(|p|, q) ≠ 1.
    """
    if q < 1 or gcd(abs(p), q) != 1:
        log_and_raise(NotCoprime, f"Slope {p}/{q} is not reduced")
    chirality = Chirality.from_input(chirality)
    shift = TREFOIL_LONGITUDE_EXPONENT * q
    exponent = abs(p - shift) if chirality == Chirality.RIGHT else abs(p + shift)
    excluded = {1, 2} | ({NAR_ORDER} if exclude_nar else set())
    return RootCountSpec(exponent, (-1) ** q, frozenset(excluded))


def trefoil_surgery_count(p: int, q: int, chirality: Chirality | str, exclude_nar: bool = True) -> int:
    """
    Number of irreducible characters of p/q surgery on a trefoil, counted with the root oracle.

    Args:
        p: surgery numerator.
        q: surgery denominator, coprime to p.
        chirality: R or L.
        exclude_nar: remove the order-12 classes (trace ±√3), which are characters of non-abelian reducibles.

    Returns:
        the count.

    Raises:
        NotCoprime: if gcd(|p|, q) ≠ 1.
        UnreachableStratum: if the equation degenerates to M^0 = 1, which coprimality rules out.
    """
    spec = trefoil_spec(p, q, chirality, exclude_nar)
    try:
        count = count_conjugacy_classes(spec)
    except PositiveDimensional:
        log_and_raise(UnreachableStratum, f"Trefoil equation degenerated at {p}/{q}, impossible for a reduced slope")
    logger.debug(f"trefoil {Chirality.from_input(chirality).value} {p}/{q}: N={spec.exponent}, "
                 f"rhs={spec.rhs_sign}, count={count}")
    return count
