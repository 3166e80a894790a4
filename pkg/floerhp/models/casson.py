from fractions import Fraction

from loguru import logger

from floerhp.errors import NonAdmissible, NotSmallKnot, NotTwoBridge
from floerhp.models.graded import Coefficients, GradedGroup
from floerhp.models.knot import KnotRecord, SeminormSpec
from floerhp.models.polys import alexander_condition
from floerhp.models.slope import Slope
from floerhp.utils.log import log_and_raise
from floerhp.utils.math import require_nonnegative_integer


def total_seminorm(spec: SeminormSpec, s: Slope) -> Fraction:
    """
    Total Culler-Shalen seminorm ‖p/q‖_T of a slope.

    Args:
        spec: the seminorm data.
        s: the slope.

    Returns:
        Σ coeff·|p·b - q·a| over the entries, as an exact rational.
    """
    return spec.total(s)


def admissibility_failure(k: KnotRecord, s: Slope, check_irregular: bool = True) -> str | None:
    """
    First reason a surgery slope fails admissibility, or None when it is admissible. Nothing is logged.

    Raises:
        ZeroSurgeryCoefficient: if p = 0 reaches the Alexander test.
    """
    fraction = s.as_fraction()
    if fraction in k.boundary_slopes:
        return NonAdmissible.BOUNDARY_SLOPE
    if check_irregular and fraction in k.irregular_slopes:
        return NonAdmissible.IRREGULAR_SLOPE
    if not alexander_condition(k.alexander, s.p):
        return NonAdmissible.ALEXANDER_ROOT
    return None


def check_admissible(k: KnotRecord, s: Slope, check_irregular: bool = True):
    """
    Admissibility of a surgery slope: not a boundary slope, regular (when checked), and no p'-th root of unity is a
    root of the Alexander polynomial.

    Raises:
        NonAdmissible: with the first failing reason.
        ZeroSurgeryCoefficient: if p = 0 reaches the Alexander test.
    """
    reason = admissibility_failure(k, s, check_irregular)
    if reason == NonAdmissible.BOUNDARY_SLOPE:
        log_and_raise(NonAdmissible, f"{s} is a boundary slope of {k.name}", reason=reason)
    elif reason == NonAdmissible.IRREGULAR_SLOPE:
        log_and_raise(NonAdmissible, f"{s} is an irregular slope of {k.name}", reason=reason)
    elif reason == NonAdmissible.ALEXANDER_ROOT:
        msg = f"a {s.p_prime}-th root of unity is a root of the Alexander polynomial of {k.name}"
        log_and_raise(NonAdmissible, msg, reason=reason)


def casson_invariant(k: KnotRecord, s: Slope) -> int:
    """
    SL(2,C) Casson invariant of p/q surgery: ½‖p/q‖_T - E_σ(p).

    Args:
        k: the knot.
        s: an admissible slope.

    Returns:
        the invariant, an exact nonnegative integer.

    Raises:
        NonAdmissible: if the slope is not admissible.
        NonIntegerResult: if the knot data yield a non-integral or negative value.
    """
    check_admissible(k, s)
    value = total_seminorm(k.seminorm, s) / 2 - k.correction(s.sigma)
    result = require_nonnegative_integer(value, f"Casson invariant of {k.name} at {s}")
    logger.debug(f"λ({k.name}, {s}) = {result}")
    return result


def hp_small_knot(k: KnotRecord, s: Slope) -> GradedGroup:
    """
    HP of surgery on a small knot away from its boundary slopes: Z^λ in degree 0.

    Raises:
        NotSmallKnot: if the record is not flagged small.
        NonAdmissible: propagated from the Casson invariant.
    """
    if not k.small:
        log_and_raise(NotSmallKnot, f"{k.name} is not a small knot")
    return GradedGroup(Coefficients.INTEGERS, {0: casson_invariant(k, s)})


def two_bridge_rank(k: KnotRecord, s: Slope) -> int:
    """
    Degree-0 rank of HP for surgery on a two-bridge knot K(α, β): ½‖p/q‖_T for p even and ½‖p/q‖_T - (α-1)/4 for
    p odd. Only the boundary-slope and Alexander hypotheses are checked.

    Raises:
        NotTwoBridge: if the record has no two-bridge parameters.
        NonAdmissible: if a hypothesis fails.
        NonIntegerResult: if the value is not a nonnegative integer.
    """
    if k.two_bridge is None:
        log_and_raise(NotTwoBridge, f"{k.name} is not a two-bridge knot")
    check_admissible(k, s, check_irregular=False)
    alpha, _ = k.two_bridge
    value = total_seminorm(k.seminorm, s) / 2 - s.sigma * Fraction(alpha - 1, 4)
    return require_nonnegative_integer(value, f"two-bridge rank of {k.name} at {s}")


def hp_two_bridge(k: KnotRecord, s: Slope) -> GradedGroup:
    return GradedGroup(Coefficients.INTEGERS, {0: two_bridge_rank(k, s)})


def casson_knot_invariant(k: KnotRecord) -> Fraction:
    """
    Limit of λ(S³_{p/q}(K))/q as q grows with p fixed: ½ Σ coeff·|a| over the seminorm entries. It does not depend
    on p.
    """
    return sum((e.coeff * abs(e.a) for e in k.seminorm.entries), Fraction(0)) / 2


def seminorm_unverified(k: KnotRecord) -> bool:
    """
    Whether the knot's seminorm and correction data have no independent check. Only the built-in trefoils are
    cross-checked against the root-counting oracle.
    """
    return not k.is_builtin()
