from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from loguru import logger
from typing_extensions import Self

from floerhp.constants import DEFAULT_PROTECTED_WINDOW, GRANNY_SURFACE_SLOPE, NAR_ORDER, SQUARE_SURFACE_SLOPE
from floerhp.errors import InconsistencyError, UnsupportedDegree, ZeroSurgeryCoefficient
from floerhp.models.casson import admissibility_failure, casson_invariant, casson_knot_invariant, check_admissible, \
    two_bridge_rank
from floerhp.models.census import ComponentCensus, ComponentType, Family, family_census
from floerhp.models.graded import Coefficients, GradedGroup, SpaceType, cohomology, direct_sum
from floerhp.models.knot import KnotRecord
from floerhp.models.polys import TREFOIL_LEFT_SUMMAND, TREFOIL_RIGHT_SUMMAND, FactoredAPoly, SummandSpec, \
    coincident_surgery_slope, compose_connected_sum
from floerhp.models.slope import Slope
from floerhp.utils.enum import EnumFromInput
from floerhp.utils.log import log_and_raise
from floerhp.utils.math import require_nonnegative_integer


class ContributionTable:
    """
    F2 cohomology, shifted into HP degrees, contributed by each component type of a character scheme.
    """
    def __init__(self, rows: Mapping[ComponentType, GradedGroup]):
        missing = set(ComponentType) - set(rows)
        if missing:
            log_and_raise(ValueError, f"Contribution table misses {sorted(c.value for c in missing)}")
        for component, group in rows.items():
            if group.coeff != Coefficients.F2:
                log_and_raise(ValueError, f"Contribution of {component.value} must be over F2")
        self._rows = MappingProxyType(dict(rows))

    @property
    def rows(self) -> Mapping[ComponentType, GradedGroup]:
        return self._rows

    def __getitem__(self, component: ComponentType) -> GradedGroup:
        return self._rows[component]

    def euler_characteristics(self) -> dict[ComponentType, int]:
        return {component: group.euler_characteristic() for component, group in self._rows.items()}

    def with_row(self, component: ComponentType, group: GradedGroup) -> Self:
        rows = dict(self._rows)
        rows[component] = group
        return ContributionTable(rows)


# Placements fitted to the granny closed form in all four cases. H*(C*) is symmetric, so the C* minus a point row
# is not a uniform shift of its cohomology.
DEFAULT_CONTRIBUTIONS = ContributionTable({
    ComponentType.POINT: GradedGroup(Coefficients.F2, {0: 1}),
    ComponentType.CSTAR: GradedGroup(Coefficients.F2, {0: 1, -1: 1}),
    ComponentType.CSTAR_MINUS_POINT: GradedGroup(Coefficients.F2, {0: 1, -1: 2}),
    ComponentType.SURFACE_S: cohomology(SpaceType.SURFACE_S, Coefficients.F2).shift(2),
})


def hp_from_census(c: ComponentCensus, table: ContributionTable = DEFAULT_CONTRIBUTIONS) -> GradedGroup:
    """
    HP(Y; F2) of a smooth character scheme, as the direct sum of the contributions of its components.

    Args:
        c: the component census.
        table: contribution of each component type.

    Returns:
        the assembled F2 group.
    """
    return direct_sum(
        *(table[component].scale(count) for component, count in c.counts.items()),
        coeff=Coefficients.F2
    )


class ClosedFormCase(EnumFromInput):
    ODD = "odd"
    EVEN = "even"
    MULTIPLE_OF_12 = "multiple_of_12"
    SURFACE = "surface"


@dataclass(frozen=True)
class RankFormula:
    """
    Rank Σ coeff·|a·q - b·p| + constant, one term per (coeff, a, b).
    """
    terms: tuple[tuple[Fraction, int, int], ...]
    constant: Fraction

    def evaluate(self, s: Slope) -> Fraction:
        return sum((c * abs(a * s.q - b * s.p) for c, a, b in self.terms), Fraction(0)) + self.constant

    def q_slope(self) -> Fraction:
        """
        Coefficient of q once q is large enough that no term changes sign.
        """
        return sum((c * abs(a) for c, a, _ in self.terms), Fraction(0))

    def q_intercept(self, p: int) -> Fraction:
        """
        Constant part, for fixed p, of the formula once it is linear in q.
        """
        total = self.constant
        for c, a, b in self.terms:
            if a == 0:
                total += c * abs(b * p)
            else:
                total -= c * (1 if a > 0 else -1) * b * p
        return total


_HALF = Fraction(1, 2)
_GRANNY_TERMS = ((Fraction(1), 6, 1), (_HALF, 12, 1))
_GRANNY_PAIR_TERMS = ((_HALF, 12, 1),)
_SQUARE_TERMS = ((_HALF, 6, 1), (_HALF, 6, -1), (_HALF, 0, 1))
_SQUARE_PAIR_TERMS = ((_HALF, 0, 1),)

CLOSED_FORMS: Mapping[Family, Mapping[ClosedFormCase, Mapping[int, RankFormula]]] = MappingProxyType({
    Family.GRANNY: {
        ClosedFormCase.ODD: {
            0: RankFormula(_GRANNY_TERMS, Fraction(-3, 2)), -1: RankFormula(_GRANNY_PAIR_TERMS, Fraction(-1, 2))},
        ClosedFormCase.EVEN: {
            0: RankFormula(_GRANNY_TERMS, Fraction(-1)), -1: RankFormula(_GRANNY_PAIR_TERMS, Fraction(-1))},
        ClosedFormCase.MULTIPLE_OF_12: {
            0: RankFormula(_GRANNY_TERMS, Fraction(-5)), -1: RankFormula(_GRANNY_PAIR_TERMS, Fraction(1))},
    },
    Family.SQUARE: {
        ClosedFormCase.ODD: {
            0: RankFormula(_SQUARE_TERMS, Fraction(-3, 2)), -1: RankFormula(_SQUARE_PAIR_TERMS, Fraction(-1, 2))},
        ClosedFormCase.EVEN: {
            0: RankFormula(_SQUARE_TERMS, Fraction(-1)), -1: RankFormula(_SQUARE_PAIR_TERMS, Fraction(-1))},
        ClosedFormCase.MULTIPLE_OF_12: {
            0: RankFormula(_SQUARE_TERMS, Fraction(-5)), -1: RankFormula(_SQUARE_PAIR_TERMS, Fraction(3))},
    },
})

SURFACE_CASE_GROUP = GradedGroup(Coefficients.F2, {1: 4, 0: 4, -2: 1})


def closed_form_case(family: Family | str, s: Slope) -> ClosedFormCase:
    family = Family.from_input(family)
    surface = s.p == 12 * s.q if family == Family.GRANNY else s.p == 0
    if surface:
        return ClosedFormCase.SURFACE
    if s.sigma:
        return ClosedFormCase.ODD
    if s.p % NAR_ORDER == 0:
        return ClosedFormCase.MULTIPLE_OF_12
    return ClosedFormCase.EVEN


def hp_closed_form(family: Family | str, s: Slope) -> GradedGroup:
    """
    HP(Y; F2) of p/q surgery on the granny or square knot from the four-case closed form.

    Raises:
        NonIntegerResult: if a rank comes out non-integral or negative.
    """
    family = Family.from_input(family)
    case = closed_form_case(family, s)
    if case == ClosedFormCase.SURFACE:
        return SURFACE_CASE_GROUP
    ranks = {
        degree: require_nonnegative_integer(formula.evaluate(s), f"{family.value} degree {degree} rank at {s}")
        for degree, formula in CLOSED_FORMS[family][case].items()
    }
    return GradedGroup(Coefficients.F2, ranks)


def hp_granny(s: Slope) -> GradedGroup:
    """
    HP(S³_{p/q}(3₁#3₁); F2):

    - p odd: F^{|6q-p| + ½|12q-p| - 3/2} in degree 0, F^{½|12q-p| - ½} in degree -1;
    - p even, 12 ∤ p: the same with constants -1 and -1;
    - 12 | p, p/q ≠ 12: constants -5 and +1;
    - p/q = 12: F⁴ in degree 1, F⁴ in degree 0, F in degree -2.
    """
    return hp_closed_form(Family.GRANNY, s)


def hp_square(s: Slope) -> GradedGroup:
    """
    HP(S³_{p/q}(3₁#3₁*); F2): degree 0 rank ½|6q-p| + ½|6q+p| + ½|p| + c₀ and degree -1 rank ½|p| + c₋₁, with
    (c₀, c₋₁) = (-3/2, -½) for p odd, (-1, -1) for p even not divisible by 12, (-5, +3) for 12 | p ≠ 0, and
    F⁴ ⊕ F⁴ ⊕ F in degrees 1, 0, -2 for p = 0.
    """
    return hp_closed_form(Family.SQUARE, s)


def expected_discrepancy(family: Family | str, s: Slope) -> dict[int, int]:
    """
    Known gap between the census assembly and the square-knot closed form: for 12 | p ≠ 0 the closed form's degree
    -1 rank exceeds the assembled one by 2.
    """
    if Family.from_input(family) == Family.SQUARE and s.p != 0 and s.p % NAR_ORDER == 0:
        return {-1: -2}
    return {}


@dataclass
class ConsistencyReport:
    """
    Closed-form HP next to the census assembly, with the per-degree rank difference assembled - closed.
    """
    family: Family
    slope: Slope
    closed: GradedGroup
    assembled: GradedGroup
    delta: dict[int, int] = field(default_factory=dict)

    def nonzero_delta(self) -> dict[int, int]:
        return {degree: d for degree, d in self.delta.items() if d != 0}

    def is_consistent(self) -> bool:
        return not self.nonzero_delta()

    def matches_expectation(self) -> bool:
        return self.nonzero_delta() == expected_discrepancy(self.family, self.slope)

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "slope": str(self.slope),
            "closed": self.closed.to_dict(),
            "assembled": self.assembled.to_dict(),
            "delta": {str(degree): self.delta[degree] for degree in sorted(self.delta, reverse=True)},
        }


def hp_consistency(
        family: Family | str,
        s: Slope,
        table: ContributionTable = DEFAULT_CONTRIBUTIONS
) -> ConsistencyReport:
    """
    Compare the closed form with the census assembled through the contribution table.

    Args:
        family: granny or square.
        s: the slope.
        table: contribution table used for the assembly.

    Returns:
        the report; `delta` covers every degree supported by either group.
    """
    family = Family.from_input(family)
    closed = hp_closed_form(family, s)
    assembled = hp_from_census(family_census(family, s), table)
    degrees = set(closed.degrees) | set(assembled.degrees)
    delta = {degree: assembled.rank_at(degree) - closed.rank_at(degree) for degree in degrees}
    report = ConsistencyReport(family, s, closed, assembled, delta)
    logger.debug(f"consistency {family.value} {s}: delta {report.nonzero_delta()}")
    return report


@dataclass(frozen=True)
class AbelianCensus:
    """
    Abelian representations of a surgery with H₁ = Z/p: central points and conjugation orbits (copies of TCP¹) of
    non-central ones.
    """
    central: int
    noncentral_orbits: int


def abelian_census(s: Slope) -> AbelianCensus:
    """
    Count abelian representations of p/q surgery: 2 - σ(p) central ones and ½(|p| - 2 + σ(p)) orbits of the rest,
    one per class {ζ, ζ⁻¹} of p-th roots of unity other than ±1.

    Raises:
        ZeroSurgeryCoefficient: if p = 0.
        NonIntegerResult: if the orbit count is not a nonnegative integer.
    """
    if s.p == 0:
        log_and_raise(ZeroSurgeryCoefficient, "Abelian representations of 0-surgery are not isolated")
    orbits = require_nonnegative_integer(Fraction(abs(s.p) - 2 + s.sigma, 2), f"abelian orbit count at {s}")
    return AbelianCensus(2 - s.sigma, orbits)


def hp_sharp(k: KnotRecord, s: Slope) -> GradedGroup:
    """
    Framed Floer cohomology HP#(Y) over Z for a surgery whose character scheme is zero-dimensional, smooth and free
    of non-abelian reducibles:

    H*(pt)^{2-σ} ⊕ H^{*+2}(CP¹)^{½(|p|-2+σ)} ⊕ H^{*+3}(PSL(2,C))^λ.

    For two-bridge records λ is the two-bridge rank, which equals the Casson invariant since ingest enforces E0 = 0
    and E1 = (α-1)/4, and only the boundary-slope and Alexander hypotheses are checked. Otherwise λ is the Casson
    invariant under full admissibility.

    Raises:
        NonAdmissible: if a hypothesis fails.
        NonIntegerResult: if a multiplicity is not a nonnegative integer.
    """
    if k.two_bridge is not None:
        check_admissible(k, s, check_irregular=False)
        casson = two_bridge_rank(k, s)
    else:
        casson = casson_invariant(k, s)
    abelian = abelian_census(s)
    return direct_sum(
        cohomology(SpaceType.POINT).scale(abelian.central),
        cohomology(SpaceType.TCP1).shift(2).scale(abelian.noncentral_orbits),
        cohomology(SpaceType.PSL2C).shift(3).scale(casson),
    )


def hp_sharp_defined(k: KnotRecord, s: Slope) -> bool:
    """
    Whether the hypotheses of :func:`hp_sharp` hold at s, tested without logging a failure.
    """
    return s.p != 0 and admissibility_failure(k, s, check_irregular=k.two_bridge is None) is None


@dataclass(frozen=True)
class TriangleVerdict:
    """
    Outcome of the rank test a surgery exact triangle would impose.
    """
    compatible: bool
    obstruction_degrees: frozenset[int]

    def to_dict(self) -> dict:
        return {
            "compatible": self.compatible,
            "obstruction_degrees": sorted(self.obstruction_degrees, reverse=True),
        }


def triangle_check(
        g_low: GradedGroup,
        g_high: GradedGroup,
        protected: Iterable[int] = DEFAULT_PROTECTED_WINDOW
) -> TriangleVerdict:
    """
    Necessary condition for an exact triangle HP#(S³)[1] -> HP#(S³_{p+1}) -> HP#(S³_p) -> HP#(S³): the two groups
    must have equal ranks outside the protected degrees.

    Args:
        g_low: first group.
        g_high: second group.
        protected: degrees excluded from the comparison.

    Returns:
        the verdict, with the degrees where the ranks differ.

    Raises:
        CoefficientMismatch: if the coefficient tags differ.
    """
    g_low._check_same_coeff(g_high)
    protected = set(protected)
    degrees = (set(g_low.degrees) | set(g_high.degrees)) - protected
    obstructions = frozenset(d for d in degrees if g_low.rank_at(d) != g_high.rank_at(d))
    return TriangleVerdict(not obstructions, obstructions)


def consecutive_triangle_sweep(
        k: KnotRecord,
        p_values: Iterable[int],
        protected: Iterable[int] = DEFAULT_PROTECTED_WINDOW
) -> list[tuple[int, TriangleVerdict]]:
    """
    Apply :func:`triangle_check` to HP# of p and p+1 surgery for every p whose two surgeries satisfy the hypotheses
    of :func:`hp_sharp`; other values are skipped.
    """
    protected = tuple(protected)
    verdicts = []
    for p in p_values:
        low, high = Slope(p), Slope(p + 1)
        if not (hp_sharp_defined(k, low) and hp_sharp_defined(k, high)):
            logger.debug(f"triangle sweep {k.name}: skipping {p}, {p + 1}")
            continue
        verdicts.append((p, triangle_check(hp_sharp(k, low), hp_sharp(k, high), protected)))
    logger.info(f"triangle sweep {k.name}: {len(verdicts)} pair(s) evaluated, "
                f"{sum(1 for _, v in verdicts if not v.compatible)} obstructed")
    return verdicts


def generic_case(p: int) -> ClosedFormCase:
    """
    Closed-form case valid for all large q coprime to a fixed nonzero p.
    """
    if p == 0:
        log_and_raise(ZeroSurgeryCoefficient, "Limits in q need a fixed nonzero p")
    if p % 2:
        return ClosedFormCase.ODD
    return ClosedFormCase.MULTIPLE_OF_12 if p % NAR_ORDER == 0 else ClosedFormCase.EVEN


def _limit_formula(family: Family | str, degree: int, p: int) -> RankFormula:
    family = Family.from_input(family)
    formulas = CLOSED_FORMS[family][generic_case(p)]
    if degree not in formulas:
        log_and_raise(UnsupportedDegree, f"Limits are available in degrees 0 and -1, got {degree}")
    return formulas[degree]


def limit_rank(family: Family | str, degree: int, p: int) -> Fraction:
    """
    lim_{q→∞} rk HP^degree(S³_{p/q}(K)) / q for the granny or square knot.

    Raises:
        UnsupportedDegree: outside degrees 0 and -1.
        ZeroSurgeryCoefficient: if p = 0.
    """
    return _limit_formula(family, degree, p).q_slope()


def limit_intercept(family: Family | str, degree: int, p: int) -> Fraction:
    """
    Constant term c with rk HP^degree = limit·q + c for all large q, so rank/q deviates from the limit by |c|/q.
    """
    return _limit_formula(family, degree, p).q_intercept(p)


_SHARP_LIMIT_DEGREES = {0: True, -1: False, -2: False, -3: True}


def limit_rank_sharp(k: KnotRecord, degree: int, p: int) -> Fraction:
    """
    lim_{q→∞} rk HP#^degree(S³_{p/q}(K)) / q. Degrees 0 and -3 grow with λ; the CP¹ block in degree -2 and the
    torsion in degree -1 do not depend on q.

    Raises:
        UnsupportedDegree: outside degrees 0, -1, -2, -3.
        ZeroSurgeryCoefficient: if p = 0.
    """
    if p == 0:
        log_and_raise(ZeroSurgeryCoefficient, "Limits in q need a fixed nonzero p")
    if degree not in _SHARP_LIMIT_DEGREES:
        log_and_raise(UnsupportedDegree, f"HP# limits are available in degrees 0 to -3, got {degree}")
    return casson_knot_invariant(k) if _SHARP_LIMIT_DEGREES[degree] else Fraction(0)


FAMILY_SUMMANDS: Mapping[Family, tuple[SummandSpec, SummandSpec]] = MappingProxyType({
    Family.GRANNY: (TREFOIL_RIGHT_SUMMAND, TREFOIL_RIGHT_SUMMAND),
    Family.SQUARE: (TREFOIL_RIGHT_SUMMAND, TREFOIL_LEFT_SUMMAND),
})


def family_apoly(family: Family | str) -> FactoredAPoly:
    """
    Factored A-polynomial of the granny (3₁#3₁) or square (3₁#3₁*) knot.
    """
    return compose_connected_sum(FAMILY_SUMMANDS[Family.from_input(family)])


def surface_slope(family: Family | str) -> Slope:
    """
    Slope at which the cubic-surface stratum survives, read off the composite A-polynomial factor.
    """
    family = Family.from_input(family)
    slope = coincident_surgery_slope(family_apoly(family).irreducible[-1])
    expected = Slope(*(GRANNY_SURFACE_SLOPE if family == Family.GRANNY else SQUARE_SURFACE_SLOPE))
    if slope != expected:
        log_and_raise(InconsistencyError, f"{family.value}: composite factor gives {slope}, expected {expected}")
    return slope
