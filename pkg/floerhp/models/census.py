from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

from loguru import logger
from typing_extensions import Self

from floerhp.constants import GRANNY_SURFACE_SLOPE, NAR_ORDER, SQUARE_SURFACE_SLOPE
from floerhp.errors import UnreachableStratum
from floerhp.models.roots import Chirality, RootCountSpec, count_conjugacy_classes, surviving_orders, \
    trefoil_surgery_count
from floerhp.models.slope import Slope
from floerhp.utils.enum import EnumFromInput
from floerhp.utils.log import log_and_raise


class Family(EnumFromInput):
    GRANNY = "granny"
    SQUARE = "square"


class ComponentType(EnumFromInput):
    POINT = "Point"
    CSTAR = "Cstar"
    CSTAR_MINUS_POINT = "CstarMinusPoint"
    SURFACE_S = "SurfaceS"

    @property
    def dimension(self) -> int:
        """
        Complex dimension of the component.
        """
        return _COMPONENT_DIMENSIONS[self]

    @property
    def json_key(self) -> str:
        return _JSON_KEYS[self]


_COMPONENT_DIMENSIONS = {
    ComponentType.POINT: 0,
    ComponentType.CSTAR: 1,
    ComponentType.CSTAR_MINUS_POINT: 1,
    ComponentType.SURFACE_S: 2,
}

_JSON_KEYS = {
    ComponentType.POINT: "point",
    ComponentType.CSTAR: "cstar",
    ComponentType.CSTAR_MINUS_POINT: "cstar_minus_point",
    ComponentType.SURFACE_S: "surface_s",
}

# Zariski tangent dimension at points of each stratum of a surgery character scheme. Each equals the component
# dimension, so every census component is smooth.
TANGENT_DIMENSIONS: Mapping[ComponentType, int] = MappingProxyType({
    ComponentType.SURFACE_S: 2,  # both restrictions irreducible, surgery curve tangent to the A-polynomial locus
    ComponentType.CSTAR: 1,  # both restrictions irreducible
    ComponentType.CSTAR_MINUS_POINT: 1,  # both restrictions irreducible
    ComponentType.POINT: 0,  # one restriction abelian
})


class ComponentCensus:
    """
    Multiset of component types of the irreducible character scheme of a surgery.
    """
    def __init__(self, counts: Mapping[ComponentType | str, int] = None):
        self._counts = {component: 0 for component in ComponentType}
        for component, count in (counts or {}).items():
            if not isinstance(count, int) or count < 0:
                log_and_raise(ValueError, f"Invalid count {count} for {component}")
            self._counts[ComponentType.from_input(component)] += count
        surface = self._counts[ComponentType.SURFACE_S]
        if surface not in (0, 1):
            log_and_raise(ValueError, f"At most one cubic-surface component, got {surface}")
        if surface and (self._counts[ComponentType.CSTAR] or self._counts[ComponentType.CSTAR_MINUS_POINT]):
            log_and_raise(ValueError, "The cubic-surface component only coexists with isolated points")

    @classmethod
    def from_dict(cls, data: dict) -> Self:
        by_key = {component.json_key: component for component in ComponentType}
        return cls({by_key[key]: value for key, value in data.items()})

    @property
    def counts(self) -> dict[ComponentType, int]:
        return dict(self._counts)

    def count(self, component: ComponentType | str) -> int:
        return self._counts[ComponentType.from_input(component)]

    def to_dict(self) -> dict:
        return {component.json_key: count for component, count in self._counts.items()}

    def __eq__(self, other):
        if not isinstance(other, ComponentCensus):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self):
        return hash(tuple(self._counts.items()))

    def __repr__(self):
        inner = ", ".join(f"{c.value}: {n}" for c, n in self._counts.items() if n)
        return f"ComponentCensus({{{inner}}})"


def _pair_classes(spec: RootCountSpec, context: str) -> int:
    # Surviving order-1/2 classes would be fibers isomorphic to C inside the irr x irr stratum
    unreachable = {1, 2} & set(surviving_orders(spec))
    if unreachable:
        log_and_raise(UnreachableStratum, f"{context}: classes of order {sorted(unreachable)} survived")
    return count_conjugacy_classes(spec)


def _pair_exclusions(p: int) -> frozenset[int]:
    return frozenset({1, 2} | ({NAR_ORDER} if p % NAR_ORDER == 0 else set()))


def granny_census(s: Slope) -> ComponentCensus:
    """
    Components of the irreducible character scheme of p/q surgery on the granny knot.

    Characters abelian on one summand give isolated points, one copy per trefoil factor. Characters irreducible on
    both summands satisfy M^{p-12q} = 1 and contribute one C* per meridional class, two C* minus a point when
    12 | p, and the cubic surface at 12/1.

    Args:
        s: the surgery slope.

    Returns:
        the census.
    """
    p, q = s.p, s.q
    points = 2 * trefoil_surgery_count(p, q, Chirality.RIGHT, True)
    if p == 12 * q:
        if (p, q) != GRANNY_SURFACE_SLOPE:
            log_and_raise(UnreachableStratum, f"Cubic-surface slope {s} is not reduced")
        return ComponentCensus({ComponentType.POINT: points, ComponentType.SURFACE_S: 1})
    spec = RootCountSpec(abs(p - 12 * q), 1, _pair_exclusions(p))
    census = ComponentCensus({
        ComponentType.POINT: points,
        ComponentType.CSTAR: _pair_classes(spec, f"granny {s}"),
        ComponentType.CSTAR_MINUS_POINT: 2 if p % NAR_ORDER == 0 else 0,
    })
    logger.debug(f"granny census {s}: {census}")
    return census


def square_census(s: Slope) -> ComponentCensus:
    """
    Components of the irreducible character scheme of p/q surgery on the square knot. The irr x irr stratum
    satisfies M^p = 1; the cubic surface appears at 0/1.

    Args:
        s: the surgery slope.

    Returns:
        the census.
    """
    p, q = s.p, s.q
    points = trefoil_surgery_count(p, q, Chirality.RIGHT, True) + trefoil_surgery_count(p, q, Chirality.LEFT, True)
    if p == 0:
        if (p, q) != SQUARE_SURFACE_SLOPE:
            log_and_raise(UnreachableStratum, f"Cubic-surface slope {s} is not reduced")
        return ComponentCensus({ComponentType.POINT: points, ComponentType.SURFACE_S: 1})
    spec = RootCountSpec(abs(p), 1, _pair_exclusions(p))
    census = ComponentCensus({
        ComponentType.POINT: points,
        ComponentType.CSTAR: _pair_classes(spec, f"square {s}"),
        ComponentType.CSTAR_MINUS_POINT: 2 if p % NAR_ORDER == 0 else 0,
    })
    logger.debug(f"square census {s}: {census}")
    return census


def family_census(family: Family | str, s: Slope) -> ComponentCensus:
    family = Family.from_input(family)
    return granny_census(s) if family == Family.GRANNY else square_census(s)


class QuadExt:
    """
    Exact element a + b√3 of Q(√3).
    """
    def __init__(self, a: Fraction | int = 0, b: Fraction | int = 0):
        self._a = Fraction(a)
        self._b = Fraction(b)

    @classmethod
    def sqrt3(cls) -> Self:
        return cls(0, 1)

    @property
    def a(self) -> Fraction:
        """
        Rational part.
        """
        return self._a

    @property
    def b(self) -> Fraction:
        """
        Coefficient of √3.
        """
        return self._b

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def conjugate(self) -> Self:
        return QuadExt(self._a, -self._b)

    @staticmethod
    def _coerce(value) -> "QuadExt":
        if isinstance(value, QuadExt):
            return value
        if isinstance(value, (int, Fraction)):
            return QuadExt(value)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadExt(self._a + other._a, self._b + other._b)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self._a, -self._b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadExt(self._a - other._a, self._b - other._b)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadExt(self._a * other._a + 3 * self._b * other._b, self._a * other._b + self._b * other._a)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = QuadExt(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._a == other._a and self._b == other._b

    def __hash__(self):
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b))

    def __repr__(self):
        return f"QuadExt({self._a}, {self._b})"

    def __str__(self):
        if self._b == 0:
            return str(self._a)
        return f"{self._a} + {self._b}*sqrt(3)"


class CubicPointKind(EnumFromInput):
    SMOOTH = "Smooth"
    SINGULAR = "Singular"
    NOT_ON_SURFACE = "NotOnSurface"


def cubic_surface(x, y, z):
    """
    f = x² + y² + z² + xyz - z - 2, the cubic surface of characters irreducible on both trefoil summands of the
    granny knot exterior.
    """
    return x * x + y * y + z * z + x * y * z - z - 2


def cubic_gradient(x, y, z) -> tuple:
    return 2 * x + y * z, 2 * y + x * z, 2 * z + x * y - 1


def verify_cubic_point(x: QuadExt, y: QuadExt, z: QuadExt) -> CubicPointKind:
    """
    Classify a point of Q(√3)³ against the cubic surface, exactly.

    Returns:
        Singular if f and its three partials vanish, Smooth if f vanishes but some partial does not, NotOnSurface
        otherwise.
    """
    x, y, z = (QuadExt._coerce(v) for v in (x, y, z))
    if not cubic_surface(x, y, z).is_zero():
        return CubicPointKind.NOT_ON_SURFACE
    if all(partial.is_zero() for partial in cubic_gradient(x, y, z)):
        return CubicPointKind.SINGULAR
    return CubicPointKind.SMOOTH


def trefoil_character_curve(x, y):
    """
    Defining polynomial of the trefoil character scheme: y = 2 is the reducible line, x² - y = 1 the irreducible
    curve.
    """
    return (y - 2) * (x * x - y - 1)


def longitude_trace(x, y):
    """
    Trace of the longitude on the trefoil character curve (y - 2)(x² - y - 1) = 0, where x is the trace of either
    Wirtinger generator and y the trace of r·s⁻¹:

    L(x, y) = x⁶y - 2x⁶ - x⁴y² - 2x⁴y + 8x⁴ + 2x²y² + x²y - 10x² + 2.

    Works for integers, fractions and :class:`QuadExt` alike.
    """
    x2 = x * x
    x4 = x2 * x2
    x6 = x4 * x2
    y2 = y * y
    return x6 * y - 2 * x6 - x4 * y2 - 2 * x4 * y + 8 * x4 + 2 * x2 * y2 + x2 * y - 10 * x2 + 2
