from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np
from sympy import Poly, ZZ
from sympy.abc import t
from typing_extensions import Self

from floerhp.errors import UnsupportedSummand, ZeroSurgeryCoefficient
from floerhp.models.slope import Slope
from floerhp.utils.log import log_and_raise
from floerhp.utils.math import divisors


class IntPoly:
    """
    Univariate polynomial with integer coefficients in t, stored as ascending coefficients.
    """
    def __init__(self, coefficients: Iterable[int]):
        coefficients = [int(c) for c in coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        self._coefficients = tuple(coefficients)

    @classmethod
    def from_sympy(cls, poly: Poly) -> Self:
        return cls(reversed([int(c) for c in poly.all_coeffs()]))

    @property
    def coefficients(self) -> tuple[int, ...]:
        """
        Coefficients in ascending order of the exponent of t; empty for the zero polynomial.
        """
        return self._coefficients

    @property
    def degree(self) -> int:
        return len(self._coefficients) - 1

    def is_zero(self) -> bool:
        return not self._coefficients

    def to_sympy(self) -> Poly:
        return Poly(list(reversed(self._coefficients)) or [0], t, domain=ZZ)

    def divides(self, other: Self) -> bool:
        """
        Exact divisibility over Z of `other` by this polynomial, which must be monic.
        """
        if self.is_zero() or self._coefficients[-1] != 1:
            log_and_raise(ValueError, f"Divisibility test needs a monic divisor, got {self}")
        return other.to_sympy().rem(self.to_sympy()).is_zero

    def to_list(self) -> list[int]:
        return list(self._coefficients)

    def __eq__(self, other):
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self._coefficients == other._coefficients

    def __hash__(self):
        return hash(self._coefficients)

    def __repr__(self):
        return f"IntPoly({list(self._coefficients)})"

    def __str__(self):
        return str(self.to_sympy().as_expr())


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPoly:
    """
    The d-th cyclotomic polynomial, by exact division of t^d - 1 by the cyclotomic polynomials of the proper divisors
    of d.

    Args:
        d: a positive integer.

    Returns:
        Φ_d as an :class:`IntPoly`.
    """
    if d < 1:
        log_and_raise(ValueError, f"Cyclotomic polynomials are indexed by positive integers, got {d}")
    quotient = Poly(t ** d - 1, t, domain=ZZ)
    for e in divisors(d)[:-1]:
        quotient = quotient.exquo(cyclotomic(e).to_sympy())
    return IntPoly.from_sympy(quotient)


def reduced_order(p: int) -> int:
    """
    p' = |p| for p odd and |p|/2 for p even: the orders of roots of unity relevant to the Alexander condition.
    """
    return abs(p) if p % 2 else abs(p) // 2


def alexander_condition(delta: IntPoly, p: int) -> bool:
    """
    Whether no p'-th root of unity is a root of the Alexander polynomial, tested as: no Φ_d with d | p' divides it.

    Args:
        delta: the Alexander polynomial (nonzero).
        p: the surgery numerator.

    Returns:
        True when the condition holds (no bad root).

    Raises:
        ZeroSurgeryCoefficient: if p = 0.
    """
    if p == 0:
        log_and_raise(ZeroSurgeryCoefficient, "The Alexander condition is undefined for p = 0")
    if delta.is_zero():
        log_and_raise(ValueError, "The Alexander polynomial cannot be zero")
    return _alexander_condition(delta.coefficients, reduced_order(p))


@lru_cache(maxsize=None)
def _alexander_condition(coefficients: tuple[int, ...], p_prime: int) -> bool:
    delta = IntPoly(coefficients)
    return not any(cyclotomic(d).divides(delta) for d in divisors(p_prime))


class LaurentPoly2:
    """
    Laurent polynomial with integer coefficients in the meridian and longitude eigenvalues M and L.

    Terms are stored as (exponent of M, exponent of L) -> nonzero coefficient.
    """
    def __init__(self, terms: Mapping[tuple[int, int], int] = None):
        self._terms: dict[tuple[int, int], int] = {
            (int(m), int(l)): int(c) for (m, l), c in (terms or {}).items() if c != 0
        }

    @classmethod
    def monomial(cls, m_exp: int = 0, l_exp: int = 0, coeff: int = 1) -> Self:
        return cls({(m_exp, l_exp): coeff})

    @classmethod
    def from_triples(cls, triples: Iterable[Sequence[int]]) -> Self:
        terms: dict[tuple[int, int], int] = {}
        for m_exp, l_exp, coeff in triples:
            terms[(m_exp, l_exp)] = terms.get((m_exp, l_exp), 0) + coeff
        return cls(terms)

    @classmethod
    def longitude_binomial(cls, sign: int, m_exp: int) -> Self:
        """
        The factor L - sign·M^m_exp.
        """
        return cls.from_triples([(0, 1, 1), (m_exp, 0, -sign)])

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def normalized(self) -> Self:
        """
        Representative up to multiplication by ±M^a L^b: lowest exponents moved to zero and the coefficient of the
        lexicographically largest exponent pair made positive.
        """
        if self.is_zero():
            return self
        min_m = min(m for m, _ in self._terms)
        min_l = min(l for _, l in self._terms)
        sign = 1 if self._terms[max(self._terms)] > 0 else -1
        return LaurentPoly2({(m - min_m, l - min_l): sign * c for (m, l), c in self._terms.items()})

    def to_triples(self) -> list[list[int]]:
        return [[m, l, c] for (m, l), c in sorted(self._terms.items())]

    def __add__(self, other: Self) -> Self:
        terms = dict(self._terms)
        for key, c in other._terms.items():
            terms[key] = terms.get(key, 0) + c
        return LaurentPoly2(terms)

    def __neg__(self) -> Self:
        return LaurentPoly2({key: -c for key, c in self._terms.items()})

    def __sub__(self, other: Self) -> Self:
        return self + (-other)

    def __mul__(self, other: Self) -> Self:
        return laurent_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"LaurentPoly2({self.to_triples()})"

    def __str__(self):
        if self.is_zero():
            return "0"
        pieces = []
        for (m, l), c in sorted(self._terms.items(), key=lambda item: (-item[0][1], -item[0][0])):
            monomial = "*".join(
                f"{var}^{exp}" if exp != 1 else var for var, exp in (("L", l), ("M", m)) if exp != 0
            )
            if not monomial:
                body = str(abs(c))
            elif abs(c) == 1:
                body = monomial
            else:
                body = f"{abs(c)}*{monomial}"
            pieces.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(pieces)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def laurent_mul(a: LaurentPoly2, b: LaurentPoly2) -> LaurentPoly2:
    """
    Exact product of two Laurent polynomials (convolution of exponent pairs).
    """
    terms: dict[tuple[int, int], int] = {}
    for (m1, l1), c1 in a.terms.items():
        for (m2, l2), c2 in b.terms.items():
            key = (m1 + m2, l1 + l2)
            terms[key] = terms.get(key, 0) + c1 * c2
    return LaurentPoly2(terms)


REDUCIBLE_FACTOR = LaurentPoly2.longitude_binomial(1, 0)


@dataclass(frozen=True)
class SummandSpec:
    """
    Data of a knot summand needed to build the A-polynomial of a connected sum.

    Attributes:
        name: label of the summand.
        factors: irreducible A-polynomial factors of the summand.
        longitude_sign: ε in the longitude rule L = ε·M^k on the irreducible component, or None if unknown.
        longitude_exponent: k in that rule, or None if unknown.
    """
    name: str
    factors: tuple[LaurentPoly2, ...]
    longitude_sign: int | None = None
    longitude_exponent: int | None = None

    def has_monomial_rule(self) -> bool:
        return self.longitude_sign in (1, -1) and self.longitude_exponent is not None


# Irreducible trefoil characters satisfy L = -M^{-6} (right-handed) or L = -M^6 (left-handed)
TREFOIL_RIGHT_SUMMAND = SummandSpec("trefoil-r", (LaurentPoly2.longitude_binomial(-1, -6),), -1, -6)
TREFOIL_LEFT_SUMMAND = SummandSpec("trefoil-l", (LaurentPoly2.longitude_binomial(-1, 6),), -1, 6)


class FactoredAPoly:
    """
    A-polynomial kept as a product of factors, repeated factors omitted.
    """
    def __init__(self, factors: Iterable[LaurentPoly2], include_reducible: bool = True):
        self._factors: list[LaurentPoly2] = []
        seen = set()
        for factor in factors:
            if factor.is_zero() or factor.is_monomial():
                log_and_raise(ValueError, f"A-polynomial factors must be non-monomial, got {factor}")
            key = factor.normalized()
            if key not in seen:
                seen.add(key)
                self._factors.append(factor)
        self._include_reducible = include_reducible
        self._irreducible: list[LaurentPoly2] = list(self._factors)

    @classmethod
    def from_components(cls, irreducible: Iterable[LaurentPoly2], include_reducible: bool = True) -> Self:
        """
        Build from the factors contributed by irreducible components, prepending L - 1 for the reducibles when asked.
        """
        irreducible = FactoredAPoly(irreducible, include_reducible=False).factors
        prefix = [REDUCIBLE_FACTOR] if include_reducible else []
        apoly = cls(prefix + irreducible, include_reducible)
        apoly._irreducible = irreducible
        return apoly

    @property
    def factors(self) -> list[LaurentPoly2]:
        """
        The distinct factors, the reducible factor L - 1 first when present.
        """
        return list(self._factors)

    @property
    def include_reducible(self) -> bool:
        return self._include_reducible

    @property
    def irreducible(self) -> list[LaurentPoly2]:
        """
        Factors contributed by irreducible components (A^irr). May contain L - 1 when an irreducible component maps
        onto that line.
        """
        return list(self._irreducible)

    def expand(self) -> LaurentPoly2:
        product = LaurentPoly2.monomial()
        for factor in self._factors:
            product = product * factor
        return product

    def to_dict(self) -> dict:
        return {
            "factors": [f.to_triples() for f in self._factors],
            "irreducible": [f.to_triples() for f in self._irreducible],
            "include_reducible": self._include_reducible,
        }

    def __eq__(self, other):
        if not isinstance(other, FactoredAPoly):
            return NotImplemented
        return {f.normalized() for f in self._factors} == {f.normalized() for f in other._factors}

    def __str__(self):
        return "".join(f"({f})" for f in self._factors)


def compose_connected_sum(summands: Sequence[SummandSpec]) -> FactoredAPoly:
    """
    A-polynomial of a connected sum: the reducible factor L - 1, each summand's own factors (irreducible on that
    summand, abelian on the others), and the composite factor L - Πε_i·M^{Σk_i} from representations irreducible on
    every summand.

    Raises:
        UnsupportedSummand: if a summand has no monomial longitude rule.
    """
    sign, exponent = 1, 0
    for summand in summands:
        if not summand.has_monomial_rule():
            log_and_raise(UnsupportedSummand, f"Summand {summand.name} has no monomial longitude rule")
        sign *= summand.longitude_sign
        exponent += summand.longitude_exponent
    irreducible = [factor for summand in summands for factor in summand.factors]
    irreducible.append(LaurentPoly2.longitude_binomial(sign, exponent))
    return FactoredAPoly.from_components(irreducible)


def newton_slopes(apoly: FactoredAPoly | LaurentPoly2) -> set[Fraction]:
    """
    Boundary slopes read off the Newton polygons of the factors, in (M-exponent, L-exponent) coordinates: ΔM/ΔL
    over every edge with ΔL ≠ 0. With this orientation L + M^-6 gives 6.
    """
    factors = apoly.factors if isinstance(apoly, FactoredAPoly) else [apoly]
    slopes = set()
    for factor in factors:
        hull = _convex_hull(np.array(list(factor.normalized().terms.keys()), dtype=np.int64))
        for start, end in zip(hull, np.roll(hull, -1, axis=0)):
            delta_m, delta_l = (int(v) for v in end - start)
            if delta_l != 0:
                slopes.add(Fraction(delta_m, delta_l))
    return slopes


def _convex_hull(points: np.ndarray) -> np.ndarray:
    # Andrew's monotone chain on integer points; collinear points dropped
    points = np.unique(points, axis=0)
    if len(points) <= 2:
        return points

    def half(sequence):
        chain = []
        for point in sequence:
            while len(chain) >= 2 and _cross(chain[-2], chain[-1], point) <= 0:
                chain.pop()
            chain.append(point)
        return chain

    lower = half(points)
    upper = half(points[::-1])
    return np.array(lower[:-1] + upper[:-1])


def _cross(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> int:
    return int((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]))


def coincident_surgery_slope(factor: LaurentPoly2) -> Slope | None:
    """
    Slope whose surgery curve M^p L^q = 1 contains the zero set of a binomial factor L - ε·M^k.

    ε = +1 gives p/q = -k/1. ε = -1 gives none: ε^q = 1 would force q even while p = kq shares that factor.
    Factors of any other shape give none.
    """
    normalized = factor.normalized()
    if len(normalized.terms) != 2:
        return None
    terms = normalized.terms
    l_terms = [key for key in terms if key[1] == 1]
    const_terms = [key for key in terms if key[1] == 0]
    if len(l_terms) != 1 or len(const_terms) != 1:
        return None
    (l_m, _), (c_m, _) = l_terms[0], const_terms[0]
    l_coeff, c_coeff = terms[l_terms[0]], terms[const_terms[0]]
    if abs(l_coeff) != 1 or abs(c_coeff) != 1:
        return None
    # L·M^l_m·l_coeff + c_coeff·M^c_m = 0  <=>  L = -(c_coeff/l_coeff)·M^(c_m - l_m)
    epsilon = -c_coeff * l_coeff
    k = c_m - l_m
    if epsilon != 1:
        return None
    return Slope(-k, 1)
