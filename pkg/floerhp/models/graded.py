from collections import Counter
from typing import Iterable, Mapping

from typing_extensions import Self

from floerhp.errors import CoefficientMismatch
from floerhp.utils.enum import EnumFromInput
from floerhp.utils.log import log_and_raise
from floerhp.utils.math import is_prime_power


class Coefficients(EnumFromInput):
    INTEGERS = "Z"
    F2 = "F2"


class SpaceType(EnumFromInput):
    POINT = "Point"
    CP1 = "CP1"
    TCP1 = "TCP1"
    CSTAR = "Cstar"
    CSTAR_MINUS_POINT = "CstarMinusPoint"
    PSL2C = "PSL2C"
    SURFACE_S = "SurfaceS"


class GradedGroup:
    """
    A finitely supported graded abelian group. Each degree carries a free rank and a multiset of cyclic torsion
    summands, given by their orders (prime powers). Over F2 only the dimension is stored, in the free rank.

    Instances are immutable; every operation returns a new group.
    """
    def __init__(
            self,
            coeff: Coefficients | str = Coefficients.INTEGERS,
            entries: Mapping[int, int | tuple[int, Iterable[int]]] = None
    ):
        """
        Args:
            coeff: coefficient tag, Z or F2.
            entries: degree -> rank, or degree -> (rank, torsion orders). Empty entries are dropped.

        Raises:
            ValueError: on negative ranks, invalid torsion orders or torsion over F2.
        """
        self._coeff = Coefficients.from_input(coeff)
        self._entries: dict[int, tuple[int, tuple[int, ...]]] = {}
        for degree, value in (entries or {}).items():
            rank, torsion = (value, ()) if isinstance(value, int) else value
            self._set_entry(int(degree), rank, tuple(torsion))

    def _set_entry(self, degree: int, rank: int, torsion: tuple[int, ...]):
        if not isinstance(rank, int) or rank < 0:
            log_and_raise(ValueError, f"Invalid free rank {rank} at degree {degree}")
        for order in torsion:
            if not is_prime_power(order):
                log_and_raise(ValueError, f"Torsion order {order} at degree {degree} is not a prime power")
        if torsion and self._coeff == Coefficients.F2:
            log_and_raise(ValueError, f"F2 groups carry no torsion (degree {degree})")
        if rank == 0 and not torsion:
            return
        self._entries[degree] = (rank, tuple(sorted(torsion)))

    @classmethod
    def zero(cls, coeff: Coefficients | str = Coefficients.INTEGERS) -> Self:
        return cls(coeff)

    @classmethod
    def from_dict(cls, data: dict) -> Self:
        """
        Inverse of :meth:`to_dict`.
        """
        entries = {
            int(degree): (entry.get("rank", 0), entry.get("torsion", []))
            for degree, entry in data.get("entries", {}).items()
        }
        return cls(data["coeff"], entries)

    @property
    def coeff(self) -> Coefficients:
        """
        Coefficient tag of the group.
        """
        return self._coeff

    @property
    def entries(self) -> dict[int, tuple[int, tuple[int, ...]]]:
        """
        Copy of the stored map degree -> (free rank, sorted torsion orders).
        """
        return dict(self._entries)

    @property
    def degrees(self) -> list[int]:
        """
        Degrees with a nonzero entry, in descending order.
        """
        return sorted(self._entries, reverse=True)

    def is_zero(self) -> bool:
        return not self._entries

    def rank_at(self, degree: int) -> int:
        """
        Free rank at a degree (dimension over F2); torsion is ignored.
        """
        return self._entries.get(degree, (0, ()))[0]

    def torsion_at(self, degree: int) -> tuple[int, ...]:
        return self._entries.get(degree, (0, ()))[1]

    def total_rank(self) -> int:
        return sum(rank for rank, _ in self._entries.values())

    def direct_sum(self, other: Self) -> Self:
        """
        Degreewise direct sum: free ranks add, torsion multisets are joined.

        Raises:
            CoefficientMismatch: if the two coefficient tags differ.
        """
        self._check_same_coeff(other)
        entries = {}
        for degree in set(self._entries) | set(other._entries):
            rank = self.rank_at(degree) + other.rank_at(degree)
            entries[degree] = (rank, self.torsion_at(degree) + other.torsion_at(degree))
        return GradedGroup(self._coeff, entries)

    def shift(self, k: int) -> Self:
        """
        The group G^{*+k}: the entry at degree n of the result is the entry at degree n+k of this group.
        """
        return GradedGroup(self._coeff, {degree - k: entry for degree, entry in self._entries.items()})

    def scale(self, n: int) -> Self:
        """
        n-fold direct sum of the group with itself; n = 0 gives the zero group.
        """
        if n < 0:
            log_and_raise(ValueError, f"Cannot scale a group by a negative multiplicity {n}")
        return GradedGroup(
            self._coeff,
            {degree: (rank * n, torsion * n) for degree, (rank, torsion) in self._entries.items()}
        )

    def euler_characteristic(self) -> int:
        """
        Alternating sum of free ranks, Σ (-1)^n rank_at(n).
        """
        return sum((-1) ** (degree % 2) * rank for degree, (rank, _) in self._entries.items())

    def reduce_mod_two(self) -> Self:
        """
        Cohomology with F2 coefficients predicted by universal coefficients from an integral group: the F2 dimension
        at n is the free rank at n plus the number of 2-primary torsion summands at n and at n+1.
        """
        if self._coeff == Coefficients.F2:
            return self
        entries = Counter()
        for degree, (rank, torsion) in self._entries.items():
            two_primary = sum(1 for order in torsion if order % 2 == 0)
            entries[degree] += rank + two_primary
            entries[degree - 1] += two_primary
        return GradedGroup(Coefficients.F2, dict(entries))

    def to_dict(self) -> dict:
        """
        JSON form; degrees as decimal strings in descending order, "torsion" omitted when empty.
        """
        entries = {}
        for degree in self.degrees:
            rank, torsion = self._entries[degree]
            entry = {"rank": rank}
            if torsion:
                entry["torsion"] = list(torsion)
            entries[str(degree)] = entry
        return {"coeff": self._coeff.value, "entries": entries}

    def _check_same_coeff(self, other: Self):
        if self._coeff != other._coeff:
            msg = f"Cannot combine groups over {self._coeff.value} and {other._coeff.value}"
            log_and_raise(CoefficientMismatch, msg)

    def __add__(self, other):
        return self.direct_sum(other)

    def __eq__(self, other):
        if not isinstance(other, GradedGroup):
            return NotImplemented
        return self._coeff == other._coeff and self._entries == other._entries

    def __hash__(self):
        return hash((self._coeff, frozenset(self._entries.items())))

    def __repr__(self):
        return f"GradedGroup({self._coeff.value}, {self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        ring = "F" if self._coeff == Coefficients.F2 else "Z"
        parts = []
        for degree in self.degrees:
            rank, torsion = self._entries[degree]
            summands = []
            if rank:
                summands.append(ring if rank == 1 else f"{ring}^{rank}")
            summands.extend(f"Z/{order}" for order in torsion)
            parts.append(f"({' + '.join(summands)})_({degree})")
        return " + ".join(parts)


def direct_sum(*groups: GradedGroup, coeff: Coefficients | str = None) -> GradedGroup:
    """
    Direct sum of any number of groups. With no groups, returns the zero group over `coeff` (Z by default).
    """
    if not groups:
        return GradedGroup.zero(coeff or Coefficients.INTEGERS)
    result = groups[0]
    for group in groups[1:]:
        result = result.direct_sum(group)
    return result


_INTEGRAL_COHOMOLOGY = {
    SpaceType.POINT: {0: 1},
    SpaceType.CP1: {0: 1, 2: 1},
    SpaceType.TCP1: {0: 1, 2: 1},
    SpaceType.CSTAR: {0: 1, 1: 1},
    SpaceType.CSTAR_MINUS_POINT: {0: 1, 1: 2},
    SpaceType.PSL2C: {0: 1, 2: (0, [2]), 3: 1},
    SpaceType.SURFACE_S: {0: 1, 2: 2, 3: 4},
}

_MOD_TWO_COHOMOLOGY = {
    SpaceType.POINT: {0: 1},
    SpaceType.CP1: {0: 1, 2: 1},
    SpaceType.TCP1: {0: 1, 2: 1},
    SpaceType.CSTAR: {0: 1, 1: 1},
    SpaceType.CSTAR_MINUS_POINT: {0: 1, 1: 2},
    SpaceType.PSL2C: {0: 1, 1: 1, 2: 1, 3: 1},
    SpaceType.SURFACE_S: {0: 1, 2: 2, 3: 4},
}


def cohomology(space: SpaceType | str, coeff: Coefficients | str = Coefficients.INTEGERS) -> GradedGroup:
    """
    Singular cohomology of the spaces that occur as strata of character and representation schemes.

    PSL(2,C) retracts onto SO(3) = RP³ and C* minus a point onto a wedge of two circles; the cubic surface row is
    taken as known. TCP1 (an orbit of non-central abelian representations) has the homotopy type of CP1.

    Args:
        space: the space.
        coeff: Z or F2.

    Returns:
        the graded cohomology group.
    """
    space = SpaceType.from_input(space)
    coeff = Coefficients.from_input(coeff)
    table = _INTEGRAL_COHOMOLOGY if coeff == Coefficients.INTEGERS else _MOD_TWO_COHOMOLOGY
    return GradedGroup(coeff, table[space])
