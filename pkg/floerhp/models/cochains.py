from itertools import combinations
from typing import Iterable, Sequence

from sympy import Matrix, ZZ, factorint
from sympy.matrices.normalforms import invariant_factors

from floerhp.models.graded import Coefficients, GradedGroup, SpaceType
from floerhp.utils.log import log_and_raise


class CochainComplex:
    """
    A finite cochain complex of free abelian groups 0 -> C^0 -> C^1 -> ... -> C^n -> 0, given by the integer matrices
    of its coboundaries. The matrix of d^k has shape (rank C^{k+1}, rank C^k).

    Used as an independent oracle for the cohomology table of :mod:`floerhp.models.graded`.
    """
    def __init__(self, dimensions: Sequence[int], coboundaries: Sequence[Sequence[Sequence[int]]]):
        if len(coboundaries) != max(len(dimensions) - 1, 0):
            log_and_raise(ValueError, "A complex with n+1 cochain groups needs exactly n coboundaries")
        self._dimensions = tuple(dimensions)
        self._coboundaries = []
        for k, rows in enumerate(coboundaries):
            shape = (self._dimensions[k + 1], self._dimensions[k])
            matrix = Matrix(shape[0], shape[1], [entry for row in rows for entry in row]) if 0 not in shape \
                else Matrix.zeros(*shape)
            self._coboundaries.append(matrix)
        for k in range(len(self._coboundaries) - 1):
            if not (self._coboundaries[k + 1] * self._coboundaries[k]).is_zero_matrix:
                log_and_raise(ValueError, f"d^{k + 1} d^{k} is not zero")

    @property
    def dimensions(self) -> tuple[int, ...]:
        return self._dimensions

    def cohomology(self, coeff: Coefficients | str = Coefficients.INTEGERS) -> GradedGroup:
        """
        Cohomology of the complex from the Smith normal forms of its coboundaries.

        Over Z, H^k has free rank dim C^k - rank d^k - rank d^{k-1} and torsion the nontrivial invariant factors of
        d^{k-1}. Over F2, ranks are taken mod 2: unimodular changes of basis stay invertible mod 2, so the rank of a
        reduced coboundary is its number of odd invariant factors.
        """
        coeff = Coefficients.from_input(coeff)
        factors = [self._invariant_factors(matrix) for matrix in self._coboundaries]
        entries = {}
        for k, dimension in enumerate(self._dimensions):
            outgoing = factors[k] if k < len(factors) else ()
            incoming = factors[k - 1] if k > 0 else ()
            if coeff == Coefficients.F2:
                rank = dimension - _odd_count(outgoing) - _odd_count(incoming)
                entries[k] = rank
            else:
                rank = dimension - len(outgoing) - len(incoming)
                torsion = [order for d in incoming if d > 1 for order in _primary_parts(d)]
                entries[k] = (rank, torsion)
        return GradedGroup(coeff, entries)

    @staticmethod
    def _invariant_factors(matrix: Matrix) -> tuple[int, ...]:
        if 0 in matrix.shape:
            return ()
        return tuple(abs(int(f)) for f in invariant_factors(matrix, domain=ZZ) if f != 0)


def simplicial_complex(maximal_simplices: Iterable[Iterable[int]]) -> CochainComplex:
    """
    Simplicial cochain complex of the complex generated by the given simplices (vertex labels, any order).
    """
    faces: dict[int, set[tuple[int, ...]]] = {}
    for simplex in maximal_simplices:
        simplex = tuple(sorted(simplex))
        for size in range(1, len(simplex) + 1):
            for face in combinations(simplex, size):
                faces.setdefault(size - 1, set()).add(face)
    top = max(faces)
    bases = [sorted(faces[k]) for k in range(top + 1)]
    index = [{face: i for i, face in enumerate(basis)} for basis in bases]

    coboundaries = []
    for k in range(top):
        rows = [[0] * len(bases[k]) for _ in bases[k + 1]]
        for j, coface in enumerate(bases[k + 1]):
            for i in range(len(coface)):
                face = coface[:i] + coface[i + 1:]
                rows[j][index[k][face]] = (-1) ** i
        coboundaries.append(rows)
    return CochainComplex([len(basis) for basis in bases], coboundaries)


def _odd_count(factors: tuple[int, ...]) -> int:
    return sum(1 for d in factors if d % 2 == 1)


def _primary_parts(n: int) -> list[int]:
    return [int(prime) ** int(power) for prime, power in factorint(n).items()]


def model_complex(space: SpaceType | str) -> CochainComplex | None:
    """
    A finite cochain model of a space whose cohomology the table of :mod:`floerhp.models.graded` derives rather than
    quotes. The cubic surface has none.

    - Point: a vertex.
    - CP1 and TCP1: the boundary of a tetrahedron (S²).
    - Cstar: the boundary of a triangle (S¹).
    - CstarMinusPoint: two triangles sharing a vertex (a wedge of two circles).
    - PSL2C: the cellular complex of RP³, one cell per dimension with coboundaries 0, 2, 0.
    """
    space = SpaceType.from_input(space)
    if space == SpaceType.POINT:
        return simplicial_complex([(0,)])
    if space in (SpaceType.CP1, SpaceType.TCP1):
        return simplicial_complex([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
    if space == SpaceType.CSTAR:
        return simplicial_complex([(0, 1), (1, 2), (0, 2)])
    if space == SpaceType.CSTAR_MINUS_POINT:
        return simplicial_complex([(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])
    if space == SpaceType.PSL2C:
        return CochainComplex([1, 1, 1, 1], [[[0]], [[2]], [[0]]])
    return None
