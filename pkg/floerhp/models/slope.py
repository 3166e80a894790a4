import re
from fractions import Fraction
from math import gcd

from typing_extensions import Self

from floerhp.errors import NotCoprime, SlopeFormatError
from floerhp.utils.log import log_and_raise

_SLOPE_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")


class Slope:
    """
    A reduced surgery coefficient p/q with q ≥ 1 and gcd(|p|, q) = 1.
    """
    def __init__(self, p: int, q: int = 1):
        if not isinstance(p, int) or not isinstance(q, int) or isinstance(p, bool) or isinstance(q, bool):
            log_and_raise(SlopeFormatError, f"Slope components must be integers, got {p!r}/{q!r}")
        if q < 1:
            log_and_raise(SlopeFormatError, f"Slope denominator must be positive, got {q}")
        if gcd(abs(p), q) != 1:
            log_and_raise(NotCoprime, f"Slope {p}/{q} is not reduced")
        self._p = p
        self._q = q

    @classmethod
    def from_string(cls, text: str) -> Self:
        """
        Parse "p/q" (optional sign on p). A bare integer "p" is read as p/1.

        Raises:
            SlopeFormatError: on malformed input.
            NotCoprime: if the fraction is not reduced.
        """
        if isinstance(text, str) and re.fullmatch(r"\s*[+-]?\d+\s*", text):
            return cls(int(text), 1)
        match = _SLOPE_PATTERN.match(text) if isinstance(text, str) else None
        if match is None:
            log_and_raise(SlopeFormatError, f"Invalid slope {text!r}, expected p/q")
        return cls(int(match.group(1)), int(match.group(2)))

    @classmethod
    def from_fraction(cls, value: Fraction) -> Self:
        value = Fraction(value)
        return cls(value.numerator, value.denominator)

    @property
    def p(self) -> int:
        return self._p

    @property
    def q(self) -> int:
        return self._q

    @property
    def sigma(self) -> int:
        """
        Parity σ(p) ∈ {0, 1}.
        """
        return self._p % 2

    @property
    def p_prime(self) -> int:
        """
        |p| for p odd, |p|/2 for p even.
        """
        return abs(self._p) if self.sigma else abs(self._p) // 2

    def as_fraction(self) -> Fraction:
        return Fraction(self._p, self._q)

    def mirror(self) -> Self:
        return Slope(-self._p, self._q)

    def __eq__(self, other):
        if isinstance(other, Slope):
            return self._p == other._p and self._q == other._q
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() == other
        return NotImplemented

    def __hash__(self):
        return hash(self.as_fraction())

    def __repr__(self):
        return f"Slope({self._p}/{self._q})"

    def __str__(self):
        return f"{self._p}/{self._q}"
