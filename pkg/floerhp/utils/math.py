from fractions import Fraction
from functools import lru_cache
from math import gcd

import sympy

from floerhp.errors import NonIntegerResult
from floerhp.utils.log import log_and_raise


def divisors(n: int) -> list[int]:
    """
    Positive divisors of |n|, in increasing order.

    Args:
        n: a nonzero integer.

    Returns:
        the sorted list of positive divisors.
    """
    if n == 0:
        log_and_raise(ValueError, "0 has infinitely many divisors")
    return list(_divisors(abs(n)))


@lru_cache(maxsize=4096)
def _divisors(n: int) -> tuple[int, ...]:
    return tuple(int(d) for d in sympy.divisors(n))


@lru_cache(maxsize=4096)
def totient(n: int) -> int:
    return int(sympy.totient(n))


def is_prime_power(n: int) -> bool:
    return n >= 2 and len(sympy.factorint(n)) == 1


def is_half_integer(value: Fraction) -> bool:
    """
    Whether a rational lies in ½ℤ.
    """
    return (2 * Fraction(value)).denominator == 1


def require_integer(value: Fraction, what: str) -> int:
    """
    Convert an exact rational to an integer, failing loudly instead of rounding.

    Raises:
        NonIntegerResult: if the value is not integral.
    """
    value = Fraction(value)
    if value.denominator != 1:
        log_and_raise(NonIntegerResult, f"{what} evaluates to {value}, which is not an integer")
    return int(value)


def require_nonnegative_integer(value: Fraction, what: str) -> int:
    n = require_integer(value, what)
    if n < 0:
        log_and_raise(NonIntegerResult, f"{what} evaluates to {n}, which is negative")
    return n


def parse_rational(text: str | int | Fraction) -> Fraction:
    """
    Parse an exact rational written "a/b" or "a". Integers and fractions pass through.
    """
    if isinstance(text, bool):
        log_and_raise(ValueError, f"Invalid rational {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        log_and_raise(ValueError, f"Invalid rational {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        log_and_raise(ValueError, f"Invalid rational {text!r}")


def fraction_to_str(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
