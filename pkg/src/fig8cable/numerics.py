"""Arbitrary-precision real arithmetic and the special functions used everywhere else.

Scalars are ``gmpy2.mpfr`` values (MPFR under the hood: binary floats with
correctly rounded arithmetic and an unbounded-for-our-purposes exponent).
A :class:`PrecisionContext` fixes the working precision in bits and the
number of decimal digits the caller is entitled to trust.  Every operation
is a pure function of (inputs, context): no global state is mutated, so
results are reproducible bit for bit regardless of call order or thread.

Accuracy is audited by recomputation at doubled precision (see the test
suite) rather than by interval arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import gmpy2
from gmpy2 import mpfr

# Annotation alias: an arbitrary-precision real bound to some PrecisionContext.
Real = mpfr

LOG2_10 = math.log2(10.0)

# Minimum headroom between requested decimal digits and binary working bits.
GUARD_BITS = 32

# Guard used when deriving working_bits from target_digits; chosen so the
# default 30 digits lands on 160 bits.
_DERIVED_GUARD = 60

# Gamma(1/3) to 40 significant digits.  Stored rather than computed: only one
# optional growth check needs it, which does not justify a gamma
# implementation.  Validated against an independent integral oracle in the
# test suite.
GAMMA_ONE_THIRD = "2.678938534707747633655692940974677644129"


class DomainError(ValueError):
    """Input lies outside the real domain of an operation."""


def required_bits(target_digits: int) -> int:
    """Smallest admissible working precision for ``target_digits``."""
    return math.ceil(target_digits * LOG2_10) + GUARD_BITS


@dataclass(frozen=True)
class PrecisionContext:
    """Working-precision policy shared by all floating computations.

    ``working_bits`` is the binary precision every operation runs at;
    ``target_digits`` is the decimal accuracy the caller may rely on.
    The invariant ``working_bits >= ceil(target_digits*log2(10)) + 32``
    keeps enough guard bits that doubling the precision never changes
    the first ``target_digits`` digits of any single operation.
    """

    target_digits: int = 30
    working_bits: int = 160

    def __post_init__(self) -> None:
        if self.target_digits < 1:
            raise ValueError(f"target_digits must be positive, got {self.target_digits}")
        need = required_bits(self.target_digits)
        if self.working_bits < need:
            raise ValueError(
                f"working_bits={self.working_bits} is below the "
                f"{need} required for {self.target_digits} decimal digits"
            )

    @classmethod
    def from_digits(cls, digits: int) -> "PrecisionContext":
        return cls(digits, math.ceil(digits * LOG2_10) + _DERIVED_GUARD)

    def active(self) -> gmpy2.context:
        """Fresh gmpy2 context manager at working precision.

        Usage: ``with ctx.active(): ...``.  A new object every call, so
        nested blocks over the same PrecisionContext are safe.
        """
        return gmpy2.context(precision=self.working_bits)

    def raised(self, extra_bits: int) -> "PrecisionContext":
        """Same target, ``extra_bits`` more working precision."""
        return PrecisionContext(self.target_digits, self.working_bits + extra_bits)

    def doubled(self) -> "PrecisionContext":
        """The accuracy-audit context: identical ops at twice the bits."""
        return PrecisionContext(self.target_digits, 2 * self.working_bits)

    def tolerance(self) -> Real:
        """10^(-target_digits), the accuracy the caller may trust."""
        with self.active():
            return mpfr(10) ** (-self.target_digits)

    # -- conversions ---------------------------------------------------

    def real(self, x) -> Real:
        """Convert int/float/str/mpfr to mpfr at working precision.

        Decimal strings are rounded once, at working precision; prefer
        them to floats for non-dyadic constants like "0.6".
        """
        with self.active():
            return mpfr(x)

    # -- elementary operations ------------------------------------------

    def pi(self) -> Real:
        with self.active():
            return gmpy2.const_pi()

    def exp(self, x) -> Real:
        with self.active():
            return _finite(gmpy2.exp(mpfr(x)), "exp")

    def log(self, x) -> Real:
        with self.active():
            x = mpfr(x)
            if x <= 0:
                raise DomainError(f"log requires a positive argument, got {x}")
            return _finite(gmpy2.log(x), "log")

    def sinh(self, x) -> Real:
        with self.active():
            return _finite(gmpy2.sinh(mpfr(x)), "sinh")

    def cosh(self, x) -> Real:
        with self.active():
            return _finite(gmpy2.cosh(mpfr(x)), "cosh")

    def sqrt(self, x) -> Real:
        with self.active():
            x = mpfr(x)
            if x < 0:
                raise DomainError(f"sqrt requires a nonnegative argument, got {x}")
            return _finite(gmpy2.sqrt(x), "sqrt")

    def power(self, x, y) -> Real:
        with self.active():
            return _finite(mpfr(x) ** mpfr(y), "power")

    # -- special functions ----------------------------------------------

    def arccosh(self, x) -> Real:
        """log(x + sqrt(x^2 - 1)) for x >= 1.

        The radicand is formed as (x-1)(x+1) so accuracy does not degrade
        just above 1.
        """
        with self.active():
            x = mpfr(x)
            if x < 1:
                raise DomainError(f"arccosh requires x >= 1, got {x}")
            return _finite(gmpy2.log(x + gmpy2.sqrt((x - 1) * (x + 1))), "arccosh")

    def dilog(self, x) -> Real:
        """Real dilogarithm Li2(x) = sum x^k/k^2 for x <= 1.

        Branches: the defining power series for |x| <= 1/2 (geometric
        convergence, ratio <= 1/2); the reflection
        Li2(x) = pi^2/6 - log(x)log(1-x) - Li2(1-x) on (1/2, 1);
        Li2(1) = pi^2/6 exactly; a Landen transform on (-1, -1/2) and the
        inversion formula below -1 map everything else back to the series
        range.  Above 1 the real branch leaves the real line.
        """
        with self.raised(24).active():
            x = mpfr(x)
            if x > 1:
                raise DomainError(f"dilog real branch requires x <= 1, got {x}")
            return _finite(_dilog(x, self.working_bits + 16), "dilog")


def _finite(value: Real, op: str) -> Real:
    if not gmpy2.is_finite(value):
        raise DomainError(f"{op} produced a non-finite value")
    return value


def format_real(x, digits: int) -> str:
    """Deterministic scientific-notation string with ``digits`` significant
    digits, correctly rounded (the exact decimal MPFR would print)."""
    if digits < 1:
        raise ValueError(f"digits must be positive, got {digits}")
    if not isinstance(x, mpfr):
        # never re-round an mpfr; anything else is converted losslessly
        # enough for the requested digits
        x = mpfr(x, precision=4 * digits + 32)
    if not gmpy2.is_finite(x):
        raise ValueError(f"cannot format non-finite value {x}")
    if x == 0:
        return "0"
    mantissa, exponent, _ = gmpy2.digits(x, 10, digits)
    sign = "-" if mantissa.startswith("-") else ""
    m = mantissa.lstrip("-")
    return f"{sign}{m[0]}.{m[1:]}e{exponent - 1:+03d}"


def _dilog(x: Real, bits: int) -> Real:
    # assumes an active context with >= bits precision
    if x == 0:
        return mpfr(0)
    if x == 1:
        pi = gmpy2.const_pi()
        return pi * pi / 6
    if x < -1:
        # Li2(x) = -pi^2/6 - log(-x)^2/2 - Li2(1/x), with 1/x in (-1, 0)
        pi = gmpy2.const_pi()
        lg = gmpy2.log(-x)
        return -pi * pi / 6 - lg * lg / 2 - _dilog(1 / x, bits)
    if x > mpfr(1) / 2:
        # reflection onto (0, 1/2]
        pi = gmpy2.const_pi()
        return pi * pi / 6 - gmpy2.log(x) * gmpy2.log1p(-x) - _dilog(1 - x, bits)
    if x < mpfr(-1) / 2:
        # Landen: Li2(x) = -log(1-x)^2/2 - Li2(x/(x-1)), argument in (1/3, 1/2]
        lg = gmpy2.log1p(-x)
        return -lg * lg / 2 - _dilog(x / (x - 1), bits)
    return _dilog_series(x, bits)


def _dilog_series(x: Real, bits: int) -> Real:
    # |x| <= 1/2: term ratio <= 1/2, so at most ~bits iterations
    total = mpfr(0)
    term = mpfr(1)
    cutoff = mpfr(2) ** (-bits)
    k = 0
    while True:
        k += 1
        term = term * x
        contrib = term / (k * k)
        total += contrib
        if abs(contrib) < cutoff:
            return total
