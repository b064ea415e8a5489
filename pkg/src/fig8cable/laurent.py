"""Exact Laurent polynomials in s = t^(1/2) over arbitrary-size integers.

A polynomial is a sparse map {half-exponent e: coefficient}, the term being
coeff * t^(e/2).  Half-integer powers of t are everywhere in the cable
formulas, so exponents are stored doubled (in units of t^(1/2)) and stay
plain Python ints; coefficients are plain Python ints from the start.

Values are immutable after construction: every operation returns a new
canonical polynomial (no zero coefficients stored).
"""

from __future__ import annotations

import json
import operator
from typing import Iterator, Mapping

import gmpy2
from gmpy2 import mpfr

from .numerics import DomainError, PrecisionContext, Real


class NotDivisibleError(ArithmeticError):
    """Exact division failed; carries the nonzero remainder."""

    def __init__(self, remainder: "LaurentPoly"):
        super().__init__(f"division left remainder {remainder}")
        self.remainder = remainder


class LaurentPoly:
    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        canon = {}
        if coeffs:
            for e, c in coeffs.items():
                # index() rejects floats and other lossy keys outright
                if c:
                    canon[operator.index(e)] = operator.index(c)
        self._coeffs = canon

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, coeff: int, half_exp: int) -> "LaurentPoly":
        """coeff * t^(half_exp / 2)."""
        return cls({half_exp: coeff})

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, half_exp: int) -> int:
        return self._coeffs.get(half_exp, 0)

    def items(self) -> Iterator[tuple[int, int]]:
        """(half-exponent, coefficient) pairs, exponents ascending."""
        return iter(sorted(self._coeffs.items()))

    def support(self) -> list[int]:
        return sorted(self._coeffs)

    def min_exp(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no exponents")
        return min(self._coeffs)

    def max_exp(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no exponents")
        return max(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __repr__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in self.items():
            if e == 0:
                parts.append(f"{c}")
            elif e % 2 == 0:
                parts.append(f"{c}*t^{e // 2}")
            else:
                parts.append(f"{c}*t^({e}/2)")
        return " + ".join(parts)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = out
        return res

    def __neg__(self) -> "LaurentPoly":
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = {e: -c for e, c in self._coeffs.items()}
        return res

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self._coeffs or not other._coeffs:
            return LaurentPoly()
        # convolve the shorter operand over the longer one
        a, b = self._coeffs, other._coeffs
        if len(a) > len(b):
            a, b = b, a
        out: dict[int, int] = {}
        for ea, ca in sorted(a.items()):
            for eb, cb in b.items():
                e = ea + eb
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = out
        return res

    def scaled(self, k: int) -> "LaurentPoly":
        """Integer scalar multiple."""
        if k == 0:
            return LaurentPoly()
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = {e: k * c for e, c in self._coeffs.items()}
        return res

    def shifted(self, half_exp: int) -> "LaurentPoly":
        """Multiply by t^(half_exp/2)."""
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = {e + half_exp: c for e, c in self._coeffs.items()}
        return res

    def mirror(self) -> "LaurentPoly":
        """The involution t -> 1/t (negates every exponent)."""
        res = LaurentPoly.__new__(LaurentPoly)
        res._coeffs = {-e: c for e, c in self._coeffs.items()}
        return res

    def exact_div(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Quotient q with self = q * divisor, else NotDivisibleError.

        Long division on the associated ordinary polynomials (both operands
        shifted so their lowest exponent is zero); any inexact coefficient
        step or nonzero final remainder aborts with the remainder attached.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        alpha = self.min_exp()
        beta = divisor.min_exp()
        rem = {e - alpha: c for e, c in self._coeffs.items()}
        div = {e - beta: c for e, c in divisor._coeffs.items()}
        d_lead = max(div)
        d_lc = div[d_lead]
        quot: dict[int, int] = {}
        while rem:
            r_lead = max(rem)
            if r_lead < d_lead:
                break
            qc, residue = divmod(rem[r_lead], d_lc)
            if residue:
                break
            shift = r_lead - d_lead
            quot[shift] = qc
            for e, c in div.items():
                ee = e + shift
                s = rem.get(ee, 0) - qc * c
                if s:
                    rem[ee] = s
                elif ee in rem:
                    del rem[ee]
        if rem:
            remainder = LaurentPoly({e + alpha: c for e, c in rem.items()})
            raise NotDivisibleError(remainder)
        return LaurentPoly({e + alpha - beta: c for e, c in quot.items()})

    # -- evaluation ---------------------------------------------------------

    def eval(self, t_value, ctx: PrecisionContext) -> Real:
        """Sum coeff * t^(e/2) at t = t_value > 0, accurate to target_digits.

        The terms can cancel far below their own magnitude, so the sum is
        formed at a precision raised by the observed cancellation (measured
        against the sum of absolute terms) plus guard bits, with one retry
        if the first margin guess was too small.
        """
        with ctx.active():
            t = mpfr(t_value)
        if t <= 0:
            raise DomainError(f"polynomial evaluation requires t > 0, got {t}")
        if not self._coeffs:
            return ctx.real(0)
        extra = 16 + len(self._coeffs).bit_length()
        for _ in range(8):
            work = ctx.raised(extra)
            with work.active():
                s = gmpy2.sqrt(mpfr(t_value))
                total = mpfr(0)
                total_abs = mpfr(0)
                prev_e = 0
                power = mpfr(1)
                for e, c in self.items():
                    power = power * s ** (e - prev_e)
                    prev_e = e
                    term = c * power
                    total += term
                    total_abs += abs(term)
                if total == 0:
                    # either a true zero or cancellation down to the last ulp;
                    # a pass with a full extra working_bits settles it
                    if extra >= ctx.working_bits + 48:
                        return ctx.real(0)
                    extra = ctx.working_bits + 48
                    continue
                # bits lost to cancellation; retry with that margin if short
                lost = max(0, int(gmpy2.log2(total_abs / abs(total))) + 1)
            if lost + 8 <= extra:
                return total
            extra = lost + 48
        raise ArithmeticError("polynomial evaluation failed to stabilise")

    # -- serialization --------------------------------------------------------

    def to_json_dict(self) -> dict[str, str]:
        """{"half_exponent": "coefficient"} with exponents ascending."""
        return {str(e): str(c) for e, c in self.items()}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=0, separators=(",", ": "))

    @classmethod
    def from_json_dict(cls, data: Mapping[str, str]) -> "LaurentPoly":
        coeffs = {}
        for key, value in data.items():
            try:
                e = int(key)
            except (TypeError, ValueError):
                raise ValueError(f"invalid half-exponent key {key!r}") from None
            try:
                c = int(value)
            except (TypeError, ValueError):
                raise ValueError(f"invalid coefficient for key {key!r}: {value!r}") from None
            coeffs[e] = c
        return cls(coeffs)

    @classmethod
    def from_json(cls, text: str) -> "LaurentPoly":
        data = json.loads(text)
        if not isinstance(data, dict):
            raise ValueError("polynomial JSON must be an object")
        return cls.from_json_dict(data)
