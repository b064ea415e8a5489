"""Colored Jones polynomials of the figure-eight knot E and its (2,2b+1)-cables.

Two pipelines compute the same invariants and are tested against each other:

* exact Laurent polynomials, from the cyclotomic sum for J_m(E;t) and from
  the double-sum formula for the cable (a prefactor times
  sum_d (-1)^d t^((2b+1)(d^2+d)/2) (t^((2d+1)/2)-t^(-(2d+1)/2)) *
  sum_l prod_k (t^((2d+1+k)/2)-...)(t^((2d+1-k)/2)-...),
  divided exactly by t^(N/2)-t^(-N/2));

* high-precision floating evaluation at t = exp(xi/N), organised around the
  positive terms

      f[d,l] = exp((2b+1)(d^2+d) xi / 2N) * 2 sinh((2d+1) xi / 2N)
               * prod_{k=1..l} 4 sinh((2d+1+k) xi / 2N) sinh((2d+1-k) xi / 2N)

  whose alternating sum S = (-1)^(N-1) sum_{d,l} (-1)^d f[d,l] gives

      J_N(cable; e^(xi/N)) = exp(-(2b+1)(N^2-1) xi / 2N) / (2 sinh(xi/2)) * S.

The l-recurrence f[d,l] = f[d,l-1] * (2cosh((2d+1)xi/N) - 2cosh(l xi/N))
makes the whole sum O(N^2) scalar operations.  The alternating sum loses
only O(1) bits to cancellation (S exceeds (1 - e^(-xi/2)) times its largest
term), and the working precision is raised by that audited margin plus the
summation-length allowance before the kernel runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
from gmpy2 import mpfr

from .laurent import LaurentPoly
from .numerics import DomainError, PrecisionContext, Real

# Exact cable polynomials beyond this color are refused unless the caller
# raises the cap (coefficient growth, not correctness).
DEFAULT_EXACT_CAP = 15


@dataclass(frozen=True)
class CableSpec:
    """Color N and cabling parameter b of the (2,2b+1)-cable."""

    N: int
    b: int = 0

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError(f"color N must be >= 1, got {self.N}")
        if self.b < 0:
            raise ValueError(f"cable parameter b must be >= 0, got {self.b}")


@dataclass(frozen=True)
class TermIndex:
    """Index (d, l) into the double sum: 0 <= d <= N-1, 0 <= l <= 2d."""

    d: int
    l: int

    def validate(self, spec: CableSpec) -> None:
        if not 0 <= self.d <= spec.N - 1:
            raise DomainError(f"d={self.d} outside 0..{spec.N - 1}")
        if not 0 <= self.l <= 2 * self.d:
            raise DomainError(f"l={self.l} outside 0..{2 * self.d}")


@dataclass(frozen=True)
class JonesValue:
    """A colored Jones value in sign/log form (the value itself overflows
    nothing, but downstream asymptotics consume the logarithm directly)."""

    sign: int
    log_abs: Real

    def value(self, ctx: PrecisionContext) -> Real:
        with ctx.active():
            return self.sign * gmpy2.exp(self.log_abs)


# ---------------------------------------------------------------------------
# exact pipeline
# ---------------------------------------------------------------------------


def _binomial_pair(m_plus: int, m_minus: int) -> LaurentPoly:
    """(t^(m_plus/2) - t^(-m_plus/2)) * (t^(m_minus/2) - t^(-m_minus/2))."""
    a = LaurentPoly({m_plus: 1, -m_plus: -1})
    b = LaurentPoly({m_minus: 1, -m_minus: -1})
    return a * b


def habiro_fig8_poly(m: int) -> LaurentPoly:
    """Exact J_m(E;t) via the cyclotomic sum
    sum_{l=0}^{m-1} prod_{k=1}^{l} (t^((m+k)/2)-t^(-(m+k)/2))(t^((m-k)/2)-t^(-(m-k)/2)).

    The product for l extends the product for l-1, so the whole sum costs
    m-1 short multiplications.
    """
    if m < 1:
        raise ValueError(f"color m must be >= 1, got {m}")
    total = LaurentPoly.one()
    prod = LaurentPoly.one()
    for k in range(1, m):
        prod = prod * _binomial_pair(m + k, m - k)
        total = total + prod
    return total


def cable_poly(spec: CableSpec, cap: int = DEFAULT_EXACT_CAP) -> LaurentPoly:
    """Exact J_N(E^(2,2b+1);t).

    Builds the alternating double sum, multiplies by the framing prefactor
    (-1)^(N-1) t^(-(2b+1)(N^2-1)/2), and divides exactly by
    t^(N/2) - t^(-N/2).  A nonzero remainder cannot happen for a correct
    transcription and is surfaced as NotDivisibleError.
    """
    N, b = spec.N, spec.b
    if N > cap:
        raise ValueError(f"exact cable polynomial capped at N <= {cap} (asked {N}); raise cap= to override")
    w = 2 * b + 1
    acc = LaurentPoly.zero()
    for d in range(N):
        inner = LaurentPoly.one()
        prod = LaurentPoly.one()
        for k in range(1, 2 * d + 1):
            prod = prod * _binomial_pair(2 * d + 1 + k, 2 * d + 1 - k)
            inner = inner + prod
        term = inner * LaurentPoly({2 * d + 1: 1, -(2 * d + 1): -1})
        term = term.shifted(w * (d * d + d))
        if d % 2 == 1:
            term = -term
        acc = acc + term
    if (N - 1) % 2 == 1:
        acc = -acc
    numerator = acc.shifted(-w * (N * N - 1))
    denominator = LaurentPoly({N: 1, -N: -1})
    return numerator.exact_div(denominator)


def alexander_fig8() -> LaurentPoly:
    """Alexander polynomial of the figure-eight knot, -t + 3 - 1/t."""
    return LaurentPoly({2: -1, 0: 3, -2: -1})


def alexander_cable(b: int) -> LaurentPoly:
    """Alexander polynomial of the (2,2b+1)-cable:
    (-t^2 + 3 - t^-2) * (t^((2b+1)/2) + t^(-(2b+1)/2)) / (t^(1/2) + t^(-1/2))."""
    if b < 0:
        raise ValueError(f"cable parameter b must be >= 0, got {b}")
    w = 2 * b + 1
    first = LaurentPoly({4: -1, 0: 3, -4: -1})
    second = LaurentPoly({w: 1, -w: 1})
    denom = LaurentPoly({1: 1, -1: 1})
    return (first * second).exact_div(denom)


# ---------------------------------------------------------------------------
# floating pipeline
# ---------------------------------------------------------------------------


def eval_f(idx: TermIndex, spec: CableSpec, xi, ctx: PrecisionContext) -> Real:
    """One positive term f[d,l] of the double sum, by its direct product form."""
    idx.validate(spec)
    N, b, d, l = spec.N, spec.b, idx.d, idx.l
    with ctx.active():
        x = mpfr(xi)
        if x <= 0:
            raise DomainError(f"f[d,l] requires xi > 0, got {x}")
        h = x / (2 * N)
        f = gmpy2.exp((2 * b + 1) * (d * d + d) * h) * 2 * gmpy2.sinh((2 * d + 1) * h)
        for k in range(1, l + 1):
            f *= 4 * gmpy2.sinh((2 * d + 1 + k) * h) * gmpy2.sinh((2 * d + 1 - k) * h)
        return f


def _cancellation_margin_bits(x: Real) -> int:
    # S > (1 - e^(-xi/2)) * max term, so the alternating sum loses at most
    # -log2(1 - e^(-xi/2)) bits (plus rounding noise handled by the caller).
    loss = 1 - gmpy2.exp(-x / 2)
    return max(0, int(-gmpy2.log2(loss)) + 1)


def _kernel_context(spec: CableSpec, xi, ctx: PrecisionContext) -> PrecisionContext:
    with ctx.active():
        margin = _cancellation_margin_bits(mpfr(xi))
    return ctx.raised(margin + 3 * max(1, spec.N).bit_length() + 16)


def _s_sum_rows(spec: CableSpec, x: Real):
    """Yield (d, row_sum, row_max) under an active context; O(N^2) total."""
    N, b = spec.N, spec.b
    w = 2 * b + 1
    h = x / (2 * N)
    two_cosh = [2 * gmpy2.cosh(2 * j * h) for j in range(2 * N)]
    for d in range(N):
        f = gmpy2.exp(w * (d * d + d) * h) * 2 * gmpy2.sinh((2 * d + 1) * h)
        row = f
        fmax = f
        cd = two_cosh[2 * d + 1]
        for l in range(1, 2 * d + 1):
            f = f * (cd - two_cosh[l])
            row += f
            if f > fmax:
                fmax = f
        yield d, row, fmax


def eval_S_sum(spec: CableSpec, xi, ctx: PrecisionContext) -> Real:
    """The alternating sum S = (-1)^(N-1) sum_d sum_l (-1)^d f[d,l].

    Row-by-row in d with the multiplicative l-recurrence.  Positive for
    N >= 2 by the lower bound S > (1-e^(-xi/2)) * sum_l f[N-1,l]; a
    non-positive result would mean the precision raise failed and raises.
    """
    kctx = _kernel_context(spec, xi, ctx)
    with kctx.active():
        x = mpfr(xi)
        if x <= 0:
            raise DomainError(f"S requires xi > 0, got {x}")
        total = mpfr(0)
        for d, row, _ in _s_sum_rows(spec, x):
            total = total + row if d % 2 == 0 else total - row
        if (spec.N - 1) % 2 == 1:
            total = -total
        if total <= 0:
            raise ArithmeticError(
                f"alternating sum came out non-positive at N={spec.N}, xi={x}: precision raise insufficient"
            )
        return total


def s_sum_cancellation(spec: CableSpec, xi, ctx: PrecisionContext) -> tuple[Real, Real]:
    """(S, largest f[d,l]) for the cancellation audit."""
    kctx = _kernel_context(spec, xi, ctx)
    with kctx.active():
        x = mpfr(xi)
        if x <= 0:
            raise DomainError(f"S requires xi > 0, got {x}")
        total = mpfr(0)
        fmax = mpfr(0)
        for d, row, row_max in _s_sum_rows(spec, x):
            total = total + row if d % 2 == 0 else total - row
            if row_max > fmax:
                fmax = row_max
        if (spec.N - 1) % 2 == 1:
            total = -total
        return total, fmax


def eval_cable_jones(spec: CableSpec, xi, ctx: PrecisionContext) -> JonesValue:
    """J_N(E^(2,2b+1); e^(xi/N)) in sign/log form,

        log J = -(2b+1)(N^2-1) xi / 2N - log(2 sinh(xi/2)) + log S.

    Positive for all xi > 0 (S > 0), so sign is always +1.
    """
    N, b = spec.N, spec.b
    if N == 1:
        if ctx.real(xi) <= 0:
            raise DomainError(f"evaluation requires xi > 0, got {xi}")
        return JonesValue(1, ctx.real(0))
    S = eval_S_sum(spec, xi, ctx)
    with ctx.raised(16).active():
        x = mpfr(xi)
        log_j = -mpfr((2 * b + 1) * (N * N - 1)) * x / (2 * N) - gmpy2.log(2 * gmpy2.sinh(x / 2)) + gmpy2.log(S)
    return JonesValue(1, log_j)


def eval_fig8_jones(m: int, eta, ctx: PrecisionContext) -> Real:
    """J_m(E; e^(eta/m)) by the cyclotomic sum; every summand is a product of
    positive factors 4 sinh((m+k)eta/2m) sinh((m-k)eta/2m), so there is no
    cancellation at all."""
    if m < 1:
        raise ValueError(f"color m must be >= 1, got {m}")
    with ctx.raised(16 + m.bit_length()).active():
        e = mpfr(eta)
        if e <= 0:
            raise DomainError(f"fig8 evaluation requires eta > 0, got {e}")
        h = e / (2 * m)
        total = mpfr(1)
        prod = mpfr(1)
        for k in range(1, m):
            prod = prod * (4 * gmpy2.sinh((m + k) * h) * gmpy2.sinh((m - k) * h))
            total += prod
        return total
