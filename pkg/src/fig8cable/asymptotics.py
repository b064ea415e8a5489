"""Growth rates of the colored Jones evaluations and their dilogarithm limit.

For real xi above the threshold kappa = arccosh(3/2)/2 (the log of the
golden ratio), the normalised rate (xi/N) log J_N(cable; e^(xi/N)) converges
to

    S(xi) = Li2(e^(-phi(xi)-2xi)) - Li2(e^(phi(xi)-2xi)) + 2 xi phi(xi),

with phi(xi) = arccosh(cosh(2xi) - 1/2) locating the dominant term of the
double sum.  The figure-eight evaluation at e^(eta/N) obeys the same law
with limit S(eta/2) for eta > 2 kappa.  This module produces convergence
tables for both, locates the maximal term, checks the monotonicity lemmas
behind the squeeze argument, and carries the two side checks at the
boundary of the regime (polynomial growth at xi = kappa against the stored
Gamma(1/3) constant, and the small-eta Alexander limit).
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
from gmpy2 import mpfr

from . import jones
from .jones import CableSpec
from .numerics import GAMMA_ONE_THIRD, DomainError, PrecisionContext, Real


@dataclass(frozen=True)
class GrowthRow:
    """One line of a convergence table."""

    N: int
    rate: Real
    limit: Real
    gap: Real


@dataclass(frozen=True)
class MaxTermReport:
    """Predicted vs brute-force location of the largest f[N-1,l]."""

    N: int
    predicted: int
    observed: int


@dataclass(frozen=True)
class Lemma35Result:
    """Which hypothesis branch applied at (N, l) and whether its conclusion held.

    branch is "decreasing" when cosh(l xi/N) >= cosh(2 xi) - 1/2 (the terms
    must fall), "increasing" when cosh(l xi/N) < cosh(2 xi) - 1/2 - delta
    and N exceeds the delta-threshold, and "inconclusive" when the margin
    condition picks neither.
    """

    branch: str
    conclusion_holds: bool
    ratio: Real


def kappa(ctx: PrecisionContext) -> Real:
    """arccosh(3/2)/2, the threshold of the exponential regime."""
    with ctx.active():
        return ctx.arccosh(mpfr(3) / 2) / 2


def phi(xi, ctx: PrecisionContext) -> Real:
    """arccosh(cosh(2 xi) - 1/2); real and in [0, 2 xi) for xi >= kappa.

    At xi = kappa the arccosh argument equals 1 exactly; values within a
    few ulps below 1 are treated as the boundary (rounding of kappa itself
    puts them there), anything lower is a domain error.
    """
    with ctx.active():
        x = mpfr(xi)
        arg = gmpy2.cosh(2 * x) - mpfr(1) / 2
        if arg < 1:
            if 1 - arg < mpfr(2) ** (16 - ctx.working_bits):
                return mpfr(0)
            raise DomainError(f"phi requires xi >= kappa = {kappa(ctx)}, got {x}")
        return ctx.arccosh(arg)


def S_of_xi(xi, ctx: PrecisionContext) -> Real:
    """The limit value S(xi); both dilogarithm arguments lie in (0,1)."""
    with ctx.active():
        x = mpfr(xi)
        k = kappa(ctx)
        if x <= k:
            raise DomainError(f"S is defined for xi > kappa = {k}, got {x}")
        p = phi(x, ctx)
        a_minus = gmpy2.exp(-p - 2 * x)
        a_plus = gmpy2.exp(p - 2 * x)
        return ctx.dilog(a_minus) - ctx.dilog(a_plus) + 2 * x * p


def growth_table(b: int, xi, Ns: list[int], ctx: PrecisionContext) -> list[GrowthRow]:
    """Rows ((xi/N) log J_N(cable), S(xi), gap) for ascending colors N."""
    if sorted(Ns) != list(Ns):
        raise ValueError("Ns must be ascending")
    limit = S_of_xi(xi, ctx)
    rows = []
    for N in Ns:
        jv = jones.eval_cable_jones(CableSpec(N, b), xi, ctx)
        with ctx.active():
            rate = mpfr(xi) * jv.log_abs / N
            rows.append(GrowthRow(N, rate, limit, abs(rate - limit)))
    return rows


def growth_table_fig8(eta, Ns: list[int], ctx: PrecisionContext) -> list[GrowthRow]:
    """Rows ((eta/N) log J_N(E), S(eta/2), gap); requires eta > 2 kappa."""
    if sorted(Ns) != list(Ns):
        raise ValueError("Ns must be ascending")
    with ctx.active():
        e = mpfr(eta)
        if e <= 2 * kappa(ctx):
            raise DomainError(f"fig8 growth law requires eta > 2*kappa = {2 * kappa(ctx)}, got {e}")
    limit = S_of_xi(e / 2, ctx)
    rows = []
    for N in Ns:
        value = jones.eval_fig8_jones(N, eta, ctx)
        with ctx.active():
            rate = e * gmpy2.log(value) / N
            rows.append(GrowthRow(N, rate, limit, abs(rate - limit)))
    return rows


def max_term(N: int, xi, ctx: PrecisionContext, allow_subcritical: bool = False) -> MaxTermReport:
    """Brute-force argmax over l of f[N-1,l] against the predicted
    floor(phi(xi) N / xi) - 1.

    Below the threshold (xi <= kappa) the terms are strictly decreasing in
    l and the maximum sits at l = 0; that regime is rejected unless
    allow_subcritical is set, since phi is not real there and the predicted
    index is taken to be 0.
    """
    if N < 2:
        raise ValueError(f"max_term needs N >= 2, got {N}")
    kctx = ctx.raised(3 * N.bit_length() + 16)
    with kctx.active():
        x = mpfr(xi)
        if x <= 0:
            raise DomainError(f"max_term requires xi > 0, got {x}")
        subcritical = gmpy2.cosh(2 * x) - mpfr(1) / 2 <= 1
        if subcritical and not allow_subcritical:
            raise DomainError(
                f"xi={x} is at or below kappa; pass allow_subcritical=True to probe this regime"
            )
        if subcritical:
            predicted = 0
        else:
            predicted = int(gmpy2.floor(phi(x, kctx) * N / x)) - 1
        # walk the last row multiplicatively, tracking the argmax; the
        # b-dependent prefactor is constant in l and dropped
        h = x / (2 * N)
        f = 2 * gmpy2.sinh((2 * N - 1) * h)
        best, observed = f, 0
        c_top = 2 * gmpy2.cosh((2 * N - 1) * 2 * h)
        for l in range(1, 2 * N - 1):
            f = f * (c_top - 2 * gmpy2.cosh(2 * l * h))
            if f > best:
                best, observed = f, l
    return MaxTermReport(N, predicted, observed)


def check_lemma_35(N: int, l: int, xi, delta, ctx: PrecisionContext) -> Lemma35Result:
    """Evaluate the last-row monotonicity statement at one (N, l).

    The exact step ratio is f[N-1,l]/f[N-1,l-1]
    = 2 cosh(2 xi - xi/N) - 2 cosh(l xi / N).
    """
    if not 1 <= l <= 2 * N - 2:
        raise ValueError(f"l={l} outside 1..{2 * N - 2}")
    with ctx.active():
        x = mpfr(xi)
        dlt = mpfr(delta)
        if x <= 0 or dlt <= 0:
            raise DomainError("requires xi > 0 and delta > 0")
        ratio = 2 * gmpy2.cosh(2 * x - x / N) - 2 * gmpy2.cosh(mpfr(l) * x / N)
        threshold = gmpy2.cosh(2 * x) - mpfr(1) / 2
        lhs = gmpy2.cosh(mpfr(l) * x / N)
        if lhs >= threshold:
            return Lemma35Result("decreasing", bool(ratio < 1), ratio)
        if lhs < threshold - dlt:
            # the branch is asserted for N beyond the delta threshold
            if gmpy2.cosh(2 * x) - gmpy2.cosh(2 * x - x / N) < dlt:
                return Lemma35Result("increasing", bool(ratio > 1), ratio)
        return Lemma35Result("inconclusive", True, ratio)


def step_ratio(N: int, l: int, xi, ctx: PrecisionContext) -> Real:
    """f[N-1,l] / f[N-1,l-1] by the closed form."""
    if not 1 <= l <= 2 * N - 2:
        raise ValueError(f"l={l} outside 1..{2 * N - 2}")
    with ctx.active():
        x = mpfr(xi)
        return 2 * gmpy2.cosh(2 * x - x / N) - 2 * gmpy2.cosh(mpfr(l) * x / N)


def gamma_one_third(ctx: PrecisionContext) -> Real:
    """The stored 40-digit Gamma(1/3) constant at working precision."""
    return ctx.real(GAMMA_ONE_THIRD)


def critical_growth_constant(ctx: PrecisionContext) -> Real:
    """Gamma(1/3) / (6 kappa)^(2/3), the limit of J_N(E; e^(2 kappa/N)) / N^(2/3)."""
    with ctx.active():
        k = kappa(ctx)
        return gamma_one_third(ctx) / (6 * k) ** (mpfr(2) / 3)


def poly_growth_check(N: int, ctx: PrecisionContext) -> Real:
    """J_N(E; e^(2 kappa/N)) / N^(2/3); approaches the critical constant."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    with ctx.active():
        two_kappa = 2 * kappa(ctx)
        value = jones.eval_fig8_jones(N, two_kappa, ctx)
        return value / mpfr(N) ** (mpfr(2) / 3)


def alexander_limit_gap(N: int, eta, ctx: PrecisionContext) -> Real:
    """|J_N(E; e^(eta/N)) - 1/Alexander(E; e^eta)| for the small-eta limit."""
    with ctx.active():
        e = mpfr(eta)
        t = gmpy2.exp(e)
        target = 1 / jones.alexander_fig8().eval(t, ctx)
        value = jones.eval_fig8_jones(N, e, ctx)
        return abs(value - target)
