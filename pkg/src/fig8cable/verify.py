"""Verification suites: every identity, inequality, and bound the library
relies on, run as an executable report.

Four suites (poly, asymptotics, rep, cs) cover the exact-polynomial layer,
the growth-rate layer, the representation algebra, and the Chern-Simons
identities.  Slow convergence tables are only run when deep=True.  All
sampling is seeded, so reports are reproducible byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import gmpy2
from gmpy2 import mpfr

from . import asymptotics as asy
from . import chern_simons as cs
from . import jones
from . import representation as rep
from .jones import CableSpec, TermIndex
from .laurent import LaurentPoly, NotDivisibleError
from .numerics import PrecisionContext, Real, format_real

SUITES = ("poly", "asymptotics", "rep", "cs")

_SEED = 20260810


@dataclass(frozen=True)
class Check:
    check_id: str
    statement: str
    observed: str
    tolerance: str | None
    passed: bool

    def to_dict(self) -> dict:
        return {
            "id": self.check_id,
            "statement": self.statement,
            "observed": self.observed,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


@dataclass
class VerifyReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }


class _Collector:
    def __init__(self, suite: str, ctx: PrecisionContext):
        self.report = VerifyReport(suite)
        self.ctx = ctx

    def residual(self, check_id: str, statement: str, observed, tol) -> None:
        with self.ctx.active():
            obs = mpfr(observed)
            tolerance = mpfr(tol)
            ok = bool(obs <= tolerance)
        self.report.checks.append(
            Check(check_id, statement, format_real(obs, 3), format_real(tolerance, 3), ok)
        )

    def boolean(self, check_id: str, statement: str, ok: bool, observed: str = "") -> None:
        self.report.checks.append(Check(check_id, statement, observed or str(bool(ok)), None, bool(ok)))

    def info(self, check_id: str, statement: str, observed: str) -> None:
        self.report.checks.append(Check(check_id, statement, observed, None, True))


# ---------------------------------------------------------------------------


def suite_poly(ctx: PrecisionContext, deep: bool = False) -> VerifyReport:
    col = _Collector("poly", ctx)

    expected_j2 = LaurentPoly({4: 1, 2: -1, 0: 1, -2: -1, -4: 1})
    col.boolean(
        "habiro_m2",
        "J_2(E;t) expands to t^2 - t + 1 - 1/t + 1/t^2",
        jones.habiro_fig8_poly(2) == expected_j2,
    )

    amphi = all(jones.habiro_fig8_poly(m).mirror() == jones.habiro_fig8_poly(m) for m in range(1, 9))
    col.boolean("fig8_amphichiral", "J_m(E;t) is invariant under t -> 1/t for m <= 8", amphi)

    n_max, b_max = (12, 3) if deep else (8, 2)
    try:
        polys = {(N, b): jones.cable_poly(CableSpec(N, b)) for N in range(1, n_max + 1) for b in range(b_max + 1)}
        col.boolean(
            "cable_divisible",
            f"the double sum is exactly divisible by t^(N/2)-t^(-N/2) for N <= {n_max}, b <= {b_max}",
            True,
        )
    except NotDivisibleError as exc:
        col.boolean("cable_divisible", "exact divisibility of the cable double sum", False, repr(exc))
        polys = {}

    if polys:
        col.boolean("cable_N1", "J_1 of every cable is the constant 1", all(
            polys[(1, b)] == LaurentPoly.one() for b in range(b_max + 1)
        ))
        ones = {f"N={N},b={b}": sum(c for _, c in p.items()) for (N, b), p in sorted(polys.items()) if N <= 6}
        col.info(
            "cable_value_at_one",
            "J_N(cable; 1), recorded empirically (no normalisation asserted)",
            "; ".join(f"{k}: {v}" for k, v in ones.items()),
        )

        worst = mpfr(0)
        with ctx.active():
            for N in range(2, min(n_max, 8) + 1):
                for b in (0, 2):
                    for xs in ("0.3", "1.0"):
                        jv = jones.eval_cable_jones(CableSpec(N, b), xs, ctx)
                        t = gmpy2.exp(mpfr(xs) / N)
                        exact = polys[(N, b)].eval(t, ctx)
                        worst = max(worst, abs(jv.value(ctx) - exact) / abs(exact))
        col.residual(
            "cable_cross_pipeline",
            "exact polynomial evaluation matches the floating pipeline at t = e^(xi/N)",
            worst,
            "1e-20",
        )

        worst = mpfr(0)
        with ctx.active():
            for m in range(1, 9):
                poly = jones.habiro_fig8_poly(m)
                for es in ("0.5", "2.0"):
                    t = gmpy2.exp(mpfr(es) / m)
                    exact = poly.eval(t, ctx)
                    value = jones.eval_fig8_jones(m, es, ctx)
                    worst = max(worst, abs(value - exact) / abs(exact))
        col.residual(
            "fig8_cross_pipeline",
            "cyclotomic-sum evaluation matches the exact polynomial at t = e^(eta/m)",
            worst,
            "1e-20",
        )

    alex = {b: jones.alexander_cable(b) for b in range(4)}
    col.boolean(
        "alexander_mirror",
        "the cable Alexander polynomial is invariant under t -> 1/t for b <= 3",
        all(p.mirror() == p for p in alex.values()),
    )
    col.boolean(
        "alexander_at_one",
        "the cable Alexander polynomial evaluates to 1 at t = 1 (sum of coefficients)",
        all(sum(c for _, c in p.items()) == 1 for p in alex.values()),
    )
    with ctx.active():
        worst = mpfr(0)
        ek = gmpy2.exp(asy.kappa(ctx))
        for p in alex.values():
            worst = max(worst, abs(p.eval(ek, ctx)))
    col.residual(
        "alexander_zero_at_exp_kappa",
        "e^kappa is a zero of the cable Alexander polynomial",
        worst,
        "1e-25",
    )

    sample = jones.cable_poly(CableSpec(5, 1))
    col.boolean(
        "serialization_roundtrip",
        "JSON round trip reproduces the polynomial exactly",
        LaurentPoly.from_json(sample.to_json()) == sample,
    )
    return col.report


def suite_asymptotics(ctx: PrecisionContext, deep: bool = False) -> VerifyReport:
    col = _Collector("asymptotics", ctx)
    rng = random.Random(_SEED)

    with ctx.active():
        k = asy.kappa(ctx)
        col.residual("kappa_defining", "cosh(2 kappa) = 3/2", abs(gmpy2.cosh(2 * k) - mpfr(3) / 2), "1e-40")
        e2k = gmpy2.exp(2 * k)
        col.residual("kappa_root", "e^(2 kappa) is a root of t - 3 + 1/t", abs(e2k - 3 + 1 / e2k), "1e-40")
        col.residual("phi_at_kappa", "phi(kappa) = 0", abs(asy.phi(k, ctx)), "1e-20")
        col.residual("S_at_kappa", "S(xi) -> 0 as xi -> kappa (probe at kappa + 1e-20)", abs(asy.S_of_xi(k + mpfr("1e-20"), ctx)), "1e-15")

        ok = True
        for xs in ("0.5", "0.6", "1.0", "2.0", "5.0"):
            x = mpfr(xs)
            p = asy.phi(x, ctx)
            ok = ok and 0 < p < 2 * x
        col.boolean("phi_bounds", "0 < phi(xi) < 2 xi for sampled xi > kappa", ok)

        ok = all(asy.S_of_xi(xs, ctx) > 0 for xs in ("0.6", "1.0", "2.0"))
        col.boolean("S_positive", "S(xi) > 0 for sampled xi > kappa", ok)

        worst = mpfr(0)
        h = mpfr("1e-8")
        for xs in ("0.6", "1.0", "2.0"):
            x = mpfr(xs)
            ds = (asy.S_of_xi(x + h, ctx) - asy.S_of_xi(x - h, ctx)) / (2 * h)
            worst = max(worst, abs(ds - 2 * gmpy2.log(rep.ell(x, ctx))))
        col.residual("S_derivative", "dS/dxi = 2 log ell(xi) by central differences (h = 1e-8)", worst, "1e-6")

    matches = []
    for xs, N in (("1.0", 200), ("1.0", 500), ("2.0", 200), ("2.0", 500)):
        r = asy.max_term(N, xs, ctx)
        matches.append(r.observed == r.predicted)
    col.boolean(
        "max_term_location",
        "brute-force argmax of f[N-1,l] sits at floor(phi N / xi) - 1 (sampled)",
        all(matches),
    )
    sub = all(asy.max_term(500, xs, ctx, allow_subcritical=True).observed == 0 for xs in ("0.2", "0.48"))
    col.boolean("max_term_subcritical", "below kappa the last row is maximised at l = 0", sub)

    failures = 0
    trials = 1000 if deep else 250
    with ctx.active():
        for _ in range(trials):
            N = rng.randrange(2, 81)
            d = rng.randrange(1, N)
            l = rng.randrange(0, max(1, 2 * d - 1))
            xs = rng.choice(("0.5", "1.0", "2.0"))
            spec = CableSpec(N, rng.randrange(0, 3))
            f_here = jones.eval_f(TermIndex(d, l), spec, xs, ctx)
            f_prev = jones.eval_f(TermIndex(d - 1, l), spec, xs, ctx)
            if not f_here > f_prev:
                failures += 1
    col.boolean(
        "terms_grow_in_d",
        f"f[d,l] > f[d-1,l] on {trials} random instances",
        failures == 0,
        f"{failures} failures",
    )

    failures = 0
    with ctx.active():
        for _ in range(60):
            N = rng.randrange(2, 120)
            xs = rng.choice(("0.6", "1.0", "2.0"))
            spec = CableSpec(N, 0)
            x = mpfr(xs)
            S, fmax = jones.s_sum_cancellation(spec, xs, ctx)
            lower = (1 - gmpy2.exp(-x / 2)) * fmax
            upper = N * N * fmax
            if not lower < S < upper:
                failures += 1
    col.boolean(
        "sandwich",
        "(1 - e^(-xi/2)) max f < S < N^2 max f on random instances",
        failures == 0,
        f"{failures} failures",
    )

    worst = mpfr(0)
    with ctx.active():
        for _ in range(200):
            N = rng.randrange(2, 60)
            l = rng.randrange(1, 2 * N - 1)
            xs = rng.choice(("0.5", "1.0", "2.0"))
            spec = CableSpec(N, 0)
            direct = jones.eval_f(TermIndex(N - 1, l), spec, xs, ctx) / jones.eval_f(
                TermIndex(N - 1, l - 1), spec, xs, ctx
            )
            closed = asy.step_ratio(N, l, xs, ctx)
            worst = max(worst, abs(direct - closed) / abs(closed))
    col.residual(
        "step_ratio_identity",
        "f[N-1,l]/f[N-1,l-1] = 2cosh(2xi - xi/N) - 2cosh(l xi/N)",
        worst,
        "1e-25",
    )

    with ctx.active():
        worst = mpfr(0)
        for N, xs in ((50, "0.6"), (120, "1.0"), (200, "2.0")):
            x = mpfr(xs)
            S, fmax = jones.s_sum_cancellation(CableSpec(N, 0), xs, ctx)
            lost = gmpy2.log2(fmax / S)
            budget = gmpy2.log2(1 / (1 - gmpy2.exp(-x / 2))) + 1
            worst = max(worst, lost - budget)
    col.boolean(
        "cancellation_audit",
        "bits lost to the alternating sum stay within the lower-bound budget",
        bool(worst <= 0),
        format_real(worst, 3),
    )

    with ctx.active():
        gaps = [asy.alexander_limit_gap(N, "0.1", ctx) for N in (100, 400)]
        ratio = gaps[1] / gaps[0]
    col.residual(
        "alexander_limit",
        "J_N(E; e^(0.1/N)) approaches 1/Alexander(E; e^0.1) (gap ratio per quadrupling)",
        ratio,
        "0.5",
    )

    with ctx.active():
        const = asy.critical_growth_constant(ctx)
        r = asy.poly_growth_check(1000, ctx)
        rel = abs(r / const - 1)
    col.residual(
        "critical_growth",
        "J_N(E; e^(2 kappa/N)) / N^(2/3) within 10% of Gamma(1/3)/(6 kappa)^(2/3) at N=1000",
        rel,
        "0.1",
    )

    if deep:
        grid = [500, 1000, 2000, 4000]
        rows = asy.growth_table(0, "1.0", grid, ctx)
        with ctx.active():
            decreasing = all(rows[i + 1].gap < rows[i].gap for i in range(len(rows) - 1))
            ratios_ok = all(rows[i + 1].gap / rows[i].gap < mpfr("0.7") for i in range(len(rows) - 1))
        col.boolean(
            "growth_convergence_cable",
            "cable gaps at xi=1.0, b=0 decrease with ratio < 0.7 per doubling of N",
            decreasing and ratios_ok,
        )
        rows = asy.growth_table_fig8("2.0", grid, ctx)
        with ctx.active():
            decreasing = all(rows[i + 1].gap < rows[i].gap for i in range(len(rows) - 1))
            ratios_ok = all(rows[i + 1].gap / rows[i].gap < mpfr("0.7") for i in range(len(rows) - 1))
        col.boolean(
            "growth_convergence_fig8",
            "figure-eight gaps at eta=2.0 decrease with ratio < 0.7 per doubling of N",
            decreasing and ratios_ok,
        )
    return col.report


def suite_rep(ctx: PrecisionContext, deep: bool = False) -> VerifyReport:
    col = _Collector("rep", ctx)
    with ctx.active():
        k = asy.kappa(ctx)
        col.residual("delta_at_kappa", "delta(kappa) = 0", abs(rep.delta(k, ctx)), "1e-20")
        col.residual("ell_at_kappa", "ell(kappa) = 1", abs(rep.ell(k, ctx) - 1), "1e-20")
        col.boolean(
            "ell_above_one",
            "ell(u) > 2cosh^2(2u) - cosh(2u) - 2 > 1 for u > kappa (sampled)",
            all(
                rep.ell(mpfr(us), ctx) > 2 * gmpy2.cosh(2 * mpfr(us)) ** 2 - gmpy2.cosh(2 * mpfr(us)) - 2 > 1
                for us in ("0.6", "1.0", "2.0")
            ),
        )
        # quadratic satisfied by delta: substitute back into the defining radical
        worst = mpfr(0)
        for us in ("0.6", "1.0", "2.0", "5.0"):
            u = mpfr(us)
            T = gmpy2.exp(2 * u) + gmpy2.exp(-2 * u)
            d = rep.delta(u, ctx)
            worst = max(worst, abs((2 * d - (T - 3)) ** 2 - (T + 1) * (T - 3)))
        col.residual("delta_quadratic", "delta solves z^2 - (T-3)z - (T-3) = 0, T = e^(2u)+e^(-2u)", worst, "1e-25")

        grid = [mpfr(s) for s in ("0.55", "0.6", "0.8", "1.0", "1.5", "2.0", "3.0", "5.0")]
        values = [rep.ell(u, ctx) for u in grid]
        col.boolean(
            "ell_monotone_empirical",
            "ell is strictly increasing on the sampled grid (empirical observation only)",
            all(values[i] < values[i + 1] for i in range(len(values) - 1)),
        )

    # one line per relation, worst residual over the (u, b) grid
    statements = {
        "knot_relation": "x y^-1 x^-1 y x = y x y^-1 x^-1 y holds in the image",
        "pr_commute": "the images of p and r commute",
        "meridian_square": "p^2 maps to the image of x",
        "longitude_word": "the word x y^-1 x y x^-2 y x y^-1 x^-1 lands on the longitude matrix",
        "r_closed_form": "the defining product lambda_E x^b equals the closed form of the image of r",
        "cable_longitude": "the cable longitude image is the square of the fig-eight one",
    }
    per_relation: dict[str, Real] = {}
    for us in ("0.6", "1.0", "2.0", "5.0"):
        for b in (0, 1, 3):
            data = rep.build_rep(us, b, ctx)
            residuals = rep.verify_relations(data, ctx)
            with ctx.active():
                for key, value in residuals.items():
                    if key.startswith("det_"):
                        key = "determinants"
                    per_relation[key] = max(per_relation.get(key, mpfr(0)), value)
    for key, value in per_relation.items():
        col.residual(
            f"relation_{key}",
            statements.get(key, "every generator image has determinant 1"),
            value,
            "1e-25",
        )

    worst = mpfr(0)
    with ctx.active():
        for us in ("0.6", "1.0", "2.0", "5.0"):
            worst = max(worst, rep.a_poly_fig8_residual(us, ctx))
    col.residual("a_poly_fig8", "ell + 1/ell = e^(4u)-e^(2u)-2-e^(-2u)+e^(-4u)", worst, "1e-25")

    worst = mpfr(0)
    with ctx.active():
        for us in ("0.6", "1.0", "2.0"):
            worst = max(worst, rep.a_poly_cable_check(us, ctx))
            worst = max(worst, rep.a_poly_cable_factor(us, ctx))
    col.residual(
        "a_poly_cable",
        "ell^2 + ell^-2 matches the squared relation; the cable A-polynomial factor vanishes "
        "at (M, L) = (e^(u/2), ell^2)",
        worst,
        "1e-25",
    )

    # residuals must shrink when the working precision doubles
    data = rep.build_rep("1.0", 1, ctx)
    low = rep.verify_relations(data, ctx)
    dctx = ctx.doubled()
    data2 = rep.build_rep("1.0", 1, dctx)
    high = rep.verify_relations(data2, dctx)
    with ctx.active():
        floor = mpfr(2) ** (-2 * ctx.working_bits + 40)
        shrunk = all(high[key] <= max(low[key], floor) for key in low)
    col.boolean(
        "residuals_are_roundoff",
        "every relation residual shrinks (or stays at noise) when precision doubles",
        shrunk,
    )
    return col.report


def suite_cs(ctx: PrecisionContext, deep: bool = False) -> VerifyReport:
    col = _Collector("cs", ctx)
    tol = "1e-12"

    worst = mpfr(0)
    us_list = ("0.6", "1.0", "2.0", "4.0") if deep else ("0.6", "1.0", "2.0")
    with ctx.active():
        for us in us_list:
            result = cs.cs_cable(us, ctx, tol)
            worst = max(worst, result.integral_residual)
    col.residual("dilog_equals_integral", "S(u) = 2 Int_kappa^u log ell(s) ds", worst, "1e-10")

    with ctx.active():
        r1 = cs.cs_cable("1.0", ctx, tol)
        two_route = abs(r1.cs - (r1.S - mpfr("1.0") * r1.v / 4))
    col.residual("cs_two_routes", "integral route equals S(u) - u v(u)/4", two_route, "1e-10")

    worst = mpfr(0)
    with ctx.active():
        for xs in ("0.6", "1.0", "2.0"):
            a = cs.cs_cable(xs, ctx, tol)
            b = cs.cs_fig8(2 * mpfr(xs), ctx, tol)
            worst = max(worst, abs(a.cs - b.cs))
    col.residual("cable_equals_fig8", "CS_cable(xi) = CS_fig8(2 xi) with v_E read at 2 xi", worst, "1e-10")

    with ctx.active():
        worst_fd = mpfr(0)
        worst_mid = mpfr(0)
        for us in ("0.6", "1.0", "3.0"):
            chk = cs.verify_derivative_identity(us, ctx)
            worst_fd = max(worst_fd, chk.fd_residual)
            worst_mid = max(worst_mid, max(chk.intermediate_residual, chk.closed_residual))
    col.residual("derivative_identity", "exp(dS/du) = ell(u)^2 by central differences", worst_fd, "1e-6")
    col.residual(
        "derivative_intermediate",
        "(e^phi - e^(-2u)) / (1 - e^(phi-2u)) = e^(phi+2u) + e^(-phi-2u) - 2 = ell(u)",
        worst_mid,
        "1e-25",
    )

    col.residual(
        "kirk_klassen_path",
        "quadrature of u v' - u' v along the representation path matches "
        "4 (u log ell - 2 Int log ell); the constant companion path contributes 0",
        cs.kirk_klassen_residual("1.0", ctx, tol),
        "1e-10",
    )

    with ctx.active():
        i1 = cs.integral_log_ell("1.0", mpfr(tol), ctx)
        i2 = cs.integral_log_ell("1.0", mpfr(tol) / 16, ctx)
    col.residual(
        "quadrature_self_consistency",
        "tightening the tolerance 16x moves the integral by less than tol",
        abs(i1 - i2),
        tol,
    )

    with ctx.active():
        k = asy.kappa(ctx)
        col.residual("phi_kappa_boundary", "phi(kappa) = 0", abs(asy.phi(k, ctx)), "1e-15")
        col.residual(
            "S_kappa_boundary",
            "S -> 0 at the kappa boundary",
            abs(asy.S_of_xi(k + mpfr("1e-20"), ctx)),
            "1e-15",
        )
    return col.report


_SUITE_RUNNERS = {
    "poly": suite_poly,
    "asymptotics": suite_asymptotics,
    "rep": suite_rep,
    "cs": suite_cs,
}


def run_suites(names: list[str], ctx: PrecisionContext, deep: bool = False) -> list[VerifyReport]:
    return [_SUITE_RUNNERS[name](ctx, deep) for name in names]
