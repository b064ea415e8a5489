import gmpy2
import mpmath as mp
import pytest
from gmpy2 import mpfr

from fig8cable import asymptotics as asy
from fig8cable import representation as rep
from fig8cable.numerics import DomainError
from oracles import as_real, below, gap, rel_gap

mp.mp.dps = 60


def delta_oracle(u: str) -> mp.mpf:
    T = mp.e ** (2 * mp.mpf(u)) + mp.e ** (-2 * mp.mpf(u))
    return (T - 3 + mp.sqrt((T + 1) * (T - 3))) / 2


def ell_oracle(u: str) -> mp.mpf:
    x = mp.mpf(u)
    T = mp.e ** (2 * x) + mp.e ** (-2 * x)
    rad = mp.sqrt((T + 1) * (T - 3))
    return (mp.e ** (4 * x) - mp.e ** (2 * x) - 2 - mp.e ** (-2 * x) + mp.e ** (-4 * x)) / 2 + (
        mp.e ** (2 * x) - mp.e ** (-2 * x)
    ) / 2 * rad


class TestDelta:
    def test_zero_at_kappa(self, ctx):
        assert below(rep.delta(asy.kappa(ctx), ctx), "1e-20")

    def test_oracle_value_at_one(self, ctx):
        assert below(gap(rep.delta("1.0", ctx), as_real(ctx, delta_oracle("1.0"))), "1e-42")

    def test_solves_its_quadratic(self, ctx):
        # substituting back into the defining radical:
        # (2 delta - (T-3))^2 = (T+1)(T-3), i.e. z^2 - (T-3) z - (T-3) = 0
        with ctx.active():
            for u in ("0.6", "1.0", "2.0"):
                x = mpfr(u)
                T = gmpy2.exp(2 * x) + gmpy2.exp(-2 * x)
                d = rep.delta(x, ctx)
                assert below(d * d - (T - 3) * d - (T - 3), "1e-40")

    def test_domain_error_below_kappa(self, ctx):
        with pytest.raises(DomainError):
            rep.delta("0.3", ctx)


class TestEll:
    def test_one_at_kappa(self, ctx):
        assert below(gap(rep.ell(asy.kappa(ctx), ctx), 1), "1e-20")

    def test_oracle_value_at_one(self, ctx):
        assert below(gap(rep.ell("1.0", ctx), as_real(ctx, ell_oracle("1.0"))), "1e-40")

    def test_exceeds_lemma_lower_bound(self, ctx):
        # ell(u) > 2 cosh^2(2u) - cosh(2u) - 2 > 1
        with ctx.active():
            for u in ("0.6", "1.0", "3.0"):
                x = mpfr(u)
                bound = 2 * gmpy2.cosh(2 * x) ** 2 - gmpy2.cosh(2 * x) - 2
                assert rep.ell(x, ctx) > bound > 1

    def test_hyperbolic_form_agrees(self, ctx):
        for u in ("0.55", "1.0", "2.0", "5.0"):
            assert rel_gap(rep.ell(u, ctx), rep.ell_hyperbolic(u, ctx)) < mpfr("1e-38")

    def test_a_polynomial_relation(self, ctx):
        # ell - (e^4u - e^2u - 2 - e^-2u + e^-4u) + 1/ell = 0
        for u in ("0.6", "1.0", "2.0", "5.0"):
            assert below(rep.a_poly_fig8_residual(u, ctx), "1e-25")

    def test_monotone_on_sample(self, ctx):
        values = [rep.ell(u, ctx) for u in ("0.5", "0.6", "0.8", "1.0", "2.0", "5.0")]
        assert all(values[i] < values[i + 1] for i in range(len(values) - 1))

    def test_domain_error(self, ctx):
        with pytest.raises(DomainError):
            rep.ell("0.2", ctx)


class TestEllPrime:
    def test_matches_finite_differences(self, ctx):
        with ctx.active():
            h = mpfr("1e-12")
            for u in ("0.6", "1.0", "2.0"):
                x = mpfr(u)
                fd = (rep.ell(x + h, ctx) - rep.ell(x - h, ctx)) / (2 * h)
                assert rel_gap(rep.ell_prime(x, ctx), fd) < mpfr("1e-10")

    def test_blows_up_toward_kappa(self, ctx):
        with ctx.active():
            k = asy.kappa(ctx)
            assert rep.ell_prime(k + mpfr("1e-8"), ctx) > rep.ell_prime(k + mpfr("1e-4"), ctx) > 100


class TestBuildRep:
    def test_determinants_one(self, ctx):
        data = rep.build_rep("1.0", 1, ctx)
        with ctx.active():
            for name, m in data.mats.items():
                assert below(m.det() - 1, "1e-40"), name

    def test_meridian_square_is_x(self, ctx):
        data = rep.build_rep("0.8", 0, ctx)
        with ctx.active():
            assert below((data.mats["p"] @ data.mats["p"]).max_abs_diff(data.mats["x"]), "1e-40")

    def test_longitude_entries(self, ctx):
        data = rep.build_rep("1.3", 2, ctx)
        m = data.mats["lambda_E"]
        with ctx.active():
            assert below(gap(m.a, rep.ell("1.3", ctx)), "1e-40")
            assert below(gap(m.d, 1 / rep.ell(mpfr("1.3"), ctx)), "1e-40")
        assert m.c == 0

    def test_cable_longitude_is_square(self, ctx):
        data = rep.build_rep("1.0", 0, ctx)
        with ctx.active():
            lam = data.mats["lambda_E"]
            assert below((lam @ lam).max_abs_diff(data.mats["lambda"]), "1e-40")

    def test_rejects_subcritical(self, ctx):
        with pytest.raises(DomainError):
            rep.build_rep("0.4", 0, ctx)

    def test_rejects_negative_b(self, ctx):
        with pytest.raises(ValueError):
            rep.build_rep("1.0", -1, ctx)


class TestRelations:
    @pytest.mark.parametrize("u", ["0.6", "1.0", "2.0", "5.0"])
    @pytest.mark.parametrize("b", [0, 1, 3])
    def test_all_residuals_small(self, ctx, u, b):
        data = rep.build_rep(u, b, ctx)
        residuals = rep.verify_relations(data, ctx)
        with ctx.active():
            worst = max(residuals.values())
        assert worst < mpfr("1e-25"), {k: str(v) for k, v in residuals.items()}

    def test_relation_keys_present(self, ctx):
        residuals = rep.verify_relations(rep.build_rep("1.0", 0, ctx), ctx)
        for key in (
            "knot_relation",
            "pr_commute",
            "meridian_square",
            "longitude_word",
            "r_closed_form",
            "cable_longitude",
            "det_x",
            "det_lambda",
        ):
            assert key in residuals

    def test_residuals_shrink_with_precision(self, ctx):
        # confirms the residuals are roundoff, not modelling error
        data_low = rep.build_rep("2.0", 3, ctx)
        low = rep.verify_relations(data_low, ctx)
        dctx = ctx.doubled()
        data_high = rep.build_rep("2.0", 3, dctx)
        high = rep.verify_relations(data_high, dctx)
        with dctx.active():
            noise = mpfr(2) ** (-2 * ctx.working_bits + 60)
            for key, low_val in low.items():
                assert high[key] <= max(low_val, noise), key


class TestAPolynomial:
    def test_cable_relation_at_kappa(self, ctx):
        # ell(kappa) = 1 forces the left side to 2; the right side must agree
        assert below(rep.a_poly_cable_check(asy.kappa(ctx), ctx), "1e-18")

    @pytest.mark.parametrize("u", ["0.6", "1.0", "2.0"])
    def test_cable_relation(self, ctx, u):
        assert below(rep.a_poly_cable_check(u, ctx), "1e-25")

    @pytest.mark.parametrize("u", ["0.6", "1.0", "2.0"])
    def test_cable_factor_vanishes_on_holonomy(self, ctx, u):
        assert below(rep.a_poly_cable_factor(u, ctx), "1e-25")


class TestMat2:
    def test_identity_and_inverse(self, ctx):
        with ctx.active():
            m = rep.Mat2(mpfr(2), mpfr(1), mpfr(3), mpfr(2))  # det = 1
            prod = m @ m.inverse()
            assert below(prod.max_abs_diff(rep.Mat2.identity()), "1e-40")

    def test_negative_powers(self, ctx):
        with ctx.active():
            m = rep.Mat2(mpfr(2), mpfr(1), mpfr(3), mpfr(2))
            assert below((m.power(3) @ m.power(-3)).max_abs_diff(rep.Mat2.identity()), "1e-38")
            assert below(m.power(0).max_abs_diff(rep.Mat2.identity()), "0.5")
