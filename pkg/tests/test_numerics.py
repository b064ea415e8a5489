import random

import gmpy2
import mpmath as mp
import pytest
from gmpy2 import mpfr

from fig8cable.numerics import (
    GAMMA_ONE_THIRD,
    DomainError,
    PrecisionContext,
    format_real,
    required_bits,
)
from oracles import as_real, below, dilog_series_oracle, gap, rel_gap

mp.mp.dps = 60


class TestPrecisionContext:
    def test_defaults(self, ctx):
        assert ctx.target_digits == 30
        assert ctx.working_bits == 160

    def test_from_digits_matches_default(self):
        assert PrecisionContext.from_digits(30) == PrecisionContext(30, 160)

    def test_rejects_undersized_working_bits(self):
        with pytest.raises(ValueError):
            PrecisionContext(30, required_bits(30) - 1)

    def test_rejects_nonpositive_digits(self):
        with pytest.raises(ValueError):
            PrecisionContext(0, 160)

    def test_doubled(self, ctx):
        assert ctx.doubled().working_bits == 320
        assert ctx.doubled().target_digits == 30

    def test_real_parses_decimal_strings_at_working_precision(self, ctx):
        x = ctx.real("0.6")
        assert x.precision == 160
        assert below(gap(x, as_real(ctx, mp.mpf(6) / 10)), "1e-45")

    def test_recompute_agreement_all_ops(self, ctx):
        # the central contract: doubling the precision leaves the first
        # target_digits digits of every operation unchanged
        rng = random.Random(1001)
        double = ctx.doubled()
        ops = {
            "exp": (lambda c, x: c.exp(x), lambda r: 6 * r - 3),
            "log": (lambda c, x: c.log(x), lambda r: 5 * r + 1e-3),
            "sinh": (lambda c, x: c.sinh(x), lambda r: 8 * r - 4),
            "cosh": (lambda c, x: c.cosh(x), lambda r: 8 * r - 4),
            "sqrt": (lambda c, x: c.sqrt(x), lambda r: 10 * r + 1e-6),
            "arccosh": (lambda c, x: c.arccosh(x), lambda r: 1 + 3 * r),
            "dilog": (lambda c, x: c.dilog(x), lambda r: 1 - 5.9 * r),
        }
        tol = ctx.tolerance()
        for name, (op, domain) in ops.items():
            for _ in range(100):
                x = domain(rng.random())  # dyadic float: identical in both contexts
                lo = op(ctx, x)
                hi = op(double, x)
                scale = max(mpfr(1), abs(hi))
                assert gap(lo, hi) < tol * scale, f"{name}({x}) moved beyond 30 digits"

    def test_results_do_not_depend_on_thread_context(self, ctx):
        with gmpy2.context(precision=7):
            inside = ctx.exp(ctx.real("1.5"))
        outside = ctx.exp(ctx.real("1.5"))
        assert inside == outside

    def test_concurrent_invocations_bit_identical(self, ctx):
        # operations are pure functions of (input, context): many threads
        # must reproduce the single-threaded bits exactly
        from concurrent.futures import ThreadPoolExecutor

        inputs = [x / 16 for x in range(-32, 16)]
        serial = [ctx.dilog(x) for x in inputs]
        with ThreadPoolExecutor(max_workers=8) as pool:
            threaded = list(pool.map(ctx.dilog, inputs))
        assert serial == threaded


class TestDilog:
    def test_zero(self, ctx):
        assert ctx.dilog(0) == 0

    def test_one_is_basel_value(self, ctx):
        assert below(gap(ctx.dilog(1), as_real(ctx, mp.pi**2 / 6)), "1e-45")

    def test_half_against_direct_series_oracle(self, ctx):
        # the independent oracle: plain summation of x^k/k^2 to 50+ digits,
        # checked against the closed form pi^2/12 - ln(2)^2/2 before the
        # reflection branch is trusted with anything
        series = dilog_series_oracle("0.5")
        closed = mp.pi**2 / 12 - mp.log(2) ** 2 / 2
        assert abs(series - closed) < mp.mpf("1e-50")
        assert below(gap(ctx.dilog("0.5"), as_real(ctx, series)), "1e-45")

    def test_reflection_branch_against_series_path(self, ctx):
        # 0.75 reflects onto 0.25; the oracle sums the series at 0.75 is not
        # possible, so use mpmath's independent polylog
        assert below(gap(ctx.dilog("0.75"), as_real(ctx, mp.polylog(2, mp.mpf(3) / 4))), "1e-45")

    def test_reflection_identity_random(self, ctx):
        rng = random.Random(1002)
        with ctx.active():
            pi2_6 = ctx.pi() * ctx.pi() / 6
            for _ in range(20):
                x = ctx.real(rng.uniform(1e-3, 1 - 1e-3))
                lhs = ctx.dilog(x) + ctx.dilog(1 - x) + ctx.log(x) * ctx.log(1 - x)
                assert gap(lhs, pi2_6) < mpfr("1e-30")

    def test_strictly_increasing_on_unit_interval(self, ctx):
        xs = ["0", "0.1", "0.25", "0.5", "0.7", "0.9", "0.99", "1"]
        values = [ctx.dilog(x) for x in xs]
        assert all(values[i] < values[i + 1] for i in range(len(values) - 1))

    @pytest.mark.parametrize("x", ["-0.3", "-0.5", "-0.75", "-0.999", "-1", "-1.5", "-3", "-40"])
    def test_negative_branches_against_mpmath(self, ctx, x):
        assert below(gap(ctx.dilog(x), as_real(ctx, mp.polylog(2, mp.mpf(x)))), "1e-42")

    def test_near_one_from_below(self, ctx):
        x = "0.999999999"
        assert below(gap(ctx.dilog(x), as_real(ctx, mp.polylog(2, mp.mpf(x)))), "1e-42")

    def test_domain_error_above_one(self, ctx):
        with pytest.raises(DomainError):
            ctx.dilog("1.0000000001")


class TestArccosh:
    def test_at_one(self, ctx):
        assert ctx.arccosh(1) == 0

    def test_three_halves(self, ctx):
        # arccosh(3/2) = log((3 + sqrt 5)/2)
        expected = as_real(ctx, mp.log((3 + mp.sqrt(5)) / 2))
        assert below(gap(ctx.arccosh("1.5"), expected), "1e-45")

    def test_inverse_pair(self, ctx):
        assert below(gap(ctx.arccosh(ctx.cosh(2)), 2), "1e-45")

    def test_roundtrip_random(self, ctx):
        rng = random.Random(1003)
        for _ in range(25):
            y = rng.uniform(-8, 8)
            assert below(gap(ctx.arccosh(ctx.cosh(y)), abs(mpfr(y))), "1e-40")

    def test_accuracy_just_above_one(self, ctx):
        # the branch point amplifies input rounding by ~1/(x-1); relative
        # agreement to 28 digits is the honest contract here
        x = ctx.real("1.000000000000000001")
        oracle = as_real(ctx, mp.acosh(mp.mpf("1.000000000000000001")))
        assert rel_gap(ctx.arccosh(x), oracle) < mpfr("1e-28")

    def test_domain_error(self, ctx):
        with pytest.raises(DomainError):
            ctx.arccosh("0.999")


class TestElementary:
    def test_sinh_zero(self, ctx):
        assert ctx.sinh(0) == 0

    def test_log_exp_one(self, ctx):
        assert below(gap(ctx.log(ctx.exp(1)), 1), "1e-45")

    def test_product_to_sum_identity_random(self, ctx):
        # 4 sinh(a) sinh(b) = 2 cosh(a+b) - 2 cosh(a-b), the rewriting the
        # fast summation kernel relies on
        rng = random.Random(1004)
        with ctx.active():
            for _ in range(25):
                a = ctx.real(rng.uniform(0.01, 4))
                b = ctx.real(rng.uniform(0.01, 4))
                lhs = 4 * ctx.sinh(a) * ctx.sinh(b)
                rhs = 2 * ctx.cosh(a + b) - 2 * ctx.cosh(a - b)
                assert rel_gap(lhs, rhs) < mpfr("1e-45")

    def test_pi(self, ctx):
        assert below(gap(ctx.pi(), as_real(ctx, mp.pi)), "1e-45")

    def test_log_domain(self, ctx):
        with pytest.raises(DomainError):
            ctx.log(0)
        with pytest.raises(DomainError):
            ctx.log(-2)

    def test_sqrt_domain(self, ctx):
        with pytest.raises(DomainError):
            ctx.sqrt(-1)

    def test_power(self, ctx):
        with ctx.active():
            third = mpfr(1) / 3
        assert below(gap(ctx.power(8, third), 2), "1e-44")


class TestGammaConstant:
    def test_against_library_gamma(self, ctx):
        assert abs(mp.mpf(GAMMA_ONE_THIRD) - mp.gamma(mp.mpf(1) / 3)) < mp.mpf("1e-39")

    def test_against_integral_oracle(self):
        # Gamma(1/3) = Int_0^inf t^(-2/3) e^(-t) dt, evaluated by quadrature
        # with no reference to any gamma implementation
        oracle = mp.quad(lambda t: t ** (-mp.mpf(2) / 3) * mp.e ** (-t), [0, mp.inf])
        assert abs(mp.mpf(GAMMA_ONE_THIRD) - oracle) < mp.mpf("1e-15")


class TestFormatReal:
    def test_zero(self):
        assert format_real(mpfr(0), 30) == "0"

    def test_pi_thirty_digits(self, ctx):
        assert format_real(ctx.pi(), 30) == "3.14159265358979323846264338328e+00"

    def test_negative_and_small(self, ctx):
        assert format_real(ctx.real("-0.25"), 5) == "-2.5000e-01"
        assert format_real(ctx.real("1e-30"), 3) == "1.00e-30"

    def test_no_rerounding_of_high_precision_values(self, ctx):
        # formatting must read the mpfr as-is even under a coarse thread context
        value = ctx.dilog("0.5")
        with gmpy2.context(precision=11):
            text = format_real(value, 30)
        assert text == "5.82240526465012505902656320160e-01"

    def test_rejects_bad_digits(self, ctx):
        with pytest.raises(ValueError):
            format_real(ctx.pi(), 0)
