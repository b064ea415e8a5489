"""The SL(2,R) representation of the cable-knot group, as executable algebra.

The knot group of the (2,2b+1)-cable of the figure-eight knot is

    < x, y, p, r |  x y^-1 x^-1 y x = y x y^-1 x^-1 y,
                    p r p r = r p r p,
                    x = p r p r^-1,
                    lambda_E = r x^-b >,

with lambda_E = x y^-1 x y x^-2 y x y^-1 x^-1 the figure-eight longitude
and p the cable meridian.  For u > kappa every image below is a real
matrix of determinant one:

    x |-> [[e^u, 1], [0, e^-u]]            y |-> [[e^u, 0], [-delta(u), e^-u]]
    p |-> [[e^(u/2), 1/(2cosh(u/2))], [0, e^(-u/2)]]     (so p^2 = x)

    delta(u) = (T - 3 + sqrt((T+1)(T-3))) / 2,        T = e^(2u) + e^(-2u),

the longitude going to an upper-triangular matrix with diagonal
(ell(u), 1/ell(u)),

    ell(u) = (e^(4u)-e^(2u)-2-e^(-2u)+e^(-4u))/2
             + (e^(2u)-e^(-2u))/2 * sqrt((T+1)(T-3))
           = cosh(4u) - cosh(2u) - 1 + 2 sinh(2u) sinh(phi(u)),

which satisfies the A-polynomial relation
ell + 1/ell = e^(4u)-e^(2u)-2-e^(-2u)+e^(-4u); the square ell^2 (the cable
longitude eigenvalue) then satisfies the cable relation
ell^2 + ell^-2 = (e^(4u)-e^(2u)-2-e^(-2u)+e^(-4u))^2 - 2.

Everything here is checked numerically: group relations, commutation of the
images of p and r, the longitude word, determinants, and both A-polynomial
identities, each as a residual that must sit at rounding level.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
from gmpy2 import mpfr

from .asymptotics import kappa, phi
from .numerics import DomainError, PrecisionContext, Real


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix of arbitrary-precision reals.

    Arithmetic assumes an active precision context (all callers in this
    module run inside one).
    """

    a: Real
    b: Real
    c: Real
    d: Real

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(mpfr(1), mpfr(0), mpfr(0), mpfr(1))

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def det(self) -> Real:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Mat2":
        det = self.det()
        return Mat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def power(self, n: int) -> "Mat2":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = Mat2.identity()
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def max_abs_diff(self, other: "Mat2") -> Real:
        return max(
            abs(self.a - other.a),
            abs(self.b - other.b),
            abs(self.c - other.c),
            abs(self.d - other.d),
        )


@dataclass(frozen=True)
class RepData:
    """One representation: the parameter u, the derived scalars, and the
    generator images (keys x, y, p, r, lambda_E, lambda)."""

    u: Real
    b: int
    delta: Real
    ell: Real
    mats: dict[str, Mat2]


def _radical(u: Real) -> Real:
    # sqrt((T+1)(T-3)), T = e^(2u)+e^(-2u); real exactly when u >= kappa.
    # A radicand a few ulps below zero is the rounded branch point itself
    # (u = kappa stored at finite precision) and is clamped to zero.
    T = gmpy2.exp(2 * u) + gmpy2.exp(-2 * u)
    rad = (T + 1) * (T - 3)
    if rad < 0:
        if -rad < T * T * mpfr(2) ** (16 - gmpy2.get_context().precision):
            return mpfr(0)
        raise DomainError(f"u={u} is below kappa: the radicand (T+1)(T-3) is negative")
    return gmpy2.sqrt(rad)


def delta(u, ctx: PrecisionContext) -> Real:
    """The lower-left parameter of the image of y; zero exactly at kappa."""
    with ctx.active():
        x = mpfr(u)
        T = gmpy2.exp(2 * x) + gmpy2.exp(-2 * x)
        return (T - 3 + _radical(x)) / 2


def ell(u, ctx: PrecisionContext) -> Real:
    """Longitude eigenvalue ell(u) >= 1, by the exponential closed form.

    The hyperbolic form is computed alongside and must agree to rounding
    level; a disagreement means a transcription bug, not bad input.
    """
    with ctx.active():
        x = mpfr(u)
        rad = _radical(x)
        value = (
            gmpy2.exp(4 * x) - gmpy2.exp(2 * x) - 2 - gmpy2.exp(-2 * x) + gmpy2.exp(-4 * x)
        ) / 2 + (gmpy2.exp(2 * x) - gmpy2.exp(-2 * x)) / 2 * rad
        alt = ell_hyperbolic(x, ctx)
        # near the branch point the radical amplifies rounding by T/(T-3)
        T = gmpy2.exp(2 * x) + gmpy2.exp(-2 * x)
        amplify = max(mpfr(1), T / abs(T - 3)) if T != 3 else mpfr(2) ** ctx.working_bits
        tol = max(mpfr(1), abs(value)) * amplify * mpfr(2) ** (24 - ctx.working_bits)
        if abs(value - alt) > tol:
            raise ArithmeticError(f"the two closed forms of ell disagree at u={x}: {value} vs {alt}")
        return value


def ell_hyperbolic(u, ctx: PrecisionContext) -> Real:
    """cosh(4u) - cosh(2u) - 1 + 2 sinh(2u) sinh(phi(u))."""
    with ctx.active():
        x = mpfr(u)
        k = kappa(ctx)
        if x < k:
            raise DomainError(f"ell requires u >= kappa = {k}, got {x}")
        if x == k:
            return mpfr(1)
        return gmpy2.cosh(4 * x) - gmpy2.cosh(2 * x) - 1 + 2 * gmpy2.sinh(2 * x) * gmpy2.sinh(phi(x, ctx))


def ell_prime(u, ctx: PrecisionContext) -> Real:
    """d ell / du in closed form (differentiating the hyperbolic form).

    Blows up like 1/sqrt(u - kappa) as u approaches kappa from above,
    which is exactly the behaviour the quadrature substitution absorbs.
    """
    with ctx.active():
        x = mpfr(u)
        rad = _radical(x)
        if rad == 0:
            raise DomainError("ell' is unbounded at kappa")
        s2, c2 = gmpy2.sinh(2 * x), gmpy2.cosh(2 * x)
        return 4 * gmpy2.sinh(4 * x) - 2 * s2 + 2 * c2 * rad + 4 * s2 * s2 * (2 * c2 - 1) / rad


def build_rep(u, b: int, ctx: PrecisionContext) -> RepData:
    """All generator images at parameter u > kappa for the (2,2b+1)-cable."""
    if b < 0:
        raise ValueError(f"cable parameter b must be >= 0, got {b}")
    with ctx.active():
        x = mpfr(u)
        if x <= kappa(ctx):
            raise DomainError(f"build_rep requires u > kappa = {kappa(ctx)}, got {x}")
        dlt = delta(x, ctx)
        lam = ell(x, ctx)
        eu, emu = gmpy2.exp(x), gmpy2.exp(-x)
        rad = _radical(x)

        mat_x = Mat2(eu, mpfr(1), mpfr(0), emu)
        mat_y = Mat2(eu, mpfr(0), -dlt, emu)
        eh, emh = gmpy2.exp(x / 2), gmpy2.exp(-x / 2)
        mat_p = Mat2(eh, 1 / (2 * gmpy2.cosh(x / 2)), mpfr(0), emh)
        # longitude of the figure-eight companion, upper triangular
        mat_lambda_e = Mat2(lam, (eu + emu) * rad, mpfr(0), 1 / lam)
        mat_r = mat_lambda_e @ mat_x.power(b)
        mat_lambda = mat_lambda_e @ mat_lambda_e
        mats = {
            "x": mat_x,
            "y": mat_y,
            "p": mat_p,
            "r": mat_r,
            "lambda_E": mat_lambda_e,
            "lambda": mat_lambda,
        }
        return RepData(u=x, b=b, delta=dlt, ell=lam, mats=mats)


def _word(mats: dict[str, Mat2], word: list[tuple[str, int]]) -> Mat2:
    out = Mat2.identity()
    for name, power in word:
        out = out @ mats[name].power(power)
    return out


def verify_relations(rep: RepData, ctx: PrecisionContext) -> dict[str, Real]:
    """Residuals (max-norm of LHS - RHS) for every defining relation.

    Keys: knot_relation, pr_commute, meridian_square, longitude_word,
    r_closed_form, cable_longitude, plus det_<name> for each generator.
    All must sit at rounding level for a correct representation.
    """
    with ctx.active():
        m = rep.mats
        out: dict[str, Real] = {}

        lhs = _word(m, [("x", 1), ("y", -1), ("x", -1), ("y", 1), ("x", 1)])
        rhs = _word(m, [("y", 1), ("x", 1), ("y", -1), ("x", -1), ("y", 1)])
        out["knot_relation"] = lhs.max_abs_diff(rhs)

        out["pr_commute"] = (m["p"] @ m["r"]).max_abs_diff(m["r"] @ m["p"])

        out["meridian_square"] = (m["p"] @ m["p"]).max_abs_diff(m["x"])

        word = [("x", 1), ("y", -1), ("x", 1), ("y", 1), ("x", -2), ("y", 1), ("x", 1), ("y", -1), ("x", -1)]
        out["longitude_word"] = _word(m, word).max_abs_diff(m["lambda_E"])

        # the closed form of the image of r published alongside the
        # representation (the x^b factor written on the left; equal to the
        # defining product because x and lambda_E commute)
        u, b, lam = rep.u, rep.b, rep.ell
        eu, emu = gmpy2.exp(u), gmpy2.exp(-u)
        rad = _radical(u)
        ebu, embu = gmpy2.exp(b * u), gmpy2.exp(-b * u)
        geom = (ebu - embu) / (eu - emu)
        closed_r = Mat2(lam * ebu, ebu * (eu + emu) * rad + geom / lam, mpfr(0), embu / lam)
        out["r_closed_form"] = m["r"].max_abs_diff(closed_r)

        target = Mat2(lam * lam, m["lambda"].b, mpfr(0), 1 / (lam * lam))
        out["cable_longitude"] = m["lambda"].max_abs_diff(target)

        for name, mat in m.items():
            out[f"det_{name}"] = abs(mat.det() - 1)
        return out


def a_poly_fig8_residual(u, ctx: PrecisionContext) -> Real:
    """|ell - (e^(4u)-e^(2u)-2-e^(-2u)+e^(-4u)) + 1/ell|."""
    with ctx.active():
        x = mpfr(u)
        lam = ell(x, ctx)
        combo = gmpy2.exp(4 * x) - gmpy2.exp(2 * x) - 2 - gmpy2.exp(-2 * x) + gmpy2.exp(-4 * x)
        return abs(lam - combo + 1 / lam)


def a_poly_cable_check(u, ctx: PrecisionContext) -> Real:
    """|ell^2 + ell^-2 - ((e^(4u)-e^(2u)-2-e^(-2u)+e^(-4u))^2 - 2)|."""
    with ctx.active():
        x = mpfr(u)
        lam = ell(x, ctx)
        combo = gmpy2.exp(4 * x) - gmpy2.exp(2 * x) - 2 - gmpy2.exp(-2 * x) + gmpy2.exp(-4 * x)
        return abs(lam * lam + 1 / (lam * lam) - (combo * combo - 2))


def a_poly_cable_factor(u, ctx: PrecisionContext) -> Real:
    """The nonabelian factor of the cable A-polynomial,
    L - ((M^8 - M^4 - 2 - M^-4 + M^-8)^2 - 2) + 1/L, evaluated at the
    holonomy eigenvalues M = e^(u/2) of the cable meridian p and
    L = ell(u)^2 of the cable longitude.  Vanishes on the representation.
    """
    with ctx.active():
        x = mpfr(u)
        L = ell(x, ctx) ** 2
        M4 = gmpy2.exp(2 * x)  # M^4 with M = e^(u/2)
        inner = M4 * M4 - M4 - 2 - 1 / M4 + 1 / (M4 * M4)
        return abs(L - (inner * inner - 2) + 1 / L)
