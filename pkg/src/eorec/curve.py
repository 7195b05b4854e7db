"""The framed genus-zero mirror curve of the vertex geometry.

The curve is x + y^f + y^(f+1) = 0 with integer framing f >= 1, i.e.
x(y) = -y^f (1 + y).  It has a single ramification point y* = -f/(f+1)
away from the punctures y = 0, -1.  All local data is expanded in the
shifted coordinate z = y - y*:

* the conjugate involution s(z) with x(y* + s(z)) = x(y* + z), s(0) = 0,
  s'(0) = -1, found order by order;
* the one-form difference D(z) dz = omega(q) - omega(q_bar) where
  omega = log y dx/x;
* the recursion kernel K(w; z), a z-series whose coefficients are Laurent
  polynomials in the free-slot coordinate w = y_p - y*.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import WindowError
from .laurent import MLaurent
from .poly import Poly
from .series import Series, series_log1p

QONE = Fraction(1)


class FramedCurve:
    """Framing, ramification data and exact evaluation of x(y)."""

    __slots__ = ("f", "y_star", "x_star", "x_poly")

    def __init__(self, f: int):
        if f < 1:
            raise ValueError("framing must be a positive integer "
                             "(f = 0 collides the ramification point with a puncture)")
        self.f = f
        self.y_star = Fraction(-f, f + 1)
        # x(y) = -y^f - y^(f+1)
        coeffs = [Fraction(0)] * f + [Fraction(-1), Fraction(-1)]
        self.x_poly = Poly(coeffs)
        self.x_star = self.x_poly.eval(self.y_star)

    def x_of_y(self, y):
        """Evaluate x at a rational point or compose with a series in z."""
        if isinstance(y, (int, Fraction)):
            return self.x_poly.eval(Fraction(y))
        return _poly_of_series(self.x_poly, y)

    def x_shifted(self) -> Series:
        """x(y* + z) as an exact polynomial series in z."""
        shifted = self.x_poly.taylor_shift(self.y_star)
        return Series(0, shifted.coeffs, exact=True)

    def prepare(self, window: int) -> "LocalFrame":
        return LocalFrame(self, window)


def _poly_of_series(p: Poly, s: Series) -> Series:
    if s.eff_start() is not None and s.eff_start() < 0:
        raise WindowError("series substitution into x needs valuation >= 0")
    acc = Series(0, [], exact=True, zero=s.zero)
    for c in reversed(p.coeffs):
        acc = acc * s + Series.constant(c, zero=s.zero)
    return acc


def conjugate_series(curve: FramedCurve, window: int) -> Series:
    """The local involution s(z) = -z + c2 z^2 + ... to the given window.

    Solved order by order from x(y* + s(z)) = x(y* + z); each new
    coefficient enters linearly through the quadratic lead of x.
    """
    if window < 2:
        raise ValueError("window must be at least 2")
    X = curve.x_shifted()  # x* + X2 z^2 + ... with X2 != 0
    X2 = X.coeff(2)
    if not X2:
        raise WindowError("ramification point is not simple")  # cannot happen for f >= 1
    xs = [X.coeff(k) for k in range(window + 2)]
    s = [Fraction(0), Fraction(-1)]  # s = -z + ...
    deg = curve.f + 1
    for n in range(2, window + 1):
        # powers of the current truncation of s, to order n+1
        order = n + 1
        comp = [Fraction(0)] * (order + 1)
        power = [Fraction(1)] + [Fraction(0)] * order
        for m in range(1, deg + 1):
            power = _mul_trunc(power, s, order)
            cm = xs[m] if m < len(xs) else Fraction(0)
            if cm:
                for i, p in enumerate(power):
                    comp[i] += cm * p
        target = xs[n + 1] if n + 1 < len(xs) else Fraction(0)
        s.append((comp[n + 1] - target) / (2 * X2))
    return Series(1, s[1:], exact=False)


def _mul_trunc(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        if not x or i > order:
            continue
        for j, y in enumerate(b):
            if i + j > order:
                break
            if y:
                out[i + j] += x * y
    return out


def omega_diff_series(curve: FramedCurve, window: int, s: Series | None = None) -> Series:
    """Scalar D(z) with omega(q) - omega(q_bar) = D(z) dz; valuation 2.

    D = log((y* + z)/(y* + s(z))) * x'(z)/x(z) evaluated along y = y* + z.
    The log of the ratio tends to 1, so it expands through log1p and no
    branch constant enters.
    """
    if window < 4:
        raise ValueError("window must be at least 4")
    if s is None:
        s = conjugate_series(curve, window)
    y_star = Series.constant(curve.y_star)
    num = Series(1, [QONE], exact=True)  # z
    ratio_num = (num - s)  # z - s(z)
    denom = y_star + s
    u = ratio_num * denom.invert()
    log_ratio = series_log1p(u)
    X = curve.x_shifted()
    D = log_ratio * X.derive() * X.invert(order=window)
    if D.eff_start() != 2:
        raise WindowError("window too small to certify the valuation of the one-form difference")
    return D


def bergman_self_pairing(s: Series) -> Series:
    """Scalar of B(q, q_bar) against dz^2: s'(z) / (z - s(z))^2."""
    z = Series(1, [QONE], exact=True)
    return s.derive() * ((z - s) * (z - s)).invert()


def recursion_kernel(curve: FramedCurve, window: int, sign: int = 1,
                     s: Series | None = None, D: Series | None = None) -> Series:
    """K(w; z) = sign * (1/2) [1/(w - s(z)) - 1/(w - z)] / D(z).

    Returned as a z-series with coefficients that are Laurent polynomials
    in the single variable w (poles only at w = 0); the lowest z-exponent
    is -1.
    """
    if s is None:
        s = conjugate_series(curve, window)
    if D is None:
        D = omega_diff_series(curve, window, s=s)
    zero1 = MLaurent(1)
    z = Series(1, [QONE], exact=True)
    acc = Series(0, [], exact=True, zero=zero1)
    s_pow = s
    z_pow = z
    for k in range(1, window + 1):
        diff = s_pow - z_pow  # known to s's window
        w_mono = MLaurent.from_var_dict(1, 0, {-(k + 1): QONE})
        acc = acc + diff.scale(w_mono)
        if k < window:
            s_pow = s_pow * s
            z_pow = z_pow * z
    half = Fraction(sign, 2)
    kernel = (acc * D.invert()).scale(MLaurent.const(1, half))
    if kernel.eff_start() != -1:
        raise WindowError("kernel does not exhibit its simple pole; window too small")
    return kernel
