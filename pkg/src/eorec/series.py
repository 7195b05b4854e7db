"""Truncated Laurent series with an explicit window of known coefficients.

A ``Series`` stands for a mathematical Laurent series that is guaranteed to
have no terms below ``start`` and whose coefficients are stored exactly for
exponents ``start .. start+len(coeffs)-1``.  Coefficients above that range
are unknown, unless ``exact`` is set, in which case they are known to be
zero (the series is a finite Laurent polynomial).

Every operation computes the tightest window it can certify and refuses to
report anything outside it; asking for an uncertified coefficient raises
:class:`~eorec.errors.WindowError` so callers can widen their truncation
instead of silently reading garbage.

The coefficient ring is duck-typed: ``Fraction``, :class:`~eorec.scalars.LogExt`
and :class:`~eorec.laurent.MLaurent` all work, as long as the ring supports
``+ - *`` among themselves and with ``Fraction`` scalars.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import WindowError

INF = math.inf
QZERO = Fraction(0)


class Series:
    __slots__ = ("start", "coeffs", "exact", "zero")

    def __init__(self, start: int, coeffs, exact: bool = False, zero=QZERO):
        cs = list(coeffs)
        if exact:
            while cs and not cs[-1]:
                cs.pop()
        self.start = start
        self.coeffs = tuple(cs)
        self.exact = exact
        self.zero = zero

    # -- constructors -------------------------------------------------

    @staticmethod
    def constant(c, zero=QZERO) -> "Series":
        return Series(0, [c], exact=True, zero=zero)

    @staticmethod
    def monomial(c, k: int, zero=QZERO) -> "Series":
        return Series(k, [c], exact=True, zero=zero)

    @staticmethod
    def from_dict(d: dict, exact: bool = True, zero=QZERO) -> "Series":
        """Series from an exponent->coefficient mapping (a Laurent polynomial)."""
        if not d:
            return Series(0, [], exact=exact, zero=zero)
        lo, hi = min(d), max(d)
        return Series(lo, [d.get(k, zero) for k in range(lo, hi + 1)], exact=exact, zero=zero)

    # -- window bookkeeping -------------------------------------------

    @property
    def window_end(self):
        """Largest exponent with a certified coefficient (inf when exact)."""
        if self.exact:
            return INF
        return self.start + len(self.coeffs) - 1

    def _stored_end(self) -> int:
        return self.start + len(self.coeffs) - 1

    def eff_start(self) -> int | None:
        """First exponent that may carry a nonzero term.

        Stored leading zeros are certified, so the bound can be tightened
        past them.  Returns ``None`` for the exact zero series; a non-exact
        window that is all zeros yields ``window_end + 1``.
        """
        for i, c in enumerate(self.coeffs):
            if c:
                return self.start + i
        if self.exact:
            return None
        return self.start + len(self.coeffs)

    def is_known_zero(self) -> bool:
        return self.exact and not self.coeffs

    def coeff(self, k: int):
        """Certified coefficient at exponent ``k``."""
        if k < self.start:
            return self.zero
        if k <= self._stored_end():
            return self.coeffs[k - self.start]
        if self.exact:
            return self.zero
        raise WindowError(f"coefficient at exponent {k} is outside the known window "
                          f"[{self.start}, {self._stored_end()}]")

    def coeff_dict(self) -> dict:
        return {self.start + i: c for i, c in enumerate(self.coeffs) if c}

    def truncate(self, end: int) -> "Series":
        """Forget everything above exponent ``end``."""
        n = max(0, end - self.start + 1)
        cs = list(self.coeffs[:n])
        if self.exact:
            cs += [self.zero] * (n - len(cs))
        return Series(self.start, cs, exact=False, zero=self.zero)

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "Series") -> "Series":
        if not isinstance(other, Series):
            return NotImplemented
        if self.is_known_zero():
            return other
        if other.is_known_zero():
            return self
        start = min(self.start, other.start)
        exact = self.exact and other.exact
        if exact:
            end = max(self._stored_end(), other._stored_end())
        else:
            end = int(min(self.window_end, other.window_end))
            if end < start:
                raise WindowError("sum has an empty certified window")
        zero = self.zero + other.zero
        return Series(
            start,
            [self.coeff(k) + other.coeff(k) for k in range(start, end + 1)],
            exact=exact,
            zero=zero,
        )

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __neg__(self) -> "Series":
        return Series(self.start, [-c for c in self.coeffs], exact=self.exact, zero=self.zero)

    def scale(self, c) -> "Series":
        """Multiply every coefficient by a ring element."""
        zero = self.zero * c
        return Series(self.start, [x * c for x in self.coeffs], exact=self.exact, zero=zero)

    def shift(self, k: int) -> "Series":
        """Multiply by z**k."""
        return Series(self.start + k, self.coeffs, exact=self.exact, zero=self.zero)

    def __mul__(self, other: "Series") -> "Series":
        if not isinstance(other, Series):
            return NotImplemented
        zero = self.zero * other.zero
        if self.is_known_zero() or other.is_known_zero():
            return Series(0, [], exact=True, zero=zero)
        exact = self.exact and other.exact
        if exact:
            start = self.start + other.start
            end = self._stored_end() + other._stored_end()
        else:
            # effective valuations are sound lower bounds past certified zeros
            sa = self.eff_start()
            sb = other.eff_start()
            start = sa + sb
            end = int(min(self.window_end + sb, other.window_end + sa))
            if end < start:
                raise WindowError("product has an empty certified window")
        out = [zero] * (end - start + 1)
        base_a, base_b = self.start, other.start
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            ka = base_a + i + base_b
            for j, b in enumerate(other.coeffs):
                k = ka + j
                if k > end:
                    break
                if not b:
                    continue
                if k >= start:
                    out[k - start] = out[k - start] + a * b
        return Series(start, out, exact=exact, zero=zero)

    # -- calculus ------------------------------------------------------

    def derive(self) -> "Series":
        """Formal d/dz."""
        return Series(
            self.start - 1,
            [(self.start + i) * c for i, c in enumerate(self.coeffs)],
            exact=self.exact,
            zero=self.zero,
        )

    def antiderive(self) -> "Series":
        """Termwise primitive with zero integration constant.

        Requires the coefficient at exponent -1 to be certified zero, since
        integrating it would leave the Laurent ring.
        """
        res = self.coeff(-1)  # raises WindowError when -1 is not certified
        if res:
            raise WindowError("antiderivative obstructed by a nonzero z^-1 coefficient")
        out = {}
        for i, c in enumerate(self.coeffs):
            k = self.start + i
            if k == -1 or not c:
                continue
            out[k + 1] = c * Fraction(1, k + 1)
        if self.exact:
            return Series.from_dict(out, exact=True, zero=self.zero)
        start = min(self.start + 1, 0)  # the zero constant at exponent 0 is known
        end = self._stored_end() + 1
        return Series(start, [out.get(k, self.zero) for k in range(start, end + 1)],
                      exact=False, zero=self.zero)

    def residue(self):
        """Certified coefficient of z**-1."""
        return self.coeff(-1)

    # -- multiplicative structure ---------------------------------------

    def invert(self, order: int | None = None) -> "Series":
        """Reciprocal series, known to the certified order.

        ``order`` bounds the number of known coefficients past the leading
        one; it is required when inverting an exact polynomial with more
        than one term (the reciprocal is an infinite series).
        """
        if self.is_known_zero():
            raise ZeroDivisionError("inverse of the zero series")
        t = self.eff_start()
        if not self.exact and t > self._stored_end():
            raise WindowError("divisor has no certified nonzero coefficient")
        lead = self.coeff(t)
        if self.exact and self._stored_end() == t:
            # monomial: exact inverse
            return Series(-t, [_ring_invert(lead)], exact=True, zero=self.zero)
        if self.exact:
            if order is None:
                raise WindowError("inverting an exact polynomial needs an explicit order")
            n = order
        else:
            n = self._stored_end() - t
            if order is not None:
                n = min(n, order)
        inv_lead = _ring_invert(lead)
        # self = lead * z^t * (1 + r) with r of positive valuation
        r = [self.coeff(t + k) * inv_lead for k in range(n + 1)]
        w = [self.zero] * (n + 1)
        w[0] = lead * inv_lead
        for k in range(1, n + 1):
            acc = self.zero
            for j in range(1, k + 1):
                if r[j]:
                    acc = acc + r[j] * w[k - j]
            w[k] = -acc
        return Series(-t, [c * inv_lead for c in w], exact=False, zero=self.zero)

    def __truediv__(self, other: "Series") -> "Series":
        if not isinstance(other, Series):
            return NotImplemented
        return self * other.invert()

    def compose(self, inner: "Series") -> "Series":
        """Substitute ``inner`` (positive valuation) for the variable."""
        t = inner.eff_start()
        if t is None or t < 1:
            raise WindowError("composition requires inner valuation >= 1")
        zero = self.zero
        # regular part by Horner over the certified coefficients
        acc = Series(0, [], exact=True, zero=zero)
        top = self._stored_end()
        for k in range(top, -1, -1):
            acc = acc * inner + Series.constant(self.coeff(k), zero=zero)
        # principal part via inverse powers
        if self.start < 0:
            inv = inner.invert()
            p = inv
            for j in range(1, -self.start + 1):
                c = self.coeff(-j)
                if c:
                    acc = acc + p.scale(c)
                if j < -self.start:
                    p = p * inv
        if not self.exact:
            # the unknown outer tail first pollutes exponent (top+1)*t
            acc = acc.truncate((top + 1) * t - 1)
        return acc


def _ring_invert(c):
    """Multiplicative inverse of a coefficient (Fraction or LogExt-like)."""
    if isinstance(c, Fraction):
        return Fraction(1) / c
    if isinstance(c, int):
        return Fraction(1, c)
    one = c * 0 + 1
    return one / c


def series_log1p(u: Series, order: int | None = None) -> Series:
    """log(1 + u) for a series of positive valuation."""
    t = u.eff_start()
    if t is not None and t < 1:
        raise WindowError("log1p requires valuation >= 1")
    if u.is_known_zero():
        return Series(0, [], exact=True, zero=u.zero)
    if u.exact:
        if order is None:
            raise WindowError("log1p of an exact polynomial needs an explicit order")
        u = u.truncate(order)
    end = u._stored_end()
    acc = u
    p = u
    k = 2
    while k * t <= end:
        p = (p * u).truncate(end)
        term = p.scale(Fraction(-1 if k % 2 == 0 else 1, k))
        acc = acc + term
        k += 1
    return acc


def ibp_residue_check(f: Series, g: Series) -> bool:
    """Integration-by-parts identity on residues: Res g df = -Res f dg."""
    lhs = (g * f.derive()).residue()
    rhs = (f * g.derive()).residue()
    return lhs + rhs == 0
