"""Everything downstream of the correlators.

* the primitive of omega = log y dx/x as a local series whose coefficients
  live in the rank-one log extension (the branch constant of the log at the
  ramification point is the opaque symbol, and it must cancel from every
  residue handed back to callers);
* the residue pairing of that primitive against each basis one-form, which
  vanishes except at index 1;
* extraction of triple-Hodge brackets from one-point tensors;
* the top-degree coefficient of the product of the three dual Hodge
  polynomials under the Mumford rewrite rules;
* the Bernoulli closed form for the genus-g free energy, evaluated two
  ways (full residue pairing and the index-1 shortcut) and compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .bernoulli import bernoulli
from .curve import FramedCurve
from .errors import LogBranchError
from .poly import Poly
from .psi import PsiTable, psi_table
from .recursion import CorrDiff, CorrStore
from .scalars import LogExt
from .series import Series, series_log1p

QZERO = Fraction(0)
QONE = Fraction(1)


def theta_series(curve: FramedCurve, window: int) -> Series:
    """Local primitive of log y dx/x at the ramification point, valuation 2.

    Built from its differential
        (1+f) z log(z - a) / ((z - a)(z + b)) dz,   a = f/(1+f), b = 1/(1+f),
    with log(z - a) = l + log1p(-z/a); the integration constant is dropped,
    which is harmless because every pairing partner is residue free.
    """
    if window < 3:
        raise ValueError("window must be at least 3")
    f = curve.f
    a = Fraction(f, f + 1)
    b = Fraction(1, f + 1)
    z = Series(1, [QONE], exact=True)
    denom = Series(0, [-a * b, b - a, QONE], exact=True)  # (z - a)(z + b)
    pre = z.scale(Fraction(f + 1)) * denom.invert(order=window)
    log_tail = series_log1p(z.scale(-1 / a), order=window)
    d_theta = pre.scale(LogExt(0, 1)) + (pre * log_tail).scale(LogExt(1, 0))
    theta = d_theta.antiderive()
    if theta.eff_start() != 2:
        raise ArithmeticError("primitive does not vanish to second order")
    return theta


_THETA_CACHE: dict[tuple[int, int], Series] = {}


def _theta(curve: FramedCurve, window: int) -> Series:
    key = (curve.f, window)
    got = _THETA_CACHE.get(key)
    if got is None:
        got = _THETA_CACHE[key] = theta_series(curve, window)
    return got


def residue_theta_psi(curve: FramedCurve, n: int, table: PsiTable | None = None,
                      margin: int = 0) -> Fraction:
    """Residue of theta against Psi_n = -psihat_n dy at the ramification point.

    The branch symbol must cancel exactly; the rational part is returned.
    Vanishes for n = 0 and n >= 2; magnitude 1/(f(1+f)) at n = 1.
    """
    if table is None:
        table = psi_table(curve.f)
    theta = _theta(curve, 2 * n + 3 + margin)
    leg = Series.from_dict({e: -c for e, c in table.shifted(n).items()}, exact=True)
    res = (theta * leg).residue()
    if isinstance(res, LogExt):
        if res.log:
            raise LogBranchError(f"branch symbol survives the index-{n} residue: {res}")
        return res.rat
    return Fraction(res)


@dataclass(frozen=True)
class HodgeTable:
    """Brackets <tau_n L(1) L(-f-1) L(f)> extracted from a one-point tensor."""

    g: int
    f: int
    bracket: dict  # n -> Fraction

    def value(self, n: int) -> Fraction:
        return self.bracket.get(n, QZERO)


def hodge_extract(w: CorrDiff) -> HodgeTable:
    if w.h != 1:
        raise ValueError("Hodge extraction needs a one-point tensor")
    sign = QONE if (w.g + 1) % 2 == 0 else -QONE
    return HodgeTable(g=w.g, f=w.f,
                      bracket={idx[0]: sign * c for idx, c in w.coeffs.items()})


def lambda_top_coefficient(g: int) -> Poly:
    """Coefficient of the top lambda word in the triple product, as a
    polynomial in the framing.

    Expands the degree 3g-3 part of L(1) L(-f-1) L(f), where
    L(t) = t^g - t^(g-1) l_1 + ... + (-1)^g l_g, over words in the top three
    lambda classes, rewrites with l_g^2 = 0 and l_{g-1}^2 = 2 l_g l_{g-2},
    and returns the multiplier of l_g l_{g-1} l_{g-2}.
    """
    if g < 2:
        raise ValueError("needs genus >= 2")
    t_vals = [Poly([1]), Poly([-1, -1]), Poly([0, 1])]  # 1, -f-1, f
    total = Poly()
    target = 3 * g - 3
    lo = max(0, g - 3)
    for i in range(lo, g + 1):
        for j in range(lo, g + 1):
            k = target - i - j
            if k < lo or k > g:
                continue
            coeff = Poly([1])
            for t, d in zip(t_vals, (i, j, k)):
                c = _lambda_factor(t, g, d)
                if c is None:
                    coeff = Poly()
                    break
                coeff = coeff * c
            if coeff.is_zero():
                continue
            word = tuple(sorted((i, j, k), reverse=True))
            mult = _rewrite_word(word, g)
            if mult is None:
                raise ArithmeticError(f"word {word} does not normalize")
            total = total + coeff * mult
    return total


def _lambda_factor(t: Poly, g: int, d: int) -> Poly | None:
    """Scalar multiplying l_d inside L(t): (-1)^d t^(g-d); None for l_<0."""
    if d < 0:
        return None
    out = Poly([1])
    for _ in range(g - d):
        out = out * t
    return out if d % 2 == 0 else -out


def _rewrite_word(word: tuple[int, int, int], g: int) -> Fraction | None:
    """Multiplier of l_g l_{g-1} l_{g-2} after the rewrite rules; 0 if the
    word dies, None if it fails to normalize."""
    parts = [d for d in word if d > 0]  # l_0 = 1
    mult = QONE
    counts = {d: parts.count(d) for d in set(parts)}
    if counts.get(g, 0) >= 2:
        return Fraction(0)  # l_g^2 = 0
    while counts.get(g - 1, 0) >= 2:
        counts[g - 1] -= 2
        counts[g] = counts.get(g, 0) + 1
        counts[g - 2] = counts.get(g - 2, 0) + 1
        mult *= 2
        if counts.get(g, 0) >= 2:
            return Fraction(0)
    flat = sorted((d for d, c in counts.items() if d > 0 for _ in range(c)),
                  reverse=True)
    expected = [d for d in (g, g - 1, g - 2) if d > 0]
    if flat == expected:
        return mult
    if not flat or sum(flat) != sum(expected):
        return None
    return None


def lambda_triple(g: int) -> Fraction:
    """<l_g l_{g-1} l_{g-2}>_g as the classical Bernoulli product."""
    if g < 2:
        raise ValueError("needs genus >= 2")
    return (Fraction(1, 2 * factorial(2 * g - 2))
            * abs(bernoulli(2 * g - 2)) / (2 * g - 2)
            * abs(bernoulli(2 * g)) / (2 * g))


def bernoulli_energy(g: int) -> Fraction:
    """Closed-form genus-g free energy: (1/2)(-1)^g |B_2g||B_2g-2| / (2g (2g-2) (2g-2)!)."""
    if g < 2:
        raise ValueError("needs genus >= 2")
    sign = 1 if g % 2 == 0 else -1
    return Fraction(sign, 2) * abs(bernoulli(2 * g)) * abs(bernoulli(2 * g - 2)) \
        / (2 * g * (2 * g - 2) * factorial(2 * g - 2))


def _assert_residue_free(store: CorrStore, w: CorrDiff) -> None:
    table = store.psi
    res = QZERO
    for idx, c in w.coeffs.items():
        res += c * -table.shifted(idx[0]).get(-1, QZERO)
    if res:
        raise ArithmeticError("one-point correlator carries a residue at the "
                              "ramification point")


def free_energy_direct(store: CorrStore, g: int) -> Fraction:
    """(-1)^g/(2-2g) times the full residue pairing of theta with W(g,1)."""
    if g < 2:
        raise ValueError("needs genus >= 2")
    w = store.correlator(g, 1)
    _assert_residue_free(store, w)
    total = QZERO
    for idx, c in w.coeffs.items():
        total += c * residue_theta_psi(store.curve, idx[0], table=store.psi)
    sign = 1 if g % 2 == 0 else -1
    return Fraction(sign, 2 - 2 * g) * total


def free_energy_shortcut(store: CorrStore, g: int) -> Fraction:
    """The index-1 route: bracket[1] times the single surviving residue."""
    if g < 2:
        raise ValueError("needs genus >= 2")
    table = hodge_extract(store.correlator(g, 1))
    rho1 = residue_theta_psi(store.curve, 1, table=store.psi)
    return Fraction(1, 2 * g - 2) * table.value(1) * rho1


@dataclass(frozen=True)
class EnergyRow:
    g: int
    f: int
    direct: Fraction | None
    shortcut: Fraction | None
    reference: Fraction
    sign: int | None           # direct / reference when magnitudes agree
    paths_equal: bool
    magnitude_ok: bool
    error: str | None = None


def energy_table(stores: list[CorrStore], g_values: list[int]) -> tuple[list[EnergyRow], int | None]:
    """One row per (g, f) plus the single global sign, when coherent."""
    rows: list[EnergyRow] = []
    epsilon: int | None = None
    coherent = True
    for g in sorted(g_values):
        for store in stores:
            ref = bernoulli_energy(g)
            try:
                direct = free_energy_direct(store, g)
                shortcut = free_energy_shortcut(store, g)
            except Exception as exc:  # reported per row, not fatal
                rows.append(EnergyRow(g=g, f=store.f, direct=None, shortcut=None,
                                      reference=ref, sign=None, paths_equal=False,
                                      magnitude_ok=False, error=str(exc)))
                coherent = False
                continue
            magnitude_ok = abs(direct) == abs(ref)
            sign = None
            if magnitude_ok and ref:
                sign = 1 if direct == ref else -1
                if epsilon is None:
                    epsilon = sign
                elif epsilon != sign:
                    coherent = False
            rows.append(EnergyRow(g=g, f=store.f, direct=direct, shortcut=shortcut,
                                  reference=ref, sign=sign,
                                  paths_equal=direct == shortcut,
                                  magnitude_ok=magnitude_ok))
    return rows, (epsilon if coherent else None)
