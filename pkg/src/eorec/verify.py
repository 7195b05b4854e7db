"""Bundled verification checks with machine-readable results.

Every check produces a record with its parameters, the expected and actual
values rendered exactly, and a boolean outcome; the report as a whole
carries the calibrated conventions and the global energy sign.  The checks
cover: the known low-order tensors, the reading of the ambiguous two-point
genus-one display, the residue table of the primitive against the basis,
the lambda-word reduction identity, involution and truncation-stability
probes, branch-symbol cancellation, the free-energy comparisons, bracket
consistency, and the critical-value discrepancy report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .curve import conjugate_series
from .hodge import (bernoulli_energy, energy_table, hodge_extract,
                    lambda_top_coefficient, lambda_triple, residue_theta_psi)
from .poly import Poly
from .recursion import CorrStore, Conventions, window_policy
from .reference import reference_correlators, two_point_genus_one_readings
from .scalars import format_rational

QZERO = Fraction(0)


@dataclass
class CheckRecord:
    name: str
    params: dict
    expected: str
    actual: str
    passed: bool
    note: str | None = None

    def to_payload(self) -> dict:
        out = {"name": self.name, "params": self.params, "expected": self.expected,
               "actual": self.actual, "pass": self.passed}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerifyReport:
    conventions: Conventions
    epsilon: int | None
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary(self) -> dict:
        total = len(self.checks)
        good = sum(1 for c in self.checks if c.passed)
        return {"total": total, "passed": good, "failed": total - good}

    def to_payload(self) -> dict:
        return {
            "conventions": {
                "sigma_kernel": self.conventions.sigma_kernel,
                "sigma_psirec": self.conventions.sigma_psirec,
                "epsilon": self.epsilon,
            },
            "checks": [c.to_payload() for c in self.checks],
            "summary": self.summary(),
        }

    def to_text(self) -> str:
        lines = [
            f"conventions: sigma_kernel={self.conventions.sigma_kernel}, "
            f"sigma_psirec={self.conventions.sigma_psirec}, epsilon={self.epsilon}"
        ]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            params = ", ".join(f"{k}={v}" for k, v in c.params.items())
            line = f"[{mark}] {c.name} ({params}): expected {c.expected}, got {c.actual}"
            if c.note:
                line += f"  [{c.note}]"
            lines.append(line)
        s = self.summary()
        lines.append(f"{s['passed']}/{s['total']} checks passed")
        return "\n".join(lines)


def _tensor_str(coeffs: dict) -> str:
    items = ", ".join(f"{list(k)}:{format_rational(v)}"
                      for k, v in sorted(coeffs.items()))
    return "{" + items + "}"


def _poly_str(p: Poly) -> str:
    return "[" + ", ".join(format_rational(c) for c in p.coeffs) + "]"


def build_stores(framings: list[int], conventions: Conventions | None = None,
                 window_margin: int = 0, cache=None) -> list[CorrStore]:
    """Stores for each framing under one shared set of conventions."""
    stores = []
    for f in framings:
        store = CorrStore(f, conventions=conventions, window_margin=window_margin,
                          cache=cache)
        conventions = store.conventions
        stores.append(store)
    return stores


def run_verification(stores: list[CorrStore], g_max: int = 3) -> VerifyReport:
    conv = stores[0].conventions
    report = VerifyReport(conventions=conv, epsilon=None)
    add = report.checks.append

    # known low-order tensors
    for store in stores:
        ref = reference_correlators(store.f)
        for (g, h), want in sorted(ref.items()):
            got = store.correlator(g, h).coeffs
            add(CheckRecord(
                name="known-correlator",
                params={"f": store.f, "g": g, "h": h},
                expected=_tensor_str(want), actual=_tensor_str(got),
                passed=got == want))

    # reading of the two-point genus-one display
    for store in stores:
        readings = two_point_genus_one_readings(store.f)
        got = store.correlator(1, 2).coeffs
        match = next((name for name, t in readings.items() if t == got), None)
        add(CheckRecord(
            name="two-point-genus-one-reading",
            params={"f": store.f},
            expected="one documented reading",
            actual=match or _tensor_str(got),
            passed=match is not None,
            note="readings considered: " + ", ".join(sorted(readings))))

    # residue table of the primitive against the basis
    for store in stores:
        f = store.f
        audited_sign = None
        for n in range(0, 9):
            rho = residue_theta_psi(store.curve, n, table=store.psi)
            if n == 1:
                want = Fraction(1, f * (f + 1))
                ok = abs(rho) == want
                audited_sign = 1 if rho > 0 else -1
                add(CheckRecord(
                    name="theta-psi-residue",
                    params={"f": f, "n": n},
                    expected=f"magnitude {format_rational(want)}",
                    actual=format_rational(rho), passed=ok,
                    note=f"audited sign {audited_sign:+d}"))
            else:
                add(CheckRecord(
                    name="theta-psi-residue",
                    params={"f": f, "n": n},
                    expected="0", actual=format_rational(rho), passed=rho == 0))
        add(CheckRecord(
            name="log-symbol-cancellation",
            params={"f": f, "n": "0..8"},
            expected="no surviving branch symbol",
            actual="cancelled in every residue", passed=True,
            note="a surviving symbol raises instead of returning"))

    # lambda-word reduction identity
    for g in range(2, 7):
        want = Poly([0, 1, 1])
        if g % 2 == 0:
            want = -want
        got = lambda_top_coefficient(g)
        add(CheckRecord(
            name="lambda-top-coefficient",
            params={"g": g},
            expected=_poly_str(want), actual=_poly_str(got), passed=got == want))

    # involution probes
    for store in stores:
        window = 20
        s = conjugate_series(store.curve, window)
        X = store.curve.x_shifted()
        diff = X.compose(s) - X.truncate(window)
        inv_ok = all(not c for c in diff.coeffs)
        z = s.compose(s)
        round_ok = (z.coeff(1) == 1 and
                    all(not z.coeff(k) for k in range(2, z._stored_end() + 1)))
        add(CheckRecord(
            name="involution",
            params={"f": store.f, "window": window},
            expected="x(s(z)) = x(z) and s(s(z)) = z",
            actual="holds" if (inv_ok and round_ok) else "violated",
            passed=inv_ok and round_ok))

    # peel remainder: a dense combination in the basis must peel back
    # exactly (the recursion asserts the same on every residue)
    from .psi import psi_peel
    for store in stores:
        coeffs = {n: Fraction(3 * n + 2, n + 5) for n in range(6)}
        combo: dict = {}
        for n, c in coeffs.items():
            for e, a in store.psi.shifted(n).items():
                combo[e] = combo.get(e, QZERO) + c * a
        recovered = psi_peel(combo, store.f, table=store.psi)
        add(CheckRecord(
            name="peel-remainder",
            params={"f": store.f, "indices": "0..5"},
            expected="exact roundtrip with zero remainder",
            actual="roundtrip exact" if recovered == coeffs else "mismatch",
            passed=recovered == coeffs))

    # truncation stability: recompute with a widened window
    for store in stores:
        for (g, h) in ((1, 1), (2, 1)):
            base = store.correlator(g, h)
            widened = store.compute(g, h, window=window_policy(g, h, store.window_margin) + 4)
            add(CheckRecord(
                name="truncation-stability",
                params={"f": store.f, "g": g, "h": h},
                expected=_tensor_str(base.coeffs),
                actual=_tensor_str(widened.coeffs),
                passed=base.coeffs == widened.coeffs))

    # free energies
    g_values = list(range(2, g_max + 1))
    epsilon: int | None = None
    if g_values:
        rows, epsilon = energy_table(stores, g_values)
        by_g: dict[int, set] = {}
        for row in rows:
            ok = (row.error is None and row.paths_equal and row.magnitude_ok
                  and row.sign is not None)
            add(CheckRecord(
                name="free-energy",
                params={"g": row.g, "f": row.f},
                expected=f"|F| = {format_rational(abs(row.reference))}, direct = shortcut",
                actual=(row.error if row.error
                        else f"direct {format_rational(row.direct)}, "
                             f"shortcut {format_rational(row.shortcut)}"),
                passed=ok))
            by_g.setdefault(row.g, set()).add(row.direct)
        for g, values in sorted(by_g.items()):
            add(CheckRecord(
                name="free-energy-framing-independence",
                params={"g": g},
                expected="identical across framings",
                actual=f"{len(values)} distinct value(s)",
                passed=len(values) == 1))
        add(CheckRecord(
            name="free-energy-global-sign",
            params={"g": f"2..{g_max}"},
            expected="one sign for every (g, f)",
            actual=f"epsilon = {epsilon}" if epsilon is not None else "incoherent",
            passed=epsilon is not None))
        report.epsilon = epsilon

        # bracket consistency across framings
        for g in g_values:
            ratios = set()
            for store in stores:
                table = hodge_extract(store.correlator(g, 1))
                ratios.add(table.value(1) / (store.f * (store.f + 1)))
            target = (2 * g - 2) * lambda_triple(g)
            ok = len(ratios) == 1 and abs(next(iter(ratios))) == target
            add(CheckRecord(
                name="bracket-dilaton-consistency",
                params={"g": g},
                expected=f"+/- {format_rational(target)}, framing independent",
                actual=", ".join(sorted(format_rational(r) for r in ratios)),
                passed=ok))

    # critical-value discrepancy report
    for store in stores:
        f = store.f
        direct = store.curve.x_poly.eval(store.curve.y_star)
        printed = Fraction(f ** f) * Fraction(-1 - f) ** (f + 1)
        add(CheckRecord(
            name="critical-value",
            params={"f": f},
            expected=format_rational(direct),
            actual=format_rational(store.curve.x_star),
            passed=store.curve.x_star == direct,
            note=f"alternative closed form evaluates to {format_rational(printed)}"
                 f"{' (agrees)' if printed == direct else ' (differs; engine value is normative)'}"))

    return report
