"""Command-line front end.

Subcommands: ``correlator``, ``free-energy``, ``hodge``, ``verify``.  Exact
rationals are serialized as decimal ``p/q`` strings; JSON output is
canonical (sorted keys, newline-terminated) so identical configurations
produce byte-identical output.  The default cache directory comes from the
``EOREC_CACHE_DIR`` environment variable; calibration runs automatically on
first use of a cache directory and is persisted there.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cache import CorrCache, default_cache_dir
from .errors import EorecError, NotRepresentableError
from .hodge import energy_table, hodge_extract, lambda_triple
from .recursion import Conventions, CorrStore
from .scalars import format_rational
from .verify import build_stores, run_verification

HARD_G_CAP = 6


def _parse_framings(text: str) -> list[int]:
    try:
        fs = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("framings must be a comma list of integers")
    if not fs or any(f < 1 for f in fs):
        raise argparse.ArgumentTypeError("framings must be integers >= 1")
    return fs


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--f", type=_parse_framings, default=[1, 2, 3],
                   metavar="F[,F...]", help="framings (comma list, default 1,2,3)")
    p.add_argument("--window-margin", type=int, default=0,
                   help="extra truncation margin added to the window policy")
    p.add_argument("--cache-dir", default=None,
                   help="exact tensor cache directory (default: $EOREC_CACHE_DIR)")
    p.add_argument("--format", choices=("json", "text"), default="json",
                   dest="output_format", help="output format")
    p.add_argument("--override-sign-kernel", type=int, choices=(1, -1), default=None,
                   help="force the kernel orientation sign (audit)")
    p.add_argument("--override-sign-psirec", type=int, choices=(1, -1), default=None,
                   help="force the basis shift-recursion sign (audit)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eorec",
        description="Exact topological recursion on the framed vertex mirror curve")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("correlator", help="compute one correlator tensor")
    _add_common(p)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--h", type=int, required=True)

    p = sub.add_parser("free-energy", help="free energies against the closed form")
    _add_common(p)
    p.add_argument("--g-max", type=int, default=3)

    p = sub.add_parser("hodge", help="triple-Hodge brackets from one-point tensors")
    _add_common(p)
    p.add_argument("--g", type=int, required=True)

    p = sub.add_parser("verify", help="run the bundled verification suite")
    _add_common(p)
    p.add_argument("--g-max", type=int, default=3)

    return parser


def _check_gmax(value: int, minimum: int = 2) -> int:
    if value < minimum or value > HARD_G_CAP:
        raise SystemExit(f"eorec: --g-max must be between {minimum} and {HARD_G_CAP}")
    return value


def _resolve_conventions(args, cache: CorrCache | None) -> tuple[Conventions, int | None, bool]:
    """Calibrated or persisted conventions, with audit overrides applied.

    Returns (conventions, persisted epsilon, overridden flag); overridden
    conventions are never written back to the cache record.
    """
    ko, po = args.override_sign_kernel, args.override_sign_psirec
    if ko is not None and po is not None:
        return Conventions(sigma_kernel=ko, sigma_psirec=po), None, True
    persisted = cache.load_conventions() if cache else None
    if persisted is not None:
        conv, eps = persisted
    else:
        probe = CorrStore(args.f[0], conventions=None, window_margin=args.window_margin)
        conv, eps = probe.conventions, None
        if cache is not None:
            cache.store_conventions(conv, eps)
    if ko is not None or po is not None:
        conv = Conventions(sigma_kernel=ko if ko is not None else conv.sigma_kernel,
                           sigma_psirec=po if po is not None else conv.sigma_psirec)
        return conv, None, True
    return conv, eps, False


def _conv_payload(conv: Conventions, epsilon: int | None) -> dict:
    return {"sigma_kernel": conv.sigma_kernel, "sigma_psirec": conv.sigma_psirec,
            "epsilon": epsilon}


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ": ")) + "\n")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.window_margin < 0:
        print("eorec: --window-margin must be >= 0", file=sys.stderr)
        return 2
    cache_dir = args.cache_dir or default_cache_dir()
    cache = CorrCache(cache_dir) if cache_dir else None
    try:
        conv, epsilon, overridden = _resolve_conventions(args, cache)
        stores = build_stores(args.f, conventions=conv,
                              window_margin=args.window_margin, cache=cache)
    except EorecError as exc:
        print(f"eorec: {exc}", file=sys.stderr)
        return 2

    if args.command == "correlator":
        return _cmd_correlator(args, stores, conv, epsilon)
    if args.command == "hodge":
        return _cmd_hodge(args, stores, conv, epsilon)
    if args.command == "free-energy":
        return _cmd_free_energy(args, stores, conv, cache, overridden)
    if args.command == "verify":
        return _cmd_verify(args, stores, cache, overridden)
    raise AssertionError("unreachable")


def _cmd_correlator(args, stores, conv, epsilon) -> int:
    if args.g > HARD_G_CAP or 2 * args.g - 2 + args.h > 2 * HARD_G_CAP - 1:
        print(f"eorec: correlator indices beyond the desk-scale cap "
              f"(g <= {HARD_G_CAP}, 2g-2+h <= {2 * HARD_G_CAP - 1})", file=sys.stderr)
        return 2
    results = []
    for store in stores:
        try:
            w = store.correlator(args.g, args.h)
        except NotRepresentableError as exc:
            print(f"eorec: {exc}", file=sys.stderr)
            return 2
        results.append({
            "f": store.f, "g": w.g, "h": w.h,
            "terms": [{"n": list(idx), "c": format_rational(c)}
                      for idx, c in sorted(w.coeffs.items())],
        })
    if args.output_format == "json":
        _emit({"command": "correlator", "conventions": _conv_payload(conv, epsilon),
               "results": results})
    else:
        print(f"conventions: sigma_kernel={conv.sigma_kernel}, "
              f"sigma_psirec={conv.sigma_psirec}")
        for r in results:
            print(f"W(g={r['g']}, h={r['h']}) at f={r['f']}:")
            for t in r["terms"]:
                print(f"  {t['n']}: {t['c']}")
    return 0


def _cmd_hodge(args, stores, conv, epsilon) -> int:
    if args.g < 1:
        print("eorec: --g must be >= 1 for Hodge extraction", file=sys.stderr)
        return 2
    rows = []
    ratios = set()
    for store in stores:
        table = hodge_extract(store.correlator(args.g, 1))
        row = {"f": store.f,
               "bracket": {str(n): format_rational(c)
                           for n, c in sorted(table.bracket.items())}}
        ratio = table.value(1) / (store.f * (store.f + 1))
        row["bracket1_over_ff1"] = format_rational(ratio)
        ratios.add(ratio)
        if args.g >= 2:
            target = (2 * args.g - 2) * lambda_triple(args.g)
            row["dilaton_target"] = format_rational(target)
            row["dilaton_sign"] = (None if abs(ratio) != target
                                   else (1 if ratio == target else -1))
        rows.append(row)
    payload = {"command": "hodge", "g": args.g,
               "conventions": _conv_payload(conv, epsilon),
               "rows": rows, "framing_independent": len(ratios) == 1}
    if args.output_format == "json":
        _emit(payload)
    else:
        print(f"brackets at genus {args.g} "
              f"(sigma_kernel={conv.sigma_kernel}, sigma_psirec={conv.sigma_psirec}):")
        for row in rows:
            print(f"  f={row['f']}: " + ", ".join(
                f"<tau_{n}...> = {c}" for n, c in row["bracket"].items()))
            extra = f"    bracket[1]/(f(f+1)) = {row['bracket1_over_ff1']}"
            if "dilaton_target" in row:
                extra += (f", target (2g-2)*triple = {row['dilaton_target']}"
                          f", sign {row['dilaton_sign']}")
            print(extra)
        print(f"framing independent: {payload['framing_independent']}")
    return 0


def _cmd_free_energy(args, stores, conv, cache, overridden) -> int:
    g_max = _check_gmax(args.g_max)
    rows, epsilon = energy_table(stores, list(range(2, g_max + 1)))
    if cache is not None and not overridden and epsilon is not None:
        cache.store_conventions(conv, epsilon)
    payload_rows = []
    all_ok = True
    for row in rows:
        ok = (row.error is None and row.paths_equal and row.magnitude_ok
              and row.sign is not None)
        all_ok = all_ok and ok
        payload_rows.append({
            "g": row.g, "f": row.f,
            "direct": None if row.direct is None else format_rational(row.direct),
            "shortcut": None if row.shortcut is None else format_rational(row.shortcut),
            "reference": format_rational(row.reference),
            "sign": row.sign, "paths_equal": row.paths_equal,
            "magnitude_ok": row.magnitude_ok, "pass": ok,
            **({"error": row.error} if row.error else {}),
        })
    # framing independence per genus
    by_g: dict[int, set] = {}
    for row in rows:
        by_g.setdefault(row.g, set()).add(row.direct)
    framing_ok = all(len(v) == 1 for v in by_g.values())
    all_ok = all_ok and framing_ok and epsilon is not None
    payload = {"command": "free-energy",
               "conventions": _conv_payload(conv, epsilon),
               "rows": payload_rows,
               "framing_independent": framing_ok,
               "pass": all_ok}
    if args.output_format == "json":
        _emit(payload)
    else:
        print(f"conventions: sigma_kernel={conv.sigma_kernel}, "
              f"sigma_psirec={conv.sigma_psirec}, epsilon={epsilon}")
        for r in payload_rows:
            status = "ok" if r["pass"] else "FAIL"
            print(f"  g={r['g']} f={r['f']}: direct={r['direct']} "
                  f"shortcut={r['shortcut']} reference={r['reference']} [{status}]")
        print(f"framing independent: {framing_ok}; overall: "
              f"{'pass' if all_ok else 'fail'}")
    return 0 if all_ok else 1


def _cmd_verify(args, stores, cache, overridden) -> int:
    g_max = _check_gmax(args.g_max, minimum=0)
    report = run_verification(stores, g_max=g_max)
    if cache is not None and not overridden and report.epsilon is not None:
        cache.store_conventions(stores[0].conventions, report.epsilon)
    if args.output_format == "json":
        _emit({"command": "verify", **report.to_payload()})
    else:
        print(report.to_text())
    return 0 if report.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
