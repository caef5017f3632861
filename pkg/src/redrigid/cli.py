"""Command-line entry point: ``redrigid <subcommand> [flags]``.

Exit codes: 0 when every asserted property held, 1 when a violation was
found, 2 for usage or configuration errors.  Flags may also come from a
``--config`` file of flat ``key = value`` lines (``#`` comments) whose keys
are flag names; flags given on the command line win.
"""

from __future__ import annotations

import argparse
import json
import logging
import platform
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import __version__, reports, support, weil
from .curve_q import CurveQ, PointQ, good_primes, parse_curve, parse_point
from .errors import HypothesisViolation, InsufficientCoefficientsError, InvalidCurveError, ResourceError
from .groups import cohomology, endos, semidirect
from .groups import matrices as M
from .mahler import (
    MahlerSeries,
    congruence_check,
    nonpolynomiality_certificate,
    psi_difference_selftest,
    psi_eval,
)

log = logging.getLogger("redrigid")

OK, VIOLATION, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class ScanConfig:
    """Resolved settings for one CLI run (flag defaults, then config file, then flags)."""

    command: str
    options: Dict[str, object] = field(default_factory=dict)
    out: Optional[Path] = None
    json: Optional[Path] = None
    cache: Optional[Path] = None
    workers: int = 1


# -- config file ------------------------------------------------------------

def read_config(path: Path) -> Dict[str, str]:
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        k, v = (s.strip() for s in line.split("=", 1))
        out[k] = v
    return out


# -- scans with cache -------------------------------------------------------

def cached_scan(
    E1: CurveQ,
    P: PointQ,
    E2: CurveQ,
    Q: PointQ,
    bound: int,
    workers: int = 1,
    cache: Optional[Path] = None,
) -> List[support.ReductionRecord]:
    """Scan good primes <= bound, reusing and extending a cache file when one is given."""
    primes = good_primes((E1, E2), bound).primes
    key = reports.scan_key(E1, P, E2, Q)
    cache = cache or reports.default_cache_path(key)
    cached = reports.read_cache(cache, key) if cache else []
    top = cached[-1].p if cached else 0
    fresh = support.scan_records(E1, P, E2, Q, [p for p in primes if p > top], workers)
    if cache and fresh:
        reports.write_cache(cache, key, cached + fresh)
    return [r for r in cached + fresh if r.p <= bound]


def _write(path: Optional[Path], text: str) -> None:
    if path:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)


def _sidecar(cfg: ScanConfig, started: float) -> None:
    target = cfg.out or cfg.json
    if not target:
        return
    meta = {
        "command": cfg.command,
        "options": {k: str(v) for k, v in cfg.options.items()},
        "workers": cfg.workers,
        "version": __version__,
        "python": platform.python_version(),
        "started": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(started)),
        "seconds": round(time.time() - started, 3),
    }
    Path(str(target) + ".meta.json").write_text(json.dumps(meta, sort_keys=True, indent=2) + "\n")


# -- subcommands ------------------------------------------------------------

def cmd_scan(a, cfg: ScanConfig) -> int:
    E1 = parse_curve(a.curve1)
    E2 = parse_curve(a.curve2) if a.curve2 else E1
    P, Q = parse_point(a.point1), parse_point(a.point2)
    for E, X, name in ((E1, P, "point1"), (E2, Q, "point2")):
        if not E.contains(X):
            raise UsageError(f"{name} ({X}) is not on {E}")
    support._require_non_torsion(E1, P, "P")
    support._require_non_torsion(E2, Q, "Q")
    records = cached_scan(E1, P, E2, Q, a.pmax, cfg.workers, cfg.cache)
    verdict = support.verdict_from(E1, P, E2, Q, records)
    _write(cfg.out, reports.records_to_csv(records))
    _write(cfg.json, reports.to_json(verdict))
    print(f"scanned {verdict.scanned} good primes <= {a.pmax}")
    if verdict.counterexamples:
        shown = ", ".join(map(str, verdict.counterexamples[:10]))
        print(f"ord(Q) fails to divide ord(P) at {len(verdict.counterexamples)} primes: {shown}")
    else:
        print("ord(Q mod p) divides ord(P mod p) at every scanned prime")
    if E1 == E2 and not verdict.counterexamples:
        print(f"verdict m={verdict.inferred_m}" if verdict.inferred_m is not None else "verdict: no relation Q = mP found")
    if a.expect_clean and verdict.counterexamples:
        return VIOLATION
    if a.expect_m is not None and verdict.inferred_m != a.expect_m:
        return VIOLATION
    return OK


def cmd_density(a, cfg: ScanConfig) -> int:
    E, P = parse_curve(a.curve), parse_point(a.point)
    if not E.contains(P):
        raise UsageError(f"({P}) is not on {E}")
    support._require_non_torsion(E, P, "P")
    records = cached_scan(E, P, E, P, a.pmax, cfg.workers, cfg.cache)
    if not records:
        raise UsageError(f"no good primes <= {a.pmax}")
    result = {}
    status = OK
    for ell in a.ell:
        div, cop = support.densities(records, ell)
        result[str(ell)] = {"divisible": div, "coprime": cop}
        print(f"ell={ell}: divisible {div} ({float(div):.4f}), coprime {cop} ({float(cop):.4f})")
        if div + cop != 1 or min(div, cop) < a.floor:
            status = VIOLATION
    _write(cfg.out, reports.records_to_csv(records))
    _write(cfg.json, reports.to_json({"scanned": len(records), "densities": result}))
    return status


def cmd_weil(a, cfg: ScanConfig) -> int:
    ok = weil.injectivity_threshold_check(a.g, a.nm_max)
    t = weil.threshold(a.g)
    print(f"g={a.g}: upper < 2*lower for every nm in ({t}, {a.nm_max}]: {ok}")
    _write(cfg.json, reports.to_json({"g": a.g, "nm_max": a.nm_max, "threshold": t, "holds": ok}))
    return OK if ok else VIOLATION


def parse_matrices(text: str, ell: int) -> List[M.Mat]:
    """``"1,1,0,1;2,0,0,2"``: row-major entries, matrices separated by ';'."""
    out = []
    for chunk in text.split(";"):
        entries = [int(x) for x in chunk.split(",")]
        n = int(round(len(entries) ** 0.5))
        if n * n != len(entries):
            raise UsageError(f"{chunk!r} is not a square matrix")
        out.append(M.mat([entries[i * n : (i + 1) * n] for i in range(n)], ell))
    return out


def _group(a) -> M.MatrixGroupSpec:
    if a.generators:
        return M.MatrixGroupSpec.generated(a.ell, parse_matrices(a.generators, a.ell))
    return M.MatrixGroupSpec.gl(a.n, a.ell)


def cmd_lemma4(a, cfg: ScanConfig) -> int:
    G = _group(a)
    modes = ["conjugacy", "linear"] if a.mode == "both" else [a.mode]
    rows = {m: semidirect.lemma4_rows(G, m) for m in modes}
    status = OK
    out = {"order": G.order, "modes": {}}
    for m, rs in rows.items():
        bad = [r.sigma for r in rs if r.hyp and r.eig1]
        stats = semidirect.converse_stats(rs)
        out["modes"][m] = {"violations": bad, "stats": stats}
        print(f"{m}: |G|={G.order}, violations={len(bad)}, {stats}")
        if bad:
            status = VIOLATION
    if len(rows) == 2:
        agree = all(x.hyp == y.hyp for x, y in zip(rows["conjugacy"], rows["linear"]))
        out["modes_agree"] = agree
        print(f"mode agreement on every sigma: {agree}")
        if not agree:
            status = VIOLATION
    _write(cfg.json, reports.to_json(out))
    return status


def cmd_endos(a, cfg: ScanConfig) -> int:
    G = endos.SL2(a.p)
    found = endos.enumerate_endos(a.p, G)
    gl = M.all_gl(2, a.p)
    kinds = {"trivial": 0, "inner": 0, "other": 0}
    non_bij = 0
    for e in found:
        c = endos.classify_endo(e, gl)
        kinds[c.kind] += 1
        if c.kind != "trivial" and not e.is_bijective():
            non_bij += 1
    conj = len(endos.conjugation_maps(G, gl))
    nontrivial = len(found) - kinds["trivial"]
    print(f"SL(2,{a.p}): {len(found)} endomorphisms, {kinds}, non-bijective nontrivial: {non_bij}")
    print(f"distinct GL(2,{a.p}) conjugation maps: {conj}")
    ok = kinds["other"] == 0 and non_bij == 0 and nontrivial == conj
    _write(cfg.json, reports.to_json({"p": a.p, "count": len(found), "kinds": kinds,
                                      "non_bijective": non_bij, "conjugation_maps": conj, "holds": ok}))
    return OK if ok else VIOLATION


def cmd_h1(a, cfg: ScanConfig) -> int:
    G = _group(a)
    res = cohomology.h1_classes(G)
    print(f"|G|={G.order}: {res.n_cocycles} cocycles, {res.n_coboundaries} coboundaries, H^1 classes = {res.count}")
    out = {"order": G.order, "classes": res.count, "cocycles": res.n_cocycles,
           "coboundaries": res.n_coboundaries,
           "representatives": [list(c.values) for c in res.representatives]}
    status = OK
    if a.tau:
        (tau,) = parse_matrices(a.tau, a.ell)
        try:
            ok = cohomology.lemma1_verify(G, tau, res)
        except ValueError as exc:
            raise UsageError(str(exc))
        out["tau_annihilates"] = ok
        print(f"(tau - 1) maps every class to a coboundary: {ok}")
        status = OK if ok else VIOLATION
    _write(cfg.json, reports.to_json(out))
    return status


def cmd_mahler(a, cfg: ScanConfig) -> int:
    s = MahlerSeries.parse(a.coeffs)
    head = [psi_eval(s, n) for n in range(min(s.K, 4) + 1)]
    bad = congruence_check(s, a.mod_max, a.n_max)
    cert = nonpolynomiality_certificate(s, a.degree_max)
    selftest = psi_difference_selftest(s, min(s.K, 8))
    print(f"psi(0..{len(head) - 1}) = {head}")
    print(f"congruence violations (N <= {a.mod_max}, |m|,|n| <= {a.n_max}): {len(bad)}")
    print(f"non-polynomial up to degree {a.degree_max}: {cert}")
    _write(cfg.json, reports.to_json({"psi_head": head, "violations": bad,
                                      "nonpolynomial": cert, "difference_selftest": selftest}))
    if bad or not selftest or (a.expect_nonpolynomial and not cert):
        return VIOLATION
    return OK


def cmd_ap_compare(a, cfg: ScanConfig) -> int:
    E1, E2 = parse_curve(a.curve1), parse_curve(a.curve2)
    frac = support.ap_coincidence(E1, E2, a.pmax)
    print(f"a_p(E1) = a_p(E2) for a fraction {frac} ({float(frac):.4f}) of common good primes <= {a.pmax}")
    _write(cfg.json, reports.to_json({"fraction": frac, "pmax": a.pmax}))
    return OK


# -- parser -----------------------------------------------------------------

def _common(p: argparse.ArgumentParser, csv_out: bool = False, scan: bool = False) -> None:
    p.add_argument("--config", type=Path, help="flat key = value file; flags override it")
    p.add_argument("--json", type=Path, help="write machine-readable results here")
    if csv_out:
        p.add_argument("--out", type=Path, help="write the per-prime CSV here")
    if scan:
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--cache", type=Path, help=f"scan cache file (default: ${reports.CACHE_ENV}/scan-<hash>.csv)")
        p.add_argument("--pmax", type=int, default=10000)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="redrigid", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    parser.commands = sub.choices

    p = sub.add_parser("scan", help="support-problem scan of (P, Q) over good primes")
    _common(p, csv_out=True, scan=True)
    p.add_argument("--curve1", default="0,-2")
    p.add_argument("--point1", default="3,5")
    p.add_argument("--curve2", default=None, help="defaults to curve1")
    p.add_argument("--point2", required=False)
    p.add_argument("--expect-clean", action="store_true", help="exit 1 if any counterexample prime exists")
    p.add_argument("--expect-m", type=int, default=None, help="exit 1 unless the inferred relation is Q = mP")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("density", help="densities of ell | ord(P mod p) and its complement")
    _common(p, csv_out=True, scan=True)
    p.add_argument("--curve", default="0,-2")
    p.add_argument("--point", default="3,5")
    p.add_argument("--ell", type=lambda s: [int(x) for x in str(s).split(",")], default=[2, 3])
    p.add_argument("--floor", type=float, default=0.0, help="exit 1 if a density falls below this")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("weil", help="injective-implies-onto threshold sweep")
    _common(p)
    p.add_argument("--g", type=int, default=1)
    p.add_argument("--nm-max", type=int, default=10000)
    p.set_defaults(func=cmd_weil)

    p = sub.add_parser("lemma4", help="eigenvalue-1 lemma over (H1 + H2) x| G")
    _common(p)
    p.add_argument("--ell", type=int, default=3)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--generators", default=None, help="default: all of GL(n, F_ell)")
    p.add_argument("--mode", choices=["conjugacy", "linear", "both"], default="both")
    p.set_defaults(func=cmd_lemma4)

    p = sub.add_parser("endos", help="endomorphism census of SL(2, Z/p)")
    _common(p)
    p.add_argument("--p", type=int, default=5)
    p.set_defaults(func=cmd_endos)

    p = sub.add_parser("h1", help="H^1(G, F_ell^n) by enumeration; --tau checks annihilation")
    _common(p)
    p.add_argument("--ell", type=int, default=3)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--generators", default=None)
    p.add_argument("--tau", default=None)
    p.set_defaults(func=cmd_h1)

    p = sub.add_parser("mahler", help="congruence-preserving non-polynomial map of Z")
    _common(p)
    p.add_argument("--coeffs", default="ones:169")
    p.add_argument("--mod-max", type=int, default=30)
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--degree-max", type=int, default=12)
    p.add_argument("--expect-nonpolynomial", action="store_true")
    p.set_defaults(func=cmd_mahler)

    p = sub.add_parser("ap-compare", help="fraction of primes with equal Frobenius traces")
    _common(p, scan=True)
    p.add_argument("--curve1", default="0,-2")
    p.add_argument("--curve2", default="1,1")
    p.set_defaults(func=cmd_ap_compare)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not getattr(args, "config", None):
        return args
    try:
        values = read_config(args.config)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}")
    # re-parse with the file's values as defaults so explicit flags still win
    sub = parser.commands[args.command]
    dests = {a.dest: a for a in sub._actions}
    defaults = {}
    for k, v in values.items():
        dest = k.lstrip("-").replace("-", "_")
        if dest not in dests or dest in ("config", "help"):
            raise UsageError(f"unknown config key {k!r} for {args.command}")
        action = dests[dest]
        if action.const is True and action.nargs == 0:
            defaults[dest] = v.lower() in ("1", "true", "yes", "on")
        elif action.type is not None:
            defaults[dest] = action.type(v)
        else:
            defaults[dest] = v
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        try:
            args = _apply_config(parser, argv)
        except SystemExit as exc:
            return USAGE if exc.code not in (0, None) else OK
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        if args.command == "scan" and not args.point2:
            raise UsageError("scan needs --point2")
        cfg = ScanConfig(
            command=args.command,
            options={k: v for k, v in vars(args).items() if k not in ("func", "config")},
            out=getattr(args, "out", None),
            json=args.json,
            cache=getattr(args, "cache", None),
            workers=getattr(args, "workers", 1),
        )
        if cfg.workers < 1:
            raise UsageError("--workers must be >= 1")
        started = time.time()
        code = args.func(args, cfg)
        _sidecar(cfg, started)
        return code
    except (UsageError, HypothesisViolation, InvalidCurveError, InsufficientCoefficientsError,
            ResourceError, ValueError) as exc:
        print(f"redrigid: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
