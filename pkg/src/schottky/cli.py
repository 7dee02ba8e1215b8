"""Batch front end: parse group/path specifications, run verifications, emit
machine-readable reports and plot data.

Exit status: 0 when the verified identity holds within tolerance (or the
requested artifact was produced), 1 when the identity check fails, 2 for
configuration errors, 3 for engine errors.  Reports are JSON with sorted
keys and no timestamps, so identical configurations produce byte-identical
output.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Optional

from .errors import ConfigError, SchottkyError
from .groups import (
    MarkedSchottkyGroup,
    Word,
    change_lift,
    group_from_dict,
    group_to_dict,
    kappa as system_kappa,
    verify_circle_pairing,
)
from .curves import (
    Slope,
    TraceTriple,
    WeierstrassClass,
    all_slopes_up_to,
    curve_rows,
)
from .identities import (
    IdentityReport,
    PantsDecomposition,
    gap_endpoints,
    general_mcshane_sum,
    markoff_sum,
    normalize_commutator_frame,
    pants_trivial_identity,
    torus_mcshane_sum,
    weierstrass_sum,
)
from .continuation import path_between, verify_positivity
from .moebius import is_infinity

SCHEMA = 1


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read JSON from {path}: {exc}") from exc


def _load_group(args) -> MarkedSchottkyGroup:
    if not args.group:
        raise ConfigError("--group FILE|- is required")
    doc = _read_json(args.group)
    try:
        group = group_from_dict(doc)
    except (KeyError, TypeError, ValueError, SchottkyError) as exc:
        raise ConfigError(f"bad group document: {exc}") from exc
    if args.lift:
        try:
            signs = [bool(int(s)) for s in args.lift.split(",")]
        except ValueError as exc:
            raise ConfigError(f"bad --lift {args.lift!r}: use 0/1 per generator") from exc
        if len(signs) != group.rank:
            raise ConfigError(f"--lift needs {group.rank} entries")
        group = change_lift(group, signs)
    return group


def _emit(doc: dict, out: Optional[str]) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2, allow_nan=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _write_terms_csv(report: IdentityReport, path: str) -> None:
    from .curves import weierstrass_class

    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, quoting=csv.QUOTE_MINIMAL)
        writer.writerow(["p", "q", "class", "term_re", "term_im"])
        for label, value in report.per_term or ():
            if "/" in label and ":" not in label:
                p_str, q_str = label.split("/")
                try:
                    cls = weierstrass_class(Slope(int(p_str), int(q_str))).value
                except ValueError:
                    cls = ""
                writer.writerow(
                    [p_str, q_str, cls, repr(value.real), repr(value.imag)]
                )
            else:
                writer.writerow([label, "", "", repr(value.real), repr(value.imag)])


def _finish_identity(report: IdentityReport, args, extra: Optional[dict] = None) -> int:
    doc = report.to_dict()
    if not getattr(args, "terms", False):
        doc.pop("per_term", None)
    doc["command"] = args.command
    if extra:
        doc.update(extra)
    _emit(doc, args.out)
    if getattr(args, "csv", None):
        _write_terms_csv(report, args.csv)
    return 0 if report.residual <= args.tol else 1


def _cmd_verify_torus(args) -> int:
    group = _load_group(args)
    report = torus_mcshane_sum(
        group,
        max_sum=args.max_sum,
        tol=args.tol,
        force=args.force,
        precision=args.precision,
        threads=args.threads,
    )
    return _finish_identity(report, args)


def _cmd_verify_weierstrass(args) -> int:
    group = _load_group(args)
    classes = {
        "oddodd": [WeierstrassClass.ODD_ODD],
        "oddeven": [WeierstrassClass.ODD_EVEN],
        "evenodd": [WeierstrassClass.EVEN_ODD],
        "all": list(WeierstrassClass),
    }[args.wclass]
    reports = [
        weierstrass_sum(
            group,
            wc,
            max_sum=args.max_sum,
            tol=args.tol,
            quarter=args.quarter,
            force=args.force,
            precision=args.precision,
            threads=args.threads,
        )
        for wc in classes
    ]
    if len(reports) == 1:
        return _finish_identity(reports[0], args)
    doc = {
        "schema": SCHEMA,
        "command": args.command,
        "reports": [r.to_dict() for r in reports],
    }
    if not args.terms:
        for rd in doc["reports"]:
            rd.pop("per_term", None)
    _emit(doc, args.out)
    if args.csv:
        _write_terms_csv(reports[0], args.csv)
    return 0 if all(r.residual <= args.tol for r in reports) else 1


def _cmd_verify_pants_trivial(args) -> int:
    worst = None
    runs = []
    if args.lengths:
        try:
            triple = [complex(*[float(x) for x in part.split(":")]) if ":" in part else complex(float(part))
                      for part in args.lengths.split(",")]
        except ValueError as exc:
            raise ConfigError(f"bad --lengths {args.lengths!r}") from exc
        if len(triple) != 3:
            raise ConfigError("--lengths needs three entries l0,l1,l2 (re or re:im)")
        report = pants_trivial_identity(*triple, precision=args.precision)
        return _finish_identity(report, args)
    # sweep mode: deterministic pseudo-random triples plus imaginary entries
    import random

    rng = random.Random(20250809)
    for _ in range(args.count):
        l0, l1, l2 = (0.1 + 7.9 * rng.random() for _ in range(3))
        rep = pants_trivial_identity(l0, l1, l2, precision=args.precision)
        runs.append(rep.residual)
        worst = max(worst or 0.0, rep.residual)
    for _ in range(args.count // 5):
        theta = rng.uniform(1e-3, math.pi)
        l0, l2 = 0.1 + 7.9 * rng.random(), 0.1 + 7.9 * rng.random()
        rep = pants_trivial_identity(l0, complex(0, theta), l2, precision=args.precision)
        runs.append(rep.residual)
        worst = max(worst, rep.residual)
    doc = {
        "schema": SCHEMA,
        "command": args.command,
        "sweep_count": len(runs),
        "worst_residual": worst,
        "tol": args.tol,
    }
    _emit(doc, args.out)
    return 0 if worst <= args.tol else 1


def _cmd_verify_markoff(args) -> int:
    group = _load_group(args)
    triple = TraceTriple.of_group(group)
    report = markoff_sum(
        triple,
        max_sum=args.max_sum,
        tol=args.tol,
        precision=args.precision,
        threads=args.threads,
    )
    return _finish_identity(report, args)


def _parse_decomposition(doc: dict) -> PantsDecomposition:
    try:
        d0 = Word.from_string(doc["d0"])
        boundaries = tuple(Word.from_string(w) for w in doc.get("boundaries", []))
        pairs = tuple(
            (Word.from_string(u), Word.from_string(v)) for u, v in doc.get("pairs", [])
        )
        bjs = tuple(
            tuple(Word.from_string(w) for w in stream) for stream in doc.get("bj", [])
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad decomposition document: {exc}") from exc
    if len(bjs) != len(boundaries):
        raise ConfigError("decomposition needs one bj stream per boundary word")
    return PantsDecomposition(d0=d0, boundaries=boundaries, pairs=pairs, bjs=bjs)


def _cmd_verify_general(args) -> int:
    group = _load_group(args)
    if args.torus_stream:
        from .identities import torus_decomposition

        pd = torus_decomposition(args.max_sum)
    else:
        if not args.decomposition:
            raise ConfigError("--decomposition FILE or --torus-stream is required")
        pd = _parse_decomposition(_read_json(args.decomposition))
    report = general_mcshane_sum(group, pd, budget=args.budget, tol=args.tol)
    return _finish_identity(report, args)


def _cmd_certify(args) -> int:
    group = _load_group(args)
    from .groups import attempt_classical_certificate

    cs = group.circles or attempt_classical_certificate(group)
    doc: dict = {"schema": SCHEMA, "command": "certify", "found": cs is not None}
    if cs is not None:
        cert = verify_circle_pairing(group, cs)
        doc["verified"] = cert.ok
        doc["kappa"] = system_kappa(cs) if cert.ok else None
        doc["group"] = group_to_dict(group.with_circles(cs))
    _emit(doc, args.out)
    return 0 if cs is not None else 1


def _cmd_deform(args) -> int:
    group = _load_group(args)
    if not args.target:
        raise ConfigError("--target FILE is required")
    target = group_from_dict(_read_json(args.target))
    path = path_between(group, target, strategy=args.strategy, samples=args.steps)
    words = _tracked_words(group.rank, args.word_length)
    pos = verify_positivity(path, words, steps=args.steps)
    endpoint_report = None
    endpoint_ok = True
    if target.rank == 2:
        endpoint_report = torus_mcshane_sum(
            target, max_sum=args.max_sum, tol=args.tol, force=args.force
        )
        endpoint_ok = endpoint_report.residual <= args.tol
    doc = {
        "schema": SCHEMA,
        "command": "deform",
        "strategy": args.strategy,
        "waypoints": len(path.waypoints),
        "positivity": {
            "ok": pos.ok,
            "min_real": pos.min_real,
            "argmin_word": pos.argmin_word.to_string() if pos.argmin_word else None,
            "argmin_t": pos.argmin_t,
            "words_checked": pos.words_checked,
        },
    }
    if endpoint_report is not None:
        doc["endpoint_identity"] = endpoint_report.to_dict()
        doc["endpoint_identity"].pop("per_term", None)
    _emit(doc, args.out)
    return 0 if (pos.ok and endpoint_ok) else 1


def _tracked_words(rank: int, max_len: int) -> list[Word]:
    import itertools

    letters = [k for k in range(1, rank + 1)] + [-k for k in range(1, rank + 1)]
    seen = set()
    out = []
    for length in range(1, max_len + 1):
        for w in itertools.product(letters, repeat=length):
            if any(w[i] == -w[(i + 1) % length] for i in range(length)):
                continue
            rots = [tuple(w[i:] + w[:i]) for i in range(length)]
            iw = tuple(-x for x in reversed(w))
            irots = [tuple(iw[i:] + iw[:i]) for i in range(length)]
            key = min(rots + irots)
            if key not in seen:
                seen.add(key)
                out.append(Word(w))
    return out


def _fmt_point(z) -> str:
    if is_infinity(z):
        return "inf"
    return repr(complex(z).real) if abs(complex(z).imag) < 1e-12 else repr(complex(z))


def _cmd_emit_gaps(args) -> int:
    group = _load_group(args)
    group = normalize_commutator_frame(group)
    rows = []
    for s in all_slopes_up_to(args.max_sum):
        ge = gap_endpoints(group, s)
        rows.append(ge)
    target = args.csv or args.out
    if not target:
        raise ConfigError("emit-gaps needs --csv FILE (or --out)")
    with open(target, "w", newline="") as fh:
        writer = csv.writer(fh, quoting=csv.QUOTE_MINIMAL)
        writer.writerow(["p", "q", "z1", "z2", "gap_re", "gap_im", "boundary"])
        for ge in rows:
            writer.writerow(
                [
                    ge.slope.p,
                    ge.slope.q,
                    _fmt_point(ge.z1),
                    _fmt_point(ge.z2),
                    repr(ge.gap.real),
                    repr(ge.gap.imag),
                    int(ge.boundary),
                ]
            )
    return 0


def _cmd_emit_traces(args) -> int:
    group = _load_group(args)
    target = args.csv or args.out
    if not target:
        raise ConfigError("emit-traces needs --csv FILE (or --out)")
    with open(target, "w", newline="") as fh:
        writer = csv.writer(fh, quoting=csv.QUOTE_MINIMAL)
        writer.writerow(
            ["p", "q", "class", "trace_re", "trace_im", "length_re", "length_im"]
        )
        for p, q, cls, trace, length in curve_rows(group, args.max_sum):
            writer.writerow(
                [p, q, cls, repr(trace.real), repr(trace.imag), repr(length.real), repr(length.imag)]
            )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schottky",
        description="Verify length identities for marked classical Schottky groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, group=True):
        if group:
            p.add_argument("--group", help="group JSON file, or - for stdin")
            p.add_argument("--lift", help="comma-separated 0/1 signs, one per generator")
        p.add_argument("--max-sum", dest="max_sum", type=int, default=40)
        p.add_argument("--tol", type=float, default=1e-8)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--precision", choices=["double", "extended"], default="double")
        p.add_argument("--force", action="store_true", help="run without a certificate")
        p.add_argument("--out", help="write the JSON report here instead of stdout")
        p.add_argument("--csv", help="write per-term CSV here")
        p.add_argument("--terms", action="store_true", help="include per-term values in JSON")

    p = sub.add_parser("verify-torus", help="curve-class gap series vs commutator half length")
    common(p)
    p.set_defaults(fn=_cmd_verify_torus)

    p = sub.add_parser("verify-weierstrass", help="parity-class series vs pi/2")
    common(p)
    p.add_argument("--class", dest="wclass", default="all",
                   choices=["oddodd", "oddeven", "evenodd", "all"])
    p.add_argument("--quarter", type=int, default=0, choices=[0, 1])
    p.set_defaults(fn=_cmd_verify_weierstrass, tol=1e-6)

    p = sub.add_parser("verify-pants-trivial", help="three-term boundary identity sweep")
    common(p, group=False)
    p.add_argument("--lengths", help="single triple l0,l1,l2 (entries re or re:im)")
    p.add_argument("--count", type=int, default=100)
    p.set_defaults(fn=_cmd_verify_pants_trivial, tol=1e-10)

    p = sub.add_parser("verify-markoff", help="trace-form series vs commutator half length")
    common(p)
    p.set_defaults(fn=_cmd_verify_markoff)

    p = sub.add_parser("verify-general", help="decomposition-driven gap series")
    common(p)
    p.add_argument("--decomposition", help="decomposition JSON file")
    p.add_argument("--torus-stream", action="store_true",
                   help="use the degenerate pair stream over all curve classes")
    p.add_argument("--budget", type=int, default=100000)
    p.set_defaults(fn=_cmd_verify_general)

    p = sub.add_parser("certify", help="search for a circle certificate and report kappa")
    common(p)
    p.set_defaults(fn=_cmd_certify)

    p = sub.add_parser("deform", help="validated path + positivity + endpoint identity")
    common(p)
    p.add_argument("--target", help="target group JSON file")
    p.add_argument("--strategy", default="maskit", choices=["direct", "maskit"])
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--word-length", dest="word_length", type=int, default=4)
    p.set_defaults(fn=_cmd_deform)

    p = sub.add_parser("emit-gaps", help="CSV of gap endpoints on the commutator axis")
    common(p)
    p.set_defaults(fn=_cmd_emit_gaps, max_sum=8)

    p = sub.add_parser("emit-traces", help="CSV of (slope, class, trace, length) rows")
    common(p)
    p.set_defaults(fn=_cmd_emit_traces)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(json.dumps({"error": "config", "message": str(exc)}), file=sys.stderr)
        return 2
    except SchottkyError as exc:
        print(
            json.dumps(
                {
                    "error": type(exc).__name__,
                    "module": type(exc).__module__,
                    "message": str(exc),
                }
            ),
            file=sys.stderr,
        )
        return 3


if __name__ == "__main__":
    sys.exit(main())
