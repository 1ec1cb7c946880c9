"""Command-line interface.

One command per process.  Exit codes: 0 success / verified pass, 1 a
verified negative result (an identity fails, a search exhausts, a replay
finds a contradiction), 2 invalid input, 3 precision exhaustion on
interval arithmetic.  Output is byte-identical across runs for identical
inputs: JSON is emitted with sorted keys and no environment-dependent
content.  GEODEX_WORKERS is accepted for interface compatibility and
validated, but the certificate scan is a deterministic sequential pass,
so the value never changes any output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .config import (FORMATS, _scientific_upper, _truncated_decimal,
                     certificate_to_json, config_to_json, parse_certificate,
                     parse_config_document, serialize_certificate)
from .errors import (ContradictionError, GeodexError, InputError,
                     PrecisionError, SearchExhausted)
from .homology import (alternating_betti_sum, betti, mean_index_constant,
                       poincare_series_coeffs)
from .iteration import index_table, mean_index, nullity_at
from .jump import find_common_jump, replay_proof, verify_jump
from .morse import (check_mean_index_identity, check_morse_inequalities,
                    morse_counts)
from .scalars import BoundedReal, as_fraction, format_rational


def _bounded_to_json(x: BoundedReal):
    if x.is_exact:
        return format_rational(x.lo)
    return {"lo": format_rational(x.lo), "hi": format_rational(x.hi),
            "irrational": x.irrational}


def _bounded_text(x: BoundedReal) -> str:
    """Compact human form for tables: exact rationals verbatim, intervals as
    a truncated decimal with a rounded-up half-width."""
    if x.is_exact:
        return format_rational(x.lo)
    return (_truncated_decimal(x.center, 15)
            + "+-" + _scientific_upper(x.width / 2))


def _emit(payload, fmt: str, tsv_rows) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for row in tsv_rows:
            print("\t".join(str(c) for c in row))


def _load_config(path: str, fmt_flag: str | None):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read configuration {path}: {exc}") from exc
    cfg, fmt = parse_config_document(text)
    return cfg, (fmt_flag or fmt or "json")


def _load_certificate(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_certificate(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read certificate {path}: {exc}") from exc


def _workers_from_env() -> int:
    raw = os.environ.get("GEODEX_WORKERS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputError(f"GEODEX_WORKERS must be an integer, got {raw!r}") from exc
    if value < 1:
        raise InputError("GEODEX_WORKERS must be at least 1")
    return value


def _window(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError as exc:
        raise InputError(f"window must look like 'q_lo:q_hi', got {text!r}") from exc


# -- command handlers -------------------------------------------------------


def _cmd_validate(args) -> int:
    cfg, fmt = _load_config(args.config, args.format)
    rows = []
    derived = []
    for g in cfg.geodesics:
        mi = mean_index(g)
        derived.append({
            "label": g.label,
            "initial_index": g.initial_index,
            "initial_nullity": g.initial_nullity,
            "mean_index": _bounded_to_json(mi),
            "elliptic_height": g.descriptor.elliptic_height,
            "bumpy": g.is_bumpy,
        })
        rows.append((g.label, g.initial_index, g.initial_nullity,
                     _bounded_text(mi), g.descriptor.elliptic_height))
    payload = {"canonical": config_to_json(cfg), "derived": derived}
    _emit(payload, fmt, rows)
    return 0


def _cmd_index_table(args) -> int:
    cfg, fmt = _load_config(args.config, args.format)
    records = ([cfg.record(args.label)] if args.label
               else list(cfg.geodesics))
    payload = {}
    rows = []
    for g in records:
        table = index_table(g, args.m_max)
        payload[g.label] = [list(r) for r in table]
        rows.extend((g.label, m, i, nu) for m, i, nu in table)
    _emit(payload, fmt, rows)
    return 0


def _cmd_mean_index(args) -> int:
    cfg, fmt = _load_config(args.config, args.format)
    payload = {g.label: _bounded_to_json(mean_index(g)) for g in cfg.geodesics}
    rows = [(g.label, _bounded_text(mean_index(g))) for g in cfg.geodesics]
    _emit(payload, fmt, rows)
    return 0


def _cmd_betti(args) -> int:
    ladder = poincare_series_coeffs(args.n, args.qmax)
    for q in range(args.qmax + 1):
        if ladder[q] != betti(args.n, q):
            print(f"internal cross-check failed at degree {q}", file=sys.stderr)
            return 1
    if args.format == "json":
        payload = {"n": args.n, "q_max": args.qmax, "values": list(ladder.values),
                   "alternating_sum": alternating_betti_sum(args.n, args.qmax),
                   "mean_index_constant": format_rational(mean_index_constant(args.n))}
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for v in ladder.values:
            print(v)
    return 0


def _cmd_identity_check(args) -> int:
    cfg, fmt = _load_config(args.config, args.format)
    report = check_mean_index_identity(cfg)
    payload = {
        "lhs": _bounded_to_json(report.lhs),
        "rhs": format_rational(report.rhs),
        "pass": report.passed,
        "terms": [{"label": t.label, "avg_chi": format_rational(t.chi_hat),
                   "mean_index": _bounded_to_json(t.mean_index)}
                  for t in report.terms],
    }
    rows = [(t.label, format_rational(t.chi_hat), str(t.mean_index))
            for t in report.terms]
    rows.append(("lhs", str(report.lhs), ""))
    rows.append(("rhs", format_rational(report.rhs), ""))
    rows.append(("pass", report.passed, ""))
    _emit(payload, fmt, rows)
    return 0 if report.passed else 1


def _cmd_verify_morse(args) -> int:
    cfg, fmt = _load_config(args.config, args.format)
    q_lo, q_hi = _window(args.window)
    window = morse_counts(cfg, q_lo, q_hi, args.m_max)
    ranks = [betti(cfg.n, q) for q in range(q_lo, q_hi + 1)]
    report = check_morse_inequalities(window.counts, ranks)
    payload = {
        "window": [q_lo, q_hi],
        "m_max": args.m_max,
        "counts": list(window.counts),
        "betti": ranks,
        "contributors": [list(c) for c in window.contributors],
        "pass": report.passed,
        "first_violation": (list(report.first_violation)
                            if report.first_violation else None),
    }
    rows = [(q, window.count(q), betti(cfg.n, q))
            for q in range(q_lo, q_hi + 1)]
    rows.append(("pass", report.passed, ""))
    _emit(payload, fmt, rows)
    return 0 if report.passed else 1


def _cmd_jump_search(args) -> int:
    cfg, fmt = _load_config(args.config, args.format)
    _workers_from_env()
    eps = as_fraction(args.eps) if args.eps else None
    cert = find_common_jump(
        cfg, eps=eps, delta=as_fraction(args.delta),
        m_limit=args.max_m, n_limit=args.max_n,
        enforce_eps_bound=not args.allow_loose_eps)
    print(serialize_certificate(cert), end="")
    return 0


def _cmd_verify_jump(args) -> int:
    cfg, fmt = _load_config(args.config, args.format)
    cert = _load_certificate(args.cert)
    report = verify_jump(cfg, cert, m_probe=args.probe,
                         enforce_eps_bound=not args.allow_loose_eps)
    payload = {
        "certificate": certificate_to_json(cert),
        "pass": report.passed,
        "failures": report.failures(),
        "geodesics": [{
            "label": v.label,
            "peak_index": v.peak_index,
            "peak_lower_ok": v.peak_lower_ok,
            "peak_upper_ok": v.peak_upper_ok,
            "before_ok": v.before_ok,
            "after_ok": v.after_ok,
            "before_complete": v.before_complete,
            "after_certified_from": v.after_certified_from,
            "after_complete": v.after_complete,
        } for v in report.verdicts],
    }
    rows = [(v.label, v.peak_index, v.passed) for v in report.verdicts]
    rows.append(("pass", report.passed, ""))
    _emit(payload, fmt, rows)
    return 0 if report.passed else 1


def _cmd_replay_proof(args) -> int:
    cfg, fmt = _load_config(args.config, args.format)
    cert = _load_certificate(args.cert)
    report = replay_proof(cfg, cert, m_probe=args.probe,
                          enforce_eps_bound=not args.allow_loose_eps)
    trunc = report.alternating_morse.truncation
    payload = {
        "pass": report.passed,
        "failures": report.failure_names(),
        "verify_pass": report.verify.passed,
        "weighted_euler": {
            "lhs": format_rational(report.weighted_euler.lhs),
            "rhs": format_rational(report.weighted_euler.rhs),
            "pass": report.weighted_euler.passed,
        },
        "alternating_morse": {
            "window_top": report.alternating_morse.window_top,
            "morse_side": report.alternating_morse.morse_side,
            "chi_side": format_rational(report.alternating_morse.chi_side),
            "pass": report.alternating_morse.passed,
            "truncation_ok": trunc.ok,
            "truncation_failures": trunc.failure_names(),
        },
        "top_degree_witness": report.top_degree.witness,
        "off_by_one": None,
        "prejump": None,
        "prejump_error": report.prejump_error,
        "steps": {
            "ladder": [{"degree": d.degree, "betti": d.betti_rank,
                        "labels": list(d.labels), "satisfied": d.satisfied}
                       for d in report.steps.ladder],
            "witness": report.steps.witness,
            "boundary_index_count": report.steps.boundary_index_count,
            "case": report.steps.case,
            "extra_label": report.steps.extra_label,
            "distinct_labels": list(report.steps.distinct_labels),
            "distinct_count": len(report.steps.distinct_labels),
            "target": report.steps.target,
        },
        "ellipticity": None,
        "ellipticity_error": report.ellipticity_error,
    }
    if report.top_degree.contradiction is not None:
        c = report.top_degree.contradiction
        payload["off_by_one"] = {
            "morse_alternating": format_rational(c.morse_alternating),
            "betti_alternating": c.betti_alternating,
            "difference": format_rational(c.difference),
            "top_inequality_holds": c.top_inequality_holds,
        }
    if report.prejump is not None:
        payload["prejump"] = {
            label: {"holds": r.holds, "vacuous": r.vacuous, "refined": r.refined}
            for label, r in report.prejump.items()
        }
    if report.ellipticity is not None:
        payload["ellipticity"] = [
            {"label": f.label, "forced_elliptic": f.forced_elliptic,
             "elliptic_height": f.elliptic_height}
            for f in report.ellipticity
        ]
    rows = [("pass", report.passed)]
    rows.extend(("failure", name) for name in report.failure_names())
    _emit(payload, fmt, rows)
    return 0 if report.passed else 1


# -- parser -----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geodex",
        description="Exact index iteration and Morse-theory audits for closed "
                    "geodesics on spheres")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def with_config(p):
        p.add_argument("--config", required=True, help="configuration JSON file")
        p.add_argument("--format", choices=FORMATS, default=None)
        return p

    with_config(sub.add_parser("validate", help="parse and echo a configuration"))

    p = with_config(sub.add_parser("index-table",
                                   help="emit (m, index, nullity) rows"))
    p.add_argument("--label", help="restrict to one geodesic")
    p.add_argument("--m-max", type=int, default=10)

    with_config(sub.add_parser("mean-index", help="emit mean indices"))

    p = sub.add_parser("betti", help="emit the loop-space Betti ladder")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--format", choices=FORMATS, default="tsv")

    with_config(sub.add_parser("identity-check",
                               help="check the mean-index identity"))

    p = with_config(sub.add_parser("verify-morse",
                                   help="windowed Morse counts vs Betti ranks"))
    p.add_argument("--window", required=True, help="q_lo:q_hi")
    p.add_argument("--m-max", type=int, default=128)

    p = with_config(sub.add_parser("jump-search",
                                   help="scan for a common-index-jump certificate"))
    p.add_argument("--eps", default=None,
                   help="offset tolerance; default: half the admissible ceiling")
    p.add_argument("--delta", default="1/2", help="resonance tolerance")
    p.add_argument("--max-M", dest="max_m", type=int, default=64)
    p.add_argument("--max-N", dest="max_n", type=int, default=4096)
    p.add_argument("--allow-loose-eps", action="store_true",
                   help="skip the eps ceiling derived from Euler characteristics")

    p = with_config(sub.add_parser("verify-jump",
                                   help="verify a certificate's index inequalities"))
    p.add_argument("--cert", required=True)
    p.add_argument("--probe", type=int, default=None,
                   help="probe range; default twice the jump iterate")
    p.add_argument("--allow-loose-eps", action="store_true")

    p = with_config(sub.add_parser("replay-proof",
                                   help="full audit: identities, witness, steps"))
    p.add_argument("--cert", required=True)
    p.add_argument("--probe", type=int, default=None)
    p.add_argument("--allow-loose-eps", action="store_true")
    return parser


_HANDLERS = {
    "validate": _cmd_validate,
    "index-table": _cmd_index_table,
    "mean-index": _cmd_mean_index,
    "betti": _cmd_betti,
    "identity-check": _cmd_identity_check,
    "verify-morse": _cmd_verify_morse,
    "jump-search": _cmd_jump_search,
    "verify-jump": _cmd_verify_jump,
    "replay-proof": _cmd_replay_proof,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except PrecisionError as exc:
        print(f"precision error: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except SearchExhausted as exc:
        print(f"search exhausted: {exc}", file=sys.stderr)
        return 1
    except ContradictionError as exc:
        print(f"contradiction: {exc}", file=sys.stderr)
        return 1
    except GeodexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
