"""Command-line front end: per-weight homology tables and JSON.

Exit codes: 0 success, 1 invalid configuration, 2 engine disagreement in
--engine both mode, 3 computation over the word budget.  Output goes to
stdout, every diagnostic to stderr, and identical configurations produce
byte-identical output.
"""

import argparse
import json
import sys

from . import __version__
from .errors import BudgetExceeded
from .groups import CoefficientRing
from .engines import THEORIES, compute_weight
from .words import default_budget

__all__ = ["RunConfig", "run", "main", "build_payload", "render_table"]


class ConfigError(ValueError):
    """Invalid command line or RunConfig (exit code 1)."""


def _parse_span(text, name):
    """'a..b' (inclusive) or a single integer; negatives allowed."""
    text = text.strip()
    try:
        if ".." in text:
            lo_text, hi_text = text.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
        else:
            lo = hi = int(text)
    except ValueError:
        raise ConfigError(f"cannot parse {name} range {text!r}; use 'a..b'")
    if hi < lo:
        raise ConfigError(f"{name} range {text!r} is empty")
    return range(lo, hi + 1)


class RunConfig:
    """One CLI invocation's worth of work, validated."""

    __slots__ = ("theory", "ring", "d", "weights", "degrees", "engine",
                 "format", "budget")

    def __init__(self, theory, ring, d, weights, degrees, engine="direct",
                 format="table", budget=None):
        if theory not in THEORIES:
            raise ConfigError(f"unknown theory {theory!r}")
        if engine not in ("direct", "closed", "both"):
            raise ConfigError(f"unknown engine {engine!r}")
        if format not in ("table", "json"):
            raise ConfigError(f"unknown format {format!r}")
        d = int(d)
        if d < 1:
            raise ConfigError(f"d must be >= 1, got {d}")
        weights = list(weights)
        degrees = list(degrees)
        if not weights or not degrees:
            raise ConfigError("weight and degree ranges must be non-empty")
        if min(weights) < 0:
            raise ConfigError("weights must be non-negative")
        if theory in ("hh", "hc") and min(degrees) < 0:
            raise ConfigError(
                f"{theory} lives in non-negative degrees;"
                f" got degree {min(degrees)}"
            )
        budget = default_budget() if budget is None else int(budget)
        if budget < 1:
            raise ConfigError(f"budget must be >= 1, got {budget}")
        self.theory = theory
        self.ring = ring
        self.d = d
        self.weights = weights
        self.degrees = degrees
        self.engine = engine
        self.format = format
        self.budget = budget


def _compute(config, engine):
    return {
        w: compute_weight(
            config.theory, w, config.d, config.ring, config.degrees,
            engine=engine, budget=config.budget,
        )
        for w in config.weights
    }


def _report_disagreements(config, direct, closed):
    """Compare the two engines cell by cell; stderr lines per mismatch."""
    bad = 0
    for w in config.weights:
        for n in config.degrees:
            a = direct[w].group_at(n)
            b = closed[w].group_at(n)
            if a != b:
                bad += 1
                print(
                    f"engine disagreement at weight {w} degree {n}:"
                    f" direct {a.render(config.ring.free_symbol())}"
                    f" vs closed {b.render(config.ring.free_symbol())}",
                    file=sys.stderr,
                )
        da = sorted(direct[w].bands, key=lambda band: band.parity)
        cb = sorted(closed[w].bands, key=lambda band: band.parity)
        if da != cb:
            bad += 1
            print(
                f"engine disagreement in bands at weight {w}:"
                f" direct {da} vs closed {cb}",
                file=sys.stderr,
            )
    return bad


def build_payload(config, results):
    """The serialized form: theory, ring, grid entries, nonzero bands, meta."""
    entries = []
    for w in config.weights:
        for n in config.degrees:
            group = results[w].group_at(n)
            entries.append(
                {
                    "weight": w,
                    "degree": n,
                    "rank": group.free_rank,
                    "torsion": list(group.torsion),
                }
            )
    bands = []
    for w in config.weights:
        for band in sorted(results[w].bands, key=lambda b: b.parity):
            if not band.group.is_zero():
                bands.append(band.json_dict())
    return {
        "theory": config.theory,
        "ring": config.ring.json_dict(),
        "d": config.d,
        "entries": entries,
        "bands": bands,
        "meta": {"engine": config.engine, "version": __version__},
    }


def render_table(config, results):
    """Fixed-width text table; one row per (weight, degree) cell."""
    symbol = config.ring.free_symbol()
    prime = config.ring.is_prime_modulus()
    rows = []
    for w in config.weights:
        for n in config.degrees:
            group = results[w].group_at(n)
            row = [str(w), str(n), group.render(symbol)]
            if prime:
                row.append(str(group.fp_dimension(config.ring.modulus)))
            rows.append(row)
    header = ["weight", "degree", "group"]
    if prime:
        header.append(f"dim F_{config.ring.modulus}")
    widths = [
        max(len(header[i]), *(len(r[i]) for r in rows))
        for i in range(len(header))
    ]
    lines = [
        f"theory={config.theory} ring={config.ring.render()} d={config.d}"
        f" engine={config.engine}"
    ]
    lines.append("  ".join(h.ljust(widths[i]) for i, h in enumerate(header)))
    for r in rows:
        lines.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(r)))
    band_rows = []
    for w in config.weights:
        for band in sorted(results[w].bands, key=lambda b: b.parity):
            if not band.group.is_zero():
                band_rows.append(band)
    if band_rows:
        direction = {
            "hc": "upward from", "hcminus": "downward from",
            "hp": "both ways around",
        }[config.theory]
        lines.append("stable bands (2-periodic):")
        for band in band_rows:
            parity = "even" if band.parity == 0 else "odd"
            lines.append(
                f"  weight {band.weight}, {parity} degrees,"
                f" {direction} {band.from_degree}:"
                f" {band.group.render(symbol)}"
            )
    return "\n".join(lines) + "\n"


def run(config):
    """Execute one configuration; returns the process exit code."""
    try:
        if config.engine == "both":
            direct = _compute(config, "direct")
            closed = _compute(config, "closed")
            bad = _report_disagreements(config, direct, closed)
            if bad:
                print(f"{bad} disagreement(s); refusing output",
                      file=sys.stderr)
                return 2
            results = direct
        else:
            results = _compute(config, config.engine)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    if config.format == "json":
        payload = build_payload(config, results)
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(render_table(config, results))
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _build_parser():
    parser = _Parser(
        prog="cychom",
        description=(
            "Exact Hochschild, cyclic, negative cyclic, and periodic cyclic"
            " homology of the square-zero algebra k[x1..xd]/(x1..xd)^2,"
            " per weight, over Z, Q, or Z/n."
        ),
    )
    parser.add_argument("--theory", required=True, choices=THEORIES)
    parser.add_argument(
        "--ring", default="z",
        help="coefficients: z, q, or zmod:<n> (default z)",
    )
    parser.add_argument("--d", type=int, required=True,
                        help="number of variables (rank of the square-zero part)")
    parser.add_argument("--weights", required=True,
                        help="inclusive weight range 'a..b' or single weight")
    parser.add_argument("--degrees", required=True,
                        help="inclusive degree range 'a..b' or single degree")
    parser.add_argument("--engine", default="direct",
                        choices=("direct", "closed", "both"))
    parser.add_argument("--format", default="table",
                        choices=("table", "json"))
    parser.add_argument(
        "--budget", type=int, default=None,
        help="word-count cap per weight (default: CYCHOM_BUDGET env"
             " or 2000000)",
    )
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        ring = CoefficientRing.parse(args.ring)
        config = RunConfig(
            theory=args.theory,
            ring=ring,
            d=args.d,
            weights=_parse_span(args.weights, "weight"),
            degrees=_parse_span(args.degrees, "degree"),
            engine=args.engine,
            format=args.format,
            budget=args.budget,
        )
    except (ConfigError, ValueError) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return 1
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
