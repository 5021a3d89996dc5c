"""Command-line surface: CSV emitters and the verification suite.

Subcommands:
    sequence    emit the constructed sequence (index,i,j,value)
    complexity  exact/bracketed complexities of sequence prefixes
    bounds      all six lower-bound formulas over a parameter grid
    figures     the two comparison presets (q=32, k=5 and k=20)
    verify      run the self-check suite; nonzero exit on any failure

Field elements appear in CSV as prime-field coefficient vectors joined by
':' with the low-degree coefficient first ("0:1" is z in GF(4)); the same
syntax is accepted for --a and --modulus.  Exit codes: 0 success, 1
verification failure, 2 usage error.  HERMSEQ_THREADS caps the number of
worker threads the verify suite may use.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .bounds import BoundParams, all_bounds, figure_rows
from .complexity import (
    DEFAULT_MONOMIAL_BUDGET,
    Bracket,
    Exact,
    PerVariable,
    TotalDegree,
    nonlinear_complexity,
)
from .field import Element, FieldContext, element_from_str, element_to_str
from .sequence import build_sequence
from .verify import run_suite

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


@dataclass
class RunConfig:
    subcommand: str
    p: Optional[int] = None
    e: int = 1
    modulus: Optional[tuple[int, ...]] = None
    a: Optional[str] = None
    ell: Optional[int] = None
    ks: list[int] = dc_field(default_factory=list)
    ns: list[int] = dc_field(default_factory=list)
    mode: str = "per-variable"
    budget: int = DEFAULT_MONOMIAL_BUDGET
    out: Optional[str] = None
    preset: Optional[str] = None

    def field_context(self) -> FieldContext:
        if self.p is None:
            raise ValueError("--p is required for this subcommand")
        return FieldContext(self.p, self.e, self.modulus)

    def element_a(self, ctx: FieldContext) -> Optional[Element]:
        return element_from_str(self.a, ctx) if self.a is not None else None


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(":"))
    except ValueError as exc:
        raise ValueError(f"bad {what} {text!r}; expected ':'-joined integers") from exc


def _parse_range(text: str, what: str) -> list[int]:
    parts = _parse_int_list(text, what)
    if len(parts) == 1:
        return [parts[0]]
    if len(parts) == 2:
        lo, hi, step = parts[0], parts[1], 1
    elif len(parts) == 3:
        lo, hi, step = parts
    else:
        raise ValueError(f"bad {what} {text!r}; expected LO:HI[:STEP]")
    if step < 1:
        raise ValueError(f"{what} step must be >= 1")
    values = list(range(lo, hi + 1, step))
    if not values:
        raise ValueError(f"{what} range {text!r} is empty")
    return values


def _collect(single: Optional[int], rng: Optional[str], what: str) -> list[int]:
    if single is not None and rng is not None:
        raise ValueError(f"give --{what} or --{what}-range, not both")
    if single is not None:
        return [single]
    if rng is not None:
        return _parse_range(rng, f"{what}-range")
    raise ValueError(f"one of --{what} / --{what}-range is required")


def _config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(subcommand=args.command)
    for name in ("p", "e", "a", "ell", "mode", "budget", "out", "preset"):
        if hasattr(args, name) and getattr(args, name) is not None:
            setattr(cfg, name, getattr(args, name))
    if getattr(args, "modulus", None) is not None:
        cfg.modulus = _parse_int_list(args.modulus, "modulus")
    if hasattr(args, "k"):
        cfg.ks = _collect(args.k, args.k_range, "k")
    if hasattr(args, "n"):
        cfg.ns = _collect(args.n, args.n_range, "n")
    if cfg.budget < 1:
        raise ValueError("--budget must be >= 1")
    return cfg


@contextmanager
def _out_stream(path: Optional[str]):
    if path is None:
        yield sys.stdout
    else:
        handle = open(path, "w", newline="")
        try:
            yield handle
        finally:
            handle.close()


def _mode_for(cfg: RunConfig, k: int):
    return PerVariable(k) if cfg.mode == "per-variable" else TotalDegree(k)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_sequence(cfg: RunConfig) -> int:
    ctx = cfg.field_context()
    if cfg.ell is None:
        raise ValueError("--ell is required")
    seq = build_sequence(ctx, cfg.ell, cfg.element_a(ctx))
    steps = ctx.order - 2
    with _out_stream(cfg.out) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["index", "i", "j", "value"])
        for idx, term in enumerate(seq.terms, start=1):
            i = (idx - 1) // steps + 1
            j = (idx - 1) % steps + 1
            writer.writerow([idx, i, j, element_to_str(term)])
    return EXIT_OK


def parse_sequence_values(text: str, ctx: FieldContext) -> list[Element]:
    """Re-read the value column of a `sequence` CSV."""
    rows = list(csv.reader(text.splitlines()))
    if not rows or rows[0][:1] != ["index"]:
        raise ValueError("not a sequence CSV: missing header")
    return [element_from_str(row[3], ctx) for row in rows[1:] if row]


def cmd_complexity(cfg: RunConfig) -> int:
    ctx = cfg.field_context()
    if cfg.ell is None:
        raise ValueError("--ell is required")
    seq = build_sequence(ctx, cfg.ell, cfg.element_a(ctx))
    top = len(seq)
    for n in cfg.ns:
        if not 1 <= n <= top:
            raise ValueError(f"n must be in 1..{top}, got {n}")
    with _out_stream(cfg.out) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["n", "k", "mode", "result_kind", "value_or_lo", "hi"])
        for n in cfg.ns:
            prefix = seq.prefix(n)
            for k in cfg.ks:
                result = nonlinear_complexity(ctx, prefix, _mode_for(cfg, k),
                                              monomial_budget=cfg.budget)
                if isinstance(result, Exact):
                    writer.writerow([n, k, cfg.mode, "exact",
                                     result.value, result.value])
                else:
                    writer.writerow([n, k, cfg.mode, "bracket",
                                     result.lo, result.hi])
    return EXIT_OK


def cmd_bounds(cfg: RunConfig) -> int:
    if cfg.p is None:
        raise ValueError("--p is required")
    q = cfg.p ** cfg.e
    ell = cfg.ell if cfg.ell is not None else q
    with _out_stream(cfg.out) as out:
        writer = csv.writer(out, lineterminator="\n")
        header = ["n", "k", "ell", "r1", "r2",
                  "N_collinear", "L_collinear",
                  "N_twopoint", "L_twopoint",
                  "N_refined", "L_refined"]
        writer.writerow(header)
        for n in cfg.ns:
            for k in cfg.ks:
                params = BoundParams(n=n, q=q, k=k, ell=ell)
                values = all_bounds(params)
                writer.writerow(
                    [n, k, ell, params.r1, params.r2]
                    + [values[name].decimal() for name in header[5:]]
                )
    return EXIT_OK


def cmd_figures(cfg: RunConfig) -> int:
    if cfg.preset is None:
        raise ValueError("--preset is required (fig1 or fig2)")
    preset, rows = figure_rows(cfg.preset)
    label = preset.family  # N for fig1, L for fig2
    with _out_stream(cfg.out) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow([
            "n", f"{label}1", f"{label}2", f"{label}1_exact", f"{label}2_exact",
        ])
        for n, own, rival in rows:
            writer.writerow([n, own.decimal(), rival.decimal(), str(own), str(rival)])
    return EXIT_OK


def _thread_cap() -> int:
    raw = os.environ.get("HERMSEQ_THREADS")
    if raw is None:
        return 1
    cap = int(raw)
    if cap < 1:
        raise ValueError("HERMSEQ_THREADS must be >= 1")
    return cap


def cmd_verify(cfg: RunConfig) -> int:
    specs = [(cfg.p, cfg.e)] if cfg.p is not None else None
    results = run_suite(field_specs=specs, max_workers=_thread_cap())
    width = max(len(r.name) for r in results) + 2
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.name:<{width}}{status}  {r.detail}")
    passed = sum(r.passed for r in results)
    print(f"RESULT: {passed}/{len(results)} checks passed")
    return EXIT_OK if passed == len(results) else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hermseq",
        description="sequences from collinear Hermitian-curve places, their "
                    "recurrence complexity, and exact lower-bound sweeps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_field_args(sp):
        sp.add_argument("--p", type=int, help="prime characteristic")
        sp.add_argument("--e", type=int, default=1,
                        help="extension degree, q = p^e (default 1)")
        sp.add_argument("--modulus",
                        help="':'-joined coefficients (low degree first) of a "
                             "degree-2e irreducible over F_p")

    sp = sub.add_parser("sequence", help="emit the constructed sequence")
    add_field_args(sp)
    sp.add_argument("--a", help="x-coordinate of the line (default: epsilon)")
    sp.add_argument("--ell", type=int, help="number of marked places, 2..q")
    sp.add_argument("--out", help="output CSV path (default stdout)")
    sp.set_defaults(handler=cmd_sequence)

    sp = sub.add_parser("complexity", help="complexities of sequence prefixes")
    add_field_args(sp)
    sp.add_argument("--a")
    sp.add_argument("--ell", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--k-range", dest="k_range", metavar="LO:HI[:STEP]")
    sp.add_argument("--n", type=int)
    sp.add_argument("--n-range", dest="n_range", metavar="LO:HI[:STEP]")
    sp.add_argument("--mode", choices=["per-variable", "total-degree"],
                    default="per-variable")
    sp.add_argument("--budget", type=int, default=DEFAULT_MONOMIAL_BUDGET,
                    help="monomial budget before bracketing")
    sp.add_argument("--out")
    sp.set_defaults(handler=cmd_complexity)

    sp = sub.add_parser("bounds", help="all six bound formulas on a grid")
    add_field_args(sp)
    sp.add_argument("--ell", type=int, help="default: q")
    sp.add_argument("--k", type=int)
    sp.add_argument("--k-range", dest="k_range", metavar="LO:HI[:STEP]")
    sp.add_argument("--n", type=int)
    sp.add_argument("--n-range", dest="n_range", metavar="LO:HI[:STEP]")
    sp.add_argument("--out")
    sp.set_defaults(handler=cmd_bounds)

    sp = sub.add_parser("figures", help="comparison presets fig1 / fig2")
    sp.add_argument("--preset", choices=["fig1", "fig2"])
    sp.add_argument("--out")
    sp.set_defaults(handler=cmd_figures)

    sp = sub.add_parser("verify", help="run the self-check suite")
    sp.add_argument("--p", type=int,
                    help="restrict the per-field checks to this field")
    sp.add_argument("--e", type=int, default=1)
    sp.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse has already printed its message
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE
    try:
        cfg = _config(args)
        return args.handler(cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
