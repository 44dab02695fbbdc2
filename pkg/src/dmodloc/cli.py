"""Command line driver: problem files in, deterministic documents out.

Problem file format (UTF-8 text, ``#`` comments and blank lines ignored)::

    vars: x y
    f: x^2-y^3
    gens:
    (x^2-y^3)*Dx+2*x
    (x^2-y^3)*Dy-3*y^2
    tie-break: grevlex      # optional
    max-steps: 100000       # optional
    max-degree: 60          # optional

Exit codes: 0 success, 1 usage or input error, 2 expression or problem-file
parse error, 3 zero b-function, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import re
import sys
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import __version__
from .bfunction import integer_roots, largest_nonneg_integer_root
from .groebner import ResourceLimitExceeded, ResourceLimits
from .localize import (CharDiagnostics, LocalizeConfig, ZeroBFunctionError,
                       char_ideal_gens, dimension_upper_bound, localize_cyclic)
from .oracle import apply_operator, is_annihilated
from .parsing import ParseError, parse_function, parse_operator, parse_polynomial
from .weyl import WeylContext, WeylElement

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_ZERO_B = 3
EXIT_LIMIT = 4

_IDENT = re.compile(r"[A-Za-z_]\w*\Z")


@dataclass
class ProblemSpec:
    vars: tuple
    f_src: str
    gen_srcs: tuple
    options: dict = field(default_factory=dict)

    def context(self) -> WeylContext:
        return WeylContext(self.vars)


def validate_var_names(names: Sequence[str]) -> tuple:
    names = tuple(names)
    if not names:
        raise ParseError("no variables declared", 0)
    seen = set()
    for name in names:
        if not _IDENT.match(name):
            raise ParseError(f"invalid variable name {name!r}", 0)
        if name in seen:
            raise ParseError(f"duplicate variable name {name!r}", 0)
        seen.add(name)
    for name in names:
        if name.startswith("D") and name[1:] in seen:
            raise ParseError(
                f"variable name {name!r} collides with the partial of {name[1:]!r}", 0)
    return names


def load_problem(path: str) -> ProblemSpec:
    """Read a problem file; see the module docstring for the grammar."""
    with open(path, "r", encoding="utf-8") as fh:
        raw_lines = fh.read().splitlines()
    vars_decl: Optional[tuple] = None
    f_src: Optional[str] = None
    gens: list = []
    options: dict = {}
    in_gens = False
    for lineno, raw in enumerate(raw_lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lowered = line.lower()
        if lowered.startswith("vars:"):
            names = line[5:].replace(",", " ").split()
            vars_decl = validate_var_names(names)
            in_gens = False
        elif lowered.startswith("f:"):
            f_src = line[2:].strip()
            in_gens = False
        elif lowered.startswith("gens:"):
            rest = line[5:].strip()
            in_gens = True
            if rest:
                gens.append(rest)
        elif lowered.startswith(("tie-break:", "max-steps:", "max-degree:")):
            key, value = line.split(":", 1)
            options[key.strip().lower()] = value.strip()
            in_gens = False
        elif in_gens:
            gens.append(line)
        else:
            raise ParseError(f"line {lineno}: unrecognized directive {line!r}", 0)
    if vars_decl is None:
        raise ParseError("missing 'vars:' line", 0)
    if not gens:
        raise ParseError("missing 'gens:' section", 0)
    return ProblemSpec(vars_decl, f_src or "1", tuple(gens), options)


def _config_from(spec: ProblemSpec, args) -> LocalizeConfig:
    tie = getattr(args, "tie_break", None) or spec.options.get("tie-break", "grevlex")
    max_steps = getattr(args, "max_steps", None)
    if max_steps is None and "max-steps" in spec.options:
        max_steps = int(spec.options["max-steps"])
    max_degree = getattr(args, "max_degree", None)
    if max_degree is None and "max-degree" in spec.options:
        max_degree = int(spec.options["max-degree"])
    return LocalizeConfig(tie_break=tie,
                          limits=ResourceLimits(max_pairs=max_steps,
                                                max_degree=max_degree))


@dataclass
class ResultDocument:
    """Flat key/value output; byte-deterministic apart from timing_ms."""
    fields: list
    timing_ms: Optional[int] = None

    def to_structured(self) -> str:
        lines = [f"{k}: {v}" for k, v in self.fields]
        if self.timing_ms is not None:
            lines.append(f"timing_ms: {self.timing_ms}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        width = max((len(k) for k, _ in self.fields), default=0)
        lines = [f"{k.ljust(width)}  {v}" for k, v in self.fields]
        if self.timing_ms is not None:
            lines.append(f"{'timing_ms'.ljust(width)}  {self.timing_ms}")
        return "\n".join(lines) + "\n"

    def render(self, emit: str) -> str:
        return self.to_structured() if emit == "structured" else self.to_text()


def _parse_gens(spec: ProblemSpec, ctx: WeylContext):
    return [parse_operator(src, ctx) for src in spec.gen_srcs]


def run_localize(spec: ProblemSpec, args) -> ResultDocument:
    ctx = spec.context()
    f = parse_polynomial(spec.f_src, ctx)
    gens = _parse_gens(spec, ctx)
    config = _config_from(spec, args)
    t0 = time.perf_counter()
    result = localize_cyclic(f, gens, config)
    elapsed = int(1000 * (time.perf_counter() - t0))
    fields = [
        ("status", "ok"),
        ("vars", " ".join(spec.vars)),
        ("f", str(f)),
        ("b_coeffs", " ".join(str(c) for c in result.bpoly.coeffs)),
        ("b", str(result.bpoly)),
        ("integer_roots", " ".join(str(r) for r in result.roots)),
        ("k", "none" if result.k is None else str(result.k)),
        ("generator", result.generator_descriptor),
        ("natural_map_factor",
         "0" if result.natural_map_factor is None else str(result.natural_map_factor)),
        ("annihilator_count", str(len(result.annihilator))),
    ]
    for i, g in enumerate(result.annihilator, 1):
        fields.append((f"annihilator_{i}", str(g)))
    if result.diagnostics is not None:
        fields.append(("input_char_dimension", str(result.diagnostics.input_dimension)))
        fields.append(("output_char_dimension", str(result.diagnostics.output_dimension)))
    if getattr(args, "verbose", False):
        for name, summary in result.stages:
            fields.append((f"stage_{name}", summary))
    return ResultDocument(fields, elapsed)


def run_bfunction(spec: ProblemSpec, args) -> ResultDocument:
    from .bfunction import integration_b_function
    ctx = spec.context()
    f = parse_polynomial(spec.f_src, ctx)
    gens = _parse_gens(spec, ctx)
    config = _config_from(spec, args)
    t0 = time.perf_counter()
    b = integration_b_function(f, gens, tie=config.tie_break, limits=config.limits)
    elapsed = int(1000 * (time.perf_counter() - t0))
    fields = [("status", "ok"), ("vars", " ".join(spec.vars)), ("f", str(f))]
    if b.is_zero:
        fields.append(("b", "0"))
        fields.append(("note", "zero b-function: holonomicity off V(f) not certified"))
    else:
        k = largest_nonneg_integer_root(b)
        fields += [
            ("b_coeffs", " ".join(str(c) for c in b.coeffs)),
            ("b", str(b)),
            ("integer_roots", " ".join(str(r) for r in integer_roots(b))),
            ("k", "none" if k is None else str(k)),
        ]
    return ResultDocument(fields, elapsed)


def run_char(spec: ProblemSpec, args) -> ResultDocument:
    ctx = spec.context()
    gens = _parse_gens(spec, ctx)
    config = _config_from(spec, args)
    t0 = time.perf_counter()
    symbols = char_ideal_gens(gens, limits=config.limits)
    dim = dimension_upper_bound(symbols, nvars=2 * ctx.n)
    elapsed = int(1000 * (time.perf_counter() - t0))
    fields = [
        ("status", "ok"),
        ("vars", " ".join(spec.vars)),
        ("symbol_count", str(len(symbols))),
    ]
    for i, s in enumerate(symbols, 1):
        fields.append((f"symbol_{i}", str(s)))
    fields.append(("dimension", str(dim)))
    fields.append(("holonomic", "yes" if dim == ctx.n else "no"))
    return ResultDocument(fields, elapsed)


def run_apply(spec: ProblemSpec, args) -> ResultDocument:
    ctx = spec.context()
    func = parse_function(args.function, ctx)
    if args.operator is not None:
        ops = [parse_operator(args.operator, ctx)]
    else:
        ops = _parse_gens(spec, ctx)
    t0 = time.perf_counter()
    fields = [("status", "ok"), ("vars", " ".join(spec.vars)),
              ("function", str(func))]
    for i, p in enumerate(ops, 1):
        image = apply_operator(p, func)
        fields.append((f"result_{i}", "0" if image.is_zero else str(image)))
    elapsed = int(1000 * (time.perf_counter() - t0))
    return ResultDocument(fields, elapsed)


def run_verify(spec: ProblemSpec, args) -> ResultDocument:
    ctx = spec.context()
    func = parse_function(args.function, ctx)
    gens = _parse_gens(spec, ctx)
    t0 = time.perf_counter()
    ok = is_annihilated(gens, func)
    elapsed = int(1000 * (time.perf_counter() - t0))
    return ResultDocument([("status", "ok"),
                           ("function", str(func)),
                           ("annihilated", "yes" if ok else "no")], elapsed)


def _build_argparser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dmodloc",
        description="Localize a D-module presentation across a hypersurface.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("problem", help="problem file path")
        p.add_argument("--tie-break", choices=("grevlex", "lex"), default=None)
        p.add_argument("--max-steps", type=int, default=None,
                       help="cap on processed S-pairs")
        p.add_argument("--max-degree", type=int, default=None,
                       help="cap on S-pair lcm degree")
        p.add_argument("--emit", choices=("text", "structured"), default="text")
        p.add_argument("--verbose", action="store_true",
                       help="include per-stage summaries")

    p = sub.add_parser("localize", help="run the full localization pipeline")
    common(p)
    p = sub.add_parser("bfunction", help="integration b-function only")
    common(p)
    p = sub.add_parser("char", help="characteristic ideal diagnostic of the input")
    common(p)
    p = sub.add_parser("apply", help="act with operators on a function")
    common(p)
    p.add_argument("--function", required=True, help="e.g. '1/x' or 'exp(1/(x^3-y^2*z^2))'")
    p.add_argument("--operator", default=None,
                   help="single operator expression (defaults to the file's gens)")
    p = sub.add_parser("verify", help="check that the file's gens annihilate a function")
    common(p)
    p.add_argument("--function", required=True)
    return parser


_RUNNERS = {
    "localize": run_localize,
    "bfunction": run_bfunction,
    "char": run_char,
    "apply": run_apply,
    "verify": run_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_argparser()
    args = parser.parse_args(argv)
    try:
        spec = load_problem(args.problem)
        doc = _RUNNERS[args.command](spec, args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ZeroBFunctionError as exc:
        print(f"zero b-function: {exc}", file=sys.stderr)
        return EXIT_ZERO_B
    except ResourceLimitExceeded as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(doc.render(args.emit))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
