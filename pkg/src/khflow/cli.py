"""Command-line entry point.

Exit codes: 0 success, 1 unreadable or invalid input, 2 resource cap
exceeded, 3 failed internal consistency check.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from math import comb
from pathlib import Path
from typing import Callable, Sequence

import jsonschema

from . import corpus
from . import jsonio as ser
from .decorated import khovanov_skeleton
from .errors import AxiomViolation, ComplexError, KhflowError, ResourceError
from .flow import (
    DEFAULT_CUBE_CAP,
    cube_flow_category,
    d_squared_from_boundary,
    face_poset,
    floer_complex,
    verify_face_axioms,
)
from .homology import HomologyTable, graded_euler, homology, khovanov_homology
from .kauffman import kauffman_jones
from .khcomplex import DEFAULT_CAP, differential, generators
from .laurent import q_plus_q_inverse
from .pd import LinkDiagram, parse_pd

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_CONSISTENCY = 0, 1, 2, 3

# face axioms are checked on every pair only up to this cube dimension
FACE_CHECK_LIMIT = 6

SHAPES = {1: "single point", 2: "closed interval", 3: "closed hexagonal disk"}


@dataclass
class RunConfig:
    command: str
    source: str | None = None
    fmt: str = "table"
    cap: int | None = None
    threads: int = 1
    oracle: bool = False
    seed: int = 0
    output: str | None = None
    n: int | None = None
    skeleton: bool = False


class CliFailure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def read_source(source: str) -> str:
    """A path, ``-`` for stdin, a corpus name, or inline text."""
    if source == "-":
        return sys.stdin.read()
    path = Path(source)
    if path.is_file():
        return path.read_text()
    if source in corpus.names():
        return corpus.text(source)
    return source


def load_diagram(cfg: RunConfig) -> LinkDiagram:
    return parse_pd(read_source(cfg.source))


def _cap(cfg: RunConfig, default: int) -> int:
    return default if cfg.cap is None else cfg.cap


# -- rendering -------------------------------------------------------------

def render_table(h: HomologyTable) -> str:
    cells = h.nonzero()
    if not cells:
        return "homology vanishes\n"
    iis = range(min(i for i, _ in cells), max(i for i, _ in cells) + 1)
    js = sorted({j for _, j in cells}, reverse=True)
    rows = [[""] + [f"i={i}" for i in iis]]
    for j in js:
        rows.append([f"j={j}"] + [str(cells[(i, j)]) if (i, j) in cells else "." for i in iis])
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in rows)


# -- commands --------------------------------------------------------------

def cmd_homology(cfg: RunConfig) -> tuple[int, str]:
    d = load_diagram(cfg)
    c = differential(d, _cap(cfg, DEFAULT_CAP))
    h = homology(c, cfg.threads)
    if cfg.fmt == "json":
        return EXIT_OK, ser.dumps(ser.homology_json(d, h))
    return EXIT_OK, render_table(h)


def cmd_jones(cfg: RunConfig) -> tuple[int, str]:
    d = load_diagram(cfg)
    cap = _cap(cfg, DEFAULT_CAP)
    h = khovanov_homology(d, cap, cfg.threads)
    v = graded_euler(h).exact_div(q_plus_q_inverse())
    oracle = kauffman_jones(d, cap) if cfg.oracle else None
    code = EXIT_CONSISTENCY if oracle is not None and v != oracle else EXIT_OK
    if cfg.fmt == "json":
        return code, ser.dumps(ser.jones_json(d, v, oracle))
    if oracle is None:
        return code, f"{v}\n"
    return code, f"euler:    {v}\nkauffman: {oracle}\ndiff:     {v - oracle}\n"


def cube_report(n: int, cap: int) -> dict:
    fc = cube_flow_category(n, cap)
    top, bottom = (1,) * n, (0,) * n
    report = verify_face_axioms(face_poset(fc, top, bottom)) if n <= FACE_CHECK_LIMIT else None
    checked = 0
    if n <= FACE_CHECK_LIMIT:
        for a, b in fc.pairs():
            verify_face_axioms(face_poset(fc, a, b))
            checked += 1
        strata = report.strata_by_codim
        euler = report.euler_characteristic
    else:
        # ordered set partitions of an n-set into d + 1 blocks
        def ordered(n, m):
            return sum((-1) ** (m - t) * comb(m, t) * t ** n for t in range(m + 1))

        strata = {d: ordered(n, d + 1) for d in range(n)}
        euler = sum((-1) ** (n - 1 - d) * v for d, v in strata.items())
    acyclic = homology(floer_complex(fc)).is_zero()
    balanced = d_squared_from_boundary(fc).ok
    return {
        "schema": ser.tag("cube"),
        "n": n,
        "shape": SHAPES.get(n, f"permutohedron of dimension {n - 1}"),
        "strata_by_codim": {str(k): v for k, v in strata.items()},
        "maximal_chains": strata[n - 1],
        "euler_characteristic": euler,
        "faces_checked": checked,
        "axioms_ok": True if n <= FACE_CHECK_LIMIT else None,
        "acyclic": acyclic,
        "balanced": balanced,
    }


def cmd_cube(cfg: RunConfig) -> tuple[int, str]:
    n = cfg.n
    cap = _cap(cfg, DEFAULT_CUBE_CAP)
    if cfg.skeleton:
        return EXIT_OK, ser.dumps(ser.skeleton_json(cube_flow_category(n, cap)))
    try:
        doc = cube_report(n, cap)
    except AxiomViolation as exc:
        raise CliFailure(EXIT_CONSISTENCY, f"face axiom violated at {exc.stratum}: {exc}") from exc
    code = EXIT_OK if doc["acyclic"] and doc["balanced"] else EXIT_CONSISTENCY
    if cfg.fmt == "json":
        return code, ser.dumps(doc)
    strata = {int(k): v for k, v in doc["strata_by_codim"].items()}
    lines = [f"C({n}): M(1..1, 0..0) is a {doc['shape']}"]
    if n >= 2:
        lines.append(f"{strata[n - 1]} vertices, {strata[n - 2]} edges, euler characteristic {doc['euler_characteristic']}")
    lines.append("strata by codimension: " + ", ".join(f"{k}:{v}" for k, v in sorted(strata.items())))
    if doc["axioms_ok"]:
        lines.append(f"axioms OK on {doc['faces_checked']} moduli spaces")
    else:
        lines.append(f"face axioms not checked above n = {FACE_CHECK_LIMIT}")
    lines.append("complex acyclic" if doc["acyclic"] else "complex NOT acyclic")
    lines.append("broken flows balanced" if doc["balanced"] else "broken flows NOT balanced")
    return code, "\n".join(lines) + "\n"


def cmd_flowcheck(cfg: RunConfig) -> tuple[int, str]:
    try:
        doc = json.loads(read_source(cfg.source))
        fc = ser.skeleton_from_json(doc)
    except (json.JSONDecodeError, jsonschema.ValidationError, ValueError) as exc:
        raise CliFailure(EXIT_INPUT, f"invalid skeleton: {getattr(exc, 'message', exc)}") from exc
    report = d_squared_from_boundary(fc)
    code = EXIT_OK if report.ok else EXIT_CONSISTENCY
    if cfg.fmt == "json":
        return code, ser.dumps(ser.flowcheck_json(report, fc.name))
    lines = []
    for p in report.pairs:
        parts = " ".join(f"{ser.object_name(b.middle)}:{b.contribution:+d}" for b in p.broken)
        status = "ok" if p.balanced else "UNBALANCED"
        lines.append(f"{ser.object_name(p.source)} -> {ser.object_name(p.target)}  [{parts}]  sum {p.total}  {status}")
    bad = len(report.unbalanced)
    lines.append(f"{len(report.pairs)} index-2 pairs, {bad} unbalanced")
    return code, "\n".join(lines) + "\n"


def cmd_generators(cfg: RunConfig) -> tuple[int, str]:
    d = load_diagram(cfg)
    gens = generators(d, _cap(cfg, DEFAULT_CAP))
    if cfg.fmt == "json":
        return EXIT_OK, ser.dumps(ser.generators_json(d, gens))
    width = max((len(g.key) for g in gens), default=0)
    return EXIT_OK, "".join(f"{g.key.ljust(width)}  {g.gr_h:3d} {g.gr_q:4d}\n" for g in gens)


def cmd_export_complex(cfg: RunConfig) -> tuple[int, str]:
    d = load_diagram(cfg)
    cap = _cap(cfg, DEFAULT_CAP)
    if cfg.skeleton:
        return EXIT_OK, ser.dumps(ser.skeleton_json(khovanov_skeleton(d, cap)))
    return EXIT_OK, ser.dumps(ser.complex_json(differential(d, cap)))


COMMANDS: dict[str, Callable[[RunConfig], tuple[int, str]]] = {
    "homology": cmd_homology,
    "jones": cmd_jones,
    "cube": cmd_cube,
    "flowcheck": cmd_flowcheck,
    "generators": cmd_generators,
    "export-complex": cmd_export_complex,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="khflow", description="Khovanov homology and flow-category checks")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("table", "json"), default="table")
    common.add_argument("--cap", type=int, default=None, help="largest cube dimension to attempt")
    common.add_argument("--threads", type=int, default=1, help="worker processes for Smith normal forms")
    common.add_argument("--seed", type=int, default=0, help="recorded for reproducible randomized checks")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)
    src_help = "PD file, corpus name, inline PD code, or - for stdin"
    for name in ("homology", "jones", "generators", "export-complex"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("source", help=src_help)
        if name == "jones":
            p.add_argument("--oracle", action="store_true", help="compare with the Kauffman bracket state sum")
        if name == "export-complex":
            p.add_argument("--skeleton", action="store_true", help="export the flow-category skeleton instead")
    p = sub.add_parser("cube", parents=[common])
    p.add_argument("n", type=int)
    p.add_argument("--skeleton", action="store_true", help="print the skeleton of C(n) as JSON")
    p = sub.add_parser("flowcheck", parents=[common])
    p.add_argument("source", help="skeleton JSON file or - for stdin")
    return parser


def parse_config(argv: Sequence[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(
        command=ns.command,
        source=getattr(ns, "source", None),
        fmt=ns.fmt,
        cap=ns.cap,
        threads=max(1, ns.threads),
        oracle=getattr(ns, "oracle", False),
        seed=ns.seed,
        output=ns.output,
        n=getattr(ns, "n", None),
        skeleton=getattr(ns, "skeleton", False),
    )


def run(cfg: RunConfig) -> tuple[int, str, str]:
    """Execute a command; returns ``(exit_code, stdout_text, stderr_text)``."""
    try:
        code, out = COMMANDS[cfg.command](cfg)
        return code, out, ""
    except CliFailure as exc:
        return exc.code, "", f"error: {exc}\n"
    except ResourceError as exc:
        return EXIT_RESOURCE, "", f"error: {exc}\n"
    except ComplexError as exc:
        return EXIT_CONSISTENCY, "", f"error: {exc}\n"
    except (KhflowError, OSError) as exc:
        return EXIT_INPUT, "", f"error: {exc}\n"


def main(argv: Sequence[str] | None = None) -> int:
    cfg = parse_config(argv)
    code, out, err = run(cfg)
    if out:
        if cfg.output:
            Path(cfg.output).write_text(out)
        else:
            sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
