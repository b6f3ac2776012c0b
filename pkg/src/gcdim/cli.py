"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 verification mismatch,
3 resource limit (window too large / prime basis too small).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .cache import evaluate_cached
from .complexes import build_basis, cohomology_dims, differential
from .errors import (
    DivisionByNonUnit,
    GcdimError,
    TooLarge,
    TooManyVertices,
    WindowTooSmall,
)
from .euler import DimTable, EulerTable, connected_dims, connected_euler, euler_from_dims
from .flavors import STANDARD_FLAVORS, Flavor, flavor_by_name
from .graphs import enumerate_classes, is_connected, is_zero_class
from .rings import DEFAULT_BASIS, PrimeBasis, RationalRing, ResidueRing
from .series import Truncation
from .tables import euler_column_name, reference_dims, reference_euler


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--flavor", default="all", help="even, even*, odd, odd* or all")
    p.add_argument("--backend", choices=("exact", "modular"), default="modular")
    p.add_argument("--primes", help="comma-separated primes for the modular backend")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path, help="output file (default: stdout)")
    p.add_argument("--cache-dir", type=Path, help="generating-function cache directory")
    p.add_argument("--threads", type=int, default=1)


def _ring(args):
    if args.backend == "exact":
        return RationalRing()
    if args.primes:
        basis = PrimeBasis(tuple(int(p) for p in args.primes.split(",")))
    else:
        basis = DEFAULT_BASIS
    return ResidueRing(basis)


def _flavors(args) -> list[Flavor]:
    if args.flavor == "all":
        return list(STANDARD_FLAVORS.values())
    return [flavor_by_name(args.flavor)]


def _emit(args, text: str) -> None:
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)


def _dim_table(args, flavor: Flavor, b_max: int) -> DimTable:
    trunc = Truncation(2 * b_max, 3 * b_max)
    result = evaluate_cached(flavor, trunc, _ring(args), args.cache_dir, threads=args.threads)
    return DimTable.from_genfun(result)


def cmd_dims(args) -> int:
    blocks = []
    for flavor in _flavors(args):
        table = _dim_table(args, flavor, args.max_b)
        if args.connected:
            table = connected_dims(table)
        blocks.append(table)
    if args.format == "csv":
        head, *rest = (t.to_csv() for t in blocks)
        body = head + "".join(part.split("\n", 1)[1] for part in rest)
    else:
        body = json.dumps(sum((json.loads(t.to_json()) for t in blocks), []), indent=0) + "\n"
    _emit(args, body)
    return 0


def _euler_tables(args, connected: bool) -> list[EulerTable]:
    tables = []
    for flavor in _flavors(args):
        chi = euler_from_dims(_dim_table(args, flavor, args.max_b), b_max=args.max_b)
        tables.append(connected_euler(chi) if connected else chi)
    return tables


def _emit_euler(args, tables: list[EulerTable]) -> int:
    if args.format == "csv":
        head, *rest = (t.to_csv() for t in tables)
        body = head + "".join(part.split("\n", 1)[1] for part in rest)
    else:
        body = json.dumps(sum((json.loads(t.to_json()) for t in tables), []), indent=0) + "\n"
    _emit(args, body)
    return 0


def cmd_euler(args) -> int:
    return _emit_euler(args, _euler_tables(args, connected=False))


def cmd_connected(args) -> int:
    return _emit_euler(args, _euler_tables(args, connected=True))


def cmd_enumerate(args) -> int:
    flavor = flavor_by_name(args.flavor) if args.flavor != "all" else None
    if flavor is None:
        raise SystemExit("enumerate requires a single --flavor")
    lines = []
    for g in enumerate_classes(args.vertices, args.edges, flavor):
        if args.connected_only and not is_connected(g):
            continue
        if args.nonzero_only and is_zero_class(g, flavor):
            continue
        lines.append(g.dump())
    _emit(args, "\n".join(lines) + ("\n" if lines else ""))
    return 0


def cmd_cohomology(args) -> int:
    flavor = flavor_by_name(args.flavor)
    basis = build_basis(
        flavor, args.b, connected=not args.disconnected,
        one_vertex_irreducible=args.one_vertex_irreducible,
    )
    cslice = differential(basis)
    dims = cohomology_dims(cslice)
    lines = [f"flavor {flavor.name} b {args.b}"]
    for v in basis.v_range:
        lines.append(f"v {v} dim {basis.size(v)} cohomology {dims.get(v, 0)}")
    if args.matrices_out:
        args.matrices_out.mkdir(parents=True, exist_ok=True)
        for v, m in cslice.matrices.items():
            target = args.matrices_out / f"d_{flavor.name.replace('*', 'star')}_b{args.b}_v{v}.txt"
            target.write_text(cslice.export_triplets(v))
        lines.append(f"matrices written to {args.matrices_out}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_verify(args) -> int:
    b_max = 30 if args.deep else args.max_b
    ref = reference_euler()
    failures: list[str] = []
    all_tables: dict[str, DimTable] = {}
    conn_tables: dict[str, DimTable] = {}
    for flavor in STANDARD_FLAVORS.values():
        table = _dim_table(args, flavor, b_max)
        chi = euler_from_dims(table, b_max=b_max)
        conn = connected_euler(chi)
        all_tables[flavor.name] = table
        conn_tables[flavor.name] = connected_dims(table)
        for b in range(1, b_max + 1):
            want = ref[euler_column_name(flavor, False)][b]
            if chi.chi[b] != want:
                failures.append(f"chi[{flavor.name}][b={b}] = {chi.chi[b]} != {want}")
            want = ref[euler_column_name(flavor, True)][b]
            if conn.chi[b] != want:
                failures.append(f"chi~[{flavor.name}][b={b}] = {conn.chi[b]} != {want}")
        print(f"verified Euler characteristics, flavor {flavor.name}, b <= {b_max}")
    # The published grids record the dimensions of the full spaces
    # (empty graph included); compare them against the all-graphs tables.
    diverging = 0
    for name in ("even*", "odd*"):
        flavor = flavor_by_name(name)
        grid = reference_dims(flavor)
        all_t, conn_t = all_tables[name], conn_tables[name]
        v_hi, e_hi = min(all_t.v_max, 24), min(all_t.e_max, 36)
        for v in range(v_hi + 1):
            for e in range(e_hi + 1):
                got = all_t.dims[v][e]
                if got != grid[(v, e)]:
                    failures.append(f"dims[{name}][v={v},e={e}] = {got} != {grid[(v, e)]}")
                elif conn_t.dims[v][e] != got:
                    diverging += 1
        print(f"verified dimension grid, flavor {name}, v <= {v_hi}, e <= {e_hi}")
    if diverging:
        print(
            f"note: at {diverging} cells the connected dimension is smaller than "
            "the published (full-space) value; the first is (v=8, e=12)"
        )
    if failures:
        print(f"{len(failures)} mismatches against the reference tables:")
        for f in failures[:50]:
            print(" ", f)
        return 2
    print(f"all reference values match (b <= {b_max})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gcdim", description=__doc__)
    parser.add_argument("--version", action="version", version=f"gcdim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", help="graded dimension tables")
    _add_common(p)
    p.add_argument("--max-b", type=int, default=5)
    p.add_argument("--connected", action="store_true")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("euler", help="Euler characteristics (all graphs)")
    _add_common(p)
    p.add_argument("--max-b", type=int, default=10)
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("connected", help="Euler characteristics of connected parts")
    _add_common(p)
    p.add_argument("--max-b", type=int, default=10)
    p.set_defaults(func=cmd_connected)

    p = sub.add_parser("enumerate", help="list isomorphism classes")
    _add_common(p)
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--connected-only", action="store_true")
    p.add_argument("--nonzero-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("cohomology", help="graph complex cohomology ranks")
    _add_common(p)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--disconnected", action="store_true")
    p.add_argument("--one-vertex-irreducible", action="store_true")
    p.add_argument("--matrices-out", type=Path)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("verify", help="compare against the reference tables")
    _add_common(p)
    p.add_argument("--max-b", type=int, default=10)
    p.add_argument("--deep", action="store_true", help="full range b <= 30 (hours)")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:  # validate user-provided flavor and prime basis up front
        if hasattr(args, "flavor"):
            _flavors(args)
        if hasattr(args, "backend"):
            _ring(args)
    except (ValueError, GcdimError) as exc:
        print(f"gcdim: error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except (TooLarge, TooManyVertices, WindowTooSmall, DivisionByNonUnit) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
