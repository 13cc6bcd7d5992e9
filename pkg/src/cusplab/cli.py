"""``cusplab`` command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields

from . import __version__
from .cuspinv import (CuspDatum, bounding_obstruction, cusp_datum, delta, l_series_partial,
                      standard_cusp, volume)
from .dedekind import Monodromy
from .errors import CuspLabError, DomainError, PresentationError, UnsupportedError
from .exactnum import parse_quadirr
from .intmath import is_squarefree
from .quadfield import field_data
from .solbundle import (LatticeModule, arithmeticity_report, build_representation,
                        parse_presentation, verify_relators)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-m -2,-3,-1,-2" through as a value rather than an option
        self._negative_number_matcher = re.compile(r"^-\d[\d,\s-]*$")

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class CuspReport:
    d: int
    disc: int
    fundamental_unit: str
    unit_norm: int
    tp_generator: str
    class_number: int
    cusp_count: int
    delta: str
    delta_integral: bool
    obstruction_verdict: str
    cycle: list[int]
    psi: int


def cusp_report(d: int) -> CuspReport:
    fd = field_data(d)
    v = bounding_obstruction(standard_cusp(d))
    res = v.detail
    return CuspReport(
        d=d,
        disc=fd.disc,
        fundamental_unit=str(fd.eps0),
        unit_norm=fd.eps0_norm,
        tp_generator=str(fd.eps_plus),
        class_number=fd.h,
        cusp_count=fd.h,
        delta=str(res.delta),
        delta_integral=res.integral,
        obstruction_verdict=v.verdict,
        cycle=list(res.cycle),
        psi=res.psi,
    )


# -- argument helpers ----------------------------------------------------------

def _matrix(text: str) -> Monodromy:
    try:
        vals = [int(t) for t in text.replace(" ", "").split(",")]
    except ValueError:
        raise UsageError(f"matrix must be four comma-separated integers, got {text!r}") from None
    if len(vals) != 4:
        raise UsageError(f"matrix must be four comma-separated integers, got {text!r}")
    return Monodromy(*vals)


def _module(text: str, d: int) -> LatticeModule:
    parts = text.split(";")
    if len(parts) != 2:
        raise UsageError("module must be given as 'mu1;mu2'")
    try:
        basis = tuple(parse_quadirr(p, d) for p in parts)
    except DomainError as e:
        raise UsageError(str(e)) from None
    return LatticeModule(d, basis)


def _field(d: int | None) -> int:
    if d is None:
        raise UsageError("-d is required")
    if d <= 1 or not is_squarefree(d):
        raise DomainError(f"d must be a squarefree integer > 1, got {d}")
    return d


def _datum(args) -> CuspDatum:
    d = _field(args.d)
    M = _module(args.module, d) if args.module else LatticeModule.ring_of_integers(d)
    unit = parse_quadirr(args.unit, d) if args.unit else None
    return cusp_datum(M, unit)


# -- rendering -------------------------------------------------------------------

def _emit(obj, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, indent=2) + "\n")
    elif fmt == "csv":
        rows = obj if isinstance(obj, list) else [obj]
        w = csv.DictWriter(out, fieldnames=list(rows[0].keys()), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _csv_cell(v) for k, v in r.items()})
    else:
        rows = obj if isinstance(obj, list) else [obj]
        for i, r in enumerate(rows):
            if i:
                out.write("\n")
            width = max(len(k) for k in r)
            for k, v in r.items():
                out.write(f"{k:<{width}}  {_text_cell(v)}\n")


def _csv_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return " ".join(map(str, v))
    return v


def _text_cell(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return " ".join(map(str, v))
    return "-" if v is None else v


# -- subcommands ----------------------------------------------------------------

def cmd_classify(args, out):
    rep = arithmeticity_report(_matrix(args.matrix))
    _emit(rep.as_dict(), args.format, out)


def cmd_cusp(args, out):
    _emit(asdict(cusp_report(_field(args.d))), args.format, out)


def cmd_delta(args, out):
    if args.matrix:
        A = _matrix(args.matrix)
        v = bounding_obstruction(A)
        res = v.detail
        obj = {"type": v.variety_type, "d": v.d, "input": A.tolist()}
    else:
        cd = _datum(args)
        v = bounding_obstruction(cd)
        res = v.detail
        obj = {"type": "standard", "d": cd.d, "module": [str(m) for m in cd.M.basis],
               "unit": str(cd.eps_V), "m": cd.m, "volume": str(volume(cd.M))}
    obj.update(res.as_dict())
    obj["obstruction_verdict"] = v.verdict
    obj["scope"] = v.scope
    _emit(obj, args.format, out)


def cmd_lsum(args, out):
    cd = _datum(args)
    if args.bound < 0:
        raise UsageError("--bound must be non-negative")
    val = l_series_partial(cd, args.s, args.bound)
    _emit({"d": cd.d, "module": [str(m) for m in cd.M.basis], "unit": str(cd.eps_V),
           "s": args.s, "bound": args.bound, "value": str(val)}, args.format, out)


def cmd_rep(args, out):
    if args.file:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read {args.file}: {e.strerror}") from None
    elif args.text:
        text = args.text
    else:
        raise UsageError("rep needs --file or --text")
    P = parse_presentation(text)
    rep = build_representation(P)
    obj = rep.as_dict()
    obj["relators_verified"] = verify_relators(rep, P)
    _emit(obj, args.format, out)


def _row(d: int) -> dict:
    return asdict(cusp_report(d))


def cmd_table(args, out):
    if args.dmax < 2:
        raise UsageError("--dmax must be at least 2")
    ds = [d for d in range(2, args.dmax + 1) if is_squarefree(d)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_row, ds, chunksize=16))
    else:
        rows = [_row(d) for d in ds]
    if args.format == "text":
        out.write(f"# cusplab {__version__} standard cusps, d <= {args.dmax}\n")
        cols = [f.name for f in fields(CuspReport)]
        skip = {"fundamental_unit", "tp_generator", "disc"}
        cols = [c for c in cols if c not in skip]
        out.write("\t".join(cols) + "\n")
        for r in rows:
            out.write("\t".join(str(_csv_cell(r[c])) for c in cols) + "\n")
    else:
        _emit(rows, args.format, out)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cusplab", description="Exact cusp invariants of Hilbert modular surfaces "
                                            "and Sol torus bundles.")
    p.add_argument("--version", action="version", version=f"cusplab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(sp, choices=("text", "json")):
        sp.add_argument("--format", choices=choices, default="text")

    sp = sub.add_parser("classify", help="geometry and k-arithmeticity of a monodromy")
    sp.add_argument("-m", "--matrix", required=True, help='row-major "a,b,c,d"')
    fmt(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("cusp", help="standard cusp report for Q(sqrt(d))")
    sp.add_argument("-d", type=int, required=True)
    fmt(sp, ("text", "json", "csv"))
    sp.set_defaults(func=cmd_cusp)

    sp = sub.add_parser("delta", help="signature defect of a monodromy or cusp datum")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("-m", "--matrix", help='row-major "a,b,c,d"')
    g.add_argument("--module", help='"mu1;mu2" (needs -d)')
    g.add_argument("--standard", action="store_true", help="M = O_k (needs -d)")
    sp.add_argument("-d", type=int)
    sp.add_argument("--unit", help="totally positive unit stabilizing M (default: full stabilizer)")
    fmt(sp)
    sp.set_defaults(func=cmd_delta)

    sp = sub.add_parser("lsum", help="partial Shimizu L-sum")
    sp.add_argument("-d", type=int, required=True)
    sp.add_argument("--module", help='"mu1;mu2" (default O_k)')
    sp.add_argument("--unit")
    sp.add_argument("-s", type=int, default=2)
    sp.add_argument("--bound", type=int, required=True)
    fmt(sp)
    sp.set_defaults(func=cmd_lsum)

    sp = sub.add_parser("rep", help="faithful representation from a presentation")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--file")
    g.add_argument("--text")
    fmt(sp)
    sp.set_defaults(func=cmd_rep)

    sp = sub.add_parser("table", help="survey of standard cusps for squarefree d <= dmax")
    sp.add_argument("--dmax", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=1)
    fmt(sp, ("text", "json", "csv"))
    sp.set_defaults(func=cmd_table)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    old = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = stdout, stderr
    try:
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            return 0 if e.code in (0, None) else 1
        buf = io.StringIO()
        try:
            args.func(args, buf)
        except (UsageError, PresentationError) as e:
            stderr.write(f"cusplab {args.command}: error: {e}\n")
            return 1
        except (DomainError, UnsupportedError, CuspLabError) as e:
            stderr.write(f"cusplab {args.command}: {e}\n")
            return 2
        stdout.write(buf.getvalue())
        return 0
    finally:
        sys.stdout, sys.stderr = old


def main() -> None:
    sys.exit(run())
