"""Command-line front end.

Subcommands::

    series NAME           dump a form (delta, eisenstein, theta, s, phi, phi2,
                          k3-point-hodge, abelian-point-hodge) as JSON series
    invariant point-hodge primitive <tau_0(p)^m lambda_{g-m}>
    mcf point-hodge       the same in divisibility --div via the cover formula
    mcf general           cover formula applied to user-supplied primitive values
    dr-vertex             conjectural K3 rubber evaluator (JSON query file)
    pt-transform          PT multiple cover transform (JSON input file)
    verify                built-in identity suite

Exit status: 0 success, 2 usage/input error, 3 precision error,
4 math-contract error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import checks
from .dr import DRQuery, MarkedLeg, MukaiVector, dr_rhs
from .errors import (
    InconsistentODE,
    InsufficientPrecision,
    MathContractError,
    McfError,
    NotInvertible,
)
from .forms import (
    DIVISOR_SUM,
    LOG_DERIVATIVE,
    PHI_CONVENTIONS,
    X_SMALL,
    FormRequest,
    delta,
    eisenstein,
    phi,
    phi2,
    s_series,
    theta,
)
from .gw import (
    PointHodgeQuery,
    abelian_point_hodge_series,
    general_mcf_transform,
    k3_point_hodge_series,
    mcf_point_hodge,
    primitive_point_hodge,
)
from .pt import (
    COEFFICIENT_LEVEL,
    PLaurent,
    PTContext,
    output_window,
    pt_mcf_coefficient,
    pt_mcf_series,
)
from .series import BiSeries
from .surface import CohDegree, Gram, K3Class, SurfaceKind, divisors, parse_k3_class

SCHEMA_VERSION = 1

EXIT_USAGE = 2
EXIT_PRECISION = 3
EXIT_CONTRACT = 4


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _series_rows(s):
    if isinstance(s, BiSeries):
        return [(zn, qn, str(c)) for zn, row in s.terms() for qn, c in row.terms()], ["z_exp", "q_exp", "coefficient"]
    return [(n, str(c)) for n, c in s.terms()], ["q_exp", "coefficient"]


# -- subcommands ------------------------------------------------------------------

def _cmd_series(args):
    req = FormRequest(args.q_order, args.z_order)
    name = args.name
    if name == "delta":
        s = delta(req)
    elif name == "eisenstein":
        s = eisenstein(args.weight, req)
    elif name == "theta":
        s = theta(req)
    elif name == "s":
        s = s_series(req, args.method)
    elif name == "phi":
        s = phi(args.m, req, args.convention)
    elif name == "phi2":
        s = phi2(args.m, args.n, req, args.convention)
    elif name == "k3-point-hodge":
        s = k3_point_hodge_series(args.points, req)
    elif name == "abelian-point-hodge":
        s = abelian_point_hodge_series(args.points, req)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(name)
    if args.format == "csv":
        rows, header = _series_rows(s)
        return _csv(rows, header)
    return _dump({"schema_version": SCHEMA_VERSION, "form": name, "series": s.to_json()})


def _queries(args) -> list[PointHodgeQuery]:
    if args.batch:
        with open(args.batch) as fh:
            raw = json.load(fh)
        if not isinstance(raw, list):
            raise UsageError("batch file must hold a JSON array of queries")
        out = []
        for item in raw:
            try:
                out.append(
                    PointHodgeQuery(
                        SurfaceKind.parse(item["surface"]),
                        int(item["genus"]),
                        int(item["points"]),
                        int(item["h"]),
                        int(item.get("div", 1)),
                    )
                )
            except (KeyError, TypeError) as exc:
                raise UsageError(f"bad batch entry {item!r}: {exc}") from exc
        return out
    missing = [f for f in ("surface", "genus", "points", "h") if getattr(args, f) is None]
    if missing:
        raise UsageError("missing flags: " + ", ".join("--" + f for f in missing))
    return [PointHodgeQuery(SurfaceKind.parse(args.surface), args.genus, args.points, args.h, args.div)]


def _query_json(q: PointHodgeQuery) -> dict:
    return {"surface": q.kind.value, "genus": q.g, "points": q.m_points, "h": q.h, "div": q.r}


def _table(args, command, evaluate):
    qs = _queries(args)
    rows = [(q, evaluate(q)) for q in qs]
    if args.format == "csv":
        return _csv(
            [(q.kind.value, q.g, q.m_points, q.h, q.r, str(v)) for q, v in rows],
            ["surface", "genus", "points", "h", "div", "value"],
        )
    if not args.batch:
        q, v = rows[0]
        return _dump({"schema_version": SCHEMA_VERSION, "command": command, "query": _query_json(q), "value": str(v)})
    return _dump(
        {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "results": [{"query": _query_json(q), "value": str(v)} for q, v in rows],
        }
    )


def _cmd_invariant(args):
    if args.div != 1 and not args.batch:
        raise UsageError("invariant evaluates primitive classes only (--div 1); use 'mcf'")

    def ev(q):
        if q.r != 1:
            raise UsageError("invariant evaluates primitive classes only (div 1); use 'mcf'")
        return primitive_point_hodge(q)

    return _table(args, "invariant point-hodge", ev)


def _cmd_mcf(args):
    if args.kind == "point-hodge":
        return _table(args, "mcf point-hodge", mcf_point_hodge)
    # general
    if args.genus is None or args.values is None:
        raise UsageError("mcf general needs --genus and --values")
    try:
        degrees = [CohDegree.of(d) for d in args.degrees.split(",") if d.strip()] if args.degrees else []
        values = {int(k): Fraction(v) for k, v in json.loads(args.values).items()}
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(str(exc)) from exc
    m = args.m
    kind = SurfaceKind.parse(args.surface) if args.surface else None
    value = general_mcf_transform(args.genus, degrees, args.div, values, kind=kind, m=m)
    if args.format == "csv":
        return _csv([(args.genus, args.div, str(value))], ["genus", "div", "value"])
    return _dump({"schema_version": SCHEMA_VERSION, "command": "mcf general", "value": str(value)})


def _parse_gram(obj) -> Gram:
    if not obj:
        return Gram()
    entries = {}
    for a, b, v in obj:
        entries[(a, b)] = Fraction(str(v))
    return Gram(entries)


def _parse_mukai(obj: dict, gram: Gram) -> MukaiVector:
    div = K3Class(
        Fraction(str(obj.get("s", 0))),
        Fraction(str(obj.get("f", 0))),
        {k: Fraction(str(v)) for k, v in obj.get("transcendental", {}).items()},
        gram,
    )
    return MukaiVector(Fraction(str(obj.get("rank", 0))), div, Fraction(str(obj.get("n", 0))))


def parse_dr_query(obj: dict) -> DRQuery:
    gram = _parse_gram(obj.get("gram"))
    legs = []
    for leg in obj["legs"]:
        legs.append(MarkedLeg(int(leg["a"]), _parse_mukai(leg["gamma"], gram), CohDegree.of(str(leg["degree"]))))
    beta_obj = obj["beta"]
    if "class" in beta_obj:
        beta = parse_k3_class(beta_obj["class"], gram)
    else:
        beta = K3Class(1, int(beta_obj["h"]), gram=gram)
    z_order = int(obj.get("z_order", obj.get("zOrder", 5)))
    return DRQuery(tuple(legs), beta, z_order)


def _cmd_dr(args):
    try:
        with open(args.query) as fh:
            obj = json.load(fh)
        query = parse_dr_query(obj)
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad DR query: {exc}") from exc
    if args.z_order is not None:
        query = DRQuery(query.legs, query.beta, args.z_order)
    result = dr_rhs(query, args.convention)
    if args.format == "csv":
        return _csv([(g, str(v)) for g, v in sorted(result.decode().items())], ["genus", "invariant"])
    return _dump({"schema_version": SCHEMA_VERSION, **result.to_json()})


def _cmd_pt(args):
    try:
        with open(args.input) as fh:
            obj = json.load(fh)
        r = int(obj["r"])
        convention = obj.get("convention", COEFFICIENT_LEVEL)
        nu = obj["nu"]
        nu_of = {int(k): int(v) for k, v in nu.items()} if isinstance(nu, dict) else {k: int(nu) for k in divisors(r)}
        primitive = {int(k): PLaurent.from_json(v, convention) for k, v in obj["primitive"].items()}
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad PT input: {exc}") from exc
    ctx = PTContext(r, nu_of, convention)
    lo, hi = output_window(r, primitive)
    coeffs = PLaurent(lo, tuple(pt_mcf_coefficient(c, ctx, primitive) for c in range(lo, hi)))
    coherent = None
    if len(set(nu_of.values())) == 1:
        coherent = pt_mcf_series(ctx, primitive) == coeffs
    if args.format == "csv":
        return _csv([(lo + i, str(c)) for i, c in enumerate(coeffs.coeffs)], ["ch3", "invariant"])
    return _dump(
        {
            "schema_version": SCHEMA_VERSION,
            "r": r,
            "convention": convention,
            "result": coeffs.to_json(convention),
            "series_route_agrees": coherent,
            "metadata": {"boundary_relabeling": "phi_k applied to boundary data and insertions (not numeric)"},
        }
    )


def _cmd_verify(args):
    results = checks.run_all()
    out = _dump({"schema_version": SCHEMA_VERSION, "checks": results, "passed": all(results.values())})
    return out, (0 if all(results.values()) else 1)


# -- parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mcfcalc", description="Exact K3/abelian GW and PT cover-formula calculator")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp):
        sp.add_argument("--format", choices=["json", "csv"], default=argparse.SUPPRESS)

    sp = sub.add_parser("series", help="dump a form as a JSON series")
    sp.add_argument(
        "name",
        choices=["delta", "eisenstein", "theta", "s", "phi", "phi2", "k3-point-hodge", "abelian-point-hodge"],
    )
    sp.add_argument("--q-order", type=int, required=True)
    sp.add_argument("--z-order", type=int, default=1)
    sp.add_argument("--weight", type=int, default=2)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--points", type=int, default=0)
    sp.add_argument("--method", choices=[LOG_DERIVATIVE, DIVISOR_SUM], default=LOG_DERIVATIVE)
    sp.add_argument("--convention", choices=PHI_CONVENTIONS, default=X_SMALL)
    fmt(sp)

    def query_flags(sp):
        sp.add_argument("--surface", choices=[k.value for k in SurfaceKind])
        sp.add_argument("--genus", type=int)
        sp.add_argument("--points", type=int)
        sp.add_argument("--h", type=int)
        sp.add_argument("--div", type=int, default=1)
        sp.add_argument("--batch", help="JSON array of queries")
        fmt(sp)

    sp = sub.add_parser("invariant", help="primitive point/Hodge invariant")
    sp.add_argument("kind", choices=["point-hodge"])
    query_flags(sp)

    sp = sub.add_parser("mcf", help="multiple cover formula")
    sp.add_argument("kind", choices=["point-hodge", "general"])
    query_flags(sp)
    sp.add_argument("--degrees", help="comma-separated complex degrees of insertions, e.g. 2,2 or 1/2,3/2")
    sp.add_argument("--values", help='JSON object {k: "num/den"} of primitive values')
    sp.add_argument("--m", type=int, help="beta = beta_{m,r}; enables effectiveness filtering")

    sp = sub.add_parser("dr-vertex", help="conjectural K3 DR vertex")
    sp.add_argument("--query", required=True)
    sp.add_argument("--z-order", type=int)
    sp.add_argument("--convention", choices=PHI_CONVENTIONS, default=X_SMALL)
    fmt(sp)

    sp = sub.add_parser("pt-transform", help="PT multiple cover transform")
    sp.add_argument("--input", required=True)
    fmt(sp)

    sp = sub.add_parser("verify", help="run the built-in identity suite")
    fmt(sp)
    return p


_COMMANDS = {
    "series": _cmd_series,
    "invariant": _cmd_invariant,
    "mcf": _cmd_mcf,
    "dr-vertex": _cmd_dr,
    "pt-transform": _cmd_pt,
    "verify": _cmd_verify,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = _COMMANDS[args.command](args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"mcfcalc: error: {exc}", file=stderr)
        return EXIT_USAGE
    except (InsufficientPrecision, NotInvertible) as exc:
        print(f"mcfcalc: precision error: {exc}", file=stderr)
        return EXIT_PRECISION
    except (MathContractError, InconsistentODE) as exc:
        print(f"mcfcalc: math contract violated: {exc}", file=stderr)
        return EXIT_CONTRACT
    except McfError as exc:
        print(f"mcfcalc: error: {exc}", file=stderr)
        return EXIT_USAGE
    status = 0
    if isinstance(out, tuple):
        out, status = out
    stdout.write(out if out.endswith("\n") else out + "\n")
    return status


def main() -> None:
    sys.exit(run())
