"""Command line front end (``python -m mixres`` or ``mixres``).

Exit status: 0 on success, 1 when a mathematical precondition fails (the
message names the notion), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import numeric
from .errors import InputError, MixresError, NotConvenient, PreconditionError
from .faces import classify_face_type
from .fan import canonical_subdivision, make_cone
from .lab import sweep_table
from .mixed_poly import is_convenient, parse
from .newton import WeightVector, face
from .nondeg import sample_nondegeneracy, vertex_rule
from .report import build_report, emit_report_json, report_text, subdivision_text, subdivision_json
from .svg import emit_svg
from .toric import certify, chart_map, factorize, pullback, sum_text


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise InputError(f"expected comma separated integers, got {text!r}")


def _cone_rows(text: str) -> list[list[int]]:
    rows = [_int_list(r) for r in text.split(";")]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise InputError(f"--cone must be a square matrix like '2,3;1,2', got {text!r}")
    return rows


def _seed(args) -> int:
    env = os.environ.get("MIXRES_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"MIXRES_SEED must be an integer, got {env!r}")
    return args.seed


def _poly(args, n=None):
    return parse(args.expr, n if n is not None else getattr(args, "n", None))


def _require_convenient(f):
    rep = is_convenient(f)
    if not rep:
        raise NotConvenient(f"f has no pure term on the z{rep.first_missing} axis")


def _write(data: bytes | str):
    if isinstance(data, str):
        data = (data + "\n").encode("utf-8")
    sys.stdout.buffer.write(data)
    sys.stdout.flush()


def cmd_analyze(args) -> int:
    f = _poly(args)
    _require_convenient(f)
    report = build_report(f, args.expr, {"n": args.n})
    if args.json:
        _write(emit_report_json(report))
    else:
        recs = classify_face_type(f).table if f.n == 2 else None
        _write(report_text(report, recs))
    return 0


def cmd_subdivide(args) -> int:
    f = _poly(args)
    s = canonical_subdivision(f)
    if args.json:
        _write(json.dumps(subdivision_json(s, f), indent=2))
    else:
        _write(subdivision_text(subdivision_json(s, f)))
    return 0


def cmd_pullback(args) -> int:
    rows = _cone_rows(args.cone)
    n = len(rows)
    f = _poly(args, n)
    cols = [[rows[i][j] for i in range(n)] for j in range(n)]
    sigma = make_cone(cols)
    if args.k is None:
        sigma = sigma.chart_order()
        k = sum(v.strictly_positive for v in sigma.vertices)
    else:
        k = args.k
    cm = chart_map(sigma)
    lines = [f"chart {sigma}: z = {cm.text()}",
             "pull-back: " + sum_text(pullback(f, sigma))]
    if k >= 1:
        fac = factorize(f, sigma, k)
        lines.append("factored: " + fac.render())
        lines.append("f~_Delta: " + sum_text(fac.f_tilde_delta))
        lines.append("R~: " + sum_text([r.monomial for r in fac.R_tilde]))
        for r in fac.R_tilde:
            sums = ", ".join(f"a{j}+b{j} = {a + b}" for j, (a, b) in
                             enumerate(zip(r.monomial.u_exps, r.monomial.ubar_exps), 1))
            lines.append(f"  {r.monomial.text()}: {sums}; lambda = {r.lam}")
        lines.append(f"Lambda(tau) = {fac.lambda_tau}")
    else:
        lines.append("no strictly positive vertex: nothing to factor")
    _write("\n".join(lines))
    return 0


def cmd_certify(args) -> int:
    f = _poly(args)
    _require_convenient(f)
    s = canonical_subdivision(f)
    seed = _seed(args)
    cert = certify(f, s, seed=seed, starts=args.samples)
    report = build_report(f, args.expr, {"seed": seed, "samples": args.samples},
                          certificate=cert, subdivision=s)
    if args.json:
        _write(emit_report_json(report))
    else:
        _write(report_text(report, classify_face_type(f).table))
    return 0


def cmd_nondeg(args) -> int:
    f = _poly(args)
    w = WeightVector(_int_list(args.weight))
    lines = []
    fc = face(f, w)
    if fc.compact and fc.dim == 0:
        try:
            lines.append(f"vertex rule: {vertex_rule(f, w)}")
        except PreconditionError as exc:
            lines.append(f"vertex rule not applicable: {exc}")
    rep = sample_nondegeneracy(f, w, args.samples, _seed(args))
    lines.append(f"sampling ({rep.samples} starts, seed {rep.seed}): {rep.verdict}")
    lines.append(f"minimum combined residual: {rep.min_residual:.3e}")
    if rep.point is not None:
        lines.append("point: " + ", ".join(f"{z:.12g}" for z in rep.point))
    _write("\n".join(lines))
    return 0


def cmd_lab(args) -> int:
    if args.r < 1 or args.s < 1:
        raise InputError("--r and --s must be at least 1")
    _write(sweep_table(args.r, args.s))
    return 0


def cmd_plot(args) -> int:
    f = _poly(args)
    data = emit_svg(f)
    with open(args.out, "wb") as fh:
        fh.write(data)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mixres", description="Newton polyhedra and toric charts of mixed polynomials.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="support, boundary, face table and subdivision")
    a.add_argument("expr")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("subdivide", help="canonical regular subdivision (n = 2)")
    s.add_argument("expr")
    s.add_argument("--n", type=int)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_subdivide)

    pb = sub.add_parser("pullback", help="pull-back and factorisation on one chart")
    pb.add_argument("expr")
    pb.add_argument("--cone", required=True, help="vertex matrix rows, e.g. '2,3;1,2'")
    pb.add_argument("--k", type=int)
    pb.set_defaults(func=cmd_pullback)

    c = sub.add_parser("certify", help="smoothness certificate of the strict transform")
    c.add_argument("expr")
    c.add_argument("--n", type=int)
    c.add_argument("--samples", type=int, default=numeric.STARTS)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_certify)

    nd = sub.add_parser("nondeg", help="non-degeneracy probe of one face")
    nd.add_argument("expr")
    nd.add_argument("--n", type=int)
    nd.add_argument("--weight", required=True)
    nd.add_argument("--samples", type=int, default=512)
    nd.add_argument("--seed", type=int, default=0)
    nd.set_defaults(func=cmd_nondeg)

    lab = sub.add_parser("lab", help="differentiability experiments")
    labsub = lab.add_subparsers(dest="experiment", required=True, parser_class=_Parser)
    fr = labsub.add_parser("fraction", help="probe u^(r+s)/ubar^r at the origin")
    fr.add_argument("--r", type=int, required=True)
    fr.add_argument("--s", type=int, required=True)
    fr.set_defaults(func=cmd_lab)

    pl = sub.add_parser("plot", help="SVG of the staircase and the fan")
    pl.add_argument("expr")
    pl.add_argument("--n", type=int)
    pl.add_argument("--out", required=True)
    pl.set_defaults(func=cmd_plot)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"precondition failed: {exc} [definition: {exc.definition}]", file=sys.stderr)
        return 1
    except MixresError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())

