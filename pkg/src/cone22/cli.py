"""Batch front end: ``cone22 analyze FILE`` and ``cone22 validate FILE``.

Exit codes: 0 success, 2 the file is not a valid scenario, 3 a task's
precondition failed (or, for ``validate``, the inputs violate an invariant).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

import numpy as np

from . import canonical, hypersurface as hs, principal, weyl
from .core import DEFAULT_TOL, INF
from .scenario import Scenario, ScenarioError, _Num, load, schema_diagnostics, to_number

log = logging.getLogger("cone22")

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3

REPORT_SCHEMA = "cone22/report/1"


class TaskFailure(Exception):
    pass


def _num(x, exact):
    """JSON-ready scalar: shortest round-trip float, or ``"p/q"`` when exact."""
    if x is INF:
        return "inf"
    if isinstance(x, complex):
        return {"re": _num(x.real, exact), "im": _num(x.imag, exact)}
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return str(Fraction(x)) if exact else float(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x + 0.0  # folds -0.0 into 0.0
    raise TypeError(f"cannot serialize {x!r}")


def _nums(xs, exact):
    return [_num(x, exact) for x in xs]


class Context:
    def __init__(self, scenario: Scenario, exact: bool, tol=None):
        self.scenario = scenario
        self.exact = exact
        tols = scenario.tolerances
        if tol is not None:
            self.tol = tol
        elif "tol" in tols:
            self.tol = float(to_number(tols["tol"], exact=False))
        else:
            self.tol = 0.0 if exact else DEFAULT_TOL
        self.tol_mult = float(to_number(tols.get("tol_mult", principal.DEFAULT_TOL_MULT), exact=False))
        self._W = None

    def n(self, x):
        return to_number(x, self.exact)

    def weyl(self) -> weyl.WeylTensor:
        if self._W is None:
            s = self.scenario
            if s.weyl_ab is not None:
                a, b = s.weyl_ab
                self._W = weyl.WeylTensor(tuple(map(self.n, a)), tuple(map(self.n, b)))
            else:
                F = self.full()
                try:
                    self._W = weyl.extract(F, self.tol)
                except weyl.InvalidWeylError as exc:
                    raise TaskFailure(str(exc)) from exc
        return self._W

    def full(self) -> weyl.FullWeyl:
        arr = np.array(self.scenario.weyl_full, dtype=object).reshape(4, 4, 4, 4)
        vals = np.vectorize(self.n, otypes=[object])(arr)
        return weyl.FullWeyl(vals if self.exact else vals.astype(float))

    def jet(self) -> hs.HypersurfaceJet:
        h = self.scenario.hypersurface
        h3 = tuple(map(self.n, h["h3"])) if "h3" in h else None
        return hs.HypersurfaceJet(self.n(h["l22"]), self.n(h["l23"]), self.n(h["l33"]), h3)


def task_validate_weyl(ctx: Context) -> dict:
    s = ctx.scenario
    if s.weyl_full is not None:
        F = ctx.full()
        source = "full"
    else:
        F = weyl.reconstruct_full(ctx.weyl())
        source = "components"
    violations = weyl.validate_full(F, ctx.tol)
    return {"source": source, "valid": not violations, "violations": violations}


def task_classify_structure(ctx: Context) -> dict:
    W = ctx.weyl()
    return {
        "class": weyl.classify_structure(W, ctx.tol),
        "a": _nums(W.a, ctx.exact),
        "b": _nums(W.b, ctx.exact),
    }


def _rootset(q: principal.BinaryQuartic, ctx: Context) -> dict:
    r = principal.projective_roots(q, ctx.tol_mult, exact=ctx.exact)
    out = {
        "coefficients": _nums(q.c, ctx.exact),
        "all_principal": r.all_principal,
        "roots": [
            {"value": _num(v, ctx.exact and not isinstance(v, float)),
             "multiplicity": m, "integrable": m >= 2}
            for v, m in r.roots
        ],
        "complex_pairs": [
            {"re": _num(z.real, False), "im": _num(z.imag, False), "multiplicity": m}
            for z, m in r.complex_pairs
        ],
    }
    if not r.all_principal:
        out["discriminant"] = _num(principal.discriminant(q), ctx.exact)
        out["total_multiplicity"] = r.total_multiplicity()
    return out


def task_principal_roots(ctx: Context) -> dict:
    W = ctx.weyl()
    return {
        "alpha": _rootset(weyl.alpha_quartic(W), ctx),
        "beta": _rootset(weyl.beta_quartic(W), ctx),
    }


def _singular(sp: hs.SingularPair, exact) -> dict:
    out = {"kind": sp.kind, "center": _num(sp.center, exact), "radicand": _num(sp.radicand, exact)}
    if sp.kind == hs.COMPLEX_CONJUGATE:
        re, im = sp.s1
        out["s1"] = {"re": _num(re, exact), "im": _num(im, exact and sp.root_radicand is not None)}
        out["s2"] = {"re": _num(re, exact), "im": _num(-im, exact and sp.root_radicand is not None)}
    else:
        ex = exact and (sp.root_radicand is not None or sp.kind == hs.COINCIDENT)
        out["s1"] = _num(sp.s1 if ex else float(sp.s1), ex)
        out["s2"] = _num(sp.s2 if ex else float(sp.s2), ex)
    return out


def task_hypersurface_classify(ctx: Context) -> dict:
    j = ctx.jet()
    ii = hs.invariant_second_form(j)
    sp = hs.singular_points(j, ctx.tol)
    alpha, beta = hs.integrability(j.reduced(), ctx.tol)
    out = {
        "classification": hs.classify_second_form(j, ctx.tol),
        "degeneracy": hs.degeneracy(j, ctx.tol),
        "invariant_form": _nums((ii.q22, ii.q23, ii.q33), ctx.exact),
        "singular_points": _singular(sp, ctx.exact),
        "harmonic_pole": _num(hs.harmonic_pole(j), ctx.exact),
        "integrable": {"alpha": alpha, "beta": beta},
    }
    if sp.kind != hs.COINCIDENT:
        out["cross_ratio"] = _num(complex(hs.harmonic_cross_ratio(j)), False)
    return out


def _require_umbilical(ctx, j):
    if not hs.is_totally_umbilical(j, ctx.tol):
        raise TaskFailure("hypersurface point is not totally umbilical (l22, l33 must vanish)")


def task_umbilical_check(ctx: Context) -> dict:
    j = ctx.jet()
    _require_umbilical(ctx, j)
    rep = hs.umbilical_consequences(j.reduced(), ctx.weyl(), ctx.tol)
    return {
        "clean": rep.clean,
        "violations": rep.violations,
        "omega_1_0": _nums(rep.omega_1_0, ctx.exact),
        "dH_along_A0": _nums(rep.dH_along_A0, ctx.exact),
    }


def task_cone_check(ctx: Context) -> dict:
    j = ctx.jet()
    _require_umbilical(ctx, j)
    W = ctx.weyl()
    try:
        cone = hs.cone_detection(j.reduced(), W, ctx.tol, ctx.tol_mult)
    except hs.PreconditionError as exc:
        raise TaskFailure(str(exc)) from exc
    out = {"cone": cone}
    if cone:
        out["infinity_multiplicity"] = {
            "alpha": _inf_mult(weyl.alpha_quartic(W), ctx),
            "beta": _inf_mult(weyl.beta_quartic(W), ctx),
        }
    return out


def _inf_mult(q, ctx):
    if q.is_zero(ctx.tol):
        return 4
    return principal.projective_roots(q, ctx.tol_mult, exact=ctx.exact).infinity_multiplicity


def task_canonical_reduction(ctx: Context) -> dict:
    j = ctx.jet()
    W = ctx.weyl()
    h22, h33 = j.l22, j.l33
    a0, b0 = W.a[0], W.b[0]
    h3 = j.third_order()
    if ctx.exact:
        h3 = tuple(Fraction(x) for x in h3)
    red = canonical.reduce_to_canonical(h22, h33, a0, b0, h3, ctx.tol)
    out = {
        "D": _num(red.D, ctx.exact),
        "factors": _nums(red.factors, ctx.exact),
        "feasible": red.feasible,
    }
    if red.feasible:
        out["params"] = dict(zip(canonical.FIBER_PARAMS, _nums(red.params, ctx.exact)))
        out["residual"] = _num(red.residual, False)
        out["relations"] = {
            k: _nums(v, ctx.exact)
            for k, v in canonical.reduced_relations(h22, h33, a0, b0, W.a[1], W.b[1]).items()
        }
        if red.notes:
            out["notes"] = red.notes
    else:
        out["reason"] = red.reason
    return out


TASK_FUNCS = {
    "validate_weyl": task_validate_weyl,
    "classify_structure": task_classify_structure,
    "principal_roots": task_principal_roots,
    "hypersurface_classify": task_hypersurface_classify,
    "umbilical_check": task_umbilical_check,
    "cone_check": task_cone_check,
    "canonical_reduction": task_canonical_reduction,
}


def _echo(x, exact):
    if isinstance(x, dict):
        return {k: _echo(v, exact) for k, v in x.items()}
    if isinstance(x, list):
        return [_echo(v, exact) for v in x]
    if isinstance(x, _Num):
        return _num(to_number(x, exact), exact)
    return x


def run(scenario: Scenario, exact=False, tol=None) -> tuple[dict, int]:
    """Execute the scenario's tasks in order.  Returns ``(report, exit code)``."""
    ctx = Context(scenario, exact, tol)
    results = []
    code = EXIT_OK
    for name in scenario.tasks:
        try:
            res = TASK_FUNCS[name](ctx)
        except (TaskFailure, hs.PreconditionError, hs.FrameError) as exc:
            results.append({"task": name, "status": "precondition_failed", "error": str(exc)})
            code = EXIT_PRECONDITION
            break
        results.append({"task": name, "status": "ok", **res})
    report = {
        "schema": REPORT_SCHEMA,
        "scenario": scenario.name,
        "arithmetic": "exact" if exact else "float",
        "tolerances": {"tol": ctx.tol, "tol_mult": ctx.tol_mult},
        "input": _echo(scenario.raw, exact),
        "results": results,
    }
    return report, code


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def _flatten(prefix, x, out):
    if isinstance(x, dict):
        for k in sorted(x):
            _flatten(f"{prefix}.{k}" if prefix else k, x[k], out)
    elif isinstance(x, list) and x and all(isinstance(v, (dict, list)) for v in x):
        for i, v in enumerate(x):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, json.dumps(x, ensure_ascii=False)))


def to_text(report: dict) -> str:
    """Line-per-value rendering; every number is formatted exactly as in JSON."""
    lines = [f"scenario: {report['scenario'] or '(unnamed)'}",
             f"arithmetic: {report['arithmetic']}",
             f"tolerances: tol={json.dumps(report['tolerances']['tol'])} "
             f"tol_mult={json.dumps(report['tolerances']['tol_mult'])}"]
    for res in report["results"]:
        lines.append("")
        lines.append(f"[{res['task']}] {res['status']}")
        flat = []
        _flatten("", {k: v for k, v in res.items() if k not in ("task", "status")}, flat)
        lines += [f"  {k} = {v}" for k, v in flat]
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    try:
        scenario = load(args.file)
    except ScenarioError as exc:
        for d in exc.diagnostics:
            print(f"error: {d}", file=sys.stderr)
        return EXIT_PARSE
    report, code = run(scenario, exact=args.exact, tol=args.tol)
    text = to_json(report) if args.format == "json" else to_text(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_PRECONDITION:
        print(f"error: {report['results'][-1]['error']}", file=sys.stderr)
    return code


def validate_file(path) -> tuple[list[str], int]:
    """Schema and invariant diagnostics for a scenario file, without running tasks."""
    try:
        scenario = load(path)
    except ScenarioError as exc:
        return exc.diagnostics, EXIT_PARSE
    diags = []
    if scenario.weyl_full is not None:
        ctx = Context(scenario, exact=False)
        diags += [f"weyl.full violates {v}" for v in weyl.validate_full(ctx.full(), ctx.tol)]
    return diags, (EXIT_PRECONDITION if diags else EXIT_OK)


def cmd_validate(args) -> int:
    diags, code = validate_file(args.file)
    for d in diags:
        print(d)
    if not diags:
        print("ok")
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cone22", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run a scenario's tasks and print a report")
    a.add_argument("file")
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.add_argument("--tol", type=float, default=None, help="override the zero tolerance")
    a.add_argument("--exact", action="store_true", help="rational arithmetic throughout")
    a.add_argument("-o", "--output", help="write the report here instead of stdout")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("validate", help="check a scenario file without running it")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())


__all__ = ["main", "run", "to_json", "to_text", "validate_file", "schema_diagnostics"]
