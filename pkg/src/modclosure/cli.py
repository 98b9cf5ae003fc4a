"""Command-line front end with JSON input and output.

Problem files are JSON objects with the fields

    vars    : ordered variable names
    matrix  : 2-D array of polynomial strings (rows = ambient components)
    ideals  : optional map name -> list of generator strings
    h       : optional vector of polynomial strings
    phi     : optional arc, one univariate polynomial string per variable
    random  : optional {"seed": .., "bound": .., "trials": ..}

Reports are printed as JSON on stdout with keys in a fixed order; a short
human summary goes to stderr.  Exit codes: 0 success, 1 negative verdict,
2 input error, 3 not certified / not applicable.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import cases, closure, grobner, modtools, multiplicity, polyhedra
from .grobner import TruncationCapError
from .modtools import Submodule
from .multiplicity import RandomSpec
from .poly import PolyParseError, RingMismatchError, parse_poly

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_NOT_CERTIFIED = 3


class InputError(ValueError):
    pass


class Problem:
    def __init__(self, data: dict):
        if "vars" not in data:
            raise InputError("problem file needs a 'vars' field")
        self.vars = tuple(data["vars"])
        self.data = data

    def module(self) -> Submodule:
        if "matrix" not in self.data:
            raise InputError("problem file needs a 'matrix' field")
        try:
            return Submodule.from_strings(self.vars, self.data["matrix"])
        except (PolyParseError, RingMismatchError, ValueError) as exc:
            raise InputError(f"bad matrix: {exc}") from exc

    def ideal_from_matrix(self) -> Submodule:
        M = self.module()
        if M.rank != 1:
            raise InputError("this command expects a one-row matrix (an ideal)")
        return M

    def named_ideal(self, name: str) -> Submodule:
        table = self.data.get("ideals", {})
        if name not in table:
            raise InputError(f"no ideal named {name!r} in the problem file")
        return modtools.ideal(self.vars, table[name])

    def vector(self):
        if "h" not in self.data:
            raise InputError("problem file needs an 'h' field")
        return tuple(parse_poly(s, self.vars) for s in self.data["h"])

    def arc(self):
        if "phi" not in self.data:
            raise InputError("problem file needs a 'phi' field")
        return [parse_poly(s, ("t",)) for s in self.data["phi"]]

    def random_spec(self, args) -> RandomSpec:
        base = self.data.get("random", {})
        seed = args.seed if args.seed is not None else base.get("seed", 42)
        bound = args.bound if args.bound is not None else base.get("bound", 100)
        trials = args.trials if args.trials is not None else base.get("trials", 5)
        return RandomSpec(seed=seed, bound=bound, trials=trials)


def _load(path: str) -> Problem:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return Problem(json.load(fh))
    except FileNotFoundError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc


def _emit(report: dict, summary: str) -> None:
    print(json.dumps(report, indent=2, default=_jsonable))
    print(summary, file=sys.stderr)


def _jsonable(value):
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    if isinstance(value, tuple):
        return list(value)
    if value == grobner.INFINITE:
        return "infinite"
    return str(value)


def _matrix_json(M: Submodule) -> list[list[str]]:
    return M.to_strings()


def _nnd_json(report: closure.NNDReport) -> dict:
    out = {"verdict": report.verdict}
    out["faces"] = [
        {
            "weight": list(f.weight),
            "levels": list(f.levels),
            "face_system": list(f.face_system),
            "saturation_unit": f.saturation_unit,
        }
        for f in report.faces
    ]
    if report.sub_reports:
        out["rows"] = [
            {"selection": [i + 1 for i in rows], "report": _nnd_json(rep)}
            for rows, rep in report.sub_reports
        ]
    return out


def _mult_json(value: multiplicity.MultiplicityValue) -> dict:
    out = {"value": value.value, "method": value.method}
    if value.seed is not None:
        out["seed"] = value.seed
        out["trials"] = value.trials
        out["samples"] = list(value.samples)
    return out


# -- subcommand implementations ------------------------------------------------


def cmd_rank(problem: Problem, args) -> tuple[dict, str, int]:
    r = modtools.rank(problem.module())
    return {"rank": r}, f"rank {r}", EXIT_OK


def cmd_fitting(problem: Problem, args) -> tuple[dict, str, int]:
    I = modtools.fitting_ideal(problem.module(), args.size)
    gens = [str(g) for g in modtools.reduced(I).gens()] if I.ngens else []
    return ({"size": args.size, "generators": gens},
            f"{len(gens)} generators", EXIT_OK)


def _input_polyhedron(problem: Problem, args) -> polyhedra.NewtonPolyhedron:
    M = problem.module()
    if args.row is not None:
        gens = M.row_ideal(args.row - 1).nonzero_columns().gens()
        return polyhedra.newton_polyhedron_of(gens)
    if M.rank == 1:
        return polyhedra.newton_polyhedron_of(M.nonzero_columns().gens())
    rows = [polyhedra.newton_polyhedron_of(M.row_ideal(i).nonzero_columns().gens())
            for i in range(M.rank)]
    return polyhedra.minkowski_sum_all(rows)


def cmd_newton(problem: Problem, args) -> tuple[dict, str, int]:
    P = _input_polyhedron(problem, args)
    report = {
        "vertices": [list(v) for v in sorted(P.vertices)],
        "max_compact_face_dim": P.max_face_dim(),
        "faces": [
            {"vertices": [list(v) for v in f.vertices], "dim": f.dim,
             "weight": list(f.weight)}
            for f in P.faces
        ],
    }
    return report, f"{len(P.vertices)} vertices", EXIT_OK


def cmd_term_ideal(problem: Problem, args) -> tuple[dict, str, int]:
    P = _input_polyhedron(problem, args)
    I = polyhedra.term_ideal(P)
    gens = [str(g) for g in I.to_polynomials(problem.vars)]
    return {"generators": gens}, f"{len(gens)} generators", EXIT_OK


def cmd_zmod(problem: Problem, args) -> tuple[dict, str, int]:
    Z = modtools.rank_preserving_module(problem.module())
    return {"matrix": _matrix_json(Z)}, f"{Z.ngens} generators", EXIT_OK


def cmd_nnd(problem: Problem, args) -> tuple[dict, str, int]:
    M = problem.module()
    report = (closure.newton_nondegenerate_ideal(M) if M.rank == 1
              else closure.newton_nondegenerate_module(M))
    code = EXIT_OK if report.nondegenerate else EXIT_NEGATIVE
    return _nnd_json(report), report.verdict, code


def cmd_jm(problem: Problem, args) -> tuple[dict, str, int]:
    J, J0 = closure.row_products_ideal(problem.module())
    report = {
        "ideal": [str(g) for g in J.gens()],
        "term_ideal": [str(g) for g in J0.to_polynomials(problem.vars)],
    }
    return report, f"{J.ngens} generators", EXIT_OK


def cmd_closure(problem: Problem, args) -> tuple[dict, str, int]:
    M = problem.module()
    if args.closed_ideal:
        K = problem.named_ideal(args.closed_ideal)
        result = closure.closure_via_minors(M, K)
    else:
        result = closure.closure_by_polyhedra(M)
    report = {
        "matrix": _matrix_json(result.module),
        "closed_ideal": [str(g) for g in result.closed_ideal.gens()],
        "provenance": result.provenance,
    }
    return report, f"closure with {result.module.ngens} generators", EXIT_OK


def cmd_membership(problem: Problem, args) -> tuple[dict, str, int]:
    M = problem.module()
    h = problem.vector()
    if args.closed_ideal:
        K = problem.named_ideal(args.closed_ideal)
        verdict = closure.integral_membership(h, M, K)
        kind = "integral"
    else:
        verdict = modtools.member(h, M)
        kind = "exact"
    report = {"member": verdict, "kind": kind}
    return report, f"{kind} membership: {verdict}", EXIT_OK if verdict else EXIT_NEGATIVE


def cmd_decomposable(problem: Problem, args) -> tuple[dict, str, int]:
    rs = problem.random_spec(args)
    rep = closure.integrally_decomposable(problem.module(), rs)
    report = {
        "verdict": rep.verdict,
        "method": rep.method,
        "rows": [
            {"selection": [i + 1 for i in rows], "e": e, "delta": d}
            for rows, e, d in rep.entries
        ],
        "seed": rs.seed,
    }
    code = {"yes": EXIT_OK, "no": EXIT_NEGATIVE}.get(rep.verdict, EXIT_NOT_CERTIFIED)
    return report, rep.verdict, code


def cmd_spread(problem: Problem, args) -> tuple[dict, str, int]:
    if args.direct_sum:
        names = args.direct_sum.split(",")
        monos = [modtools.to_monomial_ideal(problem.named_ideal(n)) for n in names]
        value = closure.spread_of_direct_sum(monos)
    else:
        M = problem.module()
        if M.rank == 1:
            value = closure.analytic_spread_monomial(modtools.to_monomial_ideal(M))
        else:
            value = closure.analytic_spread_module(M)
    return {"analytic_spread": value}, f"analytic spread {value}", EXIT_OK


def cmd_mult(problem: Problem, args) -> tuple[dict, str, int]:
    rs = problem.random_spec(args)
    if args.ideal:
        I = problem.named_ideal(args.ideal)
    else:
        I = problem.ideal_from_matrix()
    if args.volume:
        value = multiplicity.monomial_multiplicity(modtools.to_monomial_ideal(I))
    else:
        value = multiplicity.hilbert_samuel(I, rs)
    return _mult_json(value), f"multiplicity {value.value}", EXIT_OK


def cmd_mixed(problem: Problem, args) -> tuple[dict, str, int]:
    rs = problem.random_spec(args)
    names = args.ideals.split(",")
    ideals = [problem.named_ideal(n) for n in names]
    value = multiplicity.mixed_multiplicity(ideals, rs)
    return _mult_json(value), f"mixed multiplicity {value.value}", EXIT_OK


def cmd_delta(problem: Problem, args) -> tuple[dict, str, int]:
    rs = problem.random_spec(args)
    value = multiplicity.mixed_multiplicity_sum(problem.module(), rs)
    return _mult_json(value), f"mixed-multiplicity sum {value.value}", EXIT_OK


def cmd_brim(problem: Problem, args) -> tuple[dict, str, int]:
    rs = problem.random_spec(args)
    value = multiplicity.buchsbaum_rim(problem.module(), rs)
    return _mult_json(value), f"Buchsbaum-Rim multiplicity {value.value}", EXIT_OK


def cmd_reduce(problem: Problem, args) -> tuple[dict, str, int]:
    if args.against:
        I = problem.ideal_from_matrix()
        L = problem.named_ideal(args.against)
        witness = multiplicity.ideal_reduction_check(I, L, cap=args.cap)
        report = {
            "is_reduction": witness.is_reduction,
            "power": witness.power,
            "cap": witness.cap,
        }
        code = EXIT_OK if witness.is_reduction else EXIT_NEGATIVE
        return report, f"reduction: {witness.is_reduction}", code
    I = problem.ideal_from_matrix()
    if args.matrix_p:
        A = modtools.reduction_matrix(I.gens(), args.matrix_p)
        return ({"matrix": _matrix_json(A)},
                f"banded {A.rank}x{A.ngens} reduction matrix", EXIT_OK)
    g1, g2 = modtools.vertex_alternation_reduction(modtools.to_monomial_ideal(I), problem.vars)
    return {"g1": str(g1), "g2": str(g2)}, "two-generator reduction", EXIT_OK


def cmd_arc(problem: Problem, args) -> tuple[dict, str, int]:
    M = problem.module()
    rep = closure.curve_pullback_membership(M, problem.vector(), problem.arc())
    report = {
        "member": rep.member,
        "rank": rep.base_rank,
        "extended_rank": rep.extended_rank,
        "minor_orders": list(rep.base_orders),
        "extended_minor_orders": list(rep.extended_orders),
    }
    return report, f"arc membership: {rep.member}", EXIT_OK if rep.member else EXIT_NEGATIVE


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="modclosure",
        description="Integral closures, multiplicities and spreads of "
                    "submodules of free modules over Q[x_1..x_n]")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **flags):
        p = sub.add_parser(name)
        p.set_defaults(func=func)
        if flags.get("infile", True):
            p.add_argument("--in", dest="infile", required=True, help="problem JSON file")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--bound", type=int, default=None)
        p.add_argument("--trials", type=int, default=None)
        return p

    add("rank", cmd_rank)
    p = add("fitting", cmd_fitting)
    p.add_argument("--size", type=int, required=True)
    p = add("newton", cmd_newton)
    p.add_argument("--row", type=int, default=None, help="1-based row to take the ideal from")
    p = add("term-ideal", cmd_term_ideal)
    p.add_argument("--row", type=int, default=None)
    add("zmod", cmd_zmod)
    add("nnd", cmd_nnd)
    add("jm", cmd_jm)
    p = add("closure", cmd_closure)
    p.add_argument("--closed-ideal", default=None,
                   help="name of a supplied integrally closed ideal of minors")
    p = add("membership", cmd_membership)
    p.add_argument("--closed-ideal", default=None)
    add("decomposable", cmd_decomposable)
    p = add("spread", cmd_spread)
    p.add_argument("--direct-sum", default=None, help="comma-separated ideal names")
    p = add("mult", cmd_mult)
    p.add_argument("--ideal", default=None)
    p.add_argument("--volume", action="store_true", help="use the covolume formula")
    p = add("mixed", cmd_mixed)
    p.add_argument("--ideals", required=True, help="comma-separated ideal names")
    add("delta", cmd_delta)
    add("brim", cmd_brim)
    p = add("reduce", cmd_reduce)
    p.add_argument("--against", default=None, help="check reduction against this named ideal")
    p.add_argument("--matrix-p", type=int, default=None)
    p.add_argument("--cap", type=int, default=10)
    p = sub.add_parser("example")
    p.set_defaults(func=None)
    p.add_argument("case_id")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)

    args = parser.parse_args(argv)

    try:
        if args.command == "example":
            rs = RandomSpec(seed=args.seed if args.seed is not None else 42,
                            bound=args.bound if args.bound is not None else 100,
                            trials=args.trials if args.trials is not None else 5)
            try:
                report = cases.run_case(args.case_id, rs)
            except KeyError as exc:
                raise InputError(str(exc)) from exc
            failed = [c["name"] for c in report["checks"] if not c["ok"]]
            summary = ("all checks passed" if report["pass"]
                       else "failed: " + ", ".join(failed))
            _emit(report, f"{report['id']}: {summary}")
            return EXIT_OK if report["pass"] else EXIT_NEGATIVE
        problem = _load(args.infile)
        report, summary, code = args.func(problem, args)
        _emit(report, summary)
        return code
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PolyParseError, RingMismatchError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except closure.NotCertifiedError as exc:
        print(f"not certified: {exc}", file=sys.stderr)
        return EXIT_NOT_CERTIFIED
    except TruncationCapError as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return EXIT_NOT_CERTIFIED
    except (ValueError, KeyError, IndexError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
