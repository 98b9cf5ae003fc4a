"""Built-in worked examples with their expected results.

Each case builds its input data, runs the relevant pipeline, and reports a
list of named checks (expected vs computed).  Module-valued expectations
are compared semantically, through reduced Groebner bases, never textually:
a generator matrix is only one presentation among many.
"""

from __future__ import annotations

import math
from typing import Callable

from . import closure, modtools, multiplicity, polyhedra
from .modtools import Submodule, ideal
from .multiplicity import RandomSpec


def _vector(texts: list[str]) -> tuple:
    from .poly import parse_poly
    return tuple(parse_poly(t, VARS) for t in texts)


def _check(name: str, expected, computed) -> dict:
    ok = expected == computed
    return {"name": name, "expected": expected, "computed": computed, "ok": ok}


def _module_check(name: str, expected: Submodule, computed: Submodule) -> dict:
    # equality in the localization at the origin (global equality is tried first)
    ok = modtools.local_module_equal(expected, computed)
    return {
        "name": name,
        "expected": expected.to_strings(),
        "computed": computed.to_strings(),
        "ok": ok,
    }


def _finish(case_id: str, checks: list[dict], extra: dict | None = None) -> dict:
    report = {"id": case_id, "pass": all(c["ok"] for c in checks)}
    if extra:
        report.update(extra)
    report["checks"] = checks
    return report


VARS = ("x", "y")


def case_basics(rs: RandomSpec) -> dict:
    M = Submodule.from_strings(VARS, [["x+y", "x^3", "y^3"], ["x", "y", "x"]])
    h = _vector(["x^3", "x"])
    h2 = _vector(["x^3*y^2", "x+y"])
    Mh = M.with_column(h)
    # integrally closed container of the maximal minors; becomes monomial in
    # the coordinates (x, x + y + x^3), with normalized covolume 8
    K = ideal(VARS, ["(x+y+x^3)^2", "x^2+x*y+x^4", "x^6"])
    checks = [
        _check("buchsbaum_rim(M)", 7, multiplicity.buchsbaum_rim(M, rs).value),
        _check("buchsbaum_rim(M+h)", 5, multiplicity.buchsbaum_rim(Mh, rs).value),
        _check("e(I2(M))", 8,
               multiplicity.hilbert_samuel(modtools.fitting_ideal(M, 2), rs).value),
        _check("e(I2(M+h))", 6,
               multiplicity.hilbert_samuel(modtools.fitting_ideal(Mh, 2), rs).value),
        _check("minors inside K", True,
               modtools.contains(K, modtools.fitting_ideal(M, 2))),
        _check("e(K) certificate", 8, multiplicity.hilbert_samuel(K, rs).value),
        _check("h rejected", False, closure.integral_membership(h, M, K)),
        _check("h2 accepted", True, closure.integral_membership(h2, M, K)),
        _module_check("closure matrix", M.with_column(h2),
                      closure.closure_via_minors(M, K).module),
    ]
    return _finish("basics", checks)


def case_morphex(rs: RandomSpec) -> dict:
    from .poly import parse_poly
    M = Submodule.from_strings(VARS, [["x+y", "x^3", "y^3"], ["x", "y", "x"]])
    h = _vector(["x^3", "x"])
    arc = [parse_poly("-t+t^3", ("t",)), parse_poly("t", ("t",))]
    report = closure.curve_pullback_membership(M, h, arc)
    checks = [
        _check("arc rejects h", False, report.member),
        _check("pulled-back rank", 2, report.base_rank),
        _check("minimal 2-minor order of the pullback", 6, report.base_orders[1]),
        _check("minimal 2-minor order with h appended", 4, report.extended_orders[1]),
        _check("order pair", {4, 6}, {report.base_orders[1], report.extended_orders[1]}),
    ]
    return _finish("morphex", checks)


def case_exidcd(rs: RandomSpec) -> dict:
    M = Submodule.from_strings(VARS, [
        ["x^2*y", "x*y^3", "x^2+y^5"],
        ["x*y^3", "x^2+y^5", "x^2*y"],
        ["x^2*y-x*y^3", "x*y^3-x^2-y^5", "x^2+y^5-x^2*y"],
    ])
    I = M.row_ideal(0)
    L_full = ideal(VARS, ["x^2+y^5", "x*y^3", "x^2*y", "x^3", "y^6"])
    L_min = ideal(VARS, ["x^2+y^5", "x*y^3", "y^6"])
    checks = [
        _check("rank", 2, modtools.rank(M)),
        _check("lambda set", ((0, 1), (0, 2), (1, 2)), modtools.lambda_set(M)),
        _check("e(I)", 11, multiplicity.hilbert_samuel(I, rs).value),
    ]
    for rows in modtools.lambda_set(M):
        ML = M.project_rows(rows)
        checks.append(_check(f"e(M_{rows})", 33, multiplicity.buchsbaum_rim(ML, rs).value))
        checks.append(_check(f"delta(M_{rows})", 33,
                             multiplicity.mixed_multiplicity_sum(ML, rs).value))
    deco = closure.integrally_decomposable(M, rs)
    checks.append(_check("integrally decomposable", "yes", deco.verdict))
    witness = multiplicity.ideal_reduction_check(I, L_full)
    checks.append(_check("I reduces L", True, witness.is_reduction))
    # L equals I as an ideal here (x^3 and y^6 are combinations of the other
    # generators), so the least witness is k = 0 and I L = L^2 holds as well
    checks.append(_check("reduction power", 0, witness.power))
    checks.append(_check("I*L = L^2", True, modtools.local_module_equal(
        modtools.ideal_product(I, L_full), modtools.ideal_power(L_full, 2))))
    checks.append(_check("L equals I", True, modtools.module_equal(L_full, I)))
    checks.append(_check("row closure minimally generated", True,
                         modtools.module_equal(L_full, L_min)))
    zmod = modtools.rank_preserving_module(M)
    block = _block_diagonal([L_min, L_min, L_min])
    computed = modtools.intersect(zmod, block)
    expected = Submodule.from_strings(VARS, [
        ["x^2+y^5", "x*y^3", "y^6", "x^2+y^5", "x*y^3", "y^6"],
        ["x^2+y^5", "x*y^3", "y^6", "0", "0", "0"],
        ["0", "0", "0", "x^2+y^5", "x*y^3", "y^6"],
    ])
    checks.append(_module_check("closure matrix", expected, computed))
    extra = {
        "integrally_decomposable": deco.verdict == "yes",
        "e": 33,
        "delta": 33,
        "closure": modtools.reduced(computed).to_strings(),
    }
    return _finish("exidcd", checks, extra)


def _block_diagonal(ideals: list[Submodule]) -> Submodule:
    from .poly import Polynomial
    variables = ideals[0].vars
    p = len(ideals)
    zero = Polynomial.zero(variables)
    cols = []
    for i, I in enumerate(ideals):
        for g in I.gens():
            col = [zero] * p
            col[i] = g
            cols.append(tuple(col))
    return Submodule(variables, p, tuple(cols))


def case_exczero(rs: RandomSpec) -> dict:
    # a = 3 instance; at a = 2 the x^2*y^2-x^a*y^a minor vanishes identically,
    # the minor ideal degenerates to (x^3-y^3)(x, y), and no closure
    # certificate exists (see the tests for the degenerate instance)
    checks = []
    for a in (3,):
        xa, ya = f"x^{a}", f"y^{a}"
        M = Submodule.from_strings(VARS, [
            [xa, "x*y", ya],
            [ya, xa, "x*y"],
            [f"{xa}+{ya}", f"x*y+{xa}", f"{ya}+x*y"],
        ])
        expected_fitting = ideal(VARS, [
            f"x*y^{a + 1}-x^{2 * a}", f"x^{a + 1}*y-y^{2 * a}", "x^2*y^2"])
        checks.append(_module_check(f"a={a}: I2(M)", expected_fitting,
                                    modtools.fitting_ideal(M, 2)))
        checks.append(_check(f"a={a}: minors match row products", True,
                             closure.minors_match_row_products(M, rs)))
        zexpected = Submodule.from_strings(VARS, [["1", "0"], ["0", "1"], ["1", "1"]])
        checks.append(_module_check(f"a={a}: rank-preserving module", zexpected,
                                    modtools.rank_preserving_module(M)))
        result = closure.closure_by_polyhedra(M)
        expected = Submodule.from_strings(VARS, [
            [xa, "x*y", ya, "0", "0", "0"],
            ["0", "0", "0", xa, "x*y", ya],
            [xa, "x*y", ya, xa, "x*y", ya],
        ])
        checks.append(_module_check(f"a={a}: closure", expected, result.module))
    return _finish("exczero", checks)


def case_irjmcb(rs: RandomSpec) -> dict:
    M = Submodule.from_strings(VARS, [["x^3", "x^2*y"], ["x*(x+y)", "y*(x+y)"]])
    I1 = modtools.fitting_ideal(M, 1)
    K = ideal(VARS, ["x*(x+y)", "y*(x+y)", "x^3", "x^2*y", "x*y^2", "y^3"])
    checks = [
        _check("rank", 1, modtools.rank(M)),
        _check("I1(M) degenerate", "degenerate",
               closure.newton_nondegenerate_ideal(I1).verdict),
        _module_check("closure equals M", M, closure.closure_via_minors(M, K).module),
    ]
    zmod = modtools.rank_preserving_module(M)
    block = _block_diagonal([
        modtools.from_monomial_ideal(
            polyhedra.term_ideal(polyhedra.newton_polyhedron_of(M.row_ideal(0).gens())), VARS),
        modtools.from_monomial_ideal(
            polyhedra.term_ideal(polyhedra.newton_polyhedron_of(M.row_ideal(1).gens())), VARS),
    ])
    checks.append(_module_check("term-ideal cut equals M", M, modtools.intersect(zmod, block)))
    return _finish("irjmcb", checks)


def case_cmnotid(rs: RandomSpec) -> dict:
    M = Submodule.from_strings(VARS, [
        ["x^2", "y", "0"],
        ["0", "x", "y^2"],
        ["x^2", "x+y", "y^2"],
    ])
    m3 = ideal(VARS, ["x^3", "x^2*y", "x*y^2", "y^3"])
    fitting = modtools.fitting_ideal(M, 2)
    P = polyhedra.newton_polyhedron_of(fitting.gens())
    term = modtools.from_monomial_ideal(polyhedra.term_ideal(P), VARS)
    checks = [
        _module_check("term ideal of I2(M)", m3, term),
        _module_check("rank-preserving module",
                      Submodule.from_strings(VARS, [["1", "0"], ["0", "1"], ["1", "1"]]),
                      modtools.rank_preserving_module(M)),
    ]
    for rows in modtools.lambda_set(M):
        ML = M.project_rows(rows)
        checks.append(_check(f"delta(M_{rows})", 5,
                             multiplicity.mixed_multiplicity_sum(ML, rs).value))
        checks.append(_check(f"e(M_{rows})", 8, multiplicity.buchsbaum_rim(ML, rs).value))
    deco = closure.integrally_decomposable(M, rs)
    checks.append(_check("integrally decomposable", "no", deco.verdict))
    expected = Submodule.from_strings(VARS, [
        ["x^2", "x*y", "y^2", "y", "0"],
        ["0", "0", "0", "x", "y^2"],
        ["x^2", "x*y", "y^2", "x+y", "y^2"],
    ])
    checks.append(_module_check("closure matrix", expected,
                                closure.closure_via_minors(M, m3).module))
    checks.append(_check("minors match row products", False,
                         closure.minors_match_row_products(M, rs)))
    return _finish("cmnotid", checks)


def case_dekod(rs: RandomSpec) -> dict:
    M = Submodule.from_strings(VARS, [["x^5", "x*y", "y^5"], ["y^2", "x+y", "y^2"]])
    M1, M2 = M.row_ideal(0), M.row_ideal(1)
    J = ideal(VARS, ["x^6", "x^5*y", "x^3*y^2", "x*y^3", "y^6"])
    fitting = modtools.fitting_ideal(M, 2)
    nnd = closure.newton_nondegenerate_ideal(fitting)
    P = polyhedra.newton_polyhedron_of(fitting.gens())
    e1 = multiplicity.hilbert_samuel(M1, rs).value
    e2 = multiplicity.hilbert_samuel(M2, rs).value
    mixed = multiplicity.mixed_multiplicity([M1, M2], rs).value
    delta = multiplicity.mixed_multiplicity_sum(M, rs).value
    brim = multiplicity.buchsbaum_rim(M, rs).value
    result = closure.closure_via_minors(M, J)
    expected = Submodule.from_strings(VARS, [
        ["y^5", "x^4*y-x^3*y^2+x^2*y^3-x*y^4", "x^5-x^4*y+x^3*y^2-x^2*y^3+x*y^4",
         "x^2*y^2-x*y^3", "0", "x*y"],
        ["0", "0", "0", "0", "y^2", "x+y"],
    ])
    factor = modtools.ideal_product(ideal(VARS, ["x", "y^3"]),
                                    ideal(VARS, ["x^5", "x^4*y", "x^2*y^2", "y^3"]))
    deco = closure.integrally_decomposable(M, rs)
    checks = [
        _check("e(M1)", 10, e1),
        _check("e(M2)", 2, e2),
        _check("e(M1,M2)", 2, mixed),
        _check("delta(M)", 14, delta),
        _check("e(M)", 22, brim),
        _check("decomposable", "no", deco.verdict),
        _check("I2(M) nondegenerate", "nondegenerate", nnd.verdict),
        _check("polyhedron vertices", {(6, 0), (1, 3), (0, 6)}, set(P.vertices)),
        _module_check("closure matrix", expected, result.module),
        _module_check("I2 of closure equals J", J,
                      modtools.fitting_ideal(result.module, 2)),
        _module_check("J factors", J, factor),
    ]
    extra = {
        "e_M": brim,
        "delta": delta,
        "decomposable": deco.verdict == "yes",
        "I2_closure": [str(g) for g in J.gens()],
    }
    return _finish("dekod", checks, extra)


def case_reducdsum(rs: RandomSpec) -> dict:
    I = ideal(VARS, ["x^3", "x*y", "y^3"])
    mono = modtools.to_monomial_ideal(I)
    g1, g2 = modtools.vertex_alternation_reduction(mono, VARS)
    P_I = polyhedra.newton_polyhedron(mono.gens)
    P_red = polyhedra.newton_polyhedron_of([g1, g2])
    a, b, c = I.gens()
    A2 = modtools.reduction_matrix([a, b, c], 2)
    square = modtools.ideal_power(I, 2)
    checks = [
        _check("g1", "x^3 + y^3", str(g1)),
        _check("g2", "x*y", str(g2)),
        _check("covolume preserved", polyhedra.covolume(P_I), polyhedra.covolume(P_red)),
        _check("A^2 shape", (2, 4), (A2.rank, A2.ngens)),
        _module_check("I2(A^2) = I^2", square, modtools.fitting_ideal(A2, 2)),
        _check("spread of the double sum", 3,
               closure.spread_of_direct_sum([mono, mono])),
    ]
    return _finish("reducdsum", checks)


CASES: dict[str, Callable[[RandomSpec], dict]] = {
    "basics": case_basics,
    "morphex": case_morphex,
    "exidcd": case_exidcd,
    "exczero": case_exczero,
    "irjmcb": case_irjmcb,
    "cmnotid": case_cmnotid,
    "dekod": case_dekod,
    "reducdsum": case_reducdsum,
}


def run_case(case_id: str, rs: RandomSpec = RandomSpec()) -> dict:
    key = case_id.lower()
    if key not in CASES:
        raise KeyError(f"unknown example {case_id!r}; known: {', '.join(sorted(CASES))}")
    return CASES[key](rs)
