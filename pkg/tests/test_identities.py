from itertools import product

import pytest

from thetacode.errors import ArityMismatch, BadParameters, DomainMismatch, NotWnu, ParseError
from thetacode.identities import (
    OperationTable,
    dwnu_system,
    eval_dwnu,
    f_name,
    g_name,
    is_wnu,
    parse_ops,
    projection_satisfiable,
    restrict_assignment,
    serialize_ops,
    wnu_model,
)

MIN2 = OperationTable.from_function(min, 2, 2)


def kmin(k, d=2):
    return OperationTable.from_function(lambda *a: min(a), k, d)


def majority3():
    return OperationTable.from_function(lambda x, y, z: 1 if x + y + z >= 2 else 0, 3, 2)


def test_table_indexing_is_row_major():
    t = OperationTable(2, 3, tuple(range(3)) * 3)
    assert t(2, 1) == 1 and t(1, 2) == 2
    assert OperationTable.projection(1, 3, 2)(0, 1, 0) == 1
    with pytest.raises(ValueError):
        OperationTable(2, 2, (0, 1, 2, 0))


def test_system_sizes():
    s = dwnu_system(3, 2)
    assert len(s.injections) == 6 and len(s.identities) == 12
    assert len(s.symbols) == 3 + 6
    s = dwnu_system(4, 3)
    assert len(s.injections) == 24 and len(s.identities) == 72
    assert s.injections == tuple(sorted(s.injections))
    with pytest.raises(BadParameters):
        dwnu_system(2, 2)
    with pytest.raises(BadParameters):
        dwnu_system(3, 1)


def test_identity_text():
    ident = dwnu_system(3, 2).identities[1]
    assert str(ident) == "f_1_2(x,y) = g_2(x,y)"


def test_min_satisfies_3_2():
    s = dwnu_system(3, 2)
    ops = {g_name(i): MIN2 for i in (1, 2, 3)}
    ops.update({f_name(p): MIN2 for p in s.injections})
    assert eval_dwnu(s, ops).ok


def test_one_first_projection_breaks_it():
    s = dwnu_system(3, 2)
    ops = {"f": MIN2, "g": MIN2, g_name(2): OperationTable.projection(0, 2, 2)}
    r = eval_dwnu(s, ops)
    assert not r.ok
    # min(x, y) = x fails exactly when x > y
    assert r.witness == (1, 0)
    assert r.identity.g == "g_2"
    expected_first = next(i for i in s.identities if i.g == "g_2")
    assert r.identity == expected_first


def test_singleton_subset_evaluates_literally():
    s = dwnu_system(3, 2)
    ok = {"f": MIN2, "g": MIN2}
    assert eval_dwnu(s, ok, [1]).ok
    const = OperationTable(2, 2, (1, 1, 1, 1))
    r = eval_dwnu(s, {"f": MIN2, "g": const}, [0])
    assert not r.ok and r.witness == (0, 0)
    assert eval_dwnu(s, {"f": MIN2, "g": const}, [1]).ok


def test_eval_errors():
    s = dwnu_system(3, 2)
    with pytest.raises(ArityMismatch):
        eval_dwnu(s, {"f": kmin(3), "g": MIN2})
    with pytest.raises(DomainMismatch):
        eval_dwnu(s, {"f": MIN2, "g": OperationTable.from_function(min, 2, 3)})
    with pytest.raises(DomainMismatch):
        eval_dwnu(s, {"f": MIN2, "g": MIN2}, [2])
    with pytest.raises(BadParameters):
        eval_dwnu(s, {"f": MIN2})


def _semantic_projection_satisfiable(n, k):
    """Search projection tables on {0, 1} with eval_dwnu, one f_psi at a time."""
    system = dwnu_system(n, k)
    projections_k = [OperationTable.projection(j, k, 2) for j in range(k)]
    projections_2 = [OperationTable.projection(j, 2, 2) for j in range(2)]
    for gs in product(projections_2, repeat=n):
        base = {g_name(i + 1): gs[i] for i in range(n)}
        ok = True
        for psi in system.injections:
            sub = type(system)(n, k, (psi,), tuple(i for i in system.identities if i.psi == psi))
            if not any(
                eval_dwnu(sub, {**base, f_name(psi): f, "f": f}).ok for f in projections_k
            ):
                ok = False
                break
        if ok:
            return True
    return False


@pytest.mark.parametrize("n,k", [(3, 2), (4, 2), (4, 3)])
def test_symbolic_matches_semantic(n, k):
    assert projection_satisfiable(n, k).satisfiable == _semantic_projection_satisfiable(n, k)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(3, 7) for k in range(2, n)])
def test_dwnu_systems_are_nontrivial(n, k):
    assert not projection_satisfiable(n, k).satisfiable


def test_bad_parameters_for_projection_search():
    with pytest.raises(BadParameters):
        projection_satisfiable(3, 3)


def test_wnu_model_min_and_majority():
    for n in (4, 5, 6):
        assert eval_dwnu(dwnu_system(n, 3), wnu_model(kmin(3), n)).ok
    assert eval_dwnu(dwnu_system(5, 3), wnu_model(majority3(), 5)).ok


def test_projection_is_not_wnu():
    with pytest.raises(NotWnu) as info:
        wnu_model(OperationTable.projection(0, 3, 2), 4)
    x, y = info.value.witness
    assert x != y
    assert is_wnu(kmin(4)) is None


def test_subsystem_restriction_keeps_satisfaction():
    big = wnu_model(kmin(3, 3), 6)
    for n in (4, 5, 6):
        assert eval_dwnu(dwnu_system(n, 3), restrict_assignment(big, n, 3)).ok
    # a failing larger assignment may still restrict to a satisfying one
    bad = dict(big)
    bad[f_name((6, 5, 4))] = OperationTable.projection(0, 3, 3)
    assert not eval_dwnu(dwnu_system(6, 3), bad).ok
    assert eval_dwnu(dwnu_system(5, 3), restrict_assignment(bad, 5, 3)).ok


def test_ops_file_round_trip():
    ops = {"f": kmin(3), "g": OperationTable.from_function(min, 2, 2)}
    text = serialize_ops(ops)
    assert parse_ops(text) == ops
    assert text.startswith("ops\ndomain 2\nop f 3\n")


@pytest.mark.parametrize(
    "text",
    [
        "ops\ndomain 2\nop g 2\n0 0 0\n",
        "ops\ndomain 2\nop g 2\n0 0 0 2\n",
        "domain 2\n",
        "ops\ndomain 2\nop g 2\n0 0 0 0\nop g 2\n0 0 0 0\n",
        "ops\ndomain 2\nfoo g 2\n",
    ],
)
def test_ops_file_errors(text):
    with pytest.raises(ParseError):
        parse_ops(text)
