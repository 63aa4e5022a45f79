import jsonschema
import pytest

from ghostdim.algebra import preset, simple_module
from ghostdim.bounds import (bound_chain, ci_bound, cx_module, cx_pair, gorenstein_evidence, hochschild_bound,
                             prank_bound)
from ghostdim.errors import InconclusiveError, InputError, InvariantViolation, RefusedError
from ghostdim.schemas import BOUND_REPORT


def k_of(A):
    return simple_module(A, 0)


def test_cx_examples():
    A = preset("nilpotent_loop", 2)
    assert cx_pair(k_of(A), k_of(A), (0, 12)).d == 1
    S = preset("semisimple", 1)
    assert cx_pair(k_of(S), k_of(S), (0, 12)).d == 0
    for d in (2, 3):
        E = preset("exterior", d, 2)
        est, betti = cx_module(k_of(E), (0, 12))
        assert est.d == d


def test_cx_exponential_is_inconclusive():
    # two loops with all paths of length 2 killed: Betti numbers double
    from ghostdim.algebra import QuiverPresentation, from_quiver
    rels = [[(1, f"{a}*{b}")] for a in "xy" for b in "xy"]
    A = from_quiver(QuiverPresentation(["v"], [("x", "v", "v"), ("y", "v", "v")], rels, 2))
    with pytest.raises(InconclusiveError):
        cx_module(k_of(A), (0, 9))


def test_bad_window():
    A = preset("nilpotent_loop", 2)
    with pytest.raises(InputError):
        cx_pair(k_of(A), k_of(A), (5, 3))


def test_exterior_three():
    rep = bound_chain(preset("exterior", 3, 2), (0, 12))
    d = rep.data
    assert (d["loewy_length"], d["cx"], d["stable_lower"], d["rep_dim_lower"]) == (4, 3, 2, 4)
    assert rep.flags["noetherian_source"] == "preset-theorem"
    assert "not machine-checked" in rep.flags["central_action"]
    jsonschema.validate(rep.to_json(), BOUND_REPORT)
    assert "rep.dim A >= cx(A/r) + 1" in rep.to_markdown()


def test_dual_numbers_chain():
    d = bound_chain(preset("nilpotent_loop", 2), (0, 12)).data
    assert (d["loewy_length"], d["cx"], d["stable_lower"], d["rep_dim_lower"]) == (2, 1, 0, 2)


def test_semisimple_note():
    rep = bound_chain(preset("semisimple", 2), (0, 12))
    assert rep.data["rep_dim"] == 0
    assert any("semisimple" in n for n in rep.notes)


def test_ghost_level_consistency():
    with pytest.raises(InvariantViolation):
        bound_chain(preset("exterior", 3, 2), (0, 12), ghost_level=0)
    rep = bound_chain(preset("exterior", 2, 2), (0, 12), ghost_level=1)
    assert rep.data["level_lower"] == 1


def test_unverified_noetherian_flag():
    from ghostdim.algebra import QuiverPresentation, from_quiver
    A = from_quiver(QuiverPresentation(["v"], [("x", "v", "v")], [[(1, "x*x*x")]], 3))
    assert bound_chain(A, (0, 12)).flags["noetherian_source"] == "unverified"
    assert bound_chain(A, (0, 12), noetherian_asserted=True).flags["noetherian_source"] == "user-asserted"


@pytest.mark.parametrize("exps,p,c", [([2, 2], 3, 2), ([2], 2, 1), ([2, 2, 2], 5, 3)])
def test_complete_intersections(exps, p, c):
    rep = ci_bound(preset("truncated_poly", exps, p), (0, 12))
    assert rep.data["cx"] == c
    assert rep.data["stable_lower"] == c - 1


def test_ci_bound_refuses_other_algebras():
    with pytest.raises(RefusedError):
        ci_bound(preset("linear_quiver", 2))


@pytest.mark.parametrize("p,r,ll,cx", [(2, 2, 3, 2), (3, 1, 3, 1), (2, 3, 4, 3)])
def test_prank(p, r, ll, cx):
    d = prank_bound(p, r, (0, 12)).data
    assert (d["loewy_length"], d["cx"], d["stable_lower"]) == (ll, cx, cx - 1)


def test_hochschild():
    rep = hochschild_bound(preset("nilpotent_loop", 2), (0, 8))
    assert rep.data["hh_growth"] == 1
    assert any(ln["claim"] == "rep.dim A >= dim HH*(A) + 1" and ln["value"] == 2 for ln in rep.lines)
    with pytest.raises(RefusedError, match="semisimple"):
        hochschild_bound(preset("semisimple", 1))
    rep = hochschild_bound(preset("exterior", 2, 2), (0, 8))
    assert rep.flags["noetherian_source"] == "preset-theorem"
    jsonschema.validate(rep.to_json(), BOUND_REPORT)


def test_gorenstein_evidence():
    assert gorenstein_evidence(preset("exterior", 2, 2))["status"] == "known"
    ev = gorenstein_evidence(preset("linear_quiver", 2))
    assert ev["status"] == "positive"
    assert ev["ext_dims"][2:] == [0] * 9
