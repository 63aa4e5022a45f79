import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghostdim.algebra import (QuiverPresentation, enveloping, from_quiver, from_structure, preset,
                              radical_module, regular_module, simple_top)
from ghostdim.errors import InputError, InvariantViolation

from randalg import random_module, random_quiver_algebra


def dual_numbers_structure():
    # basis 1, x with x^2 = 0
    mult = np.zeros((2, 2, 2), dtype=int)
    mult[0, 0, 0] = mult[0, 1, 1] = mult[1, 0, 1] = 1
    return {"characteristic": 2, "structure_constants": mult.tolist(), "unit": [1, 0],
            "radical_basis": [[0, 1]]}


def test_dual_numbers_from_quiver():
    A = from_quiver(QuiverPresentation(["v"], [("x", "v", "v")], [[(1, "x*x")]], 2))
    assert A.dim == 2
    assert A.radical.shape[1] == 1
    assert A.loewy_length() == 2


def test_exterior_from_quiver_is_associative():
    rels = [[(1, "x*x")], [(1, "y*y")], [(1, "x*y"), (1, "y*x")]]
    A = from_quiver(QuiverPresentation(["v"], [("x", "v", "v"), ("y", "v", "v")], rels, 2))
    assert A.dim == 4
    A.check_associative()
    assert A.loewy_length() == 3


def test_free_loop_is_not_finite_dimensional():
    with pytest.raises(InputError, match="not finite-dimensional below bound"):
        from_quiver(QuiverPresentation(["v"], [("x", "v", "v")], [], 2, path_length_bound=6))


def test_relation_of_length_one_rejected():
    with pytest.raises(InputError, match="not admissible"):
        from_quiver(QuiverPresentation(["v"], [("x", "v", "v")], [[(1, "x")]], 2))


def test_non_composable_relation_rejected():
    arrows = [("a", "1", "2"), ("b", "1", "2")]
    with pytest.raises(InputError, match="non-composable"):
        from_quiver(QuiverPresentation(["1", "2"], arrows, [[(1, "a*b")]], 2))


@pytest.mark.parametrize("name,params,dim,ll", [
    ("elem_abelian", (2, 2), 4, 3),
    ("nilpotent_loop", (2,), 2, 2),
    ("exterior", (3, 2), 8, 4),
    ("exterior", (2, 2), 4, 3),
    ("semisimple", (1,), 1, 1),
    ("truncated_poly", ([2, 2], 3), 4, 3),
    ("linear_quiver", (3,), 6, 3),
])
def test_presets(name, params, dim, ll):
    A = preset(name, *params)
    assert A.dim == dim
    assert A.loewy_length() == ll


def test_unknown_preset():
    with pytest.raises(InputError, match="unknown preset"):
        preset("nonsense")


def test_radical_square_of_exterior():
    A = preset("exterior", 2, 2)
    powers = A.radical_powers()
    assert [p.shape[1] for p in powers] == [4, 3, 1]


def test_top_of_local_algebras():
    for A in (preset("nilpotent_loop", 2), preset("exterior", 3, 2)):
        top = simple_top(A)
        assert top.dim == 1
        assert all(not np.any(top.act(A.radical[:, i])) for i in range(A.radical.shape[1]))


def test_top_of_two_vertex_quiver():
    A = preset("linear_quiver", 2)
    top = simple_top(A)
    assert top.dim == 2
    assert top.top_multiplicities() == [1, 1]


def test_enveloping_algebra():
    A = preset("nilpotent_loop", 2)
    Ae, M = enveloping(A)
    assert Ae.dim == 4
    Ae.check_associative()
    M.validate()


def test_structure_input_round():
    A = from_structure(dual_numbers_structure())
    assert A.dim == 2 and A.loewy_length() == 2


def test_broken_associativity_names_the_triple():
    # basis 1, x, y: x*x = y, x*y = 0, y*x = y, so (x*x)*x != x*(x*x)
    mult = np.zeros((3, 3, 3), dtype=int)
    for i in range(3):
        mult[0, i, i] = mult[i, 0, i] = 1
    mult[1, 1, 2] = 1
    mult[2, 1, 2] = 1
    spec = {"characteristic": 2, "structure_constants": mult.tolist(), "unit": [1, 0, 0],
            "radical_basis": [[0, 1, 0], [0, 0, 1]]}
    with pytest.raises(InvariantViolation, match=r"\(1,1,1\)"):
        from_structure(spec)


def test_non_nilpotent_radical_rejected():
    spec = dual_numbers_structure()
    spec["radical_basis"] = [[1, 0]]
    with pytest.raises((InvariantViolation, InputError)):
        from_structure(spec)


def test_radical_module_cover():
    A = preset("exterior", 2, 2)
    r = radical_module(A)
    assert r.dim == 3
    r.validate()


def test_digest_is_stable():
    assert preset("exterior", 2, 2).digest == preset("exterior", 2, 2).digest
    assert preset("exterior", 2, 2).digest != preset("exterior", 2, 3).digest


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_algebras_and_modules(seed):
    rng = np.random.default_rng(seed)
    A = random_quiver_algebra(rng)
    A.validate()
    F = A.field
    M = random_module(A, rng)
    assert np.array_equal(M.act(A.unit), F.eye(M.dim))
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = F.matmul(M.action[i], M.action[j])
            rhs = F.tensordot(A.mult[i, j], M.action, ([0], [0]))
            assert np.array_equal(lhs, rhs)
    assert regular_module(A).dim == A.dim
    assert len(A.radical_powers()) == A.loewy_length()
