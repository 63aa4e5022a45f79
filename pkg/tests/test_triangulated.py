import numpy as np
import pytest

from ghostdim.algebra import hom_dimension, preset, regular_module, simple_module
from ghostdim.errors import InputError
from ghostdim.growth import GradedMapData, LengthSequence, koszul_length_prediction
from ghostdim.resolution import element_from_class, ext, ext_dims, lift_to_chain_map, resolve, yoneda_act
from ghostdim.triangulated import (GMap, cone, derived_hom, from_resolution, identity_map, koszul_object,
                                   module_complex, realize, stable_hom_dims, suspend, truncate, truncate_map,
                                   verify_annihilation, zero_map)

from randalg import random_module, random_quiver_algebra

WINDOW = (0, 6)


def local(name="nilpotent_loop", *params):
    A = preset(name, *(params or (2,)))
    return A, simple_module(A, 0)


def dims(x, y, window=WINDOW):
    d = derived_hom(x, y, window).dims
    return [d[n] for n in range(window[0], window[1] + 1)]


def test_derived_hom_matches_ext():
    A, k = local("exterior", 2, 2)
    assert dims(k, k) == ext_dims(k, k, 6)


def test_degree_zero_is_hom():
    A = preset("linear_quiver", 3)
    M = regular_module(A)
    assert derived_hom(M, M, (0, 0)).dims[0] == hom_dimension(M, M)


def test_projective_source_has_no_higher_ext():
    A, k = local("exterior", 2, 2)
    assert dims(regular_module(A), k)[1:] == [0] * 6


def test_suspension_shifts_window():
    A, k = local("exterior", 2, 2)
    P = from_resolution(resolve(k, 10), 10)
    base = derived_hom(P, k, (0, 6)).dims
    shifted = derived_hom(suspend(P, 1), k, (1, 7)).dims
    assert all(shifted[n] == base[n - 1] for n in range(1, 8))


def test_cone_of_identity_is_contractible():
    A, k = local("exterior", 2, 2)
    P = from_resolution(resolve(k, 12), 12)
    C = cone(identity_map(P)).complex
    C.check()
    assert dims(C, k) == [0] * 7
    assert dims(k, C) == [0] * 7


def test_cone_of_zero_splits():
    A, k = local("exterior", 2, 2)
    P = from_resolution(resolve(k, 14), 14)
    c = cone(zero_map(P, P, 2)).complex
    c.check()
    base = derived_hom(P, k, (0, 9)).dims
    got = derived_hom(c, k, (0, 6)).dims
    # cone(0 : X -> S^2 X) = S X (+) S^2 X
    assert all(got[n] == (base[n - 1] if n >= 1 else 0) + (base[n - 2] if n >= 2 else 0) for n in range(7))


def test_truncation_is_quasi_isomorphic():
    A, k = local("exterior", 2, 2)
    P = from_resolution(resolve(k, 10), 10)
    T = truncate(P)
    T.complex.check()
    assert dims(k, T.complex, (0, 4)) == ext_dims(k, k, 4)
    assert dims(k, P, (0, 4)) == ext_dims(k, k, 4)


def test_truncate_refuses_shallow_complex():
    A, k = local()
    P = from_resolution(resolve(k, 2), 2)
    with pytest.raises(InputError):
        truncate(P, -3)


def test_truncate_map_checks_levels():
    A, k = local()
    P = from_resolution(resolve(k, 4), 4)
    with pytest.raises(InputError):
        truncate_map(identity_map(P), truncate(P, 0), truncate(P, -1))


def test_module_complex_is_a_complex():
    A, k = local("exterior", 2, 2)
    module_complex(k, 3).check()


def test_zero_element_gives_split_koszul_object():
    A, k = local("exterior", 2, 2)
    res = resolve(k, 16)
    zero = lift_to_chain_map(res, 2, A.field.zeros((1, 3)), 14)
    kos = koszul_object(res, [zero], 14)
    base = derived_hom(from_resolution(res, 14), k, (0, 9)).dims
    got = derived_hom(kos.complex, k, (0, 6)).dims
    assert all(got[n] == (base[n - 1] if n >= 1 else 0) + (base[n - 2] if n >= 2 else 0) for n in range(7))


@pytest.mark.parametrize("degree", [1, 2])
def test_koszul_prediction_over_dual_numbers(degree):
    A, k = local()
    top = 10
    g = ext(k, k, top + degree + 2)
    depth = top + degree + 4
    r = element_from_class(g, degree, [1], depth=depth, label="r")
    kos = koszul_object(resolve(k, depth), [r], depth)
    for stage in kos.stages:
        stage.check()
    kos.maps[0].check()
    got = derived_hom(kos.complex, k, (0, top)).dims
    lengths = LengthSequence(tuple(g.dims[: top + 1]), 0)
    act = yoneda_act(r, g, top)
    data = GradedMapData(degree, {n: act[n] for n in range(top - degree + 1)}, lengths, A.field)
    pred = koszul_length_prediction(lengths, data)
    assert all(got[n] == pred[n] for n in range(1, top + 1))


def test_xi_squared_kills_koszul_on_xi():
    A, k = local()
    g = ext(k, k, 4)
    r = element_from_class(g, 1, [1], depth=20, label="xi")
    kos = koszul_object(resolve(k, 20), [r], 20)
    rep = verify_annihilation(kos, k, (0, 12))
    assert rep.passed and rep.exponent == 2
    assert {s for _, s, _, _ in rep.checks} == {"from", "to"}


def test_two_element_koszul_object_over_exterior():
    A, k = local("exterior", 2, 2)
    g = ext(k, k, 6)
    a = element_from_class(g, 2, [1, 0, 0], label="a")
    b = element_from_class(g, 2, [0, 0, 1], label="b")
    kos = koszul_object(resolve(k, 20), [a, b], 20)
    for stage in kos.stages:
        stage.check()
    for m in kos.maps:
        m.check()
    got = derived_hom(kos.complex, k, (0, 8)).dims
    assert [got[n] for n in range(9)] == [0, 0, 1, 2, 1, 0, 0, 0, 0]
    rep = verify_annihilation(kos, k, (0, 4), sides=("from",))
    assert rep.passed and rep.exponent == 4
    assert verify_annihilation(kos, k, (0, 1), sides=("to",)).passed


def test_second_element_must_be_even():
    A, k = local("exterior", 2, 2)
    g = ext(k, k, 4)
    a = element_from_class(g, 2, [1, 0, 0])
    b = element_from_class(g, 1, [1, 0])
    with pytest.raises(InputError, match="even"):
        koszul_object(resolve(k, 8), [a, b], 8)


def test_stable_hom_labels():
    A, k = local("exterior", 2, 2)
    s = stable_hom_dims(k, k, (1, 6))
    assert list(s.values) == ext_dims(k, k, 6)[1:]
    assert s.provenance["label"] == "stable (Gorenstein identification)"
    assert list(stable_hom_dims(regular_module(A), k, (1, 6)).values) == [0] * 6
    B = preset("linear_quiver", 2)
    assert stable_hom_dims(simple_module(B, 0), simple_module(B, 1), (1, 4)).provenance["label"] == \
        "unverified identification"


def test_hundred_fuzzed_cones():
    rng = np.random.default_rng(11)
    done = 0
    while done < 100:
        A = random_quiver_algebra(rng)
        M = random_module(A, rng)
        res = resolve(M, 4)
        if max(res.betti()[:5]) > 12:
            continue  # keep the fuzz cheap on fast-growing resolutions
        g = ext(M, M, 2)
        degs = [n for n in (1, 2) if g.dims[n]]
        if not degs:
            continue
        d = int(rng.choice(degs))
        coords = rng.integers(0, max(A.field.p, 2), size=g.dims[d])
        e = element_from_class(g, d, coords, depth=3)
        e.check()
        P = from_resolution(res, 4)
        a = realize(e, P)
        a.check()
        C = cone(a)
        C.complex.check()
        C.inclusion.check()
        C.projection.check()
        # consecutive triangle maps compose to zero
        comp = C.projection.after(C.inclusion)
        assert all(not np.any(comp.comp(n)) for n in range(comp.lo, P.hi + 1))
        done += 1


def test_graded_map_check_detects_non_chain_map():
    A, k = local("exterior", 2, 2)
    P = from_resolution(resolve(k, 4), 4)
    bad = GMap(P, P, 0, {n: identity_map(P).comp(n) for n in range(P.lo, 0)}, P.lo)  # drops degree 0
    with pytest.raises(AssertionError):
        bad.check()
