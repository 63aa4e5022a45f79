import copy
import json

import jsonschema
import pytest

from ghostdim.algebra import preset, regular_module, simple_module
from ghostdim.errors import InputError
from ghostdim.ghost import (ElementSpec, GhostCertificate, GhostChain, build_ghost_chain, check_ghost,
                            element_from_spec, koszul_ghost, level_lower_bound, pool_degree, replay)
from ghostdim.resolution import resolve
from ghostdim.schemas import GHOST_CERTIFICATE, LEVEL_BOUND
from ghostdim.triangulated import GMap, from_resolution, identity_map, suspend

WINDOW = (0, 12)


def klein():
    A = preset("exterior", 2, 2)
    return A, simple_module(A, 0)


class IdentityChain(GhostChain):
    """K_1 = S Y with theta_1 the identity, so theta is never ghost."""

    def Z(self, i):
        P = self.__dict__["_P"]
        return P if i == 0 else suspend(P, 1)

    def theta(self, i):
        P = self.__dict__["_P"]
        Z1 = suspend(P, 1)
        ident = identity_map(P)
        return GMap(Z1, P, 1, {n: ident.comp(n + 1) for n in range(Z1.lo, Z1.hi + 1)}, Z1.lo)


def test_zero_length_chain():
    A, k = klein()
    chain = build_ghost_chain(k, k, [], window=WINDOW)
    assert chain.c == 0
    assert chain.levels() == [0]
    cert = check_ghost(chain, k, 6, 3)
    assert cert.condition1 == []
    assert cert.verdict  # Hom(k, k[n]) never vanishes, so k is not in thick^0(k) = 0


def test_exterior_certificate_c1():
    A, k = klein()
    spec = ElementSpec(2, (1, 0, 0), "r")
    cert = koszul_ghost(k, [spec], WINDOW)
    assert cert.verdict
    assert all(r == 0 for r in cert.condition1[0]["ranks"][-6:])
    assert cert.condition2["count"] >= 3
    assert cert.evidence in ("periodicity-witnessed", "window")
    jsonschema.validate(cert.to_json(), GHOST_CERTIFICATE)


def test_chain_maps_compose():
    A, k = klein()
    e = element_from_spec(k, ElementSpec(2, (1, 0, 0), "r"))
    chain = build_ghost_chain(k, k, [e], window=WINDOW)
    chain.theta(1).check()
    levels = chain.levels()
    assert levels[0] == levels[1] + 1
    assert chain.K(1).coh_lo == chain.Z(1).coh_lo + 1


def test_identity_theta_is_refused():
    A, k = klein()
    e = element_from_spec(k, ElementSpec(2, (1, 0, 0), "r"))
    chain = IdentityChain(k, k, [e], 1, None, WINDOW)
    chain.__dict__["_P"] = from_resolution(resolve(k, 20), 20)
    chain.theta(1).check()
    cert = check_ghost(chain, k, 6, 3)
    assert not cert.verdict
    assert any(r != 0 for r in cert.condition1[0]["ranks"])


def test_projective_F_is_refused():
    A, k = klein()
    e = element_from_spec(k, ElementSpec(2, (1, 0, 0), "r"))
    chain = build_ghost_chain(k, k, [e], window=WINDOW)
    cert = check_ghost(chain, regular_module(A), 6, 3)
    assert cert.condition2["count"] == 0
    assert not cert.verdict


def test_dual_numbers_boundary_case():
    A = preset("nilpotent_loop", 2)
    k = simple_module(A, 0)
    cert = koszul_ghost(k, [ElementSpec(2, (1,), "r")], WINDOW)
    assert not cert.verdict
    lb = level_lower_bound(k, k, pool_degree(k, 2), 1, WINDOW)
    assert lb.c == 0
    assert lb.attempts[0]["result"] == "refused"


def test_semisimple_has_no_elements():
    A = preset("semisimple", 1)
    k = simple_module(A, 0)
    lb = level_lower_bound(k, k, pool_degree(k, 2), 2, WINDOW)
    assert lb.c == 0 and lb.certificates == []
    jsonschema.validate(lb.to_json(), LEVEL_BOUND)


def test_generator_must_equal_target():
    A = preset("linear_quiver", 2)
    with pytest.raises(InputError):
        level_lower_bound(simple_module(A, 0), simple_module(A, 1), [ElementSpec(1, (1,), "r")], 1, WINDOW)


def test_elements_must_live_on_Y():
    A, k = klein()
    e = element_from_spec(k, ElementSpec(2, (1, 0, 0), "r"))
    with pytest.raises(InputError):
        build_ghost_chain(regular_module(A), regular_module(A), [e])


def test_tail_longer_than_window():
    A, k = klein()
    chain = build_ghost_chain(k, k, [], window=(0, 3))
    with pytest.raises(InputError):
        check_ghost(chain, k, 6, 3)


def test_replay_round_trip_and_tamper():
    A, k = klein()
    cert = koszul_ghost(k, [ElementSpec(2, (1, 0, 0), "r")], WINDOW)
    doc = json.loads(json.dumps(cert.to_json()))
    assert GhostCertificate.from_json(doc).to_json() == cert.to_json()
    same, fresh = replay(doc)
    assert same and fresh.to_json() == cert.to_json()
    bad = copy.deepcopy(doc)
    bad["condition2"]["ranks"][-1] += 1
    assert replay(bad)[0] is False


def test_element_spec_json():
    sp = ElementSpec(2, (1, 0, 1), "r")
    assert ElementSpec.from_json(sp.to_json()) == sp
