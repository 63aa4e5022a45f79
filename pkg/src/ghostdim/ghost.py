"""Ghost chains built from Koszul objects, and replayable level certificates.

For elements r_1..r_c acting on Y set Z_i = Y//{r_1^s..r_i^s} and
K_i = S^(-i) Z_i.  The map theta_i : K_i -> K_(i-1) is the cone projection
Z_i -> S Z_(i-1) read as a degree-0 map after suspension, so that

    Hom^n(W, theta_i) = pi_i o - : Hom^(n-i)(W, Z_i) -> Hom^(n-i+1)(W, Z_(i-1)).

A certificate stores every per-degree rank it relied on; replay rebuilds the
chain from the stored algebra, module and element coordinates and compares.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Module
from .errors import InconclusiveError, InputError, ResourceLimitError
from .growth import GradedMapData, LengthSequence, find_filter_regular
from .io import algebra_from_json, algebra_to_json, module_from_json, module_to_json
from .resolution import CohomologyElement, element_from_class, ext, power, resolve, yoneda_act
from .triangulated import (
    HomComplex, KoszulObject, ProjComplex, from_resolution, induced_matrix, induced_rank,
    koszul_object, post_map, pre_map, realize, suspend, truncate, truncate_map,
)

SCHEMA_VERSION = 1
DEFAULT_TAIL = 6
DEFAULT_M_MIN = 3


@dataclass(frozen=True)
class ElementSpec:
    """A class of Ext^degree(Y, Y) by coordinates in the computed basis."""

    degree: int
    coords: tuple
    label: str = "r"

    def to_json(self) -> dict:
        return {"degree": self.degree, "coords": list(self.coords), "label": self.label}

    @classmethod
    def from_json(cls, d: dict) -> "ElementSpec":
        return cls(int(d["degree"]), tuple(int(c) for c in d["coords"]), d.get("label", "r"))


def realize_specs(m: Module, specs: list, depth: int = 0) -> list:
    if not specs:
        return []
    top = max(s.degree for s in specs)
    g = ext(m, m, top)
    out = []
    for s in specs:
        if len(s.coords) != g.dims[s.degree]:
            raise InputError(f"element {s.label} has {len(s.coords)} coordinates, Ext^{s.degree} has dim {g.dims[s.degree]}")
        out.append(element_from_class(g, s.degree, s.coords, depth, label=s.label))
    return out


@dataclass(eq=False)
class GhostChain:
    G: Module
    Y: Module
    elements: list  # CohomologyElements r_i on the resolution of Y
    s: int
    koszul: KoszulObject  # stages Z_0 = P(Y), ..., Z_c
    window: tuple

    @property
    def c(self) -> int:
        return len(self.elements)

    def Z(self, i: int) -> ProjComplex:
        return self.koszul.stages[i]

    def K(self, i: int) -> ProjComplex:
        return suspend(self.Z(i), -i)

    def theta(self, i: int):
        """Cone projection Z_i -> Z_(i-1) of degree 1 (theta_i up to suspension)."""
        return self.koszul.cones[i - 1].projection

    def levels(self) -> list:
        """Truncation levels m_i with m_(i-1) = m_i + 1, each below the cohomology of Z_i."""
        bottom = self.Z(self.c).coh_lo
        return [bottom + (self.c - i) for i in range(self.c + 1)]

    def truncations(self) -> list:
        cache = self.__dict__.setdefault("_trunc", None)
        if cache is None:
            cache = [truncate(self.Z(i), m) for i, m in enumerate(self.levels())]
            self.__dict__["_trunc"] = cache
        return cache

    def metadata(self) -> dict:
        return {"c": self.c, "s": self.s, "window": list(self.window),
                "elements": [{"label": e.label, "degree": e.degree} for e in self.elements],
                "levels": self.levels()}


def build_ghost_chain(G: Module, Y: Module, elements: list, s: int | None = None,
                      window: tuple = (0, 12)) -> GhostChain:
    """K_i = S^(-i)(Y//{r_1^s..r_i^s}) with theta_i from the Koszul triangles."""
    c = len(elements)
    s = 2 ** c if s is None else s
    if s < 1:
        raise InputError("exponent s must be >= 1")
    if any(e.resolution.module.digest != Y.digest for e in elements):
        raise InputError("elements must be realized on the resolution of Y")
    res = resolve(Y, 1)
    total = sum(s * e.degree for e in elements)
    depth = total + c + 2
    powers = [power(e, s, depth) if s > 1 else e.extend(depth) for e in elements]
    kos = koszul_object(res, powers, depth)
    return GhostChain(G, Y, list(elements), s, kos, tuple(window))


@dataclass
class GhostCertificate:
    algebra: dict
    G: dict
    Y: dict
    elements: list  # ElementSpec json
    s: int
    window: tuple
    tail: tuple
    m_min: int
    F: dict
    condition1: list  # per i: {"i", "degrees", "ranks"}
    condition2: dict  # {"degrees", "ranks", "count"}
    evidence: str
    verdict: bool

    @property
    def c(self) -> int:
        return len(self.elements)

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION, "kind": "ghost-certificate",
            "algebra": self.algebra, "G": self.G, "Y": self.Y,
            "elements": self.elements, "s": self.s, "c": self.c,
            "window": list(self.window), "tail": list(self.tail), "m_min": self.m_min,
            "F": self.F, "condition1": self.condition1, "condition2": self.condition2,
            "evidence": self.evidence, "verdict": self.verdict,
            "claim": f"F not in thick^{self.c}(G)" if self.verdict else "no claim",
        }

    @classmethod
    def from_json(cls, d: dict) -> "GhostCertificate":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise InputError(f"unsupported certificate schema {d.get('schema_version')}")
        return cls(d["algebra"], d["G"], d["Y"], d["elements"], d["s"], tuple(d["window"]),
                   tuple(d["tail"]), d["m_min"], d["F"], d["condition1"], d["condition2"],
                   d["evidence"], d["verdict"])


def _source(F, depth: int) -> ProjComplex:
    if isinstance(F, KoszulObject):
        return F.complex
    if isinstance(F, ProjComplex):
        return F
    return from_resolution(resolve(F, depth), depth)


def _periodic(m: Module, upto: int) -> bool:
    res = resolve(m, upto)
    return res.periodicity_witness() is not None


def check_ghost(chain: GhostChain, F, tail_length: int = DEFAULT_TAIL, m_min: int = DEFAULT_M_MIN,
                F_desc: dict | None = None) -> GhostCertificate:
    """Evaluate both ghost conditions; F is a module, complex or Koszul object."""
    n0, n1 = chain.window
    if tail_length < 1 or n1 - tail_length + 1 < n0:
        raise InputError(f"window {chain.window} too small for tail {tail_length}")
    if m_min < 1 or m_min > tail_length:
        raise InputError("m_min must lie in [1, tail_length]")
    t0 = n1 - tail_length + 1
    c = chain.c
    tr = chain.truncations()
    levels = chain.levels()
    depth = n1 + 2 - levels[c] + c + 2
    PG = from_resolution(resolve(chain.G, depth), depth)
    cond1 = []
    for i in range(1, c + 1):
        psi = truncate_map(chain.theta(i), tr[i], tr[i - 1])
        hs = HomComplex(PG, tr[i].complex, n0 - i, n1 - i)
        ht = HomComplex(PG, tr[i - 1].complex, n0 - i + 1, n1 - i + 1)
        ranks = [induced_rank(hs, ht, post_map(hs, ht, psi, 1, n - i), n - i, n - i + 1)
                 for n in range(n0, n1 + 1)]
        cond1.append({"i": i, "degrees": [n0, n1], "ranks": ranks})
    Fc = _source(F, depth)
    if c:
        comp = chain.theta(1)
        for i in range(2, c + 1):
            comp = comp.after(chain.theta(i))
        psi = truncate_map(comp, tr[c], tr[0])
        hs = HomComplex(Fc, tr[c].complex, n0 - c, n1 - c)
        ht = HomComplex(Fc, tr[0].complex, n0, n1)
        ranks2 = [induced_rank(hs, ht, post_map(hs, ht, psi, c, n - c), n - c, n) for n in range(n0, n1 + 1)]
    else:
        ht = HomComplex(Fc, tr[0].complex, n0, n1)
        ranks2 = [ht.h_dim(n) for n in range(n0, n1 + 1)]
    tail_idx = range(t0 - n0, n1 - n0 + 1)
    ok1 = all(all(ci["ranks"][k] == 0 for k in tail_idx) for ci in cond1)
    count = sum(1 for k in tail_idx if ranks2[k] != 0)
    verdict = ok1 and count >= m_min
    periodic = _periodic(chain.G, depth) and _periodic(chain.Y, depth)
    evidence = "periodicity-witnessed" if periodic else "window"
    specs = [_spec_of(e) for e in chain.elements]
    A = chain.Y.algebra
    return GhostCertificate(
        algebra_to_json(A), module_to_json(chain.G), module_to_json(chain.Y),
        [sp.to_json() for sp in specs], chain.s, chain.window, (t0, n1), m_min,
        F_desc or {"kind": "given"}, cond1,
        {"degrees": [n0, n1], "ranks": ranks2, "count": count}, evidence, verdict)


def _spec_of(e: CohomologyElement) -> ElementSpec:
    coords = e.__dict__.get("_coords")
    if coords is None:
        raise InputError(f"element {e.label} carries no Ext coordinates; build it with element_from_spec")
    return ElementSpec(e.degree, tuple(coords), e.label)


def element_from_spec(m: Module, spec: ElementSpec, depth: int = 0) -> CohomologyElement:
    e = realize_specs(m, [spec], depth)[0]
    e.__dict__["_coords"] = tuple(int(c) for c in spec.coords)
    return e


def koszul_ghost(G: Module, specs: list, window: tuple, s: int | None = None,
                 tail_length: int = DEFAULT_TAIL, m_min: int = DEFAULT_M_MIN) -> GhostCertificate:
    """Certificate for F = G//{r} against the chain K_i built on Y = G."""
    elems = [element_from_spec(G, sp) for sp in specs]
    chain = build_ghost_chain(G, G, elems, s, window)
    n0, n1 = window
    c = len(elems)
    depth = n1 + 2 - chain.levels()[c] + c + 2
    Fk = koszul_object(resolve(G, depth), elems, depth)
    return check_ghost(chain, Fk, tail_length, m_min, {"kind": "koszul", "on": "G", "elements": "r"})


def replay(doc: dict) -> tuple:
    """Rebuild and recheck a certificate from JSON; returns (matches, fresh certificate)."""
    cert = GhostCertificate.from_json(doc)
    A = algebra_from_json(cert.algebra)
    G = module_from_json(A, cert.G)
    Y = module_from_json(A, cert.Y)
    if module_to_json(G) != module_to_json(Y) or cert.F.get("kind") != "koszul":
        raise InputError("replay supports Koszul certificates with G = Y")
    specs = [ElementSpec.from_json(e) for e in cert.elements]
    fresh = koszul_ghost(G, specs, cert.window, cert.s, cert.tail[1] - cert.tail[0] + 1, cert.m_min)
    same = (fresh.condition1 == cert.condition1 and fresh.condition2 == cert.condition2
            and fresh.verdict == cert.verdict)
    return same, fresh


# element selection ---------------------------------------------------------------


def pool_degree(m: Module, degree: int) -> list:
    """Basis classes of Ext^degree(m, m) as element specs."""
    dims = ext(m, m, degree).dims
    k = dims[degree]
    return [ElementSpec(degree, tuple(1 if j == i else 0 for j in range(k)), f"e{degree}_{i}") for i in range(k)]


def _action_data(m: Module, chosen: list, cand: ElementSpec, s: int, window: tuple) -> list:
    """Graded maps of cand on Hom(m, m//chosen^s) and Hom(m//chosen^s, m) over the window."""
    n0, n1 = window
    d = cand.degree
    top = n1
    if not chosen:
        g = ext(m, m, top + d)
        e = element_from_spec(m, cand, top)
        act = yoneda_act(e, g, top)
        lengths = LengthSequence(tuple(g.dims[: top + d + 1]), 0)
        mats = {n: act[n] for n in range(n0, top + 1)}
        return [GradedMapData(d, mats, lengths, m.field, cand.label)]
    elems = [element_from_spec(m, sp) for sp in chosen]
    extra = sum(s * e.degree for e in elems)
    depth = top + d + extra + len(elems) + 4
    res = resolve(m, depth)
    powers = [power(e, s, depth) for e in elems]
    Z = koszul_object(res, powers, depth).complex
    tz = truncate(Z)
    P = from_resolution(res, depth)
    r = element_from_spec(m, cand, depth)
    rho = realize(r, P)
    # Hom(m, Z) with r acting on the source
    h1 = HomComplex(P, tz.complex, n0, top + d)
    mats1 = {n: induced_matrix(h1, h1, pre_map(h1, h1, rho, n), n, n + d) for n in range(n0, top + 1)}
    len1 = LengthSequence(tuple(h1.h_dim(n) for n in range(n0, top + d + 1)), n0)
    # Hom(Z', m) with r acting on the target through t_{>=-d} P(m) -> m
    Pd = from_resolution(res, d + 1)
    rho_d = realize(element_from_spec(m, cand, d + 1), Pd)
    t_src, t_tgt = truncate(Pd, -d), truncate(Pd, 0)
    psi = truncate_map(rho_d, t_src, t_tgt)
    hs = HomComplex(Z, t_src.complex, n0, top)
    ht = HomComplex(Z, t_tgt.complex, n0, top + d)
    mats2 = {n: induced_matrix(hs, ht, post_map(hs, ht, psi, d, n), n, n + d) for n in range(n0, top + 1)}
    len2 = LengthSequence(tuple(ht.h_dim(n) for n in range(n0, top + d + 1)), n0)
    return [GradedMapData(d, mats1, len1, m.field, cand.label),
            GradedMapData(d, mats2, len2, m.field, cand.label)]


def choose_elements(m: Module, pool: list, c: int, window: tuple, s: int | None = None,
                    seed: int = 0, budget: int = 32) -> list:
    """Iteratively pick r_1..r_c filter-regular on the modules of the iteration."""
    s = 2 ** c if s is None else s
    n0, n1 = window
    F = m.field
    chosen = []
    for _ in range(c):
        datas = []
        for sp in pool:
            parts = _action_data(m, chosen, sp, s, window)
            total = parts[0]
            for p in parts[1:]:
                total = total.direct_sum(p)
            datas.append(total)
        threshold = min(n0 + (n1 - n0) // 2, max(datas[0].matrices))
        pick = find_filter_regular(datas, threshold, seed, budget)
        if pick.index is not None:
            chosen.append(pool[pick.index])
        else:
            i, j, a, b = pick.combination
            coords = F.reduce(F.array(pool[i].coords) * a + F.array(pool[j].coords) * b)
            chosen.append(ElementSpec(pool[i].degree, tuple(int(x) for x in coords),
                                      f"{a}{pool[i].label}+{b}{pool[j].label}"))
    return chosen


@dataclass
class LevelBound:
    c: int
    certificates: list = field(default_factory=list)
    attempts: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "kind": "level-bound", "certified_c": self.c,
                "certificates": [c.to_json() for c in self.certificates], "attempts": self.attempts}


def level_lower_bound(G: Module, Y: Module, pool: list, max_c: int, window: tuple,
                      tail_length: int = DEFAULT_TAIL, m_min: int = DEFAULT_M_MIN, seed: int = 0,
                      budget: int = 32) -> LevelBound:
    """Largest c <= max_c with a certificate that G//r lies outside thick^c(G).

    c = 0 needs no certificate (a nonzero object is never in thick^0).
    """
    if G.digest != Y.digest:
        raise InputError("the acting ring is realized through Ext(G, G); use Y = G")
    out = LevelBound(0)
    pool = [p for p in pool if any(p.coords)]
    if not pool:
        out.attempts.append({"c": 1, "result": "no nonzero elements in pool"})
        return out
    for c in range(1, max_c + 1):
        try:
            specs = choose_elements(G, pool, c, window, seed=seed, budget=budget)
        except InconclusiveError as e:
            out.attempts.append({"c": c, "result": "no filter-regular choice", "detail": str(e)[:200]})
            break
        try:
            cert = koszul_ghost(G, specs, window, tail_length=tail_length, m_min=m_min)
        except ResourceLimitError as e:
            out.attempts.append({"c": c, "result": "resource limit", "detail": str(e)})
            break
        out.attempts.append({"c": c, "result": "certified" if cert.verdict else "refused",
                             "elements": [sp.to_json() for sp in specs]})
        if not cert.verdict:
            break
        out.c = c
        out.certificates.append(cert)
    return out
