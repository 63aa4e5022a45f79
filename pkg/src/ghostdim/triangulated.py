"""Complexes, cones, derived Hom on a window, Koszul objects.

Grading is cohomological.  Sign conventions, fixed once for the package:

* suspension: ``(S^i X)^n = X^(n+i)`` with differential ``(-1)^i d``;
* a morphism ``X -> S^k Y`` is a graded map ``phi`` of degree ``k`` with
  components ``phi^n : X^n -> Y^(n+k)`` and ``d phi = (-1)^k phi d``;
* Hom complexes use ``D(phi) = d_Y phi - (-1)^|phi| phi d_X``;
* ``cone(a : X -> S^k Y)`` has terms ``X^(n+1) (+) Y^(n+k)`` and differential
  ``[[-d_X, 0], [a, (-1)^k d_Y]]``.

Complexes of projectives are stored generator-wise (see :mod:`resolution`)
and are brutally truncated below ``lo``; every term and differential in
degrees ``>= lo`` is genuine.  Derived Hom into such a complex goes through
its good truncation, which is a bounded complex of modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra, Module
from .errors import InputError, InvariantViolation, ResourceLimitError
from .exactla import complement_columns, image_basis, kernel_basis, rank, solve
from .growth import LengthSequence
from .resolution import (
    CohomologyElement, FreeLayout, ProjResolution, amat_to_elements, amat_to_linear,
    compose_amat, elements_to_amat, hom_free_dim, layout, precompose_matrix, resolve,
    _hom_offsets,
)


# complexes of projectives ---------------------------------------------------


@dataclass(eq=False)
class ProjComplex:
    algebra: Algebra
    lo: int
    gens: dict  # n -> list of (vertex, shift)
    diffs: dict  # n -> A-matrix of d^n : P^n -> P^(n+1)
    coh_lo: int  # cohomology vanishes in degrees < coh_lo
    label: str = "X"
    bounded_below: bool = False  # True when lo is the genuine bottom

    @property
    def hi(self) -> int:
        live = [n for n, g in self.gens.items() if g]
        return max(live) if live else self.lo

    def g(self, n: int) -> list:
        return self.gens.get(n, [])

    def rank_at(self, n: int) -> int:
        return len(self.g(n))

    def layout(self, n: int) -> FreeLayout:
        cache = self.__dict__.setdefault("_layouts", {})
        if n not in cache:
            cache[n] = layout(self.algebra, self.g(n))
        return cache[n]

    def d(self, n: int) -> np.ndarray:
        if n in self.diffs:
            return self.diffs[n]
        return self.algebra.field.zeros((self.rank_at(n + 1), self.rank_at(n), self.algebra.dim))

    def linear(self, n: int) -> np.ndarray:
        cache = self.__dict__.setdefault("_linear", {})
        if n not in cache:
            cache[n] = amat_to_linear(self.algebra, self.layout(n + 1), self.layout(n), self.d(n))
        return cache[n]

    def check(self) -> None:
        A, F = self.algebra, self.algebra.field
        for n in range(self.lo, self.hi):
            dd = compose_amat(A, self.d(n), self.d(n + 1))
            if not F.is_zero(dd):
                raise InvariantViolation(f"d o d != 0 at degree {n} of {self.label}")

    def ranks(self) -> dict:
        return {n: self.rank_at(n) for n in range(self.lo, self.hi + 1)}


def from_resolution(res: ProjResolution, depth: int, label: str | None = None) -> ProjComplex:
    """P(M) as a complex: P^(-i) = P_i, truncated below at degree -depth."""
    res.extend(depth)
    gens = {-i: list(res.gens[i]) for i in range(depth + 1)}
    diffs = {-i: res.diffs[i] for i in range(1, depth + 1)}
    return ProjComplex(res.algebra, -depth, gens, diffs, 0, label or f"P({res.module.label})")


def suspend(x: ProjComplex, i: int) -> ProjComplex:
    F = x.algebra.field
    sign = -1 if i % 2 else 1
    gens = {n - i: g for n, g in x.gens.items()}
    diffs = {n - i: (F.reduce(-d) if sign < 0 else d) for n, d in x.diffs.items()}
    return ProjComplex(x.algebra, x.lo - i, gens, diffs, x.coh_lo - i,
                       f"S^{i}({x.label})" if i else x.label, x.bounded_below)


def _ident(A: Algebra, gens) -> np.ndarray:
    F = A.field
    Y = F.zeros((len(gens), len(gens), A.dim))
    for i, (v, _) in enumerate(gens):
        Y[i, i] = A.idempotents[v]
    return Y


def _assemble(A: Algebra, rows: list, cols: list, blocks: dict) -> np.ndarray:
    F = A.field
    Y = F.zeros((sum(rows), sum(cols), A.dim))
    ro = np.concatenate([[0], np.cumsum(rows)]).astype(int)
    co = np.concatenate([[0], np.cumsum(cols)]).astype(int)
    for (a, b), blk in blocks.items():
        if blk is not None and blk.size:
            Y[ro[a]:ro[a + 1], co[b]:co[b + 1]] = blk
    return Y


@dataclass(eq=False)
class GMap:
    """Graded map of degree k between complexes of projectives (A-matrices)."""

    source: ProjComplex
    target: ProjComplex
    degree: int
    comps: dict
    lo: int

    def comp(self, n: int) -> np.ndarray:
        if n in self.comps:
            return self.comps[n]
        A = self.source.algebra
        return A.field.zeros((self.target.rank_at(n + self.degree), self.source.rank_at(n), A.dim))

    def after(self, other: "GMap") -> "GMap":
        """self o other."""
        A = self.source.algebra
        k = other.degree
        comps = {n: compose_amat(A, other.comp(n), self.comp(n + k))
                 for n in range(max(other.lo, self.lo - k), other.source.hi + 1)}
        return GMap(other.source, self.target, self.degree + k, comps, max(other.lo, self.lo - k))

    def check(self, top: int | None = None) -> None:
        A, F = self.source.algebra, self.source.algebra.field
        k = self.degree
        top = self.source.hi if top is None else top
        sign = -1 if k % 2 else 1
        for n in range(self.lo, top):
            lhs = compose_amat(A, self.comp(n), self.target.d(n + k))
            rhs = compose_amat(A, self.source.d(n), self.comp(n + 1))
            if not np.array_equal(lhs, F.reduce(sign * rhs)):
                raise InvariantViolation(f"graded map is not a chain map at degree {n}")


@dataclass(eq=False)
class Cone:
    complex: ProjComplex
    inclusion: GMap  # Y -> C, degree -k
    projection: GMap  # C -> X, degree 1


def cone(a: GMap, label: str | None = None) -> Cone:
    """Mapping cone of a : X -> S^k Y, with its triangle maps."""
    X, Y, k = a.source, a.target, a.degree
    A, F = X.algebra, X.algebra.field
    lo = max(X.lo - 1, Y.lo - k, a.lo - 1)
    hi = max(X.hi - 1, Y.hi - k)
    gens, diffs = {}, {}
    for n in range(lo, hi + 1):
        gens[n] = list(X.g(n + 1)) + list(Y.g(n + k))
    ysign = -1 if k % 2 else 1
    for n in range(lo, hi):
        rows = [X.rank_at(n + 2), Y.rank_at(n + 1 + k)]
        cols = [X.rank_at(n + 1), Y.rank_at(n + k)]
        dy = Y.d(n + k)
        diffs[n] = _assemble(A, rows, cols, {
            (0, 0): F.reduce(-X.d(n + 1)),
            (1, 0): a.comp(n + 1),
            (1, 1): F.reduce(ysign * dy) if ysign < 0 else dy,
        })
    C = ProjComplex(A, lo, gens, diffs, min(X.coh_lo - 1, Y.coh_lo - k),
                    label or f"cone({X.label}->{Y.label})", X.bounded_below and Y.bounded_below)
    inc = {}
    for m in range(lo + k, Y.hi + 1):
        n = m - k
        inc[m] = _assemble(A, [X.rank_at(n + 1), Y.rank_at(m)], [Y.rank_at(m)], {(1, 0): _ident(A, Y.g(m))})
    proj = {}
    for n in range(lo, hi + 1):
        proj[n] = _assemble(A, [X.rank_at(n + 1)], [X.rank_at(n + 1), Y.rank_at(n + k)],
                            {(0, 0): _ident(A, X.g(n + 1))})
    return Cone(C, GMap(Y, C, -k, inc, lo + k), GMap(C, X, 1, proj, lo))


def identity_map(X: ProjComplex) -> GMap:
    A = X.algebra
    return GMap(X, X, 0, {n: _ident(A, X.g(n)) for n in range(X.lo, X.hi + 1)}, X.lo)


def zero_map(X: ProjComplex, Y: ProjComplex, k: int = 0) -> GMap:
    return GMap(X, Y, k, {}, X.lo)


# realizing cohomology classes on resolutions -------------------------------


def realize(e: CohomologyElement, P: ProjComplex) -> GMap:
    """The class e as a degree-|e| graded map P -> P (P built from e's resolution)."""
    d = e.degree
    depth = -P.lo
    e.extend(max(depth - d, 0))
    F = P.algebra.field
    comps = {}
    for j in range(d, depth + 1):
        f = e.maps[j - d]
        sign = -1 if (d * j) % 2 else 1
        comps[-j] = F.reduce(-f) if sign < 0 else f
    return GMap(P, P, d, comps, P.lo)


def _pmap_comp(phi: GMap, j: int) -> np.ndarray:
    return phi.comp(-j)


def solve_homotopy(res: ProjResolution, P: ProjComplex, c: GMap) -> GMap:
    """Find h of degree |c| - 1 on P with D(h) = c, for a null-homotopic cycle c.

    Works down the resolution: the first component is fixed by an Ext-level
    solve, later ones by exactness of P in positive homological degrees.
    """
    A, F = res.algebra, res.field
    e = c.degree - 1
    depth = -P.lo
    sgn = -1 if e % 2 else 1
    M = res.module
    h = {}
    if e < 0:
        raise InputError("homotopy degree must be nonnegative")
    if depth < e + 1:
        return GMap(P, P, e, {}, P.lo)
    # component h_e : P_e -> P_0 through psi = eps o h_e
    ce1 = _pmap_comp(c, e + 1)  # P_{e+1} -> P_0
    eps_c = F.matmul(res.augmentation_linear(), amat_to_elements(A, res.layout(0), ce1))  # dim M x r_{e+1}
    tgt = _images_to_hom(M, res.layout(e + 1), F.reduce(-sgn * eps_c))
    delta = precompose_matrix(A, res.diffs[e + 1], res.layout(e + 1), res.layout(e), M)
    x = solve(F, delta, tgt)
    if x is None:
        raise InvariantViolation("elements do not commute up to homotopy (not central)")
    psi = _hom_to_images(M, res.layout(e), x)
    h[e] = _lift_images(res, 0, res.layout(e), psi)
    for j in range(e + 1, depth + 1):
        rhs = F.reduce(_pmap_comp(c, j) + sgn * compose_amat(A, res.diffs[j], h[j - 1]))
        vecs = amat_to_elements(A, res.layout(j - e - 1), rhs)
        sol = res.solver(j - e).solve(vecs)
        if sol is None:
            raise InvariantViolation(f"homotopy lift infeasible at stage {j}")
        h[j] = _project_vertices(res, j - e, res.layout(j), sol)
    hm = GMap(P, P, e, {-j: m for j, m in h.items()}, P.lo)
    return hm


def _images_to_hom(M: Module, L: FreeLayout, images: np.ndarray) -> np.ndarray:
    F = M.field
    out = F.zeros(hom_free_dim(L, M))
    for j, off in enumerate(_hom_offsets(L, M)):
        C = M.vertex_coords[L.gens[j][0]]
        out[off:off + C.shape[0]] = F.matmul(C, images[:, j])
    return out


def _hom_to_images(M: Module, L: FreeLayout, vec: np.ndarray) -> np.ndarray:
    F = M.field
    out = F.zeros((M.dim, L.rank))
    for j, off in enumerate(_hom_offsets(L, M)):
        B = M.vertex_bases[L.gens[j][0]]
        out[:, j] = F.matmul(B, vec[off:off + B.shape[1]])
    return out


def _project_vertices(res: ProjResolution, i: int, src: FreeLayout, x: np.ndarray) -> np.ndarray:
    from .resolution import act_on_free
    A = res.algebra
    tgt = res.layout(i)
    if A.num_vertices > 1:
        for j, (v, _) in enumerate(src.gens):
            x[:, j] = act_on_free(A, tgt, A.idempotents[v], x[:, j:j + 1])[:, 0]
    return elements_to_amat(A, tgt, x)


def _lift_images(res: ProjResolution, i: int, src: FreeLayout, images: np.ndarray) -> np.ndarray:
    sol = res.solver(i).solve(images) if images.shape[1] else res.field.zeros((res.layout(i).dim, 0))
    if sol is None:
        raise InvariantViolation("lift through the augmentation failed")
    return _project_vertices(res, i, src, sol)


# Koszul objects ----------------------------------------------------------------


@dataclass(eq=False)
class KoszulObject:
    base: ProjComplex
    elements: list
    stages: list  # X_0 .. X_n
    maps: list  # realized maps X_{i-1} -> S^{d_i} X_{i-1}
    cones: list

    @property
    def complex(self) -> ProjComplex:
        return self.stages[-1]

    @property
    def amplitude(self) -> tuple:
        X = self.complex
        return X.coh_lo, 0


def _lift_to_cone(a: GMap, b: GMap, h: GMap, C: Cone) -> GMap:
    """Induced map on cone(a) from b (degree k, even) and homotopy h."""
    X = a.source
    A = X.algebra
    d1, k = a.degree, b.degree
    Cx = C.complex
    comps = {}
    for n in range(Cx.lo, Cx.hi + 1):
        rows = [X.rank_at(n + k + 1), X.rank_at(n + k + d1)]
        cols = [X.rank_at(n + 1), X.rank_at(n + d1)]
        comps[n] = _assemble(A, rows, cols, {
            (0, 0): b.comp(n + 1),
            (1, 0): h.comp(n + 1),
            (1, 1): b.comp(n + d1),
        })
    return GMap(Cx, Cx, k, comps, Cx.lo)


def koszul_object(res: ProjResolution, elements: list, depth: int) -> KoszulObject:
    """Iterated Koszul object of ``elements`` on P(M) truncated at ``depth``.

    Up to two elements are supported; the second must have even degree, and
    its action on the first cone is corrected by an explicit homotopy.
    """
    if len(elements) > 2:
        raise InputError("iterated Koszul objects are supported for at most two elements")
    P = from_resolution(res, depth)
    stages, maps, cones = [P], [], []
    if not elements:
        return KoszulObject(P, [], stages, maps, cones)
    a = realize(elements[0], P)
    c1 = cone(a, label=f"{P.label}//{elements[0].label}")
    stages.append(c1.complex)
    maps.append(a)
    cones.append(c1)
    if len(elements) == 2:
        e2 = elements[1]
        if e2.degree % 2:
            raise InputError("the second Koszul element must have even degree")
        b = realize(e2, P)
        F = P.algebra.field
        ab, ba = a.after(b), b.after(a)
        comm = {n: F.reduce(ab.comp(n) - ba.comp(n)) for n in range(P.lo, P.hi + 1)}
        sign = -1 if (a.degree + 1) % 2 else 1
        cgm = GMap(P, P, a.degree + b.degree, {n: F.reduce(sign * m) for n, m in comm.items()}, P.lo)
        h = solve_homotopy(res, P, cgm)
        B = _lift_to_cone(a, b, h, c1)
        c2 = cone(B, label=f"{c1.complex.label}//{e2.label}")
        stages.append(c2.complex)
        maps.append(B)
        cones.append(c2)
    return KoszulObject(P, list(elements), stages, maps, cones)


# bounded complexes of modules --------------------------------------------------


def free_module(A: Algebra, gens) -> Module:
    L = layout(A, gens)
    F = A.field
    act = F.zeros((A.dim, L.dim, L.dim))
    for j, (v, _) in enumerate(L.gens):
        q = A.projective_bases[v].shape[1]
        o = L.offsets[j]
        act[:, o:o + q, o:o + q] = A.projective_action[v]
    return Module(A, act, label="free")


@dataclass(eq=False)
class ModComplex:
    algebra: Algebra
    lo: int
    terms: list  # Modules in degrees lo, lo+1, ...
    diffs: list  # d^n as matrices, n = lo .. lo+len-2
    label: str = "Y"

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    def term(self, n: int):
        if self.lo <= n <= self.hi:
            return self.terms[n - self.lo]
        return None

    def dim(self, n: int) -> int:
        t = self.term(n)
        return 0 if t is None else t.dim

    def d(self, n: int) -> np.ndarray:
        F = self.algebra.field
        if self.lo <= n < self.hi:
            return self.diffs[n - self.lo]
        return F.zeros((self.dim(n + 1), self.dim(n)))

    def check(self) -> None:
        F = self.algebra.field
        for n in range(self.lo, self.hi - 1):
            if not F.is_zero(F.matmul(self.d(n + 1), self.d(n))):
                raise InvariantViolation(f"d o d != 0 in {self.label} at {n}")
        for n in range(self.lo, self.hi):
            src, tgt, d = self.term(n), self.term(n + 1), self.d(n)
            for b in range(self.algebra.dim):
                if not np.array_equal(F.matmul(d, src.action[b]), F.matmul(tgt.action[b], d)):
                    raise InvariantViolation(f"differential of {self.label} is not A-linear at {n}")


def module_complex(m: Module, degree: int = 0) -> ModComplex:
    return ModComplex(m.algebra, degree, [m], [], m.label)


@dataclass(eq=False)
class Truncation:
    complex: ModComplex
    source: ProjComplex
    level: int
    proj: np.ndarray  # P^level -> bottom quotient
    section: np.ndarray  # bottom quotient -> P^level

    def lift(self, n: int) -> np.ndarray:
        F = self.source.algebra.field
        if n == self.level:
            return self.section
        return F.eye(self.source.layout(n).dim)

    def down(self, n: int) -> np.ndarray:
        F = self.source.algebra.field
        if n == self.level:
            return self.proj
        return F.eye(self.source.layout(n).dim)


def truncate(X: ProjComplex, level: int | None = None) -> Truncation:
    """Good truncation at ``level`` (default: the known cohomology bottom)."""
    A, F = X.algebra, X.algebra.field
    m = X.coh_lo if level is None else level
    if m > X.coh_lo:
        raise InputError(f"cannot truncate {X.label} above its cohomology bottom {X.coh_lo}")
    if m - 1 < X.lo and not (X.bounded_below and m <= X.lo):
        raise InputError(f"{X.label} is too shallow (lo={X.lo}) to truncate at {m}")
    hi = max(X.hi, m)
    bottom = free_module(A, X.g(m))
    n = bottom.dim
    if m - 1 >= X.lo:
        sub = image_basis(F, X.linear(m - 1))
    else:
        sub = F.zeros((n, 0))
    idx = complement_columns(F, sub, F.eye(n))
    section = F.eye(n)[:, idx]
    full = np.concatenate([sub, section], axis=1)
    coords = solve(F, full, F.eye(n)) if n else F.zeros((0, 0))
    proj = coords[sub.shape[1]:] if n else F.zeros((0, 0))
    acted = F.tensordot(bottom.action, section, ([2], [0]))
    qact = F.tensordot(proj, acted, ([1], [1])).transpose(1, 0, 2) if n else F.zeros((A.dim, 0, 0))
    terms = [Module(A, qact, label=f"{X.label}^{m}/im")]
    diffs = []
    for k in range(m + 1, hi + 1):
        terms.append(free_module(A, X.g(k)))
    for k in range(m, hi):
        d = X.linear(k)
        if k == m:
            d = F.matmul(d, section)
        diffs.append(d)
    return Truncation(ModComplex(A, m, terms, diffs, f"t({X.label})"), X, m, proj, section)


def truncate_map(phi: GMap, src: Truncation, tgt: Truncation) -> dict:
    """Matrices of the map induced by phi between good truncations."""
    k = phi.degree
    if tgt.level != src.level + k:
        raise InputError("truncation levels must differ by the map degree")
    A, F = phi.source.algebra, phi.source.algebra.field
    out = {}
    for n in range(src.level, src.complex.hi + 1):
        lin = amat_to_linear(A, phi.target.layout(n + k), phi.source.layout(n), phi.comp(n))
        out[n] = F.matmul(tgt.down(n + k), F.matmul(lin, src.lift(n)))
    return out


# Hom complexes -------------------------------------------------------------------


def _post_free(A: Algebra, L: FreeLayout, mat: np.ndarray, N1: Module, N2: Module) -> np.ndarray:
    """phi -> mat o phi on Hom(L, N1) -> Hom(L, N2), generator-wise."""
    F = A.field
    out = F.zeros((hom_free_dim(L, N2), hom_free_dim(L, N1)))
    o1, o2 = _hom_offsets(L, N1), _hom_offsets(L, N2)
    cache = {}
    for j, (v, _) in enumerate(L.gens):
        if v not in cache:
            cache[v] = F.matmul(N2.vertex_coords[v], F.matmul(mat, N1.vertex_bases[v]))
        blk = cache[v]
        out[o2[j]:o2[j] + blk.shape[0], o1[j]:o1[j] + blk.shape[1]] = blk
    return out


MAX_HOM_ENTRIES = 32_000_000


class HomComplex:
    """Hom_A(F, Y) for F a complex of projectives and Y a bounded module complex."""

    def __init__(self, Fc: ProjComplex, Y: ModComplex, n_lo: int, n_hi: int):
        self.F, self.Y = Fc, Y
        self.A = Fc.algebra
        self.n_lo, self.n_hi = n_lo, n_hi
        need = Y.lo - n_hi - 1
        if Fc.lo > need and not Fc.bounded_below:
            raise InputError(f"source {Fc.label} truncated at {Fc.lo}, need {need} for window top {n_hi}")
        self._blocks = {}
        self._D = {}
        self._coh = {}

    def blocks(self, n: int) -> list:
        """[(j, offset, size)] for Hom^n = (+)_j Hom(F^j, Y^(j+n))."""
        if n not in self._blocks:
            out, pos = [], 0
            for j in range(max(self.F.lo, self.Y.lo - n), min(self.F.hi, self.Y.hi - n) + 1):
                N = self.Y.term(j + n)
                size = hom_free_dim(self.F.layout(j), N)
                if size:
                    out.append((j, pos, size))
                    pos += size
            self._blocks[n] = out
        return self._blocks[n]

    def dim(self, n: int) -> int:
        b = self.blocks(n)
        return b[-1][1] + b[-1][2] if b else 0

    def D(self, n: int) -> np.ndarray:
        """Differential Hom^n -> Hom^(n+1)."""
        if n not in self._D:
            A, F = self.A, self.A.field
            if self.dim(n) * self.dim(n + 1) > MAX_HOM_ENTRIES:
                raise ResourceLimitError(
                    f"Hom complex differential {self.dim(n + 1)}x{self.dim(n)} exceeds {MAX_HOM_ENTRIES} entries")
            mat = F.zeros((self.dim(n + 1), self.dim(n)))
            src = {j: (o, s) for j, o, s in self.blocks(n)}
            sign = 1 if n % 2 else -1  # -(-1)^n
            for j, ro, rs in self.blocks(n + 1):
                if j in src:
                    o, s = src[j]
                    blk = _post_free(A, self.F.layout(j), self.Y.d(j + n), self.Y.term(j + n), self.Y.term(j + n + 1))
                    mat[ro:ro + rs, o:o + s] = blk
                if j + 1 in src:
                    o, s = src[j + 1]
                    blk = precompose_matrix(A, self.F.d(j), self.F.layout(j), self.F.layout(j + 1),
                                            self.Y.term(j + n + 1))
                    mat[ro:ro + rs, o:o + s] = F.reduce(mat[ro:ro + rs, o:o + s] + sign * blk)
            self._D[n] = mat
        return self._D[n]

    def cohomology(self, n: int) -> dict:
        if n not in self._coh:
            F = self.A.field
            dim = self.dim(n)
            Z = kernel_basis(F, self.D(n)) if self.dim(n + 1) else F.eye(dim)
            B = image_basis(F, self.D(n - 1)) if self.dim(n - 1) else F.zeros((dim, 0))
            idx = complement_columns(F, B, Z)
            self._coh[n] = {"Z": Z, "B": B, "reps": Z[:, idx]}
        return self._coh[n]

    def h_dim(self, n: int) -> int:
        return self.cohomology(n)["reps"].shape[1]

    def dims(self) -> dict:
        return {n: self.h_dim(n) for n in range(self.n_lo, self.n_hi + 1)}

    def fast_dims(self) -> dict:
        F = self.A.field
        rk = {}
        for n in range(self.n_lo - 1, self.n_hi + 1):
            cached = n in self._D
            rk[n] = rank(F, self.D(n))
            if not cached:
                del self._D[n]  # ranks only; keep memory flat
        return {n: self.dim(n) - rk[n] - rk[n - 1] for n in range(self.n_lo, self.n_hi + 1)}

    def coordinates(self, n: int, vecs: np.ndarray) -> np.ndarray:
        F = self.A.field
        c = self.cohomology(n)
        basis = np.concatenate([c["reps"], c["B"]], axis=1)
        x = solve(F, basis, vecs)
        if x is None:
            raise InvariantViolation(f"image is not a cocycle in degree {n}")
        return x[: c["reps"].shape[1]]


def post_map(hs: HomComplex, ht: HomComplex, psi: dict, k: int, n: int) -> np.ndarray:
    """Chain-level matrix Hom^n(F, Y) -> Hom^(n+k)(F, Y') of phi -> psi o phi."""
    A, F = hs.A, hs.A.field
    out = F.zeros((ht.dim(n + k), hs.dim(n)))
    tgt = {j: (o, s) for j, o, s in ht.blocks(n + k)}
    for j, o, s in hs.blocks(n):
        if j not in tgt or (j + n) not in psi:
            continue
        to, ts = tgt[j]
        out[to:to + ts, o:o + s] = _post_free(A, hs.F.layout(j), psi[j + n], hs.Y.term(j + n),
                                              ht.Y.term(j + n + k))
    return out


def pre_map(hs: HomComplex, ht: HomComplex, rho: GMap, n: int) -> np.ndarray:
    """Chain-level matrix Hom^n(F2, Y) -> Hom^(n+k)(F1, Y) of phi -> phi o rho (rho : F1 -> F2)."""
    A, F = hs.A, hs.A.field
    k = rho.degree
    out = F.zeros((ht.dim(n + k), hs.dim(n)))
    src = {j: (o, s) for j, o, s in hs.blocks(n)}
    for j, to, ts in ht.blocks(n + k):
        if j + k not in src:
            continue
        o, s = src[j + k]
        out[to:to + ts, o:o + s] = precompose_matrix(A, rho.comp(j), rho.source.layout(j),
                                                     rho.target.layout(j + k), ht.Y.term(j + n + k))
    return out


def induced_rank(hs: HomComplex, ht: HomComplex, mat: np.ndarray, n: int, n2: int) -> int:
    """Rank of the map H^n -> H^n2 induced by a chain-level matrix."""
    F = hs.A.field
    reps = hs.cohomology(n)["reps"]
    if reps.shape[1] == 0 or ht.dim(n2) == 0:
        return 0
    B = ht.cohomology(n2)["B"]
    img = F.matmul(mat, reps)
    return rank(F, np.concatenate([B, img], axis=1)) - (rank(F, B) if B.shape[1] else 0)


def induced_matrix(hs: HomComplex, ht: HomComplex, mat: np.ndarray, n: int, n2: int) -> np.ndarray:
    F = hs.A.field
    reps = hs.cohomology(n)["reps"]
    return ht.coordinates(n2, F.matmul(mat, reps))


# derived Hom ------------------------------------------------------------------------


def as_source(x, depth: int) -> ProjComplex:
    if isinstance(x, ProjComplex):
        return x
    if isinstance(x, Module):
        return from_resolution(resolve(x, depth), depth)
    raise InputError("source must be a module or a complex of projectives")


def as_target(y):
    if isinstance(y, ModComplex):
        return y
    if isinstance(y, Module):
        return module_complex(y)
    if isinstance(y, ProjComplex):
        return truncate(y).complex
    raise InputError("target must be a module, a module complex or a complex of projectives")


@dataclass
class DerivedHom:
    hom: HomComplex
    dims: dict

    def sequence(self) -> LengthSequence:
        ns = sorted(self.dims)
        return LengthSequence(tuple(self.dims[n] for n in ns), ns[0])


def derived_hom(x, y, window: tuple) -> DerivedHom:
    """Dimensions of Hom_D(x, S^n y) for n in the window."""
    n0, n1 = window
    if n1 < n0:
        raise InputError("empty window")
    Y = as_target(y)
    depth = n1 + 1 - Y.lo + 1
    X = as_source(x, max(depth, 0))
    H = HomComplex(X, Y, n0, n1)
    return DerivedHom(H, H.fast_dims())


# annihilation and stable Hom -----------------------------------------------------


@dataclass
class AnnihilationReport:
    exponent: int
    window: tuple
    checks: list = field(default_factory=list)  # (element, side, degree, rank)

    @property
    def passed(self) -> bool:
        return all(r == 0 for *_, r in self.checks)

    def to_json(self) -> dict:
        return {"exponent": self.exponent, "window": list(self.window), "passed": self.passed,
                "checks": [{"element": e, "side": s, "degree": n, "rank": r} for e, s, n, r in self.checks]}


def verify_annihilation(kos: KoszulObject, y: Module, window: tuple, sides=("from", "to")) -> AnnihilationReport:
    """Check r_i^(2^n) acts as zero on Hom^*(X//r, y) and Hom^*(y, X//r)."""
    from .resolution import power
    n0, n1 = window
    s = 2 ** len(kos.elements)
    rep = AnnihilationReport(s, window)
    K = kos.complex
    yres = resolve(y, 1)
    for e in kos.elements:
        if e.resolution.module.digest != y.digest and "from" in sides:
            raise InputError("annihilation via the target side needs elements realized on y")
        D = s * e.degree
        if "from" in sides:
            # act through y: phi -> rho^s o phi, from t_{>= -D} P(y) to t_{>= 0} P(y) = y
            depth_y = D + 1
            Py = from_resolution(yres, depth_y)
            rs = power(e, s, depth_y)
            rho = realize(rs, Py)
            t_src, t_tgt = truncate(Py, -D), truncate(Py, 0)
            psi = truncate_map(rho, t_src, t_tgt)
            need = D + n1 + 2
            Kd = K if K.lo <= -need else None
            if Kd is None:
                raise InputError(f"Koszul object too shallow for window top {n1}")
            hs = HomComplex(K, t_src.complex, n0, n1)
            ht = HomComplex(K, t_tgt.complex, n0 + D, n1 + D)
            for n in range(n0, n1 + 1):
                r = induced_rank(hs, ht, post_map(hs, ht, psi, D, n), n, n + D)
                rep.checks.append((e.label, "from", n, r))
        if "to" in sides:
            Pfull = from_resolution(yres, n1 + D + 2 - truncate(K).level)
            rs = power(e, s, -Pfull.lo)
            rho = realize(rs, Pfull)
            tK = truncate(K).complex
            hs = HomComplex(Pfull, tK, n0, n1)
            ht = HomComplex(Pfull, tK, n0 + D, n1 + D)
            for n in range(n0, n1 + 1):
                r = induced_rank(hs, ht, pre_map(hs, ht, rho, n), n, n + D)
                rep.checks.append((e.label, "to", n, r))
    if not rep.passed:
        raise InvariantViolation(f"annihilation lemma violated: {rep.to_json()}")
    return rep


def stable_hom_dims(m: Module, n: Module, window: tuple) -> LengthSequence:
    """Ext dims on a positive window, read as stable Hom under a Gorenstein flag."""
    from .resolution import ext_dims
    n0, n1 = window
    if n0 < 1:
        raise InputError("stable window must start at degree >= 1")
    A = m.algebra
    dims = ext_dims(m, n, n1)[n0:]
    known = bool(A.flags.get("self_injective") or A.flags.get("gorenstein"))
    label = "stable (Gorenstein identification)" if known else "unverified identification"
    return LengthSequence(tuple(dims), n0, {"label": label, "source": m.label, "target": n.label})
