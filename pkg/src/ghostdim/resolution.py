"""Minimal projective resolutions, Ext groups, chain-map lifts.

A free module ``P = (+)_j A e_{v_j}`` is described by its generators
``(vertex, shift)``.  A map between free modules is stored as an *A-matrix*
``Y`` of shape ``(r_out, r_in, dim A)``: generator ``j`` of the source goes to
``sum_i Y[i, j]`` placed in slot ``i`` of the target, so that
``Y[i, j]`` lies in ``e_{v_j} A e_{v_i}`` and the map is right multiplication.
Local coordinates of ``P`` concatenate, slot by slot, the coordinates of
``A e_v`` from :attr:`Algebra.projective_bases`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import Algebra, Module, enveloping
from .errors import InputError, InvariantViolation, ResourceLimitError
from .exactla import Field, Solver, complement_columns, image_basis, kernel_basis, rank, solve

MAX_TERM_DIM = 20000


# free modules -----------------------------------------------------------------


@dataclass(frozen=True)
class FreeLayout:
    gens: tuple  # ((vertex, shift), ...)
    offsets: tuple
    dim: int
    degrees: np.ndarray

    @property
    def rank(self) -> int:
        return len(self.gens)


def layout(A: Algebra, gens) -> FreeLayout:
    gens = tuple((int(v), int(s)) for v, s in gens)
    offs, degs, pos = [], [], 0
    for v, s in gens:
        offs.append(pos)
        degs.append(A.projective_degrees[v] + s)
        pos += A.projective_bases[v].shape[1]
    d = np.concatenate(degs) if degs else np.zeros(0, dtype=int)
    return FreeLayout(gens, tuple(offs), pos, d)


def _slots(A: Algebra, L: FreeLayout, v: int) -> tuple:
    """Generator indices at vertex v and the flat coordinate index array."""
    q = A.projective_bases[v].shape[1]
    idx = [j for j, (w, _) in enumerate(L.gens) if w == v]
    flat = np.array([L.offsets[j] + t for j in idx for t in range(q)], dtype=int)
    return idx, flat


def amat_to_linear(A: Algebra, out: FreeLayout, inn: FreeLayout, Y: np.ndarray) -> np.ndarray:
    F = A.field
    mat = F.zeros((out.dim, inn.dim))
    if out.rank == 0 or inn.rank == 0:
        return mat
    for vi in range(A.num_vertices):
        I, rows = _slots(A, out, vi)
        if not I:
            continue
        for vj in range(A.num_vertices):
            J, cols = _slots(A, inn, vj)
            if not J:
                continue
            R = A.right_block(vi, vj)
            t = F.tensordot(Y[np.ix_(I, J)], R, ([2], [0]))  # I, J, qi, qj
            blk = t.transpose(0, 2, 1, 3).reshape(len(rows), len(cols))
            mat[np.ix_(rows, cols)] = blk
    return mat


def elements_to_amat(A: Algebra, out: FreeLayout, vecs: np.ndarray) -> np.ndarray:
    """Columns of local coordinates in ``out`` -> A-matrix (r_out, ncols, dim A)."""
    F = A.field
    k = vecs.shape[1]
    Y = F.zeros((out.rank, k, A.dim))
    for i, (v, _) in enumerate(out.gens):
        B = A.projective_bases[v]
        o = out.offsets[i]
        Y[i] = F.matmul(B, vecs[o:o + B.shape[1]]).T
    return Y


def amat_to_elements(A: Algebra, out: FreeLayout, Y: np.ndarray) -> np.ndarray:
    """Inverse of :func:`elements_to_amat`: columns of local coordinates."""
    F = A.field
    k = Y.shape[1]
    vecs = F.zeros((out.dim, k))
    for i, (v, _) in enumerate(out.gens):
        C = A.projective_coords[v]
        o = out.offsets[i]
        vecs[o:o + C.shape[0]] = F.matmul(C, Y[i].T)
    return vecs


def compose_amat(A: Algebra, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """A-matrix of ``g o f`` where f: P -> Q and g: Q -> R."""
    F = A.field
    if f.shape[0] == 0 or f.shape[1] == 0 or g.shape[0] == 0:
        return F.zeros((g.shape[0], f.shape[1], A.dim))
    t = F.tensordot(f, A.mult, ([2], [0]))  # i, j, b, c
    return F.tensordot(g, t, ([1, 2], [0, 2]))  # k, j, c


def act_on_free(A: Algebra, L: FreeLayout, x: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    """Left multiplication by the algebra element x on columns of P."""
    F = A.field
    out = F.zeros(vecs.shape)
    for v in range(A.num_vertices):
        idx, flat = _slots(A, L, v)
        if not idx:
            continue
        q = A.projective_bases[v].shape[1]
        m = F.tensordot(x, A.projective_action[v], ([0], [0]))  # q x q
        blk = vecs[flat].reshape(len(idx), q, -1)
        out[flat] = F.tensordot(m, blk, ([1], [1])).transpose(1, 0, 2).reshape(len(flat), -1)
    return out


def _blocks(degrees: np.ndarray) -> list:
    return [(t, np.flatnonzero(degrees == t)) for t in sorted(set(degrees.tolist()))]


def _graded_kernel(F: Field, mat: np.ndarray, row_deg, col_deg) -> np.ndarray:
    """Homogeneous kernel basis of a degree-preserving matrix."""
    pieces = []
    for t, cols in _blocks(col_deg):
        rows = np.flatnonzero(row_deg == t)
        sub = mat[np.ix_(rows, cols)] if rows.size else F.zeros((0, cols.size))
        kb = kernel_basis(F, sub)
        if kb.shape[1]:
            full = F.zeros((mat.shape[1], kb.shape[1]))
            full[cols] = kb
            pieces.append(full)
    return np.concatenate(pieces, axis=1) if pieces else F.zeros((mat.shape[1], 0))


def _choose_generators(A: Algebra, sub: np.ndarray, degrees: np.ndarray, act) -> tuple:
    """Minimal homogeneous generators of the submodule spanned by ``sub``.

    ``act(x, vecs)`` applies the algebra element x.  Returns (vectors, gens)
    with gens a list of (vertex, shift).
    """
    F = A.field
    n = sub.shape[0]
    if sub.shape[1] == 0:
        return F.zeros((n, 0)), []
    rgens = A.radical_generators
    rad = [act(rgens[:, i], sub) for i in range(rgens.shape[1])]
    radspan = np.concatenate(rad, axis=1) if rad else F.zeros((n, 0))
    cols, gens = [], []

    def homogeneous_split(m):
        if A.grading is None:
            return {0: m}
        out = {}
        for t, rows in _blocks(degrees):
            part = F.zeros(m.shape)
            part[rows] = m[rows]
            nz = np.any(part != 0, axis=0)
            if nz.any():
                out[t] = part[:, nz]
        return out

    sub_parts = homogeneous_split(sub)
    rad_parts = homogeneous_split(radspan) if radspan.shape[1] else {}
    for t in sorted(sub_parts):
        S = sub_parts[t]
        Rt = rad_parts.get(t, F.zeros((n, 0)))
        for v, e in enumerate(A.idempotents):
            if A.num_vertices == 1:
                S2, R2 = S, Rt
            else:
                S2, R2 = act(e, S), act(e, Rt) if Rt.shape[1] else Rt
            S2 = image_basis(F, S2)
            if S2.shape[1] == 0:
                continue
            R2 = image_basis(F, R2) if R2.shape[1] else R2
            idx = complement_columns(F, R2, S2)
            for c in idx:
                cols.append(S2[:, c])
                gens.append((v, int(t)))
    vec = np.array(cols, dtype=F.dtype).T if cols else F.zeros((n, 0))
    return vec, gens


# resolutions ------------------------------------------------------------------


@dataclass(eq=False)
class ProjResolution:
    module: Module
    gens: list = field(default_factory=list)  # per degree: list of (vertex, shift)
    diffs: list = field(default_factory=list)  # diffs[n] A-matrix of d_n, n >= 1 (diffs[0] None)
    augmentation: np.ndarray = None  # dim M x r_0: images of P_0 generators
    max_term_dim: int = MAX_TERM_DIM
    _lin: dict = field(default_factory=dict)
    _solvers: dict = field(default_factory=dict)
    _kernel: np.ndarray = None

    @property
    def algebra(self) -> Algebra:
        return self.module.algebra

    @property
    def field(self) -> Field:
        return self.module.field

    @property
    def computed_to(self) -> int:
        return len(self.gens) - 1

    def layout(self, n: int) -> FreeLayout:
        key = ("layout", n)
        if key not in self._lin:
            self._lin[key] = layout(self.algebra, self.gens[n])
        return self._lin[key]

    def betti(self) -> list:
        """Number of indecomposable summands of each P_n."""
        return [len(g) for g in self.gens]

    def multiplicities(self, n: int) -> list:
        counts = [0] * self.algebra.num_vertices
        for v, _ in self.gens[n]:
            counts[v] += 1
        return counts

    def term_lengths(self) -> list:
        """Length over k of each P_n."""
        return [self.layout(n).dim for n in range(len(self.gens))]

    def linear(self, n: int) -> np.ndarray:
        """Matrix of d_n : P_n -> P_{n-1} in local coordinates (n >= 1)."""
        key = ("d", n)
        if key not in self._lin:
            self._lin[key] = amat_to_linear(self.algebra, self.layout(n - 1), self.layout(n), self.diffs[n])
        return self._lin[key]

    def augmentation_linear(self) -> np.ndarray:
        key = ("eps",)
        if key not in self._lin:
            A, M, F = self.algebra, self.module, self.field
            L = self.layout(0)
            mat = F.zeros((M.dim, L.dim))
            for j, (v, _) in enumerate(L.gens):
                B = A.projective_bases[v]
                for t in range(B.shape[1]):
                    mat[:, L.offsets[j] + t] = F.matmul(M.act(B[:, t]), self.augmentation[:, j])
            self._lin[key] = mat
        return self._lin[key]

    def solver(self, n: int) -> Solver:
        if n not in self._solvers:
            m = self.augmentation_linear() if n == 0 else self.linear(n)
            self._solvers[n] = Solver(self.field, m)
        return self._solvers[n]

    # construction -----------------------------------------------------------

    def _start(self):
        A, M, F = self.algebra, self.module, self.field
        degrees = np.asarray(M.grading) if M.grading is not None else np.zeros(M.dim, dtype=int)
        if M.grading is None and A.grading is not None:
            # ungraded module over a graded algebra: treat everything as degree 0
            degrees = None
        full = F.eye(M.dim)
        if degrees is None:
            saved, A.grading = A.grading, None
            try:
                vecs, gens = _choose_generators(A, full, np.zeros(M.dim, dtype=int), lambda x, v: F.matmul(M.act(x), v))
            finally:
                A.grading = saved
            gens = [(v, 0) for v, _ in gens]
        else:
            vecs, gens = _choose_generators(A, full, degrees, lambda x, v: F.matmul(M.act(x), v))
        self.gens = [gens]
        self.diffs = [None]
        self.augmentation = vecs
        eps = self.augmentation_linear()
        self._kernel = self._kernel_of(eps, self.layout(0), degrees is not None and A.grading is not None,
                                       degrees)

    def _kernel_of(self, mat, L: FreeLayout, graded: bool, row_deg) -> np.ndarray:
        F = self.field
        if graded and self.algebra.grading is not None:
            return _graded_kernel(F, mat, np.asarray(row_deg), L.degrees)
        return kernel_basis(F, mat)

    @property
    def _graded(self) -> bool:
        return self.algebra.grading is not None and self.module.grading is not None

    def extend(self, n_max: int) -> "ProjResolution":
        A = self.algebra
        if not self.gens:
            self._start()
        while self.computed_to < n_max:
            n = self.computed_to + 1
            prev = self.layout(n - 1)
            K = self._kernel
            if self._graded:
                vecs, gens = _choose_generators(A, K, prev.degrees, lambda x, v: act_on_free(A, prev, x, v))
            else:
                saved, A.grading = A.grading, None
                try:
                    vecs, gens = _choose_generators(A, K, np.zeros(prev.dim, dtype=int),
                                                    lambda x, v: act_on_free(A, prev, x, v))
                finally:
                    A.grading = saved
                gens = [(v, 0) for v, _ in gens]
            new = layout(A, gens)
            if new.dim > self.max_term_dim:
                raise ResourceLimitError(
                    f"term P_{n} has dimension {new.dim} > cap {self.max_term_dim}")
            self.gens.append(gens)
            self.diffs.append(elements_to_amat(A, prev, vecs))
            d = self.linear(n)
            self._kernel = self._kernel_of(d, new, self._graded, prev.degrees)
        return self

    # invariant checks -------------------------------------------------------

    def check(self) -> dict:
        """Verify d o d = 0, exactness by ranks, and minimality; raise on failure."""
        A, F = self.algebra, self.field
        eps = self.augmentation_linear()
        if rank(F, eps) != self.module.dim:
            raise InvariantViolation("augmentation is not surjective")
        report = {"dd_zero": True, "exact": True, "minimal": True, "checked_to": self.computed_to}
        for n in range(1, self.computed_to + 1):
            d = self.linear(n)
            if n == 1:
                if not F.is_zero(F.matmul(eps, d)):
                    raise InvariantViolation("augmentation o d_1 != 0")
            elif not np.array_equal(compose_amat(A, self.diffs[n], self.diffs[n - 1]),
                                    F.zeros((len(self.gens[n - 2]), len(self.gens[n]), A.dim))):
                raise InvariantViolation(f"d o d != 0 at degree {n}")
            before = eps if n == 1 else self.linear(n - 1)
            # exactness at P_{n-1}: rank d_n = dim P_{n-1} - rank d_{n-1}, blockwise
            for t, cols in self._exact_blocks(n - 1):
                rows_prev = self._rows(n - 1, t, before)
                rk_before = rank(F, before[np.ix_(rows_prev, cols)]) if rows_prev.size else 0
                cols_n = np.flatnonzero(self._deg(n) == t)
                rk_d = rank(F, d[np.ix_(cols, cols_n)]) if cols_n.size else 0
                if rk_d != cols.size - rk_before:
                    raise InvariantViolation(f"resolution not exact at degree {n - 1}")
            if not self.is_minimal_at(n):
                raise InvariantViolation(f"differential d_{n} is not minimal")
        return report

    def _deg(self, n: int) -> np.ndarray:
        if self._graded:
            return self.layout(n).degrees
        return np.zeros(self.layout(n).dim, dtype=int)

    def _exact_blocks(self, n: int) -> list:
        return _blocks(self._deg(n))

    def _rows(self, n: int, t: int, before: np.ndarray) -> np.ndarray:
        if n == 0:
            if self._graded:
                return np.flatnonzero(np.asarray(self.module.grading) == t)
            return np.arange(before.shape[0])
        return np.flatnonzero(self._deg(n - 1) == t)

    def is_minimal_at(self, n: int) -> bool:
        A, F = self.algebra, self.field
        Y = self.diffs[n]
        if Y.size == 0:
            return True
        flat = Y.reshape(-1, A.dim).T
        return solve(F, A.radical, flat) is not None if A.radical.shape[1] else F.is_zero(flat)

    def periodicity_witness(self):
        """Return (m, period) with d_m == d_{m+period} as data, or None.

        Each step of :meth:`extend` is a deterministic function of the
        previous differential, so equal data at m and m+period repeats forever.
        """
        for per in range(1, self.computed_to):
            for m in range(1, self.computed_to - per + 1):
                if self._same(m, m + per):
                    return m, per
        return None

    def _same(self, a: int, b: int) -> bool:
        ga, gb = self.gens[a], self.gens[b]
        if len(ga) != len(gb) or len(self.gens[a - 1]) != len(self.gens[b - 1]):
            return False
        if [v for v, _ in ga] != [v for v, _ in gb]:
            return False
        if [v for v, _ in self.gens[a - 1]] != [v for v, _ in self.gens[b - 1]]:
            return False
        rel = lambda g: [s - (g[0][1] if g else 0) for _, s in g]  # noqa: E731
        if rel(ga) != rel(gb) or rel(self.gens[a - 1]) != rel(self.gens[b - 1]):
            return False
        return np.array_equal(self.diffs[a], self.diffs[b])


_CACHE: dict = {}


def clear_cache():
    _CACHE.clear()


def resolve(m: Module, n_max: int, max_term_dim: int | None = None) -> ProjResolution:
    """Minimal projective resolution of m through degree n_max (memoized)."""
    if n_max < 0:
        raise InputError("n_max must be >= 0")
    max_term_dim = MAX_TERM_DIM if max_term_dim is None else max_term_dim
    key = (m.algebra.digest, m.digest)
    res = _CACHE.get(key)
    if res is None or res.module is not m and res.module.digest != m.digest:
        res = ProjResolution(m, max_term_dim=max_term_dim)
        _CACHE[key] = res
    res.max_term_dim = max_term_dim
    for n in range(min(n_max, res.computed_to) + 1):
        if res.layout(n).dim > max_term_dim:
            raise ResourceLimitError(f"term P_{n} has dimension {res.layout(n).dim} > cap {max_term_dim}")
    return res.extend(n_max)


def projective_cover(m: Module):
    """(P, surjection matrix P -> m, generator list)."""
    res = ProjResolution(m).extend(0)
    return res.layout(0), res.augmentation_linear(), res.gens[0]


# Ext ------------------------------------------------------------------------


def hom_free_dim(L: FreeLayout, N: Module) -> int:
    return sum(N.vertex_bases[v].shape[1] for v, _ in L.gens)


def _hom_offsets(L: FreeLayout, N: Module) -> list:
    offs, pos = [], 0
    for v, _ in L.gens:
        offs.append(pos)
        pos += N.vertex_bases[v].shape[1]
    return offs


def precompose_matrix(A: Algebra, Y: np.ndarray, src: FreeLayout, tgt: FreeLayout, N: Module) -> np.ndarray:
    """Matrix of phi -> phi o f, Hom(tgt, N) -> Hom(src, N), for f: src -> tgt given by Y."""
    F = A.field
    rows, cols = hom_free_dim(src, N), hom_free_dim(tgt, N)
    mat = F.zeros((rows, cols))
    if rows == 0 or cols == 0:
        return mat
    T = F.tensordot(Y, N.action, ([2], [0]))  # i(tgt), j(src), dN, dN
    ro, co = _hom_offsets(src, N), _hom_offsets(tgt, N)
    for vj in range(A.num_vertices):
        J = [j for j, (w, _) in enumerate(src.gens) if w == vj]
        if not J:
            continue
        C = N.vertex_coords[vj]
        if C.shape[0] == 0:
            continue
        for vi in range(A.num_vertices):
            I = [i for i, (w, _) in enumerate(tgt.gens) if w == vi]
            if not I:
                continue
            B = N.vertex_bases[vi]
            if B.shape[1] == 0:
                continue
            blk = F.tensordot(F.tensordot(T[np.ix_(I, J)], B, ([3], [0])), C, ([2], [1]))  # I, J, qB, qC
            blk = blk.transpose(1, 3, 0, 2)  # J, qC, I, qB
            rr = np.concatenate([np.arange(ro[j], ro[j] + C.shape[0]) for j in J])
            cc = np.concatenate([np.arange(co[i], co[i] + B.shape[1]) for i in I])
            mat[np.ix_(rr, cc)] = blk.reshape(len(rr), len(cc))
    return mat


@dataclass(eq=False)
class ExtGroups:
    resolution: ProjResolution
    target: Module
    dims: list
    cocycles: list  # per degree: basis columns of representatives in Hom(P_n, N)
    coboundaries: list  # per degree: basis columns of B^n
    deltas: list  # deltas[n]: Hom(P_{n-1},N) -> Hom(P_n,N), n >= 1

    @property
    def source(self) -> Module:
        return self.resolution.module

    def coordinates(self, n: int, vecs: np.ndarray) -> np.ndarray:
        """Coordinates in the Ext^n basis of cocycles given as columns."""
        F = self.source.field
        basis = np.concatenate([self.cocycles[n], self.coboundaries[n]], axis=1)
        x = solve(F, basis, vecs)
        if x is None:
            raise InvariantViolation(f"vector is not a cocycle in degree {n}")
        return x[: self.dims[n]]


def ext(m: Module, n_mod: Module, n_max: int, res: ProjResolution | None = None) -> ExtGroups:
    """Ext^i_A(m, n_mod) for 0 <= i <= n_max, with cocycle bases."""
    res = res or resolve(m, n_max + 1)
    res.extend(n_max + 1)
    A, F = m.algebra, m.field
    deltas = [None]
    for k in range(1, n_max + 2):
        deltas.append(precompose_matrix(A, res.diffs[k], res.layout(k), res.layout(k - 1), n_mod))
    dims, cocycles, cobs = [], [], []
    for k in range(n_max + 1):
        hd = hom_free_dim(res.layout(k), n_mod)
        Z = kernel_basis(F, deltas[k + 1]) if deltas[k + 1].shape[0] else F.eye(hd)
        B = image_basis(F, deltas[k]) if k >= 1 else F.zeros((hd, 0))
        idx = complement_columns(F, B, Z)
        cocycles.append(Z[:, idx])
        cobs.append(B)
        dims.append(len(idx))
    return ExtGroups(res, n_mod, dims, cocycles, cobs, deltas)


def ext_dims(m: Module, n_mod: Module, n_max: int) -> list:
    """Ext dimensions only, by ranks of the Hom-complex differentials."""
    res = resolve(m, n_max + 1)
    A, F = m.algebra, m.field
    ranks = [0]
    for k in range(1, n_max + 2):
        ranks.append(rank(F, precompose_matrix(A, res.diffs[k], res.layout(k), res.layout(k - 1), n_mod)))
    return [hom_free_dim(res.layout(k), n_mod) - ranks[k] - ranks[k + 1] for k in range(n_max + 1)]


# chain maps and the Yoneda action -------------------------------------------


@dataclass(eq=False)
class CohomologyElement:
    """A class in Ext^d(M, M) with a lift f_i : P_{i+d} -> P_i (A-matrices)."""

    resolution: ProjResolution
    degree: int
    cocycle: np.ndarray  # images of P_d generators in M, shape (dim M, r_d)
    maps: list = field(default_factory=list)
    label: str = "r"

    @property
    def depth(self) -> int:
        return len(self.maps) - 1

    def extend(self, depth: int) -> "CohomologyElement":
        res, A, F = self.resolution, self.resolution.algebra, self.resolution.field
        d = self.degree
        res.extend(depth + d)
        while self.depth < depth:
            i = self.depth + 1
            src = res.layout(i + d)
            if i == 0:
                targets = self.cocycle
                sol = res.solver(0)
            else:
                comp = compose_amat(A, res.diffs[i + d], self.maps[i - 1])
                targets = amat_to_elements(A, res.layout(i - 1), comp)
                sol = res.solver(i)
            x = sol.solve(targets) if targets.shape[1] else F.zeros((res.layout(i).dim, 0))
            if x is None:
                raise InvariantViolation(f"chain map lift infeasible at stage {i}")
            # keep generator j's image inside e_{v_j} P_i
            tgt = res.layout(i)
            for j, (v, _) in enumerate(src.gens):
                if A.num_vertices > 1:
                    x[:, j] = act_on_free(A, tgt, A.idempotents[v], x[:, j:j + 1])[:, 0]
            self.maps.append(elements_to_amat(A, tgt, x))
        return self

    def check(self) -> None:
        res, A, F = self.resolution, self.resolution.algebra, self.resolution.field
        d = self.degree
        lhs = F.matmul(res.augmentation_linear(),
                       amat_to_elements(A, res.layout(0), self.maps[0])) if self.maps else None
        if lhs is not None and not np.array_equal(lhs, self.cocycle):
            raise InvariantViolation("f_0 does not induce the cocycle")
        for i in range(1, self.depth + 1):
            a = compose_amat(A, res.diffs[i + d], self.maps[i - 1])
            b = compose_amat(A, self.maps[i], res.diffs[i])
            if not np.array_equal(a, b):
                raise InvariantViolation(f"chain map does not commute at stage {i}")


def cocycle_to_images(g: ExtGroups, n: int, vec: np.ndarray) -> np.ndarray:
    """Hom(P_n, N) coordinate vector -> generator images in N (dim N x r_n)."""
    N = g.target
    L = g.resolution.layout(n)
    F = N.field
    out = F.zeros((N.dim, L.rank))
    for j, off in enumerate(_hom_offsets(L, N)):
        B = N.vertex_bases[L.gens[j][0]]
        out[:, j] = F.matmul(B, vec[off:off + B.shape[1]])
    return out


def element_from_class(g: ExtGroups, n: int, coords, depth: int = 0, label: str = "r") -> CohomologyElement:
    """Realize the class with the given Ext^n coordinates as a chain map."""
    if g.target.digest != g.source.digest:
        raise ValueError("chain-map lifts need classes in Ext(M, M)")
    F = g.source.field
    vec = F.matmul(g.cocycles[n], F.array(coords).reshape(-1, 1))[:, 0]
    e = CohomologyElement(g.resolution, n, cocycle_to_images(g, n, vec), label=label)
    return e.extend(depth)


def lift_to_chain_map(res: ProjResolution, degree: int, cocycle: np.ndarray, depth: int, label="r"):
    return CohomologyElement(res, degree, cocycle, label=label).extend(depth)


def identity_element(res: ProjResolution, depth: int = 0) -> CohomologyElement:
    return lift_to_chain_map(res, 0, res.augmentation.copy(), depth, label="1")


def compose_elements(e1: CohomologyElement, e2: CohomologyElement, depth: int) -> CohomologyElement:
    """Chain map e1 o e2 (shifted): f_i = f1_i o f2_{i+d1}; it lifts the product."""
    A = e1.resolution.algebra
    d1, d2 = e1.degree, e2.degree
    e1.extend(depth + d2)
    e2.extend(depth + d1)
    maps = [compose_amat(A, e2.maps[i + d1], e1.maps[i]) for i in range(depth + 1)]
    res = e1.resolution
    F = res.field
    cocycle = F.matmul(res.augmentation_linear(), amat_to_elements(A, res.layout(0), maps[0]))
    out = CohomologyElement(res, d1 + d2, cocycle, maps, label=f"{e1.label}*{e2.label}")
    return out


def power(e: CohomologyElement, s: int, depth: int) -> CohomologyElement:
    if s < 1:
        raise ValueError("power exponent must be >= 1")
    out = e.extend(depth + (s - 1) * e.degree)
    for _ in range(s - 1):
        out = compose_elements(out, e, depth + (s - 1) * e.degree - out.degree)
    out.label = f"{e.label}^{s}"
    return out


def yoneda_act(e: CohomologyElement, g: ExtGroups, n_max: int | None = None) -> dict:
    """Matrices Ext^n(M, N) -> Ext^{n+d}(M, N), phi -> phi o f_n."""
    res, A = g.resolution, g.source.algebra
    d = e.degree
    top = len(g.dims) - 1 - d if n_max is None else n_max
    e.extend(top)
    out = {}
    for n in range(0, top + 1):
        P = precompose_matrix(A, e.maps[n], res.layout(n + d), res.layout(n), g.target)
        moved = g.source.field.matmul(P, g.cocycles[n])
        out[n] = g.coordinates(n + d, moved)
    return out


# Hochschild -------------------------------------------------------------------


def hochschild_dims(A: Algebra, n_max: int, limit: int = 100) -> list:
    """dim HH^n(A) = dim Ext^n over A (x) A^op of (A, A)."""
    Ae, M = enveloping(A, limit=limit)
    return ext_dims(M, M, n_max)
