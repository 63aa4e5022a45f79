"""Finite-dimensional basic algebras over prime fields and their modules.

An :class:`Algebra` is stored by structure constants ``mult[i, j] = b_i b_j``
together with a declared (and verified) radical basis and a complete set of
primitive orthogonal idempotents.  Only split basic algebras are handled:
``A/rad`` must be a product of copies of the ground field, one per idempotent.

Left modules carry one action matrix per basis element of the algebra.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InputError, InvariantViolation, ResourceLimitError
from .exactla import Field, complement_columns, image_basis, kernel_basis, rank, rref, solve

ENVELOPING_DIM_LIMIT = 100


def _digest(*parts) -> str:
    h = hashlib.sha256()
    for part in parts:
        if isinstance(part, np.ndarray):
            h.update(repr(part.shape).encode())
            h.update(",".join(str(x) for x in part.ravel()).encode())
        else:
            h.update(repr(part).encode())
        h.update(b"|")
    return h.hexdigest()


def homogeneous_image_basis(F: Field, mat: np.ndarray, degrees) -> np.ndarray:
    """Column-space basis of a degree-preserving map, chosen homogeneous."""
    if degrees is None:
        return image_basis(F, mat)
    degrees = np.asarray(degrees)
    cols = []
    for t in sorted(set(degrees.tolist())):
        rows = np.flatnonzero(degrees == t)
        b = image_basis(F, mat[rows][:, degrees == t])
        if b.shape[1]:
            full = F.zeros((mat.shape[0], b.shape[1]))
            full[rows] = b
            cols.append(full)
    if not cols:
        return F.zeros((mat.shape[0], 0))
    return np.concatenate(cols, axis=1)


@dataclass(eq=False)
class Algebra:
    field: Field
    mult: np.ndarray
    unit: np.ndarray
    radical: np.ndarray
    idempotents: list
    labels: list = None
    grading: np.ndarray | None = None
    name: str = "algebra"
    flags: dict = field(default_factory=dict)
    vertex_names: list = None

    def __post_init__(self):
        n = self.mult.shape[0]
        if n < 1:
            raise InputError("algebra must have dimension at least 1")
        if self.mult.shape != (n, n, n):
            raise InputError("structure constants must have shape (dim, dim, dim)")
        if self.labels is None:
            self.labels = [f"b{i}" for i in range(n)]
        if self.vertex_names is None:
            self.vertex_names = [str(i) for i in range(len(self.idempotents))]
        self.radical = np.asarray(self.radical, dtype=self.field.dtype).reshape(n, -1)

    # basic data -----------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    @property
    def num_vertices(self) -> int:
        return len(self.idempotents)

    @cached_property
    def digest(self) -> str:
        return _digest(
            self.field.p, self.mult, self.unit, self.radical,
            np.array(self.idempotents) if self.idempotents else 0,
            self.grading if self.grading is not None else "ungraded",
        )

    @cached_property
    def left(self) -> np.ndarray:
        """``left[b]`` is the matrix of x -> b_b x."""
        return np.ascontiguousarray(np.transpose(self.mult, (0, 2, 1)))

    @cached_property
    def right(self) -> np.ndarray:
        """``right[b]`` is the matrix of x -> x b_b."""
        return np.ascontiguousarray(np.transpose(self.mult, (1, 2, 0)))

    def mul(self, x, y) -> np.ndarray:
        F = self.field
        return F.tensordot(F.tensordot(x, self.mult, ([0], [0])), y, ([0], [0]))

    def left_matrix(self, x) -> np.ndarray:
        return self.field.tensordot(x, self.left, ([0], [0]))

    def right_matrix(self, x) -> np.ndarray:
        return self.field.tensordot(x, self.right, ([0], [0]))

    def basis_vector(self, i) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = 1
        return v

    # validation -----------------------------------------------------------

    def validate(self) -> "Algebra":
        self.check_associative()
        self.check_unit()
        self.check_grading()
        self.check_radical()
        self.check_idempotents()
        return self

    def check_associative(self):
        F, m, n = self.field, self.mult, self.dim
        for i in range(n):
            # (b_i b_j) b_k  vs  b_i (b_j b_k)
            lhs = F.tensordot(m[i], m, ([1], [0]))  # j, k, out
            rhs = F.tensordot(m, m[i], ([2], [0]))  # j, k, out
            bad = np.argwhere(np.any(lhs != rhs, axis=2))
            if bad.size:
                j, k = (int(x) for x in bad[0])
                raise InvariantViolation(
                    f"associativity fails on basis triple ({i},{j},{k}) "
                    f"= ({self.labels[i]},{self.labels[j]},{self.labels[k]})"
                )

    def check_unit(self):
        F = self.field
        one = F.eye(self.dim)
        if not (np.array_equal(self.left_matrix(self.unit), one)
                and np.array_equal(self.right_matrix(self.unit), one)):
            raise InvariantViolation("unit laws fail for the declared unit")

    def check_grading(self):
        if self.grading is None:
            return
        g = np.asarray(self.grading)
        for i, j, k in np.argwhere(self.mult != 0):
            if g[k] != g[i] + g[j]:
                raise InvariantViolation(
                    f"grading not multiplicative on ({i},{j}) -> {k}"
                )

    def check_radical(self):
        F = self.field
        r = self.radical
        k = r.shape[1]
        if k:
            span = rank(F, r)
            if span != k:
                raise InvariantViolation("radical basis is linearly dependent")
            for b in range(self.dim):
                prods = np.concatenate([F.matmul(self.left[b], r), F.matmul(self.right[b], r)], axis=1)
                if rank(F, np.concatenate([r, prods], axis=1)) != k:
                    raise InvariantViolation(
                        f"declared radical is not a two-sided ideal (fails for {self.labels[b]})"
                    )
        # nilpotent: powers shrink to zero
        self.loewy_length()

    def check_idempotents(self):
        F = self.field
        es = self.idempotents
        if not es:
            raise InputError("at least one idempotent is required")
        total = F.reduce(np.sum(np.array(es, dtype=F.dtype), axis=0)) if F.p else sum(es)
        if not np.array_equal(np.asarray(total), np.asarray(self.unit)):
            raise InvariantViolation("idempotents do not sum to the unit")
        for a, ea in enumerate(es):
            for b, eb in enumerate(es):
                prod = self.mul(ea, eb)
                want = ea if a == b else F.zeros(self.dim)
                if not np.array_equal(prod, want):
                    raise InvariantViolation(f"idempotents {a},{b} are not orthogonal idempotents")
        if self.dim - self.radical.shape[1] != len(es):
            raise InvariantViolation(
                "A/rad is not split basic: dim A - dim rad must equal the number of idempotents"
            )
        stacked = np.concatenate([self.radical, np.array(es, dtype=F.dtype).T], axis=1)
        if rank(F, stacked) != self.dim:
            raise InvariantViolation("idempotents do not span A modulo the radical")

    # radical structure ----------------------------------------------------

    def _products(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Columns spanning span(a) * span(b)."""
        F = self.field
        if a.shape[1] == 0 or b.shape[1] == 0:
            return F.zeros((self.dim, 0))
        # sum_ij a_i b_j mult[i, j, :]
        t = F.tensordot(a, self.mult, ([0], [0]))  # ka, j, out
        t = F.tensordot(t, b, ([1], [0]))  # ka, out, kb
        return np.transpose(t, (1, 0, 2)).reshape(self.dim, -1)

    def radical_powers(self) -> list:
        """Bases of rad^0 = A, rad^1, rad^2, ... down to (excluding) zero."""
        F = self.field
        pows = [F.eye(self.dim)]
        cur = self.radical
        while cur.shape[1]:
            if len(pows) > self.dim + 1:
                raise InvariantViolation("declared radical is not nilpotent")
            pows.append(cur)
            cur = image_basis(F, self._products(cur, self.radical))
        return pows

    def loewy_length(self) -> int:
        return len(self.radical_powers())

    @cached_property
    def radical_generators(self) -> np.ndarray:
        """Homogeneous elements of rad whose classes form a basis of rad/rad^2."""
        F = self.field
        r = self.radical
        if r.shape[1] == 0:
            return r
        r2 = image_basis(F, self._products(r, r))
        idx = complement_columns(F, r2, r)
        gens = r[:, idx]
        if self.grading is not None:
            # radical bases in use are coordinate vectors, hence homogeneous
            for c in range(gens.shape[1]):
                degs = {int(self.grading[i]) for i in np.flatnonzero(gens[:, c])}
                if len(degs) > 1:
                    raise InvariantViolation("radical generators are not homogeneous")
        return gens

    def generator_degree(self, x) -> int:
        if self.grading is None:
            return 0
        nz = np.flatnonzero(x)
        return int(self.grading[nz[0]]) if nz.size else 0

    # projective indecomposables A e_v -------------------------------------

    @cached_property
    def projective_bases(self) -> list:
        """Per vertex v: homogeneous basis (columns) of A e_v inside A."""
        F = self.field
        return [homogeneous_image_basis(F, self.right_matrix(e), self.grading) for e in self.idempotents]

    @cached_property
    def projective_coords(self) -> list:
        """Per vertex: matrix sending an element of A e_v to local coordinates."""
        F = self.field
        out = []
        for b in self.projective_bases:
            r, piv = rref(F, b.T)
            c = F.zeros((b.shape[1], self.dim))
            for i, pc in enumerate(piv):
                c[i, pc] = 1
            # b is in column-echelon form, so pivot rows read off coordinates
            sel = F.matmul(c, b)
            inv = solve(F, sel, F.eye(b.shape[1]))
            out.append(F.matmul(inv, c))
        return out

    @cached_property
    def projective_degrees(self) -> list:
        out = []
        for b in self.projective_bases:
            if self.grading is None:
                out.append(np.zeros(b.shape[1], dtype=int))
            else:
                out.append(np.array([self.generator_degree(b[:, i]) for i in range(b.shape[1])], dtype=int))
        return out

    @cached_property
    def projective_action(self) -> list:
        """Per vertex: array (dim, q, q); left action of each basis element on A e_v."""
        F = self.field
        out = []
        for b, c in zip(self.projective_bases, self.projective_coords):
            t = F.tensordot(self.left, b, ([2], [0]))  # basis, n, q
            out.append(F.tensordot(t, c, ([1], [1])).transpose(0, 2, 1))
        return out

    def right_block(self, vi: int, vj: int) -> np.ndarray:
        """Array (dim, q_i, q_j): for y in e_vj A e_vi, x -> x y from A e_vj to A e_vi."""
        key = (vi, vj)
        cache = self.__dict__.setdefault("_right_blocks", {})
        if key not in cache:
            F = self.field
            bj = self.projective_bases[vj]
            ci = self.projective_coords[vi]
            t = F.tensordot(self.right, bj, ([2], [0]))  # dim, n, q_j
            cache[key] = F.tensordot(ci, t, ([1], [1])).transpose(1, 0, 2)
        return cache[key]

    # centre ---------------------------------------------------------------

    def center_basis(self) -> np.ndarray:
        F = self.field
        blocks = [F.reduce(self.right[b] - self.left[b]) for b in range(self.dim)]
        return kernel_basis(F, np.concatenate(blocks, axis=0))

    def is_semisimple(self) -> bool:
        return self.radical.shape[1] == 0

    def describe(self) -> dict:
        return {
            "name": self.name,
            "field": str(self.field),
            "characteristic": self.field.p,
            "dim": self.dim,
            "loewy_length": self.loewy_length(),
            "radical_dim": int(self.radical.shape[1]),
            "vertices": list(self.vertex_names),
            "graded": self.grading is not None,
            "digest": self.digest,
        }


@dataclass(eq=False)
class Module:
    algebra: Algebra
    action: np.ndarray
    label: str = "M"
    grading: np.ndarray | None = None

    def __post_init__(self):
        A = self.algebra
        self.action = np.asarray(self.action, dtype=A.field.dtype)
        if self.action.ndim != 3 or self.action.shape[0] != A.dim:
            raise InputError("module action must have shape (dim A, d, d)")
        if self.grading is not None and A.grading is None:
            self.grading = None
        if self.grading is not None and len(self.grading) != self.action.shape[1]:
            raise InputError("module grading must have one degree per basis vector")

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def field(self) -> Field:
        return self.algebra.field

    @cached_property
    def digest(self) -> str:
        return _digest(self.algebra.digest, self.action,
                       self.grading if self.grading is not None else "ungraded")

    def act(self, x) -> np.ndarray:
        """Matrix by which the algebra element ``x`` acts."""
        return self.field.tensordot(x, self.action, ([0], [0]))

    def validate(self) -> "Module":
        F, A = self.field, self.algebra
        if not np.array_equal(self.act(A.unit), F.eye(self.dim)):
            raise InvariantViolation(f"unit does not act as identity on {self.label}")
        lhs = F.tensordot(self.action, self.action, ([2], [1])).transpose(0, 2, 1, 3)
        rhs = F.tensordot(A.mult, self.action, ([2], [0]))
        bad = np.argwhere(np.any(lhs != rhs, axis=(2, 3)))
        if bad.size:
            i, j = (int(x) for x in bad[0])
            raise InvariantViolation(f"module axiom fails on basis pair ({i},{j}) for {self.label}")
        if self.grading is not None:
            g, ag = np.asarray(self.grading), np.asarray(A.grading)
            for b, r, c in np.argwhere(self.action != 0):
                if g[r] != g[c] + ag[b]:
                    raise InvariantViolation(f"module grading not compatible for {self.label}")
        return self

    @cached_property
    def vertex_bases(self) -> list:
        """Per vertex v: homogeneous basis of e_v M (columns)."""
        F = self.field
        return [homogeneous_image_basis(F, self.act(e), self.grading) for e in self.algebra.idempotents]

    @cached_property
    def vertex_coords(self) -> list:
        F = self.field
        out = []
        for b in self.vertex_bases:
            if b.shape[1] == 0:
                out.append(F.zeros((0, self.dim)))
                continue
            r, piv = rref(F, b.T)
            c = F.zeros((b.shape[1], self.dim))
            for i, pc in enumerate(piv):
                c[i, pc] = 1
            inv = solve(F, F.matmul(c, b), F.eye(b.shape[1]))
            out.append(F.matmul(inv, c))
        return out

    def top_multiplicities(self) -> list:
        F = self.field
        rad = radical_submodule_basis(self)
        mult = []
        for b in self.vertex_bases:
            both = np.concatenate([rad, b], axis=1)
            mult.append(rank(F, both) - rank(F, rad) if rad.shape[1] else rank(F, b))
        return mult


# module constructions -----------------------------------------------------


def radical_submodule_basis(m: Module) -> np.ndarray:
    F, A = m.field, m.algebra
    gens = A.radical_generators
    if gens.shape[1] == 0 or m.dim == 0:
        return F.zeros((m.dim, 0))
    mats = [m.act(gens[:, i]) for i in range(gens.shape[1])]
    return homogeneous_image_basis(F, np.concatenate(mats, axis=1), None) if m.grading is None else \
        _graded_span(F, mats, m, gens)


def _graded_span(F, mats, m, gens):
    A = m.algebra
    cols = np.concatenate(mats, axis=1)
    # image of a homogeneous map of degree deg(a) keeps homogeneous pieces apart
    degs = np.asarray(m.grading)
    pieces = []
    for t in sorted(set(degs.tolist())):
        rows = np.flatnonzero(degs == t)
        b = image_basis(F, cols[rows])
        if b.shape[1]:
            full = F.zeros((m.dim, b.shape[1]))
            full[rows] = b
            pieces.append(full)
    del A, gens
    return np.concatenate(pieces, axis=1) if pieces else F.zeros((m.dim, 0))


def regular_module(A: Algebra) -> Module:
    return Module(A, A.left.copy(), label="A", grading=None if A.grading is None else np.array(A.grading))


def simple_module(A: Algebra, v: int) -> Module:
    F = A.field
    basis = np.concatenate([np.array(A.idempotents, dtype=F.dtype).T, A.radical], axis=1)
    coords = solve(F, basis, F.eye(A.dim))
    action = F.zeros((A.dim, 1, 1))
    action[:, 0, 0] = coords[v]
    grading = None if A.grading is None else np.zeros(1, dtype=int)
    return Module(A, action, label=f"S_{A.vertex_names[v]}", grading=grading)


def submodule(m: Module, basis: np.ndarray, label: str | None = None, grading=None) -> Module:
    F = m.field
    k = basis.shape[1]
    acted = F.tensordot(m.action, basis, ([2], [0]))  # dimA, d, k
    flat = np.transpose(acted, (1, 0, 2)).reshape(m.dim, -1)
    x = solve(F, basis, flat)
    if x is None:
        raise InvariantViolation("subspace is not a submodule")
    action = x.reshape(k, m.algebra.dim, k).transpose(1, 0, 2)
    return Module(m.algebra, action, label=label or f"sub({m.label})", grading=grading)


def quotient_module(m: Module, sub: np.ndarray, label: str | None = None) -> Module:
    F, n = m.field, m.dim
    sub = np.asarray(sub, dtype=F.dtype).reshape(n, -1)
    idx = complement_columns(F, sub, F.eye(n))
    comp = F.eye(n)[:, idx]
    full = np.concatenate([sub, comp], axis=1)
    coords = solve(F, full, F.eye(n))  # rows: coordinates in [sub | comp]
    proj = coords[sub.shape[1]:]  # n -> quotient
    acted = F.tensordot(m.action, comp, ([2], [0]))
    action = F.tensordot(proj, acted, ([1], [1])).transpose(1, 0, 2)
    grading = None
    if m.grading is not None:
        grading = np.array([m.grading[i] for i in idx], dtype=int)
    return Module(m.algebra, action, label=label or f"{m.label}/sub", grading=grading)


def simple_top(A: Algebra) -> Module:
    reg = regular_module(A)
    top = quotient_module(reg, A.radical, label="A/r")
    return top


def radical_module(A: Algebra) -> Module:
    reg = regular_module(A)
    g = None
    if A.grading is not None:
        g = np.array([A.generator_degree(A.radical[:, i]) for i in range(A.radical.shape[1])], dtype=int)
    return submodule(reg, A.radical, label="rad A", grading=g)


def direct_sum(*mods: Module) -> Module:
    A = mods[0].algebra
    F = A.field
    n = sum(m.dim for m in mods)
    action = F.zeros((A.dim, n, n))
    off = 0
    for m in mods:
        action[:, off:off + m.dim, off:off + m.dim] = m.action
        off += m.dim
    graded = all(m.grading is not None for m in mods)
    grading = np.concatenate([np.asarray(m.grading) for m in mods]) if graded and mods else None
    return Module(A, action, label=" + ".join(m.label for m in mods), grading=grading)


def hom_dimension(m: Module, n: Module) -> int:
    """dim Hom_A(M, N), solved directly from the intertwining equations."""
    F = m.field
    dm, dn = m.dim, n.dim
    if dm == 0 or dn == 0:
        return 0
    blocks = []
    for b in range(m.algebra.dim):
        # vec_r(X Lm) - vec_r(Ln X)
        blocks.append(F.reduce(np.kron(F.eye(dn), m.action[b].T) - np.kron(n.action[b], F.eye(dm))))
    sysm = np.concatenate(blocks, axis=0)
    return dn * dm - rank(F, sysm)


# quivers ------------------------------------------------------------------


@dataclass
class QuiverPresentation:
    vertices: list
    arrows: list  # (name, source, target)
    relations: list  # each a list of (coeff, [arrow names]) terms
    characteristic: int = 2
    path_length_bound: int = 12
    name: str = "quiver algebra"


def _parse_path(term) -> tuple:
    if isinstance(term, str):
        return tuple(t for t in term.replace(" ", "*").split("*") if t)
    return tuple(term)


def from_quiver(pres: QuiverPresentation) -> Algebra:
    """Path algebra modulo an admissible ideal, with a path basis."""
    F = Field(pres.characteristic)
    verts = list(pres.vertices)
    vidx = {v: i for i, v in enumerate(verts)}
    if len(vidx) != len(verts):
        raise InputError("duplicate vertex names")
    arrows = []
    aidx = {}
    for a in pres.arrows:
        name, s, t = a
        if s not in vidx or t not in vidx:
            raise InputError(f"arrow {name} uses an unknown vertex")
        if name in aidx:
            raise InputError(f"duplicate arrow name {name}")
        aidx[name] = len(arrows)
        arrows.append((vidx[s], vidx[t]))

    def path_ends(path):
        return arrows[path[0]][0], arrows[path[-1]][1]

    rels = []
    for ri, rel in enumerate(pres.relations):
        terms = {}
        ends = set()
        for coeff, word in rel:
            word = _parse_path(word)
            if len(word) < 2:
                raise InputError(f"relation {ri} is not admissible: contains a path of length < 2")
            try:
                path = tuple(aidx[w] for w in word)
            except KeyError as e:
                raise InputError(f"relation {ri} uses unknown arrow {e.args[0]}") from None
            for x, y in zip(path, path[1:]):
                if arrows[x][1] != arrows[y][0]:
                    raise InputError(f"relation {ri} contains a non-composable path {word}")
            ends.add(path_ends(path))
            terms[path] = (terms.get(path, 0) + F.scalar(coeff)) % F.p if F.p else terms.get(path, 0) + F.scalar(coeff)
        terms = {p: c for p, c in terms.items() if c != 0}
        if len(ends) > 1:
            raise InputError(f"relation {ri} is not admissible: terms do not share source and target")
        if terms:
            rels.append(terms)

    homogeneous = all(len({len(p) for p in r}) == 1 for r in rels)

    # paths of each length, stored as (source, arrows) with target
    by_len = [[(v, ()) for v in range(len(verts))]]

    def target(path):
        v, arr = path
        return arrows[arr[-1]][1] if arr else v

    def key(path):
        return (len(path[1]), path[1], path[0])

    bound = pres.path_length_bound
    for L in range(1, bound + 2):
        nxt = []
        for p in by_len[-1]:
            t = target(p)
            for ai, (s, _) in enumerate(arrows):
                if s == t:
                    nxt.append((p[0], p[1] + (ai,)))
        by_len.append(sorted(nxt, key=key))

        # quotient by I + J^(L+1) restricted to paths of length <= L
        all_paths = [p for level in by_len for p in level]
        col_order = sorted(all_paths, key=key, reverse=True)
        col = {p: i for i, p in enumerate(col_order)}
        rows = []
        for rel in rels:
            rl = min(len(p) for p in rel)
            rs = arrows[next(iter(rel))[0]][0]
            rt = arrows[next(iter(rel))[-1]][1]
            for lu in range(0, L - rl + 1):
                for u in by_len[lu]:
                    if target(u) != rs:
                        continue
                    for lw in range(0, L - rl - lu + 1):
                        for w in by_len[lw]:
                            if w[0] != rt:
                                continue
                            row = F.zeros(len(col_order))
                            nonzero = False
                            for p, c in rel.items():
                                full = u[1] + p + w[1]
                                if len(full) <= L:
                                    row[col[(u[0] if u[1] else rs, full)]] = c
                                    nonzero = True
                            if nonzero:
                                rows.append(row)
        if rows:
            rmat, piv = rref(F, np.array(rows, dtype=F.dtype))
        else:
            rmat, piv = F.zeros((0, len(col_order))), []
        pivset = set(piv)
        top_alive = any(col[p] not in pivset for p in by_len[L])
        if not arrows or not top_alive:
            break
    else:
        raise InputError("not finite-dimensional below bound "
                         f"(paths of length {bound + 1} survive the relations)")

    # basis: surviving paths of length < L, ascending length-lex order
    basis = sorted([p for p in all_paths if col[p] not in pivset and len(p[1]) < L], key=key)
    bidx = {p: i for i, p in enumerate(basis)}
    n = len(basis)
    piv_row = {c: i for i, c in enumerate(piv)}

    def normal_form(path) -> np.ndarray:
        v = F.zeros(n)
        if len(path[1]) >= L:
            return v
        if path in bidx:
            v[bidx[path]] = 1
            return v
        row = rmat[piv_row[col[path]]]
        for q in basis:
            c = row[col[q]]
            if c != 0:
                v[bidx[q]] = F.reduce(-c)
        return v

    mult = F.zeros((n, n, n))
    for i, p in enumerate(basis):
        for j, q in enumerate(basis):
            if target(p) != q[0]:
                continue
            if not p[1]:
                mult[i, j] = normal_form(q)
            elif not q[1]:
                mult[i, j] = normal_form(p)
            else:
                mult[i, j] = normal_form((p[0], p[1] + q[1]))
    unit = F.zeros(n)
    idems = []
    for v in range(len(verts)):
        e = F.zeros(n)
        e[bidx[(v, ())]] = 1
        idems.append(e)
        unit[bidx[(v, ())]] = 1
    rad_idx = [i for i, p in enumerate(basis) if p[1]]
    radical = F.eye(n)[:, rad_idx]
    names = [verts[p[0]] if not p[1] else "*".join(pres.arrows[a][0] for a in p[1]) for p in basis]
    names = [f"e_{x}" if not p[1] else x for x, p in zip(names, basis)]
    grading = np.array([len(p[1]) for p in basis], dtype=int) if homogeneous else None
    alg = Algebra(F, mult, unit, radical, idems, labels=names, grading=grading,
                  name=pres.name, vertex_names=[str(v) for v in verts])
    alg.flags.setdefault("presentation", "quiver")
    return alg.validate()


def from_structure(spec: dict) -> Algebra:
    """Algebra from raw structure constants with a declared radical witness."""
    try:
        p = int(spec.get("characteristic", spec.get("char", 2)))
        F = Field(p)
        sc = spec["structure_constants"]
        mult = F.array(sc)
        n = mult.shape[0]
        unit = F.array(spec["unit"])
        rad = F.array(spec.get("radical_basis", [])).reshape(-1, n).T
    except (KeyError, TypeError) as e:
        raise InputError(f"structure description is missing or malformed: {e}") from None
    if mult.shape != (n, n, n):
        raise InputError("structure_constants must be a dim x dim x dim array")
    idems = spec.get("idempotents")
    if idems is None:
        if n - rad.shape[1] != 1:
            raise InputError("idempotents must be declared when A/rad has dimension > 1")
        idems = [unit]
    else:
        idems = [F.array(e) for e in idems]
    grading = spec.get("grading")
    alg = Algebra(F, mult, unit, image_basis(F, rad) if rad.shape[1] else rad, idems,
                  labels=spec.get("labels"), grading=None if grading is None else np.array(grading, dtype=int),
                  name=spec.get("name", "structure algebra"))
    alg.flags.setdefault("presentation", "structure")
    return alg.validate()


# presets ------------------------------------------------------------------


def _loop_presentation(gens: list, relations: list, p: int, name: str, bound: int) -> QuiverPresentation:
    return QuiverPresentation(vertices=["v"], arrows=[(g, "v", "v") for g in gens],
                              relations=relations, characteristic=p, name=name,
                              path_length_bound=bound)


def exterior(d: int, p: int = 2) -> Algebra:
    if d < 1:
        raise InputError("exterior algebra needs rank >= 1")
    gens = [f"x{i + 1}" for i in range(d)]
    rels = [[(1, [g, g])] for g in gens]
    rels += [[(1, [a, b]), (1, [b, a])] for a, b in itertools.combinations(gens, 2)]
    A = from_quiver(_loop_presentation(gens, rels, p, f"exterior({d},{p})", d + 2))
    A.flags.update(self_injective=True, noetherian_source="preset-theorem",
                   noetherian_reason="exterior algebra: Ext(k,k) is a polynomial ring (Koszul dual)",
                   local=True, preset="exterior", preset_params=[d, p])
    if p == 2:
        A.flags.update(group_algebra={"p": 2, "rank": d})
    return A


def truncated_poly(exponents: list, p: int = 2) -> Algebra:
    exponents = list(exponents)
    if not exponents or any(e < 2 for e in exponents):
        raise InputError("truncated_poly needs exponents >= 2")
    gens = [f"x{i + 1}" for i in range(len(exponents))]
    rels = [[(1, [g] * e)] for g, e in zip(gens, exponents)]
    rels += [[(1, [a, b]), (-1, [b, a])] for a, b in itertools.combinations(gens, 2)]
    top = sum(e - 1 for e in exponents)
    A = from_quiver(_loop_presentation(gens, rels, p, f"truncated_poly({exponents},{p})", top + 2))
    A.flags.update(self_injective=True, noetherian_source="preset-theorem",
                   noetherian_reason="complete intersection: Ext is finite over a polynomial ring of operators",
                   complete_intersection={"codim": len(exponents)}, local=True,
                   preset="truncated_poly", preset_params=[exponents, p])
    return A


def elem_abelian_group(p: int, rank_: int) -> Algebra:
    if rank_ < 1:
        raise InputError("rank must be >= 1")
    from .exactla import is_prime
    if not is_prime(p):
        raise InputError(f"p must be prime, got {p}")
    A = truncated_poly([p] * rank_, p)
    A.name = f"elem_abelian({p},{rank_})"
    A.flags.update(group_algebra={"p": p, "rank": rank_}, preset="elem_abelian", preset_params=[p, rank_],
                   noetherian_reason="group algebra: cohomology is finitely generated (Friedlander-Suslin)")
    return A


def nilpotent_loop(n: int, p: int = 2) -> Algebra:
    if n < 2:
        raise InputError("nilpotent_loop needs n >= 2")
    A = from_quiver(_loop_presentation(["x"], [[(1, ["x"] * n)]], p, f"nilpotent_loop({n},{p})", n + 1))
    A.flags.update(self_injective=True, noetherian_source="preset-theorem",
                   noetherian_reason="k[x]/(x^n) is a complete intersection of codimension 1",
                   complete_intersection={"codim": 1}, local=True, preset="nilpotent_loop", preset_params=[n, p])
    return A


def semisimple(m: int = 1, p: int = 2) -> Algebra:
    if m < 1:
        raise InputError("semisimple needs m >= 1")
    A = from_quiver(QuiverPresentation([f"v{i}" for i in range(m)], [], [], p, name=f"semisimple({m},{p})"))
    A.flags.update(self_injective=True, noetherian_source="preset-theorem",
                   noetherian_reason="semisimple: Ext vanishes in positive degrees",
                   preset="semisimple", preset_params=[m, p])
    return A


def linear_quiver(n: int = 2, p: int = 2) -> Algebra:
    if n < 1:
        raise InputError("linear quiver needs n >= 1")
    verts = [str(i + 1) for i in range(n)]
    arrows = [(f"a{i + 1}", verts[i], verts[i + 1]) for i in range(n - 1)]
    A = from_quiver(QuiverPresentation(verts, arrows, [], p, path_length_bound=n + 1,
                                       name=f"path_A{n}({p})"))
    A.flags.update(self_injective=(n == 1), noetherian_source="preset-theorem",
                   noetherian_reason="hereditary: Ext vanishes above degree 1",
                   global_dimension=1 if n > 1 else 0, preset="linear_quiver", preset_params=[n, p])
    return A


PRESETS = {
    "exterior": (exterior, "exterior(d, char): exterior algebra on d generators"),
    "truncated_poly": (truncated_poly, "truncated_poly(exponents, char): k[x_i]/(x_i^e_i)"),
    "elem_abelian": (elem_abelian_group, "elem_abelian(p, rank): group algebra of (Z/p)^rank in char p"),
    "nilpotent_loop": (nilpotent_loop, "nilpotent_loop(n, char=2): k[x]/(x^n)"),
    "semisimple": (semisimple, "semisimple(m, char=2): product of m copies of k"),
    "linear_quiver": (linear_quiver, "linear_quiver(n, char=2): path algebra of 1 -> 2 -> ... -> n"),
}
_ALIASES = {"elem_abelian_group": "elem_abelian", "a_n": "linear_quiver", "truncated": "truncated_poly"}


def preset(name: str, *params) -> Algebra:
    name = _ALIASES.get(name, name)
    if name not in PRESETS:
        raise InputError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}")
    try:
        return PRESETS[name][0](*params)
    except TypeError as e:
        raise InputError(f"invalid parameters for preset {name}: {e}") from None


def parse_preset(text: str) -> Algebra:
    """Parse ``name:arg:arg`` (lists as comma separated), e.g. ``exterior:3:2``."""
    name, *raw = text.split(":")
    args = []
    for r in raw:
        try:
            args.append([int(x) for x in r.split(",")] if "," in r else int(r))
        except ValueError:
            raise InputError(f"preset parameter {r!r} is not an integer") from None
    name = _ALIASES.get(name, name)
    if name == "truncated_poly" and args and isinstance(args[0], int):
        args[0] = [args[0]]
    return preset(name, *args)


# enveloping algebra -------------------------------------------------------


def enveloping(A: Algebra, limit: int = ENVELOPING_DIM_LIMIT):
    """A (x) A^op together with A as a module over it (two-sided action)."""
    n = A.dim
    if n * n > limit:
        raise ResourceLimitError(f"enveloping algebra of dimension {n * n} exceeds limit {limit}")
    F = A.field
    m = A.mult
    # (a (x) a')(b (x) b') = ab (x) b'a'
    mult = np.einsum("ijk,bal->iajbkl", m.astype(object), m.astype(object))
    mult = F.array(mult.reshape(n * n, n * n, n * n)) if F.p == 0 else F.reduce(
        mult.reshape(n * n, n * n, n * n).astype(F.dtype))
    unit = F.reduce(np.outer(A.unit, A.unit).reshape(-1).astype(F.dtype))
    rad_vecs = []
    for k in range(A.radical.shape[1]):
        r = A.radical[:, k]
        for b in range(n):
            e = A.basis_vector(b)
            rad_vecs.append(F.reduce(np.outer(r, e).reshape(-1)))
            rad_vecs.append(F.reduce(np.outer(e, r).reshape(-1)))
    rad = image_basis(F, np.array(rad_vecs, dtype=F.dtype).T) if rad_vecs else F.zeros((n * n, 0))
    idems = [F.reduce(np.outer(e, f).reshape(-1)) for e in A.idempotents for f in A.idempotents]
    vnames = [f"{a}|{b}" for a in A.vertex_names for b in A.vertex_names]
    grading = None
    if A.grading is not None:
        grading = (np.asarray(A.grading)[:, None] + np.asarray(A.grading)[None, :]).reshape(-1)
    labels = [f"{a}(x){b}" for a in A.labels for b in A.labels]
    Ae = Algebra(F, mult, unit, rad, idems, labels=labels, grading=grading,
                 name=f"{A.name}^e", vertex_names=vnames)
    Ae.validate()
    # (a (x) a') . x = a x a'
    action = F.zeros((n * n, n, n))
    for i in range(n):
        for j in range(n):
            action[i * n + j] = F.matmul(A.left[i], A.right[j])
    mod = Module(Ae, action, label=f"{A.name} as bimodule",
                 grading=None if A.grading is None else np.array(A.grading))
    return Ae, mod.validate()
