"""Random small quiver algebras and modules for fuzzing."""

from __future__ import annotations

import numpy as np

from ghostdim.algebra import Module, QuiverPresentation, from_quiver, quotient_module, regular_module
from ghostdim.exactla import image_basis


def _paths(arrows, length):
    out = [[a] for a in arrows]
    for _ in range(length - 1):
        out = [p + [a] for p in out for a in arrows if p[-1][2] == a[1]]
    return out


def random_quiver_algebra(rng: np.random.Generator):
    """Quiver with 1-3 vertices and 1-3 arrows, paths of length L killed, plus random quadratic relations."""
    p = int(rng.choice([2, 3]))
    nv = int(rng.integers(1, 4))
    verts = [f"v{i}" for i in range(nv)]
    na = int(rng.integers(1, 4))
    arrows = [(f"a{i}", verts[int(rng.integers(nv))], verts[int(rng.integers(nv))]) for i in range(na)]
    L = int(rng.integers(2, 4))
    rels = [[(1, [a[0] for a in path])] for path in _paths(arrows, L)]
    if L == 3:
        quad = _paths(arrows, 2)
        for path in quad:
            if rng.random() < 0.3:
                rels.append([(1, [a[0] for a in path])])
        # binomial relations between parallel length-2 paths
        for i, p1 in enumerate(quad):
            for p2 in quad[i + 1:]:
                if (p1[0][1], p1[-1][2]) == (p2[0][1], p2[-1][2]) and rng.random() < 0.3:
                    c = int(rng.integers(1, p))
                    rels.append([(1, [a[0] for a in p1]), (c, [a[0] for a in p2])])
    pres = QuiverPresentation(verts, arrows, rels, p, path_length_bound=L + 1, name="random")
    return from_quiver(pres)


def random_module(A, rng: np.random.Generator) -> Module:
    """Quotient of the regular module by the submodule generated by a few random elements."""
    F = A.field
    k = int(rng.integers(0, 3))
    gens = [F.reduce(rng.integers(0, max(F.p, 2), size=A.dim).astype(F.dtype)) for _ in range(k)]
    if rng.random() < 0.5:
        e = A.idempotents[int(rng.integers(A.num_vertices))]
        gens = [A.mul(g, e) for g in gens]
    if gens:
        span = np.concatenate([A.right_matrix(g) for g in gens], axis=1)  # columns b_j g
        sub = image_basis(F, span)
    else:
        sub = F.zeros((A.dim, 0))
    if sub.shape[1] == A.dim:
        sub = A.radical
    q = quotient_module(regular_module(A), sub, label="rand")
    return Module(A, q.action, label="rand", grading=None)
