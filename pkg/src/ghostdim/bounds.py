"""Assembled lower-bound reports for dimensions of derived categories and rep.dim."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Algebra, Module, regular_module, simple_top
from .errors import InconclusiveError, InputError, InvariantViolation, RefusedError
from .growth import ComplexityEstimate, LengthSequence, cx_estimate, eventually_zero
from .io import algebra_to_json
from .resolution import ext_dims, hochschild_dims, resolve

SCHEMA_VERSION = 1


def _window_len(window: tuple) -> int:
    n0, n1 = window
    if n1 <= n0 or n0 < 0:
        raise InputError(f"window {window} must satisfy n1 > n0 >= 0")
    return n1


def _estimate(values, start: int, label: str) -> ComplexityEstimate:
    est = cx_estimate(LengthSequence(tuple(values), start, {"label": label}))
    if not est.is_finite:
        raise InconclusiveError(f"growth of {label} is {est.kind} on the window")
    return est


def cx_pair(X: Module, Y: Module, window: tuple) -> ComplexityEstimate:
    """Growth class of dim_k Ext^n(X, Y) on the window."""
    n0, n1 = window
    dims = ext_dims(X, Y, _window_len(window))
    return _estimate(dims[n0:], n0, f"Ext({X.label},{Y.label})")


def cx_module(M: Module, window: tuple) -> tuple:
    """(estimate, Betti numbers) of M from its minimal resolution."""
    n0, n1 = window
    res = resolve(M, _window_len(window))
    betti = res.betti()[: n1 + 1]
    return _estimate(betti[n0:], n0, f"Betti({M.label})"), betti


def noetherian_flag(A: Algebra, asserted: bool = False) -> str:
    if A.flags.get("noetherian_source") == "preset-theorem":
        return "preset-theorem"
    return "user-asserted" if asserted else "unverified"


@dataclass
class BoundReport:
    algebra: dict
    digest: str
    name: str
    lines: list = field(default_factory=list)  # {"claim", "value", "backing"}
    data: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def add(self, claim: str, value, backing: str):
        self.lines.append({"claim": claim, "value": value, "backing": backing})

    def to_json(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "kind": "bound-report", "algebra": self.algebra,
                "digest": self.digest, "name": self.name, "lines": self.lines, "data": self.data,
                "flags": self.flags, "notes": self.notes}

    def to_markdown(self) -> str:
        out = [f"# Bounds for {self.name}", "", f"digest `{self.digest[:16]}`", ""]
        if self.lines:
            out += ["| claim | value | backing |", "|---|---|---|"]
            out += [f"| {ln['claim']} | {ln['value']} | {ln['backing']} |" for ln in self.lines]
            out.append("")
        if self.flags:
            out.append("Assumptions:")
            out += [f"- {k}: {v}" for k, v in sorted(self.flags.items())]
            out.append("")
        out += [f"- {n}" for n in self.notes]
        return "\n".join(out).rstrip() + "\n"


def _report(A: Algebra) -> BoundReport:
    return BoundReport(algebra_to_json(A), A.digest, A.name)


def bound_chain(A: Algebra, window: tuple = (0, 12), ghost_level: int | None = None,
                noetherian_asserted: bool = False) -> BoundReport:
    """ll(A) >= dim D^b >= dim D^b_st >= cx(A/r) - 1 and rep.dim >= cx(A/r) + 1."""
    rep = _report(A)
    ll = A.loewy_length()
    rep.data["loewy_length"] = ll
    if A.is_semisimple():
        rep.data["rep_dim"] = 0
        rep.notes.append("A is semisimple, so rep.dim A = 0 and the inequality chain is not emitted")
        rep.add("rep.dim A", 0, "A semisimple")
        return rep
    est, betti = cx_module(simple_top(A), window)
    cx = est.d
    flag = noetherian_flag(A, noetherian_asserted)
    rep.flags["noetherian_source"] = flag
    rep.flags["evidence"] = "window"
    rep.flags["central_action"] = "Ext(A/r, A/r) assumed to act centrally; not machine-checked"
    rep.data.update(cx=cx, cx_estimate={"kind": est.kind, "d": est.d, "stability": est.stability},
                    betti=betti, window=list(window))
    stable = max(cx - 1, 0)
    rep.data["stable_lower"] = stable
    rep.data["derived_lower"] = stable
    rep.data["rep_dim_lower"] = cx + 1
    rep.add("ll(A)", ll, "radical powers")
    rep.add("cx(A/r)", cx, f"growth of Betti numbers on {list(window)}")
    rep.add("ll(A) >= dim D^b(A)", ll, "Loewy length")
    rep.add("dim D^b(A) >= dim D^b_st(A)", "holds", "quotient functor")
    rep.add("dim D^b_st(A) >= cx(A/r) - 1", stable, f"noetherian: {flag}")
    rep.add("rep.dim A >= cx(A/r) + 1", cx + 1, f"noetherian: {flag}")
    rep.add("rep.dim A >= dim D^b_st(A) + 2", stable + 2, "stable bound")
    if ghost_level is not None:
        if cx - 1 > ghost_level + 1:
            raise InvariantViolation(f"cx - 1 = {cx - 1} exceeds ghost level {ghost_level} + 1")
        rep.data["ghost_level"] = ghost_level
        rep.data["level_lower"] = max(stable, ghost_level)
        rep.add("ghost-certified level of k//r over k", f"> {ghost_level}", "ghost certificate")
    if ll - 1 < stable:
        raise InvariantViolation(f"Loewy length {ll} contradicts the stable bound {stable}")
    return rep


def ci_bound(A: Algebra, window: tuple = (0, 12)) -> BoundReport:
    ci = A.flags.get("complete_intersection")
    if A.flags.get("preset") not in ("truncated_poly", "nilpotent_loop", "elem_abelian") or not ci:
        raise RefusedError("the complete-intersection bound applies to truncated polynomial presets only")
    c = ci["codim"]
    rep = bound_chain(A, window)
    if rep.data["cx"] != c:
        raise InvariantViolation(f"cx(k) = {rep.data['cx']} but codim = {c}")
    rep.add("cx(k) = codim A", c, "complete intersection")
    rep.add("dim D^b_st(A) >= codim A - 1", c - 1, "complete intersection")
    rep.notes.append("finite-dimensional truncated presets only; complete local rings are not covered")
    return rep


def prank_bound(p: int, rank_: int, window: tuple = (0, 12)) -> BoundReport:
    from .algebra import elem_abelian_group
    A = elem_abelian_group(p, rank_)
    rep = bound_chain(A, window)
    if rep.data["cx"] != rank_:
        raise InvariantViolation(f"cx(k) = {rep.data['cx']} but p-rank = {rank_}")
    rep.add("cx(k) = p-rank", rank_, "group algebra")
    rep.add("ll(kG) >= dim D^b_st(kG) >= rank_p(G) - 1", f"{rep.data['loewy_length']} >= . >= {rank_ - 1}",
            "group algebra")
    return rep


def hochschild_bound(A: Algebra, window: tuple = (0, 8), noetherian_asserted: bool = False) -> BoundReport:
    if A.is_semisimple():
        raise RefusedError("A is semisimple; the Hochschild bound needs a non-semisimple algebra")
    if A.dim - A.radical.shape[1] != A.num_vertices:
        raise RefusedError("A/r is not a product of copies of k, so A/r (x) A/r need not be semisimple "
                           "and the kernel of the map from HH* need not be nilpotent")
    n0, n1 = window
    dims = hochschild_dims(A, _window_len(window))
    est = _estimate(dims[n0:], n0, "HH*(A)")
    rep = _report(A)
    rep.flags["noetherian_source"] = (
        "preset-theorem" if A.flags.get("noetherian_source") == "preset-theorem" else
        ("user-asserted" if noetherian_asserted else "unverified"))
    rep.flags["evidence"] = "window"
    rep.flags["central_action"] = "HH*(A) acts centrally"
    rep.data.update(hh_dims=dims, hh_growth=est.d, window=list(window))
    rep.add("dim HH*(A) (growth class)", est.d, f"HH dims on {list(window)}")
    rep.add("rep.dim A >= dim HH*(A) + 1", est.d + 1, f"noetherian: {rep.flags['noetherian_source']}")
    return rep


def gorenstein_evidence(A: Algebra, window: tuple = (0, 10), tail_length: int = 4) -> dict:
    """Eventual vanishing of Ext^n(A/r, A): evidence of finite injective dimension."""
    if A.flags.get("self_injective"):
        return {"status": "known", "reason": "self-injective preset", "evidence": "preset"}
    n0, n1 = window
    dims = ext_dims(simple_top(A), regular_module(A), _window_len(window))
    ev = eventually_zero(LengthSequence(tuple(dims[n0:]), n0), tail_length)
    return {"status": "positive" if ev else "none", "ext_dims": dims, "tail": ev.detail["tail"],
            "evidence": "window"}
