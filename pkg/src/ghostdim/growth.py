"""Growth of length sequences: complexity, eventual vanishing, filter-regularity.

Everything here works on finite windows of data.  Results that stand in for
"for all n >> 0" statements carry an evidence label saying so.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InconclusiveError, InputError
from .exactla import Field, rank


@dataclass(frozen=True)
class LengthSequence:
    """Nonnegative integers a_n for start <= n < start + len(values)."""

    values: tuple
    start: int = 0
    provenance: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if not vals:
            raise InputError("length sequence window is empty")
        if any(v < 0 for v in vals):
            raise InputError("lengths must be nonnegative")
        object.__setattr__(self, "values", vals)

    @property
    def end(self) -> int:
        return self.start + len(self.values) - 1

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n: int) -> int:
        if not self.start <= n <= self.end:
            raise IndexError(f"degree {n} outside window [{self.start}, {self.end}]")
        return self.values[n - self.start]

    def scaled(self, c: int) -> "LengthSequence":
        return LengthSequence(tuple(c * v for v in self.values), self.start)

    def __add__(self, other: "LengthSequence") -> "LengthSequence":
        if (self.start, len(self)) != (other.start, len(other)):
            raise InputError("sequences must share a window to be added")
        return LengthSequence(tuple(a + b for a, b in zip(self.values, other.values)), self.start)

    def to_json(self) -> dict:
        return {"start": self.start, "values": list(self.values)}

    @classmethod
    def from_json(cls, data) -> "LengthSequence":
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, list):
            return cls(tuple(data), 0)
        try:
            return cls(tuple(data["values"]), int(data.get("start", 0)), dict(data.get("provenance", {})))
        except (KeyError, TypeError) as e:
            raise InputError(f"malformed length sequence: {e}") from None


@dataclass(frozen=True)
class GrowthPolicy:
    min_window: int = 8
    burn_in: int = 1
    exp_ratio: Fraction = Fraction(9, 8)
    max_period: int = 3


@dataclass(frozen=True)
class ComplexityEstimate:
    kind: str  # "finite" | "exponential" | "inconclusive"
    d: int | None = None
    stability: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def __str__(self):
        return f"finite({self.d})" if self.is_finite else self.kind

    def to_json(self) -> dict:
        return {"kind": self.kind, "d": self.d, "stability": self.stability}


@dataclass(frozen=True)
class Evidence:
    """A boolean computed from a finite window, with its evidence grade."""

    value: bool
    label: str = "window"
    detail: dict = field(default_factory=dict, compare=False, hash=False)

    def __bool__(self):
        return self.value

    def to_json(self) -> dict:
        return {"value": self.value, "label": self.label, "detail": self.detail}


def _as_seq(seq) -> LengthSequence:
    return seq if isinstance(seq, LengthSequence) else LengthSequence(tuple(seq))


def _halves(vals: list) -> tuple:
    mid = len(vals) // 2
    return vals[:mid], vals[mid:]


def difference_degree(vals: list) -> int | None:
    """Least t such that the (t+1)-st differences vanish, with room to check.

    Returns None when no such t is supported by at least two vanishing
    differences, or when the fitted leading coefficient is not positive.
    """
    cur = list(vals)
    t = 0
    while len(cur) >= 3:
        nxt = [b - a for a, b in zip(cur, cur[1:])]
        if all(x == 0 for x in nxt) and len(nxt) >= 2:
            return t if cur[0] > 0 else None
        cur, t = nxt, t + 1
    return None


def quasi_degree(vals: list, period: int) -> int | None:
    """Common difference degree of the residue-class subsequences."""
    ts = {difference_degree(vals[i::period]) for i in range(period)}
    return ts.pop() if len(ts) == 1 and None not in ts else None


def _ratio_class(pairs: list) -> int | None:
    """Common t with 2^(t-1/2) < a_2n / a_n <= 2^(t+1/2) over all pairs."""
    ts = set()
    for a, b in pairs:
        if a <= 0 or b <= 0:
            return None
        t = 0
        # exact comparison: b^2 > a^2 * 2^(2t+1) means ratio exceeds 2^(t+1/2)
        while b * b > a * a * 2 ** (2 * t + 1):
            t += 1
            if t > 64:
                return None
        if t == 0 and b * b * 2 <= a * a:
            return None  # decaying
        ts.add(t)
    return ts.pop() if len(ts) == 1 else None


def _exponential(vals: list, theta: Fraction) -> tuple:
    first, second = _halves(vals)

    def min_ratio(part):
        rs = [Fraction(b, a) for a, b in zip(part, part[1:]) if a > 0]
        if len(rs) != len(part) - 1 or not rs:
            return None
        return min(rs)

    r1, r2 = min_ratio(first), min_ratio(second)
    ok = r1 is not None and r2 is not None and r1 >= theta and r2 >= r1
    return ok, (str(r1) if r1 is not None else None, str(r2) if r2 is not None else None)


def cx_estimate(seq, policy: GrowthPolicy = GrowthPolicy()) -> ComplexityEstimate:
    """Polynomial growth class of a length sequence on its window.

    finite(d) means a_n grows like n^(d-1); finite(0) means the tail vanishes.
    """
    seq = _as_seq(seq)
    if len(seq) < policy.min_window:
        raise InputError(f"window too short: {len(seq)} < {policy.min_window}")
    vals = list(seq.values[min(policy.burn_in, len(seq) - policy.min_window):])
    first, second = _halves(vals)
    if all(v == 0 for v in second):
        return ComplexityEstimate("finite", 0, {"method": "zero-tail", "tail": len(second)})
    is_exp, ratios = _exponential(vals, policy.exp_ratio)
    t1, t2 = difference_degree(first), difference_degree(second)
    if is_exp and t2 is None:
        return ComplexityEstimate("exponential", None, {"method": "ratio", "min_ratios": ratios})
    if t1 is not None and t1 == t2:
        return ComplexityEstimate("finite", t1 + 1, {"method": "finite-difference", "halves": [t1, t2]})
    for period in range(2, policy.max_period + 1):
        q1, q2 = quasi_degree(first, period), quasi_degree(second, period)
        if q1 is not None and q1 == q2:
            return ComplexityEstimate("finite", q1 + 1, {"method": "quasi-polynomial", "period": period,
                                                         "halves": [q1, q2]})
    # fall back to ratio tests a_2n / a_n on the window
    pairs = [(seq[n], seq[2 * n]) for n in range(max(seq.start, 1) + policy.burn_in, seq.end // 2 + 1)]
    if len(pairs) >= 2:
        p1, p2 = _halves(pairs)
        c1, c2 = _ratio_class(p1), _ratio_class(p2)
        if c1 is not None and c1 == c2:
            return ComplexityEstimate("finite", c1 + 1, {"method": "ratio", "halves": [c1, c2]})
        return ComplexityEstimate("inconclusive", None,
                                  {"method": "ratio", "halves": [c1, c2], "differences": [t1, t2]})
    return ComplexityEstimate("inconclusive", None, {"method": "finite-difference", "halves": [t1, t2]})


def dim_from_lengths(seq, policy: GrowthPolicy = GrowthPolicy()) -> int:
    """Dimension read off from the growth of lengths; depends only on the values."""
    est = cx_estimate(seq, policy)
    if not est.is_finite:
        raise InconclusiveError(f"module not in noeth-fl window: growth is {est.kind}")
    return est.d


def eventually_zero(seq, tail_length: int) -> Evidence:
    seq = _as_seq(seq)
    if tail_length < 1 or tail_length > len(seq):
        raise InputError(f"tail {tail_length} exceeds window of length {len(seq)}")
    tail = seq.values[-tail_length:]
    return Evidence(all(v == 0 for v in tail), "window",
                    {"tail": [seq.end - tail_length + 1, seq.end]})


# graded maps --------------------------------------------------------------


@dataclass
class GradedMapData:
    """Degree-d map on a graded module: matrices[n] : M^n -> M^(n+d)."""

    degree: int
    matrices: dict
    lengths: LengthSequence
    field: Field
    label: str = "r"

    def __post_init__(self):
        for n, m in self.matrices.items():
            rows, cols = m.shape
            if n + self.degree <= self.lengths.end and rows != self.lengths[n + self.degree]:
                raise InputError(f"matrix at degree {n} has {rows} rows, expected {self.lengths[n + self.degree]}")
            if cols != self.lengths[n]:
                raise InputError(f"matrix at degree {n} has {cols} columns, expected {self.lengths[n]}")

    def kernel_dim(self, n: int) -> int:
        m = self.matrices[n]
        return m.shape[1] - rank(self.field, m)

    def combine(self, other: "GradedMapData", a: int, b: int) -> "GradedMapData":
        F = self.field
        mats = {n: F.reduce(a * self.matrices[n] + b * other.matrices[n])
                for n in self.matrices if n in other.matrices}
        return GradedMapData(self.degree, mats, self.lengths, F, f"{a}*{self.label}+{b}*{other.label}")

    def direct_sum(self, other: "GradedMapData") -> "GradedMapData":
        """Block-diagonal map on M (+) N over the degrees both describe."""
        F = self.field
        if self.degree != other.degree:
            raise InputError("direct sum needs maps of the same degree")
        lo = max(self.lengths.start, other.lengths.start)
        hi = min(self.lengths.end, other.lengths.end)
        lengths = LengthSequence(tuple(self.lengths[n] + other.lengths[n] for n in range(lo, hi + 1)), lo)
        mats = {}
        for n in self.matrices:
            if n in other.matrices and lo <= n and n + self.degree <= hi:
                a, b = self.matrices[n], other.matrices[n]
                m = F.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]))
                m[:a.shape[0], :a.shape[1]] = a
                m[a.shape[0]:, a.shape[1]:] = b
                mats[n] = m
        return GradedMapData(self.degree, mats, lengths, F, self.label)


def filter_regular_test(data: GradedMapData, threshold: int) -> Evidence:
    """Kernel of the map vanishes in every available degree >= threshold."""
    degs = sorted(n for n in data.matrices if n >= threshold)
    if not degs:
        raise InputError(f"window shorter than threshold {threshold}")
    kers = {n: data.kernel_dim(n) for n in degs}
    return Evidence(all(k == 0 for k in kers.values()), "window",
                    {"kernel_dims": {str(n): k for n, k in kers.items()}, "threshold": threshold})


@dataclass(frozen=True)
class FilterRegularChoice:
    index: int | None  # position in the candidate list, or None for a combination
    combination: tuple | None  # (i, j, a, b) meaning a*c_i + b*c_j
    data: GradedMapData = field(compare=False)

    def to_json(self) -> dict:
        return {"index": self.index, "combination": list(self.combination) if self.combination else None,
                "label": self.data.label}


def find_filter_regular(candidates: list, threshold: int, seed: int = 0, budget: int = 32) -> FilterRegularChoice:
    if not candidates:
        raise InputError("no candidates supplied")
    diag = []
    for i, c in enumerate(candidates):
        ev = filter_regular_test(c, threshold)
        if ev:
            return FilterRegularChoice(i, None, c)
        diag.append({"candidate": c.label, "kernel_dims": ev.detail["kernel_dims"]})
    rng = random.Random(seed)
    F = candidates[0].field
    pairs = [(i, j) for i in range(len(candidates)) for j in range(i + 1, len(candidates))
             if candidates[i].degree == candidates[j].degree]
    for _ in range(budget if pairs else 0):
        i, j = rng.choice(pairs)
        top = F.p - 1 if F.p else 7
        a, b = rng.randint(1, max(top, 1)), rng.randint(1, max(top, 1))
        comb = candidates[i].combine(candidates[j], a, b)
        if filter_regular_test(comb, threshold):
            return FilterRegularChoice(None, (i, j, a, b), comb)
    raise InconclusiveError(f"no filter-regular element found: {json.dumps(diag)}")


def koszul_length_prediction(m_lengths: LengthSequence, r_action: GradedMapData,
                             zero_below_start: bool = True) -> list:
    """Predicted lengths of Hom^n(X//r, Y) from M = Hom^*(X, Y) and r.

    With the shift convention M[i]^n = M^(n-i) the exact sequence
    0 -> (M/rM)[1] -> Hom^*(X//r, Y) -> (0:r)_M[d] -> 0 gives
    pred(n) = coker(r : M^(n-1-d) -> M^(n-1)) + ker(r : M^(n-d) -> M^n).
    Entries are None where the window does not determine the value.
    """
    d = r_action.degree
    F = r_action.field
    M = m_lengths

    def length(n):
        if n < M.start:
            return 0 if zero_below_start else None
        return M[n] if n <= M.end else None

    def rk(n):  # rank of r : M^n -> M^(n+d)
        if n < M.start:
            return 0 if zero_below_start else None
        if n in r_action.matrices:
            return rank(F, r_action.matrices[n])
        if length(n) == 0 or length(n + d) == 0:
            return 0
        return None

    out = []
    for n in range(M.start, M.end + 1):
        a, b = length(n - 1), rk(n - 1 - d)
        c, e = length(n - d), rk(n - d)
        if None in (a, b, c, e):
            out.append(None)
        else:
            out.append((a - b) + (c - e))
    return out


def random_polynomial_sequence(rng: np.random.Generator, degree: int, length: int, start: int = 0) -> LengthSequence:
    """Integer-valued polynomial of exact degree with positive values."""
    coeffs = [int(rng.integers(0, 4)) for _ in range(degree)] + [int(rng.integers(1, 4))]
    vals = tuple(sum(c * n ** k for k, c in enumerate(coeffs)) + 1 for n in range(start, start + length))
    return LengthSequence(vals, start)
