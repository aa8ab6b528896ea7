"""Lattice polytopes given by generators, with exact LP membership queries."""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate, product

import numpy as np

from .algebra_core import Polynomial
from .combinatorics import compositions, rearrangements
from .lp import feasible_point, in_convex_hull


class LatticePolytope:
    """Convex hull of finitely many integer points in R^dim."""

    __slots__ = ("dim", "generators", "_vertices", "_symmetric", "_separator")

    def __init__(self, dim: int, generators):
        gens = frozenset(tuple(int(a) for a in g) for g in generators)
        if not gens:
            raise ValueError("a lattice polytope needs at least one generator")
        if any(len(g) != dim for g in gens):
            raise ValueError(f"generators must have length {dim}")
        self.dim = dim
        self.generators = gens
        self._vertices = None
        self._symmetric = None
        self._separator = None

    def __repr__(self):
        return f"LatticePolytope({self.dim}, {sorted(self.generators)})"

    def scaled(self, t: int) -> "LatticePolytope":
        verts = vertices(self)
        return LatticePolytope(self.dim, [tuple(t * a for a in v) for v in verts])

    def padded(self, dim: int) -> "LatticePolytope":
        """Embed in R^dim by appending zero coordinates."""
        extra = (0,) * (dim - self.dim)
        return LatticePolytope(dim, [g + extra for g in self.generators])

    def is_symmetric(self) -> bool:
        if self._symmetric is None:
            self._symmetric = _is_symmetric_set(self.generators)
        return self._symmetric

    def coordinate_sum(self):
        """The shared coordinate sum of all generators, or None."""
        sums = {sum(g) for g in self.generators}
        return sums.pop() if len(sums) == 1 else None

    def to_json_obj(self) -> dict:
        return {"dim": self.dim, "generators": [list(g) for g in sorted(self.generators)]}

    @classmethod
    def from_json_obj(cls, obj) -> "LatticePolytope":
        return cls(int(obj["dim"]), obj["generators"])


def _is_symmetric_set(points) -> bool:
    for p in points:
        for i in range(len(p) - 1):
            if p[i] != p[i + 1] and p[:i] + (p[i + 1], p[i]) + p[i + 2:] not in points:
                return False
    return True


def newton_polytope(f: Polynomial) -> LatticePolytope:
    if f.is_zero():
        raise ValueError("the zero polynomial has no Newton polytope")
    return LatticePolytope(f.nvars, f.support())


def _bounds(gens):
    lo = [min(g[k] for g in gens) for k in range(len(next(iter(gens))))]
    hi = [max(g[k] for g in gens) for k in range(len(next(iter(gens))))]
    return lo, hi


def _sorted_types(gens):
    return sorted({tuple(sorted(g, reverse=True)) for g in gens}, reverse=True)


def _majorization_contains(nu, types) -> bool:
    """Is the decreasing vector nu majorized by a convex combination of ``types``?

    For a permutation-invariant generator set this decides hull membership
    exactly: the hull is the set of points majorized by conv(types).
    """
    n = len(nu)
    K = len(types)
    psum = [list(accumulate(t)) for t in types]
    target = list(accumulate(nu))
    A, b = [], []
    # rows j < n: sum_k c_k S_j(type_k) - s_j = S_j(nu)
    for j in range(n - 1):
        row = [psum[k][j] for k in range(K)] + [-(1 if i == j else 0) for i in range(n - 1)]
        A.append(row)
        b.append(target[j])
    A.append([psum[k][n - 1] for k in range(K)] + [0] * (n - 1))
    b.append(target[n - 1])
    A.append([1] * K + [0] * (n - 1))
    b.append(1)
    return feasible_point(A, b) is not None


# Exact integer prefilter: for each direction h in a fixed finite set, a point q
# with h.q > max_g h.g lies outside the hull.  Directions are all nonzero
# {-1, 0, 1} vectors in low dimension, coordinate and all-ones directions above.

DIRECTION_DIM_CAP = 8


@lru_cache(maxsize=None)
def _directions(dim: int):
    if dim <= DIRECTION_DIM_CAP:
        dirs = [h for h in product((-1, 0, 1), repeat=dim) if any(h)]
    else:
        eye = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
        dirs = eye + [tuple(-a for a in e) for e in eye] + [(1,) * dim, (-1,) * dim]
    return np.array(dirs, dtype=np.int64)


class _Separator:
    __slots__ = ("H", "top")

    def __init__(self, generators):
        G = np.array(sorted(generators), dtype=np.int64)
        self.H = _directions(G.shape[1])
        self.top = (self.H @ G.T).max(axis=1)

    def outside(self, points, chunk: int = 4096):
        """Boolean mask: True where some direction certifies the point is outside."""
        pts = np.array(points, dtype=np.int64).reshape(len(points), -1)
        out = np.zeros(len(pts), dtype=bool)
        for k in range(0, len(pts), chunk):
            vals = self.H @ pts[k:k + chunk].T
            out[k:k + chunk] = (vals > self.top[:, None]).any(axis=0)
        return out


def _separator(P: LatticePolytope) -> _Separator:
    if P._separator is None:
        P._separator = _Separator(P.generators)
    return P._separator


@lru_cache(maxsize=None)
def _generic_directions(dim: int, count: int = 2048):
    rng = np.random.default_rng(dim)
    return rng.integers(-(10**4), 10**4, size=(count, dim), dtype=np.int64)


def _certified_vertices(gens) -> set:
    """Generators that are the unique maximizer of some direction.

    Directions are arbitrary integer vectors; uniqueness is checked exactly,
    so every returned point is a vertex.  Vertices with thin normal cones may
    be missed and are left to the LP.
    """
    G = np.array(gens, dtype=np.int64)
    if len(G) == 1:
        return {tuple(gens[0])}
    H = np.vstack([_directions(G.shape[1]), _generic_directions(G.shape[1])])
    vals = H @ G.T
    top = np.argmax(vals, axis=1)
    best = vals[np.arange(len(vals)), top]
    unique = (vals == best[:, None]).sum(axis=1) == 1
    return {tuple(gens[i]) for i in set(top[unique].tolist())}


def contains_point(P: LatticePolytope, q) -> bool:
    """Exact membership of a rational point."""
    q = tuple(Fraction(a) for a in q)
    if len(q) != P.dim:
        raise ValueError(f"point of length {len(q)} in a polytope of dimension {P.dim}")
    if all(a.denominator == 1 for a in q) and tuple(int(a) for a in q) in P.generators:
        return True
    lo, hi = _bounds(P.generators)
    if any(a < l or a > h for a, l, h in zip(q, lo, hi)):
        return False
    s = P.coordinate_sum()
    if s is not None and sum(q) != s:
        return False
    if P.is_symmetric():
        return _majorization_contains(sorted(q, reverse=True), _sorted_types(P.generators))
    if all(a.denominator == 1 for a in q) and _separator(P).outside([[int(a) for a in q]])[0]:
        return False
    gens = P._vertices if P._vertices is not None else P.generators
    return in_convex_hull(q, sorted(gens)) is not None


def _midpoint_interior(g, gens) -> bool:
    # cheap certificate that g is not a vertex: g = (a + b)/2 along a short direction
    n = len(g)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            a = list(g)
            b = list(g)
            a[i] += 1
            a[j] -= 1
            b[i] -= 1
            b[j] += 1
            if tuple(a) in gens and tuple(b) in gens:
                return True
        a = list(g)
        b = list(g)
        a[i] += 1
        b[i] -= 1
        if tuple(a) in gens and tuple(b) in gens:
            return True
    return False


def vertices(P: LatticePolytope) -> set:
    """Generators that are not in the convex hull of the other generators."""
    if P._vertices is not None:
        return set(P._vertices)
    gens = P.generators
    if P.is_symmetric():
        types = _sorted_types(gens)
        keep = []
        for k, t in enumerate(types):
            others = types[:k] + types[k + 1:]
            if not others or not _majorization_contains(t, others):
                keep.append(t)
        verts = {p for t in keep for p in rearrangements(t)}
        P._vertices = frozenset(verts)
        return set(verts)
    cand = [g for g in sorted(gens) if not _midpoint_interior(g, gens)]
    certified = _certified_vertices(sorted(gens))
    alive = list(cand)
    verts = []
    for g in cand:
        if g in certified:
            verts.append(g)
            continue
        others = [h for h in alive if h != g]
        if not others or in_convex_hull(g, others) is None:
            verts.append(g)
        else:
            # a non-vertex can be dropped without changing the hull
            alive = others
    P._vertices = frozenset(verts)
    return set(verts)


def _candidates(P: LatticePolytope):
    lo, hi = _bounds(P.generators)
    s = P.coordinate_sum()
    if s is not None:
        shifted = s - sum(lo)
        for c in compositions(shifted, P.dim, [h - l for h, l in zip(hi, lo)]):
            yield tuple(a + l for a, l in zip(c, lo))
        return
    ranges = [range(l, h + 1) for l, h in zip(lo, hi)]

    def rec(k, cur):
        if k == len(ranges):
            yield tuple(cur)
            return
        for v in ranges[k]:
            cur.append(v)
            yield from rec(k + 1, cur)
            cur.pop()

    yield from rec(0, [])


def _surviving_candidates(P: LatticePolytope, skip=frozenset(), batch: int = 20000):
    """Box candidates not in ``skip`` that the direction prefilter cannot exclude."""
    sep = _separator(P)
    buf = []

    def flush():
        mask = sep.outside(buf)
        kept = [c for c, o in zip(buf, mask) if not o]
        buf.clear()
        return kept

    for c in _candidates(P):
        if c in skip:
            continue
        buf.append(c)
        if len(buf) >= batch:
            yield from flush()
    if buf:
        yield from flush()


def _symmetric_lattice_points(P: LatticePolytope, only_sorted=False):
    types = _sorted_types(P.generators)
    top = max(max(t) for t in types) if types else 0
    sums = {sum(t) for t in types}
    out = []
    for total in range(min(sums), max(sums) + 1):
        for nu in compositions(total, P.dim, [top] * P.dim):
            if any(a < b for a, b in zip(nu, nu[1:])):
                continue
            if nu in P.generators or _majorization_contains(nu, types):
                out.append(nu)
    if only_sorted:
        return out
    return [p for nu in out for p in rearrangements(nu)]


def lattice_points(P: LatticePolytope) -> set:
    """All integer points of P."""
    if P.is_symmetric():
        return set(_symmetric_lattice_points(P))
    out = set(P.generators)
    verts = None
    for c in _surviving_candidates(P, skip=P.generators):
        verts = verts or sorted(vertices(P))
        if in_convex_hull(c, verts) is not None:
            out.add(c)
    return out


class SNPResult:
    """Outcome of an SNP test; truthy when saturated, else carries a witness."""

    __slots__ = ("saturated", "witness")

    def __init__(self, saturated: bool, witness=None):
        self.saturated = saturated
        self.witness = witness

    def __bool__(self):
        return self.saturated

    def __repr__(self):
        return f"SNPResult({self.saturated}, witness={self.witness})"


def is_snp(f: Polynomial) -> SNPResult:
    """Every lattice point of Newton(f) is an exponent vector of f."""
    P = newton_polytope(f)
    support = P.generators
    if P.is_symmetric():
        for nu in _symmetric_lattice_points(P, only_sorted=True):
            if nu not in support:
                return SNPResult(False, nu)
        return SNPResult(True)
    verts = None
    for c in _surviving_candidates(P, skip=support):
        verts = verts or sorted(vertices(P))
        if in_convex_hull(c, verts) is not None:
            return SNPResult(False, c)
    return SNPResult(True)


def non_exponent_lattice_points(f: Polynomial) -> set:
    P = newton_polytope(f)
    return lattice_points(P) - P.generators


def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    if P.dim != Q.dim:
        raise ValueError("dimension mismatch")
    vp, vq = vertices(P), vertices(Q)
    return LatticePolytope(P.dim, {tuple(a + b for a, b in zip(p, q)) for p in vp for q in vq})


def contains_polytope(P: LatticePolytope, Q: LatticePolytope) -> bool:
    """Q is a subset of P."""
    if P.dim != Q.dim:
        raise ValueError("dimension mismatch")
    return all(contains_point(P, g) for g in sorted(vertices(Q)))


def polytopes_equal(P: LatticePolytope, Q: LatticePolytope) -> bool:
    return contains_polytope(P, Q) and contains_polytope(Q, P)


def rank(rows) -> int:
    """Rank over Q by Gaussian elimination."""
    m = [[Fraction(v) for v in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def dimension(P: LatticePolytope) -> int:
    gens = sorted(P.generators)
    g0 = gens[0]
    diffs = [[a - b for a, b in zip(g, g0)] for g in gens[1:]]
    return rank(diffs) if diffs else 0


def interpolate(points) -> list:
    """Coefficients (low to high) of the polynomial through (t, value) pairs."""
    k = len(points)
    coeffs = [Fraction(0)] * k
    for i, (ti, yi) in enumerate(points):
        # Lagrange basis polynomial for node ti
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (tj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for d in range(len(basis) - 1):
                basis[d] -= tj * basis[d + 1]
            denom *= ti - tj
        for d in range(k):
            coeffs[d] += Fraction(yi) * basis[d] / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def ehrhart_from_counts(counter, d: int) -> list:
    pts = [(t, counter(t)) for t in range(1, d + 2)]
    coeffs = interpolate(pts) if d > 0 else [Fraction(pts[0][1])]
    if coeffs[0] != 1:
        raise ArithmeticError(f"Ehrhart interpolation gave L(0) = {coeffs[0]}, expected 1")
    return coeffs


def ehrhart(P: LatticePolytope) -> list:
    """Ehrhart polynomial coefficients, constant term first."""
    d = dimension(P)
    return ehrhart_from_counts(lambda t: len(lattice_points(P.scaled(t))), d)


def format_rational_list(coeffs) -> str:
    return "[" + ", ".join(str(Fraction(c)) for c in coeffs) + "]"


def polytope_to_json(P: LatticePolytope) -> str:
    return json.dumps(P.to_json_obj(), separators=(",", ":"))
