"""Diagrams, the bracket-matching function theta, Schubitopes and Kohnert moves."""

from __future__ import annotations

import json
from collections import deque
from fractions import Fraction
from itertools import combinations

from .algebra_core import Polynomial
from .combinatorics import compositions, inverse, normalize_perm
from .lp import feasible_point
from .polytope import LatticePolytope, ehrhart_from_counts, rank

SUBSET_CAP = 12


class CapExceeded(OverflowError):
    """The grid is too large for 2^n subset enumeration."""


class Diagram:
    """A set of (row, column) cells, 1-indexed, in an n x n grid."""

    __slots__ = ("n", "cells")

    def __init__(self, n: int, cells=()):
        cells = frozenset((int(r), int(c)) for r, c in cells)
        for r, c in cells:
            if not (1 <= r <= n and 1 <= c <= n):
                raise ValueError(f"cell {(r, c)} outside the {n}x{n} grid")
        self.n = n
        self.cells = cells

    def __len__(self):
        return len(self.cells)

    def __eq__(self, other):
        return isinstance(other, Diagram) and self.n == other.n and self.cells == other.cells

    def __hash__(self):
        return hash((self.n, self.cells))

    def __repr__(self):
        return f"Diagram({self.n}, {sorted(self.cells)})"

    def row_counts(self) -> tuple:
        out = [0] * self.n
        for r, _ in self.cells:
            out[r - 1] += 1
        return tuple(out)

    def trimmed(self) -> "Diagram":
        """Shrink the grid to the smallest square holding every cell."""
        m = max((max(r, c) for r, c in self.cells), default=1)
        return Diagram(max(m, 1), self.cells)

    def to_json_obj(self) -> dict:
        return {"n": self.n, "cells": [list(c) for c in sorted(self.cells)]}

    @classmethod
    def from_json_obj(cls, obj) -> "Diagram":
        return cls(int(obj["n"]), [tuple(c) for c in obj["cells"]])


def theta_column(D: Diagram, c: int, S) -> int:
    """Matched bracket pairs plus stars in the column word of column c."""
    if not 1 <= c <= D.n:
        raise ValueError(f"column {c} out of range")
    S = set(S)
    opened = 0
    score = 0
    for r in range(1, D.n + 1):
        inD = (r, c) in D.cells
        inS = r in S
        if inD and inS:
            score += 1
        elif inS:
            opened += 1
        elif inD and opened:
            opened -= 1
            score += 1
    return score


def theta(D: Diagram, S) -> int:
    S = set(S)
    for r in S:
        if not 1 <= r <= D.n:
            raise ValueError(f"row {r} out of range")
    return sum(theta_column(D, c, S) for c in range(1, D.n + 1))


def rothe_diagram(w, n: int | None = None) -> Diagram:
    """D_w = {(i, j) : w(i) > j and w^{-1}(j) > i}.

    The grid defaults to the smallest S_n containing w.
    """
    w = normalize_perm(tuple(w)) or (1,)
    if n is None:
        n = len(w)
    elif n < len(w):
        raise ValueError(f"{w} needs a grid of size at least {len(w)}")
    w = w + tuple(range(len(w) + 1, n + 1))
    winv = inverse(w)
    cells = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if w[i - 1] > j and winv[j - 1] > i
    ]
    return Diagram(n, cells)


def skyline_diagram(alpha) -> Diagram:
    alpha = tuple(alpha)
    n = max(len(alpha), max(alpha, default=0), 1)
    return Diagram(n, [(i, j) for i, a in enumerate(alpha, 1) for j in range(1, a + 1)])


def young_diagram(lam, n: int) -> Diagram:
    """Left-justified rows lam_1, lam_2, ... from the top (the skyline of lam)."""
    lam = tuple(lam) + (0,) * (n - len(tuple(lam)))
    return Diagram(n, [(i, j) for i, a in enumerate(lam, 1) for j in range(1, a + 1)])


def _check_cap(D: Diagram, cap: int):
    if D.n > cap:
        raise CapExceeded(f"grid size {D.n} exceeds the subset cap {cap}")


def subsets_in_order(n: int, proper=True):
    """Nonempty subsets of [n] by cardinality, then lexicographically."""
    top = n if not proper else n - 1
    for k in range(1, top + 1):
        for S in combinations(range(1, n + 1), k):
            yield S


def schubitope_inequalities(D: Diagram, cap: int = SUBSET_CAP) -> list:
    """(S, theta_D(S)) for every nonempty proper subset S, in canonical order."""
    _check_cap(D, cap)
    return [(S, theta(D, S)) for S in subsets_in_order(D.n)]


def _singleton_bounds(D: Diagram):
    return [theta(D, (i,)) for i in range(1, D.n + 1)]


def _satisfies(alpha, ineqs) -> bool:
    return all(sum(alpha[i - 1] for i in S) <= b for S, b in ineqs)


def lattice_points_of_system(n: int, total: int, ineqs) -> set:
    bounds = [total] * n
    for S, b in ineqs:
        if len(S) == 1:
            bounds[S[0] - 1] = min(bounds[S[0] - 1], b)
    return {a for a in compositions(total, n, bounds) if _satisfies(a, ineqs)}


def schubitope_lattice_points(D: Diagram, cap: int = SUBSET_CAP) -> set:
    ineqs = schubitope_inequalities(D, cap)
    return lattice_points_of_system(D.n, len(D), ineqs)


def schubitope_polytope(D: Diagram, cap: int = SUBSET_CAP) -> LatticePolytope:
    """The integer hull of the Schubitope as a generator polytope."""
    return LatticePolytope(D.n, schubitope_lattice_points(D, cap))


def _implied(target, others, n: int, total: int) -> bool:
    """Is sum_{i in S} a_i <= b implied by ``others`` on {a >= 0, sum a = total}?

    Homogenized violation test: a = x/s with x, s >= 0 and sum_S x - b s = 1.
    s = 0 forces x = 0, so any feasible point has s > 0 and violates the target.
    """
    S, b = target
    # variables: x_1..x_n, s, slacks for each other inequality
    m = len(others)
    A, rhs = [], []
    # sum x = total * s
    A.append([1] * n + [-total] + [0] * m)
    rhs.append(0)
    # other inequalities: sum_T x + slack = bound * s
    for k, (T, c) in enumerate(others):
        row = [1 if i + 1 in T else 0 for i in range(n)] + [-c] + [0] * m
        row[n + 1 + k] = 1
        A.append(row)
        rhs.append(0)
    # violation normalized: sum_S x - b s = 1
    A.append([1 if i + 1 in S else 0 for i in range(n)] + [-b] + [0] * m)
    rhs.append(1)
    return feasible_point(A, rhs) is None


def _redux1(ineqs, n, total):
    full = tuple(range(1, n + 1))
    theta_of = dict(ineqs)
    theta_of[full] = total
    keep = []
    for T, b in ineqs:
        sT = set(T)
        if any(set(S) > sT and theta_of[S] == b for S in theta_of):
            continue
        keep.append((T, b))
    return keep


def _redux2(ineqs):
    kept = dict(ineqs)
    sets = sorted(kept, key=lambda s: (len(s), s))

    def splits(S, target):
        # partition S into at least two kept blocks whose bounds sum to target
        S = frozenset(S)
        first = min(S)
        for T in sets:
            sT = frozenset(T)
            if first in sT and sT < S:
                rest = S - sT
                tb = kept[T]
                if tb > target:
                    continue
                rt = tuple(sorted(rest))
                if rt in kept and kept[rt] == target - tb:
                    return True
                if len(rest) > 1 and splits(rest, target - tb):
                    return True
        return False

    return [(S, b) for S, b in ineqs if not (len(S) > 1 and splits(S, b))]


def reduce_inequalities(D: Diagram, cap: int = SUBSET_CAP) -> list:
    """Apply the two combinatorial reductions (no LP)."""
    ineqs = schubitope_inequalities(D, cap)
    return _redux2(_redux1(ineqs, D.n, len(D)))


def minimize_inequalities(D: Diagram, cap: int = SUBSET_CAP) -> list:
    """Reductions followed by exact LP redundancy elimination on sum(alpha) = #D.

    Inequalities are examined largest subsets first; each one implied by the
    currently remaining others (with alpha >= 0) is removed.
    """
    ineqs = reduce_inequalities(D, cap)
    n, total = D.n, len(D)
    current = list(ineqs)
    for item in sorted(ineqs, key=lambda t: (-len(t[0]), t[0])):
        others = [x for x in current if x != item]
        if _implied(item, others, n, total):
            current = others
    return sorted(current, key=lambda t: (len(t[0]), t[0]))


def system_to_json_obj(D: Diagram, ineqs) -> dict:
    return {"eq_sum": len(D), "ineqs": [{"S": list(S), "bound": b} for S, b in ineqs]}


def system_to_text(D: Diagram, ineqs) -> str:
    lines = [" + ".join(f"a{i}" for i in range(1, D.n + 1)) + f" = {len(D)}"]
    for S, b in ineqs:
        lines.append(" + ".join(f"a{i}" for i in S) + f" <= {b}")
    return "\n".join(lines)


def schubitope_dimension(D: Diagram, cap: int = SUBSET_CAP) -> int:
    pts = sorted(schubitope_lattice_points(D, cap))
    p0 = pts[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
    return rank(diffs) if diffs else 0


def schubitope_ehrhart(D: Diagram, cap: int = SUBSET_CAP) -> list:
    """Ehrhart coefficients (constant first) from dilating the right-hand sides."""
    ineqs = schubitope_inequalities(D, cap)
    d = schubitope_dimension(D, cap)

    def count(t):
        scaled = [(S, t * b) for S, b in ineqs]
        return len(lattice_points_of_system(D.n, t * len(D), scaled))

    return ehrhart_from_counts(count, d)


# Kohnert moves

def kohnert_moves(D: Diagram):
    """Diagrams reachable by one Kohnert move."""
    rows: dict = {}
    for r, c in D.cells:
        rows.setdefault(r, []).append(c)
    for r, cols in sorted(rows.items()):
        c = max(cols)
        target = None
        for rr in range(r - 1, 0, -1):
            if (rr, c) not in D.cells:
                target = rr
                break
        if target is not None:
            yield Diagram(D.n, (D.cells - {(r, c)}) | {(target, c)})


def kohnert_closure(D: Diagram) -> set:
    seen = {D}
    queue = deque([D])
    while queue:
        E = queue.popleft()
        for F in kohnert_moves(E):
            if F not in seen:
                seen.add(F)
                queue.append(F)
    return seen


def kohnert_polynomial(D: Diagram) -> Polynomial:
    out: dict = {}
    for E in kohnert_closure(D):
        e = E.row_counts()
        out[e] = out.get(e, 0) + 1
    return Polynomial(D.n, out, _trusted=True)


def fraction_list(xs):
    return [str(Fraction(x)) for x in xs]


def diagram_to_json(D: Diagram) -> str:
    return json.dumps(D.to_json_obj(), separators=(",", ":"))
