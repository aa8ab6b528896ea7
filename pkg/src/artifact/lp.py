"""Exact rational feasibility via the phase-one simplex method with Bland's rule."""

from __future__ import annotations

from fractions import Fraction


def feasible_point(A, b):
    """Find x >= 0 with A x = b, or return None.

    ``A`` is a list of rows of rationals, ``b`` a list of rationals.  Every
    intermediate value is an exact ``Fraction``; Bland's rule (smallest entering
    index, smallest leaving basis index on ties) rules out cycling.
    """
    m = len(A)
    if m == 0:
        return [Fraction(0)] * 0
    ncols = len(A[0])
    rows = []
    for r, bi in zip(A, b):
        if len(r) != ncols:
            raise ValueError("ragged constraint matrix")
        row = [Fraction(v) for v in r]
        bi = Fraction(bi)
        if bi < 0:
            row = [-v for v in row]
            bi = -bi
        rows.append(row + [bi])
    # artificial columns are kept implicit: basis[i] == ncols + i means artificial i
    basis = [ncols + i for i in range(m)]
    # phase-one objective: minimise the artificial sum, reduced costs over real columns
    cost = [-sum(row[j] for row in rows) for j in range(ncols)]
    value = sum(row[-1] for row in rows)
    while True:
        enter = next((j for j in range(ncols) if cost[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            # unbounded below is impossible for a sum of nonnegative artificials
            raise ArithmeticError("phase-one objective unbounded")
        prow = rows[leave]
        piv = prow[enter]
        if piv != 1:
            prow = [v / piv for v in prow]
            rows[leave] = prow
        nz = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(rows):
            if i != leave:
                f = row[enter]
                if f:
                    for j in nz:
                        row[j] -= f * prow[j]
        f = cost[enter]
        for j in nz:
            if j < ncols:
                cost[j] -= f * prow[j]
        value += f * prow[-1]
        basis[leave] = enter
    if value != 0:
        return None
    x = [Fraction(0)] * ncols
    for i, j in enumerate(basis):
        if j < ncols:
            x[j] = rows[i][-1]
    return x


def in_convex_hull(point, generators) -> list | None:
    """Convex weights expressing ``point`` in the hull of ``generators``, or None."""
    gens = [tuple(g) for g in generators]
    if not gens:
        return None
    dim = len(point)
    A = [[g[k] for g in gens] for k in range(dim)]
    A.append([1] * len(gens))
    b = list(point) + [1]
    return feasible_point(A, b)
