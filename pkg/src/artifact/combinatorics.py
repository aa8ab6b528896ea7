"""Partitions, compositions, permutations, tableaux and the partial orders on them."""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import accumulate, permutations


# partitions and compositions

def to_partition(parts) -> tuple:
    """Drop zeros and sort weakly decreasing."""
    return tuple(sorted((p for p in parts if p), reverse=True))


def is_partition(parts) -> bool:
    parts = tuple(parts)
    return all(p > 0 for p in parts) and all(a >= b for a, b in zip(parts, parts[1:]))


def pad(seq, n: int) -> tuple:
    seq = tuple(seq)
    if len(seq) > n:
        if any(seq[n:]):
            raise ValueError(f"{seq} does not fit in {n} entries")
        return seq[:n]
    return seq + (0,) * (n - len(seq))


def trim(seq) -> tuple:
    """Remove trailing zeros."""
    seq = list(seq)
    while seq and seq[-1] == 0:
        seq.pop()
    return tuple(seq)


def dominance_leq(mu, lam) -> bool:
    """True iff mu <=_D lam (partial sums of mu never exceed those of lam)."""
    mu, lam = tuple(mu), tuple(lam)
    if sum(mu) != sum(lam):
        raise ValueError(f"dominance compares equal sizes, got {sum(mu)} and {sum(lam)}")
    n = max(len(mu), len(lam))
    a = list(accumulate(pad(sorted(mu, reverse=True), n)))
    b = list(accumulate(pad(sorted(lam, reverse=True), n)))
    return all(x <= y for x, y in zip(a, b))


def conjugate(lam) -> tuple:
    lam = to_partition(lam)
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p >= j) for j in range(1, lam[0] + 1))


@lru_cache(maxsize=None)
def _partitions(d: int, largest: int) -> tuple:
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(d: int, max_length: int | None = None) -> list:
    """All partitions of d, lexicographically largest first."""
    if d < 0:
        raise ValueError("negative size")
    out = list(_partitions(d, d))
    if max_length is not None:
        out = [p for p in out if len(p) <= max_length]
    return out


def compositions(total: int, parts: int, bounds=None):
    """Weak compositions of ``total`` into ``parts`` entries, lex-largest first.

    ``bounds`` optionally caps each entry.
    """
    if parts == 0:
        if total == 0:
            yield ()
        return
    caps = list(bounds) if bounds is not None else [total] * parts
    # suffix capacity for pruning
    room = [0] * (parts + 1)
    for k in range(parts - 1, -1, -1):
        room[k] = room[k + 1] + caps[k]
    cur = [0] * parts

    def rec(k, left):
        if k == parts - 1:
            if left <= caps[k]:
                cur[k] = left
                yield tuple(cur)
            return
        hi = min(left, caps[k])
        lo = max(0, left - room[k + 1])
        for v in range(hi, lo - 1, -1):
            cur[k] = v
            yield from rec(k + 1, left - v)

    if total <= room[0]:
        yield from rec(0, total)


def strict_compositions(total: int):
    """Compositions of ``total`` with positive parts."""
    if total == 0:
        yield ()
        return
    for first in range(total, 0, -1):
        for rest in strict_compositions(total - first):
            yield (first,) + rest


def rearrangements(seq) -> list:
    """Distinct rearrangements of ``seq`` in lex-decreasing order."""
    return sorted(set(permutations(tuple(seq))), reverse=True)


def positive_part(alpha) -> tuple:
    """gamma^+ : delete the zero entries."""
    return tuple(a for a in alpha if a)


# permutations

def is_permutation(w) -> bool:
    return sorted(w) == list(range(1, len(w) + 1))


def normalize_perm(w) -> tuple:
    """Drop trailing fixed points (the smallest S_n containing w)."""
    w = list(w)
    while w and w[-1] == len(w):
        w.pop()
    return tuple(w)


def embed_perm(w, n: int) -> tuple:
    w = tuple(w)
    if n < len(w):
        if normalize_perm(w) != normalize_perm(w[:n]) or not is_permutation(w[:n]):
            raise ValueError(f"{w} does not fit in S_{n}")
        return w[:n]
    return w + tuple(range(len(w) + 1, n + 1))


def inverse(w) -> tuple:
    inv = [0] * len(w)
    for i, v in enumerate(w, 1):
        inv[v - 1] = i
    return tuple(inv)


def compose(u, v) -> tuple:
    """(u v)(i) = u(v(i)), both of the same size."""
    return tuple(u[x - 1] for x in v)


def length(w) -> int:
    w = tuple(w)
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def simple_transposition(i: int, n: int) -> tuple:
    w = list(range(1, n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def right_multiply_simple(w, i: int) -> tuple:
    """w s_i: swap positions i and i+1."""
    w = list(w)
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def longest_element(n: int) -> tuple:
    return tuple(range(n, 0, -1))


def descents(w) -> list:
    return [i for i in range(1, len(w)) if w[i - 1] > w[i]]


def cycle_type(w) -> tuple:
    seen = [False] * len(w)
    out = []
    for s in range(len(w)):
        if not seen[s]:
            k, j = 0, s
            while not seen[j]:
                seen[j] = True
                j = w[j] - 1
                k += 1
            out.append(k)
    return to_partition(out)


def lehmer_code(w) -> tuple:
    w = tuple(w)
    n = len(w)
    return tuple(sum(1 for j in range(i + 1, n) if w[j] < w[i]) for i in range(n))


def from_code(code) -> tuple:
    code = tuple(code)
    n = len(code)
    avail = list(range(1, n + 1))
    out = []
    for i, c in enumerate(code):
        if c > n - 1 - i:
            raise ValueError(f"{code} is not a Lehmer code")
        out.append(avail.pop(c))
    return tuple(out)


def permutations_of_length(n: int, ell: int | None = None) -> list:
    """Elements of S_n (optionally of Coxeter length ell) in lex order."""
    out = list(permutations(range(1, n + 1)))
    if ell is not None:
        out = [w for w in out if length(w) == ell]
    return out


def bruhat_leq(u, v) -> bool:
    """Strong Bruhat order via rank-matrix comparison."""
    n = max(len(u), len(v))
    u, v = embed_perm(u, n), embed_perm(v, n)
    for i in range(1, n + 1):
        pu = sorted(u[:i])
        pv = sorted(v[:i])
        # tableau criterion: sorted prefixes compare entrywise
        if any(a > b for a, b in zip(pu, pv)):
            return False
    return True


def bruhat_leq_closure(u, v) -> bool:
    """Reference implementation: search up from u by length-increasing transpositions."""
    n = max(len(u), len(v))
    u, v = embed_perm(u, n), embed_perm(v, n)
    target = length(v)
    seen = {u}
    frontier = [u]
    while frontier:
        nxt = []
        for w in frontier:
            if w == v:
                return True
            lw = length(w)
            if lw >= target:
                continue
            for i in range(n):
                for j in range(i + 1, n):
                    if w[i] < w[j]:
                        x = list(w)
                        x[i], x[j] = x[j], x[i]
                        x = tuple(x)
                        if length(x) == lw + 1 and x not in seen:
                            seen.add(x)
                            nxt.append(x)
        frontier = nxt
    return False


@lru_cache(maxsize=None)
def _reduced_words(w: tuple) -> tuple:
    if not descents(w):
        return ((),)
    out = []
    for i in descents(w):
        for word in _reduced_words(right_multiply_simple(w, i)):
            out.append(word + (i,))
    return tuple(sorted(out))


def reduced_words(w) -> list:
    """All reduced words (i_1..i_l) with w = s_{i_1} ... s_{i_l}."""
    return list(_reduced_words(normalize_perm(w)))


def word_to_perm(word, n: int) -> tuple:
    w = tuple(range(1, n + 1))
    for i in word:
        w = right_multiply_simple(w, i)
    return w


def sorting_permutation(gamma) -> tuple:
    """Minimal-length w with w . lambda(gamma) = gamma, acting on positions.

    (w . v)_{w(i)} = v_i, so lambda(gamma)_i lands at position w(i).  Equal
    parts are assigned left to right, which gives the shortest such w.
    """
    gamma = tuple(gamma)
    n = len(gamma)
    order = sorted(range(n), key=lambda k: (-gamma[k], k))
    w = [0] * n
    for i, pos in enumerate(order):
        w[i] = pos + 1
    return tuple(w)


def act_on_positions(w, v) -> tuple:
    out = [0] * len(v)
    for i, x in enumerate(v):
        out[w[i] - 1] = x
    return tuple(out)


def composition_preceq(gamma, alpha) -> bool:
    """gamma preceq alpha: same sorted parts and w(gamma) <= w(alpha) in Bruhat order."""
    n = max(len(gamma), len(alpha))
    gamma, alpha = pad(gamma, n), pad(alpha, n)
    if sorted(gamma) != sorted(alpha):
        return False
    return bruhat_leq(sorting_permutation(gamma), sorting_permutation(alpha))


def _transpose(alpha, i, j):
    a = list(alpha)
    a[i], a[j] = a[j], a[i]
    return tuple(a)


def _move(alpha, i, j):
    a = list(alpha)
    a[i] += 1
    a[j] -= 1
    return tuple(a)


@lru_cache(maxsize=None)
def _s_down(alpha: tuple) -> frozenset:
    # covers, for i < j: t_ij(a) < a when a_i < a_j, and a + e_i - e_j < t_ij(a)
    # when a_j - a_i > 1; the second is generated from c = t_ij(a), c_i - c_j > 1
    seen = {alpha}
    queue = deque([alpha])
    n = len(alpha)
    while queue:
        c = queue.popleft()
        for i in range(n):
            for j in range(i + 1, n):
                nbrs = []
                if c[i] < c[j]:
                    nbrs.append(_transpose(c, i, j))
                if c[i] - c[j] > 1:
                    nbrs.append(_move(_transpose(c, i, j), i, j))
                for b in nbrs:
                    if b not in seen:
                        seen.add(b)
                        queue.append(b)
    return frozenset(seen)


def order_s_downset(alpha) -> set:
    """All beta <=_S alpha, including alpha itself."""
    return set(_s_down(tuple(alpha)))


@lru_cache(maxsize=None)
def _kappa_down(alpha: tuple) -> frozenset:
    seen = set()
    queue = deque([alpha])
    n = len(alpha)
    while queue:
        a = queue.popleft()
        for i in range(n):
            for j in range(i + 1, n):
                if a[i] < a[j]:
                    nbrs = [_transpose(a, i, j)]
                    if a[j] - a[i] > 1:
                        nbrs.append(_move(a, i, j))
                    for b in nbrs:
                        if b not in seen:
                            seen.add(b)
                            queue.append(b)
    seen.discard(alpha)
    return frozenset(seen)


def order_kappa_downset(alpha) -> set:
    """All beta <_kappa alpha (alpha itself excluded)."""
    return set(_kappa_down(tuple(alpha)))


# tableaux

def _skew_cells(lam, mu=()):
    mu = pad(mu, len(lam))
    return [(r, c) for r in range(len(lam)) for c in range(mu[r], lam[r])]


def ssyt(lam, n: int, mu=(), content=None):
    """Yield semistandard fillings of the skew shape lam/mu with entries in 1..n.

    Each filling is returned as a dict cell -> entry.  Rows weakly increase,
    columns strictly increase.  With ``content`` the number of each entry is fixed.
    """
    lam = tuple(lam)
    mu = pad(mu, len(lam))
    if any(m > l for m, l in zip(mu, lam)):
        raise ValueError(f"{mu} is not contained in {lam}")
    cells = _skew_cells(lam, mu)
    if content is not None:
        content = list(content)
        if sum(content) != len(cells):
            raise ValueError("content size does not match the shape")
        n = len(content)
        left = content[:]
    fill: dict = {}

    def rec(k):
        if k == len(cells):
            yield dict(fill)
            return
        r, c = cells[k]
        lo = 1
        if c > mu[r]:
            lo = fill[(r, c - 1)]
        if r > 0 and c < lam[r - 1] and c >= mu[r - 1]:
            lo = max(lo, fill[(r - 1, c)] + 1)
        # column strictness forces room below this cell
        below = sum(1 for rr in range(r + 1, len(lam)) if mu[rr] <= c < lam[rr])
        for v in range(lo, n - below + 1):
            if content is not None:
                if not left[v - 1]:
                    continue
                left[v - 1] -= 1
            fill[(r, c)] = v
            yield from rec(k + 1)
            if content is not None:
                left[v - 1] += 1
        fill.pop((r, c), None)

    yield from rec(0)


def kostka(lam, mu) -> int:
    """Number of SSYT of shape lam and content mu."""
    lam, mu = to_partition(lam), tuple(mu)
    if sum(lam) != sum(mu):
        raise ValueError("shape and content sizes differ")
    return _kostka(lam, mu)


@lru_cache(maxsize=None)
def _kostka(lam, mu):
    return sum(1 for _ in ssyt(lam, len(mu), content=mu))


def standard_tableaux_count(lam) -> int:
    lam = to_partition(lam)
    return kostka(lam, (1,) * sum(lam))


# Gale-Ryser

def gale_ryser_pair(alpha, beta) -> bool:
    """True iff a (0,1)-matrix with row sums alpha and column sums beta exists."""
    if sum(alpha) != sum(beta):
        raise ValueError("margins have different totals")
    return dominance_leq(to_partition(beta), conjugate(alpha)) if sum(alpha) else True


def count_01_matrices(alpha, beta) -> int:
    """Number of (0,1)-matrices with row sums alpha and column sums beta."""
    alpha, beta = tuple(alpha), tuple(beta)
    if sum(alpha) != sum(beta):
        raise ValueError("margins have different totals")
    if any(a > len(beta) for a in alpha):
        return 0
    return _count01(alpha, tuple(beta))


@lru_cache(maxsize=None)
def _count01(alpha, cols):
    if not alpha:
        return 1 if not any(cols) else 0
    first, rest = alpha[0], alpha[1:]
    total = 0
    n = len(cols)
    room = sum(rest)

    def rec(j, need, c):
        nonlocal total
        if need == 0:
            nc = tuple(c)
            if sum(nc) == room:
                total += _count01(rest, nc)
            return
        if n - j < need:
            return
        if c[j] > 0:
            c[j] -= 1
            rec(j + 1, need - 1, c)
            c[j] += 1
        rec(j + 1, need, c)

    rec(0, first, list(cols))
    return total


# graphs

class SimpleGraph:
    """Undirected loopless graph on vertices 0..n-1."""

    def __init__(self, n: int, edges=()):
        self.n = n
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError("loops are not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} out of range")
            es.add((min(u, v), max(u, v)))
        self.edges = frozenset(es)

    @classmethod
    def star(cls, k: int) -> "SimpleGraph":
        """K_{1,k} with centre 0."""
        return cls(k + 1, [(0, i) for i in range(1, k + 1)])

    def neighbours(self, v):
        return [b if a == v else a for a, b in self.edges if v in (a, b)]
