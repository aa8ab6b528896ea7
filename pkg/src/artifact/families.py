"""Constructors for symmetric, quasisymmetric, Demazure and Schubert-type families."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

from .algebra_core import Polynomial, apply_operator, linear_combination
from .combinatorics import (
    compositions,
    conjugate,
    cycle_type,
    dominance_leq,
    is_permutation,
    kostka,
    length,
    longest_element,
    normalize_perm,
    partitions_of,
    pad,
    rearrangements,
    right_multiply_simple,
    ssyt,
    strict_compositions,
    to_partition,
)

CLASSICAL_KINDS = ("monomial", "schur", "elementary", "homogeneous", "power", "forgotten")
DEMAZURE_KINDS = ("key", "atom", "lascoux_atom", "grothendieck_key")
SCHUBERT_KINDS = ("schubert", "grothendieck", "double_schubert")
QSYM_KINDS = ("monomial_qsym", "fundamental_qsym", "quasi_schur")
PRODUCT_KINDS = (
    "resultant_support",
    "vandermonde_power",
    "discriminant",
    "q_discriminant_neg1",
    "binary_matrix_series",
)
OUT_OF_SCOPE = ("kronecker", "llt", "modified_macdonald", "schur_p", "schur_q", "kostka_foulkes")


class OutOfScope(NotImplementedError):
    """Raised for families this library deliberately does not construct."""


class NonGenericPoint(ArithmeticError):
    """The orthogonalization system is singular at the chosen (q, t)."""


def reject_out_of_scope(name: str):
    raise OutOfScope(f"{name} is not supported by this library")


# classical symmetric bases

def monomial_symmetric(lam, n: int) -> Polynomial:
    lam = to_partition(lam)
    if len(lam) > n:
        return Polynomial.zero(n)
    return Polynomial(n, {e: 1 for e in rearrangements(pad(lam, n))}, _trusted=True)


def schur(lam, n: int) -> Polynomial:
    """Schur polynomial as the weight generating series of SSYT."""
    return skew_schur(lam, (), n)


def skew_schur(lam, mu, n: int) -> Polynomial:
    lam = to_partition(lam)
    mu = to_partition(mu)
    if len(mu) > len(lam) or any(m > l for m, l in zip(mu, lam)):
        raise ValueError(f"{mu} is not contained in {lam}")
    out: dict = {}
    for t in ssyt(lam, n, mu=mu):
        e = [0] * n
        for v in t.values():
            e[v - 1] += 1
        key = tuple(e)
        out[key] = out.get(key, 0) + 1
    return Polynomial(n, out, _trusted=True)


def schur_via_kostka(lam, n: int) -> Polynomial:
    """s_lam = sum K_{lam,nu} m_nu (used as an independent route)."""
    lam = to_partition(lam)
    return linear_combination(
        n,
        [
            (kostka(lam, nu), monomial_symmetric(nu, n))
            for nu in partitions_of(sum(lam), n)
            if dominance_leq(nu, lam)
        ],
    )


def power_sum(k: int, n: int) -> Polynomial:
    return Polynomial(n, {tuple(k if i == j else 0 for i in range(n)): 1 for j in range(n)})


def elementary(k: int, n: int) -> Polynomial:
    return monomial_symmetric((1,) * k, n)


def homogeneous(k: int, n: int) -> Polynomial:
    return Polynomial(n, {c: 1 for c in compositions(k, n)}, _trusted=True)


def _forgotten_coeff(lam, mu) -> int:
    target = set()
    s = 0
    for m in mu:
        s += m
        target.add(s)
    count = 0
    for g in rearrangements(lam):
        sums, s = set(), 0
        for a in g:
            s += a
            sums.add(s)
        if sums >= target:
            count += 1
    return count


def forgotten(lam, n: int) -> Polynomial:
    lam = to_partition(lam)
    return linear_combination(
        n,
        [
            (_forgotten_coeff(lam, mu), monomial_symmetric(mu, n))
            for mu in partitions_of(sum(lam), n)
        ],
    )


def classical_basis(kind: str, lam, n: int) -> Polynomial:
    lam = to_partition(lam)
    if kind == "monomial":
        return monomial_symmetric(lam, n)
    if kind == "schur":
        return schur(lam, n)
    if kind == "forgotten":
        return forgotten(lam, n)
    gen = {"elementary": elementary, "homogeneous": homogeneous, "power": power_sum}.get(kind)
    if gen is None:
        raise ValueError(f"unknown basis kind {kind!r}")
    out = Polynomial.one(n)
    for part in lam:
        out = out * gen(part, n)
    return out


# Demazure-type families

_DEMAZURE_OP = {"key": "pi", "atom": "pi_hat", "lascoux_atom": "tau_hat", "grothendieck_key": "tau"}


@lru_cache(maxsize=None)
def _demazure(kind: str, alpha: tuple) -> Polynomial:
    asc = next((i for i in range(len(alpha) - 1) if alpha[i + 1] > alpha[i]), None)
    if asc is None:
        return Polynomial.monomial(alpha)
    hat = alpha[:asc] + (alpha[asc + 1], alpha[asc]) + alpha[asc + 2:]
    return apply_operator(_DEMAZURE_OP[kind], asc + 1, _demazure(kind, hat))


def demazure_family(kind: str, alpha) -> Polynomial:
    """Key polynomial, Demazure atom, Lascoux atom or Lascoux polynomial of alpha.

    Uses the smallest ascent at every step; the number of variables is len(alpha).
    """
    if kind not in _DEMAZURE_OP:
        raise ValueError(f"unknown Demazure family {kind!r}")
    alpha = tuple(alpha)
    if not alpha:
        raise ValueError("empty composition")
    return _demazure(kind, alpha)


def demazure_family_any_ascent(kind: str, alpha, choose) -> Polynomial:
    """Same recursion with a caller-chosen ascent at every step (for testing)."""
    alpha = tuple(alpha)
    ascents = [i for i in range(len(alpha) - 1) if alpha[i + 1] > alpha[i]]
    if not ascents:
        return Polynomial.monomial(alpha)
    i = choose(ascents)
    hat = alpha[:i] + (alpha[i + 1], alpha[i]) + alpha[i + 2:]
    return apply_operator(_DEMAZURE_OP[kind], i + 1, demazure_family_any_ascent(kind, hat, choose))


# Schubert-type families

def _schubert_top(kind: str, n: int) -> Polynomial:
    if kind == "double_schubert":
        N = 2 * n
        out = Polynomial.one(N)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i + j <= n:
                    out = out * (Polynomial.variable(i, N) - Polynomial.variable(n + j, N))
        return out
    return Polynomial.monomial(tuple(n - 1 - k for k in range(n)))


@lru_cache(maxsize=None)
def _schubert(kind: str, w: tuple) -> Polynomial:
    n = len(w)
    if w == longest_element(n):
        return _schubert_top(kind, n)
    i = next(k for k in range(1, n) if w[k - 1] < w[k])
    op = "pi_bar" if kind == "grothendieck" else "partial"
    return apply_operator(op, i, _schubert(kind, right_multiply_simple(w, i)))


def schubert_family(kind: str, w) -> Polynomial:
    """Schubert, Grothendieck or double Schubert polynomial of w.

    w is embedded in the smallest S_n containing it (n >= 1).  Double Schubert
    polynomials live in 2n variables: x1..xn then y1..yn.
    """
    if kind not in SCHUBERT_KINDS:
        raise ValueError(f"unknown Schubert family {kind!r}")
    w = tuple(w)
    if not is_permutation(w):
        raise ValueError(f"{w} is not a permutation")
    w = normalize_perm(w) or (1,)
    return _schubert(kind, w)


@lru_cache(maxsize=None)
def _transition(w: tuple, n: int) -> Polynomial:
    # Lascoux-Schutzenberger transition: S_w = x_r S_v + sum_q S_{v t_qr}
    if not w:
        return Polynomial.one(n)
    N = len(w)
    r = max(k for k in range(1, N) if w[k - 1] > w[k])
    s = max(j for j in range(r + 1, N + 1) if w[j - 1] < w[r - 1])
    v = list(w)
    v[r - 1], v[s - 1] = v[s - 1], v[r - 1]
    lw = length(w)
    out = Polynomial.zero(n)
    if r <= n:
        xr = [0] * n
        xr[r - 1] = 1
        out = out + _transition(normalize_perm(v), n).shift(xr)
    for q in range(1, r):
        u = list(v)
        u[q - 1], u[r - 1] = u[r - 1], u[q - 1]
        if length(u) == lw:
            out = out + _transition(normalize_perm(u), n)
    return out


def schubert_truncated(w, n: int) -> Polynomial:
    """S_w(x1..xn, 0, 0, ...) by the transition recursion."""
    return _transition(normalize_perm(tuple(w)), n)


def shift_perm(w, t: int) -> tuple:
    """1^t x w."""
    return tuple(range(1, t + 1)) + tuple(v + t for v in w)


def stanley_symmetric(w, n: int, with_certificate: bool = False):
    """F_w in n variables, as S_{1^t x w} truncated to x1..xn with t = n - 1.

    A compatible sequence for 1^t x w bounds each index by a letter plus t,
    which is no constraint once t >= n - 1, so the truncation is already F_w.
    """
    w = tuple(w)
    t = max(n - 1, 0)
    F = schubert_truncated(shift_perm(w, t), n)
    return (F, t) if with_certificate else F


# quasisymmetric families

def monomial_qsym(alpha, n: int) -> Polynomial:
    alpha = tuple(alpha)
    if any(a <= 0 for a in alpha):
        raise ValueError("quasisymmetric monomials need positive parts")
    out = {}
    for pos in combinations(range(n), len(alpha)):
        e = [0] * n
        for p, a in zip(pos, alpha):
            e[p] = a
        out[tuple(e)] = 1
    return Polynomial(n, out, _trusted=True)


def refinements(alpha):
    """Compositions beta refining alpha (beta -> alpha)."""
    alpha = tuple(alpha)
    if not alpha:
        yield ()
        return
    for head in strict_compositions(alpha[0]):
        for tail in refinements(alpha[1:]):
            yield head + tail


def fundamental_qsym(alpha, n: int) -> Polynomial:
    alpha = tuple(alpha)
    if any(a <= 0 for a in alpha):
        raise ValueError("fundamental quasisymmetric polynomials need positive parts")
    return linear_combination(n, [(1, monomial_qsym(b, n)) for b in refinements(alpha)])


def quasi_schur(alpha, n: int) -> Polynomial:
    alpha = tuple(a for a in alpha if a)
    out = Polynomial.zero(n)
    if len(alpha) > n:
        return out
    for pos in combinations(range(n), len(alpha)):
        g = [0] * n
        for p, a in zip(pos, alpha):
            g[p] = a
        out = out + demazure_family("atom", tuple(g))
    return out


def qsym_basis(kind: str, alpha, n: int) -> Polynomial:
    if kind == "monomial_qsym":
        return monomial_qsym(alpha, n)
    if kind == "fundamental_qsym":
        return fundamental_qsym(alpha, n)
    if kind == "quasi_schur":
        return quasi_schur(alpha, n)
    raise ValueError(f"unknown quasisymmetric kind {kind!r}")


# product families

def vandermonde(n: int) -> Polynomial:
    out = Polynomial.one(n)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out = out * (Polynomial.variable(i, n) - Polynomial.variable(j, n))
    return out


def product_family(kind: str, *params) -> Polynomial:
    """Expanded products; two-alphabet kinds use x1..xm then y1..yn."""
    if kind == "resultant_support":
        m, n = params
        N = m + n
        out = Polynomial.one(N)
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                out = out * (Polynomial.variable(i, N) - Polynomial.variable(m + j, N))
        return out
    if kind == "binary_matrix_series":
        m, n = params
        N = m + n
        out = Polynomial.one(N)
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                e = [0] * N
                e[i - 1] = 1
                e[m + j - 1] = 1
                out = out * Polynomial(N, {(0,) * N: 1, tuple(e): 1})
        return out
    if kind == "vandermonde_power":
        n, k = params
        return vandermonde(n) ** k
    if kind == "discriminant":
        (n,) = params
        return vandermonde(n) ** 2
    if kind == "q_discriminant_neg1":
        (n,) = params
        out = Polynomial.one(n)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                out = out * (Polynomial.variable(i, n) + Polynomial.variable(j, n))
        return out
    raise ValueError(f"unknown product family {kind!r}")


# group and matrix families

def _power_product(lam, n: int) -> Polynomial:
    return classical_basis("power", lam, n)


def group_closure(generators, cap: int = 50000) -> set:
    gens = [tuple(g) for g in generators]
    if not gens:
        raise ValueError("at least one generator is required")
    k = len(gens[0])
    if any(len(g) != k or not is_permutation(g) for g in gens):
        raise ValueError("generators must be permutations of a common size")
    identity = tuple(range(1, k + 1))
    group = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = tuple(h[g[i] - 1] for i in range(k))
                if x not in group:
                    group.add(x)
                    if len(group) > cap:
                        raise OverflowError(f"group order exceeds cap {cap}")
                    nxt.append(x)
        frontier = nxt
    return group


def cycle_index(generators, n_vars: int, cap: int = 50000) -> Polynomial:
    group = group_closure(generators, cap)
    counts: dict = {}
    for g in group:
        lam = cycle_type(g)
        counts[lam] = counts.get(lam, 0) + 1
    order = len(group)
    return linear_combination(
        n_vars,
        [(Fraction(c, order), _power_product(lam, n_vars)) for lam, c in sorted(counts.items())],
    )


def tnn_polynomial(M, n_vars: int) -> Polynomial:
    M = [[Fraction(v) for v in row] for row in M]
    k = len(M)
    if any(len(row) != k for row in M):
        raise ValueError("matrix must be square")
    if any(v < 0 for row in M for v in row):
        raise ValueError("matrix entries must be nonnegative")
    acc: dict = {}
    for w in permutations(range(1, k + 1)):
        c = Fraction(1)
        for i in range(k):
            c *= M[i][w[i] - 1]
            if not c:
                break
        if c:
            lam = cycle_type(w)
            acc[lam] = acc.get(lam, 0) + c
    return linear_combination(n_vars, [(c, _power_product(lam, n_vars)) for lam, c in sorted(acc.items())])


@lru_cache(maxsize=None)
def _reutenauer_single(d: int, n: int) -> Polynomial:
    out = schur((d,), n)
    for mu in partitions_of(d):
        if mu == (d,):
            continue
        term = Polynomial.one(n)
        for part in mu:
            term = term * _reutenauer_single(part, n)
        out = out - term
    return out


def reutenauer_q(lam, n: int) -> Polynomial:
    lam = to_partition(lam)
    if n < sum(lam):
        raise ValueError(f"need at least {sum(lam)} variables, got {n}")
    out = Polynomial.one(n)
    for part in lam:
        out = out * _reutenauer_single(part, n)
    return out


def chromatic_symmetric(G, n: int) -> Polynomial:
    """Sum over proper colourings with colours 1..n of the product of x_colour."""
    adj = {v: set() for v in range(G.n)}
    for a, b in G.edges:
        adj[a].add(b)
        adj[b].add(a)
    colour = [0] * G.n
    out: dict = {}
    counts = [0] * n

    def rec(v):
        if v == G.n:
            key = tuple(counts)
            out[key] = out.get(key, 0) + 1
            return
        for c in range(1, n + 1):
            if all(colour[u] != c for u in adj[v] if u < v):
                colour[v] = c
                counts[c - 1] += 1
                rec(v + 1)
                counts[c - 1] -= 1
        colour[v] = 0

    rec(0)
    return Polynomial(n, out, _trusted=True)


# basis expansion

def _check_symmetric(f: Polynomial):
    if not f.is_symmetric():
        raise ValueError("polynomial is not symmetric")
    if f.degree() > f.nvars:
        raise ValueError(
            f"degree {f.degree()} exceeds {f.nvars} variables; expansion would not be faithful"
        )


def _m_coefficients(f: Polynomial) -> dict:
    n = f.nvars
    out = {}
    for d in range(f.min_degree(), f.degree() + 1):
        for nu in partitions_of(d, n):
            c = f._terms.get(pad(nu, n))
            if c:
                out[nu] = Fraction(c)
    return out


def _schur_expand(f: Polynomial) -> dict:
    resid = _m_coefficients(f)
    out = {}
    while resid:
        # lex-largest partition is dominance-maximal among those present
        lam = max(resid, key=lambda p: (sum(p), p))
        c = resid[lam]
        out[lam] = c
        for nu in partitions_of(sum(lam), f.nvars):
            if dominance_leq(nu, lam):
                k = kostka(lam, nu)
                if k:
                    v = resid.get(nu, 0) - c * k
                    if v:
                        resid[nu] = v
                    else:
                        resid.pop(nu, None)
    return out


@lru_cache(maxsize=None)
def _basis_matrix(kind: str, d: int) -> tuple:
    """Rows: basis element b_lam in m-coordinates for lam |- d."""
    parts = partitions_of(d)
    rows = []
    for lam in parts:
        poly = classical_basis(kind, lam, d)
        rows.append([Fraction(poly._terms.get(pad(mu, d), 0)) for mu in parts])
    return tuple(parts), tuple(tuple(r) for r in rows)


def _solve_left(parts, rows, target):
    """Find b with sum_lam b_lam rows[lam] = target by exact elimination."""
    k = len(parts)
    # columns of the transposed system: unknown b_lam
    A = [[rows[i][j] for i in range(k)] + [target[j]] for j in range(k)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, k) if A[i][c]), None)
        if p is None:
            raise ArithmeticError("transition matrix is singular")
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(k):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        piv_cols.append(c)
        r += 1
    return [A[i][k] for i in range(k)]


def expand_in_basis(f: Polynomial, kind: str) -> dict:
    """Coefficients of a symmetric f in the requested classical basis."""
    if kind not in CLASSICAL_KINDS:
        raise ValueError(f"unknown basis kind {kind!r}")
    if f.is_zero():
        return {}
    _check_symmetric(f)
    if kind == "monomial":
        return _m_coefficients(f)
    if kind == "schur":
        return _schur_expand(f)
    mcoef = _m_coefficients(f)
    out = {}
    for d in range(f.min_degree(), f.degree() + 1):
        parts, rows = _basis_matrix(kind, d)
        target = [mcoef.get(mu, Fraction(0)) for mu in parts]
        if not any(target):
            continue
        sol = _solve_left(parts, rows, target)
        for lam, c in zip(parts, sol):
            if c:
                out[lam] = c
    return out


def from_basis(coeffs: dict, kind: str, n: int) -> Polynomial:
    return linear_combination(n, [(c, classical_basis(kind, lam, n)) for lam, c in coeffs.items()])


def omega_involution(f: Polynomial) -> Polynomial:
    coeffs = expand_in_basis(f, "schur")
    return from_basis({conjugate(lam): c for lam, c in coeffs.items()}, "schur", f.nvars)


def z_factor(lam) -> int:
    out = 1
    counts: dict = {}
    for p in lam:
        counts[p] = counts.get(p, 0) + 1
    for r, m in counts.items():
        out *= r**m
        for k in range(2, m + 1):
            out *= k
    return out


def z_qt(lam, q0, t0) -> Fraction:
    q0, t0 = Fraction(q0), Fraction(t0)
    out = Fraction(z_factor(lam))
    for p in lam:
        den = 1 - t0**p
        if den == 0:
            raise ZeroDivisionError(f"z_lambda(q,t) has a pole at t = {t0}")
        out *= (1 - q0**p) / den
    return out


def qt_inner_product(f: Polynomial, g: Polynomial, q0, t0) -> Fraction:
    a = expand_in_basis(f, "power")
    b = expand_in_basis(g, "power")
    return sum((a[lam] * b[lam] * z_qt(lam, q0, t0) for lam in a if lam in b), Fraction(0))


@lru_cache(maxsize=None)
def _m_in_p(mu: tuple) -> dict:
    d = sum(mu)
    return expand_in_basis(monomial_symmetric(mu, d), "power") if d else {(): Fraction(1)}


def _pair(a: dict, b: dict, q0, t0) -> Fraction:
    return sum((a[l] * b[l] * z_qt(l, q0, t0) for l in a if l in b), Fraction(0))


def macdonald_coefficients(lam, q0, t0) -> dict:
    """m-expansion of P_lam at (q0, t0), as partition -> rational."""
    lam = to_partition(lam)
    d = sum(lam)
    below = [mu for mu in partitions_of(d) if mu != lam and dominance_leq(mu, lam)]
    if not below:
        return {lam: Fraction(1)}
    mp = {mu: _m_in_p(mu) for mu in below + [lam]}
    k = len(below)
    # rows: orthogonality against m_nu; columns: unknown c_mu
    A = []
    try:
        for nu in below:
            row = [_pair(mp[mu], mp[nu], q0, t0) for mu in below]
            row.append(-_pair(mp[lam], mp[nu], q0, t0))
            A.append(row)
    except ZeroDivisionError as e:
        raise NonGenericPoint(str(e)) from None
    for c in range(k):
        p = next((i for i in range(c, k) if A[i][c]), None)
        if p is None:
            raise NonGenericPoint(f"orthogonality system singular at (q, t) = ({q0}, {t0})")
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [v * inv for v in A[c]]
        for i in range(k):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    out = {lam: Fraction(1)}
    for i, mu in enumerate(below):
        if A[i][k]:
            out[mu] = A[i][k]
    return out


def macdonald_P(lam, q0, t0, n: int) -> Polynomial:
    lam = to_partition(lam)
    if n < sum(lam):
        raise ValueError(f"need at least {sum(lam)} variables")
    coeffs = macdonald_coefficients(lam, Fraction(q0), Fraction(t0))
    return linear_combination(n, [(c, monomial_symmetric(mu, n)) for mu, c in coeffs.items()])


def grassmannian_permutation(lam, k: int) -> tuple:
    """w_{lam,k}: w(i) = lam_{k-i+1} + i for i <= k, remaining values increasing."""
    lam = pad(to_partition(lam), k)
    top = [lam[k - i] + i for i in range(1, k + 1)]
    n = max(top) if top else k
    rest = [v for v in range(1, n + 1) if v not in top]
    return normalize_perm(tuple(top + rest)) or (1,)
