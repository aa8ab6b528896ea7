"""Sparse multivariate polynomials over the rationals and divided differences.

Coefficients are kept as ``int`` when integral and ``Fraction`` otherwise, so
the common integer-coefficient families never pay for rational arithmetic.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping

OPERATOR_KINDS = ("partial", "pi", "pi_hat", "pi_bar", "tau", "tau_hat")


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def grlex_key(exp):
    """Sort key for graded lexicographic order (largest first when reversed)."""
    return (sum(exp), exp)


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables x1..xn.

    ``terms`` maps exponent tuples to nonzero rational coefficients.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping | Iterable = (), *, _trusted=False):
        if nvars < 0:
            raise ValueError("variable count must be nonnegative")
        self.nvars = nvars
        self._hash = None
        if _trusted:
            self._terms = terms
            return
        out = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} does not have length {nvars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            if isinstance(c, float):
                raise TypeError("floating point coefficients are not accepted")
            c = out.get(exp, 0) + Fraction(c)
            if c:
                out[exp] = _norm(c)
            else:
                out.pop(exp, None)
        self._terms = out

    # construction helpers
    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars, {}, _trusted=True)

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: 1}, _trusted=True)

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        c = _norm(Fraction(c))
        return cls(nvars, {(0,) * nvars: c} if c else {}, _trusted=True)

    @classmethod
    def monomial(cls, exp, c=1) -> "Polynomial":
        exp = tuple(exp)
        return cls(len(exp), {exp: c})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        """The variable x_i (1-indexed)."""
        if not 1 <= i <= nvars:
            raise ValueError(f"variable index {i} out of range 1..{nvars}")
        exp = [0] * nvars
        exp[i - 1] = 1
        return cls(nvars, {tuple(exp): 1}, _trusted=True)

    # read access
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def support(self) -> set:
        return set(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def min_degree(self) -> int:
        if not self._terms:
            return -1
        return min(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial(
            self.nvars, {e: c for e, c in self._terms.items() if sum(e) == d}, _trusted=True
        )

    def sorted_terms(self):
        """Terms in graded-lex order, largest exponent first."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self._terms, key=grlex_key)
        return exp, self._terms[exp]

    # equality and hashing
    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # arithmetic
    def _check(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        return other

    def __add__(self, other):
        return add(self, self._check(other))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        return add(self, -self._check(other))

    def __rsub__(self, other):
        return add(-self, self._check(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return multiply(self, self._check(other))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = _norm(Fraction(c))
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial(
            self.nvars, {e: _norm(v * c) for e, v in self._terms.items()}, _trusted=True
        )

    def shift(self, exp) -> "Polynomial":
        """Multiply by the monomial x^exp."""
        exp = tuple(exp)
        return Polynomial(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()},
            _trusted=True,
        )

    def embed(self, nvars: int, offset: int = 0) -> "Polynomial":
        """Reinterpret in ``nvars`` variables, placing x_i at x_{i+offset}."""
        if offset + self.nvars > nvars:
            raise ValueError("target variable count too small")
        pre, post = (0,) * offset, (0,) * (nvars - offset - self.nvars)
        return Polynomial(
            nvars, {pre + e + post: c for e, c in self._terms.items()}, _trusted=True
        )

    def truncate(self, nvars: int) -> "Polynomial":
        """Set every variable beyond x_nvars to zero."""
        if nvars >= self.nvars:
            return self.embed(nvars)
        return Polynomial(
            nvars,
            {e[:nvars]: c for e, c in self._terms.items() if not any(e[nvars:])},
            _trusted=True,
        )

    def is_symmetric(self) -> bool:
        return _orbit_closed(self._terms)

    def __repr__(self):
        return f"Polynomial({self.nvars}, {to_text(self)!r})"

    def __str__(self):
        return to_text(self)


def _orbit_closed(terms) -> bool:
    # every exponent shares its coefficient with each adjacent transposition
    for e, c in terms.items():
        for i in range(len(e) - 1):
            if e[i] != e[i + 1]:
                f = e[:i] + (e[i + 1], e[i]) + e[i + 2:]
                if terms.get(f) != c:
                    return False
    return True


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.nvars != g.nvars:
        raise ValueError(f"variable count mismatch: {f.nvars} vs {g.nvars}")
    out = dict(f._terms)
    for e, c in g._terms.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = _norm(v)
        else:
            out.pop(e, None)
    return Polynomial(f.nvars, out, _trusted=True)


def multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.nvars != g.nvars:
        raise ValueError(f"variable count mismatch: {f.nvars} vs {g.nvars}")
    if len(f) > len(g):
        f, g = g, f
    out: dict = {}
    gitems = list(g._terms.items())
    for e1, c1 in f._terms.items():
        for e2, c2 in gitems:
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return Polynomial(f.nvars, {e: _norm(c) for e, c in out.items() if c}, _trusted=True)


def linear_combination(nvars: int, pairs) -> Polynomial:
    """Sum of c*f over (c, f) pairs, accumulated in one dictionary."""
    out: dict = {}
    for c, f in pairs:
        if not c:
            continue
        if f.nvars != nvars:
            raise ValueError("variable count mismatch")
        for e, v in f._terms.items():
            out[e] = out.get(e, 0) + c * v
    return Polynomial(nvars, {e: _norm(c) for e, c in out.items() if c}, _trusted=True)


def coefficient(f: Polynomial, alpha) -> Fraction:
    alpha = tuple(alpha)
    if len(alpha) != f.nvars:
        raise ValueError(f"exponent length {len(alpha)} does not match {f.nvars} variables")
    return Fraction(f._terms.get(alpha, 0))


def permute_variables(w, f: Polynomial) -> Polynomial:
    """Apply x_i -> x_{w(i)} to every term; ``w`` is one-line notation."""
    w = tuple(w)
    if len(w) != f.nvars:
        raise ValueError(f"permutation of size {len(w)} acting on {f.nvars} variables")
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValueError(f"{w} is not a permutation")
    out = {}
    for e, c in f._terms.items():
        new = [0] * f.nvars
        for i, a in enumerate(e):
            new[w[i] - 1] = a
        out[tuple(new)] = c
    return Polynomial(f.nvars, out, _trusted=True)


def swap_variables(f: Polynomial, i: int) -> Polynomial:
    """The action of s_i: exchange x_i and x_{i+1}."""
    j = i - 1
    return Polynomial(
        f.nvars,
        {e[:j] + (e[j + 1], e[j]) + e[j + 2:]: c for e, c in f._terms.items()},
        _trusted=True,
    )


def specialize(f: Polynomial, assignment: Mapping[int, object]) -> Polynomial:
    """Substitute rationals for some variables and renumber the rest."""
    for i in assignment:
        if not 1 <= i <= f.nvars:
            raise ValueError(f"variable index {i} out of range 1..{f.nvars}")
    values = {i - 1: Fraction(v) for i, v in assignment.items()}
    keep = [k for k in range(f.nvars) if k not in values]
    out: dict = {}
    for e, c in f._terms.items():
        for k, v in values.items():
            if e[k]:
                c = c * v ** e[k]
                if not c:
                    break
        if not c:
            continue
        key = tuple(e[k] for k in keep)
        out[key] = out.get(key, 0) + c
    return Polynomial(len(keep), {e: _norm(c) for e, c in out.items() if c}, _trusted=True)


def _divide_by_difference(g: Polynomial, i: int) -> Polynomial:
    """Exact quotient g / (x_i - x_{i+1}) by synthetic division in x_i."""
    a = i - 1
    # group by the exponents of the untouched variables; within a group the
    # coefficient of x_i^k is a univariate polynomial in x_{i+1}
    groups: dict = {}
    for e, c in g._terms.items():
        rest = e[:a] + e[a + 2:]
        groups.setdefault(rest, {}).setdefault(e[a], {})[e[a + 1]] = c
    out: dict = {}
    for rest, coeffs in groups.items():
        head, tail = rest[:a], rest[a:]
        # q_{k-1} = c_k + x_{i+1} q_k from the top degree down
        carry: dict = {}
        for k in range(max(coeffs), 0, -1):
            q = {s + 1: v for s, v in carry.items()}
            for s, v in coeffs.get(k, {}).items():
                q[s] = q.get(s, 0) + v
            q = {s: v for s, v in q.items() if v}
            for s, v in q.items():
                out[head + (k - 1, s) + tail] = v
            carry = q
        rem = {s + 1: v for s, v in carry.items()}
        for s, v in coeffs.get(0, {}).items():
            rem[s] = rem.get(s, 0) + v
        if any(rem.values()):
            raise ArithmeticError("divided difference left a nonzero remainder")
    return Polynomial(g.nvars, {e: _norm(c) for e, c in out.items()}, _trusted=True)


def divided_difference(f: Polynomial, i: int) -> Polynomial:
    if not 1 <= i < f.nvars:
        raise ValueError(f"operator index {i} out of range 1..{f.nvars - 1}")
    g = add(f, -swap_variables(f, i))
    if g.is_zero():
        return Polynomial.zero(f.nvars)
    return _divide_by_difference(g, i)


def apply_operator(kind: str, i: int, f: Polynomial) -> Polynomial:
    """Apply one of the six isobaric divided-difference operators at index i."""
    if kind not in OPERATOR_KINDS:
        raise ValueError(f"unknown operator kind {kind!r}")
    if not 1 <= i < f.nvars:
        raise ValueError(f"operator index {i} out of range 1..{f.nvars - 1}")
    n = f.nvars
    xi = Polynomial.variable(i, n)
    xj = Polynomial.variable(i + 1, n)
    if kind == "partial":
        return divided_difference(f, i)
    if kind == "pi":
        return divided_difference(xi * f, i)
    if kind == "pi_hat":
        return divided_difference(xi * f, i) - f
    if kind == "pi_bar":
        return divided_difference(f - xj * f, i)
    xf = xi * f
    tau = divided_difference(xf - xj * xf, i)
    if kind == "tau":
        return tau
    return tau - f


# text and JSON formats

def _rational_str(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _monomial_str(exp, names=None) -> str:
    parts = []
    for k, a in enumerate(exp):
        if a:
            name = names[k] if names else f"x{k + 1}"
            parts.append(name if a == 1 else f"{name}^{a}")
    return "*".join(parts)


def to_text(f: Polynomial, names=None) -> str:
    """Canonical text: graded-lex order, largest term first, e.g. ``x1^2*x2 - 1/2*x3``."""
    if f.is_zero():
        return "0"
    out = []
    for k, (e, c) in enumerate(f.sorted_terms()):
        c = Fraction(c)
        neg = c < 0
        mag = -c if neg else c
        mono = _monomial_str(e, names)
        if not mono:
            body = _rational_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_rational_str(mag)}*{mono}"
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def from_text(text: str, nvars: int) -> Polynomial:
    """Parse the canonical text format (a sum of signed monomial terms)."""
    s = text.replace(" ", "")
    if s == "0":
        return Polynomial.zero(nvars)
    terms = []
    sign = 1
    buf = ""
    for ch in s + "+":
        if ch in "+-" and buf:
            terms.append((sign, buf))
            buf = ""
            sign = 1 if ch == "+" else -1
        elif ch in "+-":
            if ch == "-":
                sign = -sign
        else:
            buf += ch
    out = {}
    for sign, body in terms:
        coeff = Fraction(sign)
        exp = [0] * nvars
        for factor in body.split("*"):
            if factor.startswith("x"):
                name, _, power = factor[1:].partition("^")
                idx = int(name)
                if not 1 <= idx <= nvars:
                    raise ValueError(f"variable x{idx} out of range")
                exp[idx - 1] += int(power) if power else 1
            else:
                coeff *= Fraction(factor)
        key = tuple(exp)
        out[key] = out.get(key, 0) + coeff
    return Polynomial(nvars, out)


def to_json_obj(f: Polynomial) -> dict:
    return {
        "vars": f.nvars,
        "terms": [{"coeff": _rational_str(c), "exp": list(e)} for e, c in f.sorted_terms()],
    }


def to_json(f: Polynomial) -> str:
    return json.dumps(to_json_obj(f), separators=(",", ":"))


def from_json_obj(obj: dict) -> Polynomial:
    n = int(obj["vars"])
    return Polynomial(n, [(t["exp"], Fraction(t["coeff"])) for t in obj["terms"]])


def from_json(s: str) -> Polynomial:
    return from_json_obj(json.loads(s))
