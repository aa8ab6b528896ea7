"""Verification sweeps, the Newton-polytope dominance poset and a result cache."""

from __future__ import annotations

import hashlib
import json
import os
import platform
import random
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .algebra_core import Polynomial, from_json_obj, to_json_obj
from .combinatorics import (
    composition_preceq,
    compositions,
    length,
    normalize_perm,
    order_kappa_downset,
    order_s_downset,
    pad,
    partitions_of,
    permutations_of_length,
    positive_part,
    rearrangements,
    strict_compositions,
    word_to_perm,
)
from .families import (
    NonGenericPoint,
    demazure_family,
    fundamental_qsym,
    macdonald_P,
    monomial_qsym,
    schubert_family,
    shift_perm,
    stanley_symmetric,
)
from .polytope import (
    LatticePolytope,
    contains_point,
    contains_polytope,
    is_snp,
    lattice_points,
    newton_polytope,
    polytopes_equal,
    vertices,
)
from .schubitope import (
    Diagram,
    kohnert_polynomial,
    rothe_diagram,
    schubitope_ehrhart,
    schubitope_inequalities,
    schubitope_lattice_points,
    skyline_diagram,
)

CACHE_ENV = "ARTIFACT_CACHE_DIR"


# persistent cache

class ResultCache:
    """Content-addressed JSON store keyed by (kind, index, nvars, version)."""

    def __init__(self, directory):
        self.directory = Path(directory)

    @staticmethod
    def key_digest(kind, index, nvars, version=__version__) -> str:
        raw = json.dumps([kind, list(index), nvars, version], separators=(",", ":"))
        return hashlib.sha256(raw.encode()).hexdigest()

    def _path(self, digest):
        return self.directory / digest[:2] / f"{digest}.json"

    def get(self, kind, index, nvars):
        p = self._path(self.key_digest(kind, index, nvars))
        if not p.exists():
            return None
        with open(p) as fh:
            return from_json_obj(json.load(fh)["value"])

    def put(self, kind, index, nvars, poly: Polynomial):
        digest = self.key_digest(kind, index, nvars)
        p = self._path(digest)
        p.parent.mkdir(parents=True, exist_ok=True)
        tmp = p.with_suffix(f".tmp{os.getpid()}")
        body = {"key": [kind, list(index), nvars, __version__], "value": to_json_obj(poly)}
        with open(tmp, "w") as fh:
            json.dump(body, fh, separators=(",", ":"))
        os.replace(tmp, p)

    def fetch(self, kind, index, nvars, compute):
        hit = self.get(kind, index, nvars)
        if hit is not None:
            return hit
        value = compute()
        self.put(kind, index, nvars, value)
        return value

    def entries(self):
        if not self.directory.exists():
            return []
        return sorted(self.directory.glob("*/*.json"))

    def stats(self) -> dict:
        files = self.entries()
        return {
            "directory": str(self.directory),
            "entries": len(files),
            "bytes": sum(f.stat().st_size for f in files),
        }

    def clear(self) -> int:
        files = self.entries()
        for f in files:
            f.unlink()
        return len(files)


def default_cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV, Path.home() / ".cache" / "artifact"))


_CACHE: ResultCache | None = None


def set_cache(cache: ResultCache | None):
    global _CACHE
    _CACHE = cache


def _family(kind, index, nvars, compute):
    if _CACHE is None:
        return compute()
    return _CACHE.fetch(kind, index, nvars, compute)


def schubert_cached(kind: str, w) -> Polynomial:
    w = normalize_perm(tuple(w)) or (1,)
    n = 2 * len(w) if kind == "double_schubert" else len(w)
    return _family(kind, w, n, lambda: schubert_family(kind, w))


def demazure_cached(kind: str, alpha) -> Polynomial:
    alpha = tuple(alpha)
    return _family(kind, alpha, len(alpha), lambda: demazure_family(kind, alpha))


# instance generators

def key_compositions(max_size: int, max_zeros: int, min_size: int = 1) -> list:
    """Compositions with nonzero last part, size in range, at most max_zeros zeros."""
    out = []
    for total in range(min_size, max_size + 1):
        for strict in strict_compositions(total):
            k = len(strict)
            for zeros in range(0, max_zeros + 1):
                # place zeros among the first k - 1 + zeros slots, last slot positive
                for c in compositions(zeros, k):
                    alpha = []
                    for z, part in zip(c, strict):
                        alpha.extend([0] * z)
                        alpha.append(part)
                    out.append(tuple(alpha))
    return sorted(set(out), key=lambda a: (sum(a), len(a), a))


def weak_compositions(max_size: int, max_len: int, max_zeros: int) -> list:
    out = []
    for n in range(1, max_len + 1):
        for total in range(1, max_size + 1):
            for a in compositions(total, n):
                if a.count(0) <= max_zeros:
                    out.append(a)
    return sorted(out, key=lambda a: (sum(a), len(a), a))


def random_diagrams(count: int, n: int, seed: int, density: float = 0.4) -> list:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        cells = [(r, c) for r in range(1, n + 1) for c in range(1, n + 1) if rng.random() < density]
        if cells:
            out.append(tuple(sorted(cells)))
    return out


def random_qt_points(count: int, seed: int, height: int = 10) -> list:
    rng = random.Random(seed)
    pts = []
    while len(pts) < count:
        q = Fraction(rng.randint(-height, height), rng.randint(1, height))
        t = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if t in (1, -1, 0) or q == t:
            continue
        if (q, t) not in pts:
            pts.append((q, t))
    return pts


# per-instance checks; each returns (passed, witness)

def _points(pts):
    return sorted(list(p) for p in pts)


def _set_diff_witness(a: set, b: set):
    extra = sorted(a - b)
    missing = sorted(b - a)
    return {"only_first": [list(x) for x in extra[:5]], "only_second": [list(x) for x in missing[:5]]}


def check_main1(w, params):
    n = len(w)
    S = schubert_cached("schubert", w).embed(n)
    schub = schubitope_lattice_points(rothe_diagram(w, n))
    newton = lattice_points(newton_polytope(S))
    if schub == newton:
        return True, None
    return False, _set_diff_witness(schub, newton)


def _snp_check(f):
    res = is_snp(f)
    return (True, None) if res else (False, {"lattice_point": list(res.witness)})


def check_main2(w, params):
    return _snp_check(schubert_cached("schubert", w))


def check_double(w, params):
    return _snp_check(schubert_cached("double_schubert", w))


def check_grothendieck(w, params):
    return _snp_check(schubert_cached("grothendieck", w))


def check_keytope(alpha, params):
    D = skyline_diagram(alpha)
    kappa = demazure_cached("key", alpha).embed(D.n)
    schub = schubitope_lattice_points(D)
    newton = lattice_points(newton_polytope(kappa))
    if schub == newton:
        return True, None
    return False, _set_diff_witness(schub, newton)


def check_key_snp(alpha, params):
    return _snp_check(demazure_cached("key", alpha))


def check_atom_snp(alpha, params):
    return _snp_check(demazure_cached("atom", alpha))


def check_omega_snp(alpha, params):
    return _snp_check(demazure_cached("grothendieck_key", alpha))


def check_lascoux_snp(alpha, params):
    return _snp_check(demazure_cached("lascoux_atom", alpha))


def check_key_bruhat(alpha, params):
    kappa = demazure_cached("key", alpha)
    below = order_kappa_downset(alpha)
    missing = sorted(b for b in below if kappa._terms.get(b, 0) <= 0)
    if kappa._terms.get(tuple(alpha)) != 1:
        return False, {"leading_coefficient": str(kappa._terms.get(tuple(alpha), 0))}
    if missing:
        return False, {"missing": [list(m) for m in missing[:5]]}
    return True, None


def check_key_vertices(alpha, params):
    kappa = demazure_cached("key", alpha)
    verts = vertices(newton_polytope(kappa))
    expected = {b for b in rearrangements(alpha) if composition_preceq(b, alpha)}
    if verts == expected:
        return True, None
    return False, _set_diff_witness(verts, expected)


def check_generic_nonsymm(alpha, params):
    down = order_s_downset(alpha)
    P = LatticePolytope(len(alpha), down)
    extra = sorted(lattice_points(P) - down)
    if extra:
        return False, {"lattice_point": list(extra[0])}
    return True, None


def check_ehrhart_positive(item, params):
    kind, data = item
    D = rothe_diagram(data, len(data)) if kind == "rothe" else Diagram(params.get("grid", 5), data)
    coeffs = schubitope_ehrhart(D)
    if all(c > 0 for c in coeffs):
        return True, None
    return False, {"coefficients": [str(c) for c in coeffs]}


def check_macdonald_generic(item, params):
    lam, (q0, t0) = item
    n = sum(lam)
    try:
        P = macdonald_P(lam, q0, t0, n)
    except NonGenericPoint:
        return None, {"skipped": "non-generic point", "q": str(q0), "t": str(t0)}
    res = is_snp(P)
    if not res:
        return False, {"lattice_point": list(res.witness), "q": str(q0), "t": str(t0)}
    perm = LatticePolytope(n, rearrangements(pad(lam, n)))
    if not polytopes_equal(newton_polytope(P), perm):
        return False, {"newton_differs_from_permutahedron": True, "q": str(q0), "t": str(t0)}
    return True, None


def check_stanley_snp(w, params):
    n = max(length(w), 1)
    F = stanley_symmetric(w, n)
    return _snp_check(F)


def check_quasi_newton_eq(alpha, params):
    n = params.get("vars", 5)
    F = fundamental_qsym(alpha, n)
    M = monomial_qsym(alpha, n)
    if F.is_zero() and M.is_zero():
        return True, None
    PF, PM = newton_polytope(F), newton_polytope(M)
    if not polytopes_equal(PF, PM):
        return False, {"newton_differs": True}
    expected = {g for g in compositions(sum(alpha), n) if positive_part(g) == tuple(alpha)}
    verts = vertices(PF)
    if verts != expected:
        return False, _set_diff_witness(verts, expected)
    return True, None


def check_kohnert_contain(w, params):
    n = len(w)
    D = rothe_diagram(w, n)
    ineqs = schubitope_inequalities(D)
    for a in sorted(kohnert_polynomial(D).support()):
        if sum(a) != len(D):
            return False, {"exponent": list(a), "violates": "sum"}
        for S, b in ineqs:
            if sum(a[i - 1] for i in S) > b:
                return False, {"exponent": list(a), "subset": list(S), "bound": b}
    return True, None


def check_grothendieck_slice(w, params):
    G = schubert_cached("grothendieck", w)
    S = schubert_cached("schubert", w)
    ell = length(w)
    if G.min_degree() != ell:
        return False, {"lowest_degree": G.min_degree()}
    PG = newton_polytope(G)
    lo = [min(g[k] for g in PG.generators) for k in range(G.nvars)]
    hi = [max(g[k] for g in PG.generators) for k in range(G.nvars)]
    slice_pts = set()
    for c in compositions(ell, G.nvars, hi):
        if all(a >= l for a, l in zip(c, lo)) and contains_point(PG, c):
            slice_pts.add(c)
    schub = lattice_points(newton_polytope(S))
    if slice_pts != schub:
        return False, _set_diff_witness(slice_pts, schub)
    # the slice is a face: its hull is spanned by the degree-ell generators
    face = LatticePolytope(G.nvars, [g for g in PG.generators if sum(g) == ell])
    if not polytopes_equal(face, newton_polytope(S)):
        return False, {"face_differs": True}
    return True, None


def _sn_instances(params):
    n = params.get("sn", 4)
    return [tuple(w) for w in permutations_of_length(n)]


def _key_instances(params):
    return key_compositions(params.get("max_size", 4), params.get("max_zeros", 2))


TARGETS = {
    "main1": (check_main1, _sn_instances),
    "main2": (check_main2, _sn_instances),
    "double": (check_double, _sn_instances),
    "grothendieck": (check_grothendieck, _sn_instances),
    "keytope": (check_keytope, _key_instances),
    "key_snp": (check_key_snp, _key_instances),
    "key_bruhat": (check_key_bruhat, _key_instances),
    "atom_snp": (check_atom_snp, _key_instances),
    "key_vertices": (check_key_vertices, _key_instances),
    "omega_snp": (check_omega_snp, _key_instances),
    "lascoux_snp": (check_lascoux_snp, _key_instances),
    "generic_nonsymm": (
        check_generic_nonsymm,
        lambda p: weak_compositions(
            p.get("max_size", 4), p.get("max_len", p.get("max_size", 4)), p.get("max_zeros", 3)
        ),
    ),
    "ehrhart_positive": (
        check_ehrhart_positive,
        lambda p: [("rothe", w) for w in _sn_instances(p)]
        + [
            ("random", d)
            for d in random_diagrams(p.get("random", 0), p.get("grid", 5), p.get("seed", 0))
        ],
    ),
    "macdonald_generic": (
        check_macdonald_generic,
        lambda p: [
            (lam, pt)
            for d in range(1, p.get("max_size", 3) + 1)
            for lam in partitions_of(d)
            for pt in random_qt_points(p.get("points", 5), p.get("seed", 0))
        ],
    ),
    "stanley_snp": (check_stanley_snp, _sn_instances),
    "quasi_newton_eq": (
        check_quasi_newton_eq,
        lambda p: [
            a for d in range(1, p.get("max_size", 4) + 1) for a in strict_compositions(d)
        ],
    ),
    "kohnert_contain": (check_kohnert_contain, _sn_instances),
    "grothendieck_slice": (check_grothendieck_slice, _sn_instances),
}

DEFAULT_PARAMS = {
    "main1": {"sn": 4},
    "main2": {"sn": 4},
    "double": {"sn": 3},
    "grothendieck": {"sn": 4},
    "keytope": {"max_size": 4, "max_zeros": 2},
    "key_snp": {"max_size": 4, "max_zeros": 2},
    "key_bruhat": {"max_size": 4, "max_zeros": 2},
    "atom_snp": {"max_size": 4, "max_zeros": 2},
    "key_vertices": {"max_size": 4, "max_zeros": 2},
    "omega_snp": {"max_size": 4, "max_zeros": 2},
    "lascoux_snp": {"max_size": 4, "max_zeros": 2},
    "generic_nonsymm": {"max_size": 4, "max_len": 4, "max_zeros": 3},
    "ehrhart_positive": {"sn": 4, "random": 0, "grid": 5, "seed": 0},
    "macdonald_generic": {"max_size": 3, "points": 5, "seed": 0},
    "stanley_snp": {"sn": 4},
    "quasi_newton_eq": {"max_size": 4, "vars": 5},
    "kohnert_contain": {"sn": 4},
    "grothendieck_slice": {"sn": 4},
}


def normalize_target(name: str) -> str:
    return name.replace("-", "_")


def _run_one(args):
    target, instance, params = args
    check = TARGETS[target][0]
    return check(instance, params)


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    if isinstance(x, list):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    return x


def run_sweep(target: str, params: dict | None = None, jobs: int = 1, max_instances: int | None = None) -> dict:
    """Check every instance of a target over its declared range; collect all failures."""
    target = normalize_target(target)
    if target not in TARGETS:
        raise KeyError(f"unknown sweep target {target!r}")
    merged = dict(DEFAULT_PARAMS[target])
    merged.update(params or {})
    start = time.perf_counter()
    instances = TARGETS[target][1](merged)
    truncated = False
    if max_instances is not None and len(instances) > max_instances:
        instances = instances[:max_instances]
        truncated = True
    work = [(target, inst, merged) for inst in instances]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_one, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        results = [_run_one(w) for w in work]
    passes, failures, skipped = 0, [], []
    for inst, (ok, witness) in zip(instances, results):
        if ok is None:
            skipped.append({"instance": _jsonable(inst), "reason": witness})
        elif ok:
            passes += 1
        else:
            failures.append({"instance": _jsonable(inst), "witness": _jsonable(witness)})
    checked = len(instances) - len(skipped)
    report = {
        "target": target,
        "params": _jsonable(merged),
        "instances": checked,
        "passes": passes,
        "failures": failures,
        "fingerprint": {
            "version": __version__,
            "python": platform.python_version(),
            "params_digest": hashlib.sha256(
                json.dumps([target, _jsonable(merged)], sort_keys=True).encode()
            ).hexdigest()[:16],
        },
        "seconds": round(time.perf_counter() - start, 3),
        "truncated": truncated,
    }
    if skipped:
        report["skipped"] = skipped
    return report


# dominance poset on permutations of fixed length

class PosetSnapshot:
    def __init__(self, elements, relation):
        self.elements = list(elements)
        self.relation = set(relation)
        self.hasse = self._hasse()

    def leq(self, u, v) -> bool:
        return (u, v) in self.relation

    def _hasse(self):
        edges = []
        for u, v in sorted(self.relation):
            if u == v:
                continue
            if not any(
                z not in (u, v) and (u, z) in self.relation and (z, v) in self.relation
                for z in self.elements
            ):
                edges.append((u, v))
        return edges

    def is_partial_order(self) -> bool:
        E = self.elements
        R = self.relation
        refl = all((x, x) in R for x in E)
        anti = all(not ((x, y) in R and (y, x) in R) or x == y for x in E for y in E)
        trans = all((x, z) in R for x, y in R for y2, z in R if y == y2)
        return refl and anti and trans

    def minimal(self):
        return [x for x in self.elements if not any((y, x) in self.relation and y != x for y in self.elements)]

    def maximal(self):
        return [x for x in self.elements if not any((x, y) in self.relation and y != x for y in self.elements)]

    def upper_bounds(self, u, v):
        return [z for z in self.elements if (u, z) in self.relation and (v, z) in self.relation]

    def minimal_upper_bounds(self, u, v):
        ub = self.upper_bounds(u, v)
        return [z for z in ub if not any(y != z and (y, z) in self.relation for y in ub)]

    def non_lattice_pairs(self):
        out = []
        for i, u in enumerate(self.elements):
            for v in self.elements[i + 1:]:
                mub = self.minimal_upper_bounds(u, v)
                if len(mub) > 1:
                    out.append((u, v, mub))
        return out

    def edge_list(self):
        return [[perm_str(u), perm_str(v)] for u, v in self.hasse]

    def to_dot(self) -> str:
        lines = ["digraph dominance {", "  rankdir=BT;"]
        for x in self.elements:
            lines.append(f'  "{perm_str(x)}";')
        for u, v in self.hasse:
            lines.append(f'  "{perm_str(u)}" -> "{perm_str(v)}";')
        lines.append("}")
        return "\n".join(lines)

    def to_json_obj(self):
        return {
            "elements": [perm_str(x) for x in self.elements],
            "hasse": self.edge_list(),
        }


def perm_str(w) -> str:
    w = tuple(w)
    if len(w) <= 9:
        return "".join(str(v) for v in w)
    return ",".join(str(v) for v in w)


def schubert_newton(w, dim: int) -> LatticePolytope:
    S = schubert_cached("schubert", w)
    return newton_polytope(S).padded(dim) if S.nvars <= dim else newton_polytope(S)


def dominance_poset(ell: int, n: int) -> PosetSnapshot:
    """Length-ell permutations of S_n under containment of Schubert Newton polytopes."""
    elems = permutations_of_length(n, ell)
    polys = {w: schubert_newton(w, n) for w in elems}
    rel = set()
    for u in elems:
        for v in elems:
            if u == v or contains_polytope(polys[v], polys[u]):
                rel.add((u, v))
    return PosetSnapshot(elems, rel)


def staircase_word_perm(ell: int) -> tuple:
    """s_1 s_3 ... s_{2 ell - 1} in S_{2 ell}."""
    return word_to_perm([2 * k + 1 for k in range(ell)], 2 * ell) if ell else (1,)


def upper_bound_witness(u, v, max_shift: int = 12):
    """Find w = 1^N x (s_1 s_3 ... s_{2l-1}) with both Newton polytopes inside Newton(S_w).

    Returns (w, N).  Raises if no shift up to ``max_shift`` works.
    """
    u, v = tuple(u), tuple(v)
    ell = length(u)
    if length(v) != ell:
        raise ValueError("permutations must have the same length")
    base = staircase_word_perm(ell)
    for N in range(0, max_shift + 1):
        w = shift_perm(base, N)
        dim = max(len(normalize_perm(w) or (1,)), len(normalize_perm(u) or (1,)), len(normalize_perm(v) or (1,)))
        Pw = schubert_newton(w, dim)
        if contains_polytope(Pw, schubert_newton(u, dim)) and contains_polytope(
            Pw, schubert_newton(v, dim)
        ):
            return w, N
    raise ArithmeticError(f"no upper bound found with shift <= {max_shift}")

