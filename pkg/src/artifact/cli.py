"""Command-line front end.

Exit codes: 0 success, 1 semantic failure (with witness), 2 parse or usage
error, 3 out of scope, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path
from fractions import Fraction

from . import __version__
from .algebra_core import Polynomial, to_json_obj, to_text
from .combinatorics import SimpleGraph, is_permutation, length, normalize_perm, to_partition
from .families import (
    CLASSICAL_KINDS,
    OUT_OF_SCOPE,
    NonGenericPoint,
    OutOfScope,
    chromatic_symmetric,
    classical_basis,
    expand_in_basis,
    macdonald_P,
    product_family,
    qsym_basis,
    reutenauer_q,
    stanley_symmetric,
)
from .polytope import (
    contains_point,
    ehrhart,
    format_rational_list,
    is_snp,
    lattice_points,
    newton_polytope,
    vertices,
)
from .schubitope import (
    CapExceeded,
    Diagram,
    kohnert_polynomial,
    minimize_inequalities,
    rothe_diagram,
    schubitope_ehrhart,
    schubitope_inequalities,
    schubitope_lattice_points,
    skyline_diagram,
    system_to_json_obj,
    system_to_text,
)
from . import verify

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_SCOPE, EXIT_CAP = 0, 1, 2, 3, 4


class ParseError(ValueError):
    pass


# argument parsing helpers

def parse_ints(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from None


def parse_perm(text: str) -> tuple:
    text = text.strip()
    if "," in text:
        w = parse_ints(text)
    elif text.isdigit():
        w = tuple(int(c) for c in text)
    else:
        raise ParseError(f"cannot read permutation {text!r}")
    if not is_permutation(w):
        raise ParseError(f"{text!r} is not a permutation")
    return w


_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])(\d+)|(\S))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, var, idx, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif var is not None:
            if int(idx) < 1:
                raise ParseError(f"variable index must be positive: {var}{idx}")
            out.append((var, int(idx)))
        elif op in "+-*/^()":
            out.append(("op", op))
        else:
            raise ParseError(f"unexpected character {op!r}")
        pos = m.end()
    return out


def parse_expression(text: str, nvars: int | None = None) -> Polynomial:
    """Parse a polynomial over x1, x2, ... and y1, y2, ...; y's follow the x-block."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    nx = max([i for k, i in tokens if k == "x"], default=0)
    ny = max([i for k, i in tokens if k == "y"], default=0)
    if nvars is not None:
        if nvars < nx:
            raise ParseError(f"expression uses x{nx} but only {nvars} variables requested")
        nx = nvars
    N = max(nx + ny, 1)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(kind=None, value=None):
        nonlocal pos
        tok = peek()
        if tok is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"unexpected {'end of input' if tok is None else tok[1]!r}")
        pos += 1
        return tok

    def expr():
        node = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term():
        node = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = unary()
            if op == "*":
                node = node * rhs
            else:
                if rhs.degree() > 0 or rhs.is_zero():
                    raise ParseError("division only by nonzero constants")
                node = node.scale(Fraction(1) / rhs._terms[(0,) * N])
        return node

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            k = take("num")[1]
            return base**k
        return base

    def atom():
        tok = peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if tok == ("op", "("):
            take()
            node = expr()
            take("op", ")")
            return node
        take()
        if tok[0] == "num":
            return Polynomial.constant(N, tok[1])
        if tok[0] == "x":
            return Polynomial.variable(tok[1], N)
        if tok[0] == "y":
            return Polynomial.variable(nx + tok[1], N)
        raise ParseError(f"unexpected {tok[1]!r}")

    out = expr()
    if pos != len(tokens):
        raise ParseError(f"unexpected {tokens[pos][1]!r}")
    return out


FAMILY_ALIASES = {
    "double-schubert": "double_schubert",
    "lascoux-atom": "lascoux_atom",
    "grothendieck-key": "grothendieck_key",
    "omega": "grothendieck_key",
    "monomial-qsym": "monomial_qsym",
    "fundamental-qsym": "fundamental_qsym",
    "quasi-schur": "quasi_schur",
    "reutenauer-q": "reutenauer_q",
    "hall-littlewood": "hall_littlewood",
    "resultant-support": "resultant_support",
    "vandermonde-power": "vandermonde_power",
    "q-discriminant-neg1": "q_discriminant_neg1",
    "binary-matrix-series": "binary_matrix_series",
    "modified-macdonald": "modified_macdonald",
    "schur-p": "schur_p",
    "schur-q": "schur_q",
    "kostka-foulkes": "kostka_foulkes",
    "star-chromatic": "star_chromatic",
}

SYMMETRIC_OUTPUT = {"reutenauer_q"}


def build_family(name: str, index: str, nvars: int | None, q=None, t=None) -> Polynomial:
    kind = FAMILY_ALIASES.get(name, name).replace("-", "_")
    if kind in OUT_OF_SCOPE:
        raise OutOfScope(f"{name} is out of scope")
    if kind in ("schubert", "grothendieck", "double_schubert"):
        f = verify.schubert_cached(kind, parse_perm(index))
        return f.embed(nvars) if nvars and kind != "double_schubert" and nvars > f.nvars else f
    if kind in ("key", "atom", "lascoux_atom", "grothendieck_key"):
        f = verify.demazure_cached(kind, parse_ints(index))
        return f.embed(nvars) if nvars and nvars > f.nvars else f
    if kind == "stanley":
        w = parse_perm(index)
        return stanley_symmetric(w, nvars or max(length(w), 1))
    lam_like = parse_ints(index)
    if kind in CLASSICAL_KINDS:
        lam = to_partition(lam_like)
        return classical_basis(kind, lam, nvars or max(len(lam), 1))
    if kind in ("monomial_qsym", "fundamental_qsym", "quasi_schur"):
        return qsym_basis(kind, lam_like, nvars or max(len(lam_like), 1))
    if kind == "reutenauer_q":
        lam = to_partition(lam_like)
        return reutenauer_q(lam, nvars or sum(lam))
    if kind in ("macdonald", "hall_littlewood"):
        lam = to_partition(lam_like)
        q0 = Fraction(0) if kind == "hall_littlewood" else Fraction(q if q is not None else 0)
        t0 = Fraction(t if t is not None else 0)
        return macdonald_P(lam, q0, t0, nvars or sum(lam))
    if kind in ("resultant_support", "vandermonde_power", "discriminant", "q_discriminant_neg1",
                "binary_matrix_series"):
        return product_family(kind, *lam_like)
    if kind == "star_chromatic":
        (k,) = lam_like
        return chromatic_symmetric(SimpleGraph.star(k), nvars or k + 1)
    raise ParseError(f"unknown family {name!r}")


def format_expansion(coeffs: dict, letter: str = "s") -> str:
    if not coeffs:
        return "0"
    parts = []
    for lam in sorted(coeffs, key=lambda l: (-sum(l), tuple(-p for p in l))):
        c = Fraction(coeffs[lam])
        basis = f"{letter}({','.join(str(p) for p in lam)})"
        if c == 1:
            body, sign = basis, "+"
        elif c == -1:
            body, sign = basis, "-"
        else:
            body, sign = f"{abs(c)}*{basis}", "-" if c < 0 else "+"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def _emit(args, text: str, obj):
    if args.format == "json":
        print(json.dumps(obj, sort_keys=True, separators=(",", ":")))
    else:
        print(text)


def _poly_from_args(args) -> Polynomial:
    if getattr(args, "expr", None):
        return parse_expression(args.expr, args.vars)
    if getattr(args, "family", None):
        if ":" not in args.family:
            raise ParseError("--family expects kind:index")
        name, index = args.family.split(":", 1)
        return build_family(name, index, args.vars, args.q, args.t)
    raise ParseError("give --expr or --family")


def _point_json(p):
    return [str(Fraction(a)) if Fraction(a).denominator != 1 else int(a) for a in p]


# subcommands

def cmd_family(args) -> int:
    f = build_family(args.name, args.index, args.vars, args.q, args.t)
    kind = FAMILY_ALIASES.get(args.name, args.name).replace("-", "_")
    basis = args.basis or ("schur" if kind in SYMMETRIC_OUTPUT else None)
    if basis:
        coeffs = expand_in_basis(f, basis)
        letter = {"schur": "s", "monomial": "m", "elementary": "e", "homogeneous": "h",
                  "power": "p", "forgotten": "f"}[basis]
        _emit(args, format_expansion(coeffs, letter),
              {"basis": basis, "coefficients": [[list(l), str(c)] for l, c in sorted(coeffs.items())]})
    else:
        _emit(args, to_text(f), to_json_obj(f))
    return EXIT_OK


def cmd_polytope(args) -> int:
    f = _poly_from_args(args)
    P = newton_polytope(f)
    if args.action == "snp":
        res = is_snp(f)
        if res:
            _emit(args, "SNP", {"snp": True})
            return EXIT_OK
        _emit(args, f"not SNP; witness {list(res.witness)}", {"snp": False, "witness": list(res.witness)})
        return EXIT_FAIL
    if args.action == "vertices":
        vs = sorted(vertices(P), reverse=True)
        _emit(args, "\n".join(str(list(v)) for v in vs), [list(v) for v in vs])
    elif args.action == "lattice-points":
        pts = sorted(lattice_points(P), reverse=True)
        _emit(args, "\n".join(str(list(v)) for v in pts), [list(v) for v in pts])
    elif args.action == "ehrhart":
        coeffs = ehrhart(P)
        _emit(args, format_rational_list(coeffs), [str(c) for c in coeffs])
    elif args.action == "contains":
        if not args.point:
            raise ParseError("contains needs --point")
        try:
            pt = tuple(Fraction(a) for a in args.point.split(","))
        except ValueError:
            raise ParseError(f"cannot read point {args.point!r}") from None
        inside = contains_point(P, pt)
        _emit(args, "true" if inside else "false", {"contains": inside, "point": _point_json(pt)})
        return EXIT_OK if inside else EXIT_FAIL
    return EXIT_OK


def _diagram_from_args(args) -> Diagram:
    if args.rothe:
        D = rothe_diagram(parse_perm(args.rothe))
        return D if args.full_grid else D.trimmed()
    if args.skyline:
        return skyline_diagram(parse_ints(args.skyline))
    if args.cells:
        try:
            obj = json.loads(args.cells)
        except json.JSONDecodeError as e:
            raise ParseError(f"--cells is not JSON: {e}") from None
        if isinstance(obj, dict):
            return Diagram.from_json_obj(obj)
        cells = [tuple(c) for c in obj]
        n = max((max(r, c) for r, c in cells), default=1)
        return Diagram(n, cells)
    raise ParseError("give --rothe, --skyline or --cells")


def cmd_schubitope(args) -> int:
    D = _diagram_from_args(args)
    if args.action in ("ineqs", "minimize"):
        ineqs = schubitope_inequalities(D) if args.action == "ineqs" else minimize_inequalities(D)
        _emit(args, system_to_text(D, ineqs), system_to_json_obj(D, ineqs))
    elif args.action == "lattice-points":
        pts = sorted(schubitope_lattice_points(D), reverse=True)
        _emit(args, "\n".join(str(list(p)) for p in pts), [list(p) for p in pts])
    elif args.action == "ehrhart":
        coeffs = schubitope_ehrhart(D)
        _emit(args, format_rational_list(coeffs), [str(c) for c in coeffs])
    elif args.action == "kohnert":
        K = kohnert_polynomial(D)
        _emit(args, to_text(K), to_json_obj(K))
    return EXIT_OK


SWEEP_OPTIONS = ("sn", "max_size", "max_zeros", "max_len", "points", "random", "grid")


def cmd_verify(args) -> int:
    target = verify.normalize_target(args.target)
    if target not in verify.TARGETS:
        print(f"error: unknown target {args.target!r}", file=sys.stderr)
        return EXIT_PARSE
    params = {k: getattr(args, k) for k in SWEEP_OPTIONS if getattr(args, k, None) is not None}
    if args.vars is not None:
        params["vars"] = args.vars
    if args.seed is not None:
        params["seed"] = args.seed
    report = verify.run_sweep(target, params, jobs=args.jobs, max_instances=args.max_instances)
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, separators=(",", ":")))
    else:
        lines = [f"{report['target']}: {report['passes']}/{report['instances']} pass"]
        if report.get("skipped"):
            lines.append(f"skipped (non-generic): {len(report['skipped'])}")
        for fail in report["failures"]:
            lines.append(f"FAIL {fail['instance']}: {json.dumps(fail['witness'], sort_keys=True)}")
        if report["truncated"]:
            lines.append("partial: instance cap reached")
        print("\n".join(lines))
    return EXIT_OK if not report["failures"] else EXIT_FAIL


def cmd_poset(args) -> int:
    if args.action == "hasse":
        snap = verify.dominance_poset(args.length, args.n)
        if args.format == "json":
            _emit(args, "", snap.to_json_obj())
        elif args.dot:
            print(snap.to_dot())
        else:
            print("\n".join(f"{u} < {v}" for u, v in snap.edge_list()))
        return EXIT_OK
    u, v = parse_perm(args.u), parse_perm(args.v)
    w, N = verify.upper_bound_witness(u, v)
    _emit(args, f"{verify.perm_str(normalize_perm(w))} (shift {N})",
          {"w": list(normalize_perm(w)), "shift": N})
    return EXIT_OK


def cmd_cache(args) -> int:
    cache = verify.ResultCache(args.cache_dir or verify.default_cache_dir())
    if args.action == "stats":
        st = cache.stats()
        _emit(args, f"{st['directory']}: {st['entries']} entries, {st['bytes']} bytes", st)
    elif args.action == "clear":
        n = cache.clear()
        _emit(args, f"removed {n} entries", {"removed": n})
    else:
        _emit(args, str(cache.directory), {"directory": str(cache.directory)})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--vars", type=int, default=argparse.SUPPRESS, help="number of x variables")
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", default=argparse.SUPPRESS)
    common.add_argument("--no-cache", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="artifact", parents=[common],
                                description="Newton polytopes, saturation and Schubitopes.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("family", parents=[common], help="construct a polynomial family")
    f.add_argument("name")
    f.add_argument("index")
    f.add_argument("--basis", choices=CLASSICAL_KINDS)
    f.add_argument("--q")
    f.add_argument("--t")
    f.set_defaults(func=cmd_family)

    poly = sub.add_parser("polytope", parents=[common], help="Newton polytope queries")
    poly.add_argument("action", choices=("snp", "vertices", "lattice-points", "ehrhart", "contains"))
    poly.add_argument("--expr")
    poly.add_argument("--family", help="kind:index, e.g. schubert:1432")
    poly.add_argument("--point")
    poly.add_argument("--q")
    poly.add_argument("--t")
    poly.set_defaults(func=cmd_polytope)

    s = sub.add_parser("schubitope", parents=[common], help="Schubitope data for a diagram")
    s.add_argument("action", choices=("ineqs", "minimize", "lattice-points", "ehrhart", "kohnert"))
    s.add_argument("--rothe")
    s.add_argument("--skyline")
    s.add_argument("--cells", help="JSON list of [row, col] or {n, cells}")
    s.add_argument("--full-grid", action="store_true", help="keep the n x n grid of S_n for --rothe")
    s.set_defaults(func=cmd_schubitope)

    v = sub.add_parser("verify", parents=[common], help="run a verification sweep")
    v.add_argument("target")
    v.add_argument("--sn", type=int)
    v.add_argument("--max-size", type=int)
    v.add_argument("--max-zeros", type=int)
    v.add_argument("--max-len", type=int)
    v.add_argument("--points", type=int)
    v.add_argument("--random", type=int, help="random diagrams (ehrhart-positive)")
    v.add_argument("--grid", type=int)
    v.add_argument("--max-instances", type=int)
    v.set_defaults(func=cmd_verify)

    po = sub.add_parser("poset", parents=[common], help="dominance order on permutations")
    psub = po.add_subparsers(dest="action", required=True)
    h = psub.add_parser("hasse", parents=[common])
    h.add_argument("length", type=int)
    h.add_argument("n", type=int)
    h.add_argument("--dot", action="store_true")
    ub = psub.add_parser("upper-bound", parents=[common])
    ub.add_argument("u")
    ub.add_argument("v")
    po.set_defaults(func=cmd_poset)

    c = sub.add_parser("cache", parents=[common], help="inspect or clear the result cache")
    c.add_argument("action", choices=("stats", "clear", "path"))
    c.set_defaults(func=cmd_cache)
    return p


_DEFAULTS = {"vars": None, "format": "text", "jobs": 1, "seed": None, "cache_dir": None, "no_cache": False}


def _open_cache(directory):
    """The result cache, or None when its directory cannot be written."""
    path = Path(directory) if directory else verify.default_cache_dir()
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError:
        return None
    return verify.ResultCache(path) if os.access(path, os.W_OK) else None


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for k, val in _DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, val)
    if args.command != "cache":
        verify.set_cache(None if args.no_cache else _open_cache(args.cache_dir))
    try:
        return args.func(args)
    except OutOfScope as e:
        print(f"out of scope: {e}", file=sys.stderr)
        return EXIT_SCOPE
    except (CapExceeded, OverflowError) as e:
        print(f"resource cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except NonGenericPoint as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    except (ParseError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
