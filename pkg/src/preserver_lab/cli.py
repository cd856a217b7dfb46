"""Command-line front end: ``preserver-lab analyze|generate|symbol``.

Operator and domain specs are JSON documents.  Scalars are integers,
rational strings ``"p/q"``, decimal numbers (read exactly as decimals) or
``[re, im]`` pairs of those.  Reports are JSON with sorted keys, so a
fixed spec, seed and budget always give byte-identical output.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from decimal import Decimal
from fractions import Fraction

import numpy as np

from . import __version__
from .classify import is_hyperbolic, pencil_relation
from .domains import INF, Mobius, named_domain
from .errors import (PreserverLabError, DegenerateMap, NonNormalizedHalfPlane,
                     ParseError, ValidationError)
from .operators import (DiffOpForm, LinearOperator, MultiplierSeq, RangeAnalysis,
                        SymbolSeries, symbol)
from .poly import Poly1, Poly2, real_root_count
from .preservers import (InputWitness, PreserverReport, algebraic_sweep,
                         boundary_classify, circular_classify, finitehyp_classify,
                         finitehypC_classify, finitestab_classify, in_target_class,
                         multiplier_test, transcendental_probe)
from .scalar import QQi
from .stab2 import (DEFAULT_BUDGET, Certificate, SearchEvidence, Verdict2,
                    Witness, gen_real_stable)

SCHEMA_VERSION = 1
PROBLEMS = ("hyp", "hypC", "stab", "circular", "boundary", "sweep",
            "transcendental", "multiplier")
DOMAIN_KINDS = ("real_line", "upper_half_plane", "lower_half_plane",
                "unit_disk", "unit_circle", "unit_disk_exterior")
EXIT_PRESERVER, EXIT_NON_PRESERVER, EXIT_UNKNOWN, EXIT_ERROR, EXIT_RECHECK = 0, 1, 2, 3, 4


class RecheckFailed(PreserverLabError):
    """An emitted witness did not survive independent re-verification."""


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

def _real(x, ptr):
    if isinstance(x, bool):
        raise ValidationError("booleans are not scalars", ptr)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # the JSON text was a decimal; read it as that decimal
        return Fraction(Decimal(repr(x)))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"cannot read {x!r} as a rational", ptr) from None
    raise ValidationError(f"expected a number, got {type(x).__name__}", ptr)


def parse_scalar(x, ptr=""):
    """Exact QQi from the wire encoding."""
    if isinstance(x, list):
        if len(x) != 2:
            raise ValidationError("complex scalars are [re, im] pairs", ptr)
        return QQi(_real(x[0], f"{ptr}/0"), _real(x[1], f"{ptr}/1"))
    return QQi(_real(x, ptr))


def encode_scalar(c):
    """Canonical wire form: rational strings, [re, im] when not real."""
    if isinstance(c, QQi):
        if c.im:
            return [str(c.re), str(c.im)]
        return str(c.re)
    c = complex(c)
    if c.imag:
        return [c.real, c.imag]
    return c.real


def _poly_list(seq, ptr):
    if not isinstance(seq, list):
        raise ValidationError("expected a coefficient list", ptr)
    return tuple(parse_scalar(v, f"{ptr}/{i}") for i, v in enumerate(seq))


@dataclasses.dataclass(frozen=True)
class OperatorSpec:
    degree_bound: int
    kind: str          # matrix | multiplier | differential
    data: tuple        # rows of QQi, lambda values, or Q_k coefficient rows

    def operator(self):
        n = self.degree_bound
        if self.kind == "matrix":
            return LinearOperator([Poly1(list(r)) for r in self.data], n)
        if self.kind == "multiplier":
            return LinearOperator.from_multipliers(list(self.data[:n + 1]), n)
        return LinearOperator.from_diffop(DiffOpForm([Poly1(list(q)) for q in self.data]), n)

    def to_json(self):
        if self.kind in ("matrix", "differential"):
            body = [[encode_scalar(c) for c in r] for r in self.data]
        else:
            body = [encode_scalar(c) for c in self.data]
        return {"degree_bound": self.degree_bound, "representation": {self.kind: body}}


@dataclasses.dataclass(frozen=True)
class DomainSpec:
    mobius: Mobius
    view: str
    shorthand: str = ""
    view_given: bool = True

    def to_json(self):
        if self.shorthand:
            out = {"kind": self.shorthand}
        else:
            out = {"mobius": {k: encode_scalar(getattr(self.mobius, k)) for k in "abcd"}}
        if self.view_given:
            out["view"] = self.view
        return out


def parse_operator(doc):
    if "degree_bound" not in doc:
        raise ValidationError("missing degree_bound", "/degree_bound")
    n = doc["degree_bound"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValidationError("degree_bound must be a non-negative integer", "/degree_bound")
    rep = doc.get("representation")
    if not isinstance(rep, dict) or len(rep) != 1:
        raise ValidationError("representation needs exactly one of matrix, "
                              "multiplier, differential", "/representation")
    (kind, body), = rep.items()
    ptr = f"/representation/{kind}"
    if kind == "matrix":
        if not isinstance(body, list) or len(body) != n + 1:
            raise ValidationError(f"matrix needs {n + 1} rows, one per image T(z^k)", ptr)
        rows = []
        width = None
        for k, row in enumerate(body):
            if not isinstance(row, list):
                raise ValidationError("each row is a coefficient list", f"{ptr}/{k}")
            if width is not None and len(row) != width:
                raise ValidationError("rows must all have the same length", f"{ptr}/{k}")
            width = len(row)
            rows.append(tuple(parse_scalar(v, f"{ptr}/{k}/{i}") for i, v in enumerate(row)))
        if width and all(not r[-1] for r in rows):
            raise ValidationError("matrix is not tight: the last coefficient "
                                  "column is zero", f"{ptr}/0/{width - 1}")
        return OperatorSpec(n, "matrix", tuple(rows))
    if kind == "multiplier":
        if not isinstance(body, list) or len(body) < n + 1:
            raise ValidationError(f"need at least {n + 1} multipliers", ptr)
        return OperatorSpec(n, "multiplier",
                            tuple(parse_scalar(v, f"{ptr}/{i}") for i, v in enumerate(body)))
    if kind == "differential":
        if not isinstance(body, list) or not body:
            raise ValidationError("differential needs a list of Q_k coefficient lists", ptr)
        return OperatorSpec(n, "differential",
                            tuple(_poly_list(q, f"{ptr}/{k}") for k, q in enumerate(body)))
    raise ValidationError(f"unknown representation {kind!r}", "/representation")


def parse_domain(doc, ptr="/domain"):
    if doc is None:
        return None
    if not isinstance(doc, dict):
        raise ValidationError("domain must be an object", ptr)
    view = doc.get("view")
    if "kind" in doc:
        kind = doc["kind"]
        if kind not in DOMAIN_KINDS:
            raise ValidationError(f"unknown domain kind {kind!r}", f"{ptr}/kind")
        m, default_view = named_domain(kind)
        return DomainSpec(m, view or default_view, kind, view is not None)
    if "mobius" in doc:
        mob = doc["mobius"]
        if not isinstance(mob, dict):
            raise ValidationError("mobius must be an object", f"{ptr}/mobius")
        coeffs = {}
        for k in "abcd":
            if k not in mob:
                raise ValidationError(f"missing coefficient {k}", f"{ptr}/mobius/{k}")
            coeffs[k] = parse_scalar(mob[k], f"{ptr}/mobius/{k}")
        try:
            m = Mobius(**coeffs)
        except DegenerateMap as e:
            raise ValidationError(str(e), f"{ptr}/mobius") from None
        except NonNormalizedHalfPlane as e:
            hint = [encode_scalar(QQi(h) if isinstance(h, int) else h) for h in e.hint]
            raise ValidationError(f"{e}; normalized (a, b, c, d) = {hint}",
                                  f"{ptr}/mobius") from None
        return DomainSpec(m, view or "open_C", "", view is not None)
    raise ValidationError("domain needs 'kind' or 'mobius'", ptr)


def parse_spec(source):
    """(OperatorSpec or None, DomainSpec or None, options) from a path, '-' or dict."""
    if isinstance(source, dict):
        doc = source
    else:
        try:
            text = sys.stdin.read() if source == "-" else open(source).read()
        except OSError as e:
            raise ParseError(f"cannot read {source}: {e}") from None
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise ValidationError("top level must be an object", "")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ValidationError(f"unsupported schema_version {version!r}", "/schema_version")
    op = parse_operator(doc) if "representation" in doc or "degree_bound" in doc else None
    if "domain" in doc:
        dom = parse_domain(doc["domain"])
    elif "mobius" in doc or "kind" in doc:
        dom = parse_domain(doc, "")
    else:
        dom = None
    options = {k: doc[k] for k in ("problem", "n", "N", "semantics") if k in doc}
    return op, dom, options


def serialize_spec(op, dom=None):
    out = {"schema_version": SCHEMA_VERSION}
    if op is not None:
        out.update(op.to_json())
    if dom is not None:
        out["domain"] = dom.to_json()
    return out


# ---------------------------------------------------------------------------
# Report encoding
# ---------------------------------------------------------------------------

def _poly1_json(p):
    return {"coeffs": [encode_scalar(c) for c in p.coeffs], "text": p.format()}


def _poly2_json(p):
    terms = [[i, j, encode_scalar(c)] for (i, j), c in sorted(p.terms.items())]
    return {"terms": terms, "text": p.format()}


def to_jsonable(x):
    """Recursive encoder for report artifacts."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, float):
        return x if np.isfinite(x) else str(x)
    if isinstance(x, (QQi, complex)):
        return encode_scalar(x)
    if isinstance(x, Fraction) or type(x).__name__ == "mpq":
        return str(x)
    if x is INF:
        return "inf"
    if isinstance(x, np.generic):
        return to_jsonable(x.item())
    if isinstance(x, Poly1):
        return _poly1_json(x)
    if isinstance(x, Poly2):
        return _poly2_json(x)
    if isinstance(x, Mobius):
        return {k: encode_scalar(getattr(x, k)) for k in "abcd"}
    if isinstance(x, LinearOperator):
        return {"n": x.n, "columns": [to_jsonable(c) for c in x.columns]}
    if isinstance(x, RangeAnalysis):
        return {"rank": x.rank, "basis": [to_jsonable(p) for p in x.basis],
                "phase": to_jsonable(x.phase), "pivots": list(x.pivots)}
    if isinstance(x, SymbolSeries):
        return {"truncations": [to_jsonable(t) for t in x.truncations]}
    if isinstance(x, Verdict2):
        out = {"outcome": x.outcome}
        if x.certificate is not None:
            out["certificate"] = to_jsonable(x.certificate)
        if x.witness is not None:
            out["witness"] = to_jsonable(x.witness)
        if x.evidence is not None:
            out["evidence"] = to_jsonable(x.evidence)
        if x.notes:
            out["notes"] = to_jsonable(x.notes)
        return out
    if isinstance(x, Certificate):
        return {"kind": x.kind, "data": to_jsonable(x.data)}
    if isinstance(x, Witness):
        return {"z": encode_scalar(x.z), "w": encode_scalar(x.w), "exact": x.exact,
                "residual": x.residual, "residual_rel": x.residual_rel}
    if isinstance(x, SearchEvidence):
        return {"samples_tested": x.samples_tested,
                "min_modulus_found": x.min_modulus_found}
    if isinstance(x, PreserverReport):
        return report_json(x)
    if isinstance(x, InputWitness):
        return {"f": to_jsonable(x.f), "image": to_jsonable(x.image),
                "root": to_jsonable(x.root), "reason": x.reason}
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [to_jsonable(v) for v in items]
    if isinstance(x, np.ndarray):
        return to_jsonable(x.tolist())
    if dataclasses.is_dataclass(x):
        return {f.name: to_jsonable(getattr(x, f.name)) for f in dataclasses.fields(x)}
    return repr(x)


def report_json(rep):
    return {"problem": rep.problem, "verdict": rep.verdict, "clause": rep.clause,
            "n": rep.n, "semantics": rep.semantics,
            "flags": to_jsonable(rep.flags), "artifacts": to_jsonable(rep.artifacts)}


# ---------------------------------------------------------------------------
# Witness re-verification
# ---------------------------------------------------------------------------

def _multiplier_failure(p):
    if p.is_zero or p.degree <= 0:
        return False
    if not p.is_real() or not is_hyperbolic(p):
        return True
    pos = real_root_count(p, (0, float("inf")))[1]
    neg = p.degree - pos - p.low_order()
    return bool(pos and neg)


def recheck(rep, T, problem, mobius=None, lam=None):
    """Independently confirm every witness a non_preserver report carries."""
    if rep.verdict != "non_preserver":
        return
    art = rep.artifacts
    iw, sw = art.get("input_witness"), art.get("symbol_witness")
    if iw is None and sw is None:
        raise RecheckFailed("non_preserver report without a witness")
    if sw is not None:
        poly = art.get("symbol_witness_poly")
        if poly is None or not sw.verify(poly):
            raise RecheckFailed("symbol witness is not a zero in H x H")
    if iw is None:
        return
    n = art.get("failing_n", rep.n)
    if problem == "multiplier":
        lam = list(lam)
        T = LinearOperator.from_multipliers(lam[:n + 1], n)
        if iw.f != Poly1([1, 1]) ** n or T(iw.f) != iw.image \
                or not _multiplier_failure(iw.image):
            raise RecheckFailed("multiplier witness does not reproduce")
        return
    base = problem.split(":")[-1]
    k = iw.f.degree
    Tk = T.restrict(max(k, 0)) if T.n >= k else T
    ok_src, _ = in_target_class(iw.f, base, mobius)
    if not ok_src:
        raise RecheckFailed("witness input is not in the source class")
    if rep.semantics == "pb3" and "failing_degree" not in art and k != n:
        raise RecheckFailed("witness input has the wrong degree")
    image = Tk(iw.f)
    if image != iw.image:
        raise RecheckFailed("recomputed image differs from the reported one")
    ok_img, _ = in_target_class(image, base, mobius)
    if ok_img:
        raise RecheckFailed("witness image is inside the target class")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _default_seed():
    env = os.environ.get("PRESERVER_LAB_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise ValidationError(f"PRESERVER_LAB_SEED={env!r} is not an integer") from None


def _resolve_domain(args, dom):
    if args.domain:
        m, view = named_domain(args.domain)
        return DomainSpec(m, view, args.domain)
    return dom


def _float_operator(T):
    return LinearOperator([c.to_complex() for c in T.columns], T.n)


def _emit(doc, args, text_lines):
    if args.format == "text":
        out = "\n".join(text_lines) + "\n"
    else:
        out = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _text_report(rep):
    lines = [f"problem: {rep.problem}", f"verdict: {rep.verdict}"]
    if rep.clause:
        lines.append(f"clause: {rep.clause}")
    art = rep.artifacts
    if art.get("input_witness") is not None:
        w = art["input_witness"]
        lines.append(f"witness: f = {w.f.format()} -> T(f) = {w.image.format()}"
                     + (f", offending root {to_jsonable(w.root)}" if w.root is not None else ""))
    if art.get("symbol_witness") is not None:
        w = art["symbol_witness"]
        lines.append(f"symbol zero: z = {to_jsonable(w.z)}, w = {to_jsonable(w.w)}")
    for k, v in sorted(rep.flags.items()):
        lines.append(f"{k}: {v}")
    return lines


def analyze_cmd(args):
    op, dom, options = parse_spec(args.spec)
    if op is None:
        raise ValidationError("analyze needs an operator", "/representation")
    problem = args.problem or options.get("problem") or "stab"
    if problem not in PROBLEMS:
        raise ValidationError(f"unknown problem {problem!r}", "/problem")
    dom = _resolve_domain(args, dom)
    semantics = args.semantics or options.get("semantics") or "pb3"
    T = op.operator()
    if args.backend == "float":
        T = _float_operator(T)
    n = args.n if args.n is not None else options.get("n", op.degree_bound)
    N = args.N if args.N is not None else options.get("N", op.degree_bound)
    if max(n, N if problem in ("sweep", "transcendental", "multiplier") else 0) > op.degree_bound:
        raise ValidationError(f"degree {max(n, N)} exceeds degree_bound "
                              f"{op.degree_bound}", "/degree_bound")
    seed, budget = args.seed, args.budget
    mobius = dom.mobius if dom is not None else Mobius.identity()
    lam = None
    if problem == "hyp":
        rep = finitehyp_classify(T, n, budget=budget, seed=seed, semantics=semantics)
    elif problem == "hypC":
        rep = finitehypC_classify(T, n, budget=budget, seed=seed, semantics=semantics)
    elif problem == "stab":
        rep = finitestab_classify(T, n, budget=budget, seed=seed, semantics=semantics)
    elif problem == "circular":
        rep = circular_classify(T, n, mobius, semantics, budget=budget, seed=seed)
    elif problem == "boundary":
        rep = boundary_classify(T, n, mobius, budget=budget, seed=seed)
    elif problem == "sweep":
        rep = algebraic_sweep(T, N, args.sweep_problem, mobius, budget=budget, seed=seed)
    elif problem == "transcendental":
        rep = transcendental_probe(T, N, budget=budget, seed=seed)
    else:
        if op.kind == "multiplier":
            lam = op.data
        else:
            lam = T.to_multipliers()
            if lam is None:
                raise ValidationError("multiplier test needs a diagonal operator",
                                      "/representation")
            lam = lam.lam if isinstance(lam, MultiplierSeq) else lam
        rep = multiplier_test(list(lam), N)
    recheck_problem = args.sweep_problem if problem == "sweep" else problem
    if rep.verdict == "non_preserver" and problem == "sweep":
        T = T.restrict(rep.artifacts["failing_n"])
    if problem != "transcendental":
        recheck(rep, T, recheck_problem, mobius, lam)
    else:
        recheck(rep, None, "transcendental")
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "preserver-lab", "version": __version__},
        "options": {"seed": seed, "budget": budget, "tolerance": args.tolerance,
                    "backend": args.backend, "problem": problem, "n": n, "N": N,
                    "semantics": semantics},
        "spec": serialize_spec(op, dom),
        "report": report_json(rep),
    }
    _emit(doc, args, _text_report(rep))
    return {"preserver": EXIT_PRESERVER, "non_preserver": EXIT_NON_PRESERVER,
            "unknown": EXIT_UNKNOWN}[rep.verdict]


# -- generate ---------------------------------------------------------------

def _rand_rational(rng, lo=-6, hi=6, dens=(1, 2, 3, 4)):
    return QQi(Fraction(int(rng.integers(lo * 4, hi * 4 + 1)), int(rng.choice(dens))))


def _from_roots(roots):
    p = Poly1([1])
    for r in roots:
        p = p * Poly1([-r, 1])
    return p


def _gen_item(kind, d, rng, dom):
    if kind == "real_stable_2d":
        f, cert = gen_real_stable(d, rng=rng)
        return {"poly": to_jsonable(f), "certificate": to_jsonable(cert),
                "certificate_verified": cert.verify(f)}
    if kind == "hyperbolic_1d":
        roots = sorted((_rand_rational(rng) for _ in range(d)), key=lambda q: q.re)
        f = _from_roots(roots)
        return {"poly": to_jsonable(f), "roots": to_jsonable(roots),
                "verified": bool(is_hyperbolic(f))}
    if kind == "stable_1d":
        roots = [QQi(_rand_rational(rng).re, -abs(_rand_rational(rng).re))
                 for _ in range(d)]
        f = _from_roots(roots)
        from .classify import is_stable1
        return {"poly": to_jsonable(f), "roots": to_jsonable(roots),
                "verified": bool(is_stable1(f))}
    if kind == "interlacing_pair":
        pts = set()
        while len(pts) < 2 * d - 1:
            pts.add(_rand_rational(rng).re)
        pts = sorted(pts)
        f = _from_roots([QQi(p) for p in pts[0::2]])
        g = _from_roots([QQi(p) for p in pts[1::2]])
        rel = pencil_relation(f, g)
        return {"f": to_jsonable(f), "g": to_jsonable(g), "relation": rel.relation,
                "g_ll_f": rel.g_ll_f}
    if kind == "domain_rooted":
        m, view = dom.mobius, dom.view
        roots = []
        while len(roots) < d:
            t = _rand_rational(rng).re
            s = abs(_rand_rational(rng).re) or Fraction(1)
            u = {"boundary_dC": QQi(t), "open_C": QQi(t, s),
                 "reversed_Cr": QQi(t, -s), "closed_complement_Cprime": QQi(t, -s)}[view]
            z = m.inverse(u)
            if z is not INF:
                roots.append(z)
        f = _from_roots(roots)
        return {"poly": to_jsonable(f), "roots": to_jsonable(roots), "view": view}
    raise ValidationError(f"unknown kind {kind!r}", "/kind")


def generate_cmd(args):
    seed = args.seed
    rng = np.random.default_rng(seed)
    dom = None
    if args.kind == "domain_rooted":
        m, view = named_domain(args.domain or "unit_circle")
        dom = DomainSpec(m, view, args.domain or "unit_circle")
    items = [_gen_item(args.kind, args.degree, rng, dom) for _ in range(args.count)]
    doc = {"schema_version": SCHEMA_VERSION, "kind": args.kind, "degree": args.degree,
           "seed": seed, "count": args.count, "items": items}
    if dom is not None:
        doc["domain"] = dom.to_json()
    _emit(doc, args, [json.dumps(it, sort_keys=True) for it in items])
    return 0


# -- symbol -----------------------------------------------------------------

def symbol_cmd(args):
    op, dom, options = parse_spec(args.spec)
    if op is None:
        raise ValidationError("symbol needs an operator", "/representation")
    dom = _resolve_domain(args, dom)
    T = op.operator()
    n = args.n if args.n is not None else options.get("n", op.degree_bound)
    mobius = dom.mobius if dom is not None else None
    if args.kind == "circ" and mobius is None:
        raise ValidationError("circ symbol needs a domain", "/domain")
    S = symbol(T, n, args.kind, mobius=mobius, sign=args.sign, N=args.N)
    doc = {"schema_version": SCHEMA_VERSION, "kind": args.kind, "n": n,
           "symbol": to_jsonable(S)}
    text = [t.format() for t in S.truncations] if isinstance(S, SymbolSeries) \
        else [S.format()]
    _emit(doc, args, text)
    return 0


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="preserver-lab",
                                description="Decide whether linear operators preserve zero loci.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=None,
                        help="random seed (default: $PRESERVER_LAB_SEED or 0)")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--output", "-o", help="write to a file instead of stdout")

    a = sub.add_parser("analyze", help="classify an operator")
    a.add_argument("spec", help="spec JSON file, or - for stdin")
    a.add_argument("--problem", choices=PROBLEMS)
    a.add_argument("--sweep-problem", choices=("hyp", "stab", "circular", "boundary"),
                   default="stab", help="classifier run by --problem sweep")
    a.add_argument("--n", type=int)
    a.add_argument("--N", type=int)
    a.add_argument("--domain", choices=DOMAIN_KINDS)
    a.add_argument("--semantics", choices=("pb2", "pb3"))
    a.add_argument("--tolerance", type=float, default=1e-9)
    a.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    a.add_argument("--backend", choices=("exact", "float"), default="exact")
    common(a)
    a.set_defaults(func=analyze_cmd)

    g = sub.add_parser("generate", help="write a deterministic fixture corpus")
    g.add_argument("--kind", required=True,
                   choices=("real_stable_2d", "hyperbolic_1d", "stable_1d",
                            "interlacing_pair", "domain_rooted"))
    g.add_argument("--degree", type=int, default=3)
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--domain", choices=DOMAIN_KINDS)
    common(g)
    g.set_defaults(func=generate_cmd)

    s = sub.add_parser("symbol", help="print an operator symbol")
    s.add_argument("spec")
    s.add_argument("--kind", choices=("plus", "minus", "circ", "gt_trunc"), default="plus")
    s.add_argument("--sign", choices=("plus", "minus"), default="plus")
    s.add_argument("--n", type=int)
    s.add_argument("--N", type=int)
    s.add_argument("--domain", choices=DOMAIN_KINDS)
    common(s)
    s.set_defaults(func=symbol_cmd)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed is None:
            args.seed = _default_seed()
        return args.func(args)
    except RecheckFailed as e:
        sys.stderr.write(f"preserver-lab: internal error: {e}\n")
        return EXIT_RECHECK
    except ValidationError as e:
        sys.stderr.write(json.dumps({"error": "validation", "pointer": e.pointer,
                                     "message": str(e)}) + "\n")
        return EXIT_ERROR
    except PreserverLabError as e:
        sys.stderr.write(json.dumps({"error": type(e).__name__, "message": str(e)}) + "\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
