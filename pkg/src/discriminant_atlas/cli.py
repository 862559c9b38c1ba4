"""Command-line front end and JSON input/output.

Input documents look like::

    {"schema_version": "1",
     "ambient_rank": 2,
     "supports": [[[0,0],[1,0]], [[0,0],[0,1]]],
     "options": {"compute_degrees": true}}

``atlas analyze`` runs the full pipeline (normalize, classify, poset,
three discriminant reports, degree table); ``mixed-volume``, ``decompose``
and ``degrees`` expose the individual stages; ``selfcheck`` replays the
built-in oracle corpus.  A file argument of ``-`` reads stdin.  Batch
input (a JSON array of documents) is processed entry by entry; one failing
document does not abort the rest.

Exit codes: 0 success, 2 structured analysis error, 1 internal invariant
violation (a bug report, not a user error).

Integers whose magnitude needs more than 53 bits are serialized as decimal
strings so that JSON consumers cannot lose precision.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bkposet import BkPoset, build_poset, maximal_filtration, poset_queries
from .classify import BK, LINEARLY_DEPENDENT, classify
from .degrees import Unsupported, cayley_degree
from .errors import AtlasError, InvariantViolation, ParseError, RankTooHigh
from .reports import (
    AmbientFactor,
    BkMult,
    CayleyDiscOf,
    DiscriminantReport,
    ResultantOf,
    a_discriminant,
    cayley_discriminant,
    mixed_discriminant,
)
from .supports import Support, SupportTuple, normalize
from .volumes import mixed_volume

SCHEMA_VERSION = "1"
_BIG = 1 << 53


# ---------------------------------------------------------------------------
# JSON encoding with exact big integers


def encode_json_value(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value) if abs(value) >= _BIG else value
    if isinstance(value, str):
        return value
    if isinstance(value, (list, tuple)):
        return [encode_json_value(v) for v in value]
    if isinstance(value, dict):
        return {k: encode_json_value(v) for k, v in value.items()}
    raise TypeError(f"cannot encode {type(value)!r}")


def decode_json_value(value):
    if isinstance(value, str):
        stripped = value[1:] if value.startswith("-") else value
        if stripped.isdigit() and abs(int(value)) >= _BIG:
            return int(value)
        return value
    if isinstance(value, list):
        return [decode_json_value(v) for v in value]
    if isinstance(value, dict):
        return {k: decode_json_value(v) for k, v in value.items()}
    return value


def render_document(doc: dict) -> str:
    return json.dumps(encode_json_value(doc), indent=2, sort_keys=False) + "\n"


def parse_document(text: str):
    try:
        return decode_json_value(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# input documents


def _tuple_from_document(doc: dict) -> tuple:
    if not isinstance(doc, dict):
        raise ParseError("input document must be a JSON object")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {version!r}")
    if "ambient_rank" not in doc or "supports" not in doc:
        raise ParseError("input needs 'ambient_rank' and 'supports'")
    rank = doc["ambient_rank"]
    raw = doc["supports"]
    if not isinstance(rank, int) or rank < 0:
        raise ParseError("'ambient_rank' must be a nonnegative integer")
    if not isinstance(raw, list) or not raw:
        raise ParseError("'supports' must be a non-empty list")
    supports = []
    for s in raw:
        if not isinstance(s, list) or not s:
            raise ParseError("each support must be a non-empty list of points")
        pts = []
        for p in s:
            if not isinstance(p, list) or len(p) != rank or not all(isinstance(x, int) for x in p):
                raise ParseError("each point must be a length-ambient_rank integer vector")
            pts.append(tuple(p))
        supports.append(Support(tuple(pts)))
    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise ParseError("'options' must be an object")
    max_subsets = options.get("max_subsets", 1 << 20)
    compute_degrees = options.get("compute_degrees", True)
    if not isinstance(max_subsets, int) or max_subsets < 2:
        raise ParseError("'max_subsets' must be an integer >= 2")
    if not isinstance(compute_degrees, bool):
        raise ParseError("'compute_degrees' must be a boolean")
    max_supports = max_subsets.bit_length() - 1
    return SupportTuple(rank, tuple(supports)), max_supports, compute_degrees


# ---------------------------------------------------------------------------
# serialization of analysis results


def _ser_indices(indices) -> list:
    return sorted(indices)


def _ser_expr(expr) -> dict:
    if isinstance(expr, ResultantOf):
        return {"op": "resultant", "indices": _ser_indices(expr.indices)}
    if isinstance(expr, CayleyDiscOf):
        return {
            "op": "cayley_disc",
            "indices": _ser_indices(expr.indices),
            "modulo": _ser_indices(expr.modulo),
        }
    if isinstance(expr, AmbientFactor):
        return {"op": "ambient", "indices": _ser_indices(expr.indices)}
    if isinstance(expr, BkMult):
        return {"op": "bk_mult", "factors": [_ser_expr(f) for f in expr.factors]}
    raise TypeError(f"unknown expression node {expr!r}")


def _ser_value(v):
    if isinstance(v, Unsupported):
        return {"unsupported": v.reason}
    return v


def _ser_report(r: DiscriminantReport) -> dict:
    return {
        "kind": r.kind,
        "empty": r.empty,
        "complete_intersection_codim": r.complete_intersection_codim,
        "components": [
            {
                "label": c.label,
                "structure": _ser_expr(c.structure),
                "codim": _ser_value(c.codim),
                "degree": _ser_value(c.degree),
                "absorbed_into": c.absorbed_into,
            }
            for c in r.components
        ],
    }


def _ser_poset(p: BkPoset) -> dict:
    queries = poset_queries(p)
    return {
        "elements": [
            {
                "id": e.id,
                "principal_ideal": _ser_indices(e.principal_ideal),
                "block": _ser_indices(e.block),
                "class": e.irr_class,
                "height": p.heights[i],
                "quotient": {
                    "ambient_rank": e.quotient.ambient_rank,
                    "supports": [[list(pt) for pt in s.points] for s in e.quotient.supports],
                },
            }
            for i, e in enumerate(p.elements)
        ],
        "covers": [[p.elements[a].id, p.elements[b].id] for a, b in p.covers],
        "maximal_elements": queries["maximal_elements"],
        "is_simple": queries["is_simple"],
        "hasse_components": queries["hasse_components"],
        "filtration": [e.id for e in maximal_filtration(p)],
    }


def _degree_table(reports: dict, t, poset) -> dict:
    table = {}
    for key, rep in reports.items():
        table[key] = {c.label: _ser_value(c.degree) for c in rep.components}
    if poset is not None:
        table["cayley_product"] = _ser_value(cayley_degree(t, poset))
    return table


def run_analyze(doc: dict) -> dict:
    """Full pipeline for one input document; raises AtlasError on bad input."""
    t, max_supports, compute_degrees = _tuple_from_document(doc)
    normalized, meta = normalize(t)
    warnings: list = []
    cls = classify(normalized, max_supports)
    out = {
        "schema_version": SCHEMA_VERSION,
        "input": {
            "ambient_rank": t.ambient_rank,
            "supports": [[list(p) for p in s.points] for s in t.supports],
        },
        "normalization": {
            "rank": normalized.ambient_rank,
            "translations": [list(tr) for tr in meta.translations],
            "span_basis": [list(c) for c in meta.basis.columns()],
            "supports": [[list(p) for p in s.points] for s in normalized.supports],
        },
        "classification": {
            "kind": cls.kind,
            "min_defect": cls.min_defect,
            "essential": cls.essential,
            "minimal_subtuple": _ser_indices(cls.minimal_subtuple) if cls.minimal_subtuple is not None else None,
            "circuits": [_ser_indices(c) for c in cls.circuits] if cls.circuits is not None else None,
            "unique_circuit": cls.unique_circuit,
        },
    }
    poset = None
    if cls.kind == BK:
        poset = build_poset(normalized, max_supports)
        out["poset"] = _ser_poset(poset)
    else:
        out["poset"] = None
    reports = {
        "a_discriminant": a_discriminant(normalized, cls, poset, compute_degrees, warnings),
        "cayley_discriminant": cayley_discriminant(normalized, cls, poset, compute_degrees, warnings),
        "mixed_discriminant": mixed_discriminant(normalized, cls, poset, compute_degrees, warnings),
    }
    out["reports"] = {k: _ser_report(r) for k, r in reports.items()}
    if compute_degrees and cls.kind == BK:
        out["degrees"] = _degree_table(reports, normalized, poset)
    elif compute_degrees:
        out["degrees"] = _degree_table(reports, normalized, None)
    else:
        out["degrees"] = None
    seen = set()
    out["warnings"] = [w for w in warnings if not (w in seen or seen.add(w))]
    return out


def _error_document(exc: AtlasError) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "error": {"code": exc.code, "message": str(exc)},
    }


# ---------------------------------------------------------------------------
# exact univariate/bivariate elimination for the Bernstein oracle


def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_deg(c):
    return len(c) - 1 if c else -1


def _poly_ord(c):
    for i, x in enumerate(c):
        if x != 0:
            return i
    return -1


def _poly_gcd_degree(f, g) -> int:
    """Degree of gcd over Q of two integer coefficient lists."""
    from fractions import Fraction

    a = [Fraction(x) for x in f]
    b = [Fraction(x) for x in g]
    _poly_trim(a)
    _poly_trim(b)
    while b:
        # a mod b
        while len(a) >= len(b) and a:
            q = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, x in enumerate(b):
                a[i + shift] -= q * x
            _poly_trim(a)
        a, b = b, a
    return _poly_deg(a)


def _distinct_torus_roots_1d(coeffs) -> int:
    """Number of distinct nonzero complex roots: degree of the square-free
    part after stripping powers of x."""
    c = list(coeffs)
    _poly_trim(c)
    if not c:
        raise ValueError("zero polynomial")
    o = _poly_ord(c)
    g = c[o:]
    deriv = [i * x for i, x in enumerate(g)][1:]
    if not _poly_trim(list(deriv)):
        return 0
    return _poly_deg(g) - _poly_gcd_degree(g, deriv)


def _sylvester_resultant_eval(fc, gc, m, n):
    """Determinant of the Sylvester matrix for univariate integer coefficient
    lists fc (formal degree m) and gc (formal degree n)."""
    from .intlinalg import det_int

    size = m + n
    if size == 0:
        return 1
    rows = []
    frow = [fc[m - j] if 0 <= m - j < len(fc) else 0 for j in range(m + 1)]
    grow = [gc[n - j] if 0 <= n - j < len(gc) else 0 for j in range(n + 1)]
    for i in range(n):
        rows.append([0] * i + frow + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + grow + [0] * (size - n - 1 - i))
    return det_int(rows)


def _eval_support_poly(points, coeffs, x):
    """Coefficient list in y of sum c_i * x^(p_i0) * y^(p_i1) at a given x."""
    degy = max(p[1] for p in points)
    out = [0] * (degy + 1)
    for (a, b), c in zip(points, coeffs):
        out[b] += c * x**a
    return out


def _interpolate_integer(xs, ys):
    """Newton-form interpolation; returns integer coefficient list (asserted)."""
    from fractions import Fraction

    n = len(xs)
    divided = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    for i in reversed(range(n)):
        new = [Fraction(0)] * n
        new[0] = divided[i]
        for k in range(n - 1):
            new[k + 1] += poly[k]
            new[k] += poly[k] * (-xs[i])
        poly = new
    out = []
    for c in poly:
        assert c.denominator == 1, "resultant interpolation must be integral"
        out.append(int(c))
    return _poly_trim(out)


def bernstein_oracle(t: SupportTuple, trials: int, seed: int) -> dict:
    """Count torus roots of random integer systems on the given supports and
    compare with the mixed volume.

    Rank 1: distinct-root count of the square-free part.  Rank 2: exact
    Sylvester elimination; roots are counted with multiplicity via the
    degree of the eliminant minus its vanishing order at 0, which equals
    the torus root count for draws passing the genericity checks.
    Non-generic draws are discarded and redrawn.
    """
    import random as _random

    from .classify import classify as _classify

    sets, r = _restrict_for_oracle(t)
    if r > 2:
        raise RankTooHigh("the exact elimination oracle supports rank <= 2 only")
    if _classify(t).kind != BK:
        raise AtlasError("bernstein oracle requires a BK-tuple")
    expected = mixed_volume(t)
    rng = _random.Random(seed)
    counts = []
    rejected = 0
    attempts = 0
    while len(counts) < trials and attempts < 50 * trials + 100:
        attempts += 1
        result = _count_roots_once(sets, r, rng)
        if result is None:
            rejected += 1
            continue
        counts.append(result)
    verdict = bool(counts) and max(counts) == expected
    return {
        "expected": expected,
        "counts": counts,
        "rejected_draws": rejected,
        "verdict": verdict,
    }


def _restrict_for_oracle(t: SupportTuple):
    """Shift supports to nonnegative coordinates (torus roots unchanged)."""
    sets = []
    for s in t.supports:
        mins = [min(p[i] for p in s.points) for i in range(t.ambient_rank)]
        sets.append([tuple(x - m for x, m in zip(p, mins)) for p in s.points])
    return sets, t.ambient_rank


def _count_roots_once(sets, r, rng):
    C = 40

    def draw(points):
        return [rng.choice([c for c in range(-C, C + 1) if c != 0]) for _ in points]

    if r == 1:
        pts = sets[0]
        coeffs = draw(pts)
        degmax = max(p[0] for p in pts)
        poly = [0] * (degmax + 1)
        for (a,), c in zip(pts, coeffs):
            poly[a] += c
        return _distinct_torus_roots_1d(poly)

    fpts, gpts = sets
    fc = draw(fpts)
    gc = draw(gpts)
    m = max(p[1] for p in fpts)
    n = max(p[1] for p in gpts)
    fx = {a for a, b in fpts}
    gx = {a for a, b in gpts}
    if m == 0 and n == 0:
        return None
    if m == 0:
        # resultant is f(x)^n
        poly = [0] * (max(fx) + 1)
        for (a, _), c in zip(fpts, fc):
            poly[a] += c
        return n * _distinct_torus_roots_1d(poly) if _is_squarefree(poly) else None
    if n == 0:
        poly = [0] * (max(gx) + 1)
        for (a, _), c in zip(gpts, gc):
            poly[a] += c
        return m * _distinct_torus_roots_1d(poly) if _is_squarefree(poly) else None

    # genericity: no common y=0 root away from x=0, no common leading-coeff root
    f0 = _slice_coeffs(fpts, fc, 0)
    g0 = _slice_coeffs(gpts, gc, 0)
    if _common_torus_root(f0, g0):
        return None
    flead = _slice_coeffs(fpts, fc, m)
    glead = _slice_coeffs(gpts, gc, n)
    if _common_torus_root(flead, glead):
        return None

    bound = n * max(fx, default=0) + m * max(gx, default=0)
    xs = list(range(1, bound + 2))
    ys = []
    for x in xs:
        fy = _eval_support_poly(fpts, fc, x)
        gy = _eval_support_poly(gpts, gc, x)
        fy += [0] * (m + 1 - len(fy))
        gy += [0] * (n + 1 - len(gy))
        ys.append(_sylvester_resultant_eval(fy, gy, m, n))
    res = _interpolate_integer(xs, ys)
    if not res:
        return None  # identically zero resultant: degenerate draw
    return _poly_deg(res) - _poly_ord(res)


def _slice_coeffs(points, coeffs, ydeg):
    degx = max((a for a, b in points if b == ydeg), default=0)
    out = [0] * (degx + 1)
    for (a, b), c in zip(points, coeffs):
        if b == ydeg:
            out[a] += c
    return _poly_trim(out)


def _is_squarefree(poly) -> bool:
    c = list(poly)
    _poly_trim(c)
    o = _poly_ord(c)
    g = c[o:]
    deriv = [i * x for i, x in enumerate(g)][1:]
    if not _poly_trim(list(deriv)):
        return _poly_deg(g) == 0
    return _poly_gcd_degree(g, deriv) == 0


def _common_torus_root(f, g) -> bool:
    """Whether two integer univariate polynomials share a nonzero root.

    The zero polynomial vanishes everywhere, so it shares roots with any
    polynomial that has a nonzero root at all."""
    a = list(f)
    b = list(g)
    _poly_trim(a)
    _poly_trim(b)
    if not a and not b:
        return True
    if not a or not b:
        other = a or b
        return _poly_deg(other) - _poly_ord(other) > 0
    a, b = a[_poly_ord(a):], b[_poly_ord(b):]
    if _poly_deg(a) == 0 or _poly_deg(b) == 0:
        return False
    return _poly_gcd_degree(a, b) > 0


# ---------------------------------------------------------------------------
# selfcheck


def selfcheck(seed: int = 20240601, trials: int = 4) -> dict:
    """Replay the built-in oracle corpus; deterministic for a fixed seed."""
    from .randgen import builtin_corpus, random_bk_tuple
    import random as _random

    results = []
    for name, doc in builtin_corpus():
        results.append({"name": name, "analysis": run_analyze(doc)})

    rng = _random.Random(seed)
    oracle_runs = []
    for _ in range(4):
        t = random_bk_tuple(rng, max_rank=2, max_points=3, coord_bound=2)
        verdict = bernstein_oracle(t, trials=trials, seed=rng.randrange(1 << 30))
        oracle_runs.append(
            {
                "supports": [[list(p) for p in s.points] for s in t.supports],
                "result": verdict,
            }
        )
    ok = all(run["result"]["verdict"] for run in oracle_runs)
    return {
        "schema_version": SCHEMA_VERSION,
        "seed": seed,
        "corpus": results,
        "bernstein": oracle_runs,
        "all_passed": ok,
    }


# ---------------------------------------------------------------------------
# rendering and entry point


def _render_text(doc: dict) -> str:
    if "error" in doc:
        return f"error [{doc['error']['code']}]: {doc['error']['message']}\n"
    lines = []
    cls = doc["classification"]
    lines.append(f"classification: {cls['kind']} (min defect {cls['min_defect']}, essential={cls['essential']})")
    if doc["poset"]:
        p = doc["poset"]
        lines.append(f"poset: {len(p['elements'])} elements, simple={p['is_simple']}")
        for e in p["elements"]:
            lines.append(
                f"  {e['id']}: ideal {e['principal_ideal']} block {e['block']} {e['class']} height {e['height']}"
            )
    for key, rep in doc["reports"].items():
        if rep["empty"]:
            lines.append(f"{key}: empty")
            continue
        cic = rep["complete_intersection_codim"]
        head = f"{key}:" + (f" complete intersection codim {cic}" if cic is not None else "")
        lines.append(head)
        for c in rep["components"]:
            deg = c["degree"]
            if isinstance(deg, dict):
                deg = "unsupported"
            status = f" absorbed into {c['absorbed_into']}" if c["absorbed_into"] else ""
            lines.append(f"  {c['label']}: codim {c['codim']} degree {deg}{status}")
    for w in doc.get("warnings", []):
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _analyze_command(args) -> int:
    payload = parse_document(_read_input(args.file))
    batch = isinstance(payload, list)
    docs = payload if batch else [payload]
    outputs = []
    failed = False
    for doc in docs:
        if not args.degrees:
            doc = dict(doc)
            options = dict(doc.get("options", {}))
            options["compute_degrees"] = False
            doc["options"] = options
        try:
            outputs.append(run_analyze(doc))
        except AtlasError as exc:
            outputs.append(_error_document(exc))
            failed = True
    result = outputs if batch else outputs[0]
    if args.format == "json":
        sys.stdout.write(
            render_document(result) if not batch else json.dumps(encode_json_value(result), indent=2) + "\n"
        )
    else:
        for out in outputs:
            sys.stdout.write(_render_text(out))
    return 2 if failed else 0


def _simple_command(args, project) -> int:
    payload = parse_document(_read_input(args.file))
    batch = isinstance(payload, list)
    docs = payload if batch else [payload]
    outputs = []
    failed = False
    for doc in docs:
        try:
            outputs.append(project(doc))
        except AtlasError as exc:
            outputs.append(_error_document(exc))
            failed = True
    result = outputs if batch else outputs[0]
    sys.stdout.write(json.dumps(encode_json_value(result), indent=2) + "\n")
    return 2 if failed else 0


def _mixed_volume_doc(doc: dict) -> dict:
    t, _, _ = _tuple_from_document(doc)
    return {"schema_version": SCHEMA_VERSION, "mixed_volume": mixed_volume(t)}


def _decompose_doc(doc: dict) -> dict:
    full = run_analyze({**doc, "options": {**doc.get("options", {}), "compute_degrees": False}})
    return {
        "schema_version": SCHEMA_VERSION,
        "classification": full["classification"],
        "poset": full["poset"],
    }


def _degrees_doc(doc: dict) -> dict:
    full = run_analyze(doc)
    return {
        "schema_version": SCHEMA_VERSION,
        "classification": {"kind": full["classification"]["kind"]},
        "degrees": full["degrees"],
        "warnings": full["warnings"],
    }


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="atlas",
        description="Classify sparse polynomial system supports and enumerate discriminant components.",
    )
    sub = parser.add_subparsers(dest="command")

    p_analyze = sub.add_parser("analyze", help="full analysis of an input document")
    p_analyze.add_argument("file", help="input JSON file, or - for stdin")
    p_analyze.add_argument("--degrees", choices=["on", "off"], default="on")
    p_analyze.add_argument("--format", choices=["json", "text"], default="json")

    p_mv = sub.add_parser("mixed-volume", help="print the mixed volume only")
    p_mv.add_argument("file")

    p_dec = sub.add_parser("decompose", help="print the BK poset only")
    p_dec.add_argument("file")

    p_deg = sub.add_parser("degrees", help="print the degree table only")
    p_deg.add_argument("file")

    p_check = sub.add_parser("selfcheck", help="run the built-in oracle suite")
    p_check.add_argument("--seed", type=int, default=20240601)
    p_check.add_argument("--trials", type=int, default=4)

    argv = list(sys.argv[1:] if argv is None else argv)
    known = {"analyze", "mixed-volume", "decompose", "degrees", "selfcheck"}
    if argv and argv[0] not in known and not argv[0].startswith("-"):
        argv.insert(0, "analyze")  # analyze is the default subcommand
    args = parser.parse_args(argv)

    try:
        if args.command == "analyze":
            args.degrees = args.degrees == "on"
            return _analyze_command(args)
        if args.command == "mixed-volume":
            return _simple_command(args, _mixed_volume_doc)
        if args.command == "decompose":
            return _simple_command(args, _decompose_doc)
        if args.command == "degrees":
            return _simple_command(args, _degrees_doc)
        if args.command == "selfcheck":
            report = selfcheck(seed=args.seed, trials=args.trials)
            sys.stdout.write(render_document(report))
            return 0 if report["all_passed"] else 2
        parser.print_help()
        return 0
    except AtlasError as exc:
        sys.stdout.write(render_document(_error_document(exc)))
        return 2
    except InvariantViolation as exc:
        sys.stderr.write(f"invariant violation: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
