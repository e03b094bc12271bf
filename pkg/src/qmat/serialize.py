"""JSON encoding and decoding of elements, derivation specs and reports.

All formats are dimension-tagged; sparse exponent lists use [i, a, e]
triples in 1-based generator coordinates.  Decoding raises ``ParseError``
on malformed input and ``DimensionMismatchError`` when dimensions
disagree, matching the command-line exit-code contract.
"""

from __future__ import annotations

from .context import AlgebraContext, build_context
from .derivations import DerivationSpec, DetPolynomial, HH1Coordinates
from .errors import DimensionMismatchError, ParseError
from .matrixalg import MatrixAlgebraElement
from .rational import RationalFunction
from .torus import TorusElement


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ParseError(message)


def rf_to_json(rf: RationalFunction) -> dict:
    return rf.to_json()


def rf_from_json(data) -> RationalFunction:
    _require(isinstance(data, dict), "coefficient must be an object")
    _require(
        "num" in data and "den" in data, "coefficient needs num and den"
    )
    num, den = data["num"], data["den"]
    _require(
        isinstance(num, list) and all(isinstance(c, int) for c in num),
        "num must be a list of integers",
    )
    _require(
        isinstance(den, list) and all(isinstance(c, int) for c in den),
        "den must be a list of integers",
    )
    _require(any(den), "den must be nonzero")
    return RationalFunction(tuple(num), tuple(den))


def _exp_to_triples(ctx: AlgebraContext, exp) -> list:
    out = []
    for k, e in enumerate(exp):
        if e:
            i, a = ctx.gen_at(k)
            out.append([i, a, e])
    return out


def _exp_from_triples(ctx: AlgebraContext, data) -> tuple:
    _require(isinstance(data, list), "exp must be a list of [i, a, e] triples")
    exp = [0] * (ctx.n * ctx.n)
    for triple in data:
        _require(
            isinstance(triple, list)
            and len(triple) == 3
            and all(isinstance(v, int) for v in triple),
            "exp entries must be integer triples [i, a, e]",
        )
        i, a, e = triple
        _require(
            1 <= i <= ctx.n and 1 <= a <= ctx.n,
            f"generator ({i},{a}) outside the {ctx.n}x{ctx.n} grid",
        )
        exp[ctx.flat(i, a)] += e
    return tuple(exp)


def element_to_json(x) -> dict:
    ctx = x.ctx
    terms = [
        {"exp": _exp_to_triples(ctx, exp), "coeff": coeff.to_json()}
        for exp, coeff in x.sorted_terms()
    ]
    out = {"n": ctx.n, "terms": terms}
    if isinstance(x, MatrixAlgebraElement):
        out["alg"] = "Mq"
    else:
        out["alg"] = "torus"
    return out


def element_from_json(data, alg: str | None = None, n: int | None = None):
    _require(isinstance(data, dict), "element must be an object")
    _require("n" in data and isinstance(data["n"], int), "element needs integer n")
    if n is not None and data["n"] != n:
        raise DimensionMismatchError(
            f"element has n = {data['n']}, expected {n}"
        )
    tag = data.get("alg", alg or "torus")
    _require(tag in ("Mq", "torus"), f"unknown algebra tag {tag!r}")
    if alg is not None and tag != alg:
        raise DimensionMismatchError(
            f"element is tagged {tag!r}, expected {alg!r}"
        )
    ctx = build_context(data["n"])
    cls = MatrixAlgebraElement if tag == "Mq" else TorusElement
    out = cls(ctx)
    _require(isinstance(data.get("terms"), list), "element needs a terms list")
    for term in data["terms"]:
        _require(isinstance(term, dict), "terms must be objects")
        _require("exp" in term and "coeff" in term, "term needs exp and coeff")
        exp = _exp_from_triples(ctx, term["exp"])
        if tag == "Mq" and any(e < 0 for e in exp):
            raise ParseError("negative exponents are torus-only")
        coeff = rf_from_json(term["coeff"])
        out = out + cls.monomial(ctx, exp, coeff)
    return out


def derivation_to_json(d: DerivationSpec) -> dict:
    return {
        "alg": d.alg,
        "n": d.ctx.n,
        "images": [
            {"gen": [i, a], "value": element_to_json(d.images[(i, a)])}
            for (i, a) in d.ctx.generators
        ],
    }


def derivation_from_json(data, n: int | None = None) -> DerivationSpec:
    _require(isinstance(data, dict), "derivation spec must be an object")
    alg = data.get("alg")
    _require(alg in ("Mq", "torus"), "spec needs alg Mq or torus")
    _require(isinstance(data.get("images"), list), "spec needs an images list")
    dim = data.get("n")
    images = {}
    for entry in data["images"]:
        _require(isinstance(entry, dict), "image entries must be objects")
        gen = entry.get("gen")
        _require(
            isinstance(gen, list)
            and len(gen) == 2
            and all(isinstance(v, int) for v in gen),
            "image gen must be a pair [i, a]",
        )
        value = element_from_json(entry["value"], alg=alg, n=n)
        if dim is None:
            dim = value.ctx.n
        elif value.ctx.n != dim:
            raise DimensionMismatchError("mixed dimensions in derivation spec")
        images[tuple(gen)] = value
    _require(dim is not None, "empty derivation spec without dimension")
    ctx = build_context(dim)
    for gen in images:
        if not (1 <= gen[0] <= ctx.n and 1 <= gen[1] <= ctx.n):
            raise ParseError(f"generator {gen} outside the grid")
    return DerivationSpec(ctx, alg, images)


def det_poly_to_json(p: DetPolynomial) -> list:
    return [[k, p[k].to_json()] for k in sorted(p)]


def det_poly_from_json(data) -> DetPolynomial:
    _require(isinstance(data, list), "weight polynomial must be a list")
    out: DetPolynomial = {}
    for pair in data:
        _require(
            isinstance(pair, list) and len(pair) == 2 and isinstance(pair[0], int),
            "weight entries must be [power, coefficient] pairs",
        )
        coeff = rf_from_json(pair[1])
        if coeff:
            out[pair[0]] = coeff
    return out


def hh1_to_json(coords: HH1Coordinates) -> dict:
    out = {
        "inner": element_to_json(coords.inner),
        "mu": [det_poly_to_json(m) for m in coords.mu],
    }
    if coords.det_shift:
        out["det_shift"] = coords.det_shift
    return out
