"""The PBW polynomial algebra of quantum matrices.

Elements are finite sums of normal-ordered monomials in the generators
Y(i,a) with natural-number exponents.  Multiplication straightens the
concatenated word by repeatedly rewriting the leftmost out-of-order
adjacent pair with the defining relations:

    Y(i,b) Y(i,a) = q^{-1} Y(i,a) Y(i,b)                       (a < b)
    Y(j,a) Y(i,a) = q^{-1} Y(i,a) Y(j,a)                       (i < j)
    Y(j,b) Y(i,a) = Y(i,a) Y(j,b)                              (i < j, a > b)
    Y(j,b) Y(i,a) = Y(i,a) Y(j,b) - (q - q^{-1}) Y(i,b) Y(j,a) (i < j, a < b)

Each rewrite strictly decreases the number of inversions of the word, so
the straightening terminates; associativity is exercised by the test suite
and, more strongly, by the torus-embedding homomorphism check.
"""

from __future__ import annotations

from itertools import permutations

from .context import AlgebraContext, GeneratorIndex
from .errors import IndexOutOfRangeError
from .limits import check_terms
from .rational import RF_ONE, RationalFunction
from .torus import ExponentVector, zero_exponents, unit_exponent

_Q_INV = RationalFunction.q_power(-1)
_MINUS_QDIFF = -(RationalFunction.q_power(1) - RationalFunction.q_power(-1))


def _word_of(exp: ExponentVector) -> tuple[int, ...]:
    word = []
    for k, e in enumerate(exp):
        word.extend([k] * e)
    return tuple(word)


def _exp_of(nn: int, word) -> ExponentVector:
    exp = [0] * nn
    for k in word:
        exp[k] += 1
    return tuple(exp)


def normalize_word(ctx: AlgebraContext, word) -> dict[ExponentVector, RationalFunction]:
    """Normal form of a generator word as {exponent vector: coefficient}."""
    n = ctx.n
    nn = n * n
    pending: dict[tuple[int, ...], RationalFunction] = {tuple(word): RF_ONE}
    done: dict[ExponentVector, RationalFunction] = {}

    def _accumulate(store, key, coeff):
        acc = store.get(key)
        s = coeff if acc is None else acc + coeff
        if s:
            store[key] = s
        elif acc is not None:
            del store[key]

    while pending:
        w, c = pending.popitem()
        k = next((k for k in range(len(w) - 1) if w[k] > w[k + 1]), None)
        if k is None:
            _accumulate(done, _exp_of(nn, w), c)
            continue
        u, v = w[k], w[k + 1]
        j, b = divmod(u, n)
        i, a = divmod(v, n)
        swapped = w[:k] + (v, u) + w[k + 2 :]
        if j == i or b == a:
            _accumulate(pending, swapped, c * _Q_INV)
        elif a > b:
            _accumulate(pending, swapped, c)
        else:
            _accumulate(pending, swapped, c)
            cross = w[:k] + (i * n + b, j * n + a) + w[k + 2 :]
            _accumulate(pending, cross, c * _MINUS_QDIFF)
        check_terms(len(pending) + len(done), "straightening")
    return done


class MatrixAlgebraElement:
    """Finite sum of PBW monomials with Q(q) coefficients."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: AlgebraContext, terms: dict | None = None):
        self.ctx = ctx
        self.terms: dict[ExponentVector, RationalFunction] = {}
        if terms:
            for exp, coeff in terms.items():
                if coeff:
                    self.terms[exp] = coeff

    # -- constructors --------------------------------------------------------

    @staticmethod
    def monomial(
        ctx: AlgebraContext,
        exp: ExponentVector,
        coeff: RationalFunction = RF_ONE,
    ) -> "MatrixAlgebraElement":
        if any(e < 0 for e in exp):
            raise ValueError("quantum-matrix exponents must be natural numbers")
        out = MatrixAlgebraElement(ctx)
        if coeff:
            out.terms[tuple(exp)] = coeff
        return out

    @staticmethod
    def generator(ctx: AlgebraContext, gen: GeneratorIndex) -> "MatrixAlgebraElement":
        return MatrixAlgebraElement.monomial(ctx, unit_exponent(ctx, gen))

    @staticmethod
    def one(ctx: AlgebraContext) -> "MatrixAlgebraElement":
        return MatrixAlgebraElement.monomial(ctx, zero_exponents(ctx))

    @staticmethod
    def scalar(ctx: AlgebraContext, coeff: RationalFunction) -> "MatrixAlgebraElement":
        return MatrixAlgebraElement.monomial(ctx, zero_exponents(ctx), coeff)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "MatrixAlgebraElement") -> "MatrixAlgebraElement":
        out = MatrixAlgebraElement(self.ctx)
        out.terms = dict(self.terms)
        for exp, coeff in other.terms.items():
            acc = out.terms.get(exp)
            s = coeff if acc is None else acc + coeff
            if s:
                out.terms[exp] = s
            elif acc is not None:
                del out.terms[exp]
        return out

    def __neg__(self) -> "MatrixAlgebraElement":
        out = MatrixAlgebraElement(self.ctx)
        out.terms = {exp: -c for exp, c in self.terms.items()}
        return out

    def __sub__(self, other: "MatrixAlgebraElement") -> "MatrixAlgebraElement":
        return self + (-other)

    def scale(self, coeff: RationalFunction) -> "MatrixAlgebraElement":
        out = MatrixAlgebraElement(self.ctx)
        if coeff:
            out.terms = {exp: c * coeff for exp, c in self.terms.items()}
        return out

    def __mul__(self, other: "MatrixAlgebraElement") -> "MatrixAlgebraElement":
        ctx = self.ctx
        out = MatrixAlgebraElement(ctx)
        acc = out.terms
        for g, cg in self.terms.items():
            wg = _word_of(g)
            for d, cd in other.terms.items():
                c = cg * cd
                for exp, coeff in normalize_word(ctx, wg + _word_of(d)).items():
                    prev = acc.get(exp)
                    s = c * coeff if prev is None else prev + c * coeff
                    if s:
                        acc[exp] = s
                    elif prev is not None:
                        del acc[exp]
                check_terms(len(acc), "quantum-matrix product")
        return out

    # -- comparison / presentation --------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixAlgebraElement):
            return NotImplemented
        return self.ctx.n == other.ctx.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx.n, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, coeff in self.sorted_terms():
            mono = "*".join(
                f"Y{self.ctx.gen_at(k)}^{e}" if e != 1 else f"Y{self.ctx.gen_at(k)}"
                for k, e in enumerate(exp)
                if e
            )
            parts.append(f"({coeff})" + ("*" + mono if mono else ""))
        return " + ".join(parts)

    # -- structural maps -----------------------------------------------------

    def commutes_with_all_generators(self) -> bool:
        ctx = self.ctx
        for gen in ctx.generators:
            g = MatrixAlgebraElement.generator(ctx, gen)
            if (self * g - g * self):
                return False
        return True


# ---------------------------------------------------------------------------
# quantum determinant and minors


def _inversions(perm) -> int:
    return sum(
        1
        for k in range(len(perm))
        for l in range(k + 1, len(perm))
        if perm[k] > perm[l]
    )


def qminor(
    ctx: AlgebraContext, rows, cols
) -> MatrixAlgebraElement:
    """Quantum minor on the given row and column subsets: the signed
    permutation sum with weights (-q)^{inversions}."""
    rows = tuple(rows)
    cols = tuple(cols)
    if len(rows) != len(cols):
        raise IndexOutOfRangeError("row and column subsets must have equal size")
    if sorted(rows) != list(rows) or sorted(cols) != list(cols):
        raise IndexOutOfRangeError("row and column subsets must be ascending")
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise IndexOutOfRangeError("row and column subsets must be duplicate-free")
    for v in rows + cols:
        if not (1 <= v <= ctx.n):
            raise IndexOutOfRangeError(f"index {v} outside [1, {ctx.n}]")
    t = len(rows)
    out = MatrixAlgebraElement(ctx)
    nn = ctx.n * ctx.n
    for perm in permutations(range(t)):
        exp = [0] * nn
        for k in range(t):
            exp[ctx.flat(rows[k], cols[perm[k]])] += 1
        l = _inversions(perm)
        coeff = RationalFunction.q_power(l)
        if l % 2:
            coeff = -coeff
        out = out + MatrixAlgebraElement.monomial(ctx, tuple(exp), coeff)
    return out


def qdet(ctx: AlgebraContext) -> MatrixAlgebraElement:
    """The quantum determinant."""
    full = tuple(range(1, ctx.n + 1))
    return qminor(ctx, full, full)


def b_minor(ctx: AlgebraContext, i: int) -> MatrixAlgebraElement:
    """The i-th leading quantum minor along the antidiagonal sweep:
    rows 1..i against columns n-i+1..n for i <= n, rows i-n+1..n against
    columns 1..2n-i for i > n; trivial at the endpoints."""
    n = ctx.n
    if not (0 <= i <= 2 * n):
        raise IndexOutOfRangeError(f"minor index {i} outside [0, {2 * n}]")
    if i == 0 or i == 2 * n:
        return MatrixAlgebraElement.one(ctx)
    if i <= n:
        return qminor(ctx, range(1, i + 1), range(n - i + 1, n + 1))
    return qminor(ctx, range(i - n + 1, n + 1), range(1, 2 * n - i + 1))


def sigma_automorphism(x: MatrixAlgebraElement) -> MatrixAlgebraElement:
    """The scaling automorphism Y(i,a) -> q^{2(n+1-i-a)} Y(i,a), applied
    term-wise."""
    ctx = x.ctx
    n = ctx.n
    out = MatrixAlgebraElement(ctx)
    for exp, coeff in x.terms.items():
        w = 0
        for k, e in enumerate(exp):
            if e:
                i, a = ctx.gen_at(k)
                w += 2 * e * (n + 1 - i - a)
        out.terms[exp] = coeff * RationalFunction.q_power(w)
    return out
