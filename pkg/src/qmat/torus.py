"""Arithmetic in the quantum torus and its distinguished subalgebras.

Elements are finite sums of terms (coefficient, exponent vector); the
exponent vector lives in Z^{n^2} and is stored as a dense tuple in flat
generator order.  Every element is kept in normal-ordered (PBW) form, so
equality is term-wise.  The product of two ordered monomials is

    T^g * T^d = q^{e(g, d)} T^{g + d},

where e(g, d) = sum over flat positions a < b of g_b * d_a * B[b][a]
(the cost of moving each factor of T^d left past the larger-index factors
of T^g).
"""

from __future__ import annotations

from .context import AlgebraContext, GeneratorIndex
from .errors import (
    IndexOutOfRangeError,
    NotAMonomialError,
    NotCentralError,
    NotInLatticeError,
)
from .limits import check_terms
from .rational import RF_ONE, RationalFunction

ExponentVector = tuple[int, ...]


def zero_exponents(ctx: AlgebraContext) -> ExponentVector:
    return (0,) * (ctx.n * ctx.n)


def unit_exponent(ctx: AlgebraContext, gen: GeneratorIndex) -> ExponentVector:
    k = ctx.flat(*gen)
    nn = ctx.n * ctx.n
    return (0,) * k + (1,) + (0,) * (nn - k - 1)


def add_exponents(g: ExponentVector, d: ExponentVector) -> ExponentVector:
    return tuple(a + b for a, b in zip(g, d))


def commutation_exponent(
    ctx: AlgebraContext, g: ExponentVector, d: ExponentVector
) -> int:
    """Integer e with T^g * T^d = q^e T^{g+d} in normal order."""
    B = ctx.B
    e = 0
    for b, gb in enumerate(g):
        if gb:
            row = B[b]
            for a in range(b):
                da = d[a]
                if da:
                    e += gb * da * row[a]
    return e


def is_central_monomial(ctx: AlgebraContext, g: ExponentVector) -> bool:
    """T^g commutes with every generator iff B.g = 0."""
    for row in ctx.B:
        if sum(r * c for r, c in zip(row, g) if c):
            return False
    return True


class TorusElement:
    """Finite sum of normal-ordered torus monomials with Q(q) coefficients."""

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
    ) -> "TorusElement":
        out = TorusElement(ctx)
        if coeff:
            out.terms[tuple(exp)] = coeff
        return out

    @staticmethod
    def generator(ctx: AlgebraContext, gen: GeneratorIndex) -> "TorusElement":
        return TorusElement.monomial(ctx, unit_exponent(ctx, gen))

    @staticmethod
    def one(ctx: AlgebraContext) -> "TorusElement":
        return TorusElement.monomial(ctx, zero_exponents(ctx))

    @staticmethod
    def scalar(ctx: AlgebraContext, coeff: RationalFunction) -> "TorusElement":
        return TorusElement.monomial(ctx, zero_exponents(ctx), coeff)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_central(self) -> bool:
        return all(is_central_monomial(self.ctx, g) for g in self.terms)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "TorusElement") -> "TorusElement":
        out = TorusElement(self.ctx)
        out.terms = dict(self.terms)
        for exp, coeff in other.terms.items():
            acc = out.terms.get(exp)
            s = coeff if acc is None else acc + coeff
            if s:
                out.terms[exp] = s
            elif acc is not None:
                del out.terms[exp]
        return out

    def __neg__(self) -> "TorusElement":
        out = TorusElement(self.ctx)
        out.terms = {exp: -c for exp, c in self.terms.items()}
        return out

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + (-other)

    def scale(self, coeff: RationalFunction) -> "TorusElement":
        out = TorusElement(self.ctx)
        if coeff:
            out.terms = {exp: c * coeff for exp, c in self.terms.items()}
        return out

    def __mul__(self, other: "TorusElement") -> "TorusElement":
        ctx = self.ctx
        q_power = RationalFunction.q_power
        out: dict[ExponentVector, RationalFunction] = {}
        for g, cg in self.terms.items():
            for d, cd in other.terms.items():
                e = commutation_exponent(ctx, g, d)
                coeff = cg * cd
                if e:
                    coeff = coeff * q_power(e)
                exp = add_exponents(g, d)
                acc = out.get(exp)
                s = coeff if acc is None else acc + coeff
                if s:
                    out[exp] = s
                elif acc is not None:
                    del out[exp]
        check_terms(len(out), "torus product")
        result = TorusElement(ctx)
        result.terms = out
        return result

    def invert_monomial(self) -> "TorusElement":
        """Inverse of a single-term element t, with t * result = 1."""
        if len(self.terms) != 1:
            raise NotAMonomialError(
                "only single-term torus elements are invertible here"
            )
        (exp, coeff), = self.terms.items()
        inv_exp = tuple(-e for e in exp)
        e = commutation_exponent(self.ctx, exp, inv_exp)
        inv_coeff = coeff.inv() * RationalFunction.q_power(-e)
        return TorusElement.monomial(self.ctx, inv_exp, inv_coeff)

    def commutes_with_all_generators(self) -> bool:
        ctx = self.ctx
        for gen in ctx.generators:
            g = TorusElement.generator(ctx, gen)
            if (self * g - g * self):
                return False
        return True

    # -- comparison / presentation --------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusElement):
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
                f"T{self.ctx.gen_at(k)}^{e}" if e != 1 else f"T{self.ctx.gen_at(k)}"
                for k, e in enumerate(exp)
                if e
            )
            parts.append(f"({coeff})" + ("*" + mono if mono else ""))
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# distinguished central monomials


def delta_exponents(ctx: AlgebraContext, i: int) -> ExponentVector:
    """Exponent vector of the i-th distinguished central monomial:
    +1 along the superdiagonal starting at (1, n-i+1), -1 along the
    subdiagonal starting at (i+1, 1)."""
    n = ctx.n
    if not (1 <= i <= n):
        raise IndexOutOfRangeError(f"delta index {i} outside [1, {n}]")
    exp = [0] * (n * n)
    for k in range(1, i + 1):
        exp[ctx.flat(k, n - i + k)] = 1
    for m in range(1, n - i + 1):
        exp[ctx.flat(i + m, m)] = -1
    return tuple(exp)


def delta_element(ctx: AlgebraContext, i: int) -> TorusElement:
    return TorusElement.monomial(ctx, delta_exponents(ctx, i))


def delta_lattice_coordinates(
    ctx: AlgebraContext, g: ExponentVector
) -> tuple[int, ...]:
    """Integer k with g = sum_i k_i * delta_exponents(i), if it exists.

    The delta supports are pairwise disjoint with entries +-1, so each k_i
    can be read off one coordinate; the full vector is then verified.
    """
    n = ctx.n
    k = []
    for i in range(1, n + 1):
        # entry at (1, n-i+1) is +k_i
        k.append(g[ctx.flat(1, n - i + 1)])
    total = [0] * (n * n)
    for i in range(1, n + 1):
        if k[i - 1]:
            for pos, e in enumerate(delta_exponents(ctx, i)):
                total[pos] += k[i - 1] * e
    if tuple(total) != tuple(g):
        raise NotInLatticeError(
            f"exponent vector {g} is not in the central lattice"
        )
    return tuple(k)


def central_to_delta_basis(x: TorusElement) -> dict[tuple[int, ...], RationalFunction]:
    """Express a central element as a Laurent polynomial in the distinguished
    central monomials.  Coefficients are adjusted so that the ordered
    reconstruction product reproduces the input exactly."""
    ctx = x.ctx
    out: dict[tuple[int, ...], RationalFunction] = {}
    for exp, coeff in x.terms.items():
        if not is_central_monomial(ctx, exp):
            raise NotCentralError(f"monomial {exp} is not central")
        k = delta_lattice_coordinates(ctx, exp)
        # ordered product Delta_1^{k_1} ... Delta_n^{k_n} = q^c T^exp
        prod = TorusElement.one(ctx)
        for i in range(1, ctx.n + 1):
            if k[i - 1]:
                d = delta_exponents(ctx, i)
                mono = TorusElement.monomial(
                    ctx, tuple(e * k[i - 1] for e in d)
                )
                prod = prod * mono
        (pexp, pcoeff), = prod.terms.items()
        assert pexp == exp
        out[k] = coeff / pcoeff
    return out


def delta_basis_to_element(
    ctx: AlgebraContext, coords: dict[tuple[int, ...], RationalFunction]
) -> TorusElement:
    """Inverse of :func:`central_to_delta_basis`."""
    out = TorusElement(ctx)
    for k, coeff in coords.items():
        prod = TorusElement.one(ctx)
        for i in range(1, ctx.n + 1):
            if k[i - 1]:
                d = delta_exponents(ctx, i)
                prod = prod * TorusElement.monomial(
                    ctx, tuple(e * k[i - 1] for e in d)
                )
        out = out + prod.scale(coeff)
    return out


# ---------------------------------------------------------------------------
# sign-pattern subalgebras


class SubalgebraPattern:
    """Per-generator sign constraint: True entries may carry negative
    exponents, False entries are restricted to natural numbers."""

    __slots__ = ("ctx", "allow_negative", "name")

    def __init__(self, ctx: AlgebraContext, allow_negative, name: str):
        self.ctx = ctx
        self.allow_negative = tuple(allow_negative)
        self.name = name

    @staticmethod
    def affine_space(ctx: AlgebraContext) -> "SubalgebraPattern":
        """The quantum affine space: all exponents natural."""
        return SubalgebraPattern(
            ctx, (False,) * (ctx.n * ctx.n), "affine"
        )

    @staticmethod
    def u22(ctx: AlgebraContext) -> "SubalgebraPattern":
        """First row and first column natural, everything else invertible."""
        allow = [
            i > 1 and a > 1 for (i, a) in ctx.generators
        ]
        return SubalgebraPattern(ctx, allow, "U(2,2)")

    @staticmethod
    def v_step(ctx: AlgebraContext, step) -> "SubalgebraPattern":
        """First-row/first-column generators strictly after the step become
        invertible on top of the U(2,2) pattern."""
        j, b = step
        allow = [
            (i > 1 and a > 1) or ((i == 1 or a == 1) and (i, a) > (j, b))
            for (i, a) in ctx.generators
        ]
        return SubalgebraPattern(ctx, allow, f"V{step}")

    @staticmethod
    def torus(ctx: AlgebraContext) -> "SubalgebraPattern":
        return SubalgebraPattern(ctx, (True,) * (ctx.n * ctx.n), "torus")

    def admits(self, exp: ExponentVector) -> bool:
        return all(
            e >= 0 or ok for e, ok in zip(exp, self.allow_negative)
        )


def in_subalgebra(x: TorusElement, pattern: SubalgebraPattern) -> bool:
    return all(pattern.admits(exp) for exp in x.terms)


# ---------------------------------------------------------------------------
# diagonal-chain description of central monomials


def zset_conditions(ctx: AlgebraContext, g: ExponentVector) -> bool:
    """True iff the exponents are constant along each superdiagonal and
    anti-constant along the matching subdiagonal:

    for every b in [1, n], the entries at (1,b), (2,b+1), ..., (n-b+1,n)
    coincide and equal the negated entries at (n-b+2,1), ..., (n,b-1).
    """
    n = ctx.n
    for b in range(1, n + 1):
        v = g[ctx.flat(1, b)]
        for k in range(2, n - b + 2):
            if g[ctx.flat(k, b + k - 1)] != v:
                return False
        for m in range(1, b):
            if g[ctx.flat(n - b + 1 + m, m)] != -v:
                return False
    return True
