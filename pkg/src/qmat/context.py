"""Ambient configuration: dimension, generator ordering, commutation matrix.

Generators are indexed by pairs (i, a) with 1 <= i, a <= n, enumerated in
lexicographic order; ``flat`` positions are 0-based indices into that
enumeration.  The skew-symmetric integer matrix ``B`` records the
commutation exponents of the q-commuting generators obtained at the end of
the deleting-derivations process: T_k T_l = q^{B[k][l]} T_l T_k.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import IndexOutOfRangeError, InvalidDimensionError

GeneratorIndex = tuple[int, int]
StepIndex = tuple[int, int]


def _b_entry(n: int, k: int, l: int) -> int:
    """Entry of B at 0-based flat positions k, l.

    Block (i, j) is A for i == j, I for i < j and -I for i > j, where A is
    the n x n matrix with 0 diagonal, 1 above and -1 below.
    """
    i, a = divmod(k, n)
    j, b = divmod(l, n)
    if i == j:
        return (a < b) - (b < a)
    s = 1 if i < j else -1
    return s if a == b else 0


class AlgebraContext:
    """Dimension n, the commutation matrix B and the tower step list E."""

    __slots__ = ("n", "B", "E", "generators", "_step_pos")

    def __init__(self, n: int):
        if n < 2:
            raise InvalidDimensionError(f"matrix size must be >= 2, got {n}")
        self.n = n
        nn = n * n
        self.B = tuple(
            tuple(_b_entry(n, k, l) for l in range(nn)) for k in range(nn)
        )
        self.generators = tuple(
            (i, a) for i in range(1, n + 1) for a in range(1, n + 1)
        )
        steps = [
            (j, b) for j in range(1, n + 1) for b in range(1, n + 1)
        ]
        steps.remove((1, 1))
        steps.append((n, n + 1))
        self.E = tuple(steps)
        self._step_pos = {r: k for k, r in enumerate(self.E)}

    # -- generator indexing --------------------------------------------------

    def flat(self, i: int, a: int) -> int:
        """0-based flat position of generator (i, a)."""
        if not (1 <= i <= self.n and 1 <= a <= self.n):
            raise IndexOutOfRangeError(f"generator ({i},{a}) out of range")
        return (i - 1) * self.n + a - 1

    def gen_at(self, k: int) -> GeneratorIndex:
        """Generator (i, a) at 0-based flat position k."""
        i, a = divmod(k, self.n)
        return (i + 1, a + 1)

    # -- tower steps ---------------------------------------------------------

    def step_successor(self, r: StepIndex) -> StepIndex:
        pos = self._step_pos[r]
        if pos + 1 >= len(self.E):
            raise IndexOutOfRangeError(f"step {r} has no successor")
        return self.E[pos + 1]

    def top_step(self) -> StepIndex:
        return self.E[-1]

    def __repr__(self) -> str:
        return f"AlgebraContext(n={self.n})"

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraContext) and self.n == other.n

    def __hash__(self) -> int:
        return hash(("AlgebraContext", self.n))


@lru_cache(maxsize=None)
def build_context(n: int) -> AlgebraContext:
    return AlgebraContext(n)


def flat_of(ctx: AlgebraContext, gen: GeneratorIndex) -> int:
    return ctx.flat(gen[0], gen[1])


def rational_rank(rows) -> int:
    """Rank over Q of an integer matrix given as a list of rows."""
    mat = [[Fraction(c) for c in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [c * inv for c in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def integer_kernel_basis(rows) -> list[tuple[int, ...]]:
    """Primitive integer vectors spanning the Q-kernel of an integer matrix."""
    ncols = len(rows[0])
    mat = [[Fraction(c) for c in row] for row in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [c * inv for c in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
    basis = []
    free = [c for c in range(ncols) if c not in pivots]
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -mat[r][fc]
        lcm = 1
        for c in vec:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        ints = [int(c * lcm) for c in vec]
        g = 0
        for c in ints:
            g = math.gcd(g, c)
        if g > 1:
            ints = [c // g for c in ints]
        basis.append(tuple(ints))
    return basis
