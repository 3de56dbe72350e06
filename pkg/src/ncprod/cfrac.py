"""Continued-fraction engines for moment generating functions.

Three engines, all producing truncated non-commutative power series whose
coefficient at a word w is the state applied to the monomial x_w:

* ``classical_cf``: the one-variable chain 1 / (1 - beta_0 z - gamma_1 z^2 /
  (1 - beta_1 z - ...)).
* ``scalar_branched_cf``: the branched version over a coefficient map; the
  node at word u contributes denominator 1 - sum_i B(i, u) z_i -
  sum_j C(j, u) z_j F_(j,u) z_j, with F_u the inverse of that denominator
  and the full series being F at the root.
* ``matricial_cf``: the block version where level k carries d^k x d^k
  coefficient matrices; the numerator of each sub-fraction is the matrix
  sandwich sum_{j,l} z_j block_{j,l}(C^(k+1) D^{-1}) z_l with block
  extraction in the new-letter-leftmost tensor ordering.

Evaluation is bottom-up over the depth-truncated tree with the identity at
the frontier.  Each level down costs at least total degree 2 per branch, so
a tree explored while the order budget stays nonnegative yields exact
coefficients up to the requested order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .jacobi import JacobiData
from .ncpoly import EMPTY_WORD, NCSeries, Word, words_of_length
from .prodstate import CoefficientMap

Matrix = list[list[Fraction]]
SeriesMatrix = list[list[NCSeries]]


def classical_cf(data: JacobiData, order: int) -> NCSeries:
    """One-variable moment generating function as a truncated series in z."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    level = order // 2
    f = NCSeries.one(1, max(order - 2 * level, 0))
    for k in range(level, -1, -1):
        budget = order - 2 * k
        terms = {EMPTY_WORD: Fraction(1)}
        beta = data.beta_at(k)
        if beta and budget >= 1:
            terms[(1,)] = -beta
        denom = NCSeries(1, budget, terms)
        if budget >= 2:
            gamma = data.gamma_at(k + 1)
            if gamma:
                denom = denom - gamma * f.truncate(budget - 2).sandwich(1, 1).truncate(budget)
        f = denom.inverse()
    return f


def scalar_branched_cf(cm: CoefficientMap, order: int) -> NCSeries:
    """Branched continued fraction of a diagonal coefficient map.

    Branches follow the nonzero C entries, so for a product-type map the
    recursion runs exactly over the interior of its tree; boundary nodes keep
    only their B terms.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    d = cm.d

    def node(u: Word, budget: int) -> NCSeries:
        terms: dict[Word, Fraction] = {EMPTY_WORD: Fraction(1)}
        if budget >= 1:
            for i in range(1, d + 1):
                bval = cm.b(i, u)
                if bval:
                    terms[(i,)] = -bval
        denom = NCSeries(d, budget, terms)
        if budget >= 2:
            for j in range(1, d + 1):
                child = (j,) + u
                cval = cm.c(child)
                if cval:
                    sub = node(child, budget - 2)
                    denom = denom - cval * sub.sandwich(j, j).truncate(budget)
        return denom.inverse()

    return node(EMPTY_WORD, order)


def _as_matrix(rows: Iterable[Iterable[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


@dataclass(frozen=True, eq=False)
class MatricialData:
    """Level-indexed recursion matrices: T_i at levels 0..K, C at levels 1..K.

    Level k matrices are d^k x d^k; every C must be diagonal with nonnegative
    entries.  Basis vectors at level k are words of length k ordered with the
    first (leftmost, most recently added) letter most significant.
    """

    d: int
    t: tuple[tuple[tuple[tuple[Fraction, ...], ...], ...], ...]
    c: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "t", tuple(tuple(_as_matrix(m) for m in level) for level in self.t)
        )
        object.__setattr__(self, "c", tuple(_as_matrix(m) for m in self.c))
        if len(self.c) != len(self.t) - 1:
            raise ValueError("need one C matrix per level 1..K and T matrices at 0..K")
        for k, level in enumerate(self.t):
            size = self.d**k
            if len(level) != self.d:
                raise ValueError(f"level {k} needs one T matrix per letter")
            for m in level:
                _check_square(m, size, f"T at level {k}")
        for k, m in enumerate(self.c, start=1):
            size = self.d**k
            _check_square(m, size, f"C at level {k}")
            for r, row in enumerate(m):
                for s, value in enumerate(row):
                    if r != s and value:
                        raise ValueError(f"C at level {k} must be diagonal")
                    if r == s and value < 0:
                        raise ValueError(f"C at level {k} has negative entry {value}")

    @property
    def levels(self) -> int:
        return len(self.t) - 1


def _check_square(m: Sequence[Sequence[Fraction]], size: int, what: str) -> None:
    if len(m) != size or any(len(row) != size for row in m):
        raise ValueError(f"{what} must be {size}x{size}")


def matricial_from_map(cm: CoefficientMap, levels: int) -> MatricialData:
    """Diagonal matricial data induced by a coefficient map."""
    if levels > cm.depth:
        raise ValueError(f"levels {levels} exceed map depth {cm.depth}")
    d = cm.d
    t = []
    c = []
    for k in range(levels + 1):
        words = words_of_length(d, k)
        size = len(words)
        level_t = []
        for i in range(1, d + 1):
            m = [[Fraction(0)] * size for _ in range(size)]
            for idx, u in enumerate(words):
                m[idx][idx] = cm.b(i, u)
            level_t.append(m)
        t.append(tuple(level_t))
        if k >= 1:
            mc = [[Fraction(0)] * size for _ in range(size)]
            for idx, u in enumerate(words):
                mc[idx][idx] = cm.c(u)
            c.append(mc)
    return MatricialData(d=d, t=tuple(t), c=tuple(c))


def block_extract(matrix: Sequence[Sequence], i: int, j: int, d: int) -> list[list]:
    """Block (i, j) of a d^k x d^k matrix viewed as d x d blocks.

    Rows whose index word starts with letter i, columns starting with letter
    j; for a 2 x 2 matrix this is just the (i, j) entry as a 1 x 1 matrix.
    """
    n = len(matrix)
    if n % d != 0 or any(len(row) != n for row in matrix):
        raise ValueError(f"matrix is not square of size divisible by {d}")
    m = n // d
    if not (1 <= i <= d and 1 <= j <= d):
        raise ValueError(f"block indices must lie in 1..{d}")
    return [list(row[(j - 1) * m : j * m]) for row in matrix[(i - 1) * m : i * m]]


def _smat_identity(n: int, d: int, order: int) -> SeriesMatrix:
    return [
        [NCSeries.one(d, order) if r == s else NCSeries.zero(d, order) for s in range(n)]
        for r in range(n)
    ]


def _smat_mul(a: SeriesMatrix, b: SeriesMatrix) -> SeriesMatrix:
    n = len(a)
    out = []
    for r in range(n):
        row = []
        for s in range(n):
            acc = None
            for t in range(n):
                if not a[r][t].terms or not b[t][s].terms:
                    continue
                term = a[r][t] * b[t][s]
                acc = term if acc is None else acc + term
            if acc is None:
                acc = NCSeries.zero(a[0][0].d, a[0][0].order)
            row.append(acc)
        out.append(row)
    return out


def _smat_inverse(mat: SeriesMatrix, order: int) -> SeriesMatrix:
    """Inverse of a series matrix with identity constant term."""
    n = len(mat)
    d = mat[0][0].d
    for r in range(n):
        for s in range(n):
            expected = Fraction(1) if r == s else Fraction(0)
            if mat[r][s].constant_term() != expected:
                raise ValueError("matrix inverse requires identity constant term")
    identity = _smat_identity(n, d, order)
    u = [[identity[r][s] - mat[r][s] for s in range(n)] for r in range(n)]
    x = identity
    for _ in range(order):
        ux = _smat_mul(u, x)
        x = [[identity[r][s] + ux[r][s] for s in range(n)] for r in range(n)]
    return x


def matricial_cf(md: MatricialData, order: int) -> NCSeries:
    """Moment generating series from level-matrix data, evaluated bottom-up.

    Coefficients are sound only up to order 2 * K for data with levels 0..K,
    so the returned series is truncated there.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    d = md.d
    top = md.levels
    effective = min(order, 2 * top)
    f: SeriesMatrix | None = None
    for k in range(top, -1, -1):
        budget = max(effective - 2 * k, 0)
        n = d**k
        denom = _smat_identity(n, d, budget)
        for i in range(1, d + 1):
            t_matrix = md.t[k][i - 1]
            for r in range(n):
                for s in range(n):
                    value = t_matrix[r][s]
                    if value and budget >= 1:
                        denom[r][s] = denom[r][s] - NCSeries(d, budget, {(i,): value})
        if k < top and budget >= 2 and f is not None:
            c_matrix = md.c[k]  # C at level k + 1 (c is indexed from level 1)
            scaled = [
                [c_matrix[r][r] * f[r][s].truncate(budget - 2) for s in range(d * n)]
                for r in range(d * n)
            ]
            for j in range(1, d + 1):
                for l in range(1, d + 1):
                    block = block_extract(scaled, j, l, d)
                    for r in range(n):
                        for s in range(n):
                            if block[r][s].terms:
                                denom[r][s] = denom[r][s] - block[r][s].sandwich(j, l).truncate(budget)
        f = _smat_inverse(denom, budget)
    assert f is not None
    return f[0][0]


def render_branched_cf(cm: CoefficientMap, depth: int, var: str = "z") -> str:
    """Indented text rendering of the branched fraction down to a depth.

    Each line shows one node's denominator; a trailing "-> [word]" marks a
    sub-fraction continued on the indented lines below.
    """
    lines: list[str] = []

    def label(u: Word) -> str:
        return "(" + ",".join(str(letter) for letter in u) + ")"

    def walk(u: Word, indent: int) -> None:
        parts = ["1"]
        for i in range(1, cm.d + 1):
            bval = cm.b(i, u)
            if bval:
                parts.append(f"- {bval}*{var}{i}")
        children = []
        if len(u) < depth:
            for j in range(1, cm.d + 1):
                child = (j,) + u
                cval = cm.c(child)
                if cval:
                    children.append((j, child, cval))
        for j, child, cval in children:
            parts.append(f"- {cval}*{var}{j}|{var}{j} -> {label(child)}")
        lines.append("  " * indent + f"{label(u)}: 1 / ( " + " ".join(parts) + " )")
        for _, child, _ in children:
            walk(child, indent + 1)

    walk(EMPTY_WORD, 0)
    return "\n".join(lines)
