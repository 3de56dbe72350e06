"""Product-type states: basis polynomials, coefficient maps, state evaluation.

A state with a monic orthogonal polynomial family {P_u} indexed by words is
determined by per-word recursion coefficients: B(i, u) measures the
stay-in-place part of left multiplication by x_i at P_u, and C(u) >= 0 the
lowering part.  The complete rewrite rule for left multiplication is

    x_i * P_u = P_{(i, u)} + B(i, u) * P_u + [u starts with i] * C(u) * P_tail(u)

where tail(u) drops the first letter.  Expanding a monomial letter by letter
(rightmost first) from P_() and reading the constant coefficient evaluates
the state on it; that transfer-operator expansion is exact and linear.

Coefficient maps come from three constructions:

* ``product_type_map(tree, j1, j2)``: B(i, u) is beta_k of marginal i (k the
  leading i-run length of u) when (i, u) is a tree member, else 0; C(u) is
  gamma_k of the first letter's marginal when u is an interior member
  (member with its same-letter extension present), else 0.
* ``cfree_map(mu1, nu1, mu2, nu2, depth)``: the two-marginal-pair state on
  the full binary tree; a node whose leading run is the whole word draws its
  coefficients from mu, every other node from nu.
* ``explicit_map``: arbitrary diagonal data, for exercising the continued
  fraction machinery beyond the product-type case.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .jacobi import JacobiData, orthogonal_polynomial
from .ncpoly import (
    EMPTY_WORD,
    NCPolynomial,
    Word,
    graded_lex_key,
    leading_run_length,
    word_postfixes,
    word_runs,
    words_up_to,
)
from .omega import OmegaTree

BasisExpansion = Mapping[Word, Fraction]


class DepthExhaustedError(RuntimeError):
    """A coefficient was requested beyond the stored depth of the map."""


@dataclass(frozen=True, eq=False)
class CoefficientMap:
    """Per-word recursion coefficients B(i, u) and C(u), stored sparsely.

    Only nonzero entries are kept; queries beyond ``depth`` raise
    :class:`DepthExhaustedError`.  ``omega`` and ``marginals`` record the
    provenance when the map was built from a tree or from marginal pairs.
    """

    d: int
    depth: int
    b_entries: Mapping[tuple[int, Word], Fraction]
    c_entries: Mapping[Word, Fraction]
    provenance: str = "explicit"
    omega: OmegaTree | None = None
    marginals: tuple[JacobiData, ...] | None = None

    def __post_init__(self):
        for (letter, word), value in self.b_entries.items():
            if not 1 <= letter <= self.d or len(word) > self.depth:
                raise ValueError(f"bad B entry at letter {letter}, word {list(word)}")
            if value == 0:
                raise ValueError("B entries must be nonzero (omit zeros)")
        for word, value in self.c_entries.items():
            if not word or len(word) > self.depth:
                raise ValueError(f"bad C entry at word {list(word)}")
            if value < 0:
                raise ValueError(f"C entry at {list(word)} is negative: {value}")
            if value == 0:
                raise ValueError("C entries must be nonzero (omit zeros)")

    def b(self, letter: int, word: Word) -> Fraction:
        if len(word) > self.depth:
            raise DepthExhaustedError(
                f"B query at depth {len(word)} exceeds map depth {self.depth}"
            )
        return self.b_entries.get((letter, word), Fraction(0))

    def c(self, word: Word) -> Fraction:
        if not word:
            return Fraction(0)
        if len(word) > self.depth:
            raise DepthExhaustedError(
                f"C query at depth {len(word)} exceeds map depth {self.depth}"
            )
        return self.c_entries.get(word, Fraction(0))

    def norm_squared(self, word: Word) -> Fraction:
        """Product of C over all nonempty right-suffixes of the word."""
        total = Fraction(1)
        for suffix in word_postfixes(word)[:-1]:
            total *= self.c(suffix)
            if not total:
                return total
        return total


def _marginal_pair(j1: JacobiData, j2: JacobiData) -> dict[int, JacobiData]:
    return {1: j1, 2: j2}


def _check_finite_support(tree: OmegaTree, marginals: dict[int, JacobiData]) -> None:
    # A marginal supported on n points cannot meet runs of its letter longer
    # than n anywhere in the tree.
    limits = {i: j.support_size() for i, j in marginals.items()}
    if all(limit is None for limit in limits.values()):
        return
    for u in tree.members:
        for letter, length in word_runs(u):
            limit = limits[letter]
            if limit is not None and length > limit:
                raise ValueError(
                    f"marginal {letter} is supported on {limit} points but the tree "
                    f"contains a run of {length} letter-{letter}s (word {list(u)})"
                )


def product_type_map(tree: OmegaTree, j1: JacobiData, j2: JacobiData) -> CoefficientMap:
    """Coefficient map of the product-type state attached to a tree."""
    marginals = _marginal_pair(j1, j2)
    _check_finite_support(tree, marginals)
    depth = tree.depth
    b: dict[tuple[int, Word], Fraction] = {}
    c: dict[Word, Fraction] = {}
    for u in words_up_to(2, depth):
        for i in (1, 2):
            if (i,) + u in tree.members:
                value = marginals[i].beta_at(leading_run_length(u, i))
                if value:
                    b[(i, u)] = value
        if u and tree.in_interior(u):
            value = marginals[u[0]].gamma_at(leading_run_length(u, u[0]))
            if value:
                c[u] = value
    return CoefficientMap(
        d=2,
        depth=depth,
        b_entries=b,
        c_entries=c,
        provenance="product-type",
        omega=tree,
        marginals=(j1, j2),
    )


def cfree_map(
    mu1: JacobiData, nu1: JacobiData, mu2: JacobiData, nu2: JacobiData, depth: int
) -> CoefficientMap:
    """Two-marginal-pair coefficient map on the full binary tree.

    At a node u = i^k v: the leading run's coefficients come from mu_i when
    v is empty (the run is the rightmost block of u) and from nu_i otherwise.
    """
    mu = _marginal_pair(mu1, mu2)
    nu = _marginal_pair(nu1, nu2)
    b: dict[tuple[int, Word], Fraction] = {}
    c: dict[Word, Fraction] = {}
    for u in words_up_to(2, depth):
        for i in (1, 2):
            k = leading_run_length(u, i)
            source = mu[i] if len(u) == k else nu[i]
            value = source.beta_at(k)
            if value:
                b[(i, u)] = value
        if u:
            i = u[0]
            k = leading_run_length(u, i)
            source = mu[i] if len(u) == k else nu[i]
            value = source.gamma_at(k)
            if value:
                c[u] = value
    return CoefficientMap(
        d=2,
        depth=depth,
        b_entries=b,
        c_entries=c,
        provenance="c-free",
        marginals=(mu1, nu1, mu2, nu2),
    )


def explicit_map(
    d: int,
    depth: int,
    b_entries: Mapping[tuple[int, Iterable[int]], Fraction],
    c_entries: Mapping[Iterable[int], Fraction],
) -> CoefficientMap:
    """Arbitrary diagonal recursion data (no tree attached)."""
    b = {
        (letter, tuple(word)): Fraction(value)
        for (letter, word), value in b_entries.items()
        if Fraction(value)
    }
    c = {tuple(word): Fraction(value) for word, value in c_entries.items() if Fraction(value)}
    return CoefficientMap(d=d, depth=depth, b_entries=b, c_entries=c, provenance="explicit")


def basis_polynomial(tree: OmegaTree, j1: JacobiData, j2: JacobiData, u: Word) -> NCPolynomial:
    """The basis polynomial P_u, straight from its defining formula.

    For a member word, the product of one-variable orthogonal polynomials
    over the maximal runs of u, in order.  For a non-member, x_v * P_w where
    w is the longest right-suffix of u that is a member.
    """
    u = tuple(u)
    marginals = _marginal_pair(j1, j2)
    if u in tree.members:
        result = NCPolynomial.one(2)
        for letter, length in word_runs(u):
            result = result * orthogonal_polynomial(
                marginals[letter], length, letter=letter, alphabet=2
            )
        return result
    for suffix in word_postfixes(u)[1:]:
        if suffix in tree.members:
            prefix = u[: len(u) - len(suffix)]
            return NCPolynomial.monomial(prefix, 2) * basis_polynomial(tree, j1, j2, suffix)
    raise ValueError("tree does not contain the empty word")


def cfree_basis_polynomial(
    mu1: JacobiData, nu1: JacobiData, mu2: JacobiData, nu2: JacobiData, u: Word
) -> NCPolynomial:
    """Alternating-product basis for the two-pair state.

    The rightmost run of u contributes the mu-orthogonal polynomial of its
    letter; every other run contributes the nu-orthogonal polynomial.
    """
    mu = _marginal_pair(mu1, mu2)
    nu = _marginal_pair(nu1, nu2)
    runs = word_runs(tuple(u))
    result = NCPolynomial.one(2)
    for idx, (letter, length) in enumerate(runs):
        source = mu[letter] if idx == len(runs) - 1 else nu[letter]
        result = result * orthogonal_polynomial(source, length, letter=letter, alphabet=2)
    return result


def recursion_basis(cm: CoefficientMap, u: Word) -> NCPolynomial:
    """P_u rebuilt from the rewrite rules by prepending letters of u."""
    u = tuple(u)
    word: Word = EMPTY_WORD
    prev: NCPolynomial | None = None
    current = NCPolynomial.one(cm.d)
    for letter in reversed(u):
        x = NCPolynomial.variable(letter, cm.d)
        nxt = x * current - cm.b(letter, word) * current
        if word and word[0] == letter:
            cval = cm.c(word)
            if cval and prev is not None:
                nxt = nxt - cval * prev
        prev, current = current, nxt
        word = (letter,) + word
    return current


def left_multiply(cm: CoefficientMap, letter: int, expansion: BasisExpansion) -> dict[Word, Fraction]:
    """Linear extension of the left-multiplication rewrite rule."""
    if not 1 <= letter <= cm.d:
        raise ValueError(f"letter {letter} outside alphabet 1..{cm.d}")
    out: dict[Word, Fraction] = {}

    def add(word: Word, value: Fraction) -> None:
        total = out.get(word, Fraction(0)) + value
        if total:
            out[word] = total
        elif word in out:
            del out[word]

    for word, coeff in expansion.items():
        add((letter,) + word, coeff)
        bval = cm.b(letter, word)
        if bval:
            add(word, coeff * bval)
        if word and word[0] == letter:
            cval = cm.c(word)
            if cval:
                add(word[1:], coeff * cval)
    return out


class StateEvaluator:
    """Memoizing transfer-operator evaluator for one coefficient map.

    Word expansions are cached, so evaluating many polynomials against the
    same state reuses work.  Supports polynomials of degree up to
    ``cm.depth + 1`` (the final raise needs no coefficient lookup).

    The cache makes instances single-threaded; share the immutable map and
    give each thread its own evaluator.
    """

    def __init__(self, cm: CoefficientMap):
        self.cm = cm
        self._expansions: dict[Word, dict[Word, Fraction]] = {
            EMPTY_WORD: {EMPTY_WORD: Fraction(1)}
        }

    def expansion(self, word: Word) -> dict[Word, Fraction]:
        """Expansion of the monomial x_word in the P-basis."""
        word = tuple(word)
        cached = self._expansions.get(word)
        if cached is not None:
            return cached
        # build from the longest cached suffix outward
        start = len(word)
        for k in range(1, len(word) + 1):
            if word[k:] in self._expansions:
                start = k
                break
        current = self._expansions[word[start:]]
        for pos in range(start - 1, -1, -1):
            suffix = word[pos:]
            current = left_multiply(self.cm, word[pos], current)
            self._expansions[suffix] = current
        return current

    def word_moment(self, word: Word) -> Fraction:
        return self.expansion(word).get(EMPTY_WORD, Fraction(0))

    def eval_poly(self, p: NCPolynomial) -> Fraction:
        if p.d != self.cm.d:
            raise ValueError(f"alphabet mismatch: {p.d} vs {self.cm.d}")
        return sum((coeff * self.word_moment(w) for w, coeff in p.terms.items()), Fraction(0))

    def inner(self, p: NCPolynomial, q: NCPolynomial) -> Fraction:
        return self.eval_poly(p.involution() * q)


def state_eval(cm: CoefficientMap, p: NCPolynomial) -> Fraction:
    """Apply the state to a polynomial (fresh evaluator; see StateEvaluator)."""
    return StateEvaluator(cm).eval_poly(p)


def inner_product(cm: CoefficientMap, p: NCPolynomial, q: NCPolynomial) -> Fraction:
    """The bilinear form <p, q> = state of involution(p) * q."""
    return StateEvaluator(cm).inner(p, q)


def moment_table(cm: CoefficientMap, order: int) -> list[tuple[Word, Fraction]]:
    """All word moments up to the given order, in graded-lex order."""
    evaluator = StateEvaluator(cm)
    return [(w, evaluator.word_moment(w)) for w in words_up_to(cm.d, order)]


@dataclass
class GramMatrix:
    """Inner products of basis polynomials over all words up to a depth."""

    words: tuple[Word, ...]
    entries: dict[tuple[Word, Word], Fraction] = field(default_factory=dict)

    def value(self, u: Word, v: Word) -> Fraction:
        return self.entries.get((tuple(u), tuple(v)), Fraction(0))

    def is_diagonal(self) -> bool:
        return all(u == v for (u, v), value in self.entries.items() if value)

    def diagonal(self) -> dict[Word, Fraction]:
        return {u: self.value(u, u) for u in self.words}

    def to_triples(self) -> list[tuple[Word, Word, Fraction]]:
        ordered = sorted(self.entries.items(), key=lambda kv: (graded_lex_key(kv[0][0]), graded_lex_key(kv[0][1])))
        return [(u, v, value) for (u, v), value in ordered if value]


def _basis_builder(cm: CoefficientMap) -> Callable[[Word], NCPolynomial]:
    if cm.provenance == "product-type" and cm.omega is not None and cm.marginals:
        tree, (j1, j2) = cm.omega, cm.marginals
        return lambda u: basis_polynomial(tree, j1, j2, u)
    if cm.provenance == "c-free" and cm.marginals:
        mu1, nu1, mu2, nu2 = cm.marginals
        return lambda u: cfree_basis_polynomial(mu1, nu1, mu2, nu2, u)
    return lambda u: recursion_basis(cm, u)


def gram_matrix(cm: CoefficientMap, depth: int) -> GramMatrix:
    """Gram matrix of {P_u : |u| <= depth} under the state.

    Needs 2 * depth <= cm.depth + 1 so that the inner products stay within
    the supported degree.
    """
    if 2 * depth > cm.depth + 1:
        raise DepthExhaustedError(
            f"Gram depth {depth} needs map depth >= {2 * depth - 1}, have {cm.depth}"
        )
    basis = _basis_builder(cm)
    words = tuple(words_up_to(cm.d, depth))
    polys = {u: basis(u) for u in words}
    evaluator = StateEvaluator(cm)
    entries: dict[tuple[Word, Word], Fraction] = {}
    for u in words:
        pu_star = polys[u].involution()
        for v in words:
            value = evaluator.eval_poly(pu_star * polys[v])
            if value:
                entries[(u, v)] = value
    return GramMatrix(words=words, entries=entries)
