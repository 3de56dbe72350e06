"""Direct-definition reference states, used to cross-check the main machinery.

Every oracle here evaluates joint moments straight from a defining
factorization or combinatorial formula, never through coefficient maps or
continued fractions, so agreement between the two routes is meaningful.

The block-based states (free, two-pair) work on lists of (letter, polynomial)
blocks and recursively center blocks: a block polynomial p splits into
(p - mean) plus its mean, the mean term deletes the block and merges its
neighbors, and the recursion bottoms out on fully centered alternating
products.  Each step either centers one more block or shortens the list, so
the recursion terminates.

``*_state`` factories return memoizing callables from words to rationals;
the plain ``*_moments`` functions are one-shot conveniences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .jacobi import JacobiData, moment
from .ncpoly import NCPolynomial, Word, graded_lex_key, word_runs, words_up_to

MomentFunctional = Callable[[Word], Fraction]

# one-variable polynomials inside block lists are coefficient tuples,
# lowest degree first
Coeffs = tuple[Fraction, ...]
Block = tuple[int, Coeffs]


def _monomial_coeffs(power: int) -> Coeffs:
    return (Fraction(0),) * power + (Fraction(1),)


def _coeff_mul(p: Coeffs, q: Coeffs) -> Coeffs:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] += a * b
    return tuple(out)


def _coeff_mean(data: JacobiData, p: Coeffs) -> Fraction:
    return sum((c * moment(data, k) for k, c in enumerate(p) if c), Fraction(0))


def _blocks_of_word(word: Word) -> tuple[Block, ...]:
    return tuple((letter, _monomial_coeffs(length)) for letter, length in word_runs(word))


def _delete_block(blocks: tuple[Block, ...], index: int) -> tuple[Block, ...]:
    """Remove one block, multiplying neighbors together if letters now match."""
    before = list(blocks[:index])
    after = list(blocks[index + 1 :])
    if before and after and before[-1][0] == after[0][0]:
        letter = before[-1][0]
        merged = (letter, _coeff_mul(before[-1][1], after[0][1]))
        return tuple(before[:-1] + [merged] + after[1:])
    return tuple(before + after)


def _center(block: Block, mean: Fraction) -> Block:
    letter, coeffs = block
    adjusted = (coeffs[0] - mean,) + coeffs[1:]
    return (letter, adjusted)


def free_state(j1: JacobiData, j2: JacobiData) -> MomentFunctional:
    """Joint state under which centered alternating products vanish."""
    marginals = {1: j1, 2: j2}
    cache: dict[tuple[Block, ...], Fraction] = {}

    def eval_blocks(blocks: tuple[Block, ...]) -> Fraction:
        if not blocks:
            return Fraction(1)
        if len(blocks) == 1:
            letter, coeffs = blocks[0]
            return _coeff_mean(marginals[letter], coeffs)
        cached = cache.get(blocks)
        if cached is not None:
            return cached
        result = None
        for index, (letter, coeffs) in enumerate(blocks):
            mean = _coeff_mean(marginals[letter], coeffs)
            if mean:
                centered = blocks[:index] + (_center(blocks[index], mean),) + blocks[index + 1 :]
                result = eval_blocks(centered) + mean * eval_blocks(_delete_block(blocks, index))
                break
        if result is None:
            result = Fraction(0)  # alternating product of centered blocks
        cache[blocks] = result
        return result

    def phi(word: Word) -> Fraction:
        return eval_blocks(_blocks_of_word(tuple(word)))

    return phi


def free_moments(j1: JacobiData, j2: JacobiData, word: Word) -> Fraction:
    return free_state(j1, j2)(word)


def boolean_state(j1: JacobiData, j2: JacobiData) -> MomentFunctional:
    """Each maximal block contributes its own marginal moment."""
    marginals = {1: j1, 2: j2}

    def phi(word: Word) -> Fraction:
        total = Fraction(1)
        for letter, length in word_runs(tuple(word)):
            total *= moment(marginals[letter], length)
        return total

    return phi


def boolean_moments(j1: JacobiData, j2: JacobiData, word: Word) -> Fraction:
    return boolean_state(j1, j2)(word)


def monotone_state(j1: JacobiData, j2: JacobiData) -> MomentFunctional:
    """All letter-1 blocks merge into one marginal moment; letter-2 blocks factor."""

    def phi(word: Word) -> Fraction:
        word = tuple(word)
        ones = sum(1 for letter in word if letter == 1)
        total = moment(j1, ones)
        for letter, length in word_runs(word):
            if letter == 2:
                total *= moment(j2, length)
        return total

    return phi


def monotone_moments(j1: JacobiData, j2: JacobiData, word: Word) -> Fraction:
    return monotone_state(j1, j2)(word)


def antimonotone_state(j1: JacobiData, j2: JacobiData) -> MomentFunctional:
    """Monotone with the letters and marginals interchanged."""
    mirrored = monotone_state(j2, j1)

    def phi(word: Word) -> Fraction:
        return mirrored(tuple(3 - letter for letter in word))

    return phi


def antimonotone_moments(j1: JacobiData, j2: JacobiData, word: Word) -> Fraction:
    return antimonotone_state(j1, j2)(word)


def tensor_state(j1: JacobiData, j2: JacobiData) -> MomentFunctional:
    """Product of the two total-power marginal moments."""

    def phi(word: Word) -> Fraction:
        word = tuple(word)
        ones = sum(1 for letter in word if letter == 1)
        return moment(j1, ones) * moment(j2, len(word) - ones)

    return phi


def tensor_moments(j1: JacobiData, j2: JacobiData, word: Word) -> Fraction:
    return tensor_state(j1, j2)(word)


def _pairings(positions: tuple[int, ...], letters: Word):
    """All perfect matchings of the positions that pair equal letters."""
    if not positions:
        yield ()
        return
    first = positions[0]
    rest = positions[1:]
    for idx, partner in enumerate(rest):
        if letters[partner] != letters[first]:
            continue
        remaining = rest[:idx] + rest[idx + 1 :]
        for sub in _pairings(remaining, letters):
            yield ((first, partner),) + sub


def _crossings(pairing: Sequence[tuple[int, int]]) -> int:
    count = 0
    for a, b in pairing:
        for c, e in pairing:
            if a < c < b < e:
                count += 1
    return count


def q_gaussian_state(q: Fraction) -> MomentFunctional:
    """Letter-matching pair partitions weighted by q to the number of crossings."""
    q = Fraction(q)
    cache: dict[Word, Fraction] = {}

    def phi(word: Word) -> Fraction:
        word = tuple(word)
        if len(word) % 2:
            return Fraction(0)
        cached = cache.get(word)
        if cached is not None:
            return cached
        total = Fraction(0)
        for pairing in _pairings(tuple(range(len(word))), word):
            total += q ** _crossings(pairing)
        cache[word] = total
        return total

    return phi


def q_gaussian_moments(q: Fraction, word: Word) -> Fraction:
    return q_gaussian_state(q)(word)


def cfree_state(
    mu1: JacobiData, nu1: JacobiData, mu2: JacobiData, nu2: JacobiData
) -> MomentFunctional:
    """Two-pair state: interior blocks center against nu, values come from mu.

    A leading letter-1 block and a trailing letter-2 block are exempt from
    centering; once every non-exempt block is nu-centered the moment is the
    product of the mu-means of all blocks.
    """
    mu = {1: mu1, 2: mu2}
    nu = {1: nu1, 2: nu2}
    cache: dict[tuple[Block, ...], Fraction] = {}

    def needs_centering(index: int, letter: int, count: int) -> bool:
        if index == 0 and letter == 1:
            return False
        if index == count - 1 and letter == 2:
            return False
        return True

    def eval_blocks(blocks: tuple[Block, ...]) -> Fraction:
        if not blocks:
            return Fraction(1)
        if len(blocks) == 1:
            letter, coeffs = blocks[0]
            return _coeff_mean(mu[letter], coeffs)
        cached = cache.get(blocks)
        if cached is not None:
            return cached
        result = None
        for index, (letter, coeffs) in enumerate(blocks):
            if not needs_centering(index, letter, len(blocks)):
                continue
            mean = _coeff_mean(nu[letter], coeffs)
            if mean:
                centered = blocks[:index] + (_center(blocks[index], mean),) + blocks[index + 1 :]
                result = eval_blocks(centered) + mean * eval_blocks(_delete_block(blocks, index))
                break
        if result is None:
            # every required block is nu-centered: the moment factorizes
            result = Fraction(1)
            for letter, coeffs in blocks:
                result *= _coeff_mean(mu[letter], coeffs)
        cache[blocks] = result
        return result

    def phi(word: Word) -> Fraction:
        return eval_blocks(_blocks_of_word(tuple(word)))

    return phi


def cfree_moments(
    mu1: JacobiData, nu1: JacobiData, mu2: JacobiData, nu2: JacobiData, word: Word
) -> Fraction:
    return cfree_state(mu1, nu1, mu2, nu2)(word)


def functional_eval(phi: MomentFunctional, p: NCPolynomial) -> Fraction:
    """Linear extension of a word functional to polynomials."""
    return sum((coeff * phi(w) for w, coeff in p.terms.items()), Fraction(0))


def functional_inner(phi: MomentFunctional, p: NCPolynomial, q: NCPolynomial) -> Fraction:
    return functional_eval(phi, p.involution() * q)


@dataclass
class MopsResult:
    """Orthogonalized monomial family plus the monic-orthogonality verdict."""

    polynomials: dict[Word, NCPolynomial]
    norms: dict[Word, Fraction]
    is_mops: bool
    witness: tuple[Word, Word] | None = None
    witness_value: Fraction | None = None


def gram_schmidt_mops(
    phi: MomentFunctional,
    depth: int,
    d: int = 2,
    within_degree_order: Callable[[list[Word]], list[Word]] | None = None,
) -> MopsResult:
    """Orthogonalize the monomials degree by degree and test orthogonality.

    Q_u is x_u minus its projections onto the nonzero-norm orthogonalized
    polynomials of strictly lower degree; zero-norm directions are skipped
    rather than inverted.  The functional must be defined on words up to
    length 2 * depth.  The verdict is True exactly when all distinct pairs up
    to the depth are orthogonal; the first failing pair is reported.

    Within-degree ordering never affects the result because projections only
    target lower degrees; ``within_degree_order`` exists to exercise that.
    """
    by_degree: list[list[Word]] = [
        [w for w in words_up_to(d, depth) if len(w) == n] for n in range(depth + 1)
    ]
    if within_degree_order is not None:
        by_degree = [within_degree_order(list(level)) for level in by_degree]

    polys: dict[Word, NCPolynomial] = {}
    norms: dict[Word, Fraction] = {}
    for n, level in enumerate(by_degree):
        lower = [v for m in range(n) for v in by_degree[m] if norms[v]]
        for u in level:
            q = NCPolynomial.monomial(u, d)
            for v in lower:
                overlap = functional_inner(phi, polys[v], q)
                if overlap:
                    q = q - (overlap / norms[v]) * polys[v]
            polys[u] = q
            norms[u] = functional_inner(phi, q, q)

    ordered = [u for level in by_degree for u in level]
    for u in ordered:
        for v in ordered:
            if u == v:
                continue
            value = functional_inner(phi, polys[u], polys[v])
            if value:
                pair = (u, v) if graded_lex_key(u) <= graded_lex_key(v) else (v, u)
                return MopsResult(polys, norms, False, pair, value)
    return MopsResult(polys, norms, True)


def factor_into_one_variable_triple(
    p: NCPolynomial,
) -> tuple[Fraction, Fraction, Fraction] | None:
    """Constants (a, b, c) with p = (x1 + a)(x2 + b)(x1 + c), if they exist.

    The only monic one-variable factor shape whose leading word is (1, 2, 1);
    the candidate constants are read off the degree-two coefficients and then
    verified exactly.
    """
    a = p.coefficient((2, 1))
    b = p.coefficient((1, 1))
    c = p.coefficient((1, 2))
    x1 = NCPolynomial.variable(1, p.d)
    x2 = NCPolynomial.variable(2, p.d)
    candidate = (x1 + a) * (x2 + b) * (x1 + c)
    return (a, b, c) if candidate == p else None
