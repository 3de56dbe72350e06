"""Words, non-commutative polynomials, and truncated non-commutative power series.

Coefficients are exact rationals (``fractions.Fraction``) everywhere; nothing
in this package touches floating point.  Words are tuples of letters from
``{1, ..., d}`` with the empty tuple as the unit monomial.  Words are stored
leftmost-first, and a "postfix" always means a right-suffix: ``(2, 1)`` is a
postfix of ``(1, 2, 1)`` but ``(1, 2)`` is not.

All values are immutable after construction and all operations are pure, so
everything here is safe to share between threads.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Union

Word = tuple[int, ...]
Rational = Union[Fraction, int]

EMPTY_WORD: Word = ()


def parse_rational(text: Union[str, int]) -> Fraction:
    """Parse a "p/q" or integer string ("3/4", "-1/2", "2") into a Fraction."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(value: Rational) -> str:
    """Canonical lowest-terms string, integers rendered without a denominator."""
    return str(Fraction(value))


def check_word(word: Iterable[int], d: int) -> Word:
    w = tuple(word)
    for letter in w:
        if not (isinstance(letter, int) and 1 <= letter <= d):
            raise ValueError(f"letter {letter!r} outside alphabet 1..{d}")
    return w


def word_postfixes(word: Word) -> list[Word]:
    """All right-suffixes of a word, longest first, down to the empty word."""
    return [word[k:] for k in range(len(word) + 1)]


def word_runs(word: Word) -> list[tuple[int, int]]:
    """Maximal constant runs as (letter, length) pairs, leftmost run first."""
    runs: list[list[int]] = []
    for letter in word:
        if runs and runs[-1][0] == letter:
            runs[-1][1] += 1
        else:
            runs.append([letter, 1])
    return [(letter, length) for letter, length in runs]


def leading_run_length(word: Word, letter: int) -> int:
    """Length of the initial run of ``letter`` at the left end of the word."""
    k = 0
    for current in word:
        if current != letter:
            break
        k += 1
    return k


def graded_lex_key(word: Word) -> tuple[int, Word]:
    return (len(word), word)


def words_of_length(d: int, length: int) -> list[Word]:
    return [tuple(w) for w in itertools.product(range(1, d + 1), repeat=length)]


def words_up_to(d: int, max_length: int) -> list[Word]:
    """All words of length <= max_length in graded-lexicographic order."""
    out: list[Word] = []
    for n in range(max_length + 1):
        out.extend(words_of_length(d, n))
    return out


def _clean_terms(terms: Mapping[Word, Rational], d: int) -> dict[Word, Fraction]:
    cleaned: dict[Word, Fraction] = {}
    for word, coeff in terms.items():
        value = Fraction(coeff)
        if value:
            cleaned[check_word(word, d)] = value
    return cleaned


def _format_terms(terms: Mapping[Word, Fraction], var: str) -> str:
    if not terms:
        return "0"
    pieces = []
    for word in sorted(terms, key=graded_lex_key):
        coeff = terms[word]
        mono = "*".join(f"{var}{letter}" for letter in word)
        if not word:
            body = format_rational(abs(coeff))
        elif abs(coeff) == 1:
            body = mono
        else:
            body = f"{format_rational(abs(coeff))}*{mono}"
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(pieces)


class NCPolynomial:
    """Rational-coefficient element of the free algebra on x_1, ..., x_d.

    ``terms`` maps words to nonzero coefficients; the zero polynomial has no
    terms and its :meth:`degree` is ``None`` rather than -1.
    """

    __slots__ = ("d", "terms")

    def __init__(self, d: int, terms: Mapping[Word, Rational] | None = None):
        if d < 1:
            raise ValueError("alphabet size must be at least 1")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "terms", _clean_terms(terms or {}, d))

    def __setattr__(self, name, value):
        raise AttributeError("NCPolynomial is immutable")

    @classmethod
    def zero(cls, d: int) -> "NCPolynomial":
        return cls(d)

    @classmethod
    def one(cls, d: int) -> "NCPolynomial":
        return cls(d, {EMPTY_WORD: 1})

    @classmethod
    def monomial(cls, word: Iterable[int], d: int, coeff: Rational = 1) -> "NCPolynomial":
        return cls(d, {tuple(word): coeff})

    @classmethod
    def variable(cls, letter: int, d: int) -> "NCPolynomial":
        return cls(d, {(letter,): 1})

    def coefficient(self, word: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(word), Fraction(0))

    def degree(self) -> int | None:
        """Maximal word length among terms; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(len(w) for w in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check_compatible(self, other: "NCPolynomial") -> None:
        if self.d != other.d:
            raise ValueError(f"alphabet mismatch: {self.d} vs {other.d}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCPolynomial(self.d, {EMPTY_WORD: other})
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        self._check_compatible(other)
        merged = dict(self.terms)
        for word, coeff in other.terms.items():
            merged[word] = merged.get(word, Fraction(0)) + coeff
        return NCPolynomial(self.d, merged)

    __radd__ = __add__

    def __neg__(self):
        return NCPolynomial(self.d, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCPolynomial(self.d, {EMPTY_WORD: other})
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NCPolynomial(self.d, {w: c * other for w, c in self.terms.items()})
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        self._check_compatible(other)
        product: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                product[word] = product.get(word, Fraction(0)) + c1 * c2
        return NCPolynomial(self.d, product)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def involution(self) -> "NCPolynomial":
        """Reverse every word, keep coefficients; each x_i is self-adjoint."""
        return NCPolynomial(self.d, {w[::-1]: c for w, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCPolynomial(self.d, {EMPTY_WORD: other})
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.d == other.d and self.terms == other.terms

    def __hash__(self):
        return hash((self.d, frozenset(self.terms.items())))

    def to_str(self, var: str = "x") -> str:
        return _format_terms(self.terms, var)

    def __repr__(self):
        return f"NCPolynomial({self.to_str()})"


def poly_involution(p: NCPolynomial) -> NCPolynomial:
    return p.involution()


class NCSeries:
    """Degree-truncated non-commutative formal power series.

    Stores words of length <= ``order``; all arithmetic silently drops higher
    terms, so every result is exact up to the truncation order.
    """

    __slots__ = ("d", "order", "terms")

    def __init__(self, d: int, order: int, terms: Mapping[Word, Rational] | None = None):
        if d < 1:
            raise ValueError("alphabet size must be at least 1")
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "order", order)
        cleaned = _clean_terms(terms or {}, d)
        object.__setattr__(
            self, "terms", {w: c for w, c in cleaned.items() if len(w) <= order}
        )

    def __setattr__(self, name, value):
        raise AttributeError("NCSeries is immutable")

    @classmethod
    def zero(cls, d: int, order: int) -> "NCSeries":
        return cls(d, order)

    @classmethod
    def one(cls, d: int, order: int) -> "NCSeries":
        return cls(d, order, {EMPTY_WORD: 1})

    @classmethod
    def variable(cls, letter: int, d: int, order: int) -> "NCSeries":
        return cls(d, order, {(letter,): 1})

    @classmethod
    def from_polynomial(cls, p: NCPolynomial, order: int) -> "NCSeries":
        return cls(p.d, order, p.terms)

    def coefficient(self, word: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(word), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get(EMPTY_WORD, Fraction(0))

    def truncate(self, order: int) -> "NCSeries":
        return NCSeries(self.d, order, self.terms)

    def _coerce(self, other) -> "NCSeries":
        if isinstance(other, (int, Fraction)):
            return NCSeries(self.d, self.order, {EMPTY_WORD: other})
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if not isinstance(other, NCSeries):
            return NotImplemented
        if self.d != other.d:
            raise ValueError(f"alphabet mismatch: {self.d} vs {other.d}")
        order = min(self.order, other.order)
        merged = dict(self.terms)
        for word, coeff in other.terms.items():
            merged[word] = merged.get(word, Fraction(0)) + coeff
        return NCSeries(self.d, order, merged)

    __radd__ = __add__

    def __neg__(self):
        return NCSeries(self.d, self.order, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if not isinstance(other, NCSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NCSeries(self.d, self.order, {w: c * other for w, c in self.terms.items()})
        if not isinstance(other, NCSeries):
            return NotImplemented
        if self.d != other.d:
            raise ValueError(f"alphabet mismatch: {self.d} vs {other.d}")
        order = min(self.order, other.order)
        # Bucket the right factor by degree so truncation prunes pair products.
        buckets: dict[int, list[tuple[Word, Fraction]]] = {}
        for word, coeff in other.terms.items():
            buckets.setdefault(len(word), []).append((word, coeff))
        product: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            room = order - len(w1)
            if room < 0:
                continue
            for length, entries in buckets.items():
                if length > room:
                    continue
                for w2, c2 in entries:
                    word = w1 + w2
                    product[word] = product.get(word, Fraction(0)) + c1 * c2
        return NCSeries(self.d, order, product)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def sandwich(self, left: int, right: int) -> "NCSeries":
        """z_left * self * z_right; exact two orders beyond self, so order grows by 2."""
        check_word((left, right), self.d)
        shifted = {(left,) + word + (right,): coeff for word, coeff in self.terms.items()}
        return NCSeries(self.d, self.order + 2, shifted)

    def inverse(self) -> "NCSeries":
        """Multiplicative inverse up to the truncation order.

        Requires constant term exactly 1; computed degree by degree from
        t = 1 - r*t where r is the positive-degree part.
        """
        if self.constant_term() != 1:
            raise ValueError("series inverse requires constant term 1")
        r_by_degree: dict[int, list[tuple[Word, Fraction]]] = {}
        for word, coeff in self.terms.items():
            if word:
                r_by_degree.setdefault(len(word), []).append((word, coeff))
        parts: list[dict[Word, Fraction]] = [{EMPTY_WORD: Fraction(1)}]
        for m in range(1, self.order + 1):
            component: dict[Word, Fraction] = {}
            for j, entries in r_by_degree.items():
                if j > m:
                    continue
                lower = parts[m - j]
                for wr, cr in entries:
                    for wt, ct in lower.items():
                        word = wr + wt
                        component[word] = component.get(word, Fraction(0)) - cr * ct
            parts.append({w: c for w, c in component.items() if c})
        merged: dict[Word, Fraction] = {}
        for component in parts:
            merged.update(component)
        return NCSeries(self.d, self.order, merged)

    def __eq__(self, other):
        if not isinstance(other, NCSeries):
            return NotImplemented
        return self.d == other.d and self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.d, self.order, frozenset(self.terms.items())))

    def to_str(self, var: str = "z") -> str:
        return _format_terms(self.terms, var)

    def __repr__(self):
        return f"NCSeries(order={self.order}, {self.to_str()})"


def series_inverse(s: NCSeries) -> NCSeries:
    return s.inverse()
