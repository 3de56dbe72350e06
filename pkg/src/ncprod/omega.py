"""Hereditary subtrees of the binary tree that index product-type states.

A valid tree is a set of words over {1, 2} that is postfix-closed (every
right-suffix of a member is a member), contains every pure run 1^n and 2^n,
and satisfies the sibling-closure condition: whenever u is a member with
first letter i and the cross extension (j, u) with j != i is a member, the
same-letter extension (i, u) must be a member too.

Trees are truncated: a tree of depth N stores all members of length at most
N + 1, one guard level beyond N, so boundary and coefficient queries at depth
N never consult an undefined frontier.  The boundary consists of the members
whose extension by their own first letter is not a member.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .ncpoly import Word, check_word, graded_lex_key, words_up_to

BUILTIN_OMEGAS = ("free", "boolean", "monotone", "antimonotone", "one-branch")

_BUILTIN_ALIASES = {
    "anti-monotone": "antimonotone",
    "one_branch": "one-branch",
    "onebranch": "one-branch",
}


class OmegaValidationError(ValueError):
    """A tree violated one of the membership conditions.

    ``condition`` is one of "hereditary", "pure-runs", "sibling"; ``witness``
    is the word demonstrating the violation.
    """

    def __init__(self, condition: str, witness: Word, detail: str = ""):
        self.condition = condition
        self.witness = witness
        self.detail = detail
        message = f"{condition} violation at {list(witness)}"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)

    def report(self) -> dict:
        data = {"condition": self.condition, "witness": list(self.witness)}
        if self.detail:
            data["detail"] = self.detail
        return data


@dataclass(frozen=True)
class OmegaTree:
    """A validated truncated tree; members hold words of length <= depth + 1."""

    depth: int
    members: frozenset[Word]
    tag: str = "custom"

    def __contains__(self, word) -> bool:
        return tuple(word) in self.members

    def boundary(self) -> frozenset[Word]:
        """Members of length <= depth whose same-letter extension is missing."""
        return frozenset(
            u
            for u in self.members
            if u and len(u) <= self.depth and (u[0],) + u not in self.members
        )

    def in_interior(self, word: Word) -> bool:
        """True when the word is a member and not on the boundary."""
        u = tuple(word)
        if len(u) > self.depth:
            raise ValueError(f"interior query at depth {len(u)} exceeds tree depth {self.depth}")
        if u not in self.members:
            return False
        return not u or (u[0],) + u in self.members

    def restricted(self, depth: int) -> "OmegaTree":
        """The same tree truncated to a smaller depth."""
        if depth > self.depth:
            raise ValueError("cannot deepen a truncated tree")
        limit = depth + 1
        return OmegaTree(
            depth, frozenset(u for u in self.members if len(u) <= limit), self.tag
        )


def validate(words: Iterable[Iterable[int]], depth: int, tag: str = "custom") -> OmegaTree:
    """Check the three conditions and build a tree, or raise the first violation.

    Conditions are checked in order: postfix closure, pure runs, sibling
    closure; the raised :class:`OmegaValidationError` carries the condition
    name and a witness word.
    """
    if depth < 1:
        raise ValueError("tree depth must be at least 1")
    limit = depth + 1
    members = set()
    for word in words:
        w = check_word(word, 2)
        if len(w) > limit:
            raise ValueError(
                f"word {list(w)} longer than stored depth {limit} (= depth + 1)"
            )
        members.add(w)

    for u in sorted(members, key=graded_lex_key):
        for k in range(1, len(u) + 1):
            suffix = u[k:]
            if suffix not in members:
                raise OmegaValidationError(
                    "hereditary", suffix, f"word {list(u)} requires postfix {list(suffix)}"
                )

    for n in range(limit + 1):
        for letter in (1, 2):
            run = (letter,) * n
            if run not in members:
                raise OmegaValidationError(
                    "pure-runs", run, f"missing pure run of letter {letter} and length {n}"
                )

    for u in sorted(members, key=graded_lex_key):
        if not u or len(u) > depth:
            continue
        i = u[0]
        j = 2 if i == 1 else 1
        if (j,) + u in members and (i,) + u not in members:
            raise OmegaValidationError(
                "sibling",
                u,
                f"{list((j,) + u)} present forces {list((i,) + u)}",
            )

    return OmegaTree(depth, frozenset(members), tag)


def builder(name: str, depth: int) -> OmegaTree:
    """Construct one of the built-in trees, truncated to depth + 1."""
    name = _BUILTIN_ALIASES.get(name, name)
    limit = depth + 1
    if name == "free":
        words = set(words_up_to(2, limit))
    elif name == "boolean":
        words = _pure_runs(limit)
    elif name == "monotone":
        words = {
            (2,) * k + (1,) * n for k in range(limit + 1) for n in range(limit + 1 - k)
        }
    elif name == "antimonotone":
        words = {
            (1,) * k + (2,) * n for k in range(limit + 1) for n in range(limit + 1 - k)
        }
    elif name == "one-branch":
        words = _pure_runs(limit) | {(2, 1)}
    else:
        raise ValueError(f"unknown builtin tree {name!r}; known: {', '.join(BUILTIN_OMEGAS)}")
    return OmegaTree(depth, frozenset(words), tag=name)


def _pure_runs(limit: int) -> set[Word]:
    return {(letter,) * n for letter in (1, 2) for n in range(limit + 1)}


def boundary(tree: OmegaTree) -> frozenset[Word]:
    return tree.boundary()


def _split_on_letter(word: Word, separator: int) -> tuple[list[Word], list[int]]:
    """Blocks between maximal runs of ``separator`` and the run lengths.

    Returns n + 1 blocks (possibly empty) and n run lengths for a word that
    contains n maximal separator runs.
    """
    blocks: list[Word] = []
    runs: list[int] = []
    current: list[int] = []
    run = 0
    for letter in word:
        if letter == separator:
            if run == 0:
                blocks.append(tuple(current))
                current = []
            run += 1
        else:
            if run:
                runs.append(run)
                run = 0
            current.append(letter)
    if run:
        runs.append(run)
    blocks.append(tuple(current))
    return blocks, runs


def _interleave(block_letter: int, run_letter: int, block_lengths: list[int], runs: list[int]) -> Word:
    """Pattern word: block_letter^b1 run_letter^r1 block_letter^b2 ..."""
    out: list[int] = []
    for idx, b in enumerate(block_lengths):
        out.extend([block_letter] * b)
        if idx < len(runs):
            out.extend([run_letter] * runs[idx])
    return tuple(out)


def omega_squared(tree: OmegaTree, depth: int) -> frozenset[Word]:
    """Words over {1, 2, 3} passing the two-part iterated-membership test.

    Split the word at maximal runs of letter 3; the word passes when every
    {1, 2}-block is a member and the length pattern, with 1-runs recording
    block lengths and 2-runs recording the letter-3 run lengths, is a member.
    """
    if depth > tree.depth + 1:
        raise ValueError(f"query depth {depth} exceeds stored depth {tree.depth + 1}")
    out = set()
    for u in words_up_to(3, depth):
        blocks, runs = _split_on_letter(u, 3)
        if any(block not in tree.members for block in blocks):
            continue
        pattern = _interleave(1, 2, [len(b) for b in blocks], runs)
        if pattern in tree.members:
            out.add(u)
    return frozenset(out)


def _omega_squared_mirror(tree: OmegaTree, depth: int) -> frozenset[Word]:
    """The mirrored construction: split at 1-runs, blocks over {2, 3}.

    Blocks must lie in the relabeled tree (members with 1 -> 2, 2 -> 3), and
    the pattern with 2-runs for block lengths and 1-runs for the separator
    runs must be a member.
    """
    if depth > tree.depth + 1:
        raise ValueError(f"query depth {depth} exceeds stored depth {tree.depth + 1}")
    out = set()
    for u in words_up_to(3, depth):
        blocks, runs = _split_on_letter(u, 1)
        # relabel each {2,3}-block down (2 -> 1, 3 -> 2) to test membership
        if any(tuple(letter - 1 for letter in block) not in tree.members for block in blocks):
            continue
        pattern = _interleave(2, 1, [len(b) for b in blocks], runs)
        if pattern in tree.members:
            out.add(u)
    return frozenset(out)


def is_associative(tree: OmegaTree, depth: int) -> bool:
    """True when the direct and mirrored constructions agree up to depth."""
    return omega_squared(tree, depth) == _omega_squared_mirror(tree, depth)


def omega_to_json(tree: OmegaTree) -> dict:
    if tree.tag in BUILTIN_OMEGAS:
        return {"builtin": tree.tag, "depth": tree.depth}
    return {
        "words": [list(w) for w in sorted(tree.members, key=graded_lex_key)],
        "depth": tree.depth,
        "implicit_runs": False,
    }


def omega_from_json(obj: Mapping) -> OmegaTree:
    """Read {"builtin": name, "depth": n} or an explicit word list.

    Explicit lists may set "implicit_runs": true to have all pure runs (and
    the empty word) added before validation, so only the extra words need to
    be listed.
    """
    depth = int(obj["depth"])
    if "builtin" in obj:
        return builder(obj["builtin"], depth)
    words = {tuple(int(letter) for letter in word) for word in obj.get("words", [])}
    if obj.get("implicit_runs", False):
        words |= _pure_runs(depth + 1)
    return validate(words, depth)
