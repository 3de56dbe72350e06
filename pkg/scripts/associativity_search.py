#!/usr/bin/env python3
"""Exhaustive associativity search over small valid trees.

Enumerates every valid tree stored to words of length three (postfix-closed,
pure runs present, sibling-closed), tests the iterated-product construction
against its mirror at depth three, and reports the failures.
"""

import itertools

from ncprod.ncpoly import graded_lex_key
from ncprod.omega import OmegaTree, _omega_squared_mirror, is_associative, omega_squared


def enumerate_valid_trees(max_len=3):
    def child_options(u):
        same = (u[0],) + u
        cross = (2 if u[0] == 1 else 1,) + u
        if len(set(u)) == 1:
            return [(same,), (same, cross)]
        return [(), (same,), (same, cross)]

    results = []

    def grow(members, frontier, length):
        if length > max_len:
            results.append(frozenset(members))
            return
        for combo in itertools.product(*(child_options(u) for u in frontier)):
            new_frontier = sorted(set(itertools.chain.from_iterable(combo)), key=graded_lex_key)
            grow(members | set(new_frontier), new_frontier, length + 1)

    grow({(), (1,), (2,)}, [(1,), (2,)], 2)
    return results


def main() -> None:
    trees = enumerate_valid_trees(3)
    failures = []
    for members in sorted(trees, key=lambda s: (len(s), sorted(s, key=graded_lex_key))):
        tree = OmegaTree(2, members)
        if not is_associative(tree, 3):
            direct = omega_squared(tree, 3)
            mirror = _omega_squared_mirror(tree, 3)
            witness = sorted(direct ^ mirror, key=graded_lex_key)[0]
            failures.append((members, witness))
    print(f"valid trees stored to length 3: {len(trees)}")
    print(f"associative: {len(trees) - len(failures)}, not associative: {len(failures)}")
    if failures:
        members, witness = failures[0]
        print("\nsmallest non-associative tree:")
        for w in sorted(members, key=graded_lex_key):
            print(f"  {list(w)}")
        print(f"witness word (in one construction only): {list(witness)}")


if __name__ == "__main__":
    main()
