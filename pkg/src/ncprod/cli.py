"""Command-line interface.

Subcommands: validate | moments | gram | cfrac | mops | compare |
counterexample.  Inputs are JSON files for one-variable states (Jacobi data
or presets) and tree specifications (builtin name or JSON file); outputs are
JSON, CSV, or pretty text, deterministic for identical inputs (words in
graded-lexicographic order, rationals in lowest terms).

Exit codes: 0 on success, 1 on mathematical failure (invalid tree, mismatch
in a comparison), 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import cfrac, jacobi, omega, oracle, prodstate
from .ncpoly import NCPolynomial, NCSeries, Word, format_rational, parse_rational, words_up_to


class CliInputError(Exception):
    """Bad file, bad flag value, or an inconsistent combination of inputs."""


def _word_key(word: Word) -> str:
    return ".".join(str(letter) for letter in word)


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise CliInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliInputError(f"{path} is not valid JSON: {exc}") from exc


def _load_jacobi(path: str | None, what: str) -> jacobi.JacobiData:
    if path is None:
        raise CliInputError(f"missing required jacobi file for {what}")
    try:
        return jacobi.jacobi_from_json(_load_json(path))
    except (ValueError, KeyError, TypeError) as exc:
        raise CliInputError(f"bad jacobi data in {path}: {exc}") from exc


def _load_omega(spec: str | None, depth: int) -> omega.OmegaTree:
    """A builtin name builds a tree of the requested depth; otherwise the
    spec names a JSON file whose own depth must be sufficient."""
    if spec is None:
        raise CliInputError("missing required --omega specification")
    if spec in omega.BUILTIN_OMEGAS or spec in ("anti-monotone", "one_branch"):
        return omega.builder(spec, depth)
    obj = _load_json(spec)
    try:
        tree = omega.omega_from_json(obj)
    except omega.OmegaValidationError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise CliInputError(f"bad tree specification in {spec}: {exc}") from exc
    if tree.depth < depth:
        raise CliInputError(
            f"tree depth {tree.depth} in {spec} is insufficient; need at least {depth}"
        )
    return tree


def _build_map(args, depth: int) -> prodstate.CoefficientMap:
    j1 = _load_jacobi(args.jacobi1, "--jacobi1")
    j2 = _load_jacobi(args.jacobi2, "--jacobi2")
    nu1 = getattr(args, "nu1", None)
    nu2 = getattr(args, "nu2", None)
    if (nu1 is None) != (nu2 is None):
        raise CliInputError("--nu1 and --nu2 must be given together")
    if nu1 is not None:
        return prodstate.cfree_map(
            j1, _load_jacobi(nu1, "--nu1"), j2, _load_jacobi(nu2, "--nu2"), depth
        )
    tree = _load_omega(args.omega, depth)
    return prodstate.product_type_map(tree, j1, j2)


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _emit_rows(rows: list[tuple[Word, Fraction]], fmt: str, header: str = "word,value") -> None:
    if fmt == "json":
        payload = [{"word": list(w), "value": format_rational(v)} for w, v in rows]
        _emit(json.dumps(payload, indent=2))
    elif fmt == "csv":
        lines = [header]
        lines += [f"{_word_key(w)},{format_rational(v)}" for w, v in rows]
        _emit("\n".join(lines))
    else:
        width = max((len(_word_key(w)) for w, _ in rows), default=4)
        lines = [f"{_word_key(w) or '()':<{width + 2}} {format_rational(v)}" for w, v in rows]
        _emit("\n".join(lines))


def _series_to_rows(series: NCSeries) -> list[tuple[Word, Fraction]]:
    return [(w, series.coefficient(w)) for w in words_up_to(series.d, series.order)]


def _poly_json(p: NCPolynomial) -> dict:
    ordered = sorted(p.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
    return {_word_key(w): format_rational(c) for w, c in ordered}


def cmd_validate(args) -> int:
    depth = args.order if args.order is not None else 6
    if args.spec in omega.BUILTIN_OMEGAS or args.spec in ("anti-monotone", "one_branch"):
        tree = omega.builder(args.spec, depth)
        words = tree.members
        depth = tree.depth
    else:
        obj = _load_json(args.spec)
        depth = int(obj.get("depth", depth))
        if "builtin" in obj:
            words = omega.builder(obj["builtin"], depth).members
        else:
            words = {tuple(int(x) for x in w) for w in obj.get("words", [])}
            if obj.get("implicit_runs", False):
                words = set(words) | {(l,) * n for l in (1, 2) for n in range(depth + 2)}
    try:
        tree = omega.validate(words, depth)
    except omega.OmegaValidationError as exc:
        report = {"valid": False, "violation": exc.report()}
        _emit(json.dumps(report, indent=2) if args.format == "json" else
              f"INVALID: {exc}")
        return 1
    assoc_depth = min(depth, 4)
    report = {
        "valid": True,
        "depth": tree.depth,
        "boundary": [list(w) for w in sorted(tree.boundary(), key=lambda w: (len(w), w))],
        "associative": omega.is_associative(tree, assoc_depth),
        "associativity_depth": assoc_depth,
    }
    if args.format == "json":
        _emit(json.dumps(report, indent=2))
    else:
        boundary = ", ".join(str(list(w)) for w in sorted(tree.boundary(), key=lambda w: (len(w), w))) or "(empty)"
        _emit(
            "valid tree\n"
            f"depth: {tree.depth}\n"
            f"boundary: {boundary}\n"
            f"associative (to depth {assoc_depth}): {report['associative']}"
        )
    return 0


def cmd_moments(args) -> int:
    cm = _build_map(args, max(args.order, 1))
    rows = prodstate.moment_table(cm, args.order)
    _emit_rows(rows, args.format)
    return 0


def cmd_gram(args) -> int:
    depth = args.order
    cm = _build_map(args, max(2 * depth, 1))
    gram = prodstate.gram_matrix(cm, depth)
    triples = gram.to_triples()
    if args.format == "json":
        payload = [
            {"u": list(u), "v": list(v), "value": format_rational(value)}
            for u, v, value in triples
        ]
        _emit(json.dumps(payload, indent=2))
    elif args.format == "csv":
        lines = ["u,v,value"]
        lines += [f"{_word_key(u)},{_word_key(v)},{format_rational(value)}" for u, v, value in triples]
        _emit("\n".join(lines))
    else:
        lines = [f"<P_{_word_key(u) or '()'}, P_{_word_key(v) or '()'}> = {format_rational(value)}"
                 for u, v, value in triples]
        lines.append(f"diagonal: {gram.is_diagonal()}")
        _emit("\n".join(lines))
    return 0


def cmd_cfrac(args) -> int:
    if args.engine == "classical":
        data = _load_jacobi(args.jacobi1, "--jacobi1")
        series = cfrac.classical_cf(data, args.order)
        _emit_rows(_series_to_rows(series), args.format)
        return 0
    cm = _build_map(args, max(args.order, 1))
    if args.engine == "matricial":
        levels = min((args.order + 1) // 2 + 1, 5)
        series = cfrac.matricial_cf(cfrac.matricial_from_map(cm, levels), args.order)
    else:
        series = cfrac.scalar_branched_cf(cm, args.order)
    if args.format == "pretty":
        _emit(cfrac.render_branched_cf(cm, min(args.order, 4)))
        _emit("")
    _emit_rows(_series_to_rows(series), args.format)
    return 0


def cmd_mops(args) -> int:
    depth = args.order if args.order is not None else 3
    if args.state == "tensor":
        j1 = _load_jacobi(args.jacobi1, "--jacobi1")
        j2 = _load_jacobi(args.jacobi2, "--jacobi2")
        phi = oracle.tensor_state(j1, j2)
    elif args.state == "q-gaussian":
        phi = oracle.q_gaussian_state(parse_rational(args.q))
    else:
        cm = _build_map(args, max(2 * depth, 1))
        evaluator = prodstate.StateEvaluator(cm)
        phi = evaluator.word_moment
    result = oracle.gram_schmidt_mops(phi, depth)
    report = {
        "state": args.state,
        "depth": depth,
        "mops": result.is_mops,
    }
    if result.witness:
        u, v = result.witness
        report["witness"] = [list(u), list(v)]
        report["witness_value"] = format_rational(result.witness_value)
    if args.format == "json":
        report["polynomials"] = {
            _word_key(w) or "()": _poly_json(p) for w, p in sorted(result.polynomials.items(), key=lambda kv: (len(kv[0]), kv[0]))
        }
        _emit(json.dumps(report, indent=2))
    else:
        lines = [f"MOPS verdict: {'yes' if result.is_mops else 'no'}"]
        if result.witness:
            u, v = result.witness
            lines.append(
                f"witness: <Q_{_word_key(u)}, Q_{_word_key(v)}> = {format_rational(result.witness_value)}"
            )
        for w, p in sorted(result.polynomials.items(), key=lambda kv: (len(kv[0]), kv[0])):
            lines.append(f"Q_{_word_key(w) or '()'} = {p.to_str()}")
        _emit("\n".join(lines))
    return 0


_ORACLES: dict[str, Callable] = {
    "free": oracle.free_state,
    "boolean": oracle.boolean_state,
    "monotone": oracle.monotone_state,
    "antimonotone": oracle.antimonotone_state,
    "tensor": oracle.tensor_state,
}


def cmd_compare(args) -> int:
    cm = _build_map(args, max(args.order, 1))
    evaluator = prodstate.StateEvaluator(cm)
    if args.against == "cfrac":
        series = cfrac.scalar_branched_cf(cm, args.order)
        reference = series.coefficient
    elif args.against in _ORACLES:
        j1 = _load_jacobi(args.jacobi1, "--jacobi1")
        j2 = _load_jacobi(args.jacobi2, "--jacobi2")
        reference = _ORACLES[args.against](j1, j2)
    else:
        raise CliInputError(f"unknown comparison target {args.against!r}")
    mismatches = []
    for w in words_up_to(2, args.order):
        left = evaluator.word_moment(w)
        right = reference(w)
        if left != right:
            mismatches.append((w, left, right))
    if not mismatches:
        _emit(
            json.dumps({"equal": True, "order": args.order}, indent=2)
            if args.format == "json"
            else f"equal through order {args.order}"
        )
        return 0
    first = mismatches[0]
    if args.format == "json":
        payload = {
            "equal": False,
            "first_mismatch": {
                "word": list(first[0]),
                "state": format_rational(first[1]),
                "reference": format_rational(first[2]),
            },
            "mismatch_count": len(mismatches),
        }
        _emit(json.dumps(payload, indent=2))
    else:
        _emit(
            f"MISMATCH at word {list(first[0])}: state {format_rational(first[1])} "
            f"vs {args.against} {format_rational(first[2])} "
            f"({len(mismatches)} differing words through order {args.order})"
        )
    return 1


def cmd_counterexample(args) -> int:
    q = parse_rational(args.q)
    q_phi = oracle.q_gaussian_state(q)
    q_result = oracle.gram_schmidt_mops(q_phi, 3)
    inner = oracle.functional_inner(
        q_phi, q_result.polynomials[(1, 2)], q_result.polynomials[(2, 1)]
    )
    semicircle = jacobi.preset("semicircle")
    tensor_result = oracle.gram_schmidt_mops(oracle.tensor_state(semicircle, semicircle), 2)
    report = {
        "q": format_rational(q),
        "inner_12_21": format_rational(inner),
        "q_121": _poly_json(q_result.polynomials[(1, 2, 1)]),
        "q_mops": q_result.is_mops,
        "tensor_mops": tensor_result.is_mops,
    }
    if q_result.witness:
        report["q_witness"] = [list(w) for w in q_result.witness]
    if tensor_result.witness:
        report["tensor_witness"] = [list(w) for w in tensor_result.witness]
    if args.format == "json":
        _emit(json.dumps(report, indent=2))
    else:
        lines = [
            f"q = {format_rational(q)}",
            f"<Q_1.2, Q_2.1> = {format_rational(inner)}",
            f"Q_1.2.1 = {q_result.polynomials[(1, 2, 1)].to_str()}",
            f"q-state MOPS: {'yes' if q_result.is_mops else 'no'}",
            f"tensor (semicircle marginals) MOPS: {'yes' if tensor_result.is_mops else 'no'}",
        ]
        if tensor_result.witness:
            u, v = tensor_result.witness
            lines.append(f"tensor witness: ({_word_key(u)}) vs ({_word_key(v)})")
        _emit("\n".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncprod",
        description=(
            "Product-type states on non-commutative polynomials: tree validation, "
            "moments, Gram matrices, continued fractions, and orthogonality checks."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, order_default=6, order_required=False):
        p.add_argument("--jacobi1", help="JSON file for the first marginal state")
        p.add_argument("--jacobi2", help="JSON file for the second marginal state")
        p.add_argument("--omega", help="builtin tree name or JSON file")
        p.add_argument("--nu1", help="JSON file for the first secondary state (two-pair mode)")
        p.add_argument("--nu2", help="JSON file for the second secondary state (two-pair mode)")
        p.add_argument("--order", type=int, default=order_default, help="order / depth bound")
        p.add_argument(
            "--format", choices=("json", "csv", "pretty"), default="json", help="output format"
        )

    p_validate = sub.add_parser("validate", help="check a tree specification")
    p_validate.add_argument("spec", help="builtin tree name or JSON file")
    p_validate.add_argument("--order", type=int, default=None, help="depth for builtins")
    p_validate.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    p_validate.set_defaults(func=cmd_validate)

    p_moments = sub.add_parser("moments", help="table of all word moments up to an order")
    add_common(p_moments)
    p_moments.set_defaults(func=cmd_moments)

    p_gram = sub.add_parser("gram", help="Gram matrix of the basis polynomials")
    add_common(p_gram, order_default=3)
    p_gram.set_defaults(func=cmd_gram)

    p_cfrac = sub.add_parser("cfrac", help="continued-fraction moment series")
    add_common(p_cfrac)
    p_cfrac.add_argument(
        "--engine", choices=("scalar", "matricial", "classical"), default="scalar"
    )
    p_cfrac.set_defaults(func=cmd_cfrac)

    p_mops = sub.add_parser("mops", help="orthogonalize monomials and test the family")
    add_common(p_mops, order_default=None)
    p_mops.add_argument(
        "--state", choices=("omega", "tensor", "q-gaussian"), default="omega"
    )
    p_mops.add_argument("--q", default="1/2", help="deformation parameter for q-gaussian")
    p_mops.set_defaults(func=cmd_mops)

    p_compare = sub.add_parser("compare", help="diff the state against an oracle or engine")
    add_common(p_compare)
    p_compare.add_argument(
        "--against",
        required=True,
        choices=("free", "boolean", "monotone", "antimonotone", "tensor", "cfrac"),
    )
    p_compare.set_defaults(func=cmd_compare)

    p_counter = sub.add_parser(
        "counterexample", help="report the states whose monomial families fail orthogonality"
    )
    p_counter.add_argument("--q", default="1/2", help="deformation parameter")
    p_counter.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
    p_counter.set_defaults(func=cmd_counterexample)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliInputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except omega.OmegaValidationError as exc:
        print(f"invalid tree: {exc}", file=sys.stderr)
        return 1
    except prodstate.DepthExhaustedError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
