#!/usr/bin/env python3
"""Sweep the deformation parameter and report which states fail to have
monic orthogonal polynomials.

For each q: the inner product of the two degree-two orthogonalized mixed
monomials (zero iff the family is orthogonal there), the orthogonalized
x1*x2*x1, and whether it factors into one-variable monic polynomials.
The tensor state with semicircle marginals is reported alongside.
"""

from fractions import Fraction

from ncprod import (
    functional_inner,
    gram_schmidt_mops,
    preset,
    q_gaussian_state,
    tensor_state,
)
from ncprod.oracle import factor_into_one_variable_triple


def main() -> None:
    print(f"{'q':>6}  {'<Q_12,Q_21>':>12}  {'MOPS':>5}  {'Q_121':<28} factors?")
    print("-" * 72)
    for q in (Fraction(0), Fraction(1, 2), Fraction(-1, 3), Fraction(9, 10), Fraction(2, 5)):
        phi = q_gaussian_state(q)
        result = gram_schmidt_mops(phi, 3)
        inner = functional_inner(phi, result.polynomials[(1, 2)], result.polynomials[(2, 1)])
        q121 = result.polynomials[(1, 2, 1)]
        factors = factor_into_one_variable_triple(q121)
        print(
            f"{str(q):>6}  {str(inner):>12}  {'yes' if result.is_mops else 'no':>5}  "
            f"{q121.to_str():<28} {'yes' if factors is not None else 'no'}"
        )
    print()
    semicircle = preset("semicircle")
    tensor = gram_schmidt_mops(tensor_state(semicircle, semicircle), 2)
    print(
        f"tensor (semicircle marginals): MOPS {'yes' if tensor.is_mops else 'no'}"
        + (f", witness {tensor.witness} with value {tensor.witness_value}" if tensor.witness else "")
    )


if __name__ == "__main__":
    main()
