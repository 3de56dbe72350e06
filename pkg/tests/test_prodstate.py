"""Coefficient maps, basis polynomials, and transfer-operator evaluation."""

from fractions import Fraction

import pytest

from conftest import GENERIC_J1, GENERIC_J2, random_pair
from ncprod import (
    BUILTIN_OMEGAS,
    JacobiData,
    NCPolynomial,
    StateEvaluator,
    basis_polynomial,
    builder,
    cfree_basis_polynomial,
    cfree_map,
    explicit_map,
    gram_matrix,
    inner_product,
    left_multiply,
    moment,
    preset,
    product_type_map,
    recursion_basis,
    state_eval,
)
from ncprod.prodstate import DepthExhaustedError
from ncprod.ncpoly import words_up_to

F = Fraction

SEMI = preset("semicircle")


def x(i):
    return NCPolynomial.variable(i, 2)


def word_poly(w):
    return NCPolynomial.monomial(w, 2)


# coefficient maps -----------------------------------------------------------

def test_product_map_assignment_on_boolean_tree():
    cm = product_type_map(builder("boolean", 4), GENERIC_J1, GENERIC_J2)
    # pure-run nodes carry the marginal coefficients
    assert cm.b(1, ()) == GENERIC_J1.beta_at(0)
    assert cm.b(1, (1, 1)) == GENERIC_J1.beta_at(2)
    assert cm.c((2, 2)) == GENERIC_J2.gamma_at(2)
    # off-tree raises vanish
    assert cm.b(1, (2,)) == 0
    assert cm.b(2, (1, 1)) == 0
    assert cm.c((1, 2)) == 0


def test_product_map_boundary_kills_lowering():
    cm = product_type_map(builder("one-branch", 4), GENERIC_J1, GENERIC_J2)
    assert cm.b(2, (1,)) == GENERIC_J2.beta_at(0)  # (2, 1) is a member
    assert cm.c((2, 1)) == 0  # boundary node
    assert cm.c((1, 1)) == GENERIC_J1.gamma_at(2)


def test_explicit_map_rejects_negative_c():
    with pytest.raises(ValueError, match="negative"):
        explicit_map(2, 3, {}, {(1,): F(-1)})


def test_depth_guard():
    cm = product_type_map(builder("free", 2), SEMI, SEMI)
    with pytest.raises(DepthExhaustedError):
        cm.b(1, (1, 2, 1))
    with pytest.raises(DepthExhaustedError):
        state_eval(cm, word_poly((1, 2, 1, 2)))


def test_finite_support_guard():
    two_points = preset("bernoulli", p=F(1, 2), a=F(1), b=F(-1))
    with pytest.raises(ValueError, match="supported on 2 points"):
        product_type_map(builder("boolean", 4), two_points, GENERIC_J2)
    # runs of length <= 2 are allowed for a two-point state
    product_type_map(builder("boolean", 1), two_points, GENERIC_J2)


# basis polynomials ----------------------------------------------------------

def test_basis_polynomial_empty_word():
    tree = builder("free", 3)
    assert basis_polynomial(tree, GENERIC_J1, GENERIC_J2, ()) == NCPolynomial.one(2)


def test_basis_polynomial_free_in_tree():
    tree = builder("free", 3)
    expected = (x(1) - GENERIC_J1.beta_at(0)) * (x(2) - GENERIC_J2.beta_at(0))
    assert basis_polynomial(tree, GENERIC_J1, GENERIC_J2, (1, 2)) == expected


def test_basis_polynomial_boolean_longest_postfix():
    tree = builder("boolean", 3)
    expected = x(1) * (x(2) - GENERIC_J2.beta_at(0))
    assert basis_polynomial(tree, GENERIC_J1, GENERIC_J2, (1, 2)) == expected


def test_basis_polynomial_monic_with_leading_word():
    tree = builder("monotone", 4)
    for u in words_up_to(2, 4):
        p = basis_polynomial(tree, GENERIC_J1, GENERIC_J2, u)
        assert p.coefficient(u) == 1
        assert all(len(w) < len(u) or w == u for w in p.terms)


def test_recursion_basis_matches_definition():
    for name in BUILTIN_OMEGAS:
        tree = builder(name, 6)
        cm = product_type_map(tree, GENERIC_J1, GENERIC_J2)
        for u in words_up_to(2, 4):
            assert recursion_basis(cm, u) == basis_polynomial(tree, GENERIC_J1, GENERIC_J2, u)


def test_cfree_basis_polynomial_rightmost_block():
    mu1, nu1, mu2, nu2 = GENERIC_J1, random_pair(3)[0], GENERIC_J2, random_pair(4)[1]
    p = cfree_basis_polynomial(mu1, nu1, mu2, nu2, (1, 2))
    expected = (x(1) - nu1.beta_at(0)) * (x(2) - mu2.beta_at(0))
    assert p == expected
    cm = cfree_map(mu1, nu1, mu2, nu2, 6)
    for u in words_up_to(2, 4):
        assert recursion_basis(cm, u) == cfree_basis_polynomial(mu1, nu1, mu2, nu2, u)


# left multiplication --------------------------------------------------------

def test_left_multiply_raise_only():
    cm = product_type_map(builder("boolean", 4), SEMI, SEMI)
    assert left_multiply(cm, 1, {(): F(1)}) == {(1,): F(1)}


def test_left_multiply_out_of_tree():
    cm = product_type_map(builder("boolean", 4), SEMI, SEMI)
    assert left_multiply(cm, 2, {(1,): F(1)}) == {(2, 1): F(1)}


def test_left_multiply_three_term():
    cm = product_type_map(builder("free", 4), SEMI, SEMI)
    assert left_multiply(cm, 1, {(1,): F(1)}) == {(1, 1): F(1), (): F(1)}


def test_left_multiply_general_node():
    cm = product_type_map(builder("free", 4), GENERIC_J1, GENERIC_J2)
    out = left_multiply(cm, 2, {(2, 1): F(1)})
    assert out == {
        (2, 2, 1): F(1),
        (2, 1): GENERIC_J2.beta_at(1),
        (1,): GENERIC_J2.gamma_at(1),
    }


# state evaluation -----------------------------------------------------------

def test_single_letter_moment_is_mean():
    for name in BUILTIN_OMEGAS:
        cm = product_type_map(builder(name, 3), GENERIC_J1, GENERIC_J2)
        assert state_eval(cm, x(1)) == GENERIC_J1.beta_at(0)
        assert state_eval(cm, x(2)) == GENERIC_J2.beta_at(0)


def test_stochastic_independence():
    for name in BUILTIN_OMEGAS:
        cm = product_type_map(builder(name, 8), GENERIC_J1, GENERIC_J2)
        ev = StateEvaluator(cm)
        for n in range(5):
            for k in range(5):
                word = (1,) * n + (2,) * k
                assert ev.word_moment(word) == moment(GENERIC_J1, n) * moment(GENERIC_J2, k)


def test_free_semicircle_values():
    cm = product_type_map(builder("free", 4), SEMI, SEMI)
    ev = StateEvaluator(cm)
    assert ev.word_moment((1, 2, 1, 2)) == 0
    assert ev.word_moment((1, 2, 2, 1)) == 1


def test_centering():
    for name in BUILTIN_OMEGAS:
        tree = builder(name, 6)
        cm = product_type_map(tree, GENERIC_J1, GENERIC_J2)
        ev = StateEvaluator(cm)
        for u in words_up_to(2, 5):
            if u:
                assert ev.eval_poly(basis_polynomial(tree, GENERIC_J1, GENERIC_J2, u)) == 0


def test_state_is_linear():
    cm = product_type_map(builder("monotone", 4), GENERIC_J1, GENERIC_J2)
    p = word_poly((1, 2)) - 3 * word_poly((2, 1, 1))
    q = F(1, 2) * word_poly((2,))
    assert state_eval(cm, p + q) == state_eval(cm, p) + state_eval(cm, q)
    assert state_eval(cm, NCPolynomial.one(2)) == 1


# inner products and Gram matrices -------------------------------------------

@pytest.mark.parametrize("name", BUILTIN_OMEGAS)
def test_orthogonality_random_data(name):
    j1, j2 = random_pair(17)
    tree = builder(name, 6)
    cm = product_type_map(tree, j1, j2)
    gram = gram_matrix(cm, 3)
    assert gram.is_diagonal()
    diagonal = gram.diagonal()
    for u in gram.words:
        assert diagonal[u] == cm.norm_squared(u)


def test_norm_product_free_semicircle():
    cm = product_type_map(builder("free", 4), SEMI, SEMI)
    tree = builder("free", 4)
    p = basis_polynomial(tree, SEMI, SEMI, (1, 2))
    assert inner_product(cm, p, p) == 1


def test_one_branch_boundary_vector_has_zero_norm():
    tree = builder("one-branch", 4)
    cm = product_type_map(tree, GENERIC_J1, GENERIC_J2)
    p = basis_polynomial(tree, GENERIC_J1, GENERIC_J2, (2, 1))
    assert inner_product(cm, p, p) == 0


def test_gram_boolean_semicircle_depth_two():
    cm = product_type_map(builder("boolean", 4), SEMI, SEMI)
    gram = gram_matrix(cm, 2)
    diag = gram.diagonal()
    assert diag[()] == 1
    for u in ((1,), (2,), (1, 1), (2, 2)):
        assert diag[u] == 1
    for u in ((1, 2), (2, 1)):
        assert diag[u] == 0


def test_gram_free_semicircle_all_ones():
    cm = product_type_map(builder("free", 4), SEMI, SEMI)
    gram = gram_matrix(cm, 2)
    assert all(value == 1 for value in gram.diagonal().values())


def test_gram_depth_guard():
    cm = product_type_map(builder("free", 3), SEMI, SEMI)
    with pytest.raises(DepthExhaustedError):
        gram_matrix(cm, 3)


def test_zero_norm_characterization_depth_three():
    for name in BUILTIN_OMEGAS:
        tree = builder(name, 6)
        cm = product_type_map(tree, GENERIC_J1, GENERIC_J2)
        gram = gram_matrix(cm, 3)
        diag = gram.diagonal()
        for u in gram.words:
            assert (diag[u] == 0) == (not tree.in_interior(u)), (name, u)


# distinctness ---------------------------------------------------------------

DISTINCTNESS_WITNESSES = {
    ("free", "boolean"): (1, 2, 1),
    ("free", "monotone"): (2, 1, 2),
    ("free", "antimonotone"): (1, 2, 1),
    ("free", "one-branch"): (2, 1, 2),
    ("boolean", "monotone"): (1, 2, 1),
    ("boolean", "antimonotone"): (2, 1, 2),
    ("boolean", "one-branch"): (1, 2, 1),
    ("monotone", "antimonotone"): (1, 2, 1),
    ("monotone", "one-branch"): (1, 2, 2, 1),
    ("antimonotone", "one-branch"): (1, 2, 1),
}


def test_distinctness_of_builtin_states():
    evaluators = {
        name: StateEvaluator(product_type_map(builder(name, 6), GENERIC_J1, GENERIC_J2))
        for name in BUILTIN_OMEGAS
    }
    for (a, b), expected_witness in DISTINCTNESS_WITNESSES.items():
        witness = next(
            (
                w
                for w in words_up_to(2, 6)
                if evaluators[a].word_moment(w) != evaluators[b].word_moment(w)
            ),
            None,
        )
        assert witness == expected_witness, (a, b)


# two-pair (c-free) maps -----------------------------------------------------

def test_cfree_map_nu_equals_mu_is_free_map():
    free_cm = product_type_map(builder("free", 5), GENERIC_J1, GENERIC_J2)
    cf = cfree_map(GENERIC_J1, GENERIC_J1, GENERIC_J2, GENERIC_J2, 5)
    assert dict(cf.b_entries) == dict(free_cm.b_entries)
    assert dict(cf.c_entries) == dict(free_cm.c_entries)


def test_cfree_map_nu_delta_zero_is_boolean_map():
    delta0 = preset("point-mass", c=F(0))
    boolean_cm = product_type_map(builder("boolean", 5), GENERIC_J1, GENERIC_J2)
    cf = cfree_map(GENERIC_J1, delta0, GENERIC_J2, delta0, 5)
    assert dict(cf.b_entries) == dict(boolean_cm.b_entries)
    assert dict(cf.c_entries) == dict(boolean_cm.c_entries)


def test_cfree_coefficient_pattern():
    # all-distinct marginal coefficients so the assignment is unambiguous:
    # pure-run nodes carry mu's gammas, every other node nu's
    mu1 = JacobiData(beta=(F(0),), gamma=(F(2), F(3)))
    nu1 = JacobiData(beta=(F(0),), gamma=(F(5), F(7)))
    mu2 = JacobiData(beta=(F(0),), gamma=(F(11), F(13)))
    nu2 = JacobiData(beta=(F(0),), gamma=(F(17), F(19)))
    cm = cfree_map(mu1, nu1, mu2, nu2, 4)
    assert cm.c((1,)) == 2 and cm.c((1, 1)) == 3
    assert cm.c((2,)) == 11 and cm.c((2, 2)) == 13
    assert cm.c((2, 1)) == 17 and cm.c((1, 2)) == 5
    assert cm.c((1, 1, 2)) == 7 and cm.c((2, 2, 1)) == 19


# one-branch factorizations ---------------------------------------------------

def test_one_branch_trailing_two_block_factors():
    # phi[w 1^n 2^k] = phi[w 1^n] mu2[x^k], any context w
    cm = product_type_map(builder("one-branch", 7), GENERIC_J1, GENERIC_J2)
    ev = StateEvaluator(cm)
    for w in words_up_to(2, 3):
        for n in range(1, 3):
            for k in range(1, 3):
                if len(w) + k + n > 6:
                    continue
                lhs = ev.word_moment(w + (1,) * n + (2,) * k)
                rhs = ev.word_moment(w + (1,) * n) * moment(GENERIC_J2, k)
                assert lhs == rhs, (w, n, k)


def test_one_branch_two_one_tail():
    # phi[w 1^n 2 1] = phi[w 1^(n+1)] mu2[x], any context w
    cm = product_type_map(builder("one-branch", 7), GENERIC_J1, GENERIC_J2)
    ev = StateEvaluator(cm)
    for w in words_up_to(2, 3):
        for n in range(1, 3):
            if len(w) + n + 2 > 6:
                continue
            lhs = ev.word_moment(w + (1,) * n + (2, 1))
            rhs = ev.word_moment(w + (1,) * (n + 1)) * moment(GENERIC_J2, 1)
            assert lhs == rhs, (w, n)


def test_one_branch_trailing_one_block_exact_correction():
    # The exact trailing-one-block law of this state is
    #   phi[w 2^k 1^n] = mu1[x^n] phi[w 2^k]
    #                  + a1(n) * mu2[x]^k * (phi[w 1] - mu1[x] phi[w])
    # where a1(n) is the coefficient of P_(1) in the expansion of x_1^n.
    # The bare factorization therefore holds for every context without a
    # letter 1 (the correction collapses there), and at k = n = 1 the
    # correction is what produces the two-one-tail identity above.
    cm = product_type_map(builder("one-branch", 8), GENERIC_J1, GENERIC_J2)
    ev = StateEvaluator(cm)

    def a1(n):
        e = {(): F(1)}
        for _ in range(n):
            e = left_multiply(cm, 1, e)
        return e.get((1,), F(0))

    mean1 = moment(GENERIC_J1, 1)
    mean2 = moment(GENERIC_J2, 1)
    for w in words_up_to(2, 3):
        for k in range(1, 4):
            for n in range(1, 4):
                if len(w) + k + n > 8:
                    continue
                lhs = ev.word_moment(w + (2,) * k + (1,) * n)
                leak = a1(n) * mean2**k * (ev.word_moment(w + (1,)) - mean1 * ev.word_moment(w))
                rhs = moment(GENERIC_J1, n) * ev.word_moment(w + (2,) * k) + leak
                assert lhs == rhs, (w, k, n)
                if 1 not in w:
                    assert leak == 0
    # with generic data the correction is genuinely present for 1-bearing
    # contexts, e.g. w = (1), k = 1, n = 2
    lhs = ev.word_moment((1, 2, 1, 1))
    rhs = ev.word_moment((1, 2)) * moment(GENERIC_J1, 2)
    assert lhs != rhs


def test_one_branch_exception_is_real():
    # with generic data the excluded k = n = 1 case genuinely fails
    cm = product_type_map(builder("one-branch", 5), GENERIC_J1, GENERIC_J2)
    ev = StateEvaluator(cm)
    lhs = ev.word_moment((1, 2, 1))
    rhs = ev.word_moment((1, 2)) * moment(GENERIC_J1, 1)
    assert lhs != rhs


def test_one_branch_boolean_degeneration():
    j2 = JacobiData(beta=(F(0), F(2, 5)), gamma=GENERIC_J2.gamma)  # mean zero
    one_branch = StateEvaluator(product_type_map(builder("one-branch", 6), GENERIC_J1, j2))
    boolean = StateEvaluator(product_type_map(builder("boolean", 6), GENERIC_J1, j2))
    for w in words_up_to(2, 6):
        assert one_branch.word_moment(w) == boolean.word_moment(w)
