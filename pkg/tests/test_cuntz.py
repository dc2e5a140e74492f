from fractions import Fraction

import numpy as np
import pytest

from frame_lab import (
    Atom,
    CapacityError,
    ContractError,
    CuntzRep,
    FunctionSum,
    apply_S,
    apply_S_star,
    apply_word,
    exponential,
    filter_bank_from_A,
    g_map,
    gram_X4,
    hadamard_rho,
    inner_product,
    little_m,
    norm,
    normalize,
    s_word_one,
    verify_cuntz,
)
from frame_lab.atoms import ONE, fs_add, fs_sub, refine
from frame_lab.cuntz import _dense_word_vector, dense_inner, random_function_sum
from frame_lab.words import Word4, c_of_word, enumerate_X4


@pytest.fixture(scope="module")
def rep_i(bank_i):
    return CuntzRep(bank_i)


@pytest.fixture(scope="module")
def rep_pq(bank_pq):
    return CuntzRep(bank_pq)


def test_rep_requires_admissible():
    A = hadamard_rho(1.0).copy()
    A[1, 0] = 3.0
    with pytest.raises(ContractError):
        CuntzRep(filter_bank_from_A(A))


def test_S0_fixes_constant(rep_i):
    s0 = apply_S(rep_i, 0, ONE)
    assert len(s0) == 4
    assert all(a.coeff == 1 for a in s0.atoms)
    assert norm(fs_sub(s0, ONE)) < 1e-15


def test_apply_S_frequency_shift(rep_i):
    for j in range(4):
        out = apply_S(rep_i, j, ONE)
        assert all(a.freq == j for a in out.atoms)


def test_apply_S_is_isometry(rep_i, rep_pq):
    rng = np.random.default_rng(21)
    for rep in (rep_i, rep_pq):
        for _ in range(5):
            F = random_function_sum(rng, 2)
            for j in range(4):
                assert abs(norm(apply_S(rep, j, F)) - norm(F)) < 1e-10


def test_index_range_guard(rep_i):
    with pytest.raises(ContractError):
        apply_S(rep_i, 4, ONE)
    with pytest.raises(ContractError):
        apply_S_star(rep_i, -1, ONE)


def test_cuntz_orthogonality_on_random_vectors(rep_i):
    rng = np.random.default_rng(22)
    for _ in range(5):
        F = random_function_sum(rng, 2)
        nf = norm(F)
        for j in range(4):
            for k in range(4):
                G = apply_S_star(rep_i, j, apply_S(rep_i, k, F))
                D = fs_sub(G, F) if j == k else G
                assert norm(D) <= 1e-10 * nf


def test_adjoint_kills_orthogonal_exponential(rep_i):
    out = apply_S_star(rep_i, 1, exponential(0))
    assert norm(out) < 1e-15


def test_adjoint_fixes_constant(rep_i):
    out = apply_S_star(rep_i, 0, ONE)
    assert norm(fs_sub(out, ONE)) < 1e-15


def test_adjoint_correctness(rep_i, cfg):
    rng = np.random.default_rng(23)
    for _ in range(5):
        F = random_function_sum(rng, 2)
        G = random_function_sum(rng, 3)
        for j in range(4):
            lhs = inner_product(apply_S(rep_i, j, F), G, cfg)
            rhs = inner_product(F, apply_S_star(rep_i, j, G), cfg)
            assert abs(lhs - rhs) < 1e-10


def test_adjoint_on_exponentials_is_symbol(rep_i):
    for t_num in range(-8, 9, 2):
        t = Fraction(t_num, 4)
        for j in range(4):
            lhs = apply_S_star(rep_i, j, exponential(t))
            m = little_m(rep_i.bank, j, t)
            rhs = normalize(FunctionSum((Atom(m, g_map(j, t), (), ()),)))
            assert norm(fs_sub(lhs, rhs)) < 1e-12


def test_empty_word_is_identity(rep_i):
    rng = np.random.default_rng(24)
    F = random_function_sum(rng, 1)
    assert apply_word(rep_i, Word4(()), F) == F


def test_word_zero_on_constant(rep_i):
    out = apply_word(rep_i, Word4((0,)), ONE)
    assert norm(fs_sub(out, ONE)) < 1e-15


def test_closed_form_agrees_with_chain(rep_i):
    for letters in [(0,), (2,), (1, 3), (3, 0), (2, 1, 0), (1, 2, 3), (3, 1, 0, 2)]:
        w = Word4(letters)
        closed = s_word_one(rep_i, w)
        chained = normalize(apply_word(rep_i, w, ONE))
        assert len(closed) == len(chained)
        for a, b in zip(closed.atoms, chained.atoms):
            assert a.key() == b.key()
            assert abs(a.coeff - b.coeff) < 1e-12


def test_s_word_one_zero_word_is_constant(rep_i):
    out = s_word_one(rep_i, Word4((0,)))
    assert all(a.coeff == 1 for a in out.atoms)
    assert norm(fs_sub(out, ONE)) < 1e-15


def test_s_word_one_frequency(rep_i):
    assert all(a.freq == 1 for a in s_word_one(rep_i, Word4((1,))).atoms)
    assert all(a.freq == 9 for a in s_word_one(rep_i, Word4((2, 1))).atoms)


def test_s_word_one_unit_norm(rep_i):
    for w in enumerate_X4(3):
        assert abs(norm(s_word_one(rep_i, w)) - 1.0) < 1e-10


def test_s_word_one_rejects_empty(rep_i):
    with pytest.raises(ContractError):
        s_word_one(rep_i, Word4(()))


def test_verify_cuntz_report(bank_one):
    rep = CuntzRep(bank_one)
    report = verify_cuntz(rep, level=2, trials=5, seed=3, tol=1e-10)
    assert report.passed
    assert report.max_orthogonality_residual <= 1e-10
    assert report.max_identity_residual <= 1e-10


def test_identity_relation_on_constant(rep_i):
    total = fs_add(*[apply_S(rep_i, k, apply_S_star(rep_i, k, ONE)) for k in range(4)])
    assert norm(fs_sub(total, ONE)) <= 1e-12


def test_gram_level_one_identity(rep_i, rep_pq):
    for rep in (rep_i, rep_pq):
        report = gram_X4(rep, 1)
        assert report.size == 4
        assert report.max_offdiag <= 1e-10
        assert report.max_diag_dev <= 1e-10


def test_gram_capacity_guard(rep_i):
    with pytest.raises(CapacityError):
        gram_X4(rep_i, 6)


def test_dense_inner_matches_generic(rep_i, cfg):
    words = [Word4((1,)), Word4((2, 1)), Word4((1, 3, 2)), Word4((3, 0))]
    for wa in words:
        for wb in words:
            va, vb = s_word_one(rep_i, wa), s_word_one(rep_i, wb)
            generic = inner_product(va, vb, cfg)
            dense = dense_inner(
                c_of_word(wa), _dense_word_vector(rep_i.bank, wa), len(wa),
                c_of_word(wb), _dense_word_vector(rep_i.bank, wb), len(wb),
                cfg,
            )
            assert abs(generic - dense) < 1e-12


def test_dense_inner_matches_generic_for_exponentials(rep_i, cfg):
    for t in (0.0, -0.37, 2.5):
        for letters in [(1,), (2, 1), (1, 3, 2)]:
            w = Word4(letters)
            generic = inner_product(exponential(Fraction(t).limit_denominator(4096)), s_word_one(rep_i, w), cfg)
            dense = dense_inner(
                t, np.ones(1, dtype=complex), 0,
                c_of_word(w), _dense_word_vector(rep_i.bank, w), len(w),
                cfg,
            )
            assert abs(generic - dense) < 1e-12


def _canonical(F, level):
    flat = refine(F, level)
    return frozenset(
        (a.freq, a.xword, a.yword, round(a.coeff.real, 9), round(a.coeff.imag, 9))
        for a in flat.atoms
    )


@pytest.mark.parametrize("L", [1, 2, 3])
def test_disjoint_union_property(rep_i, L):
    # the depth-(L+1) family equals the union of the isometry images of the
    # depth-L family, as sets of vectors
    lhs = {_canonical(s_word_one(rep_i, w), L + 1) for w in enumerate_X4(L + 1)}
    rhs = {
        _canonical(apply_S(rep_i, j, s_word_one(rep_i, w)), L + 1)
        for j in range(4)
        for w in enumerate_X4(L)
    }
    assert lhs == rhs
    assert len(rhs) == 4 ** (L + 1)
