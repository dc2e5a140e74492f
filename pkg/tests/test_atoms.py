import math
from fractions import Fraction

import numpy as np
import pytest

from frame_lab import (
    Atom,
    ContractError,
    FunctionSum,
    exponential,
    ifs_monte_carlo_integral,
    inner_product,
    mu4_hat,
    norm,
    normalize,
    refine,
)
from frame_lab.atoms import ONE, evaluate, fs_add, fs_scale, fs_sub


def random_sum(rng, max_level=2, n_atoms=3, coeff_scale=0.5):
    atoms = []
    for _ in range(n_atoms):
        level = int(rng.integers(0, max_level + 1))
        xword = tuple(2 * int(b) for b in rng.integers(0, 2, size=level))
        yword = tuple(int(b) for b in rng.integers(0, 2, size=level))
        freq = Fraction(int(rng.integers(-6, 7)))
        coeff = coeff_scale * complex(rng.standard_normal(), rng.standard_normal())
        atoms.append(Atom(coeff, freq, xword, yword))
    return normalize(FunctionSum(tuple(atoms)))


def test_exponential_at_zero_is_constant_one():
    assert exponential(0) == ONE
    assert len(ONE) == 1
    assert ONE.atoms[0].level == 0


def test_exponential_norm_is_one():
    for t in (0, 5, -3, 1.5):
        assert abs(norm(exponential(t)) - 1.0) < 1e-12


def test_inner_product_constants():
    assert inner_product(ONE, ONE) == 1


def test_inner_product_of_exponentials_is_transform(cfg):
    assert inner_product(exponential(1), exponential(0), cfg) == mu4_hat(1, cfg)
    got = inner_product(exponential(5), exponential(2), cfg)
    assert abs(got - mu4_hat(3, cfg)) < 1e-15


def test_level_one_cylinder_mass():
    corner = FunctionSum((Atom(1.0, 0, (0,), (0,)),))
    assert abs(inner_product(corner, ONE) - 0.25) < 1e-15


def test_atom_word_validation():
    with pytest.raises(ValueError):
        Atom(1.0, 0, (1,), (0,))
    with pytest.raises(ValueError):
        Atom(1.0, 0, (0,), (2,))
    with pytest.raises(ValueError):
        Atom(1.0, 0, (0, 2), (0,))


def test_refine_constant():
    r = refine(ONE, 1)
    assert len(r) == 4
    assert all(a.coeff == 1 for a in r.atoms)
    assert all(a.level == 1 for a in r.atoms)


def test_refine_preserves_norm_and_composes():
    rng = np.random.default_rng(5)
    for _ in range(10):
        F = random_sum(rng)
        K = F.level
        assert abs(norm(refine(F, K + 2)) - norm(F)) < 1e-12
        twice = refine(refine(F, K + 1), K + 2)
        once = refine(F, K + 2)
        assert normalize(twice).atoms == normalize(once).atoms


def test_refine_contract_error():
    deep = FunctionSum((Atom(1.0, 0, (0, 2), (1, 0)),))
    with pytest.raises(ContractError):
        refine(deep, 1)


def test_normalize_merges_and_drops():
    a = Atom(0.5, 1, (0,), (1,))
    b = Atom(0.5, 1, (0,), (1,))
    z = Atom(0.0, 2, (), ())
    F = normalize(FunctionSum((a, b, z)))
    assert len(F) == 1
    assert F.atoms[0].coeff == 1.0


def test_normalize_keeps_inner_products(cfg):
    rng = np.random.default_rng(6)
    for _ in range(10):
        F = random_sum(rng)
        G = random_sum(rng)
        doubled = FunctionSum(tuple(fs_scale(F, 0.5).atoms) + tuple(fs_scale(F, 0.5).atoms))
        assert abs(inner_product(doubled, G, cfg) - inner_product(F, G, cfg)) < 1e-12


def test_sesquilinearity(cfg):
    rng = np.random.default_rng(7)
    for _ in range(10):
        F, G, H = (random_sum(rng) for _ in range(3))
        a = complex(rng.standard_normal(), rng.standard_normal())
        lhs = inner_product(fs_add(fs_scale(F, a), G), H, cfg)
        rhs = a * inner_product(F, H, cfg) + inner_product(G, H, cfg)
        assert abs(lhs - rhs) < 1e-12


def test_hermitian_symmetry(cfg):
    rng = np.random.default_rng(8)
    for _ in range(10):
        F, G = random_sum(rng), random_sum(rng)
        assert abs(inner_product(F, G, cfg) - inner_product(G, F, cfg).conjugate()) < 1e-12


def test_norm_positive_definite(cfg):
    rng = np.random.default_rng(9)
    for _ in range(10):
        F = random_sum(rng)
        sq = inner_product(F, F, cfg)
        assert sq.real >= 0
        assert abs(sq.imag) < 1e-13
    assert norm(FunctionSum(())) == 0


def test_atom_equals_sum_of_children(cfg):
    rng = np.random.default_rng(10)
    parent = FunctionSum((Atom(1.0, 3, (2,), (1,)),))
    children = refine(parent, 3)
    diff = fs_sub(parent, children)
    for _ in range(10):
        T = random_sum(rng)
        assert abs(inner_product(diff, T, cfg)) < 1e-12


def test_inner_product_against_monte_carlo(cfg):
    rng = np.random.default_rng(11)
    samples = 100_000
    for _ in range(4):
        F, G = random_sum(rng), random_sum(rng)
        exact = inner_product(F, G, cfg)
        mc = ifs_monte_carlo_integral(
            lambda x, y: evaluate(F, x, y) * np.conj(evaluate(G, x, y)),
            depth=24,
            samples=samples,
            seed=int(rng.integers(0, 2**31)),
        )
        assert abs(mc - exact) <= 5 / math.sqrt(samples)


def test_mixed_level_inner_product_matches_refined(cfg):
    rng = np.random.default_rng(12)
    for _ in range(10):
        F = random_sum(rng, max_level=1)
        G = random_sum(rng, max_level=2)
        K = max(F.level, G.level)
        direct = inner_product(F, G, cfg)
        flat = inner_product(refine(F, K), refine(G, K), cfg)
        assert abs(direct - flat) < 1e-12
