import numpy as np
import pytest

from qsplit.blocks import SplitFactors, decompose_at
from qsplit.factorize import assemble, is_genuinely_entangled, random_product
from qsplit.oracle import coefficient_matrix, cut_separable, max_minor, minor_test, oracle_verdict
from qsplit.permutations import apply, enumerate_bipartitions, make_bipartition
from qsplit.states import basis_state, ghz, make_state, random_state, tensor, w

BELL = make_state(2, np.array([1, 0, 0, 1]) / np.sqrt(2))


def test_bell_matrix_has_nonzero_minor():
    m = np.array([[1, 0], [0, 1]]) / np.sqrt(2)
    assert max_minor(m) == pytest.approx(0.5)
    assert not minor_test(m)


def test_rank_one_outer_product(rng):
    u = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    v = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    assert minor_test(np.outer(u, v))


def test_degenerate_shape():
    with pytest.raises(ValueError):
        minor_test(np.zeros((0, 3)))


def test_bell_x_bell_cuts():
    s = tensor(BELL, BELL)
    assert minor_test(coefficient_matrix(s, 2))
    assert not minor_test(coefficient_matrix(s, 1))


def test_coefficient_matrix_layout(rng):
    s = random_state(5, rng)
    m = coefficient_matrix(s, 2)
    for j in range(4):
        for k in range(8):
            assert m[j, k] == s.amplitudes[j * 8 + k]


def test_oracle_ghz3():
    assert oracle_verdict(ghz(3))


def test_oracle_zero_ket_times_ghz():
    assert not oracle_verdict(tensor(basis_state("0"), ghz(3)))


def test_oracle_generic_n5(rng):
    for _ in range(200):
        s = random_state(5, rng)
        assert oracle_verdict(s)
        assert is_genuinely_entangled(s)[0]


def test_cut_level_agreement(rng):
    for n in range(2, 7):
        for trial in range(60):
            if trial % 3 == 0:
                s = random_state(n, rng)
            else:
                labels = list(rng.permutation(n) + 1)
                k = int(rng.integers(1, n))
                s = random_product([labels[:k], labels[k:]], rng)
            for bp in enumerate_bipartitions(n):
                moved = apply(bp.mover, s)
                assert isinstance(decompose_at(moved, bp.width), SplitFactors) == cut_separable(s, bp)
