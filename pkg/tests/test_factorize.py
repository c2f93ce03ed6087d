import numpy as np
import pytest

from qsplit.blocks import SplitFactors, decompose_at
from qsplit.factorize import (
    NoSplit, Split, Verdict, assemble, find_split, full_factorize, is_genuinely_entangled,
    random_product, reconstruct,
)
from qsplit.permutations import QubitPermutation, apply, bipartition_count
from qsplit.states import (
    basis_state, dicke, dicke_pair, dw, ghz, ghz_plus_w, make_state, random_state, tensor, w, zeta3,
)

from conftest import as_set_partition, integer_partitions, random_labelled_partition

BELL = make_state(2, np.array([1, 0, 0, 1]) / np.sqrt(2))
PLUS = make_state(1, np.array([1, 1]) / np.sqrt(2))


def case3_state(alpha, beta, a, b, c, d):
    """|phi>_2 |varphi>_13 written out coefficient by coefficient."""
    amps = np.zeros(8, dtype=complex)
    phi = (alpha, beta)
    chi = {(0, 0): a, (0, 1): b, (1, 0): c, (1, 1): d}
    for b1 in (0, 1):
        for b2 in (0, 1):
            for b3 in (0, 1):
                amps[4 * b1 + 2 * b2 + b3] = phi[b2] * chi[(b1, b3)]
    return make_state(3, amps)


def test_assemble_matches_explicit_layout(rng):
    phi, chi = random_state(1, rng), random_state(2, rng)
    s = assemble([((2,), phi), ((1, 3), chi)])
    expected = case3_state(*phi.amplitudes, *chi.amplitudes)
    assert np.allclose(s.amplitudes, expected.amplitudes, atol=1e-15)


def test_find_split_bell_pairs_prefix():
    res = find_split(tensor(BELL, BELL))
    assert isinstance(res, Split)
    assert res.bipartition.left == (1, 2) and res.bipartition.mover.is_identity()


def test_find_split_case3(rng):
    for _ in range(50):
        alpha, beta = random_state(1, rng).amplitudes
        a, b, c, d = random_state(2, rng).amplitudes
        assert abs(b * c - a * d) > 1e-6
        s = case3_state(alpha, beta, a, b, c, d)
        res = find_split(s)
        assert isinstance(res, Split)
        assert res.bipartition.left == (2,) and res.bipartition.right == (1, 3)
        assert res.bipartition.mover.to_list() == [2, 1, 3]


def test_find_split_ghz4_exhausts():
    res = find_split(ghz(4))
    assert isinstance(res, NoSplit) and len(res.witnesses) == 7
    assert [w.bipartition.left for w in res.witnesses] == [(1,), (2,), (3,), (4,), (1, 2), (1, 3), (1, 4)]


def test_full_factorize_single_qubits():
    s = tensor(basis_state("0"), PLUS, basis_state("1"))
    rep = full_factorize(s)
    assert rep.verdict is Verdict.PRODUCT
    assert rep.partition == [(1,), (2,), (3,)]
    assert np.allclose(reconstruct(rep).amplitudes, s.amplitudes, atol=1e-12)


def test_full_factorize_interleaved_bell_pairs():
    s = assemble([((1, 3), BELL), ((2, 4), BELL)])
    rep = full_factorize(s)
    assert rep.verdict is Verdict.PRODUCT
    assert rep.partition == [(1, 3), (2, 4)]
    for f in rep.factors:
        assert f.entangled
        assert np.allclose(f.state.amplitudes, BELL.amplitudes, atol=1e-12)
    assert np.linalg.norm(reconstruct(rep).amplitudes - s.amplitudes) <= 1e-10


def test_full_factorize_w5():
    rep = full_factorize(w(5))
    assert rep.verdict is Verdict.GENUINELY_ENTANGLED
    assert rep.partition == [(1, 2, 3, 4, 5)]
    assert rep.splits_examined == 15 == len(rep.certificate)


def test_single_qubit_is_vacuous_product():
    rep = full_factorize(PLUS)
    assert rep.verdict is Verdict.PRODUCT and rep.partition == [(1,)]
    assert np.allclose(reconstruct(rep).amplitudes, PLUS.amplitudes, atol=1e-15)
    assert rep.splits_examined == 0


def test_reconstruct_rejects_entangled():
    with pytest.raises(ValueError):
        reconstruct(full_factorize(ghz(3)))


@pytest.mark.parametrize("n", range(3, 9))
def test_named_states_entangled(n):
    for s in (ghz(n), w(n), dw(n), ghz_plus_w(n)):
        ent, cert = is_genuinely_entangled(s)
        assert ent and len(cert) == bipartition_count(n)


def test_dicke_pair_entangled():
    for n in range(4, 8):
        for i in range(2, n // 2 + 1):
            assert is_genuinely_entangled(dicke_pair(i, n))[0]
            assert is_genuinely_entangled(dicke(i, n))[0]


def test_all_but_extremes_state_entangled():
    # sum of all kets minus |0...0> and |1...1>
    for n in range(3, 7):
        amps = np.ones(2**n)
        amps[0] = amps[-1] = 0
        assert is_genuinely_entangled(make_state(n, amps))[0]


def test_zeta3_entangled():
    assert is_genuinely_entangled(zeta3())[0]


def refines(found, built):
    return all(any(set(f) <= set(b) for b in built) for f in found)


@pytest.mark.parametrize("n", range(2, 7))
def test_soundness_random_products(rng, n):
    for shape in integer_partitions(n):
        if len(shape) < 2:
            continue
        for _ in range(40):
            parts = random_labelled_partition(shape, rng)
            s = random_product(parts, rng)
            rep = full_factorize(s)
            assert rep.verdict is Verdict.PRODUCT
            assert refines(rep.partition, parts)
            assert as_set_partition(rep.partition) == as_set_partition(parts)
            assert np.linalg.norm(reconstruct(rep).amplitudes - s.amplitudes) <= 1e-9
            assert rep.residual <= 1e-9


@pytest.mark.parametrize("n", range(2, 7))
def test_verdict_permutation_invariant(rng, n):
    for trial in range(30):
        if trial % 2:
            s = random_state(n, rng)
        else:
            k = int(rng.integers(1, n))
            s = tensor(random_state(k, rng), random_state(n - k, rng))
        pi = QubitPermutation(tuple(rng.permutation(n) + 1))
        assert is_genuinely_entangled(s)[0] == is_genuinely_entangled(apply(pi, s))[0]


@pytest.mark.parametrize("n", range(2, 7))
def test_splits_examined_bounds(rng, n):
    D = bipartition_count(n)
    for trial in range(40):
        if trial % 2:
            s = random_state(n, rng)
        else:
            shape = list(integer_partitions(n))[1 + trial % (len(list(integer_partitions(n))) - 1)]
            s = random_product(random_labelled_partition(shape, rng), rng)
        rep = full_factorize(s)
        assert rep.splits_examined <= D
        if rep.verdict is Verdict.GENUINELY_ENTANGLED:
            assert rep.splits_examined == D


def test_finest_factorization_idempotent(rng):
    for _ in range(30):
        parts = random_labelled_partition((3, 2, 1), rng)
        rep = full_factorize(random_product(parts, rng))
        for f in rep.factors:
            if len(f.qubits) > 1:
                sub = full_factorize(f.state)
                assert sub.verdict is Verdict.GENUINELY_ENTANGLED
                assert sub.partition == [tuple(range(1, len(f.qubits) + 1))]


def test_parallel_scan_matches_serial(rng):
    for s in (ghz(7), random_product([[1, 5], [2, 3, 4, 6, 7]], rng), random_state(6, rng)):
        a, b = find_split(s), find_split(s, parallel=True, chunk=5)
        assert type(a) is type(b)
        if isinstance(a, Split):
            assert a.bipartition == b.bipartition and a.splits_examined == b.splits_examined
        else:
            assert [w.bipartition for w in a.witnesses] == [w.bipartition for w in b.witnesses]


def test_factor_states_unit_norm(rng):
    s = make_state(4, 3.7 * random_product([[1, 4], [2], [3]], rng).amplitudes)
    rep = full_factorize(s)
    for f in rep.factors:
        assert abs(f.state.norm() - 1) <= 1e-12
        assert f.state.n == len(f.qubits)
