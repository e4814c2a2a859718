import time
from math import comb

import numpy as np
import pytest

from qsym import (
    DimensionError,
    GroupWord,
    Permutation,
    UsageError,
    eigen_data,
    eigenprojection,
    eigenprojections,
    eigenvalue_of_bits,
    folded_cube,
    inverse_fourier,
    preserves_eigenspaces,
    verify_spectrum,
)
from qsym.boolean_group import FunctionVector, GROUP_BASIS


# ---------------------------------------------------------------------------
# the eigenvalue formula
# ---------------------------------------------------------------------------


def test_all_zero_word_gives_degree():
    assert eigenvalue_of_bits(GroupWord.identity(4), 5) == 5


def test_length_two_word_n5():
    assert eigenvalue_of_bits(GroupWord(0b0011, 4), 5) == 1  # -1-1+1+1 +1


def test_length_one_word_n5():
    # length 1 = k-1 for level k=2, eigenvalue 5 - 4 = 1
    assert eigenvalue_of_bits(GroupWord(0b0001, 4), 5) == 1


def test_eigenvalue_width_mismatch():
    with pytest.raises(DimensionError):
        eigenvalue_of_bits(GroupWord.identity(3), 5)


def test_eigenvalue_against_direct_sum_formula():
    n = 7
    for w in GroupWord.all_words(n - 1):
        exps = w.exponents()
        direct = sum((-1) ** e for e in exps) + (-1) ** (sum(exps) % 2)
        assert eigenvalue_of_bits(w, n) == direct


# ---------------------------------------------------------------------------
# eigen_data level structure
# ---------------------------------------------------------------------------


def test_eigen_data_n5():
    assert eigen_data(5).multiplicities() == {5: 1, 1: 10, -3: 5}


def test_eigen_data_n3_is_k4_spectrum():
    assert eigen_data(3).multiplicities() == {3: 1, -1: 3}


def test_eigen_data_n7():
    assert eigen_data(7).multiplicities() == {7: 1, 3: 21, -1: 35, -5: 7}


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_level_structure(n):
    data = eigen_data(n)
    seen = set()
    total = 0
    for lvl in data.levels:
        assert lvl.k % 2 == 0 and 0 <= lvl.k <= n
        assert lvl.eigenvalue == n - 2 * lvl.k
        assert lvl.multiplicity == comb(n, lvl.k)
        lower = comb(n - 1, lvl.k - 1) if lvl.k >= 1 else 0
        assert lvl.multiplicity == comb(n - 1, lvl.k) + lower
        for w in lvl.basis:
            assert w.length() in (lvl.k, lvl.k - 1)
            assert w.bits not in seen
            seen.add(w.bits)
        total += lvl.multiplicity
    assert total == 1 << (n - 1)
    # distinct levels have distinct eigenvalues
    lams = [lvl.eigenvalue for lvl in data.levels]
    assert len(set(lams)) == len(lams)


def test_eigen_data_rejects_even_n():
    with pytest.raises(UsageError):
        eigen_data(4)


# ---------------------------------------------------------------------------
# numeric verification
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [3, 5, 7])
def test_verify_spectrum_small(n):
    rep = verify_spectrum(n)
    assert rep.passed
    assert rep.max_residual <= 1e-9
    assert rep.numeric_match


def test_verify_spectrum_n9_fast():
    t0 = time.time()
    rep = verify_spectrum(9)
    elapsed = time.time() - t0
    assert rep.passed and rep.max_residual <= 1e-9
    assert sum(lvl["multiplicity"] for lvl in rep.levels) == 256
    assert elapsed < 1.0


def test_verify_spectrum_even_n_still_matches_numerics():
    rep = verify_spectrum(4)
    assert rep.numeric_match and rep.max_residual <= 1e-9


def test_spectrum_report_json_shape():
    js = verify_spectrum(5).to_json()
    assert set(js) >= {"n", "levels", "numeric_match", "max_residual", "pass"}
    assert {lvl["lambda"]: lvl["multiplicity"] for lvl in js["levels"]} == {5: 1, 1: 10, -3: 5}


def test_psi_images_are_eigenvectors():
    n = 5
    a = folded_cube(n).adjacency.astype(float)
    for w in GroupWord.all_words(n - 1):
        vec = inverse_fourier(FunctionVector.indicator(w, GROUP_BASIS)).coefficients.real
        lam = eigenvalue_of_bits(w, n)
        assert np.max(np.abs(a @ vec - lam * vec)) <= 1e-9


def test_psi_images_orthogonal_within_levels():
    n = 5
    for lvl in eigen_data(n).levels:
        vecs = [
            inverse_fourier(FunctionVector.indicator(w, GROUP_BASIS)).coefficients.real
            for w in lvl.basis
        ]
        g = np.array(vecs) @ np.array(vecs).T
        assert np.allclose(g, np.eye(len(vecs)) * (1 << (n - 1)))


# ---------------------------------------------------------------------------
# eigenprojections
# ---------------------------------------------------------------------------


def test_projection_k0_is_rank_one_all_ones():
    p = eigenprojection(5, 0)
    assert np.allclose(p, np.full((16, 16), 1 / 16))


def test_projections_resolve_identity():
    total = sum(p for _, p in eigenprojections(5))
    assert np.allclose(total, np.eye(16), atol=1e-10)


@pytest.mark.parametrize("n", [5, 7])
def test_projection_identities(n):
    a = folded_cube(n).adjacency.astype(float)
    for k, p in eigenprojections(n):
        lam = n - 2 * k
        assert np.max(np.abs(p - p.T)) <= 1e-10
        assert np.max(np.abs(p @ p - p)) <= 1e-10
        assert abs(np.trace(p) - comb(n, k)) <= 1e-10
        assert np.max(np.abs(p @ a - lam * p)) <= 1e-10
        assert np.max(np.abs(a @ p - lam * p)) <= 1e-10


def test_invalid_level_rejected():
    with pytest.raises(UsageError):
        eigenprojection(5, 1)


# ---------------------------------------------------------------------------
# eigenspace preservation
# ---------------------------------------------------------------------------


def test_every_clebsch_automorphism_preserves_eigenspaces(clebsch_autos):
    assert all(preserves_eigenspaces(5, p) for p in clebsch_autos)


def test_identity_preserves():
    assert preserves_eigenspaces(5, Permutation.identity(16))


def test_non_automorphism_fails_with_visible_commutator():
    bad = Permutation.from_cycles(16, [(0, 1)])
    assert not preserves_eigenspaces(5, bad)
    m = bad.matrix().astype(float)
    worst = max(
        np.max(np.abs(m @ p - p @ m)) for _, p in eigenprojections(5)
    )
    assert worst > 0.1


def test_preserves_size_mismatch():
    with pytest.raises(DimensionError):
        preserves_eigenspaces(5, Permutation.identity(8))
