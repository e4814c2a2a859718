import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qsym import (
    CapacityError,
    DimensionError,
    FunctionVector,
    GROUP_BASIS,
    GroupWord,
    POINT_BASIS,
    UsageError,
    cayley_folded_cube,
    folded_cube,
    fourier,
    inverse_fourier,
    tau_generators,
    walsh_transform,
)


# ---------------------------------------------------------------------------
# GroupWord: XOR group laws
# ---------------------------------------------------------------------------


def test_group_laws_exhaustive_small_widths():
    for width in range(1, 5):
        words = list(GroupWord.all_words(width))
        e = GroupWord.identity(width)
        for a in words:
            assert a * a == e
            assert a * e == a
            assert a.inverse() == a
            for b in words:
                for c in words:
                    assert (a * b) * c == a * (b * c)


def test_unary_laws_exhaustive_width_12():
    # identity and self-inverse over all 4096 elements, vectorized
    bits = np.arange(1 << 12)
    assert np.all(bits ^ bits == 0)
    assert np.all(bits ^ 0 == bits)


@given(
    width=st.integers(1, 12),
    data=st.data(),
)
def test_group_laws_random(width, data):
    top = (1 << width) - 1
    a = GroupWord(data.draw(st.integers(0, top)), width)
    b = GroupWord(data.draw(st.integers(0, top)), width)
    c = GroupWord(data.draw(st.integers(0, top)), width)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert (a * b).length() == (a.bits ^ b.bits).bit_count()


def test_group_word_validation():
    with pytest.raises(UsageError):
        GroupWord(4, 2)
    with pytest.raises(DimensionError):
        GroupWord(1, 2) * GroupWord(1, 3)
    with pytest.raises(UsageError):
        GroupWord.generator(3, 2)


def test_group_word_dot():
    a = GroupWord(0b101, 3)
    b = GroupWord(0b110, 3)
    assert a.dot(b) == 1
    assert a.dot(a) == 0  # two bits set


# ---------------------------------------------------------------------------
# folded cubes
# ---------------------------------------------------------------------------


def test_folded_3_cube_is_k4():
    g = folded_cube(3)
    expected = np.ones((4, 4), dtype=np.uint8) - np.eye(4, dtype=np.uint8)
    assert np.array_equal(g.adjacency, expected)


def test_folded_5_cube_is_16_vertex_5_regular():
    g = folded_cube(5)
    assert g.n_vertices == 16
    assert set(g.degrees().tolist()) == {5}


@pytest.mark.parametrize("n", range(3, 10))
def test_folded_cube_counts(n):
    g = folded_cube(n)
    assert g.n_vertices == 2 ** (n - 1)
    assert set(g.degrees().tolist()) == {n}


def test_folded_cube_bounds():
    with pytest.raises(UsageError):
        folded_cube(1)
    with pytest.raises(CapacityError):
        folded_cube(14)  # 8192 vertices > 4096


@pytest.mark.parametrize("n", range(2, 13))
def test_cayley_matches_folded_cube(n):
    assert np.array_equal(cayley_folded_cube(n).adjacency, folded_cube(n).adjacency)


def test_cayley_neighbor_sets():
    n = 5
    g = cayley_folded_cube(n)
    width = n - 1
    gens = [1 << s for s in range(width)] + [(1 << width) - 1]
    for v in range(g.n_vertices):
        assert set(g.neighbors(v)) == {v ^ s for s in gens}


# ---------------------------------------------------------------------------
# Fourier pair
# ---------------------------------------------------------------------------


def test_fourier_of_identity_indicator():
    for width in (1, 3, 4):
        v = FunctionVector.indicator(GroupWord.identity(width), POINT_BASIS)
        f = fourier(v)
        assert f.basis == GROUP_BASIS
        assert np.allclose(f.coefficients, 1.0 / (1 << width))


def test_fourier_of_t1_indicator_width_2():
    v = FunctionVector.indicator(GroupWord.generator(1, 2), POINT_BASIS)
    f = fourier(v)
    # independent oracle: (1/4) sum_j (-1)^{i.j} with i = (1,0)
    oracle = np.array(
        [0.25 * (-1) ** ((0b01 & j).bit_count() & 1) for j in range(4)]
    )
    assert np.allclose(f.coefficients, oracle)
    assert np.allclose(f.coefficients, [0.25, -0.25, 0.25, -0.25])


def test_inverse_fourier_of_group_identity_is_all_ones():
    v = FunctionVector.indicator(GroupWord.identity(3), GROUP_BASIS)
    assert np.allclose(inverse_fourier(v).coefficients, 1.0)


def test_inverse_fourier_of_t1_is_sign_of_first_bit():
    width = 4
    v = FunctionVector.indicator(GroupWord.generator(1, width), GROUP_BASIS)
    out = inverse_fourier(v).coefficients
    expected = np.array([(-1) ** (j & 1) for j in range(1 << width)], dtype=float)
    assert np.allclose(out, expected)


def test_round_trip_on_full_bases():
    for width in range(1, 7):
        for w in GroupWord.all_words(width):
            v = FunctionVector.indicator(w, POINT_BASIS)
            rt = inverse_fourier(fourier(v))
            assert np.max(np.abs(rt.coefficients - v.coefficients)) <= 1e-12
            u = FunctionVector.indicator(w, GROUP_BASIS)
            rt = fourier(inverse_fourier(u))
            assert np.max(np.abs(rt.coefficients - u.coefficients)) <= 1e-12


def test_round_trip_100_random_vectors():
    rng = np.random.default_rng(7)
    for trial in range(100):
        width = int(rng.integers(1, 9))
        coeffs = rng.standard_normal(1 << width) + 1j * rng.standard_normal(1 << width)
        v = FunctionVector(coeffs, POINT_BASIS, width)
        rt = inverse_fourier(fourier(v))
        assert np.max(np.abs(rt.coefficients - coeffs)) <= 1e-12


@given(width=st.integers(1, 8), seed=st.integers(0, 2**31 - 1))
def test_round_trip_property(width, seed):
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(1 << width) + 1j * rng.standard_normal(1 << width)
    v = FunctionVector(coeffs, POINT_BASIS, width)
    rt = inverse_fourier(fourier(v))
    assert np.max(np.abs(rt.coefficients - coeffs)) <= 1e-12


def test_fourier_scaled_unitarity():
    rng = np.random.default_rng(11)
    width = 6
    v = rng.standard_normal(1 << width) + 1j * rng.standard_normal(1 << width)
    w = rng.standard_normal(1 << width) + 1j * rng.standard_normal(1 << width)
    fv = fourier(FunctionVector(v, POINT_BASIS, width)).coefficients
    fw = fourier(FunctionVector(w, POINT_BASIS, width)).coefficients
    lhs = np.vdot(fv, fw)
    rhs = np.vdot(v, w) / (1 << width)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


def test_basis_tags_enforced():
    v = FunctionVector.indicator(GroupWord.identity(2), GROUP_BASIS)
    with pytest.raises(UsageError):
        fourier(v)
    with pytest.raises(UsageError):
        inverse_fourier(fourier(FunctionVector.indicator(GroupWord.identity(2), POINT_BASIS)))
        inverse_fourier(FunctionVector.indicator(GroupWord.identity(2), POINT_BASIS))


def test_walsh_transform_requires_power_of_two():
    with pytest.raises(DimensionError):
        walsh_transform(np.ones(3))


def test_function_vector_json_round_trip():
    rng = np.random.default_rng(3)
    coeffs = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    v = FunctionVector(coeffs, GROUP_BASIS, 3)
    again = FunctionVector.from_json(v.to_json())
    assert again.basis == GROUP_BASIS and again.width == 3
    assert np.allclose(again.coefficients, coeffs)
    with pytest.raises(UsageError):
        FunctionVector.from_json({"width": 2, "basis": "point", "re": [0, 0, 0, 0]})


def test_function_vector_validation():
    with pytest.raises(UsageError):
        FunctionVector(np.zeros(4), "weird", 2)
    with pytest.raises(DimensionError):
        FunctionVector(np.zeros(3), POINT_BASIS, 2)


# ---------------------------------------------------------------------------
# tau generators
# ---------------------------------------------------------------------------


def test_tau_generators_n3():
    t1, t2, t3 = tau_generators(3)
    assert t1 == GroupWord.generator(2, 2)  # t_2
    assert t2 == GroupWord.generator(1, 2)  # t_1
    assert t3 == GroupWord.all_ones(2)      # t_1 t_2


def test_tau_product_identity_n5():
    taus = tau_generators(5)
    prod = GroupWord.identity(4)
    for t in taus[:-1]:
        prod = prod * t
    assert prod == taus[-1]  # each t_k appears 3 times across tau_1..tau_4


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_tau_generators_span(n):
    # GF(2) rank of the exponent matrix must be n-1
    taus = tau_generators(n)
    rows = [t.bits for t in taus]
    rank = 0
    for col in range(n - 1):
        pivot = next((i for i, r in enumerate(rows) if (r >> col) & 1), None)
        if pivot is None:
            continue
        rank += 1
        pivot_row = rows.pop(pivot)
        rows = [r ^ pivot_row if (r >> col) & 1 else r for r in rows]
    assert rank == n - 1


def test_tau_generators_involutive_and_commuting():
    taus = tau_generators(5)
    e = GroupWord.identity(4)
    for a in taus:
        assert a * a == e
        for b in taus:
            assert a * b == b * a


def test_tau_generators_reject_even_n():
    with pytest.raises(UsageError):
        tau_generators(4)
    with pytest.raises(UsageError):
        tau_generators(1)
