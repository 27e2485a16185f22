import numpy as np
import pytest

from artinlab.algebra import from_ideal
from artinlab.errors import InputError
from artinlab.koszul import (
    build_koszul,
    h1_square_is_zero,
    homology_profile,
    mu_defining_ideal,
    poincare_duality_check,
    wedge_multiply,
)

from conftest import P


@pytest.fixture(scope="module")
def two_squares():
    return from_ideal(P, ["x", "y"], ["x^2", "y^2"])


class TestBuild:
    def test_hypersurface_complex(self):
        R = from_ideal(P, ["x"], ["x^2"])
        K = build_koszul(R)
        assert len(K.differentials) == 1
        assert np.array_equal(K.differentials[0], R.generator_matrices[0])

    def test_d1_concatenates_generators(self, ring_almost_stretched):
        K = build_koszul(ring_almost_stretched)
        assert np.array_equal(
            K.differentials[0], np.hstack(ring_almost_stretched.generator_matrices)
        )

    def test_d2_formula(self, two_squares):
        # d2(e_{12}) = x1 e_2 - x2 e_1
        R = two_squares
        K = build_koszul(R)
        d2 = K.differentials[1]
        l = R.length
        assert np.array_equal(d2[l:, :], R.generator_matrices[0])
        assert np.array_equal(d2[:l, :], (-R.generator_matrices[1]) % P)

    def test_squares_to_zero(self, ring_fermat_cubic):
        K = build_koszul(ring_fermat_cubic)
        for j in range(1, K.n):
            comp = ring_fermat_cubic.field.matmul(K.differentials[j - 1], K.differentials[j])
            assert not np.any(comp)

    def test_generator_guard(self):
        variables = [f"x{i}" for i in range(1, 10)]
        quadrics = [
            f"{a}*{b}" if a != b else f"{a}^2"
            for i, a in enumerate(variables)
            for b in variables[i:]
        ]
        R = from_ideal(P, variables, quadrics)
        assert R.edim == 9
        with pytest.raises(InputError):
            build_koszul(R)


class TestHomology:
    def test_chain_ring(self):
        R = from_ideal(P, ["x"], ["x^3"])
        prof = homology_profile(build_koszul(R))
        assert prof.dims == (1, 1)
        assert mu_defining_ideal(prof) == 1

    def test_complete_intersection(self, two_squares):
        prof = homology_profile(build_koszul(two_squares))
        assert prof.dims == (1, 2, 1)
        assert mu_defining_ideal(prof) == 2

    def test_fermat_cubic(self, ring_fermat_cubic):
        prof = homology_profile(build_koszul(ring_fermat_cubic))
        assert prof.dims == (1, 5, 5, 1)

    def test_quadrics(self, ring_quadrics):
        prof = homology_profile(build_koszul(ring_quadrics))
        assert prof.dims == (1, 5, 5, 1)
        assert mu_defining_ideal(prof) == 5

    def test_euler_and_socle(self, ring_almost_stretched, ring_sally, ring_fat_point):
        for R in (ring_almost_stretched, ring_sally, ring_fat_point):
            prof = homology_profile(build_koszul(R))
            assert sum((-1) ** i * d for i, d in enumerate(prof.dims)) == 0
            assert prof.dims[-1] == R.socle_dimension
            assert prof.dims[0] == 1

    def test_representatives_are_cycles(self, ring_almost_stretched):
        R = ring_almost_stretched
        K = build_koszul(R)
        prof = homology_profile(K)
        for j in range(1, K.n + 1):
            reps = prof.cycle_representatives[j]
            if reps.size:
                assert not np.any(R.field.matmul(K.differentials[j - 1], reps))


class TestWedge:
    def test_sign_convention(self, two_squares):
        R = two_squares
        K = build_koszul(R)
        l = R.length
        e1 = np.zeros(K.chain_dim(1), dtype=np.int64)
        e1[0] = 1
        e2 = np.zeros(K.chain_dim(1), dtype=np.int64)
        e2[l] = 1
        _, p12 = wedge_multiply(K, (1, e1), (1, e2))
        _, p21 = wedge_multiply(K, (1, e2), (1, e1))
        _, p11 = wedge_multiply(K, (1, e1), (1, e1))
        assert p12[0] == 1
        assert p21[0] == P - 1
        assert not np.any(p11)

    def test_ring_coefficients_multiply(self, two_squares):
        R = two_squares
        K = build_koszul(R)
        l = R.length
        xe1 = np.zeros(K.chain_dim(1), dtype=np.int64)
        xe1[:l] = R.generator_element(0)
        ye2 = np.zeros(K.chain_dim(1), dtype=np.int64)
        ye2[l:] = R.generator_element(1)
        _, prod = wedge_multiply(K, (1, xe1), (1, ye2))
        assert np.array_equal(prod, R.multiply(R.generator_element(0), R.generator_element(1)))

    def test_degree_overflow(self, two_squares):
        K = build_koszul(two_squares)
        v = np.zeros(K.chain_dim(1), dtype=np.int64)
        with pytest.raises(InputError):
            wedge_multiply(K, (1, v), (2, np.zeros(K.chain_dim(2), dtype=np.int64)))

    def test_leibniz(self, ring_almost_stretched):
        R = ring_almost_stretched
        K = build_koszul(R)
        rng = np.random.default_rng(5)
        for deg_a, deg_b in [(1, 1), (1, 2)]:
            a = rng.integers(0, P, size=K.chain_dim(deg_a))
            b = rng.integers(0, P, size=K.chain_dim(deg_b))
            _, ab = wedge_multiply(K, (deg_a, a), (deg_b, b))
            d_ab = R.field.matmul(K.differentials[deg_a + deg_b - 1], ab)
            da = R.field.matmul(K.differentials[deg_a - 1], a)
            db = R.field.matmul(K.differentials[deg_b - 1], b)
            _, left = wedge_multiply(K, (deg_a - 1, da), (deg_b, b))
            _, right = wedge_multiply(K, (deg_a, a), (deg_b - 1, db))
            sign = (-1) ** deg_a
            expected = (left + sign * right) % P
            assert np.array_equal(d_ab, expected)


class TestH1Square:
    def test_fermat_cubic_true(self, ring_fermat_cubic):
        K = build_koszul(ring_fermat_cubic)
        assert h1_square_is_zero(K) is True

    def test_complete_intersection_false(self, two_squares):
        K = build_koszul(two_squares)
        assert h1_square_is_zero(K) is False

    def test_square_zero_true(self, ring_fat_point):
        K = build_koszul(ring_fat_point)
        assert h1_square_is_zero(K) is True


class TestPoincareDuality:
    def test_fermat_cubic(self, ring_fermat_cubic):
        K = build_koszul(ring_fermat_cubic)
        assert poincare_duality_check(K) is True

    def test_complete_intersection(self, two_squares):
        K = build_koszul(two_squares)
        assert poincare_duality_check(K) is True

    def test_non_gorenstein_rejected(self, ring_fat_point):
        K = build_koszul(ring_fat_point)
        with pytest.raises(InputError):
            poincare_duality_check(K)
