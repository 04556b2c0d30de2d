"""Tests for domains, Gaussian elements and point sets."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cornerlab.errors import DomainMismatch, InfeasibleDomain, NonInvertible
from cornerlab.module.grid_core import (
    Domain,
    GaussianElem,
    GridPoint,
    PointSet,
    gaussian_inv,
    gaussian_mul,
    make_rng,
    norm,
    random_subset,
    rot90,
    spawn_rngs,
    unit_group,
)

PRIMES = [3, 5, 7, 11, 13]


@pytest.mark.unit
class TestDomain:
    def test_prime_plane_accepts_odd_primes(self):
        for p in PRIMES:
            domain = Domain.prime_plane(p)
            assert domain.num_points == p * p
            assert domain.label == f"p{p}"

    @pytest.mark.parametrize("p", [2, 1, 0, 9, 15])
    def test_prime_plane_rejects(self, p):
        with pytest.raises(InfeasibleDomain):
            Domain.prime_plane(p)

    def test_integer_grid_rejects_empty(self):
        with pytest.raises(InfeasibleDomain):
            Domain.integer_grid(0)

    def test_rot90_mod_p(self, f5):
        assert rot90(GridPoint(1, 0), f5) == GridPoint(0, 1)
        assert rot90(GridPoint(0, 1), f5) == GridPoint(4, 0)

    def test_rot90_on_grid_is_signed(self):
        grid = Domain.integer_grid(4)
        assert rot90(GridPoint(1, 2), grid) == GridPoint(-2, 1)

    def test_norm(self, f5):
        assert norm(GridPoint(1, 2), f5) == 0
        assert norm(GridPoint(1, 1), f5) == 2

    def test_norm_requires_prime_plane(self):
        with pytest.raises(DomainMismatch):
            norm(GridPoint(1, 1), Domain.integer_grid(3))

    def test_half(self, f5):
        assert f5.half(GridPoint(1, 3)) == GridPoint(3, 4)
        grid = Domain.integer_grid(5)
        assert grid.half(GridPoint(2, 4)) == GridPoint(1, 2)
        assert grid.half(GridPoint(1, 2)) is None

    def test_index_is_row_major(self, f3):
        assert f3.index(GridPoint(1, 2)) == 5
        assert f3.point(5) == GridPoint(1, 2)
        assert list(f3.points())[:3] == [GridPoint(0, 0), GridPoint(0, 1), GridPoint(0, 2)]

    def test_dict_round_trip(self, f7):
        assert Domain.from_dict(f7.to_dict()) == f7


@pytest.mark.unit
class TestGaussian:
    def test_i_squared_is_minus_one(self):
        i = GaussianElem.i(7)
        assert i * i == GaussianElem(-1, 0, 7)

    def test_inverse_of_zero_norm_element(self):
        # 1 + 2i has norm 5
        with pytest.raises(NonInvertible):
            gaussian_inv(GaussianElem(1, 2, 5))

    def test_unit_group_sizes(self):
        # p ≡ 3 (mod 4): F_p[i] is a field
        assert len(unit_group(3)) == 8
        assert len(unit_group(7)) == 48
        # p ≡ 1 (mod 4): F_p[i] ≅ F_p x F_p
        assert len(unit_group(5)) == 16

    def test_gaussian_integer_units(self):
        assert GaussianElem(0, 1).inverse() == GaussianElem(0, -1)
        with pytest.raises(NonInvertible):
            GaussianElem(1, 1).inverse()

    def test_divide_exact_over_integers(self):
        a = GaussianElem(3, 1)
        b = GaussianElem(1, 1)
        assert a.divide_exact(b) == GaussianElem(2, -1)
        assert GaussianElem(1, 0).divide_exact(b) is None

    @settings(max_examples=200, deadline=None)
    @given(
        p=st.sampled_from(PRIMES),
        a=st.tuples(st.integers(0, 12), st.integers(0, 12)),
        b=st.tuples(st.integers(0, 12), st.integers(0, 12)),
    )
    def test_norm_is_multiplicative(self, p, a, b):
        x = GaussianElem(a[0], a[1], p)
        y = GaussianElem(b[0], b[1], p)
        assert gaussian_mul(x, y).norm() == (x.norm() * y.norm()) % p

    @settings(max_examples=200, deadline=None)
    @given(p=st.sampled_from(PRIMES), re=st.integers(0, 12), im=st.integers(0, 12))
    def test_inverse(self, p, re, im):
        z = GaussianElem(re, im, p)
        if z.is_invertible():
            assert z * gaussian_inv(z) == GaussianElem.one(p)
        else:
            with pytest.raises(NonInvertible):
                gaussian_inv(z)

    def test_mixed_moduli_rejected(self):
        with pytest.raises(DomainMismatch):
            GaussianElem(1, 0, 3) + GaussianElem(1, 0, 5)


@pytest.mark.unit
class TestPointSet:
    def test_add_remove_cardinality(self, f5):
        s = PointSet.empty(f5)
        assert s.add(GridPoint(1, 1))
        assert not s.add(GridPoint(1, 1))
        assert s.add(GridPoint(2, 3))
        assert s.cardinality == 2 == s.recount()
        assert s.remove(GridPoint(1, 1))
        assert not s.remove(GridPoint(1, 1))
        assert s.cardinality == 1 == s.recount()
        assert GridPoint(2, 3) in s

    @pytest.mark.parametrize("seed", [0, 1])
    def test_cardinality_cache_over_random_mutations(self, f7, seed):
        rng = make_rng(seed)
        s = PointSet.empty(f7)
        mirror = set()
        for step in range(10_000):
            point = GridPoint(int(rng.integers(7)), int(rng.integers(7)))
            if rng.random() < 0.5:
                assert s.add(point) == (point not in mirror)
                mirror.add(point)
            else:
                assert s.remove(point) == (point in mirror)
                mirror.discard(point)
            if step % 500 == 0:
                assert s.cardinality == s.recount() == len(mirror)
        assert s.cardinality == s.recount() == len(mirror)
        assert set(s) == mirror

    def test_out_of_domain_point(self):
        grid = Domain.integer_grid(3)
        s = PointSet.empty(grid)
        assert GridPoint(3, 0) not in s
        with pytest.raises(DomainMismatch):
            s.add(GridPoint(3, 0))

    def test_hex_layout(self, f3):
        s = PointSet.from_points(f3, [GridPoint(0, 0)])
        assert s.to_hex() == "800"
        full = PointSet.full(f3)
        assert full.to_hex() == "ff8"
        assert PointSet.from_hex(f3, "ff8") == full

    def test_hex_rejects_wrong_length(self, f3):
        with pytest.raises(ValueError):
            PointSet.from_hex(f3, "ff")

    def test_complement(self, f5):
        s = random_subset(f5, "1/2", seed=3)
        assert s.cardinality + s.complement().cardinality == 25

    def test_translate_and_multiply_preserve_size(self, f7):
        s = random_subset(f7, "1/3", seed=11)
        assert s.translate(GridPoint(2, 5)).cardinality == s.cardinality
        assert s.multiply(GaussianElem(1, 1, 7)).cardinality == s.cardinality

    def test_random_subset_extremes(self, f5):
        assert random_subset(f5, 0, seed=1).cardinality == 0
        assert random_subset(f5, 1, seed=1).cardinality == 25

    def test_random_subset_is_deterministic(self, f7):
        assert random_subset(f7, "1/2", seed=42) == random_subset(f7, "1/2", seed=42)


@pytest.mark.unit
def test_spawned_streams_are_reproducible():
    first = [rng.integers(0, 1000, size=5).tolist() for rng in spawn_rngs(9, 3)]
    second = [rng.integers(0, 1000, size=5).tolist() for rng in spawn_rngs(9, 3)]
    assert first == second
    assert first[0] != first[1]
    assert np.array_equal(make_rng(5).random(4), make_rng(5).random(4))
