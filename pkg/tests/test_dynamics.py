import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tribrot.algebra import Tricomplex, idem4_compose, idem4_decompose, Idem4
from tribrot.dynamics import (
    EscapeResult,
    IterationConfig,
    combine_counts,
    complex_escape,
    direct_orbit,
    escape_counts,
    m_sup_estimate,
    real_escape,
    tc_escape,
)

CFG = IterationConfig(max_iter=1000)


class TestComplexEscape:
    def test_origin_bounded(self):
        assert complex_escape(0j, CFG) == EscapeResult(True, None)

    def test_real_interval_endpoints(self):
        assert complex_escape(0.25 + 0j, CFG).bounded
        assert complex_escape(-2 + 0j, CFG).bounded
        res = complex_escape(0.3 + 0j, CFG)
        assert not res.bounded and 1 <= res.escape_iter <= 1000

    def test_imaginary_unit_enters_two_cycle(self):
        # direct orbit: i, -1+i, -i, -1+i, -i, ...
        z = 0j
        seen = []
        for _ in range(6):
            z = z * z + 1j
            seen.append(z)
        assert seen[1] == seen[3] == -1 + 1j
        assert seen[2] == seen[4] == -1j
        assert complex_escape(1j, CFG).bounded

    def test_escape_iter_range(self):
        res = complex_escape(10 + 0j, CFG)
        assert res.escape_iter == 1

    def test_conjugation_symmetry(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            c = complex(rng.uniform(-2, 1), rng.uniform(-1.5, 1.5))
            assert complex_escape(c, CFG) == complex_escape(c.conjugate(), CFG)

    def test_superset_monotonicity(self):
        rng = np.random.default_rng(4)
        small = IterationConfig(max_iter=50)
        large = IterationConfig(max_iter=400)
        for _ in range(200):
            c = complex(rng.uniform(-2.1, 0.7), rng.uniform(-1.4, 1.4))
            if complex_escape(c, large).bounded:
                assert complex_escape(c, small).bounded

    def test_real_escape_agrees(self):
        for x in np.linspace(-2.2, 0.5, 173):
            assert real_escape(float(x), CFG) == complex_escape(complex(x), CFG)


class TestTcEscape:
    def test_real_point_escapes(self):
        assert not tc_escape(Tricomplex(0.3), CFG).bounded

    def test_quarter_hyperbolic_sum_bounded(self):
        c = Tricomplex(0, 0, 0, 0.25, 0, 0.25, 0.25, 0)
        assert idem4_decompose(c) == Idem4(0.25, 0.25, 0.25, -0.75)
        assert tc_escape(c, CFG).bounded

    def test_zero_bounded(self):
        assert tc_escape(Tricomplex.zero(), CFG).bounded

    def test_agrees_with_complex_on_the_real_line(self):
        for x in np.linspace(-2.2, 0.5, 97):
            assert tc_escape(Tricomplex(float(x)), CFG).bounded == \
                complex_escape(complex(x), CFG).bounded

    def test_escape_iter_is_component_minimum(self):
        c = Tricomplex(0, 0, 0, 10.0, 0, 0, 0, 0)  # components +-10
        assert tc_escape(c, CFG).escape_iter == 1


class TestDirectOrbit:
    def test_short_orbits(self):
        c = Tricomplex(0.5, -1, 0.25)
        assert direct_orbit(c, 0).coeffs == Tricomplex.zero().coeffs
        assert direct_orbit(c, 1).coeffs == c.coeffs

    def test_hyperbolic_step(self):
        j1 = Tricomplex.unit("j1")
        assert direct_orbit(j1, 2).coeffs == (1, 0, 0, 1, 0, 0, 0, 0)

    def test_negative_length_rejected(self):
        with pytest.raises(ValueError):
            direct_orbit(Tricomplex.one(), -1)

    def test_matches_componentwise_orbits(self):
        rng = np.random.default_rng(11)
        for _ in range(150):
            c = Tricomplex(*rng.uniform(-2, 2, size=8))
            comps = idem4_decompose(c)
            z = Tricomplex.zero()
            e = [0j, 0j, 0j, 0j]
            for _step in range(rng.integers(1, 21)):
                z = z * z + c
                e = [ei * ei + ci for ei, ci in zip(e, comps)]
                composed = idem4_compose(Idem4(*e))
                scale = 1.0 + z.sup_norm()
                err = max(abs(x - y) for x, y in zip(z.coeffs, composed.coeffs))
                assert err <= 1e-8 * scale
                if z.sup_norm() > 1e6:
                    break


class TestBatchKernel:
    def test_complex_grid_matches_scalar(self):
        re = np.linspace(-2.2, 0.8, 41)
        im = np.linspace(-1.3, 1.3, 37)
        rr = np.broadcast_to(re, (37, 41)).ravel().copy()
        ii = np.broadcast_to(im[:, None], (37, 41)).ravel().copy()
        cfg = IterationConfig(max_iter=300)
        counts = escape_counts(rr, ii, cfg)
        for k in range(0, rr.size, 7):
            res = complex_escape(complex(rr[k], ii[k]), cfg)
            expected = 0 if res.bounded else res.escape_iter
            assert counts[k] == expected

    def test_real_grid_matches_scalar(self):
        xs = np.linspace(-2.3, 0.6, 301)
        cfg = IterationConfig(max_iter=500)
        counts = escape_counts(xs, None, cfg)
        for k in range(0, xs.size, 11):
            res = real_escape(float(xs[k]), cfg)
            expected = 0 if res.bounded else res.escape_iter
            assert counts[k] == expected

    def test_zero_imag_array_takes_real_path(self):
        xs = np.linspace(-2.0, 0.5, 64)
        assert np.array_equal(escape_counts(xs, np.zeros_like(xs), CFG),
                              escape_counts(xs, None, CFG))

    def test_shape_preserved(self):
        grid = np.full((5, 4), -0.1)
        assert escape_counts(grid, None, CFG).shape == (5, 4)

    def test_combine_counts(self):
        a = np.array([0, 3, 0, 9], dtype=np.uint32)
        b = np.array([0, 5, 2, 1], dtype=np.uint32)
        combined = combine_counts([a, b], 10)
        assert combined.tolist() == [0, 3, 2, 1]


class TestMSupEstimate:
    def test_bounds(self):
        cfg = IterationConfig(max_iter=300)
        m = m_sup_estimate(120, cfg)
        assert 1.0 <= m <= 1.5

    def test_refinement_changes_at_most_one_coarse_step(self):
        cfg = IterationConfig(max_iter=300)
        coarse = m_sup_estimate(120, cfg)
        fine = m_sup_estimate(240, cfg)
        step = 1.5 / 119
        assert fine >= coarse - step

    def test_more_iterations_cannot_grow_the_estimate(self):
        low = m_sup_estimate(120, IterationConfig(max_iter=100))
        high = m_sup_estimate(120, IterationConfig(max_iter=800))
        assert high <= low + 1e-12

    def test_minimum_samples(self):
        with pytest.raises(ValueError):
            m_sup_estimate(99, CFG)


def test_config_validation():
    with pytest.raises(ValueError):
        IterationConfig(max_iter=0)
    with pytest.raises(ValueError):
        IterationConfig(escape_radius=1.5)
