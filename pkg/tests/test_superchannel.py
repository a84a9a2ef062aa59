import numpy as np
import pytest

from jdrcap import superchannel as sc
from jdrcap.capacity_limits import (
    c1_bpsk_dolinar,
    hadamard_jdr_capacity,
    holevo_bpsk,
    rm_gm_jdr_capacity,
    rm_mpe_capacity,
)
from jdrcap.dmc import ConvergenceError, DiscreteChannel
from jdrcap.entropy import LN2, binary_entropy
from jdrcap.optics_sim import rm_gm_jdr_channel, two_symbol_receiver_channel

from oracles import bec_capacity, bsc_capacity, mutual_information_direct


def bsc(q):
    return DiscreteChannel(("0", "1"), ("0", "1"),
                           np.array([[1 - q, q], [q, 1 - q]]))


def bec(eps):
    return DiscreteChannel(("0", "1"), ("0", "e", "1"),
                           np.array([[1 - eps, eps, 0.0], [0.0, eps, 1 - eps]]))


class TestMutualInformation:
    def test_identity_channel(self):
        ch = DiscreteChannel(tuple("abcd"), tuple("abcd"), np.eye(4))
        assert sc.mutual_information(ch, np.full(4, 0.25)) == pytest.approx(2.0)

    def test_constant_output(self):
        p = np.tile([0.3, 0.7], (3, 1))
        ch = DiscreteChannel(("a", "b", "c"), ("0", "1"), p)
        assert sc.mutual_information(ch, np.full(3, 1 / 3)) == pytest.approx(0.0, abs=1e-15)

    def test_bsc_closed_form(self):
        for q in (0.05, 0.2, 0.45):
            mi = sc.mutual_information(bsc(q), [0.5, 0.5])
            assert mi == pytest.approx(bsc_capacity(q), abs=1e-13)

    def test_direct_sum_oracle(self):
        rng = np.random.default_rng(0)
        p = rng.random((4, 5))
        p /= p.sum(axis=1, keepdims=True)
        ch = DiscreteChannel(tuple("abcd"), tuple("vwxyz"), p)
        priors = np.array([0.1, 0.2, 0.3, 0.4])
        assert sc.mutual_information(ch, priors) == pytest.approx(
            mutual_information_direct(p, priors), abs=1e-12)

    def test_rejects_bad_priors(self):
        with pytest.raises(ValueError):
            sc.mutual_information(bsc(0.1), [0.7, 0.5])


class TestBlahutArimoto:
    def test_bsc(self):
        cap, priors = sc.capacity_blahut_arimoto(bsc(0.11), tol=1e-12)
        assert cap == pytest.approx(bsc_capacity(0.11), abs=1e-9)
        assert np.allclose(priors, 0.5, atol=1e-9)

    def test_bec(self):
        for eps in (0.1, 0.5, 0.9):
            cap, _ = sc.capacity_blahut_arimoto(bec(eps), tol=1e-12)
            assert cap == pytest.approx(bec_capacity(eps), abs=1e-9)

    def test_symmetric_superchannels_uniform_is_optimal(self):
        from jdrcap.codes import rm1_code
        from jdrcap.discrimination import gram_from_code, srm_channel
        from jdrcap.optics_sim import hadamard_jdr_channel
        channels = (rm_gm_jdr_channel(2, 0.08),
                    hadamard_jdr_channel(3, 0.05),
                    srm_channel(gram_from_code(rm1_code(2), 0.1)))
        for ch in channels:
            uniform = np.full(ch.num_inputs, 1.0 / ch.num_inputs)
            mi_uniform = sc.mutual_information(ch, uniform)
            cap, priors = sc.capacity_blahut_arimoto(ch, tol=1e-12)
            assert cap == pytest.approx(mi_uniform, abs=1e-9)
            assert np.abs(priors - uniform).sum() < 1e-6

    def test_capacity_at_least_uniform_mi(self):
        for nbar in (0.01, 0.1):
            ch = two_symbol_receiver_channel(nbar)
            uniform = np.full(3, 1 / 3)
            cap, _ = sc.capacity_blahut_arimoto(ch, tol=1e-12)
            assert cap >= sc.mutual_information(ch, uniform) - 1e-12

    def test_max_iter_reports_bracket(self):
        # asymmetric Z-channel: uniform priors are not optimal, so the
        # bracket cannot close within two iterations
        z = DiscreteChannel(("0", "1"), ("0", "1"),
                            np.array([[1.0, 0.0], [0.5, 0.5]]))
        with pytest.raises(ConvergenceError) as excinfo:
            sc.capacity_blahut_arimoto(z, tol=1e-300, max_iter=2)
        err = excinfo.value
        assert err.lower is not None and err.upper is not None
        cap_z = np.log2(1.0 + 2.0 ** (-binary_entropy(0.5) / 0.5))  # known closed form
        assert err.lower <= cap_z <= err.upper + 1e-12


class TestPriorScanMax:
    def test_concave_quadratic(self):
        x, v = sc.prior_scan_max(lambda p: -(p - 0.31234) ** 2, 0.0, 0.5)
        assert x == pytest.approx(0.31234, abs=1e-6)
        assert v == pytest.approx(0.0, abs=1e-10)

    def test_flat_function_smallest_argument(self):
        x, v = sc.prior_scan_max(lambda p: 1.0, 0.0, 0.5)
        assert x == 0.0 and v == 1.0

    def test_matches_dense_grid_on_two_symbol_channel(self):
        nbar = 0.02
        ch = two_symbol_receiver_channel(nbar)
        fn = lambda p: sc.mutual_information(ch, [1 - 2 * p, p, p]) / 2
        x, v = sc.prior_scan_max(fn)
        dense = np.linspace(0, 0.5, 20001)
        brute = max(fn(p) for p in dense)
        assert v == pytest.approx(brute, abs=1e-6)

    def test_rejects_tiny_resolution(self):
        with pytest.raises(ValueError):
            sc.prior_scan_max(lambda p: p, resolution=2)


class TestTwoSymbolRatioCurve:
    def test_structured_peak_matches_receiver_gain(self):
        grid = np.geomspace(1e-3, 2.0, 40)
        pts = sc.two_symbol_ratio_curve(grid, receiver="structured")
        best = max(p.ratio for p in pts)
        assert best == pytest.approx(1.0249, abs=0.003)

    def test_mpe_peak(self):
        grid = np.geomspace(1e-3, 2.0, 25)
        pts = sc.two_symbol_ratio_curve(grid, receiver="mpe")
        best = max(p.ratio for p in pts)
        assert best == pytest.approx(1.0266, abs=0.003)

    def test_superadditivity_exists_then_dies(self):
        pts = sc.two_symbol_ratio_curve(np.geomspace(1e-3, 5.0, 30))
        assert any(p.ratio > 1.0 for p in pts)      # joint detection wins somewhere
        assert pts[-1].ratio < 1.0                  # large nbar: DR wins

    def test_rejects_empty_grid(self):
        with pytest.raises(ValueError):
            sc.two_symbol_ratio_curve([])


class TestCapacityCurves:
    def test_hadamard_points_match_closed_form(self):
        grid = np.geomspace(1e-5, 1.0, 15)
        pts = sc.capacity_curves("hadamard_jdr", 4, grid)
        for nbar, pt in zip(grid, pts):
            assert pt.bits_per_symbol == pytest.approx(
                hadamard_jdr_capacity(4, nbar), abs=1e-12)

    def test_rm_gm_pie_saturates_to_m(self):
        for m in (1, 4, 7, 10):
            (pt,) = sc.capacity_curves("rm_gm", m, [1e-7])
            assert pt.pie == pytest.approx(m, rel=0.01)

    def test_rm_mpe_low_nbar_pie(self):
        (pt,) = sc.capacity_curves("rm_mpe", 3, [1e-7])
        assert pt.pie == pytest.approx(2.0 / LN2, rel=0.01)

    def test_families_below_holevo(self):
        grid = np.geomspace(1e-5, 1.0, 12)
        for family, m in (("hadamard_jdr", 3), ("rm_gm", 3), ("rm_mpe", 3)):
            for pt in sc.capacity_curves(family, m, grid):
                assert pt.bits_per_symbol <= holevo_bpsk(pt.nbar) + 1e-12

    def test_two_symbol_beats_c1_at_low_nbar(self):
        (pt,) = sc.capacity_curves("two_symbol", None, [1e-3])
        assert pt.bits_per_symbol > c1_bpsk_dolinar(1e-3)

    def test_unknown_family_rejected(self):
        with pytest.raises(ValueError):
            sc.capacity_curves("polar", 3, [0.1])


class TestChannelValidation:
    def test_rejects_non_stochastic(self):
        with pytest.raises(ValueError):
            DiscreteChannel(("a",), ("x", "y"), np.array([[0.6, 0.5]]))

    def test_rejects_negative_entries(self):
        with pytest.raises(ValueError):
            DiscreteChannel(("a",), ("x", "y"), np.array([[1.1, -0.1]]))

    def test_erasure_is_first_class(self):
        ch = bec(0.25)
        assert "e" in ch.outputs
        cap, _ = sc.capacity_blahut_arimoto(ch, tol=1e-12)
        assert cap == pytest.approx(0.75, abs=1e-9)
