import numpy as np
import pytest
from scipy import stats

from meesgen import ApproachKind, MeasureMismatch
from meesgen.montecarlo import (
    CHUNK,
    Histogram2D,
    SamplerConfig,
    chunk_rng,
    default_measure,
    expense_norm,
    read_histogram_csv,
    run_scatter,
    sample_haar_full,
    sample_schmidt,
    scan_mees_curve,
    scatter_samples,
    write_curve_csv,
    write_histogram_csv,
    write_histogram_sidecar,
)


class TestSamplers:
    def test_full_measure_normalized(self, reference_system):
        rng = chunk_rng(0, 0)
        for _ in range(10):
            st = sample_haar_full(reference_system, rng)
            assert np.linalg.norm(st.amplitudes) == pytest.approx(1.0, abs=1e-12)

    def test_schmidt_measure_normalized(self, reference_system):
        rng = chunk_rng(0, 0)
        for _ in range(10):
            st = sample_schmidt(reference_system, rng)
            assert sum(st.weights) == pytest.approx(1.0, abs=1e-12)

    def test_full_measure_uniform_mean(self, reference_system):
        # mean weight of every basis ket is 1/N_S under the full measure
        rng = chunk_rng(1, 0)
        acc = np.zeros(12)
        n = 4000
        for _ in range(n):
            acc += np.abs(sample_haar_full(reference_system, rng).amplitudes) ** 2
        assert np.allclose(acc / n, 1 / 12, atol=5e-3)

    def test_two_level_ground_weight_uniform(self):
        # for N = 2 the ground weight of a Haar state is uniform on [0, 1]
        from meesgen import Spectrum, build_system

        sys = build_system(Spectrum((0, 1)), Spectrum((0, 1)))
        rng = chunk_rng(2, 0)
        lam0 = np.array([sample_schmidt(sys, rng).weights[0] for _ in range(4000)])
        assert stats.kstest(lam0, "uniform").pvalue > 1e-3

    def test_measure_defaults(self):
        assert default_measure(ApproachKind.Simple) == "haar-full"
        assert default_measure(ApproachKind.GlobalUnitary) == "haar-full"
        for ap in (ApproachKind.ModifiedSimple, ApproachKind.MssgA, ApproachKind.MssgB):
            assert default_measure(ap) == "haar-schmidt"

    def test_full_measure_rejected_for_local_approaches(self, reference_system):
        config = SamplerConfig(seed=0, count=10, measure="haar-full")
        with pytest.raises(MeasureMismatch):
            run_scatter(reference_system, ApproachKind.MssgA, config)

    def test_schmidt_measure_allowed_for_all(self, reference_system):
        for ap in ApproachKind:
            config = SamplerConfig(seed=0, count=100, measure="haar-schmidt")
            res = run_scatter(reference_system, ap, config, bins=(10, 10))
            assert res.hist_eta.counts.sum() + res.skipped == 100


class TestScatterValues:
    def test_matches_report_oracles(self, reference_system):
        # raw sample values equal the per-state closed-form reports
        from meesgen import (
            SchmidtState,
            report_global_unitary,
            report_mssg,
            report_simple,
            v_strength,
        )

        config = SamplerConfig(seed=5, count=64, measure="haar-schmidt")
        for ap in (ApproachKind.ModifiedSimple, ApproachKind.GlobalUnitary, ApproachKind.MssgB):
            ent, eta, e_exp = scatter_samples(reference_system, ap, config)
            rng = chunk_rng(5, 0)
            z = rng.standard_normal((64, 3)) + 1j * rng.standard_normal((64, 3))
            z /= np.linalg.norm(z, axis=1, keepdims=True)
            k = 0
            for row in z:
                s = SchmidtState(tuple(np.abs(row) ** 2), tuple(np.angle(row)))
                if ap is ApproachKind.ModifiedSimple:
                    rep = report_simple(
                        reference_system, s, v_strength(reference_system, ApproachKind.ModifiedSimple)
                    )
                elif ap is ApproachKind.GlobalUnitary:
                    if s.weights[0] < 1e-13:
                        continue
                    rep = report_global_unitary(reference_system, s)
                else:
                    rep = report_mssg("B", reference_system, s)
                if rep.e_exp <= 1e-14:
                    continue
                assert e_exp[k] == pytest.approx(rep.e_exp, rel=1e-10)
                assert eta[k] == pytest.approx(rep.eta, rel=1e-10)
                k += 1
            assert k == ent.size

    def test_eta_bounded_for_simple(self, reference_system):
        config = SamplerConfig(seed=1, count=20000, measure="haar-full")
        ent, eta, e_exp = scatter_samples(reference_system, ApproachKind.Simple, config)
        assert np.all(eta >= 0) and np.all(eta <= 1 + 1e-12)
        assert np.all(e_exp > 0)
        assert np.all(ent >= -1e-12) and np.all(ent <= np.log(3) + 1e-12)


class TestDeterminism:
    def test_worker_counts_agree(self, reference_system):
        grids = []
        for workers in (1, 4, 8):
            config = SamplerConfig(seed=9, count=3 * CHUNK + 17, measure="haar-full", workers=workers)
            res = run_scatter(reference_system, ApproachKind.Simple, config, bins=(40, 40))
            grids.append((res.hist_eta.counts.copy(), res.hist_exp.counts.copy(), res.skipped))
        for other in grids[1:]:
            assert np.array_equal(grids[0][0], other[0])
            assert np.array_equal(grids[0][1], other[1])
            assert grids[0][2] == other[2]

    def test_same_seed_same_result(self, reference_system):
        config = SamplerConfig(seed=3, count=500, measure="haar-schmidt")
        a = scatter_samples(reference_system, ApproachKind.MssgA, config)
        b = scatter_samples(reference_system, ApproachKind.MssgA, config)
        for x, y in zip(a, b):
            assert np.array_equal(x, y)

    def test_different_seeds_differ(self, reference_system):
        c1 = SamplerConfig(seed=3, count=500, measure="haar-schmidt")
        c2 = SamplerConfig(seed=4, count=500, measure="haar-schmidt")
        a = scatter_samples(reference_system, ApproachKind.MssgA, c1)
        b = scatter_samples(reference_system, ApproachKind.MssgA, c2)
        assert not np.array_equal(a[0], b[0])


class TestHistogram:
    def make(self, bins=4):
        return Histogram2D(bins, bins, (0.0, 1.0), (0.0, 1.0), 1.0, 1.0)

    def test_single_sample_single_increment(self):
        h = self.make()
        h.add_samples(np.array([0.3]), np.array([0.6]))
        assert h.counts.sum() == 1
        assert h.counts[1, 2] == 1

    def test_clamping(self):
        h = self.make()
        h.add_samples(np.array([-0.5, 1.5, 0.5]), np.array([0.5, 0.5, 2.0]))
        assert h.counts.sum() == 3
        assert h.clamped == 3
        assert h.counts[0, 2] == 1  # low-x clamp
        assert h.counts[3, 2] == 1  # high-x clamp

    def test_top_edge_inclusive(self):
        h = self.make()
        h.add_samples(np.array([1.0]), np.array([1.0]))
        assert h.counts[3, 3] == 1
        assert h.clamped == 0

    def test_merge(self):
        h1, h2 = self.make(), self.make()
        h1.add_samples(np.array([0.1]), np.array([0.1]))
        h2.add_samples(np.array([0.9]), np.array([0.9]))
        merged = h1 + h2
        assert merged.counts.sum() == 2
        assert merged.counts[0, 0] == 1 and merged.counts[3, 3] == 1

    def test_merge_geometry_mismatch(self):
        with pytest.raises(ValueError):
            self.make(4) + self.make(5)

    def test_csv_round_trip(self, reference_system, tmp_path):
        config = SamplerConfig(seed=0, count=2000, measure="haar-full")
        res = run_scatter(reference_system, ApproachKind.Simple, config, bins=(8, 8))
        path = tmp_path / "hist.csv"
        write_histogram_csv(res.hist_eta, str(path))
        x, y, counts = read_histogram_csv(str(path))
        assert counts.sum() == res.hist_eta.counts.sum()
        assert np.array_equal(counts.reshape(8, 8), res.hist_eta.counts)
        cx, cy = res.hist_eta.bin_centers()
        assert np.allclose(x.reshape(8, 8)[:, 0], cx)
        assert np.allclose(y.reshape(8, 8)[0], cy)

    def test_sidecar(self, reference_system, tmp_path):
        import json

        config = SamplerConfig(seed=12, count=1000, measure="haar-full")
        res = run_scatter(reference_system, ApproachKind.Simple, config, bins=(8, 8))
        path = tmp_path / "hist.json"
        write_histogram_sidecar(
            res.hist_eta, str(path), seed=12, count=1000, approach=ApproachKind.Simple,
            skipped=res.skipped,
        )
        doc = json.loads(path.read_text())
        assert doc["seed"] == 12
        assert doc["approach"] == "simple"
        assert doc["total_binned"] == int(res.hist_eta.counts.sum())
        assert doc["x_norm"] == pytest.approx(np.log(3))


class TestCurveScan:
    def test_values_match_reports(self, reference_system):
        from meesgen import report_global_unitary, solve_beta_g

        grid = np.array([0.3, 0.6, 0.9])
        scan = scan_mees_curve(reference_system, [ApproachKind.GlobalUnitary], grid)
        assert not scan.errors
        norm = expense_norm(reference_system)
        for k, e in enumerate(grid):
            rep = report_global_unitary(reference_system, solve_beta_g(reference_system, e).state)
            assert scan.curves[ApproachKind.GlobalUnitary][0][k] == pytest.approx(rep.eta)
            assert scan.curves[ApproachKind.GlobalUnitary][1][k] == pytest.approx(rep.e_exp / norm)

    def test_grid_bounds_checked(self, reference_system):
        with pytest.raises(ValueError):
            scan_mees_curve(reference_system, [ApproachKind.Simple], np.array([0.0, 0.5]))
        with pytest.raises(ValueError):
            scan_mees_curve(reference_system, [ApproachKind.Simple], np.array([np.log(3)]))

    def test_curve_csv(self, reference_system, tmp_path):
        grid = np.linspace(0.1, 1.0, 10)
        scan = scan_mees_curve(reference_system, list(ApproachKind), grid)
        path = tmp_path / "curve.csv"
        write_curve_csv(scan, str(path))
        lines = path.read_text().strip().splitlines()
        assert lines[0].split(",")[0] == "e_norm"
        assert len(lines) == 11
        data = np.loadtxt(str(path), delimiter=",", skiprows=1)
        assert data.shape == (10, 11)
        assert np.allclose(data[:, 0], grid / np.log(3))


def test_config_validation():
    with pytest.raises(ValueError):
        SamplerConfig(seed=0, count=0, measure="haar-full")
    with pytest.raises(ValueError):
        SamplerConfig(seed=0, count=10, measure="haar-full", workers=0)
