import numpy as np
import pytest

from meesplots import EmptyInput, SchemaError, read_curves, read_histogram


class TestHistogramReader:
    def test_round_trip_from_cli(self, cli_outputs):
        grid = read_histogram(str(cli_outputs / "scatter_simple_eexp.csv"))
        assert grid.bins_x == 24 and grid.bins_y == 24
        assert grid.counts.sum() > 0
        assert grid.sidecar["approach"] == "simple"
        assert grid.sidecar["total_binned"] == int(grid.counts.sum())
        assert np.all(grid.x_centers >= 0) and np.all(grid.x_centers <= 1)
        assert np.all(np.diff(grid.x_centers) > 0)

    def test_both_tags_parse(self, cli_outputs):
        for tag in ("eta", "eexp"):
            grid = read_histogram(str(cli_outputs / f"scatter_simple_{tag}.csv"))
            assert grid.counts.shape == (24, 24)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("# x_norm,y_norm,count\n")
        with pytest.raises(EmptyInput):
            read_histogram(str(path))

    def test_wrong_column_count(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("0.5,1\n")
        with pytest.raises(SchemaError):
            read_histogram(str(path))

    def test_non_numeric(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n")
        with pytest.raises(SchemaError):
            read_histogram(str(path))

    def test_ragged_grid(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("0.1,0.1,1\n0.1,0.9,2\n0.9,0.1,3\n")
        with pytest.raises(SchemaError):
            read_histogram(str(path))

    def test_sidecar_disagreement(self, tmp_path):
        csv = tmp_path / "h.csv"
        csv.write_text("0.25,0.25,1\n0.25,0.75,0\n0.75,0.25,0\n0.75,0.75,2\n")
        (tmp_path / "h.json").write_text('{"bins_x": 5, "bins_y": 2}')
        with pytest.raises(SchemaError):
            read_histogram(str(csv))

    def test_single_cell(self, tmp_path):
        path = tmp_path / "one.csv"
        path.write_text("# x_norm,y_norm,count\n0.5,0.5,7\n")
        grid = read_histogram(str(path))
        assert grid.counts.shape == (1, 1)
        assert grid.counts[0, 0] == 7


class TestCurveReader:
    def test_scan_output(self, cli_outputs):
        table = read_curves(str(cli_outputs / "mees_scan.csv"))
        assert set(table.eta) == set(table.expense)
        assert len(table.eta) == 5
        assert table.e_norm.size == 30
        for name, y in table.eta.items():
            assert np.all((y > 0) & (y <= 1)), name

    def test_overlay_output(self, cli_outputs):
        table = read_curves(str(cli_outputs / "mees_overlay_simple.csv"))
        assert list(table.eta) == ["simple"]
        assert np.all(np.diff(table.e_norm) > 0)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(EmptyInput):
            read_curves(str(path))

    def test_header_only(self, tmp_path):
        path = tmp_path / "hdr.csv"
        path.write_text("e_norm,simple_eta\n")
        with pytest.raises(EmptyInput):
            read_curves(str(path))

    def test_bad_first_column(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,simple_eta\n0.5,0.5\n")
        with pytest.raises(SchemaError):
            read_curves(str(path))

    def test_unknown_column(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("e_norm,simple_cost\n0.5,0.5\n")
        with pytest.raises(SchemaError):
            read_curves(str(path))
