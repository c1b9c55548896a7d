"""End-to-end tests for the command-line interface and figure output."""

import math

import numpy as np
import pytest

from perronpoly.cli import main, read_density_csv, write_density_csv
from perronpoly.density import from_masses


class TestBasis:
    def test_degree_one_prints_rationals(self, capsys):
        assert main(["basis", "--n", "1"]) == 0
        out = capsys.readouterr().out
        assert "l_{1,0}(t) = 1/2 - 1*t" in out
        assert "l_{1,1}(t) = 1/2 + 1*t" in out

    def test_degree_two_coefficients(self, capsys):
        assert main(["basis", "--n", "2"]) == 0
        out = capsys.readouterr().out
        assert "13/8 - 27/8*t^2" in out

    def test_bad_degree_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["basis", "--n", "99"])
        assert exc.value.code == 2

    def test_basis2d_lists_four_functions(self, capsys):
        assert main(["basis2d"]) == 0
        out = capsys.readouterr().out
        assert out.count("l_{1,") == 4
        assert "1/4" in out


class TestDensity:
    def test_writes_csv_and_figure(self, tmp_path, capsys):
        out = tmp_path / "d.csv"
        assert main(
            ["density", "--map", "g1", "--cells", "8", "--degree", "1",
             "--out", str(out)]
        ) == 0
        assert out.exists()
        assert (tmp_path / "d.png").exists()
        text = capsys.readouterr().out
        assert "total_mass = 1.0" in text
        assert "l1_error" in text

    def test_round_trip_through_csv(self, tmp_path):
        rng = np.random.default_rng(4)
        masses = rng.uniform(0.1, 1.0, 12)
        masses /= masses.sum()
        pd = from_masses(masses, 2)
        path = tmp_path / "pd.csv"
        write_density_csv(pd, str(path))
        back = read_density_csv(str(path))
        assert back.n == pd.n and back.partition.N == pd.partition.N
        for p, q in zip(pd.group_polys, back.group_polys):
            assert np.allclose(p.coeffs, q.coeffs, atol=1e-15)

    def test_indivisible_cells_exit_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["density", "--map", "g1", "--cells", "10", "--degree", "2"])
        assert exc.value.code == 2

    def test_unknown_map_exit_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["density", "--map", "zzz", "--cells", "8", "--degree", "0"])
        assert exc.value.code == 2


class TestLyapunov:
    def test_reports_sigma_and_error(self, capsys):
        assert main(["lyapunov", "--map", "g1", "--cells", "16", "--degree", "1"]) == 0
        out = capsys.readouterr().out
        sigma = float(out.split("sigma = ")[1].split()[0])
        assert sigma == pytest.approx(math.log(2.0), abs=1e-3)
        assert "abs_error" in out

    def test_quad_override(self, capsys):
        assert main(
            ["lyapunov", "--map", "tent", "--cells", "4", "--degree", "0",
             "--quad", "8"]
        ) == 0
        assert "m=8" in capsys.readouterr().out


class TestStudy:
    def test_study_writes_csv_and_figure(self, tmp_path, capsys):
        out = tmp_path / "study.csv"
        assert main(
            ["study", "--map", "g1", "--degrees", "0,1", "--cells", "8,16",
             "--target", "density", "--out", str(out)]
        ) == 0
        assert (tmp_path / "study.png").exists()
        lines = out.read_text().strip().splitlines()
        assert lines[0].startswith("map_name,")
        assert len(lines) == 5
        text = capsys.readouterr().out
        assert "n=0:" in text and "n=1:" in text

    def test_study_warns_on_skipped_cells(self, tmp_path, capsys):
        out = tmp_path / "s.csv"
        assert main(
            ["study", "--map", "tent", "--degrees", "2", "--cells", "8,9",
             "--out", str(out)]
        ) == 0
        text = capsys.readouterr().out
        assert "skipping N=8" in text

    def test_exact_case_reported(self, tmp_path, capsys):
        out = tmp_path / "t.csv"
        assert main(
            ["study", "--map", "tent", "--degrees", "0", "--cells", "8,16",
             "--out", str(out)]
        ) == 0
        assert "exact" in capsys.readouterr().out


class TestDeterminism:
    def test_density_csv_is_byte_identical_across_runs(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            main(["density", "--map", "g2", "--cells", "12", "--degree", "2",
                  "--out", str(out)])
        assert a.read_bytes() == b.read_bytes()

    def test_study_csv_identical_up_to_wall_time(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            main(["study", "--map", "g1", "--degrees", "0,1", "--cells", "8,16",
                  "--target", "both", "--out", str(out)])

        def strip_wall_time(path):
            lines = path.read_text().strip().splitlines()
            return [",".join(line.split(",")[:-1]) for line in lines]

        assert strip_wall_time(a) == strip_wall_time(b)


def test_missing_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
