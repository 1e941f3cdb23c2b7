import math

import numpy as np
import pytest

from qcbp import io as qio
from qcbp.instance import GeneratorParams, generate
from qcbp.solver import IterationRecord, SolveReport, SolveStatus, solve


@pytest.fixture
def instance():
    return generate(GeneratorParams(d=20, p_s=0.4, p_m=0.2, eta=0.3, seed=13))


class TestMatrixMarket:
    def test_round_trip_matrix(self, tmp_path):
        rng = np.random.default_rng(0)
        M = rng.standard_normal((4, 7))
        path = tmp_path / "M.mtx"
        qio.write_matrix(M, path)
        back = qio.read_matrix(path)
        assert np.array_equal(M, back)

    def test_round_trip_vector(self, tmp_path):
        v = np.array([1.0, -2.5, 1e-300, 3.141592653589793])
        path = tmp_path / "v.mtx"
        qio.write_matrix(v, path)
        assert np.array_equal(qio.read_vector(path), v)

    def test_header_is_standard(self, tmp_path):
        path = tmp_path / "M.mtx"
        qio.write_matrix(np.eye(2), path)
        first = path.read_text().splitlines()[0]
        assert first == "%%MatrixMarket matrix array real general"

    def test_third_party_reader_accepts_output(self, tmp_path):
        import scipy.io

        rng = np.random.default_rng(1)
        M = rng.standard_normal((3, 5))
        path = tmp_path / "M.mtx"
        qio.write_matrix(M, path)
        assert np.array_equal(scipy.io.mmread(path), M)

    def test_reads_coordinate_format(self, tmp_path):
        path = tmp_path / "coo.mtx"
        path.write_text(
            "%%MatrixMarket matrix coordinate real general\n"
            "2 3 2\n"
            "1 2 5.0\n"
            "2 3 -1.5\n"
        )
        M = qio.read_matrix(path)
        expected = np.zeros((2, 3))
        expected[0, 1] = 5.0
        expected[1, 2] = -1.5
        assert np.array_equal(M, expected)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError, match="not found"):
            qio.read_matrix(tmp_path / "absent.mtx")

    def test_malformed_header_names_line(self, tmp_path):
        path = tmp_path / "bad.mtx"
        path.write_text("%%NotMatrixMarket\n1 1\n0.0\n")
        with pytest.raises(qio.MatrixMarketError, match="line 1"):
            qio.read_matrix(path)

    def test_bad_entry_names_line(self, tmp_path):
        path = tmp_path / "bad.mtx"
        path.write_text(
            "%%MatrixMarket matrix array real general\n2 1\n1.0\nnot-a-number\n"
        )
        with pytest.raises(qio.MatrixMarketError, match="line 4"):
            qio.read_matrix(path)

    def test_entry_count_mismatch(self, tmp_path):
        path = tmp_path / "bad.mtx"
        path.write_text("%%MatrixMarket matrix array real general\n2 2\n1.0\n")
        with pytest.raises(qio.MatrixMarketError, match="expected 4 entries"):
            qio.read_matrix(path)


class TestInstanceRoundTrip:
    def test_exact_round_trip(self, instance, tmp_path):
        manifest = qio.write_instance(instance, tmp_path)
        back = qio.read_instance(manifest.manifest_path)
        assert np.array_equal(back.A, instance.A)
        assert np.array_equal(back.y, instance.y)
        assert back.eta == instance.eta
        assert np.array_equal(back.ground_truth_x, instance.ground_truth_x)
        assert np.array_equal(back.noise, instance.noise)
        assert back.seed == instance.seed

    def test_missing_manifest(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            qio.read_instance(tmp_path / "nope.manifest")

    def test_missing_matrix_file(self, instance, tmp_path):
        manifest = qio.write_instance(instance, tmp_path)
        manifest.matrix_path.unlink()
        with pytest.raises(FileNotFoundError, match="A.mtx"):
            qio.read_instance(manifest.manifest_path)

    def test_bad_eta_rejected(self, instance, tmp_path):
        manifest = qio.write_instance(instance, tmp_path)
        text = manifest.manifest_path.read_text()
        manifest.manifest_path.write_text(
            text.replace(f"eta = {instance.eta:.17g}", "eta = -1.0")
        )
        with pytest.raises(ValueError, match="eta"):
            qio.read_instance(manifest.manifest_path)

    def test_dimension_mismatch_between_files(self, instance, tmp_path):
        manifest = qio.write_instance(instance, tmp_path)
        qio.write_matrix(np.zeros(3), manifest.y_path)  # wrong length
        with pytest.raises(ValueError, match="invalid instance"):
            qio.read_instance(manifest.manifest_path)

    def test_missing_required_key(self, instance, tmp_path):
        manifest = qio.write_instance(instance, tmp_path)
        lines = [
            ln for ln in manifest.manifest_path.read_text().splitlines()
            if not ln.startswith("eta")
        ]
        manifest.manifest_path.write_text("\n".join(lines) + "\n")
        with pytest.raises(ValueError, match="eta"):
            qio.read_instance(manifest.manifest_path)


def make_report(history):
    final = history[-1] if history else IterationRecord(0, 0.0, 0.0, math.inf, 0.0)
    return SolveReport(
        status=SolveStatus.CONVERGED,
        solution_x=np.zeros(2),
        iterations=len(history),
        final=final,
        history=history,
    )


class TestHistory:
    def test_empty_history(self, tmp_path):
        path = tmp_path / "h.csv"
        qio.write_history(make_report([]), path)
        assert path.read_text().splitlines() == ["iter,r_p,r_d,gap,objective"]

    def test_three_records_four_lines(self, tmp_path):
        history = [
            IterationRecord(1, 0.5, 0.1, math.inf, 3.0),
            IterationRecord(2, 0.25, 0.05, 1.5, 2.5),
            IterationRecord(3, 0.125, 0.025, 0.7, 2.25),
        ]
        path = tmp_path / "h.csv"
        qio.write_history(make_report(history), path)
        assert len(path.read_text().splitlines()) == 4

    def test_infinite_gap_token(self, tmp_path):
        history = [IterationRecord(1, 0.5, 0.1, math.inf, 3.0)]
        path = tmp_path / "h.csv"
        qio.write_history(make_report(history), path)
        row = path.read_text().splitlines()[1]
        assert row.split(",")[3] == "inf"

    def test_round_trip_exact(self, tmp_path):
        history = [
            IterationRecord(1, 1 / 3, 0.1, math.inf, np.pi),
            IterationRecord(2, 1e-17, 2**-40, 0.123456789012345678, 2.5),
        ]
        path = tmp_path / "h.csv"
        qio.write_history(make_report(history), path)
        back = qio.read_history(path)
        assert back == history

    def test_solver_history_round_trips(self, instance, tmp_path):
        report = solve(instance)
        path = tmp_path / "h.csv"
        qio.write_history(report, path)
        assert qio.read_history(path) == report.history
