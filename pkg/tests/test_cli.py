import numpy as np
import pytest

from qcbp import io as qio
from qcbp.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


GEN_ARGS = [
    "generate", "--d", "100", "--ps", "0.4", "--pm", "0.05",
    "--eta", "0.1", "--seed", "7",
]


class TestGenerate:
    def test_writes_instance_and_summary(self, capsys, tmp_path):
        out_dir = tmp_path / "p1"
        code, out, _ = run(capsys, *GEN_ARGS, "--out", str(out_dir))
        assert code == 0
        assert "d=100 m=5 k=40" in out
        inst = qio.read_instance(out_dir / "instance.manifest")
        assert inst.A.shape == (5, 100)

    def test_missing_required_flag_exits_2(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["generate", "--ps", "0.4", "--pm", "0.05",
                  "--eta", "0.1", "--seed", "7", "--out", str(tmp_path)])
        assert exc.value.code == 2

    def test_same_seed_identical_files(self, capsys, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run(capsys, *GEN_ARGS, "--out", str(a))
        run(capsys, *GEN_ARGS, "--out", str(b))
        assert (a / "A.mtx").read_text() == (b / "A.mtx").read_text()
        assert (a / "y.mtx").read_text() == (b / "y.mtx").read_text()

    def test_invalid_params_exit_2(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "generate", "--d", "100", "--ps", "0.4", "--pm", "0.05",
            "--eta", "-1", "--seed", "7", "--out", str(tmp_path),
        )
        assert code == 2
        assert "eta" in err


class TestSolve:
    @pytest.fixture
    def manifest(self, capsys, tmp_path):
        out_dir = tmp_path / "inst"
        run(capsys, "generate", "--d", "60", "--ps", "0.4", "--pm", "0.2",
            "--eta", "0.1", "--seed", "5", "--slack", "--out", str(out_dir))
        return out_dir / "instance.manifest"

    def test_solve_converges_exit_0(self, capsys, manifest):
        code, out, _ = run(capsys, "solve", "--problem", str(manifest))
        assert code == 0
        assert "status: Converged" in out
        assert "objective:" in out

    def test_trivial_instance_objective_zero(self, capsys, tmp_path):
        # ||y|| <= eta: the zero vector is optimal
        from qcbp.instance import ProblemInstance

        inst = ProblemInstance(
            A=np.ones((1, 4)), y=np.array([0.2]), eta=0.5
        )
        qio.write_instance(inst, tmp_path)
        code, out, _ = run(
            capsys, "solve", "--problem", str(tmp_path / "instance.manifest")
        )
        assert code == 0
        assert "objective: 0" in out

    def test_max_iter_cap_exit_3(self, capsys, manifest):
        code, out, _ = run(
            capsys, "solve", "--problem", str(manifest), "--max-iter", "1"
        )
        assert code == 3
        assert "MaxIterReached" in out

    def test_unreadable_manifest_exit_2(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "solve", "--problem", str(tmp_path / "missing.manifest")
        )
        assert code == 2
        assert "missing.manifest" in err

    def test_history_csv_written(self, capsys, manifest, tmp_path):
        csv_path = tmp_path / "hist.csv"
        code, _, _ = run(
            capsys, "solve", "--problem", str(manifest), "--history", str(csv_path)
        )
        assert code == 0
        lines = csv_path.read_text().splitlines()
        assert lines[0] == "iter,r_p,r_d,gap,objective"
        assert len(lines) > 1


class TestBench:
    def test_two_sizes_csv(self, capsys, tmp_path):
        out_csv = tmp_path / "bench.csv"
        code, out, _ = run(
            capsys, "bench", "--sizes", "60,100", "--ps", "0.4", "--pm", "0.1",
            "--eta", "0.1", "--repeats", "1", "--seed", "3",
            "--out", str(out_csv),
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("d,m,iterations,time_sec,status,objective,gap")
        assert len(lines) == 3
        assert out_csv.read_text().strip().splitlines() == lines

    def test_repeats_same_iterates(self, capsys):
        code1, out1, _ = run(
            capsys, "bench", "--sizes", "60", "--pm", "0.1", "--repeats", "1",
            "--seed", "3",
        )
        code3, out3, _ = run(
            capsys, "bench", "--sizes", "60", "--pm", "0.1", "--repeats", "3",
            "--seed", "3",
        )
        assert code1 == code3 == 0

        def strip_time(text):
            rows = [r.split(",") for r in text.strip().splitlines()[1:]]
            return [r[:3] + r[4:] for r in rows]

        assert strip_time(out1) == strip_time(out3)

    def test_bad_sizes_exit_2(self, capsys):
        code, _, err = run(capsys, "bench", "--sizes", "abc")
        assert code == 2
