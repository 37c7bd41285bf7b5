import subprocess
import sys

from kidempotent.cli import main
from kidempotent.matrix01 import Matrix01, from_text, to_text

C3_TEXT = to_text(Matrix01.cycle(3))
ONES2_TEXT = to_text(Matrix01.ones(2))
WORKED_TEXT = to_text(Matrix01.from_lists([[0, 1, 1], [0, 1, 1], [0, 0, 0]]))
WORKED_DECOMPOSITION = "n=3\nk=2\nr=1\ns=1\ncycle_lengths=1\nsigma=0,1,2\nX=1\nY=1\n"


def run_cli(args, stdin="", tmp_path=None):
    """Invoke main() in-process, capturing stdout."""
    import io
    from contextlib import redirect_stdout

    old_stdin = sys.stdin
    sys.stdin = io.StringIO(stdin)
    out = io.StringIO()
    try:
        with redirect_stdout(out):
            code = main(args)
    finally:
        sys.stdin = old_stdin
    return code, out.getvalue()


class TestCheck:
    def test_accepts_cycle(self, tmp_path):
        path = tmp_path / "c3.txt"
        path.write_text(C3_TEXT)
        code, out = run_cli(["check", "--k", "4", str(path)])
        assert code == 0
        assert out == "k-idempotent\n"

    def test_rejects_all_ones(self, tmp_path):
        path = tmp_path / "j2.txt"
        path.write_text(ONES2_TEXT)
        code, out = run_cli(["check", "--k", "2", str(path)])
        assert code == 1
        assert out == "not k-idempotent: witness (0,0)\n"

    def test_k_below_two_is_usage_error(self):
        code, _ = run_cli(["check", "--k", "1"], stdin=C3_TEXT)
        assert code == 2

    def test_malformed_matrix_is_usage_error(self):
        code, _ = run_cli(["check", "--k", "2"], stdin="2\n01\n0x\n")
        assert code == 2

    def test_missing_file_is_usage_error(self):
        code, _ = run_cli(["check", "--k", "2", "/nonexistent/matrix.txt"])
        assert code == 2

    def test_reads_stdin(self):
        code, out = run_cli(["check", "--k", "2"], stdin=WORKED_TEXT)
        assert code == 0


class TestDecomposeCompose:
    def test_decompose_worked_example(self):
        code, out = run_cli(["decompose", "--k", "2"], stdin=WORKED_TEXT)
        assert code == 0
        assert out == WORKED_DECOMPOSITION

    def test_decompose_rejection_report(self):
        code, out = run_cli(["decompose", "--k", "2"], stdin=ONES2_TEXT)
        assert code == 1
        assert out == "error=NotZeroOne\nwitness=0,0\n"

    def test_compose_rebuilds_matrix(self):
        code, out = run_cli(["compose"], stdin=WORKED_DECOMPOSITION)
        assert code == 0
        assert out == WORKED_TEXT

    def test_compose_cycle_length_invalid(self):
        bad = "n=2\nk=4\nr=0\ns=0\ncycle_lengths=2\nsigma=0,1\nY=\nY=\n"
        code, out = run_cli(["compose", "--k", "4"], stdin=bad)
        assert code == 1
        assert out.startswith("error=CycleLengthInvalid\n")

    def test_compose_rejects_malformed(self):
        code, _ = run_cli(["compose"], stdin="nonsense\n")
        assert code == 2

    def test_round_trip_fixed_point(self):
        # decompose | compose | decompose is the identity on serializations
        matrices = [
            Matrix01.cycle(2),
            Matrix01.identity(3),
            Matrix01.from_lists([[1, 0, 1], [0, 1, 1], [0, 0, 0]]),
            Matrix01(0, ()),
        ]
        for a in matrices:
            k = "3" if a is matrices[0] else "2"
            code, first = run_cli(["decompose", "--k", k], stdin=to_text(a))
            assert code == 0
            code, rebuilt = run_cli(["compose"], stdin=first)
            assert code == 0
            assert from_text(rebuilt) == a
            code, second = run_cli(["decompose", "--k", k], stdin=rebuilt)
            assert code == 0
            assert second == first

    def test_compose_applies_relabeling(self):
        # a non-canonical matrix must come back in its original labeling
        a = Matrix01.from_lists([[0, 0, 0], [1, 1, 0], [1, 1, 0]])
        scrambled = to_text(a)
        code, serial = run_cli(["decompose", "--k", "2"], stdin=scrambled)
        assert code == 0
        code, rebuilt = run_cli(["compose"], stdin=serial)
        assert code == 0
        assert rebuilt == scrambled


class TestScalarCommands:
    def test_gamma(self):
        code, out = run_cli(["gamma", "--n", "4"])
        assert code == 0
        assert out == "6\n"

    def test_gamma_rejects_zero(self):
        code, _ = run_cli(["gamma", "--n", "0"])
        assert code == 2

    def test_index_cycle(self, tmp_path):
        path = tmp_path / "c2.txt"
        path.write_text(to_text(Matrix01.cycle(2)))
        code, out = run_cli(["index", str(path)])
        assert code == 0
        assert out == "3\n"

    def test_index_none(self):
        code, out = run_cli(["index"], stdin="2\n01\n00\n")
        assert code == 1
        assert out == "none\n"


class TestExtremalCommand:
    def test_lists_families_with_matrices(self):
        code, out = run_cli(["extremal", "--n", "3", "--k", "2"])
        assert code == 0
        blocks = out.split("\n\n")
        assert len(blocks) == 3
        first = blocks[0].splitlines()
        assert first[0].startswith("variant=A n=3 k=2 r=1 s=1 ")
        assert from_text("\n".join(first[1:]) + "\n") == Matrix01.from_lists(
            [[0, 1, 1], [0, 1, 1], [0, 0, 0]]
        )

    def test_deterministic(self):
        out1 = run_cli(["extremal", "--n", "4", "--k", "3"])
        out2 = run_cli(["extremal", "--n", "4", "--k", "3"])
        assert out1 == out2


class TestCensusCommand:
    def test_small_census(self):
        code, out = run_cli(["census", "--n", "3", "--k", "2"])
        assert code == 0
        lines = dict(line.split("=", 1) for line in out.strip().splitlines())
        assert lines["total_k_idempotent"] == "50"
        assert lines["max_nnz"] == "4"
        assert lines["characterization_ok"] == "true"

    def test_order_five_needs_flag(self):
        code, _ = run_cli(["census", "--n", "5", "--k", "2"])
        assert code == 2


class TestInstalledEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "kidempotent", "gamma", "--n", "5"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout == "9\n"

    def test_usage_error_exit_code(self):
        proc = subprocess.run(
            [sys.executable, "-m", "kidempotent", "nonsense"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 2
