"""
Tests for the command-line interface.
"""

from pathlib import Path
from unittest.mock import Mock

import pytest
from click.testing import CliRunner

from power_cover import cli as cli_module
from power_cover.cli import cli
from power_cover.commands import sweep_command
from power_cover.core.instance import parse_instance, parse_solution

EDGE = "p pvc 2 1\ne 1 2 5\n"
STAR = "p pvc 6 5\n" + "".join(f"e 1 {v} 1\n" for v in range(2, 7))
LP_GAP = "p pvc 5 6\ne 1 2 2\ne 3 4 2\ne 5 1 1\ne 5 2 1\ne 5 3 1\ne 5 4 1\n"
DIRECTED = "p dpvc 2 1\ne 1 2 3 1\n"


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Run every command from an empty directory with no configuration in the environment."""
    monkeypatch.chdir(tmp_path)
    for key in ("ORACLE_EDGE_LIMIT", "DEFAULT_ENGINE", "DEFAULT_EPS", "SWEEP_WORKERS"):
        monkeypatch.delenv(f"POWER_COVER_{key}", raising=False)
    monkeypatch.delenv("POWER_COVER_PARALLEL_SWEEP", raising=False)


@pytest.fixture
def run():
    runner = CliRunner()

    def _run(*args: str):
        return runner.invoke(cli, list(args), obj={})

    return _run


def _fields(output: str) -> dict:
    return dict(line.split("=", 1) for line in output.splitlines() if "=" in line)


class TestSolveCommand:
    """Test suite for ``power-cover solve``."""

    def test_optimize_brute(self, run, write_text):
        """Test an optimization run printing the report and the witness."""
        result = run("solve", write_text("edge.gr", EDGE), "-e", "brute")

        assert result.exit_code == 0
        fields = _fields(result.output)
        assert fields["instance"] == "edge.gr"
        assert fields["mode"] == "optimization"
        assert fields["value"] == "5"
        assert fields["support"] == "1"
        assert parse_solution(result.output[result.output.index("s "):]).value == 5

    def test_decision_yes_and_no(self, run, write_text):
        """Test that a NO answer exits with 1."""
        path = write_text("edge.gr", EDGE)

        no = run("solve", path, "-e", "branch-p", "--P", "4")
        assert no.exit_code == 1
        assert "answer=NO" in no.output

        yes = run("solve", path, "-e", "branch-p", "--P", "5")
        assert yes.exit_code == 0
        assert "answer=YES" in yes.output
        assert "parameter=P=5" in yes.output

    def test_support_decision(self, run, write_text):
        """Test a support budget with the cover-set search."""
        result = run("solve", write_text("star.gr", STAR), "-e", "hybrid-k", "--k", "1")

        assert result.exit_code == 0
        assert _fields(result.output)["support"] == "1"

    def test_wrong_budget_kind(self, run, write_text):
        """Test that a support budget is refused by a power engine."""
        result = run("solve", write_text("edge.gr", EDGE), "-e", "branch-p", "--k", "1")

        assert result.exit_code == 2
        assert result.output.startswith("error=")

    def test_malformed_instance(self, run, write_text):
        """Test that parse errors carry the line number and exit 2."""
        result = run("solve", write_text("bad.gr", "p pvc 2 1\ne 1 1 5\n"), "-e", "brute")

        assert result.exit_code == 2
        assert "line 2" in result.output

    def test_witness_file(self, run, write_text, tmp_path):
        """Test that --output writes a witness that verify accepts."""
        instance = write_text("edge.gr", EDGE)
        witness = str(tmp_path / "edge.sol")

        result = run("solve", instance, "-e", "tw-exact", "-o", witness)
        assert result.exit_code == 0
        assert f"witness={witness}" in result.output
        assert "v " not in result.output

        check = run("verify", instance, witness)
        assert check.exit_code == 0
        assert "feasible=true" in check.output

    def test_tw_approx(self, run, write_text):
        """Test the approximation engine with the default accuracy."""
        result = run("solve", write_text("edge.gr", EDGE), "-e", "tw-approx")

        assert result.exit_code == 0
        fields = _fields(result.output)
        assert fields["parameter"] == "eps=1/2"
        assert fields["value"] == "5"

    def test_bad_eps(self, run, write_text):
        """Test that a non-positive accuracy is refused."""
        result = run("solve", write_text("edge.gr", EDGE), "-e", "tw-approx", "--eps", "0")

        assert result.exit_code == 2

    def test_given_decomposition(self, run, write_text):
        """Test that a .td file is used by the tw engines and refused by others."""
        instance = write_text("edge.gr", EDGE)
        td = write_text("edge.td", "s td 1 2 2\nb 1 1 2\n")

        result = run("solve", instance, "-e", "tw-exact", "--td", td)
        assert result.exit_code == 0
        assert _fields(result.output)["value"] == "5"

        refused = run("solve", instance, "-e", "brute", "--td", td)
        assert refused.exit_code == 2

    def test_default_engine_from_environment(self, run, write_text, monkeypatch):
        """Test that the configured engine is used when none is given."""
        monkeypatch.setenv("POWER_COVER_DEFAULT_ENGINE", "brute")
        result = run("solve", write_text("edge.gr", EDGE))

        assert _fields(result.output)["engine"] == "brute"

    def test_pretty(self, run, write_text):
        """Test the table output."""
        result = run("solve", write_text("edge.gr", EDGE), "-e", "brute", "--pretty")

        assert result.exit_code == 0
        assert "Value" in result.output


class TestDebugFlag:
    """Test suite for the group's --debug flag."""

    def test_debug_reaches_config(self, run, write_text, monkeypatch):
        """Test that --debug hands DEBUG to the configuration, which sets up logging."""
        monkeypatch.delenv("POWER_COVER_LOG_LEVEL", raising=False)
        built = Mock(wraps=cli_module.Config)
        monkeypatch.setattr(cli_module, "Config", built)

        result = run("--debug", "solve", write_text("edge.gr", EDGE), "-e", "brute")

        assert result.exit_code == 0
        built.assert_called_once_with(config_file=None, log_level="DEBUG")

    def test_default_level_untouched(self, run, write_text, monkeypatch):
        """Test that without --debug no level is forced."""
        built = Mock(wraps=cli_module.Config)
        monkeypatch.setattr(cli_module, "Config", built)

        run("solve", write_text("edge.gr", EDGE), "-e", "brute")

        built.assert_called_once_with(config_file=None, log_level=None)


class TestVerifyCommand:
    """Test suite for ``power-cover verify``."""

    def test_uncovered_edge(self, run, write_text):
        """Test that a short power is reported per edge."""
        result = run(
            "verify", write_text("edge.gr", EDGE), write_text("low.sol", "s 3 1\nv 1 3\n")
        )

        assert result.exit_code == 1
        assert "feasible=false" in result.output
        assert "uncovered=1 2" in result.output

    def test_vertex_beyond_instance(self, run, write_text):
        """Test that powers on unknown vertices are refused."""
        result = run(
            "verify", write_text("edge.gr", EDGE), write_text("far.sol", "s 5 1\nv 3 5\n")
        )

        assert result.exit_code == 2

    def test_inconsistent_summary(self, run, write_text):
        """Test that a wrong s line is refused."""
        result = run(
            "verify", write_text("edge.gr", EDGE), write_text("bad.sol", "s 4 1\nv 1 5\n")
        )

        assert result.exit_code == 2


class TestKernelCommand:
    """Test suite for ``power-cover kernel``."""

    def test_reduced_with_trace(self, run, write_text, tmp_path):
        """Test the reduced instance and its trace sidecar."""
        output = str(tmp_path / "kernel.gr")
        result = run("kernel", write_text("star.gr", STAR), "--k", "1", "-o", output)

        assert result.exit_code == 0
        fields = _fields(result.output)
        assert fields["status"] == "REDUCED"
        assert fields["n"] == "0"
        assert fields["k_remaining"] == "0"
        assert parse_instance(Path(output).read_text()).n == 0
        trace = Path(f"{output}.trace").read_text().splitlines()
        assert trace[0] == "t adjust 1 1"
        assert trace[-1] == "k 0"

    def test_no_instance(self, run, write_text):
        """Test that a NO kernel exits with 1."""
        result = run("kernel", write_text("star.gr", STAR), "--k", "0")

        assert result.exit_code == 1
        assert "status=NO" in result.output

    def test_negative_k(self, run, write_text):
        """Test that a negative budget is refused."""
        result = run("kernel", write_text("star.gr", STAR), "--k", "-1")

        assert result.exit_code == 2

    def test_echo_without_output(self, run, write_text):
        """Test that the kernel is printed when no file is given."""
        result = run("kernel", write_text("edge.gr", EDGE), "--k", "1")

        assert result.exit_code == 0
        assert "p pvc" in result.output


class TestLpCommand:
    """Test suite for ``power-cover lp``."""

    def test_gap_instance(self, run, write_text):
        """Test the relaxation of the gap instance."""
        result = run("lp", write_text("gap.gr", LP_GAP), "--check-half")

        assert result.exit_code == 0
        fields = _fields(result.output)
        assert fields["value"] == "4"
        assert fields["lower_bound"] == "4"
        assert fields["half_integral"] == "true"
        assert "x 5 0" in result.output.splitlines()

    def test_fractional_values(self, run, write_text):
        """Test that halves are printed as fractions."""
        triangle = "p pvc 3 3\ne 1 2 1\ne 2 3 1\ne 1 3 1\n"
        result = run("lp", write_text("triangle.gr", triangle))

        assert _fields(result.output)["value"] == "3/2"
        assert "x 1 1/2" in result.output.splitlines()

    def test_directed_refused(self, run, write_text):
        """Test that directed instances exit with 2."""
        result = run("lp", write_text("directed.gr", DIRECTED))

        assert result.exit_code == 2


class TestGenCommand:
    """Test suite for ``power-cover gen``."""

    def test_stdout(self, run):
        """Test that an instance is printed when no file is given."""
        result = run("gen", "lp-gap")

        assert result.exit_code == 0
        assert parse_instance(result.output).n == 5

    def test_hardness_file(self, run, tmp_path):
        """Test that the hardness family reports its target."""
        output = str(tmp_path / "hard.gr")
        result = run(
            "gen", "tw-hardness", "--parts", "2", "--n", "2", "--cross-edge", "1:1-2:1",
            "-o", output,
        )

        assert result.exit_code == 0
        fields = _fields(result.output)
        assert fields["target"] == "18"
        assert parse_instance(Path(output).read_text()).n == int(fields["n"]) == 16

    def test_random_is_seeded(self, run):
        """Test that the same seed prints the same instance."""
        first = run("gen", "random", "--n", "6", "--m", "7", "--seed", "3")
        second = run("gen", "random", "--n", "6", "--m", "7", "--seed", "3")

        assert first.output == second.output
        assert parse_instance(first.output).m == 7

    @pytest.mark.parametrize(
        "args",
        [
            ["random", "--n", "3", "--m", "5"],
            ["tw-hardness", "--cross-edge", "1-2"],
            ["clique", "--K", "1", "--n", "3", "--m", "1"],
        ],
    )
    def test_bad_parameters(self, run, args):
        """Test that infeasible parameters exit with 2."""
        assert run("gen", *args).exit_code == 2


class TestSweepCommand:
    """Test suite for ``power-cover sweep``."""

    def test_power_agreement(self, run):
        """Test that the default power engines agree on a small corpus."""
        result = run("sweep", "--count", "6", "--n", "6", "--m", "8", "--seed", "2")

        assert result.exit_code == 0
        fields = _fields(result.output)
        assert fields["agreed"] == "6"
        assert fields["disagreed"] == "0"
        assert fields["engines"] == "brute,branch-p,tw-exact"

    def test_support_agreement(self, run):
        """Test the support engines, kernel included, on directed instances."""
        result = run(
            "sweep", "--family", "dpvc", "--mode", "support", "--count", "6",
            "--n", "6", "--m", "8", "-e", "brute", "-e", "branch-k", "-e", "hybrid-k",
            "-e", "kernel",
        )

        assert result.exit_code == 0
        assert _fields(result.output)["agreed"] == "6"

    def test_unknown_engine(self, run):
        """Test that an engine outside the mode is refused."""
        result = run("sweep", "--count", "1", "-e", "kernel")

        assert result.exit_code == 2

    def test_disagreement_dumped(self, run, tmp_path, monkeypatch):
        """Test that disagreements exit with 3 and are written out."""
        fake = Mock(side_effect=lambda inst, engine, mode, edge_limit=None: len(engine))
        monkeypatch.setattr(sweep_command, "optimum", fake)
        dump = tmp_path / "dump"

        result = run(
            "sweep", "--count", "2", "--n", "4", "--m", "3", "-e", "brute", "-e", "tw-exact",
            "--dump-dir", str(dump),
        )

        assert result.exit_code == 3
        assert "disagreement=0 brute=5 tw-exact=8" in result.output
        assert sorted(p.name for p in dump.iterdir()) == ["disagreement-0.gr", "disagreement-1.gr"]
        assert fake.call_count == 4

    def test_lp_mode(self, run):
        """Test that the lp sweep checks half-integrality with its default engine."""
        result = run("sweep", "--mode", "lp", "--count", "5", "--n", "6", "--m", "8")

        assert result.exit_code == 0
        fields = _fields(result.output)
        assert fields["instances"] == "5"
        assert fields["engines"] == "lp"
        assert fields["agreed"] == "5"

    def test_fptas_mode_with_eps(self, run):
        """Test the fptas sweep at a single accuracy."""
        result = run(
            "sweep", "--mode", "fptas", "--count", "3", "--n", "5", "--m", "6", "--eps", "1/2",
        )

        assert result.exit_code == 0
        assert _fields(result.output)["agreed"] == "3"

    def test_count_defaults_by_mode(self, run, monkeypatch):
        """Test that the lp sweep defaults to 500 instances."""
        fake = Mock(return_value=sweep_command.SweepResult(plan=sweep_command.SweepPlan()))
        monkeypatch.setattr(sweep_command, "run_sweep", fake)

        result = run("sweep", "--mode", "lp")

        assert result.exit_code == 0
        assert fake.call_args.args[0].count == 500
        assert _fields(result.output)["instances"] == "500"

    def test_lp_mode_refuses_directed(self, run):
        """Test that the lp sweep exits with 2 on the directed family."""
        result = run("sweep", "--mode", "lp", "--family", "dpvc", "--count", "1")

        assert result.exit_code == 2
