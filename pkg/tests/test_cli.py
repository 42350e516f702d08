from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction

import pytest

from kparts import cli, serialize


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCompute:
    @pytest.mark.parametrize("method", cli.METHODS[:-2])
    def test_all_integer_methods_agree(self, capsys, method):
        code, out, _ = run_cli(capsys, "compute", "--which", "p", "--n", "8",
                               "--k", "3", "--method", method)
        assert code == 0 and out.strip() == "5"

    def test_q_by_dp(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "--which", "q", "--n", "8",
                               "--k", "3", "--method", "dp")
        assert code == 0 and out.strip() == "2"

    def test_dp_below_domain_is_zero(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "--which", "p", "--n", "2",
                               "--k", "3", "--method", "dp")
        assert code == 0 and out.strip() == "0"

    def test_bernoulli3(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "--which", "q", "--n", "9",
                               "--k", "3", "--method", "bernoulli3")
        assert code == 0 and out.strip() == "3"

    def test_polypart_prints_fraction(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "--which", "p", "--n", "8",
                               "--k", "3", "--method", "polypart")
        assert code == 0 and out.strip() == "377/72"

    def test_domain_violation_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "compute", "--which", "p", "--n", "2",
                               "--k", "3", "--method", "tuplesum")
        assert code == 2 and "domain violation" in err

    def test_bernoulli3_wrong_k_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "compute", "--which", "p", "--n", "9",
                               "--k", "4", "--method", "bernoulli3")
        assert code == 2 and "k = 3" in err

    def test_json_envelope(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "--which", "p", "--n", "8",
                               "--k", "3", "--method", "tuplesum",
                               "--format", "json")
        assert code == 0
        env = json.loads(out)
        assert env["command"] == "compute"
        assert env["provenance"] == "tuplesum"
        assert env["outputs"]["value"] == 5
        assert isinstance(env["timing_ms"], (int, float))

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(capsys, "compute", "--which", "p", "--n", "8",
                               "--k", "3", "--method", "binom",
                               "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert code == 0
        assert rows[0] == ["which", "n", "k", "method", "value"]
        assert rows[1] == ["p", "8", "3", "binom", "5"]


class TestEnvelopeRoundTrip:
    def test_exact_values_survive(self):
        env = serialize.envelope(
            "demo",
            {"n": 8, "k": 3},
            {"value": Fraction(-377, 72), "big": 2 ** 77, "name": "w"},
            "unit",
            1.25)
        parsed = serialize.envelope_from_json(serialize.envelope_to_json(env))
        assert parsed["inputs"] == {"n": 8, "k": 3}
        assert parsed["outputs"] == {"value": Fraction(-377, 72),
                                     "big": 2 ** 77, "name": "w"}
        assert parsed["command"] == "demo" and parsed["provenance"] == "unit"

    def test_no_floats_in_rendered_values(self):
        env = serialize.envelope("demo", {}, {"v": Fraction(1, 3)}, "unit", 0.0)
        text = serialize.envelope_to_json(env)
        assert '"1/3"' in text


class TestVerify:
    def test_small_grid_exits_zero(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--kmax", "3", "--nmax", "60")
        assert code == 0
        assert "RESULT" in out and "FAIL" not in out

    def test_kmax_one_trivial(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--kmax", "1", "--nmax", "30")
        assert code == 0

    def test_quasipoly_module_reports_convention(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--kmax", "2", "--nmax", "40",
                               "--modules", "quasipoly")
        assert code == 0
        assert "det_nonzero" in out
        assert "accepted=corrected" in out
        assert "FAILS the residual test" in out

    def test_waves_module_reports_convention(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--kmax", "2", "--nmax", "40",
                               "--modules", "waves")
        assert code == 0
        assert "accepted=primitive-twist" in out
        assert "printed form fails" in out

    def test_deterministic_output(self, capsys):
        def strip_timing(text: str) -> str:
            return re.sub(r"\(timing: [0-9.]+s\)", "", text)

        _, first, _ = run_cli(capsys, "verify", "--kmax", "2", "--nmax", "40")
        _, second, _ = run_cli(capsys, "verify", "--kmax", "2", "--nmax", "40")
        assert strip_timing(first) == strip_timing(second)


class TestTableCommands:
    def test_delta_k1(self, capsys):
        code, out, _ = run_cli(capsys, "delta", "--k", "1")
        assert code == 0 and out.strip() == "1/2"

    def test_delta_json(self, capsys):
        code, out, _ = run_cli(capsys, "delta", "--k", "2", "--format", "json")
        env = serialize.envelope_from_json(out)
        assert code == 0 and env["outputs"]["det"] == Fraction(-1, 14745600)

    def test_waves_k2_n7(self, capsys):
        code, out, _ = run_cli(capsys, "waves", "--k", "2", "--n", "7")
        lines = out.strip().splitlines()
        assert code == 0
        assert lines[0] == "W1(7) = 17/4"
        assert lines[1] == "W2(7) = -1/4"
        assert lines[2] == "sum = 4"

    def test_fhist_k3(self, capsys):
        code, out, _ = run_cli(capsys, "fhist", "--k", "3")
        rows = list(csv.reader(io.StringIO(out)))
        assert code == 0
        assert rows[0] == ["n", "f"]
        values = [int(r[1]) for r in rows[1:]]
        assert len(values) == 13
        assert sum(values) == 36
        assert values == values[::-1]

    def test_density_csv(self, capsys):
        code, out, err = run_cli(capsys, "density", "--kmax", "2",
                                 "--mods", "2", "--N", "5000")
        rows = list(csv.reader(io.StringIO(out)))
        assert code == 0 and not err
        assert rows[0] == ["k", "m", "i", "density_num", "density_den",
                           "period", "certified", "bound_holds"]
        assert len(rows) == 5  # header + (k, i) grid for m = 2
        assert all(r[6] == "true" and r[7] == "true" for r in rows[1:])
        # pinned k = 2 odd density
        k2_odd = next(r for r in rows[1:] if r[0] == "2" and r[2] == "1")
        assert (k2_odd[3], k2_odd[4]) == ("1", "2")
