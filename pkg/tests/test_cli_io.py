import json
import subprocess
import sys
import warnings
from pathlib import Path

import pytest

from invdepth.cache import CACHE_VERSION, CacheKey, cache_load, cache_store, cached_basis
from invdepth.cli import main
from invdepth.corpus import corpus
from invdepth.errors import CapacityError, ScenarioError
from invdepth.groups import MatrixGroup
from invdepth.invariants import InvariantBasis
from invdepth.report import dumps
from invdepth.runner import run_scenario
from invdepth.scenario import Scenario, load_scenario, parse_scenario

ROOT = Path(__file__).resolve().parent.parent
SWAP_TOML = ROOT / "scenarios" / "swap.toml"

MINIMAL = """
p = 2
n = 2
generators = [[[0, 1], [1, 0]]]
"""

BIG_GROUP = """
p = 7
n = 3
generators = [[[3,0,0],[0,1,0],[0,0,1]], [[1,1,0],[0,1,0],[0,0,1]], [[0,0,1],[1,0,0],[0,1,0]]]
"""


class TestScenario:
    def test_minimal_defaults(self):
        sc = parse_scenario(MINIMAL)
        assert sc.cutoff == 8 and sc.seed == 0 and sc.theorems == ("duflot", "es")
        assert sc.group().order == 2

    def test_example_file(self):
        sc = load_scenario(SWAP_TOML)
        assert sc.name == "swap" and sc.carlson == (1, 2)
        assert len(sc.sequences) == 1 and sc.sequences[0].subspace == ((1, 1),)

    def test_parse_error_has_line(self):
        with pytest.raises(ScenarioError, match=r"bad\.toml.*line 2"):
            parse_scenario("p = 2\nn = = 2\ngenerators = []\n", "bad.toml")

    def test_singular_matrix_named(self):
        text = MINIMAL.replace("[[[0, 1], [1, 0]]]", "[[[0, 1], [1, 0]], [[1, 1], [1, 1]]]")
        with pytest.raises(ScenarioError, match=r"generators\[1\].*singular"):
            parse_scenario(text)

    def test_carlson_range(self):
        with pytest.raises(ScenarioError, match=r"s=3 is outside 0..n=2"):
            parse_scenario(MINIMAL + "carlson = [3]\n")

    @pytest.mark.parametrize(
        "extra,pattern",
        [
            ("colour = 1\n", "unknown field"),
            ("theorems = ['nope']\n", "theorems"),
            ("hsop = 'magic'\n", "hsop"),
            ("grading = 'weird'\n", "grading"),
            ("cutoff = 0\n", "cutoff"),
            ("[[sequences]]\npolynomials = [[[[1, 0], 1], [[0, 2], 1]]]\n", "homogeneous"),
            ("[[sequences]]\npolynomials = [[[[1, 0], 2]]]\n", "zero"),
        ],
    )
    def test_field_errors(self, extra, pattern):
        with pytest.raises(ScenarioError, match=pattern):
            parse_scenario(MINIMAL + extra)

    def test_non_prime(self):
        with pytest.raises(ScenarioError, match="prime"):
            parse_scenario(MINIMAL.replace("p = 2", "p = 4"))

    def test_wrong_shape(self):
        with pytest.raises(ScenarioError, match="generators\\[0\\]"):
            parse_scenario(MINIMAL.replace("[[[0, 1], [1, 0]]]", "[[[0, 1, 0], [1, 0, 0]]]"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ScenarioError, match="cannot read"):
            load_scenario(tmp_path / "absent.toml")


class TestCache:
    def test_round_trip_bit_exact(self, tmp_path, groups):
        G = groups["klein4_regular"]
        B = InvariantBasis(G).extend(6)
        path = cache_store(tmp_path, B, 6)
        assert path.name.startswith(f"v{CACHE_VERSION}-p2-n4-")
        loaded = cache_load(tmp_path, G, 6)
        assert loaded == B
        assert all(loaded.basis(d) == B.basis(d) for d in range(7))
        # storing again gives identical bytes
        first = path.read_bytes()
        cache_store(tmp_path, loaded, 6)
        assert path.read_bytes() == first

    def test_miss_on_other_degree(self, tmp_path, groups):
        G = groups["swap"]
        cache_store(tmp_path, InvariantBasis(G).extend(4), 4)
        assert cache_load(tmp_path, G, 5) is None

    def test_reordered_generators_miss(self, tmp_path, groups):
        G = groups["gl2f2"]
        cache_store(tmp_path, InvariantBasis(G).extend(4), 4)
        H = MatrixGroup(2, 2, list(reversed(G.generators)))
        assert CacheKey.for_group(H, 4) != CacheKey.for_group(G, 4)
        assert cache_load(tmp_path, H, 4) is None

    def test_version_mismatch_is_miss(self, tmp_path, groups):
        G = groups["swap"]
        path = cache_store(tmp_path, InvariantBasis(G).extend(3), 3)
        data = json.loads(path.read_text())
        data["version"] = CACHE_VERSION + 1
        path.write_text(json.dumps(data))
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            assert cache_load(tmp_path, G, 3) is None

    def test_corrupt_entry_warns(self, tmp_path, groups):
        G = groups["swap"]
        path = cache_store(tmp_path, InvariantBasis(G).extend(3), 3)
        path.write_text(path.read_text()[:40])
        with pytest.warns(RuntimeWarning, match="corrupt"):
            assert cache_load(tmp_path, G, 3) is None
        # cached_basis recomputes and repairs the entry
        with pytest.warns(RuntimeWarning):
            B = cached_basis(tmp_path, G, 3)
        assert B.hilbert(3) == [1, 1, 2, 2]
        assert cache_load(tmp_path, G, 3) is not None

    def test_no_temp_files_left(self, tmp_path, groups):
        cache_store(tmp_path, InvariantBasis(groups["swap"]).extend(2), 2)
        assert [p.name for p in tmp_path.iterdir() if p.name.startswith(".tmp")] == []


class TestReports:
    def test_deterministic(self):
        sc = load_scenario(SWAP_TOML)
        assert dumps(run_scenario(sc)) == dumps(run_scenario(sc))

    def test_cache_does_not_change_report(self, tmp_path):
        sc = load_scenario(SWAP_TOML)
        a = dumps(run_scenario(sc))
        b = dumps(run_scenario(sc, cache_dir=tmp_path))
        c = dumps(run_scenario(sc, cache_dir=tmp_path))
        assert a == b == c

    def test_structure(self):
        report = run_scenario(load_scenario(SWAP_TOML))
        assert report["format"] == "invdepth-report" and report["version"] == 1
        assert report["status"] == "pass"
        assert "timings" not in report
        assert report["results"]["hilbert"]["dimensions"][:4] == [1, 1, 2, 2]
        assert report["results"]["depth"]["depth"] == 2

    def test_timings_opt_in(self):
        report = run_scenario(load_scenario(SWAP_TOML), timings=True)
        assert set(report["timings"]) == {"enumerate", "invariants", "depth", "theorems"}

    def test_capacity_phase(self):
        with pytest.raises(CapacityError) as info:
            run_scenario(parse_scenario(BIG_GROUP))
        assert info.value.phase == "enumerate"


class TestCLI:
    def test_run_passes(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        assert main(["run", str(SWAP_TOML), "--report-out", str(out)]) == 0
        assert json.loads(out.read_text())["status"] == "pass"

    def test_run_stdout_matches_file(self, tmp_path, capsys):
        out = tmp_path / "r.json"
        main(["run", str(SWAP_TOML), "--report-out", str(out)])
        capsys.readouterr()
        assert main(["run", str(SWAP_TOML)]) == 0
        assert capsys.readouterr().out == out.read_text()

    def test_hilbert_topological(self, capsys):
        assert main(["hilbert", "--group", "swap", "--cutoff", "4", "--grading", "topological"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["results"]["hilbert"] == {"degrees": [0, 2, 4, 6, 8], "dimensions": [1, 1, 2, 2, 3]}

    def test_dickson(self, capsys):
        assert main(["dickson", "--p", "2", "--n", "2"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert [d["degree"] for d in data["results"]["dickson"]] == [2, 3]

    @pytest.mark.parametrize(
        "argv",
        [
            ["invariants", "--group", "swap", "--cutoff", "3"],
            ["depth", "--group", "gl2f2"],
            ["duflot", "--p", "2", "--gens", "[[[0,1],[1,0]]]"],
            ["carlson", "--group", "klein4_regular", "--s", "2", "--cutoff", "4"],
            ["coaction", "--group", "swap", "--subspace", "[[1,1]]", "--degree", "2", "--cutoff", "4"],
        ],
    )
    def test_subcommands(self, argv, capsys):
        assert main(argv) == 0
        assert json.loads(capsys.readouterr().out)["status"] == "pass"

    def test_capacity_exit(self, capsys):
        assert main(["dickson", "--p", "5", "--n", "4"]) == 2
        assert "capacity" in capsys.readouterr().err

    def test_capacity_exit_names_phase(self, tmp_path, capsys):
        path = tmp_path / "big.toml"
        path.write_text(BIG_GROUP)
        assert main(["run", str(path)]) == 2
        assert "during enumerate" in capsys.readouterr().err

    def test_input_errors(self, tmp_path, capsys):
        bad = tmp_path / "bad.toml"
        bad.write_text(MINIMAL.replace("[[[0, 1], [1, 0]]]", "[[[1, 1], [1, 1]]]"))
        assert main(["run", str(bad)]) == 3
        assert "singular" in capsys.readouterr().err
        assert main(["hilbert", "--group", "nope"]) == 3
        assert main(["carlson", "--group", "swap", "--s", "5"]) == 3
        assert main(["coaction", "--group", "swap", "--subspace", "[[1,0]]"]) == 3

    def test_cutoff_override(self, tmp_path):
        out = tmp_path / "r.json"
        assert main(["run", str(SWAP_TOML), "--cutoff", "5", "--report-out", str(out)]) == 0
        data = json.loads(out.read_text())
        assert data["scenario"]["cutoff"] == 5
        assert len(data["results"]["hilbert"]["dimensions"]) == 6

    def test_cache_dir(self, tmp_path, capsys):
        assert main(["hilbert", "--group", "gl2f2", "--cutoff", "5", "--cache-dir", str(tmp_path)]) == 0
        first = capsys.readouterr().out
        assert len(list(tmp_path.glob("v1-*.json"))) == 1
        assert main(["hilbert", "--group", "gl2f2", "--cutoff", "5", "--cache-dir", str(tmp_path)]) == 0
        assert capsys.readouterr().out == first

    def test_console_script_module(self):
        res = subprocess.run(
            [sys.executable, "-m", "invdepth.cli", "dickson", "--p", "3", "--n", "1"],
            capture_output=True, text=True, check=False,
        )
        assert res.returncode == 0
        assert json.loads(res.stdout)["results"]["dickson"][0]["polynomial"]["text"] == "x1^2"


def test_scenario_dataclass_echo():
    sc = Scenario(p=2, n=2, generators=(((0, 1), (1, 0)),))
    assert sc.to_dict()["generators"] == [[[0, 1], [1, 0]]]
    assert corpus()["swap"].generators == sc.group().generators
