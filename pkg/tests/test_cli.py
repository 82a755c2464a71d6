import json
import subprocess
import sys

import pytest

from rankit.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_invert_headline(capsys):
    code, out = run_cli(capsys, "invert", "--fn", "sine", "--target", "0.829",
                        "--lo", "0", "--hi", "90")
    assert code == 0
    payload = json.loads(out)
    assert payload["input"] == 56
    assert payload["forward_evals"] <= 7


def test_invert_md_prints_value_and_probes(capsys):
    code, out = run_cli(capsys, "invert", "--fn", "sine", "--target", "0.829",
                        "--format", "md")
    assert code == 0
    assert out.splitlines()[0] == "56"
    assert "comparisons" in out


def test_invert_exhaustive(capsys):
    code, out = run_cli(capsys, "invert", "--fn", "sine", "--target", "0.829",
                        "--exhaustive")
    assert code == 0
    payload = json.loads(out)
    assert payload["input"] == 56
    assert payload["forward_evals"] == 57  # scan position on the 0..90 grid


def test_eval_sine(capsys):
    code, out = run_cli(capsys, "eval", "--fn", "sine", "--x", "56")
    assert code == 0
    assert abs(json.loads(out)["value"] - 0.8290) <= 5e-4


def test_table_csv(capsys):
    code, out = run_cli(capsys, "table", "--fn", "sine", "--lo", "45",
                        "--hi", "76", "--format", "csv", "--digits", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "index,input,output"
    assert lines[12] == "12,56,0.8290"
    assert len(lines) == 33


def test_table_find_output(capsys):
    code, out = run_cli(capsys, "table", "--fn", "sine", "--lo", "45",
                        "--hi", "76", "--find-output", "0.829")
    assert code == 0
    assert json.loads(out)["lookup"]["input"] == 56


def test_oracle_preload_and_csv(capsys):
    code, out = run_cli(capsys, "oracle", "--preload", "-q", "4", "-q", "4",
                        "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "q,r"
    assert "4,90" in lines


def test_tsp_shortest_builtin(capsys):
    code, out = run_cli(capsys, "tsp", "--mode", "shortest")
    assert code == 0
    payload = json.loads(out)
    assert payload["distance"] == 1290
    assert payload["tour"] == [0, 1, 4, 3, 2, 0]
    assert payload["forward_evals"] == 24


def test_tsp_instance_file(tmp_path, capsys):
    instance = tmp_path / "cities5.json"
    code, _ = run_cli(capsys, "tsp", "--write-instance", str(instance))
    assert code == 0 and instance.exists()
    code, out = run_cli(capsys, "tsp", "--instance", str(instance),
                        "--mode", "shortest")
    assert code == 0
    assert json.loads(out)["distance"] == 1290


def test_tsp_distance_mode(capsys):
    code, out = run_cli(capsys, "tsp", "--mode", "distance",
                        "--tour", "0,2,1,3,4,0")
    assert code == 0
    assert json.loads(out)["distance"] == 1450


def test_tsp_mapping_csv(capsys):
    code, out = run_cli(capsys, "tsp", "--mode", "mapping", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1] == '"0,1,4,3,2,0",1290'


def test_cfg_graph_file(tmp_path, capsys):
    graph = tmp_path / "diamond.txt"
    code, _ = run_cli(capsys, "cfg", "--write-example", str(graph))
    assert code == 0
    code, out = run_cli(capsys, "cfg", "--graph", str(graph),
                        "--doubling-depth", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["cycles"] == [[1, 2, 3, 5, 6], [1, 2, 4, 5, 6]]
    assert payload["cyclomatic_number"] == 2
    assert payload["doubling"][-1] == {"depth": 3, "cycles": 8, "predicted": 8}


def test_complexity_all(capsys):
    code, out = run_cli(capsys, "complexity", "--all")
    assert code == 0
    payload = json.loads(out)
    verdicts = {r["function_id"]: r["verdict"] for r in payload["reports"]}
    assert verdicts["sine"] == "LOW"
    assert verdicts["gtd"] == "HIGH"


def test_module_error_exits_one(capsys):
    code = main(["invert", "--fn", "sine", "--target", "1.5"])
    assert code == 1
    assert "rankit:" in capsys.readouterr().err


def test_unknown_function_exits_one(capsys):
    code = main(["eval", "--fn", "cosine", "--x", "1"])
    assert code == 1


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as excinfo:
        main(["invert"])  # missing required arguments
    assert excinfo.value.code == 2


def test_unknown_subcommand_exits_two():
    with pytest.raises(SystemExit) as excinfo:
        main(["frobnicate"])
    assert excinfo.value.code == 2


def test_json_output_is_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path in paths:
        code, _ = run_cli(capsys, "complexity", "--all", "--out", str(path))
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_report_all_writes_outputs_and_figures(tmp_path, capsys):
    out_dir = tmp_path / "rep"
    code, out = run_cli(capsys, "report-all", "--out-dir", str(out_dir))
    assert code == 0
    payload = json.loads(out)
    assert payload["bisection"]["degrees"] == 56
    assert payload["tsp"]["shortest"]["distance"] == 1290
    for name in ("report.json", "report.md", "sine_table.csv",
                 "tsp_mapping.csv", "oracle_notebook.csv"):
        assert (out_dir / name).exists()
    figures = sorted(p.name for p in (out_dir / "figures").glob("*.png"))
    assert figures == ["branch_doubling.png", "collatz_orbit.png",
                       "sine_inversion.png", "tour_lengths.png"]


def test_report_all_json_deterministic(tmp_path, capsys):
    dirs = [tmp_path / "r1", tmp_path / "r2"]
    for d in dirs:
        code, _ = run_cli(capsys, "report-all", "--out-dir", str(d),
                          "--no-figures")
        assert code == 0
    assert (dirs[0] / "report.json").read_bytes() == (dirs[1] / "report.json").read_bytes()


def test_console_script_entry_point():
    result = subprocess.run([sys.executable, "-m", "rankit.cli", "eval",
                             "--fn", "collatz", "--x", "7"],
                            capture_output=True, text=True)
    assert result.returncode == 0
    assert json.loads(result.stdout)["value"] == 22
