import json
from fractions import Fraction as F

import jsonschema
import pytest

from pnspace import cli
from pnspace.config import ConfigError, load_schema, load_scenario, loads, scenario_names

SHIPPED = ["broken_tnorm_table", "embed_l1", "embed_linf", "embed_seminorm", "halfproduct_arch",
           "halfproduct_hohle_linf", "min_rejected", "nonradial_base", "seminorm_base", "tnorm_z",
           "z_linf_q3", "z_topology"]


def doc(**kw):
    base = {"name": "t", "dimension": 2, "gauge": "l1"}
    base.update(kw)
    return json.dumps(base, indent=2)


def write(tmp_path, text, name="cfg.json"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_shipped_scenarios_parse():
    assert scenario_names() == SHIPPED
    for name in SHIPPED:
        cfg = load_scenario(name)
        assert cfg.name == name


def test_defaults_match_reference_scenario():
    cfg = load_scenario("z_linf_q3")
    g = cfg.grids
    assert len(g.lambda_grid) == 21 and g.lambda_grid[1] == F(1, 20)
    assert g.x_grid[1] == F(1, 16) and g.x_grid[-1] == 5 and g.horizon == 5
    assert g.n_range == tuple(range(1, 21))
    assert cfg.radii.n_max == 64 and cfg.radii(7) == F(1, 7)
    samples = cfg.samples()
    assert len(samples) == 200 and samples[0].is_zero()


def test_grid_forms():
    cfg = loads(doc(x_grid=["1/2", "1/4", "1/2"], lambda_grid={"start": "0", "stop": "1", "step": "1/2"}))
    assert cfg.grids.x_grid == (F(1, 4), F(1, 2))
    assert cfg.grids.lambda_grid == (0, F(1, 2), 1)


@pytest.mark.parametrize("text, field, line", [
    (doc(horizon="5/x"), "horizon", 5),
    (doc(horizon=5.0), "horizon", 5),
    (doc(dimension=0), "dimension", 3),
    (doc(gauge="l7"), "gauge", 4),
    (doc(colour="red"), "", None),
    (doc(gauge={"kind": "custom-table", "weights": ["1"]}), "gauge.weights", 6),
    (doc(tnorm="hamacher"), "tnorm", 5),
    (doc(radii={"kind": "geometric", "ratio": "3/2"}), "radii", 5),
])
def test_config_errors_name_field_and_line(text, field, line):
    with pytest.raises(ConfigError) as err:
        loads(text)
    assert err.value.field == field
    assert err.value.line == line


def test_json_syntax_error_has_line():
    with pytest.raises(ConfigError) as err:
        loads('{\n  "name": "x",\n  "dimension": 2,,\n}')
    assert err.value.line == 3


def test_malformed_rational_exits_1(tmp_path, capsys):
    path = write(tmp_path, doc(tnorm="Z", delta="one half"))
    assert cli.main(["check-tnorm", "--config", path]) == 1
    assert "field 'delta'" in capsys.readouterr().err


def test_usage_errors_exit_1(capsys):
    assert cli.main([]) == 1
    with pytest.raises(SystemExit) as err:
        cli.main(["metrize"])
    assert err.value.code == 1
    assert cli.main(["metrize", "--scenario", "no_such_scenario"]) == 1


def test_check_tnorm_exit_codes(tmp_path):
    assert cli.main(["check-tnorm", "--scenario", "tnorm_z", "--quiet"]) == 0
    path = write(tmp_path, doc(tnorm="M"))
    assert cli.main(["check-tnorm", "--config", path, "--quiet"]) == 2
    path = write(tmp_path, doc(tnorm="M", hypotheses=False), "plain.json")
    assert cli.main(["check-tnorm", "--config", path, "--quiet"]) == 0
    path = write(tmp_path, doc(), "none.json")
    assert cli.main(["check-tnorm", "--config", path]) == 1


def test_broken_table_witness(tmp_path):
    out = tmp_path / "out"
    assert cli.main(["check-tnorm", "--scenario", "broken_tnorm_table", "--out", str(out), "--quiet"]) == 2
    report = json.loads((out / "report.json").read_text())
    rec = {r["id"]: r for r in report["records"]}["tnorm.BrokenMin.commutative"]
    assert rec["status"] == "fail"
    assert rec["witness"] == {"T(x,y)": "1/5", "T(y,x)": "3/10", "x": "3/10", "y": "7/10"}


def test_min_rejected(tmp_path):
    out = tmp_path / "out"
    assert cli.main(["metrize", "--scenario", "min_rejected", "--out", str(out), "--quiet"]) == 2
    report = json.loads((out / "report.json").read_text())
    rec = {r["id"]: r for r in report["records"]}["gate.N0"]
    assert rec["witness"]["hypothesis"] == "sup-diagonal"


def test_embed_reports_are_deterministic_and_valid(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert cli.main(["embed", "--scenario", "embed_linf", "--out", str(a), "--quiet"]) == 0
    assert cli.main(["embed", "--scenario", "embed_linf", "--out", str(b), "--quiet"]) == 0
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()
    report = json.loads((a / "report.json").read_text())
    jsonschema.validate(report, load_schema("report.schema.json"))
    assert report["verdict"] == "pass" and report["command"] == "embed"
    assert "inst" in (a / "report.txt").read_text()


def test_seed_override(tmp_path):
    out = tmp_path / "s"
    assert cli.main(["embed", "--scenario", "embed_l1", "--seed", "9", "--out", str(out), "--quiet"]) == 0
    assert json.loads((out / "report.json").read_text())["config"]["seed"] == 9


def test_embed_seminorm_fails_N1(tmp_path):
    out = tmp_path / "semi"
    assert cli.main(["embed", "--scenario", "embed_seminorm", "--out", str(out), "--quiet"]) == 2
    recs = {r["id"]: r for r in json.loads((out / "report.json").read_text())["records"]}
    assert recs["N1"]["status"] == "fail"
    assert recs["N1"]["witness"]["p"] == ["1", "0", "0"]


def test_domain_errors_become_records(tmp_path):
    # a tnorm_grid without the endpoint 1 is a domain error inside the check
    path = write(tmp_path, doc(tnorm="Z", tnorm_grid=["0", "1/2"]))
    out = tmp_path / "err"
    assert cli.main(["check-tnorm", "--config", path, "--out", str(out), "--quiet"]) == 2
    recs = json.loads((out / "report.json").read_text())["records"]
    assert recs[0]["id"] == "error.check-tnorm"
    assert recs[0]["witness"]["error"] == "ValueError"


def test_embedding_rejects_squared_gauge(tmp_path):
    path = write(tmp_path, doc(gauge="l2sq"))
    assert cli.main(["embed", "--config", path]) == 1


def test_topology_audit_of_embedding(tmp_path):
    path = write(tmp_path, doc(space="embed", gauge="linf", sample_count=30, topology_samples=30))
    assert cli.main(["topology-audit", "--config", path, "--quiet"]) == 0


def test_z_linf_q3_exit_0():
    assert cli.main(["metrize", "--scenario", "z_linf_q3", "--quiet"]) == 0


def test_halfproduct_arch_exit_0():
    assert cli.main(["metrize", "--scenario", "halfproduct_arch", "--quiet"]) == 0


def test_list_scenarios(capsys):
    assert cli.main(["--list-scenarios"]) == 0
    assert capsys.readouterr().out.split() == SHIPPED
