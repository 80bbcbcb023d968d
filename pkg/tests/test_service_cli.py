import json
from fractions import Fraction

import pytest
from fastapi.testclient import TestClient
from hypothesis import given
from hypothesis import strategies as st

from twisted_poisson import cli
from twisted_poisson.config import WORKERS_ENV, ConfigError, parse_config, random_twist, resolve
from twisted_poisson.service import create_app, export, run, worker_count
from twisted_poisson.suites import REGISTRY, ordered


def write_config(tmp_path, data, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


# ---------------------------------------------------------------- configuration


@pytest.mark.parametrize("data", [
    {},
    {"type": "A2", "cartan": [[2, -1], [-1, 2]]},
    {"type": "Z9"},
    {"cartan": [[2, -1], [-2, 3]]},
    {"type": "A2", "suites": ["nope"]},
    {"type": "A2", "max_word_len": 0},
    {"type": "A2", "u": [[0, 1], [1, 0]]},
    {"type": "A2", "u": [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]},
    {"type": "A2", "u": [[0, "a"], ["b", 0]]},
    {"type": "A2", "lattice": "hexagonal"},
    {"type": "A2", "weyl_pairs": [["s1s3", "e"]]},
    {"type": "A2", "weyl_pairs": [["x", "e"]]},
    {"type": "A2", "extra": 1},
])
def test_invalid_configs_raise(data):
    with pytest.raises(ConfigError):
        resolve(parse_config(data))


def test_config_resolution():
    problem = resolve(parse_config({"matrix": [[2, -1], [-1, 2]], "u": [[0, "3/2"], ["-3/2", 0]],
                                    "lattice": "root", "weyl_pairs": [["s1s2", "e"]]}))
    assert problem.u == ((0, Fraction(3, 2)), (Fraction(-3, 2), 0))
    assert problem.lattice.value == "root"
    assert problem.weyl_pairs == (((0, 1), ()),)


@given(st.integers(1, 4), st.integers(0, 10_000))
def test_random_twist_is_skew_with_small_entries(n, seed):
    u = random_twist(n, seed)
    assert u == random_twist(n, seed)
    for i in range(n):
        assert u[i][i] == 0
        for j in range(n):
            assert u[i][j] == -u[j][i]
            assert abs(u[i][j].numerator) <= 9 and u[i][j].denominator <= 4


def test_suite_order_follows_stages():
    assert ordered(["hactk", "jacobi", "module_relations", "jacobi"]) == ["jacobi", "module_relations", "hactk"]
    assert set(ordered(list(REGISTRY))) == set(REGISTRY)


def test_worker_count_from_environment(monkeypatch):
    monkeypatch.delenv(WORKERS_ENV, raising=False)
    assert worker_count() == 1
    monkeypatch.setenv(WORKERS_ENV, "3")
    assert worker_count() == 3
    for bad in ("0", "many"):
        monkeypatch.setenv(WORKERS_ENV, bad)
        with pytest.raises(ConfigError):
            worker_count()


# ---------------------------------------------------------------- run and export


def test_run_examples():
    assert run(parse_config({"type": "A1", "u": 0, "suites": ["jacobi"]})).status == "pass"
    assert run(parse_config({"type": "A2", "u": "random", "suites": ["rr_invariance"]})).status == "pass"
    assert run(parse_config({"type": "A1", "suites": ["bracket_oracle"], "max_word_len": 3})).status == "pass"


def test_reports_are_deterministic_across_workers():
    config = parse_config({"type": "A2", "u": "random", "u_seed": 5, "samples": 10,
                           "suites": ["jacobi", "cocycle", "bigrading", "module_relations"]})
    serial = run(config, workers=1).normalized()
    parallel = run(config, workers=3).normalized()
    assert json.dumps(serial, sort_keys=True) == json.dumps(parallel, sort_keys=True)
    assert [s["suite"] for s in serial["suites"]] == ["jacobi", "cocycle", "module_relations", "bigrading"]


def test_failing_check_is_recorded_not_raised():
    report = run(parse_config({"type": "A2", "suites": ["cocycle"]}))
    assert report.status == "fail"
    (suite,) = report.suites
    assert suite.error is None and suite.failed > 0
    closed = [c for c in suite.checks if c["status"] == "fail"]
    assert closed and all(v["form"] == "closed" for c in closed for v in c["violations"])


def test_export_roots_and_structure():
    roots = export(parse_config({"type": "A2"}), "roots")["data"]
    assert len(roots["positive_roots"]) == 3 and roots["num_roots"] == 6
    assert roots["weyl_group"]["order"] == 6
    structure = export(parse_config({"type": "A1"}), "structure")["data"]
    entry = next(e for e in structure["brackets"] if {e["lhs"], e["rhs"]} == {"x[1]", "x[-1]"})
    assert sorted(tag for tag, _ in entry["value"]) == ["h1", "k1"]
    with pytest.raises(ConfigError):
        export(parse_config({"type": "A1"}), "everything")


def test_export_brackets_gives_sl2_table():
    data = export(parse_config({"type": "A1", "u": 0}), "brackets")["data"]["brackets"]
    names = {"c[V(1)](g0,v0)": "a", "c[V(1)](g1,v0)": "b", "c[V(1)](g0,v1)": "c", "c[V(1)](g1,v1)": "d"}

    def rename(monomial):
        return "".join(sorted(names[f] for f in monomial.split("*")))

    table = {(names[e["a"][0]], names[e["b"][0]]): {rename(k): v for k, v in e["bracket"].items()} for e in data
             if e["a"][0] in names and e["b"][0] in names}
    assert table[("a", "b")] == {"ab": "-1/1"}
    assert table[("a", "c")] == {"ac": "-1/1"}
    assert table[("b", "c")] == {}
    assert table[("b", "d")] == {"bd": "-1/1"}
    assert table[("c", "d")] == {"cd": "-1/1"}
    assert table[("a", "d")] == {"bc": "-2/1"}


def test_export_modules_and_ideals():
    modules = export(parse_config({"type": "B2"}), "modules")["data"]["modules"]
    assert [m["dim"] for m in modules] == [4, 5]
    ideals_doc = export(parse_config({"type": "A1"}), "ideals")["data"]["ideals"]
    assert len(ideals_doc) == 4


# ---------------------------------------------------------------- HTTP


def test_http_routes():
    client = TestClient(create_app())
    assert client.get("/health").json()["status"] == "ok"
    assert {s["name"] for s in client.get("/suites").json()["suites"]} == set(REGISTRY)
    response = client.post("/verify", json={"type": "A1", "suites": ["jacobi"]})
    assert response.status_code == 200 and response.json()["status"] == "pass"
    assert client.post("/verify", json={"type": "A1", "u": [[1]]}).status_code == 422
    assert client.post("/verify", json={"suites": []}).status_code == 422
    roots = client.post("/export/roots", json={"type": "A2"}).json()
    assert len(roots["data"]["positive_roots"]) == 3
    assert client.post("/export/nothing", json={"type": "A2"}).status_code == 422


# ---------------------------------------------------------------- CLI


def test_cli_exit_codes(tmp_path, capsys):
    good = write_config(tmp_path, {"type": "A1", "suites": ["jacobi"]})
    out = tmp_path / "report.json"
    assert cli.main(["verify", "--config", good, "--out", str(out)]) == 0
    assert json.loads(out.read_text())["status"] == "pass"
    failing = write_config(tmp_path, {"type": "A2"}, "fail.json")
    assert cli.main(["verify", "--config", failing, "--suite", "cocycle"]) == 1
    broken = write_config(tmp_path, {"type": "A2", "max_word_len": 0}, "bad.json")
    assert cli.main(["verify", "--config", broken]) == 2
    (tmp_path / "notjson.json").write_text("{")
    assert cli.main(["verify", "--config", str(tmp_path / "notjson.json")]) == 2
    assert cli.main(["verify", "--config", str(tmp_path / "missing.json")]) == 2
    assert cli.main(["verify", "--config", good, "--suite", "unknown"]) == 2
    assert cli.main(["frobnicate"]) == 2
    captured = capsys.readouterr()
    assert "config error" in captured.err


def test_cli_suite_flag_overrides_config(tmp_path, capsys):
    cfg = write_config(tmp_path, {"type": "A1", "suites": ["cocycle"]})
    assert cli.main(["verify", "--config", cfg, "--suite", "jacobi", "--suite", "rr_invariance"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert [s["suite"] for s in report["suites"]] == ["jacobi", "rr_invariance"]


def test_cli_export(tmp_path, capsys):
    cfg = write_config(tmp_path, {"type": "A2"})
    assert cli.main(["export", "--config", cfg, "--what", "roots"]) == 0
    assert len(json.loads(capsys.readouterr().out)["data"]["positive_roots"]) == 3
    assert cli.main(["export", "--config", cfg, "--what", "weights"]) == 2


def test_cli_remote_mode_posts_to_service(tmp_path, capsys, monkeypatch):
    import httpx

    client = TestClient(create_app())
    seen = []

    def fake_post(url, json, timeout):
        seen.append(url)
        return client.post(url.replace("http://svc", ""), json=json)

    monkeypatch.setattr(httpx, "post", fake_post)
    cfg = write_config(tmp_path, {"type": "A1", "suites": ["jacobi"]})
    assert cli.main(["verify", "--config", cfg, "--url", "http://svc/"]) == 0
    assert seen == ["http://svc/verify"]
    assert cli.main(["export", "--config", cfg, "--what", "roots", "--url", "http://svc"]) == 0
    bad = write_config(tmp_path, {"type": "A1", "u": [[2]]}, "bad.json")
    assert cli.main(["verify", "--config", bad, "--url", "http://svc"]) == 2
