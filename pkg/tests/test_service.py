import json

import httpx
import pytest

from polyplan.cli import main as cli_main
from polyplan.service import PlannerServer


@pytest.fixture(scope="module")
def server():
    srv = PlannerServer(port=0).start_background()
    yield f"http://127.0.0.1:{srv.port}"
    srv.stop()


def test_health(server):
    r = httpx.get(server + "/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok"}


def test_listings(server):
    envs = httpx.get(server + "/environments").json()["environments"]
    robots = httpx.get(server + "/robots").json()["robots"]
    assert "gateway" in envs and "maze" in envs
    assert "l_shape" in robots and "c_shape" in robots


def test_plan_empty_environment(server):
    req = {
        "env": {"obstacles": []},
        "robot": "l_shape",
        "start": {"x": 60, "y": 60, "theta_deg": 0},
        "goal": {"x": 450, "y": 450, "theta_deg": 90},
        "eps": 8,
        "include_boxes": True,
    }
    r = httpx.post(server + "/plan", json=req, timeout=120)
    assert r.status_code == 200
    data = r.json()
    assert data["status"] == "PATH"
    assert data["path"][0] == {"x": 60, "y": 60, "theta_deg": 0}
    assert 0 < len(data["boxes"]) <= 50000
    assert data["boxes_truncated"] is False


def test_eps_zero_rejected(server):
    req = {"env": "gateway", "robot": "l_shape", "start": [0, 0, 0], "goal": [1, 1, 0], "eps": 0}
    r = httpx.post(server + "/plan", json=req)
    assert r.status_code == 400
    assert "eps" in r.json()["error"]


def test_malformed_json_rejected(server):
    r = httpx.post(server + "/plan", content=b"{nope", headers={"Content-Type": "application/json"})
    assert r.status_code == 400


def test_unknown_endpoint(server):
    assert httpx.get(server + "/nope").status_code == 404


def test_box_cap_truncates(server):
    req = {
        "env": "gateway",
        "robot": "l_shape",
        "start": {"x": 70, "y": 100, "theta_deg": 340},
        "goal": {"x": 458, "y": 119, "theta_deg": 270},
        "eps": 4,
        "include_boxes": True,
        "box_cap": 10,
    }
    r = httpx.post(server + "/plan", json=req, timeout=300)
    data = r.json()
    assert len(data["boxes"]) == 10
    assert data["boxes_truncated"] is True


def test_service_verdict_matches_cli(server, tmp_path, capsys):
    req = {
        "env": "sparks",
        "robot": "three_legged",
        "start": {"x": 80, "y": 80, "theta_deg": 0},
        "goal": {"x": 430, "y": 430, "theta_deg": 0},
        "eps": 8,
    }
    r = httpx.post(server + "/plan", json=req, timeout=300)
    data = r.json()
    out = tmp_path / "cli.json"
    rc = cli_main(
        ["--env", "sparks", "--robot", "three_legged", "--start", "80,80,0",
         "--goal", "430,430,0", "--eps", "8", "--json", str(out)]
    )
    cli_data = json.loads(out.read_text())
    assert (rc == 0) == (data["status"] == "PATH")
    assert cli_data["status"] == data["status"]
    assert len(cli_data["path"]) == len(data["path"])
