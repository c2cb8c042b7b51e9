import json
import math

import numpy as np
import pytest

from polyplan import cli
from polyplan.decompose import signed_area
from polyplan.engine import plan
from polyplan.fixtures import ENVIRONMENTS, ROBOTS, named_environment, named_robot
from polyplan.formats import (
    FormatError,
    environment_from_dict,
    environment_to_dict,
    load_environment,
    load_robot,
    parse_request,
    result_to_dict,
    robot_from_dict,
    robot_to_dict,
)


class TestRoundTrip:
    @pytest.mark.parametrize("name", sorted(ENVIRONMENTS))
    def test_environment(self, name, tmp_path):
        env = named_environment(name)
        path = tmp_path / "env.json"
        path.write_text(json.dumps(environment_to_dict(env)))
        again = load_environment(str(path))
        assert again.bbox == env.bbox
        assert len(again.obstacles) == len(env.obstacles)
        for a, b in zip(again.obstacles, env.obstacles):
            np.testing.assert_allclose(a, b)
            assert signed_area(a) > 0  # normalized CCW

    @pytest.mark.parametrize("name", sorted(ROBOTS))
    def test_robot(self, name, tmp_path):
        rob = named_robot(name)
        path = tmp_path / "robot.json"
        path.write_text(json.dumps(robot_to_dict(rob)))
        again = load_robot(str(path))
        np.testing.assert_allclose(again.vertices, rob.vertices)
        assert again.origin == rob.origin


class TestValidation:
    def test_repeated_vertex_rejected(self):
        with pytest.raises(FormatError, match="simple"):
            robot_from_dict({"vertices": [[0, 0], [1, 0], [1, 0], [0, 1]]})

    def test_self_crossing_rejected(self):
        with pytest.raises(FormatError):
            environment_from_dict({"obstacles": [[[0, 0], [2, 2], [2, 0], [0, 2]]]})

    def test_parse_error_carries_line(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text('{\n "obstacles": [\n   broken\n ]\n}')
        with pytest.raises(FormatError, match=r":3:"):
            load_environment(str(p))

    def test_feature_count_is_twice_vertices(self):
        env = named_environment("gateway")
        total_vertices = sum(len(o) for o in env.obstacles)
        assert len(env.features) == 2 * total_vertices

    def test_triangle_obstacle_features(self):
        env = environment_from_dict({"obstacles": [[[0, 0], [10, 0], [5, 8]]]})
        kinds = [f.kind for f in env.features]
        assert kinds.count("corner") == 3 and kinds.count("edge") == 3


class TestDegrees:
    @pytest.mark.parametrize("deg", [0, 45, 90, 135, 180, 225, 270, 315])
    def test_cardinal_angles_exact(self, deg):
        req = parse_request(
            {
                "env": {"obstacles": []},
                "robot": {"vertices": [[0, 0], [2, 0], [1, 2]]},
                "start": {"x": 1, "y": 1, "theta_deg": deg},
                "goal": [2, 2, deg],
                "eps": 1.0,
            }
        )
        assert req["alpha"][2] == pytest.approx(math.radians(deg), abs=0)
        assert req["beta"][2] == pytest.approx(math.radians(deg), abs=0)
        # and back out through the response path
        from polyplan.engine import PlanResult

        res = PlanResult("PATH", path=[(1.0, 1.0, math.radians(deg))])
        out = result_to_dict(res)
        assert out["path"][0]["theta_deg"] == pytest.approx(deg, abs=1e-12)


class TestCLI:
    def test_path_exit_zero(self, capsys):
        rc = cli.main(
            ["--env", "gateway", "--robot", "l_shape", "--start", "70,100,340",
             "--goal", "458,119,270", "--eps", "4"]
        )
        assert rc == 0
        assert "PATH" in capsys.readouterr().out

    def test_no_path_exit_one(self, capsys):
        rc = cli.main(
            ["--env", "gateway", "--robot", "l_shape", "--start", "254,100,0",
             "--goal", "458,119,270", "--eps", "4"]
        )
        assert rc == 1

    def test_bad_geometry_exit_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"vertices": [[0, 0], [2, 2], [2, 0], [0, 2]]}))
        rc = cli.main(
            ["--env", "gateway", "--robot", str(bad), "--start", "0,0,0",
             "--goal", "1,1,0", "--eps", "4"]
        )
        assert rc == 2

    def test_missing_args_exit_two(self):
        assert cli.main(["--env", "gateway"]) == 2

    def test_json_output(self, tmp_path):
        out = tmp_path / "res.json"
        rc = cli.main(
            ["--env", "sparks", "--robot", "s_shape", "--start", "80,80,0",
             "--goal", "430,430,0", "--eps", "8", "--json", str(out)]
        )
        assert rc == 0
        data = json.loads(out.read_text())
        assert data["status"] == "PATH"
        assert data["path"][0]["theta_deg"] == pytest.approx(0.0)

    def test_dump_fixtures(self, tmp_path):
        rc = cli.main(["--dump-fixtures", str(tmp_path)])
        assert rc == 0
        assert (tmp_path / "env_gateway.json").exists()
        assert (tmp_path / "robot_l_shape.json").exists()
        env = load_environment(str(tmp_path / "env_gateway.json"))
        assert len(env.obstacles) == 2


class TestSVG:
    def test_deterministic_bytes(self, tmp_path):
        env = named_environment("sparks")
        rob = named_robot("l_shape")
        digests = []
        for k in range(2):
            res = plan(env, rob, (80, 80, 0.0), (430, 430, 0.0), eps=8.0, collect_leaves=True)
            from polyplan.svg import render_svg

            out = tmp_path / f"run{k}.svg"
            render_svg(res, env, rob, str(out))
            digests.append(out.read_bytes())
        assert digests[0] == digests[1]
        assert b"<polyline" in digests[0]

    def test_no_path_has_no_polyline(self, tmp_path):
        env = named_environment("gateway")
        rob = named_robot("l_shape")
        res = plan(env, rob, (254, 100, 0.0), (450, 250, 0.0), eps=8.0, collect_leaves=True)
        assert res.status == "NO_PATH"
        from polyplan.svg import render_svg

        out = tmp_path / "nopath.svg"
        render_svg(res, env, rob, str(out))
        text = out.read_text()
        assert "<polyline" not in text
        assert "<rect" in text
