"""Command-line interface.

Exit codes: 0 when a path is found, 1 for NO_PATH, 2 for usage or input
errors.  Angles on the command line are degrees.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import fixtures
from .engine import plan
from .formats import (
    DEFAULT_BOX_CAP,
    FormatError,
    environment_to_dict,
    load_environment,
    load_robot,
    result_to_dict,
    robot_to_dict,
    STRATEGIES,
)


def _pose(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("pose must be x,y,theta_degrees")
    try:
        x, y, t = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError("pose components must be numbers") from None
    return (x, y, math.radians(t))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="polyplan",
        description="Plan collision-free motions for a rigid polygonal robot "
        "translating and rotating in a planar polygonal environment.",
    )
    p.add_argument("--env", help="environment JSON file or bundled name")
    p.add_argument("--robot", help="robot JSON file or bundled name")
    p.add_argument("--start", type=_pose, help="start pose x,y,theta_deg")
    p.add_argument("--goal", type=_pose, help="goal pose x,y,theta_deg")
    p.add_argument("--eps", type=float, help="resolution parameter (world units, > 0)")
    p.add_argument("--strategy", default="balanced", choices=STRATEGIES)
    p.add_argument("--seed", type=int, default=0, help="seed for the random strategy")
    p.add_argument("--svg", metavar="FILE", help="write an SVG rendering of the run")
    p.add_argument("--json", metavar="FILE", help="write the plan response as JSON")
    p.add_argument("--boxes", action="store_true", help="include the leaf-box dump in outputs")
    p.add_argument(
        "--serve",
        type=int,
        nargs="?",
        const=-1,
        metavar="PORT",
        help="run the HTTP service instead (port from the flag, else POLYPLAN_PORT, else 8080)",
    )
    p.add_argument("--host", default="127.0.0.1", help="bind address for --serve")
    p.add_argument("--list-fixtures", action="store_true", help="list bundled names and exit")
    p.add_argument("--dump-fixtures", metavar="DIR", help="write bundled fixtures as JSON files")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.list_fixtures:
        print("environments:", ", ".join(sorted(fixtures.ENVIRONMENTS)))
        print("robots:      ", ", ".join(sorted(fixtures.ROBOTS)))
        return 0

    if args.dump_fixtures:
        os.makedirs(args.dump_fixtures, exist_ok=True)
        for name in fixtures.ENVIRONMENTS:
            path = os.path.join(args.dump_fixtures, f"env_{name}.json")
            with open(path, "w") as f:
                json.dump(environment_to_dict(fixtures.named_environment(name)), f, indent=1)
        for name in fixtures.ROBOTS:
            path = os.path.join(args.dump_fixtures, f"robot_{name}.json")
            with open(path, "w") as f:
                json.dump(robot_to_dict(fixtures.named_robot(name)), f, indent=1)
        print(f"fixtures written to {args.dump_fixtures}")
        return 0

    if args.serve is not None:
        from .service import serve

        port = args.serve if args.serve >= 0 else int(os.environ.get("POLYPLAN_PORT", "8080"))
        serve(port, host=args.host)
        return 0

    missing = [n for n in ("env", "robot", "start", "goal", "eps") if getattr(args, n) is None]
    if missing:
        print(f"error: missing required arguments: {', '.join('--' + m for m in missing)}", file=sys.stderr)
        return 2
    if not (args.eps > 0 and math.isfinite(args.eps)):
        print("error: --eps must be a positive number", file=sys.stderr)
        return 2

    try:
        env = load_environment(args.env)
        robot = load_robot(args.robot)
    except FormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    try:
        result = plan(
            env,
            robot,
            args.start,
            args.goal,
            args.eps,
            strategy=args.strategy,
            seed=args.seed,
            collect_leaves=bool(args.svg or (args.json and args.boxes)),
        )
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    stats = result.stats
    print(
        f"{result.status}"
        + (f" ({result.detail})" if result.detail else "")
        + f": {stats['boxes_created']} boxes, {stats['free_leaves']} free leaves, "
        f"{stats['wall_time']:.3f}s"
    )
    if result.path:
        print(f"path: {len(result.path)} configurations")

    if args.json:
        payload = result_to_dict(result, box_cap=DEFAULT_BOX_CAP)
        if not args.boxes:
            payload.pop("boxes", None)
            payload.pop("boxes_truncated", None)
        with open(args.json, "w") as f:
            json.dump(payload, f, indent=1)
    if args.svg:
        from .svg import render_svg

        render_svg(result, env, robot, args.svg)

    return 0 if result.status == "PATH" else 1


if __name__ == "__main__":
    sys.exit(main())
