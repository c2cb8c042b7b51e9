"""polyplan: subdivision motion planning for rigid polygonal robots in SE(2)."""

from .decompose import Decomposition, NiceTriangle, RobotPolygon, decompose
from .engine import Box, PlanResult, Planner, plan
from .geom import AngularRange, Corner, Edge
from .predicates import Environment, World, exact_collides

__all__ = [
    "AngularRange",
    "Box",
    "Corner",
    "Decomposition",
    "Edge",
    "Environment",
    "NiceTriangle",
    "PlanResult",
    "Planner",
    "RobotPolygon",
    "World",
    "decompose",
    "exact_collides",
    "plan",
]

__version__ = "0.1.0"
