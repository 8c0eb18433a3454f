"""bevsim: deterministic YAML-configured BEV longitudinal simulation."""

from ._version import __version__  # noqa: F401
from .config import (  # noqa: F401
    TestcaseConfig,
    VehicleConfig,
    effective_mass,
    load_testcase,
    load_vehicle,
)
from .cycles import DriveCycle, build_parametric, load_cycle_csv, resample  # noqa: F401
from .engine import Engine, RunResult, build_engine  # noqa: F401
from .post import EnergyBudget, integrate_budget, write_case_package  # noqa: F401
from .workflow import load_route_cycle, run_case  # noqa: F401
