from .advection import AdvectionConfig, InitialCondition, RunReport, run_advection
from .bench import BenchRow, run_apply_benchmark
from .tables import emit_tables

__all__ = ["AdvectionConfig", "InitialCondition", "RunReport", "run_advection",
           "BenchRow", "run_apply_benchmark", "emit_tables"]
