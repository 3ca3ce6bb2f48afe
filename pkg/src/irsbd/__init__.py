"""Block-diagonalization precoding for a two-user IRS-aided MU-MIMO downlink."""
from .config import ScenarioConfig, load_config, parse_config
from .sweep import SweepResult, run_sweep
from .txrx import MethodId

__all__ = ["ScenarioConfig", "load_config", "parse_config", "SweepResult", "run_sweep", "MethodId"]
__version__ = "0.1.0"
