from .config import BUILTIN_CONFIGS, ConfigError, load_config, parse_config_text
from .harness import BenchPlan, emit_csv, read_csv, run_benchmark
from .profile import IncompleteMatrix, ProfileCurve, emit_profile, performance_profile, read_profile_csv
