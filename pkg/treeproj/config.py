import os
from dataclasses import dataclass

from .errors import ParameterError

# --- Configuration ---
DEFAULT_MAX_ENUM = 10**7          # oracle refuses to enumerate more supports than this
REL_TOL = 1e-9                    # ETP vs oracle energy agreement
PERTURB_EPS = 1e-6                # uniqueness perturbation step (i * eps per coefficient)
SCALING_RATIO_MIN = 1.0
SCALING_RATIO_MAX = 3.0
ENUM_CHUNK_ROWS = 2**16           # supports scored per numpy batch by the oracle
SUBSET_FILTER_MAX_N = 16          # C(N, k) cross-check is only attempted up to here
DEFAULT_BENCH_SEED = 0
COMMENT_PREFIX = "#"
INT64_MAX = 2**63 - 1

DEFAULT_LOG_LEVEL = "INFO"
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

# Environment overrides
ENV_MAX_ENUM = "TREEPROJ_MAX_ENUM"
ENV_REL_TOL = "TREEPROJ_REL_TOL"
ENV_LOG_LEVEL = "TREEPROJ_LOG_LEVEL"


@dataclass(frozen=True)
class Settings:
    """Run-time tunables. CLI flags override environment, environment overrides defaults."""

    max_enum: int = DEFAULT_MAX_ENUM
    rel_tol: float = REL_TOL
    perturb_eps: float = PERTURB_EPS
    log_level: str = DEFAULT_LOG_LEVEL

    @classmethod
    def from_env(cls, environ=None) -> "Settings":
        """
        Builds settings from TREEPROJ_* environment variables.

        Raises:
            ParameterError: if a variable is set but cannot be parsed.
        """
        environ = os.environ if environ is None else environ
        max_enum = environ.get(ENV_MAX_ENUM)
        rel_tol = environ.get(ENV_REL_TOL)
        log_level = environ.get(ENV_LOG_LEVEL, DEFAULT_LOG_LEVEL).upper()
        if log_level not in LOG_LEVELS:
            raise ParameterError(f"Invalid {ENV_LOG_LEVEL} {log_level!r}; choose from {', '.join(LOG_LEVELS)}")
        try:
            return cls(
                max_enum=int(max_enum) if max_enum else DEFAULT_MAX_ENUM,
                rel_tol=float(rel_tol) if rel_tol else REL_TOL,
                log_level=log_level,
            )
        except ValueError as e:
            raise ParameterError(f"Invalid TREEPROJ_* environment setting: {e}") from e

    def with_overrides(self, **overrides) -> "Settings":
        """Returns a copy with every non-None override applied."""
        values = {name: getattr(self, name) for name in self.__dataclass_fields__}
        values.update({name: value for name, value in overrides.items() if value is not None})
        return Settings(**values)
