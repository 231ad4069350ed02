"""Run configuration: one flat record controlling a single optimization run."""

from dataclasses import dataclass, field, fields, replace

__all__ = ["RunConfig", "parse_config_file", "config_from_mapping"]

ALGORITHMS = ("gsqpo", "qgsqpo", "rex")

# fixed-q comparison levels used alongside the replica-exchange runs
DEFAULT_Q_SET = (1.231, 1.414, 1.625, 1.866, 2.0)
DEFAULT_AMPLITUDES = (0.01, 0.25, 0.5, 0.75, 1.0)


@dataclass(frozen=True)
class RunConfig:
    objective: str = "ackley"
    d: int = 10
    algorithm: str = "rex"
    n_particles: int = 20
    n_replicas: int = 5
    q: float = 1.0               # fixed-q algorithms only
    q_max: float = 3.0
    k: float = 0.0005
    g: float = 0.5
    omega: float = 0.1
    amplitude: float = 0.5
    exchange_interval: int = 1
    tol: float = 1e-5
    max_iterations: int = 50_000
    seed: int = 0
    literature_forms: bool = False
    outdir: str = "runs"

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}, got '{self.algorithm}'")
        if self.algorithm == "rex":
            if self.n_replicas < 2:
                raise ValueError("rex requires at least 2 replicas")
        else:
            if self.n_replicas > 1:
                raise ValueError("fixed-q runs forbid more than one replica")
        if self.algorithm == "gsqpo" and self.q != 1.0:
            raise ValueError("gsqpo runs at q = 1 by definition")
        if self.n_particles < 2:
            raise ValueError("n_particles must be at least 2")
        if self.q_max <= 1.0:
            raise ValueError("q_max must exceed 1")
        if self.k <= 0.0:
            raise ValueError("k must be positive")
        if not 1.0 <= self.q < 3.0:
            raise ValueError("q must lie in [1, 3)")
        if self.exchange_interval < 1:
            raise ValueError("exchange_interval must be at least 1")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be non-negative")

    def with_overrides(self, **kwargs) -> "RunConfig":
        return replace(self, **kwargs)


_BOOL_TRUE = {"1", "true", "yes", "on"}
_BOOL_FALSE = {"0", "false", "no", "off"}


def _coerce(raw: str, target_type):
    raw = raw.strip()
    if target_type is bool:
        low = raw.lower()
        if low in _BOOL_TRUE:
            return True
        if low in _BOOL_FALSE:
            return False
        raise ValueError(f"cannot interpret '{raw}' as a boolean")
    return target_type(raw)


def config_from_mapping(mapping: dict, base: RunConfig | None = None) -> RunConfig:
    """Build a RunConfig from string keys/values, reporting the offending key."""
    base = base or RunConfig()
    types = {f.name: f.type for f in fields(RunConfig)}
    pytypes = {"str": str, "int": int, "float": float, "bool": bool}
    kwargs = {}
    for key, value in mapping.items():
        if key not in types:
            raise ValueError(f"unknown configuration key '{key}'")
        target = pytypes[types[key]] if isinstance(types[key], str) else types[key]
        try:
            kwargs[key] = _coerce(value, target) if isinstance(value, str) else value
        except (TypeError, ValueError) as exc:
            raise ValueError(f"bad value for configuration key '{key}': {exc}") from exc
    return base.with_overrides(**kwargs)


def parse_config_file(path) -> dict:
    """Read a flat 'key = value' file; '#' starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out
