from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass

import numpy as np


class InvalidParamsError(ValueError):
    pass


class SolverKind(enum.Enum):
    LOCAL_SEARCH = "ls"
    SIMULATED_ANNEALING = "sa"
    PARALLEL_TEMPERING = "pt"
    PT_ICM = "pticm"

    @classmethod
    def parse(cls, value: str | SolverKind) -> SolverKind:
        if isinstance(value, SolverKind):
            return value
        key = value.strip().lower().replace("-", "").replace("_", "").replace("+", "")
        aliases = {
            "ls": cls.LOCAL_SEARCH, "localsearch": cls.LOCAL_SEARCH,
            "sa": cls.SIMULATED_ANNEALING, "simulatedannealing": cls.SIMULATED_ANNEALING,
            "pt": cls.PARALLEL_TEMPERING, "paralleltempering": cls.PARALLEL_TEMPERING,
            "pticm": cls.PT_ICM,
        }
        try:
            return aliases[key]
        except KeyError:
            raise InvalidParamsError(f"unknown solver kind {value!r}") from None


@dataclass(frozen=True)
class SolverParams:
    """Knobs for every baseline solver.

    Temperatures for SA act on the cut: a move losing ``d`` cut weight is
    accepted with probability ``exp(-d / T)``.  PT temperatures act on the
    Ising energy ``H = W - 2 * cut``, so the same ``T`` is twice as cold there.

    ``sa_t_hot=None`` calibrates the starting temperature on 100 probe flips
    so that about ``sa_initial_acceptance`` of them would be accepted.
    ``sa_factor=None`` derives the per-sweep cooling factor from the sweep
    budget so the last sweep runs at ``sa_t_cold``.
    """

    kind: SolverKind = SolverKind.SIMULATED_ANNEALING
    sweeps_per_run: int = 1000
    restarts: int = 1
    sa_t_hot: float | None = None
    sa_t_cold: float = 0.05
    sa_factor: float | None = None
    sa_initial_acceptance: float = 0.8
    sa_probe_flips: int = 100
    pt_replicas: int = 24
    pt_t_min: float = 0.2
    pt_t_max: float = 1.6
    pt_betas: tuple[float, ...] | None = None
    icm_period: int = 1

    def __post_init__(self):
        object.__setattr__(self, "kind", SolverKind.parse(self.kind))
        if self.pt_betas is not None:
            object.__setattr__(self, "pt_betas", tuple(float(b) for b in self.pt_betas))
        self.validate()

    def validate(self) -> None:
        if self.sweeps_per_run < 1:
            raise InvalidParamsError("sweeps_per_run must be >= 1")
        if self.restarts < 1:
            raise InvalidParamsError("restarts must be >= 1")
        if not self.sa_t_cold > 0:
            raise InvalidParamsError("sa_t_cold must be > 0")
        if self.sa_t_hot is not None and not self.sa_t_hot > self.sa_t_cold:
            raise InvalidParamsError("need sa_t_hot > sa_t_cold > 0")
        if self.sa_factor is not None and not 0 < self.sa_factor <= 1:
            raise InvalidParamsError("sa_factor must lie in (0, 1]")
        if not 0 < self.sa_initial_acceptance < 1:
            raise InvalidParamsError("sa_initial_acceptance must lie in (0, 1)")
        if self.sa_probe_flips < 1:
            raise InvalidParamsError("sa_probe_flips must be >= 1")
        if self.icm_period < 1:
            raise InvalidParamsError("icm_period must be >= 1")
        betas = self.betas()
        if len(betas) < 2:
            raise InvalidParamsError("parallel tempering needs at least 2 replicas")
        if not np.all(np.diff(betas) > 0) or betas[0] <= 0:
            raise InvalidParamsError("inverse-temperature ladder must be positive and strictly increasing")

    def betas(self) -> np.ndarray:
        """Inverse temperatures, hottest first."""
        if self.pt_betas is not None:
            return np.asarray(self.pt_betas, dtype=np.float64)
        if not 0 < self.pt_t_min < self.pt_t_max:
            raise InvalidParamsError("need 0 < pt_t_min < pt_t_max")
        if self.pt_replicas < 2:
            raise InvalidParamsError("parallel tempering needs at least 2 replicas")
        return np.geomspace(1.0 / self.pt_t_max, 1.0 / self.pt_t_min, self.pt_replicas)

    def replace(self, **changes) -> SolverParams:
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        out = dataclasses.asdict(self)
        out["kind"] = self.kind.value
        if self.pt_betas is not None:
            out["pt_betas"] = list(self.pt_betas)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> SolverParams:
        """Build from string or typed values (config files, CLI, JSON)."""
        names = {f.name: f for f in dataclasses.fields(cls)}
        kwargs = {}
        for key, value in data.items():
            key = key.strip().replace("-", "_")
            if key not in names:
                raise InvalidParamsError(f"unknown solver parameter {key!r}")
            if value is None:
                kwargs[key] = None
                continue
            kwargs[key] = _coerce(key, value)
        return cls(**kwargs)


_INT_KEYS = {"sweeps_per_run", "restarts", "sa_probe_flips", "pt_replicas", "icm_period"}
_OPTIONAL = {"sa_t_hot", "sa_factor", "pt_betas"}


def _coerce(key: str, value):
    if isinstance(value, str) and key in _OPTIONAL and value.strip().lower() in ("", "none", "auto"):
        return None
    if key == "kind":
        return SolverKind.parse(value)
    if key == "pt_betas":
        if isinstance(value, str):
            value = [v for v in value.replace(",", " ").split()]
        return tuple(float(v) for v in value)
    if key in _INT_KEYS:
        f = float(value)
        if not f.is_integer():
            raise InvalidParamsError(f"{key} must be an integer, got {value!r}")
        return int(f)
    f = float(value)
    if math.isnan(f):
        raise InvalidParamsError(f"{key} is NaN")
    return f


def read_config(text: str) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidParamsError(f"config line {lineno}: expected key = value")
        key, value = line.split("=", 1)
        out[key.strip().replace("-", "_")] = value.strip()
    return out


__all__ = ["SolverKind", "SolverParams", "InvalidParamsError", "read_config"]
