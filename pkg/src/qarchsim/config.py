"""Strict TOML run configuration: unknown keys are rejected with their path,
values are type- and range-checked before any work starts."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .hamiltonians import BenchmarkSpec, Model
from .synthesis import SynthesisParams

KNOWN_ARCHITECTURES = ("extractor-base", "extractor-parallel", "transversal")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ArchitectureConfig:
    code: str = "two_gross"
    factories: tuple[int, ...] = (1, 2, 3, 5, 10, 15, 25, 50)
    discard_rate: float = 0.8
    width_max: int | None = None
    architectures: tuple[str, ...] = KNOWN_ARCHITECTURES


@dataclass(frozen=True)
class SimulationConfig:
    seeds: int = 10
    base_seed: int = 20240901
    collect_trace: bool = False


@dataclass(frozen=True)
class RunConfig:
    name: str
    benchmark: BenchmarkSpec
    synthesis: SynthesisParams
    t_count_override: int | None
    architecture: ArchitectureConfig
    simulation: SimulationConfig

    @property
    def scale_factor(self) -> int:
        return self.benchmark.trotter_steps


def _require(table: dict, path: str, allowed: dict[str, type | tuple[type, ...]]) -> None:
    for key in table:
        if key not in allowed:
            raise ConfigError(f"unknown key '{path}.{key}'")
    for key, value in table.items():
        want = allowed[key]
        if want is float:
            want = (int, float)
        if not isinstance(value, want) or isinstance(value, bool) and want is not bool:
            raise ConfigError(f"'{path}.{key}' has wrong type {type(value).__name__}")


_MODEL_NAMES = {
    "heisenberg": Model.HEISENBERG_2D,
    "nn_tfim": Model.TFIM_NN_2D,
    "long_range_tfim": Model.TFIM_LR_2D,
    "fermi_hubbard": Model.FERMI_HUBBARD,
}


def _parse_benchmark(table: dict) -> tuple[str, BenchmarkSpec]:
    _require(table, "benchmark", {
        "name": str, "model": str, "rows": int, "cols": int,
        "trotter_order": int, "trotter_steps": int, "evolution_time": float,
        "precision": float, "jx": float, "jy": float, "jz": float,
        "j": float, "b": float, "alpha": float, "t_hop": float,
        "u_onsite": float,
    })
    for key in ("model", "rows", "cols"):
        if key not in table:
            raise ConfigError(f"'benchmark.{key}' is required")
    model_name = table["model"]
    if model_name not in _MODEL_NAMES:
        raise ConfigError(f"unknown model '{model_name}'; choose from "
                          f"{sorted(_MODEL_NAMES)}")
    kwargs = {k: v for k, v in table.items() if k not in ("name", "model")}
    kwargs = {k: (float(v) if k in ("evolution_time", "precision", "jx", "jy",
                                    "jz", "j", "b", "alpha", "t_hop",
                                    "u_onsite") else v)
              for k, v in kwargs.items()}
    spec = BenchmarkSpec(model=_MODEL_NAMES[model_name], **kwargs)
    name = table.get("name", f"{model_name}_{spec.rows}x{spec.cols}")
    return name, spec


def _parse_synthesis(table: dict) -> tuple[SynthesisParams, int | None]:
    _require(table, "synthesis", {
        "t_per_rotation_coefficient": float, "clifford_per_t_ratio": float,
        "clifford_depth_reduction": float, "t_count_override": int,
    })
    override = table.pop("t_count_override", None)
    if override is not None and override < 1:
        raise ConfigError("'synthesis.t_count_override' must be positive")
    return SynthesisParams(**{k: float(v) for k, v in table.items()}), override


def _parse_architecture(table: dict) -> ArchitectureConfig:
    from .resources import CODES

    _require(table, "architecture", {
        "code": str, "factories": list, "discard_rate": float,
        "width_max": int, "architectures": list,
    })
    code = table.get("code", "two_gross")
    if code not in CODES:
        raise ConfigError(f"unknown code '{code}'; choose from {sorted(CODES)}")
    factories = table.get("factories", list(ArchitectureConfig.factories))
    if (not factories or any(not isinstance(f, int) or isinstance(f, bool)
                             or f < 1 for f in factories)):
        raise ConfigError("'architecture.factories' must be positive integers")
    archs = table.get("architectures", list(KNOWN_ARCHITECTURES))
    for a in archs:
        if a not in KNOWN_ARCHITECTURES:
            raise ConfigError(f"unknown architecture '{a}'; choose from "
                              f"{KNOWN_ARCHITECTURES}")
    discard = float(table.get("discard_rate", 0.8))
    if not 0.0 <= discard < 1.0:
        raise ConfigError("'architecture.discard_rate' must lie in [0, 1)")
    width_max = table.get("width_max")
    if width_max is not None and width_max < 1:
        raise ConfigError("'architecture.width_max' must be >= 1")
    return ArchitectureConfig(code=code, factories=tuple(factories),
                              discard_rate=discard, width_max=width_max,
                              architectures=tuple(archs))


def _parse_simulation(table: dict) -> SimulationConfig:
    _require(table, "simulation", {
        "seeds": int, "base_seed": int, "collect_trace": bool,
    })
    seeds = table.get("seeds", 10)
    if seeds < 1:
        raise ConfigError("'simulation.seeds' must be >= 1")
    return SimulationConfig(seeds=seeds,
                            base_seed=table.get("base_seed", 20240901),
                            collect_trace=table.get("collect_trace", False))


def parse_config(data: dict) -> RunConfig:
    _require(data, "config", {
        "benchmark": dict, "synthesis": dict, "architecture": dict,
        "simulation": dict,
    })
    if "benchmark" not in data:
        raise ConfigError("'benchmark' table is required")
    name, spec = _parse_benchmark(dict(data["benchmark"]))
    synth, override = _parse_synthesis(dict(data.get("synthesis", {})))
    if override is not None and override % spec.trotter_steps != 0:
        raise ConfigError("'synthesis.t_count_override' must divide evenly "
                          "across trotter_steps")
    arch = _parse_architecture(dict(data.get("architecture", {})))
    sim = _parse_simulation(dict(data.get("simulation", {})))
    return RunConfig(name=name, benchmark=spec, synthesis=synth,
                     t_count_override=override, architecture=arch,
                     simulation=sim)


def load_config(path: str | Path) -> RunConfig:
    with open(path, "rb") as fh:
        try:
            data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"invalid TOML in {path}: {exc}") from exc
    return parse_config(data)
