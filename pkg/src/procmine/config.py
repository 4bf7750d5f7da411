"""Run configuration: a flat key=value file merged with command-line flags
(flags win). Referenced paths are checked up front so a bad config fails
before any work starts."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .relatedness import Role

_PATH_KEYS = ("lexicon_dir", "cue_file", "context_procedural",
              "context_nonprocedural", "actionable_model", "procedure_model")


class ConfigError(ValueError):
    pass


def read_config_file(path: str | Path) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text("utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


@dataclass
class RunConfig:
    lexicon_dir: Path | None = None
    cue_file: Path | None = None
    context_procedural: Path | None = None
    context_nonprocedural: Path | None = None
    actionable_model: Path | None = None
    procedure_model: Path | None = None
    role_weights: tuple[float, float, float] = (3.0, 2.0, 1.0)
    seed: int | None = None

    @classmethod
    def from_sources(cls, config_path: str | Path | None,
                     overrides: dict) -> "RunConfig":
        raw: dict[str, str] = {}
        if config_path is not None:
            raw = read_config_file(config_path)
        merged = cls()
        for key in _PATH_KEYS:
            value = overrides.get(key) or raw.get(key)
            if value:
                setattr(merged, key, Path(value))
        weights = overrides.get("role_weights") or raw.get("role_weights")
        if weights:
            parts = [p for p in str(weights).replace(",", " ").split() if p]
            if len(parts) != 3:
                raise ConfigError(f"role_weights needs 3 numbers, got {weights!r}")
            merged.role_weights = tuple(float(p) for p in parts)
        seed = overrides.get("seed")
        if seed is None and "seed" in raw:
            seed = raw["seed"]
        if seed is not None:
            merged.seed = int(seed)
        return merged

    def check_paths(self) -> list[str]:
        missing = []
        for key in _PATH_KEYS:
            value = getattr(self, key)
            if value is not None and not Path(value).exists():
                missing.append(f"{key}: {value}")
        return missing

    def role_weight_map(self) -> dict[Role, float]:
        subject, obj, other = self.role_weights
        return {Role.SUBJECT: subject, Role.OBJECT: obj, Role.OTHER: other}
