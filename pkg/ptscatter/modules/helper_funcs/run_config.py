import json
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from ptscatter import HBAR2_OVER_2M, OUT_DIR
from ptscatter.error import ConfigError, InvalidParameterError, WindowError
from ptscatter.physics import DEFAULT_PROMINENCE, DEFAULT_WINDOW
from ptscatter.physics.eptrace import hermitian_reference_energy
from ptscatter.physics.potential import DimerParams, big_gamma_to_gamma


def _number(key: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"key {key!r}: expected a number, got {value!r}")
    return float(value)


def _integer(key: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"key {key!r}: expected an integer, got {value!r}")
    return value


def _numbers(key: str, value: Any) -> Tuple[float, ...]:
    if not isinstance(value, list):
        raise ConfigError(f"key {key!r}: expected a list of numbers, got {value!r}")
    return tuple(_number(f"{key}[{i}]", item) for i, item in enumerate(value))


def _window(key: str, value: Any) -> Tuple[float, float]:
    values = _numbers(key, value)
    if len(values) != 2:
        raise ConfigError(f"key {key!r}: expected [e_min, e_max], got {value!r}")
    return values


def _optional_number(key: str, value: Any) -> Optional[float]:
    return None if value is None else _number(key, value)


def _string(key: str, value: Any) -> str:
    if not isinstance(value, str) or not value:
        raise ConfigError(f"key {key!r}: expected a non-empty string, got {value!r}")
    return value


@dataclass(frozen=True)
class RunConfig:
    """Settings of one command line run, read from a JSON document."""

    a: float = 1.15
    b: float = 0.02
    c: float = 0.01
    v_barrier: float = 50.0
    v_prime: float = 0.0
    hbar2_over_2m: float = HBAR2_OVER_2M
    gammas: Tuple[float, ...] = (0.0,)
    big_gammas: Tuple[float, ...] = ()
    energy_ref: Optional[float] = None
    window: Tuple[float, float] = DEFAULT_WINDOW
    n_points: int = 4001
    prominence: float = DEFAULT_PROMINENCE
    n_bins: int = 64
    wave_points: int = 2001
    padding: float = 0.2
    gamma_lo: float = 0.0
    gamma_hi: float = 0.05
    tol_gamma: float = 1e-6
    fit_points: int = 12
    fit_span: float = 0.5
    out_dir: str = field(default=OUT_DIR)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("run config must be a JSON object")
        unknown = sorted(set(data) - set(PARSERS))
        if unknown:
            raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
        return cls(**{key: PARSERS[key](key, value) for key, value in data.items()}).validate()

    @classmethod
    def from_text(cls, text: str, source: str = "<config>") -> "RunConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise ConfigError(f"{source}: line {err.lineno}, column {err.colno}: {err.msg}") from err
        try:
            return cls.from_dict(data)
        except ConfigError as err:
            raise type(err)(f"{source}: {err.message}") from err

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        try:
            with open(path, "r", encoding="utf-8") as json_file:
                text = json_file.read()
        except OSError as err:
            raise ConfigError(f"cannot read config {path}: {err.strerror}") from err
        return cls.from_text(text, path)

    def with_overrides(self, gammas: Sequence[float] = (), out_dir: Optional[str] = None) -> "RunConfig":
        """Command line flags win over file keys; --gamma replaces both gamma lists."""
        changes: Dict[str, Any] = {}
        if gammas:
            changes.update(gammas=tuple(float(g) for g in gammas), big_gammas=())
        if out_dir:
            changes["out_dir"] = out_dir
        return replace(self, **changes).validate() if changes else self

    @property
    def params(self) -> DimerParams:
        return DimerParams(self.a, self.c, self.b, self.v_barrier, self.v_prime)

    def validate(self) -> "RunConfig":
        self.params.validate()
        if not self.hbar2_over_2m > 0:
            raise InvalidParameterError(f"hbar2_over_2m must be positive, got {self.hbar2_over_2m!r}")
        if not self.gammas and not self.big_gammas:
            raise ConfigError("gamma list is empty")
        if any(value < 0 for value in self.big_gammas):
            raise ConfigError("big_gammas must be non-negative")
        e_min, e_max = self.window
        if not self.v_prime < e_min < e_max < self.v_barrier:
            raise WindowError(
                f"window [{e_min!r}, {e_max!r}] must lie inside ({self.v_prime!r}, {self.v_barrier!r})",
            )
        if self.n_points < 3:
            raise ConfigError(f"n_points must be at least 3, got {self.n_points}")
        if self.n_bins < 2:
            raise ConfigError(f"n_bins must be at least 2, got {self.n_bins}")
        if self.wave_points < 14:
            raise ConfigError(f"wave_points must be at least 14, got {self.wave_points}")
        if not 0 < self.prominence < 1:
            raise ConfigError(f"prominence must lie in (0, 1), got {self.prominence!r}")
        if self.padding < 0:
            raise ConfigError(f"padding must be non-negative, got {self.padding!r}")
        if not 0 <= self.gamma_lo < self.gamma_hi:
            raise ConfigError(f"need 0 <= gamma_lo < gamma_hi, got {self.gamma_lo!r}, {self.gamma_hi!r}")
        if not self.tol_gamma > 0:
            raise ConfigError(f"tol_gamma must be positive, got {self.tol_gamma!r}")
        if self.fit_points < 5:
            raise ConfigError(f"fit_points must be at least 5, got {self.fit_points}")
        if not 0.05 < self.fit_span < 1:
            raise ConfigError(f"fit_span must lie in (0.05, 1), got {self.fit_span!r}")
        if self.energy_ref is not None and not self.energy_ref > self.v_prime:
            raise ConfigError(f"energy_ref must exceed v_prime, got {self.energy_ref!r}")
        return self

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["gammas"] = list(self.gammas)
        data["big_gammas"] = list(self.big_gammas)
        data["window"] = list(self.window)
        return data


PARSERS: Dict[str, Callable[[str, Any], Any]] = {
    "a": _number,
    "b": _number,
    "c": _number,
    "v_barrier": _number,
    "v_prime": _number,
    "hbar2_over_2m": _number,
    "gammas": _numbers,
    "big_gammas": _numbers,
    "energy_ref": _optional_number,
    "window": _window,
    "n_points": _integer,
    "prominence": _number,
    "n_bins": _integer,
    "wave_points": _integer,
    "padding": _number,
    "gamma_lo": _number,
    "gamma_hi": _number,
    "tol_gamma": _number,
    "fit_points": _integer,
    "fit_span": _number,
    "out_dir": _string,
}


def load_run_config(path: Optional[str] = None, gammas: Sequence[float] = (), out_dir: Optional[str] = None) -> RunConfig:
    config = RunConfig.from_file(path) if path else RunConfig().validate()
    return config.with_overrides(gammas, out_dir)


def reference_energy(config: RunConfig) -> float:
    """The configured E_ref, else the mean of the gamma = 0 doublet."""
    if config.energy_ref is not None:
        return config.energy_ref
    return hermitian_reference_energy(
        config.params, config.window, config.n_points, config.prominence, config.hbar2_over_2m,
    )


def resolve_gammas(config: RunConfig, energy_ref: Optional[float] = None) -> List[float]:
    """``gammas`` followed by the ``big_gammas`` converted at E_ref."""
    values = list(config.gammas)
    if config.big_gammas:
        energy_ref = reference_energy(config) if energy_ref is None else energy_ref
        values.extend(
            big_gamma_to_gamma(big_gamma, energy_ref, config.v_prime, config.hbar2_over_2m)
            for big_gamma in config.big_gammas
        )
    return values
