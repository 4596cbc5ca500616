"""Scenario files: flat key-value text describing one experiment.

Documented keys: name, a (a number or the word "stochastic" with
a_mean/a_sd), p, c1, u0/v0 or u0_raw/v0_raw (raw counts to normalize),
t_end, extinction_eps, record_interval, seed, outputs (comma-separated
subset of trajectory, summary, phase, time).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .estimation import AggressionModel, sample_aggression
from .integrate import IntegrationOptions
from .model import DomainError, ModelParams, State, normalize_counts

ALL_OUTPUTS = ("trajectory", "summary", "phase", "time")


class ScenarioError(ValueError):
    """Malformed or inconsistent scenario file."""


@dataclass(frozen=True)
class Scenario:
    name: str
    p: float
    c1: float
    a: float | None = None  # None means stochastic
    a_mean: float | None = None
    a_sd: float | None = None
    u0: float | None = None
    v0: float | None = None
    u0_raw: float | None = None
    v0_raw: float | None = None
    t_end: float = 50.0
    extinction_eps: float = 1e-3
    record_interval: float = 0.1
    seed: int | None = None
    outputs: tuple[str, ...] = ALL_OUTPUTS

    def __post_init__(self):
        if self.a is None and (self.a_mean is None or self.a_sd is None):
            raise ScenarioError("stochastic scenario needs a_mean and a_sd")
        has_direct = self.u0 is not None and self.v0 is not None
        has_raw = self.u0_raw is not None and self.v0_raw is not None
        if not (has_direct or has_raw):
            raise ScenarioError("scenario needs u0/v0 or u0_raw/v0_raw")
        for out in self.outputs:
            if out not in ALL_OUTPUTS:
                raise ScenarioError(f"unknown output kind {out!r}")

    def initial_state(self) -> State:
        if self.u0 is not None and self.v0 is not None:
            return State(self.u0, self.v0)
        return normalize_counts(self.u0_raw, self.v0_raw)

    def aggression_model(self) -> AggressionModel | None:
        if self.a is not None:
            return None
        return AggressionModel(self.a_mean, self.a_sd)

    def resolve_a(self, seed: int | None = None) -> float:
        """Concrete aggression value; stochastic scenarios draw one seeded sample."""
        if self.a is not None:
            return self.a
        use_seed = seed if seed is not None else self.seed
        if use_seed is None:
            raise ScenarioError("stochastic scenario needs a seed")
        return sample_aggression(self.aggression_model(), use_seed)

    def model_params(self, seed: int | None = None) -> ModelParams:
        return ModelParams(a=self.resolve_a(seed), p=self.p, c1=self.c1)

    def integration_options(self, stop_at_extinction: bool = True) -> IntegrationOptions:
        return IntegrationOptions(
            t_end=self.t_end,
            extinction_eps=self.extinction_eps,
            record_interval=self.record_interval,
            stop_at_extinction=stop_at_extinction,
        )


_FLOAT_KEYS = ("p", "c1", "a_mean", "a_sd", "u0", "v0", "u0_raw", "v0_raw",
               "t_end", "extinction_eps", "record_interval")


def parse_scenario(text: str) -> Scenario:
    kv: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ScenarioError(f"line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key in kv:
            raise ScenarioError(f"line {lineno}: duplicate key {key!r}")
        kv[key] = value

    def popf(key: str) -> float | None:
        if key not in kv:
            return None
        try:
            return float(kv.pop(key))
        except ValueError:
            raise ScenarioError(f"key {key!r}: not a number") from None

    name = kv.pop("name", None)
    if name is None:
        raise ScenarioError("missing 'name'")
    a: float | None
    a_raw = kv.pop("a", None)
    if a_raw is None:
        raise ScenarioError("missing 'a'")
    if a_raw == "stochastic":
        a = None
    else:
        try:
            a = float(a_raw)
        except ValueError:
            raise ScenarioError("key 'a': expected a number or 'stochastic'") from None
    floats = {k: popf(k) for k in _FLOAT_KEYS}
    seed = None
    if "seed" in kv:
        try:
            seed = int(kv.pop("seed"))
        except ValueError:
            raise ScenarioError("key 'seed': not an integer") from None
    outputs = ALL_OUTPUTS
    if "outputs" in kv:
        outputs = tuple(s.strip() for s in kv.pop("outputs").split(",") if s.strip())
    if kv:
        raise ScenarioError(f"unknown key(s): {', '.join(sorted(kv))}")
    required = {k: floats[k] for k in ("p", "c1")}
    for k, val in required.items():
        if val is None:
            raise ScenarioError(f"missing '{k}'")
    defaults = {}
    for k in ("t_end", "extinction_eps", "record_interval"):
        if floats[k] is not None:
            defaults[k] = floats[k]
    try:
        return Scenario(
            name=name, a=a,
            a_mean=floats["a_mean"], a_sd=floats["a_sd"],
            p=floats["p"], c1=floats["c1"],
            u0=floats["u0"], v0=floats["v0"],
            u0_raw=floats["u0_raw"], v0_raw=floats["v0_raw"],
            seed=seed, outputs=outputs, **defaults,
        )
    except DomainError as exc:
        raise ScenarioError(str(exc)) from exc


def serialize_scenario(sc: Scenario) -> str:
    lines = [f"name = {sc.name}"]
    lines.append("a = stochastic" if sc.a is None else f"a = {sc.a!r}")
    for key in ("a_mean", "a_sd", "p", "c1", "u0", "v0", "u0_raw", "v0_raw",
                "t_end", "extinction_eps", "record_interval"):
        value = getattr(sc, key)
        if value is not None:
            lines.append(f"{key} = {value!r}")
    if sc.seed is not None:
        lines.append(f"seed = {sc.seed}")
    lines.append(f"outputs = {','.join(sc.outputs)}")
    return "\n".join(lines) + "\n"


def load_scenario(path: str | Path) -> Scenario:
    return parse_scenario(Path(path).read_text(encoding="utf-8"))
