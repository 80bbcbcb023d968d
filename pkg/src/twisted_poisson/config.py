"""Run configuration and report models, plus resolution into a :class:`Problem`."""

from __future__ import annotations

import json
import random
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Literal, Union

from pydantic import AliasChoices, BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from . import __version__
from .linalg import as_fraction, fraction_str
from .rootdata import CartanError, Lattice, build_cartan, cartan_matrix_for_type
from .suites import REGISTRY, Problem, ordered

WORKERS_ENV = "TWISTED_POISSON_WORKERS"


class ConfigError(ValueError):
    """Raised for anything wrong with the user-supplied configuration."""


Rational = Union[int, str]


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    type: str | None = Field(None, description="Cartan type such as A2, B2, C3, G2")
    cartan: list[list[int]] | None = Field(None, validation_alias=AliasChoices("cartan", "matrix"),
                                           description="explicit Cartan matrix")
    u: Union[Literal[0], Literal["zero", "random"], list[list[Rational]]] = 0
    u_seed: int | None = Field(None, description="seed for a random twist; defaults to sample_seed")
    lattice: str = "weight_lattice"
    suites: list[str] = Field(default_factory=lambda: list(REGISTRY))
    max_word_len: int = Field(3, ge=1)
    certificate_level: int = Field(2, ge=1)
    sample_seed: int = 0
    samples: int = Field(100, ge=1)
    weyl_pairs: list[list[str]] | None = Field(
        None, description='pairs of reduced words such as ["s1", "s1s2"]; "e" is the identity')
    output: str | None = None

    @field_validator("suites")
    @classmethod
    def _known_suites(cls, value: list[str]) -> list[str]:
        unknown = [s for s in value if s not in REGISTRY]
        if unknown:
            raise ValueError(f"unknown suite(s) {unknown}; choose from {list(REGISTRY)}")
        return value

    @field_validator("lattice")
    @classmethod
    def _lattice(cls, value: str) -> str:
        return Lattice.parse(value).value

    @field_validator("weyl_pairs")
    @classmethod
    def _pairs(cls, value):
        if value is not None:
            for pair in value:
                if len(pair) != 2 or not all(re.fullmatch(r"e|(s\d+)+", w) for w in pair):
                    raise ValueError(f"weyl pair {pair!r} must be two words like 'e' or 's1s2'")
        return value

    @model_validator(mode="after")
    def _one_cartan(self):
        if (self.type is None) == (self.cartan is None):
            raise ValueError("give exactly one of 'type' and 'cartan'")
        return self


class SuiteSummary(BaseModel):
    suite: str
    status: Literal["pass", "fail"]
    checked: int
    failed: int
    error: str | None
    checks: list[dict[str, Any]]


class Report(BaseModel):
    library_version: str
    status: Literal["pass", "fail"]
    config: dict[str, Any]
    resolved: dict[str, Any]
    suites: list[SuiteSummary]
    timings: dict[str, float]

    def normalized(self) -> dict[str, Any]:
        """The report without wall-clock data; identical across reruns of one config."""
        data = self.model_dump()
        data.pop("timings")
        return data


def random_twist(n: int, seed: int) -> list[list[Fraction]]:
    """Skew matrix with entries p/q, |p| <= 9, 1 <= q <= 4, above the diagonal."""
    rng = random.Random(seed)
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            value = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            u[i][j], u[j][i] = value, -value
    return u


def _parse_word(text: str) -> tuple[int, ...]:
    return () if text == "e" else tuple(int(k) - 1 for k in re.findall(r"s(\d+)", text))


def resolve(config: RunConfig) -> Problem:
    """Validate the mathematical content and build the frozen problem description."""
    try:
        matrix = cartan_matrix_for_type(config.type) if config.type else config.cartan
        cd = build_cartan(matrix, Lattice.parse(config.lattice))
    except (CartanError, ValueError, KeyError) as exc:
        raise ConfigError(f"invalid Cartan data: {exc}") from exc
    n = cd.n
    if config.u in (0, "zero"):
        u = None
    elif config.u == "random":
        u = random_twist(n, config.sample_seed if config.u_seed is None else config.u_seed)
    else:
        try:
            u = [[as_fraction(x) for x in row] for row in config.u]
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"invalid twist entry: {exc}") from exc
        if len(u) != n or any(len(row) != n for row in u):
            raise ConfigError(f"twist matrix must be {n}x{n}")
        if any(u[i][j] != -u[j][i] for i in range(n) for j in range(n)):
            raise ConfigError("twist matrix must be skew-symmetric")
    pairs = None
    if config.weyl_pairs is not None:
        pairs = tuple((_parse_word(a), _parse_word(b)) for a, b in config.weyl_pairs)
        if any(k >= n for pair in pairs for word in pair for k in word):
            raise ConfigError("weyl pair uses a simple reflection beyond the rank")
    return Problem(
        cartan=tuple(tuple(row) for row in cd.a),
        u=tuple(tuple(row) for row in u) if u is not None else None,
        lattice=cd.lattice,
        max_word_len=config.max_word_len,
        certificate_level=config.certificate_level,
        sample_seed=config.sample_seed,
        samples=config.samples,
        weyl_pairs=pairs,
    )


def resolved_summary(problem: Problem, suites: list[str]) -> dict[str, Any]:
    return {
        "cartan": [list(row) for row in problem.cartan],
        "u": None if problem.u is None else [[fraction_str(x) for x in row] for row in problem.u],
        "lattice": problem.lattice.value,
        "suites": ordered(suites),
    }


def load_config(path: str | Path, suites: list[str] | None = None, output: str | None = None) -> RunConfig:
    """Read a JSON config file; command-line suites and output override the file."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    if suites:
        data["suites"] = suites
    if output:
        data["output"] = output
    return parse_config(data)


def parse_config(data: dict[str, Any]) -> RunConfig:
    try:
        return RunConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc


def library_version() -> str:
    return __version__
