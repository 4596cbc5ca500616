"""Access to the bundled scenario files and the engagement fixture."""
from __future__ import annotations

from importlib.resources import files
from pathlib import Path


def data_dir() -> Path:
    return Path(str(files("lvstrat") / "data"))


def scenario_path(name: str) -> Path:
    return data_dir() / "scenarios" / f"{name}.scenario"


def engagement_csv_path() -> Path:
    return data_dir() / "engagement_2024h2.csv"


def list_scenarios() -> list[str]:
    return sorted(p.stem for p in (data_dir() / "scenarios").glob("*.scenario"))
