import functools
import pathlib
import tomllib
from typing import Any, Dict

CONFIG_PATH = pathlib.Path(__file__).parent / "config.toml"


@functools.cache
def load_config() -> Dict[str, Any]:
    with open(CONFIG_PATH, "rb") as f:
        return tomllib.load(f)


def lawlab_setting(name: str) -> Any:
    return load_config()["lawlab"][name]


def sampling_setting(name: str) -> Any:
    return load_config()["sampling"][name]


def default_tolerance(law: str) -> float:
    """Default tolerance for a law id, as listed under ``[lawlab.tolerances]``."""
    return float(load_config()["lawlab"]["tolerances"][law])
