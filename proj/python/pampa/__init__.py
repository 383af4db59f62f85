"""Python front end for the pampa solver library."""

import os
from pathlib import Path

# A wheel ships the presets next to the module; editable builds point at the source tree.
_presets = Path(__file__).with_name("presets")
if _presets.is_dir() and "PAMPA_PRESETS" not in os.environ:
    os.environ["PAMPA_PRESETS"] = str(_presets)

from ._pampa import (  # noqa: E402
    ConfigError,
    DomainError,
    InvariantViolation,
    config_yaml,
    convergence,
    format_number,
    lf_splitting,
    list_presets,
    preset_directory,
    run,
    thm43,
    verify,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "InvariantViolation",
    "config_yaml",
    "convergence",
    "format_number",
    "lf_splitting",
    "list_presets",
    "preset_directory",
    "run",
    "thm43",
    "verify",
]
