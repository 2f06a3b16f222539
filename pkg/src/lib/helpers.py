import ast
import copy
import re

from lib.graph import EntityType
from pathlib import Path
from typing import Any

DEFAULT_CONFIG: dict[str, dict[str, Any]] = {
    "KATZ": {
        "alpha_scale": 0.85,
        "normalize": True,
        "tol": 1e-10,
        "max_iters": 10000
    },
    "SPECTRAL": {
        "tol": 1e-8,
        "max_iters": 10000
    },
    "REPORT": {
        "top": 20
    },
    "COLORS": {
        "protein": "blue",
        "drug": "green",
        "disease": "red",
        "taxonomy": "orange"
    }
}

COLOR_PATTERN = re.compile(r'[a-z]+[0-9]*|#[0-9a-fA-F]{6}')


def labelled_file(out_dir: Path, file_path: Path,
                  label: str, suffix: str | None = None) -> Path:
    """
    Insert a text label into a filename and append to directory
    """

    if suffix is None:
        suffix = file_path.suffix
    new_name = file_path.stem + '_' + label + suffix
    return out_dir / new_name


def validate_colors(colors: dict[str, str]) -> dict[EntityType, str]:
    """
    Turn a `COLORS` config section into a color map keyed by entity type.
    The map must cover all four entity types with DOT color names or
    `#rrggbb` values.

    :param colors: Mapping of type labels to color names
    :return: Mapping of EntityType to color name
    """
    color_map = {EntityType.from_label(str(label)): color
                 for label, color in colors.items()}
    missing = [str(etype) for etype in EntityType if etype not in color_map]
    if missing:
        raise ValueError(f"No color given for entity types: {missing}")
    bad = [c for c in color_map.values()
           if not isinstance(c, str) or not COLOR_PATTERN.fullmatch(c)]
    if bad:
        raise ValueError(f"Invalid DOT color names: {bad}")
    return color_map


def setting_matches(default: Any, value: Any) -> bool:
    if isinstance(default, bool) or isinstance(value, bool):
        return isinstance(default, bool) and isinstance(value, bool)
    if isinstance(default, float):
        return isinstance(value, (int, float))
    return isinstance(value, type(default))


def load_config(config_file: str | Path | None) -> dict[str, dict[str, Any]]:
    """
    Read a config file holding a python dictionary literal and lay it over
    the default settings. Only the sections of `DEFAULT_CONFIG` are allowed.

    :param config_file: Path to the config file, or None for the defaults
    :return: The merged config
    :raises SyntaxError: if the file is not a valid dictionary literal
    :raises KeyError: if the file names an unknown section or setting
    :raises ValueError: if a section is not a dictionary or a setting has
                        the wrong type
    """
    config = copy.deepcopy(DEFAULT_CONFIG)
    if config_file is None:
        return config

    with open(config_file) as data:
        overrides = ast.literal_eval(data.read())
    if not isinstance(overrides, dict):
        raise ValueError(f"Config file {config_file} does not hold a dictionary")
    unknown = [key for key in overrides if key not in DEFAULT_CONFIG]
    if unknown:
        raise KeyError(f"Unknown config sections {unknown}, expected "
                       f"{list(DEFAULT_CONFIG.keys())}")

    for section, values in overrides.items():
        if not isinstance(values, dict):
            raise ValueError(f"Config section {section} must be a dictionary, "
                             f"got {values!r}")
        if section == "COLORS":
            config[section] = dict(values)
            continue
        defaults = DEFAULT_CONFIG[section]
        unknown = [key for key in values if key not in defaults]
        if unknown:
            raise KeyError(f"Unknown {section} settings {unknown}, expected "
                           f"{list(defaults.keys())}")
        wrong = [key for key, value in values.items()
                 if not setting_matches(defaults[key], value)]
        if wrong:
            raise ValueError(f"Wrong type for {section} settings {wrong}")
        config[section].update(values)
    validate_colors(config["COLORS"])
    return config
