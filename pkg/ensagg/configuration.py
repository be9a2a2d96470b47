"""
Helpers shared by the validated configuration dataclasses
"""

# stdlib
import json
from dataclasses import fields
from typing import Any, Dict, Iterable, List

# module
from ensagg.exceptions import ConfigError


def check_keys(cls: type, data: dict, prefix: str = ""):
    """Raises a ConfigError naming the first key the dataclass does not define"""
    if not isinstance(data, dict):
        raise ConfigError(prefix.rstrip(".") or "config", "expected an object")
    known = {f.name for f in fields(cls)}
    for key in data:
        if key not in known:
            raise ConfigError(f"{prefix}{key}", "unknown configuration key")


def parse_value(text: str) -> Any:
    """JSON value if the text parses as one, else the raw string"""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def parse_overrides(items: Iterable[str]) -> Dict[str, Any]:
    """Parses dotted key=value pairs"""
    ret = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ConfigError(item, "override must look like key=value")
        ret[key.strip()] = parse_value(value.strip())
    return ret


def apply_overrides(data: dict, overrides: Dict[str, Any]) -> dict:
    """Sets dotted keys in a nested dict

    Unknown keys pass through here and fail validation later
    """
    for dotted, value in overrides.items():
        path: List[str] = dotted.split(".")
        node = data
        for i, key in enumerate(path[:-1]):
            node.setdefault(key, {})
            if not isinstance(node[key], dict):
                raise ConfigError(".".join(path[: i + 1]), "is not a configuration section")
            node = node[key]
        node[path[-1]] = value
    return data
