"""
Data load utilities
"""

# pylint: disable=missing-function-docstring

import json
from collections.abc import KeysView
from copy import deepcopy
from pathlib import Path
from typing import Iterable, Optional


class LazyLoad:
    """Lazy load a dictionary from the packaged JSON data"""

    source: Path
    data: Optional[dict] = None

    def __init__(self, filename: str):
        self.source = Path(__file__).parent.joinpath("data", f"{filename}.json")

    def _load(self):
        with self.source.open(encoding="utf8") as fin:
            self.data = json.load(fin)

    def __getitem__(self, key: str) -> dict:
        if not self.data:
            self._load()
        # Callers mutate presets with overrides
        return deepcopy(self.data[key])

    def __contains__(self, key: str) -> bool:
        if not self.data:
            self._load()
        return key in self.data

    def __iter__(self) -> Iterable[str]:
        if not self.data:
            self._load()
        yield from self.data

    def keys(self) -> KeysView:
        if not self.data:
            self._load()
        return self.data.keys()
