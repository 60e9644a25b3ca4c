from __future__ import annotations

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any


class Renderer(ABC):  # pylint: disable=too-few-public-methods
    @abstractmethod
    def render(self, payload: Any, out_path: Path) -> None:  # noqa: D401
        """Render *payload* to *out_path* (write file to disk)."""
