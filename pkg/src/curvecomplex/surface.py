"""Homeomorphism types of compact orientable surfaces."""

from __future__ import annotations

import re
from dataclasses import dataclass

_SURFACE_RE = re.compile(r"^\s*S\s*(\d+)\s*,\s*(\d+)\s*$")

# largest complexity for which the low-complexity inventory is tabulated
MAX_INVENTORY = 3


@dataclass(frozen=True, order=True)
class SurfaceType:
    """A compact orientable surface of given genus with ``boundary`` holes.

    Two values compare equal exactly when the surfaces are homeomorphic.
    """

    genus: int
    boundary: int

    def __post_init__(self):
        if self.genus < 0 or self.boundary < 0:
            raise ValueError(f"genus and boundary must be non-negative, got {self.genus}, {self.boundary}")

    @classmethod
    def parse(cls, text: str) -> "SurfaceType":
        """Parse the textual form ``S{genus},{boundary}``, e.g. ``"S1,2"``."""
        m = _SURFACE_RE.match(text)
        if m is None:
            raise ValueError(f"malformed surface {text!r}; expected e.g. 'S1,2'")
        return cls(int(m.group(1)), int(m.group(2)))

    @property
    def complexity(self) -> int:
        return complexity(self)

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.boundary

    @property
    def rank(self) -> int:
        """Rank of the free fundamental group (surfaces with boundary only)."""
        return 2 * self.genus + self.boundary - 1

    @classmethod
    def from_euler(cls, chi: int, boundary: int) -> "SurfaceType":
        twice_genus = 2 - chi - boundary
        if twice_genus < 0 or twice_genus % 2:
            raise ValueError(f"no orientable surface with chi={chi} and {boundary} boundary components")
        return cls(twice_genus // 2, boundary)

    def __str__(self):
        return f"S{self.genus},{self.boundary}"


def complexity(s: SurfaceType) -> int:
    """Return ``3 genus + boundary - 3``; negative for the sphere, disc and annulus."""
    return 3 * s.genus + s.boundary - 3


def homeomorphic(s1: SurfaceType, s2: SurfaceType) -> bool:
    return s1.genus == s2.genus and s1.boundary == s2.boundary


def inventory(k: int) -> set[SurfaceType]:
    """All surface types of complexity ``k`` for ``1 <= k <= 3``."""
    if not 1 <= k <= MAX_INVENTORY:
        raise ValueError(f"inventory is tabulated for complexities 1..{MAX_INVENTORY}, got {k}")
    # genus <= (k + 3) // 3 and boundary <= k + 3 bound every solution
    return {
        SurfaceType(g, b)
        for g in range((k + 3) // 3 + 1)
        for b in range(k + 4)
        if 3 * g + b - 3 == k
    }
