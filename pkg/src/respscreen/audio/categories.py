"""The closed set of nine respiratory sound categories.

Enum order is the collection order shown to users: breathing, cough,
counting, then sustained vowels. The ``value`` of each member is its stable
wire identifier, used in URLs, weight file names, and fusion configs.
"""

from __future__ import annotations

import enum

from respscreen.errors import UnknownCategory


class SoundCategory(enum.Enum):
    BREATHING_DEEP = "breathing-deep"
    BREATHING_SHALLOW = "breathing-shallow"
    COUGH_HEAVY = "cough-heavy"
    COUGH_SHALLOW = "cough-shallow"
    COUNTING_FAST = "counting-fast"
    COUNTING_NORMAL = "counting-normal"
    VOWEL_A = "vowel-a"
    VOWEL_E = "vowel-e"
    VOWEL_O = "vowel-o"

    @property
    def wire_id(self) -> str:
        return self.value

    @classmethod
    def from_wire(cls, identifier: str) -> "SoundCategory":
        """Resolve a wire identifier, rejecting anything outside the nine."""
        try:
            return cls(identifier)
        except ValueError:
            raise UnknownCategory(f"unknown sound category: {identifier!r}") from None


ALL_CATEGORIES: tuple[SoundCategory, ...] = tuple(SoundCategory)
