"""Finite group presentations and the HNN presentations of mapping-torus
fundamental groups."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import MalformedInputError, RankMismatchError
from .words import FreeGroupMap, FreeWord, word_to_text


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[FreeWord, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if len(set(self.generators)) != len(self.generators):
            raise MalformedInputError("duplicate generator names")
        n = len(self.generators)
        for rel in self.relators:
            if rel.rank != n:
                raise RankMismatchError("relator rank must match the generator count")
        object.__setattr__(self, "relators", tuple(self.relators))

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def relator_matrix_rows(self) -> list[tuple[int, ...]]:
        return [rel.exponent_vector() for rel in self.relators]

    def with_relator(self, relator: FreeWord) -> "GroupPresentation":
        return GroupPresentation(self.generators, self.relators + (relator,))

    def text(self) -> str:
        rels = ", ".join(word_to_text(r, self.generators) or "1" for r in self.relators)
        return f"< {' '.join(self.generators)} | {rels} >"

    def __repr__(self):
        return f"GroupPresentation({self.text()})"


def hnn_presentation(monodromy: FreeGroupMap, fiber_names: Sequence[str],
                     stable_name: str = "t") -> GroupPresentation:
    """Presentation of the mapping-torus group: generators the fiber group
    generators plus the stable letter t, relators t x_i t^-1 f(x_i)^-1."""
    n = monodromy.rank
    if len(fiber_names) != n:
        raise RankMismatchError("need one name per fiber generator")
    gens = tuple(fiber_names) + (stable_name,)
    t = n + 1
    relators = []
    for i in range(n):
        image = monodromy.images[i].shift(n + 1, 0)
        letters = (t, i + 1, -t) + image.inverse().letters
        relators.append(FreeWord(n + 1, letters))
    return GroupPresentation(gens, tuple(relators))
