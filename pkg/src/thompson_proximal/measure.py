"""Bernoulli(1/2) product measure on cylinder sets.

``sample_config`` draws each coordinate with :class:`random.Random` seeded by
the given integer, visiting coordinates in sorted order and mapping bit 1 to
+1 and bit 0 to -1.
"""

from __future__ import annotations

import random
from typing import Iterable, Mapping

from .actions import apply_word
from .configs import PartialConfig, _coord, parse_coord
from .fgroup import PLHomeo, invert_word, parse_word, pl_apply, pl_invert
from .numerics import Dyadic


class Cylinder:
    """Finite set of coordinate constraints; contradictory input is the empty event."""

    __slots__ = ("space", "constraints", "empty")

    def __init__(self, space: str, constraints: Mapping | Iterable = ()):
        items = constraints.items() if isinstance(constraints, Mapping) else constraints
        data: dict = {}
        empty = False
        for c, v in items:
            if v not in (1, -1):
                raise ValueError(f"constraint value must be +1 or -1, got {v!r}")
            c = _coord(space, c)
            if data.setdefault(c, v) != v:
                empty = True
        self.space = space
        self.constraints = data
        self.empty = empty

    def __eq__(self, other):
        if not isinstance(other, Cylinder):
            return NotImplemented
        return (self.space, self.constraints, self.empty) == (
            other.space,
            other.constraints,
            other.empty,
        )

    def __len__(self):
        return len(self.constraints)

    def __repr__(self):
        state = "empty, " if self.empty else ""
        return f"Cylinder({self.space}, {state}{len(self.constraints)} constraints)"

    def negated(self) -> "Cylinder":
        c = Cylinder(self.space, {k: -v for k, v in self.constraints.items()})
        c.empty = self.empty
        return c

    @classmethod
    def from_config(cls, x: PartialConfig) -> "Cylinder":
        return cls(x.space, x.entries)

    def to_json(self) -> dict:
        data = PartialConfig(self.space, self.constraints).to_json()
        if self.empty:
            data["empty"] = True
        return data

    @classmethod
    def from_json(cls, data: dict) -> "Cylinder":
        space = data["space"]
        cyl = cls(space, [(parse_coord(space, c), v) for c, v in data["entries"]])
        if data.get("empty"):
            cyl.empty = True
        return cyl


def cylinder_measure(C: Cylinder) -> Dyadic:
    if C.empty:
        return Dyadic(0)
    return Dyadic(1, len(C.constraints))


def pullback_cylinder(g, C: Cylinder) -> Cylinder:
    """The event {x : g x in C}: each constraint moves to g^-1 of its coordinate."""
    if isinstance(g, PLHomeo):
        if C.space != "gamma":
            raise TypeError("a PLHomeo acts only on Gamma cylinders; pass a word for Lambda")
        ginv = pl_invert(g)
        moved = [(pl_apply(ginv, c), v) for c, v in C.constraints.items()]
    else:
        inv = invert_word(parse_word(g))
        moved = [(apply_word(C.space, inv, c), v) for c, v in C.constraints.items()]
    out = Cylinder(C.space, moved)
    out.empty = out.empty or C.empty
    return out


def sample_config(window: Iterable, seed: int, space: str = "gamma") -> PartialConfig:
    coords = sorted({_coord(space, c) for c in window})
    rng = random.Random(seed)
    return PartialConfig(space, {c: (1 if rng.getrandbits(1) else -1) for c in coords})
