"""Finite windows of {-1,1}-valued configurations on Gamma and Lambda.

A window is a finite partial function. Group elements act by
``[g x](c) = x(g^-1 c)``, which on a window means moving every known
coordinate forward: the shifted window is defined exactly on ``g``
applied to the old domain.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .actions import LambdaPoint, apply_word, lambda_apply_letter
from .fgroup import PLHomeo, parse_word, pl_apply
from .numerics import Dyadic, as_dyadic, format_dyadic, parse

SPACES = ("gamma", "lambda")
_ZERO = Dyadic(0)


class SpaceMismatch(ValueError):
    pass


def parse_coord(space: str, raw):
    """JSON coordinate: a dyadic string on Gamma, ``[n, "gamma"]`` on Lambda."""
    if space == "gamma":
        return parse(raw)
    if space == "lambda":
        n, g = raw
        return LambdaPoint(int(n), parse(g))
    raise ValueError(f"unknown space {space!r}")


def _coord(space: str, c):
    if space == "gamma":
        return as_dyadic(c)
    if isinstance(c, LambdaPoint):
        return c
    n, g = c
    return LambdaPoint(int(n), as_dyadic(g))


class PartialConfig:
    """Immutable finite map from coordinates to +1/-1."""

    __slots__ = ("space", "_entries")

    def __init__(self, space: str, entries: Mapping | Iterable = ()):
        if space not in SPACES:
            raise ValueError(f"unknown space {space!r}")
        items = entries.items() if isinstance(entries, Mapping) else entries
        data = {}
        for c, v in items:
            c = _coord(space, c)
            if v not in (1, -1):
                raise ValueError(f"value at {c} must be +1 or -1, got {v!r}")
            if c in data and data[c] != v:
                raise ValueError(f"conflicting values at {c}")
            data[c] = int(v)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "_entries", data)

    def __setattr__(self, name, value):
        raise AttributeError("PartialConfig is immutable")

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    def domain(self) -> set:
        return set(self._entries)

    def __getitem__(self, c):
        return self._entries[_coord(self.space, c)]

    def get(self, c, default=None):
        return self._entries.get(_coord(self.space, c), default)

    def __contains__(self, c):
        return _coord(self.space, c) in self._entries

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(sorted(self._entries))

    def items(self):
        return sorted(self._entries.items())

    def __eq__(self, other):
        if not isinstance(other, PartialConfig):
            return NotImplemented
        return self.space == other.space and self._entries == other._entries

    def __hash__(self):
        return hash((self.space, frozenset(self._entries.items())))

    def __neg__(self) -> "PartialConfig":
        return negate(self)

    def __mul__(self, other: "PartialConfig") -> "PartialConfig":
        return pointwise_product(self, other)

    def restrict(self, coords: Iterable) -> "PartialConfig":
        keep = {_coord(self.space, c) for c in coords}
        return PartialConfig(self.space, {c: v for c, v in self._entries.items() if c in keep})

    def __repr__(self):
        body = ", ".join(f"{_fmt_coord(c)}: {v:+d}" for c, v in self.items())
        return f"PartialConfig({self.space}, {{{body}}})"

    def to_json(self) -> dict:
        if self.space == "gamma":
            entries = [[format_dyadic(c), v] for c, v in self.items()]
        else:
            entries = [[[c.n, format_dyadic(c.gamma)], v] for c, v in self.items()]
        return {"space": self.space, "entries": entries}

    @classmethod
    def from_json(cls, data: dict) -> "PartialConfig":
        space = data["space"]
        return cls(space, [(parse_coord(space, c), v) for c, v in data["entries"]])

    @classmethod
    def load(cls, path) -> "PartialConfig":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def _fmt_coord(c) -> str:
    return str(c) if isinstance(c, LambdaPoint) else format_dyadic(c)


def constant(space: str, coords: Iterable, value: int) -> PartialConfig:
    """Window of the constant configuration c_value."""
    return PartialConfig(space, {c: value for c in coords})


def negate(x: PartialConfig) -> PartialConfig:
    return PartialConfig(x.space, {c: -v for c, v in x._entries.items()})


def shift(g, x: PartialConfig) -> PartialConfig:
    """Apply ``g`` (a word, or a PLHomeo on Gamma) to a window."""
    if isinstance(g, PLHomeo):
        if x.space != "gamma":
            raise TypeError("a PLHomeo acts only on Gamma windows; pass a word for Lambda")
        return PartialConfig("gamma", {pl_apply(g, c): v for c, v in x._entries.items()})
    word = parse_word(g)
    return PartialConfig(x.space, {apply_word(x.space, word, c): v for c, v in x._entries.items()})


def pointwise_product(x1: PartialConfig, x2: PartialConfig) -> PartialConfig:
    if x1.space != x2.space:
        raise SpaceMismatch(f"cannot multiply {x1.space} and {x2.space} windows")
    e1, e2 = x1._entries, x2._entries
    return PartialConfig(x1.space, {c: v * e2[c] for c, v in e1.items() if c in e2})


def pi_map(x: PartialConfig, n_range: Iterable[int]) -> PartialConfig:
    """Lift a Gamma window to Lambda with the sign (-1)^n on sheet n."""
    if x.space != "gamma":
        raise SpaceMismatch("pi_map takes a Gamma window")
    ns = sorted(set(n_range))
    if not ns:
        raise ValueError("n_range must be nonempty")
    return PartialConfig(
        "lambda",
        {LambdaPoint(n, g): (-v if n % 2 else v) for n in ns for g, v in x._entries.items()},
    )


def y_consistent(y: PartialConfig) -> bool:
    """True iff the window extends to a point of pi({-1,1}^Gamma)."""
    if y.space != "lambda":
        raise SpaceMismatch("y_consistent takes a Lambda window")
    seen: dict = {}
    for (n, g), v in y._entries.items():
        base = -v if n % 2 else v
        if seen.setdefault(g, base) != base:
            return False
    return True


def bar_flip(x: PartialConfig) -> PartialConfig:
    if x.space != "gamma":
        raise SpaceMismatch("bar_flip takes a Gamma window")
    return PartialConfig("gamma", {c: (-v if c == _ZERO else v) for c, v in x._entries.items()})


@dataclass(frozen=True)
class PairClass:
    """A point {y, -y} of Z, stored as the member that is +1 at its least coordinate."""

    representative: PartialConfig

    def to_json(self) -> dict:
        return {"pair_class": self.representative.to_json()}


def pair_class(y: PartialConfig) -> PairClass:
    if y.space != "lambda":
        raise SpaceMismatch("pair classes live on Lambda windows")
    if not len(y):
        raise ValueError("pair class of an empty window is undefined")
    if not y_consistent(y):
        raise ValueError("window is not the restriction of a point of Y")
    least = min(y._entries)
    return PairClass(y if y._entries[least] == 1 else negate(y))


@dataclass(frozen=True)
class FixedPointCheck:
    ok: bool
    not_mirror_at: LambdaPoint
    not_equal_at: LambdaPoint
    explanation: str


_REQUIRED = (LambdaPoint(0, Dyadic(-1)), LambdaPoint(0, _ZERO), LambdaPoint(-1, _ZERO))


def check_not_fixed_by_b(y: PartialConfig) -> FixedPointCheck:
    """Show b moves the pair class of ``y``: by != -y and by != y."""
    if y.space != "lambda":
        raise SpaceMismatch("check_not_fixed_by_b takes a Lambda window")
    missing = [c for c in _REQUIRED if c not in y]
    if missing:
        raise ValueError(f"window must contain {', '.join(map(str, missing))}")
    if not y_consistent(y):
        raise ValueError("window is not the restriction of a point of Y")
    p_side, p_zero, p_prev = _REQUIRED
    # closed forms: b fixes -1 on every sheet, and b^-1 (0,0) = (-1,0)
    if lambda_apply_letter("B", p_side) != p_side or lambda_apply_letter("B", p_zero) != p_prev:
        raise AssertionError("letter action disagrees with the closed forms")
    by = shift("b", y)
    if by[p_side] != y[p_side] or by[p_zero] != y[p_prev]:
        raise AssertionError("shifted values disagree with the closed forms")
    not_mirror = by[p_side] != -y[p_side]
    not_equal = by[p_zero] != y[p_zero]
    ok = not_mirror and not_equal
    explanation = (
        f"[by]{p_side} = y{p_side} = {by[p_side]:+d} != {-y[p_side]:+d} = -y{p_side}; "
        f"[by]{p_zero} = y{p_prev} = {by[p_zero]:+d} != {y[p_zero]:+d} = y{p_zero}"
    )
    return FixedPointCheck(ok, p_side, p_zero, explanation)
