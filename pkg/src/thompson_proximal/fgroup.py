"""Elements of Thompson's group F as piecewise-linear maps of the real line.

A map is stored as its breakpoints ``(x_i, y_i)`` together with the integer
translations used on the two unbounded tails. Composition is ``f(g(x))``
and words are evaluated with the leftmost letter applied last, so the word
``"ab"`` denotes ``a∘b``.
"""

from __future__ import annotations

import bisect
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .numerics import Dyadic, as_dyadic, format_dyadic, parse, pow2_exponent

CONVENTION = "compose=f(g(x));word=left-last"

LETTERS = ("a", "A", "b", "B")
INVERSE_LETTER = {"a": "A", "A": "a", "b": "B", "B": "b"}

GenWord = tuple  # tuple of letters from LETTERS


@dataclass(frozen=True)
class PLHomeo:
    """Piecewise-linear homeomorphism with dyadic data.

    ``breaks`` is a tuple of ``(x, y)`` pairs. Left of the first breakpoint
    the map is ``x + mminus``; right of the last it is ``x + mplus``. With no
    breakpoints the map is the translation by ``mminus == mplus``.

    The constructor does not validate; use :func:`make_homeo` for checked,
    canonical instances and :func:`validate_membership` for raw data.
    """

    breaks: tuple = ()
    mminus: int = 0
    mplus: int = 0

    def __call__(self, q):
        return pl_apply(self, q)

    def __matmul__(self, other: "PLHomeo") -> "PLHomeo":
        return pl_compose(self, other)

    def __invert__(self) -> "PLHomeo":
        return pl_invert(self)

    @property
    def xs(self) -> list:
        return [x for x, _ in self.breaks]

    def slopes(self) -> list[int]:
        """Exponents k of the slopes 2**k of the bounded pieces."""
        out = []
        for (x0, y0), (x1, y1) in zip(self.breaks, self.breaks[1:]):
            k = pow2_exponent(y1 - y0, x1 - x0)
            if k is None:
                raise ValueError("slope is not a power of two")
            out.append(k)
        return out

    def to_json(self) -> dict:
        return {
            "breaks": [[format_dyadic(x), format_dyadic(y)] for x, y in self.breaks],
            "mminus": self.mminus,
            "mplus": self.mplus,
        }

    @classmethod
    def from_json(cls, data: dict) -> "PLHomeo":
        return make_homeo(
            [(parse(x), parse(y)) for x, y in data["breaks"]],
            int(data["mminus"]),
            int(data["mplus"]),
        )

    def __str__(self):
        return json.dumps(self.to_json())


IDENTITY = PLHomeo((), 0, 0)


class NotInF(ValueError):
    """Raised when breakpoint data does not describe an element of F."""


def _canonical(breaks: Sequence, mminus: int, mplus: int) -> PLHomeo:
    # drop breakpoints where the slope on both sides agrees; tails have slope 1
    pts = list(breaks)
    if not pts:
        return PLHomeo((), mminus, mplus)
    exps = [0]
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        k = pow2_exponent(y1 - y0, x1 - x0)
        if k is None:
            raise NotInF(f"slope between {x0} and {x1} is not a power of two")
        exps.append(k)
    exps.append(0)
    kept = tuple(p for i, p in enumerate(pts) if exps[i] != exps[i + 1])
    if not kept:
        # a pure translation that happened to be written with breakpoints
        return PLHomeo((), mminus, mplus)
    return PLHomeo(kept, mminus, mplus)


def make_homeo(breaks: Iterable, mminus: int, mplus: int) -> PLHomeo:
    """Build a validated, canonical element of F."""
    pts = tuple((as_dyadic(x), as_dyadic(y)) for x, y in breaks)
    raw = PLHomeo(pts, mminus, mplus)
    if not validate_membership(raw):
        raise NotInF(f"not an element of F: {raw.to_json()}")
    return _canonical(pts, mminus, mplus)


def _to_fraction(v) -> Fraction | None:
    if isinstance(v, Dyadic):
        return v.to_fraction()
    if isinstance(v, bool):
        return None
    if isinstance(v, (int, Fraction)):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return parse(v).to_fraction()
        except ValueError:
            return None
    return None


def _is_pow2(q: Fraction) -> bool:
    if q <= 0:
        return False
    n, d = q.numerator, q.denominator
    return (n & (n - 1)) == 0 and (d & (d - 1)) == 0 and (n == 1 or d == 1)


def validate_membership(f: PLHomeo) -> bool:
    """Check the defining constraints of F on possibly-raw breakpoint data.

    Coordinates must be dyadic, strictly increasing in both x and y, slopes
    powers of two, tails integer translations consistent with the end
    breakpoints. Redundant breakpoints are allowed here.
    """
    if not isinstance(f.mminus, int) or not isinstance(f.mplus, int):
        return False
    if isinstance(f.mminus, bool) or isinstance(f.mplus, bool):
        return False
    pts = []
    for pair in f.breaks:
        if len(pair) != 2:
            return False
        x, y = (_to_fraction(v) for v in pair)
        if x is None or y is None:
            return False
        if x.denominator & (x.denominator - 1) or y.denominator & (y.denominator - 1):
            return False
        pts.append((x, y))
    if not pts:
        return f.mminus == f.mplus
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if not (x1 > x0 and y1 > y0):
            return False
        if not _is_pow2((y1 - y0) / (x1 - x0)):
            return False
    return pts[0][1] == pts[0][0] + f.mminus and pts[-1][1] == pts[-1][0] + f.mplus


def pl_apply(f: PLHomeo, q) -> Dyadic:
    q = as_dyadic(q)
    br = f.breaks
    if not br:
        return q + f.mminus
    if q <= br[0][0]:
        return q + f.mminus
    if q >= br[-1][0]:
        return q + f.mplus
    i = bisect.bisect_right(br, q, key=lambda p: p[0]) - 1
    (x0, y0), (x1, y1) = br[i], br[i + 1]
    k = pow2_exponent(y1 - y0, x1 - x0)
    return y0 + (q - x0).scale2(k)


def pl_invert(f: PLHomeo) -> PLHomeo:
    return PLHomeo(tuple((y, x) for x, y in f.breaks), -f.mminus, -f.mplus)


def pl_compose(f: PLHomeo, g: PLHomeo) -> PLHomeo:
    """Return the canonical form of ``x -> f(g(x))``."""
    ginv = pl_invert(g)
    cand = {x for x, _ in g.breaks}
    cand.update(pl_apply(ginv, x) for x, _ in f.breaks)
    xs = sorted(cand)
    pts = [(x, pl_apply(f, pl_apply(g, x))) for x in xs]
    return _canonical(pts, f.mminus + g.mminus, f.mplus + g.mplus)


def canonicalize(f: PLHomeo) -> PLHomeo:
    return _canonical(f.breaks, f.mminus, f.mplus)


def pl_equal(f: PLHomeo, g: PLHomeo) -> bool:
    return canonicalize(f) == canonicalize(g)


def right_slope_exponent(f: PLHomeo, q) -> int:
    """Exponent k of the slope 2**k of f just to the right of q."""
    q = as_dyadic(q)
    br = f.breaks
    if not br or q < br[0][0] or q >= br[-1][0]:
        return 0
    i = bisect.bisect_right(br, q, key=lambda p: p[0]) - 1
    (x0, y0), (x1, y1) = br[i], br[i + 1]
    return pow2_exponent(y1 - y0, x1 - x0)


def in_K(f: PLHomeo) -> bool:
    """Fixes 0 and has right derivative 1 there."""
    return pl_apply(f, 0) == 0 and right_slope_exponent(f, 0) == 0


# generators

GEN_A = PLHomeo((), -1, -1)
GEN_B = PLHomeo(((Dyadic(0), Dyadic(0)), (Dyadic(2), Dyadic(1))), 0, -1)

LETTER_MAP = {
    "a": GEN_A,
    "A": pl_invert(GEN_A),
    "b": GEN_B,
    "B": pl_invert(GEN_B),
}

_TOKEN = re.compile(r"\s*(?:([abAB])(?:\s*(?:\^\s*-1|⁻¹|\^\s*\{-1\}))?)")


def parse_word(text: str | Sequence[str]) -> GenWord:
    """Parse a word over ``a A b B``; ``a^-1`` and ``a⁻¹`` are also accepted."""
    if not isinstance(text, str):
        word = tuple(text)
        for s in word:
            if s not in INVERSE_LETTER:
                raise ValueError(f"bad letter {s!r}")
        return word
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        letter = m.group(1)
        inverted = m.group(0).strip() != letter
        out.append(INVERSE_LETTER[letter] if inverted else letter)
        pos = m.end()
    return tuple(out)


def format_word(word: Sequence[str]) -> str:
    return "".join(word)


def invert_word(word: Sequence[str]) -> GenWord:
    return tuple(INVERSE_LETTER[s] for s in reversed(word))


def free_reduce(word: Sequence[str]) -> GenWord:
    out: list[str] = []
    for s in word:
        if out and out[-1] == INVERSE_LETTER[s]:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def word_eval(word) -> PLHomeo:
    word = parse_word(word)
    return reduce(pl_compose, (LETTER_MAP[s] for s in word), IDENTITY)


def commutator(u: Sequence[str], v: Sequence[str]) -> GenWord:
    """[u, v] = u v u^-1 v^-1 as a word."""
    return tuple(u) + tuple(v) + invert_word(u) + invert_word(v)


def relator_words(variant: str = "standard") -> list[GenWord]:
    """The two relators of the finite presentation of F.

    ``variant="a-inverted"`` swaps a with a^-1 throughout, for when the
    standard words fail under this module's composition convention.
    """
    r1 = commutator(parse_word("aB"), parse_word("Aba"))
    r2 = commutator(parse_word("aB"), parse_word("AAbaa"))
    if variant == "standard":
        return [r1, r2]
    if variant == "a-inverted":
        swap = {"a": "A", "A": "a", "b": "b", "B": "B"}
        return [tuple(swap[s] for s in r) for r in (r1, r2)]
    raise ValueError(f"unknown relator variant {variant!r}")


def resolve_relator_variant() -> str:
    """Return the first relator variant that evaluates to the identity.

    Raises RuntimeError if neither does, which means the generators or the
    composition code are wrong.
    """
    for variant in ("standard", "a-inverted"):
        if all(pl_equal(word_eval(r), IDENTITY) for r in relator_words(variant)):
            return variant
    raise RuntimeError("no relator variant evaluates to the identity")
