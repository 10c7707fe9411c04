"""Constructive high transitivity and finite-window proximality certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .configs import PartialConfig, pair_class, pi_map, pointwise_product, shift
from .fgroup import CONVENTION, PLHomeo, make_homeo, pl_apply, validate_membership
from .numerics import Dyadic, as_dyadic, floor_log2_ratio, format_dyadic, pow2_exponent


class InsufficientAgreement(ValueError):
    """The product window has too few coordinates with a common value."""

    def __init__(self, needed: int, achievable: int):
        self.needed = needed
        self.achievable = achievable
        super().__init__(
            f"need {needed} coordinates with a common product value, "
            f"at most {achievable} available"
        )


def interval_map(a, b, c, d) -> tuple:
    """Increasing PL map [a,b] -> [c,d] with power-of-two slopes.

    Returns the breakpoints as ``((a, c), ..., (b, d))``: two points for a
    single piece, three when the length ratio is not a power of two.
    """
    a, b, c, d = (as_dyadic(v) for v in (a, b, c, d))
    if not a < b or not c < d:
        raise ValueError("interval endpoints must satisfy a < b and c < d")
    l1, l2 = b - a, d - c
    if pow2_exponent(l2, l1) is not None:
        return ((a, c), (b, d))
    t = floor_log2_ratio(l2, l1)
    # slope 2^(t+1) on [a, a+s], slope 2^t after; s = l2/2^t - l1
    s = l2.scale2(-t) - l1
    mid = (a + s, c + s.scale2(t + 1))
    return ((a, c), mid, (b, d))


def _check_sorted(seq: Sequence[Dyadic], name: str):
    for u, v in zip(seq, seq[1:]):
        if not u < v:
            raise ValueError(f"{name} must be sorted and distinct")


def map_tuple(V: Sequence, W: Sequence) -> PLHomeo:
    """Element of F sending V[i] to W[i], identity outside a bounded integer interval."""
    V = [as_dyadic(v) for v in V]
    W = [as_dyadic(w) for w in W]
    if len(V) != len(W):
        raise ValueError(f"size mismatch: |V| = {len(V)}, |W| = {len(W)}")
    if not V:
        raise ValueError("V and W must be nonempty")
    _check_sorted(V, "V")
    _check_sorted(W, "W")
    lo = min(V[0], W[0]).floor() - 1
    hi = max(V[-1], W[-1]).ceil() + 1
    chain = [(Dyadic(lo), Dyadic(lo))] + list(zip(V, W)) + [(Dyadic(hi), Dyadic(hi))]
    pts = [chain[0]]
    for (x0, y0), (x1, y1) in zip(chain, chain[1:]):
        pts.extend(interval_map(x0, x1, y0, y1)[1:])
    return make_homeo(pts, 0, 0)


@dataclass(frozen=True)
class ProximalityCertificate:
    witness: PLHomeo
    alpha: int
    source_set: tuple
    target_window: tuple
    checked_product_values: dict = field(hash=False)

    def verify(self, x1: PartialConfig, x2: PartialConfig) -> bool:
        """Recheck from scratch: membership, bijection V -> W, constant shifted product."""
        if not validate_membership(self.witness):
            return False
        if [pl_apply(self.witness, v) for v in self.source_set] != list(self.target_window):
            return False
        moved = shift(self.witness, pointwise_product(x1, x2))
        return all(moved.get(w) == self.alpha for w in self.target_window)

    def to_json(self) -> dict:
        return {
            "convention": CONVENTION,
            "alpha": self.alpha,
            "witness": self.witness.to_json(),
            "sourceSet": [format_dyadic(v) for v in self.source_set],
            "targetWindow": [format_dyadic(w) for w in self.target_window],
            "checkedProductValues": [
                [format_dyadic(w), self.checked_product_values[w]] for w in self.target_window
            ],
        }


def choose_alpha(d: PartialConfig) -> tuple[int, int]:
    """Majority value of the product window (ties go to +1) and its count."""
    plus = sum(1 for v in d.entries.values() if v == 1)
    minus = len(d) - plus
    return (1, plus) if plus >= minus else (-1, minus)


def proximality_witness(
    x1: PartialConfig, x2: PartialConfig, target_window: Iterable
) -> ProximalityCertificate:
    if x1.space != "gamma" or x2.space != "gamma":
        raise ValueError("proximality witnesses are built for Gamma windows")
    target = sorted({as_dyadic(w) for w in target_window})
    if not target:
        raise ValueError("target window must be nonempty")
    d = pointwise_product(x1, x2)
    alpha, count = choose_alpha(d)
    if count < len(target):
        raise InsufficientAgreement(len(target), count)
    source = [c for c in d if d[c] == alpha][: len(target)]
    f = map_tuple(source, target)
    moved = shift(f, d)
    checked = {w: moved.get(w) for w in target}
    if any(v != alpha for v in checked.values()):
        raise AssertionError("witness failed to make the product constant on the target")
    return ProximalityCertificate(f, alpha, tuple(source), tuple(target), checked)


@dataclass(frozen=True)
class ZProximalityResult:
    agrees: bool
    certificate: ProximalityCertificate
    n_range: tuple
    checked: int

    def to_json(self) -> dict:
        return {
            "agrees": self.agrees,
            "nRange": list(self.n_range),
            "checkedCoordinates": self.checked,
            "certificate": self.certificate.to_json(),
        }


def z_proximality_check(
    x1: PartialConfig, x2: PartialConfig, target_window: Iterable, n_range: Iterable[int]
) -> ZProximalityResult:
    """Lift a Gamma certificate to the pair space on target x n_range.

    The witness is a PLHomeo and does not act on Lambda, so the lifted
    product is computed sheetwise as (-1)^n [f x1](g) * (-1)^n [f x2](g) and
    compared with [f (x1 x2)](g) = alpha.
    """
    cert = proximality_witness(x1, x2, target_window)
    ns = tuple(sorted(set(n_range)))
    f = cert.witness
    fx1, fx2 = shift(f, x1), shift(f, x2)
    fd = shift(f, pointwise_product(x1, x2))
    target = cert.target_window

    y1 = pi_map(fx1.restrict(target), ns)
    y2 = pi_map(fx2.restrict(target), ns)
    agrees = True
    checked = 0
    for n in ns:
        sign = -1 if n % 2 else 1
        for g in target:
            lifted = (sign * fx1[g]) * (sign * fx2[g])
            if not (lifted == fd[g] == cert.alpha == y1[(n, g)] * y2[(n, g)]):
                agrees = False
            checked += 1
    # y1 = alpha * y2 on the window, hence the same point of Z there
    if pair_class(y1) != pair_class(y2):
        agrees = False
    return ZProximalityResult(agrees, cert, ns, checked)
