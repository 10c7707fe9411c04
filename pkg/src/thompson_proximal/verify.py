"""Property suites behind ``thompson-proximal verify``.

Each check is a function ``(rng, scale) -> count`` that raises
``CheckFailed`` on the first counterexample. ``scale`` multiplies sample
counts, so ``scale=0.1`` gives a quick smoke run.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable

from . import __version__
from .actions import (
    LambdaPoint,
    lambda_apply_letter,
    lambda_apply_word,
    limit_check,
    psi,
    schreier_ball,
)
from .configs import (
    PartialConfig,
    bar_flip,
    check_not_fixed_by_b,
    negate,
    pair_class,
    pi_map,
    pointwise_product,
    shift,
    y_consistent,
)
from .fgroup import (
    CONVENTION,
    IDENTITY,
    INVERSE_LETTER,
    LETTER_MAP,
    LETTERS,
    commutator,
    in_K,
    invert_word,
    pl_apply,
    pl_compose,
    pl_equal,
    pl_invert,
    relator_words,
    resolve_relator_variant,
    validate_membership,
    word_eval,
)
from .measure import Cylinder, cylinder_measure, pullback_cylinder
from .numerics import Dyadic
from .proximal import InsufficientAgreement, map_tuple, z_proximality_check

SUITES = ("group", "actions", "configs", "proximal", "measure")

LIMIT_N_MAX = 12
LIMIT_WINDOW = 4
LIMIT_RADII = range(1, 7)


class CheckFailed(AssertionError):
    pass


def require(cond: bool, msg: str):
    if not cond:
        raise CheckFailed(msg)


# random generators shared with the tests


def random_dyadic(rng: random.Random, max_exp: int = 20, span: int = 8) -> Dyadic:
    e = rng.randint(0, max_exp)
    return Dyadic(rng.randint(-span << e, span << e), e)


def random_word(rng: random.Random, max_len: int = 12) -> tuple:
    return tuple(rng.choice(LETTERS) for _ in range(rng.randint(0, max_len)))


def random_gamma_window(rng: random.Random, size: int, max_exp: int = 6, span: int = 4) -> PartialConfig:
    coords: set = set()
    while len(coords) < size:
        coords.add(random_dyadic(rng, max_exp, span))
    return PartialConfig("gamma", {c: rng.choice((1, -1)) for c in coords})


def random_y_window(rng: random.Random, size: int, n_lo: int = -2, n_hi: int = 2) -> PartialConfig:
    x = random_gamma_window(rng, size)
    y = pi_map(x, range(n_lo, n_hi + 1))
    keep = rng.sample(sorted(y.domain()), k=max(1, len(y) // 2))
    return y.restrict(keep)


def gamma_letter_formula(s: str, q: Fraction) -> Fraction:
    """Generator formulas written out case by case over Fraction."""
    if s == "a":
        return q - 1
    if s == "A":
        return q + 1
    if s == "b":
        if q <= 0:
            return q
        if q <= 2:
            return q / 2
        return q - 1
    if s == "B":
        if q <= 0:
            return q
        if q <= 1:
            return q * 2
        return q + 1
    raise ValueError(s)


# fixtures


def default_fixture_dir() -> Path:
    return Path(str(resources.files("thompson_proximal") / "fixtures"))


def compute_fixtures() -> dict[str, dict]:
    variant = resolve_relator_variant()
    relators = {
        "convention": CONVENTION,
        "variant": variant,
        "relators": ["".join(r) for r in relator_words(variant)],
    }
    limits = {
        "convention": CONVENTION,
        "nMax": LIMIT_N_MAX,
        "window": LIMIT_WINDOW,
        "radii": {str(r): limit_check(r, LIMIT_N_MAX, LIMIT_WINDOW) for r in LIMIT_RADII},
    }
    return {"relators.json": relators, "limits.json": limits}


def write_fixtures(path: Path):
    path.mkdir(parents=True, exist_ok=True)
    for name, data in compute_fixtures().items():
        (path / name).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def fixture_hashes(path: Path) -> dict[str, str]:
    return {
        p.name: hashlib.sha256(p.read_bytes()).hexdigest() for p in sorted(path.glob("*.json"))
    }


def _load_fixture(path: Path, name: str) -> dict:
    try:
        return json.loads((path / name).read_text())
    except (OSError, ValueError) as exc:
        raise CheckFailed(f"fixture {name} unreadable: {exc}") from None


# group


def check_generator_fidelity(rng, scale, fixtures):
    n = int(10_000 * scale)
    for _ in range(n):
        q = random_dyadic(rng)
        fq = q.to_fraction()
        for s in LETTERS:
            got = pl_apply(LETTER_MAP[s], q).to_fraction()
            require(got == gamma_letter_formula(s, fq), f"{s}({q}) = {got}")
    return n


def check_group_laws(rng, scale, fixtures):
    n = int(1000 * scale)
    for _ in range(n):
        u, v, w = (random_word(rng) for _ in range(3))
        f, g, h = word_eval(u), word_eval(v), word_eval(w)
        require(pl_equal(pl_compose(pl_compose(f, g), h), pl_compose(f, pl_compose(g, h))), f"associativity {u} {v} {w}")
        require(pl_equal(pl_compose(f, pl_invert(f)), IDENTITY), f"inverse law {u}")
        require(pl_equal(pl_compose(pl_invert(f), f), IDENTITY), f"inverse law {u}")
        require(pl_equal(pl_compose(f, IDENTITY), f) and pl_equal(pl_compose(IDENTITY, f), f), f"identity law {u}")
        require(pl_equal(word_eval(u + v), pl_compose(f, g)), f"homomorphism {u} {v}")
        require(pl_equal(word_eval(invert_word(u)), pl_invert(f)), f"word inverse {u}")
        for out in (pl_compose(f, g), pl_invert(f)):
            require(validate_membership(out), f"closure {u} {v}")
    return n


def check_relator_fixture(rng, scale, fixtures):
    data = _load_fixture(fixtures, "relators.json")
    require(data.get("convention") == CONVENTION, "relator fixture convention mismatch")
    variant = resolve_relator_variant()
    require(data.get("variant") == variant, f"relator fixture says {data.get('variant')!r}, computed {variant!r}")
    words = data.get("relators", [])
    require(words == ["".join(r) for r in relator_words(variant)], "relator fixture words differ")
    for r in words:
        require(pl_equal(word_eval(r), IDENTITY), f"relator {r} is not the identity")
    return len(words)


# actions


def check_letter_inverses(rng, scale, fixtures):
    n = int(10_000 * scale)
    for _ in range(n):
        p = LambdaPoint(rng.randint(-5, 5), random_dyadic(rng, 10, 4))
        if rng.random() < 0.2:
            p = LambdaPoint(p.n, Dyadic(0))
        for s in LETTERS:
            require(lambda_apply_letter(INVERSE_LETTER[s], lambda_apply_letter(s, p)) == p, f"{s} at {p}")
    return n


def check_covering_equivariance(rng, scale, fixtures):
    ball = schreier_ball("lambda", LambdaPoint(0, Dyadic(0)), 10)
    for p in ball.order:
        for s in LETTERS:
            require(psi(lambda_apply_letter(s, p)) == pl_apply(LETTER_MAP[s], psi(p)), f"psi({s}.{p})")
    return len(ball.order) * 4


def check_sheet_changes(rng, scale, fixtures):
    ball = schreier_ball("lambda", LambdaPoint(0, Dyadic(0)), 8)
    for p in ball.order:
        for s in LETTERS:
            q = lambda_apply_letter(s, p)
            if s in "bB" and p.gamma == 0:
                require(q == LambdaPoint(p.n + (1 if s == "b" else -1), Dyadic(0)), f"{s}.{p}")
            else:
                require(q.n == p.n, f"{s}.{p} changed the sheet")
    return len(ball.order) * 4


def check_well_defined(rng, scale, fixtures):
    n = int(500 * scale)
    rels = relator_words(resolve_relator_variant())
    for _ in range(n):
        u = random_word(rng, 8)
        k = rng.randint(0, len(u))
        r = rng.choice(rels + [("a", "A"), ("b", "B"), ("B", "b")])
        if rng.random() < 0.5:
            r = invert_word(r)
        v = u[:k] + tuple(r) + u[k:]
        require(pl_equal(word_eval(u), word_eval(v)), f"{u} vs {v}")
        for _ in range(3):
            p = LambdaPoint(rng.randint(-3, 3), random_dyadic(rng, 6, 3))
            require(lambda_apply_word(u, p) == lambda_apply_word(v, p), f"{u} vs {v} at {p}")
    return n


def check_stabilizer_identity(rng, scale, fixtures):
    n = int(1000 * scale)
    origin = LambdaPoint(0, Dyadic(0))
    hits = 0
    for i in range(n):
        if i % 2:
            w = random_word(rng)
        else:
            w = commutator(random_word(rng, 3), random_word(rng, 3))
        fixes = lambda_apply_word(w, origin) == origin
        require(fixes == in_K(word_eval(w)), f"stabilizer mismatch for {''.join(w)}")
        hits += fixes
    require(n == 0 or 0 < hits < n, "sample did not exercise both sides of the equivalence")
    return n


def check_limit_fixture(rng, scale, fixtures):
    data = _load_fixture(fixtures, "limits.json")
    require(data.get("nMax") == LIMIT_N_MAX and data.get("window") == LIMIT_WINDOW, "limit fixture parameters")
    radii = data.get("radii", {})
    require(sorted(radii, key=int) == [str(r) for r in LIMIT_RADII], "limit fixture radii")
    for r, expected in radii.items():
        got = limit_check(int(r), LIMIT_N_MAX, LIMIT_WINDOW)
        require(got == expected, f"radius {r}: fixture {expected}, computed {got}")
    require(radii.get("1") == 1, "radius 1 must converge at n = 1")
    return len(radii)


# configs


def check_shift_action(rng, scale, fixtures):
    n = int(500 * scale)
    for _ in range(n):
        u, v = random_word(rng, 6), random_word(rng, 6)
        x = random_gamma_window(rng, rng.randint(1, 8))
        require(shift(u + v, x) == shift(u, shift(v, x)), f"gamma shift {u} {v}")
        require(shift(word_eval(u), x) == shift(u, x), f"word vs map {u}")
        y = random_y_window(rng, rng.randint(1, 6))
        uy = shift(u + v, y)
        require(uy == shift(u, shift(v, y)), f"lambda shift {u} {v}")
        require(y_consistent(uy), f"Y not invariant under {u + v}")
    return n


def check_pi_equivariance(rng, scale, fixtures):
    n = int(1000 * scale)
    for _ in range(n):
        x = random_gamma_window(rng, rng.randint(1, 8))
        if rng.random() < 0.5:
            x = PartialConfig("gamma", {**x.entries, Dyadic(0): rng.choice((1, -1))})
        ns = range(rng.randint(-3, 0), rng.randint(0, 3) + 1)
        y = pi_map(x, ns)
        for s in ("a", "A"):
            require(shift(s, y) == pi_map(shift(s, x), ns), f"{s} pi(x) != pi({s} x)")
        for s in ("b", "B"):
            left = shift(s, y)
            right = pi_map(shift(s, bar_flip(x)), ns)
            common = left.domain() & right.domain()
            require(left.restrict(common) == right.restrict(common), f"{s} pi(x) != pi({s} xbar)")
            # b moves the gamma = 0 column up or down one sheet; only its end falls off
            lost = 1 if Dyadic(0) in x else 0
            require(len(common) == len(left) - lost, "unexpected domain mismatch")
    return n


def check_pair_classes(rng, scale, fixtures):
    n = int(500 * scale)
    for _ in range(n):
        y = random_y_window(rng, rng.randint(1, 6))
        require(pair_class(y) == pair_class(negate(y)), "pair class not mirror invariant")
    return n


def check_claim_no_fixed_points(rng, scale, fixtures):
    coords = (LambdaPoint(0, Dyadic(-1)), LambdaPoint(0, Dyadic(0)), LambdaPoint(-1, Dyadic(0)))
    consistent = 0
    for signs in itertools.product((1, -1), repeat=3):
        y = PartialConfig("lambda", dict(zip(coords, signs)))
        if y_consistent(y):
            consistent += 1
            require(check_not_fixed_by_b(y).ok, f"b fixes the class of {y}")
    require(consistent == 4, f"expected 4 consistent sign patterns, found {consistent}")
    n = int(1000 * scale)
    for _ in range(n):
        x = random_gamma_window(rng, rng.randint(0, 6))
        x = PartialConfig("gamma", {**x.entries, Dyadic(-1): rng.choice((1, -1)), Dyadic(0): rng.choice((1, -1))})
        y = pi_map(x, range(-1, rng.randint(0, 2) + 1))
        require(check_not_fixed_by_b(y).ok, f"b fixes the class of {y}")
    return consistent + n


# proximal


def check_map_tuple(rng, scale, fixtures):
    n = int(1000 * scale)
    for _ in range(n):
        k = rng.randint(1, 16)
        V = sorted({random_dyadic(rng, 8, 6) for _ in range(k)})
        W = sorted({random_dyadic(rng, 8, 6) for _ in range(len(V))})
        V = V[: len(W)]
        f = map_tuple(V, W)
        require(validate_membership(f), "map_tuple output not in F")
        require([pl_apply(f, v) for v in V] == W, f"map_tuple misses {V} -> {W}")
        probe = random_dyadic(rng, 12, 10)
        require(isinstance(pl_apply(f, probe), Dyadic), "image left the dyadics")
    return n


def check_certificates(rng, scale, fixtures):
    n = int(1000 * scale)
    built = 0
    for _ in range(n):
        x1 = random_gamma_window(rng, rng.randint(1, 16))
        flip = rng.random()
        x2 = PartialConfig(
            "gamma", {c: (v if rng.random() < flip else -v) for c, v in x1.entries.items()}
        )
        target = {random_dyadic(rng, 6, 4) for _ in range(rng.randint(1, 8))}
        d = pointwise_product(x1, x2)
        feasible = max(sum(v == 1 for v in d.entries.values()), sum(v == -1 for v in d.entries.values())) >= len(target)
        try:
            res = z_proximality_check(x1, x2, target, range(-2, 3))
        except InsufficientAgreement:
            require(not feasible, "witness search failed although the precondition holds")
            continue
        require(feasible, "certificate produced without the precondition")
        require(res.certificate.verify(x1, x2), "certificate does not re-verify")
        require(res.agrees, "pair classes disagree on the lifted window")
        built += 1
    require(n == 0 or built > 0, "no certificates were built")
    return n


def check_z_identity_words(rng, scale, fixtures):
    """Lambda-level check of the product identity with words acting on both sides."""
    n = int(500 * scale)
    for _ in range(n):
        w = random_word(rng, 8)
        x1 = random_gamma_window(rng, rng.randint(1, 8))
        x2 = PartialConfig("gamma", {c: rng.choice((1, -1)) for c in x1.domain()})
        ns = range(-2, 3)
        left = pointwise_product(shift(w, pi_map(x1, ns)), shift(w, pi_map(x2, ns)))
        right = shift(w, pointwise_product(x1, x2))
        for (m, g), v in left.items():
            require(right[g] == v, f"product identity fails for {''.join(w)} at ({m},{g})")
    return n


# measure


def all_words(max_len: int):
    for k in range(max_len + 1):
        yield from itertools.product(LETTERS, repeat=k)


def check_measure_invariance(rng, scale, fixtures):
    pool = schreier_ball("gamma", Dyadic(0), 6).order
    words = list(all_words(4))
    cylinders = []
    for _ in range(int(1000 * scale)):
        coords = rng.sample(pool, rng.randint(0, min(10, len(pool))))
        cylinders.append(Cylinder("gamma", {c: rng.choice((1, -1)) for c in coords}))
    for C in cylinders:
        mu = cylinder_measure(C)
        require(cylinder_measure(C.negated()) == mu, "mirror symmetry")
        for g in words:
            require(cylinder_measure(pullback_cylinder(g, C)) == mu, f"invariance under {''.join(g)}")
    return len(cylinders) * len(words)


def check_pullback_functorial(rng, scale, fixtures):
    n = int(300 * scale)
    pool = schreier_ball("lambda", LambdaPoint(0, Dyadic(0)), 4).order
    for _ in range(n):
        u, v = random_word(rng, 5), random_word(rng, 5)
        C = Cylinder("lambda", {c: rng.choice((1, -1)) for c in rng.sample(pool, 5)})
        require(pullback_cylinder(u + v, C) == pullback_cylinder(v, pullback_cylinder(u, C)), "functoriality")
        require(cylinder_measure(pullback_cylinder(u + v, C)) == cylinder_measure(C), "lambda invariance")
    return n


CHECKS: dict[str, list[tuple[str, Callable]]] = {
    "group": [
        ("generator_fidelity", check_generator_fidelity),
        ("group_laws", check_group_laws),
        ("relator_fixture", check_relator_fixture),
    ],
    "actions": [
        ("letter_inverses", check_letter_inverses),
        ("covering_equivariance", check_covering_equivariance),
        ("sheet_changes", check_sheet_changes),
        ("well_defined_on_F", check_well_defined),
        ("stabilizer_is_K", check_stabilizer_identity),
        ("limit_fixture", check_limit_fixture),
    ],
    "configs": [
        ("shift_action", check_shift_action),
        ("pi_equivariance", check_pi_equivariance),
        ("pair_class_mirror", check_pair_classes),
        ("no_fixed_points", check_claim_no_fixed_points),
    ],
    "proximal": [
        ("map_tuple", check_map_tuple),
        ("certificates", check_certificates),
        ("product_identity_words", check_z_identity_words),
    ],
    "measure": [
        ("cylinder_invariance", check_measure_invariance),
        ("pullback_functorial", check_pullback_functorial),
    ],
}


@dataclass
class CheckResult:
    name: str
    suite: str
    status: str
    count: int
    elapsed: float
    message: str = ""


def run_suite(suite: str, seed: int = 0, scale: float = 1.0, fixtures: Path | None = None, progress=None):
    """Run one suite (or ``"all"``); returns (report dict, list of CheckResult).

    Elapsed times are returned on the results but kept out of the report so
    that the report is byte-identical across runs with the same seed.
    """
    fixtures = Path(fixtures) if fixtures is not None else default_fixture_dir()
    suites = SUITES if suite == "all" else (suite,)
    if any(s not in CHECKS for s in suites):
        raise ValueError(f"unknown suite {suite!r}")
    results = []
    for s in suites:
        for name, fn in CHECKS[s]:
            # each check gets its own stream so suites are reproducible in isolation
            rng = random.Random(f"{seed}:{s}:{name}")
            t0 = time.perf_counter()
            try:
                count = fn(rng, scale, fixtures)
                status, message = "pass", ""
            except CheckFailed as exc:
                count, status, message = 0, "fail", str(exc)
            res = CheckResult(name, s, status, count, time.perf_counter() - t0, message)
            results.append(res)
            if progress:
                progress(res)
    report = {
        "version": __version__,
        "convention": CONVENTION,
        "suite": suite,
        "seed": seed,
        "scale": scale,
        "status": "pass" if all(r.status == "pass" for r in results) else "fail",
        "fixtures": fixture_hashes(fixtures),
        "checks": [
            {"suite": r.suite, "name": r.name, "status": r.status, "count": r.count, "message": r.message}
            for r in results
        ],
    }
    return report, results
