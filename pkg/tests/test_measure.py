import itertools
import random
from fractions import Fraction

import pytest

from thompson_proximal.actions import LambdaPoint, schreier_ball
from thompson_proximal.fgroup import LETTERS, word_eval
from thompson_proximal.measure import Cylinder, cylinder_measure, pullback_cylinder, sample_config
from thompson_proximal.numerics import Dyadic
from thompson_proximal.verify import random_word


def test_measure_examples():
    assert cylinder_measure(Cylinder("gamma")) == 1
    assert cylinder_measure(Cylinder("gamma", {0: 1, 1: -1, 2: 1})) == Dyadic(1, 3)
    assert cylinder_measure(Cylinder("gamma", [(0, 1), (0, -1)])) == 0


def test_measure_by_enumeration():
    # count assignments on a small ground set that satisfy the constraints
    ground = [Dyadic(0), Dyadic(1), Dyadic(1, 1), Dyadic(-1)]
    rng = random.Random(5)
    for _ in range(50):
        cons = [(rng.choice(ground), rng.choice((1, -1))) for _ in range(rng.randint(0, 5))]
        C = Cylinder("gamma", cons)
        hits = 0
        for vals in itertools.product((1, -1), repeat=len(ground)):
            x = dict(zip(ground, vals))
            hits += all(x[c] == v for c, v in cons)
        assert cylinder_measure(C).to_fraction() == Fraction(hits, 2 ** len(ground))


def test_pullback_examples():
    assert pullback_cylinder("a", Cylinder("gamma", {0: 1})) == Cylinder("gamma", {1: 1})
    assert pullback_cylinder(word_eval("a"), Cylinder("gamma", {0: 1})) == Cylinder("gamma", {1: 1})
    C = Cylinder("gamma", {0: 1, 3: -1})
    assert pullback_cylinder("", C) == C
    assert pullback_cylinder("b", Cylinder("lambda", {(1, 0): 1})) == Cylinder("lambda", {(0, 0): 1})
    with pytest.raises(TypeError):
        pullback_cylinder(word_eval("b"), Cylinder("lambda", {(1, 0): 1}))


def test_pullback_is_the_preimage_event(rng):
    # x in pullback(g, C)  <=>  g x in C, checked on explicit windows
    from thompson_proximal.configs import PartialConfig, shift

    pool = schreier_ball("gamma", 0, 4).order
    for _ in range(200):
        w = random_word(rng, 4)
        C = Cylinder("gamma", {c: rng.choice((1, -1)) for c in rng.sample(pool, 3)})
        P = pullback_cylinder(w, C)
        x = PartialConfig("gamma", {c: rng.choice((1, -1)) for c in P.constraints})
        gx = shift(w, x)
        assert all(x[c] == v for c, v in P.constraints.items()) == all(gx[c] == v for c, v in C.constraints.items())


def test_invariance_exhaustive_short_words(rng):
    pool = schreier_ball("gamma", 0, 6).order
    words = [w for k in range(5) for w in itertools.product(LETTERS, repeat=k)]
    for _ in range(30):
        C = Cylinder("gamma", {c: rng.choice((1, -1)) for c in rng.sample(pool, rng.randint(0, 10))})
        for w in words:
            assert cylinder_measure(pullback_cylinder(w, C)) == cylinder_measure(C)
            assert len(pullback_cylinder(w, C)) == len(C)


def test_contradiction_survives_pullback():
    C = Cylinder("gamma", [(0, 1), (0, -1), (1, 1)])
    assert cylinder_measure(pullback_cylinder("ab", C)) == 0


def test_mirror_symmetry(rng):
    for _ in range(100):
        C = Cylinder("gamma", {Dyadic(rng.randint(-9, 9), 2): rng.choice((1, -1)) for _ in range(6)})
        assert cylinder_measure(C.negated()) == cylinder_measure(C)


def test_functorial(rng):
    pool = schreier_ball("lambda", LambdaPoint(0, Dyadic(0)), 3).order
    for _ in range(200):
        u, v = random_word(rng, 5), random_word(rng, 5)
        C = Cylinder("lambda", {c: rng.choice((1, -1)) for c in rng.sample(pool, 4)})
        assert pullback_cylinder(u + v, C) == pullback_cylinder(v, pullback_cylinder(u, C))


def test_sampler_deterministic():
    window = [Dyadic(0), Dyadic(1, 1), Dyadic(-3)]
    a = sample_config(window, 42)
    assert a == sample_config(window, 42)
    assert a == sample_config(list(reversed(window)), 42)
    assert a.domain() == set(window)
    # random.Random(42).getrandbits(1) x3 -> 1, 0, 0 over sorted coordinates
    assert sample_config(window, 42).to_json() == {
        "space": "gamma",
        "entries": [["-3", 1], ["0", -1], ["1/2^1", -1]],
    }


def test_sampler_lambda_space():
    y = sample_config([(0, "0"), (1, "1/2^1")], 3, space="lambda")
    assert y.space == "lambda" and len(y) == 2


def test_cylinder_json():
    C = Cylinder("lambda", {(0, 0): 1, (2, "1/2^2"): -1})
    assert Cylinder.from_json(C.to_json()) == C
    E = Cylinder("gamma", [(0, 1), (0, -1)])
    assert Cylinder.from_json(E.to_json()).empty
