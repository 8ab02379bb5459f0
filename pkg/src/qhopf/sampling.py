"""Seeded random elements for property checks."""

from __future__ import annotations

import random

from .ncalg import Algebra, NCElem


def radial_samples(alg: Algebra) -> list:
    F = alg.F
    u, p = F.u, F.p
    return [F.one, F.w, u.inv(), (u + p).inv(), u / (u + 1), F.q * u + 2, (F.q * F.q * u + p).inv()]


def random_coeff(alg: Algebra, rng: random.Random, radial: bool = True):
    F = alg.F
    c = F(rng.choice([-3, -2, -1, 1, 2, 3])) * F.q ** rng.randint(-2, 2)
    if radial and rng.random() < 0.6:
        c = c * rng.choice(radial_samples(alg))
    return c


def random_form(alg: Algebra, rng: random.Random, degree: int, max_x: int = 2, terms: int = 2, radial: bool = True) -> NCElem:
    """Homogeneous xi-degree ``degree`` element in the x, xi sector."""
    al = alg.al
    raw: dict = {}
    for _ in range(terms):
        xs = [al.x(rng.randrange(4)) for _ in range(rng.randint(0, max_x))]
        xis = [al.xi(rng.randrange(4)) for _ in range(degree)]
        word = xs + xis
        rng.shuffle(word)
        w = tuple(word)
        c = random_coeff(alg, rng, radial)
        raw[w] = raw[w] + c if w in raw else c
    return NCElem(alg, {w: c for w, c in raw.items() if not c.is_zero()})


def random_letters_element(alg: Algebra, rng: random.Random, letters, max_deg: int = 3, terms: int = 2) -> NCElem:
    raw: dict = {}
    for _ in range(terms):
        w = tuple(rng.choice(letters) for _ in range(rng.randint(0, max_deg)))
        c = random_coeff(alg, rng, radial=False)
        raw[w] = raw[w] + c if w in raw else c
    return NCElem(alg, {w: c for w, c in raw.items() if not c.is_zero()})
