"""Diamond-lemma style checks on an :class:`Algebra`'s rewrite system."""

from __future__ import annotations

import itertools
import random
from math import comb

from ..coeff import Rat
from .algebra import Algebra, NCElem, NonTerminating


def _same(a: dict, b: dict) -> bool:
    if a.keys() != b.keys():
        return False
    return all(a[w] == b[w] for w in a)


def _diff_str(alg: Algebra, a: dict, b: dict) -> str:
    keys = set(a) | set(b)
    F = alg.F
    d = {w: a.get(w, F.zero) - b.get(w, F.zero) for w in keys}
    d = {w: c for w, c in d.items() if not c.is_zero()}
    return str(NCElem(alg, d, normal=True))


def overlap_words(alg: Algebra, max_len: int = 3):
    """Words l_0 ... l_{k-1} in which every adjacent pair is a rule left side."""
    succ: dict = {}
    for a, b in alg.rules:
        succ.setdefault(a, []).append(b)
    out = []
    for (a, b) in sorted(alg.rules):
        stack = [(a, b)]
        while stack:
            w = stack.pop()
            if len(w) >= 3:
                out.append(w)
            if len(w) < max_len:
                for c in succ.get(w[-1], ()):
                    stack.append(w + (c,))
    return sorted(set(out))


def check_overlaps(alg: Algebra, max_len: int = 3, limit: int | None = None) -> dict:
    """Resolve every overlap ambiguity along each first rewrite position."""
    failures = []
    words = overlap_words(alg, max_len)
    if limit is not None:
        words = words[:limit]
    for w in words:
        ref = alg.nf_word(w)
        for i in range(len(w) - 1):
            if (w[i], w[i + 1]) not in alg.rules:
                continue
            step = alg.rewrite_at(w, i)
            try:
                got = alg.rewrite(step, "leftmost")
            except NonTerminating as e:
                failures.append({"word": alg.al.word_str(w), "position": i, "error": str(e)})
                continue
            if not _same(got, ref):
                failures.append(
                    {"word": alg.al.word_str(w), "position": i, "difference": _diff_str(alg, got, ref)}
                )
    return {"checked": len(words), "failures": failures}


def sample_coefficients(alg: Algebra) -> list:
    F = alg.F
    u, p = F.u, F.p
    return [F.w, u.inv(), (u + p).inv(), (1 + 2 * u).inv(), p, F.q * u + 3]


def check_coefficient_compatibility(alg: Algebra, samples=None) -> dict:
    """rule-then-push versus push-then-rule for every rule and sample f,
    and the push homomorphism l (f g) = (l f) g for every letter."""
    if alg.level != "localized":
        return {"checked": 0, "failures": []}
    samples = samples or sample_coefficients(alg)
    failures = []
    checked = 0
    for (a, b), rhs in sorted(alg.rules.items()):
        for f in samples:
            first = {}
            for k, m in rhs:
                for c, m2 in alg.push_prefix(m, f):
                    first[m2] = first.get(m2, alg.F.zero) + k * c
            first = alg.nf_terms(first)
            second = alg.nf_terms(_collect(alg.push_prefix((a, b), f), alg))
            checked += 1
            if not _same(first, second):
                failures.append(
                    {"word": alg.al.word_str((a, b)), "coefficient": str(f), "difference": _diff_str(alg, first, second)}
                )
    for l in alg.letters:
        for f, g in itertools.combinations(samples, 2):
            whole = alg.nf_terms(_collect([(c, (l2,)) for c, l2 in alg.push(l, f * g)], alg))
            # l f g: push g first, then f through what remains
            step = {}
            for c1, l1 in alg.push(l, g):
                for c2, w2 in alg.push_prefix((l1,), f):
                    step[w2] = step.get(w2, alg.F.zero) + c2 * c1
            step = alg.nf_terms(step)
            checked += 1
            if not _same(whole, step):
                failures.append(
                    {"letter": alg.al.name(l), "coefficients": [str(f), str(g)], "difference": _diff_str(alg, whole, step)}
                )
    return {"checked": checked, "failures": failures}


def _collect(pairs, alg: Algebra) -> dict:
    out: dict = {}
    for c, w in pairs:
        out[w] = out[w] + c if w in out else c
    return out


def random_element(alg: Algebra, rng: random.Random, max_deg: int = 4, terms: int = 3, letters=None) -> dict:
    letters = letters or alg.letters
    F = alg.F
    out: dict = {}
    for _ in range(terms):
        d = rng.randint(0, max_deg)
        w = tuple(rng.choice(letters) for _ in range(d))
        c = F(rng.randint(-3, 3) or 1) * F.q ** rng.randint(-1, 1)
        out[w] = out[w] + c if w in out else c
    return {w: c for w, c in out.items() if not c.is_zero()}


def check_strategies(alg: Algebra, count: int = 1000, max_deg: int = 4, seed: int = 0, letters=None) -> dict:
    """Memoized insertion normal form versus generic rewriting strategies."""
    rng = random.Random(seed)
    failures = []
    for i in range(count):
        raw = random_element(alg, rng, max_deg, letters=letters)
        ref = alg.nf_terms(raw)
        for strat in ("leftmost", "rightmost", "random"):
            got = alg.rewrite(raw, strat, seed=seed + i)
            if not _same(got, ref):
                failures.append({"case": i, "strategy": strat, "difference": _diff_str(alg, got, ref)})
                break
    return {"checked": count, "failures": failures}


def pbw_counts(alg: Algebra, dmax: int = 5) -> dict:
    """Number of normal words of each degree in the x letters."""
    xs = [alg.al.x(A) for A in range(4)]
    out = {}
    for d in range(dmax + 1):
        out[d] = sum(1 for w in itertools.product(xs, repeat=d) if alg.is_normal(w))
    return out


def classical_pbw(d: int, det_eliminated: bool) -> int:
    n = comb(d + 3, 3)
    if det_eliminated and d >= 2:
        n -= comb(d + 1, 3)
    return n


def check_confluence(alg: Algebra, max_len: int = 3) -> dict:
    ov = check_overlaps(alg, max_len)
    co = check_coefficient_compatibility(alg)
    return {
        "overlaps": ov,
        "coefficients": co,
        "ok": not ov["failures"] and not co["failures"],
    }


def with_rule(alg: Algebra, lhs: tuple, rhs: list) -> Algebra:
    """A copy of ``alg`` with one rule replaced (negative controls)."""
    import copy

    new = copy.copy(alg)
    new.rules = dict(alg.rules)
    new.rules[tuple(lhs)] = [(c, tuple(w)) for c, w in rhs]
    new._lmul_cache = {}
    new._word_cache = {}
    new._push_cache = {}
    new._in_progress = set()
    return new
