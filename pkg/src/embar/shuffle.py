"""Shuffle product making a normalized bar window a CDGA.

The product of (a; b_1..b_k; c) and (x; y_1..y_l; z) multiplies the ends
(ax in A, cz in C) and interleaves the middle blocks over all
(k, l)-shuffles, i.e. permutations preserving the internal order of each
block. Each term carries the sign (-1)^(eta + n_sigma) with

    eta     = |c||x| + |x|*(|b_1|+...+|b_k| - k) + |c|*(|y_1|+...+|y_l| - l)
    n_sigma = sum of (|b_i|-1)(|y_j|-1) over pairs where b_i is moved
              past y_j (y_j ends up in front of b_i).

eta is the Koszul cost of moving x and c past the suspended blocks they
jump over; n_sigma is the cost of the interleaving itself, on suspended
degrees. The unit word is a two-sided unit, the product is associative
and graded commutative, and the total differential is a derivation for
it; :func:`check_cdga_structure` verifies all of that exhaustively
inside a window.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .barcomplex import (
    BarChain,
    BarComplexWindow,
    BarSystem,
    BarWord,
    bar_D,
    chain_add_scaled,
    chain_scale,
)
from .errors import DegreeOverflow


@lru_cache(maxsize=None)
def shuffles(p: int, q: int) -> tuple[tuple[tuple[int, ...], tuple[tuple[int, int], ...]], ...]:
    """All C(p+q, p) shuffles of a p-block with a q-block.

    Each shuffle is returned as (positions of the first block, moved
    pairs): positions are 0-based slots in the interleaved word, listed
    for b_1..b_p in order; the moved pairs are the 1-based (i, j) with
    y_j placed before b_i. Enumeration is lexicographic on the position
    tuple, which fixes the term order everywhere downstream.
    """
    out = []
    slots = range(p + q)
    for pos in combinations(slots, p):
        taken = set(pos)
        ypos = [t for t in slots if t not in taken]
        moved = tuple(
            (i + 1, j + 1) for i in range(p) for j in range(q) if ypos[j] < pos[i]
        )
        out.append((pos, moved))
    return tuple(out)


def _interleave(bs, ys, pos):
    k, l = len(bs), len(ys)
    mids: list = [None] * (k + l)
    for i, t in enumerate(pos):
        mids[t] = bs[i]
    it = iter(ys)
    for t in range(k + l):
        if mids[t] is None:
            mids[t] = next(it)
    return tuple(mids)


def bar_product(system: BarSystem, w1: BarWord, w2: BarWord) -> BarChain:
    """Shuffle product of two basis words, as a chain.

    Degrees add; the bar degree of every term is -(k+l). A product whose
    total degree exceeds the truncation window raises
    :class:`DegreeOverflow` rather than being dropped silently.
    """
    cached = system._product_cache.get((w1, w2))
    if cached is not None:
        return cached
    n1, n2 = w1.total_degree(), w2.total_degree()
    if n1 + n2 > system.N:
        raise DegreeOverflow(
            f"product degree {n1 + n2} exceeds the window (N = {system.N})"
        )
    (da, ia), bs, (dc, ic) = w1
    (dx, ix), ys, (dz, iz) = w2
    ax = system.A.mult_basis(da, ia, dx, ix)
    cz = system.C.mult_basis(dc, ic, dz, iz)
    out: BarChain = {}
    if ax and cz:
        k, l = len(bs), len(ys)
        eta = dc * dx + dx * sum(d - 1 for d, _ in bs) + dc * sum(d - 1 for d, _ in ys)
        for pos, moved in shuffles(k, l):
            n_sigma = sum((bs[i - 1][0] - 1) * (ys[j - 1][0] - 1) for i, j in moved)
            sign = 1 if (eta + n_sigma) % 2 == 0 else -1
            mids = _interleave(bs, ys, pos)
            for ra, ca in ax.items():
                for rc, cc in cz.items():
                    w = BarWord((da + dx, ra), mids, (dc + dz, rc))
                    c = out.get(w, 0) + sign * ca * cc
                    if c:
                        out[w] = c
                    else:
                        del out[w]
    assert all(d >= 2 for w in out for d, _ in w.middles), "normalization violated"
    system._product_cache[(w1, w2)] = out
    return out


def chain_word_product(system: BarSystem, chain: BarChain, w: BarWord) -> BarChain:
    out: BarChain = {}
    for w1, c in chain.items():
        chain_add_scaled(out, bar_product(system, w1, w), c)
    return out


def word_chain_product(system: BarSystem, w: BarWord, chain: BarChain) -> BarChain:
    out: BarChain = {}
    for w2, c in chain.items():
        chain_add_scaled(out, bar_product(system, w, w2), c)
    return out


def chain_product(system: BarSystem, c1: BarChain, c2: BarChain) -> BarChain:
    out: BarChain = {}
    for w1, a in c1.items():
        for w2, b in c2.items():
            chain_add_scaled(out, bar_product(system, w1, w2), a * b)
    return out


def check_cdga_structure(window: BarComplexWindow) -> list[str]:
    """Exhaustive CDGA axioms on the window's basis words.

    Checks, for every pair and triple of basis words whose total degrees
    fit in the window: the unit law, graded commutativity, associativity
    and (one degree below the edge, so the differential of the product is
    still representable) the Leibniz rule for the total differential.
    Returns the first counterexample found per axiom; empty means the
    window is a CDGA on the nose.
    """
    system = window.system
    N = system.N
    words = window.words
    report: list[str] = []

    unit = system.unit_word
    for n in range(N + 1):
        for w in words[n]:
            if bar_product(system, unit, w) != {w: 1} or bar_product(system, w, unit) != {w: 1}:
                report.append(f"unit law fails on {w}")
                break
        else:
            continue
        break

    done = False
    for p in range(N + 1):
        if done:
            break
        for q in range(p, N + 1 - p):
            if done:
                break
            sign = -1 if (p % 2) and (q % 2) else 1
            for w1 in words[p]:
                if done:
                    break
                for w2 in words[q]:
                    if bar_product(system, w1, w2) != chain_scale(
                        bar_product(system, w2, w1), sign
                    ):
                        report.append(
                            f"graded commutativity fails on degrees ({p},{q}): {w1} vs {w2}"
                        )
                        done = True
                        break

    done = False
    for p in range(N + 1):
        if done:
            break
        for q in range(N + 1 - p):
            if done:
                break
            for r in range(N + 1 - p - q):
                if done:
                    break
                for w1 in words[p]:
                    if done:
                        break
                    for w2 in words[q]:
                        if done:
                            break
                        w12 = bar_product(system, w1, w2)
                        for w3 in words[r]:
                            lhs = chain_word_product(system, w12, w3)
                            rhs = word_chain_product(
                                system, w1, bar_product(system, w2, w3)
                            )
                            if lhs != rhs:
                                report.append(
                                    f"associativity fails on degrees ({p},{q},{r})"
                                )
                                done = True
                                break

    done = False
    for p in range(N):
        if done:
            break
        for q in range(N - p):
            if done:
                break
            sign = -1 if p % 2 else 1
            for w1 in words[p]:
                if done:
                    break
                Dw1 = bar_D(system, w1)
                for w2 in words[q]:
                    lhs: BarChain = {}
                    for w, c in bar_product(system, w1, w2).items():
                        chain_add_scaled(lhs, bar_D(system, w), c)
                    rhs = chain_word_product(system, Dw1, w2)
                    chain_add_scaled(
                        rhs, word_chain_product(system, w1, bar_D(system, w2)), sign
                    )
                    if lhs != rhs:
                        report.append(f"Leibniz fails on degrees ({p},{q}): {w1}, {w2}")
                        done = True
                        break

    return report
