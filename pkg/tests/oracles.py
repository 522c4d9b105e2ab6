"""Independent reference implementations used only by the tests.

None of these import the package: they work on plain one-line permutations,
exponent-tuple polynomials and partitions.
"""
from __future__ import annotations

import functools
from collections import defaultdict


# --- permutations -----------------------------------------------------------

def perm_length(p: tuple[int, ...]) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


def swap_positions(p: tuple[int, ...], i: int) -> tuple[int, ...]:
    """p * s_i for 1 <= i < n."""
    q = list(p)
    q[i - 1], q[i] = q[i], q[i - 1]
    return tuple(q)


@functools.lru_cache(maxsize=None)
def all_reduced_words(p: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    """Every reduced word of a finite permutation, by peeling right descents."""
    if all(p[i] < p[i + 1] for i in range(len(p) - 1)):
        return frozenset({()})
    out = set()
    for i in range(1, len(p)):
        if p[i - 1] > p[i]:
            out |= {word + (i,) for word in all_reduced_words(swap_positions(p, i))}
    return frozenset(out)


def standard_young_tableaux_count(shape: tuple[int, ...]) -> int:
    """Hook length formula."""
    from math import factorial

    cells = sum(shape)
    conj = [sum(1 for r in shape if r > j) for j in range(shape[0])] if shape else []
    hooks = 1
    for i, row in enumerate(shape):
        for j in range(row):
            hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
    return factorial(cells) // hooks


# --- Kostka numbers ---------------------------------------------------------

@functools.lru_cache(maxsize=None)
def kostka(la: tuple[int, ...], alpha: tuple[int, ...]) -> int:
    """Number of semistandard tableaux of shape la and content alpha.

    Peels the cells holding the largest letter, a horizontal strip.
    """
    alpha = tuple(alpha)
    while alpha and alpha[-1] == 0:
        alpha = alpha[:-1]
    if sum(la) != sum(alpha):
        return 0
    if not alpha:
        return 1 if not la else 0
    if len(la) > len(alpha):
        return 0
    last = alpha[-1]
    total = 0

    def strips(i, remaining, mu):
        nonlocal total
        if i == len(la):
            if remaining == 0:
                total += kostka(tuple(p for p in mu if p), alpha[:-1])
            return
        lower = la[i + 1] if i + 1 < len(la) else 0
        for take in range(0, min(remaining, la[i] - lower) + 1):
            strips(i + 1, remaining - take, mu + (la[i] - take,))

    strips(0, last, ())
    return total


# --- Schubert polynomials ---------------------------------------------------

Poly = dict  # exponent tuple -> integer coefficient


def divided_difference(f: Poly, i: int) -> Poly:
    """(f - s_i f) / (x_i - x_{i+1}) with variables indexed from 1."""
    out: dict = defaultdict(int)
    a_idx, b_idx = i - 1, i
    for exp, c in f.items():
        a, b = exp[a_idx], exp[b_idx]
        if a == b:
            continue
        sign = 1 if a > b else -1
        lo, hi = min(a, b), max(a, b)
        for k in range(hi - lo):
            e = list(exp)
            e[a_idx], e[b_idx] = hi - 1 - k, lo + k
            out[tuple(e)] += sign * c
    return {e: c for e, c in out.items() if c}


def poly_mul(f: Poly, g: Poly) -> Poly:
    out: dict = defaultdict(int)
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            out[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
    return {e: c for e, c in out.items() if c}


@functools.lru_cache(maxsize=None)
def schubert(p: tuple[int, ...]) -> tuple:
    """Schubert polynomial of a permutation, as a sorted tuple of terms."""
    n = len(p)
    for i in range(1, n):
        if p[i - 1] < p[i]:
            longer = dict(schubert(swap_positions(p, i)))
            return tuple(sorted(divided_difference(longer, i).items()))
    return (((tuple(range(n - 1, -1, -1))), 1),)


def schubert_structure_constant(u, w, v) -> int:
    """Coefficient of S_v in S_u S_w, for l(v) = l(u) + l(w)."""
    f = poly_mul(dict(schubert(tuple(u))), dict(schubert(tuple(w))))
    p = tuple(v)
    word = []
    while perm_length(p):
        i = next(i for i in range(1, len(p)) if p[i - 1] > p[i])
        word.append(i)
        p = swap_positions(p, i)
    # S_v -> S_{v s_i} under the divided difference at a descent i
    for i in word:
        f = divided_difference(f, i)
    return f.get(tuple([0] * len(v)), 0)
