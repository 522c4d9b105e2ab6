"""
Crystal operators on affine factorizations.

For an element w missing a residue x, the factors of any affine
factorization of w avoid x, so their letters can be compared in the order

    x-1 > x-2 > ... > 0 > n-1 > ... > x+1.

The operators e_r, f_r act on the adjacent factors u = w^{r+1} and v = w^r
through the pairing of their letters.  With two factors the missing residue
is not needed: a bracketed pair (b-1 in u, b in v) is set aside and b plays
the role of x (see ``two_factor_x``).

>>> from .affine_weyl import from_reduced_word
>>> g = build_crystal(from_reduced_word((3, 4, 1, 2), 5), 3)
>>> len(g.vertices), len(g.edges)
(9, 8)
>>> sorted(g.highest_weights().items())
[((2, 1, 1), 1), ((2, 2), 1)]
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Literal, Sequence

from .affine_weyl import AffinePermutation, Partition, partition, partition_key
from .errors import NoMissingResidue, NotTwoFactors, UndecoratedGraph, XInContent, XInvalid
from .factorization import (
    AffineFactorization,
    CyclicFactor,
    all_factorizations,
    enumerate_factorizations,
    order_position,
)

Kind = Literal["E", "F", "S"]


@dataclass(frozen=True)
class PairingResult:
    pairs: tuple[tuple[int, int], ...]
    left_unpaired: frozenset[int]
    right_unpaired: frozenset[int]


def _contents(u, v) -> tuple[frozenset[int], frozenset[int]]:
    cu = u.content if isinstance(u, CyclicFactor) else frozenset(u)
    cv = v.content if isinstance(v, CyclicFactor) else frozenset(v)
    return cu, cv


def pair_factors(u, v, x: int, n: int | None = None) -> PairingResult:
    """The uv-pairing with respect to x.

    ``u`` and ``v`` are cyclic factors or plain residue sets (then n is needed).

    >>> r = pair_factors({1, 0}, {4, 3, 1}, 2, 5)
    >>> r.pairs, sorted(r.left_unpaired), sorted(r.right_unpaired)
    (((0, 1),), [1], [3, 4])
    """
    if n is None:
        n = u.n
    cu, cv = _contents(u, v)
    if x in cu or x in cv:
        raise XInContent(f"residue {x} occurs in the factors")
    pos = {c: order_position(c, x, n) for c in cu | cv}
    free = sorted(cv, key=pos.__getitem__)
    pairs = []
    unpaired_left = []
    for b in sorted(cu, key=pos.__getitem__, reverse=True):
        match = next((a for a in free if pos[a] > pos[b]), None)
        if match is None:
            unpaired_left.append(b)
        else:
            free.remove(match)
            pairs.append((b, match))
    return PairingResult(tuple(pairs), frozenset(unpaired_left), frozenset(free))


def _raise(cu, cv, x, n):
    """e on a pair of contents, or None."""
    left = pair_factors(cu, cv, x, n).left_unpaired
    if not left:
        return None
    b = min(left, key=lambda c: order_position(c, x, n))
    t = 0
    while (b - t - 1) % n in cu:
        t += 1
    return cu - {b}, cv | {(b - t) % n}


def _lower(cu, cv, x, n):
    """f on a pair of contents, or None."""
    right = pair_factors(cu, cv, x, n).right_unpaired
    if not right:
        return None
    a = max(right, key=lambda c: order_position(c, x, n))
    s = 0
    while (a + s + 1) % n in cv:
        s += 1
    return cu | {(a + s) % n}, cv - {a}


def _case_three_residue(cu: frozenset[int], cv: frozenset[int], n: int) -> int | None:
    """Smallest b with b not in u, b in v, b-1 in u, closing a Case (3) block."""
    for b in range(n):
        if b in cu or b not in cv or (b - 1) % n not in cu:
            continue
        t = 1
        while (b - t) % n in cv and (b - t - 1) % n in cu:
            t += 1
        if (b - t) % n not in cv:
            return b
    return None


def two_factor_x(u, v, n: int | None = None) -> int:
    """The residue playing the role of x for a two-factor crystal.

    Returns the smallest residue missing from both factors when one exists;
    otherwise the b of a Case (3) block of the initial bracketing.

    >>> two_factor_x({1}, {2, 0}, 3)
    2
    """
    if n is None:
        n = u.n
    cu, cv = _contents(u, v)
    missing = set(range(n)) - cu - cv
    if missing:
        return min(missing)
    b = _case_three_residue(cu, cv, n)
    if b is None:  # excluded for genuine factorizations
        raise NotTwoFactors("no Case (3) block in the initial bracketing")
    return b


def _pair_context(cu, cv, x, n):
    """Reduce (u, v) to contents avoiding x, and the pair to add back."""
    if x not in cu and x not in cv:
        return cu, cv, frozenset(), frozenset()
    # x = b comes from a Case (3) block: set aside b-1 in u and b in v
    return cu - {(x - 1) % n}, cv - {x}, frozenset({(x - 1) % n}), frozenset({x})


def _apply_pair(kind: str, cu, cv, x, n):
    ru, rv, eu, ev = _pair_context(cu, cv, x, n)
    if kind == "E":
        out = _raise(ru, rv, x, n)
    elif kind == "F":
        out = _lower(ru, rv, x, n)
    else:
        raise ValueError(kind)
    if out is None:
        return None
    nu, nv = out
    if nu & eu or nv & ev:
        raise AssertionError("operator collided with the set-aside pair")
    return nu | eu, nv | ev


def _pair_strings(cu, cv, x, n) -> tuple[int, int]:
    ru, rv, _, _ = _pair_context(cu, cv, x, n)
    res = pair_factors(ru, rv, x, n)
    return len(res.left_unpaired), len(res.right_unpaired)


def resolve_x(fact: AffineFactorization, r: int | None = None, x: int | None = None) -> int:
    """Validate or choose the residue x used by the operators on ``fact``.

    With x omitted: the smallest residue missing from every factor, or for
    two factors covering every residue, the Case (3) residue.
    """
    n = fact.n
    used = set().union(*fact.contents) if fact.factors else set()
    if x is not None:
        if not 0 <= x < n or x in used:
            if fact.num_factors == 2 and len(used) == n and x == two_factor_x(*fact.contents, n):
                return x
            raise XInvalid(f"residue {x} is not missing from the product")
        return x
    missing = set(range(n)) - used
    if missing:
        return min(missing)
    if fact.num_factors == 2:
        return two_factor_x(*fact.contents, n)
    raise NoMissingResidue("every residue occurs; crystal operators need a missing residue")


def _check_color(r: int, fact: AffineFactorization):
    if not 1 <= r < fact.num_factors:
        raise ValueError(f"color {r} outside 1..{fact.num_factors - 1}")


def crystal_op(kind: Kind, r: int, fact: AffineFactorization, x: int | None = None) -> AffineFactorization | None:
    """Apply e_r ("E"), f_r ("F") or the reflection s_r ("S"); None means zero.

    Factor r is counted from the right, so E and F act on w^{r+1} w^r.
    """
    _check_color(r, fact)
    x = resolve_x(fact, r, x)
    n = fact.n
    cu, cv = fact.factor(r + 1).content, fact.factor(r).content
    if kind in ("E", "F"):
        out = _apply_pair(kind, cu, cv, x, n)
        return None if out is None else fact.with_factor_pair(r, *out)
    if kind != "S":
        raise ValueError(f"unknown operator kind {kind!r}")
    p, q = _pair_strings(cu, cv, x, n)
    step = "F" if q > p else "E"
    for _ in range(abs(q - p)):
        cu, cv = _apply_pair(step, cu, cv, x, n)
    return fact.with_factor_pair(r, cu, cv)


def e(r: int, fact: AffineFactorization, x: int | None = None):
    return crystal_op("E", r, fact, x)


def f(r: int, fact: AffineFactorization, x: int | None = None):
    return crystal_op("F", r, fact, x)


def s(r: int, fact: AffineFactorization, x: int | None = None):
    return crystal_op("S", r, fact, x)


def string_lengths(r: int, fact: AffineFactorization, x: int | None = None) -> tuple[int, int]:
    """(epsilon_r, phi_r) read off the unpaired letters."""
    _check_color(r, fact)
    x = resolve_x(fact, r, x)
    return _pair_strings(fact.factor(r + 1).content, fact.factor(r).content, x, fact.n)


def is_highest_weight(fact: AffineFactorization, x: int | None = None) -> bool:
    return all(string_lengths(r, fact, x)[0] == 0 for r in range(1, fact.num_factors))


# --- crystal graphs ---------------------------------------------------------

@dataclass
class CrystalGraph:
    n: int
    num_factors: int
    element: AffinePermutation
    x: int | None
    vertices: list[AffineFactorization]
    edges: list[tuple[int, int, int]]
    eps: dict[tuple[int, int], int] = field(default_factory=dict)
    phi: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def colors(self) -> range:
        return range(1, self.num_factors)

    def weight(self, index: int):
        return self.vertices[index].weight

    def index(self) -> dict[AffineFactorization, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def highest_weight_vertices(self) -> list[int]:
        return [i for i in range(len(self.vertices)) if all(self.eps[(i, r)] == 0 for r in self.colors)]

    def highest_weights(self) -> dict[Partition, int]:
        """Multiplicity of each highest weight (trailing zeros dropped)."""
        counts = Counter(partition(self.weight(i)) for i in self.highest_weight_vertices())
        return dict(sorted(counts.items(), reverse=True))

    def components(self) -> list[list[int]]:
        parent = list(range(len(self.vertices)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for a, _, b in self.edges:
            parent[find(a)] = find(b)
        groups: dict[int, list[int]] = {}
        for i in range(len(self.vertices)):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def label(self, index: int) -> str:
        return self.vertices[index].to_text(self.x)

    def to_json(self) -> dict:
        return {
            "vertices": [self.label(i) for i in range(len(self.vertices))],
            "edges": [list(edge) for edge in self.edges],
            "highest_weights": {partition_key(k): v for k, v in self.highest_weights().items()},
        }


def build_crystal(w: AffinePermutation, num_factors: int, x: int | None = None) -> CrystalGraph:
    """The crystal B(w) on factorizations into ``num_factors`` factors."""
    if num_factors < 1:
        raise ValueError("need at least one factor")
    missing = w.missing_residues()
    if x is None:
        if missing:
            x = min(missing)
        elif num_factors != 2:
            raise NoMissingResidue(f"{w} has full content; only two-factor crystals exist")
    elif x not in missing:
        raise XInvalid(f"residue {x} occurs in a reduced word of {w}")
    vertices = all_factorizations(w, num_factors)
    where = {v: i for i, v in enumerate(vertices)}
    edges = []
    eps, phi = {}, {}
    for i, vert in enumerate(vertices):
        for r in range(1, num_factors):
            eps[(i, r)], phi[(i, r)] = string_lengths(r, vert, x)
            target = crystal_op("F", r, vert, x)
            if target is not None:
                edges.append((i, r, where[target]))
    return CrystalGraph(w.n, num_factors, w, x, vertices, edges, eps, phi)


def highest_weight_factorizations(
    w: AffinePermutation, mu: Sequence[int], x: int | None = None, num_factors: int | None = None
) -> list[AffineFactorization]:
    """Highest weight factorizations of w of weight mu (padded with zeros).

    >>> from .affine_weyl import from_reduced_word
    >>> sigma = from_reduced_word((6, 2, 3, 4, 3, 1, 2, 0), 7)
    >>> [str(f) for f in highest_weight_factorizations(sigma, (3, 3, 2))]
    ['(26)(310)(432)']
    """
    mu = tuple(mu)
    if num_factors is None:
        num_factors = len(mu)
    if num_factors < len(mu):
        raise ValueError("fewer factors than parts")
    alpha = tuple(mu) + (0,) * (num_factors - len(mu))
    if num_factors > 2 and x is None and not w.missing_residues():
        raise NoMissingResidue(f"{w} has full content")
    if x is not None and x not in w.missing_residues():
        raise XInvalid(f"residue {x} occurs in a reduced word of {w}")
    return [fact for fact in enumerate_factorizations(w, alpha) if is_highest_weight(fact, x)]


def highest_weight_count(w: AffinePermutation, mu: Sequence[int], x: int | None = None,
                         num_factors: int | None = None) -> int:
    return len(highest_weight_factorizations(w, mu, x, num_factors))


# --- Stembridge axioms ------------------------------------------------------

AXIOMS = ("P1", "P2", "P3", "P4", "P5", "P6", "P5'", "P6'", "strings")


@dataclass
class AxiomReport:
    results: dict[str, bool]
    witnesses: dict[str, tuple]

    @property
    def passed(self) -> bool:
        return all(self.results.values())

    def failures(self) -> list[str]:
        return [name for name, ok in self.results.items() if not ok]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "axioms": self.results,
            "witnesses": {k: list(v) for k, v in self.witnesses.items()},
        }


def verify_stembridge(g: CrystalGraph) -> AxiomReport:
    """Check Stembridge's local axioms for type A_{l-1} on a decorated graph.

    Besides P1 to P6', the pseudo-axiom "strings" checks that the stored
    epsilon and phi agree with the string lengths read off the edges.
    """
    nv = len(g.vertices)
    colors = list(g.colors)
    if any((i, r) not in g.eps or (i, r) not in g.phi for i in range(nv) for r in colors):
        raise UndecoratedGraph("graph is missing epsilon/phi decorations")
    results = {name: True for name in AXIOMS}
    witnesses: dict[str, tuple] = {}

    def fail(name, *witness):
        if results[name]:
            results[name] = False
            witnesses[name] = witness

    fmap: dict[int, dict[int, int]] = {r: {} for r in colors}
    emap: dict[int, dict[int, int]] = {r: {} for r in colors}
    for a, r, b in g.edges:
        if a in fmap[r]:
            fail("P2", a, r)
        if b in emap[r]:
            fail("P2", b, r)
        fmap[r][a] = b
        emap[r][b] = a

    def string(start, step):
        seen = {start}
        count, cur = 0, start
        while cur in step:
            cur = step[cur]
            count += 1
            if cur in seen:
                return None
            seen.add(cur)
        return count

    eps, phi = {}, {}
    for r in colors:
        for i in range(nv):
            ei, pi = string(i, emap[r]), string(i, fmap[r])
            if ei is None or pi is None:
                fail("P1", i, r)
                ei, pi = g.eps[(i, r)], g.phi[(i, r)]
            eps[(i, r)], phi[(i, r)] = ei, pi
            if (ei, pi) != (g.eps[(i, r)], g.phi[(i, r)]):
                fail("strings", i, r)

    def E(r, i):
        return None if i is None else emap[r].get(i)

    def F(r, i):
        return None if i is None else fmap[r].get(i)

    def cartan(i, j):
        return -1 if abs(i - j) == 1 else 0

    for x in range(nv):
        for i in colors:
            for j in colors:
                if i == j:
                    continue
                a = cartan(i, j)
                xi = E(i, x)
                if xi is not None:
                    d_eps = eps[(x, j)] - eps[(xi, j)]
                    d_phi = phi[(xi, j)] - phi[(x, j)]
                    if d_eps + d_phi != a:
                        fail("P3", x, i, j)
                    if d_eps > 0 or d_phi > 0:
                        fail("P4", x, i, j)
                xf = F(i, x)
                if xf is not None:
                    n_eps = eps[(xf, j)] - eps[(x, j)]
                    n_phi = phi[(x, j)] - phi[(xf, j)]
                    if n_eps + n_phi != a:
                        fail("P3", x, i, j, "dual")
                    if n_eps > 0 or n_phi > 0:
                        fail("P4", x, i, j, "dual")
        for i in colors:
            for j in colors:
                if i == j:
                    continue
                _check_square(x, i, j, E, F, eps, phi, fail, "P5", "P6")
                _check_square(x, i, j, F, E, phi, eps, fail, "P5'", "P6'")
    return AxiomReport(results, witnesses)


def _check_square(x, i, j, up, down, a, b, fail, name5, name6):
    """P5 and P6 for the ordered pair (i, j); the dual axioms swap (e, eps) with (f, phi)."""
    xi, xj = up(i, x), up(j, x)
    if xi is None or xj is None:
        return
    dij = a[(x, j)] - a[(xi, j)]
    dji = a[(x, i)] - a[(xj, i)]
    if dij == 0:
        y = up(i, xj)
        if y is None or y != up(j, xi):
            fail(name5, x, i, j)
        elif b[(y, i)] - b[(down(j, y), i)] != 0:
            fail(name5, x, i, j)
    if dij == -1 and dji == -1:
        y = up(i, up(j, up(j, xi)))
        if y is None or y != up(j, up(i, up(i, xj))):
            fail(name6, x, i, j)
        elif b[(y, j)] - b[(down(i, y), j)] != -1 or b[(y, i)] - b[(down(j, y), i)] != -1:
            fail(name6, x, i, j)


# --- output -----------------------------------------------------------------

def to_dot(g: CrystalGraph) -> str:
    lines = ["digraph crystal {"]
    for i in range(len(g.vertices)):
        lines.append(f'  v{i} [label="{g.label(i)}"];')
    for a, r, b in g.edges:
        lines.append(f'  v{a} -> v{b} [label="{r}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_text(g: CrystalGraph) -> str:
    return json.dumps(g.to_json(), sort_keys=True)
