"""
Cyclically decreasing elements and affine factorizations.

A cyclically decreasing element of the affine symmetric group is determined
by its content, a proper subset of the residues mod n.  An affine
factorization of w of weight alpha is a tuple (w^l, ..., w^1) of such
elements whose product is w, with lengths adding up and |con(w^i)| = alpha_i.
Factors are stored leftmost first, while weights are indexed from the right,
so ``fact.weight[0]`` is the size of the rightmost factor.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .affine_weyl import (
    AffinePermutation,
    Composition,
    _has_right_descent,
    _length,
    _right_mult,
    compositions_of,
    from_reduced_word,
    identity,
)
from .errors import BadResidue, XInContent


def order_position(c: int, x: int, n: int) -> int:
    """Rank of residue c in the order x-1 > x-2 > ... > 0 > n-1 > ... > x+1.

    x+1 has rank 0 and x-1 has rank n-2; x itself is not ranked.
    """
    return (c - x - 1) % n


def decreasing_word(content: Iterable[int], x: int, n: int) -> tuple[int, ...]:
    """Arrange a content decreasingly in the order determined by x.

    >>> decreasing_word({12, 5, 9, 8, 2}, 10, 14)
    (9, 8, 5, 2, 12)
    >>> decreasing_word({12, 5, 9, 8, 2}, 3, 14)
    (2, 12, 9, 8, 5)
    """
    content = set(content)
    if x in content:
        raise XInContent(f"residue {x} lies in {sorted(content)}")
    for c in content:
        if not 0 <= c < n:
            raise BadResidue(f"residue {c} not in [0, {n})")
    return tuple(sorted(content, key=lambda c: order_position(c, x, n), reverse=True))


def is_cyclically_decreasing(word: Sequence[int], n: int) -> bool:
    """
    >>> is_cyclically_decreasing((4, 3, 1), 5)
    True
    >>> is_cyclically_decreasing((0, 1), 5)
    False
    """
    for c in word:
        if not 0 <= c < n:
            raise BadResidue(f"residue {c} not in [0, {n})")
    if len(set(word)) != len(word) or len(word) >= n:
        return False
    where = {c: pos for pos, c in enumerate(word)}
    return not any(
        (j - 1) % n in where and where[(j - 1) % n] < where[j] for j in where
    )


@functools.lru_cache(maxsize=None)
def _factor_word(content: frozenset[int], n: int) -> tuple[int, ...]:
    x = min(set(range(n)) - content)
    return decreasing_word(content, x, n)


@dataclass(frozen=True)
class CyclicFactor:
    n: int
    content: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "content", frozenset(self.content))
        for c in self.content:
            if not 0 <= c < self.n:
                raise BadResidue(f"residue {c} not in [0, {self.n})")
        if len(self.content) >= self.n:
            raise ValueError("a cyclically decreasing factor cannot contain every residue")

    def __len__(self):
        return len(self.content)

    def word(self, x: int | None = None) -> tuple[int, ...]:
        if x is None:
            return _factor_word(self.content, self.n)
        return decreasing_word(self.content, x, self.n)

    def element(self) -> AffinePermutation:
        return from_reduced_word(self.word(), self.n)

    def to_text(self, x: int | None = None) -> str:
        return _format_letters(self.word(x), self.n)


def _format_letters(letters: Sequence[int], n: int) -> str:
    sep = "" if n <= 10 else ","
    return "(" + sep.join(str(c) for c in letters) + ")"


@dataclass(frozen=True)
class AffineFactorization:
    n: int
    factors: tuple[CyclicFactor, ...]

    @classmethod
    def from_contents(cls, n: int, contents: Iterable[Iterable[int]]) -> "AffineFactorization":
        """Build from contents listed leftmost factor first."""
        return cls(n, tuple(CyclicFactor(n, frozenset(c)) for c in contents))

    @property
    def contents(self) -> tuple[frozenset[int], ...]:
        return tuple(f.content for f in self.factors)

    @property
    def num_factors(self) -> int:
        return len(self.factors)

    @property
    def weight(self) -> Composition:
        return tuple(len(f) for f in reversed(self.factors))

    def factor(self, r: int) -> CyclicFactor:
        """The factor w^r, counting from the right starting at 1."""
        return self.factors[-r]

    def with_factor_pair(self, r: int, upper: frozenset[int], lower: frozenset[int]) -> "AffineFactorization":
        """Replace w^{r+1} by ``upper`` and w^r by ``lower``."""
        facs = list(self.factors)
        m = len(facs)
        facs[m - r - 1] = CyclicFactor(self.n, upper)
        facs[m - r] = CyclicFactor(self.n, lower)
        return AffineFactorization(self.n, tuple(facs))

    def product(self) -> AffinePermutation:
        word = [c for f in self.factors for c in f.word()]
        return from_reduced_word(word, self.n)

    def total_length(self) -> int:
        return sum(len(f) for f in self.factors)

    def sort_key(self):
        return tuple(tuple(sorted(c)) for c in reversed(self.contents))

    def to_text(self, x: int | None = None) -> str:
        if x is None:
            missing = set(range(self.n)) - set().union(*self.contents)
            x = min(missing) if missing else None
        return "".join(f.to_text(x) for f in self.factors)

    def __str__(self):
        return self.to_text()

    def star(self, x: int) -> "AffineFactorization":
        """Order-reversing duality: reverse the factors and send c to 2x - c."""
        n = self.n
        return AffineFactorization.from_contents(
            n, [{(2 * x - c) % n for c in f.content} for f in reversed(self.factors)]
        )


@functools.lru_cache(maxsize=None)
def _subsets_by_size(n: int, size: int) -> tuple[tuple[frozenset[int], tuple[int, ...]], ...]:
    if size >= n:
        return ()
    out = []
    for combo in itertools.combinations(range(n), size):
        content = frozenset(combo)
        # reversed word, so peeling multiplies w on the right by v^{-1}
        out.append((content, tuple(reversed(_factor_word(content, n)))))
    return tuple(out)


def _peel(window: tuple[int, ...], inverse_word: tuple[int, ...]) -> tuple[int, ...] | None:
    """w * v^{-1} if every step shortens w, else None."""
    for c in inverse_word:
        if not _has_right_descent(window, c):
            return None
        window = _right_mult(window, c)
    return window


def _is_identity(window: tuple[int, ...]) -> bool:
    return all(v == i for i, v in enumerate(window, start=1))


def _enumerate(window: tuple[int, ...], alpha: tuple[int, ...]) -> Iterator[tuple[frozenset[int], ...]]:
    # yields contents rightmost first
    if not alpha:
        if _is_identity(window):
            yield ()
        return
    n = len(window)
    for content, inv_word in _subsets_by_size(n, alpha[0]):
        rest = _peel(window, inv_word)
        if rest is None:
            continue
        if _count(rest, alpha[1:]) == 0:
            continue
        for tail in _enumerate(rest, alpha[1:]):
            yield (content,) + tail


@functools.lru_cache(maxsize=None)
def _count(window: tuple[int, ...], alpha: tuple[int, ...]) -> int:
    if not alpha:
        return 1 if _is_identity(window) else 0
    if sum(alpha) != _length(window):
        return 0
    total = 0
    for _, inv_word in _subsets_by_size(len(window), alpha[0]):
        rest = _peel(window, inv_word)
        if rest is not None:
            total += _count(rest, alpha[1:])
    return total


def enumerate_factorizations(w: AffinePermutation, alpha: Sequence[int]) -> list[AffineFactorization]:
    """All affine factorizations of w of weight alpha, in canonical order.

    >>> w = from_reduced_word((3, 4, 1, 2), 5)
    >>> [str(f) for f in enumerate_factorizations(w, (2, 2, 0))]
    ['()(31)(42)']
    """
    alpha = tuple(int(a) for a in alpha)
    if any(a < 0 for a in alpha):
        raise ValueError(f"negative entry in weight {alpha}")
    if sum(alpha) != w.length():
        return []
    found = [
        AffineFactorization.from_contents(w.n, reversed(contents))
        for contents in _enumerate(w.window, alpha)
    ]
    found.sort(key=AffineFactorization.sort_key)
    return found


def count_factorizations(w: AffinePermutation, alpha: Sequence[int]) -> int:
    """The number of affine factorizations of w of weight alpha.

    >>> count_factorizations(from_reduced_word((0, 1, 0), 3), (1, 1, 1))
    2
    """
    alpha = tuple(int(a) for a in alpha)
    if sum(alpha) != w.length():
        return 0
    return _count(w.window, alpha)


def all_factorizations(w: AffinePermutation, num_factors: int) -> list[AffineFactorization]:
    """Every factorization of w into ``num_factors`` factors, over all weights."""
    out = []
    for alpha in compositions_of(w.length(), num_factors, w.n - 1):
        out.extend(enumerate_factorizations(w, alpha))
    out.sort(key=AffineFactorization.sort_key)
    return out


def trivial_factorization(n: int, num_factors: int) -> AffineFactorization:
    return AffineFactorization.from_contents(n, [()] * num_factors)


def parse_factorization(text: str, n: int) -> AffineFactorization:
    """Inverse of ``to_text``: ``"(26)(310)(432)"`` with rank n."""
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ValueError(f"malformed factorization {text!r}")
    contents = []
    for chunk in body[1:-1].split(")("):
        if "," in chunk or n > 10:
            letters = [int(t) for t in chunk.split(",") if t.strip()]
        else:
            letters = [int(ch) for ch in chunk]
        contents.append(letters)
    return AffineFactorization.from_contents(n, contents)


__all__ = [
    "AffineFactorization",
    "CyclicFactor",
    "all_factorizations",
    "count_factorizations",
    "decreasing_word",
    "enumerate_factorizations",
    "identity",
    "is_cyclically_decreasing",
    "order_position",
    "parse_factorization",
    "trivial_factorization",
]
