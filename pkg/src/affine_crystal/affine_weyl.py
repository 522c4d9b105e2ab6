"""
Extended affine symmetric group in window notation.

An affine permutation of rank n is a bijection w of the integers with
w(i + n) = w(i) + n.  It is stored by its window [w(1), ..., w(n)].  The
shift r = sum(w(i) - i) / n is zero exactly on the affine symmetric group
proper; other values give the cosets of the extended group, which are kept
as raw windows as well.

Simple reflections act on the right by swapping window positions and on the
left by swapping values:

>>> w = from_reduced_word((3, 0, 2, 3), 4)
>>> w
AffinePermutation(window=(-1, 4, 5, 2))
>>> w.length()
4
>>> w.reduced_word()
(3, 0, 2, 3)

Partitions are plain tuples of positive integers in weakly decreasing order;
compositions are tuples of nonnegative integers.
"""
from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    BadResidue,
    IndexOutOfRange,
    NotBijection,
    NotFinitePermutation,
    NotGrassmannian,
    NotGrassmannianPermutation,
    PartNotLessThanN,
    RankMismatch,
    ShapeTooBig,
)

Partition = tuple[int, ...]
Composition = tuple[int, ...]


# --- partitions -------------------------------------------------------------

def partition(parts: Iterable[int]) -> Partition:
    """Normalise to a partition: sort decreasing, drop zeros.

    >>> partition([1, 3, 0, 2])
    (3, 2, 1)
    """
    parts = [int(p) for p in parts]
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {parts}")
    return tuple(sorted((p for p in parts if p), reverse=True))


def is_partition(parts: Sequence[int]) -> bool:
    return all(p > 0 for p in parts) and all(a >= b for a, b in zip(parts, parts[1:]))


def conjugate(la: Sequence[int]) -> Partition:
    """
    >>> conjugate((4, 3, 1))
    (3, 2, 2, 1)
    >>> conjugate(())
    ()
    """
    la = tuple(p for p in la if p)
    if not la:
        return ()
    return tuple(sum(1 for p in la if p > j) for j in range(la[0]))


def contains(outer: Sequence[int], inner: Sequence[int]) -> bool:
    """Cellwise containment of Young diagrams."""
    if len(inner) > len(outer):
        return False
    return all(a >= b for a, b in zip(outer, inner))


def fits_in_rectangle(la: Sequence[int], rows: int, cols: int) -> bool:
    return len(la) <= rows and (not la or la[0] <= cols)


def partitions_of(size: int, max_part: int | None = None, max_len: int | None = None):
    """Yield partitions of ``size`` in reverse lexicographic order."""
    if max_part is None:
        max_part = size
    if max_len is None:
        max_len = size

    def rec(remaining, bound, length):
        if remaining == 0:
            yield ()
            return
        if length == 0:
            return
        for first in range(min(remaining, bound), 0, -1):
            for rest in rec(remaining - first, first, length - 1):
                yield (first,) + rest

    yield from rec(size, max_part, max_len)


def compositions_of(size: int, length: int, max_part: int | None = None):
    """Yield all weak compositions of ``size`` with exactly ``length`` parts."""
    if max_part is None:
        max_part = size
    if length == 0:
        if size == 0:
            yield ()
        return
    for first in range(min(size, max_part), -1, -1):
        for rest in compositions_of(size - first, length - 1, max_part):
            yield (first,) + rest


def staircase_of_rectangles(k: int) -> Partition:
    """The shape (k, k-1, k-1, ..., 1^k): all k-rectangles glued together.

    >>> staircase_of_rectangles(3)
    (3, 2, 2, 1, 1, 1)
    """
    parts = []
    for j in range(k, 0, -1):
        parts.extend([j] * (k + 1 - j))
    return tuple(parts)


def parse_partition(text: str) -> Partition:
    text = text.strip().strip("()[]")
    if not text:
        return ()
    parts = tuple(int(t) for t in re.split(r"[,\s]+", text) if t)
    if not all(p >= 0 for p in parts) or not all(a >= b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"not a weakly decreasing list of parts: {text!r}")
    return tuple(p for p in parts if p)


def partition_key(la: Sequence[int]) -> str:
    """Comma-joined parts, used as JSON keys."""
    return ",".join(str(p) for p in la)


class SkewShape(NamedTuple):
    outer: Partition
    inner: Partition

    def size(self) -> int:
        return sum(self.outer) - sum(self.inner)


# --- affine permutations ----------------------------------------------------

@dataclass(frozen=True, order=True)
class AffinePermutation:
    window: tuple[int, ...]

    def __post_init__(self):
        window = tuple(int(v) for v in self.window)
        object.__setattr__(self, "window", window)
        n = len(window)
        if n == 0:
            raise NotBijection("empty window")
        if len({v % n for v in window}) != n:
            raise NotBijection(f"window entries {list(window)} repeat a residue mod {n}")

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, i: int) -> int:
        q, r = divmod(i - 1, self.n)
        return self.window[r] + q * self.n

    def __repr__(self):
        return f"AffinePermutation(window={self.window})"

    def __str__(self):
        return "[" + ",".join(str(v) for v in self.window) + "]"

    @property
    def shift(self) -> int:
        n = self.n
        total = sum(self.window) - n * (n + 1) // 2
        assert total % n == 0
        return total // n

    def __mul__(self, other: AffinePermutation) -> AffinePermutation:
        return multiply(self, other)

    def inverse(self) -> AffinePermutation:
        return inverse(self)

    def is_identity(self) -> bool:
        return self.window == tuple(range(1, self.n + 1))

    # cached on the window tuple; instances are immutable
    def linv(self) -> Composition:
        return _linv(self.window)

    def length(self) -> int:
        return _length(self.window)

    def reduced_word(self) -> tuple[int, ...]:
        return _reduced_word(self.window)

    def content(self) -> frozenset[int]:
        return frozenset(self.reduced_word())

    def missing_residues(self) -> frozenset[int]:
        return frozenset(range(self.n)) - self.content()

    def right_mult(self, i: int) -> AffinePermutation:
        """w * s_i."""
        return AffinePermutation(_right_mult(self.window, i))

    def left_mult(self, i: int) -> AffinePermutation:
        """s_i * w."""
        return AffinePermutation(_left_mult(self.window, i))

    def has_right_descent(self, i: int) -> bool:
        return _has_right_descent(self.window, i)

    def has_left_descent(self, i: int) -> bool:
        return _has_right_descent(_inverse(self.window), i)

    def is_affine_grassmannian(self) -> bool:
        return is_affine_grassmannian(self)


def from_window(window: Sequence[int]) -> AffinePermutation:
    """Validated element from its window.

    >>> from_window([-2, 0, 1, 4, 12]).shift
    0
    """
    if len(window) == 0:
        raise NotBijection("empty window")
    return AffinePermutation(tuple(window))


def identity(n: int) -> AffinePermutation:
    return AffinePermutation(tuple(range(1, n + 1)))


def simple_reflection(i: int, n: int) -> AffinePermutation:
    return from_reduced_word((i,), n)


def parse_window(text: str) -> AffinePermutation:
    """Parse ``"[-2,0,1,4,12]"`` (brackets optional)."""
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    entries = [t for t in re.split(r"[,\s]+", body) if t]
    if not entries:
        raise ValueError(f"empty window: {text!r}")
    return from_window([int(t) for t in entries])


def parse_word(text: str) -> tuple[int, ...]:
    body = text.strip().strip("()[]")
    return tuple(int(t) for t in re.split(r"[,\s]+", body) if t)


def _right_mult(window: tuple[int, ...], i: int) -> tuple[int, ...]:
    n = len(window)
    w = list(window)
    if i == 0:
        w[0], w[n - 1] = window[n - 1] - n, window[0] + n
    else:
        w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def _left_mult(window: tuple[int, ...], i: int) -> tuple[int, ...]:
    n = len(window)
    out = []
    for v in window:
        r = v % n
        if r == i:
            out.append(v + 1)
        elif r == (i + 1) % n:
            out.append(v - 1)
        else:
            out.append(v)
    return tuple(out)


def _has_right_descent(window: tuple[int, ...], i: int) -> bool:
    n = len(window)
    if i == 0:
        return window[n - 1] - n > window[0]
    return window[i - 1] > window[i]


def _check_residue(i: int, n: int):
    if not 0 <= i < n:
        raise BadResidue(f"residue {i} not in [0, {n})")


def from_reduced_word(word: Sequence[int], n: int) -> AffinePermutation:
    """The product s_{i1} ... s_{im}; the word need not be reduced.

    >>> from_reduced_word((3, 0, 2, 3), 4).window
    (-1, 4, 5, 2)
    >>> from_reduced_word((0, 0), 3).is_identity()
    True
    """
    window = tuple(range(1, n + 1))
    for i in word:
        _check_residue(i, n)
        window = _right_mult(window, i)
    return AffinePermutation(window)


def _check_rank(a: AffinePermutation, b: AffinePermutation):
    if a.n != b.n:
        raise RankMismatch(f"ranks {a.n} and {b.n} differ")


def multiply(a: AffinePermutation, b: AffinePermutation) -> AffinePermutation:
    """(a * b)(i) = a(b(i))."""
    _check_rank(a, b)
    return AffinePermutation(tuple(a(v) for v in b.window))


@functools.lru_cache(maxsize=None)
def _inverse(window: tuple[int, ...]) -> tuple[int, ...]:
    n = len(window)
    out = [0] * n
    for i, v in enumerate(window, start=1):
        q, r = divmod(v - 1, n)
        out[r] = i - q * n
    return tuple(out)


def inverse(a: AffinePermutation) -> AffinePermutation:
    return AffinePermutation(_inverse(a.window))


@functools.lru_cache(maxsize=None)
def _linv(window: tuple[int, ...]) -> Composition:
    # alpha_i = #{ j < i : w(j) > w(i) }.  For j = p + q*n the admissible q
    # form the open interval ((w(i) - w(p)) / n, (i - p) / n).
    n = len(window)
    out = []
    for i in range(1, n + 1):
        wi = window[i - 1]
        total = 0
        for p in range(1, n + 1):
            if p == i:
                continue
            hi = -((p - i) // n) - 1          # largest q with q*n < i - p
            lo = (wi - window[p - 1]) // n + 1  # smallest q with q*n > w(i) - w(p)
            if hi >= lo:
                total += hi - lo + 1
        out.append(total)
    return tuple(out)


def left_inversion_vector(w: AffinePermutation) -> Composition:
    """
    >>> left_inversion_vector(from_window([-2, 0, 1, 4, 12]))
    (3, 2, 2, 1, 0)
    """
    return w.linv()


@functools.lru_cache(maxsize=None)
def _length(window: tuple[int, ...]) -> int:
    return sum(_linv(window))


def length(w: AffinePermutation) -> int:
    return w.length()


@functools.lru_cache(maxsize=None)
def _reduced_word(window: tuple[int, ...]) -> tuple[int, ...]:
    # strip the smallest left descent until the identity is reached
    n = len(window)
    word = []
    current = window
    while True:
        inv = _inverse(current)
        for i in range(n):
            if _has_right_descent(inv, i):
                word.append(i)
                current = _left_mult(current, i)
                break
        else:
            break
    return tuple(word)


def reduced_word(w: AffinePermutation) -> tuple[int, ...]:
    return w.reduced_word()


def content(w: AffinePermutation) -> frozenset[int]:
    return w.content()


def missing_residues(w: AffinePermutation) -> frozenset[int]:
    return w.missing_residues()


# --- affine Grassmannian elements and the LC bijection ----------------------

def is_affine_grassmannian(w: AffinePermutation) -> bool:
    win = w.window
    return all(a < b for a, b in zip(win, win[1:]))


def lc(w: AffinePermutation) -> Partition:
    """Conjugate of the left inversion vector of an increasing window.

    >>> lc(from_window([-2, 0, 1, 4, 12]))
    (4, 3, 1)
    """
    if not is_affine_grassmannian(w):
        raise NotGrassmannian(f"{w} does not have an increasing window")
    return conjugate(partition(w.linv()))


@functools.lru_cache(maxsize=None)
def elements_of_length(n: int, size: int) -> tuple[AffinePermutation, ...]:
    """Every element of the affine symmetric group of the given length, sorted.

    >>> [len(elements_of_length(3, k)) for k in range(4)]
    [1, 3, 6, 9]
    """
    if size == 0:
        return (identity(n),)
    found = set()
    for w in elements_of_length(n, size - 1):
        for i in range(n):
            if not _has_right_descent(w.window, i):
                found.add(_right_mult(w.window, i))
    return tuple(AffinePermutation(v) for v in sorted(found))


@functools.lru_cache(maxsize=None)
def grassmannian_level(n: int, size: int) -> dict[Partition, AffinePermutation]:
    """All shift-0 affine Grassmannian elements of a given length, keyed by lc."""
    if size == 0:
        return {(): identity(n)}
    found = {}
    for w in grassmannian_level(n, size - 1).values():
        inv = _inverse(w.window)
        for i in range(n):
            # s_i w is longer iff w^{-1}(i) < w^{-1}(i+1)
            if _has_right_descent(inv, i):
                continue
            v = w.left_mult(i)
            if is_affine_grassmannian(v):
                found[lc(v)] = v
    return dict(sorted(found.items(), reverse=True))


def w_lambda(la: Sequence[int], n: int) -> AffinePermutation:
    """The shift-0 affine Grassmannian element with lc equal to ``la``.

    >>> w_lambda((4, 3, 1), 5).window
    (-2, 0, 1, 4, 12)
    """
    la = partition(la)
    if la and la[0] >= n:
        raise PartNotLessThanN(f"partition {la} has a part >= {n}")
    return grassmannian_level(n, sum(la))[la]


def apply_R(i: int, exponent: int, w: AffinePermutation) -> AffinePermutation:
    """Apply the k-rectangle translation R_i ``exponent`` times (may be negative).

    >>> apply_R(4, 1, from_window([4, 2, 5, 7, 1, 3, 6])).window
    (1, -1, 2, 4, 5, 7, 10)
    """
    n = w.n
    if not 1 <= i < n:
        raise IndexOutOfRange(f"R_{i} needs 1 <= i < {n}")
    low, high = -(n - i) * exponent, i * exponent
    return AffinePermutation(
        tuple(v + (low if pos < i else high) for pos, v in enumerate(w.window))
    )


def apply_R_product(rects: Iterable[tuple[int, int]], w: AffinePermutation) -> AffinePermutation:
    for i, e in rects:
        w = apply_R(i, e, w)
    return w


def is_finite_permutation(u: AffinePermutation) -> bool:
    return sorted(u.window) == list(range(1, u.n + 1))


def _check_finite(u: AffinePermutation):
    if not is_finite_permutation(u):
        raise NotFinitePermutation(f"{u} is not a permutation of 1..{u.n}")


def af(u: AffinePermutation) -> AffinePermutation:
    """[u(1), u(2) + n, ..., u(n) + (n-1)n].

    >>> af(identity(4)).window
    (1, 6, 11, 16)
    """
    _check_finite(u)
    n = u.n
    return AffinePermutation(tuple(v + pos * n for pos, v in enumerate(u.window)))


def af_exponents(d: Sequence[int], n: int) -> list[tuple[int, int]]:
    """Exponents of R_i in af_d, with d_0 = d_n = 0 at the boundary."""
    if len(d) != n - 1:
        raise IndexOutOfRange(f"degree vector needs {n - 1} entries, got {len(d)}")
    dd = [0] + list(d) + [0]
    return [(i, dd[i - 1] + dd[i + 1] - 2 * dd[i] + 1) for i in range(1, n)]


def af_d(v: AffinePermutation, d: Sequence[int]) -> AffinePermutation:
    return apply_R_product(af_exponents(d, v.n), af(v))


def grassmannian_factor(w: AffinePermutation) -> tuple[AffinePermutation, AffinePermutation]:
    """Split w = v * u with u finite sorting the window and v increasing."""
    ordered = sorted(w.window)
    rank = {val: pos for pos, val in enumerate(ordered, start=1)}
    u = AffinePermutation(tuple(rank[val] for val in w.window))
    return AffinePermutation(tuple(ordered)), u


def kappa(w: AffinePermutation) -> SkewShape:
    """
    >>> kappa(from_reduced_word((3, 0, 2, 3), 4))
    SkewShape(outer=(3, 2, 2, 1, 1, 1, 1, 1), inner=(3, 1, 1, 1, 1, 1))
    """
    vt, u = grassmannian_factor(w)
    n = w.n
    nu = lc(multiply(vt, af(identity(n))))
    la = lc(af(inverse(u)))
    return SkewShape(nu, la)


# --- Grassmannian permutations of S_n ---------------------------------------

def descents(u: AffinePermutation) -> list[int]:
    win = u.window
    return [i for i in range(1, u.n) if win[i - 1] > win[i]]


def grassmannian_shape(u: AffinePermutation, r: int) -> Partition:
    """
    >>> grassmannian_shape(from_window([1, 2, 4, 7, 3, 5, 6]), 4)
    (3, 1)
    """
    _check_finite(u)
    if descents(u) not in ([r], []):
        raise NotGrassmannianPermutation(f"{u} does not have its only descent at {r}")
    win = u.window
    tail = win[r:]
    return partition(sum(1 for t in tail if win[r - i] > t) for i in range(1, r + 1))


def rect_complement(la: Sequence[int], rows: int, cols: int) -> Partition:
    """
    >>> rect_complement((3, 1), 4, 3)
    (3, 3, 2)
    """
    la = partition(la)
    if not fits_in_rectangle(la, rows, cols):
        raise ShapeTooBig(f"{la} does not fit in {rows}x{cols}")
    padded = list(la) + [0] * (rows - len(la))
    return partition(cols - p for p in reversed(padded))


def affine_length_oracle(w: AffinePermutation) -> int:
    """Length from the pairwise inversion count, independent of linv."""
    n = w.n
    win = w.window
    return sum(abs(math.floor((win[j] - win[i]) / n)) for i in range(n) for j in range(i + 1, n))
