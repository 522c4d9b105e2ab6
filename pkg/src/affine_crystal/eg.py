"""
Edelman-Greene insertion for affine factorizations, and the tableau crystal.

Tableaux are stored in French convention: ``rows[0]`` is the bottom row.
For an element missing the residue x, residues are compared in the order
x+1 < x+2 < ... < x-1, so internally each residue c is replaced by the
integer ``order_position(c, x, n) + 1``; for w in S_n and x = 0 this is c
itself.

>>> fact = AffineFactorization.from_contents(4, [{1}, {2}, {3, 2}])
>>> P, Q = eg_map(fact)
>>> P.rows, Q.rows
(((1, 3), (2,), (3,)), ((1, 1), (2,), (3,)))
>>> column_word_of_transpose(P)
(3, 1, 2, 3)
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NotInSxHat
from .factorization import AffineFactorization, order_position


@dataclass(frozen=True)
class Tableau:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows if r))

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    def cells(self) -> dict[tuple[int, int], int]:
        """Map (row, column), both 1-indexed from the bottom left, to entries."""
        return {(i, j): v for i, row in enumerate(self.rows, 1) for j, v in enumerate(row, 1)}

    def is_increasing(self) -> bool:
        rows_ok = all(a < b for r in self.rows for a, b in zip(r, r[1:]))
        cols_ok = all(
            lower[j] < upper[j] for lower, upper in zip(self.rows, self.rows[1:]) for j in range(len(upper))
        )
        return rows_ok and cols_ok and _is_partition_shape(self.shape)

    def is_semistandard(self) -> bool:
        rows_ok = all(a <= b for r in self.rows for a, b in zip(r, r[1:]))
        cols_ok = all(
            lower[j] < upper[j] for lower, upper in zip(self.rows, self.rows[1:]) for j in range(len(upper))
        )
        return rows_ok and cols_ok and _is_partition_shape(self.shape)

    def to_text(self) -> str:
        return "/".join(" ".join(str(v) for v in r) for r in self.rows)

    @classmethod
    def from_text(cls, text: str) -> "Tableau":
        if not text.strip():
            return cls(())
        return cls(tuple(tuple(int(t) for t in part.split()) for part in text.split("/")))

    def __str__(self):
        return self.to_text()


def _is_partition_shape(shape: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(shape, shape[1:]))


def eg_insert(rows: Sequence[Sequence[int]], a: int) -> tuple[tuple[tuple[int, ...], ...], tuple[int, int]]:
    """EG-insert the integer a into the bottom row; returns new rows and the added cell.

    >>> eg_insert(((2, 3),), 2)
    (((2, 3), (3,)), (2, 1))
    """
    out = [list(r) for r in rows]
    r = 0
    while True:
        if r == len(out):
            out.append([a])
            return tuple(tuple(x) for x in out), (r + 1, 1)
        row = out[r]
        bigger = [b for b in row if b > a]
        if not bigger:
            row.append(a)
            return tuple(tuple(x) for x in out), (r + 1, len(row))
        b = min(bigger)
        if not (b == a + 1 and a in row):
            row[row.index(b)] = a
        a = b
        r += 1


def eg_reverse_bump(rows: Sequence[Sequence[int]], row_index: int) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Undo an insertion whose last cell ended row ``row_index`` (1-indexed)."""
    out = [list(r) for r in rows]
    y = out[row_index - 1].pop()
    for r in range(row_index - 2, -1, -1):
        row = out[r]
        if y in row:
            y = y - 1
        else:
            c = max(v for v in row if v < y)
            row[row.index(c)] = y
            y = c
    return tuple(tuple(x) for x in out if x), y


def _resolve_x(fact: AffineFactorization, x: int | None) -> int:
    used = set().union(*fact.contents) if fact.factors else set()
    if x is None:
        missing = set(range(fact.n)) - used
        if not missing:
            raise NotInSxHat("the product contains every residue")
        return min(missing)
    if x in used:
        raise NotInSxHat(f"residue {x} occurs in the factorization")
    return x


def eg_map(fact: AffineFactorization, x: int | None = None) -> tuple[Tableau, Tableau]:
    """The pair (P, Q); P holds residues, Q is semistandard of the same weight."""
    n = fact.n
    x = _resolve_x(fact, x)
    rows: tuple[tuple[int, ...], ...] = ()
    qcells: dict[tuple[int, int], int] = {}
    for i in range(1, fact.num_factors + 1):
        letters = sorted(order_position(c, x, n) + 1 for c in fact.factor(i).content)
        for a in letters:
            rows, cell = eg_insert(rows, a)
            qcells[cell] = i
    P = Tableau(tuple(tuple((v + x) % n for v in r) for r in rows))
    return P, _tableau_from_cells(qcells)


def _tableau_from_cells(cells: dict[tuple[int, int], int]) -> Tableau:
    if not cells:
        return Tableau(())
    nrows = max(i for i, _ in cells)
    return Tableau(tuple(
        tuple(cells[(i, j)] for j in range(1, 1 + sum(1 for (a, _) in cells if a == i)))
        for i in range(1, nrows + 1)
    ))


def eg_inverse(P: Tableau, Q: Tableau, n: int, x: int, num_factors: int | None = None) -> AffineFactorization:
    """Recover the factorization from (P, Q) by reverse bumping."""
    if P.shape != Q.shape:
        raise ValueError("P and Q have different shapes")
    if num_factors is None:
        num_factors = max((v for r in Q.rows for v in r), default=0)
    rows = tuple(tuple(order_position(c, x, n) + 1 for c in r) for r in P.rows)
    qrows = [list(r) for r in Q.rows]
    contents: dict[int, set[int]] = {i: set() for i in range(1, num_factors + 1)}
    for i in range(num_factors, 0, -1):
        while True:
            # rightmost cell holding i; entries equal to i form a horizontal strip
            spots = [(j, r) for r, row in enumerate(qrows) for j, v in enumerate(row) if v == i]
            if not spots:
                break
            _, r = max(spots)
            qrows[r].pop()
            rows, letter = eg_reverse_bump(rows, r + 1)
            contents[i].add((letter + x) % n)
        qrows = [r for r in qrows if r]
    return AffineFactorization.from_contents(n, [contents[i] for i in range(num_factors, 0, -1)])


def column_word_of_transpose(P: Tableau) -> tuple[int, ...]:
    """Read each row of P right to left, bottom row first."""
    return tuple(v for row in P.rows for v in reversed(row))


# --- the tableau crystal ----------------------------------------------------

class SkewTableau:
    """A filling of a skew shape, stored as a map from (row, column) cells.

    Rows and columns are 1-indexed with row 1 at the bottom.
    """

    def __init__(self, cells: dict[tuple[int, int], int]):
        self.cells = dict(cells)

    def __eq__(self, other):
        return isinstance(other, SkewTableau) and self.cells == other.cells

    def __hash__(self):
        return hash(frozenset(self.cells.items()))

    def __repr__(self):
        return f"SkewTableau({self.cells})"

    @classmethod
    def from_tableau(cls, t: Tableau) -> "SkewTableau":
        return cls(t.cells())

    def to_tableau(self) -> Tableau:
        return _tableau_from_cells(self.cells)

    def weight(self, num_letters: int) -> tuple[int, ...]:
        vals = list(self.cells.values())
        return tuple(vals.count(i) for i in range(1, num_letters + 1))

    def scan(self) -> list[tuple[int, int]]:
        """Columns right to left, each column bottom to top."""
        return sorted(self.cells, key=lambda c: (-c[1], c[0]))

    def _unpaired(self, i: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
        open_i: list[tuple[int, int]] = []
        lone_upper = []
        for cell in self.scan():
            v = self.cells[cell]
            if v == i:
                open_i.append(cell)
            elif v == i + 1:
                if open_i:
                    open_i.pop()
                else:
                    lone_upper.append(cell)
        return open_i, lone_upper

    def f(self, i: int) -> "SkewTableau | None":
        open_i, _ = self._unpaired(i)
        if not open_i:
            return None
        cells = dict(self.cells)
        cells[open_i[0]] = i + 1  # rightmost unpaired i
        return SkewTableau(cells)

    def e(self, i: int) -> "SkewTableau | None":
        _, lone_upper = self._unpaired(i)
        if not lone_upper:
            return None
        cells = dict(self.cells)
        cells[lone_upper[-1]] = i  # leftmost unpaired i+1
        return SkewTableau(cells)

    def epsilon(self, i: int) -> int:
        return len(self._unpaired(i)[1])

    def phi(self, i: int) -> int:
        return len(self._unpaired(i)[0])


def skew_cells(outer: Sequence[int], inner: Sequence[int]) -> list[tuple[int, int]]:
    inner = list(inner) + [0] * (len(outer) - len(inner))
    return [(i, j) for i, (o, p) in enumerate(zip(outer, inner), 1) for j in range(p + 1, o + 1)]


def semistandard_skew_tableaux(outer: Sequence[int], inner: Sequence[int], num_letters: int) -> list[SkewTableau]:
    """All semistandard fillings of outer/inner with letters 1..num_letters."""
    cells = sorted(skew_cells(outer, inner), key=lambda c: (c[0], c[1]))
    out = []

    def rec(k, filling):
        if k == len(cells):
            out.append(SkewTableau(filling))
            return
        i, j = cells[k]
        low = 1
        if (i, j - 1) in filling:
            low = max(low, filling[(i, j - 1)])
        if (i - 1, j) in filling:
            low = max(low, filling[(i - 1, j)] + 1)
        for v in range(low, num_letters + 1):
            filling[(i, j)] = v
            rec(k + 1, filling)
            del filling[(i, j)]

    rec(0, {})
    return out


def semistandard_tableaux(shape: Sequence[int], num_letters: int) -> list[Tableau]:
    return [t.to_tableau() for t in semistandard_skew_tableaux(shape, (), num_letters)]


def skew_to_factorization(t: SkewTableau, outer: Sequence[int], n: int, num_letters: int) -> AffineFactorization:
    """Label cell (i, j) by j - i + len(outer); letter r collects the factor w^r."""
    height = len(outer)
    contents = {r: set() for r in range(1, num_letters + 1)}
    for (i, j), v in t.cells.items():
        contents[v].add(j - i + height)
    return AffineFactorization.from_contents(n, [contents[r] for r in range(num_letters, 0, -1)])


def yamanouchi_tableau(shape: Sequence[int]) -> Tableau:
    """Row i filled with the letter i."""
    return Tableau(tuple((i,) * p for i, p in enumerate(shape, 1)))
