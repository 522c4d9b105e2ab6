"""
Coefficient engines: Schur expansions of affine Stanley functions, inverse
Kostka numbers, k-Pieri products, affine Littlewood-Richardson coefficients,
flag Gromov-Witten invariants, fusion coefficients and positroid classes.

Each engine has a crystal route (count highest weight factorizations) and an
independent route: the alternating sum over the inverse Kostka matrix, or the
iterated k-Pieri rule.  All arithmetic is exact.

>>> from .affine_weyl import from_reduced_word
>>> w = from_reduced_word((3, 4, 1, 2), 5)
>>> stanley_schur_expansion(w).terms
{(2, 2): 1, (2, 1, 1): 1}
>>> stanley_schur_expansion(w, method="alternating").terms
{(2, 2): 1, (2, 1, 1): 1}
"""
from __future__ import annotations

import functools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .affine_weyl import (
    AffinePermutation,
    Partition,
    _has_right_descent,
    _inverse,
    _left_mult,
    af_exponents,
    af,
    apply_R_product,
    conjugate,
    descents,
    grassmannian_level,
    grassmannian_shape,
    is_affine_grassmannian,
    lc,
    multiply,
    inverse,
    partition,
    partition_key,
    partitions_of,
    rect_complement,
    w_lambda,
)
from .crystal import highest_weight_count
from .errors import (
    DegreeMismatch,
    HypothesisNotMet,
    IndexOutOfRange,
    MTooSmall,
    NoMissingResidue,
    NotBounded,
    NotDivisible,
    NotGrassmannian,
    NotGrassmannianPermutation,
    ShapeOutOfRange,
)
from .factorization import _factor_word, _subsets_by_size, count_factorizations


@dataclass
class SchurExpansion:
    """Coefficients of a symmetric function (or a single structure constant) in a basis."""

    terms: dict
    basis: str = "schur"
    method: str = "crystal"
    hypotheses_met: bool = True

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "coefficients": {partition_key(k): v for k, v in self.terms.items()},
            "method": self.method,
            "hypotheses_met": self.hypotheses_met,
        }


def _clean(terms: dict) -> dict:
    return dict(sorted(((k, v) for k, v in terms.items() if v), reverse=True))


# --- inverse Kostka numbers -------------------------------------------------

def _sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@functools.lru_cache(maxsize=None)
def jacobi_trudi_terms(mu: Partition, m: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...], int], ...]:
    """All (sigma, beta, sign) with beta = sigma(mu + rho) - rho nonnegative.

    sigma is a tuple with sigma[i] the image of i (0-indexed), so
    beta[sigma[i]] = mu_i - i + sigma[i].
    """
    mu = tuple(mu) + (0,) * (m - len(mu))
    out = []

    def rec(i, used, sigma):
        if i == m:
            beta = [0] * m
            for a, b in enumerate(sigma):
                beta[b] = mu[a] - a + b
            out.append((tuple(sigma), tuple(beta), _sign(sigma)))
            return
        for j in range(m):
            if j not in used and mu[i] - i + j >= 0:
                used.add(j)
                sigma.append(j)
                rec(i + 1, used, sigma)
                sigma.pop()
                used.discard(j)

    rec(0, set(), [])
    return tuple(out)


def inverse_kostka(alpha: Sequence[int], mu: Sequence[int], m: int | None = None) -> int:
    """
    >>> inverse_kostka((2,), (1, 1))
    -1
    >>> inverse_kostka((2, 1), (2, 1))
    1
    """
    alpha_p, mu_p = partition(alpha), partition(mu)
    if m is None:
        m = max(len(alpha_p), len(mu_p), 1)
    if m < len(alpha_p) or m < len(mu_p):
        raise MTooSmall(f"m={m} is shorter than {alpha_p} or {mu_p}")
    return sum(sign for _, beta, sign in jacobi_trudi_terms(mu_p, m) if partition(beta) == alpha_p)


def schur_to_h(mu: Sequence[int]) -> dict[Partition, int]:
    """s_mu = sum over alpha of inverse_kostka(alpha, mu) h_alpha."""
    mu = partition(mu)
    terms: dict[Partition, int] = defaultdict(int)
    for _, beta, sign in jacobi_trudi_terms(mu, max(len(mu), 1)):
        terms[partition(beta)] += sign
    return _clean(terms)


# --- affine Stanley functions -----------------------------------------------

def stanley_monomial_expansion(w: AffinePermutation, parts: int | None = None) -> SchurExpansion:
    """Coefficient of m_mu is the number of factorizations of weight mu."""
    size = w.length()
    if parts is None:
        parts = size
    terms = {
        mu: count_factorizations(w, mu)
        for mu in partitions_of(size, max_part=w.n - 1, max_len=parts)
    }
    return SchurExpansion(_clean(terms), basis="m", method="enumeration")


def alternating_coefficient(w: AffinePermutation, mu: Sequence[int]) -> int:
    """a_{w,mu} = sum over sigma of sign(sigma) * K_{w, sigma(mu + rho) - rho}."""
    mu = partition(mu)
    if sum(mu) != w.length():
        return 0
    total = 0
    for _, beta, sign in jacobi_trudi_terms(mu, max(len(mu), 1)):
        if max(beta, default=0) < w.n:
            total += sign * count_factorizations(w, partition(beta))
    return total


def crystal_hypotheses(w: AffinePermutation, mu: Sequence[int]) -> bool:
    """True when highest weights are known to compute a_{w,mu}."""
    return bool(w.missing_residues()) or len(partition(mu)) <= 2


def stanley_schur_expansion(w: AffinePermutation, method: str = "crystal",
                            max_parts: int | None = None) -> SchurExpansion:
    """Schur expansion of the affine Stanley function F_w, optionally
    restricted to shapes with at most ``max_parts`` rows.

    The crystal method counts highest weight factorizations.  When w uses
    every residue it only covers shapes with at most two rows, so it raises
    NoMissingResidue unless ``max_parts <= 2``.
    """
    size = w.length()
    shapes = [mu for mu in partitions_of(size, max_part=w.n - 1, max_len=max_parts)]
    if method == "crystal":
        if not w.missing_residues() and any(len(mu) > 2 for mu in shapes):
            raise NoMissingResidue(f"{w} uses every residue; pass max_parts <= 2")
        terms = {mu: highest_weight_count(w, mu) for mu in shapes}
        return SchurExpansion(_clean(terms), method="crystal")
    if method in ("alternating", "oracle"):
        terms = {mu: alternating_coefficient(w, mu) for mu in partitions_of(size, max_len=max_parts)}
        return SchurExpansion(_clean(terms), method="oracle")
    raise ValueError(f"unknown method {method!r}")


# --- k-Pieri rule and k-Schur functions -------------------------------------

def _check_grassmannian(u: AffinePermutation):
    if not is_affine_grassmannian(u) or u.shift != 0:
        raise NotGrassmannian(f"{u} is not a shift-0 affine Grassmannian element")


@functools.lru_cache(maxsize=None)
def _k_pieri(r: int, window: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    n = len(window)
    out = []
    for content, _ in _subsets_by_size(n, r):
        cur = window
        ok = True
        # v u = s_{c1} (s_{c2} ( ... (s_{cr} u)))
        for c in reversed(_factor_word(content, n)):
            if _has_right_descent(_inverse(cur), c):
                ok = False
                break
            cur = _left_mult(cur, c)
        if ok and all(a < b for a, b in zip(cur, cur[1:])):
            out.append(cur)
    return tuple(sorted(out))


def k_pieri(r: int, u: AffinePermutation) -> list[AffinePermutation]:
    """All v u with v cyclically decreasing of length r and v u Grassmannian, lengths adding.

    >>> from .affine_weyl import identity
    >>> [lc(v) for v in k_pieri(2, identity(4))]
    [(2,)]
    """
    _check_grassmannian(u)
    if r == 0:
        return [u]
    return [AffinePermutation(win) for win in _k_pieri(r, u.window)]


@functools.lru_cache(maxsize=None)
def _pieri_paths(window: tuple[int, ...], steps: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    if not steps:
        return {window: 1}
    out: dict[tuple[int, ...], int] = defaultdict(int)
    first, rest = steps[0], steps[1:]
    nexts = (window,) if first == 0 else _k_pieri(first, window)
    for nxt in nexts:
        for end, count in _pieri_paths(nxt, rest).items():
            out[end] += count
    return dict(out)


def h_times_kschur(alpha: Sequence[int], w: AffinePermutation) -> dict[AffinePermutation, int]:
    """h_alpha s^(k)_w expanded in k-Schur functions via iterated k-Pieri."""
    _check_grassmannian(w)
    if any(a >= w.n for a in alpha):
        raise ShapeOutOfRange(f"h_{max(alpha)} lies outside the k-bounded subring")
    return {AffinePermutation(k): v for k, v in _pieri_paths(w.window, tuple(alpha)).items()}


def schur_times_kschur(mu: Sequence[int], w: AffinePermutation) -> dict[AffinePermutation, int]:
    """s_mu s^(k)_w via the Jacobi-Trudi expansion of s_mu and iterated k-Pieri.

    Needs mu_1 + len(mu) <= n so that every h_j involved has j < n.
    """
    mu = partition(mu)
    _check_grassmannian(w)
    if mu and mu[0] + len(mu) > w.n:
        raise ShapeOutOfRange(f"{mu} does not fit in any r x (n - r) rectangle for n = {w.n}")
    out: dict[tuple[int, ...], int] = defaultdict(int)
    for _, beta, sign in jacobi_trudi_terms(mu, max(len(mu), 1)):
        for end, count in _pieri_paths(w.window, tuple(sorted(beta, reverse=True))).items():
            out[end] += sign * count
    return {AffinePermutation(k): v for k, v in sorted(out.items()) if v}


@functools.lru_cache(maxsize=None)
def _kschur_matrix(n: int, degree: int):
    shapes = [la for la in partitions_of(degree, max_part=n - 1)]
    matrix = [[count_factorizations(w_lambda(la, n), mu) for mu in shapes] for la in shapes]
    for i, la in enumerate(shapes):
        if matrix[i][i] != 1:
            raise AssertionError(f"K[{la},{la}] = {matrix[i][i]}, expected 1")
        for j in range(i):
            # shapes are in decreasing lexicographic order
            if matrix[i][j] != 0:
                raise AssertionError(f"K[{la},{shapes[j]}] = {matrix[i][j]} above the diagonal")
    inv = _invert_unitriangular(matrix)
    return shapes, inv


def _invert_unitriangular(matrix: list[list[int]]) -> list[list[int]]:
    # matrix is upper unitriangular in the shape order used above
    size = len(matrix)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(matrix)]
    for col in range(size - 1, -1, -1):
        for row in range(col):
            factor = aug[row][col]
            if factor:
                aug[row] = [a - factor * b for a, b in zip(aug[row], aug[col])]
    inv = [[aug[i][size + j] for j in range(size)] for i in range(size)]
    assert all(v.denominator == 1 for row in inv for v in row)
    return [[int(v) for v in row] for row in inv]


def kschur_h_expansion(w: AffinePermutation, degree_bound: int | None = None) -> SchurExpansion:
    """s^(k)_w = sum over mu of (K^{-1})_{mu, w} h_mu."""
    _check_grassmannian(w)
    la = lc(w)
    degree = sum(la)
    if degree_bound is not None and degree > degree_bound:
        raise DegreeMismatch(f"degree {degree} exceeds the bound {degree_bound}")
    shapes, inv = _kschur_matrix(w.n, degree)
    col = shapes.index(la)
    terms = {mu: inv[i][col] for i, mu in enumerate(shapes)}
    return SchurExpansion(_clean(terms), basis="h", method="oracle")


def kschur_product(u: AffinePermutation, w: AffinePermutation) -> dict[AffinePermutation, int]:
    """s^(k)_u s^(k)_w in the k-Schur basis, from the h-expansion of s^(k)_u."""
    out: dict[AffinePermutation, int] = defaultdict(int)
    for mu, coeff in kschur_h_expansion(u).terms.items():
        for v, count in h_times_kschur(mu, w).items():
            out[v] += coeff * count
    return {v: c for v, c in sorted(out.items()) if c}


# --- affine Littlewood-Richardson coefficients ------------------------------

def fits_some_rectangle(mu: Sequence[int], n: int) -> bool:
    """mu lies inside (r^{n-r}) for some 1 <= r < n."""
    mu = partition(mu)
    return not mu or mu[0] + len(mu) <= n


def _validate_R(R: Iterable[tuple[int, int]], n: int) -> list[tuple[int, int]]:
    R = [(int(i), int(e)) for i, e in R]
    for i, _ in R:
        if not 1 <= i < n:
            raise IndexOutOfRange(f"R_{i} needs 1 <= i < {n}")
    return R


def affine_lr(
    mu: Sequence[int],
    w: AffinePermutation,
    v: AffinePermutation,
    R: Iterable[tuple[int, int]] = (),
    method: str = "crystal",
) -> int:
    """The coefficient of s^(k)_{R v} in s^(k)_{R w_mu} s^(k)_w.

    Products of k-rectangles R cancel, so they are only validated.  Methods:
    ``crystal`` (highest weights of v w^{-1}), ``oracle`` (k-Pieri) and
    ``alternating`` (inverse Kostka sum over factorization counts).
    """
    mu = partition(mu)
    n = w.n
    _check_grassmannian(w)
    _check_grassmannian(v)
    _validate_R(R, n)
    if not fits_some_rectangle(mu, n):
        raise ShapeOutOfRange(f"{mu} does not fit in any r x (n - r) rectangle for n = {n}")
    if v.length() - w.length() != sum(mu):
        return 0
    z = multiply(v, inverse(w))
    if method == "crystal":
        if not crystal_hypotheses(z, mu):
            raise HypothesisNotMet(f"{z} has full content and {mu} has more than two parts")
        return highest_weight_count(z, mu)
    if method == "oracle":
        return schur_times_kschur(mu, w).get(v, 0)
    if method == "alternating":
        return alternating_coefficient(z, mu)
    raise ValueError(f"unknown method {method!r}")


# --- Gromov-Witten invariants -----------------------------------------------

@dataclass
class GWData:
    """Intermediate data of a flag Gromov-Witten computation."""

    r: int
    mu: Partition
    exponents: list[tuple[int, int]]
    sigma: AffinePermutation | None
    degree_ok: bool
    grassmannian_ok: bool
    hypotheses_met: bool


def gw_setup(u: AffinePermutation, w: AffinePermutation, v: AffinePermutation,
             d: Sequence[int], r: int | None = None) -> GWData:
    n = u.n
    if not (w.n == v.n == n):
        raise ValueError("u, w, v must have the same rank")
    if len(d) != n - 1 or any(di < 0 for di in d):
        raise IndexOutOfRange(f"degree vector needs {n - 1} nonnegative entries")
    des = descents(u)
    if r is None:
        if len(des) != 1:
            raise NotGrassmannianPermutation(f"{u} does not have exactly one descent")
        r = des[0]
    lam = grassmannian_shape(u, r)
    mu = conjugate(rect_complement(lam, r, n - r))
    dd = [0] + list(d) + [0]
    exps = [(r, 1)] + [(i, dd[i - 1] + dd[i + 1] - 2 * dd[i]) for i in range(1, n)]
    exps = [(i, e) for i, e in exps if e]
    degree_ok = v.length() == u.length() + w.length() - 2 * sum(d)
    grass_ok = is_affine_grassmannian(apply_R_product(af_exponents(d, n), af(v)))
    sigma = multiply(apply_R_product(exps, v), inverse(w)) if degree_ok and grass_ok else None
    hyp = sigma is not None and (
        bool(sigma.missing_residues()) or len(mu) <= 2 or u.length() >= n * (n - r - 1)
    )
    return GWData(r, mu, exps, sigma, degree_ok, grass_ok, hyp)


def gw_invariant(u: AffinePermutation, w: AffinePermutation, v: AffinePermutation,
                 d: Sequence[int], method: str = "crystal", r: int | None = None) -> int:
    """<u, w, w0 v>_d for u Grassmannian with descent at r.

    >>> from .affine_weyl import from_window
    >>> gw_invariant(from_window([1, 2, 4, 7, 3, 5, 6]), from_window([3, 1, 5, 4, 2, 6, 7]),
    ...              from_window([4, 2, 5, 7, 1, 3, 6]), [0] * 6)
    1
    """
    data = gw_setup(u, w, v, d, r)
    if data.sigma is None:
        return 0
    if method == "crystal":
        if not data.hypotheses_met:
            raise HypothesisNotMet("the product uses every residue and mu has more than two parts")
        return highest_weight_count(data.sigma, data.mu)
    if method in ("alternating", "oracle"):
        return alternating_coefficient(data.sigma, data.mu)
    raise ValueError(f"unknown method {method!r}")


# --- fusion coefficients ----------------------------------------------------

def fusion_setup(la, mu, nu, ell: int, n: int):
    la, mu, nu = partition(la), partition(mu), partition(nu)
    if not 1 <= ell < n:
        raise ShapeOutOfRange(f"need 1 <= ell < n, got ell={ell}, n={n}")
    for shape in (la, mu, nu):
        if len(shape) > ell - 1 or (shape and shape[0] > n - ell):
            raise ShapeOutOfRange(f"{shape} does not fit in ({n - ell}^{ell - 1})")
    excess = sum(la) + sum(mu) - sum(nu)
    if excess < 0 or excess % ell:
        raise NotDivisible(f"|la| + |mu| - |nu| = {excess} is not a nonnegative multiple of {ell}")
    nu_hat = (ell,) * (excess // ell) + conjugate(nu)
    w = w_lambda(conjugate(la), n)
    v = w_lambda(nu_hat, n)
    return conjugate(mu), w, v


def fusion_coefficient(la, mu, nu, ell: int, n: int, method: str | None = None) -> tuple[int, str]:
    """N_{la,mu}^{nu} for su(ell) at level n - ell; returns (value, method used).

    With method None the crystal is used when its hypotheses hold and the
    k-Pieri oracle otherwise.
    """
    mu_t, w, v = fusion_setup(la, mu, nu, ell, n)
    if method is None:
        z = multiply(v, inverse(w))
        method = "crystal" if crystal_hypotheses(z, mu_t) else "oracle"
    return affine_lr(mu_t, w, v, method=method), method


# --- positroid classes ------------------------------------------------------

def check_bounded(w: AffinePermutation, r: int, n: int):
    if w.n != n:
        raise NotBounded(f"window has length {w.n}, expected {n}")
    if w.shift != r:
        raise NotBounded(f"shift {w.shift} differs from r = {r}")
    for i in range(1, n + 1):
        if not i <= w(i) <= i + n:
            raise NotBounded(f"w({i}) = {w(i)} is outside [{i}, {i + n}]")


def positroid_schubert_decomposition(w: AffinePermutation, r: int, n: int) -> SchurExpansion:
    """Schur expansion of F_w with shapes outside ((n-r)^r) discarded."""
    check_bounded(w, r, n)
    v = AffinePermutation(tuple(x - r for x in w.window))
    if v.missing_residues():
        exp = stanley_schur_expansion(v, method="crystal", max_parts=r)
    else:
        exp = stanley_schur_expansion(v, method="alternating", max_parts=r)
        exp.hypotheses_met = False
    exp.terms = {la: c for la, c in exp.terms.items() if not la or la[0] <= n - r}
    return exp


def grassmannian_elements(n: int, max_degree: int) -> list[AffinePermutation]:
    return [w for d in range(max_degree + 1) for w in grassmannian_level(n, d).values()]
