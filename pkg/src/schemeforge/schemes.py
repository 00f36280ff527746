"""Symmetric association schemes: axioms, intersection numbers, exact spectra
(P, Q, multiplicities, Krein parameters, cosine matrix), Q-polynomial
orderings, partial metricity, nearest neighbourhood relation, the light-tail
multiplicity bound, and spherical embedding Gram matrices.

All spectral data lives in Q or a single real quadratic field Q[sqrt(p)];
computations are exact throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import sympy

from .exactnum import (
    ExactMatrix,
    QuadNumber,
    char_poly,
    nullspace,
    squarefree_decompose,
)
from .graphs import Graph, distance_i_graph


class SplittingFieldError(ValueError):
    """Raised when the splitting field has degree > 2 over the rationals."""


@dataclass(frozen=True)
class SchemeRefutation:
    """Structured refutation naming the first violated axiom with a witness."""

    axiom: str
    detail: str
    witness: tuple = ()

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Scheme:
    """Symmetric association scheme given by its relation map on X x X."""

    n: int
    d: int
    relations: tuple[tuple[int, ...], ...]
    valencies: tuple[int, ...]
    p: tuple  # intersection numbers, indexed p[i][j][h]

    def __bool__(self):
        return True

    def p_num(self, i: int, j: int, h: int) -> int:
        return self.p[i][j][h]

    def relation_matrix(self, i: int) -> ExactMatrix:
        return ExactMatrix(
            [
                [1 if self.relations[x][y] == i else 0 for y in range(self.n)]
                for x in range(self.n)
            ]
        )

    def scheme_graph(self, i: int) -> Graph:
        if i == 0:
            raise ValueError("the trivial relation is not a simple graph")
        return Graph(
            self.n,
            [
                (x, y)
                for x in range(self.n)
                for y in range(x + 1, self.n)
                if self.relations[x][y] == i
            ],
        )

    def intersection_matrix(self, i: int) -> list[list[int]]:
        """B_i with (B_i)[h][j] = p_{ij}^h (regular representation of A_i)."""
        return [
            [self.p[i][j][h] for j in range(self.d + 1)] for h in range(self.d + 1)
        ]


SchemeResult = Union[Scheme, SchemeRefutation]


def verify_scheme(relation_map: Sequence[Sequence[int]]) -> SchemeResult:
    """Check the scheme axioms and compute intersection numbers.

    Returns a Scheme, or a SchemeRefutation naming the first violated axiom
    with a witnessing tuple (refutations are results, not errors)."""
    n = len(relation_map)
    rel = tuple(tuple(row) for row in relation_map)
    if any(len(row) != n for row in rel):
        return SchemeRefutation("shape", "relation map is not square")
    for x in range(n):
        if rel[x][x] != 0:
            return SchemeRefutation(
                "diagonal", f"relation at ({x},{x}) is {rel[x][x]}, expected 0", (x, x)
            )
    for x in range(n):
        for y in range(x + 1, n):
            if rel[x][y] != rel[y][x]:
                return SchemeRefutation(
                    "symmetry",
                    f"relation({x},{y}) = {rel[x][y]} != {rel[y][x]} = relation({y},{x})",
                    (x, y),
                )
            if rel[x][y] == 0:
                return SchemeRefutation(
                    "diagonal", f"off-diagonal pair ({x},{y}) uses the trivial relation", (x, y)
                )
    d = max((rel[x][y] for x in range(n) for y in range(n)), default=0)
    used = {rel[x][y] for x in range(n) for y in range(n)}
    if used != set(range(d + 1)):
        missing = sorted(set(range(d + 1)) - used)
        return SchemeRefutation("partition", f"unused relation indices {missing}")

    # intersection numbers: p[i][j][h] from a reference pair per h, then
    # verified against every pair
    ref: list[Optional[list[list[int]]]] = [None] * (d + 1)
    ref_pair: list[tuple[int, int]] = [(-1, -1)] * (d + 1)
    for x in range(n):
        for y in range(n):
            h = rel[x][y]
            counts = [[0] * (d + 1) for _ in range(d + 1)]
            rx = rel[x]
            for z in range(n):
                counts[rx[z]][rel[z][y]] += 1
            if ref[h] is None:
                ref[h] = counts
                ref_pair[h] = (x, y)
            elif ref[h] != counts:
                for i in range(d + 1):
                    for j in range(d + 1):
                        if ref[h][i][j] != counts[i][j]:
                            return SchemeRefutation(
                                "intersection",
                                f"p_{{{i}{j}}}^{h} is {ref[h][i][j]} at pair "
                                f"{ref_pair[h]} but {counts[i][j]} at ({x},{y})",
                                (x, y, h, i, j),
                            )
    p = tuple(
        tuple(tuple(ref[h][i][j] for h in range(d + 1)) for j in range(d + 1))
        for i in range(d + 1)
    )
    valencies = tuple(p[i][i][0] for i in range(d + 1))
    return Scheme(n, d, rel, valencies, p)


def scheme_from_graph_distances(g: Graph) -> SchemeResult:
    """Distance partition of a connected graph as a scheme (valid iff the
    graph is distance-regular)."""
    if not g.is_connected():
        return SchemeRefutation("connectivity", "graph is disconnected")
    dist = g.distance_matrix()
    return verify_scheme(dist)


@dataclass(frozen=True)
class Spectra:
    """Exact spectral data of a scheme.

    Idempotents are ordered canonically: E_0 first, the rest by decreasing
    eigenvalue of the generic combination used for diagonalization.  Use
    ``reordered`` to move to a Q-polynomial ordering."""

    scheme: Scheme
    P: tuple[tuple[QuadNumber, ...], ...]  # P[c][i], c idempotent, i relation
    Q: tuple[tuple[QuadNumber, ...], ...]  # Q[i][c]
    multiplicities: tuple[int, ...]
    krein: tuple  # krein[i][j][k], QuadNumber
    cosines: tuple[tuple[QuadNumber, ...], ...]  # cosines[i][c] = omega_{i,c}
    radicand: int

    @property
    def d(self) -> int:
        return self.scheme.d

    def reordered(self, perm: Sequence[int]) -> "Spectra":
        """New Spectra with idempotent c moved to position perm.index(c)."""
        if perm[0] != 0 or sorted(perm) != list(range(self.d + 1)):
            raise ValueError("ordering must be a permutation fixing 0")
        P = tuple(self.P[c] for c in perm)
        Q = tuple(tuple(row[c] for c in perm) for row in self.Q)
        m = tuple(self.multiplicities[c] for c in perm)
        kr = tuple(
            tuple(
                tuple(self.krein[perm[i]][perm[j]][perm[k]] for k in range(self.d + 1))
                for j in range(self.d + 1)
            )
            for i in range(self.d + 1)
        )
        cos = tuple(tuple(row[c] for c in perm) for row in self.cosines)
        return Spectra(self.scheme, P, Q, m, kr, cos, self.radicand)

    def idempotent(self, c: int) -> ExactMatrix:
        """E_c = (1/|X|) sum_j Q[j][c] A_j as an exact matrix."""
        s = self.scheme
        inv = Fraction(1, s.n)
        return ExactMatrix(
            [
                [self.Q[s.relations[x][y]][c] * inv for y in range(s.n)]
                for x in range(s.n)
            ]
        )


def _factor_eigenvalues(coeffs: list[Fraction]) -> tuple[list[QuadNumber], int]:
    """Roots of a rational polynomial that factors into linear and quadratic
    irreducible factors; raises SplittingFieldError otherwise.

    Returns (roots with multiplicity, common radicand)."""
    t = sympy.Symbol("t")
    poly = sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)],
        t,
        domain="QQ",
    )
    _, factors = poly.factor_list()
    roots: list[QuadNumber] = []
    radicand = 1
    for fac, mult in factors:
        deg = fac.degree()
        cs = [Fraction(str(c)) for c in fac.all_coeffs()]  # descending
        if deg == 1:
            root = QuadNumber(-cs[1] / cs[0])
            roots.extend([root] * mult)
        elif deg == 2:
            a, b, c = cs
            disc = b * b - 4 * a * c
            if disc <= 0:
                raise SplittingFieldError("complex or repeated quadratic factor")
            m, q = squarefree_decompose(disc.numerator * disc.denominator)
            scale = Fraction(m, disc.denominator)
            if q == 1:
                raise SplittingFieldError("unexpected rational quadratic factor")
            if radicand == 1:
                radicand = q
            elif radicand != q:
                raise SplittingFieldError(
                    f"two distinct quadratic fields: sqrt({radicand}), sqrt({q})"
                )
            half = QuadNumber(-b / (2 * a), scale / (2 * a), q)
            roots.extend([half, half.conjugate()] * mult)
        else:
            raise SplittingFieldError(
                f"irreducible factor of degree {deg}; splitting field exceeds "
                "a quadratic extension"
            )
    return roots, radicand


_GENERIC_COEFF_VECTORS = [
    lambda d: [0] + [j for j in range(1, d + 1)],
    lambda d: [0] + [j * j for j in range(1, d + 1)],
    lambda d: [0] + [j ** 3 + j for j in range(1, d + 1)],
    lambda d: [0] + [(j + 1) ** 4 for j in range(1, d + 1)],
    lambda d: [0] + [7 ** j % 1009 for j in range(1, d + 1)],
    lambda d: [0] + [13 ** j % 2003 for j in range(1, d + 1)],
]


def spectra(s: Scheme) -> Spectra:
    """Exact eigenmatrices, multiplicities, Krein parameters and cosines.

    Simultaneously diagonalizes the intersection matrices B_i via a generic
    integer combination; retries with the next deterministic coefficient
    vector if eigenvalues collide."""
    d = s.d
    bmats = [s.intersection_matrix(i) for i in range(d + 1)]
    last_err: Optional[Exception] = None
    for make in _GENERIC_COEFF_VECTORS:
        c = make(d)
        combo = [
            [
                sum(c[i] * bmats[i][h][j] for i in range(d + 1))
                for j in range(d + 1)
            ]
            for h in range(d + 1)
        ]
        poly = char_poly(ExactMatrix(combo))
        try:
            roots, radicand = _factor_eigenvalues(
                [x.as_fraction() for x in poly.coeffs]
            )
        except SplittingFieldError as err:
            raise err
        if len(set(roots)) != d + 1:
            last_err = ValueError("eigenvalue collision in generic combination")
            continue
        return _spectra_from_eigenvalues(s, combo, roots, radicand)
    raise last_err  # type: ignore[misc]


def _spectra_from_eigenvalues(
    s: Scheme, combo: list[list[int]], roots: list[QuadNumber], radicand: int
) -> Spectra:
    d = s.d
    bmats = [s.intersection_matrix(i) for i in range(d + 1)]
    rows: list[tuple[QuadNumber, ...]] = []
    for theta in roots:
        shifted = ExactMatrix(
            [
                [
                    QuadNumber(combo[h][j]) - (theta if h == j else QuadNumber(0))
                    for j in range(d + 1)
                ]
                for h in range(d + 1)
            ]
        )
        basis = nullspace(shifted)
        if len(basis) != 1:
            raise ValueError("generic combination has a degenerate eigenspace")
        vec = basis[0]
        pivot = next(i for i, x in enumerate(vec) if x)
        prow = []
        for i in range(d + 1):
            img = sum(
                (QuadNumber(bmats[i][pivot][j]) * vec[j] for j in range(d + 1)),
                QuadNumber(0),
            )
            prow.append(img / vec[pivot])
        rows.append(tuple(prow))
    # E_0 corresponds to the valency character P[0][i] = k_i
    kvec = tuple(QuadNumber(k) for k in s.valencies)
    try:
        main = rows.index(kvec)
    except ValueError as exc:
        raise ValueError("no valency character found; scheme data corrupt") from exc
    others = [r for idx, r in enumerate(rows) if idx != main]
    others.sort(key=lambda r: r[1], reverse=True)
    P = tuple([kvec] + others)

    mults = []
    for c in range(d + 1):
        denom = sum(
            (P[c][j] * P[c][j] / s.valencies[j] for j in range(d + 1)),
            QuadNumber(0),
        )
        m = QuadNumber(s.n) / denom
        if not m.is_integer or m.as_fraction() <= 0:
            raise ValueError(f"non-integral multiplicity {m}")
        mults.append(int(m.as_fraction()))
    if sum(mults) != s.n:
        raise ValueError("multiplicities do not sum to |X|")

    cosines = tuple(
        tuple(P[c][i] / s.valencies[i] for c in range(d + 1)) for i in range(d + 1)
    )
    Q = tuple(
        tuple(cosines[i][c] * mults[c] for c in range(d + 1)) for i in range(d + 1)
    )
    krein = tuple(
        tuple(
            tuple(
                sum(
                    (
                        QuadNumber(s.valencies[l])
                        * cosines[l][i]
                        * cosines[l][j]
                        * cosines[l][k]
                        for l in range(d + 1)
                    ),
                    QuadNumber(0),
                )
                * Fraction(mults[i] * mults[j], s.n)
                for k in range(d + 1)
            )
            for j in range(d + 1)
        )
        for i in range(d + 1)
    )
    sp = Spectra(s, P, Q, tuple(mults), krein, cosines, radicand)
    _cross_check_dual_recurrence(sp)
    return sp


def _cross_check_dual_recurrence(sp: Spectra) -> None:
    """Independent validation of the Krein tensor via the dual cosine
    recurrence m_i w_{r,i} w_{r,j} = sum_h q_{hi}^j w_{r,h}."""
    d = sp.d
    for i in range(d + 1):
        for j in range(d + 1):
            for r in range(d + 1):
                lhs = sp.cosines[r][i] * sp.cosines[r][j] * sp.multiplicities[i]
                rhs = sum(
                    (
                        sp.krein[h][i][j] * sp.cosines[r][h]
                        for h in range(d + 1)
                    ),
                    QuadNumber(0),
                )
                if lhs != rhs:
                    raise ValueError(
                        f"dual recurrence fails at (i={i}, j={j}, r={r}): "
                        f"{lhs} != {rhs}"
                    )


def krein_check(sp: Spectra) -> tuple[bool, Optional[tuple[int, int, int]]]:
    """All Krein parameters non-negative?  Returns (ok, offending triple)."""
    d = sp.d
    for i in range(d + 1):
        for j in range(d + 1):
            for k in range(d + 1):
                if sp.krein[i][j][k].sign() < 0:
                    return False, (i, j, k)
    return True, None


def q_poly_orderings(sp: Spectra) -> list[tuple[int, ...]]:
    """All orderings of the idempotents making the scheme cometric.

    An ordering is cometric iff in the reindexed Krein tensor
    q_{1,i}^{j} = 0 whenever |i - j| > 1 and q_{1,i}^{i+1} > 0 for i < d."""
    d = sp.d
    out = []
    for tail in itertools.permutations(range(1, d + 1)):
        perm = (0,) + tail
        ok = True
        for i in range(d + 1):
            for j in range(d + 1):
                q = sp.krein[perm[1]][perm[i]][perm[j]]
                if abs(i - j) > 1 and q:
                    ok = False
                    break
                if j == i + 1 and q.sign() <= 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(perm)
    return out


def qpolynomial_spectra(s: Scheme) -> tuple[Spectra, list[tuple[int, ...]]]:
    """Spectra reordered by the first Q-polynomial ordering (lexicographically
    smallest), plus the full list of orderings.  Raises if none exists."""
    sp = spectra(s)
    orderings = sorted(q_poly_orderings(sp))
    if not orderings:
        raise ValueError("scheme has no Q-polynomial ordering")
    return sp.reordered(orderings[0]), orderings


def partially_metric_level(s: Scheme, r: int) -> int:
    """Largest t such that the distance-i graph of the scheme graph of R_r is
    itself a scheme graph for every i <= t; t = d means metric."""
    g = s.scheme_graph(r)
    if not g.is_connected():
        raise ValueError(f"scheme graph of relation {r} is disconnected")
    diam = g.diameter()
    t = 1
    matched = {1: r}
    for i in range(2, min(diam, s.d) + 1):
        gi = distance_i_graph(g, i)
        hit = None
        for j in range(1, s.d + 1):
            if j in matched.values():
                continue
            if s.scheme_graph(j) == gi:
                hit = j
                break
        if hit is None:
            break
        matched[i] = hit
        t = i
    # metric means all d relations are exhausted by distance graphs
    return t


def nearest_neighbour_relation(sp: Spectra) -> int:
    """Relation index maximizing the E_1 inner product alpha_i < 1.

    Requires all alpha_i distinct (faithfulness of the E_1 representation)."""
    d = sp.d
    alphas = [sp.cosines[i][1] for i in range(d + 1)]
    if len(set(alphas)) != d + 1:
        raise ValueError("cosine column 1 has repeated values; not faithful")
    best = max(range(1, d + 1), key=lambda i: alphas[i])
    return best


def light_tail_bound(k, theta, a1, b1):
    """Exact lower bound on the multiplicity of an idempotent with eigenvalue
    theta in a partially metric scheme:

        m >= k - k (theta+1)^2 a1 (a1+1) / (((a1+1) theta + k)^2 + k a1 b1)

    Equality characterizes a light tail."""
    k_ = QuadNumber(k) if not isinstance(k, QuadNumber) else k
    th = theta if isinstance(theta, QuadNumber) else QuadNumber(theta)
    if th == k_ or th == -k_:
        raise ValueError("bound undefined for theta = +-k")
    a1q = a1 if isinstance(a1, QuadNumber) else QuadNumber(a1)
    b1q = b1 if isinstance(b1, QuadNumber) else QuadNumber(b1)
    denom = ((a1q + 1) * th + k_) ** 2 + k_ * a1q * b1q
    return k_ - k_ * (th + 1) ** 2 * a1q * (a1q + 1) / denom


def is_light_tail(m, k, theta, a1, b1) -> bool:
    mq = m if isinstance(m, QuadNumber) else QuadNumber(m)
    return mq == light_tail_bound(k, theta, a1, b1)


def embedding_gram(sp: Spectra, j: int) -> ExactMatrix:
    """Gram matrix (|X|/m_j) E_j of the spherical representation: the (x,y)
    entry is the cosine of the relation joining x and y."""
    s = sp.scheme
    return ExactMatrix(
        [
            [sp.cosines[s.relations[x][y]][j] for y in range(s.n)]
            for x in range(s.n)
        ]
    )
