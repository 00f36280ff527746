"""Feasible relation-distribution diagram search.

Generates all feasible relation-distribution diagrams of the nearest
neighbourhood relation of a partially metric Q-polynomial association scheme
with m1 = 4, together with the first two cosine columns, by the recursive
exhaustion with pruning described in the module docstrings below.  Emitted
diagrams are matched against the bundled catalogue schemes; unmatched
feasible diagrams are surfaced, never dropped.

Structure of the search state:

  * the diagram is a weighted digraph on relation vertices, arc weight
    w(j -> h) = p_{h1}^j, so every vertex has total out-weight k1;
  * every relation has a well-defined distance from R0 in the scheme graph
    (the distance-t graph is a union of relations), so vertices carry a
    layer and arcs never skip layers;
  * partial metricity makes layer 2 a single relation R2;
  * the cosine columns obey k1*w(1,c)*w(i,c) = sum_h p_{h1}^i w(h,c), and
    with m1 = 4 the dual recurrence pins column 2 to column 1 pointwise:
    4*w(i,1)^2 = 1 + q111*w(i,1) + (3 - q111)*w(i,2).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .exactnum import (
    QuadNumber,
    as_quad,
    bounded_algebraic_integers,
    is_algebraic_integer,
    quad_sqrt,
)

__all__ = [
    "SearchConfig",
    "DistributionDiagram",
    "CosineColumns",
    "SearchResult",
    "SearchOutcome",
    "initial_state",
    "arrangements",
    "check_diagram_valid",
    "solve_cosines",
    "check_solution_valid",
    "generate_diagrams",
    "match_known",
    "candidate_radicands",
    "KISSING_NUMBER_R4",
]

KISSING_NUMBER_R4 = 24  # maximum spherical [-1,1/2]-code in R^4

DEFAULT_BUDGET = 2_000_000


def _env_budget() -> int:
    raw = os.environ.get("SCHEMEFORGE_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return max(1, int(raw))
    except ValueError:
        return DEFAULT_BUDGET


@dataclass(frozen=True)
class SearchConfig:
    """Parameters of one search run.

    light_tail is forced when k1 = m1 and a1 = 0: the multiplicity bound is
    then attained, so E1 is a light tail and q111 = 0."""

    k1: int
    a1: int
    m1: int = 4
    radicand: int = 1
    max_depth: Optional[int] = None
    budget: Optional[int] = None

    def __post_init__(self):
        if self.k1 < 3:
            raise ValueError("need k1 >= 3")
        if not 0 <= self.a1 < self.k1:
            raise ValueError("need 0 <= a1 < k1")
        if self.m1 < 3:
            raise ValueError("need m1 >= 3")

    @property
    def light_tail(self) -> bool:
        return self.a1 == 0 and self.k1 == self.m1

    @property
    def depth_limit(self) -> int:
        if self.max_depth is not None:
            return self.max_depth
        # degree bound: d <= 4*v1 + 1, and d <= 2*v1 + 1 over the rationals
        return (4 if self.radicand > 1 else 2) * self.k1 + 1

    @property
    def node_budget(self) -> int:
        return self.budget if self.budget is not None else _env_budget()


@dataclass
class DistributionDiagram:
    """Weighted digraph of relations with arc weights p_{h1}^j."""

    k1: int
    layers: list  # layer (scheme-graph distance) per vertex
    arcs: dict  # (j, h) -> weight
    valencies: list  # k_j per vertex, None until inferred
    determined: list  # True once the vertex's out-arcs are complete

    @classmethod
    def seed(cls, k1: int, a1: int) -> "DistributionDiagram":
        arcs = {(0, 1): k1, (1, 0): 1}
        if a1:
            arcs[(1, 1)] = a1
        return cls(
            k1=k1,
            layers=[0, 1],
            arcs=arcs,
            valencies=[1, k1],
            determined=[True, False],
        )

    @property
    def n(self) -> int:
        return len(self.layers)

    def copy(self) -> "DistributionDiagram":
        return DistributionDiagram(
            self.k1,
            list(self.layers),
            dict(self.arcs),
            list(self.valencies),
            list(self.determined),
        )

    def out_weight(self, j: int) -> int:
        return sum(w for (a, _), w in self.arcs.items() if a == j)

    def out_neighbours(self, j: int) -> list:
        return sorted(h for (a, h) in self.arcs if a == j)

    def in_neighbours(self, j: int) -> list:
        return sorted(a for (a, h) in self.arcs if h == j)

    def weight(self, j: int, h: int) -> int:
        return self.arcs.get((j, h), 0)

    def add_vertex(self, layer: int) -> int:
        self.layers.append(layer)
        self.valencies.append(None)
        self.determined.append(False)
        return self.n - 1

    def size(self):
        """|X| = sum of valencies; None while any valency is unknown."""
        if any(v is None for v in self.valencies):
            return None
        return sum(self.valencies)


@dataclass
class CosineColumns:
    """Columns 1 and 2 of the cosine matrix, one (w1, w2) pair per vertex."""

    radicand: int
    q111: QuadNumber
    values: list  # (QuadNumber, QuadNumber) per vertex

    def copy(self) -> "CosineColumns":
        return CosineColumns(self.radicand, self.q111, list(self.values))

    def column(self, c: int) -> list:
        return [pair[c - 1] for pair in self.values]

    def second_from_first(self, w1: QuadNumber) -> QuadNumber:
        """Column-2 value forced by the dual recurrence
        m1*w1^2 = 1 + q111*w1 + (m1 - 1 - q111)*w2 with m1 = 4."""
        four = QuadNumber(4)
        rest = QuadNumber(3) - self.q111
        return (four * w1 * w1 - QuadNumber(1) - self.q111 * w1) / rest


@dataclass
class SearchResult:
    diagram: DistributionDiagram
    cosines: CosineColumns
    matched: Optional[str] = None  # catalogue id, or None for unmatched

    def canonical_key(self):
        order = sorted(
            range(self.diagram.n),
            key=lambda v: (self.diagram.layers[v], str(self.cosines.values[v][0])),
        )
        pos = {v: i for i, v in enumerate(order)}
        arcs = tuple(
            sorted(((pos[j], pos[h]), w) for (j, h), w in self.diagram.arcs.items())
        )
        data = tuple(
            (
                self.diagram.layers[v],
                self.diagram.valencies[v],
                str(self.cosines.values[v][0]),
                str(self.cosines.values[v][1]),
            )
            for v in order
        )
        return (arcs, data)


@dataclass
class SearchOutcome:
    config: SearchConfig
    results: list  # of SearchResult
    stats: dict
    complete: bool  # False when the node budget ran out


def candidate_radicands(k1: int) -> list:
    """Square-free parts of discriminants of monic integer quadratics whose
    roots both lie in [-k1, k1]: the possible splitting fields."""
    from .exactnum import squarefree_decompose

    seen = set()
    for b in range(-2 * k1, 2 * k1 + 1):
        for c in range(-(k1 * k1), k1 * k1 + 1):
            disc = b * b - 4 * c
            if disc <= 0:
                continue
            _, p = squarefree_decompose(disc)
            if p == 1:
                continue
            # both roots (-b +- sqrt(disc))/2 in [-k1, k1]
            r = QuadNumber(Fraction(-b, 2), Fraction(1, 2), disc)
            s = QuadNumber(Fraction(-b, 2), Fraction(-1, 2), disc)
            k = QuadNumber(k1)
            if -k <= s and r <= k:
                seen.add(p)
    return sorted(seen)


def _cosine_candidates(k: int, radicand: int) -> list:
    """Possible cosines lambda/k with lambda a bounded algebraic integer."""
    out = []
    for lam in bounded_algebraic_integers(k, radicand):
        w = lam / QuadNumber(k)
        out.append(w)
    return sorted(set(out))


def initial_state(config: SearchConfig):
    """Seed diagram R0 -> R1 plus the finitely many cosine seeds (w1, w2).

    w1 = omega_{1,1} ranges over bounded algebraic integers over k1; w2 is
    forced by q111 = 0 in the light-tail case and enumerated otherwise.  A
    seed is kept only when the Krein value q111 = ((m1-1)*w2 - m1*w1^2 + 1)
    / (w2 - w1) satisfies 0 <= q111 < m1 - 1; q111 = m1 - 1 collapses
    column 1 onto two values, which is the complete-graph degeneracy."""
    diagram = DistributionDiagram.seed(config.k1, config.a1)
    todo = [1]
    one = QuadNumber(1)
    m1 = QuadNumber(config.m1)
    seeds = []
    for w1 in _cosine_candidates(config.k1, config.radicand):
        if not (-one < w1 < one):
            continue
        if config.light_tail:
            w2 = (m1 * w1 * w1 - one) / (m1 - one)
            if w2 == w1 or not (-one <= w2 <= one):
                continue
            pairs = [(w2, QuadNumber(0))]
        else:
            pairs = []
            for w2 in _cosine_candidates(config.k1, config.radicand):
                if w2 == w1 or not (-one <= w2 <= one):
                    continue
                q111 = ((m1 - one) * w2 - m1 * w1 * w1 + one) / (w2 - w1)
                if QuadNumber(0) <= q111 < m1 - one:
                    pairs.append((w2, q111))
        for w2, q111 in pairs:
            seeds.append(
                CosineColumns(
                    config.radicand, q111, [(one, one), (w1, w2)]
                )
            )
    return diagram, seeds, todo


def _weight_assignments(total: int, minimums: list):
    """All tuples w with w[i] >= minimums[i] and sum <= total."""
    if not minimums:
        yield (), total
        return
    lo = minimums[0]
    for w in range(lo, total + 1):
        for rest, left in _weight_assignments(total - w, minimums[1:]):
            yield (w,) + rest, left
    return


def _partitions(total: int, max_parts: int):
    """Non-increasing positive partitions of total into <= max_parts parts."""
    if total == 0:
        yield ()
        return
    if max_parts == 0:
        return

    def rec(left, cap, parts):
        if left == 0:
            yield tuple(parts)
            return
        if len(parts) == max_parts:
            return
        for nxt in range(min(cap, left), 0, -1):
            parts.append(nxt)
            yield from rec(left - nxt, nxt, parts)
            parts.pop()

    yield from rec(total, total, [])


def arrangements(diagram: DistributionDiagram, v: int, config: SearchConfig):
    """All ways to finish vertex v's out-arcs: weights on mandatory back-arcs
    (one per existing in-neighbour), optional arcs to undetermined vertices
    within one layer, a loop, and fresh next-layer vertices (non-increasing
    weights; layer 2 holds a single relation by partial metricity).

    Yields (new diagram, fresh vertex list); v is marked determined and its
    valency inferred from the handshake with any settled in-neighbour."""
    lv = diagram.layers[v]
    remaining = diagram.k1 - diagram.out_weight(v)
    mandatory = [
        h
        for h in diagram.in_neighbours(v)
        if (v, h) not in diagram.arcs
    ]
    optional = [
        h
        for h in range(1, diagram.n)
        if not diagram.determined[h]
        and abs(diagram.layers[h] - lv) <= 1
        and (v, h) not in diagram.arcs
        and h not in mandatory
    ]
    if v != 1 and (v, v) not in diagram.arcs and v not in optional:
        # v == 1 is excluded: its loop weight a1 is fixed by the config
        optional.append(v)
    optional.sort()
    targets = mandatory + optional
    fresh_layer = lv + 1
    max_fresh = remaining
    if lv == 1:
        max_fresh = 1  # partial metricity: distance 2 is one relation
    if fresh_layer > config.depth_limit:
        max_fresh = 0

    for weights, leftover in _weight_assignments(
        remaining, [1] * len(mandatory) + [0] * len(optional)
    ):
        for parts in _partitions(leftover, max_fresh):
            if diagram.n + len(parts) > config.depth_limit + 1:
                continue
            nd = diagram.copy()
            for h, w in zip(targets, weights):
                if w:
                    nd.arcs[(v, h)] = w
            fresh = []
            for w in parts:
                f = nd.add_vertex(fresh_layer)
                nd.arcs[(v, f)] = w
                fresh.append(f)
            nd.determined[v] = True
            if not _infer_valencies(nd, v):
                continue
            yield nd, fresh


def _infer_valencies(diagram: DistributionDiagram, v: int) -> bool:
    """Set k_v from the handshake k_v * w(v->h) = k_h * w(h->v) against every
    neighbour with known valency; False on contradiction or non-integer."""
    if diagram.valencies[v] is None:
        for h in diagram.out_neighbours(v):
            kh = diagram.valencies[h]
            back = diagram.weight(h, v)
            if kh is None or not back:
                continue
            num = kh * back
            den = diagram.weight(v, h)
            if num % den:
                return False
            kv = num // den
            if kv < 1:
                return False
            diagram.valencies[v] = kv
            break
        else:
            return False
    kv = diagram.valencies[v]
    for h in diagram.out_neighbours(v):
        kh = diagram.valencies[h]
        if kh is None:
            continue
        back = diagram.weight(h, v)
        if back and kv * diagram.weight(v, h) != kh * back:
            return False
    return True


def check_diagram_valid(diagram: DistributionDiagram):
    """(True, "") or (False, reason) for the structural diagram axioms."""
    k1 = diagram.k1
    # R0 structure
    if diagram.weight(0, 1) != k1 or diagram.out_weight(0) != k1:
        return False, "r0-structure"
    for (j, h), w in diagram.arcs.items():
        if w <= 0:
            return False, "nonpositive-weight"
        if h == 0 and j != 1:
            return False, "r0-structure"
        if abs(diagram.layers[j] - diagram.layers[h]) > 1:
            return False, "layer-skip"
    # out-weights
    for v in range(1, diagram.n):
        ow = diagram.out_weight(v)
        if diagram.determined[v] and ow != k1:
            return False, "out-weight"
        if not diagram.determined[v] and ow > k1:
            return False, "out-weight"
    # support symmetry and handshake for determined pairs
    for (j, h), w in diagram.arcs.items():
        if diagram.determined[h] and not diagram.weight(h, j):
            return False, "handshake"
        kj, kh = diagram.valencies[j], diagram.valencies[h]
        back = diagram.weight(h, j)
        if kj is not None and kh is not None and back:
            if kj * w != kh * back:
                return False, "handshake"
    ok, reason = _yamazaki_ok(diagram)
    if not ok:
        return False, reason
    return True, ""


def _yamazaki_ok(diagram: DistributionDiagram):
    """Diagram-local reading of Yamazaki's lemma.

    Interpretation (documented, since the lemma speaks of points): take a
    relation R_j at layer i >= 2 with two distinct determined out-neighbours
    R3, R4 at layer i+1 such that R3 sends total weight exactly 1 back to
    layer i (c_{i+1} = 1 for its points).  The lemma then demands a relation
    R5 adjacent to both R3 and R4 that avoids the distance-i graph, i.e. a
    common out-neighbour of R3 and R4 at layer >= i+1 (loops included)."""
    for j in range(diagram.n):
        lj = diagram.layers[j]
        if lj < 2:
            continue
        outs = [
            h
            for h in diagram.out_neighbours(j)
            if diagram.layers[h] == lj + 1 and diagram.determined[h]
        ]
        for r3 in outs:
            c = sum(
                w
                for (a, h), w in diagram.arcs.items()
                if a == r3 and diagram.layers[h] == lj
            )
            if c != 1:
                continue
            for r4 in outs:
                if r4 == r3:
                    continue
                good = any(
                    diagram.layers[h] >= lj + 1 and diagram.weight(r4, h)
                    for h in diagram.out_neighbours(r3)
                )
                if not good:
                    return False, "yamazaki"
    return True, ""


def _in_field(x: QuadNumber, radicand: int) -> bool:
    return x.p == 1 or x.p == radicand


def solve_cosines(
    diagram: DistributionDiagram,
    cosines: CosineColumns,
    v: int,
    fresh: list,
    config: SearchConfig,
):
    """Extensions of the cosine columns to the fresh vertices created at v.

    The column-1 recurrence k1*w(1,1)*w(v,1) = sum_h p_{h1}^v * w(h,1) is one
    linear equation; column 2 is the image of column 1 under the dual
    recurrence, and the column-2 recurrence then closes the system: zero
    fresh vertices make both recurrences checks, one fresh vertex is linear,
    two reduce to a quadratic solved inside the field, and beyond that the
    surplus cosines are exhausted over the bounded-algebraic-integer
    candidates.  Returns a list of CosineColumns (empty = prune)."""
    k1q = QuadNumber(diagram.k1)
    w11, w12 = cosines.values[1]
    known = {h: cosines.values[h] for h in range(len(cosines.values))}

    def residuals(vals):
        full = dict(known)
        for f, pair in zip(fresh, vals):
            full[f] = pair
        res = []
        for c in (0, 1):
            lhs = k1q * cosines.values[1][c] * full[v][c]
            rhs = QuadNumber(0)
            for h in diagram.out_neighbours(v):
                rhs = rhs + QuadNumber(diagram.weight(v, h)) * full[h][c]
            res.append(lhs - rhs)
        return res

    if not fresh:
        r1, r2 = residuals([])
        return [cosines] if not r1 and not r2 else []

    weights = [QuadNumber(diagram.weight(v, f)) for f in fresh]
    target1 = k1q * w11 * cosines.values[v][0] - sum(
        (QuadNumber(diagram.weight(v, h)) * known[h][0]
         for h in diagram.out_neighbours(v) if h not in fresh),
        QuadNumber(0),
    )
    target2 = k1q * w12 * cosines.values[v][1] - sum(
        (QuadNumber(diagram.weight(v, h)) * known[h][1]
         for h in diagram.out_neighbours(v) if h not in fresh),
        QuadNumber(0),
    )

    phi = cosines.second_from_first

    def extend(first_column):
        vals = [(a, phi(a)) for a in first_column]
        r1, r2 = residuals(vals)
        if r1 or r2:
            return None
        out = cosines.copy()
        out.values = list(out.values) + [None] * (max(fresh) + 1 - len(out.values))
        for f, pair in zip(fresh, vals):
            out.values[f] = pair
        return out

    def solve_tail(prefix):
        """prefix fixes all but the last two fresh cosines; solve the rest."""
        used1 = sum(
            (wq * a for wq, a in zip(weights, prefix)), QuadNumber(0)
        )
        used2 = sum(
            (wq * phi(a) for wq, a in zip(weights, prefix)), QuadNumber(0)
        )
        t1 = target1 - used1
        t2 = target2 - used2
        tailw = weights[len(prefix):]
        sols = []
        if len(tailw) == 1:
            a = t1 / tailw[0]
            if tailw[0] * phi(a) == t2:
                sols.append(list(prefix) + [a])
        else:
            wa, wb = tailw
            # b = (t1 - wa*a)/wb; wa*phi(a) + wb*phi(b) = t2
            # phi(x) = (4x^2 - 1 - q*x)/(3 - q): quadratic in a
            q = cosines.q111
            three_q = QuadNumber(3) - q
            four = QuadNumber(4)
            one = QuadNumber(1)
            # multiply the column-2 recurrence by (3 - q):
            #   wa*(4a^2 - 1 - q*a) + wb*(4b^2 - 1 - q*b) = t2*(3 - q)
            # and substitute b, using wb*4b^2 = 4*(t1 - wa*a)^2 / wb:
            #   4wa*a^2 - wa - q*wa*a
            #   + (4/wb)*(t1^2 - 2*t1*wa*a + wa^2*a^2)
            #   - wb - q*t1 + q*wa*a - t2*(3 - q) = 0
            A = four * wa + four * wa * wa / wb
            B = -QuadNumber(8) * t1 * wa / wb
            C = -wa + four * t1 * t1 / wb - wb - q * t1 - t2 * three_q
            if not A:
                if not B:
                    return sols  # degenerate; no isolated solutions
                roots = [-C / B]
            else:
                disc = B * B - four * A * C
                root = quad_sqrt(disc) if disc.sign() >= 0 else None
                if root is None:
                    return sols
                roots = [(-B + root) / (QuadNumber(2) * A)]
                if root:
                    roots.append((-B - root) / (QuadNumber(2) * A))
            for a in roots:
                if not _in_field(a, cosines.radicand):
                    continue
                b = (t1 - wa * a) / wb
                sols.append(list(prefix) + [a, b])
        return sols

    results = []
    if len(fresh) == 1:
        columns = solve_tail([])
    else:
        surplus = len(fresh) - 2
        if surplus == 0:
            columns = solve_tail([])
        else:
            columns = []
            cands = _fresh_candidates(diagram, v, fresh[0], cosines, config)
            for combo in itertools.product(cands, repeat=surplus):
                columns.extend(solve_tail(list(combo)))
    seen = set()
    for col in columns:
        ext = extend(col)
        if ext is None:
            continue
        key = tuple(
            sorted(str(ext.values[f][0]) for f in fresh)
        ) if _interchangeable(diagram, v, fresh) else tuple(
            str(ext.values[f][0]) for f in fresh
        )
        if key in seen:
            continue
        seen.add(key)
        results.append(ext)
    return results


def _interchangeable(diagram, v, fresh) -> bool:
    ws = [diagram.weight(v, f) for f in fresh]
    return len(set(ws)) < len(ws)


def _fresh_candidates(diagram, v, f, cosines, config) -> list:
    """Possible cosines of a fresh vertex: lambda/k for every valency k
    consistent with the handshake back to v."""
    kv = diagram.valencies[v]
    wv = diagram.weight(v, f)
    out = set()
    for back in range(1, diagram.k1 + 1):
        num = kv * wv
        if num % back:
            continue
        k = num // back
        for w in _cosine_candidates(k, config.radicand):
            out.add(w)
    return sorted(out)


def check_solution_valid(cosines: CosineColumns, diagram: DistributionDiagram):
    """(True, "") or (False, reason) for the cosine axioms: field membership,
    ranges, column-1 faithfulness with the nearest relation dominating, and
    the bounded-algebraic-integer test wherever the valency is known."""
    one = QuadNumber(1)
    col1 = [pair[0] for pair in cosines.values]
    col2 = [pair[1] for pair in cosines.values]
    for x in col1 + col2:
        if not _in_field(x, cosines.radicand):
            return False, "field"
    for i, x in enumerate(col1[1:], start=1):
        if not (-one <= x < one):
            return False, "range"
    for x in col2[1:]:
        if not (-one <= x <= one):
            return False, "range"
    if len({str(x) for x in col1}) != len(col1):
        return False, "faithfulness"
    w11 = col1[1]
    for i in range(2, len(col1)):
        if not col1[i] < w11:
            return False, "nearest-dominance"
    for i in range(1, len(col1)):
        k = diagram.valencies[i] if i < diagram.n else None
        if k is None:
            continue
        for x in (col1[i], col2[i]):
            lam = x * QuadNumber(k)
            if not is_algebraic_integer(lam):
                return False, "algebraic-integer"
            conj = QuadNumber(lam.a, -lam.b, lam.p)
            if not (-QuadNumber(k) <= conj <= QuadNumber(k)):
                return False, "conjugate-bound"
    return True, ""


def _emission_checks(diagram: DistributionDiagram, cosines: CosineColumns):
    """Final feasibility: integer valencies everywhere, orthogonality of the
    idempotent columns, m1 = 4 recovered, and m2 a positive integer."""
    size = diagram.size()
    if size is None:
        return False, "valency-unknown"
    zero = QuadNumber(0)
    ks = [QuadNumber(k) for k in diagram.valencies]
    col1 = [pair[0] for pair in cosines.values]
    col2 = [pair[1] for pair in cosines.values]
    if sum((k * w for k, w in zip(ks, col1)), zero):
        return False, "orthogonality"
    if sum((k * w for k, w in zip(ks, col2)), zero):
        return False, "orthogonality"
    if sum((k * w * w for k, w in zip(ks, col1)), zero) * QuadNumber(4) != QuadNumber(size):
        return False, "multiplicity-m1"
    if sum((k * a * b for k, a, b in zip(ks, col1, col2)), zero):
        return False, "orthogonality"
    s2 = sum((k * w * w for k, w in zip(ks, col2)), zero)
    if not s2:
        return False, "multiplicity-m2"
    m2 = QuadNumber(size) / s2
    if not (m2.is_rational and Fraction(m2.a).denominator == 1 and m2.a >= 1):
        return False, "multiplicity-m2"
    return True, ""


def generate_diagrams(config: SearchConfig, known=None) -> SearchOutcome:
    """Run the recursive generation for one configuration.

    known maps catalogue ids to Scheme objects used for matching; by default
    the bundled catalogue.  Unmatched feasible diagrams are kept in the
    result list with matched=None."""
    if known is None:
        from .catalogue import CATALOGUE, catalogue_scheme

        known = {sid: catalogue_scheme(sid) for sid in CATALOGUE}

    stats = {
        "nodes": 0,
        "emitted": 0,
        "pruned": {
            "diagram": 0,
            "cosines": 0,
            "solution": 0,
            "kissing": 0,
            "emission": 0,
            "budget": 0,
        },
    }
    budget = config.node_budget
    half = QuadNumber(Fraction(1, 2))
    results = {}
    complete = True

    def kissing_prune(diagram, cosines) -> bool:
        if cosines.values[1][0] > half:
            return False
        known_size = sum(k for k in diagram.valencies if k is not None)
        return known_size > KISSING_NUMBER_R4

    def rec(diagram, cosines, todo):
        nonlocal complete
        stats["nodes"] += 1
        if stats["nodes"] > budget:
            stats["pruned"]["budget"] += 1
            complete = False
            return
        if not todo:
            ok, _reason = _emission_checks(diagram, cosines)
            if not ok:
                stats["pruned"]["emission"] += 1
                return
            res = SearchResult(diagram.copy(), cosines.copy())
            key = res.canonical_key()
            if key not in results:
                stats["emitted"] += 1
                results[key] = res
            return
        v = todo[0]
        rest = todo[1:]
        for nd, fresh in arrangements(diagram, v, config):
            ok, _reason = check_diagram_valid(nd)
            if not ok:
                stats["pruned"]["diagram"] += 1
                continue
            if kissing_prune(nd, cosines):
                stats["pruned"]["kissing"] += 1
                continue
            exts = solve_cosines(nd, cosines, v, fresh, config)
            if not exts:
                stats["pruned"]["cosines"] += 1
                continue
            for ext in exts:
                ok, _reason = check_solution_valid(ext, nd)
                if not ok:
                    stats["pruned"]["solution"] += 1
                    continue
                rec(nd, ext, rest + fresh)

    diagram, seeds, todo = initial_state(config)
    for seed in seeds:
        rec(diagram.copy(), seed, list(todo))

    ordered = [results[k] for k in sorted(results)]
    for res in ordered:
        for sid, scheme in known.items():
            if match_known(res, scheme):
                res.matched = sid
                break
    return SearchOutcome(config, ordered, stats, complete)


def match_known(result: SearchResult, scheme) -> bool:
    """Does the result's diagram and cosine data equal the scheme's, up to a
    relabeling of relations fixing R0 and R1?"""
    from .schemes import qpolynomial_spectra

    diagram = result.diagram
    if scheme.d + 1 != diagram.n:
        return False
    try:
        sp, _orderings = qpolynomial_spectra(scheme)
    except Exception:
        return False
    if scheme.valencies[1] != diagram.k1:
        return False
    others = list(range(2, scheme.d + 1))
    for perm_tail in itertools.permutations(others):
        perm = (0, 1) + perm_tail  # diagram vertex i -> scheme relation perm[i]
        if any(
            scheme.valencies[perm[i]] != diagram.valencies[i]
            for i in range(diagram.n)
        ):
            continue
        ok = True
        for j in range(diagram.n):
            for h in range(diagram.n):
                if diagram.weight(j, h) != scheme.p[perm[h]][1][perm[j]]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        if all(
            sp.cosines[perm[i]][1] == result.cosines.values[i][0]
            and sp.cosines[perm[i]][2] == result.cosines.values[i][1]
            for i in range(diagram.n)
        ):
            return True
    return False
