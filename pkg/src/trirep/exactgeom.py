"""Exact rational predicates on embedded triangular configurations.

Every decision here is made with ``fractions.Fraction``; floats appear only
when rendering OFF files.
"""

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from trirep.exceptions import (
    DegenerateTriangleError,
    DimensionError,
    PointOnComplexError,
    RayAdmissibilityError,
)
from trirep.simcomplex import Complex, Embedding, EdgeKey, Point, triangle_edges

# Configure logging
logger = logging.getLogger(__name__)

DISJOINT = "disjoint"
SHARED_VERTEX = "shared-vertex"
SHARED_EDGE = "shared-edge"
IDENTICAL = "identical"
IMPROPER = "improper"

EXPECTED_KIND = {0: DISJOINT, 1: SHARED_VERTEX, 2: SHARED_EDGE, 3: IDENTICAL}

Vector = Tuple[Fraction, ...]


def to_point(values: Sequence) -> Point:
    """Coerce ints, strings like "1/3" and Fractions to an exact point."""
    return tuple(Fraction(v) for v in values)


# Small exact linear algebra


def _sub(p: Sequence[Fraction], q: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(p, q))


def _add(p: Sequence[Fraction], q: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(p, q))


def _scale(s: Fraction, p: Sequence[Fraction]) -> Vector:
    return tuple(s * a for a in p)


def _dot(p: Sequence[Fraction], q: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(p, q)), Fraction(0))


def _cross(p: Sequence[Fraction], q: Sequence[Fraction]) -> Vector:
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


def _rref(rows: List[List[Fraction]], n_cols: int) -> Tuple[List[List[Fraction]], List[int]]:
    work = [list(r) for r in rows]
    pivots: List[int] = []
    top = 0
    for col in range(n_cols):
        pivot = next((r for r in range(top, len(work)) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[top], work[pivot] = work[pivot], work[top]
        lead = work[top][col]
        work[top] = [x / lead for x in work[top]]
        for r in range(len(work)):
            if r != top and work[r][col] != 0:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[top])]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


def rational_nullspace(columns: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Kernel basis of the matrix whose columns are given."""
    n_cols = len(columns)
    if n_cols == 0:
        return []
    n_rows = len(columns[0])
    rows = [[columns[j][i] for j in range(n_cols)] for i in range(n_rows)]
    reduced, pivots = _rref(rows, n_cols)
    basis = []
    for free in (c for c in range(n_cols) if c not in pivots):
        v = [Fraction(0)] * n_cols
        v[free] = Fraction(1)
        for row, col in zip(reduced, pivots):
            v[col] = -row[free]
        basis.append(v)
    return basis


def solve(columns: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """Unique solution of sum x_j columns[j] = rhs, or None if none or not unique."""
    n_cols = len(columns)
    rows = [[columns[j][i] for j in range(n_cols)] + [rhs[i]] for i in range(len(rhs))]
    reduced, pivots = _rref(rows, n_cols + 1)
    if n_cols in pivots or len(pivots) != n_cols:
        return None
    return [row[n_cols] for row in reduced]


def _nonnegative_kernel_vector(columns: Sequence[Sequence[Fraction]]) -> Optional[List[Fraction]]:
    """
    A nonzero x >= 0 with sum x_j columns[j] = 0, if one exists.

    A minimal-support solution spans a one-dimensional kernel of its columns
    with entries of one sign, so enumerating column subsets is complete.
    """
    kernel = rational_nullspace(columns)
    if not kernel:
        return None
    if len(kernel) == 1:
        v = kernel[0]
        if all(x >= 0 for x in v):
            return v
        if all(x <= 0 for x in v):
            return [-x for x in v]
        return None
    n = len(columns)
    for size in range(2, n + 1):
        for subset in itertools.combinations(range(n), size):
            sub = rational_nullspace([columns[j] for j in subset])
            if len(sub) != 1:
                continue
            v = sub[0]
            if all(x > 0 for x in v) or all(x < 0 for x in v):
                full = [Fraction(0)] * n
                sign = 1 if v[0] > 0 else -1
                for j, x in zip(subset, v):
                    full[j] = sign * x
                return full
    return None


# Intersection classification


@dataclass(frozen=True)
class IntersectionVerdict:
    kind: str
    witness: Tuple[Point, ...] = ()

    @property
    def proper(self) -> bool:
        return self.kind != IMPROPER


def check_nondegenerate(tri: Sequence[Point]) -> None:
    a, b, c = tri
    if len(rational_nullspace([_sub(b, a), _sub(c, a)])) != 0:
        raise DegenerateTriangleError(f"triangle {tri} is degenerate")


def barycentric(x: Point, tri: Sequence[Point]) -> Optional[Tuple[Fraction, Fraction]]:
    """(u, v) with x = a + u(b - a) + v(c - a), or None when x is off the plane."""
    a, b, c = tri
    sol = solve([_sub(b, a), _sub(c, a)], _sub(x, a))
    return (sol[0], sol[1]) if sol is not None else None


def in_triangle(x: Point, tri: Sequence[Point]) -> bool:
    uv = barycentric(x, tri)
    return uv is not None and uv[0] >= 0 and uv[1] >= 0 and uv[0] + uv[1] <= 1


def _bounds(tri: Sequence[Point]) -> Tuple[Vector, Vector]:
    return (
        tuple(min(p[i] for p in tri) for i in range(len(tri[0]))),
        tuple(max(p[i] for p in tri) for i in range(len(tri[0]))),
    )


def _boxes_overlap(b1: Tuple[Vector, Vector], b2: Tuple[Vector, Vector]) -> bool:
    return all(lo1 <= hi2 and lo2 <= hi1 for lo1, hi1, lo2, hi2 in zip(b1[0], b1[1], b2[0], b2[1]))


def _orthogonal_to_triangle(d: Vector, tri: Sequence[Point]) -> Vector:
    a, b, c = tri
    u = _sub(b, a)
    w = _sub(c, a)
    w = _sub(w, _scale(_dot(w, u) / _dot(u, u), u))
    for e in (u, w):
        d = _sub(d, _scale(_dot(d, e) / _dot(e, e), e))
    return d


def _separated(t1: Sequence[Point], t2: Sequence[Point]) -> bool:
    """Cheap exact check for a separating direction."""
    c1 = _scale(Fraction(1, 3), _add(_add(t1[0], t1[1]), t1[2]))
    c2 = _scale(Fraction(1, 3), _add(_add(t2[0], t2[1]), t2[2]))
    d = _sub(c2, c1)
    if not any(d):
        return False
    for direction in (d, _orthogonal_to_triangle(d, t1), _orthogonal_to_triangle(d, t2)):
        if not any(direction):
            continue
        if max(_dot(direction, p) for p in t1) < min(_dot(direction, p) for p in t2):
            return True
    return False


def _classify_disjoint(t1: Sequence[Point], t2: Sequence[Point]) -> IntersectionVerdict:
    if not _boxes_overlap(_bounds(t1), _bounds(t2)) or _separated(t1, t2):
        return IntersectionVerdict(DISJOINT)
    # sum x_i p_i = sum y_j q_j with sum x_i = sum y_j
    one = Fraction(1)
    columns = [tuple(p) + (one,) for p in t1]
    columns += [tuple(-x for x in p) + (-one,) for p in t2]
    x = _nonnegative_kernel_vector(columns)
    if x is None:
        return IntersectionVerdict(DISJOINT)
    total = sum(x[:3], Fraction(0))
    point = tuple(sum((x[j] * t1[j][i] for j in range(3)), Fraction(0)) / total for i in range(len(t1[0])))
    return IntersectionVerdict(IMPROPER, (point,))


def _classify_vertex(p: Point, others1: List[Point], others2: List[Point]) -> IntersectionVerdict:
    a = [_sub(q, p) for q in others1]
    b = [_sub(q, p) for q in others2]
    x = _nonnegative_kernel_vector(a + [_scale(Fraction(-1), v) for v in b])
    if x is None:
        return IntersectionVerdict(SHARED_VERTEX, (p,))
    w = _add(_scale(x[0], a[0]), _scale(x[1], a[1]))
    t = 1 / max(x[0] + x[1], x[2] + x[3])
    return IntersectionVerdict(IMPROPER, (_add(p, _scale(t, w)),))


def _classify_edge(p: Point, q: Point, a: Point, b: Point) -> IntersectionVerdict:
    sol = solve([_sub(q, p), _sub(a, p)], _sub(b, p))
    if sol is None or sol[1] < 0:
        return IntersectionVerdict(SHARED_EDGE, (p, q))
    # both triangles lie on the same side of pq in a common plane
    m = _scale(Fraction(1, 2), _add(p, q))
    t = Fraction(1, 2)
    while True:
        y = _add(m, _scale(t, _sub(a, m)))
        if in_triangle(y, (p, q, b)):
            return IntersectionVerdict(IMPROPER, (y,))
        t /= 2


def classify_intersection(t1: Sequence[Sequence], t2: Sequence[Sequence]) -> IntersectionVerdict:
    """
    Classify how two nondegenerate triangles meet.

    Shared faces are detected from equal vertex coordinates. The verdict is
    ``improper`` exactly when the intersection is not the convex hull of the
    shared vertices.

    Args:
        t1: Three points in R^3 or R^4
        t2: Three points of the same dimension

    Returns:
        The verdict, with the shared points or an offending point as witness
    """
    t1 = [to_point(p) for p in t1]
    t2 = [to_point(p) for p in t2]
    dims = {len(p) for p in t1 + t2}
    if len(dims) != 1:
        raise DimensionError(f"mixed point dimensions {sorted(dims)}")
    check_nondegenerate(t1)
    check_nondegenerate(t2)

    shared = [p for p in t1 if p in t2]
    if len(shared) == 3:
        return IntersectionVerdict(IDENTICAL, tuple(shared))
    if len(shared) == 2:
        p, q = shared
        a = next(x for x in t1 if x not in shared)
        b = next(x for x in t2 if x not in shared)
        return _classify_edge(p, q, a, b)
    if len(shared) == 1:
        p = shared[0]
        return _classify_vertex(p, [x for x in t1 if x != p], [x for x in t2 if x != p])
    return _classify_disjoint(t1, t2)


# Whole-embedding validation


@dataclass
class Violation:
    triangles: Tuple[int, ...]
    kind: str
    detail: str = ""


@dataclass
class EmbeddingReport:
    violations: List[Violation] = field(default_factory=list)
    pairs_checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict:
        return {
            "passed": self.passed,
            "pairs_checked": self.pairs_checked,
            "violations": [
                {"triangles": list(v.triangles), "kind": v.kind, "detail": v.detail}
                for v in self.violations
            ],
        }


def _candidate_pairs(boxes: Dict[int, Tuple[Vector, Vector]]) -> List[Tuple[int, int]]:
    """Pairs with overlapping bounding boxes, by sweep along the first axis."""
    order = sorted(boxes, key=lambda t: boxes[t][0][0])
    active: List[int] = []
    pairs = []
    for t in order:
        lo = boxes[t][0][0]
        active = [s for s in active if boxes[s][1][0] >= lo]
        for s in active:
            if _boxes_overlap(boxes[s], boxes[t]):
                pairs.append((min(s, t), max(s, t)))
        active.append(t)
    return pairs


def _check_pairs(
    work: List[Tuple[int, int, int, Tuple[Point, ...], Tuple[Point, ...]]]
) -> List[Violation]:
    found = []
    for s, t, n_shared, ps, pt in work:
        verdict = classify_intersection(ps, pt)
        expected = EXPECTED_KIND[n_shared]
        if verdict.kind != expected:
            witness = ", ".join(str(tuple(str(x) for x in w)) for w in verdict.witness)
            found.append(
                Violation((s, t), verdict.kind, f"expected {expected}; witness {witness}")
            )
    return found


def validate_embedding(cx: Complex, emb: Embedding, workers: int = 1) -> EmbeddingReport:
    """
    Check that the coordinates realize the complex as a simplicial complex.

    Args:
        cx: The combinatorial complex
        emb: Coordinates for its vertices
        workers: Process count for the pairwise checks; 1 runs in-process

    Returns:
        Report listing every violation, sorted by triangle ids
    """
    report = EmbeddingReport()
    used = sorted({v for tri in cx.triangles.values() for v in tri})
    missing = [v for v in used if v not in emb]
    for v in missing:
        report.violations.append(Violation((), "missing-point", f"vertex {v} has no coordinates"))
    if missing:
        return report

    seen: Dict[Point, int] = {}
    for v in used:
        p = emb[v]
        if p in seen:
            report.violations.append(
                Violation((), "duplicate-point", f"vertices {seen[p]} and {v} coincide")
            )
        seen[p] = v

    points: Dict[int, Tuple[Point, ...]] = {}
    for tid, tri in cx.triangles.items():
        pts = tuple(emb[v] for v in tri)
        try:
            check_nondegenerate(pts)
        except DegenerateTriangleError as e:
            report.violations.append(Violation((tid,), "degenerate", str(e)))
            continue
        points[tid] = pts
    if report.violations:
        return report

    boxes = {tid: _bounds(pts) for tid, pts in points.items()}
    work = []
    for s, t in _candidate_pairs(boxes):
        n_shared = len(set(cx.triangles[s]) & set(cx.triangles[t]))
        work.append((s, t, n_shared, points[s], points[t]))
    report.pairs_checked = len(work)
    logger.debug(
        f"validating {len(points)} triangles: {len(work)} candidate pairs, {workers} worker(s)"
    )

    if workers > 1 and len(work) > workers:
        chunks = [work[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for found in pool.map(_check_pairs, chunks):
                report.violations.extend(found)
    else:
        report.violations.extend(_check_pairs(work))
    report.violations.sort(key=lambda v: v.triangles)
    return report


# Ray parity


@dataclass
class RayProbe:
    base: Point
    direction: Point
    interior_hits: int = 0
    edge_hits: int = 0

    @property
    def parity(self) -> int:
        return (self.interior_hits + self.edge_hits) % 2


def ray_probe(cx: Complex, emb: Embedding, x: Sequence, r: Sequence) -> RayProbe:
    """
    Count crossings of the half-line x + t r, t > 0, with the complex.

    Interior crossings count one each. A crossed edge e counts min(n_e, m_e),
    where n_e and m_e are the numbers of triangles at e on either side of the
    plane through e and the ray.

    Raises:
        PointOnComplexError: if x lies on a triangle
        RayAdmissibilityError: if the ray is parallel to a triangle or edge,
            or passes through a vertex
    """
    if emb.dimension != 3:
        raise DimensionError("ray parity is defined in R^3")
    x, r = to_point(x), to_point(r)
    if not any(r):
        raise RayAdmissibilityError("zero direction")
    probe = RayProbe(base=x, direction=r)

    for e in cx.edges():
        if not any(_cross(r, _sub(emb[e[1]], emb[e[0]]))):
            raise RayAdmissibilityError(f"direction parallel to edge {e}")

    incident: Dict[EdgeKey, List[int]] = {}
    for tri in cx.triangles.values():
        for e in triangle_edges(tri):
            incident.setdefault(e, []).append(next(v for v in tri if v not in e))

    hit_edges = set()
    for tid, tri in cx.triangles.items():
        a, b, c = (emb[v] for v in tri)
        if in_triangle(x, (a, b, c)):
            raise PointOnComplexError(f"base point lies on triangle {tid}")
        sol = solve([r, _sub(a, b), _sub(a, c)], _sub(a, x))
        if sol is None:
            raise RayAdmissibilityError(f"direction parallel to triangle {tid}")
        t, u, v = sol
        if t <= 0 or u < 0 or v < 0 or u + v > 1:
            continue
        zeros = [u == 0, v == 0, u + v == 1]
        if sum(zeros) >= 2:
            raise RayAdmissibilityError(f"ray passes through a vertex of triangle {tid}")
        if not any(zeros):
            probe.interior_hits += 1
            continue
        ia, ib, ic = tri
        if u == 0:
            hit_edges.add((min(ia, ic), max(ia, ic)))
        elif v == 0:
            hit_edges.add((min(ia, ib), max(ia, ib)))
        else:
            hit_edges.add((min(ib, ic), max(ib, ic)))

    for e in sorted(hit_edges):
        p, q = emb[e[0]], emb[e[1]]
        normal = _cross(_sub(q, p), r)
        sides = [_dot(normal, _sub(emb[w], p)) for w in incident[e]]
        probe.edge_hits += min(sum(1 for s in sides if s > 0), sum(1 for s in sides if s < 0))
    return probe


def ray_parity(cx: Complex, emb: Embedding, x: Sequence, r: Sequence) -> int:
    """Parity of the crossings of the ray from x in direction r."""
    return ray_probe(cx, emb, x, r).parity


def random_direction(rng: np.random.Generator, scale: int = 1000) -> Point:
    """A random nonzero rational direction."""
    while True:
        d = tuple(Fraction(int(v), scale) for v in rng.integers(-scale, scale + 1, size=3))
        if any(d):
            return d


def point_parity(
    cx: Complex,
    emb: Embedding,
    x: Sequence,
    rng: Optional[np.random.Generator] = None,
    attempts: int = 32,
) -> int:
    """Ray parity of x, re-sampling the direction until it is admissible."""
    rng = rng if rng is not None else np.random.default_rng(0)
    for _ in range(attempts):
        try:
            return ray_parity(cx, emb, x, random_direction(rng))
        except RayAdmissibilityError as e:
            logger.debug(f"resampling ray direction: {e}")
    raise RayAdmissibilityError(f"no admissible direction found in {attempts} attempts")


# Mesh export


def project_r4(emb: Embedding, matrix: Optional[Sequence[Sequence]] = None) -> Embedding:
    """
    Map an R^4 embedding to R^3 by a rational linear map.

    The default drops the fourth coordinate. The result is marked as not
    certified: projections may create intersections and are never validated.
    """
    if emb.dimension != 4:
        raise DimensionError(f"project_r4 needs an R^4 embedding, got R^{emb.dimension}")
    if matrix is None:
        matrix = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]
    rows = [to_point(row) for row in matrix]
    if len(rows) != 3 or any(len(row) != 4 for row in rows):
        raise DimensionError("projection matrix must be 3 x 4")
    out = Embedding(3, {v: tuple(_dot(row, p) for row in rows) for v, p in emb.points.items()})
    out.certified = False
    return out


def export_off(cx: Complex, emb: Embedding) -> bytes:
    """OFF mesh of the triangles; vertices in increasing id order."""
    if emb.dimension != 3:
        raise DimensionError(f"OFF export needs R^3, got R^{emb.dimension}; project first")
    vertices = sorted({v for tri in cx.triangles.values() for v in tri})
    index = {v: i for i, v in enumerate(vertices)}
    lines = ["OFF", f"{len(vertices)} {len(cx.triangles)} 0"]
    for v in vertices:
        lines.append(" ".join(f"{float(x):.12g}" for x in emb[v]))
    for a, b, c in cx.triangles.values():
        lines.append(f"3 {index[a]} {index[b]} {index[c]}")
    if not getattr(emb, "certified", True):
        lines.append("# non-certified projection")
    return ("\n".join(lines) + "\n").encode("ascii")
