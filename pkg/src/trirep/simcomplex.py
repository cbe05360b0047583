"""Triangular configurations and the building blocks of the constructions.

A :class:`Complex` is purely combinatorial: vertex ids, triangles as sorted
vertex triples, designated triangles per code coordinate. Coordinates live in
a separate :class:`Embedding` with exact ``Fraction`` entries.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from trirep.exceptions import (
    BridgePreconditionError,
    DimensionError,
    FormatError,
    InvalidTriangleError,
    TunnelError,
)
from trirep.gf2core import BitMat, BitVec, nullspace
from trirep.textio import read_text

# Configure logging
logger = logging.getLogger(__name__)

Point = Tuple[Fraction, ...]
Triangle = Tuple[int, int, int]
EdgeKey = Tuple[int, int]
Chain = Set[int]


class Complex:
    """A 2-dimensional simplicial complex with designated triangles."""

    def __init__(self) -> None:
        self.vertices: List[int] = []
        self.triangles: Dict[int, Triangle] = {}
        self.designated: Dict[int, int] = {}
        self.removed: Set[int] = set()
        self.segments: Set[EdgeKey] = set()
        self._vertex_set: Set[int] = set()
        self._by_triple: Dict[Triangle, int] = {}
        self._next_vertex = 1
        self._next_triangle = 1

    def add_vertex(self, vid: Optional[int] = None) -> int:
        if vid is None:
            vid = self._next_vertex
        if vid in self._vertex_set:
            raise ValueError(f"vertex {vid} already exists")
        self.vertices.append(vid)
        self._vertex_set.add(vid)
        self._next_vertex = max(self._next_vertex, vid + 1)
        return vid

    def has_vertex(self, vid: int) -> bool:
        return vid in self._vertex_set

    def add_triangle(self, a: int, b: int, c: int, tid: Optional[int] = None) -> int:
        triple = tuple(sorted((a, b, c)))
        if len(set(triple)) != 3:
            raise ValueError(f"triangle {triple} repeats a vertex")
        for v in triple:
            if v not in self._vertex_set:
                raise ValueError(f"triangle {triple} uses unknown vertex {v}")
        if triple in self._by_triple:
            raise ValueError(f"triangle {triple} already present as {self._by_triple[triple]}")
        if tid is None:
            tid = self._next_triangle
        if tid in self.triangles or tid in self.removed:
            raise ValueError(f"triangle id {tid} already used")
        self.triangles[tid] = triple  # type: ignore[assignment]
        self._by_triple[triple] = tid  # type: ignore[index]
        self._next_triangle = max(self._next_triangle, tid + 1)
        return tid

    def add_segment(self, a: int, b: int) -> None:
        """Add an isolated edge that belongs to no triangle."""
        for v in (a, b):
            if v not in self._vertex_set:
                raise ValueError(f"segment uses unknown vertex {v}")
        self.segments.add((min(a, b), max(a, b)))

    def remove_triangle(self, tid: int) -> None:
        triple = self.triangle(tid)
        del self.triangles[tid]
        del self._by_triple[triple]
        self.removed.add(tid)

    def triangle(self, tid: int) -> Triangle:
        try:
            return self.triangles[tid]
        except KeyError:
            raise InvalidTriangleError(f"no live triangle with id {tid}") from None

    def find_triangle(self, a: int, b: int, c: int) -> Optional[int]:
        return self._by_triple.get(tuple(sorted((a, b, c))))  # type: ignore[arg-type]

    def triangle_ids(self) -> List[int]:
        """Live triangle ids; this is the column order of the incidence matrix."""
        return list(self.triangles)

    def column_index(self) -> Dict[int, int]:
        return {tid: j for j, tid in enumerate(self.triangles)}

    def edges(self) -> List[EdgeKey]:
        found = set(self.segments)
        for tri in self.triangles.values():
            found.update(triangle_edges(tri))
        return sorted(found)

    def subcomplex(self, tids: Iterable[int]) -> "Complex":
        """The configuration K(T) spanned by the given triangles; ids are kept."""
        sub = Complex()
        chosen = sorted(set(tids))
        vertices = sorted({v for t in chosen for v in self.triangle(t)})
        for v in vertices:
            sub.add_vertex(v)
        for t in chosen:
            sub.add_triangle(*self.triangle(t), tid=t)
        sub.designated = {i: t for i, t in self.designated.items() if t in sub.triangles}
        return sub

    def copy(self) -> "Complex":
        other = Complex()
        for v in self.vertices:
            other.add_vertex(v)
        for tid, tri in self.triangles.items():
            other.add_triangle(*tri, tid=tid)
        other.designated = dict(self.designated)
        other.removed = set(self.removed)
        other.segments = set(self.segments)
        other._next_triangle = max(other._next_triangle, self._next_triangle)
        return other

    def characteristic_vector(self, tids: Iterable[int]) -> BitVec:
        """chi(T) over the live triangles, in column order."""
        index = self.column_index()
        support = []
        for t in tids:
            if t not in index:
                raise InvalidTriangleError(f"no live triangle with id {t}")
            support.append(index[t] + 1)
        return BitVec.from_support(len(index), support)

    def triangles_of(self, v: BitVec) -> List[int]:
        ids = self.triangle_ids()
        return [ids[j - 1] for j in v.support()]

    def __repr__(self) -> str:
        return (
            f"Complex(|V|={len(self.vertices)}, |T|={len(self.triangles)}, "
            f"designated={len(self.designated)})"
        )


class Embedding:
    """Exact rational coordinates for the vertices of a complex."""

    def __init__(self, dimension: int, points: Optional[Dict[int, Point]] = None):
        if dimension not in (3, 4):
            raise DimensionError(f"embeddings live in R^3 or R^4, not R^{dimension}")
        self.dimension = dimension
        # False for projections, which are never validated
        self.certified = True
        self.points: Dict[int, Point] = {}
        for vid, p in (points or {}).items():
            self[vid] = p

    def __getitem__(self, vid: int) -> Point:
        return self.points[vid]

    def __setitem__(self, vid: int, point: Sequence) -> None:
        if len(point) != self.dimension:
            raise DimensionError(
                f"vertex {vid} has {len(point)} coordinates, expected {self.dimension}"
            )
        self.points[vid] = tuple(Fraction(x) for x in point)

    def __contains__(self, vid: object) -> bool:
        return vid in self.points

    def __len__(self) -> int:
        return len(self.points)

    def triangle_points(self, triangle: Triangle) -> List[Point]:
        return [self.points[v] for v in triangle]


def triangle_edges(tri: Sequence[int]) -> List[EdgeKey]:
    a, b, c = sorted(tri)
    return [(a, b), (a, c), (b, c)]


def incidence_matrix(cx: Complex) -> BitMat:
    """Edge x triangle incidence over GF(2); rows sorted edges, columns live triangles."""
    edges = cx.edges()
    row_of = {e: r for r, e in enumerate(edges)}
    rows = [0] * len(edges)
    for j, tri in enumerate(cx.triangles.values()):
        for e in triangle_edges(tri):
            rows[row_of[e]] |= 1 << j
    return BitMat(len(edges), len(cx.triangles), tuple(rows))


def cycle_space_of_complex(cx: Complex) -> List[BitVec]:
    """Kernel basis of the incidence matrix; supports are even subsets."""
    basis = nullspace(incidence_matrix(cx))
    for v in basis:
        if not is_even_subset(cx, cx.triangles_of(v)):
            raise AssertionError("kernel vector with odd edge degree")
    logger.debug(f"cycle space of {cx}: dim {len(basis)}")
    return basis


def edge_degrees(cx: Complex, tids: Iterable[int]) -> Dict[EdgeKey, int]:
    degrees: Dict[EdgeKey, int] = {}
    for t in tids:
        for e in triangle_edges(cx.triangle(t)):
            degrees[e] = degrees.get(e, 0) + 1
    return degrees


def is_even_subset(cx: Complex, tids: Iterable[int]) -> bool:
    """True iff every edge of K(T) lies in an even number of triangles of T."""
    return all(deg % 2 == 0 for deg in edge_degrees(cx, set(tids)).values())


# Subdivided octahedron

# Distinguished face in the plane x2 = 0; its upward sub-triangles are
# symmetric about a line parallel to the x3 axis.
DISTINGUISHED_FACE: Tuple[Point, Point, Point] = (
    (Fraction(0), Fraction(0), Fraction(0)),
    (Fraction(2), Fraction(0), Fraction(0)),
    (Fraction(1), Fraction(0), Fraction(2)),
)
SPHERE_CENTER: Point = (Fraction(1), Fraction(-1), Fraction(2, 3))


@dataclass
class SphereHandle:
    """Ids produced by :func:`add_sphere`."""

    subdivision: int
    designated: List[int] = field(default_factory=list)
    triangles: List[int] = field(default_factory=list)
    vertices: List[int] = field(default_factory=list)


def _add(p: Point, q: Point) -> Point:
    return tuple(a + b for a, b in zip(p, q))


def _sub(p: Point, q: Point) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def _scale(s: Fraction, p: Point) -> Point:
    return tuple(s * a for a in p)


def _dot(p: Point, q: Point) -> Fraction:
    return sum((a * b for a, b in zip(p, q)), Fraction(0))


def designated_capacity(k: int) -> int:
    m = (k - 1) // 2
    return (m + 1) * (m + 2) // 2


def sphere_subdivision(n: int) -> int:
    """Smallest k >= 1 whose subdivided face holds n spaced upward triangles."""
    k = 1
    while designated_capacity(k) < n:
        k += 1
    return k


def designated_positions(k: int) -> List[Tuple[int, int]]:
    """Lattice positions (p, q) of designated upward triangles, top row first."""
    m = (k - 1) // 2
    return [(2 * a, 2 * b) for b in range(m, -1, -1) for a in range(0, m - b + 1)]


def octahedron_faces() -> List[Tuple[Point, Point, Point]]:
    """The eight faces, distinguished face first."""
    p = DISTINGUISHED_FACE
    q = tuple(_sub(_scale(Fraction(2), SPHERE_CENTER), x) for x in p)
    faces = []
    for choice in itertools.product((0, 1), repeat=3):
        faces.append(tuple(p[j] if c == 0 else q[j] for j, c in enumerate(choice)))
    return faces  # type: ignore[return-value]


def add_sphere(
    cx: Complex,
    emb: Embedding,
    n: int,
    offset: Optional[Sequence] = None,
) -> SphereHandle:
    """
    Add a translated copy of the subdivided octahedron S^n.

    Every face is split into k^2 sub-triangles; the first n spaced upward
    sub-triangles of the distinguished face are returned as ``designated``.

    Args:
        cx: Complex to extend
        emb: Embedding in R^3 to extend
        n: Number of designated triangles
        offset: Translation applied to every vertex

    Returns:
        Handle with the new vertex and triangle ids
    """
    if n < 0:
        raise ValueError("sphere_sn needs n >= 0")
    if emb.dimension != 3:
        raise DimensionError("spheres are built in R^3")
    shift: Point = tuple(Fraction(x) for x in (offset or (0, 0, 0)))
    k = sphere_subdivision(n)
    handle = SphereHandle(subdivision=k)
    vertex_at: Dict[Point, int] = {}

    def vertex(point: Point) -> int:
        point = _add(point, shift)
        if point not in vertex_at:
            vid = cx.add_vertex()
            emb[vid] = point
            vertex_at[point] = vid
            handle.vertices.append(vid)
        return vertex_at[point]

    wanted = {pos: i for i, pos in enumerate(designated_positions(k)[:n])}
    designated: Dict[int, int] = {}
    for face_no, (a, b, c) in enumerate(octahedron_faces()):
        ab, ac = _sub(b, a), _sub(c, a)

        def lattice(pp: int, qq: int) -> int:
            return vertex(_add(a, _add(_scale(Fraction(pp, k), ab), _scale(Fraction(qq, k), ac))))

        for qq in range(k):
            for pp in range(k - qq):
                tid = cx.add_triangle(lattice(pp, qq), lattice(pp + 1, qq), lattice(pp, qq + 1))
                handle.triangles.append(tid)
                if face_no == 0 and (pp, qq) in wanted:
                    designated[wanted[(pp, qq)]] = tid
                if pp + qq <= k - 2:
                    tid = cx.add_triangle(
                        lattice(pp + 1, qq), lattice(pp + 1, qq + 1), lattice(pp, qq + 1)
                    )
                    handle.triangles.append(tid)
    handle.designated = [designated[i] for i in range(n)]
    logger.debug(
        f"sphere S^{n}: k={k}, {len(handle.triangles)} triangles, offset {shift}"
    )
    return handle


def sphere_sn(n: int) -> Tuple[Complex, Embedding]:
    """S^n on its own, with designated triangles labelled 1..n."""
    cx = Complex()
    emb = Embedding(3)
    handle = add_sphere(cx, emb, n)
    cx.designated = {i: tid for i, tid in enumerate(handle.designated, start=1)}
    return cx, emb


# Tunnels


def tunnel(cx: Complex, cycle_a: Sequence[int], cycle_b: Sequence[int]) -> List[int]:
    """
    Add the six side triangles of the prism between two 3-cycles.

    ``cycle_a[j]`` is matched with ``cycle_b[j]``. Both cycles are rotated so
    that cycle A starts at its lowest vertex id, then each side quad
    (a_j, a_j+1, b_j+1, b_j) is split along a_j -- b_j+1.

    Returns:
        Ids of the six new triangles
    """
    a, b = list(cycle_a), list(cycle_b)
    if len(a) != 3 or len(b) != 3 or len(set(a)) != 3 or len(set(b)) != 3:
        raise TunnelError(f"tunnel needs two 3-cycles, got {a} and {b}")
    shared = set(a) & set(b)
    if shared:
        raise TunnelError(f"cycles share vertices {sorted(shared)}")
    for v in a + b:
        if not cx.has_vertex(v):
            raise TunnelError(f"unknown vertex {v}")
    r = a.index(min(a))
    a, b = a[r:] + a[:r], b[r:] + b[:r]

    new = []
    for j in range(3):
        nxt = (j + 1) % 3
        for tri in ((a[j], a[nxt], b[nxt]), (a[j], b[nxt], b[j])):
            if cx.find_triangle(*tri) is not None:
                raise TunnelError(f"tunnel triangle {sorted(tri)} already present")
            new.append(cx.add_triangle(*tri))
    return new


def _project(w: Point, direction: Point, through: Point, normal: Point) -> Tuple[Point, Fraction]:
    t = _dot(_sub(through, w), normal) / _dot(direction, normal)
    return _add(w, _scale(t, direction)), t


def tunnel_bridge(
    cx: Complex,
    emb: Embedding,
    src: int,
    dst: int,
    depth: Fraction,
    rise: Fraction,
) -> List[int]:
    """
    Route the boundary of ``src`` to the boundary of ``dst`` through five tunnels.

    The tube leaves the plane x2 = 0 along +x2 to ``depth``, climbs ``rise``
    along +x3, runs along x1 to above ``dst``, descends and returns along -x2.
    Waypoint triangles sit on the mitre planes of the corners, so every leg
    is a prism with planar sides. The two turns in the x1/x3 plane mirror
    the cross-section in x1; ``dst`` must equal that mirror image.

    Args:
        cx: Complex holding both triangles
        emb: Embedding in R^3, extended with the 12 waypoint vertices
        src: Triangle where the tube starts
        dst: Triangle where the tube ends
        depth: x2 distance of the across leg from the face plane
        rise: x3 height of the across leg above the source triangle

    Returns:
        Ids of the 30 new triangles
    """
    if emb.dimension != 3:
        raise DimensionError("tunnel bridges are built in R^3")
    src_ids, dst_ids = list(cx.triangle(src)), list(cx.triangle(dst))
    src_pts = emb.triangle_points(tuple(src_ids))  # type: ignore[arg-type]
    dst_pts = emb.triangle_points(tuple(dst_ids))  # type: ignore[arg-type]
    if any(p[1] != 0 for p in src_pts + dst_pts):
        raise BridgePreconditionError("bridge end triangles must lie in the plane x2 = 0")

    xs = [p[0] for p in src_pts]
    axis = (min(xs) + max(xs)) / 2
    base = min(p[2] for p in src_pts)
    shift = (min(p[0] for p in dst_pts) + max(p[0] for p in dst_pts)) / 2 - axis
    if shift == 0:
        raise BridgePreconditionError("bridge end triangles coincide in x1")
    depth, rise = Fraction(depth), Fraction(rise)
    sign = Fraction(1 if shift > 0 else -1)

    zero = Fraction(0)
    e1 = (sign, zero, zero)
    e2 = (zero, Fraction(1), zero)
    e3 = (zero, zero, Fraction(1))
    neg = lambda p: _scale(Fraction(-1), p)  # noqa: E731
    legs = [e2, e3, e1, neg(e3), neg(e2)]

    corners = [(axis, zero, base)]
    for leg, length in zip(legs, (depth, rise, abs(shift), rise, depth)):
        corners.append(_add(corners[-1], _scale(length, leg)))
    normals = [_add(legs[j], legs[j + 1]) for j in range(4)] + [legs[4]]

    waypoints = [src_pts]
    for j in range(5):
        layer = []
        for w in waypoints[-1]:
            projected, t = _project(w, legs[j], corners[j + 1], normals[j])
            if t <= 0:
                raise BridgePreconditionError(
                    f"bridge leg {j + 1} has nonpositive length; depth or rise too small"
                )
            layer.append(projected)
        waypoints.append(layer)

    end_of = {p: v for v, p in zip(dst_ids, dst_pts)}
    try:
        matched = [end_of[p] for p in waypoints[5]]
    except KeyError:
        raise BridgePreconditionError(
            f"triangle {dst} is not the mirrored translate of triangle {src}"
        ) from None

    rings = [src_ids]
    for layer in waypoints[1:5]:
        ring = []
        for p in layer:
            vid = cx.add_vertex()
            emb[vid] = p
            ring.append(vid)
        rings.append(ring)
    rings.append(matched)

    new: List[int] = []
    for j in range(5):
        new.extend(tunnel(cx, rings[j], rings[j + 1]))
    logger.debug(
        f"tunnel bridge {src} -> {dst}: depth {depth}, rise {rise}, {len(new)} triangles"
    )
    return new


# Complex text format


def _fmt(x: Fraction) -> str:
    return str(x)


def format_complex(cx: Complex, emb: Embedding) -> str:
    lines = [f"# trirep complex, R^{emb.dimension}"]
    for v in cx.vertices:
        coords = " ".join(_fmt(x) for x in emb[v])
        lines.append(f"v {v} {coords}")
    for a, b in sorted(cx.segments):
        lines.append(f"e {a} {b}")
    for tid, (a, b, c) in cx.triangles.items():
        lines.append(f"t {tid} {a} {b} {c}")
    for coord in sorted(cx.designated):
        lines.append(f"designate {coord} {cx.designated[coord]}")
    return "\n".join(lines) + "\n"


def parse_complex(text: str) -> Tuple[Complex, Embedding]:
    """
    Parse the complex format.

    Designations may name triangles that are not present; those ids are
    recorded as removed so that callers can report them.
    """
    cx = Complex()
    points: Dict[int, Point] = {}
    dimension: Optional[int] = None
    pending: List[Tuple[int, int, int]] = []

    def ints(parts: List[str], lineno: int) -> List[int]:
        try:
            return [int(x) for x in parts]
        except ValueError as e:
            raise FormatError(f"expected integer ids: {e}", lineno) from e

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        try:
            if kind == "v":
                if len(parts) not in (5, 6):
                    raise FormatError("vertex line needs 3 or 4 coordinates", lineno)
                vid = ints(parts[1:2], lineno)[0]
                coords = tuple(Fraction(x) for x in parts[2:])
                if dimension is None:
                    dimension = len(coords)
                elif len(coords) != dimension:
                    raise FormatError(f"expected {dimension} coordinates", lineno)
                cx.add_vertex(vid)
                points[vid] = coords
            elif kind == "e" and len(parts) == 3:
                a, b = ints(parts[1:], lineno)
                cx.add_segment(a, b)
            elif kind == "t" and len(parts) == 5:
                tid, a, b, c = ints(parts[1:], lineno)
                cx.add_triangle(a, b, c, tid=tid)
            elif kind == "designate" and len(parts) == 3:
                coord, tid = ints(parts[1:], lineno)
                if coord in cx.designated:
                    raise FormatError(f"coordinate {coord} designated twice", lineno)
                cx.designated[coord] = tid
                pending.append((lineno, coord, tid))
            else:
                raise FormatError(f"unrecognized line {line!r}", lineno)
        except (ValueError, ZeroDivisionError) as e:
            if isinstance(e, FormatError):
                raise
            raise FormatError(str(e), lineno) from e

    for _, _, tid in pending:
        if tid not in cx.triangles:
            cx.removed.add(tid)
    return cx, Embedding(dimension or 3, points)


def read_complex(path: Union[str, Path]) -> Tuple[Complex, Embedding]:
    return parse_complex(read_text(path))


def write_complex(cx: Complex, emb: Embedding, path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_complex(cx, emb))
