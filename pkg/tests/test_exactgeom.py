"""Tests for exact intersection predicates, validation, ray parity and export."""

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from trirep.builders import build_r3
from trirep.codealg import even_weight_code
from trirep.exactgeom import (
    DISJOINT,
    IDENTICAL,
    IMPROPER,
    SHARED_EDGE,
    SHARED_VERTEX,
    classify_intersection,
    export_off,
    in_triangle,
    point_parity,
    project_r4,
    ray_parity,
    ray_probe,
    rational_nullspace,
    solve,
    validate_embedding,
)
from trirep.exceptions import (
    DegenerateTriangleError,
    DimensionError,
    PointOnComplexError,
    RayAdmissibilityError,
)
from trirep.gf2core import BitVec
from trirep.simcomplex import Embedding, sphere_sn


def frac_point(*values):
    return tuple(Fraction(x) for x in values)


def _parities(cx, emb, x, seeds=range(5)):
    return {point_parity(cx, emb, x, rng=np.random.default_rng(seed)) for seed in seeds}


def _normal(cx, emb, tid):
    a, b, c = emb.triangle_points(cx.triangle(tid))
    n = tuple(
        (b[i] - a[i]) * (c[j] - a[j]) - (b[j] - a[j]) * (c[i] - a[i])
        for i, j in ((1, 2), (2, 0), (0, 1))
    )
    scale = max(abs(x) for x in n)
    return tuple(x / scale for x in n)


def _centroid(cx, emb, tid):
    points = emb.triangle_points(cx.triangle(tid))
    return tuple(sum(p[i] for p in points) / 3 for i in range(3))


# Test rational linear algebra helpers
def test_rational_solve():
    cols = [frac_point(1, 0, 0), frac_point(0, 2, 0)]
    assert solve(cols, frac_point(3, 4, 0)) == [3, 2]
    assert solve(cols, frac_point(0, 0, 1)) is None
    assert solve([frac_point(1, 1), frac_point(2, 2)], frac_point(1, 1)) is None
    assert rational_nullspace([frac_point(1, 1), frac_point(2, 2)]) == [[-2, 1]]


# Test disjoint triangles
def test_classify_disjoint():
    t1 = [(0, 0, 0), (1, 0, 0), (0, 1, 0)]
    t2 = [(0, 0, 1), (1, 0, 1), (0, 1, 1)]
    verdict = classify_intersection(t1, t2)
    assert verdict.kind == DISJOINT
    assert verdict.proper


# Test a proper shared vertex
def test_classify_shared_vertex():
    t1 = [(0, 0, 0), (1, 0, 0), (0, 1, 0)]
    t2 = [(0, 0, 0), (-1, 0, 0), (0, 0, 1)]
    verdict = classify_intersection(t1, t2)
    assert verdict.kind == SHARED_VERTEX
    assert verdict.witness == (frac_point(0, 0, 0),)


# Test a shared vertex where the triangles also overlap
def test_classify_shared_vertex_overlap():
    t1 = [(0, 0, 0), (2, 0, 0), (0, 2, 0)]
    t2 = [(0, 0, 0), (1, 2, 0), (2, 1, 0)]
    verdict = classify_intersection(t1, t2)
    assert verdict.kind == IMPROPER
    (w,) = verdict.witness
    assert in_triangle(w, [frac_point(*p) for p in t1])
    assert in_triangle(w, [frac_point(*p) for p in t2])


# Test shared edges on opposite and on the same side
def test_classify_shared_edge():
    t1 = [(0, 0, 0), (1, 0, 0), (0, 1, 0)]
    assert classify_intersection(t1, [(0, 0, 0), (1, 0, 0), (0, -1, 0)]).kind == SHARED_EDGE
    assert classify_intersection(t1, [(0, 0, 0), (1, 0, 0), (0, 0, 1)]).kind == SHARED_EDGE

    folded = [(0, 0, 0), (1, 0, 0), (1, 1, 0)]
    verdict = classify_intersection(t1, folded)
    assert verdict.kind == IMPROPER
    (w,) = verdict.witness
    assert in_triangle(w, [frac_point(*p) for p in t1])
    assert in_triangle(w, [frac_point(*p) for p in folded])


# Test identical triangles
def test_classify_identical():
    t = [(0, 0, 0), (1, 0, 0), (0, 1, 0)]
    assert classify_intersection(t, list(reversed(t))).kind == IDENTICAL


# Test overlapping coplanar triangles
def test_classify_coplanar_overlap():
    t1 = [(0, 0, 0), (2, 0, 0), (0, 2, 0)]
    t2 = [(Fraction(1, 2), Fraction(1, 2), 0), (3, Fraction(1, 2), 0), (Fraction(1, 2), 3, 0)]
    verdict = classify_intersection(t1, t2)
    assert verdict.kind == IMPROPER
    (w,) = verdict.witness
    assert in_triangle(w, [frac_point(*p) for p in t1])
    assert in_triangle(w, [frac_point(*p) for p in t2])


# Test triangles crossing in a single point of R^4
def test_classify_r4_crossing():
    t1 = [(-1, -1, 0, 0), (2, -1, 0, 0), (-1, 2, 0, 0)]
    t2 = [(0, 0, -1, -1), (0, 0, 2, -1), (0, 0, -1, 2)]
    verdict = classify_intersection(t1, t2)
    assert verdict.kind == IMPROPER
    assert verdict.witness == (frac_point(0, 0, 0, 0),)

    shifted = [(x, y, z, w + 5) for x, y, z, w in t2]
    assert classify_intersection(t1, shifted).kind == DISJOINT


# Test a triangle piercing another
def test_classify_piercing():
    t1 = [(0, 0, 0), (4, 0, 0), (0, 4, 0)]
    t2 = [(1, 1, -1), (1, 1, 1), (2, 2, 1)]
    verdict = classify_intersection(t1, t2)
    assert verdict.kind == IMPROPER


# Test input checks
def test_classify_errors():
    with pytest.raises(DegenerateTriangleError):
        classify_intersection([(0, 0, 0), (1, 1, 1), (2, 2, 2)], [(0, 0, 1), (1, 0, 1), (0, 1, 1)])
    with pytest.raises(DimensionError):
        classify_intersection([(0, 0, 0), (1, 0, 0), (0, 1, 0)], [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0)])


# Test validation of the octahedron
def test_validate_octahedron(octahedron):
    cx, emb = octahedron
    report = validate_embedding(cx, emb)
    assert report.passed
    assert report.pairs_checked > 0
    assert report.to_dict()["passed"] is True


# Test a flattened octahedron is rejected
def test_validate_folded_octahedron(octahedron):
    cx, emb = octahedron
    emb[5] = (1, 1, 0)
    report = validate_embedding(cx, emb)
    assert not report.passed
    assert all(v.kind == IMPROPER for v in report.violations)
    assert report.violations == sorted(report.violations, key=lambda v: v.triangles)


# Test structural violations
def test_validate_structural(octahedron):
    cx, emb = octahedron
    emb[2] = (1, 0, 0)
    report = validate_embedding(cx, emb)
    assert [v.kind for v in report.violations][0] == "duplicate-point"

    cx2, emb2 = sphere_sn(0)
    del emb2.points[1]
    assert validate_embedding(cx2, emb2).violations[0].kind == "missing-point"


# Test validation in worker processes agrees
def test_validate_workers():
    cx, emb = sphere_sn(1)
    assert validate_embedding(cx, emb, workers=2).passed


# Test crossings from inside and outside the octahedron
def test_ray_parity_octahedron(octahedron):
    cx, emb = octahedron
    r = frac_point(Fraction(1, 3), Fraction(1, 5), Fraction(1, 7))
    assert ray_parity(cx, emb, (0, 0, 0), r) == 1
    assert ray_parity(cx, emb, (5, 5, 5), r) == 0


# Test a ray through an edge between two triangles
def test_ray_through_edge(octahedron):
    cx, emb = octahedron
    x = frac_point(0, 0, Fraction(-1, 10))
    r = frac_point(Fraction(1, 2), Fraction(1, 2), Fraction(1, 10))
    probe = ray_probe(cx, emb, x, r)
    assert probe.interior_hits == 0
    assert probe.edge_hits == 1
    assert probe.parity == 1


# Test a ray touching an edge from outside
def test_ray_tangent_to_edge(octahedron):
    cx, emb = octahedron
    x = frac_point(Fraction(2, 5), Fraction(2, 5), -1)
    r = frac_point(Fraction(1, 10), Fraction(1, 10), 1)
    probe = ray_probe(cx, emb, x, r)
    assert probe.edge_hits == 0
    assert probe.parity == 0


# Test inadmissible rays
def test_ray_rejections(octahedron):
    cx, emb = octahedron
    with pytest.raises(RayAdmissibilityError):
        ray_parity(cx, emb, (0, 0, 0), (1, -1, 0))
    with pytest.raises(RayAdmissibilityError):
        ray_parity(cx, emb, (0, 0, 0), (0, 0, 0))
    with pytest.raises(RayAdmissibilityError):
        ray_parity(cx, emb, (5, 0, 0), (-1, 0, 0))
    with pytest.raises(PointOnComplexError):
        ray_parity(cx, emb, frac_point(Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)), (1, 2, 4))


# Test parity does not depend on the direction
def test_ray_parity_direction_invariance():
    cx, emb = sphere_sn(1)
    inside = (1, -1, Fraction(2, 3))
    outside = (1, 1, 1)
    for seed in range(5):
        rng = np.random.default_rng(seed)
        assert point_parity(cx, emb, inside, rng=rng) == 1
        assert point_parity(cx, emb, outside, rng=rng) == 0


# Test parity flips across a face
def test_ray_parity_separates(octahedron):
    cx, emb = octahedron
    eps = Fraction(1, 1000)
    third = Fraction(1, 3)
    inside = (third - eps, third - eps, third - eps)
    outside = (third + eps, third + eps, third + eps)
    assert point_parity(cx, emb, inside, rng=np.random.default_rng(1)) == 1
    assert point_parity(cx, emb, outside, rng=np.random.default_rng(1)) == 0


# Test parity on a grid of points against the octahedron, several directions each
def test_ray_parity_grid(octahedron):
    cx, emb = octahedron
    offsets = (Fraction(1, 7), Fraction(1, 11), Fraction(1, 13))
    seen = set()
    for i in range(-3, 3):
        for j in range(-3, 3):
            for k in range(-3, 3):
                x = tuple(Fraction(m, 4) + o for m, o in zip((i, j, k), offsets))
                expected = 1 if sum(abs(c) for c in x) < 1 else 0
                assert _parities(cx, emb, x) == {expected}
                seen.add(expected)
    assert seen == {0, 1}


# Test points just either side of each octahedron face
def test_ray_parity_straddles_octahedron(octahedron):
    cx, emb = octahedron
    eps = Fraction(1, 1000)
    for signs in itertools.product((1, -1), repeat=3):
        centroid = tuple(Fraction(s, 3) for s in signs)
        inside = tuple(c - s * eps for c, s in zip(centroid, signs))
        outside = tuple(c + s * eps for c, s in zip(centroid, signs))
        assert _parities(cx, emb, inside) == {1}
        assert _parities(cx, emb, outside) == {0}


# Test points just either side of every triangle of a subdivided sphere
def test_ray_parity_straddles_sphere():
    cx, emb = sphere_sn(3)
    eps = Fraction(1, 1000)
    for tid in cx.triangles:
        g, n = _centroid(cx, emb, tid), _normal(cx, emb, tid)
        front = tuple(a + eps * b for a, b in zip(g, n))
        back = tuple(a - eps * b for a, b in zip(g, n))
        rng = np.random.default_rng(tid)
        assert point_parity(cx, emb, front, rng=rng) != point_parity(cx, emb, back, rng=rng)


# Test parity stays constant along paths that avoid the complex
def test_ray_parity_along_paths(octahedron):
    cx, emb = octahedron
    q = Fraction
    # every leg keeps one coordinate at +-2
    outside = [
        (2, q(1, 7), q(1, 11)),
        (2, 2, q(1, 11)),
        (-2, 2, q(1, 11)),
        (-2, -2, q(1, 13)),
        (q(1, 3), -2, -2),
        (q(1, 5), q(1, 7), -2),
    ]
    # inside the convex region |x| + |y| + |z| < 1
    inside = [
        (q(1, 7), q(1, 11), q(1, 13)),
        (q(2, 5), q(1, 11), q(-1, 13)),
        (q(-1, 7), q(2, 5), q(1, 13)),
        (q(-1, 7), q(-1, 11), q(-2, 5)),
        (q(1, 9), q(-1, 3), q(1, 5)),
    ]
    assert set().union(*(_parities(cx, emb, x) for x in outside)) == {0}
    assert set().union(*(_parities(cx, emb, x) for x in inside)) == {1}


# Test parity against the closed chains of an R^3 build
def test_ray_parity_on_build_chains():
    code = even_weight_code(3)
    rep = build_r3(code, [BitVec.from_string("110"), BitVec.from_string("011")])
    emb = rep.embedding
    eps = Fraction(1, 1000)
    rng = np.random.default_rng(3)
    for chain in rep.chains:
        sub = rep.complex.subcomplex(chain)
        points = [emb[v] for v in sub.vertices]
        low = [min(p[i] for p in points) - 1 for i in range(3)]
        high = [max(p[i] for p in points) + 1 for i in range(3)]

        for _ in range(40):
            x = tuple(
                Fraction(int(rng.integers(math.floor(lo * 1009), math.ceil(hi * 1009))), 1009)
                for lo, hi in zip(low, high)
            )
            try:
                parities = _parities(sub, emb, x)
            except PointOnComplexError:
                continue
            assert len(parities) == 1

        # sphere triangles below the face plane are away from every bridge
        below = [t for t in sorted(chain) if _centroid(sub, emb, t)[1] < 0]
        assert below
        for tid in below[:: max(1, len(below) // 12)]:
            g, n = _centroid(sub, emb, tid), _normal(sub, emb, tid)
            front = tuple(a + eps * b for a, b in zip(g, n))
            back = tuple(a - eps * b for a, b in zip(g, n))
            assert len(_parities(sub, emb, front)) == 1
            assert _parities(sub, emb, front) != _parities(sub, emb, back)


# Test ray parity needs R^3
def test_ray_parity_dimension(octahedron):
    cx, _ = octahedron
    flat = Embedding(4, {v: (0, 0, 0, v) for v in cx.vertices})
    with pytest.raises(DimensionError):
        ray_parity(cx, flat, (0, 0, 0, 0), (1, 2, 3, 4))


# Test OFF export
def test_export_off(single_triangle):
    cx, emb = single_triangle
    assert export_off(cx, emb) == b"OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n"


# Test projection marks the export
def test_project_r4(single_triangle):
    cx, _ = single_triangle
    emb4 = Embedding(4, {1: (0, 0, 0, 7), 2: (1, 0, 0, 7), 3: (0, 1, 0, 7)})
    with pytest.raises(DimensionError):
        export_off(cx, emb4)
    flat = project_r4(emb4)
    assert not flat.certified
    assert flat[2] == frac_point(1, 0, 0)
    data = export_off(cx, flat)
    assert data.endswith(b"# non-certified projection\n")

    mixed = project_r4(emb4, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1]])
    assert mixed[1] == frac_point(0, 0, 7)
    with pytest.raises(DimensionError):
        project_r4(emb4, [[1, 0, 0, 0]])
