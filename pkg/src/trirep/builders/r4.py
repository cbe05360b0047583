"""Representations in R^4 for arbitrary binary codes."""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from trirep.codealg import LinearCode
from trirep.config import resolve_config
from trirep.core import RepresentationBuilder
from trirep.exceptions import DependentBasisError
from trirep.gf2core import BitVec, is_independent, span_equal
from trirep.representation import Representation
from trirep.simcomplex import Chain, Complex, Embedding, Point, add_sphere, tunnel

# Configure logging
logger = logging.getLogger(__name__)

_SCALE = Fraction(3, 8)


def cube_coordinates(p: Point, size: Fraction) -> Point:
    """
    Place a point of S^n inside the cube [0, size]^3.

    The distinguished face (x2 = 0) becomes the plane y3 = size / 8, facing
    the front facet y3 = 0; the sphere body lies in y3 >= size / 8.
    """
    x1, x2, x3 = p
    return (
        size * (x1 + Fraction(1, 3)) * _SCALE,
        size * (x3 + Fraction(2, 3)) * _SCALE,
        size * (Fraction(1, 8) - x2 * _SCALE),
    )


def block_point(y: Point, i: int) -> Point:
    """Image of cube point y in block i: the cube axis maps to (0, 0, 1, i - 1)."""
    y1, y2, y3 = y
    return (y1, y2, y3, (i - 1) * y3)


def build_r4(
    code: LinearCode,
    basis: Sequence[BitVec],
    config: Optional[Dict[str, Any]] = None,
) -> Representation:
    """
    Build the R^4 representation of a code from any basis.

    Every coordinate j gets a cap triangle on the front facet y3 = 0: the
    footprint of the j-th designated triangle of S^n. Block i is a copy of
    S^n in a cube whose axis is sent to (0, 0, 1, i - 1); for each j in the
    support of b_i the designated triangle is removed and replaced by a
    straight prism down to cap j. Two blocks meet only in the front facet.

    Args:
        code: The code to represent
        basis: A basis of ``code``
        config: Construction constants, see trirep.config

    Returns:
        The representation
    """
    config = resolve_config(config)
    basis = list(basis)
    if not is_independent(basis):
        raise DependentBasisError("build_r4 needs linearly independent vectors")
    if len(basis) != code.dim or not span_equal(basis, code.basis):
        raise ValueError("basis does not span the code")
    n = code.length
    size = Fraction(config["cube_size"])

    # template sphere in R^3, copied into each block
    template = Complex()
    template_emb = Embedding(3)
    handle = add_sphere(template, template_emb, n)
    cube = {v: cube_coordinates(template_emb[v], size) for v in template.vertices}

    cx = Complex()
    emb = Embedding(4)

    coordinate_map: Dict[int, int] = {}
    cap_ring: Dict[int, List[int]] = {}
    for j in range(1, n + 1):
        ring = []
        for v in template.triangle(handle.designated[j - 1]):
            y1, y2, _ = cube[v]
            vid = cx.add_vertex()
            emb[vid] = (y1, y2, 0, 0)
            ring.append(vid)
        cap_ring[j] = ring
        coordinate_map[j] = cx.add_triangle(*ring)

    chains: List[Chain] = []
    for i, b in enumerate(basis, start=1):
        copy_of = {}
        for v in template.vertices:
            vid = cx.add_vertex()
            emb[vid] = block_point(cube[v], i)
            copy_of[v] = vid
        chain: Chain = set()
        for tid in handle.triangles:
            chain.add(cx.add_triangle(*(copy_of[v] for v in template.triangle(tid))))
        for j in b.support():
            top = template.triangle(handle.designated[j - 1])
            removed = cx.find_triangle(*(copy_of[v] for v in top))
            cx.remove_triangle(removed)  # type: ignore[arg-type]
            chain.discard(removed)  # type: ignore[arg-type]
            chain.update(tunnel(cx, [copy_of[v] for v in top], cap_ring[j]))
            chain.add(coordinate_map[j])
        chains.append(chain)
        logger.debug(f"block {i}: {len(chain)} triangles, {b.weight} tunnels")

    cx.designated = dict(coordinate_map)
    logger.debug(
        f"built R^4 representation: {len(basis)} blocks, {len(cx.triangles)} triangles"
    )
    return Representation(
        complex=cx,
        embedding=emb,
        basis=basis,
        chains=chains,
        coordinate_map=coordinate_map,
        builder="r4",
    )


@RepresentationBuilder(dimension=4, priority=20, name="r4")
class BlockBuilder:
    """Cube blocks glued along a shared front facet; any basis works."""

    def accepts(self, code: LinearCode) -> bool:
        return True

    def build(
        self,
        code: LinearCode,
        basis: Optional[Sequence[BitVec]] = None,
        config: Optional[Dict[str, Any]] = None,
    ) -> Representation:
        return build_r4(code, code.basis if basis is None else basis, config)

    def get_builder_info(self) -> Dict[str, Any]:
        return {"name": "r4", "dimension": 4, "requires": "any basis"}
