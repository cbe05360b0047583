"""Representations in R^3 for codes with a 2-basis."""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from trirep.codealg import LinearCode, find_two_basis, is_two_basis
from trirep.config import resolve_config
from trirep.core import RepresentationBuilder
from trirep.exceptions import NotATwoBasisError
from trirep.gf2core import BitVec
from trirep.representation import Representation
from trirep.simcomplex import Chain, Complex, Embedding, add_sphere, tunnel_bridge

# Configure logging
logger = logging.getLogger(__name__)


def _isolated_triangle(cx: Complex, emb: Embedding, m: int, config: Dict[str, Any]) -> int:
    x = config["isolated_spacing"] * m
    y = config["isolated_plane"]
    corners = [(x, y, 0), (x + 1, y, 0), (x, y, 1)]
    ids = []
    for p in corners:
        vid = cx.add_vertex()
        emb[vid] = p
        ids.append(vid)
    return cx.add_triangle(*ids)


def build_r3(
    code: LinearCode,
    basis: Sequence[BitVec],
    config: Optional[Dict[str, Any]] = None,
) -> Representation:
    """
    Build the R^3 representation of a code from a 2-basis.

    Sphere i sits at x1 offset ``sphere_offset * i``. Coordinate j with no
    basis support gets an isolated triangle; with support on b_k it is carried
    by the j-th designated triangle of sphere k; with support on b_k and b_l
    (k < l) a tunnel bridge at depth ``sphere_offset * j`` joins sphere k's
    triangle to sphere l's, which is removed. The chain of b_l then takes the
    bridge and the carrying triangle on sphere k.

    Args:
        code: The code to represent
        basis: A 2-basis of ``code``
        config: Construction constants, see trirep.config

    Returns:
        The representation

    Raises:
        NotATwoBasisError: if ``basis`` is not a 2-basis of ``code``
    """
    config = resolve_config(config)
    basis = list(basis)
    if not is_two_basis(basis, code):
        raise NotATwoBasisError("build_r3 needs a 2-basis of the code")
    n, d = code.length, len(basis)
    offset = config["sphere_offset"]

    cx = Complex()
    emb = Embedding(3)
    spheres = []
    chains: List[Chain] = []
    for i in range(1, d + 1):
        handle = add_sphere(cx, emb, n, offset=(offset * i, 0, 0))
        spheres.append(handle)
        chains.append(set(handle.triangles))

    coordinate_map: Dict[int, int] = {}
    isolated = 0
    for j in range(1, n + 1):
        owners = [k for k, b in enumerate(basis) if b[j]]
        if not owners:
            coordinate_map[j] = _isolated_triangle(cx, emb, isolated, config)
            isolated += 1
        elif len(owners) == 1:
            coordinate_map[j] = spheres[owners[0]].designated[j - 1]
        else:
            k, l = owners
            src = spheres[k].designated[j - 1]
            dst = spheres[l].designated[j - 1]
            bridge = tunnel_bridge(
                cx, emb, src, dst, depth=offset * j, rise=Fraction(config["bridge_rise"])
            )
            cx.remove_triangle(dst)
            chains[l].discard(dst)
            chains[l].update(bridge)
            chains[l].add(src)
            coordinate_map[j] = src
            logger.debug(f"coordinate {j}: bridge from sphere {k + 1} to sphere {l + 1}")

    cx.designated = dict(coordinate_map)
    logger.debug(
        f"built R^3 representation: {d} spheres, {isolated} isolated triangles, "
        f"{len(cx.triangles)} triangles"
    )
    return Representation(
        complex=cx,
        embedding=emb,
        basis=basis,
        chains=chains,
        coordinate_map=coordinate_map,
        builder="r3",
    )


@RepresentationBuilder(dimension=3, priority=10, name="r3")
class TunnelBridgeBuilder:
    """Spheres joined by tunnel bridges; needs a 2-basis."""

    def accepts(self, code: LinearCode) -> bool:
        return find_two_basis(code).found

    def build(
        self,
        code: LinearCode,
        basis: Optional[Sequence[BitVec]] = None,
        config: Optional[Dict[str, Any]] = None,
    ) -> Representation:
        if basis is None:
            report = find_two_basis(code)
            if not report.found:
                raise NotATwoBasisError(
                    f"code n={code.length}, d={code.dim} has no 2-basis; it needs R^4"
                )
            basis = report.basis or []
        return build_r3(code, basis, config)

    def get_builder_info(self) -> Dict[str, Any]:
        return {"name": "r3", "dimension": 3, "requires": "2-basis"}
