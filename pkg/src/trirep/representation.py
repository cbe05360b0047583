"""Geometric representations of codes: the encode map, verification and bundles."""

import itertools
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from trirep.codealg import LinearCode
from trirep.exceptions import FormatError, NotInCodeError
from trirep.exactgeom import EmbeddingReport, validate_embedding
from trirep.gf2core import BitVec, express, is_independent, puncture, span_equal, xor_fold
from trirep.simcomplex import (
    Chain,
    Complex,
    Embedding,
    cycle_space_of_complex,
    format_complex,
    is_even_subset,
    parse_complex,
)
from trirep.textio import read_text

# Configure logging
logger = logging.getLogger(__name__)

COMPLEX_FILE = "complex.txt"
MAPPING_FILE = "mapping.txt"


@dataclass
class Representation:
    """
    A complex whose kernel, punctured to the coordinate triangles, is a code.

    ``chains[i]`` is the triangle set of basis vector ``basis[i]``;
    ``coordinate_map[j]`` is the triangle carrying code coordinate j.
    """

    complex: Complex
    embedding: Embedding
    basis: List[BitVec]
    chains: List[Chain]
    coordinate_map: Dict[int, int]
    builder: str = ""

    @property
    def dimension(self) -> int:
        return self.embedding.dimension

    @property
    def length(self) -> int:
        return len(self.coordinate_map)

    @property
    def puncture_complement(self) -> List[int]:
        """Kept incidence-matrix columns (1-based), in coordinate order."""
        index = self.complex.column_index()
        return [index[self.coordinate_map[j]] + 1 for j in range(1, self.length + 1)]

    def chain_vectors(self) -> List[BitVec]:
        return [self.complex.characteristic_vector(chain) for chain in self.chains]

    def __repr__(self) -> str:
        return (
            f"Representation(R^{self.dimension}, n={self.length}, d={len(self.basis)}, "
            f"{self.complex!r})"
        )


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: List[CheckResult] = field(default_factory=list)
    geometry: Optional[EmbeddingReport] = None

    @property
    def algebra_ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def geometry_ok(self) -> bool:
        return self.geometry is not None and self.geometry.passed

    @property
    def passed(self) -> bool:
        ok = self.algebra_ok
        if self.geometry is not None:
            ok = ok and self.geometry.passed
        return ok

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(CheckResult(name, passed, detail))
        if not passed:
            logger.debug(f"check {name} failed: {detail}")
        return passed

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks
            ],
        }
        if self.geometry is not None:
            result["geometry"] = self.geometry.to_dict()
        return result


def encode_f(rep: Representation, c: BitVec) -> BitVec:
    """
    Image of a codeword: the sum of the chains of the basis vectors expressing it.

    Raises:
        NotInCodeError: if ``c`` is not in the span of the representation basis
    """
    if c.length != rep.length:
        raise NotInCodeError(f"vector of length {c.length} for a code of length {rep.length}")
    coeffs = express(c, rep.basis)
    if coeffs is None:
        raise NotInCodeError(f"{c} is not a codeword of the represented code")
    vectors = rep.chain_vectors()
    chosen = [vectors[i - 1] for i in coeffs.support()]
    return xor_fold(chosen, len(rep.complex.triangles))


def _check_references(code: LinearCode, rep: Representation, report: VerificationReport) -> bool:
    live = rep.complex.triangles
    missing_coords = [j for j in range(1, code.length + 1) if j not in rep.coordinate_map]
    extra_coords = sorted(j for j in rep.coordinate_map if not 1 <= j <= code.length)
    dangling = sorted(
        {t for t in rep.coordinate_map.values() if t not in live}
        | {t for chain in rep.chains for t in chain if t not in live}
    )
    problems = []
    if missing_coords:
        problems.append(f"coordinates without a triangle: {missing_coords}")
    if extra_coords:
        problems.append(f"coordinates outside 1..{code.length}: {extra_coords}")
    if dangling:
        problems.append(f"dangling triangle ids: {dangling}")
    if len(rep.chains) != len(rep.basis):
        problems.append(f"{len(rep.chains)} chains for {len(rep.basis)} basis vectors")
    if len(set(rep.coordinate_map.values())) != len(rep.coordinate_map):
        problems.append("two coordinates share a triangle")
    return report.add("references", not problems, "; ".join(problems))


def verify_representation(
    code: LinearCode,
    rep: Representation,
    geometry: bool = False,
    workers: int = 1,
) -> VerificationReport:
    """
    Check that ``rep`` represents ``code``.

    Checks, in order: ids resolve (``references``); the basis spans the code
    (``basis``); every chain is an even subset (``chains_even``); the chain
    vectors are independent (``chain_rank``); the kernel dimension equals
    dim C (``kernel_dim``); the punctured kernel spans C (``puncture_span``);
    each chain reads back its basis vector on the coordinate triangles
    (``column_identity``).

    Args:
        code: The code that should be represented
        rep: Candidate representation
        geometry: Also run validate_embedding on the coordinates
        workers: Process count for the geometric check

    Returns:
        Report; failures are entries, nothing is raised
    """
    report = VerificationReport()
    if not _check_references(code, rep, report):
        return report

    if any(b.length != code.length for b in rep.basis):
        report.add("basis", False, f"basis vectors are not of length {code.length}")
        return report
    spans = span_equal(rep.basis, code.basis) and is_independent(rep.basis)
    report.add("basis", spans, "" if spans else "basis is not a basis of the code")

    odd = [i for i, chain in enumerate(rep.chains, start=1) if not is_even_subset(rep.complex, chain)]
    report.add("chains_even", not odd, f"chains with odd edge degree: {odd}" if odd else "")

    vectors = rep.chain_vectors()
    report.add(
        "chain_rank",
        is_independent(vectors),
        "" if is_independent(vectors) else "chain vectors are linearly dependent",
    )

    kernel = cycle_space_of_complex(rep.complex)
    report.add(
        "kernel_dim",
        len(kernel) == code.dim,
        f"dim ker = {len(kernel)}, dim C = {code.dim}",
    )

    keep = rep.puncture_complement
    punctured = puncture(kernel, keep)
    same = span_equal(punctured, code.basis)
    report.add(
        "puncture_span",
        same,
        "" if same else "punctured kernel does not span the code",
    )

    mismatched = [
        i
        for i, (b, v) in enumerate(zip(rep.basis, vectors), start=1)
        if puncture([v], keep)[0] != b
    ]
    report.add(
        "column_identity",
        not mismatched,
        f"chains not reading back their basis vector: {mismatched}" if mismatched else "",
    )

    if geometry:
        report.geometry = validate_embedding(rep.complex, rep.embedding, workers=workers)
    logger.debug(
        f"verified {rep!r}: algebra {'ok' if report.algebra_ok else 'FAILED'}"
    )
    return report


def nonzero_kernel_vectors_cover_a_chain(rep: Representation) -> bool:
    """
    True iff every nonzero kernel vector contains all non-coordinate triangles
    of at least one chain.

    Enumerates the whole kernel, so it is meant for small instances.
    """
    kernel = cycle_space_of_complex(rep.complex)
    coordinate_triangles = set(rep.coordinate_map.values())
    bodies = [set(chain) - coordinate_triangles for chain in rep.chains]
    for size in range(1, len(kernel) + 1):
        for combo in itertools.combinations(kernel, size):
            support = set(rep.complex.triangles_of(xor_fold(combo, combo[0].length)))
            if not any(body <= support for body in bodies):
                return False
    return True


# Bundle format


def format_mapping(rep: Representation) -> str:
    lines = ["# trirep mapping", f"dim {rep.dimension}"]
    if rep.builder:
        lines.append(f"builder {rep.builder}")
    lines.append(f"length {rep.length}")
    for i, b in enumerate(rep.basis, start=1):
        lines.append(f"basis {i} {b.to_string()}")
    for j in sorted(rep.coordinate_map):
        lines.append(f"coord {j} {rep.coordinate_map[j]}")
    for i, chain in enumerate(rep.chains, start=1):
        lines.append(" ".join([f"chain {i}"] + [str(t) for t in sorted(chain)]))
    return "\n".join(lines) + "\n"


def parse_mapping(text: str, cx: Complex, emb: Embedding) -> Representation:
    """Parse a mapping file against an already parsed complex."""
    dimension: Optional[int] = None
    length = 0
    builder = ""
    basis: Dict[int, BitVec] = {}
    coords: Dict[int, int] = {}
    chains: Dict[int, Chain] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "dim" and len(parts) == 2:
                dimension = int(parts[1])
            elif parts[0] == "builder" and len(parts) == 2:
                builder = parts[1]
            elif parts[0] == "length" and len(parts) == 2:
                length = int(parts[1])
            elif parts[0] == "basis" and len(parts) == 3:
                basis[int(parts[1])] = BitVec.from_string(parts[2])
            elif parts[0] == "coord" and len(parts) == 3:
                coords[int(parts[1])] = int(parts[2])
            elif parts[0] == "chain" and len(parts) >= 2:
                chains[int(parts[1])] = {int(t) for t in parts[2:]}
            else:
                raise FormatError(f"unrecognized line {line!r}", lineno)
        except FormatError:
            raise
        except ValueError as e:
            raise FormatError(str(e), lineno) from e

    if dimension is None:
        raise FormatError("mapping has no 'dim' line")
    if dimension != emb.dimension:
        raise FormatError(f"mapping says R^{dimension}, complex has R^{emb.dimension}")
    if sorted(basis) != list(range(1, len(basis) + 1)):
        raise FormatError(f"basis indices must be 1..{len(basis)}")
    if sorted(chains) != list(range(1, len(chains) + 1)):
        raise FormatError(f"chain indices must be 1..{len(chains)}")
    if any(b.length != length for b in basis.values()):
        raise FormatError(f"basis vectors must have length {length}")

    dangling = sorted(
        {t for t in coords.values() if t not in cx.triangles}
        | {t for c in chains.values() for t in c if t not in cx.triangles}
    )
    if dangling:
        logger.warning(f"mapping refers to missing triangles {dangling}")
    return Representation(
        complex=cx,
        embedding=emb,
        basis=[basis[i] for i in sorted(basis)],
        chains=[chains[i] for i in sorted(chains)],
        coordinate_map=coords,
        builder=builder,
    )


def write_bundle(rep: Representation, path: Union[str, Path]) -> Path:
    """Write ``complex.txt`` and ``mapping.txt`` into the directory ``path``."""
    directory = Path(path)
    os.makedirs(directory, exist_ok=True)
    with open(directory / COMPLEX_FILE, "w", encoding="utf-8") as f:
        f.write(format_complex(rep.complex, rep.embedding))
    with open(directory / MAPPING_FILE, "w", encoding="utf-8") as f:
        f.write(format_mapping(rep))
    logger.debug(f"Wrote bundle {rep!r} to {directory}")
    return directory


def read_bundle(path: Union[str, Path]) -> Representation:
    directory = Path(path)
    cx, emb = parse_complex(read_text(directory / COMPLEX_FILE))
    return parse_mapping(read_text(directory / MAPPING_FILE), cx, emb)
