"""Binary linear codes and the 2-basis decision."""

import itertools
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, Iterator, List, Optional, Sequence, Union

import numpy as np

from trirep.config import DEFAULT_CONFIG
from trirep.exceptions import (
    FormatError,
    LengthMismatchError,
    NotInCodeError,
    OracleGuardError,
)
from trirep.gf2core import BitVec, echelon_basis, express, rank_of, span_equal
from trirep.textio import read_text

if TYPE_CHECKING:
    from trirep.graphspace import MultiGraph

# Configure logging
logger = logging.getLogger(__name__)


class LinearCode:
    """
    A binary linear code of length n, stored by its reduced echelon basis.

    Two codes compare equal when they have the same length and span.
    """

    def __init__(self, length: int, basis: Sequence[BitVec] = ()):
        self.length = length
        self.basis: List[BitVec] = echelon_basis(list(basis), length)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def codewords(self) -> Iterator[BitVec]:
        """All 2^d codewords, in the order of their coefficient vectors."""
        for mask in range(1 << self.dim):
            bits = 0
            for i, b in enumerate(self.basis):
                if (mask >> i) & 1:
                    bits ^= b.bits
            yield BitVec(self.length, bits)

    def contains(self, v: BitVec) -> bool:
        if v.length != self.length:
            return False
        return express(v, self.basis) is not None

    def __contains__(self, v: BitVec) -> bool:
        return self.contains(v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.length == other.length and span_equal(self.basis, other.basis)

    def __hash__(self) -> int:
        # echelon form is unique per row space
        return hash((self.length, tuple(b.bits for b in self.basis)))

    def __repr__(self) -> str:
        rows = ", ".join(b.to_string() for b in self.basis)
        return f"LinearCode(n={self.length}, d={self.dim}, basis=[{rows}])"


@dataclass
class TwoBasisReport:
    """Outcome of a 2-basis search.

    ``coordinate_load`` is empty when no 2-basis was found.
    """

    found: bool
    basis: Optional[List[BitVec]] = None
    coordinate_load: List[int] = field(default_factory=list)
    nodes: int = 0


@dataclass
class CodeAnalysis:
    length: int
    dim: int
    two_basis: TwoBasisReport
    min_dim: int
    graph: Optional["MultiGraph"] = None
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        witness = self.two_basis.basis if self.two_basis.found else None
        return {
            "n": self.length,
            "dim": self.dim,
            "two_basis": self.two_basis.found,
            "witness": [b.to_string() for b in witness] if witness is not None else None,
            "coordinate_load": self.two_basis.coordinate_load,
            "min_dim": self.min_dim,
            "graph": self.graph.to_dict() if self.graph is not None else None,
            "notes": list(self.notes),
        }


def code_from_rows(rows: Sequence[BitVec], length: Optional[int] = None) -> LinearCode:
    """
    Canonical code spanned by ``rows``.

    Args:
        rows: Generator rows, all of the same length
        length: Code length; required when ``rows`` is empty

    Returns:
        The code with its reduced echelon basis
    """
    if length is None:
        if not rows:
            raise ValueError("length is required for an empty generator list")
        length = rows[0].length
    for r in rows:
        if r.length != length:
            raise LengthMismatchError(f"ragged generator rows: {r.length} != {length}")
    return LinearCode(length, rows)


def coordinate_load(vectors: Sequence[BitVec], length: int) -> List[int]:
    """For each coordinate 1..length, how many vectors are nonzero there."""
    load = [0] * length
    for v in vectors:
        for i in v.support():
            load[i - 1] += 1
    return load


def is_two_basis(vectors: Sequence[BitVec], code: LinearCode) -> bool:
    if len(vectors) != code.dim:
        return False
    if vectors and rank_of(vectors) != len(vectors):
        return False
    if not span_equal(list(vectors), code.basis):
        return False
    return all(x <= 2 for x in coordinate_load(vectors, code.length))


def _sorted_nonzero_codewords(code: LinearCode) -> List[BitVec]:
    words = [w for w in code.codewords() if w.bits]
    return sorted(words, key=lambda w: w.sort_key())


def _xor_insert(rows: List[int], v: int) -> bool:
    """Insert ``v`` into a xor basis kept sorted by leading bit; False if dependent."""
    for r in rows:
        v = min(v, v ^ r)
    if not v:
        return False
    rows.append(v)
    rows.sort(reverse=True)
    return True


def _report(code: LinearCode, basis: List[BitVec], nodes: int) -> TwoBasisReport:
    return TwoBasisReport(
        found=True,
        basis=basis,
        coordinate_load=coordinate_load(basis, code.length),
        nodes=nodes,
    )


def find_two_basis(code: LinearCode) -> TwoBasisReport:
    """
    Search for a basis in which every coordinate is nonzero in at most two vectors.

    Depth-first search over the nonzero codewords sorted by ``sort_key``,
    choosing candidates at increasing positions. The first witness found is
    therefore the least in the lexicographic order of index combinations.

    Args:
        code: The code to search

    Returns:
        Report with the witness or ``found=False``
    """
    d = code.dim
    if d == 0:
        return _report(code, [], 0)

    candidates = _sorted_nonzero_codewords(code)
    words = [c.bits for c in candidates]
    weights = [c.weight for c in candidates]
    min_weight = min(weights)
    limit = 2 * code.length
    chosen: List[int] = []
    nodes = 0

    def spannable(start: int, twice: int, rows: List[int]) -> bool:
        # chosen plus every later candidate that still fits must reach rank d
        rows = list(rows)
        for j in range(start, len(words)):
            if words[j] & twice:
                continue
            _xor_insert(rows, words[j])
            if len(rows) == d:
                return True
        return len(rows) == d

    def search(start: int, rows: List[int], once: int, twice: int, total: int) -> bool:
        nonlocal nodes
        nodes += 1
        depth = len(chosen)
        if depth == d:
            return True
        if total + (d - depth) * min_weight > limit:
            return False
        if not spannable(start, twice, rows):
            return False
        for j in range(start, len(words)):
            if len(words) - j < d - depth:
                break
            w = words[j]
            if w & twice:
                continue
            trial = list(rows)
            if not _xor_insert(trial, w):
                continue
            chosen.append(j)
            if search(j + 1, trial, once | w, twice | (once & w), total + weights[j]):
                return True
            chosen.pop()
        return False

    found = search(0, [], 0, 0, 0)
    logger.debug(f"2-basis search on n={code.length}, d={d}: found={found} after {nodes} nodes")
    if not found:
        return TwoBasisReport(found=False, nodes=nodes)
    return _report(code, [candidates[j] for j in chosen], nodes)


def two_basis_oracle(code: LinearCode, max_dim: Optional[int] = None) -> TwoBasisReport:
    """
    Exhaustive 2-basis check over every unordered d-subset of nonzero codewords.

    Raises:
        OracleGuardError: if the code dimension exceeds ``max_dim``
    """
    if max_dim is None:
        max_dim = DEFAULT_CONFIG["oracle_max_dim"]
    d = code.dim
    if d > max_dim:
        raise OracleGuardError(f"oracle limited to dimension {max_dim}, code has {d}")
    if d == 0:
        return _report(code, [], 0)

    checked = 0
    for combo in itertools.combinations(_sorted_nonzero_codewords(code), d):
        checked += 1
        if rank_of(combo) != d:
            continue
        if all(x <= 2 for x in coordinate_load(combo, code.length)):
            return _report(code, list(combo), checked)
    return TwoBasisReport(found=False, nodes=checked)


def degree(c: BitVec, code: LinearCode, basis: Optional[Sequence[BitVec]] = None) -> int:
    """Number of basis vectors in the unique expression of ``c``."""
    basis = code.basis if basis is None else basis
    if c.length != code.length:
        raise NotInCodeError(f"vector of length {c.length} in a code of length {code.length}")
    coeffs = express(c, basis)
    if coeffs is None:
        raise NotInCodeError(f"{c} is not a codeword")
    return coeffs.weight


def min_representation_dim(code: LinearCode, report: Optional[TwoBasisReport] = None) -> int:
    """3 when the code has a 2-basis, otherwise 4."""
    if report is None:
        report = find_two_basis(code)
    return 3 if report.found else 4


def analyze_code(code: LinearCode) -> CodeAnalysis:
    """Collect everything the ``analyze`` command reports about a code."""
    from trirep.graphspace import graph_from_two_basis

    report = find_two_basis(code)
    analysis = CodeAnalysis(
        length=code.length,
        dim=code.dim,
        two_basis=report,
        min_dim=min_representation_dim(code, report),
    )
    if report.found:
        analysis.graph = graph_from_two_basis(report.basis or [], code.length)
    if code.dim == 0:
        analysis.notes.append(
            "zero code: a single triangle in the plane already represents it"
        )
    return analysis


# Standard families


def repetition_code(n: int) -> LinearCode:
    return LinearCode(n, [BitVec(n, (1 << n) - 1)] if n else [])


def even_weight_code(n: int) -> LinearCode:
    rows = [BitVec.from_support(n, [i, i + 1]) for i in range(1, n)]
    return LinearCode(n, rows)


def hamming_code() -> LinearCode:
    """The [7,4] Hamming code."""
    rows = ["1000110", "0100101", "0010011", "0001111"]
    return LinearCode(7, [BitVec.from_string(r) for r in rows])


def random_code(d: int, n: int, rng: Optional[np.random.Generator] = None) -> LinearCode:
    """Code spanned by a uniformly random d x n matrix (dimension may drop)."""
    rng = rng if rng is not None else np.random.default_rng()
    matrix = rng.integers(0, 2, size=(d, n))
    return LinearCode(n, [BitVec.from_array(row) for row in matrix])


# Code text format


def parse_code(text: str) -> LinearCode:
    """
    Parse generator rows, one string over {0,1} per line.

    Blank lines and lines starting with '#' are ignored. An input without
    rows is the zero code of length 0.
    """
    rows: List[BitVec] = []
    length: Optional[int] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            row = BitVec.from_string(line)
        except ValueError as e:
            raise FormatError(str(e), lineno) from e
        if length is None:
            length = row.length
        elif row.length != length:
            raise FormatError(f"row has length {row.length}, expected {length}", lineno)
        rows.append(row)
    return code_from_rows(rows, length or 0)


def read_code(path: Union[str, Path]) -> LinearCode:
    code = parse_code(read_text(path))
    logger.debug(f"Read code n={code.length}, d={code.dim} from {path}")
    return code


def format_code(code: LinearCode, rows: Optional[Sequence[BitVec]] = None) -> str:
    rows = code.basis if rows is None else rows
    if not rows and code.length:
        # a zero row keeps the length of the zero code
        rows = [BitVec.zeros(code.length)]
    return "".join(f"{r.to_string()}\n" for r in rows)


def write_code(code: LinearCode, path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_code(code))
