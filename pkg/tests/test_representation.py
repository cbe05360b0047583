"""Tests for representation bundles and the mapping format."""

import pytest

from trirep.builders import build_r3, build_r4
from trirep.codealg import even_weight_code, repetition_code
from trirep.exceptions import FormatError
from trirep.gf2core import BitVec
from trirep.representation import (
    COMPLEX_FILE,
    MAPPING_FILE,
    format_mapping,
    parse_mapping,
    read_bundle,
    verify_representation,
    write_bundle,
)
from trirep.simcomplex import Embedding


@pytest.fixture
def rep():
    code = even_weight_code(3)
    return code, build_r3(code, [BitVec.from_string("110"), BitVec.from_string("011")])


# Test writing and reading a bundle
def test_bundle_round_trip(tmp_path, rep):
    code, original = rep
    directory = write_bundle(original, tmp_path / "bundle")
    assert (directory / COMPLEX_FILE).exists()
    assert (directory / MAPPING_FILE).exists()

    back = read_bundle(directory)
    assert back.builder == "r3"
    assert back.basis == original.basis
    assert back.coordinate_map == original.coordinate_map
    assert back.chains == original.chains
    assert back.complex.triangles == original.complex.triangles
    assert verify_representation(code, back).passed


# Test an R^4 bundle keeps its dimension
def test_bundle_r4(tmp_path):
    code = repetition_code(2)
    original = build_r4(code, code.basis)
    back = read_bundle(write_bundle(original, tmp_path))
    assert back.dimension == 4
    assert back.embedding.points == original.embedding.points
    assert verify_representation(code, back).passed


# Test a tampered mapping no longer verifies
def test_bundle_tampered(tmp_path, rep):
    code, original = rep
    directory = write_bundle(original, tmp_path)
    m = original.coordinate_map
    lines = []
    for line in (directory / MAPPING_FILE).read_text().splitlines():
        if line == f"coord 1 {m[1]}":
            line = f"coord 1 {m[3]}"
        elif line == f"coord 3 {m[3]}":
            line = f"coord 3 {m[1]}"
        lines.append(line)
    (directory / MAPPING_FILE).write_text("\n".join(lines) + "\n")

    report = verify_representation(code, read_bundle(directory))
    assert not report.passed
    assert "column_identity" in [c.name for c in report.failures()]


# Test the mapping text layout
def test_format_mapping(rep):
    _, original = rep
    lines = format_mapping(original).splitlines()
    assert lines[1:4] == ["dim 3", "builder r3", "length 3"]
    assert lines[4:6] == ["basis 1 110", "basis 2 011"]
    assert sum(1 for line in lines if line.startswith("chain ")) == 2


# Test mapping parse errors
def test_parse_mapping_errors(rep):
    _, original = rep
    cx, emb = original.complex, original.embedding
    with pytest.raises(FormatError):
        parse_mapping("length 3\n", cx, emb)
    with pytest.raises(FormatError):
        parse_mapping("dim 4\n", cx, emb)
    with pytest.raises(FormatError):
        parse_mapping("dim 3\nbogus 1\n", cx, emb)
    with pytest.raises(FormatError):
        parse_mapping("dim 3\nlength 3\nbasis 2 110\n", cx, emb)
    with pytest.raises(FormatError):
        parse_mapping("dim 3\nlength 3\nbasis 1 11\n", cx, emb)
    with pytest.raises(FormatError):
        parse_mapping("dim 3\ncoord x 1\n", cx, emb)


# Test dangling ids are loaded and then rejected by verification
def test_parse_mapping_dangling(rep):
    code, original = rep
    text = format_mapping(original).replace(
        f"coord 1 {original.coordinate_map[1]}", "coord 1 999999"
    )
    back = parse_mapping(text, original.complex, original.embedding)
    assert back.coordinate_map[1] == 999999
    report = verify_representation(code, back)
    assert [c.name for c in report.checks] == ["references"]
    assert not report.passed


# Test a complex file in the wrong dimension
def test_parse_mapping_dimension():
    with pytest.raises(FormatError):
        parse_mapping("dim 3\n", None, Embedding(4))
