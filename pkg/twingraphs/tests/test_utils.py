"""Tests for grid files, argument parsing and mesh export."""

import json
import math

import numpy as np
import pytest

from twingraphs.exceptions.exceptions import DomainError, GridFormatError
from twingraphs.services.field_ops.types import ScalarField
from twingraphs.services.space_model.types import DomainSpec
from twingraphs.utils.grid_io import format_value, parse_grid, read_grid, render_grid, write_grid
from twingraphs.utils.mesh_export import render_obj, triangulate, write_obj
from twingraphs.utils.shapes import disk_coverage, parse_anchor, parse_boundary, parse_radii, parse_shape

from .support import L3, nil


def header(**overrides) -> str:
    fields = {"schema_version": 1, "kappa": 0.0, "bundle": 1.0, "causal": "riemannian",
              "nx": 2, "ny": 2, "x0": 0.0, "y0": 0.0, "h": 0.5}
    fields.update(overrides)
    return json.dumps(fields)


class TestGridIO:
    """Tests for the JSON-header grid format."""

    def test_roundtrip_is_bit_exact(self, tmp_path):
        domain = DomainSpec.centered_disk(0.5, 0.1)
        field = ScalarField.from_function(domain, lambda x, y: np.sin(3 * x) * np.exp(y) / 7.0)
        path = tmp_path / "u.grid"
        write_grid(path, field, nil(0.3), H_expected=0.0)
        grid = read_grid(path)
        assert grid.params == nil(0.3)
        assert grid.header.H_expected == 0.0
        np.testing.assert_array_equal(grid.field.domain.mask, domain.mask)
        np.testing.assert_array_equal(grid.field.values, field.values)
        assert grid.field.domain.same_grid(domain)

    def test_masked_cells_are_written_as_nan_token(self):
        domain = DomainSpec.centered_disk(0.5, 0.1)
        text = render_grid(ScalarField.constant(domain), L3)
        first_row = text.splitlines()[1].split(",")
        assert first_row[0] == "NaN"
        assert json.loads(text.splitlines()[0])["causal"] == "lorentzian"

    def test_format_value(self):
        assert format_value(math.nan) == "NaN"
        assert float(format_value(0.1 + 0.2)) == 0.1 + 0.2

    def test_parse_small_grid(self):
        grid = parse_grid(header() + "\n1.5,NaN\n-2,0\n")
        assert grid.field.domain.mask.tolist() == [[True, False], [True, True]]
        assert grid.field.at((1, 0)) == -2.0

    @pytest.mark.parametrize("payload", [
        "1,2\n",
        "1,2\n3\n",
        "1,abc\n3,4\n",
        "1,inf\n3,4\n",
    ])
    def test_malformed_payload(self, payload):
        with pytest.raises(GridFormatError):
            parse_grid(header() + "\n" + payload)

    def test_unsupported_schema_version(self):
        with pytest.raises(GridFormatError):
            parse_grid(header(schema_version=2) + "\n1,2\n3,4\n")

    def test_invalid_header(self):
        with pytest.raises(GridFormatError):
            parse_grid("{not json}\n1,2\n")
        with pytest.raises(GridFormatError):
            parse_grid(header(h=-0.5) + "\n1,2\n3,4\n")

    def test_empty_file(self):
        with pytest.raises(GridFormatError):
            parse_grid("\n\n")

    def test_missing_file(self, tmp_path):
        with pytest.raises(GridFormatError):
            read_grid(tmp_path / "absent.grid")


class TestShapes:
    """Tests for command-line argument parsing."""

    def test_disk(self):
        domain = parse_shape("disk:1", 0.25)
        assert (domain.nx, domain.ny) == (11, 11)
        assert domain.mask[5, 5]
        assert not domain.mask[5, 0]

    def test_rectangle(self):
        domain = parse_shape("rect:0.2,0.1", 0.1)
        assert (domain.nx, domain.ny) == (5, 3)
        assert domain.mask.all()

    @pytest.mark.parametrize("spec, error", [
        ("disk:-1", DomainError),
        ("rect:1,0", DomainError),
        ("tri:1", GridFormatError),
        ("disk:a", GridFormatError),
        ("rect:1", GridFormatError),
    ])
    def test_invalid_shapes(self, spec, error):
        with pytest.raises(error):
            parse_shape(spec, 0.1)

    def test_boundary(self):
        fn = parse_boundary("const:2.5")
        np.testing.assert_array_equal(fn(np.zeros(3), np.zeros(3)), [2.5, 2.5, 2.5])
        with pytest.raises(GridFormatError):
            parse_boundary("sin:1")

    def test_anchor_is_column_then_row(self):
        assert parse_anchor("3,4") == (4, 3)
        with pytest.raises(GridFormatError):
            parse_anchor("3")

    def test_radii(self):
        assert parse_radii("0.5,1") == (0.5, 1.0)
        with pytest.raises(GridFormatError):
            parse_radii("0,1")

    def test_disk_coverage(self):
        domain = DomainSpec.centered_disk(1.2, 0.05)
        coverage = disk_coverage(domain, 1.0)
        centre = domain.centroid_cell()
        assert coverage[centre] == 1.0
        assert coverage[0, 0] == 0.0
        assert coverage.sum() * domain.h ** 2 == pytest.approx(math.pi, abs=2e-3)


class TestMeshExport:
    """Tests for the Wavefront OBJ surface."""

    def test_full_square_triangles_are_counter_clockwise(self):
        domain = DomainSpec.centered_rectangle(0.1, 0.1, 0.1)
        vertices, faces = triangulate(ScalarField.constant(domain))
        assert len(vertices) == 9
        assert len(faces) == 8
        for a, b, c in faces:
            (x1, y1), (x2, y2), (x3, y3) = vertices[a][:2], vertices[b][:2], vertices[c][:2]
            assert (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1) > 0

    def test_three_corner_square(self):
        mask = np.array([[True, True], [True, False]])
        domain = DomainSpec(0.0, 0.0, 1.0, 2, 2, mask)
        vertices, faces = triangulate(ScalarField.constant(domain, 1.0))
        assert len(vertices) == 3
        assert faces == [(0, 1, 2)]

    def test_render_and_write(self, tmp_path):
        domain = DomainSpec.centered_rectangle(0.2, 0.2, 0.1)
        field = ScalarField.from_function(domain, lambda x, y: x + y)
        text = render_obj(field)
        assert text.count("\nv ") + text.startswith("v ") == 25
        assert write_obj(tmp_path / "m.obj", field) == 32
        assert (tmp_path / "m.obj").read_text() == text

    def test_write_reports_the_triangulation_size(self, tmp_path):
        domain = DomainSpec.centered_disk(0.5, 0.1)
        field = ScalarField.from_function(domain, lambda x, y: x * y)
        _, faces = triangulate(field)
        path = tmp_path / "disk.obj"
        assert write_obj(path, field) == len(faces)
        lines = path.read_text().splitlines()
        assert sum(line.startswith("f ") for line in lines) == len(faces)
