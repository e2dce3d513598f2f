"""Path model: construction validation, algebra, file format."""

import json
import math
from fractions import Fraction

import numpy as np
import pytest

from linkmd.paths import (
    BlockSegment,
    DimensionMismatchError,
    EndpointMismatchError,
    NonSymplecticSegmentError,
    PathFormatError,
    PathValidationError,
    RotationBlock,
    ShearBlock,
    SymplecticPath,
    catenate,
    constant_identity,
    direct_sum,
    exp_quadratic_segment,
    load_path,
    path_to_document,
    reverse,
    rotation_segment,
    sampled_segment,
    shear_path,
    split_at,
    unitary_loop,
    with_durations,
)


def test_dimension_must_be_even():
    with pytest.raises(PathValidationError):
        SymplecticPath(3, (rotation_segment([(0, 1)]),))


def test_duration_must_be_positive():
    with pytest.raises(PathValidationError):
        SymplecticPath(2, (rotation_segment([(0, 1)], duration=0),))


def test_block_count_must_match_dimension():
    with pytest.raises(DimensionMismatchError):
        SymplecticPath(4, (rotation_segment([(0, 1)]),))


def test_junction_continuity_enforced():
    a = rotation_segment([(0, Fraction(1, 3))])
    b = rotation_segment([(Fraction(1, 2), Fraction(1, 3))])  # starts elsewhere
    with pytest.raises(PathValidationError, match="discontinuous"):
        SymplecticPath(2, (a, b))


def test_nonsymplectic_sample_rejected():
    bad = sampled_segment([(0, [[1, 0], [0, 2]]), (1, [[1, 0], [0, 2]])])
    with pytest.raises(NonSymplecticSegmentError):
        SymplecticPath(2, (bad,))


def test_sample_times_strictly_increasing():
    eye = [[1, 0], [0, 1]]
    with pytest.raises(PathValidationError, match="strictly increasing"):
        SymplecticPath(
            2,
            (
                sampled_segment(
                    [(0, eye), (Fraction(1, 2), eye), (Fraction(1, 2), eye), (1, eye)]
                ),
            ),
        )


def test_exp_generator_must_be_symmetric():
    with pytest.raises(PathValidationError, match="symmetric"):
        SymplecticPath(2, (exp_quadratic_segment([[1, 2], [0, 1]]),))


def test_path_evaluation_matches_rotation():
    p = unitary_loop([1])
    quarter = p.value(0.25)
    assert np.allclose(quarter, [[0, -1], [1, 0]], atol=1e-12)


def test_catenate_checks_dimension_and_endpoint():
    with pytest.raises(DimensionMismatchError):
        catenate(unitary_loop([1]), unitary_loop([1, 1]))
    with pytest.raises(EndpointMismatchError):
        catenate(shear_path([1]), shear_path([1]))


def test_reverse_round_trip_values():
    p = shear_path([2])
    r = reverse(p)
    assert np.allclose(p.value(0.25), r.value(0.75), atol=1e-12)
    assert np.allclose(p.value(1.0), r.value(0.0), atol=1e-12)


def test_split_preserves_values():
    p = unitary_loop([2])
    q = split_at(p, Fraction(1, 3))
    for t in (0.0, 0.2, 1 / 3, 0.7, 1.0):
        assert np.allclose(p.value(t), q.value(t), atol=1e-9)


def test_with_durations_reparameterizes():
    p = catenate(shear_path([1]), reverse(shear_path([1])))
    q = with_durations(p, [Fraction(3), Fraction(1)])
    # midpoint of q sits three quarters along the first piece
    assert q.total_duration == 4
    assert np.allclose(q.value(1.0), p.value(1.0), atol=1e-12)


def test_direct_sum_dimensions_add():
    p = direct_sum(unitary_loop([1]), shear_path([1]))
    assert p.dimension == 4
    m = p.value(0.5)
    assert np.allclose(m[:2, 2:], 0)
    assert np.allclose(m[2:, :2], 0)


def test_load_path_rotation_and_round_trip():
    doc = {
        "dimension": 2,
        "segments": [
            {"kind": "rotation", "duration": "1", "blocks": [{"start": "0", "turns": "2"}]}
        ],
    }
    p = load_path(json.dumps(doc))
    assert p.dimension == 2
    assert p.segments[0].blocks[0].turns == 2
    again = load_path(json.dumps(path_to_document(p)))
    assert again == p


def test_load_path_shear_and_sampled():
    doc = {
        "segments": [
            {"kind": "shear", "blocks": [{"a": "3/2"}]},
        ]
    }
    p = load_path(json.dumps(doc))
    assert isinstance(p.segments[0].blocks[0], ShearBlock)

    c, s = math.cos(0.3), math.sin(0.3)
    doc2 = {
        "dimension": 2,
        "segments": [
            {
                "kind": "sampled",
                "samples": [
                    {"t": "0", "matrix": [["1", "0"], ["0", "1"]]},
                    {"t": "1", "matrix": [[c, -s], [s, c]]},
                ],
            }
        ],
    }
    with pytest.raises(PathFormatError, match="floating point"):
        load_path(json.dumps(doc2))


def test_load_path_bad_kind():
    with pytest.raises(PathFormatError, match="unknown kind"):
        load_path(json.dumps({"segments": [{"kind": "swirl"}]}))


def test_load_path_bad_json():
    with pytest.raises(PathFormatError, match="invalid JSON"):
        load_path(b"[[[")


def test_constant_identity_is_identity():
    p = constant_identity(6)
    assert np.allclose(p.value(0.37), np.eye(6), atol=1e-15)
