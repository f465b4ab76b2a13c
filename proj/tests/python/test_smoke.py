import json
import math

import numpy as np
import pytest

import topoprint


def sphere(n=20000, radius=5.0):
    i = np.arange(n) + 0.5
    phi = np.arccos(1 - 2 * i / n)
    theta = np.pi * (1 + 5**0.5) * i
    return radius * np.c_[np.cos(theta) * np.sin(phi), np.sin(theta) * np.sin(phi), np.cos(phi)]


def test_unit_square_interval():
    (birth, death), = topoprint.h1_intervals(np.array([[0, 0], [1, 0], [1, 1], [0, 1.0]]), 2.0)
    assert abs(birth - 1) < 1e-9
    assert abs(death - math.sqrt(2)) < 1e-9
    assert topoprint.holes_at_scale([(birth, death)], 1.2) == 1
    assert topoprint.holes_at_scale([(birth, death)], 1.5) == 0


def test_components_and_cover():
    pts = np.array([[0, 0], [1, 0], [2, 0], [4, 0.0]])
    assert topoprint.connected_components(pts, 1.0) == [[0, 1, 2], [3]]
    assert len(topoprint.build_cover(0, 10, z_res=0.33)) == 31
    with pytest.raises(topoprint.ConfigError):
        topoprint.build_cover(0, 1, slices=4, overlap=0.3)


def test_stl_cube():
    verts = np.array([[i & 1, (i >> 1) & 1, (i >> 2) & 1] for i in range(8)], dtype=np.float32)
    tris = [(0, 2, 1), (1, 2, 3), (4, 5, 6), (5, 7, 6), (0, 1, 4), (1, 5, 4),
            (2, 6, 3), (3, 6, 7), (0, 4, 2), (2, 4, 6), (1, 3, 5), (3, 7, 5)]
    body = b"".join(np.zeros(3, np.float32).tobytes() + verts[list(t)].tobytes() + b"\0\0" for t in tris)
    v, t = topoprint.parse_stl(b" " * 80 + np.uint32(12).tobytes() + body)
    assert v.shape == (8, 3) and t.shape == (12, 3)
    with pytest.raises(topoprint.ParseError):
        topoprint.parse_stl(b"short")


def test_analyze_sphere_is_watertight():
    text = topoprint.analyze(sphere(), z_res=0.5, xy_res=0.25, threads=1)
    bundle = topoprint.load_bundle(text)
    assert bundle["version"] == topoprint.BUNDLE_VERSION
    assert bundle["watertight"] is True
    regions = {n["region"] for n in bundle["empty_graph"]["nodes"]}
    assert regions == {"inside", "outside"}
    assert topoprint.analyze(sphere(), z_res=0.5, xy_res=0.25, threads=1) == text


def test_validate_rejects_tampering():
    doc = json.loads(topoprint.analyze(sphere(4000, 2.0), z_res=0.5, xy_res=0.25))
    doc["watertight"] = not doc["watertight"]
    with pytest.raises(topoprint.ValidationError):
        topoprint.validate_bundle(json.dumps(doc))
