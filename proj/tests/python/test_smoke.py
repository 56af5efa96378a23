import math

import numpy as np
import pytest

import dualspace as ds


def test_space_properties():
    s = ds.Space("gr-real", 2, 3)
    assert (s.n, s.m, s.rank) == (2, 3, 2)
    assert s.field == "real"
    assert ds.Space("sphere", 1, 2).metric_scale == 2.0
    with pytest.raises(ValueError):
        ds.Space("torus", 1, 1)


def test_embeddings_agree_on_a_grassmannian():
    s = ds.Space("gr-complex", 1, 2)
    y = np.array([[0.3 + 0.1j], [-0.2j]])
    p, g, f = (ds.embed(s, y, m) for m in "pgf")
    assert ds.point_distance(s, p, g) < 1e-12
    assert ds.point_distance(s, p, f) < 1e-12
    assert ds.space_like(s, f)


def test_tanh_relation_on_o11():
    s = ds.Space("gr-real", 1, 1)
    t = 0.7
    rep = ds.embed(s, np.array([[math.tanh(t)]]), "f")
    assert -rep[1, 0].real / rep[0, 0].real == pytest.approx(-math.tanh(t), abs=1e-12)


def test_sphere_b_differs_from_f():
    s = ds.Space("sphere", 1, 2)
    y = np.array([[math.tanh(0.5)], [0.0]])
    b_len = ds.log_compact(s, ds.embed(s, y, "b"))["length"]
    f_len = ds.log_compact(s, ds.embed(s, y, "f"))["length"]
    assert b_len == pytest.approx(ds.b_angle(1.0), abs=1e-12)
    assert abs(b_len - f_len) > 1e-3


def test_scalar_maps():
    assert ds.h_coordinate(0.5) == pytest.approx(-0.23625313549946, abs=1e-12)
    assert ds.b_angle(1.0) == pytest.approx(0.86576948323966, abs=1e-12)


def test_cut_radius_and_su3():
    gens = ds.lattice_generators(ds.Space("gr-real", 2, 2))
    d = np.array([1.0, 1.0]) / math.sqrt(2)
    assert ds.cut_radius(gens, d)["radius"] == pytest.approx(math.pi / math.sqrt(2))
    su3 = ds.su3_lattice_generators()
    direction = np.array([0.0, 1.0])
    brute = ds.cut_radius(su3, direction)
    assert not brute["closed_form_used"]
    assert abs(brute["radius"] - ds.naive_cut_radius(su3, direction)) > 0.1


def test_errors_map_to_python_exceptions():
    s = ds.Space("gr-real", 1, 1)
    with pytest.raises(ds.DomainError):
        ds.embed(s, np.array([[1.5]]))
    with pytest.raises(ds.NumericalError):
        ds.log_noncompact(s, np.array([[1.0], [1.0 - 1e-15]]))
    with pytest.raises(ValueError):
        ds.embed(s, np.array([[0.1j]]))


def test_verify_reports():
    reports = ds.verify(ds.Space("gr-real", 2, 3), "triple", samples=20)
    assert reports[0]["passed"] and reports[0]["samples"] == 20
    suite = ds.verify(ds.Space("oriented", 2, 2), samples=10)
    assert all(r["passed"] for r in suite)
    trig = ds.verify(ds.Space("gr-real", 1, 1), "trig", samples=10)[0]
    assert "worst_hyperbolic_printed_sign" in trig["details"]
