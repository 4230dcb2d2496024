from pathlib import Path

import numpy as np
import pytest

import piezobeam as pb

DATA = Path(__file__).resolve().parents[2] / "data"
SANDWICH = str(DATA / "layups" / "sandwich.json")


@pytest.fixture(scope="module")
def sandwich():
    return pb.load_section(SANDWICH)


def test_builtin_materials():
    db = pb.MaterialDb.builtin()
    assert "PZT-5H" in db and "Al-6061" in db
    pzt = db.plane("PZT-5H")
    assert pzt.e31 < 0 and pzt.eps33 > 0


def test_sandwich_capacitance_ordering(sandwich):
    caps = {
        c: pb.capacitance_per_length(pb.reduce_section(sandwich, c)) * 1e6
        for c in (pb.Closure.ND, pb.Closure.NS, pb.Closure.NSR)
    }
    assert caps[pb.Closure.ND] < caps[pb.Closure.NSR] < caps[pb.Closure.NS]
    assert caps[pb.Closure.NSR] == pytest.approx(2.8029624386142373, rel=1e-10)


def test_full_matrix_is_symmetric(sandwich):
    k = pb.reduce_section(sandwich, pb.Closure.NSR).full()
    assert k.shape == (3, 3)
    np.testing.assert_allclose(k, k.T, rtol=1e-12, atol=0)


def test_oracle_agrees(sandwich):
    analytic = pb.reduce_section(sandwich, pb.Closure.NSR).full()
    oracle = pb.discretized_oracle(sandwich, pb.Closure.NSR, 20).full()
    assert np.linalg.norm(oracle - analytic) <= 1e-8 * np.linalg.norm(analytic)


def test_compare_rows(sandwich):
    rows = pb.compare_closures(sandwich, 2.86e-6)
    assert [r.closure for r in rows] == [pb.Closure.ND, pb.Closure.NS, pb.Closure.NSR]
    assert rows[2].deviation_percent == pytest.approx((2.8029624386142373 - 2.86) / 2.86 * 100, rel=1e-9)


def test_nsr_stress_resultants_vanish(sandwich):
    p = pb.stress_profile(sandwich, pb.Closure.NSR, 1e-4, 0.1, np.array([100.0]))
    h = sandwich.total_thickness
    assert abs(p.N2) <= 1e-10 * p.max_abs_t22 * h
    assert len(p.samples) == 33


def test_beam(sandwich):
    beam = pb.make_beam(sandwich, pb.Closure.NSR, 0.1)
    fs = pb.modal_frequencies(beam, pb.Circuit.SHORT, 3)
    fo = pb.modal_frequencies(beam, pb.Circuit.OPEN, 3)
    assert fs[0] == pytest.approx(170.63272232650422, rel=1e-10)
    assert all(o >= s for o, s in zip(fo, fs))
    assert pb.coupling_factor(beam) == pytest.approx(0.13566644035975806, rel=1e-10)
    w = pb.tip_deflection(beam, np.array([100.0]))
    assert pb.tip_deflection(pb.make_beam(sandwich, pb.Closure.NSR, 0.2), np.array([100.0])) == 4 * w


def test_errors_map_to_python(sandwich):
    with pytest.raises(pb.InputError):
        pb.load_section("/nonexistent/layup.json")
    with pytest.raises(ValueError):
        pb.make_beam(sandwich, pb.Closure.NS, -1.0)
    with pytest.raises(ValueError):
        pb.section_from_json('{"width_mm": 5, "layers": []}')
