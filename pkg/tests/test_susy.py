import math

import numpy as np
import pytest

from tgrass.susy import (
    boson_ops,
    coherent_boson,
    displacement_vacuum,
    residual_bound,
    susy_coherent,
    tail_bound,
)
from tgrass.states import coherent_ket


def test_boson_ops():
    b, bd, m = boson_ops(16)
    comm = b @ bd - bd @ b
    np.testing.assert_allclose(comm[:16, :16], np.eye(16), atol=1e-12)
    assert comm[16, 16] == pytest.approx(-16)
    np.testing.assert_allclose(b @ m - m @ b, b, atol=1e-12)
    np.testing.assert_allclose(bd @ m - m @ bd, -bd, atol=1e-12)
    e1 = np.zeros(17)
    e1[1] = 1
    np.testing.assert_allclose(b @ e1, np.eye(17)[0])
    with pytest.raises(ValueError):
        boson_ops(0)


def test_vacuum():
    v = coherent_boson(0, 16)
    assert v.vector[0] == 1 and not np.any(v.vector[1:])
    assert v.tail_bound == 0


def test_tail_bound_series():
    for z in (0.3, 0.5, 1.0, 2.0):
        exact = sum(abs(z) ** (2 * m) / math.factorial(m) for m in range(17, 80))
        assert tail_bound(z, 16) == pytest.approx(exact, rel=1e-12)


def test_norm_for_z_one():
    v = coherent_boson(1.0, 16)
    gap = math.e - float(np.vdot(v.vector, v.vector).real)
    assert 0 <= gap <= v.tail_bound + 1e-15


@pytest.mark.parametrize("z", [0.5, 0.5 + 0.25j, -0.3j, 1.2])
def test_boson_residual_within_residual_bound(z):
    st = susy_coherent(z, "paper", 16)
    r = st.b_residual()
    assert r <= residual_bound(z, 16)
    # the residual is dominated by the one missing component
    exact = abs(z) ** 17 / math.sqrt(math.factorial(16))
    assert r == pytest.approx(exact, rel=1e-6)


@pytest.mark.parametrize("conv", ["paper", "paper-transported"])
def test_parafermion_eigen_property(conv):
    st = susy_coherent(0.5, conv)
    assert st.apply_a() == st.xi_times()


def test_factorization():
    st = susy_coherent(0.5 + 0.25j, "paper", 16)
    assert st.ket == coherent_ket("paper")
    np.testing.assert_allclose(st.boson.vector, coherent_boson(0.5 + 0.25j, 16).vector)
    comps = st.components()
    assert len(comps) == 17 * 3


def test_displacement_matches_product():
    for z in (0.5, 0.5 + 0.25j):
        d = displacement_vacuum(z, "paper", 16)
        c = susy_coherent(z, "paper", 16)
        assert d.ket == c.ket
        np.testing.assert_allclose(d.boson.vector, c.boson.vector, atol=1e-14)


def test_displacement_other_ordering_differs():
    d = displacement_vacuum(0.5, "paper", 16, ordering="xi-ad")
    assert d.ket != coherent_ket("paper")
    with pytest.raises(ValueError):
        displacement_vacuum(0.5, "paper", 16, ordering="nope")


def test_z_zero_gives_vacuum_times_coherent_ket():
    st = susy_coherent(0, "paper")
    assert st.boson.vector[0] == 1 and not np.any(st.boson.vector[1:])
    assert st.ket == coherent_ket("paper")


def test_json():
    data = susy_coherent(0.5 + 0.25j, "paper").to_json()
    assert data["truncation"] == 16 and len(data["boson"]) == 17
    assert data["tail_bound"] > 0 and data["residual_bound"] > 0
