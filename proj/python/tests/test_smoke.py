import math

import numpy as np
import pytest

import chanlink as cl


def test_family_construction_and_transfer():
    fam = cl.make_family("C", 0.5)
    assert fam.kind == "C"
    assert fam.diag == [0.5, 0.5, 0.5] or tuple(fam.diag) == (0.5, 0.5, 0.5)
    choi = fam.channel.choi
    assert choi.shape == (4, 4)
    assert choi[0, 0] == 0.75 and choi[0, 3] == 0.5
    assert cl.verify_cptp(fam.channel).ok
    d = cl.transfer_diagonal(fam.channel)
    assert np.allclose(d, [1, 0.5, 0.5, 0.5], atol=1e-12)


def test_param_range_raises():
    with pytest.raises(cl.Error):
        cl.make_family("C", -0.5)


def test_apply_and_kraus_round_trip():
    fam = cl.make_family("C", 0.7)
    out = cl.apply(fam.channel, np.array([[1, 0], [0, -1]], dtype=complex))
    assert np.allclose(out, 0.7 * np.diag([1, -1]), atol=1e-12)
    ks = cl.kraus_from_choi(fam.channel)
    back = cl.choi_from_kraus(ks, fam.channel.in_legs, fam.channel.out_legs)
    assert np.max(np.abs(back.choi - fam.channel.choi)) < 1e-10


def test_fidelity_values():
    c = cl.make_family("C", 1 / 3).channel
    d = cl.make_family("D", 1 / 3).channel
    f = cl.channel_fidelity(c, d)
    assert abs(f.value - 0.8796528112548947) < 1e-9
    assert abs(cl.eigen_fidelity(c, d).value - f.value) < 1e-9
    v0, w0 = cl.uhlmann_maximizer(c, d)
    assert abs(cl.uhlmann_overlap(v0, w0, 1) - f.value) < 1e-9
    assert abs(cl.uhlmann_overlap(v0, w0, 3) - f.value ** 3) < 1e-9


def test_state_fidelity():
    rho = np.diag([1.0, 0.0]).astype(complex)
    assert abs(cl.state_fidelity(rho, np.eye(2, dtype=complex) / 2) - 1 / math.sqrt(2)) < 1e-12


def test_minimal_dilation():
    fam = cl.make_family("C", 0.5)
    v = cl.minimal_dilation(fam.channel)
    assert v.anc_dim == 4
    assert v.isometry_gap() < 1e-9
    out = cl.apply_dilation(v, np.array([[1, 0], [0, 0]], dtype=complex))
    assert np.allclose(out, np.diag([0.75, 0.25]), atol=1e-10)


def test_link_product_and_compose():
    m = cl.random_channel(2, 2, seed=3)
    n = cl.random_channel(2, 2, seed=4)
    n2 = cl.rename_legs(n, {"0": "1", "1": "2"})
    linked = cl.link_product(n2, m, ["1"])
    composed = cl.compose_channel(n2, m)
    assert np.max(np.abs(linked.choi - composed.choi)) < 1e-12
    assert cl.verify_cptp(linked).ok


def test_discrimination_sweep():
    s = cl.discrimination_sweep(cl.make_family("C", 1.0).channel,
                                cl.make_family("C", 0.0).channel, 6, 0.01)
    assert s.n_tilde == 6
    assert abs(s.fid1 - 0.5) < 1e-12
    assert abs(s.rows[5].fidelity - 2 ** -6) < 1e-12
    assert s.max_crosscheck_gap < 1e-8


def test_json_round_trip(tmp_path):
    fam = cl.make_family("S", -0.3)
    path = str(tmp_path / "s.json")
    cl.store_channel(path, fam.channel)
    back = cl.load_channel(path)
    assert np.max(np.abs(back.choi - fam.channel.choi)) == 0.0


def test_dimension_guard():
    saved = cl.dimension_guard()
    try:
        cl.set_dimension_guard(16)
        with pytest.raises(cl.Error):
            cl.self_link_power(cl.make_family("C", 0.5).channel, 3)
    finally:
        cl.set_dimension_guard(saved)
