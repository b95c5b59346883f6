import math

import pytest

import pvc

P = 12347
G = [2, 5, 6]


def test_params():
    assert pvc.is_prime(12347)
    assert not pvc.is_prime(12348)
    assert pvc.validate_params(P, G)
    assert sorted(pvc.prime_factors(P)) == [2, 6173]
    with pytest.raises(pvc.PvcError):
        pvc.validate_params(P, [1, 5, 6])
    with pytest.raises(pvc.PvcError):
        pvc.validate_params(P, [2, 2, 6])


def test_key_agreement():
    pub_a = pvc.public_vector(P, G, 3)
    pub_b = pvc.public_vector(P, G, 7)
    assert pub_a == [8, 125, 216]
    assert pub_b == [128, 4043, 8302]
    shared_ab = pvc.shared_vector(P, G, 3, pub_b)
    shared_ba = pvc.shared_vector(P, G, 7, pub_a)
    assert shared_ab == shared_ba == [10509, 11849, 10836]


def test_key_matrices():
    v, u, v_inv, det = pvc.key_matrices(P, [10509, 11849, 10836])
    assert det == 1629
    assert v[0] == [0, 10509, 10509]
    assert u[1][1] == 11849
    # V * V^-1 == I over F_p
    for r in range(3):
        for c in range(3):
            s = sum(v[r][k] * v_inv[k][c] for k in range(3)) % P
            assert s == (1 if r == c else 0)


def test_plan_indices():
    assert pvc.plan_indices(8, 10) == ([1, 4, 6], [1, 4, 7, 8])
    assert pvc.plan_indices(5, 7) == ([1, 3], [1, 4, 5])
    assert pvc.plan_indices(12, 23) == ([1, 4, 7, 10], [1, 4, 7, 10, 13, 16, 19, 21])


def test_round_trip():
    msg = b"Peace at home, peace in the world."
    pub_b = pvc.public_vector(P, G, 7)
    wire = pvc.encrypt(msg, P, G, 3, pub_b, rows=8, cols=10,
                       start_row=2, start_col=3, seed=11)
    assert wire[:4] == b"PVC1"
    assert len(wire) == 302
    assert pvc.decrypt(wire, 7) == msg
    # determinism under the same seed, freshness under another
    same = pvc.encrypt(msg, P, G, 3, pub_b, rows=8, cols=10,
                       start_row=2, start_col=3, seed=11)
    other = pvc.encrypt(msg, P, G, 3, pub_b, rows=8, cols=10,
                        start_row=2, start_col=3, seed=12)
    assert same == wire
    assert other != wire
    assert pvc.decrypt(other, 7) == msg


def test_failure_paths():
    msg = b"hello block world"
    pub_b = pvc.public_vector(P, G, 7)
    wire = pvc.encrypt(msg, P, G, 3, pub_b, seed=5)
    with pytest.raises(pvc.PvcError):
        pvc.decrypt(wire[:40], 7)
    with pytest.raises(pvc.PvcError):
        pvc.decrypt(wire, 7, offsets=False)
    tampered = bytearray(wire)
    tampered[-1] ^= 0x01
    with pytest.raises(pvc.PvcError):
        pvc.decrypt(bytes(tampered), 7)


def test_count_ops():
    assert pvc.count_ops(5, 7) == (216, 216, 54)
    assert pvc.count_ops(8, 10) == (432, 432, 108)
    assert pvc.count_ops(12, 23) == (1152, 1152, 288)


def test_entropy():
    h, h_max, distinct = pvc.entropy(list(range(64)))
    assert distinct == 64
    assert h == pytest.approx(h_max) == pytest.approx(6.0)


def test_randomness_suite():
    wire = pvc.encrypt(bytes(range(80)), P, G, 3,
                       pvc.public_vector(P, G, 7), seed=7)
    r = pvc.randomness_suite(wire * 2)
    assert r["bits"] >= 2000
    for key in ("monobit", "runs", "poker4"):
        assert 0.0 <= r[key] <= 1.0


def test_avalanche():
    r = pvc.avalanche(50, 8, 10, seed=3)
    assert r["structural_violations"] == 0
    assert r["row_diffusion"] == pytest.approx(1 / 3)
    assert r["element_diffusion"] == pytest.approx(2 / 9)


def test_kpa():
    bare = pvc.kpa_probe(pairs=3, offsets=False, trials=10, seed=9)
    assert bare["recovered"] >= 9
    masked = pvc.kpa_probe(pairs=3, offsets=True, trials=10, seed=9)
    assert masked["recovered"] == 0
    assert masked["residual_samples"] == 10 * 18
    gap = masked["residual_entropy_max"] - masked["residual_entropy"]
    assert gap < 0.1


def test_sts_demo():
    out = pvc.sts_demo(seed=21)
    assert out["initiator_shared"] == out["responder_shared"]
    assert all(1 <= k < P for k in out["initiator_shared"])
