import json

import numpy as np
import pytest

import hbundle


def test_killing_pairs_e1_f1():
    e1 = np.zeros((3, 3), complex)
    f1 = np.zeros((3, 3), complex)
    e1[0, 2] = 1
    f1[2, 0] = 1
    assert hbundle.killing(e1, f1) == pytest.approx(6.0)


def test_tensor_and_projection():
    assert hbundle.decompose_tensor(3) == [4, 2]
    p = hbundle.cg_projection(1, "up")
    assert np.allclose(p @ p.conj().T, np.eye(3), atol=1e-14)


def test_classification():
    assert sorted(hbundle.classify_chains(3, 2)) == ["DD", "UU"]
    assert hbundle.classify_chains(2, 3) == ["UUU"]


def test_chain_constants_and_gamma():
    rep = hbundle.realize_chain(2, "up", 1, 2, -1.3, [1.0, 0.7])
    assert rep.dim == 9
    assert rep.validate()["pass"]
    c = rep.constants()
    assert c["affine"] and c["regular"]
    assert hbundle.intertwining_residual(rep, 5) < 1e-8
    assert hbundle.homomorphism_residual(rep, 4) < 1e-10
    zero = rep.with_zero_y()
    g = hbundle.gamma_matrix(zero, 3)
    assert np.array_equal(g, np.eye(g.shape[0]))


def test_irregular_lambda_raises():
    rep = hbundle.realize_chain(2, "up", 1, 2, 1.0 / 3.0)
    with pytest.raises(ValueError):
        hbundle.gamma_matrix(rep, 3)


def test_scalar_kernel_and_gram():
    z = np.array([0.2 + 0.1j, -0.3j])
    w = np.array([0.1, 0.25 + 0.05j])
    k = hbundle.kernel(2, 0, -2.0, z, w)
    assert k[0, 0] == pytest.approx((1 - np.vdot(w, z)) ** -3)
    g = hbundle.gram(2, 0, -2.0, 4)
    assert g["positive"]
    # monomials by degree, then lexicographic: 1, z2, z1, z2^2, z1 z2, z1^2, ...
    # ||z1^2||^2 = 2! / (3)_2 = 1/6
    assert g["gram"][5, 5].real == pytest.approx(1 / 6)


def test_threshold_and_kernel_dimension():
    scan = hbundle.threshold_scan(2, 0, [-1.0, -0.5, 0.0, 0.5], 6)
    assert scan["monotone"]
    assert scan["bracket"] == (-0.5, 0.0)
    rep = hbundle.realize_chain()
    assert hbundle.joint_kernel_dim(rep, np.zeros(2), 6) == rep.dim


def test_suite_report_is_json():
    report = json.loads(hbundle.suite_report(json.dumps({"cd_degree": 5, "similarity_degrees": [1, 2, 3]})))
    assert report["command"] == "suite"
    assert report["summary"]["fail"] == 0
