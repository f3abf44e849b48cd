"""Grasp stiffness assembly, the eigensolver, and stability classification."""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))
from _oracles import eigenvalues_by_char_poly

from gstk.grasp import (
    ContactSpringModel,
    GraspConfiguration,
    GraspContact,
    GraspStiffnessMatrix,
    assemble,
    circular_separation,
    classify,
    contact_stiffness,
    great_circle_pose,
    min_eigenvalue,
    spring_model_from_hertz,
    symmetric_eigenvalues,
    three_finger_sphere_config,
)
from gstk.hertz import ContactPair, get_material, stiffness_coefficients
from gstk.screw import adjoint_of_pose, congruence_map_stiffness

RUBBER = get_material("rubber")
ALUMINIUM = get_material("aluminium")
PAIR = ContactPair(0.010, 0.040, RUBBER, ALUMINIUM)
SYMMETRIC = [math.radians(a) for a in (90.0, 210.0, 330.0)]


def make_grasp(angles=SYMMETRIC, P=5.0, r2=0.040):
    return three_finger_sphere_config(
        r2, 0.040, angles, P, (RUBBER, ALUMINIUM), fingertip_radius=0.010
    )


def test_contact_stiffness_layout():
    model = ContactSpringModel(100.0, 80.0, 0.5)
    K = contact_stiffness(model)
    assert K[0, 0] == 80.0 and K[2, 2] == 100.0 and K[5, 5] == 0.5
    assert K[1, 1] == 0.0  # one tangential spring by default
    dual = contact_stiffness(ContactSpringModel(100.0, 80.0, 0.5, "dual_tangential"))
    assert dual[1, 1] == 80.0
    assert np.count_nonzero(K) == 3 and np.count_nonzero(dual) == 4


def test_spring_model_validation():
    with pytest.raises(ValueError):
        ContactSpringModel(-1.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        ContactSpringModel(1.0, 1.0, math.inf)
    with pytest.raises(ValueError):
        ContactSpringModel(1.0, 1.0, 1.0, variant="triple")
    ContactSpringModel(0.0, 0.0, 0.0)  # unloaded contact is fine


def test_spring_model_from_hertz_matches_coefficients():
    model = spring_model_from_hertz(PAIR, 2.0, "dual_tangential")
    k = stiffness_coefficients(PAIR, 2.0)
    assert (model.k_n, model.k_t, model.k_tau) == (k.k_n, k.k_t, k.k_tau)
    assert model.variant == "dual_tangential"


def test_great_circle_pose_geometry():
    d = 0.040
    for angle, expected in [
        (math.radians(90.0), [d, 0.0, 0.0]),
        (math.radians(210.0), [-d / 2, 0.0, d * math.sqrt(3) / 2]),
        (math.radians(330.0), [-d / 2, 0.0, -d * math.sqrt(3) / 2]),
    ]:
        pose = great_circle_pose(angle, d)
        assert np.allclose(pose.p, expected, atol=1e-15)
        # contact z axis points back at the object centre
        assert np.allclose(pose.R[:, 2], -np.asarray(expected) / d, atol=1e-15)
        assert np.linalg.det(pose.R) == pytest.approx(1.0, abs=1e-12)


def test_circular_separation_wraps():
    assert circular_separation(0.1, 2 * math.pi - 0.1) == pytest.approx(0.2)
    assert circular_separation(1.0, 1.0) == 0.0
    assert circular_separation(0.0, math.pi) == pytest.approx(math.pi)


def test_configuration_validation():
    with pytest.raises(ValueError):
        GraspConfiguration(())
    with pytest.raises(ValueError):
        GraspContact(great_circle_pose(0.0, 0.04), PAIR, -1.0)
    with pytest.raises(ValueError):
        make_grasp(angles=[0.0, math.radians(5.0), math.radians(180.0)])
    with pytest.raises(ValueError):
        three_finger_sphere_config(
            0.040, 0.040, SYMMETRIC[:2], 5.0, (RUBBER, ALUMINIUM)
        )


def test_single_contact_assembly_is_one_congruence():
    grasp = GraspConfiguration((GraspContact(great_circle_pose(1.1, 0.04), PAIR, 3.0),))
    K = assemble(grasp, "dual_tangential").K
    adj = adjoint_of_pose(great_circle_pose(1.1, 0.04))
    model = spring_model_from_hertz(PAIR, 3.0, "dual_tangential")
    expected = congruence_map_stiffness(adj, contact_stiffness(model))
    assert np.array_equal(K, expected)


def test_assembly_is_exactly_additive_over_contacts():
    contacts = tuple(
        GraspContact(great_circle_pose(a, 0.04), PAIR, 2.0 + i)
        for i, a in enumerate(SYMMETRIC)
    )
    whole = assemble(GraspConfiguration(contacts), "dual_tangential").K
    parts = sum(
        assemble(GraspConfiguration((c,)), "dual_tangential").K for c in contacts
    )
    assert np.array_equal(whole, parts)


def test_stiffness_matrix_container_validation():
    with pytest.raises(ValueError):
        GraspStiffnessMatrix(np.eye(5))
    bad = np.eye(6)
    bad[0, 1] = 1e-3
    with pytest.raises(ValueError):
        GraspStiffnessMatrix(bad)
    K = GraspStiffnessMatrix(np.eye(6))
    with pytest.raises((ValueError, RuntimeError)):
        K.K[0, 0] = 2.0


def test_eigenvalues_match_reference_paths():
    rng = np.random.default_rng(0)
    for _ in range(50):
        G = rng.normal(size=(6, 6))
        K = 0.5 * (G + G.T)
        mine = symmetric_eigenvalues(K)
        assert np.allclose(mine, np.linalg.eigvalsh(K), atol=1e-12 * max(1.0, np.abs(K).max()))
        assert np.allclose(mine, eigenvalues_by_char_poly(K), atol=1e-8)


def test_eigenvalues_handle_special_structure():
    assert np.allclose(symmetric_eigenvalues(np.diag([3.0, -1.0, 2.0])), [-1.0, 2.0, 3.0])
    assert np.allclose(symmetric_eigenvalues(np.zeros((4, 4))), np.zeros(4))
    # rank deficient
    v = np.array([[1.0, 2.0, 2.0]])
    K = v.T @ v
    ev = symmetric_eigenvalues(K)
    assert np.allclose(ev, [0.0, 0.0, 9.0], atol=1e-12)
    # tiny magnitudes must not stall the sweep
    ev = symmetric_eigenvalues(np.diag([1e-300, 2e-300, 3e-300]))
    assert np.all(ev >= 0.0)


def test_eigenvalues_accept_the_container():
    K = assemble(make_grasp(), "dual_tangential")
    assert min_eigenvalue(K) == symmetric_eigenvalues(K)[0]


def test_classification_thresholds():
    assert classify(np.eye(6)).classification == "stable"
    marginal = classify(np.diag([0.0, 1, 1, 1, 1, 1]))
    assert marginal.classification == "marginal"
    assert marginal.lambda_min == pytest.approx(0.0, abs=1e-12)
    unstable = classify(np.diag([-0.5, 1, 1, 1, 1, 1]))
    assert unstable.classification == "unstable"
    assert unstable.eigenvalues[0] == pytest.approx(-0.5)


def test_symmetric_grasp_is_stable_with_two_tangential_springs():
    report = classify(assemble(make_grasp(), "dual_tangential"))
    assert report.classification == "stable"
    assert report.lambda_min > 0.0


def test_single_spring_variant_leaves_one_translation_free():
    # all three contact frames share the object y axis on a great-circle
    # grasp, so a single in-plane tangential spring resists nothing out of
    # plane and the assembled matrix is singular
    report = classify(assemble(make_grasp(), "single_tangential"))
    assert report.classification == "marginal"
    assert report.lambda_min == pytest.approx(0.0, abs=1e-9)
    ev = symmetric_eigenvalues(assemble(make_grasp(), "single_tangential"))
    assert np.sum(np.abs(ev) < 1e-9) == 1


def test_preload_raises_the_stiffness_floor():
    low = min_eigenvalue(assemble(make_grasp(P=1.0), "dual_tangential"))
    high = min_eigenvalue(assemble(make_grasp(P=6.0), "dual_tangential"))
    assert 0.0 < low < high


def test_concave_seat_beats_convex_object():
    concave = min_eigenvalue(assemble(make_grasp(r2=-0.040), "dual_tangential"))
    convex = min_eigenvalue(assemble(make_grasp(r2=0.040), "dual_tangential"))
    assert concave > convex > 0.0
