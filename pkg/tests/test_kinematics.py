import numpy as np
import pytest

import homnet as hn
from homnet import errors
from homnet import geometry as geo
from homnet import kinematics as kin


def snapshots_of(complex, *position_lists):
    return [
        geo.GeometricComplex(complex=complex, n=len(p[0]), positions=[tuple(q) for q in p])
        for p in position_lists
    ]


@pytest.fixture
def triangle():
    return hn.build_complex(["A", "B", "C"], [("A", "B"), ("A", "C"), ("B", "C")])


def test_translation_motion_links(triangle):
    base = [(0, 0), (1, 0), (0, 1)]
    moved = [(2, 3), (3, 3), (2, 4)]
    k = kin.build_kinematical_complex(snapshots_of(triangle, base, moved))
    assert k.steps == 1
    for i in range(3):
        assert k.displacement(i, 0) == (2, 3)
        a = k.motion_link(i, 0)
        assert k.complex.branches[a] == (k.node_at(i, 0), k.node_at(i, 1))
    u = k.u
    assert u[k.motion_link(1, 0)] == (2, 3)


def test_identical_snapshots_give_zero_displacements(triangle):
    base = [(0, 0), (1, 0), (0, 1)]
    k = kin.build_kinematical_complex(snapshots_of(triangle, base, base, base))
    assert k.steps == 2
    assert all(
        k.displacement(i, a) == (0, 0) for i in range(3) for a in range(2)
    )
    trace = kin.spatial_trace(k)
    assert trace.complex.r == (3, 0, 0)  # degenerate: every node sits still


def test_snapshot_mismatch_rejected(triangle):
    other = hn.build_complex(["A", "B"], [("A", "B")])
    g0 = geo.GeometricComplex(complex=triangle, n=2, positions=[(0, 0), (1, 0), (0, 1)])
    g1 = geo.GeometricComplex(complex=other, n=2, positions=[(0, 0), (1, 0)])
    with pytest.raises(errors.SnapshotMismatch):
        kin.build_kinematical_complex([g0, g1])
    with pytest.raises(errors.SnapshotMismatch):
        kin.build_kinematical_complex([g0])


def test_structural_cycles_stay_homologous(triangle):
    base = [(0, 0), (4, 0), (2, 3)]
    squashed = [(0, 0), (5, 1), (1, 2)]
    k = kin.build_kinematical_complex(snapshots_of(triangle, base, squashed))
    loop = hn.Chain(triangle, 1, {0: 1, 2: 1, 1: -1}, hn.INTEGER)
    assert kin.verify_deformation_homology(k, loop, 0)


def test_motion_face_boundaries_are_cycles(triangle):
    base = [(0, 0), (4, 0), (2, 3)]
    squashed = [(0, 0), (5, 1), (1, 2)]
    k = kin.build_kinematical_complex(snapshots_of(triangle, base, squashed))
    for b in range(3):
        assert hn.is_cycle(k.motion_face_boundary(b, 0))


def test_cyclic_motion_closes_in_spatial_trace(triangle):
    # quarter turns returning to the start: the trace of each node is a loop
    base = np.array([(2, 0), (0, 2), (-2, 0)], dtype=float)
    quarter = np.array([[0.0, -1.0], [1.0, 0.0]])
    frames = [base]
    for _ in range(4):
        frames.append(frames[-1] @ quarter.T)
    snaps = snapshots_of(triangle, *[[tuple(r) for r in f] for f in frames])
    k = kin.build_kinematical_complex(snaps)
    trace = kin.spatial_trace(k)
    assert hn.betti_numbers(trace.complex)[1] == 3  # one loop per node
    for i in range(3):
        assert trace.node_vertices[i][0] == trace.node_vertices[i][-1]


def test_kinematical_state_uniform_motion(triangle):
    n_samples, dt = 21, 0.05
    t = np.arange(n_samples) * dt
    base = {0: (0.0, 0.0), 1: (1.0, 0.0), 2: (0.0, 1.0)}
    w = np.array([2.0, 3.0])
    traj = {
        i: np.stack([base[i][0] + w[0] * t, base[i][1] + w[1] * t], axis=1)
        for i in range(3)
    }
    state = kin.kinematical_state(triangle, traj, dt, 10)
    for i in range(3):
        assert np.allclose(state.v[i], w, atol=1e-9)
        assert np.allclose(state.a[i], (0, 0), atol=1e-9)
    # all nodes share the velocity, so relative velocity vanishes
    for a in range(3):
        assert np.allclose(state.s_dot[a], (0, 0), atol=1e-9)
        assert np.allclose(state.s_ddot[a], (0, 0), atol=1e-9)


def test_kinematical_state_static_network(triangle):
    traj = {
        0: np.tile([0.0, 0.0], (5, 1)),
        1: np.tile([1.0, 0.0], (5, 1)),
        2: np.tile([0.0, 1.0], (5, 1)),
    }
    state = kin.kinematical_state(triangle, traj, 0.1, 2)
    assert np.allclose(state.v[0], (0, 0))
    assert state.s[0] == (1.0, -0.0) or np.allclose(state.s[0], (1, 0))


def test_kinematical_state_needs_three_samples(triangle):
    traj = {i: np.zeros((2, 2)) + i for i in range(3)}
    with pytest.raises(errors.TooFewSamples):
        kin.kinematical_state(triangle, traj, 0.1, 0)


def test_relative_state_is_coboundary_of_absolute(triangle):
    # d/dt commutes with the difference operator: check delta(v) == s_dot
    n_samples, dt = 31, 0.02
    t = np.arange(n_samples) * dt
    traj = {
        i: np.stack(
            [np.sin(t + i), np.cos(0.5 * t - i)], axis=1
        )
        for i in range(3)
    }
    state = kin.kinematical_state(triangle, traj, dt, 15)
    for a, (tail, head) in enumerate(triangle.branches):
        dv = np.array(state.v[head]) - np.array(state.v[tail])
        assert np.allclose(state.s_dot[a], dv, atol=1e-12)
