"""Deformation sequences of a structural complex.

A kinematical complex joins every node of each snapshot to its successor by
a motion link carrying the step displacement.  The spatial trace projects a
node's motion links onto space, where revisited positions close into loops;
work and conservativity checks live on that projection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chains import Chain, Cochain
from .coeffs import INTEGER, series_derivative, vector, vsub
from .complexes import Complex
from .errors import SnapshotMismatch, TooFewSamples


@dataclass
class KinematicalComplex:
    """All snapshots of a deforming network, joined by motion links.

    The underlying complex holds every snapshot's nodes and structural
    branches plus one motion link per node per step; ``u`` is the
    displacement cochain on the motion links.
    """

    snapshots: list
    complex: Complex
    steps: int

    def node_at(self, i, a):
        return a * self._r0 + i

    def structural_branch(self, b, a):
        return a * self._r1 + b

    def motion_link(self, i, a):
        return (self.steps + 1) * self._r1 + a * self._r0 + i

    @property
    def _r0(self):
        return self.snapshots[0].complex.r[0]

    @property
    def _r1(self):
        return self.snapshots[0].complex.r[1]

    @property
    def n(self):
        return self.snapshots[0].n

    def displacement(self, i, a):
        """Step displacement u(i)(a) = x_{a+1}(i) - x_a(i)."""
        return vsub(self.snapshots[a + 1].positions[i], self.snapshots[a].positions[i])

    @property
    def u(self):
        values = {
            self.motion_link(i, a): self.displacement(i, a)
            for a in range(self.steps)
            for i in range(self._r0)
        }
        return Cochain(self.complex, 1, values, vector(self.n), prune=False)

    def snapshot_cycle(self, chain, a):
        """Copy a 1-chain of the base structural complex into snapshot a."""
        values = {
            self.structural_branch(b, a): v for b, v in chain.coeffs.items()
        }
        return Chain(self.complex, 1, values, chain.module)

    def motion_face_boundary(self, b, a):
        """Boundary 1-chain of the (materialized on demand) quadrilateral face
        swept by structural branch b during step a.

        The four sides are the branch copy at a+1, minus the copy at a, plus
        the tail's motion link, minus the head's motion link; the result is
        always a 1-cycle.
        """
        tail, head = self.snapshots[0].complex.branches[b]
        values = {
            self.structural_branch(b, a + 1): 1,
            self.structural_branch(b, a): -1,
            self.motion_link(tail, a): 1,
            self.motion_link(head, a): -1,
        }
        return Chain(self.complex, 1, values, INTEGER)


def build_kinematical_complex(snapshots):
    """Join two or more equally shaped snapshots into a kinematical complex."""
    snapshots = list(snapshots)
    if len(snapshots) < 2:
        raise SnapshotMismatch("need at least two snapshots")
    base = snapshots[0].complex
    n = snapshots[0].n
    for g in snapshots[1:]:
        if g.complex.r[:2] != base.r[:2] or g.complex.branches != base.branches:
            raise SnapshotMismatch("snapshots must share node and branch structure")
        if g.n != n:
            raise SnapshotMismatch("snapshots must share the ambient dimension")

    steps = len(snapshots) - 1
    node_labels = []
    for a in range(steps + 1):
        node_labels.extend(f"{lab}@{a}" for lab in base.node_labels)
    r0, r1, _ = base.r
    endpoints = []
    branch_labels = []
    for a in range(steps + 1):
        for b, (t, h) in enumerate(base.branches):
            endpoints.append((a * r0 + t, a * r0 + h))
            branch_labels.append(f"{base.branch_labels[b]}@{a}")
    for a in range(steps):
        for i in range(r0):
            endpoints.append((a * r0 + i, (a + 1) * r0 + i))
            branch_labels.append(f"{base.node_labels[i]}@{a}->{a + 1}")

    big = Complex(node_labels, endpoints, branch_labels=branch_labels)
    return KinematicalComplex(snapshots=snapshots, complex=big, steps=steps)


def verify_deformation_homology(k, loop_chain, a):
    """Check the vector-homology relation: the structural loop's copy at
    step a+1 minus its copy at a equals the boundary of the swept faces."""
    swept = None
    for b, coef in loop_chain.coeffs.items():
        term = k.motion_face_boundary(b, a).scaled(coef)
        swept = term if swept is None else swept + term
    target = k.snapshot_cycle(loop_chain, a + 1) - k.snapshot_cycle(loop_chain, a)
    return swept == target


# ---------------------------------------------------------------------------
# spatial trace
# ---------------------------------------------------------------------------

@dataclass
class SpatialTrace:
    """Projection of the motion onto space, one path per node; revisited
    positions are identified so closed trajectories become loops."""

    complex: Complex
    node_vertices: list  # node_vertices[i][a] = trace vertex of node i at time a
    step_edges: dict  # (i, a) -> trace branch index, absent for zero steps


def spatial_trace(k):
    base = k.snapshots[0].complex
    labels = []
    vertex_of = []
    for i in range(base.r[0]):
        seen = {}
        per_time = []
        for a, g in enumerate(k.snapshots):
            pos = g.positions[i]
            if pos not in seen:
                seen[pos] = len(labels)
                labels.append(f"{base.node_labels[i]}@p{len(seen) - 1}")
            per_time.append(seen[pos])
        vertex_of.append(per_time)

    endpoints = []
    branch_labels = []
    step_edges = {}
    for i in range(base.r[0]):
        for a in range(k.steps):
            va, vb = vertex_of[i][a], vertex_of[i][a + 1]
            if va == vb:
                continue  # zero displacement: nothing swept, no edge
            step_edges[(i, a)] = len(endpoints)
            endpoints.append((va, vb))
            branch_labels.append(f"{base.node_labels[i]}@{a}->{a + 1}")
    trace = Complex(labels, endpoints, branch_labels=branch_labels)
    return SpatialTrace(complex=trace, node_vertices=vertex_of, step_edges=step_edges)


# ---------------------------------------------------------------------------
# sampled kinematical states
# ---------------------------------------------------------------------------

@dataclass
class KinematicalState:
    """Absolute state (positions, velocities, accelerations per node) and its
    relative counterpart (their coboundaries per branch) at one sample."""

    t: float
    x: Cochain
    v: Cochain
    a: Cochain
    s: Cochain
    s_dot: Cochain
    s_ddot: Cochain


def kinematical_state(complex, trajectories, dt, t_index):
    """Differentiate sampled node trajectories and assemble the state.

    ``trajectories`` maps node index -> array of shape (samples, n).  The
    relative state is the coboundary of the absolute one, so differentiation
    and coboundary commute by construction.
    """
    r0 = complex.r[0]
    arrays = [np.asarray(trajectories[i], dtype=float) for i in range(r0)]
    samples = arrays[0].shape[0]
    if samples < 3:
        raise TooFewSamples("second derivatives need at least 3 samples")
    n = arrays[0].shape[1]
    for arr in arrays:
        if arr.shape != (samples, n):
            raise SnapshotMismatch("trajectories must share shape")
    if not (0 <= t_index < samples):
        raise TooFewSamples(f"sample index {t_index} out of range")

    vel = [series_derivative(arr, dt) for arr in arrays]
    acc = [series_derivative(v, dt) for v in vel]
    mod = vector(n)

    def cochain0(source):
        values = {i: tuple(source[i][t_index].tolist()) for i in range(r0)}
        return Cochain(complex, 0, values, mod, prune=False)

    def delta(c0):
        values = {}
        for a, (tail, head) in enumerate(complex.branches):
            values[a] = vsub(c0[head], c0[tail])
        return Cochain(complex, 1, values, mod, prune=False)

    x = cochain0(arrays)
    v = cochain0(vel)
    a = cochain0(acc)
    return KinematicalState(
        t=t_index * dt, x=x, v=v, a=a, s=delta(x), s_dot=delta(v), s_ddot=delta(a)
    )
