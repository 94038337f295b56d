"""Finite oriented simplicial complexes of dimension at most two.

A complex stores its branches as ordered (tail, head) node pairs and its
faces as oriented triples of signed branches; the incidence matrices of the
boundary operator are derived from that data.  Sign convention: the boundary
of a branch is head minus tail, and a face contributes each of its three
branches with the sign of the traversal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DuplicateLabel,
    InternalMismatch,
    NonClosingFace,
    SelfLoopBranch,
    UnknownLabel,
)


@dataclass(frozen=True)
class SimplexId:
    """Reference to one simplex: its dimension (0, 1 or 2) and ordinal index."""

    dim: int
    index: int


class Complex:
    """Inventory of nodes, branches and faces plus the boundary operator."""

    def __init__(self, node_labels, branch_endpoints, face_edges=(),
                 branch_labels=None, face_labels=None):
        self.node_labels = list(node_labels)
        if len(set(self.node_labels)) != len(self.node_labels):
            raise DuplicateLabel("node labels are not unique")
        self.branches = []
        for tail, head in branch_endpoints:
            if tail == head:
                raise SelfLoopBranch(
                    f"branch with identical endpoints (node {tail})"
                )
            if not (0 <= tail < len(self.node_labels)) or not (0 <= head < len(self.node_labels)):
                raise UnknownLabel(f"branch endpoint out of range: ({tail}, {head})")
            self.branches.append((tail, head))

        self.faces = []
        for edges in face_edges:
            edges = tuple(edges)
            if len(edges) != 3:
                raise NonClosingFace("a face must consist of exactly three branches")
            bal = {}
            for b, s in edges:
                if not (0 <= b < len(self.branches)) or s not in (-1, 1):
                    raise UnknownLabel(f"bad signed branch ({b}, {s}) in face")
                tail, head = self.branches[b]
                bal[head] = bal.get(head, 0) + s
                bal[tail] = bal.get(tail, 0) - s
            if any(v != 0 for v in bal.values()):
                raise NonClosingFace(f"face {edges} does not close")
            self.faces.append(edges)

        if branch_labels is None:
            branch_labels = [
                f"{self.node_labels[t]}{self.node_labels[h]}" for t, h in self.branches
            ]
        if face_labels is None:
            face_labels = [f"f{k}" for k in range(len(self.faces))]
        self.branch_labels = list(branch_labels)
        self.face_labels = list(face_labels)
        if len(self.branch_labels) != len(self.branches):
            raise DuplicateLabel("one label per branch required")
        if len(set(self.branch_labels)) != len(self.branch_labels):
            raise DuplicateLabel("branch labels are not unique")
        if len(self.face_labels) != len(self.faces):
            raise DuplicateLabel("one label per face required")

        self._node_index = {lab: i for i, lab in enumerate(self.node_labels)}
        self._branch_index = {lab: a for a, lab in enumerate(self.branch_labels)}
        self._check_boundary_of_boundary()

    # -- inventory ---------------------------------------------------------

    @property
    def r(self):
        return (len(self.node_labels), len(self.branches), len(self.faces))

    @property
    def dim(self):
        r0, r1, r2 = self.r
        return 2 if r2 else (1 if r1 else 0)

    def node_index(self, label):
        try:
            return self._node_index[label]
        except KeyError:
            raise UnknownLabel(f"unknown node {label!r}") from None

    def branch_index(self, label):
        try:
            return self._branch_index[label]
        except KeyError:
            raise UnknownLabel(f"unknown branch {label!r}") from None

    def tail(self, a):
        return self.branches[a][0]

    def head(self, a):
        return self.branches[a][1]

    def labels(self, dim):
        return (self.node_labels, self.branch_labels, self.face_labels)[dim]

    # -- boundary operator matrices -----------------------------------------

    @property
    def incidence_1(self):
        """Branch-by-node matrix of the boundary operator: -1 tail, +1 head."""
        r0 = len(self.node_labels)
        rows = []
        for tail, head in self.branches:
            row = [0] * r0
            row[tail] = -1
            row[head] = 1
            rows.append(row)
        return rows

    @property
    def incidence_2(self):
        """Face-by-branch matrix; empty when the complex has no faces."""
        r1 = len(self.branches)
        rows = []
        for edges in self.faces:
            row = [0] * r1
            for b, s in edges:
                row[b] += s
            rows.append(row)
        return rows

    def _check_boundary_of_boundary(self):
        inc1 = self.incidence_1
        for row in self.incidence_2:
            tot = [0] * len(self.node_labels)
            for a, coef in enumerate(row):
                if coef:
                    for i, e in enumerate(inc1[a]):
                        tot[i] += coef * e
            if any(tot):
                raise InternalMismatch("boundary of boundary is nonzero")

    def __repr__(self):
        r0, r1, r2 = self.r
        return f"Complex(r0={r0}, r1={r1}, r2={r2})"


def build_complex(nodes, branches, faces=None, branch_labels=None, face_labels=None):
    """Assemble a complex from node labels, (tail, head) label pairs and
    optional faces given as oriented vertex triples.

    Each face (p, q, r) walks p -> q -> r -> p; every leg must be realized by
    an existing branch in either orientation, otherwise the face cannot close.
    """
    node_labels = list(nodes)
    if len(set(node_labels)) != len(node_labels):
        raise DuplicateLabel("node labels are not unique")
    index = {lab: i for i, lab in enumerate(node_labels)}

    endpoint_pairs = []
    for tail, head in branches:
        if tail not in index:
            raise UnknownLabel(f"unknown node {tail!r}")
        if head not in index:
            raise UnknownLabel(f"unknown node {head!r}")
        endpoint_pairs.append((index[tail], index[head]))

    by_endpoints = {}
    for a, pair in enumerate(endpoint_pairs):
        by_endpoints.setdefault(pair, a)

    face_edges = []
    resolved_face_labels = [] if face_labels is None else None
    for face in faces or ():
        verts = list(face)
        if len(verts) != 3:
            raise NonClosingFace("a face must have three vertices")
        for v in verts:
            if v not in index:
                raise UnknownLabel(f"unknown node {v!r}")
        edges = []
        for u, v in zip(verts, verts[1:] + verts[:1]):
            iu, iv = index[u], index[v]
            if (iu, iv) in by_endpoints:
                edges.append((by_endpoints[(iu, iv)], 1))
            elif (iv, iu) in by_endpoints:
                edges.append((by_endpoints[(iv, iu)], -1))
            else:
                raise NonClosingFace(f"face {verts} needs a branch between {u!r} and {v!r}")
        face_edges.append(tuple(edges))
        if resolved_face_labels is not None:
            resolved_face_labels.append("".join(str(v) for v in verts))

    return Complex(
        node_labels,
        endpoint_pairs,
        face_edges,
        branch_labels=branch_labels,
        face_labels=face_labels if face_labels is not None else resolved_face_labels,
    )


@dataclass
class ConeResult:
    """Cone of a complex: every original node gains a branch to a fresh apex."""

    complex: Complex
    apex: int
    node_map: list
    branch_map: list
    star: list  # star[i] = index of the new branch joining node i to the apex


def cone(complex, apex_label):
    """Join every node to a new apex vertex; the new branch at node i has
    boundary apex - node(i).  Original simplex indices are preserved."""
    if apex_label in complex.node_labels:
        raise DuplicateLabel(f"apex label {apex_label!r} already names a node")
    r0, r1, _ = complex.r
    node_labels = complex.node_labels + [apex_label]
    endpoints = list(complex.branches)
    branch_labels = list(complex.branch_labels)
    star = []
    for i in range(r0):
        star.append(len(endpoints))
        endpoints.append((i, r0))
        branch_labels.append(f"{complex.node_labels[i]}{apex_label}")
    out = Complex(
        node_labels,
        endpoints,
        complex.faces,
        branch_labels=branch_labels,
        face_labels=complex.face_labels,
    )
    return ConeResult(
        complex=out,
        apex=r0,
        node_map=list(range(r0)),
        branch_map=list(range(r1)),
        star=star,
    )


def fresh_label(complex, base):
    """A node label not yet taken: base, then base', base'', ..."""
    label = base
    while label in complex.node_labels:
        label += "'"
    return label


def path_components(complex):
    """Partition of the node indices by branch connectivity, as sorted lists."""
    parent = list(range(complex.r[0]))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for tail, head in complex.branches:
        ra, rb = find(tail), find(head)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    groups = {}
    for i in range(complex.r[0]):
        groups.setdefault(find(i), []).append(i)
    return [groups[k] for k in sorted(groups)]
