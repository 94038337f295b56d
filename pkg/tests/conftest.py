import itertools
import random
from fractions import Fraction

import pytest

import homnet as hn
from homnet import geometry as geo


@pytest.fixture
def circle():
    """Three nodes on a loop: branches AB, AC, BC."""
    return hn.build_complex(["A", "B", "C"], [("A", "B"), ("A", "C"), ("B", "C")])


@pytest.fixture
def disc():
    """Triangulated disc: rim ABC with interior node D and three faces."""
    return hn.build_complex(
        ["A", "B", "C", "D"],
        [("A", "B"), ("A", "C"), ("A", "D"), ("B", "C"), ("B", "D"), ("C", "D")],
        faces=[("A", "B", "D"), ("B", "C", "D"), ("A", "D", "C")],
    )


@pytest.fixture
def circle_geo(circle):
    return geo.realize(circle, 2, {"A": (0, 0), "B": (1, 0), "C": (0, 1)})


@pytest.fixture
def triangle_geo():
    cx = hn.build_complex(["A", "B", "C"], [("A", "B"), ("A", "C"), ("B", "C")])
    return geo.realize(cx, 2, {"A": (0, 0), "B": (4, 0), "C": (2, 3)})


@pytest.fixture
def rectangle_geo():
    cx = hn.build_complex(
        ["A", "B", "C", "D"],
        [("A", "B"), ("B", "C"), ("C", "D"), ("D", "A")],
    )
    return geo.realize(cx, 2, {"A": (0, 0), "B": (1, 0), "C": (1, 1), "D": (0, 1)})


@pytest.fixture
def tetra_geo():
    """Projection of the tetrahedron 1-skeleton: triangle plus its centroid,
    at integer coordinates so everything downstream stays exact."""
    cx = hn.build_complex(
        ["A", "B", "C", "D"],
        [("A", "B"), ("A", "C"), ("A", "D"), ("B", "C"), ("B", "D"), ("C", "D")],
    )
    return geo.realize(cx, 2, {"A": (0, 0), "B": (4, 0), "C": (2, 3), "D": (2, 1)})


@pytest.fixture
def projective_plane():
    """Minimal 6-vertex triangulation of the projective plane (the antipodal
    quotient of the icosahedron); its first homology has 2-torsion."""
    faces = [
        (0, 1, 2), (0, 1, 4), (0, 2, 3), (0, 3, 5), (0, 4, 5),
        (1, 2, 5), (1, 3, 4), (1, 3, 5), (2, 3, 4), (2, 4, 5),
    ]
    verts = [f"v{i}" for i in range(6)]
    edges = sorted({tuple(sorted(e)) for f in faces for e in itertools.combinations(f, 2)})
    return hn.build_complex(
        verts,
        [(verts[a], verts[b]) for a, b in edges],
        faces=[tuple(verts[i] for i in f) for f in faces],
    )


def random_complex(rng, max_nodes=7, with_faces=True):
    """Random small complex; faces (when requested) are triangles whose three
    edges exist, so the boundary-of-boundary identity holds by construction."""
    r0 = rng.randint(1, max_nodes)
    labels = [f"n{i}" for i in range(r0)]
    branches = []
    if r0 >= 2:
        for _ in range(rng.randint(0, 2 * r0)):
            tail = rng.randrange(r0)
            head = rng.randrange(r0)
            if tail != head:
                branches.append((labels[tail], labels[head]))
    faces = []
    if with_faces and r0 >= 3 and branches:
        present = {}
        for a, (t, h) in enumerate(branches):
            present.setdefault(frozenset((t, h)), (t, h))
        for combo in itertools.combinations(range(r0), 3):
            t1, t2, t3 = (labels[i] for i in combo)
            if (
                frozenset((t1, t2)) in present
                and frozenset((t2, t3)) in present
                and frozenset((t1, t3)) in present
                and rng.random() < 0.4
            ):
                faces.append((t1, t2, t3))
    names = [f"b{k}" for k in range(len(branches))]
    return hn.build_complex(labels, branches, faces=faces, branch_labels=names)


def random_chain(rng, cx, dim, module=None, span=9):
    module = module or hn.INTEGER
    values = {}
    for i in range(cx.r[dim]):
        if rng.random() < 0.6:
            values[i] = rng.randint(-span, span)
    if module is hn.RATIONAL:
        values = {
            i: Fraction(v, rng.randint(1, 7)) for i, v in values.items()
        }
    return hn.Chain(cx, dim, values, module)


def random_cochain(rng, cx, dim, module=None, span=9):
    module = module or hn.INTEGER
    values = {}
    for i in range(cx.r[dim]):
        if rng.random() < 0.6:
            values[i] = rng.randint(-span, span)
    if module is hn.RATIONAL:
        values = {
            i: Fraction(v, rng.randint(1, 7)) for i, v in values.items()
        }
    return hn.Cochain(cx, dim, values, module)


@pytest.fixture
def rng():
    return random.Random(180451)
