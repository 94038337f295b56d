"""Cycle/boundary tests with witnesses, Betti numbers, generators, torsion,
Euler characteristic and the cocycle/coboundary machinery.

Everything structural is computed exactly over the rationals; float-valued
chains get tolerance-based versions of the same tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exact
from .chains import Chain, Cochain, boundary, evaluate
from .complexes import path_components
from .coeffs import INTEGER, RATIONAL
from .errors import InternalMismatch, KindMismatch, NotACycle

DEFAULT_TOL = 1e-9

_EXACT_SCALARS = {"integer", "rational"}
_FLOAT_SCALARS = {"real64", "timeseries"}


def _transpose(rows):
    return [list(col) for col in zip(*rows)] if rows else []


def _boundary_matrix(complex, k):
    """Matrix of the boundary map on k-chains: one row per (k-1)-simplex,
    one column per k-simplex."""
    if k == 1:
        mat = _transpose(complex.incidence_1)
        return mat if mat else [[] for _ in range(complex.r[0])]
    if k == 2:
        mat = _transpose(complex.incidence_2)
        return mat if mat else [[] for _ in range(complex.r[1])]
    raise ValueError(f"no boundary matrix in dimension {k}")


def _rank_boundary(complex, k):
    if k <= 0 or k > complex.dim:
        return 0
    mat = (complex.incidence_1, complex.incidence_2)[k - 1]
    return exact.rank(mat)


def is_cycle(chain, tol=None):
    """True when the boundary vanishes: exactly for exact coefficient kinds,
    within the max-norm tolerance otherwise."""
    if chain.dim == 0:
        return True
    b = boundary(chain)
    if chain.module.exact:
        return b.is_zero(0)
    return b.is_zero(DEFAULT_TOL if tol is None else tol)


@dataclass
class BoundaryTest:
    bounds: bool
    witness: Chain | None = None


def is_boundary(chain, tol=None):
    """Decide whether a cycle bounds, producing a witness chain when it does.

    Exact coefficient kinds are solved exactly over the rationals; real64
    chains use a least-squares solve with a residual tolerance.
    """
    if not is_cycle(chain, tol):
        raise NotACycle("only cycles can bound")
    cx = chain.complex
    k = chain.dim
    if k >= cx.dim or cx.r[k + 1] == 0:
        if chain.is_zero(0 if chain.module.exact else tol):
            return BoundaryTest(True, Chain.zero(cx, min(k + 1, 2), chain.module))
        return BoundaryTest(False)

    mat = _boundary_matrix(cx, k + 1)
    kind = chain.module.kind
    if kind in _EXACT_SCALARS:
        rhs = [chain[j] for j in range(cx.r[k])]
        x = exact.solve(mat, rhs)
        if x is None:
            return BoundaryTest(False)
        witness = Chain(
            cx, k + 1, {i: v for i, v in enumerate(x)}, RATIONAL
        )
        return BoundaryTest(True, witness)
    if kind == "real64":
        tol = DEFAULT_TOL if tol is None else tol
        a = np.array(mat, dtype=float)
        rhs = np.array([chain[j] for j in range(cx.r[k])], dtype=float)
        x, *_ = np.linalg.lstsq(a, rhs, rcond=None)
        if np.max(np.abs(a @ x - rhs), initial=0.0) > tol:
            return BoundaryTest(False)
        witness = Chain(cx, k + 1, dict(enumerate(x.tolist())), chain.module)
        return BoundaryTest(True, witness)
    raise KindMismatch(f"boundary test is not defined for {kind} chains")


def betti_numbers(complex):
    """Betti numbers b_0..b_dim over the rationals."""
    out = []
    for k in range(complex.dim + 1):
        cycles = complex.r[k] - _rank_boundary(complex, k)
        out.append(cycles - _rank_boundary(complex, k + 1))
    return out


def cycle_basis(complex, k=1):
    """Integer basis of the k-cycles (the kernel of the boundary map).

    In dimension one this is the fundamental-cycle basis of a spanning
    forest (one cycle per chord, coefficients all +-1), which stays cheap on
    large complexes; higher dimensions fall back to the exact nullspace.
    """
    if k == 0:
        return [Chain(complex, 0, {i: 1}, INTEGER) for i in range(complex.r[0])]
    if k > complex.dim:
        return []
    if k == 1:
        return _fundamental_cycles(complex)
    vecs = exact.nullspace(_boundary_matrix(complex, k))
    return [
        Chain(complex, k, {i: v for i, v in enumerate(vec) if v}, INTEGER)
        for vec in vecs
    ]


def _fundamental_cycles(complex):
    """One cycle per non-forest branch: the chord plus the tree path that
    closes it.  Deterministic: branches are scanned in index order."""
    r0 = complex.r[0]
    adjacency = _adjacency(complex)
    parent = {}  # node -> (parent node, branch, sign of branch toward parent)
    in_tree = set()
    seen = set()
    for root in range(r0):
        if root in seen:
            continue
        seen.add(root)
        parent[root] = None
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for a, v, sign in adjacency.get(u, ()):
                    if v in seen:
                        continue
                    seen.add(v)
                    in_tree.add(a)
                    # sign is +1 when the branch is oriented u -> v
                    parent[v] = (u, a, sign)
                    nxt.append(v)
            frontier = nxt

    def path_to_root(node, out, factor):
        while parent[node] is not None:
            up, branch, sign = parent[node]
            # traversing node -> parent goes against a branch oriented
            # parent -> node
            out[branch] = out.get(branch, 0) - factor * sign
            node = up

    cycles = []
    for a, (tail, head) in enumerate(complex.branches):
        if a in in_tree:
            continue
        coeffs = {a: 1}
        path_to_root(head, coeffs, 1)
        path_to_root(tail, coeffs, -1)
        coeffs = {b: v for b, v in coeffs.items() if v}
        first = min(coeffs)
        if coeffs[first] < 0:
            coeffs = {b: -v for b, v in coeffs.items()}
        cycles.append(Chain(complex, 1, coeffs, INTEGER))
    return cycles


def _adjacency(complex):
    out = {}
    for a, (tail, head) in enumerate(complex.branches):
        out.setdefault(tail, []).append((a, head, 1))
        out.setdefault(head, []).append((a, tail, -1))
    return out


def homology_generators(complex, k):
    """Integer cycles whose classes form a basis of the k-th homology."""
    if k == 0:
        return [
            Chain(complex, 0, {comp[0]: 1}, INTEGER)
            for comp in path_components(complex)
        ]
    if k > complex.dim:
        return []
    mat = _boundary_matrix(complex, k)
    cycles = exact.nullspace(mat)
    if k == complex.dim:
        chosen = cycles
    else:
        # keep only cycle directions independent of the boundary image
        image_rows = [row for row in (complex.incidence_2 if k == 1 else [])]
        chosen = []
        current = exact.rank(image_rows) if image_rows else 0
        stack = list(image_rows)
        for vec in cycles:
            cand = stack + [vec]
            r = exact.rank(cand)
            if r > current:
                chosen.append(vec)
                stack = cand
                current = r
    return [
        Chain(complex, k, {i: v for i, v in enumerate(vec) if v}, INTEGER)
        for vec in chosen
    ]


def torsion_coefficients(complex):
    """Invariant factors > 1 of each boundary matrix; torsion of H_k comes
    from the boundary map out of dimension k+1.  Integer coefficients only."""
    out = []
    for k in range(complex.dim + 1):
        if k + 1 > complex.dim or complex.r[k + 1] == 0:
            out.append([])
            continue
        mat = (complex.incidence_1, complex.incidence_2)[k]
        snf = exact.smith_normal_form(mat)
        out.append([d for d in snf.d if d > 1])
    return out


def euler_characteristic(complex):
    """Alternating sum of simplex counts, cross-checked against the
    alternating sum of Betti numbers."""
    by_rank = sum((-1) ** k * complex.r[k] for k in range(complex.dim + 1))
    by_betti = sum((-1) ** k * b for k, b in enumerate(betti_numbers(complex)))
    if by_rank != by_betti:
        raise InternalMismatch(
            f"Euler characteristic disagrees: {by_rank} by ranks, {by_betti} by Betti"
        )
    return by_rank


@dataclass
class HomologySummary:
    betti: list
    torsion: list
    euler: int
    generators: list | None = None


def summary(complex, generators=False):
    gens = None
    if generators:
        gens = [homology_generators(complex, k) for k in range(complex.dim + 1)]
    return HomologySummary(
        betti=betti_numbers(complex),
        torsion=torsion_coefficients(complex),
        euler=euler_characteristic(complex),
        generators=gens,
    )


# ---------------------------------------------------------------------------
# cochain side
# ---------------------------------------------------------------------------

@dataclass
class CoboundaryTest:
    is_coboundary: bool
    potential: Cochain | None = None
    witness: Chain | None = None
    pairing: object = None


def is_coboundary(cochain, tol=None):
    """Decide whether a 1-cochain is the coboundary of a 0-cochain.

    On success the recovered potential is unique up to a constant per path
    component.  On failure the result carries a homology generator on which
    the cochain evaluates to something nonzero.
    """
    if cochain.dim != 1:
        raise KindMismatch("coboundary test is for 1-cochains")
    cx = cochain.complex
    mod = cochain.module
    mat = cx.incidence_1
    ncomp = len(mod.to_components(mod.zero()))

    if mod.exact:
        solved = []
        for c in range(ncomp):
            rhs = [
                Fraction(mod.to_components(cochain[a])[c]) for a in range(cx.r[1])
            ]
            x = exact.solve(mat, rhs)
            if x is None:
                solved = None
                break
            solved.append(x)
        if solved is not None:
            values = {
                i: mod.from_components([solved[c][i] for c in range(ncomp)])
                for i in range(cx.r[0])
            }
            potential = Cochain(cx, 0, values, mod, prune=False)
            return CoboundaryTest(True, potential=potential)
    else:
        tol = DEFAULT_TOL if tol is None else tol
        if cx.r[1]:
            a = np.array(mat, dtype=float)
            rhs = np.array(
                [mod.to_components(cochain[b]) for b in range(cx.r[1])], dtype=float
            )
            x, *_ = np.linalg.lstsq(a, rhs, rcond=None)
            resid = np.max(np.abs(a @ x - rhs), initial=0.0)
        else:
            x = np.zeros((cx.r[0], ncomp))
            resid = 0.0
        if resid <= tol:
            values = {
                i: mod.from_components(list(x[i])) for i in range(cx.r[0])
            }
            potential = Cochain(cx, 0, values, mod, prune=False)
            return CoboundaryTest(True, potential=potential)

    # a failed solve is always witnessed by some cycle (left nullspace of the
    # incidence matrix); on one-dimensional complexes these are exactly the
    # homology generators
    for z in cycle_basis(cx, 1):
        val = evaluate(cochain, z)
        if not _value_is_zero(mod, val, tol):
            return CoboundaryTest(False, witness=z, pairing=val)
    raise InternalMismatch("unsolvable cochain with no violated cycle found")


def _value_is_zero(mod, val, tol):
    if mod.exact:
        return val == 0
    t = DEFAULT_TOL if tol is None else tol
    arr = np.asarray(val, dtype=float)
    return float(np.max(np.abs(arr), initial=0.0)) <= t
