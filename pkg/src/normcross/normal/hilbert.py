"""
Hilbert bases of the admissible part of a normal surface solution cone.

The admissible region is a union of faces of the cone {x >= 0, Ax = 0},
one for each maximal support pattern compatible with the quadrilateral
constraints.  Fundamental vectors are enumerated face by face: the
admissible extreme rays are grouped into maximal mutually-compatible
cliques, each clique spans a face, and the Hilbert basis of each face cone
is computed by triangulating it into simplicial subcones and enumerating
the lattice points of their fundamental parallelepipeds.  Any sum of two
admissible vectors has admissible summands with the same support, so the
union of the face bases, de-duplicated, is the full set of fundamental
vectors.
"""
from math import gcd

import networkx as nx

from ..homology import smith_normal_form
from .dd import (EnumerationAborted, solution_cone_rays, dual_rays,
                 _dot, _adjugate, _determinant)

DEFAULT_CAP = 10 ** 6


def hilbert_basis(nvars, equations, quad_groups=(), cap=DEFAULT_CAP):
    """
    All fundamental vectors of {x in Z^nvars : x >= 0, equations hold}
    subject to the quadrilateral constraints: the minimal non-zero
    admissible vectors, every admissible lattice point being a sum of
    compatible ones.  Returns a sorted tuple of integer tuples.
    """
    rays = solution_cone_rays(nvars, equations, quad_groups, ray_cap=cap)
    if not rays:
        return ()
    gmasks = []
    for g in quad_groups:
        m = 0
        for i in g:
            m |= 1 << i
        gmasks.append(m)
    smasks = [_support_mask(r) for r in rays]

    if not gmasks:
        face_lists = [list(range(len(rays)))]
    else:
        graph = nx.Graph()
        graph.add_nodes_from(range(len(rays)))
        for i in range(len(rays)):
            for j in range(i + 1, len(rays)):
                if _mask_admissible(smasks[i] | smasks[j], gmasks):
                    graph.add_edge(i, j)
        face_lists = [sorted(c) for c in nx.find_cliques(graph)]
        face_lists.sort()

    basis = set()
    for face in face_lists:
        face_rays = [rays[i] for i in face]
        basis.update(_face_hilbert_basis(face_rays, cap))
    return tuple(sorted(basis))


def _support_mask(vec):
    m = 0
    for i, x in enumerate(vec):
        if x:
            m |= 1 << i
    return m


def _mask_admissible(mask, gmasks):
    for gm in gmasks:
        x = mask & gm
        if x and (x & (x - 1)):
            return False
    return True


def _face_hilbert_basis(rays, cap):
    """Hilbert basis of the cone spanned by the given extreme rays: ray
    primitives plus parallelepiped points of a triangulation, reduced to
    the minimal elements."""
    candidates = set(rays)
    for piece in _triangulate(rays):
        basis = _lattice_basis(piece)
        coords = [_to_coords(basis, r) for r in piece]
        for point in _parallelepiped_points(coords, cap):
            amb = _from_coords(basis, point)
            candidates.add(amb)
        if len(candidates) > cap:
            raise EnumerationAborted("Hilbert basis candidates exceeded cap")
    return _minimal_elements(candidates)


def _minimal_elements(candidates):
    out = []
    masks = []
    for vec in sorted(candidates, key=lambda v: (sum(v), v)):
        mv = _support_mask(vec)
        reducible = False
        for h, mh in zip(out, masks):
            if mh & mv == mh and all(a <= b for a, b in zip(h, vec)):
                reducible = True
                break
        if not reducible:
            out.append(vec)
            masks.append(mv)
    return out


# -- lattice coordinates ------------------------------------------------------


def _kernel_basis(rows, ncols):
    """Integer basis of {x in Z^ncols : R x = 0}; the lattice is saturated."""
    if not rows:
        return [tuple(1 if i == j else 0 for i in range(ncols))
                for j in range(ncols)]
    d, U, V = smith_normal_form(rows)
    rank = sum(1 for x in d if x)
    return [tuple(V[i][j] for i in range(ncols)) for j in range(rank, ncols)]


def _lattice_basis(vectors):
    """Basis of the saturation of the span of the given integer vectors:
    span_Q(vectors) intersected with the integer lattice."""
    ncols = len(vectors[0])
    kern = _kernel_basis([list(v) for v in vectors], ncols)
    return _kernel_basis([list(k) for k in kern], ncols)


def _to_coords(basis, vec):
    """Coordinates of vec in the lattice basis (exact; vec must lie in the
    lattice)."""
    d = len(basis)
    n = len(vec)
    cols = [list(b) for b in basis]
    # Solve sum c_i basis_i = vec by fraction-free elimination.
    mat = [[cols[j][i] for j in range(d)] + [vec[i]] for i in range(n)]
    sol = _solve_exact(mat, d)
    return tuple(sol)


def _solve_exact(mat, d):
    """Solve an overdetermined consistent integer system for d unknowns."""
    rows = [row[:] for row in mat]
    piv_rows = []
    piv_cols = []
    for col in range(d):
        src = None
        for r in range(len(rows)):
            if r in piv_rows or not rows[r][col]:
                continue
            src = r
            break
        if src is None:
            continue
        piv_rows.append(src)
        piv_cols.append(col)
        for r in range(len(rows)):
            if r == src or not rows[r][col]:
                continue
            a, b = rows[src][col], rows[r][col]
            rows[r] = [a * x - b * y for x, y in zip(rows[r], rows[src])]
    if len(piv_cols) != d:
        raise ValueError("system does not determine all coordinates")
    sol = [0] * d
    from fractions import Fraction
    # Back-substitute on the pivot rows (they are in echelon form now).
    for src, col in sorted(zip(piv_rows, piv_cols), key=lambda t: -t[1]):
        row = rows[src]
        acc = Fraction(row[d])
        for j in range(d):
            if j != col and row[j]:
                acc -= row[j] * sol[j]
        sol[col] = acc / row[col]
    out = []
    for x in sol:
        f = Fraction(x)
        if f.denominator != 1:
            raise ValueError("vector does not lie in the lattice")
        out.append(int(f))
    return out


def _from_coords(basis, coords):
    n = len(basis[0])
    return tuple(sum(c * b[i] for c, b in zip(coords, basis))
                 for i in range(n))


# -- triangulation of face cones ---------------------------------------------


def _triangulate(rays):
    """
    Split the pointed cone generated by the given extreme rays into
    simplicial subcones on the same rays (a pulling triangulation).
    Returns lists of rays (in ambient coordinates).
    """
    basis = _lattice_basis(rays)
    coords = [_to_coords(basis, r) for r in rays]
    pieces = _triangulate_full(coords)
    return [[rays[i] for i in piece] for piece in pieces]


def _triangulate_full(coords):
    d = len(coords[0])
    k = len(coords)
    if k == d:
        return [list(range(k))]
    if d <= 2:
        raise AssertionError("pointed cone of dimension <= 2 with %d rays" % k)
    facets = dual_rays(coords, d)
    v0 = 0
    out = []
    for h, tight in facets:
        if _dot(h, coords[v0]) <= 0:
            continue
        idx = [i for i in range(k) if (tight >> i) & 1]
        sub = [coords[i] for i in idx]
        fbasis = _lattice_basis(sub)
        fcoords = [_to_coords(fbasis, r) for r in sub]
        for piece in _triangulate_full(fcoords):
            out.append([v0] + [idx[i] for i in piece])
    return out


def _parallelepiped_points(ray_coords, cap):
    """
    The non-zero lattice points of the half-open fundamental
    parallelepiped { sum l_i r_i : 0 <= l_i < 1 } of a simplicial cone,
    in the same coordinates.
    """
    from fractions import Fraction
    d = len(ray_coords)
    cols = [[ray_coords[j][i] for j in range(d)] for i in range(d)]  # M[i][j]
    det = _determinant(cols)
    if det == 0:
        raise AssertionError("simplicial piece is degenerate")
    vol = abs(det)
    if vol == 1:
        return []
    if vol > cap:
        raise EnumerationAborted(
            "parallelepiped with %d lattice points exceeds cap" % vol)
    dd, U, V = smith_normal_form(cols)
    Uinv, udet = _adjugate(U)
    if udet < 0:
        Uinv = [[-x for x in row] for row in Uinv]
    adjM, detM = _adjugate(cols)
    points = []
    idx = [0] * d
    nontrivial = [i for i in range(d) if dd[i] > 1]
    counters = [range(dd[i]) for i in nontrivial]
    from itertools import product
    for combo in product(*counters):
        c = [0] * d
        for pos, val in zip(nontrivial, combo):
            c[pos] = val
        if not any(c):
            continue
        y = [sum(Uinv[i][j] * c[j] for j in range(d)) for i in range(d)]
        lam = [Fraction(sum(adjM[i][j] * y[j] for j in range(d)), detM)
               for i in range(d)]
        shift = [int(l.__floor__()) for l in lam]
        point = [y[i] - sum(cols[i][j] * shift[j] for j in range(d))
                 for i in range(d)]
        points.append(tuple(point))
    return points
