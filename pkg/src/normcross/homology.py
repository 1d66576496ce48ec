"""
First homology of a one-vertex triangulation from its edge-loop
presentation, peripheral framings of the boundary torus, and the canonical
normal surface of a Z_2-labelling of the edges.

Since all vertices of the triangulations we accept are identified to one
point, every edge is a loop and generates an element of the fundamental
group; the triangle classes give the relators.  Abelianising yields a
presentation matrix for H_1 over the integers.
"""
from fractions import Fraction
from math import gcd

from .triangulation import FACE_VERTICES, boundary_torus


# -- exact integer linear algebra -------------------------------------------


def smith_normal_form(rows):
    """
    Smith normal form with transforms: returns (d, U, V) where
    U * A * V = D, U and V are unimodular, D is diagonal with the list d of
    non-negative diagonal entries satisfying d[i] | d[i+1].
    """
    A = [list(r) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, j, c):      # row i -= c * row j
        Ai, Aj, Ui, Uj = A[i], A[j], U[i], U[j]
        for k in range(n):
            Ai[k] -= c * Aj[k]
        for k in range(m):
            Ui[k] -= c * Uj[k]

    def col_op(i, j, c):      # col i -= c * col j
        for r in A:
            r[i] -= c * r[j]
        for r in V:
            r[i] -= c * r[j]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < m and t < n:
        # Find a pivot of smallest absolute value.
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (pivot is None
                                or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_op(i, t, A[i][t] // A[t][t])
                    if A[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    col_op(j, t, A[t][j] // A[t][t])
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
        if A[t][t] < 0:
            for k in range(n):
                A[t][k] = -A[t][k]
            for k in range(m):
                U[t][k] = -U[t][k]
        t += 1

    # Enforce the divisibility chain.
    d = [A[i][i] for i in range(min(m, n))]
    for i in range(len(d) - 1):
        for j in range(i + 1, len(d)):
            if d[i] and d[j] % d[i] == 0:
                continue
            if d[i] == 0 and d[j] == 0:
                continue
            # Merge entries i and j: standard gcd/lcm trick via 2x2 block.
            a, b = d[i], d[j]
            g = gcd(a, b)
            l = (a // g) * b if g else 0
            # Column j += column i, then clear with row ops; on diagonal
            # matrices this realises (a, b) -> (g, lcm).
            col_op(i, j, -1)          # col i += col j  (A[j][i] becomes b)
            # Now rows i and j, columns i and j hold [[a, 0], [b, b]].
            _clear_pair(A, U, V, i, j)
            d[i], d[j] = abs(A[i][i]), abs(A[j][j])
            if d[i] and A[i][i] < 0:
                for k in range(n):
                    A[i][k] = -A[i][k]
                for k in range(m):
                    U[i][k] = -U[i][k]
            if d[j] and A[j][j] < 0:
                for k in range(n):
                    A[j][k] = -A[j][k]
                for k in range(m):
                    U[j][k] = -U[j][k]
            assert (d[j] % d[i] == 0) if d[i] else d[j] == 0
    return d, U, V


def _clear_pair(A, U, V, i, j):
    """Restore diagonal form on the 2x2 block at rows/cols i, j."""
    m, n = len(A), len(A[0])
    while A[j][i] or A[i][j]:
        if A[j][i]:
            if A[i][i] == 0 or (A[j][i] and abs(A[j][i]) < abs(A[i][i])):
                A[i], A[j] = A[j], A[i]
                U[i], U[j] = U[j], U[i]
                continue
            c = A[j][i] // A[i][i]
            for k in range(n):
                A[j][k] -= c * A[i][k]
            for k in range(m):
                U[j][k] -= c * U[i][k]
        elif A[i][j]:
            if A[i][i] == 0 or abs(A[i][j]) < abs(A[i][i]):
                for r in A:
                    r[i], r[j] = r[j], r[i]
                for r in V:
                    r[i], r[j] = r[j], r[i]
                continue
            c = A[i][j] // A[i][i]
            for r in A:
                r[j] -= c * r[i]
            for r in V:
                r[j] -= c * r[i]


def gf2_row_reduce(rows):
    """Reduced row-echelon form over GF(2); returns (pivots, reduced rows)."""
    mat = [row[:] for row in rows]
    pivots = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        for i in range(r, len(mat)):
            if mat[i][c] & 1:
                mat[r], mat[i] = mat[i], mat[r]
                break
        else:
            continue
        for i in range(len(mat)):
            if i != r and (mat[i][c] & 1):
                mat[i] = [(x + y) & 1 for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    return pivots, mat[:r]


def gf2_reduce_vector(vec, pivots, reduced):
    v = [x & 1 for x in vec]
    for p, row in zip(pivots, reduced):
        if v[p]:
            v = [(x + y) & 1 for x, y in zip(v, row)]
    return v


# -- presentations -----------------------------------------------------------


def h1_presentation(tri):
    """
    The abelianised relation matrix of the edge-loop presentation: one row
    per triangle class, one column per edge class; entry = signed number of
    times the triangle boundary runs over the edge.

    Requires a one-vertex triangulation (every edge must be a loop).
    """
    sk = tri.skeleton()
    if len(sk.vertex_classes) != 1:
        raise ValueError("edge-loop presentation needs a one-vertex "
                         "triangulation (%d vertex classes found)"
                         % len(sk.vertex_classes))
    rows = []
    for cls in sk.triangle_classes:
        t, f = cls[0]
        row = [0] * len(sk.edge_classes)
        for e, s in sk.boundary_word(t, f):
            row[e] += s
        rows.append(row)
    return rows


def relator_words(tri):
    """
    The unabelianised relators of the edge-loop presentation, one per
    triangle class, as lists of (edge class, +-1).
    """
    sk = tri.skeleton()
    if len(sk.vertex_classes) != 1:
        raise ValueError("edge-loop presentation needs a one-vertex triangulation")
    return [sk.boundary_word(*cls[0]) for cls in sk.triangle_classes]


class H1:
    """H_1(M, Z) presented by the edge-loop relation matrix."""

    def __init__(self, tri):
        self.triangulation = tri
        rows = h1_presentation(tri)
        self.n_generators = len(rows[0]) if rows else 0
        # Work with the transpose: generators index rows of the cokernel.
        cols = [[rows[i][j] for i in range(len(rows))]
                for j in range(self.n_generators)]
        d, U, V = smith_normal_form(cols)
        self._U = U
        self._diag = d + [0] * (self.n_generators - len(d))
        self.invariant_factors = sorted(x for x in d if x not in (0, 1))
        self.rank = sum(1 for x in self._diag if x == 0)

    def _coords(self, vec):
        """Coordinates of a class in the diagonalised basis."""
        return [sum(self._U[i][k] * vec[k] for k in range(self.n_generators))
                for i in range(self.n_generators)]

    def order_of(self, vec):
        """Order of the class of vec: 0 for infinite order, else the least
        positive m with m*vec a boundary."""
        y = self._coords(vec)
        order = 1
        for yi, di in zip(y, self._diag):
            if di == 1:
                continue
            if di == 0:
                if yi != 0:
                    return 0
            elif yi % di:
                q = di // gcd(di, yi % di)
                order = order * q // gcd(order, q)
        return order

    def free_coordinates(self, vec):
        """Image of the class in the free part Z^rank."""
        y = self._coords(vec)
        return tuple(yi for yi, di in zip(y, self._diag) if di == 0)

    def describe(self):
        parts = ["Z"] * self.rank + ["Z_%d" % f for f in self.invariant_factors]
        return " + ".join(parts) if parts else "0"


# -- framings of the boundary torus ------------------------------------------


class Framing:
    """
    An ordered peripheral basis (first, second) of H_1 of the boundary
    torus, as integer vectors in the model edge basis, with a flavor tag.
    """

    def __init__(self, first, second, flavor):
        self.first = tuple(first)
        self.second = tuple(second)
        self.flavor = flavor
        if abs(_det2(self.first, self.second)) != 1:
            raise ValueError("framing classes do not form a basis")

    def __repr__(self):
        return "Framing(%s, %s, %s)" % (self.first, self.second, self.flavor)

    def __eq__(self, other):
        return (isinstance(other, Framing) and self.first == other.first
                and self.second == other.second)


def _det2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def peripheral_to_h1(torus, a, b):
    """
    The edge-class chain representing a*[h] + b*[v] on the boundary torus,
    as a vector over the edge-class generators of the one-vertex
    presentation.
    """
    sk = torus.skeleton
    vec = [0] * len(sk.edge_classes)
    eh, sh = torus.roles["h"]
    ev, sv = torus.roles["v"]
    vec[eh] += a * sh
    vec[ev] += b * sv
    return vec


class BoundaryMapZ2:
    """
    The composite H_1(boundary) -> H_1(M, Z_2): images of the peripheral
    basis classes, with the rank-one image subgroup required of a torus
    boundary in these manifolds.
    """

    def __init__(self, tri):
        self.torus = boundary_torus(tri)
        rows = h1_presentation(tri)
        self.pivots, self.reduced = gf2_row_reduce([[x & 1 for x in r]
                                                    for r in rows])
        pair = []
        for a, b in ((1, 0), (0, 1)):
            vec = peripheral_to_h1(self.torus, a, b)
            red = gf2_reduce_vector(vec, self.pivots, self.reduced)
            pair.append(tuple(red))
        self.h_image, self.v_image = pair
        nonzero = [p for p in pair if any(p)]
        distinct = set(nonzero)
        self.image_rank = 0 if not nonzero else len(distinct)
        if self.image_rank != 1:
            raise ValueError(
                "image of the boundary in H_1(M, Z_2) has rank %d, not 1"
                % self.image_rank)

    def is_even(self, cls):
        """Whether the peripheral class (a, b) maps to zero in H_1(M, Z_2)."""
        a, b = cls
        acc = [0] * len(self.h_image)
        if a & 1:
            acc = [x ^ y for x, y in zip(acc, self.h_image)]
        if b & 1:
            acc = [x ^ y for x, y in zip(acc, self.v_image)]
        return not any(acc)


def two_torsion_framing(tri):
    """
    A peripheral basis (m2, l2) with m2 mapping non-trivially and l2
    trivially to H_1(M, Z_2).  Among all valid bases the one minimising
    |m2|^2 + |l2|^2 in the model edge coordinates is chosen, ties broken
    lexicographically.
    """
    phi = BoundaryMapZ2(tri)
    best = None
    candidates = [(a, b) for a in range(-2, 3) for b in range(0, 3)
                  if (b > 0 or a > 0) and gcd(a, b) == 1]
    for a, b in candidates:
        if phi.is_even((a, b)):
            continue
        for c, d in candidates:
            if abs(a * d - b * c) != 1 or not phi.is_even((c, d)):
                continue
            key = (a * a + b * b + c * c + d * d, (a, b, c, d))
            if best is None or key < best[0]:
                best = (key, ((a, b), (c, d)))
    if best is None:
        raise ValueError("no two-torsion framing found")
    m2, l2 = best[1]
    return Framing(m2, l2, "two_torsion")


def homological_longitude(tri):
    """
    The primitive peripheral class of finite order in H_1(M, Z), as
    ((a, b), order).  The class is normalised with b > 0, or a > 0 when
    b = 0.
    """
    torus = boundary_torus(tri)
    h1 = H1(tri)
    fh = h1.free_coordinates(peripheral_to_h1(torus, 1, 0))
    fv = h1.free_coordinates(peripheral_to_h1(torus, 0, 1))
    # Kernel of the 2 x rank map over Q; half-lives-half-dies makes it rank 1.
    kernel = None
    r = len(fh)
    if all(x == 0 for x in fh) and all(x == 0 for x in fv):
        raise ValueError("boundary maps to torsion; no homological meridian")
    for i in range(r):
        if fh[i] or fv[i]:
            a, b = -fv[i], fh[i]
            break
    g = gcd(a, b)
    a, b = a // g, b // g
    # Verify this kills every free coordinate.
    if any(a * fh[i] + b * fv[i] for i in range(r)):
        raise ValueError("peripheral kernel is trivial over Q")
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
    order = h1.order_of(peripheral_to_h1(torus, a, b))
    assert order > 0
    return (a, b), order


def homological_framing(tri):
    """A basis (m_inf, l_inf): l_inf the homological longitude, m_inf a
    smallest complementary class of infinite order."""
    (a, b), _ = homological_longitude(tri)
    best = None
    for c in range(-3, 4):
        for d in range(-3, 4):
            if abs(c * b - d * a) != 1:
                continue
            key = (c * c + d * d, (c, d))
            if best is None or key < best[0]:
                best = (key, (c, d))
    m = best[1]
    return Framing(m, (a, b), "homological")


def geometric_framing(tri, meridian):
    """
    The framing (m_g, l_g) determined by a geometric meridian.  When the
    homological longitude has order one (an orientable spanning surface
    exists) the geometric longitude is the homological one; otherwise it is
    a shortest spanning slope in the Euclidean structure in which m_g and
    l_inf are orthonormal.

    The meridian is given as a peripheral class (a, b) in the model edge
    basis.
    """
    phi = BoundaryMapZ2(tri)
    a, b = meridian
    if gcd(a, b) != 1:
        raise ValueError("meridian class is not primitive")
    if phi.is_even((a, b)):
        raise ValueError("meridian maps to zero in H_1(M, Z_2); it cannot "
                         "be a geometric meridian")
    (la, lb), order = homological_longitude(tri)
    if order == 1:
        lg = (la, lb)
    else:
        # Spanning classes: odd multiples of m_g off a fixed even class.
        # Find one spanning class c0 with <m_g, c0> = 1 and c0 even.
        c0 = _complement((a, b))
        if not phi.is_even(c0):
            c0 = (c0[0] + a, c0[1] + b)
        if not phi.is_even(c0):
            raise ValueError("no even spanning class; inconsistent input")
        # Shortest c0 + 2k m_g in the norm with m_g, l_inf orthonormal.
        det = Fraction(a * lb - b * la)
        best = None
        for k in range(-6, 7):
            c = (c0[0] + 2 * k * a, c0[1] + 2 * k * b)
            x = Fraction(c[0] * lb - c[1] * la, a * lb - b * la)
            y = Fraction(a * c[1] - b * c[0], a * lb - b * la)
            key = (x * x + y * y, c)
            if best is None or key < best[0]:
                best = (key, c)
        lg = best[1]
    if _det2((a, b), lg) < 0:
        lg = (-lg[0], -lg[1])
    return Framing((a, b), lg, "geometric")


def _complement(cls):
    """Some class meeting the given primitive class once."""
    a, b = cls
    # Extended gcd: find (c, d) with a*d - b*c = 1.
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    # old_s*a + old_t*b = gcd = +-1
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return (-old_t, old_s)


# -- the canonical surface of a Z_2-labelling --------------------------------

# Edge bit patterns per tetrahedron realising a single normal disc.
# Key: frozenset of edge pairs carrying bit 1; value: disc index 0..6
# (0-3 triangles at that vertex, 4-6 quads separating {0,k}|rest, k=1,2,3).
_DISC_PATTERNS = {}
for _v in range(4):
    _DISC_PATTERNS[frozenset(
        tuple(sorted((_v, w))) for w in range(4) if w != _v)] = _v
for _k, (_p1, _p2) in enumerate((((0, 1), (2, 3)), ((0, 2), (1, 3)),
                                 ((0, 3), (1, 2)))):
    _all = {(a, b) for a in range(4) for b in range(4) if a < b}
    _DISC_PATTERNS[frozenset(_all - {_p1, _p2})] = 4 + _k


def check_z2_labelling(tri, bits):
    """Verify the triangle-sum condition: around every triangle class the
    three edge bits sum to zero mod 2."""
    sk = tri.skeleton()
    if len(bits) != len(sk.edge_classes):
        raise ValueError("labelling length does not match edge class count")
    for cls in sk.triangle_classes:
        t, f = cls[0]
        total = 0
        for a, b in ((x, y) for x in FACE_VERTICES[f]
                     for y in FACE_VERTICES[f] if x < y):
            total ^= bits[sk.edge_index[(t, a, b)]] & 1
        if total:
            raise ValueError("labelling is not induced by a homomorphism "
                             "to Z_2 (odd triangle sum)")


def canonical_z2_surface(tri, bits):
    """
    The normal surface of a Z_2-labelling: a normal corner on each edge
    labelled 1, realised by at most one triangle or one quadrilateral per
    tetrahedron.  Returns a standard coordinate vector of length 7n.
    """
    check_z2_labelling(tri, bits)
    sk = tri.skeleton()
    coords = [0] * (7 * tri.size)
    for t in range(tri.size):
        ones = frozenset((a, b) for a, b in
                         ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
                         if bits[sk.edge_index[(t, a, b)]] & 1)
        if not ones:
            continue
        disc = _DISC_PATTERNS.get(ones)
        if disc is None:
            raise ValueError("tetrahedron %d carries no normal pattern" % t)
        coords[7 * t + disc] = 1
    return tuple(coords)
