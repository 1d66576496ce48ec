"""
Independent verification helpers for fixture triangulations: group-theoretic
certification of Dehn fillings (Todd-Coxeter coset enumeration), Alexander
polynomials via Fox calculus from the edge-loop presentation, and
combinatorial Dehn filling by gluing a layered solid torus.

These tools are used offline to certify that a fixture triangulates the
exterior of the intended knot with the claimed meridian; they are not part
of the installed package.
"""
import sys
from math import gcd, inf
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import sympy

from normcross import perm as P
from normcross.curves import Slope, pairing
from normcross.farey import (FareyTriangle, canonical_triangle, geodesic,
                             path_from_base_to_triangle)
from normcross.homology import H1, relator_words
from normcross.triangulation import (Triangulation, boundary_torus,
                                     layer_on_boundary_edge,
                                     validate_knot_exterior)

LST_123 = Triangulation([[(0, (1, 2, 3, 0)), (0, P.invert((1, 2, 3, 0))),
                          None, None]])


# -- Todd-Coxeter -------------------------------------------------------------


def coset_enumeration(ngens, relators, max_cosets=200000):
    """
    Enumerate cosets of the trivial subgroup for a finite presentation;
    returns the group order, or None if the table exceeds max_cosets.
    Relators are lists of (generator index, +-1).
    """
    width = 2 * ngens

    def col(g, s):
        return 2 * g + (0 if s > 0 else 1)

    table = [[None] * width]
    forward = [0]
    dirty = [False]

    def rep(x):
        root = x
        while forward[root] != root:
            root = forward[root]
        while forward[x] != root:
            forward[x], x = root, forward[x]
        return root

    def set_entry(x, c, y, pending):
        """Record x --c--> y (and the inverse), queueing coincidences."""
        x, y = rep(x), rep(y)
        cur = table[x][c]
        if cur is not None:
            if rep(cur) != y:
                pending.append((rep(cur), y))
            return
        table[x][c] = y
        dirty[0] = True
        back = table[y][c ^ 1]
        if back is None:
            table[y][c ^ 1] = x
        elif rep(back) != x:
            pending.append((rep(back), x))

    def coincide(a, b):
        pending = [(a, b)]
        while pending:
            a, b = pending.pop()
            a, b = rep(a), rep(b)
            if a == b:
                continue
            if a > b:
                a, b = b, a
            forward[b] = a
            dirty[0] = True
            row = table[b]
            table[b] = None
            for c in range(width):
                if row[c] is not None:
                    set_entry(a, c, rep(row[c]), pending)

    def scan(x, word):
        n = len(word)
        f = x
        i = 0
        while i < n:
            nxt = table[f][col(*word[i])]
            if nxt is None:
                break
            f = rep(nxt)
            i += 1
        if i == n:
            if f != x:
                coincide(f, x)
            return
        b = x
        j = n
        while j > i:
            prv = table[b][col(*word[j - 1]) ^ 1]
            if prv is None:
                break
            b = rep(prv)
            j -= 1
        if j == i + 1:
            pending = []
            set_entry(f, col(*word[i]), b, pending)
            if pending:
                coincide(*pending[0])
                for extra in pending[1:]:
                    coincide(*extra)
        elif j <= i and f != b:
            coincide(f, b)

    while True:
        dirty[0] = False
        x = 0
        while x < len(table):
            if table[x] is None or rep(x) != x:
                x += 1
                continue
            for w in relators:
                if table[x] is None or rep(x) != x:
                    break
                scan(x, w)
            x += 1
        # Fill remaining gaps of the rows that existed at pass start.
        limit = len(table)
        x = 0
        while x < limit:
            if table[x] is None or rep(x) != x:
                x += 1
                continue
            for c in range(width):
                if table[x] is not None and rep(x) == x and table[x][c] is None:
                    if len(table) >= max_cosets:
                        return None
                    table.append([None] * width)
                    forward.append(len(table) - 1)
                    y = len(table) - 1
                    pend = []
                    set_entry(x, c, y, pend)
                    for pair in pend:
                        coincide(*pair)
            x += 1
        if not dirty[0]:
            return sum(1 for i in range(len(table))
                       if table[i] is not None and rep(i) == i)


def pi1_order(tri, max_cosets=200000):
    """Order of the fundamental group of a one-vertex triangulation, or
    None if coset enumeration gives up."""
    words = relator_words(tri)
    sk = tri.skeleton()
    return coset_enumeration(len(sk.edge_classes), words,
                             max_cosets=max_cosets)


# -- Alexander polynomial ------------------------------------------------------


def alexander_polynomial(tri):
    """
    The Alexander polynomial of a one-vertex triangulation with H_1 = Z,
    computed by Fox calculus on the edge-loop presentation, normalised to
    have positive constant term.  Returns a sympy Poly in t.
    """
    t = sympy.Symbol("t")
    h = H1(tri)
    if h.rank != 1 or h.invariant_factors:
        raise ValueError("Alexander polynomial needs H_1 = Z, got %s"
                         % h.describe())
    sk = tri.skeleton()
    ngens = len(sk.edge_classes)
    degrees = []
    for i in range(ngens):
        vec = [0] * ngens
        vec[i] = 1
        degrees.append(h.free_coordinates(vec)[0])
    words = relator_words(tri)
    rows = []
    for word in words:
        # Fox derivatives of the word with respect to each generator,
        # evaluated under the abelianisation g_i -> t^degrees[i].
        row = [sympy.Integer(0)] * ngens
        prefix = sympy.Integer(1)
        for g, s in word:
            if s > 0:
                row[g] += prefix
                prefix *= t ** degrees[g]
            else:
                prefix *= t ** (-degrees[g])
                row[g] -= prefix
        rows.append([sympy.expand(x) for x in row])

    # First elementary ideal: gcd of the (n-1)-minors after deleting the
    # column of a generator of infinite order.
    best = None
    for j in range(ngens):
        if degrees[j] == 0:
            continue
        cols = [k for k in range(ngens) if k != j]
        m = sympy.Matrix([[row[k] for k in cols] for row in rows])
        g = _minor_gcd(m, ngens - 1, t)
        if g is None:
            continue
        # The deleted column contributes (t^deg - 1)/(t - 1).
        correction = sympy.cancel((t ** abs(degrees[j]) - 1) / (t - 1))
        val = sympy.cancel(g / correction)
        val = sympy.Poly(sympy.expand(val), t)
        if best is None or val.degree() < best.degree():
            best = val
    if best is None:
        raise ValueError("could not extract an Alexander matrix minor")
    return _normalise_alexander(best, t)


def _minor_gcd(m, size, t):
    import itertools
    rows = range(m.rows)
    if m.rows < size:
        return None
    g = sympy.Integer(0)
    count = 0
    for rset in itertools.combinations(rows, size):
        sub = m[list(rset), :]
        d = sympy.expand(sub.det(method="berkowitz"))
        g = sympy.gcd(g, d)
        count += 1
        if g == 1 or count > 60:
            break
    if g == 0:
        return None
    return g


def _normalise_alexander(poly, t):
    """Strip units t^k and +-1 so the lowest coefficient is positive."""
    expr = poly.as_expr()
    p = sympy.Poly(sympy.expand(expr), t)
    coeffs = p.all_coeffs()
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    p = sympy.Poly(coeffs, t)
    if p.all_coeffs()[-1] < 0:
        p = sympy.Poly([-c for c in p.all_coeffs()], t)
    return p


# -- Dehn filling --------------------------------------------------------------


def layer_tracking_frame(tri, frame, edge):
    """
    Layer on a boundary edge while carrying peripheral vectors for the
    boundary edges through the move.  frame maps edge class -> (a, b) in a
    frame fixed once and for all; returns (new triangulation, new frame).
    Surviving edge classes are recognised by their representative slots
    (new slots live on the new tetrahedron, so representatives persist);
    the freshly created edge gets the Farey neighbour of the two kept
    vectors on the other side of the flipped one.
    """
    sk_old = tri.skeleton()
    old_reps = {sk_old.edge_classes[e][0]: v for e, v in frame.items()}
    kept = [v for e, v in frame.items() if e != edge]
    gone = frame[edge]
    u, w = kept
    cand = [(u[0] + w[0], u[1] + w[1]), (u[0] - w[0], u[1] - w[1])]
    fresh = next(c for c in cand
                 if Slope(*c) != Slope(*gone))
    new_tri = layer_on_boundary_edge(tri, edge)
    sk_new = new_tri.skeleton()
    new_frame = {}
    for e_new in boundary_torus(new_tri).edges:
        vec = None
        for slot, v in old_reps.items():
            if sk_new.edge_index.get(slot) == e_new:
                vec = v
                break
        new_frame[e_new] = vec if vec is not None else fresh
    assert len(new_frame) == 3
    return new_tri, new_frame


def fill_slope(tri, cls):
    """
    Dehn filling: glue a layered solid torus to the boundary torus so that
    the peripheral class `cls` (in the model edge basis of the current
    boundary) bounds a meridian disc.  Layers tetrahedra until the
    boundary edges pair 1, 2, 3 with the class, then glues the
    one-tetrahedron solid torus, whose disc has those edge weights.
    Returns a closed triangulation.
    """
    a, b = cls
    if gcd(a, b) != 1:
        raise ValueError("filling class must be primitive")
    s = Slope(a, b)
    torus = boundary_torus(tri)
    frame = dict(torus.edge_vector)

    # Walk the boundary triangle to one whose edges pair 1, 2, 3 with s.
    mate = _complement_class((a, b))
    target = FareyTriangle((_slope_sum(s, mate, 1, 1),
                            _slope_sum(s, mate, 1, 2),
                            _slope_sum(s, mate, 2, 3)))
    current = FareyTriangle(tuple(Slope(*v) for v in frame.values()))
    path = geodesic(current, target)
    for cur, nxt in zip(path, path[1:]):
        gone = next(x for x in cur.slopes if x not in nxt)
        edge = next(e for e, v in frame.items() if Slope(*v) == gone)
        tri, frame = layer_tracking_frame(tri, frame, edge)
        assert sorted(Slope(*v).pair() for v in frame.values()) == \
            sorted(x.pair() for x in nxt.slopes)

    weights = {e: abs(pairing(v, (a, b))) for e, v in frame.items()}
    assert sorted(weights.values()) == [1, 2, 3]

    # The one-tetrahedron solid torus: its disc class pairs 3, 2, 1 with
    # the model edges h, v, d.
    lst = LST_123
    lst_torus = boundary_torus(lst)
    disc = (2, 3)
    lst_weights = {e: abs(pairing(v, disc))
                   for e, v in lst_torus.edge_vector.items()}
    edge_map = {}
    for e, w in weights.items():
        edge_map[e] = next(e2 for e2, w2 in lst_weights.items() if w2 == w)
    return glue_boundaries(tri, lst, edge_map)


def _slope_sum(s, m, cs, cm):
    return Slope(cs * s.p + cm * m[0], cs * s.q + cm * m[1])


def _complement_class(cls):
    a, b = cls
    old_r, r = a, b
    old_s, ss = 1, 0
    old_t, tt = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, ss = ss, old_s - q * ss
        old_t, tt = tt, old_t - q * tt
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return (-old_t, old_s)


def glue_boundaries(tri1, tri2, edge_map):
    """
    Glue the boundary tori of two triangulations along a simplicial map
    sending edge class e of tri1's boundary to edge_map[e] of tri2's.
    Returns the combined closed triangulation.
    """
    t1 = boundary_torus(tri1)
    t2 = boundary_torus(tri2)
    n1 = tri1.size
    table = [list(row) for row in tri1.gluings]
    for row in tri2.gluings:
        table.append([None if g is None else (g[0] + n1, g[1]) for g in row])

    faces1 = [t1.lower, t1.upper]
    faces2 = [t2.lower, t2.upper]
    sk1 = tri1.skeleton()
    sk2 = tri2.skeleton()

    def corner_edges(sk, t, f, v):
        from normcross.triangulation import _face_edge_pairs
        return frozenset(sk.edge_index[(t, a, b)]
                         for a, b in _face_edge_pairs(f) if v in (a, b))

    for assign in ((0, 1), (1, 0)):
        glues = []
        ok = True
        for i, (ta, fa) in enumerate(faces1):
            tb, fb = faces2[assign[i]]
            perm = [None] * 4
            from normcross.triangulation import FACE_VERTICES
            for va in FACE_VERTICES[fa]:
                target = frozenset(edge_map[e]
                                   for e in corner_edges(sk1, ta, fa, va))
                match = [vb for vb in FACE_VERTICES[fb]
                         if corner_edges(sk2, tb, fb, vb) == target]
                if len(match) != 1:
                    ok = False
                    break
                perm[va] = match[0]
            if not ok:
                break
            perm[fa] = fb
            glues.append((ta, fa, tb, fb, tuple(perm)))
        if not ok:
            continue
        trial = [row[:] for row in table]
        for ta, fa, tb, fb, perm in glues:
            trial[ta][fa] = (tb + n1, perm)
            trial[tb + n1][fb] = (ta, P.invert(perm))
        try:
            out = Triangulation(trial)
        except Exception:
            continue
        sk = out.skeleton()
        if sk.valid and not sk.boundary_components:
            return out
    raise ValueError("boundary tori do not match under the given edge map")
