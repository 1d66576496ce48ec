"""
Finite walks in the Farey tessellation of the hyperbolic plane: canonical
triangles, flip paths, the saddle-weighted distance between even slopes,
and the distance to the subtree of integral even slopes.

Ideal triangles are triples of slopes that are pairwise Farey neighbours
(|p q' - p' q| = 1); adjacent triangles differ by replacing one vertex with
the mediant or difference of the other two.  Each triangle contains exactly
one slope with even numerator, its even slope.  A flip step is a "saddle"
step when the even slopes of the two triangles differ; the distance d
between even slopes counts saddle steps along the unique no-backtracking
path between canonical triangles, and is what a single boundary
compression changes the Euler characteristic by.

The tessellation is never materialised: paths are produced by continued
fraction descent from the base triangle (1/0, 0/1, -1/1).
"""
from .curves import Slope

BASE = (Slope(1, 0), Slope(0, 1), Slope(-1, 1))


class FareyTriangle:
    """An ideal triangle of the tessellation: a set of three slopes."""

    __slots__ = ("slopes", "even_slope")

    def __init__(self, slopes):
        ss = tuple(sorted(slopes, key=lambda s: (s.q, s.p)))
        if len({s.pair() for s in ss}) != 3:
            raise ValueError("a Farey triangle needs three distinct slopes")
        for i in range(3):
            for j in range(i + 1, 3):
                if abs(ss[i].p * ss[j].q - ss[j].p * ss[i].q) != 1:
                    raise ValueError("%r and %r are not Farey neighbours"
                                     % (ss[i], ss[j]))
        self.slopes = ss
        evens = [s for s in ss if s.even]
        assert len(evens) == 1
        self.even_slope = evens[0]

    def __contains__(self, slope):
        return any(s == slope for s in self.slopes)

    def __eq__(self, other):
        return isinstance(other, FareyTriangle) and self.slopes == other.slopes

    def __hash__(self):
        return hash(self.slopes)

    def __repr__(self):
        return "(%s)" % ", ".join(repr(s) for s in self.slopes)


BASE_TRIANGLE = FareyTriangle(BASE)


def _cross(pa, pb):
    return pa[0] * pb[1] - pb[0] * pa[1]


def path_from_base(alpha):
    """
    The descent path of triangles from the base triangle to the canonical
    triangle of a slope: the first triangle of the path containing alpha is
    its last entry, and alpha is the mediant of the other two vertices
    there (for alpha not in the base triangle).
    """
    path = [BASE_TRIANGLE]
    if alpha in BASE_TRIANGLE:
        return path
    a = alpha.pair()
    if _cross(a, (0, 1)) > 0:
        lo, hi = (0, 1), (1, 0)
    elif _cross(a, (-1, 1)) > 0:
        lo, hi = (-1, 1), (0, 1)
    else:
        lo, hi = (-1, 0), (-1, 1)
    while True:
        mid = (lo[0] + hi[0], lo[1] + hi[1])
        tri = FareyTriangle((Slope(*lo), Slope(*hi), Slope(*mid)))
        path.append(tri)
        if alpha == Slope(*mid):
            return path
        if _cross(a, mid) > 0:
            lo = mid
        else:
            hi = mid


def canonical_triangle(alpha):
    """
    The triangle at shortest flip distance from the base triangle having
    the given slope as a vertex.  For the three base slopes this is the
    base triangle itself.
    """
    return path_from_base(alpha)[-1]


def _deepest_vertex(tri):
    return max(tri.slopes, key=lambda s: (s.q, abs(s.p)))


def path_from_base_to_triangle(tri):
    """The descent path from the base triangle to the given triangle."""
    if tri == BASE_TRIANGLE:
        return [BASE_TRIANGLE]
    path = path_from_base(_deepest_vertex(tri))
    if path[-1] != tri:
        raise ValueError("%r is not a triangle of the tessellation" % (tri,))
    return path


def geodesic(tri_a, tri_b):
    """The unique no-backtracking path of triangles from tri_a to tri_b."""
    pa = path_from_base_to_triangle(tri_a)
    pb = path_from_base_to_triangle(tri_b)
    k = 0
    while k < len(pa) and k < len(pb) and pa[k] == pb[k]:
        k += 1
    # pa[k-1] == pb[k-1] is the junction triangle.
    return list(reversed(pa[k - 1:])) + pb[k:]


def saddle_count(path):
    """Number of steps along a flip path whose endpoint triangles carry
    different even slopes."""
    return sum(1 for s, t in zip(path, path[1:])
               if s.even_slope != t.even_slope)


def farey_distance(alpha, beta):
    """
    The distance d(alpha, beta) between two even slopes: the number of
    even-slope-changing steps on the path between their canonical
    triangles.  This is independent of which triangles with those even
    slopes are chosen.
    """
    for s in (alpha, beta):
        if not s.even:
            raise ValueError("%r is not an even slope" % s)
    if alpha == beta:
        return 0
    return saddle_count(geodesic(canonical_triangle(alpha),
                                 canonical_triangle(beta)))


def is_integral_even(slope):
    """Whether the slope has the spanning form 2k/1."""
    return slope.q == 1 and slope.p % 2 == 0


def distance_to_even_integral_subtree(alpha):
    """
    The saddle-weighted distance d(alpha, F_e) from an even slope to the
    connected subtree of triangles whose even slope is integral.  Walks the
    descent path backwards; the subtree contains the base triangle, so the
    first integral-even triangle met realises the minimum.
    """
    if not alpha.even:
        raise ValueError("%r is not an even slope" % alpha)
    path = path_from_base(alpha)
    d = 0
    prev = None
    for tri in reversed(path):
        if prev is not None and tri.even_slope != prev.even_slope:
            d += 1
        if is_integral_even(tri.even_slope):
            return d
        prev = tri
    raise AssertionError("descent path missed the base triangle")


def layering_sequence(from_triangle, to_slope):
    """
    The shortest flip path from the given triangle to one having to_slope
    as a vertex, as the list of slopes of the edges being flipped away.
    Layering a tetrahedron on the boundary edge of each named slope in turn
    realises the path on a triangulation.
    """
    if to_slope in from_triangle:
        return []
    path = geodesic(from_triangle, canonical_triangle(to_slope))
    flips = []
    for cur, nxt in zip(path, path[1:]):
        gone = [s for s in cur.slopes if s not in nxt]
        assert len(gone) == 1
        flips.append(gone[0])
        if to_slope in nxt:
            break
    return flips


class SlopeNormTable:
    """
    Cached slope -> norm table supporting minimum (norm + distance)
    queries, the query structure of the slope-norm computation.
    """

    def __init__(self):
        self.norms = {}
        self._triangles = {}

    def insert(self, slope, norm):
        if slope in self.norms:
            self.norms[slope] = min(self.norms[slope], norm)
        else:
            self.norms[slope] = norm
            self._triangles[slope] = canonical_triangle(slope)

    def query(self, delta):
        """min over stored slopes alpha of norm(alpha) + d(alpha, delta),
        with the witness slope; None when the table is empty."""
        if not self.norms:
            return None
        tau = canonical_triangle(delta)
        best = None
        for alpha, norm in self.norms.items():
            d = (0 if alpha == delta else
                 saddle_count(geodesic(self._triangles[alpha], tau)))
            if best is None or norm + d < best[0]:
                best = (norm + d, alpha, d)
        return best
