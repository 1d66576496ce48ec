"""
Normal curves on the two-triangle one-vertex boundary torus: decomposition
into trivial and essential parts, canonical orientations and oriented edge
weights, intersection numbers, slopes with respect to a framing, and the
complementary-slope formulas for spanning slopes.

Curve coordinates (x1, x2, x3) count the normal arcs of the three types in
the upper triangle of the square model (see triangulation.BoundaryTorus);
the counts in the lower triangle are determined.  An essential connected
curve has at least one coordinate zero, and its homology class in the
([h], [v]) basis is

    (x2, x2 + x3)   if x1 = 0,
    (-x1, x3)       if x2 = 0,
    (x1 + x2, x2)   if x3 = 0.
"""
from math import gcd


class Slope:
    """A primitive class p/q with respect to a framing, with q >= 0 and
    p = 1 when q = 0."""

    __slots__ = ("p", "q")

    def __init__(self, p, q):
        g = gcd(p, q)
        if g == 0:
            raise ValueError("0/0 is not a slope")
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        self.p = p
        self.q = q

    @property
    def even(self):
        """Even with respect to the framing's two-torsion structure."""
        return self.p % 2 == 0

    def pair(self):
        return (self.p, self.q)

    def __eq__(self, other):
        return isinstance(other, Slope) and (self.p, self.q) == (other.p, other.q)

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return "%d/%d" % (self.p, self.q)


def parse_slope(text):
    """Read a slope from a "p/q" or "p" string."""
    text = text.strip()
    if "/" in text:
        ps, qs = text.split("/", 1)
        return Slope(int(ps), int(qs))
    return Slope(int(text), 1)


def decompose_curve(c):
    """
    Split a normal multicurve into vertex-linking and essential parts.
    Returns (trivial_count, essential_coords, essential_component_count).
    """
    x1, x2, x3 = c
    if min(c) < 0:
        raise ValueError("negative arc count")
    k = min(c)
    ess = (x1 - k, x2 - k, x3 - k)
    if ess == (0, 0, 0):
        return k, ess, 0
    w1, w2 = oriented_edge_weights(ess)
    return k, ess, gcd(w1, w2)


def oriented_edge_weights(c):
    """
    The signed intersection numbers of an essential normal multicurve with
    the two reference edges, under the canonical orientation determined by
    which coordinate vanishes:

        (x2 + x3, x3)   if x1 = 0,
        (x3, x1 + x3)   if x2 = 0,
        (x2, -x1)       if x3 = 0.
    """
    x1, x2, x3 = c
    if x1 == 0:
        return (x2 + x3, x3)
    if x2 == 0:
        return (x3, x1 + x3)
    if x3 == 0:
        return (x2, -x1)
    raise ValueError("curve %r has a vertex-linking part; no coordinate "
                     "vanishes" % (c,))


def class_of_curve(c):
    """Homology class (a, b) of an essential multicurve in the ([h], [v])
    edge basis, canonically oriented."""
    w1, w2 = oriented_edge_weights(c)
    return (w1 - w2, w1)


def coords_of_class(cls):
    """Normal arc coordinates of the multicurve of class (a, b)."""
    a, b = cls
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
    if a >= b:
        return (a - b, b, 0)
    if a >= 0:
        return (0, a, b - a)
    return (-a, 0, b)


def intersection_number(c, d):
    """
    The algebraic intersection number of two canonically oriented essential
    normal curves: the determinant of the 2x2 matrix whose columns are
    their oriented edge weights.  Defined as 0 when either curve is empty.
    """
    if tuple(c) == (0, 0, 0) or tuple(d) == (0, 0, 0):
        return 0
    a = oriented_edge_weights(c)
    b = oriented_edge_weights(d)
    return a[0] * b[1] - a[1] * b[0]


def pairing(u, v):
    """Intersection pairing of homology classes in the ([h], [v]) basis."""
    return u[0] * v[1] - u[1] * v[0]


def slope_of_class(cls, framing):
    """The slope of a primitive peripheral class with respect to a framing."""
    a, b = cls
    if gcd(a, b) != 1:
        raise ValueError("class %r is not primitive" % (cls,))
    det = pairing(framing.first, framing.second)
    p = pairing((a, b), framing.second) // det
    q = pairing(framing.first, (a, b)) // det
    if (p * framing.first[0] + q * framing.second[0] != a
            or p * framing.first[1] + q * framing.second[1] != b):
        raise ValueError("class does not lie in the framing lattice")
    return Slope(p, q)


def class_of_slope(slope, framing):
    """The peripheral class of a slope in the ([h], [v]) basis, oriented by
    the slope's normalised representative."""
    m, l = framing.first, framing.second
    return (slope.p * m[0] + slope.q * l[0], slope.p * m[1] + slope.q * l[1])


def slope_of(c, framing):
    """
    The slope of a normal curve whose essential part is a single connected
    curve.  Raises when the essential part is empty or disconnected.
    """
    trivial, ess, ncomp = decompose_curve(c)
    if ncomp == 0:
        raise ValueError("curve has no essential part")
    if ncomp > 1:
        raise ValueError("essential part has %d components" % ncomp)
    return slope_of_class(class_of_curve(ess), framing)


def coords_of_slope(slope, framing):
    """Normal arc coordinates of the connected curve of the given slope."""
    return coords_of_class(class_of_slope(slope, framing))


def is_spanning(surface, meridian_coords):
    """
    Whether a normal surface is a spanning surface: its boundary must be a
    single essential connected curve meeting the meridian once
    algebraically.  `surface` needs a `boundary` attribute listing the
    boundary curve coordinates per boundary component of the manifold.
    """
    if not getattr(surface, "boundary", None):
        return False
    c = surface.boundary[0]
    trivial, ess, ncomp = decompose_curve(c)
    if trivial != 0 or ncomp != 1:
        return False
    return abs(intersection_number(ess, meridian_coords)) == 1


# -- the boundary pattern and spanning-slope arithmetic -----------------------


def boundary_pattern(tri, framing):
    """
    The exponent p >= 0 for which the three boundary edges represent the
    classes m, m^p l, m^(p+1) l in the given geometric framing.  Returns
    (p, framing), where the framing may have its meridian negated to make
    p non-negative.

    Raises when the meridian is not parallel to a boundary edge.
    """
    from .triangulation import boundary_torus
    from .homology import Framing

    torus = boundary_torus(tri)
    slopes = [slope_of_class(_primitive(torus.edge_vector[e]), framing)
              for e in torus.edges]
    merid = [s for s in slopes if s.q == 0]
    rest = sorted(s.p for s in slopes if s.q != 0)
    if len(merid) != 1 or len(rest) != 2 or rest[1] != rest[0] + 1:
        raise ValueError("boundary edges are not a meridian and a pair of "
                         "consecutive spanning slopes; got %s" % slopes)
    k = rest[0]
    if k >= 0:
        return k, framing
    flipped = Framing((-framing.first[0], -framing.first[1]),
                      framing.second, framing.flavor)
    return -k - 1, flipped


def _primitive(vec):
    a, b = vec
    g = gcd(a, b)
    return (a // g, b // g)


def complementary_slope(gamma, pattern_p):
    """
    The complementary slope of a spanning slope gamma = m^(2m0) l on a
    boundary torus with pattern exponent p: the slope whose Haken sum with
    gamma is a family of trivial curves.

    For p - 2m0 > 1 the result is
        (2p^2 - 2m0(1+2p)) / (2p - 1 - 4m0),
    for 2m0 - p >= 3 it is
        (2m0(1+2p) - 2(p+1)^2) / (4m0 - 2p - 3),
    and in the boundary cases the complementary slope is itself a spanning
    slope: p-2m0 = 0 gives (p+2)/1, p-2m0 = 1 and 2m0-p = 1 give (p+1)/1,
    and 2m0-p = 2 gives p/1.
    """
    if gamma.q != 1 or gamma.p % 2:
        raise ValueError("%r is not a spanning slope m^2k l" % gamma)
    p = pattern_p
    m0 = gamma.p // 2
    r = p - 2 * m0
    if r == 0:
        return Slope(p + 2, 1)
    if r == 1:
        return Slope(p + 1, 1)
    if r > 1:
        return Slope(2 * p * p - 2 * m0 * (1 + 2 * p), 2 * p - 1 - 4 * m0)
    if r == -1:
        return Slope(p + 1, 1)
    if r == -2:
        return Slope(p, 1)
    return Slope(2 * m0 * (1 + 2 * p) - 2 * (p + 1) ** 2, 4 * m0 - 2 * p - 3)


def arc_coords_from_edge_weights(weights):
    """
    Normal arc coordinates of a curve from its three unsigned edge weights
    (w_1, w_2, w_3) against the three boundary edges: each arc type meets
    two of the three edges, so x_i = (sum - 2 w_i)/2 up to labelling.
    Returns the sorted triple of candidate coordinates.
    """
    a, b, c = weights
    s = a + b + c
    if s % 2:
        raise ValueError("edge weights of a closed curve have even total")
    coords = ((s - 2 * a) // 2, (s - 2 * b) // 2, (s - 2 * c) // 2)
    if min(coords) < 0:
        raise ValueError("weights %r violate the triangle inequality" % (weights,))
    return coords


def mu(gamma, pattern_p):
    """
    The maximal normal arc coordinate of a slope on a boundary torus with
    pattern exponent p: for gamma = m^(2m0) l this is max(1, p - 2m0) when
    p >= 2m0 and max(1, 2m0 - p - 1) otherwise.
    """
    p, q = gamma.p, gamma.q
    # Signed weights of gamma against the edges m, m^p l, m^(p+1) l.
    w = (abs(q * 1 - 0 * p),
         abs(pairing((pattern_p, 1), (p, q))),
         abs(pairing((pattern_p + 1, 1), (p, q))))
    return max(arc_coords_from_edge_weights(w))
