"""
Matching equations for normal surfaces in standard (7 per tetrahedron) and
quadrilateral (3 per tetrahedron) coordinates, admissibility checks, and
the minimal lift from quadrilateral to standard coordinates.

Standard coordinates of tetrahedron t occupy indices 7t..7t+6: four
triangle counts (one per vertex) followed by three quadrilateral counts.
Quadrilateral type j (j = 1, 2, 3) separates the vertex pair {0, j} from
the complementary pair, and is stored at index 7t+3+j (standard) or
3t+j-1 (quadrilateral).
"""
from math import gcd

from ..triangulation import FACE_VERTICES, EDGE_PAIRS


def quad_separating(a, b):
    """The quadrilateral type disjoint from edge (a, b): the one whose
    partition has {a, b} as one side."""
    return a + b if 0 in (a, b) else 6 - a - b


def quad_side_of_zero(j):
    """The vertex pair on the same side as vertex 0 for quad type j."""
    return (0, j)


QUADS_MEETING_EDGE = {}
for _a, _b in EDGE_PAIRS:
    QUADS_MEETING_EDGE[(_a, _b)] = tuple(
        j for j in (1, 2, 3) if j != quad_separating(_a, _b))


def tri_var(t, v):
    return 7 * t + v


def quad_var(t, j):
    return 7 * t + 3 + j


class MatchingSystem:
    """
    The linear system cutting out the normal surface solution cone in the
    chosen coordinates, together with the per-tetrahedron disjointness
    (at most one quadrilateral type) structure.
    """

    def __init__(self, tri, coords):
        if coords not in ("standard", "quad"):
            raise ValueError("coords must be 'standard' or 'quad'")
        self.triangulation = tri
        self.coords = coords
        self.size = tri.size
        if coords == "standard":
            self.nvars = 7 * tri.size
            self.quad_groups = tuple(
                tuple(quad_var(t, j) for j in (1, 2, 3))
                for t in range(tri.size))
            self.equations = _standard_equations(tri)
        else:
            self.nvars = 3 * tri.size
            self.quad_groups = tuple(
                tuple(3 * t + j - 1 for j in (1, 2, 3))
                for t in range(tri.size))
            self.equations = _quad_equations(tri)

    def is_admissible(self, vec):
        if len(vec) != self.nvars or min(vec, default=0) < 0:
            return False
        for group in self.quad_groups:
            if sum(1 for i in group if vec[i]) > 1:
                return False
        for eq in self.equations:
            if sum(c * vec[i] for i, c in eq):
                return False
        return True

    def satisfies_equations(self, vec):
        return all(sum(c * vec[i] for i, c in eq) == 0 for eq in self.equations)


def _standard_equations(tri):
    """One equation per internal triangle class and arc type: the arcs of
    each type on the two sides of the triangle must agree."""
    sk = tri.skeleton()
    eqs = []
    for cls in sk.triangle_classes:
        t, f = cls[0]
        g = tri.glued(t, f)
        if g is None:
            continue
        t2, p = g
        f2 = p[f]
        for v in FACE_VERTICES[f]:
            coeff = {}
            for var, c in ((tri_var(t, v), 1),
                           (quad_var(t, quad_separating(v, f)), 1),
                           (tri_var(t2, p[v]), -1),
                           (quad_var(t2, quad_separating(p[v], f2)), -1)):
                coeff[var] = coeff.get(var, 0) + c
            eq = tuple(sorted((i, c) for i, c in coeff.items() if c))
            if eq:
                eqs.append(eq)
    return _dedup(eqs)


def edge_cycles(tri):
    """
    For each internal edge class, the cyclic walk around it: a list of
    (tet, a, b, entry_vertex, exit_vertex) records where (a, b) is the edge
    slot and the walk crosses the tetrahedron from the face opposite
    entry_vertex to the face opposite exit_vertex.
    """
    sk = tri.skeleton()
    cycles = {}
    for e, cls in enumerate(sk.edge_classes):
        if sk.edge_is_boundary[e]:
            continue
        t, a, b = cls[0]
        g_in, g_out = [v for v in range(4) if v not in (a, b)]
        start = (t, a, b, g_out)
        walk = []
        while True:
            walk.append((t, a, b, g_in, g_out))
            glu = tri.glued(t, g_out)
            assert glu is not None, "internal edge walk hit the boundary"
            t2, p = glu
            a2, b2 = p[a], p[b]
            if a2 > b2:
                a2, b2 = b2, a2
            gi2 = p[g_out]
            go2 = next(v for v in range(4) if v not in (a2, b2, gi2))
            t, a, b, g_in, g_out = t2, a2, b2, gi2, go2
            if (t, a, b, g_out) == start:
                break
        assert len(walk) == sk.edge_degree[e]
        cycles[e] = walk
    return cycles


def _quad_equations(tri):
    """
    One equation per internal edge class: around the edge, the total count
    of quadrilaterals tilted one way equals the count tilted the other.
    """
    sk = tri.skeleton()
    eqs = []
    for e, walk in sorted(edge_cycles(tri).items()):
        coeff = {}
        for t, a, b, g_in, g_out in walk:
            tail = a if sk.edge_sign[(t, a, b)] == 0 else b
            up = 3 * t + quad_separating(tail, g_in) - 1
            down = 3 * t + quad_separating(tail, g_out) - 1
            coeff[up] = coeff.get(up, 0) + 1
            coeff[down] = coeff.get(down, 0) - 1
        eq = tuple(sorted((i, c) for i, c in coeff.items() if c))
        if eq:
            eqs.append(eq)
    return _dedup(eqs)


def _dedup(eqs):
    seen = set()
    out = []
    for eq in eqs:
        neg = tuple((i, -c) for i, c in eq)
        if eq in seen or neg in seen:
            continue
        seen.add(eq)
        out.append(eq)
    return tuple(out)


def matching_system(tri, coords):
    """Build the matching-equation cone description for a triangulation."""
    return MatchingSystem(tri, coords)


# -- quadrilateral -> standard lift ------------------------------------------


def lift_to_standard(tri, qvec):
    """
    The minimal standard coordinate vector with the given quadrilateral
    part: triangle counts are reconstructed by propagating the matching
    equations around each vertex and shifting so that no vertex-linking
    component remains.  Raises if the quadrilateral vector violates the
    quadrilateral matching equations.
    """
    sk = tri.skeleton()
    n = tri.size
    if len(qvec) != 3 * n:
        raise ValueError("expected %d quadrilateral coordinates" % (3 * n))

    def q(t, j):
        return qvec[3 * t + j - 1]

    level = {}
    for seed_t in range(n):
        for seed_v in range(4):
            if (seed_t, seed_v) in level:
                continue
            level[(seed_t, seed_v)] = 0
            stack = [(seed_t, seed_v)]
            while stack:
                t, v = stack.pop()
                base = level[(t, v)]
                for f in range(4):
                    if f == v:
                        continue
                    g = tri.glued(t, f)
                    if g is None:
                        continue
                    t2, p = g
                    want = (base + q(t, quad_separating(v, f))
                            - q(t2, quad_separating(p[v], p[f])))
                    key = (t2, p[v])
                    if key in level:
                        if level[key] != want:
                            raise ValueError(
                                "quadrilateral vector violates the matching "
                                "equations around vertex class of %s" % (key,))
                    else:
                        level[key] = want
                        stack.append(key)

    # Shift each vertex class so its minimum triangle count is zero.
    out = [0] * (7 * n)
    for cls in sk.vertex_classes:
        base = min(level[c] for c in cls)
        for t, v in cls:
            out[tri_var(t, v)] = level[(t, v)] - base
    for t in range(n):
        for j in (1, 2, 3):
            out[quad_var(t, j)] = q(t, j)
    return tuple(out)


def project_to_quad(tri, svec):
    """The quadrilateral part of a standard coordinate vector."""
    n = tri.size
    return tuple(svec[quad_var(t, j)] for t in range(n) for j in (1, 2, 3))


def primitive(vec):
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g <= 1:
        return tuple(vec)
    return tuple(x // g for x in vec)
