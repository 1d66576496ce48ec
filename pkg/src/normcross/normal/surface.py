"""
Reconstruction of a normal surface from its coordinate vector: the
explicit cell complex of triangle and quadrilateral discs, glued along
normal arcs in the faces, with Euler characteristic, connectedness,
orientability, weights and boundary curve coordinates.

Discs in a tetrahedron are indexed by their distance from the vertex or
vertex pair they separate off: triangle i at vertex v is the i-th disc
from v, and quadrilateral i of type j is the i-th disc counted from the
side of the pair {0, j}.  With this convention the arc at corner v of a
face at level k (k discs closer to v) meets both edges of the corner at
their k-th intersection point from v, which is what makes the gluing of
arcs across faces and the matching of disc corners on edges work out.
"""
from .dd import EnumerationAborted
from .matching import quad_separating, QUADS_MEETING_EDGE, lift_to_standard
from ..triangulation import FACE_VERTICES, boundary_torus

DEFAULT_DISC_CAP = 10 ** 7


class NormalSurface:
    """A normal surface with standard coordinates and derived topology."""

    def __init__(self, tri, coords, disc_cap=DEFAULT_DISC_CAP):
        coords = tuple(int(x) for x in coords)
        if len(coords) != 7 * tri.size:
            raise ValueError("expected %d standard coordinates" % (7 * tri.size))
        if any(x < 0 for x in coords):
            raise ValueError("negative normal coordinate")
        self.triangulation = tri
        self.coords = coords
        self._sk = tri.skeleton()
        self._tcount = [[coords[7 * t + v] for v in range(4)]
                        for t in range(tri.size)]
        self._qtype = []
        self._qcount = []
        for t in range(tri.size):
            quads = [(j, coords[7 * t + 3 + j]) for j in (1, 2, 3)
                     if coords[7 * t + 3 + j]]
            if len(quads) > 1:
                raise ValueError(
                    "tetrahedron %d carries two quadrilateral types" % t)
            self._qtype.append(quads[0][0] if quads else None)
            self._qcount.append(quads[0][1] if quads else 0)
        total = sum(coords)
        if total > disc_cap:
            raise EnumerationAborted(
                "surface has %d discs, past the cap of %d" % (total, disc_cap))
        self.q_weight = sum(self._qcount)
        self._edge_weights()
        self._build_cells()
        self._boundary_coords()
        self._vertex_linking()

    # -- coordinate-level counts --------------------------------------------

    def _corner_count(self, t, f, v):
        """Arcs cutting corner v in face f of tetrahedron t."""
        n = self._tcount[t][v]
        if self._qtype[t] is not None and self._qtype[t] == quad_separating(v, f):
            n += self._qcount[t]
        return n

    def _edge_weights(self):
        sk = self._sk
        weights = [None] * len(sk.edge_classes)
        for e, cls in enumerate(sk.edge_classes):
            for t, a, b in cls:
                w = self._tcount[t][a] + self._tcount[t][b]
                if self._qtype[t] in QUADS_MEETING_EDGE[(a, b)]:
                    w += self._qcount[t]
                if weights[e] is None:
                    weights[e] = w
                elif weights[e] != w:
                    raise ValueError("coordinates violate the matching "
                                     "equations at edge class %d" % e)
        self.edge_weights = weights
        self.weight = sum(weights)

    def _disc_at_corner(self, t, f, v, k):
        """The disc whose arc sits at level k of corner v in face f."""
        tv = self._tcount[t][v]
        if k < tv:
            return ("T", t, v, k)
        i = k - tv
        j = self._qtype[t]
        if v not in (0, j):
            i = self._qcount[t] - 1 - i
        return ("Q", t, i)

    def _point(self, disc, a, b):
        """Index (from vertex min(a,b)) of the disc's intersection with
        edge (a, b) of its tetrahedron."""
        t = disc[1]
        lo, hi = (a, b) if a < b else (b, a)
        if disc[0] == "T":
            v, i = disc[2], disc[3]
            pos_from_v = i
            anchor = v
        else:
            i = disc[2]
            j = self._qtype[t]
            anchor = lo
            pos_from_v = self._tcount[t][lo] + (
                i if lo in (0, j) else self._qcount[t] - 1 - i)
        w = self._slot_weight(t, lo, hi)
        return pos_from_v if anchor == lo else w - 1 - pos_from_v

    def _slot_weight(self, t, a, b):
        w = self._tcount[t][a] + self._tcount[t][b]
        if self._qtype[t] in QUADS_MEETING_EDGE[(a, b)]:
            w += self._qcount[t]
        return w

    def _global_point(self, t, a, b, pos_from_min):
        """Identify an edge intersection point across the edge class."""
        sk = self._sk
        e = sk.edge_index[(t, a, b)]
        if sk.edge_sign[(t, a, b)]:
            pos_from_min = self.edge_weights[e] - 1 - pos_from_min
        return (e, pos_from_min)

    # -- the cell complex ----------------------------------------------------

    def _disc_sides(self, disc):
        """The boundary sides of a disc in cyclic order: tuples
        (face, corner, level, start_edge, end_edge) where the edges are the
        local vertex pairs of the tetrahedron carrying the side's
        endpoints, ordered by the disc's traversal."""
        t = disc[1]
        if disc[0] == "T":
            v, i = disc[2], disc[3]
            x1, x2, x3 = [u for u in range(4) if u != v]
            corners = [(v, x1), (v, x2), (v, x3)]
            faces = [x3, x1, x2]
        else:
            i = disc[2]
            j = self._qtype[t]
            c, d = [u for u in range(4) if u not in (0, j)]
            corners = [(0, c), (0, d), (j, d), (j, c)]
            faces = [j, c, 0, d]
        sides = []
        m = len(corners)
        for s in range(m):
            f = faces[s]
            a, b = corners[s], corners[(s + 1) % m]
            corner_vertex = set(a) & set(b)
            assert len(corner_vertex) == 1
            v = corner_vertex.pop()
            if disc[0] == "T":
                level = i
            else:
                tv = self._tcount[t][v]
                level = tv + (i if v in (0, j) else self._qcount[t] - 1 - i)
            sides.append((f, v, level, tuple(sorted(a)), tuple(sorted(b))))
        return sides

    def _build_cells(self):
        tri = self.triangulation
        sk = self._sk
        discs = []
        for t in range(tri.size):
            for v in range(4):
                discs.extend(("T", t, v, i) for i in range(self._tcount[t][v]))
            discs.extend(("Q", t, i) for i in range(self._qcount[t]))
        self.discs = discs
        index = {d: i for i, d in enumerate(discs)}

        arcs = {}
        boundary_sides = []
        for di, disc in enumerate(discs):
            t = disc[1]
            for f, v, level, e0, e1 in self._disc_sides(disc):
                g = tri.glued(t, f)
                if g is None:
                    boundary_sides.append((t, f, v, level, di, e0, e1))
                    continue
                cls = sk.triangle_index[(t, f)]
                rep_t, rep_f = sk.triangle_classes[cls][0]
                if (t, f) == (rep_t, rep_f):
                    key = (cls, v, level)
                else:
                    # Map the side's data back to the representative slot.
                    fwd = tri.glued(rep_t, rep_f)[1]
                    assert tri.glued(rep_t, rep_f)[0] == t and fwd[rep_f] == f
                    inv = {fwd[u]: u for u in range(4)}
                    v = inv[v]
                    e0 = tuple(sorted((inv[e0[0]], inv[e0[1]])))
                    e1 = tuple(sorted((inv[e1[0]], inv[e1[1]])))
                    key = (cls, v, level)
                arcs.setdefault(key, []).append((di, e0, e1))

        parent = list(range(len(discs)))
        flip = [0] * len(discs)

        def find(x):
            path = []
            while parent[x] != x:
                path.append(x)
                x = parent[x]
            s = 0
            for y in reversed(path):
                s ^= flip[y]
                parent[y] = x
                flip[y] = s
            return x, s

        orientable = True
        internal_arcs = 0
        for key, sides in arcs.items():
            if len(sides) != 2:
                raise ValueError("normal arc %r has %d sides; coordinates "
                                 "do not match" % (key, len(sides)))
            internal_arcs += 1
            (d1, a1, b1), (d2, a2, b2) = sides
            if {a1, b1} != {a2, b2}:
                raise AssertionError("glued arc endpoints disagree")
            # Orientations are compatible when the two discs traverse the
            # shared arc in opposite directions.
            rel = 0 if (a1, b1) == (b2, a2) else 1
            r1, s1 = find(d1)
            r2, s2 = find(d2)
            if r1 == r2:
                if s1 ^ s2 != rel:
                    orientable = False
            else:
                parent[r2] = r1
                flip[r2] = s1 ^ s2 ^ rel

        self.orientable = orientable
        comps = {find(i)[0] for i in range(len(discs))}
        self.component_count = len(comps)
        self.connected = len(comps) == 1
        self._disc_component = {i: find(i)[0] for i in range(len(discs))}
        self._boundary_sides = boundary_sides

        points = sum(self.edge_weights)
        edges = internal_arcs + len(boundary_sides)
        self.euler_characteristic = points - edges + len(discs)

    # -- boundary curves ------------------------------------------------------

    def _boundary_coords(self):
        """Arc counts of the boundary multicurve on the two-triangle torus,
        when the triangulation has one; otherwise no coordinates."""
        sk = self._sk
        self.boundary = []
        if not sk.boundary_components:
            return
        try:
            torus = boundary_torus(self.triangulation)
        except ValueError:
            self.boundary = None
            return
        t, f = torus.upper
        counts = [0, 0, 0]
        for v in FACE_VERTICES[f]:
            role = torus.corner_role((t, f), v)
            counts[role - 1] += self._corner_count(t, f, v)
        self.boundary = [tuple(counts)]

    def _vertex_linking(self):
        sk = self._sk
        linking = self.q_weight == 0
        has_link = False
        for cls in sk.vertex_classes:
            vals = [self._tcount[t][v] for t, v in cls]
            if len(set(vals)) > 1:
                linking = False
            if min(vals) >= 1:
                has_link = True
        if not self.discs:
            linking = False
        self.is_vertex_linking = linking
        self.has_vertex_linking_component = has_link

    def __repr__(self):
        return ("NormalSurface(chi=%d, orientable=%s, connected=%s, "
                "weight=%d, boundary=%s)" % (
                    self.euler_characteristic, self.orientable,
                    self.connected, self.weight, self.boundary))


def reconstruct(tri, vec, coords="standard", disc_cap=DEFAULT_DISC_CAP):
    """
    Build the normal surface of an admissible coordinate vector.  A
    quadrilateral vector is lifted to the minimal standard vector (no
    vertex-linking summand) first.
    """
    if coords == "quad":
        vec = lift_to_standard(tri, vec)
    elif coords != "standard":
        raise ValueError("coords must be 'standard' or 'quad'")
    return NormalSurface(tri, vec, disc_cap=disc_cap)
