"""
Singular (semi-simplicial) triangulations of compact 3-manifolds with
boundary: face-gluing tables, the derived skeleton, the induced boundary
surface, and layering on boundary edges.

A triangulation is a list of tetrahedra with vertices labelled 0..3 and a
gluing table.  Gluings may be singular: edges may be loops, two faces of one
tetrahedron may be glued to each other, and distinct edges of a tetrahedron
may belong to the same edge class.  A face may not be glued to itself.
"""
import json

from . import perm as P

# The six edges of a tetrahedron, as ordered vertex pairs a < b.
EDGE_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {pair: i for i, pair in enumerate(EDGE_PAIRS)}

# Vertices of face f (the face opposite vertex f), in increasing order.
FACE_VERTICES = tuple(tuple(v for v in range(4) if v != f) for f in range(4))


class InvalidTriangulation(ValueError):
    """Raised when gluing data does not describe a triangulation."""


class Triangulation:
    """
    An immutable gluing table.

    gluings[t][f] is either None (boundary face) or a pair (t2, p) where p
    is a permutation of {0,1,2,3} sending face f of tetrahedron t onto face
    p[f] of tetrahedron t2.  The table must be involutive.
    """

    def __init__(self, gluings):
        table = []
        for row in gluings:
            if len(row) != 4:
                raise InvalidTriangulation("each tetrahedron needs 4 gluing entries")
            table.append(tuple(None if g is None else (g[0], tuple(g[1]))
                               for g in row))
        self.gluings = tuple(table)
        self.size = len(table)
        self._check_involution()
        self._skeleton = None

    def _check_involution(self):
        for t, row in enumerate(self.gluings):
            for f, g in enumerate(row):
                if g is None:
                    continue
                t2, p = g
                if not (0 <= t2 < self.size):
                    raise InvalidTriangulation(
                        "gluing of face (%d,%d) targets tetrahedron %d "
                        "which does not exist" % (t, f, t2))
                if sorted(p) != [0, 1, 2, 3]:
                    raise InvalidTriangulation(
                        "gluing of face (%d,%d) is not a permutation" % (t, f))
                if t2 == t and p[f] == f:
                    raise InvalidTriangulation(
                        "face (%d,%d) glued to itself" % (t, f))
                back = self.gluings[t2][p[f]]
                if back is None or back[0] != t or back[1] != P.invert(p):
                    raise InvalidTriangulation(
                        "non-involutive gluing at face (%d,%d)" % (t, f))

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_json(cls, text):
        """Read the gluing-table JSON format.

        { "tets": n, "gluings": [ per-tet list of 4 entries, each null or
          [targetTet, "permutation as 4 digits"] ] }
        """
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidTriangulation("malformed JSON: %s" % e) from None
        if not isinstance(doc, dict) or "gluings" not in doc:
            raise InvalidTriangulation("JSON document lacks a 'gluings' field")
        rows = []
        for row in doc["gluings"]:
            entries = []
            for g in row:
                if g is None:
                    entries.append(None)
                else:
                    t2, digits = g
                    if len(digits) != 4 or any(c not in "0123" for c in digits):
                        raise InvalidTriangulation(
                            "bad permutation string %r" % (digits,))
                    entries.append((int(t2), tuple(int(c) for c in digits)))
            rows.append(entries)
        tri = cls(rows)
        if "tets" in doc and doc["tets"] != tri.size:
            raise InvalidTriangulation("'tets' field disagrees with gluing table")
        return tri

    def to_json(self):
        rows = []
        for row in self.gluings:
            rows.append([None if g is None else
                         [g[0], "".join(str(v) for v in g[1])] for g in row])
        return json.dumps({"tets": self.size, "gluings": rows})

    # -- basic queries -----------------------------------------------------

    def glued(self, t, f):
        return self.gluings[t][f]

    def boundary_face_count(self):
        return sum(1 for row in self.gluings for g in row if g is None)

    def skeleton(self):
        if self._skeleton is None:
            self._skeleton = Skeleton(self)
        return self._skeleton

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.gluings == other.gluings

    def __hash__(self):
        return hash(self.gluings)

    def __repr__(self):
        return "Triangulation(%d tetrahedra, %d boundary faces)" % (
            self.size, self.boundary_face_count())


def parse_triangulation(text):
    """
    Parse a triangulation from a gluing-table JSON document or from an
    isomorphism-signature string.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        return Triangulation.from_json(stripped)
    from .isosig import decode_isosig
    return decode_isosig(stripped)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1


class _SignedUnionFind:
    """Union-find tracking a relative sign (0/1) against the root."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.sign = [0] * n
        self.consistent = True

    def find(self, x):
        if self.parent[x] == x:
            return x, 0
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        s = 0
        for y in reversed(path):
            s ^= self.sign[y]
            self.parent[y] = x
            self.sign[y] = s
        return x, s

    def relative_sign(self, x):
        return self.find(x)[1]

    def union(self, x, y, rel):
        """Merge so that sign(x) ^ sign(y) == rel."""
        rx, sx = self.find(x)
        ry, sy = self.find(y)
        if rx == ry:
            if (sx ^ sy) != rel:
                self.consistent = False
            return
        self.parent[ry] = rx
        self.sign[ry] = sx ^ sy ^ rel


class Skeleton:
    """
    Vertex, edge and triangle classes of a triangulation, with boundary
    flags, per-edge degrees, an orientation assignment (or a non-orientable
    marker) and vertex-link data.
    """

    def __init__(self, tri):
        self.triangulation = tri
        self.defects = []
        self._classify_faces(tri)
        self._classify_edges(tri)
        self._classify_vertices(tri)
        self._orient(tri)
        self._vertex_links(tri)
        self._boundary_components(tri)
        n = tri.size
        self.euler_characteristic = (len(self.vertex_classes)
                                     - len(self.edge_classes)
                                     + len(self.triangle_classes) - n)
        self.valid = not self.defects

    # -- classes -----------------------------------------------------------

    def _classify_faces(self, tri):
        slots = [(t, f) for t in range(tri.size) for f in range(4)]
        index = {s: i for i, s in enumerate(slots)}
        uf = _UnionFind(len(slots))
        for t in range(tri.size):
            for f in range(4):
                g = tri.glued(t, f)
                if g is not None:
                    uf.union(index[(t, f)], index[(g[0], g[1][f])])
        self.triangle_classes, self.triangle_index = _collect(slots, index, uf)
        self.triangle_is_boundary = [
            len(cls) == 1 for cls in self.triangle_classes]
        for cls in self.triangle_classes:
            if len(cls) > 2:
                self.defects.append("triangle class with more than two sides")

    def _classify_edges(self, tri):
        slots = [(t,) + pair for t in range(tri.size) for pair in EDGE_PAIRS]
        index = {s: i for i, s in enumerate(slots)}
        uf = _SignedUnionFind(len(slots))
        for t in range(tri.size):
            for f in range(4):
                g = tri.glued(t, f)
                if g is None:
                    continue
                t2, p = g
                for a, b in EDGE_PAIRS:
                    if a == f or b == f:
                        continue
                    a2, b2 = p[a], p[b]
                    flip = 0
                    if a2 > b2:
                        a2, b2, flip = b2, a2, 1
                    uf.union(index[(t, a, b)], index[(t2, a2, b2)], flip)
        if not uf.consistent:
            self.defects.append("edge identified with itself in reverse")
        self.edge_classes, self.edge_index = _collect(slots, index, uf)
        # Orientation of each slot relative to the canonical representative
        # (the smallest slot, directed from its lower to its higher vertex).
        self.edge_sign = {}
        for cls in self.edge_classes:
            root_sign = uf.relative_sign(index[cls[0]])
            for s in cls:
                self.edge_sign[s] = uf.relative_sign(index[s]) ^ root_sign
        self.edge_degree = [len(cls) for cls in self.edge_classes]
        self.edge_is_boundary = [False] * len(self.edge_classes)
        for t in range(tri.size):
            for f in range(4):
                if tri.glued(t, f) is None:
                    for a, b in _face_edge_pairs(f):
                        self.edge_is_boundary[self.edge_index[(t, a, b)]] = True

    def _classify_vertices(self, tri):
        slots = [(t, v) for t in range(tri.size) for v in range(4)]
        index = {s: i for i, s in enumerate(slots)}
        uf = _UnionFind(len(slots))
        for t in range(tri.size):
            for f in range(4):
                g = tri.glued(t, f)
                if g is None:
                    continue
                t2, p = g
                for v in range(4):
                    if v != f:
                        uf.union(index[(t, v)], index[(t2, p[v])])
        self.vertex_classes, self.vertex_index = _collect(slots, index, uf)

    def _orient(self, tri):
        n = tri.size
        comp = _UnionFind(n)
        for t in range(n):
            for f in range(4):
                g = tri.glued(t, f)
                if g is not None:
                    comp.union(t, g[0])
        self.connected = n <= 1 or len({comp.find(t) for t in range(n)}) == 1

        orient = [0] * n
        orientable = True
        for seed in range(n):
            if orient[seed]:
                continue
            orient[seed] = 1
            stack = [seed]
            while stack:
                t = stack.pop()
                for f in range(4):
                    g = tri.glued(t, f)
                    if g is None:
                        continue
                    t2, p = g
                    want = -P.sign(p) * orient[t]
                    if orient[t2] == 0:
                        orient[t2] = want
                        stack.append(t2)
                    elif orient[t2] != want:
                        orientable = False
        self.orientable = orientable
        self.tet_orientation = orient if orientable else None

    # -- vertex links -------------------------------------------------------

    def _vertex_links(self, tri):
        # Corner triangle (t,v); its vertices are (t,v,w) for w != v and its
        # sides are (t,v,f) for f != v, lying in face f of the tetrahedron.
        corners = [(t, v) for t in range(tri.size) for v in range(4)]
        cindex = {s: i for i, s in enumerate(corners)}
        lverts = [(t, v, w) for t in range(tri.size) for v in range(4)
                  for w in range(4) if w != v]
        lvindex = {s: i for i, s in enumerate(lverts)}
        vuf = _UnionFind(len(lverts))
        cuf = _UnionFind(len(corners))
        for t in range(tri.size):
            for f in range(4):
                g = tri.glued(t, f)
                if g is None:
                    continue
                t2, p = g
                for v in range(4):
                    if v == f:
                        continue
                    cuf.union(cindex[(t, v)], cindex[(t2, p[v])])
                    for w in range(4):
                        if w != v and w != f:
                            vuf.union(lvindex[(t, v, w)],
                                      lvindex[(t2, p[v], p[w])])

        self.vertex_link = []
        for cls in self.vertex_classes:
            cset = {cindex[c] for c in cls}
            roots = {cuf.find(i) for i in cset}
            connected = len(roots) <= 1
            faces = len(cset)
            sides_bdry = sum(
                1 for t, v in cls for f in range(4)
                if f != v and tri.glued(t, f) is None)
            sides_glued = sum(
                1 for t, v in cls for f in range(4)
                if f != v and tri.glued(t, f) is not None)
            edges = sides_glued // 2 + sides_bdry
            vset = {vuf.find(lvindex[(t, v, w)])
                    for t, v in cls for w in range(4) if w != v}
            chi = len(vset) - edges + faces
            closed = sides_bdry == 0
            self.vertex_link.append(
                {"chi": chi, "closed": closed, "connected": connected})
            if not connected:
                self.defects.append("vertex with disconnected link")
            elif closed and chi != 2:
                self.defects.append("internal vertex whose link is not a sphere")
            elif not closed and chi != 1:
                self.defects.append("boundary vertex whose link is not a disc")
        self.vertex_is_boundary = [not vl["closed"] for vl in self.vertex_link]

    # -- boundary surface ---------------------------------------------------

    def _boundary_components(self, tri):
        faces = [(t, f) for t in range(tri.size) for f in range(4)
                 if tri.glued(t, f) is None]
        findex = {s: i for i, s in enumerate(faces)}
        uf = _UnionFind(len(faces))
        edge_to_faces = {}
        for t, f in faces:
            for a, b in _face_edge_pairs(f):
                edge_to_faces.setdefault(
                    self.edge_index[(t, a, b)], []).append((t, f))
        for e, fl in edge_to_faces.items():
            if len(fl) != 2:
                self.defects.append("boundary edge with %d adjacent sides" % len(fl))
            for other in fl[1:]:
                uf.union(findex[fl[0]], findex[other])
        comp = {}
        for s in faces:
            comp.setdefault(uf.find(findex[s]), []).append(s)
        self.boundary_components = []
        for members in comp.values():
            members.sort()
            edges = {self.edge_index[(t, a, b)]
                     for t, f in members for a, b in _face_edge_pairs(f)}
            verts = {self.vertex_index[(t, v)]
                     for t, f in members for v in FACE_VERTICES[f]}
            self.boundary_components.append({
                "faces": members,
                "edges": sorted(edges),
                "vertices": sorted(verts),
                "chi": len(verts) - len(edges) + len(members),
            })
        self.boundary_components.sort(key=lambda c: c["faces"][0])

    # -- induced orientations ----------------------------------------------

    def face_cycle(self, t, f):
        """
        The cyclic vertex order of face f of tetrahedron t induced by the
        global orientation (tetrahedra oriented per tet_orientation).
        """
        if self.tet_orientation is None:
            raise ValueError("triangulation is not orientable")
        a, b, c = FACE_VERTICES[f]
        if self.tet_orientation[t] * (-1) ** f > 0:
            return (a, b, c)
        return (a, c, b)

    def boundary_word(self, t, f):
        """
        The boundary of face (t,f) as a cyclic list of (edge class, sign):
        sign +1 when the traversal agrees with the edge class's canonical
        orientation.
        """
        cyc = self.face_cycle(t, f)
        word = []
        for i in range(3):
            x, y = cyc[i], cyc[(i + 1) % 3]
            a, b = (x, y) if x < y else (y, x)
            idx = self.edge_index[(t, a, b)]
            sgn = 1 if (x, y) == (a, b) else -1
            if self.edge_sign[(t, a, b)]:
                sgn = -sgn
            word.append((idx, sgn))
        return word


def _face_edge_pairs(f):
    a, b, c = FACE_VERTICES[f]
    return ((a, b), (a, c), (b, c))


def _collect(slots, index, uf):
    """Group slots into classes ordered by smallest member."""
    groups = {}
    for s in slots:
        r = uf.find(index[s]) if isinstance(uf, _UnionFind) else uf.find(index[s])[0]
        groups.setdefault(r, []).append(s)
    classes = sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])
    cindex = {}
    for i, cls in enumerate(classes):
        for s in cls:
            cindex[s] = i
    return [tuple(c) for c in classes], cindex


# -- knot-exterior validation ----------------------------------------------


class ValidationReport:
    """Outcome of validate_knot_exterior: named checks plus diagnostics."""

    def __init__(self):
        self.checks = {}
        self.diagnostics = []

    def record(self, name, ok, detail=""):
        self.checks[name] = ok
        if not ok:
            self.diagnostics.append("%s: %s" % (name, detail) if detail else name)

    @property
    def ok(self):
        return all(self.checks.values())

    def __repr__(self):
        lines = ["%s: %s" % (k, "pass" if v else "FAIL")
                 for k, v in self.checks.items()]
        return "\n".join(lines)


def validate_knot_exterior(tri):
    """
    Check that a triangulation could present a knot exterior: valid,
    connected, orientable, with exactly one boundary component which is a
    one-vertex two-triangle torus.  Also records whether the triangulation
    has exactly one vertex in total.
    """
    sk = tri.skeleton()
    rep = ValidationReport()
    rep.record("valid", sk.valid, "; ".join(sk.defects))
    rep.record("connected", sk.connected)
    rep.record("orientable", sk.orientable)
    nb = len(sk.boundary_components)
    rep.record("one_boundary_component", nb == 1, "found %d" % nb)
    if nb == 1:
        bc = sk.boundary_components[0]
        rep.record("boundary_is_torus", bc["chi"] == 0,
                   "boundary Euler characteristic %d" % bc["chi"])
        standard = (len(bc["faces"]) == 2 and len(bc["edges"]) == 3
                    and len(bc["vertices"]) == 1)
        rep.record("boundary_one_vertex_form", standard,
                   "%d triangles, %d edges, %d vertices" % (
                       len(bc["faces"]), len(bc["edges"]), len(bc["vertices"])))
        if sk.orientable and standard and bc["chi"] == 0:
            try:
                boundary_torus(tri)
                rep.record("boundary_model", True)
            except ValueError as e:
                rep.record("boundary_model", False, str(e))
    rep.record("one_vertex_interior", len(sk.vertex_classes) == 1,
               "%d vertex classes" % len(sk.vertex_classes))
    # All checks except the informational vertex count gate suitability.
    rep.essential = all(v for k, v in rep.checks.items()
                        if k != "one_vertex_interior")
    return rep


# -- the two-triangle boundary torus ----------------------------------------


class BoundaryTorus:
    """
    The induced one-vertex two-triangle boundary torus, laid out on the
    standard square-with-diagonal model.

    The square has a horizontal edge h, a vertical edge v and a diagonal d
    with [d] = [h] + [v] in homology.  The lower triangle traverses
    (h+, v+, d-) and the upper one (d+, h-, v-).  All boundary curve and
    slope computations refer to the basis ([h], [v]) of H_1 of the torus.

    Attributes:
        lower, upper: the two boundary face slots (t, f);
        roles: maps 'h'/'v'/'d' to (edge class index, sign) giving the model
            edge as a directed copy of a canonically oriented edge class;
        edge_vector: maps edge class index to its H_1 vector (for the
            canonical orientation of that class).
    """

    def __init__(self, tri):
        sk = tri.skeleton()
        if not sk.orientable:
            raise ValueError("boundary model needs an orientable triangulation")
        if len(sk.boundary_components) != 1:
            raise ValueError("need exactly one boundary component")
        bc = sk.boundary_components[0]
        if len(bc["faces"]) != 2 or len(bc["edges"]) != 3 or len(bc["vertices"]) != 1:
            raise ValueError("boundary is not a one-vertex two-triangle torus")
        self.triangulation = tri
        self.skeleton = sk
        self.lower, self.upper = bc["faces"]
        lw = sk.boundary_word(*self.lower)
        uw = sk.boundary_word(*self.upper)
        if len({e for e, _ in lw}) != 3 or len({e for e, _ in uw}) != 3:
            raise ValueError("boundary triangle repeats an edge class")
        # Rotate the lower word so its smallest edge class comes first, then
        # read off the model roles h, v, d.
        k = min(range(3), key=lambda i: lw[i][0])
        lw = lw[k:] + lw[:k]
        (eh, sh), (ev, sv), (ed, sd) = lw
        self.roles = {"h": (eh, sh), "v": (ev, sv), "d": (ed, -sd)}
        expect = [(ed, -sd), (eh, -sh), (ev, -sv)]
        for j in range(3):
            if uw[j:] + uw[:j] == expect:
                break
        else:
            raise ValueError("boundary gluing does not match the torus model")
        self.edge_vector = {}
        for role, vec in (("h", (1, 0)), ("v", (0, 1)), ("d", (1, 1))):
            e, s = self.roles[role]
            self.edge_vector[e] = (s * vec[0], s * vec[1])
        self.edges = sorted(self.edge_vector)

    def corner_role(self, face_slot, corner):
        """
        Classify corner `corner` (a vertex of the face) of a boundary face:
        returns 1, 2 or 3 for the x1 (between v and d), x2 (between v and h)
        and x3 (between h and d) arc types of the model.
        """
        t, f = face_slot
        pairs = [(a, b) for a, b in _face_edge_pairs(f) if corner in (a, b)]
        classes = {self.skeleton.edge_index[(t, a, b)] for a, b in pairs}
        by_class = {self.roles[r][0]: r for r in "hvd"}
        names = {by_class[c] for c in classes}
        if names == {"v", "d"}:
            return 1
        if names == {"v", "h"}:
            return 2
        if names == {"h", "d"}:
            return 3
        raise ValueError("corner is not incident to two distinct model edges")


def boundary_torus(tri):
    return BoundaryTorus(tri)


# -- layering ----------------------------------------------------------------


def layer_on_boundary_edge(tri, edge_class):
    """
    Attach a new tetrahedron along the given boundary edge class, flipping
    that edge of the induced boundary triangulation.  Returns the new
    triangulation; the input is left untouched.
    """
    sk = tri.skeleton()
    if not (0 <= edge_class < len(sk.edge_classes)):
        raise ValueError("no such edge class")
    if not sk.edge_is_boundary[edge_class]:
        raise ValueError("edge class %d is not a boundary edge" % edge_class)
    sides = []
    for t in range(tri.size):
        for f in range(4):
            if tri.glued(t, f) is not None:
                continue
            for a, b in _face_edge_pairs(f):
                if sk.edge_index[(t, a, b)] == edge_class:
                    sides.append((t, f, a, b))
    if len(sides) != 2:
        raise ValueError("boundary edge has %d boundary sides" % len(sides))

    n = tri.size
    table = [list(row) for row in tri.gluings]
    table.append([None, None, None, None])
    new_faces = (3, 2)  # faces 012 and 013 of the new tetrahedron
    for (t, f, a, b), nf in zip(sides, new_faces):
        start, end = (a, b) if not sk.edge_sign[(t, a, b)] else (b, a)
        third = next(v for v in FACE_VERTICES[f] if v not in (a, b))
        p = [None] * 4
        p[0], p[1] = start, end
        p[FACE_VERTICES[nf][2]] = third   # vertex 2 or 3 of the new tet
        p[nf] = f
        p = tuple(p)
        table[n][nf] = (t, p)
        table[t][f] = (n, P.invert(p))
    new_tri = Triangulation(table)
    new_sk = new_tri.skeleton()
    if not (new_sk.valid and new_sk.orientable):
        raise AssertionError("layering produced an invalid triangulation")
    return new_tri
