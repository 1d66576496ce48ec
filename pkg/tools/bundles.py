"""
Material triangulations of once-punctured-torus bundles: build the product
of a one-vertex punctured torus with an interval out of prisms, layer
tetrahedra on the top fiber to change its triangulation, and close up by
gluing the top fiber to the bottom one.  Enumerating layering sequences
and closing gluings produces one-vertex triangulations of the fibered
genus-one knot exteriors (trefoil and figure-eight in the 3-sphere among
them); each candidate is identified afterwards by homology, certified
Dehn filling and the Alexander polynomial.
"""
import sys
from itertools import permutations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
sys.path.insert(0, str(Path(__file__).resolve().parent))

from normcross import perm as P
from normcross.isosig import encode_isosig
from normcross.triangulation import (FACE_VERTICES, InvalidTriangulation,
                                     Triangulation, layer_on_boundary_edge,
                                     validate_knot_exterior)


# -- the one-vertex punctured torus -------------------------------------------
# Triangles A = 0 and B = 1 with corners 0, 1, 2; side k joins corners
# k and k+1 (mod 3).  A gluing entry ((T,k),(T',k'),flip) identifies side
# k of T with side k' of T'; flip=0 sends corner k to k', flip=1 sends
# corner k to k'+1 (the orientation-reversing identification).


def _surface_vertex_classes(gluings, ntri=2):
    corners = [(T, c) for T in range(ntri) for c in range(3)]
    parent = {c: c for c in corners}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for (T, k), (T2, k2), flip in gluings:
        ends1 = ((T, k), (T, (k + 1) % 3))
        if flip:
            ends2 = ((T2, (k2 + 1) % 3), (T2, k2))
        else:
            ends2 = ((T2, k2), (T2, (k2 + 1) % 3))
        union(ends1[0], ends2[0])
        union(ends1[1], ends2[1])
    return len({find(c) for c in corners})


NTRI = 3


def punctured_torus():
    """
    A one-vertex punctured torus made of three triangles with a single
    boundary side: search the pairings of the nine sides into four glued
    pairs and one boundary side for an orientable connected gluing with
    one vertex.  The count (V, E, F) = (1, 5, 3) forces genus one with one
    boundary circle, and a single boundary side keeps the boundary of the
    closed-up bundle a two-triangle torus.
    """
    from itertools import product
    sides = [(T, k) for T in range(NTRI) for k in range(3)]

    def matchings(items):
        if not items:
            yield []
            return
        a = items[0]
        for idx in range(1, len(items)):
            b = items[idx]
            rest = [x for n, x in enumerate(items) if n not in (0, idx)]
            for m in matchings(rest):
                yield [(a, b)] + m

    for bidx in range(len(sides)):
        boundary = [sides[bidx]]
        rest = [s for n, s in enumerate(sides) if n != bidx]
        for pairs in matchings(rest):
            for flips in product((0, 1), repeat=len(pairs)):
                gl = [(p[0], p[1], f) for p, f in zip(pairs, flips)]
                if not _orientable_and_connected(gl):
                    continue
                if _surface_vertex_classes(gl, ntri=NTRI) == 1:
                    return gl, boundary
    raise AssertionError("no one-vertex punctured torus found")


def _orientable_and_connected(gluings):
    # Sign rule: a corner-reversing identification (flip=1) joins
    # coherently oriented triangles; flip=0 joins opposite ones.
    sign = {0: 1}
    changed = True
    while changed:
        changed = False
        for (T, _), (T2, _2), flip in gluings:
            want = 1 if flip else -1
            if T in sign and T2 not in sign:
                sign[T2] = sign[T] * want
                changed = True
            elif T2 in sign and T not in sign:
                sign[T] = sign[T2] * want
                changed = True
            elif T in sign and T2 in sign:
                if sign[T2] != sign[T] * want:
                    return False
    return len(sign) == NTRI


# -- prisms --------------------------------------------------------------------


def _staircase(order):
    """Tetrahedra of a prism over a triangle with corner order a < b < c:
    vertices are (corner, layer)."""
    a, b, c = order
    return [
        ((a, 0), (b, 0), (c, 0), (c, 1)),
        ((a, 0), (b, 0), (b, 1), (c, 1)),
        ((a, 0), (a, 1), (b, 1), (c, 1)),
    ]


def _order_for_diagonals(d):
    """A corner order realising square diagonals d = (d0, d1, d2), where
    d[k] = 0 means the diagonal of the square over side k runs from
    (k, bottom) to (k+1, top)."""
    for order in permutations(range(3)):
        pos = {v: i for i, v in enumerate(order)}
        if all((pos[k] < pos[(k + 1) % 3]) == (d[k] == 0) for k in range(3)):
            return order
    return None


def product_block():
    """
    The product of the one-vertex punctured torus with an interval, as a
    6-tetrahedron triangulation.  Returns (triangulation, data) where data
    records the bottom and top fiber faces and the corner labelling maps.
    """
    gl, boundary = punctured_torus()

    # Choose square diagonals: per glued side pair one shared choice, per
    # boundary side a free one; reject prisms with cyclic patterns.
    import itertools
    for bits in itertools.product((0, 1), repeat=len(gl) + len(boundary)):
        diag = {}
        for idx, (s1, s2, flip) in enumerate(gl):
            diag[s1] = bits[idx]
            # A corner-reversing identification swaps the square's corners,
            # so the matching diagonal on the other side is the other type.
            diag[s2] = bits[idx] ^ (1 if flip else 0)
        for idx, s in enumerate(boundary):
            diag[s] = bits[len(gl) + idx]
        orders = {}
        ok = True
        for T in range(NTRI):
            d = tuple(diag[(T, k)] for k in range(3))
            order = _order_for_diagonals(d)
            if order is None:
                ok = False
                break
            orders[T] = order
        if ok:
            break
    else:
        raise AssertionError("no consistent diagonal pattern")

    # Build global tetrahedra: vertices labelled (T, corner, layer),
    # without applying the fiber's side identifications.  The labels stay
    # distinct inside each prism, so faces can be matched by label sets;
    # the wall faces over glued fiber sides are then matched through the
    # side identification maps.
    tets = []
    for T in range(NTRI):
        for local in _staircase(orders[T]):
            tets.append(tuple((T, c, l) for c, l in local))

    face_slots = {}
    for ti, tet in enumerate(tets):
        for f in range(4):
            key = frozenset(tet[v] for v in FACE_VERTICES[f])
            assert len(key) == 3
            face_slots.setdefault(key, []).append((ti, f))

    table = [[None] * 4 for _ in range(len(tets))]

    def glue_slots(slot_a, slot_b, vmap):
        ta, fa = slot_a
        tb, fb = slot_b
        perm = [None] * 4
        for v in FACE_VERTICES[fa]:
            lab = vmap[tets[ta][v]]
            perm[v] = next(w for w in FACE_VERTICES[fb]
                           if tets[tb][w] == lab)
        perm[fa] = fb
        assert table[ta][fa] is None and table[tb][fb] is None
        table[ta][fa] = (tb, tuple(perm))
        table[tb][fb] = (ta, P.invert(tuple(perm)))

    # Faces interior to a prism share their label sets.
    for key, slots in face_slots.items():
        if len(slots) == 2:
            glue_slots(slots[0], slots[1], {x: x for x in key})
        elif len(slots) > 2:
            raise AssertionError("label collision in product block")

    # Wall faces across the fiber's side identifications.
    for (T, k), (T2, k2), flip in gl:
        vmap = {}
        ends1 = [k, (k + 1) % 3]
        ends2 = [k2, (k2 + 1) % 3]
        if flip:
            ends2.reverse()
        for c1, c2 in zip(ends1, ends2):
            for l in (0, 1):
                vmap[(T, c1, l)] = (T2, c2, l)
        square1 = set(vmap)
        for key, slots in list(face_slots.items()):
            if len(slots) != 1 or not key <= square1:
                continue
            image = frozenset(vmap[x] for x in key)
            partner = face_slots[image]
            assert len(partner) == 1
            glue_slots(slots[0], partner[0], vmap)

    tri = Triangulation(table)
    sk = tri.skeleton()
    assert sk.valid and sk.orientable and sk.connected

    # Locate the bottom and top fiber faces: the boundary faces all of
    # whose vertices are at the given layer.
    def fiber_faces(layer):
        out = []
        for ti, tet in enumerate(tets):
            for f in range(4):
                if table[ti][f] is not None:
                    continue
                if all(tet[v][2] == layer for v in FACE_VERTICES[f]):
                    out.append((ti, f))
        return out

    bottom = fiber_faces(0)
    top = fiber_faces(1)
    assert len(bottom) == NTRI and len(top) == NTRI
    return tri, bottom, top


def top_interior_edges(tri, top_faces):
    """Edge classes whose boundary sides both lie in the given faces."""
    sk = tri.skeleton()
    from normcross.triangulation import _face_edge_pairs
    count = {}
    for t, f in top_faces:
        for a, b in _face_edge_pairs(f):
            e = sk.edge_index[(t, a, b)]
            count[e] = count.get(e, 0) + 1
    return sorted(e for e, c in count.items() if c == 2)


def layered_bundles(max_layers=3):
    """
    Generate closed-up punctured-torus bundles: layer 0..max_layers
    tetrahedra on interior edges of the top fiber, then try all gluings of
    the top fiber faces onto the bottom ones.  Yields (isosig,
    triangulation) pairs for the valid one-vertex knot-exterior forms,
    deduplicated.
    """
    base, bottom, top = product_block()
    seen = set()
    stack = [(base, top, 0)]
    while stack:
        tri, top_faces, depth = stack.pop()
        for closed in _closures(tri, bottom, top_faces):
            sig = encode_isosig(closed)
            if sig not in seen:
                seen.add(sig)
                yield sig, closed
        if depth >= max_layers:
            continue
        sk = tri.skeleton()
        from normcross.triangulation import _face_edge_pairs
        for e in top_interior_edges(tri, top_faces):
            adjacent = [(t, f) for t, f in top_faces
                        if any(sk.edge_index[(t, a, b)] == e
                               for a, b in _face_edge_pairs(f))]
            if len(adjacent) != 2:
                continue
            bigger = layer_on_boundary_edge(tri, e)
            kept = [s2 for s2 in top_faces if s2 not in adjacent]
            new_top = kept + [(bigger.size - 1, 0), (bigger.size - 1, 1)]
            stack.append((bigger, new_top, depth + 1))


def _closures(tri, bottom, top_faces):
    from itertools import product
    out = []
    n = len(bottom)
    for assign in permutations(range(n)):
        for perms in product(list(permutations(range(3))), repeat=n):
            table = [list(row) for row in tri.gluings]
            ok = True
            for i in range(n):
                tf = top_faces[i]
                bf = bottom[assign[i]]
                pp = perms[i]
                perm = [None] * 4
                tvs = FACE_VERTICES[tf[1]]
                bvs = FACE_VERTICES[bf[1]]
                for k in range(3):
                    perm[tvs[k]] = bvs[pp[k]]
                perm[tf[1]] = bf[1]
                if table[tf[0]][tf[1]] is not None or \
                        table[bf[0]][bf[1]] is not None:
                    ok = False
                    break
                table[tf[0]][tf[1]] = (bf[0], tuple(perm))
                table[bf[0]][bf[1]] = (tf[0], P.invert(tuple(perm)))
            if not ok:
                continue
            try:
                cand = Triangulation(table)
            except InvalidTriangulation:
                continue
            sk = cand.skeleton()
            if not (sk.valid and sk.orientable and sk.connected):
                continue
            rep = validate_knot_exterior(cand)
            if rep.essential and len(sk.vertex_classes) == 1:
                out.append(cand)
    return out


if __name__ == "__main__":
    from normcross.homology import H1
    n = 0
    for sig, tri in layered_bundles(int(sys.argv[1]) if len(sys.argv) > 1 else 3):
        print(sig, tri.size, "tets, H1 =", H1(tri).describe())
        n += 1
    print(n, "candidates")
