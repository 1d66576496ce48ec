"""
Brute-force census of small one-vertex triangulations with a single torus
boundary, used to seed fixtures.  Candidates are deduplicated by canonical
isomorphism signature; knot exteriors in the 3-sphere are certified by
Dehn filling a candidate meridian and proving the filling has trivial
fundamental group, and identified by their Alexander polynomial.
"""
import sys
from itertools import combinations, permutations
from math import gcd
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
sys.path.insert(0, str(Path(__file__).resolve().parent))

from normcross import perm as P
from normcross.homology import H1
from normcross.isosig import encode_isosig
from normcross.triangulation import (InvalidTriangulation, Triangulation,
                                     boundary_torus, validate_knot_exterior)


def enumerate_small(n_tets, boundary_faces=2):
    """
    All valid connected orientable one-vertex-boundary-torus
    triangulations with the given tetrahedron count, up to isomorphism.
    Reduces symmetry by forcing the first gluing to involve face (0, 0).
    """
    faces = [(t, f) for t in range(n_tets) for f in range(4)]
    n_glued = (4 * n_tets - boundary_faces) // 2
    seen = set()
    out = []

    def build(pairs):
        table = [[None] * 4 for _ in range(n_tets)]
        for (t1, f1), (t2, f2), img in pairs:
            src = [v for v in range(4) if v != f1]
            perm = [0] * 4
            perm[f1] = f2
            for v, w in zip(src, img):
                perm[v] = w
            perm = tuple(perm)
            if table[t1][f1] is not None or table[t2][perm[f1]] is not None:
                return None
            if t1 == t2 and f1 == perm[f1]:
                return None
            table[t1][f1] = (t2, perm)
            table[t2][perm[f1]] = (t1, P.invert(perm))
        try:
            return Triangulation(table)
        except InvalidTriangulation:
            return None

    def rec(pairs, used, bdry):
        if len(pairs) == n_glued:
            tri = build(pairs)
            if tri is None:
                return
            sk = tri.skeleton()
            if not (sk.valid and sk.connected and sk.orientable):
                return
            rep = validate_knot_exterior(tri)
            if not rep.essential:
                return
            sig = encode_isosig(tri)
            if sig in seen:
                return
            seen.add(sig)
            out.append((sig, tri))
            return
        free = [s for s in faces if s not in used]
        if not free:
            return
        a = free[0]
        if bdry < boundary_faces:
            rec(pairs, used | {a}, bdry + 1)
        for b in free[1:]:
            for img in permutations([v for v in range(4) if v != b[1]]):
                rec(pairs + [(a, b, img)], used | {a, b}, bdry)

    rec([], frozenset(), 0)
    return out


if __name__ == "__main__":
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 2
    found = enumerate_small(n)
    print("distinct knot-exterior-form triangulations with %d tets: %d"
          % (n, len(found)))
    for sig, tri in found:
        h = H1(tri)
        print(" ", sig, "H1 =", h.describe())
