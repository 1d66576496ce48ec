"""
Isomorphism signatures for 3-manifold triangulations: a printable-string
encoding of a gluing table, decodable back to a triangulation.

The format encodes, per component: the tetrahedron count, then a stream of
per-facet actions (0 = boundary, 1 = join to a not-yet-seen tetrahedron via
the identity gluing, 2 = join to an already-seen tetrahedron), packed three
actions per character, then for each type-2 join the destination
tetrahedron and the index of the gluing permutation.  The canonical
signature of a triangulation is the lexicographically smallest string over
all choices of starting tetrahedron and vertex relabelling.
"""
from . import perm as P
from .triangulation import Triangulation, InvalidTriangulation

SIG_CHARS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-"
_SIG_VAL = {c: i for i, c in enumerate(SIG_CHARS)}

# Gluing permutations are indexed by their position in the lexicographic
# ordering of S4 image tuples.
PERM_ORDER = P.ORDERED_S4


def _append_int(chars, val, nchars):
    for _ in range(nchars):
        chars.append(SIG_CHARS[val & 63])
        val >>= 6


def _index_chars(nsimp):
    n, tmp = 0, nsimp
    while tmp > 0:
        n += 1
        tmp >>= 6
    return max(n, 1)


class _Reader:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.trit_char = 0
        self.trit_left = 0

    def char_val(self):
        if self.pos >= len(self.text):
            raise InvalidTriangulation("isomorphism signature ended early")
        c = self.text[self.pos]
        self.pos += 1
        if c not in _SIG_VAL:
            raise InvalidTriangulation("bad character %r in signature" % c)
        return _SIG_VAL[c]

    def read_int(self, nchars):
        val = 0
        for i in range(nchars):
            val |= self.char_val() << (6 * i)
        return val

    def read_trit(self):
        if self.trit_left == 0:
            self.trit_char = self.char_val()
            self.trit_left = 3
        t = self.trit_char & 3
        self.trit_char >>= 2
        self.trit_left -= 1
        return t

    def flush_trits(self):
        self.trit_left = 0


def decode_isosig(sig):
    """Decode an isomorphism signature into a Triangulation."""
    sig = sig.strip()
    if not sig:
        raise InvalidTriangulation("empty signature")
    reader = _Reader(sig)
    gluings = []
    while reader.pos < len(sig):
        _decode_component(reader, gluings)
    return Triangulation(gluings)


def _decode_component(reader, gluings):
    nsimp = reader.char_val()
    if nsimp == 63:
        nchars = reader.char_val()
        nsimp = reader.read_int(nchars)
    if nsimp == 0:
        raise InvalidTriangulation("zero-size component in signature")
    actions = []
    facets = 0
    while facets < 4 * nsimp:
        t = reader.read_trit()
        if t == 3:
            raise InvalidTriangulation("bad facet action in signature")
        actions.append(t)
        facets += 1 if t == 0 else 2
    if facets != 4 * nsimp:
        raise InvalidTriangulation("facet actions overrun the tetrahedra")
    reader.flush_trits()
    nchars = _index_chars(nsimp)
    njoins = sum(1 for a in actions if a == 2)
    dests = [reader.read_int(nchars) for _ in range(njoins)]
    perms = [reader.char_val() for _ in range(njoins)]
    joins = list(zip(dests, perms))

    base = len(gluings)
    table = [[None] * 4 for _ in range(nsimp)]
    action_it = iter(actions)
    join_it = iter(joins)
    built = 1
    for s in range(nsimp):
        if s >= built:
            raise InvalidTriangulation("signature visits tetrahedra out of order")
        for f in range(4):
            if table[s][f] is not None:
                continue
            a = next(action_it, None)
            if a is None:
                raise InvalidTriangulation("too few facet actions")
            if a == 0:
                table[s][f] = ()     # marked boundary, fixed up below
            elif a == 1:
                if built >= nsimp:
                    raise InvalidTriangulation("signature creates too many tetrahedra")
                t2 = built
                built += 1
                table[s][f] = (t2, P.IDENTITY)
                table[t2][f] = (s, P.IDENTITY)
            else:
                dest, pidx = next(join_it)
                if dest >= built or pidx >= 24:
                    raise InvalidTriangulation("bad join in signature")
                p = PERM_ORDER[pidx]
                if table[dest][p[f]] is not None:
                    raise InvalidTriangulation("conflicting join in signature")
                table[s][f] = (dest, p)
                table[dest][p[f]] = (s, P.invert(p))
    if built != nsimp:
        raise InvalidTriangulation("signature leaves tetrahedra unreached")
    for row in table:
        gluings.append([None if g == () or g is None else
                        (g[0] + base, g[1]) for g in row])


def _component_string(tri, start, start_perm):
    """The signature string for one labelling choice of a connected
    triangulation."""
    n = tri.size
    image = [None] * n
    vmap = [None] * n
    image[start] = 0
    vmap[start] = start_perm
    preimage = [start]
    actions = []
    joins = []
    accounted = set()
    simp_img = 0
    while simp_img < len(preimage):
        t = preimage[simp_img]
        inv = P.invert(vmap[t])
        for facet_img in range(4):
            f = inv[facet_img]
            if (t, f) in accounted:
                continue
            accounted.add((t, f))
            g = tri.glued(t, f)
            if g is None:
                actions.append(0)
                continue
            t2, p = g
            accounted.add((t2, p[f]))
            if image[t2] is None:
                image[t2] = len(preimage)
                vmap[t2] = P.compose(vmap[t], P.invert(p))
                preimage.append(t2)
                actions.append(1)
            else:
                actions.append(2)
                gl = P.compose(vmap[t2], P.compose(p, inv))
                joins.append((image[t2], gl))
        simp_img += 1
    if len(preimage) != n:
        raise ValueError("triangulation is not connected")

    chars = []
    if n < 63:
        chars.append(SIG_CHARS[n])
    else:
        nc = _index_chars(n)
        chars.append(SIG_CHARS[63])
        chars.append(SIG_CHARS[nc])
        _append_int(chars, n, nc)
    for i in range(0, len(actions), 3):
        block = actions[i:i + 3]
        val = 0
        for j, a in enumerate(block):
            val |= a << (2 * j)
        chars.append(SIG_CHARS[val])
    nchars = _index_chars(n)
    for dest, _ in joins:
        _append_int(chars, dest, nchars)
    for _, gl in joins:
        chars.append(SIG_CHARS[PERM_ORDER.index(gl)])
    return "".join(chars)


def encode_isosig(tri):
    """
    The canonical isomorphism signature of a connected triangulation:
    minimal over all starting tetrahedra and vertex relabellings.
    """
    if tri.size == 0:
        raise ValueError("cannot encode the empty triangulation")
    best = None
    for start in range(tri.size):
        for p in P.ORDERED_S4:
            s = _component_string(tri, start, p)
            if best is None or s < best:
                best = s
    return best
