"""
Permutations of {0,1,2,3}, represented as 4-tuples of images.
"""
from itertools import permutations

# All 24 permutations in lexicographic order of their image tuples.
ORDERED_S4 = tuple(permutations(range(4)))
_ORDERED_INDEX = {p: i for i, p in enumerate(ORDERED_S4)}

IDENTITY = (0, 1, 2, 3)


def sign(p):
    """Parity of a permutation: +1 for even, -1 for odd."""
    s = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                s = -s
    return s


def compose(p, q):
    """The permutation "q then p", i.e. (p*q)(i) = p(q(i))."""
    return (p[q[0]], p[q[1]], p[q[2]], p[q[3]])


def invert(p):
    inv = [0] * 4
    for i in range(4):
        inv[p[i]] = i
    return tuple(inv)


def transposition(a, b):
    img = [0, 1, 2, 3]
    img[a], img[b] = b, a
    return tuple(img)


def ordered_index(p):
    """Index of p in the lexicographic ordering of S4."""
    return _ORDERED_INDEX[p]


def _make_sign_ordered():
    # Pairs of the lexicographic list, swapped where needed so that
    # even indices carry even permutations.
    out = []
    for k in range(0, 24, 2):
        a, b = ORDERED_S4[k], ORDERED_S4[k + 1]
        if sign(a) == 1:
            out.extend([a, b])
        else:
            out.extend([b, a])
    return tuple(out)


# S4 ordering in which the permutation at index i has sign (-1)^i.
SIGN_S4 = _make_sign_ordered()
_SIGN_INDEX = {p: i for i, p in enumerate(SIGN_S4)}


def sign_index(p):
    """Index of p in the sign-alternating ordering of S4."""
    return _SIGN_INDEX[p]
