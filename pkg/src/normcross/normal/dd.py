"""
Exact double description over the integers.

Two entry points: extreme rays of a cone {x >= 0, Ax = 0} (the normal
surface solution cone, with optional pruning of rays violating the
quadrilateral constraints), and extreme rays of a pointed cone given by
inequalities {y : Gy >= 0} (used for facet enumeration of face cones).

Rays are integer vectors reduced to primitive form.  Adjacency of rays is
decided combinatorially: two extreme rays are adjacent exactly when no
third ray's tight set contains the intersection of theirs.
"""
from math import gcd


class EnumerationAborted(RuntimeError):
    """Raised when an enumeration exceeds its configured resource cap."""


def _reduce(vec):
    g = 0
    for x in vec:
        g = gcd(g, x)
        if g == 1:
            return vec
    if g > 1:
        return tuple(x // g for x in vec)
    return vec


def _zero_mask(vec):
    m = 0
    for i, x in enumerate(vec):
        if not x:
            m |= 1 << i
    return m


def _group_masks(groups):
    masks = []
    for g in groups:
        m = 0
        for i in g:
            m |= 1 << i
        masks.append(m)
    return masks


def _violates(nzmask, group_masks):
    for gm in group_masks:
        x = nzmask & gm
        if x and (x & (x - 1)):
            return True
    return False


def solution_cone_rays(nvars, equations, quad_groups=(), ray_cap=None):
    """
    The admissible extreme rays of {x in R^nvars : x >= 0, each equation
    zero}: primitive integer vectors, sorted.  Equations are sparse
    (index, coefficient) tuples.  Rays with two quadrilateral types in one
    tetrahedron are discarded as soon as they appear; supports only grow
    along the computation, so no admissible extreme ray is lost.

    Each ray carries its values against the unprocessed equations (these
    combine linearly, so they are never recomputed), equations are
    processed in order of least positive*negative ray count, and adjacency
    of ray pairs is decided with bitset intersection against an index of
    rays by vanishing coordinate.

    ray_cap bounds the intermediate ray count; exceeding it raises
    EnumerationAborted.
    """
    gmasks = _group_masks(quad_groups)
    full = (1 << nvars) - 1
    eqs = [tuple(eq) for eq in equations]

    # rays: list of [vec, zmask, dots] with dots indexed like `remaining`.
    remaining = list(range(len(eqs)))
    rays = []
    for i in range(nvars):
        vec = tuple(1 if j == i else 0 for j in range(nvars))
        dots = [next((c for k, c in eqs[e] if k == i), 0) for e in remaining]
        rays.append([vec, full ^ (1 << i), dots])

    eq_rows = []  # echelon basis of the processed equations

    while remaining:
        # Pick the equation with the fewest positive*negative pairs.
        best = None
        for pos_idx in range(len(remaining)):
            p = n = 0
            for ray in rays:
                d = ray[2][pos_idx]
                if d > 0:
                    p += 1
                elif d < 0:
                    n += 1
            key = (p * n, p + n)
            if best is None or key < best[0]:
                best = (key, pos_idx)
                if key[0] == 0:
                    break
        key, idx = best
        eq = eqs[remaining[idx]]
        del remaining[idx]

        pos, neg, zero = [], [], []
        for ray in rays:
            d = ray[2].pop(idx)
            if d > 0:
                pos.append((ray, d))
            elif d < 0:
                neg.append((ray, d))
            else:
                zero.append(ray)
        if not pos and not neg:
            continue

        dim = _span_dim([r[0] for r in rays], nvars,
                        bound=nvars - len(eq_rows))
        _append_echelon(eq_rows, eq, nvars)
        newrays = list(zero)
        if pos and neg:
            # Index rays by vanishing coordinate for the adjacency test.
            coord_mask = [0] * nvars
            for k, ray in enumerate(rays):
                zm = ray[1]
                while zm:
                    low = zm & -zm
                    coord_mask[low.bit_length() - 1] |= 1 << k
                    zm ^= low
            pair_bits = {}
            for k, ray in enumerate(rays):
                pair_bits[id(ray)] = 1 << k
            allmask = (1 << len(rays)) - 1
            need = dim - 2
            for uray, ud in pos:
                uzm = uray[1]
                unz = full ^ uzm
                ubit = pair_bits[id(uray)]
                for wray, wd in neg:
                    # The combination's support is contained in the union
                    # of the supports, so an inadmissible union can be
                    # discarded before any arithmetic.
                    if gmasks and _violates(unz | (full ^ wray[1]), gmasks):
                        continue
                    m = uzm & wray[1]
                    if m.bit_count() < need:
                        continue
                    acc = allmask & ~(ubit | pair_bits[id(wray)])
                    zm = m
                    while zm:
                        low = zm & -zm
                        acc &= coord_mask[low.bit_length() - 1]
                        if not acc:
                            break
                        zm ^= low
                    if acc:
                        continue
                    wvec = wray[0]
                    comb = tuple(ud * wv - wd * uv
                                 for uv, wv in zip(uray[0], wvec))
                    g = 0
                    for x in comb:
                        g = gcd(g, x)
                        if g == 1:
                            break
                    if g > 1:
                        comb = tuple(x // g for x in comb)
                    zmask = _zero_mask(comb)
                    if gmasks and _violates(full ^ zmask, gmasks):
                        continue
                    dots = [(ud * dw - wd * du) // g if g > 1 else
                            ud * dw - wd * du
                            for du, dw in zip(uray[2], wray[2])]
                    newrays.append([comb, zmask, dots])
        rays = newrays
        if ray_cap is not None and len(rays) > ray_cap:
            raise EnumerationAborted(
                "extreme ray enumeration exceeded cap (%d rays)" % len(rays))
    return sorted(ray[0] for ray in rays)


def _span_dim(vectors, nvars, bound=None):
    """Dimension of the rational span of integer vectors (the dimension of
    the cone they generate).  Stops early on reaching the given bound."""
    if bound is None:
        bound = nvars
    rows = []
    leads = []
    for v in vectors:
        vec = list(v)
        for brow, lead in zip(rows, leads):
            if vec[lead]:
                a, b = brow[lead], vec[lead]
                vec = [a * x - b * y for x, y in zip(vec, brow)]
        lead = next((j for j, x in enumerate(vec) if x), None)
        if lead is None:
            continue
        g = 0
        for x in vec:
            g = gcd(g, x)
            if g == 1:
                break
        if g > 1:
            vec = [x // g for x in vec]
        rows.append(vec)
        leads.append(lead)
        if len(rows) >= bound:
            break
    return len(rows)


def _append_echelon(rows, eq, nvars):
    vec = [0] * nvars
    for i, c in eq:
        vec[i] += c
    for brow in rows:
        lead = next((j for j, x in enumerate(brow) if x), None)
        if lead is not None and vec[lead]:
            a, b = brow[lead], vec[lead]
            vec = [a * x - b * y for x, y in zip(vec, brow)]
    if any(vec):
        g = 0
        for x in vec:
            g = gcd(g, x)
            if g == 1:
                break
        if g > 1:
            vec = [x // g for x in vec]
        rows.append(vec)


def dual_rays(generators, dim, ray_cap=None):
    """
    Extreme rays of the polar-dual cone {y : g . y >= 0 for all
    generators g} of a full-dimensional pointed cone in Z^dim.  Each
    returned entry is (normal, tight) where tight is the bitmask of
    generators the normal vanishes on; these are the facets of the primal
    cone.
    """
    gens = [tuple(g) for g in generators]
    base = _independent_subset(gens, dim)
    if len(base) != dim:
        raise ValueError("generators do not span R^%d" % dim)
    inv, det = _adjugate([gens[i] for i in base])
    sign = 1 if det > 0 else -1
    rays = []
    for col in range(dim):
        vec = _reduce(tuple(sign * inv[row][col] for row in range(dim)))
        tight = 0
        for k, g in enumerate(gens):
            if _dot(g, vec) == 0:
                tight |= 1 << k
        rays.append((vec, tight))

    for k, g in enumerate(gens):
        if k in base:
            continue
        pos, neg, zero = [], [], []
        for vec, tm in rays:
            d = _dot(g, vec)
            if d > 0:
                pos.append((vec, tm, d))
            elif d < 0:
                neg.append((vec, tm, d))
            else:
                zero.append((vec, tm | (1 << k)))
        newrays = list(zero)
        for uvec, utm, ud in pos:
            newrays.append((uvec, utm))
        for uvec, utm, ud in pos:
            for wvec, wtm, wd in neg:
                m = utm & wtm
                ok = True
                for vec, tm in rays:
                    if tm & m == m and vec is not uvec and vec is not wvec:
                        ok = False
                        break
                if not ok:
                    continue
                comb = _reduce(tuple(ud * wv - wd * uv
                                     for uv, wv in zip(uvec, wvec)))
                tight = m | (1 << k)
                newrays.append((comb, tight))
        rays = newrays
        if ray_cap is not None and len(rays) > ray_cap:
            raise EnumerationAborted("facet enumeration exceeded cap")
    # Recompute tight sets against the full generator list for safety.
    out = []
    for vec, _ in rays:
        tight = 0
        for i, g in enumerate(gens):
            d = _dot(g, vec)
            if d < 0:
                raise AssertionError("dual ray fails a generator inequality")
            if d == 0:
                tight |= 1 << i
        out.append((vec, tight))
    out.sort()
    return out


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _independent_subset(vectors, dim):
    """Indices of a maximal linearly independent subset (echelon test)."""
    basis = []
    chosen = []
    for idx, v in enumerate(vectors):
        row = list(v)
        for brow in basis:
            lead = next((j for j, x in enumerate(brow) if x), None)
            if lead is not None and row[lead]:
                a, b = brow[lead], row[lead]
                row = [a * x - b * y for x, y in zip(row, brow)]
        if any(row):
            basis.append(row)
            chosen.append(idx)
            if len(chosen) == dim:
                break
    return chosen


def _adjugate(matrix):
    """(adjugate, determinant) of a small integer matrix, by cofactors on
    a fraction-free elimination."""
    n = len(matrix)
    det = _determinant(matrix)
    if det == 0:
        raise ValueError("matrix is singular")
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[matrix[r][c] for c in range(n) if c != j]
                     for r in range(n) if r != i]
            adj[j][i] = (-1) ** (i + j) * _determinant(minor)
    return adj, det


def _determinant(matrix):
    """Bareiss fraction-free determinant of an integer matrix."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
