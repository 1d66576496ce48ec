"""
Slope norms, crosscap numbers and knot genus from enumerated fundamental
surfaces.

The slope norm of an even slope is the least -chi(S) over properly
embedded surfaces with a single boundary curve of that slope; it is
computed from the fundamental surfaces with connected essential boundary
together with saddle distances in the Farey tessellation.  The crosscap
number of a knot is computed three ways: from spanning fundamental
surfaces of an efficient suitable triangulation, from all fundamental
surfaces of a 0-efficient triangulation together with distances to the
spanning-slope subtree, and from Q-fundamental surfaces of a 0-efficient
suitable triangulation.
"""
from math import inf

from . import curves, farey
from .homology import geometric_framing, homological_longitude, two_torsion_framing
from .normal import (enumerate_fundamental, suitability_check,
                     zero_efficiency_check)
from .triangulation import boundary_torus, validate_knot_exterior


class PreconditionError(ValueError):
    """An input fails a precondition of the requested computation."""


class InconsistencyError(RuntimeError):
    """The enumeration contradicts a guaranteed property of valid input."""


class SlopeNormResult:
    def __init__(self, slope, norm, witness, witness_slope, distance):
        self.slope = slope
        self.norm = norm
        self.witness = witness
        self.witness_slope = witness_slope
        self.distance = distance

    def __repr__(self):
        return "SlopeNormResult(slope=%s, norm=%d, via %s at distance %d)" % (
            self.slope, self.norm, self.witness_slope, self.distance)


class CrosscapResult:
    """
    Crosscap number with the minimised quantities that produced it:
    A (non-orientable spanning), B (orientable spanning) and, depending on
    the run, Z (non-spanning, distance-corrected) or N (non-spanning,
    quadrilateral run), each possibly infinite.  Diagnostics nOr, orient
    and nSp give the maximal Euler characteristics behind A, B and N.
    """

    def __init__(self, method, crosscap, a=inf, b=inf, z=inf, n=inf,
                 trivial=False, guard_inconclusive=None, witnesses=None,
                 excluded_disconnected=0):
        self.method = method
        self.crosscap = crosscap
        self.a = a
        self.b = b
        self.z = z
        self.n = n
        self.trivial = trivial
        self.guard_inconclusive = guard_inconclusive
        self.witnesses = witnesses or {}
        self.excluded_disconnected = excluded_disconnected

    @property
    def n_or(self):
        return None if self.a == inf else 1 - self.a

    @property
    def orient(self):
        return None if self.b == inf else 2 - self.b

    @property
    def n_sp(self):
        return None if self.n == inf else 1 - self.n

    def __repr__(self):
        return ("CrosscapResult(%s, crosscap=%s, A=%s, B=%s, Z=%s, N=%s)"
                % (self.method, self.crosscap, self.a, self.b, self.z, self.n))


def _single_essential_boundary(surface):
    """The essential curve coordinates when the surface boundary is one
    essential curve and nothing else, otherwise None."""
    if not surface.boundary:
        return None
    trivial, ess, ncomp = curves.decompose_curve(surface.boundary[0])
    if trivial != 0 or ncomp != 1:
        return None
    return ess


def _require_efficient(tri, surfaces=None):
    rep = validate_knot_exterior(tri)
    if not rep.essential:
        raise PreconditionError("not a knot exterior: %s" % rep.diagnostics)
    eff = zero_efficiency_check(tri, surfaces=surfaces)
    if not eff.zero_efficient:
        raise PreconditionError(
            "triangulation is not 0-efficient: %d normal spheres, %d "
            "non-vertex-linking discs found" % (len(eff.spheres),
                                                len(eff.bad_discs)))
    return eff


def slope_norm(tri, framing, delta, cap=None, result=None):
    """
    The norm of an even slope: enumerate the standard fundamental
    surfaces, keep those with connected essential boundary, keep the
    largest Euler characteristic per boundary slope, and minimise
    -chi(F) + d(slope(F), delta) over the survivors.

    The triangulation must be 0-efficient and the framing a two-torsion
    framing, so that evenness of slopes is the parity of the first
    coordinate.
    """
    if not delta.even:
        raise PreconditionError("%s is not an even slope" % delta)
    _require_efficient(tri)
    if result is None:
        result = enumerate_fundamental(tri, "standard",
                                       **({} if cap is None else {"cap": cap}))
    best_by_slope = {}
    for surf in result.surfaces:
        ess = _single_essential_boundary(surf)
        if ess is None:
            continue
        s = curves.slope_of(ess, framing)
        if not s.even:
            raise InconsistencyError(
                "fundamental surface boundary %s has odd slope %s" % (ess, s))
        cur = best_by_slope.get(s)
        if cur is None or surf.euler_characteristic > cur.euler_characteristic:
            best_by_slope[s] = surf
    if not best_by_slope:
        raise InconsistencyError(
            "no fundamental surface with connected essential boundary")
    best = None
    for s, surf in sorted(best_by_slope.items(), key=lambda kv: kv[0].pair()):
        d = farey.farey_distance(s, delta)
        val = -surf.euler_characteristic + d
        if best is None or val < best.norm:
            best = SlopeNormResult(delta, val, surf, s, d)
    return best


def slope_norm_of_manifold(tri, coords="standard", framing=None, cap=None):
    """
    The slope norm of the manifold: the least -chi over fundamental (or
    Q-fundamental) surfaces with connected essential boundary, with all
    slopes achieving it.  Returns (norm, minimising slopes, witnesses).
    """
    _require_efficient(tri)
    if framing is None:
        framing = two_torsion_framing(tri)
    result = enumerate_fundamental(tri, coords,
                                   **({} if cap is None else {"cap": cap}))
    norm = None
    slopes = {}
    for surf in result.surfaces:
        ess = _single_essential_boundary(surf)
        if ess is None:
            continue
        s = curves.slope_of(ess, framing)
        val = -surf.euler_characteristic
        if norm is None or val < norm:
            norm = val
            slopes = {s: surf}
        elif val == norm:
            slopes.setdefault(s, surf)
    if norm is None:
        raise InconsistencyError(
            "no fundamental surface with connected essential boundary")
    ordered = sorted(slopes, key=lambda s: s.pair())
    return norm, ordered, [slopes[s] for s in ordered]


def _meridian_curve_of_edge(tri, meridian_edge):
    torus = boundary_torus(tri)
    if meridian_edge not in torus.edge_vector:
        raise PreconditionError(
            "edge %d is not a boundary edge" % meridian_edge)
    return curves.coords_of_class(torus.edge_vector[meridian_edge])


def _classify(result, meridian_curve):
    """Split surfaces with a single essential boundary curve into spanning
    and non-spanning, keyed with their essential boundary."""
    spanning = []
    non_spanning = []
    for surf in result.surfaces:
        ess = _single_essential_boundary(surf)
        if ess is None:
            continue
        if abs(curves.intersection_number(ess, meridian_curve)) == 1:
            spanning.append((surf, ess))
        else:
            non_spanning.append((surf, ess))
    return spanning, non_spanning


def _min_over(entries, offset):
    """(min of offset - chi, witness) over (surface, boundary) pairs."""
    best, witness = inf, None
    for surf, _ in entries:
        val = offset - surf.euler_characteristic
        if val < best:
            best, witness = val, surf
    return best, witness


def crosscap_suitable(tri, meridian_edge, cap=None, result=None):
    """
    Crosscap number from an efficient suitable triangulation: the meridian
    is a boundary edge, and only spanning fundamental surfaces matter.
    """
    rep = validate_knot_exterior(tri)
    if not rep.essential:
        raise PreconditionError("not a knot exterior: %s" % rep.diagnostics)
    if result is None:
        result = enumerate_fundamental(tri, "standard",
                                       **({} if cap is None else {"cap": cap}))
    suit = suitability_check(tri, meridian_edge, surfaces=result.surfaces)
    if not suit.efficient_suitable:
        raise PreconditionError(
            "triangulation is not efficient suitable: %r" % suit)
    meridian_curve = _meridian_curve_of_edge(tri, meridian_edge)
    spanning, _ = _classify(result, meridian_curve)
    if not spanning:
        raise InconsistencyError("no spanning fundamental surface found")
    x = max(surf.euler_characteristic for surf, _ in spanning)
    a, wa = _min_over([e for e in spanning if not e[0].orientable], 1)
    b, wb = _min_over([e for e in spanning if e[0].orientable], 2)
    witnesses = {"A": wa, "B": wb}
    if x == 1:
        return CrosscapResult("suitable", 0, a, b, trivial=True,
                              witnesses=witnesses)
    if x == 0:
        return CrosscapResult("suitable", 1, a, b, witnesses=witnesses)
    top = [e for e in spanning if e[0].euler_characteristic == x]
    if any(not surf.orientable for surf, _ in top):
        cc = 1 - x
    else:
        cc = 2 - x
    assert cc == min(a, b)
    return CrosscapResult("suitable", cc, a, b, witnesses=witnesses)


def crosscap_general(tri, meridian_curve, cap=None, result=None):
    """
    Crosscap number from any 0-efficient triangulation with given meridian
    curve coordinates: min(A, B, Z) where Z ranges over non-spanning
    fundamental surfaces with connected essential boundary, each corrected
    by its saddle distance to the spanning-slope subtree.
    """
    trivial, ess_m, ncomp = curves.decompose_curve(meridian_curve)
    if trivial != 0 or ncomp != 1:
        raise PreconditionError(
            "meridian coordinates %r are not a connected essential curve"
            % (meridian_curve,))
    if result is None:
        result = enumerate_fundamental(tri, "standard",
                                       **({} if cap is None else {"cap": cap}))
    _require_efficient(tri)
    fr = geometric_framing(tri, curves.class_of_curve(ess_m))
    spanning, non_spanning = _classify(result, ess_m)
    a, wa = _min_over([e for e in spanning if not e[0].orientable], 1)
    b, wb = _min_over([e for e in spanning if e[0].orientable], 2)
    z, wz = inf, None
    for surf, ess in non_spanning:
        s = curves.slope_of(ess, fr)
        val = 1 - surf.euler_characteristic + \
            farey.distance_to_even_integral_subtree(s)
        if val < z:
            z, wz = val, surf
    cc = min(a, b, z)
    if cc is inf:
        raise InconsistencyError("no fundamental surface with connected "
                                 "essential boundary")
    return CrosscapResult("general", cc, a, b, z=z,
                          witnesses={"A": wa, "B": wb, "Z": wz})


def crosscap_quad(tri, meridian_edge, cap=None, result=None):
    """
    Crosscap number from the Q-fundamental surfaces of a 0-efficient
    suitable triangulation: min(A', B') over spanning Q-fundamental
    surfaces.  Also reports N' over the non-spanning ones and whether the
    weaker single-coordinate-system criterion would have been inconclusive
    (N' < min(A', B')).
    """
    rep = validate_knot_exterior(tri)
    if not rep.essential:
        raise PreconditionError("not a knot exterior: %s" % rep.diagnostics)
    eff = suitability_check(tri, meridian_edge)
    if not eff.zero_efficient or not eff.meridian_edge_ok:
        raise PreconditionError(
            "triangulation is not 0-efficient suitable: %r" % eff)
    if result is None:
        result = enumerate_fundamental(tri, "quad",
                                       **({} if cap is None else {"cap": cap}))
    meridian_curve = _meridian_curve_of_edge(tri, meridian_edge)
    spanning, non_spanning = _classify(result, meridian_curve)
    if not spanning:
        raise InconsistencyError("no spanning Q-fundamental surface found")
    a, wa = _min_over([e for e in spanning if not e[0].orientable], 1)
    b, wb = _min_over([e for e in spanning if e[0].orientable], 2)
    n, wn = _min_over(non_spanning, 1)
    cc = min(a, b)
    if cc is inf:
        raise InconsistencyError("no spanning Q-fundamental surface found")
    return CrosscapResult("quad", cc, a, b, n=n,
                          guard_inconclusive=bool(n < cc),
                          witnesses={"A": wa, "B": wb, "N": wn},
                          excluded_disconnected=result.excluded_disconnected)


def knot_genus(tri, meridian_curve, cap=None, result=None,
               require_efficient=True):
    """
    The genus of the knot: an orientable spanning surface of maximal Euler
    characteristic appears among the fundamental surfaces of a 0-efficient
    triangulation, so genus = (1 - max chi)/2.  Requires the knot to bound
    an orientable surface (homological longitude of order one).
    Returns (genus, trivial flag, witness surface).
    """
    (la, lb), order = homological_longitude(tri)
    if order != 1:
        raise PreconditionError(
            "knot class is not null-homologous (longitude has order %d)"
            % order)
    trivial, ess_m, ncomp = curves.decompose_curve(meridian_curve)
    if trivial != 0 or ncomp != 1:
        raise PreconditionError(
            "meridian coordinates %r are not a connected essential curve"
            % (meridian_curve,))
    if require_efficient:
        _require_efficient(tri)
    if result is None:
        result = enumerate_fundamental(tri, "standard",
                                       **({} if cap is None else {"cap": cap}))
    spanning, _ = _classify(result, ess_m)
    orientable = [e for e in spanning if e[0].orientable]
    if not orientable:
        raise InconsistencyError(
            "no orientable fundamental spanning surface found")
    x = max(surf.euler_characteristic for surf, _ in orientable)
    witness = next(surf for surf, _ in orientable
                   if surf.euler_characteristic == x)
    if x == 1:
        return 0, True, witness
    assert (1 - x) % 2 == 0
    return (1 - x) // 2, False, witness
