"""
Fundamental and Q-fundamental surface enumeration, and the 0-efficiency
scan for normal spheres and non-vertex-linking discs.
"""
from .dd import EnumerationAborted
from .hilbert import hilbert_basis, DEFAULT_CAP
from .matching import matching_system, lift_to_standard
from .surface import reconstruct, DEFAULT_DISC_CAP


class EnumerationResult:
    """Outcome of a fundamental surface enumeration."""

    def __init__(self, coords, vectors, surfaces, excluded_disconnected):
        self.coords = coords
        self.vectors = vectors
        self.surfaces = surfaces
        self.excluded_disconnected = excluded_disconnected


def fundamental_vectors(tri, coords="standard", cap=DEFAULT_CAP):
    """The Hilbert basis of the admissible solution cone, sorted."""
    system = matching_system(tri, coords)
    return hilbert_basis(system.nvars, system.equations, system.quad_groups,
                         cap=cap)


def enumerate_fundamental(tri, coords="standard", cap=DEFAULT_CAP,
                          disc_cap=DEFAULT_DISC_CAP):
    """
    Reconstruct every fundamental vector.  In quadrilateral coordinates a
    fundamental surface is required to be connected; disconnected minimal
    lifts are excluded and counted.
    """
    vectors = fundamental_vectors(tri, coords, cap=cap)
    surfaces = []
    excluded = 0
    for vec in vectors:
        surf = reconstruct(tri, vec, coords=coords, disc_cap=disc_cap)
        if coords == "quad" and not surf.connected:
            excluded += 1
            continue
        surfaces.append(surf)
    return EnumerationResult(coords, vectors, surfaces, excluded)


def fundamental_surfaces(tri, coords="standard", cap=DEFAULT_CAP,
                         disc_cap=DEFAULT_DISC_CAP):
    """The fundamental (or Q-fundamental) surfaces of a triangulation."""
    return enumerate_fundamental(tri, coords, cap=cap,
                                 disc_cap=disc_cap).surfaces


class EfficiencyReport:
    """
    Witnesses found by the normal sphere and disc scan.

    zero_efficient: no normal sphere and no non-vertex-linking normal disc;
    no_normal_sphere: the weaker condition used for suitable
    triangulations.
    """

    def __init__(self, spheres, bad_discs, meridian_edge_ok=None):
        self.spheres = spheres
        self.bad_discs = bad_discs
        self.meridian_edge_ok = meridian_edge_ok

    @property
    def no_normal_sphere(self):
        return not self.spheres

    @property
    def zero_efficient(self):
        return not self.spheres and not self.bad_discs

    @property
    def efficient_suitable(self):
        if self.meridian_edge_ok is None:
            return None
        return self.no_normal_sphere and self.meridian_edge_ok

    def __repr__(self):
        return ("EfficiencyReport(zero_efficient=%s, spheres=%d, "
                "bad_discs=%d, meridian_edge_ok=%s)" % (
                    self.zero_efficient, len(self.spheres),
                    len(self.bad_discs), self.meridian_edge_ok))


def vertex_surfaces(tri, cap=DEFAULT_CAP, disc_cap=DEFAULT_DISC_CAP):
    """The vertex normal surfaces: reconstructions of the admissible
    extreme rays of the standard solution cone."""
    from .dd import solution_cone_rays
    system = matching_system(tri, "standard")
    rays = solution_cone_rays(system.nvars, system.equations,
                              system.quad_groups, ray_cap=cap)
    return [reconstruct(tri, r, disc_cap=disc_cap) for r in rays]


def zero_efficiency_check(tri, cap=DEFAULT_CAP, disc_cap=DEFAULT_DISC_CAP,
                          surfaces=None):
    """
    Scan normal surfaces for 2-spheres and for discs that are not
    vertex-linking.  When no surface list is supplied the vertex surfaces
    are scanned: if a normal sphere or disc exists at all, one appears
    among them, so an empty scan certifies 0-efficiency.
    """
    if surfaces is None:
        surfaces = vertex_surfaces(tri, cap=cap, disc_cap=disc_cap)
    spheres = []
    bad_discs = []
    for surf in surfaces:
        closed = not surf.boundary or all(x == 0 for x in surf.boundary[0])
        if surf.euler_characteristic == 2 and closed and surf.connected:
            spheres.append(surf)
        if (surf.euler_characteristic == 1 and not closed and surf.connected
                and not surf.is_vertex_linking):
            bad_discs.append(surf)
    return EfficiencyReport(spheres, bad_discs)


def suitability_check(tri, meridian_edge, meridian_coords=None, cap=DEFAULT_CAP,
                      disc_cap=DEFAULT_DISC_CAP, surfaces=None):
    """
    The efficient-suitable check: no normal 2-sphere, and the designated
    boundary edge is the geometric meridian.  The meridian is trusted
    input; when explicit meridian curve coordinates are also supplied they
    are verified to be parallel to the edge.
    """
    from ..triangulation import boundary_torus
    from ..curves import class_of_curve, decompose_curve

    report = zero_efficiency_check(tri, cap=cap, disc_cap=disc_cap,
                                   surfaces=surfaces)
    torus = boundary_torus(tri)
    sk = tri.skeleton()
    ok = sk.edge_is_boundary[meridian_edge] if (
        0 <= meridian_edge < len(sk.edge_classes)) else False
    if ok and meridian_coords is not None:
        _, ess, ncomp = decompose_curve(meridian_coords)
        if ncomp != 1:
            ok = False
        else:
            a, b = class_of_curve(ess)
            ea, eb = torus.edge_vector[meridian_edge]
            ok = (a, b) in ((ea, eb), (-ea, -eb))
    report.meridian_edge_ok = ok
    return report
