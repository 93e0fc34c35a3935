"""The cubic form attached to the curve x0^2*x2 = x1^3 and its polarizations.

All functions take integer triples and return exact integers (or an integer
triple).  The four pair values S, T, U, V returned by :func:`pair_values`
are the building blocks of every divisibility invariant in the package.
"""

from .vectors import Vec3, vsub, vscale


def cubic_form(x: Vec3) -> int:
    """x0^2*x2 - x1^3, the cubic vanishing on (1, t, t^3)."""
    return x[0] * x[0] * x[2] - x[1] ** 3


def trilinear_form(x: Vec3, y: Vec3, z: Vec3) -> int:
    """The symmetric trilinear polarization of the cubic.

    x0*y0*z2 + x0*y2*z0 + x2*y0*z0 - 3*x1*y1*z1; satisfies
    trilinear_form(x, x, x) == 3*cubic_form(x).
    """
    return x[0] * y[0] * z[2] + x[0] * y[2] * z[0] + x[2] * y[0] * z[0] - 3 * x[1] * y[1] * z[1]


def pair_discriminant(x: Vec3, y: Vec3) -> int:
    """T^2 - 4*S*U at the pair (x, y): the discriminant of t -> cubic_form(x + t*y)."""
    t = trilinear_form(x, x, y)
    return t * t - 4 * cubic_form(x) * trilinear_form(x, y, y)


def conjugate_point(x: Vec3, y: Vec3) -> Vec3:
    """The integer point T*x - 2*S*y built from the pair (x, y)."""
    t = trilinear_form(x, x, y)
    return vsub(vscale(t, x), vscale(2 * cubic_form(x), y))


def coupling_form(x: Vec3, u: Vec3, y: Vec3) -> int:
    """Three-point polarized variant of the pair discriminant.

    Degenerates to pair_discriminant(x, y) at u = x.  Kept for experiments;
    no further identity is known for it.
    """
    return (
        trilinear_form(x, u, y) * trilinear_form(x, x, y)
        - trilinear_form(x, x, u) * trilinear_form(x, y, y)
        - cubic_form(x) * trilinear_form(u, y, y)
    )


def pair_values(x: Vec3, y: Vec3) -> tuple[int, int, int, int]:
    """(S, T, U, V) = the cubic at x, both mixed polarizations, the cubic at y."""
    return (
        cubic_form(x),
        trilinear_form(x, x, y),
        trilinear_form(x, y, y),
        cubic_form(y),
    )
