"""Built-in test surfaces.

``blowup_f1`` is the blow-up of the Hirzebruch surface F_1 at a point p on a
section C with C^2 = 1, with boundary the strict transform of C. Basis:
pullbacks of C and of a fibre f, and the exceptional curve E.
"""

from __future__ import annotations

from .lattice import IntersectionLattice, SurfaceData


def blowup_f1() -> SurfaceData:
    L = IntersectionLattice(
        ("C", "f", "E"),
        ((1, 1, 0), (1, 0, 0), (0, 0, -1)),
    )
    return SurfaceData(
        lattice=L,
        canonical=(-2, -1, 1),
        boundary=(1, 0, -1),
        negative_curves=((0, 0, 1), (0, 1, -1), (1, -1, 0)),
        curve_labels=("E", "f-E", "C-f"),
    )


def projective_plane(boundary_degree: int = 1) -> SurfaceData:
    """P^2 with D a smooth curve of the given degree (1 or 2 keeps -K-(1-b)D ample)."""
    L = IntersectionLattice(("H",), ((1,),))
    return SurfaceData(lattice=L, canonical=(-3,), boundary=(boundary_degree,))


def quadric_diagonal() -> SurfaceData:
    """P^1 x P^1 with D of bidegree (1, 1). The rulings are listed as nef test curves."""
    L = IntersectionLattice(("F1", "F2"), ((0, 1), (1, 0)))
    return SurfaceData(
        lattice=L, canonical=(-2, -2), boundary=(1, 1),
        extra_curves=((1, 0), (0, 1)),
    )


def cubic_hyperplane() -> SurfaceData:
    """Rank-one model of a cubic surface with D a hyperplane section (-K = D)."""
    L = IntersectionLattice(("H",), ((3,),))
    return SurfaceData(lattice=L, canonical=(-1,), boundary=(1,))


BUILTIN = {
    "blowup_f1": blowup_f1,
    "p2_line": lambda: projective_plane(1),
    "p2_conic": lambda: projective_plane(2),
    "quadric_diagonal": quadric_diagonal,
    "cubic_hyperplane": cubic_hyperplane,
}
