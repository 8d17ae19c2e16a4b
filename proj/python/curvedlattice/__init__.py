"""Photon-mediated dipole interactions and collective decay spectra for
emitter arrays on planar and spherical waveguides.

Lengths are in units of the free-space wavelength lambda0 (so k0 = 2*pi);
sphere separations are central angles in radians. Decay rates are in units
of the single-emitter rate.
"""

from ._core import (
    __version__,
    degree_from,
    effective_wavenumber,
    eigenvalues,
    green_free3d_zz,
    green_plane,
    green_sphere_closed,
    green_sphere_open,
    interaction_matrix,
    run_sweep,
    spectrum,
)

__all__ = [
    "__version__",
    "degree_from",
    "effective_wavenumber",
    "eigenvalues",
    "green_free3d_zz",
    "green_plane",
    "green_sphere_closed",
    "green_sphere_open",
    "interaction_matrix",
    "run_sweep",
    "spectrum",
]
