"""Perturbation theory in the Kramers-Henneberger frame.

Dressed Coulomb potentials, hydrogenic matrix elements, ionization rates,
odd-harmonic spectra and a driven two-level reference model.
"""

__version__ = "0.1.0"
