"""Spectral laboratory for Steklov-type eigenvalue problems on perforated
planar domains: conforming mesh generation, P1 finite elements, generalized
eigenvalue pencils, and the matching closed-form disk and annulus spectra."""

__version__ = "0.1.0"
