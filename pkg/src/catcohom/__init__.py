"""Cohomology of modules over finite categories.

Finite categories with tabulated composition, functor modules over
prime fields or the rationals, Ext/Tor via normalized bar complexes,
Kan extensions, regular extensions of categories with their spectral
sequence pages, and factory constructions of the standard categories
attached to a finite group (transporter, orbit, fusion, fusion-orbit,
subdivision, linking).
"""

__version__ = "0.1.0"
