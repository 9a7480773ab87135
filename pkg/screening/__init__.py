"""J-matrix spectra of screened Coulomb potentials."""

__version__ = "1.0.0"
