"""Offline arbitrary-precision generator of golden fixtures.

This package re-implements the closed formulas of the main library with
mpmath at 50+ significant digits and writes the resulting values as
deterministic JSON fixture files.  It is a batch tool: the main library
never imports it, and its output is committed so the primary test suite
runs without this package installed.
"""

from .formulas import (
    hp_b_coeff,
    hp_c,
    hp_eis_closed,
    hp_eis_regularized,
    hp_fourier_bump,
    hp_gamma_table,
    hp_gamma_tilde_table,
    hp_hyp2f1_connection,
    hp_hyp2f1_direct,
    hp_loggamma,
    hp_phi,
)

__all__ = [
    "hp_b_coeff", "hp_c", "hp_eis_closed", "hp_eis_regularized",
    "hp_fourier_bump", "hp_gamma_table", "hp_gamma_tilde_table",
    "hp_hyp2f1_connection", "hp_hyp2f1_direct", "hp_loggamma", "hp_phi",
]
