"""Homology of type-A/B Artin groups with abelian local coefficients and of
braid groups with coefficients in H_1 of the hyperelliptic double cover."""

from .algebra import GF, QQ, ZZ, SparseMatrix, snf
from .assembler import (
    iota,
    predict_stable,
    relative_complex,
    symplectic_homology,
    symplectic_homology_all,
)
from .complexes import CellString, ChainComplex, CoefficientSpec, braid_complex, build_A, build_B
from .homology import HomologyResult, homology, homology_all, homology_over_laurent, uct_check
from .maps import ChainMap, induced_on_homology, mu_model, section_model, st_A, st_B, tau, verify_chain_map
from .series import FormalSeries, series_braid_f2, series_odd_poincare, series_stable

__version__ = "0.1.0"
