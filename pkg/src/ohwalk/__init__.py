"""Quantum walks on graphs of the ordered Hamming scheme of depth 2.

The walk alpha*A_(1,0) + beta*A_(0,1) on Q^(N,2) projects onto a triangular
lattice of (N+1)(N+2)/2 sites; the Tratnik bivariate Krawtchouk polynomials
diagonalize the projected Hamiltonian.
"""

from .checks import CheckReport, GuardError
from .dynamics import (
    AmplitudeField,
    LatticeOperator,
    amplitude_closed_form,
    amplitude_expm_oracle,
    amplitude_spectral,
    build_hamiltonian,
    evolve_field,
    field_spectral,
)
from .krawtchouk import (
    PolyParams,
    SpectralData,
    build_spectral,
    check_generating_function,
    check_recurrences,
    krawtchouk_uni,
    spectrum,
    tratnik,
    tratnik_orthonormal,
)
from .lattice import n_sites, site_index, sites
from .projection import ColumnBasis, ProjectedOperator, build_columns, check_column_invariance, project_walk
from .scheme import SchemeGraph, column_size, neighbors, shape_of, verify_bose_mesner
from .transfer import (
    RatioClass,
    ScanTrace,
    TransferReport,
    classify_ratio,
    detect_fr,
    detect_pst,
    find_events,
    scan_times,
)

__version__ = "0.1.0"
