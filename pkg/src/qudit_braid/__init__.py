"""N-qudit braid matrices built from quantum plane algebra, and the GHZ bases they generate."""

from .braid import (
    braid_matrix,
    embed_left,
    embed_right,
    hamiltonian_from_braid,
    m_matrix,
    verify_braid_relation,
    verify_m_algebra,
)
from .entangle import (
    GhzLabel,
    ghz_by_braid,
    ghz_closed_form,
    phase_removal_unitary,
    q_measure,
    q_measure_ghz_closed_form,
)
from .qpa import RootsOfUnity, fourier, generator_x, generator_z, matrix_a, matrix_b, verify_qpa
from .tensor_core import (
    BudgetExceededError,
    NotUnitaryError,
    QuditShape,
    SpectralDecomposition,
    StateVector,
    VerificationReport,
    basis_index,
    kron,
    matrix_residual,
    partial_trace,
    spectral_decompose_unitary,
)

__version__ = "0.1.0"
