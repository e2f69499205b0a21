"""Fields of values of complex matrices and inscribed principal submatrices."""

from .convexoid import (
    ConvexoidVerdict,
    eigen_decompose_normal,
    is_convexoid_numeric,
    verify_johnson_decomposition,
)
from .errors import FovError
from .fov import (
    FovBoundary,
    SupportSample,
    boundary,
    contains,
    random_field_samples,
    support,
    support_gap_to_hull,
)
from .inscription import (
    CaseTag,
    EdgeContact,
    TangencyReport,
    contact_point,
    dft_inscribe,
    inscribe,
    sign_invariance_check,
    verify_inscription,
    verify_only_inscription,
)
from .linalg import (
    EigenDecomposition,
    deletion_projector,
    dft_matrix,
    hermitian_eigen,
    is_normal,
    is_unitary,
    phase_normalize,
    principal_submatrix,
    project_down,
    rayleigh,
)
from .polygon import (
    Segment,
    SpectralPolygon,
    adjacent_vertex_pairs,
    convex_hull,
    edge_midpoints,
    point_on_segment,
)

__version__ = "0.1.0"
