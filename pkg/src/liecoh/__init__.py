"""Exact cohomology of Lie algebras relative to subalgebras.

Gaussian-rational linear algebra, Chevalley-Eilenberg complexes, the
bigraded complex of an involutive subalgebra, relative cohomology and
Hochschild-Serre spectral sequences.
"""

__version__ = "0.1.0"

from .scalar import Scalar, parse_scalar, format_scalar  # noqa: E402
from .linalg import (  # noqa: E402
    Matrix,
    Subspace,
    rank,
    kernel,
    image,
    subspace_sum,
    subspace_intersect,
    quotient_dim,
)
from .algebra import (  # noqa: E402
    LieAlgebra,
    Subalgebra,
    StructureClass,
    bracket,
    check_jacobi,
    check_subalgebra,
    conjugate_subspace,
    classify_structure,
    real_part,
    abelian,
)
from .modules import (  # noqa: E402
    Representation,
    trivial_module,
    adjoint_module,
    quotient_module,
    dual_module,
    forms_module,
    invariants,
    restrict,
)
from .cochains import (  # noqa: E402
    Cochain,
    CochainComplex,
    BigradedSlot,
    ce_differential,
    lie_derivative,
    ce_complex,
    cohomology_dims,
    n_space,
    induced_complex,
    relative_complex,
    hs_isomorphism_check,
)
from .spectral import (  # noqa: E402
    FilteredComplex,
    SpectralSequencePage,
    hs_filtration,
    compute_page,
    limit_page,
    spectral_sequence,
    hs_e2_check,
    reducibility_check,
)
from .roots import (  # noqa: E402
    CartanDatum,
    HermitianProduct,
    build_semisimple,
    borel,
    parabolic,
    hermitian_extension,
    preset,
)
from .theorem import TheoremReport, theorem1_crosscheck, full_report  # noqa: E402
from .config import Config  # noqa: E402
from .errors import (  # noqa: E402
    LieCohError,
    ParseError,
    DimensionMismatch,
    ValidationError,
    PreconditionError,
    CapExceeded,
)

__all__ = ["__version__", "Matrix", "Subspace", "rank", "kernel", "image", "subspace_sum", "subspace_intersect", "quotient_dim", "LieAlgebra", "Subalgebra", "StructureClass", "bracket", "check_jacobi", "check_subalgebra", "conjugate_subspace", "classify_structure", "real_part", "abelian", "Representation", "trivial_module", "adjoint_module", "quotient_module", "dual_module", "forms_module", "invariants", "restrict", "Cochain", "CochainComplex", "BigradedSlot", "ce_differential", "lie_derivative", "ce_complex", "cohomology_dims", "n_space", "induced_complex", "relative_complex", "hs_isomorphism_check", "FilteredComplex", "SpectralSequencePage", "hs_filtration", "compute_page", "limit_page", "spectral_sequence", "hs_e2_check", "reducibility_check", "CartanDatum", "HermitianProduct", "build_semisimple", "borel", "parabolic", "hermitian_extension", "preset", "LieCohError", "ParseError", "DimensionMismatch", "ValidationError", "PreconditionError", "CapExceeded", "Scalar", "parse_scalar", "format_scalar", "TheoremReport", "theorem1_crosscheck", "full_report", "Config"]
