"""modlie: restricted Lie algebras over small finite fields.

Exact computer algebra for finite-dimensional Lie algebras over GF(p^m):
restricted-structure verification, minimal p-envelopes, reduced enveloping
algebras u(L, S) with PBW straightening, induced modules, and classification
of the irreducible modules with a given character.
"""

from .errors import ModlieError
from .gfp import FieldDesc, FieldElement, Matrix, ff_make
from .liealg import LieAlgebra, LieElement, Subspace, lie_from_table
from .pstruct import PMapping, jordan_chevalley, minimal_p_envelope, verify_pmap
from .uenv import Character, EnvAlgebra, uls_make
from .repmod import Representation, InducedSpec, induce, is_irreducible, module_iso
from .classify import (
    ClassificationReport,
    IsoClass,
    classify_dim2,
    classify_dim3alpha,
    classify_dim4,
    classify_generic,
    classify_sl2,
)

__version__ = "0.1.0"

__all__ = [
    "ModlieError",
    "FieldDesc", "FieldElement", "Matrix", "ff_make",
    "LieAlgebra", "LieElement", "Subspace", "lie_from_table",
    "PMapping", "jordan_chevalley", "minimal_p_envelope", "verify_pmap",
    "Character", "EnvAlgebra", "uls_make",
    "Representation", "InducedSpec", "induce", "is_irreducible", "module_iso",
    "ClassificationReport", "IsoClass",
    "classify_dim2", "classify_dim3alpha", "classify_dim4",
    "classify_generic", "classify_sl2",
    "__version__",
]
