"""Exact verification toolkit for homogeneous-bundle cohomology on the
six-quadric and for tilting bundles on the two spinor-bundle total spaces
exchanged by the associated ten-dimensional flop.

Everything runs in exact integer and rational arithmetic.  The
load-bearing pieces are

* :mod:`bbwtilt.weights` -- the D4 weight lattice, dotted Weyl action and
  the resolution of a weight to its unique cohomological degree;
* :mod:`bbwtilt.affine` -- the same resolution run symbolically over
  weights affine in one or two integer parameters, yielding certificates
  valid for every symmetric-power grade at once;
* :mod:`bbwtilt.tensor` -- GL(4) Littlewood-Richardson products and the
  dictionary between bundle expressions and lattice weights;
* :mod:`bbwtilt.cohomology` -- cohomology tables and vanishing
  certificates, on the quadric and on the total spaces;
* :mod:`bbwtilt.tilting` -- extension objects, the Ext-vanishing deduction
  rules, exceptional-collection checks and the graded comparison of the
  endomorphism algebras across the flop;
* :mod:`bbwtilt.registry` -- the declarative claim registry and runner.
"""

from .affine import Aff, AffineWeight, Inconclusive, aff, bbw_resolve_affine
from .cohomology import (
    CohomTable,
    ExpectedException,
    VanishingCertificate,
    all_k_family,
    cohomology_q6,
    cohomology_total,
    crosscheck_certificate,
    ext_pullbacks,
    family_profile,
    prove_vanishing,
)
from .registry import ClaimRunner, Registry, RegistryError, load_registry
from .tensor import (
    BundleExpr,
    ExprError,
    O,
    S,
    StabilityFailure,
    Sv,
    decompose,
    decompose_affine,
    gl_dim,
    lr_decompose,
    parse_expr,
    phi,
    sym_power,
)
from .tilting import (
    ClaimReport,
    ExtObject,
    ExtRules,
    GradedHom,
    NoRuleApplies,
    TiltingClaim,
    TransferStep,
    TriangleStep,
    end_compare,
    ext_with_extensions,
    verify_collection,
    verify_extension_registry,
    verify_theorem,
)
from .weights import (
    BBWResult,
    LatticeError,
    RHO,
    Weight,
    bbw_resolve,
    dotted_reflect,
    is_dominant,
    is_levi_dominant,
    is_singular,
    levi_rank,
    parse_weight,
    serre_dual_weight,
    weight,
    weyl_dim_d4,
)

__version__ = "0.1.0"
