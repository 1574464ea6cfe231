"""Exact symbolic computation in the diagonal reduction algebra of osp(1|2).

The package provides:

- ``coeffs``: the coefficient field Q(H) and the quadratic extension Q(sqrt 2);
- ``uea``: PBW normal ordering in the localized enveloping algebra of
  osp(1|2) x osp(1|2) with its diagonal / anti-diagonal generators;
- ``projector``: the extremal projector coefficients and the diamond product;
- ``zalgebra``: the reduction algebra — ordered monomials, the rewriting
  system, the oracle multiplication, and the relation catalog;
- ``rep``: the polynomial-tensor-standard module and the induced matrix
  representation;
- ``text``: parsing and rendering (text / LaTeX / JSON);
- ``verify``: the verification suites behind ``ospz verify <suite>``;
- ``cli``: the ``ospz`` command-line entry point.
"""

from .coeffs import (
    H,
    INV_SQRT2,
    PoleEvaluationError,
    Polynomial,
    RationalFunction,
    SQRT2,
    Sqrt2,
    as_rf,
)
from .uea import (
    GENERATORS,
    MixedParityError,
    UeaElement,
    commutator_table,
    mul,
    normal_order,
    straighten,
    super_bracket,
    theta,
)
from .projector import PhiTable, diamond, kappa, phi, projected_generator
from .zalgebra import (
    RelationCatalog,
    ZElement,
    ZMonomial,
    catalog,
    derived_rule,
    tilde_to_z,
    verify_presentation,
    z_multiply,
    z_oracle_multiply,
    z_straighten,
    z_theta,
    z_to_tilde,
)
from .rep import (
    IrrepData,
    ModuleVector,
    NotPrimitive,
    PolyModule,
    TensorModule,
    TruncationOverflow,
    WindowNotClosed,
    check_rep_relations,
    irreducibility_witness,
)
from .text import ExprSyntaxError, UnknownToken, parse_element, render
from .verify import SUITES, run_suite

__version__ = "0.1.0"
