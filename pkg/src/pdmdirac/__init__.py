"""Exactly solvable (1+1)-d position-dependent-mass Dirac models with local
Fermi velocity, generated by an so(2,1) potential algebra, plus a
verification suite for every identity the construction rests on."""

__version__ = "0.1.0"

from .algebra import (  # noqa: F401
    FamilyClass,
    FamilySpec,
    GeneratorPair,
    LadderState,
    build_family,
    casimir_apply,
    constraint_residuals,
    ground_state,
    ladder_apply,
    omega_invariant,
    pct_mass,
)
from .dirac import (  # noqa: F401
    ComplexProfile,
    DiracModel,
    SpectrumEntry,
    Spinor,
    build_eigen_spinor,
    coupled_residuals,
    decoupled_residual,
    fermi_from_mass,
    lower_from_upper,
    mustafa_mass,
    reduced_residual,
    spectrum,
)
from .models import ModelBundle, ModelDefinition, assemble  # noqa: F401
from .potentials import (  # noqa: F401
    ORDERING_PRESETS,
    OrderingParams,
    chi_equation_residual,
    curvature_identity_residual,
    energy_level,
    pseudoscalar_partner,
    psi_equation_residual,
    riccati_residual,
    riccati_solve,
    veff,
    vs_family,
)
from .profiles import (  # noqa: F401
    Grid,
    Interval,
    Profile,
    SampledField,
)
from .spectral import (  # noqa: F401
    DiscretizedOperator,
    EigenResult,
    discretize,
    eigen_lowest,
    verify_algebraic_spectrum,
)
from .verify import VerificationReport, run_verification  # noqa: F401
