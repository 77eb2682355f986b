"""grouploc: exact computations with finitely presented groups and homology localization."""
from .alexander import (
    AlexanderData,
    alexander_matrix,
    alexander_polynomial,
    augmentation,
    container_level,
    derived_class,
    divisibility_test,
    fox_derivative,
    gh_membership,
    kh1_rank,
)
from .closure import (
    ClosureTower,
    InvisibilityCertificate,
    NullhomologousSystem,
    TowerBudget,
    adjoin_solutions,
    build_tower,
    check_solution,
    divisibility_exponent,
    enumerate_systems,
    find_invisible_certificates,
    product_certificate,
    quotient_by_invisible,
    validate_system,
    verify_invisibility_certificate,
)
from .document import Document, load_document, parse_document
from .errors import *  # noqa: F401,F403
from .homology import (
    TwoConnectednessCertificate,
    certify_omega_R,
    check_h1_iso,
    h1_map_matrix,
    h1_with_R,
)
from .laurent import FractionElem, LaurentPoly, parse_laurent
from .magnus import (
    ABOVE_CAP,
    LieQuotientReport,
    MagnusSeries,
    MalcevQuotient,
    lcs_degree,
    magnus_expand,
    rational_lcs_quotient,
    stallings_injectivity_check,
)
from .presentation import (
    REFUTED,
    UNCHECKED,
    VERIFIED_FREE,
    GroupHom,
    Presentation,
    Verdict,
    adjoin_relators,
    check_hom_to_class,
    free_group,
    parse_presentation,
    verified_to_class,
)
from .ring import (
    QQ,
    ZZ,
    CoefficientRing,
    RModuleInvariants,
    in_denominator_set,
    localize_abelian,
    make_ring,
    parse_ring,
    smith_normal_form,
)
from .words import Word, commutator, exponent_sum, parse_word, reduce, substitute

__version__ = "0.1.0"
