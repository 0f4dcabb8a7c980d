"""Sets of desirable gambles under configurable closure operators."""

__version__ = "0.1.0"

from .gambles import (
    DimensionError,
    GambleClass,
    NumericalError,
    Partition,
    PossibilitySpace,
    UnsupportedSpecError,
    as_event,
    as_gamble,
    classify,
    indicator,
)
from .operators import (
    ClosureSpec,
    DesirSet,
    FiniteSet,
    GeneratedSet,
    Kind,
    Membership,
    PriceFunctional,
    UtilityFn,
    Verdict,
    axiom_probe,
    equivalence_probe,
    extension,
    kappa1,
    kappa2,
    kappa3,
    kappa4,
    member,
    neg_limit,
    prevision_induced,
    utility_warp,
)
from .catalog import CATALOG, CatalogSet
from .consistency import avoids_partial_loss, avoids_sure_loss, is_coherent
from .previsions import (
    PrevisionBracket,
    gbr_conditional,
    is_precise,
    lower_prevision,
    lower_previsions,
    marginal_extension_prevision,
    upper_prevision,
    upper_previsions,
)
from .structure import (
    AssembledSet,
    ConditionalFamily,
    ConditionalSet,
    conglomerability_check,
    marginal_extension_set,
)
from .credal import CredalPolytope, LinearPrevision, credal_family_consistency, credal_intersection, is_empty, vertices
from .decide import decide

__all__ = [name for name in dir() if not name.startswith("_")]
