"""Finite categories, set-valued functors and the Yoneda correspondence, checked by brute force."""
from .fincat import (
    CategoryError,
    FiniteCategory,
    ValidationReport,
    chain_category,
    discrete_category,
    free_category_on_dag,
    monoid_category,
    opposite,
    poset_category,
    validate_category,
)
from .functors import (
    CONTRAVARIANT,
    COVARIANT,
    SetValuedFunctor,
    direct_image,
    hom_functor,
    sub_functor,
    validate_functor,
)
from .image import (
    DependenceQuery,
    coarse_classes,
    depends_oracle,
    depends_set,
    im_transformation,
    image_of_morphism,
    nat_image_oracle,
)
from .nat import (
    NaturalTransformation,
    check_naturality,
    enumerate_nat_trans,
    verify_yoneda_bijection,
    yoneda_backward,
    yoneda_forward,
)
from .strata import (
    FiniteTopology,
    Poset,
    Proset,
    alexandroff_opens,
    build_L_preorder,
    is_continuous,
    is_monotone,
    quotient_to_poset,
    stratification_map,
)

__version__ = "0.1.0"
