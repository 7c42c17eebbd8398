"""Systems of parameters on projective schemes over finite fields."""

__version__ = "0.1.0"

from .algebra import (
    ExtensionEmbedding,
    FieldElement,
    FieldSpec,
    Poly,
    field_extend,
    field_make,
    monomials_of_degree,
    parse_poly,
    poly_eval,
    poly_substitute_linear,
    poly_to_text,
    random_poly,
    seeded_stream,
)
from .errors import (
    BudgetExceededError,
    EmptySchemeError,
    FieldMismatchError,
    ParseError,
    SearchFailureError,
)
from .groebner import (
    GroebnerBasis,
    HilbertData,
    groebner_basis,
    hilbert_function,
    ideal_intersection,
    proj_dim,
)
from .scheme import ParamTuple, ProjScheme, deghat_bound, is_parameters
