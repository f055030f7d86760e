"""Cells, canonical bases and based rings for the extended affine Weyl group of type A."""

from .affine_weyl import (
    AffinePerm,
    Word,
    bruhat_leq,
    dominant_generator,
    format_window,
    from_window,
    identity,
    inverse,
    left_descents,
    length,
    multiply,
    omega,
    parse_window,
    parse_word,
    reduced_word,
    right_descents,
    simple,
    tau,
)
from .basedring import (
    BasedRingElement,
    VerificationReport,
    factorize,
    n_mu_matrix_shape,
    pgl_product,
    predicted_gamma,
    sl_members,
    sl_product,
    t_product,
    verify_isomorphism,
)
from .canonical import (
    CanonicalElement,
    DominantWeight,
    as_member,
    decrement,
    epsilon,
    from_epsilon,
    fundamental_element,
    greedy_epsilon_grid,
    increment,
    is_member,
    m_element,
    m_of_dominant,
    parse_weight,
    w_lambda,
)
from .cells import (
    Partition,
    cell_ball,
    lambda_partition,
    left_star,
    mu_partition,
    parse_partition,
    right_star,
)
from .errors import AffineCellsError
from .hecke import HeckeElement, KLStore, c_product, gamma_oracle, gamma_row, kl_polynomial
from .laurent import LaurentPoly, parse_laurent
from .repring import GroupShape, RepRingElement, lr_product, pieri_sym, pieri_wedge, product_Flambda

__version__ = "0.1.0"
