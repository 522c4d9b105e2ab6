"""Crystal operators on affine factorizations and the coefficients they count."""
from .affine_weyl import (
    AffinePermutation,
    from_reduced_word,
    from_window,
    identity,
    lc,
    w_lambda,
)
from .coefficients import (
    SchurExpansion,
    affine_lr,
    fusion_coefficient,
    gw_invariant,
    inverse_kostka,
    k_pieri,
    kschur_h_expansion,
    positroid_schubert_decomposition,
    stanley_monomial_expansion,
    stanley_schur_expansion,
)
from .crystal import build_crystal, highest_weight_factorizations, verify_stembridge
from .eg import eg_inverse, eg_map
from .errors import AffineCrystalError
from .factorization import AffineFactorization, count_factorizations, enumerate_factorizations
from .involution import theta, verify_cancellation, verify_involution

__version__ = "0.1.0"

__all__ = [
    "affine_lr",
    "AffineCrystalError",
    "AffineFactorization",
    "AffinePermutation",
    "build_crystal",
    "count_factorizations",
    "eg_inverse",
    "eg_map",
    "enumerate_factorizations",
    "from_reduced_word",
    "from_window",
    "fusion_coefficient",
    "gw_invariant",
    "highest_weight_factorizations",
    "identity",
    "inverse_kostka",
    "k_pieri",
    "kschur_h_expansion",
    "lc",
    "positroid_schubert_decomposition",
    "SchurExpansion",
    "stanley_monomial_expansion",
    "stanley_schur_expansion",
    "theta",
    "verify_cancellation",
    "verify_involution",
    "verify_stembridge",
    "w_lambda",
]
