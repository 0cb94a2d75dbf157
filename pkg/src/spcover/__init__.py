"""Numerics for the universal cover of Sp(2,R): circle function, cocycle, polar
classes, zonal expansions on SU(2) and U(2), and explicit decay constants."""

__version__ = "0.1.0"

from .config import DEFAULT, Config, load_config
from .constants import BoundChain, bound_chain
from .cover import (
    ClassParams,
    CoverElement,
    GroupPath,
    circle_class,
    class_params,
    cover_inv,
    cover_mul,
    hyperbola_class,
    lift_curve,
    lift_path,
    tilde_D,
    tilde_h,
    tilde_v,
)
from .errors import (
    InvalidInput,
    NotInM4R0,
    NotInvariant,
    NumericalFailure,
    OutOfWindow,
    SpcoverError,
    StepTooCoarse,
    TruncationWarning,
)
from .symplectic import (
    J,
    KakBetaGamma,
    SuParams,
    cg_dg,
    circle_function,
    embed_so2,
    embed_su2,
    embed_u1,
    eta,
    iota,
    is_symplectic,
    kak_parameters,
    make_D,
    make_vt,
)
