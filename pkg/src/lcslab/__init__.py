"""lcslab: exact curvature engine for framed Lorentzian manifolds."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .symexpr import Expr, Var, arith, diff, eval_at, is_zero, parse, print_expr

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "Expr",
    "Var",
    "arith",
    "diff",
    "eval_at",
    "is_zero",
    "parse",
    "print_expr",
    "__version__",
]
