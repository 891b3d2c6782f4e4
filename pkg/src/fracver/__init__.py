"""Numerical fractional calculus: singular and bounded-kernel operators, and checks of their identities."""

from .errors import *  # noqa: F401,F403
from .grid import Grid, SampledFunction
from .specfun import MLPolicy, gamma, mittag_leffler, prabhakar_ml
from .kernels import ABML, CFExp, KernelSpec, PowerLaw, PrabhakarK, Tabulated, kernel_value
from .functions import FunctionInput
from .operators import OperatorKind

__version__ = "0.1.0"
