"""Exact finite-field models of ind/pro windows, Beilinson windows and Tate objects."""

from .errors import (DimensionError, FieldMismatchError, IndProError, NonCommutingError,
                     PreconditionError, WindowError)
from .linalg import *  # noqa: F401,F403
from .indices import *  # noqa: F401,F403
from .windows import *  # noqa: F401,F403
from .beilinson import *  # noqa: F401,F403
from .tate import *  # noqa: F401,F403
from .documents import *  # noqa: F401,F403

__version__ = "0.1.0"
