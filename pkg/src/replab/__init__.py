from . import errors
from . import gf
from . import knotlib
from . import ncdga
from . import repcount
from . import utils
from .sqrtq import SqrtQ

__version__ = "0.1.0"
