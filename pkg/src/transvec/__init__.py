"""Commutator calculus for elementary transvection groups over rings."""

from .ring import *  # noqa: F401,F403
from .matgroup import *  # noqa: F401,F403
from .identities import *  # noqa: F401,F403
from .verify import *  # noqa: F401,F403
from .generate import *  # noqa: F401,F403

from . import ring as ring  # noqa: F401
from . import matgroup as matgroup  # noqa: F401
from . import identities as identities  # noqa: F401
from . import verify as verify  # noqa: F401
from . import generate as generate  # noqa: F401
from . import cli as cli  # noqa: F401

__version__ = "0.1.0"
