from ._incompat import *  # noqa: F401,F403
from ._incompat import __doc__  # noqa: F401
