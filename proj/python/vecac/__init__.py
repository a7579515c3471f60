"""Python bindings for the elliptic vectorial Allen-Cahn laboratory."""

try:
    from ._vecac import *  # noqa: F401,F403  (installed package layout)
except ImportError:
    from _vecac import *  # noqa: F401,F403  (in-tree build, module on sys.path)
