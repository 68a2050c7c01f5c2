"""Vector-valued-norm correlation measures and binning experiments.

Thin re-export of the compiled module. The extension lives next to this
package in an installed wheel and on the build tree's PYTHONPATH during
development, so both import paths are tried.
"""

try:
    from ._vvcorr import *  # noqa: F401,F403
    from ._vvcorr import __doc__  # noqa: F401
except ImportError:
    from _vvcorr import *  # noqa: F401,F403
    from _vvcorr import __doc__  # noqa: F401
