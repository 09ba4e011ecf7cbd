"""Backend selector for the hot kernels.

Prefers the compiled extension; falls back to the numpy implementation when
the extension is not built. Set ``ENTMONO_PURE_PYTHON=1`` to force the
fallback (used by the benchmark and for debugging).
"""

import os

if os.environ.get("ENTMONO_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND: str = _impl.BACKEND
single_marginal = _impl.single_marginal
pair_marginal = _impl.pair_marginal
wootters_lambdas = _impl.wootters_lambdas
