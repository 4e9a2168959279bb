"""Exact unitary-group integrals of HCIZ type and their large-N expansion.

Thin re-export of the compiled extension module ``_hciz``:

* ``eval_unitary_integral(a, b, s)`` / ``eval_rectangular`` / ``eval_chain`` --
  exact finite-N determinant formulas with controlled-precision arithmetic,
* ``free_energy(order, method="enum"|"oracle")`` -- graded free-energy
  polynomials F_1..F_order as ``{monomial: rational-string}`` dicts,
* ``mc_estimate`` / ``sample_haar`` -- Haar Monte Carlo oracle,
* ``free_cumulants``, ``w_coefficient``, ``diagonal_series``,
  ``toda_residual_is_zero``.
"""

try:
    from . import _hciz as _impl  # installed layout: extension inside the package
except ImportError:
    import _hciz as _impl  # build-tree layout: extension on sys.path

EvalResult = _impl.EvalResult
McEstimate = _impl.McEstimate
DomainError = _impl.DomainError
PrecisionError = _impl.PrecisionError
CacheError = _impl.CacheError
CrossCheckError = _impl.CrossCheckError
eval_unitary_integral = _impl.eval_unitary_integral
eval_rectangular = _impl.eval_rectangular
eval_chain = _impl.eval_chain
free_energy = _impl.free_energy
mc_estimate = _impl.mc_estimate
sample_haar = _impl.sample_haar
free_cumulants = _impl.free_cumulants
w_coefficient = _impl.w_coefficient
diagonal_series = _impl.diagonal_series
toda_residual_is_zero = _impl.toda_residual_is_zero
__version__ = _impl.__version__

__all__ = [
    "EvalResult",
    "McEstimate",
    "DomainError",
    "PrecisionError",
    "CacheError",
    "CrossCheckError",
    "eval_unitary_integral",
    "eval_rectangular",
    "eval_chain",
    "free_energy",
    "mc_estimate",
    "sample_haar",
    "free_cumulants",
    "w_coefficient",
    "diagonal_series",
    "toda_residual_is_zero",
    "__version__",
]
