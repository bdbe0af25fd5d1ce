"""Python front end for the qlb C++ core."""

import json

from . import _qlb
from ._qlb import ParameterError, SizeError, approx_degree, comp_step_norm, exact_degree, perm_success_bound, suite_names

__all__ = [
    "ParameterError",
    "SizeError",
    "approx_degree",
    "comp_bound",
    "comp_bound_analytic",
    "comp_step_norm",
    "exact_degree",
    "mladv_bound",
    "perm_success_bound",
    "reduction_check",
    "run_suite",
    "sdpt_scalars",
    "suite_names",
]


def comp_bound_analytic(m, k, eps):
    return json.loads(_qlb.comp_bound_analytic(m, k, eps))


def comp_bound(prop, n, m, eps):
    return json.loads(_qlb.comp_bound(prop, n, m, eps))


def mladv_bound(prop, n, m, kappa, eps):
    return json.loads(_qlb.mladv_bound(prop, n, m, kappa, eps))


def reduction_check(prop, n, m, eps):
    return json.loads(_qlb.reduction_check(prop, n, m, eps))


def sdpt_scalars(lam, eps, eta, k):
    return json.loads(_qlb.sdpt_scalars(lam, eps, eta, k))


def run_suite(name, seed=0):
    return json.loads(_qlb.run_suite(name, seed))
