"""Default budgets, overridable through environment variables.

Every budget can be set with ``EACOUNT_<NAME>`` (e.g.
``EACOUNT_ENUMERATION_BUDGET=2000000``).  Values are read when a function
asks for them, so tests and the CLI can change them at runtime.
"""
import os

DEFAULTS = {
    # max agl_order(n, q) for enumerate_gl/enumerate_agl and the A_in loops
    "enumeration_budget": 10**6,
    # max q**(m*q**n) for brute-force oracles over the whole function space
    "oracle_budget": 2**24,
    # max size of an affine-fit solution space
    "fit_budget": 2**20,
    # max |Gamma| for the exhaustive Burnside sum
    "group_budget": 10**7,
    # max agl_order per factor for conjugacy class tables
    "conjugacy_budget": 10**5,
}


def budget(name):
    env = os.environ.get("EACOUNT_" + name.upper())
    if env is not None:
        value = int(env)
        if value <= 0:
            raise ValueError(f"EACOUNT_{name.upper()} must be positive")
        return value
    return DEFAULTS[name]
