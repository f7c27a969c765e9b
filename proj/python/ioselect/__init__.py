"""Minimum-cost input/output selection for structured linear systems.

Systems and set cover instances are dicts in the CLI's JSON format (or the
JSON text itself). Results come back as dicts.
"""

import json

try:
    from . import _ioselect
except ImportError:  # uninstalled build tree: extension on PYTHONPATH
    import _ioselect

Error = _ioselect.Error
Infeasible = _ioselect.Infeasible
ParseError = _ioselect.ParseError

__all__ = [
    "Error",
    "Infeasible",
    "ParseError",
    "check",
    "digest",
    "exact_select",
    "generate",
    "reduce_setcover",
    "select",
    "setcover_to_system",
    "solve_setcover",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def select(system, exact=False, trace=False):
    """Run the three-stage selection. `exact` adds the brute-force oracle."""
    return json.loads(_ioselect.select(_text(system), exact, trace))


def check(system, inputs=None, outputs=None):
    """Fixed-mode check on a 1-based selection; an omitted side means all."""
    return json.loads(_ioselect.check(_text(system), inputs, outputs))


def exact_select(system):
    return json.loads(_ioselect.exact_select(_text(system)))


def generate(**config):
    return json.loads(_ioselect.generate(**config))


def digest(system):
    return _ioselect.digest(_text(system))


def solve_setcover(instance, exact=False, trace=False):
    return json.loads(_ioselect.solve_setcover(_text(instance), exact, trace))


def reduce_setcover(system, dual=False):
    return json.loads(_ioselect.reduce_setcover(_text(system), dual))


def setcover_to_system(instance):
    return json.loads(_ioselect.setcover_to_system(_text(instance)))
