"""Taylor domination toolkit.

Thin ergonomic layer over the compiled core: structured inputs and outputs are
plain dicts; exact rationals travel as strings like "3/7".
"""

import json as _json

from ._core import (  # noqa: F401
    SchemaError,
    characteristic_roots,
    count_zeros,
    generate,
    poly_roots,
    radius_estimate,
)
from . import _core as _c

__all__ = [
    "SchemaError",
    "generate",
    "characteristic_roots",
    "radius_estimate",
    "poly_roots",
    "count_zeros",
    "certify",
    "verify",
    "zero_bound",
    "dfinite",
    "abel",
    "bautin",
    "acceptance",
]


def _dumps(doc):
    return doc if isinstance(doc, str) else _json.dumps(doc)


def certify(doc, method="turan", horizon=300, precision=256):
    return _json.loads(_c.certify(_dumps(doc), method, horizon, precision))


def verify(doc, horizon=300):
    return _json.loads(_c.verify(_dumps(doc), horizon))


def zero_bound(doc):
    return _json.loads(_c.zero_bound(_dumps(doc)))


def dfinite(doc, horizon=120):
    return _json.loads(_c.dfinite(_dumps(doc), horizon))


def abel(doc):
    return _json.loads(_c.abel(_dumps(doc)))


def bautin(doc):
    return _json.loads(_c.bautin(_dumps(doc)))


def acceptance(seed=20240817, only=()):
    return _json.loads(_c.acceptance(seed, list(only)))
