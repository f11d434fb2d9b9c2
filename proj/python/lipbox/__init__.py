"""Exact norms and summing constants for Lipschitz-linear operators.

Values come back as fractions.Fraction; intervals as (lo, hi) pairs.
"""

import json
from fractions import Fraction

from . import _core
from ._core import CapExceeded, InvalidInput, LipboxError

__all__ = ["Instance", "LipboxError", "CapExceeded", "InvalidInput"]


def _interval(d):
    return Fraction(d["lo"]), Fraction(d["hi"])


class Instance:
    def __init__(self, source):
        if isinstance(source, _core.Instance):
            self._inst = source
        else:
            text = source if isinstance(source, str) else json.dumps(source)
            self._inst = _core.Instance(text)

    @classmethod
    def builtin(cls):
        return cls(_core.Instance.builtin())

    @classmethod
    def random(cls, points, dim, seed):
        return cls(_core.Instance.random(points, dim, seed))

    @classmethod
    def load(cls, path):
        with open(path) as f:
            return cls(f.read())

    def to_dict(self):
        return json.loads(self._inst.to_json())

    def names(self):
        return self._inst.names()

    def free_norm(self, space, expr):
        return Fraction(self._inst.free_norm(space, expr))

    def lipl_norm(self, operator):
        return Fraction(self._inst.lipl_norm(operator))

    def lip_norm(self, lipschitz_map):
        return Fraction(self._inst.lip_norm(lipschitz_map))

    def lipschitz_p_summing(self, lipschitz_map, p=1):
        d = self._inst.lipschitz_p_summing(lipschitz_map, str(Fraction(p)))
        return _interval(d), d["verification"]["passed"]

    def dominated(self, operator, p=1, q=1):
        """delta_(p,q)(T) with both route values and the checked certificate."""
        d = self._inst.dominated(operator, str(Fraction(p)), str(Fraction(q)))
        return {
            "value": _interval(d),
            "route_a": _interval(d["route_a"]),
            "route_b": _interval(d["route_b"]),
            "certificate": d["certificate"],
            "verified": d["verification"]["passed"],
        }

    def integral(self, operator):
        d = self._inst.integral(operator)
        return Fraction(d["value"]), d["verification"]["passed"]

    def verify(self, suite="all"):
        return self._inst.verify(suite)
