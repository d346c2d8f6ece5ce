"""A float wrapper that counts arithmetic operations.

Only binary ``+ - * /`` and unary minus between two operands where at least
one is a :class:`CountingFloat` are counted; operations between plain floats
(constants known in advance) are not.
"""

from __future__ import annotations


class OpCounter:
    def __init__(self):
        self.count = 0

    def wrap(self, value: float) -> CountingFloat:
        return CountingFloat(value, self)

    def reset(self) -> None:
        self.count = 0


def _val(other):
    return other.value if isinstance(other, CountingFloat) else other


class CountingFloat:
    __slots__ = ("value", "counter")

    def __init__(self, value, counter: OpCounter):
        self.value = float(value)
        self.counter = counter

    def _op(self, result):
        self.counter.count += 1
        return CountingFloat(result, self.counter)

    def __add__(self, o):
        return self._op(self.value + _val(o))

    def __radd__(self, o):
        return self._op(_val(o) + self.value)

    def __sub__(self, o):
        return self._op(self.value - _val(o))

    def __rsub__(self, o):
        return self._op(_val(o) - self.value)

    def __mul__(self, o):
        return self._op(self.value * _val(o))

    def __rmul__(self, o):
        return self._op(_val(o) * self.value)

    def __truediv__(self, o):
        return self._op(self.value / _val(o))

    def __rtruediv__(self, o):
        return self._op(_val(o) / self.value)

    def __neg__(self):
        return self._op(-self.value)

    def __float__(self):
        return self.value

    def __repr__(self):
        return f"CountingFloat({self.value!r})"
