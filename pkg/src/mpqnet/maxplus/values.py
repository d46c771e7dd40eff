"""Scalar arithmetic in the max-plus semiring.

Addition is ``max``, multiplication is ``+``.  The null element (denoted
``eps``) acts as minus infinity: it is neutral for ``oplus`` and absorbing
for ``otimes``.  The multiplicative identity is the number 0.

Finite values may be any ordered numeric type that supports ``+`` (ints,
floats, fractions); the package itself only ever produces exact integers
when fed integers.
"""

from __future__ import annotations

from typing import Union


class _Epsilon:
    """The null element.  A singleton; compare with ``is`` or ``is_eps``."""

    __slots__ = ()
    _instance = None

    def __new__(cls) -> "_Epsilon":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "eps"

    def __reduce__(self):
        # Unpickling must hand back the singleton, not a second instance.
        return (type(self), ())


#: The max-plus null element (additively neutral, multiplicatively absorbing).
EPS = _Epsilon()

#: The max-plus multiplicative identity.
ZERO = 0

TimeValue = Union[int, float, _Epsilon]


def is_eps(x: TimeValue) -> bool:
    return x is EPS


def oplus(x: TimeValue, y: TimeValue) -> TimeValue:
    """Max-plus addition: ``max(x, y)`` with eps as the neutral element."""
    if x is EPS:
        return y
    if y is EPS:
        return x
    return x if x >= y else y


def otimes(x: TimeValue, y: TimeValue) -> TimeValue:
    """Max-plus multiplication: ``x + y`` with eps absorbing."""
    if x is EPS or y is EPS:
        return EPS
    return x + y
