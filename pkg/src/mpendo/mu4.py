"""Exact arithmetic in the group of fourth roots of unity."""

from __future__ import annotations

from .errors import NonRealProduct

_NAMES = ("1", "i", "-1", "-i")


class Mu4:
    """The element i**k, stored by its exponent k mod 4."""

    __slots__ = ("k",)

    def __init__(self, k: int = 0):
        object.__setattr__(self, "k", k % 4)

    def __setattr__(self, name, value):
        raise AttributeError("Mu4 is immutable")

    @classmethod
    def parse(cls, value) -> "Mu4":
        if isinstance(value, Mu4):
            return value
        if isinstance(value, int) and value in (1, -1):
            return cls(0 if value == 1 else 2)
        if isinstance(value, str) and value in _NAMES:
            return cls(_NAMES.index(value))
        raise ValueError(f"not a fourth root of unity: {value!r}")

    @classmethod
    def sign(cls, s: int) -> "Mu4":
        return cls.parse(s)

    def __mul__(self, other: "Mu4") -> "Mu4":
        return Mu4(self.k + other.k)

    def __truediv__(self, other: "Mu4") -> "Mu4":
        return Mu4(self.k - other.k)

    def __pow__(self, e: int) -> "Mu4":
        return Mu4(self.k * e)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return other in (1, -1) and self == Mu4.sign(other)
        return isinstance(other, Mu4) and self.k == other.k

    def __hash__(self) -> int:
        return hash(("mu4", self.k))

    def __repr__(self) -> str:
        return f"Mu4({_NAMES[self.k]!r})"

    def __str__(self) -> str:
        return _NAMES[self.k]

    @property
    def is_real(self) -> bool:
        return self.k % 2 == 0

    def to_sign(self, context: str = "") -> int:
        if not self.is_real:
            raise NonRealProduct(f"expected a sign, got {self}" + (f" in {context}" if context else ""))
        return 1 if self.k == 0 else -1


ONE = Mu4(0)
I = Mu4(1)
MINUS_ONE = Mu4(2)


def product(values) -> Mu4:
    k = 0
    for v in values:
        k += v.k
    return Mu4(k)
