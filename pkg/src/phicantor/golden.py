"""Exact arithmetic in the ring Z[phi] of numbers ``a + b*phi``.

``phi`` is the golden mean, the positive root of ``x**2 = x + 1``.  Values of
the form ``sum(c_i * phi**-i)`` are carried as a :class:`GoldenInt` numerator
over a power of ``phi`` (:class:`GoldenRational`), so that interval endpoints,
lengths and overlaps are compared without any floating point.
"""
from __future__ import annotations

from functools import total_ordering
from typing import Union

__all__ = [
    "COEFF_BITS",
    "GoldenInt",
    "GoldenRational",
    "PHI",
    "ZERO",
    "ONE",
    "gi_add",
    "gi_mul",
    "gi_sign",
    "gr_cmp",
    "phi_power",
    "sign_ab",
]

# Coefficients are checked against a signed 128-bit range.
COEFF_BITS = 128
_LIMIT = 1 << (COEFF_BITS - 1)


def _check(a: int, b: int) -> None:
    if not (-_LIMIT <= a < _LIMIT and -_LIMIT <= b < _LIMIT):
        raise OverflowError(f"Z[phi] coefficient exceeds {COEFF_BITS}-bit range: ({a}, {b})")


def sign_ab(a: int, b: int) -> int:
    """Sign of ``a + b*phi`` using integer arithmetic only."""
    if a >= 0 and b >= 0:
        return 1 if (a or b) else 0
    if a <= 0 and b <= 0:
        return -1
    # mixed signs: a + b*phi = ((2a + b) + b*sqrt5) / 2
    t = 2 * a + b
    if b > 0:
        # t < 0 here, compare b*sqrt5 against -t
        return 1 if 5 * b * b > t * t else -1
    return 1 if t * t > 5 * b * b else -1


@total_ordering
class GoldenInt:
    """Element ``a + b*phi`` of Z[phi]; immutable."""

    __slots__ = ("_a", "_b")

    def __init__(self, a: int = 0, b: int = 0) -> None:
        a, b = int(a), int(b)
        _check(a, b)
        self._a = a
        self._b = b

    @property
    def a(self) -> int:
        return self._a

    @property
    def b(self) -> int:
        return self._b

    def __repr__(self) -> str:
        return f"GoldenInt({self._a}, {self._b})"

    def __str__(self) -> str:
        return f"{self._a}{self._b:+d}·φ"

    def __iter__(self):
        yield self._a
        yield self._b

    def __hash__(self) -> int:
        return hash((self._a, self._b))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = GoldenInt(other)
        if not isinstance(other, GoldenInt):
            return NotImplemented
        return self._a == other._a and self._b == other._b

    def __lt__(self, other: GoldenInt | int) -> bool:
        return (self - other).sign() < 0

    def __neg__(self) -> GoldenInt:
        return GoldenInt(-self._a, -self._b)

    def __add__(self, other: GoldenInt | int) -> GoldenInt:
        if isinstance(other, int):
            other = GoldenInt(other)
        if not isinstance(other, GoldenInt):
            return NotImplemented
        return GoldenInt(self._a + other._a, self._b + other._b)

    __radd__ = __add__

    def __sub__(self, other: GoldenInt | int) -> GoldenInt:
        if isinstance(other, int):
            other = GoldenInt(other)
        if not isinstance(other, GoldenInt):
            return NotImplemented
        return GoldenInt(self._a - other._a, self._b - other._b)

    def __rsub__(self, other: int) -> GoldenInt:
        return (-self) + other

    def __mul__(self, other: GoldenInt | int) -> GoldenInt:
        if isinstance(other, int):
            return GoldenInt(self._a * other, self._b * other)
        if not isinstance(other, GoldenInt):
            return NotImplemented
        a, b, c, d = self._a, self._b, other._a, other._b
        # phi**2 = phi + 1
        return GoldenInt(a * c + b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def times_phi(self) -> GoldenInt:
        """Multiply by ``phi``: ``(a + b*phi)*phi = b + (a + b)*phi``."""
        return GoldenInt(self._b, self._a + self._b)

    def div_phi(self) -> GoldenInt:
        """Exact division by ``phi``; always possible because ``phi`` is a unit."""
        return GoldenInt(self._b - self._a, self._a)

    def sign(self) -> int:
        return sign_ab(self._a, self._b)

    def conjugate(self) -> GoldenInt:
        # phi -> 1 - phi
        return GoldenInt(self._a + self._b, -self._b)

    def norm(self) -> int:
        return self._a * self._a + self._a * self._b - self._b * self._b

    def __abs__(self) -> GoldenInt:
        return -self if self.sign() < 0 else self

    def __float__(self) -> float:
        return self._a + self._b * _PHI_FLOAT


_PHI_FLOAT = (1 + 5**0.5) / 2

ZERO = GoldenInt(0, 0)
ONE = GoldenInt(1, 0)
PHI = GoldenInt(0, 1)


def gi_add(x: GoldenInt, y: GoldenInt) -> GoldenInt:
    return x + y


def gi_mul(x: GoldenInt, y: GoldenInt) -> GoldenInt:
    return x * y


def gi_sign(x: GoldenInt) -> int:
    return x.sign()


def phi_power(k: int) -> GoldenInt:
    """``phi**k`` for any integer ``k`` as an element of Z[phi]."""
    x = ONE
    if k >= 0:
        for _ in range(k):
            x = x.times_phi()
    else:
        for _ in range(-k):
            x = x.div_phi()
    return x


Number = Union["GoldenRational", GoldenInt, int]


@total_ordering
class GoldenRational:
    """The value ``num * phi**-scale``.

    The stored ``(num, scale)`` pair is kept as constructed so that printed
    endpoints stay small (``scale`` equal to the word length).  Equality,
    ordering and hashing go through :meth:`normalize`.  Because ``phi`` is a
    unit of Z[phi], the canonical form always has ``scale == 0``.
    """

    __slots__ = ("_num", "_scale")

    def __init__(self, num: GoldenInt | int = 0, scale: int = 0) -> None:
        if isinstance(num, int):
            num = GoldenInt(num)
        if scale < 0:
            raise ValueError("scale must be non-negative")
        self._num = num
        self._scale = int(scale)

    @property
    def num(self) -> GoldenInt:
        return self._num

    @property
    def scale(self) -> int:
        return self._scale

    @classmethod
    def phi_pow(cls, k: int) -> GoldenRational:
        """``phi**k``; negative powers keep the small ``1 * phi**-|k|`` form."""
        if k >= 0:
            return cls(phi_power(k), 0)
        return cls(ONE, -k)

    def normalize(self) -> GoldenRational:
        a, b = self._num.a, self._num.b
        for _ in range(self._scale):
            a, b = b - a, a
        return GoldenRational(GoldenInt(a, b), 0)

    def rescale(self, scale: int) -> GoldenRational:
        """Same value expressed with a numerator over ``phi**scale`` (scale may only grow)."""
        if scale < self._scale:
            raise ValueError("can only rescale upwards")
        a, b = self._num.a, self._num.b
        for _ in range(scale - self._scale):
            a, b = b, a + b
        return GoldenRational(GoldenInt(a, b), scale)

    def _aligned(self, other: Number) -> tuple[GoldenInt, GoldenInt, int]:
        other = _as_rational(other)
        k = max(self._scale, other._scale)
        return self.rescale(k)._num, other.rescale(k)._num, k

    def sign(self) -> int:
        return self._num.sign()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (GoldenRational, GoldenInt, int)):
            return NotImplemented
        x, y, _ = self._aligned(other)
        return x == y

    def __hash__(self) -> int:
        return hash(self.normalize()._num)

    def __lt__(self, other: Number) -> bool:
        x, y, _ = self._aligned(other)
        return (x - y).sign() < 0

    def __add__(self, other: Number) -> GoldenRational:
        x, y, k = self._aligned(other)
        return GoldenRational(x + y, k)

    __radd__ = __add__

    def __sub__(self, other: Number) -> GoldenRational:
        x, y, k = self._aligned(other)
        return GoldenRational(x - y, k)

    def __rsub__(self, other: Number) -> GoldenRational:
        return _as_rational(other) - self

    def __neg__(self) -> GoldenRational:
        return GoldenRational(-self._num, self._scale)

    def __mul__(self, other: Number) -> GoldenRational:
        other = _as_rational(other)
        return GoldenRational(self._num * other._num, self._scale + other._scale)

    __rmul__ = __mul__

    def __float__(self) -> float:
        return float(self._num) * _PHI_FLOAT ** (-self._scale)

    def __repr__(self) -> str:
        return f"GoldenRational({self._num!r}, {self._scale})"

    def __str__(self) -> str:
        return f"{self._num.a}{self._num.b:+d}·φ @ φ^-{self._scale}"

    def to_json(self) -> dict[str, int]:
        return {"a": self._num.a, "b": self._num.b, "scale": self._scale}

    @classmethod
    def from_json(cls, data: dict) -> GoldenRational:
        return cls(GoldenInt(data["a"], data["b"]), data["scale"])


def _as_rational(x: Number) -> GoldenRational:
    if isinstance(x, GoldenRational):
        return x
    if isinstance(x, (GoldenInt, int)):
        return GoldenRational(x, 0)
    raise TypeError(f"cannot interpret {x!r} as a GoldenRational")


def gr_cmp(x: GoldenRational, y: GoldenRational) -> int:
    """Three-way exact comparison: -1, 0 or +1."""
    a, b, _ = x._aligned(y)
    return (a - b).sign()
