"""Exact coefficient fields: prime fields F_p and the rationals.

Scalars are plain Python ints in ``[0, p)`` for F_p and ``Fraction`` for Q.
Matrices are numpy arrays: ``int64`` for F_p, ``object`` for Q.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

DEFAULT_PRIME = 32003
PRIME_ENV_VAR = "QUIVERALG_PRIME"

# keeps every entry product below 2**52 so int64 accumulation stays exact
_MAX_PRIME = 2**26


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def default_prime() -> int:
    raw = os.environ.get(PRIME_ENV_VAR)
    return int(raw) if raw else DEFAULT_PRIME


@dataclass(frozen=True)
class FieldSpec:
    """Which field to compute over: ``kind`` is ``"Fp"`` or ``"Q"``."""

    kind: str = "Fp"
    p: int | None = None

    def __post_init__(self):
        if self.kind not in ("Fp", "Q"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None:
                object.__setattr__(self, "p", default_prime())
            if not _is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")
            if self.p >= _MAX_PRIME:
                raise ValueError(f"prime {self.p} too large (limit {_MAX_PRIME})")
        elif self.p is not None:
            raise ValueError("the rational field takes no characteristic")

    def make(self) -> "Field":
        return PrimeField(self.p) if self.kind == "Fp" else RationalField()

    def describe(self) -> str:
        return f"F_{self.p}" if self.kind == "Fp" else "Q"


class Field:
    """Interface shared by the two concrete fields."""

    spec: FieldSpec
    dtype: object

    # scalar level
    def __call__(self, x) -> object:
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def add(self, x, y):
        return self(x + y)

    def sub(self, x, y):
        return self(x - y)

    def mul(self, x, y):
        return self(x * y)

    def neg(self, x):
        return self(-x)

    def to_json(self, x):
        raise NotImplementedError

    # array level
    def reduce(self, a: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def zeros(self, shape) -> np.ndarray:
        raise NotImplementedError

    def eye(self, n: int) -> np.ndarray:
        m = self.zeros((n, n))
        for k in range(n):
            m[k, k] = self(1)
        return m

    def array(self, rows) -> np.ndarray:
        raise NotImplementedError

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return self.spec.describe()


class PrimeField(Field):
    def __init__(self, p: int):
        self.spec = FieldSpec("Fp", p)
        self.p = p
        self.dtype = np.int64

    def __call__(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def to_json(self, x):
        # balanced representative reads better for small negative coefficients
        x = int(x) % self.p
        return x - self.p if x > self.p // 2 else x

    def reduce(self, a):
        return np.mod(a, self.p)

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.int64)

    def array(self, rows):
        a = np.array(rows, dtype=object)
        if a.size == 0:
            return np.zeros(a.shape, dtype=np.int64)
        return np.vectorize(self, otypes=[np.int64])(a)

    def matmul(self, a, b):
        if a.shape[1] == 0:
            return self.zeros((a.shape[0], b.shape[1]))
        if self.p * self.p * a.shape[1] < 2**62:
            return np.mod(a @ b, self.p)
        return np.mod(a.astype(object) @ b.astype(object), self.p).astype(np.int64)


class RationalField(Field):
    def __init__(self):
        self.spec = FieldSpec("Q")
        self.dtype = object

    def __call__(self, x):
        return Fraction(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def to_json(self, x):
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def reduce(self, a):
        return a

    def zeros(self, shape):
        a = np.empty(shape, dtype=object)
        a.fill(Fraction(0))
        return a

    def array(self, rows):
        a = np.array(rows, dtype=object)
        if a.size == 0:
            return self.zeros(a.shape)
        return np.vectorize(Fraction, otypes=[object])(a)

    def matmul(self, a, b):
        if a.shape[1] == 0:
            return self.zeros((a.shape[0], b.shape[1]))
        return a @ b
