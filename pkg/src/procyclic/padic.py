"""p-adic integers at finite digit precision.

A value is a little-endian digit vector d[0..k-1] in base p, representing
sum(d[i] * p^i) modulo p^k.  These serve as exponents for the procyclic
action on power series, so the arithmetic here is plain ring arithmetic
mod p^k, implemented digit-by-digit with explicit carry propagation.
Values are immutable and operations pure.
"""

from __future__ import annotations

import numpy as np

from .errors import UsageError
from .fpx import validate_prime

__all__ = ["PadicInt"]


class PadicInt:
    """Element of Z/p^k written in base-p digits, digit 0 first."""

    __slots__ = ("p", "prec", "digits")

    def __init__(self, p: int, digits, prec: int | None = None):
        p = validate_prime(p)
        if prec is None:
            prec = len(digits)
        if prec < 1:
            raise UsageError("digit precision must be a positive integer")
        arr = np.asarray(digits, dtype=np.int64)
        if arr.ndim != 1:
            raise UsageError("digits must be one-dimensional")
        if arr.size > prec:
            arr = arr[:prec]
        elif arr.size < prec:
            arr = np.concatenate([arr, np.zeros(prec - arr.size, dtype=np.int64)])
        arr = np.mod(arr, p)
        arr.flags.writeable = False
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "prec", int(prec))
        object.__setattr__(self, "digits", arr)

    def __setattr__(self, name, value):
        raise AttributeError("PadicInt is immutable")

    @classmethod
    def from_int(cls, n: int, p: int, prec: int) -> "PadicInt":
        """Digits of n mod p^prec; negative n is reduced into range."""
        p = validate_prime(p)
        if prec < 1:
            raise UsageError("digit precision must be a positive integer")
        n = int(n) % (p**prec)
        digits = np.zeros(prec, dtype=np.int64)
        for i in range(prec):
            n, digits[i] = divmod(n, p)
        return cls(p, digits, prec)

    @classmethod
    def zero(cls, p: int, prec: int) -> "PadicInt":
        return cls(p, (), prec)

    @classmethod
    def one(cls, p: int, prec: int) -> "PadicInt":
        return cls(p, (1,), prec)

    def to_int(self) -> int:
        """Canonical representative in [0, p^prec)."""
        total = 0
        for d in self.digits[::-1]:
            total = total * self.p + int(d)
        return total

    def truncate(self, prec: int) -> "PadicInt":
        """Drop high digits; reduction mod p^prec is a ring homomorphism."""
        if prec < 1 or prec > self.prec:
            raise UsageError(f"cannot truncate digit precision {self.prec} to {prec}")
        return PadicInt(self.p, self.digits[:prec], prec)

    def is_zero(self) -> bool:
        return not self.digits.any()

    def _check_compatible(self, other: "PadicInt") -> None:
        if not isinstance(other, PadicInt):
            raise UsageError(f"expected PadicInt, got {type(other).__name__}")
        if self.p != other.p:
            raise UsageError(f"mixed primes {self.p} and {other.p}")
        if self.prec != other.prec:
            raise UsageError(f"mixed digit precisions {self.prec} and {other.prec}")

    def __add__(self, other: "PadicInt") -> "PadicInt":
        self._check_compatible(other)
        p, k = self.p, self.prec
        out = np.zeros(k, dtype=np.int64)
        carry = 0
        for i in range(k):
            carry, out[i] = divmod(int(self.digits[i]) + int(other.digits[i]) + carry, p)
        return PadicInt(p, out, k)

    def __neg__(self) -> "PadicInt":
        if self.is_zero():
            return self
        # p-complement of every digit, plus one, carries included
        p, k = self.p, self.prec
        out = np.zeros(k, dtype=np.int64)
        carry = 1
        for i in range(k):
            carry, out[i] = divmod(p - 1 - int(self.digits[i]) + carry, p)
        return PadicInt(p, out, k)

    def __sub__(self, other: "PadicInt") -> "PadicInt":
        return self + (-other)

    def __mul__(self, other: "PadicInt") -> "PadicInt":
        self._check_compatible(other)
        p, k = self.p, self.prec
        acc = np.zeros(k, dtype=np.int64)
        for i in range(k):
            di = int(self.digits[i])
            if di:
                acc[i:] += di * other.digits[: k - i]
        out = np.zeros(k, dtype=np.int64)
        carry = 0
        for i in range(k):
            carry, out[i] = divmod(int(acc[i]) + carry, p)
        return PadicInt(p, out, k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PadicInt):
            return NotImplemented
        return (
            self.p == other.p
            and self.prec == other.prec
            and np.array_equal(self.digits, other.digits)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.prec, self.digits.tobytes()))

    def __repr__(self) -> str:
        return f"PadicInt(p={self.p}, digits={list(map(int, self.digits))})"
