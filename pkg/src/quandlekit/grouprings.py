"""Elements of the integral group ring Z[Z/m], the value space of state-sum invariants."""
from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping

from .errors import InternalError, InvalidParameter


class GroupRingValue:
    """
    A finitely supported map Z/m -> Z, written sum_k n_k t^k.

    ``modulus`` is m; exponents are stored reduced into [0, m).
    """

    __slots__ = ("modulus", "_coeffs")

    def __init__(self, modulus: int, coeffs: Mapping[int, int] | None = None):
        if modulus < 1:
            raise InvalidParameter("group ring modulus must be positive")
        self.modulus = modulus
        c: Counter = Counter()
        for k, v in (coeffs or {}).items():
            c[int(k) % modulus] += int(v)
        self._coeffs = {k: v for k, v in sorted(c.items()) if v}

    @classmethod
    def from_exponents(cls, modulus: int, exponents: Iterable[int]) -> "GroupRingValue":
        c: Counter = Counter(int(e) % modulus for e in exponents)
        return cls(modulus, c)

    @classmethod
    def zero(cls, modulus: int) -> "GroupRingValue":
        return cls(modulus)

    @property
    def coefficients(self) -> dict[int, int]:
        return dict(self._coeffs)

    def __getitem__(self, k: int) -> int:
        return self._coeffs.get(k % self.modulus, 0)

    def total(self) -> int:
        return sum(self._coeffs.values())

    def _check(self, other: "GroupRingValue"):
        if not isinstance(other, GroupRingValue) or other.modulus != self.modulus:
            raise InvalidParameter("group ring values over different groups")

    def __add__(self, other: "GroupRingValue") -> "GroupRingValue":
        self._check(other)
        c = Counter(self._coeffs)
        c.update(other._coeffs)
        return GroupRingValue(self.modulus, c)

    def __sub__(self, other: "GroupRingValue") -> "GroupRingValue":
        return self + other * -1

    def __mul__(self, k: int) -> "GroupRingValue":
        if isinstance(k, GroupRingValue):
            self._check(k)
            c: Counter = Counter()
            for a, u in self._coeffs.items():
                for b, v in k._coeffs.items():
                    c[(a + b) % self.modulus] += u * v
            return GroupRingValue(self.modulus, c)
        return GroupRingValue(self.modulus, {e: v * k for e, v in self._coeffs.items()})

    __rmul__ = __mul__

    def exact_div(self, k: int) -> "GroupRingValue":
        if any(v % k for v in self._coeffs.values()):
            raise InternalError(f"{self} is not divisible by {k}")
        return GroupRingValue(self.modulus, {e: v // k for e, v in self._coeffs.items()})

    def ratio_to(self, other: "GroupRingValue"):
        """Integer c with self == c * other, or None."""
        self._check(other)
        if not other._coeffs:
            return 0 if not self._coeffs else None
        k0 = next(iter(other._coeffs))
        c, r = divmod(self[k0], other[k0])
        if r or self != other * c:
            return None
        return c

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingValue):
            return NotImplemented
        return self.modulus == other.modulus and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.modulus, tuple(self._coeffs.items())))

    def to_json(self) -> dict:
        return {"modulus": self.modulus,
                "values": {str(k): v for k, v in self._coeffs.items()}}

    @classmethod
    def from_json(cls, doc: Mapping) -> "GroupRingValue":
        return cls(int(doc["modulus"]), {int(k): int(v) for k, v in doc["values"].items()})

    def pretty(self, var: str = "t") -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for k, v in self._coeffs.items():
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{v}{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"GroupRingValue(Z/{self.modulus}: {self.pretty()})"
