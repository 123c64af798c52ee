"""Truncated formal series in the deformation parameter h.

HSeries is ring-agnostic: coefficients just need +, -, * and (for
inversion) an .inverse() method, which Poly2 and LocalizedFn both provide.
All operations truncate consistently at the stated order.
"""

from __future__ import annotations


class HSeries:
    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        coeffs = list(coeffs)
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        if len(coeffs) != order + 1:
            raise ValueError(f"need {order + 1} coefficients, got {len(coeffs)}")
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def constant(cls, value, order: int):
        zero = value * 0
        return cls(order, [value] + [zero] * order)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __eq__(self, other):
        if not isinstance(other, HSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __add__(self, other):
        n = min(self.order, other.order)
        return HSeries(n, [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)])

    def __sub__(self, other):
        n = min(self.order, other.order)
        return HSeries(n, [self.coeffs[k] - other.coeffs[k] for k in range(n + 1)])

    def __neg__(self):
        return HSeries(self.order, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, HSeries):
            # scalar / ring element
            return HSeries(self.order, [c * other for c in self.coeffs])
        n = min(self.order, other.order)
        zero = self.coeffs[0] * 0
        out = [zero] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            for j in range(n + 1 - i):
                out[i + j] = out[i + j] + a * other.coeffs[j]
        return HSeries(n, out)

    __rmul__ = __mul__

    def truncate(self, order: int) -> "HSeries":
        if order <= self.order:
            return HSeries(order, self.coeffs[: order + 1])
        zero = self.coeffs[0] * 0
        return HSeries(order, self.coeffs + [zero] * (order - self.order))

    def shift(self, k: int) -> "HSeries":
        """Multiply by h^k, keeping the truncation order."""
        zero = self.coeffs[0] * 0
        return HSeries(self.order, [zero] * k + self.coeffs[: self.order + 1 - k])

    def invert(self) -> "HSeries":
        """w with self * w == 1 mod h^(order+1); leading term must be a unit."""
        w0 = self.coeffs[0].inverse()
        out = [w0]
        for k in range(1, self.order + 1):
            acc = self.coeffs[0] * 0
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * out[k - i]
            out.append(-(w0 * acc))
        return HSeries(self.order, out)

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def __repr__(self):
        return "HSeries[" + ", ".join(repr(c) for c in self.coeffs) + "]"
