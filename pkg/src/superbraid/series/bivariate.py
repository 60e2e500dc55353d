"""Exact integer power series in two variables, truncated to a window."""

from __future__ import annotations


class BivariateSeries:
    """Integer series in q and t with degrees capped at (max_q, max_t).

    Every operation drops coefficients outside the window, so arithmetic
    on the kept coefficients is exact.
    """

    __slots__ = ("max_q", "max_t", "coeffs")

    def __init__(self, max_q: int, max_t: int, coeffs=None):
        if max_q < 0 or max_t < 0:
            raise ValueError("truncation orders must be >= 0")
        self.max_q = max_q
        self.max_t = max_t
        self.coeffs = {}
        for (i, n), c in (coeffs or {}).items():
            if c and 0 <= i <= max_q and 0 <= n <= max_t:
                self.coeffs[(i, n)] = c

    @classmethod
    def one(cls, max_q: int, max_t: int) -> "BivariateSeries":
        return cls(max_q, max_t, {(0, 0): 1})

    @classmethod
    def monomial(cls, max_q: int, max_t: int, i: int, n: int,
                 c: int = 1) -> "BivariateSeries":
        return cls(max_q, max_t, {(i, n): c})

    def coefficient(self, i: int, n: int = 0) -> int:
        if not (0 <= i <= self.max_q and 0 <= n <= self.max_t):
            raise KeyError(f"({i}, {n}) is outside the truncation window")
        return self.coeffs.get((i, n), 0)

    def q_coefficients(self, n: int = 0) -> list[int]:
        """Coefficients of q^0..q^max_q in the t^n slice."""
        return [self.coefficient(i, n) for i in range(self.max_q + 1)]

    def is_zero(self) -> bool:
        return not self.coeffs

    def _same_window(self, other: "BivariateSeries"):
        if (self.max_q, self.max_t) != (other.max_q, other.max_t):
            raise ValueError("series have different truncation windows")

    def __eq__(self, other):
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return ((self.max_q, self.max_t, self.coeffs)
                == (other.max_q, other.max_t, other.coeffs))

    def __add__(self, other: "BivariateSeries") -> "BivariateSeries":
        self._same_window(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0) + c
        return BivariateSeries(self.max_q, self.max_t, out)

    def __sub__(self, other: "BivariateSeries") -> "BivariateSeries":
        self._same_window(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0) - c
        return BivariateSeries(self.max_q, self.max_t, out)

    def __mul__(self, other: "BivariateSeries") -> "BivariateSeries":
        self._same_window(other)
        out = {}
        for (i, n), a in self.coeffs.items():
            for (j, m), b in other.coeffs.items():
                if i + j <= self.max_q and n + m <= self.max_t:
                    key = (i + j, n + m)
                    out[key] = out.get(key, 0) + a * b
        return BivariateSeries(self.max_q, self.max_t, out)

    def geometric_inverse(self) -> "BivariateSeries":
        """Inverse of self = 1 - u, where u has zero constant term.

        Returns 1 + u + u^2 + ...; the sum is finite because each power
        raises the minimum total degree past the window.
        """
        one = BivariateSeries.one(self.max_q, self.max_t)
        u = one - self
        if self.coefficient(0, 0) != 1 or u.coefficient(0, 0) != 0:
            raise ValueError("geometric inverse needs constant term 1")
        acc = one
        power = one
        while True:
            power = power * u
            if power.is_zero():
                return acc
            acc = acc + power

    def to_json(self) -> dict:
        return {
            "max_q": self.max_q,
            "max_t": self.max_t,
            "coeffs": [[i, n, c] for (i, n), c in sorted(self.coeffs.items())],
        }

    def __repr__(self):
        return (f"BivariateSeries(max_q={self.max_q}, max_t={self.max_t}, "
                f"{len(self.coeffs)} terms)")
