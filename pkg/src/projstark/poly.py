"""Univariate polynomial algebra over a prime field.

Coefficients are stored as canonical residues in ascending power order with
trailing zeros trimmed.  The zero polynomial has degree NEG_INF so that it
passes every degree bound.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Tuple, Union

from .field import FieldElement, PrimeField

NEG_INF = float("-inf")

Scalar = Union[int, FieldElement]


def _val(x: Scalar, q: int) -> int:
    if isinstance(x, FieldElement):
        return x.value
    return x % q


class Polynomial:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: PrimeField, coeffs: Iterable[Scalar] = ()):
        q = field.modulus
        c = [_val(x, q) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def zero(cls, field: PrimeField) -> "Polynomial":
        return cls(field, ())

    @classmethod
    def constant(cls, field: PrimeField, c: Scalar) -> "Polynomial":
        return cls(field, (c,))

    @classmethod
    def x(cls, field: PrimeField) -> "Polynomial":
        return cls(field, (0, 1))

    @property
    def degree(self):
        """Exact degree; NEG_INF for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def reported_degree(self) -> int:
        """Degree with the zero polynomial reported as 0, the tabulation convention."""
        return max(len(self.coeffs) - 1, 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def evaluate(self, x: Scalar) -> FieldElement:
        q = self.field.modulus
        xv = _val(x, q)
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * xv + c) % q
        return FieldElement(acc, self.field)

    def __call__(self, x: Scalar) -> FieldElement:
        return self.evaluate(x)

    def _check(self, other: "Polynomial") -> None:
        if other.field != self.field:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % self.field.modulus
        return Polynomial(self.field, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a, b = self.coeffs, other.coeffs
        q = self.field.modulus
        return Polynomial(
            self.field,
            [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % q for i in range(n)],
        )

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, [-c for c in self.coeffs])

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial.zero(self.field)
        q = self.field.modulus
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = (out[i + j] + a * b) % q
        return Polynomial(self.field, out)

    def scale(self, c: Scalar) -> "Polynomial":
        cv = _val(c, self.field.modulus)
        return Polynomial(self.field, [a * cv for a in self.coeffs])

    def scale_argument(self, c: Scalar) -> "Polynomial":
        """p(c * x), by rescaling coefficient i with c^i."""
        q = self.field.modulus
        cv = _val(c, q)
        out, p = [], 1
        for a in self.coeffs:
            out.append(a * p % q)
            p = p * cv % q
        return Polynomial(self.field, out)

    def __divmod__(self, den: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        self._check(den)
        if den.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = self.field.modulus
        rem = list(self.coeffs)
        dc = den.coeffs
        if len(rem) < len(dc):
            return Polynomial.zero(self.field), Polynomial(self.field, rem)
        quot = [0] * (len(rem) - len(dc) + 1)
        lead_inv = pow(dc[-1], q - 2, q)
        for top in range(len(rem) - 1, len(dc) - 2, -1):
            c = rem[top] * lead_inv % q
            if c == 0:
                continue
            shift = top - (len(dc) - 1)
            quot[shift] = c
            for i, d in enumerate(dc):
                rem[shift + i] = (rem[shift + i] - c * d) % q
        return Polynomial(self.field, quot), Polynomial(self.field, rem)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Polynomial)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field.modulus, self.coeffs))

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)})"


def poly_arith(a: Polynomial, b, op: str) -> Polynomial:
    """Dispatch form of the arithmetic ops; `scale` takes a scalar for b."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")


def interpolate(points: Sequence[Tuple[Scalar, Scalar]], field: PrimeField) -> Polynomial:
    """Unique polynomial of degree < len(points) through all (x, y) pairs.

    Lagrange construction via the master product, O(m^2).
    """
    q = field.modulus
    xs = [_val(x, q) for x, _ in points]
    ys = [_val(y, q) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicated x-coordinate in interpolation points")
    if not xs:
        return Polynomial.zero(field)
    master = _product_coeffs(xs, q)
    m = len(xs)
    acc = [0] * m
    for xj, yj in zip(xs, ys):
        # synthetic division of master by (x - xj)
        basis = [0] * m
        basis[m - 1] = master[m]
        for i in range(m - 1, 0, -1):
            basis[i - 1] = (master[i] + xj * basis[i]) % q
        den = 0
        for c in reversed(basis):
            den = (den * xj + c) % q
        w = yj * pow(den, q - 2, q) % q
        if w:
            for i in range(m):
                acc[i] = (acc[i] + w * basis[i]) % q
    return Polynomial(field, acc)


def _product_coeffs(roots: Sequence[int], q: int) -> list:
    out = [1]
    for r in roots:
        out.append(0)
        nr = (-r) % q
        for i in range(len(out) - 1, 0, -1):
            out[i] = (out[i - 1] + out[i] * nr) % q
        out[0] = out[0] * nr % q
    return out


def vanishing(points: Sequence[Scalar], field: PrimeField) -> Polynomial:
    """Monic polynomial with exactly the given roots."""
    q = field.modulus
    xs = [_val(x, q) for x in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicated root in vanishing polynomial")
    return Polynomial(field, _product_coeffs(xs, q))


def divide_exact(num: Polynomial, den: Polynomial) -> Tuple[Polynomial, bool]:
    """Long division; the quotient is meaningful only when the remainder is zero."""
    quot, rem = divmod(num, den)
    return quot, rem.is_zero()
