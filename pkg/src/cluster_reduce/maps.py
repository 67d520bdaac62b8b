"""Birational and monomial maps built on exact rational function arithmetic.

A `BirationalMap` is a tuple of rational functions of the source
coordinates; composition, iteration, and exact Jacobians are all
symbolic.  A `MonomialMap` is the special case x -> x^U for an integer
exponent matrix U, which is how submersions onto leaf spaces are
represented: row i of U is the exponent vector of the monomial y_i.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .intlinalg import IntMatrix, LatticeBasis
from .laurent import (
    LaurentPoly,
    RationalFunction,
    format_rational,
    parse_rational,
)

__all__ = [
    "PositivePoint",
    "positive_point",
    "random_positive_point",
    "rng_substream",
    "BirationalMap",
    "MonomialMap",
]


PositivePoint = tuple[Fraction, ...]


def positive_point(values) -> PositivePoint:
    """Validate and convert to a tuple of positive exact rationals."""
    pt = tuple(Fraction(v) for v in values)
    if any(x <= 0 for x in pt):
        raise ValueError("point has a non-positive coordinate")
    return pt


def rng_substream(seed, index: int) -> random.Random:
    """Deterministic per-sample generator; independent of call order."""
    return random.Random(f"{seed}:{index}")


def random_positive_point(nvars: int, rng: random.Random) -> PositivePoint:
    """Random positive rational with numerator and denominator in 1..1000."""
    return tuple(
        Fraction(rng.randint(1, 1000), rng.randint(1, 1000)) for _ in range(nvars)
    )


class BirationalMap:
    """A tuple of rational functions of common source coordinates."""

    __slots__ = ("dim_in", "components", "_partials")

    def __init__(self, dim_in: int, components) -> None:
        comps = tuple(components)
        for c in comps:
            if not isinstance(c, RationalFunction):
                raise TypeError("components must be rational functions")
            if c.nvars != dim_in:
                raise ValueError("component variable count does not match dim_in")
        self.dim_in = dim_in
        self.components = comps
        self._partials = None

    @property
    def dim_out(self) -> int:
        return len(self.components)

    @staticmethod
    def identity(n: int) -> "BirationalMap":
        return BirationalMap(n, [RationalFunction.coordinate(i, n) for i in range(n)])

    @staticmethod
    def from_strings(strings, nvars: int | None = None) -> "BirationalMap":
        if nvars is None:
            nvars = len(strings)
        comps = [parse_rational(s, nvars) for s in strings]
        return BirationalMap(nvars, comps)

    def to_strings(self, names=None) -> list[str]:
        return [format_rational(c, names) for c in self.components]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BirationalMap):
            return NotImplemented
        return self.dim_in == other.dim_in and self.components == other.components

    def is_identity(self) -> bool:
        return self.dim_out == self.dim_in and all(
            c.is_coordinate(i) for i, c in enumerate(self.components)
        )

    # -- application --------------------------------------------------

    def evaluate(self, point) -> tuple[Fraction, ...]:
        pt = tuple(Fraction(x) for x in point)
        if len(pt) != self.dim_in:
            raise ValueError("point dimension mismatch")
        return tuple(c.evaluate(pt) for c in self.components)

    def evaluate_mp(self, point):
        return tuple(c.evaluate_mp(point) for c in self.components)

    def compose(self, inner: "BirationalMap") -> "BirationalMap":
        """self after inner: (self . inner)(x) = self(inner(x))."""
        if inner.dim_out != self.dim_in:
            raise ValueError("composition dimension mismatch")
        args = list(inner.components)
        return BirationalMap(inner.dim_in, [c.compose(args) for c in self.components])

    def iterate(self, p: int) -> "BirationalMap":
        """The p-fold composite; stepwise so intermediates stay reduced."""
        if self.dim_out != self.dim_in:
            raise ValueError("only self-maps can be iterated")
        if p < 0:
            raise ValueError("iteration count must be non-negative")
        result = BirationalMap.identity(self.dim_in)
        for _ in range(p):
            result = self.compose(result)
        return result

    # -- derivatives --------------------------------------------------

    def partials(self):
        """Symbolic Jacobian entries, cached: partials()[i][j] = d f_i / d x_j."""
        if self._partials is None:
            self._partials = tuple(
                tuple(c.derivative(j) for j in range(self.dim_in))
                for c in self.components
            )
        return self._partials

    def jacobian(self, point) -> list[list[Fraction]]:
        pt = tuple(Fraction(x) for x in point)
        return [[p.evaluate(pt) for p in row] for row in self.partials()]

    def jacobian_mp(self, point):
        return [[p.evaluate_mp(point) for p in row] for row in self.partials()]

    # -- serialization ------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "schema": "v1",
            "dim_in": self.dim_in,
            "components": self.to_strings(),
        }

    @staticmethod
    def from_json_dict(data: dict) -> "BirationalMap":
        return BirationalMap.from_strings(data["components"], int(data["dim_in"]))

    def __repr__(self) -> str:
        return f"BirationalMap({self.to_strings()!r})"


class MonomialMap:
    """x -> (x^u_1, ..., x^u_r) for integer exponent rows u_i."""

    __slots__ = ("exponents",)

    def __init__(self, exponents: IntMatrix) -> None:
        self.exponents = exponents

    @staticmethod
    def from_rows(rows, ambient_dim: int | None = None) -> "MonomialMap":
        return MonomialMap(IntMatrix.from_rows(rows, cols=ambient_dim))

    @property
    def dim_in(self) -> int:
        return self.exponents.cols

    @property
    def dim_out(self) -> int:
        return self.exponents.rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialMap):
            return NotImplemented
        return self.exponents == other.exponents

    def lattice(self) -> LatticeBasis:
        """The (unnormalized) lattice basis given by the exponent rows."""
        return LatticeBasis(self.dim_in, self.exponents.entries, saturated=False)

    def components(self) -> tuple[RationalFunction, ...]:
        n = self.dim_in
        return tuple(
            RationalFunction.monomial(row, n) for row in self.exponents.entries
        )

    def as_birational(self) -> BirationalMap:
        return BirationalMap(self.dim_in, self.components())

    def evaluate(self, point) -> tuple[Fraction, ...]:
        pt = tuple(Fraction(x) for x in point)
        if len(pt) != self.dim_in:
            raise ValueError("point dimension mismatch")
        out = []
        for row in self.exponents.entries:
            val = Fraction(1)
            for x, k in zip(pt, row):
                if k:
                    if x == 0 and k < 0:
                        raise ZeroDivisionError("negative power of zero coordinate")
                    val *= x ** k
            out.append(val)
        return tuple(out)

    def evaluate_mp(self, point):
        import mpmath

        out = []
        for row in self.exponents.entries:
            val = mpmath.mpf(1)
            for x, k in zip(point, row):
                if k:
                    val *= mpmath.power(x, k)
            out.append(val)
        return tuple(out)

    def after(self, inner: BirationalMap) -> BirationalMap:
        """self . inner as a birational map: components prod_j inner_j^(u_ij)."""
        if inner.dim_out != self.dim_in:
            raise ValueError("composition dimension mismatch")
        comps = []
        for row in self.exponents.entries:
            acc = RationalFunction.constant(1, inner.dim_in)
            for j, k in enumerate(row):
                if k:
                    acc = acc * inner.components[j] ** k
            comps.append(acc)
        return BirationalMap(inner.dim_in, comps)

    def after_monomial(self, inner: "MonomialMap") -> "MonomialMap":
        """Monomial composition: exponent matrices multiply."""
        if inner.dim_out != self.dim_in:
            raise ValueError("composition dimension mismatch")
        return MonomialMap(self.exponents @ inner.exponents)

    def to_json_dict(self) -> dict:
        return {
            "schema": "v1",
            "dim_in": self.dim_in,
            "exponents": [[str(x) for x in row] for row in self.exponents.entries],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "MonomialMap":
        rows = [[int(x) for x in row] for row in data["exponents"]]
        return MonomialMap(IntMatrix.from_rows(rows, cols=int(data["dim_in"])))

    def __repr__(self) -> str:
        return f"MonomialMap({self.exponents.entries!r})"
