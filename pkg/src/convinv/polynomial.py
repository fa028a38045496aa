"""The degree polynomial of an orgraph and the necessary conditions it yields.

For an orgraph ``D`` the degree polynomial is

    P_D(x) = sum over v of (1 + x)^outdeg(v) * (1 - x)^indeg(v).

Converse invariance forces ``P_D`` to be even; every predicate below is a
consequence of that (all arithmetic is exact).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable

from .digraph import Digraph, converse, degree_sequence
from .errors import DegreeZero, NotRegular


class IntPolynomial:
    """Dense integer polynomial; ``coeffs[k]`` multiplies ``x^k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def binomial_power(cls, a: int, b: int) -> "IntPolynomial":
        """``(1 + x)^a (1 - x)^b``."""
        return cls([1, 1]) ** a * cls([1, -1]) ** b

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[k] + other[k] for k in range(n))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[k] - other[k] for k in range(n))

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(a * other for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        result = IntPolynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def reflect(self) -> "IntPolynomial":
        """``p(-x)``."""
        return IntPolynomial(a if k % 2 == 0 else -a for k, a in enumerate(self.coeffs))

    def is_even(self) -> bool:
        return all(a == 0 for a in self.coeffs[1::2])

    def __str__(self) -> str:
        terms = [(k, a) for k, a in enumerate(self.coeffs) if a]
        if not terms:
            return "0"
        parts = []
        for idx, (k, a) in enumerate(terms):
            mag = abs(a)
            if k == 0:
                body = str(mag)
            else:
                var = "x" if k == 1 else f"x^{k}"
                body = var if mag == 1 else f"{mag}{var}"
            if idx == 0:
                parts.append(body if a > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if a > 0 else f" - {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"


def degree_polynomial(D: Digraph) -> IntPolynomial:
    total = IntPolynomial()
    for v in range(D.n):
        total = total + IntPolynomial.binomial_power(D.out_degree(v), D.in_degree(v))
    return total


def coefficient_closed_form(D: Digraph, t: int) -> int:
    """Coefficient of ``x^t`` in the degree polynomial, from binomial sums."""
    if t < 0:
        raise ValueError("negative index")
    total = 0
    for v in range(D.n):
        a, b = D.out_degree(v), D.in_degree(v)
        for i in range(t + 1):
            total += comb(a, i) * comb(b, t - i) * (-1) ** (t - i)
    return total


def first_nonzero_odd_coefficient(D: Digraph) -> int | None:
    top = degree_sequence(D).max_odd_degree
    for t in range(1, top + 1, 2):
        if coefficient_closed_form(D, t):
            return t
    return None


def odd_coefficients_vanish(D: Digraph) -> bool:
    return first_nonzero_odd_coefficient(D) is None


def polynomials_match(D: Digraph) -> bool:
    return degree_polynomial(D) == degree_polynomial(converse(D))


def source_sink_sums(D: Digraph) -> tuple[int, int]:
    """``(sum of 2^outdeg over sources, sum of 2^indeg over sinks)``."""
    src = sum(2 ** D.out_degree(v) for v in D.sources())
    snk = sum(2 ** D.in_degree(v) for v in D.sinks())
    return src, snk


def source_sink_balance(D: Digraph) -> bool:
    src, snk = source_sink_sums(D)
    return src == snk


def c3_identity_holds(D: Digraph) -> bool:
    lhs = rhs = 0
    for v in range(D.n):
        a, b = D.out_degree(v), D.in_degree(v)
        lhs += (a - b) ** 3
        rhs += 3 * (a * a - b * b)
    return lhs == rhs


@dataclass(frozen=True)
class TopOddChecks:
    max_degree: int
    top_odd: int
    coefficient: int
    even_case: bool
    odd_case: bool
    odd_max_degree_blocks: bool

    @property
    def passed(self) -> bool:
        return self.even_case and self.odd_case and not self.odd_max_degree_blocks


def top_odd_checks(D: Digraph) -> TopOddChecks:
    """Vanishing of the coefficient at the largest odd index not above the max degree.

    Only one of the two cases applies to a given ``D``; the other is reported
    as ``True`` (vacuously satisfied).
    """
    ds = degree_sequence(D)
    top = ds.max_degree
    if top == 0:
        raise DegreeZero("digraph has no arcs")
    odd = ds.max_odd_degree
    if top % 2 == 0:
        value = 0
        for a, b in ds.pairs:
            if a + b == top:
                value += (-1) ** b * (a - b)
            elif a + b == odd:
                value += (-1) ** b
        return TopOddChecks(top, odd, value, value == 0, True, False)
    value = sum((-1) ** b for a, b in ds.pairs if a + b == top)
    n_top = sum(1 for a, b in ds.pairs if a + b == top)
    blocks = top >= 3 and n_top % 2 == 1
    return TopOddChecks(top, odd, value, True, value == 0, blocks)


def regular_converse_degree_check(D: Digraph) -> bool:
    """For an orientation of a regular graph: does ``Deg(D)`` equal ``Deg(-D)``?"""
    ds = degree_sequence(D)
    d = ds.regular_degree()
    if d is None or d < 1:
        raise NotRegular("underlying graph is not d-regular with d >= 1")
    a = ds.split_counts(d)
    return all(a[i] == a[d - i] for i in range(d + 1))


@dataclass(frozen=True)
class PolynomialSummary:
    polynomial: IntPolynomial
    converse_polynomial: IntPolynomial
    odd_coefficients_vanish: bool
    first_odd_failure: int | None
    source_sum: int
    sink_sum: int
    c3_identity: bool
    top_odd: TopOddChecks | None
    regular_check: bool | None

    @property
    def necessary_conditions_hold(self) -> bool:
        ok = self.odd_coefficients_vanish and self.source_sum == self.sink_sum and self.c3_identity
        if self.top_odd is not None:
            ok = ok and self.top_odd.passed
        if self.regular_check is not None:
            ok = ok and self.regular_check
        return ok


def summarize(D: Digraph) -> PolynomialSummary:
    src, snk = source_sink_sums(D)
    ds = degree_sequence(D)
    reg = ds.regular_degree()
    return PolynomialSummary(
        polynomial=degree_polynomial(D),
        converse_polynomial=degree_polynomial(converse(D)),
        odd_coefficients_vanish=odd_coefficients_vanish(D),
        first_odd_failure=first_nonzero_odd_coefficient(D),
        source_sum=src,
        sink_sum=snk,
        c3_identity=c3_identity_holds(D),
        top_odd=top_odd_checks(D) if ds.max_degree else None,
        regular_check=regular_converse_degree_check(D) if reg else None,
    )
