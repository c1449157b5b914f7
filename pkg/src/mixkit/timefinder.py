"""Rational mixing-time candidates for integral Cayley graphs.

For each nonzero shift h the eigenvalue differences define a Laurent
polynomial A_h(X) = sum over g of X^(lam_{g+h} - lam_g); uniform mixing at
time t requires A_h(e^{it}) = 0 for every h.  Clearing denominators with
d_h = max difference gives the ordinary polynomial

    B_h(X) = X^(d_h) * A_h(X),   deg B_h = 2 d_h,

whose coefficient at X^(d_h + u) counts the differences equal to u.  Each
B_h is palindromic and sums to |G| at X = 1.  Any mixing time makes e^{it}
a common root of all B_h, hence a root of their gcd a(X); rational times
t = 2*pi*r/N with gcd(r, N) = 1 therefore require Phi_N | a(X).

candidate_times finds all such N up to a cap and expands them into reduced
rational times.  The list is provably complete for denominators within the
cap; if a nonconstant factor of a(X) remains after stripping every
cyclotomic factor found, the result is flagged non_exhaustive because
further (possibly irrational or beyond-cap) roots cannot be excluded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import intpoly
from .arith import euler_phi
from .cyclo import RationalTime
from .errors import EmptyInput, NotIntegral, ZeroPolynomial, ZeroShift
from .groups import Element
from .spectrum import SpectrumTable, difference_multiset


@dataclass(frozen=True)
class DiffPolynomial:
    """B_h for one shift: palindromic, nonnegative coefficients, sums to |G|."""

    shift: Element
    max_diff: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def difference_polynomial(table: SpectrumTable, h: Element) -> DiffPolynomial:
    """Build B_h from the difference multiset of an integral graph."""
    if not table.integral:
        raise NotIntegral("difference polynomials require an integral graph")
    h = table.group.check_element(h)
    if h == table.group.zero:
        raise ZeroShift("difference polynomial needs a nonzero shift")
    counts = difference_multiset(table, h)
    d_h = max(counts)
    coeffs = [0] * (2 * d_h + 1)
    for u, c in counts.items():
        coeffs[d_h + u] = c
    return DiffPolynomial(shift=h, max_diff=d_h, coeffs=tuple(coeffs))


def gcd_polynomial(polys) -> list[int]:
    """Primitive gcd of the given B_h polynomials, positive leading coeff.

    Folds in the order given (callers pass shifts lexicographically) and
    stops early once the gcd is constant.
    """
    polys = list(polys)
    if not polys:
        raise EmptyInput("gcd_polynomial needs at least one polynomial")
    g: list[int] = []
    for p in polys:
        coeffs = list(p.coeffs) if isinstance(p, DiffPolynomial) else list(p)
        g = intpoly.gcd(g, coeffs)
        if intpoly.degree(g) == 0:
            break
    return g


@dataclass(frozen=True)
class CandidateTimes:
    """All rational times not excluded by the gcd polynomial.

    times is every t = r/N (meaning 2*pi*r/N) with gcd(r, N) = 1 and
    Phi_N | a(X), for N up to max_checked, sorted by (N, r).  complete_up_to
    bounds how many distinct mixing times can exist in (0, 2*pi) at all.
    non_exhaustive means a nonconstant factor of a(X) survived the sweep,
    so roots beyond the checked denominators are possible.
    """

    gcd_coeffs: tuple[int, ...]
    times: tuple[RationalTime, ...]
    complete_up_to: int
    max_checked: int
    non_exhaustive: bool


def candidate_times(
    a, max_n: int, complete_up_to: int | None = None
) -> CandidateTimes:
    """Cyclotomic factor sweep of a(X) for denominators N <= max_n."""
    coeffs = intpoly.trim(list(a))
    if not coeffs:
        raise ZeroPolynomial("the zero polynomial admits every time")
    residual = intpoly.primitive(coeffs)
    found: list[int] = []
    for n in range(1, max_n + 1):
        if euler_phi(n) > intpoly.degree(residual):
            continue
        phi_n = list(intpoly.cyclotomic(n))
        while True:
            q, r = intpoly.divmod_monic(residual, phi_n)
            if r:
                break
            found.append(n)
            residual = q
            if intpoly.degree(residual) < 1:
                break
        # note: repeated division strips multiplicity; N is recorded once per
        # power but duplicate times are collapsed below
    times = sorted(
        {
            RationalTime(r, n)
            for n in found
            for r in range(1, n + 1)
            if math.gcd(r, n) == 1
        },
        key=lambda t: (t.denominator, t.numerator),
    )
    if complete_up_to is None:
        complete_up_to = max(intpoly.degree(intpoly.trim(list(a))), 0)
    return CandidateTimes(
        gcd_coeffs=tuple(intpoly.trim(list(a))),
        times=tuple(times),
        complete_up_to=complete_up_to,
        max_checked=max_n,
        non_exhaustive=intpoly.degree(residual) > 0,
    )


def default_max_denominator(order: int) -> int:
    """Heuristic sweep cap: 8 * |G| covers every worked case with room."""
    return 8 * order


def mixing_time_candidates(table: SpectrumTable, max_n: int | None = None) -> CandidateTimes:
    """Full pipeline: B_h for all nonzero shifts, gcd, cyclotomic sweep.

    The completeness bound reported is 2 * min over h of d_h, the cap on how
    many distinct uniform mixing times the graph can have in (0, 2*pi).
    """
    group = table.group
    if max_n is None:
        max_n = default_max_denominator(group.order)
    polys = [
        difference_polynomial(table, h) for h in group.elements() if h != group.zero
    ]
    a = gcd_polynomial(polys)
    bound = 2 * min(p.max_diff for p in polys)
    return candidate_times(a, max_n, complete_up_to=bound)
