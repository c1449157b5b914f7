"""Connection sets and exact spectra of abelian Cayley graphs.

The Cayley graph of G with connection set S has one vertex per group element
and an edge u ~ v whenever u - v lies in S; the constraints 0 not in S,
S = -S, and <S> = G make it a connected simple graph.  Its eigenvalues are
indexed by group elements:

    lam_g = sum over s in S of chi_g(s)

computed here as exact cyclotomic integers at level exp(G).  A graph is
integral when every lam_g is a rational integer; that happens exactly when S
is a union of orbits under the unit action, and both criteria are computed
and compared whenever integrality is asked for.

The gcd invariants of an integral graph drive everything else: M_h is the
gcd of the eigenvalue differences across shift h, and their gcd over all
nonzero h divides the denominators of any uniform mixing time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

from .arith import euler_phi, gcd_list, moebius
from .cyclo import CycInt
from .errors import (
    ContainsZero,
    EmptyInput,
    InternalInconsistency,
    NotGenerating,
    NotIntegral,
    NotSymmetric,
    ZeroShift,
)
from .groups import Element, GroupSpec, orbits_under_units, parse_element


@dataclass(frozen=True)
class ConnectionSet:
    """A validated connection set: zero-free, symmetric, generating."""

    group: GroupSpec
    elements: tuple[Element, ...]

    @property
    def degree(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return tuple(g) in set(self.elements)

    def __str__(self) -> str:
        from .groups import format_element

        return "{" + ",".join(format_element(g) for g in self.elements) + "}"


def validate_connection_set(group: GroupSpec, elements) -> ConnectionSet:
    """Check the three connection-set axioms and return the canonical set.

    Raises ContainsZero, NotSymmetric, or NotGenerating.  Duplicates are
    collapsed; elements are stored sorted so equal sets compare equal.
    """
    els = sorted({group.check_element(g) for g in elements})
    zero = group.zero
    if zero in els:
        raise ContainsZero(f"connection set contains the identity {zero}")
    for g in els:
        if group.negate(g) not in set(els):
            raise NotSymmetric(f"{g} is in the set but {group.negate(g)} is not")
    if len(group.subgroup_generated(els)) != group.order:
        raise NotGenerating("connection set does not generate the group (graph disconnected)")
    return ConnectionSet(group=group, elements=tuple(els))


def elements_from_text(group: GroupSpec, text: str) -> tuple[Element, ...]:
    """Parse the set file grammar without the connection-set axioms.

    One element per line (or several separated by ';'), '#' starts a
    comment, and a line 'orbits: <rep1>; <rep2>' expands each representative
    to its full orbit under the unit action.
    """
    raw: list[Element] = []
    orbit_map = None
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("orbits:"):
            if orbit_map is None:
                orbit_map = {}
                for o in orbits_under_units(group):
                    for m in o.members:
                        orbit_map[m] = o.members
            for piece in line[len("orbits:"):].split(";"):
                piece = piece.strip()
                if piece:
                    raw.extend(orbit_map[parse_element(piece, group)])
        else:
            for piece in line.split(";"):
                piece = piece.strip()
                if piece:
                    raw.append(parse_element(piece, group))
    if not raw:
        raise EmptyInput("no elements in connection set text")
    return tuple(sorted({group.check_element(g) for g in raw}))


def connection_set_from_text(group: GroupSpec, text: str) -> ConnectionSet:
    """Parse the set file grammar and validate the result as a connection set."""
    return validate_connection_set(group, elements_from_text(group, text))


@dataclass(frozen=True)
class SpectrumTable:
    """Exact eigenvalues of a Cayley graph, indexed by group element.

    values[i] is lam_g for the i-th element in lexicographic order, as a
    CycInt at level exp(G).  int_values is the same list as rational
    integers when every eigenvalue is one (integral graph), else None.
    """

    connection_set: ConnectionSet
    values: tuple[CycInt, ...]
    int_values: tuple[int, ...] | None
    _diff_cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def group(self) -> GroupSpec:
        return self.connection_set.group

    @property
    def degree(self) -> int:
        return self.connection_set.degree

    @property
    def integral(self) -> bool:
        return self.int_values is not None

    def value(self, g: Element) -> CycInt:
        return self.values[self.group.index(g)]

    def int_value(self, g: Element) -> int:
        if self.int_values is None:
            raise NotIntegral("graph has irrational eigenvalues")
        return self.int_values[self.group.index(g)]

    @cached_property
    def float_values(self) -> tuple[float, ...]:
        """Eigenvalues as floats (they are always real)."""
        if self.int_values is not None:
            return tuple(float(v) for v in self.int_values)
        return tuple(v.to_complex().real for v in self.values)


def eigenvalues(connection_set: ConnectionSet) -> SpectrumTable:
    """Exact spectrum via character sums; one pass over G x S."""
    group = connection_set.group
    e = group.exponent
    values = []
    for g in group.elements():
        counts = [0] * e
        for s in connection_set.elements:
            counts[group.character_exponent(g, s)] += 1
        values.append(CycInt(e, counts))
    ints = [v.as_int() for v in values]
    int_values = tuple(ints) if all(i is not None for i in ints) else None
    return SpectrumTable(
        connection_set=connection_set, values=tuple(values), int_values=int_values
    )


def is_integral(connection_set: ConnectionSet) -> bool:
    """Integrality, decided two independent ways that must agree.

    Route 1: S is a union of orbits under the unit action (closure check).
    Route 2: every exact eigenvalue is a rational integer.
    """
    group = connection_set.group
    members = set(connection_set.elements)
    n = group.order
    orbit_route = all(
        {group.scale(l, s) for s in members} == members
        for l in range(2, n)
        if math.gcd(l, n) == 1
    )
    eigen_route = eigenvalues(connection_set).integral
    if orbit_route != eigen_route:
        raise InternalInconsistency(
            f"integrality criteria disagree on {connection_set}: "
            f"orbit closure says {orbit_route}, exact eigenvalues say {eigen_route}"
        )
    return eigen_route


@dataclass(frozen=True)
class GcdInvariants:
    """Gcd invariants of an integral graph.

    m_total: gcd of (degree - lam_g) over g != 0.
    m_shift: for each nonzero h, gcd of eigenvalue differences across h.
    d_group: gcd of the m_shift values over shifts where some difference is
    nonzero (for a connected graph that is every nonzero shift).
    """

    m_total: int
    m_shift: dict[Element, int]
    d_group: int


def gcd_invariants(table: SpectrumTable) -> GcdInvariants:
    if not table.integral:
        raise NotIntegral("gcd invariants require an integral graph")
    group = table.group
    lam = table.int_values
    d = table.degree
    els = group.elements()
    index = group.index
    m_total = gcd_list(d - lam[index(g)] for g in els if g != group.zero)
    m_shift: dict[Element, int] = {}
    for h in els:
        if h == group.zero:
            continue
        m_shift[h] = gcd_list(lam[index(group.add(g, h))] - lam[index(g)] for g in els)
    # shifts with an all-zero difference list would contribute gcd 0; they
    # cannot occur on a connected graph but are excluded for safety
    d_group = gcd_list(m for m in m_shift.values() if m != 0)
    return GcdInvariants(m_total=m_total, m_shift=m_shift, d_group=d_group)


def difference_multiset(table: SpectrumTable, h: Element, modulus: int | None = None):
    """Multiset {lam_{g+h} - lam_g : g in G} as a value -> count dict.

    With modulus=N the differences are reduced mod N (the shape that feeds
    exact correlation values at times r/N).
    """
    if not table.integral:
        raise NotIntegral("difference multisets require an integral graph")
    group = table.group
    h = group.check_element(h)
    if h == group.zero:
        raise ZeroShift("difference multiset needs a nonzero shift")
    cached = table._diff_cache.get((h, modulus))
    if cached is not None:
        return dict(cached)
    lam = table.int_values
    index = group.index
    add = group.add
    counts: dict[int, int] = {}
    for i, g in enumerate(group.elements()):
        u = lam[index(add(g, h))] - lam[i]
        if modulus is not None:
            u %= modulus
        counts[u] = counts.get(u, 0) + 1
    table._diff_cache[(h, modulus)] = counts
    return dict(counts)


def ramanujan(k: int, n: int) -> int:
    """Ramanujan sum c(k, n) by the closed form phi(n) mu(m) / phi(m).

    m = n / gcd(k, n).  Exact integer division; phi(m) divides phi(n)
    whenever m divides n.
    """
    if n < 1:
        raise ValueError("modulus must be >= 1")
    m = n // math.gcd(k, n)
    mu = moebius(m)
    if mu == 0:
        return 0
    return euler_phi(n) // euler_phi(m) * mu
