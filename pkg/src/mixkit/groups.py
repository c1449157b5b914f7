"""Finite abelian groups as explicit products of cyclic factors.

A group is a tuple of moduli (n_1, ..., n_k); an element is a plain tuple of
coordinates with 0 <= g_i < n_i.  Everything downstream (spectra, mixing
verdicts) reduces to coordinate arithmetic against one of these specs, so
elements stay transparent tuples rather than wrapped objects.

Character convention: with e = exponent of the group, the pairing of g and h
is the exponent

    chi_g(h) = omega_e ** sum_i (e // n_i) * g_i * h_i   (mod e)

which is symmetric in g and h.  Only the integer exponent lives here; the
root of unity itself belongs to the cyclotomic layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from itertools import product

from .arith import factorize
from .errors import ElementParseError, GroupParseError

Element = tuple[int, ...]


@dataclass(frozen=True)
class GroupSpec:
    """Product of cyclic groups Z_{n_1} x ... x Z_{n_k}; factors in given order.

    The empty factor tuple is the trivial group (order 1).  It cannot be
    produced by the parser but is a legal value, used as the identity of
    Cartesian products.
    """

    factors: tuple[int, ...]
    order: int = field(init=False, compare=False)
    exponent: int = field(init=False, compare=False)

    def __post_init__(self):
        for n in self.factors:
            if n < 2:
                raise ValueError(f"cyclic factor must be >= 2, got {n}")
        order = 1
        for n in self.factors:
            order *= n
        exponent = reduce(math.lcm, self.factors, 1)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "exponent", exponent)

    # -- element plumbing ---------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def zero(self) -> Element:
        return (0,) * len(self.factors)

    def elements(self) -> list[Element]:
        """All elements in lexicographic coordinate order."""
        return list(product(*(range(n) for n in self.factors)))

    def index(self, g: Element) -> int:
        """Position of g in the lexicographic enumeration (mixed radix)."""
        i = 0
        for c, n in zip(g, self.factors):
            i = i * n + c
        return i

    def element(self, i: int) -> Element:
        coords = []
        for n in reversed(self.factors):
            coords.append(i % n)
            i //= n
        return tuple(reversed(coords))

    def check_element(self, g) -> Element:
        g = tuple(int(c) for c in g)
        if len(g) != len(self.factors):
            raise ElementParseError(
                f"element {g} has {len(g)} coordinates, group has {len(self.factors)}"
            )
        if any(not (0 <= c < n) for c, n in zip(g, self.factors)):
            raise ElementParseError(f"element {g} out of range for {self}")
        return g

    # -- arithmetic ---------------------------------------------------------

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.factors))

    def negate(self, a: Element) -> Element:
        return tuple((-x) % n for x, n in zip(a, self.factors))

    def sub(self, a: Element, b: Element) -> Element:
        return tuple((x - y) % n for x, y, n in zip(a, b, self.factors))

    def scale(self, k: int, a: Element) -> Element:
        return tuple((k * x) % n for x, n in zip(a, self.factors))

    def character_exponent(self, g: Element, h: Element) -> int:
        """Exponent of the primitive e-th root pairing g with h; symmetric."""
        e = self.exponent
        s = 0
        for x, y, n in zip(g, h, self.factors):
            s += (e // n) * x * y
        return s % e

    def element_order(self, g: Element) -> int:
        return reduce(math.lcm, (n // math.gcd(x, n) for x, n in zip(g, self.factors)), 1)

    def subgroup_generated(self, gens) -> frozenset[Element]:
        """Closure of gens under addition (always contains zero)."""
        closure = {self.zero}
        for s in gens:
            if s in closure:
                continue
            # fold in the cyclic group generated by s
            cosets = list(closure)
            step = s
            while step not in closure:
                closure.update(self.add(step, c) for c in cosets)
                step = self.add(step, s)
        return frozenset(closure)

    def addition_table(self) -> list[list[int]]:
        """table[i][j] = index(element(i) + element(j)); hot-loop helper."""
        els = self.elements()
        idx = {g: i for i, g in enumerate(els)}
        return [[idx[self.add(a, b)] for b in els] for a in els]

    # -- display ------------------------------------------------------------

    @property
    def text(self) -> str:
        if not self.factors:
            return "Z1"
        parts = []
        i = 0
        while i < len(self.factors):
            j = i
            while j < len(self.factors) and self.factors[j] == self.factors[i]:
                j += 1
            count = j - i
            parts.append(f"Z{self.factors[i]}" + (f"^{count}" if count > 1 else ""))
            i = j
        return "x".join(parts)

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class Orbit:
    """Orbit of an element under multiplication by units of Z_{|G|}."""

    representative: Element
    members: tuple[Element, ...]

    def __len__(self) -> int:
        return len(self.members)


def parse_group(text: str) -> GroupSpec:
    """Parse 'Z4', 'Z2^3', 'Z2x Z4', 'z2^2 X z3' etc. into a GroupSpec.

    Whitespace between tokens is ignored; case is ignored.  Errors carry the
    byte offset of the offending token.
    """
    factors: list[int] = []
    pos = 0
    n_text = len(text)

    def skip_ws(p: int) -> int:
        while p < n_text and text[p].isspace():
            p += 1
        return p

    def read_int(p: int) -> tuple[int, int]:
        q = p
        while q < n_text and text[q].isdigit():
            q += 1
        if q == p:
            raise GroupParseError("expected an integer", p)
        return int(text[p:q]), q

    while True:
        pos = skip_ws(pos)
        if pos >= n_text or text[pos] not in "zZ":
            raise GroupParseError("expected 'Z'", pos)
        pos += 1
        pos = skip_ws(pos)
        n, pos = read_int(pos)
        if n < 2:
            raise GroupParseError(f"cyclic factor must be >= 2, got {n}", pos - len(str(n)))
        count = 1
        pos = skip_ws(pos)
        if pos < n_text and text[pos] == "^":
            pos += 1
            pos = skip_ws(pos)
            count, pos = read_int(pos)
            if count < 1:
                raise GroupParseError(f"power must be >= 1, got {count}", pos - len(str(count)))
        factors.extend([n] * count)
        pos = skip_ws(pos)
        if pos >= n_text:
            break
        if text[pos] not in "xX":
            raise GroupParseError(f"expected 'x' or end of input, found {text[pos]!r}", pos)
        pos += 1
    return GroupSpec(tuple(factors))


def parse_element(text: str, group: GroupSpec) -> Element:
    """Parse '(1,3)' (parens optional when the group has one factor)."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    elif group.rank != 1 and "," not in s:
        raise ElementParseError(f"element of {group} needs parenthesized coordinates: {text!r}")
    parts = [p.strip() for p in s.split(",") if p.strip() != ""]
    try:
        coords = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise ElementParseError(f"bad element text {text!r}") from exc
    if len(coords) != group.rank:
        raise ElementParseError(
            f"element {text!r} has {len(coords)} coordinates, group {group} has {group.rank}"
        )
    # reduce into canonical range rather than rejecting, so '-1' means 'n-1'
    return tuple(c % n for c, n in zip(coords, group.factors))


def format_element(g: Element) -> str:
    if len(g) == 1:
        return str(g[0])
    return "(" + ",".join(str(c) for c in g) + ")"


def orbits_under_units(group: GroupSpec) -> tuple[Orbit, ...]:
    """Orbits of G under g -> l*g for all l coprime to |G|, sorted by rep.

    Includes the zero orbit.  Each orbit is closed under negation because
    -1 is a unit, so orbit unions are automatically symmetric connection
    set candidates.
    """
    n = group.order
    units = [l for l in range(1, n + 1) if math.gcd(l, n) == 1]
    seen: set[Element] = set()
    orbits: list[Orbit] = []
    for g in group.elements():
        if g in seen:
            continue
        members = sorted({group.scale(l, g) for l in units})
        seen.update(members)
        orbits.append(Orbit(representative=min(members), members=tuple(members)))
    orbits.sort(key=lambda o: o.representative)
    return tuple(orbits)


def sylow_decomposition(group: GroupSpec) -> dict[int, GroupSpec]:
    """Split into p-primary parts: prime -> product of the p-parts of each factor."""
    parts: dict[int, list[int]] = {}
    for n in group.factors:
        for p, e in factorize(n):
            parts.setdefault(p, []).append(p**e)
    return {p: GroupSpec(tuple(fs)) for p, fs in sorted(parts.items())}
