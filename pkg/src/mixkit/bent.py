"""Boolean functions, Walsh-Hadamard spectra, bent functions, and the
cubelike graphs they generate.

Conventions, fixed once and used everywhere:

* A point of F_2^n is the integer x whose bit i is the coordinate x_{i+1}
  (x_1 is the least significant bit).  Truth tables are indexed by that
  integer; hex serialization packs the table little-endian, four bits per
  digit.
* W_f(g) = sum over x of (-1)^(f(x) + g.x).  f is bent iff n is even and
  every |W_f(g)| equals 2^(n/2).
* The dual of a bent f is f~(g) = 0 exactly when W_f(g) = +2^(n/2).  The
  dual is bent and the construction is an involution.

The walk connection: the support of a bent f with f(0) = 0 is a connection
set on Z_2^n whose graph mixes uniformly at time pi / 2^(n/2); this is the
cubelike construction, and it is re-certified exactly on every call rather
than trusted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .cyclo import RationalTime
from .errors import (
    InternalInconsistency,
    NotBent,
    NotBijection,
    ZeroInS1,
    ZeroInSupport,
)
from .groups import Element, GroupSpec
from .mixing import is_uniform_mixing
from .spectrum import ConnectionSet, eigenvalues, validate_connection_set


def coords_of(x: int, n: int) -> Element:
    """Integer index -> coordinate tuple (x_1, ..., x_n), x_1 = low bit."""
    return tuple((x >> i) & 1 for i in range(n))


def index_of(g) -> int:
    return sum(b << i for i, b in enumerate(g))


@dataclass(frozen=True)
class BooleanFunction:
    """A function F_2^n -> F_2 as a dense truth table."""

    n: int
    truth: tuple[int, ...]

    def __post_init__(self):
        if len(self.truth) != 1 << self.n:
            raise ValueError(f"truth table needs {1 << self.n} entries, got {len(self.truth)}")
        if any(b not in (0, 1) for b in self.truth):
            raise ValueError("truth table entries must be 0/1")

    def __call__(self, x: int) -> int:
        return self.truth[x]

    @property
    def weight(self) -> int:
        return sum(self.truth)

    def support_indices(self) -> list[int]:
        return [x for x, b in enumerate(self.truth) if b]

    def __xor__(self, other: "BooleanFunction") -> "BooleanFunction":
        if self.n != other.n:
            raise ValueError("arity mismatch")
        return BooleanFunction(self.n, tuple(a ^ b for a, b in zip(self.truth, other.truth)))

    # -- serialization ----------------------------------------------------

    def to_hex(self) -> str:
        bits = sum(b << i for i, b in enumerate(self.truth))
        return format(bits, f"0{max(1, (1 << self.n) // 4)}x")

    @staticmethod
    def from_hex(text: str, n: int | None = None) -> "BooleanFunction":
        text = text.strip().lower().removeprefix("0x")
        bits = int(text, 16)
        if n is None:
            size = 4 * len(text)
            n = max(1, size.bit_length() - 1)
            if 1 << n != size:
                raise ValueError(f"hex table of {size} bits is not a power-of-two length")
        if bits >> (1 << n):
            raise ValueError("hex table has more bits than 2^n")
        return BooleanFunction(n, tuple((bits >> x) & 1 for x in range(1 << n)))

    @staticmethod
    def from_anf(text: str, n: int | None = None) -> "BooleanFunction":
        """Parse algebraic normal form like 'x1*x2 + x3*x4 + 1'."""
        terms = []
        max_var = 0
        for raw_term in text.replace("-", "+").split("+"):
            raw_term = raw_term.strip()
            if not raw_term:
                continue
            mask = 0
            constant = True
            for factor in raw_term.split("*"):
                factor = factor.strip()
                if factor == "1":
                    continue
                m = re.fullmatch(r"x(\d+)", factor)
                if not m:
                    raise ValueError(f"bad ANF factor {factor!r}")
                i = int(m.group(1))
                if i < 1:
                    raise ValueError("ANF variables are numbered from x1")
                max_var = max(max_var, i)
                mask |= 1 << (i - 1)
                constant = False
            terms.append(mask if not constant else 0)
        if n is None:
            n = max(max_var, 1)
        elif max_var > n:
            raise ValueError(f"ANF uses x{max_var} but n = {n}")
        truth = []
        for x in range(1 << n):
            v = 0
            for mask in terms:
                if x & mask == mask:
                    v ^= 1
            truth.append(v)
        return BooleanFunction(n, tuple(truth))

    @staticmethod
    def from_support(n: int, points) -> "BooleanFunction":
        truth = [0] * (1 << n)
        for p in points:
            truth[index_of(p) if not isinstance(p, int) else p] = 1
        return BooleanFunction(n, tuple(truth))


@dataclass(frozen=True)
class WalshSpectrum:
    n: int
    values: tuple[int, ...]

    def value(self, g) -> int:
        return self.values[g if isinstance(g, int) else index_of(g)]


def wht(f: BooleanFunction) -> WalshSpectrum:
    """Fast Walsh-Hadamard transform of (-1)^f; in-place butterfly, O(n 2^n)."""
    a = [1 - 2 * b for b in f.truth]
    size = len(a)
    h = 1
    while h < size:
        for start in range(0, size, h * 2):
            for j in range(start, start + h):
                x, y = a[j], a[j + h]
                a[j], a[j + h] = x + y, x - y
        h *= 2
    return WalshSpectrum(f.n, tuple(a))


def is_bent(f: BooleanFunction) -> bool:
    """Bent iff n even and the Walsh spectrum is flat at 2^(n/2)."""
    if f.n % 2:
        return False
    target = 1 << (f.n // 2)
    return all(abs(v) == target for v in wht(f).values)


def dual(f: BooleanFunction) -> BooleanFunction:
    """The dual bent function read off the signs of the Walsh spectrum."""
    if not is_bent(f):
        raise NotBent(f"dual is defined only for bent functions, arity {f.n}")
    target = 1 << (f.n // 2)
    spectrum = wht(f)
    return BooleanFunction(f.n, tuple(0 if v == target else 1 for v in spectrum.values))


def maiorana_mcfarland(k: int, perm, aux: BooleanFunction | None = None) -> BooleanFunction:
    """The bent function f(x, y) = x . perm(y) + aux(y) on F_2^(2k).

    perm is a bijection of F_2^k given as a length-2^k sequence of integer
    images; aux is any Boolean function of arity k (default 0).  The input
    point is split little-endian: x = low k bits, y = high k bits.
    """
    size = 1 << k
    perm = [p if isinstance(p, int) else index_of(p) for p in perm]
    if sorted(perm) != list(range(size)):
        raise NotBijection(f"perm is not a bijection of F_2^{k}")
    if aux is not None and aux.n != k:
        raise ValueError(f"aux must have arity {k}")
    truth = []
    for z in range(1 << (2 * k)):
        x, y = z & (size - 1), z >> k
        v = bin(x & perm[y]).count("1") & 1
        if aux is not None:
            v ^= aux(y)
        truth.append(v)
    f = BooleanFunction(2 * k, tuple(truth))
    if not is_bent(f):
        raise InternalInconsistency("Maiorana-McFarland output failed the bent test")
    return f


def support(f: BooleanFunction) -> ConnectionSet:
    """The support of f as a connection set on Z_2^n.

    Needs f(0) = 0 (else the set would contain the identity) and a support
    that spans F_2^n (else the graph is disconnected); symmetry is automatic
    in characteristic 2.
    """
    if f(0):
        raise ZeroInSupport("f(0) = 1: support contains the identity")
    group = GroupSpec((2,) * f.n)
    points = [coords_of(x, f.n) for x in f.support_indices()]
    return validate_connection_set(group, points)


def odd_extension(s1, group: GroupSpec | None = None) -> ConnectionSet:
    """Lift a set S1 in F_2^(2m) to F_2^(2m+1) by gluing the complement.

    The new set is {(1, z) : z not in S1} union {(0, x) : x in S1}, with the
    fresh coordinate written first.  Always a valid connection set; whether
    the resulting graph mixes is a separate question (it does only for
    m = 1).
    """
    if isinstance(s1, ConnectionSet):
        group = s1.group
        members = set(s1.elements)
    else:
        if group is None:
            raise ValueError("odd_extension needs the ambient group for a raw set")
        members = {group.check_element(g) for g in s1}
    if set(group.factors) not in ({2}, set()):
        raise ValueError("odd_extension expects an elementary 2-group")
    if group.zero in members:
        raise ZeroInS1("S1 must not contain the identity")
    big = GroupSpec((2,) + group.factors)
    elements = [(1,) + z for z in group.elements() if z not in members]
    elements += [(0,) + x for x in members]
    return validate_connection_set(big, elements)


def cubelike_from_bent(f: BooleanFunction):
    """Connection set + certified mixing time from a bent function.

    Returns (set, time, report) where time = 2*pi / 2^(k+1) = pi / 2^k for
    arity 2k.  The theorem guarantees the verdict; it is still re-certified
    exactly on every call, and a failed certificate is an internal error.
    """
    if not is_bent(f):
        raise NotBent(f"cubelike construction requires a bent function, arity {f.n}")
    s = support(f)
    k = f.n // 2
    time = RationalTime(1, 1 << (k + 1))
    report = is_uniform_mixing(eigenvalues(s), time)
    if not report.verdict or report.mode != "exact":
        raise InternalInconsistency(
            f"bent support on {s.group} failed exact certification at {time}"
        )
    return s, time, report
