"""Which abelian groups carry a uniformly mixing integral Cayley graph, and
exhaustive per-group searches that verify the answer on the ground.

Classification: a finite abelian group admits an integral Cayley graph with
uniform mixing exactly when its exponent is 2, 3, or 4, i.e. the group is
one of Z2^d, Z3^d, Z4^d, or Z2^r x Z4^d.  The mixed family includes every
r >= 1: Z2 x Z4 itself admits, as the exhaustive search confirms.  Witnesses
are built from three atoms (the 2-vertex graph, the 4-cycle, the triangle)
glued by Cartesian products: 2-power atoms all mix at 2*pi/8, triangles at
2*pi/9, so products within a family share the time.  Every witness is
re-certified exactly.

Search: for a single group, enumerate the whole candidate space of
connection sets (unions of unit orbits in integral mode, arbitrary symmetric
zero-free sets otherwise), derive candidate times per set, and record the
certified hits.  Enumeration order is deterministic; running with workers
splits the mask range and merges chunks in order, so parallel and serial
results are identical.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from . import intpoly
from .arith import euler_phi
from .cyclo import CycInt, RationalTime, vector_is_zero
from .errors import GroupTooLarge, InternalInconsistency
from .groups import GroupSpec, orbits_under_units
from .mixing import MixReport, cartesian_product, is_uniform_mixing
from .spectrum import ConnectionSet, eigenvalues, validate_connection_set
from .timefinder import default_max_denominator

INTEGRAL_ORDER_CAP = 32
FLOAT_ORDER_CAP = 16
FLOAT_GRID_STEPS = 2048  # probe grid t = k*pi/1024, k = 1..2047
POOL_MIN_MASKS = 1 << 12  # below this a parallel scan is not worth the forks


@dataclass(frozen=True)
class ClassificationResult:
    group: GroupSpec
    admits: bool
    witness: ConnectionSet | None = None
    time: RationalTime | None = None
    report: MixReport | None = None

    @property
    def certified(self) -> bool:
        return self.report is not None and self.report.verdict and self.report.mode == "exact"


_ATOMS = {
    2: ((1,),),
    3: ((1,), (2,)),
    4: ((1,), (3,)),
}


def classify_group(group: GroupSpec) -> ClassificationResult:
    """Decide membership in the mixing families and certify a witness.

    Groups of exponent 2, 3, or 4 admit; everything else (including the
    trivial group) does not.  The witness composes one atom per cyclic
    factor and is certified exactly before being returned.
    """
    if group.exponent not in (2, 3, 4):
        return ClassificationResult(group=group, admits=False)
    witness = None
    for n in group.factors:
        atom = validate_connection_set(GroupSpec((n,)), _ATOMS[n])
        witness = atom if witness is None else cartesian_product(witness, atom)
    time = RationalTime(1, 9 if group.exponent == 3 else 8)
    report = is_uniform_mixing(eigenvalues(witness), time)
    if not report.verdict or report.mode != "exact":
        raise InternalInconsistency(
            f"classification witness for {group} failed exact certification at {time}"
        )
    return ClassificationResult(group=group, admits=True, witness=witness, time=time, report=report)


@dataclass(frozen=True)
class SearchHit:
    connection_set: ConnectionSet
    time: RationalTime | float
    certified: bool


@dataclass(frozen=True)
class SearchResult:
    group: GroupSpec
    integral_only: bool
    sets_examined: int
    hits: tuple[SearchHit, ...]

    @property
    def certified_hits(self) -> tuple[SearchHit, ...]:
        return tuple(h for h in self.hits if h.certified)


def _order_cap(requested: int | None, default: int) -> int:
    if requested is not None:
        return requested
    env = os.environ.get("MIXKIT_MAX_ORDER")
    if env:
        return int(env)
    return default


# -- integral-mode machinery -------------------------------------------------
#
# The per-group context is precomputed once and shared by every candidate
# mask; with fork-based workers the children inherit it read-only.


class _IntegralContext:
    def __init__(self, group: GroupSpec, max_n: int):
        self.group = group
        self.max_n = max_n
        els = group.elements()
        self.elements = els
        index = group.index
        n = group.order
        self.n = n
        self.add_index = [[index(group.add(a, b)) for b in els] for a in els]
        orbits = [o for o in orbits_under_units(group) if o.representative != group.zero]
        self.orbits = orbits
        e = group.exponent
        # integer eigenvalue vector contributed by each whole orbit
        self.orbit_lams: list[tuple[int, ...]] = []
        for o in orbits:
            lams = []
            for g in els:
                counts = [0] * e
                for s in o.members:
                    counts[group.character_exponent(g, s)] += 1
                v = CycInt(e, counts).as_int()
                if v is None:
                    raise InternalInconsistency(
                        f"orbit {o.representative} produced a non-integral character sum"
                    )
                lams.append(v)
            self.orbit_lams.append(tuple(lams))
        self.orbit_sizes = [len(o) for o in orbits]
        # subgroup generated by each single orbit, as index frozensets
        self.orbit_spans = [
            frozenset(index(x) for x in group.subgroup_generated([o.representative]))
            for o in orbits
        ]
        self.nonzero_indices = [index(g) for g in els if g != group.zero]

    def span_of_mask(self, mask: int, cache: dict[int, frozenset[int]]) -> frozenset[int]:
        if mask in cache:
            return cache[mask]
        low = mask & -mask
        low_span = self.orbit_spans[low.bit_length() - 1]
        rest = mask ^ low
        if rest == 0:
            span = low_span
        else:
            rest_span = self.span_of_mask(rest, cache)
            if low_span <= rest_span:
                span = rest_span
            else:
                add = self.add_index
                span = frozenset(add[a][b] for a in rest_span for b in low_span)
        cache[mask] = span
        return span

    def lam_of_mask(self, mask: int, cache: dict[int, tuple[int, ...]]) -> tuple[int, ...]:
        if mask in cache:
            return cache[mask]
        low = mask & -mask
        low_lam = self.orbit_lams[low.bit_length() - 1]
        rest = mask ^ low
        if rest == 0:
            lam = low_lam
        else:
            rest_lam = self.lam_of_mask(rest, cache)
            lam = tuple(a + b for a, b in zip(rest_lam, low_lam))
        cache[mask] = lam
        return lam

    def connection_set_for_mask(self, mask: int) -> ConnectionSet:
        elements = []
        for i, o in enumerate(self.orbits):
            if mask >> i & 1:
                elements.extend(o.members)
        return validate_connection_set(self.group, elements)


def _scan_integral_masks(ctx: _IntegralContext, start: int, stop: int):
    """Examine masks in [start, stop); returns (examined, raw hits).

    Raw hits are (mask, numerator, denominator) triples so they pickle
    cheaply across process boundaries.
    """
    span_cache: dict[int, frozenset[int]] = {}
    lam_cache: dict[int, tuple[int, ...]] = {}
    add = ctx.add_index
    n = ctx.n
    max_n = ctx.max_n
    full = n
    examined = 0
    hits: list[tuple[int, int, int]] = []
    for mask in range(start, stop):
        if len(ctx.span_of_mask(mask, span_cache)) != full:
            continue
        examined += 1
        lam = ctx.lam_of_mask(mask, lam_cache)
        # difference multisets for every nonzero shift, then the gcd of the
        # mirrored difference polynomials, with an early constant exit
        diff_counts: list[dict[int, int]] = []
        gcd_coeffs: list[int] = []
        for h_idx in ctx.nonzero_indices:
            row = add[h_idx]
            counts: dict[int, int] = {}
            for g_idx in range(n):
                u = lam[row[g_idx]] - lam[g_idx]
                counts[u] = counts.get(u, 0) + 1
            diff_counts.append(counts)
            if intpoly.degree(gcd_coeffs) != 0:
                d_h = max(counts)
                b_h = [0] * (2 * d_h + 1)
                for u, c in counts.items():
                    b_h[d_h + u] = c
                gcd_coeffs = intpoly.gcd(gcd_coeffs, b_h)
        if intpoly.degree(gcd_coeffs) < 1:
            continue
        # cyclotomic sweep, smallest denominators first
        residual = list(gcd_coeffs)
        denominators = []
        for m in range(1, max_n + 1):
            if euler_phi(m) > intpoly.degree(residual):
                continue
            phi_m = list(intpoly.cyclotomic(m))
            stripped = False
            while True:
                q, r = intpoly.divmod_monic(residual, phi_m)
                if r:
                    break
                residual = q
                stripped = True
                if intpoly.degree(residual) < 1:
                    break
            if stripped:
                denominators.append(m)
        for m in denominators:
            for r in range(1, m + 1):
                if math.gcd(r, m) != 1:
                    continue
                if all(
                    _counts_vanish(counts, r, m) for counts in diff_counts
                ):
                    hits.append((mask, r % m, m))
    return examined, hits


def _counts_vanish(counts: dict[int, int], r: int, m: int) -> bool:
    coeffs = [0] * m
    for u, c in counts.items():
        coeffs[(r * u) % m] += c
    return vector_is_zero(m, coeffs)


_WORKER_CONTEXT: _IntegralContext | None = None


def _worker_scan(bounds: tuple[int, int]):
    return _scan_integral_masks(_WORKER_CONTEXT, bounds[0], bounds[1])


def _scan_all_masks(ctx: _IntegralContext, total_masks: int, workers: int | None):
    if workers and workers > 1 and total_masks >= POOL_MIN_MASKS and os.name == "posix":
        import multiprocessing

        global _WORKER_CONTEXT
        _WORKER_CONTEXT = ctx
        try:
            chunk = max(1, (total_masks - 1) // (workers * 8) + 1)
            bounds = [
                (lo, min(lo + chunk, total_masks))
                for lo in range(1, total_masks, chunk)
            ]
            with multiprocessing.get_context("fork").Pool(workers) as pool:
                parts = pool.map(_worker_scan, bounds)
        finally:
            _WORKER_CONTEXT = None
        examined = sum(p[0] for p in parts)
        hits = [h for p in parts for h in p[1]]
        return examined, hits
    return _scan_integral_masks(ctx, 1, total_masks)


def exhaustive_search(
    group: GroupSpec,
    integral_only: bool = True,
    times=None,
    max_n: int | None = None,
    max_order: int | None = None,
    workers: int | None = None,
    tol: float = 1e-9,
) -> SearchResult:
    """Enumerate every candidate connection set and record certified hits.

    Integral mode enumerates unions of unit orbits and derives candidate
    times per set from the difference-polynomial gcd (or uses the explicit
    `times` list); every hit is certified exactly.  Non-integral mode
    enumerates all symmetric zero-free generating sets and probes a float
    time grid; its hits are flagged non-certified and deserve exact
    follow-up.  Candidate sets are scanned in a fixed order, so results are
    reproducible and independent of `workers`.
    """
    cap = _order_cap(max_order, INTEGRAL_ORDER_CAP if integral_only else FLOAT_ORDER_CAP)
    if group.order > cap:
        raise GroupTooLarge(f"|{group}| = {group.order} exceeds the cap {cap}")
    if integral_only:
        return _search_integral(group, times, max_n, workers)
    return _search_float(group, times, tol)


def _search_integral(group, times, max_n, workers) -> SearchResult:
    if max_n is None:
        max_n = default_max_denominator(group.order)
    ctx = _IntegralContext(group, max_n)
    k = len(ctx.orbits)
    total_masks = 1 << k
    if times is not None:
        examined, raw_hits = _scan_with_explicit_times(ctx, times)
    else:
        examined, raw_hits = _scan_all_masks(ctx, total_masks, workers)
    hits = []
    last_mask = -1
    s = table = None
    for mask, r, m in raw_hits:
        if mask != last_mask:
            s = ctx.connection_set_for_mask(mask)
            table = eigenvalues(s)
            last_mask = mask
        t = RationalTime(r, m)
        report = is_uniform_mixing(table, t, short_circuit=True)
        if not report.verdict or report.mode != "exact":
            raise InternalInconsistency(f"search hit {s} at {t} failed re-certification")
        hits.append(SearchHit(connection_set=s, time=t, certified=True))
    return SearchResult(
        group=group, integral_only=True, sets_examined=examined, hits=tuple(hits)
    )


def _scan_with_explicit_times(ctx: _IntegralContext, times):
    times = sorted(
        (RationalTime(t.numerator, t.denominator) for t in times),
        key=lambda t: (t.denominator, t.numerator),
    )
    span_cache: dict[int, frozenset[int]] = {}
    lam_cache: dict[int, tuple[int, ...]] = {}
    add = ctx.add_index
    n = ctx.n
    examined = 0
    hits = []
    for mask in range(1, 1 << len(ctx.orbits)):
        if len(ctx.span_of_mask(mask, span_cache)) != n:
            continue
        examined += 1
        lam = ctx.lam_of_mask(mask, lam_cache)
        diff_counts = []
        for h_idx in ctx.nonzero_indices:
            row = add[h_idx]
            counts: dict[int, int] = {}
            for g_idx in range(n):
                u = lam[row[g_idx]] - lam[g_idx]
                counts[u] = counts.get(u, 0) + 1
            diff_counts.append(counts)
        for t in times:
            if all(_counts_vanish(c, t.numerator, t.denominator) for c in diff_counts):
                hits.append((mask, t.numerator, t.denominator))
    return examined, hits


def _symmetric_atoms(group: GroupSpec):
    """Nonzero {x, -x} pairs (or involution singletons), sorted by min member."""
    atoms = []
    seen = set()
    for g in group.elements():
        if g == group.zero or g in seen:
            continue
        neg = group.negate(g)
        atom = (g,) if neg == g else (g, neg)
        seen.update(atom)
        atoms.append(tuple(sorted(atom)))
    atoms.sort(key=lambda a: a[0])
    return atoms


def _search_float(group, times, tol) -> SearchResult:
    import numpy as np

    atoms = _symmetric_atoms(group)
    els = group.elements()
    index = group.index
    n = group.order
    e = group.exponent
    add_index = np.array([[index(group.add(a, b)) for b in els] for a in els])
    # per-atom eigenvalue vectors (real by symmetry)
    atom_lams = []
    for atom in atoms:
        lam = np.zeros(n)
        for g_i, g in enumerate(els):
            lam[g_i] = sum(
                math.cos(2 * math.pi * group.character_exponent(g, s) / e) for s in atom
            )
        atom_lams.append(lam)
    if times is None:
        grid = np.arange(1, FLOAT_GRID_STEPS) * math.pi / 1024.0
    else:
        grid = np.array([t.to_float() if isinstance(t, RationalTime) else float(t) for t in times])
    examined = 0
    hits = []
    for mask in range(1, 1 << len(atoms)):
        span = group.subgroup_generated(
            [x for i in range(len(atoms)) if mask >> i & 1 for x in atoms[i]]
        )
        if len(span) != n:
            continue
        examined += 1
        lam = np.zeros(n)
        for i in range(len(atoms)):
            if mask >> i & 1:
                lam += atom_lams[i]
        diffs = lam[add_index] - lam[None, :]  # row h: lam_{g+h} - lam_g
        nonzero_rows = [index(g) for g in els if g != group.zero]
        d = diffs[nonzero_rows]
        corr = np.exp(1j * d[:, :, None] * grid[None, None, :]).sum(axis=1)
        flat = np.abs(corr).max(axis=0) < tol * n
        for k in np.flatnonzero(flat):
            elements = [x for i in range(len(atoms)) if mask >> i & 1 for x in atoms[i]]
            s = validate_connection_set(group, elements)
            hits.append(SearchHit(connection_set=s, time=float(grid[k]), certified=False))
    return SearchResult(
        group=group, integral_only=False, sets_examined=examined, hits=tuple(hits)
    )


# -- classification vs search, order by order --------------------------------


def integer_partitions(n: int):
    """Partitions of n as non-increasing tuples."""
    if n == 0:
        yield ()
        return
    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest
    yield from rec(n, n)


def abelian_groups_of_order(order: int) -> list[GroupSpec]:
    """One GroupSpec per isomorphism class, elementary divisor form."""
    from .arith import factorize

    options = []
    for p, e in factorize(order):
        options.append([tuple(p**part for part in parts) for parts in integer_partitions(e)])
    specs = [()]
    for opt in options:
        specs = [acc + choice for acc in specs for choice in opt]
    return sorted(
        (GroupSpec(tuple(sorted(s))) for s in specs), key=lambda g: g.factors
    )


def abelian_groups_up_to(order_cap: int) -> list[GroupSpec]:
    out = []
    for order in range(2, order_cap + 1):
        out.extend(abelian_groups_of_order(order))
    return out


@dataclass(frozen=True)
class VerifyRow:
    group: GroupSpec
    exponent: int
    predicted: bool
    found: bool
    witness: SearchHit | None

    @property
    def matches(self) -> bool:
        return self.predicted == self.found


@dataclass(frozen=True)
class VerifyReport:
    order_cap: int
    rows: tuple[VerifyRow, ...]

    @property
    def all_match(self) -> bool:
        return all(r.matches for r in self.rows)


def verify_classification(
    order_cap: int, workers: int | None = None, max_n: int | None = None
) -> VerifyReport:
    """Run the exhaustive integral search on every abelian group of order
    <= order_cap and compare the hit pattern against the classification."""
    if order_cap > INTEGRAL_ORDER_CAP:
        raise GroupTooLarge(f"order cap {order_cap} exceeds {INTEGRAL_ORDER_CAP}")
    rows = []
    for group in abelian_groups_up_to(order_cap):
        predicted = classify_group(group).admits
        result = exhaustive_search(
            group, integral_only=True, max_n=max_n, workers=workers
        )
        witness = result.hits[0] if result.hits else None
        rows.append(
            VerifyRow(
                group=group,
                exponent=group.exponent,
                predicted=predicted,
                found=bool(result.hits),
                witness=witness,
            )
        )
    return VerifyReport(order_cap=order_cap, rows=tuple(rows))
