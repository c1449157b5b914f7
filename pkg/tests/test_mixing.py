"""Mixing verdicts: transfer entries, correlations, criteria, products.

The independent oracle here builds the adjacency matrix explicitly and
exponentiates it through a numpy eigendecomposition, with no use of the
character machinery under test.
"""

import cmath
import math

import numpy as np
import pytest

from mixkit.cyclo import CycInt, RationalTime
from mixkit.errors import (
    DivisibilityPreconditionFailed,
    NotOddPGroup,
    NotTwoGroup,
)
from mixkit.groups import parse_group
from mixkit.mixing import (
    cartesian_product,
    correlation,
    difference_balanced_check,
    hadamard_check,
    is_uniform_mixing,
    transfer_entry,
    transfer_matrix_flat,
    two_group_criterion,
)
from mixkit.spectrum import connection_set_from_text, eigenvalues, validate_connection_set


def cayley(group_text, elements):
    g = parse_group(group_text)
    return validate_connection_set(g, elements)


K2 = lambda: cayley("Z2", [(1,)])
C4 = lambda: cayley("Z4", [(1,), (3,)])
K3 = lambda: cayley("Z3", [(1,), (2,)])
Z2Z4 = lambda: cayley("Z2xZ4", [(1, 0), (1, 1), (1, 3), (0, 2)])


def adjacency_matrix(s):
    g = s.group
    els = g.elements()
    n = g.order
    a = np.zeros((n, n))
    members = set(s.elements)
    for i, u in enumerate(els):
        for j, v in enumerate(els):
            if g.sub(u, v) in members:
                a[i, j] = 1.0
    return a


def walk_operator_oracle(s, t):
    """exp(i t A) via numpy eigendecomposition of the adjacency matrix."""
    a = adjacency_matrix(s)
    w, vecs = np.linalg.eigh(a)
    return (vecs * np.exp(1j * t * w)) @ vecs.conj().T


def test_transfer_entry_matches_matrix_exponential():
    for s in (K2(), C4(), K3(), Z2Z4(), cayley("Z5", [(1,), (4,)])):
        table = eigenvalues(s)
        g = s.group
        els = g.elements()
        for t in (0.3, 1.7, math.pi / 4):
            h_oracle = walk_operator_oracle(s, t)
            for i, u in enumerate(els):
                for j, v in enumerate(els):
                    entry = transfer_entry(table, u, v, t)
                    assert entry.mode == "float"
                    assert cmath.isclose(entry.value, h_oracle[i, j], abs_tol=1e-9)


def test_transfer_entry_exact_mode():
    table = eigenvalues(K2())
    entry = transfer_entry(table, (0,), (1,), RationalTime(1, 8))
    assert entry.mode == "exact"
    assert entry.scale == 2
    # 2*H(pi/4)_{01} = e^{i pi/4} - e^{-i pi/4} = i sqrt(2)
    assert cmath.isclose(entry.numerator.to_complex(), 1j * math.sqrt(2), abs_tol=1e-12)
    # |2H|^2 = 2 exactly
    assert entry.numerator.modulus_squared() == 2


def test_transfer_entry_unitarity_rows():
    for s in (C4(), Z2Z4()):
        table = eigenvalues(s)
        g = s.group
        for t in (0.37, RationalTime(1, 8)):
            row = [transfer_entry(table, u, g.zero, t).value for u in g.elements()]
            assert math.isclose(sum(abs(z) ** 2 for z in row), 1.0, abs_tol=1e-10)


def test_correlation_zero_shift_gives_order():
    table = eigenvalues(C4())
    r = correlation(table, (0,), RationalTime(1, 8))
    assert isinstance(r, CycInt)
    assert r == 4


def test_correlation_exact_vs_float():
    for s in (K2(), C4(), K3(), Z2Z4()):
        table = eigenvalues(s)
        for t in (RationalTime(1, 8), RationalTime(1, 9), RationalTime(3, 5)):
            for h in s.group.elements():
                exact = correlation(table, h, t)
                approx = correlation(table, h, t.to_float())
                assert cmath.isclose(exact.to_complex(), approx, abs_tol=1e-9)


def test_k2_mixes_at_quarter_period():
    table = eigenvalues(K2())
    report = is_uniform_mixing(table, RationalTime(1, 8))
    assert report.verdict and report.mode == "exact"
    assert report.failing_h is None
    assert list(report.evidence) == [(1,)]
    assert report.evidence[(1,)].is_zero()
    # flatness agrees
    assert transfer_matrix_flat(table, math.pi / 4)


def test_k2_fails_at_other_times():
    table = eigenvalues(K2())
    for t in (RationalTime(1, 12), RationalTime(1, 3), RationalTime(0, 1)):
        report = is_uniform_mixing(table, t)
        assert not report.verdict
        assert report.failing_h == (1,)


def test_c4_mixes_at_quarter_period():
    table = eigenvalues(C4())
    report = is_uniform_mixing(table, RationalTime(1, 8))
    assert report.verdict and report.mode == "exact"
    for t in (RationalTime(1, 4), RationalTime(1, 16), RationalTime(2, 9)):
        assert not is_uniform_mixing(table, t).verdict


def test_k3_mixes_at_ninth_period():
    table = eigenvalues(K3())
    for r in (1, 2, 4):
        assert is_uniform_mixing(table, RationalTime(r, 9)).verdict
    assert not is_uniform_mixing(table, RationalTime(3, 9)).verdict
    assert not is_uniform_mixing(table, RationalTime(1, 8)).verdict


def test_z2xz4_mixes_at_quarter_period():
    table = eigenvalues(Z2Z4())
    report = is_uniform_mixing(table, RationalTime(1, 8))
    assert report.verdict and report.mode == "exact"
    assert len(report.evidence) == 7
    assert all(v.is_zero() for v in report.evidence.values())


def test_float_mode_is_labeled():
    table = eigenvalues(Z2Z4())
    report = is_uniform_mixing(table, math.pi / 4)
    assert report.mode == "float"
    assert report.verdict
    assert report.tolerance is not None
    # irrational spectrum forces float mode even at rational times
    table5 = eigenvalues(cayley("Z5", [(1,), (4,)]))
    assert is_uniform_mixing(table5, RationalTime(1, 8)).mode == "float"


def test_short_circuit_stops_early():
    table = eigenvalues(Z2Z4())
    full = is_uniform_mixing(table, RationalTime(1, 4))
    short = is_uniform_mixing(table, RationalTime(1, 4), short_circuit=True)
    assert not full.verdict and not short.verdict
    assert full.failing_h == short.failing_h
    assert len(full.evidence) == 7
    assert len(short.evidence) <= len(full.evidence)


def test_mix_report_json_shape():
    table = eigenvalues(K2())
    doc = is_uniform_mixing(table, RationalTime(1, 8)).to_json_dict()
    assert doc["verdict"] is True
    assert doc["mode"] == "exact"
    assert doc["time"] == {"r": 1, "N": 8}
    assert doc["failing_h"] is None
    assert doc["evidence"][0]["h"] == [1]
    assert doc["evidence"][0]["value"]["level"] == 8
    float_doc = is_uniform_mixing(table, 0.5).to_json_dict()
    assert float_doc["mode"] == "float"
    assert "float" in float_doc["time"]
    assert "re" in float_doc["evidence"][0]


def test_hadamard_check_agrees():
    for s in (K2(), C4(), K3(), Z2Z4()):
        table = eigenvalues(s)
        expected = is_uniform_mixing(table, RationalTime(1, 8)).verdict
        assert hadamard_check(table, RationalTime(1, 8)) == expected
        assert hadamard_check(table, RationalTime(1, 5)) is False
        assert hadamard_check(table, 0.77) is False
    table = eigenvalues(C4())
    assert hadamard_check(table, math.pi / 4) is True


def test_two_group_criterion_k2():
    counts = two_group_criterion(eigenvalues(K2()))
    assert counts.nu == 1
    assert counts.per_shift[(1,)] == (2, 0, 0)
    assert counts.verdict
    assert counts.time == RationalTime(1, 8)


def test_two_group_criterion_c4():
    counts = two_group_criterion(eigenvalues(C4()))
    assert counts.nu == 1
    assert counts.per_shift[(1,)] == (4, 0, 0)
    assert counts.per_shift[(2,)] == (0, 2, 2)
    assert counts.per_shift[(3,)] == (4, 0, 0)
    assert counts.verdict


def test_two_group_criterion_agrees_with_exact_mixing():
    sets = [
        K2(),
        C4(),
        Z2Z4(),
        cayley("Z2^2", [(0, 1), (1, 0)]),
        cayley("Z4", [(1,), (2,), (3,)]),
        cayley("Z8", [(1,), (3,), (5,), (7,)]),
        cayley("Z2^3", [(1, 0, 0), (1, 0, 1), (1, 1, 0), (0, 1, 1)]),
        cayley("Z2^3", [(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
    ]
    for s in sets:
        table = eigenvalues(s)
        counts = two_group_criterion(table)
        assert counts.verdict == is_uniform_mixing(table, counts.time).verdict, s


def test_two_group_criterion_wrong_group():
    with pytest.raises(NotTwoGroup):
        two_group_criterion(eigenvalues(K3()))
    with pytest.raises(NotTwoGroup):
        two_group_criterion(eigenvalues(cayley("Z6", [(1,), (5,)])))


def test_difference_balanced_k3():
    assert difference_balanced_check(eigenvalues(K3())) is True
    assert difference_balanced_check(eigenvalues(K3()), e_prime=2) is True


def test_difference_balanced_z9_unit_orbit():
    z9 = parse_group("Z9")
    table = eigenvalues(connection_set_from_text(z9, "orbits: 1"))
    assert difference_balanced_check(table, e_prime=2) is False


def test_difference_balanced_precondition():
    # K_3 differences are multiples of 3 but not 9, so e'=3 must fail the
    # divisibility precondition
    with pytest.raises(DivisibilityPreconditionFailed):
        difference_balanced_check(eigenvalues(K3()), e_prime=3)
    with pytest.raises(NotOddPGroup):
        difference_balanced_check(eigenvalues(K2()))


def test_difference_balanced_matches_exact_mixing():
    z9 = parse_group("Z9")
    z3z3 = parse_group("Z3^2")
    candidates = [
        eigenvalues(K3()),
        eigenvalues(connection_set_from_text(z9, "orbits: 1")),
        eigenvalues(connection_set_from_text(z9, "orbits: 1; 3")),
        eigenvalues(connection_set_from_text(z3z3, "orbits: (0,1); (1,0)")),
        eigenvalues(connection_set_from_text(z3z3, "orbits: (0,1); (1,0); (1,1)")),
    ]
    for table in candidates:
        e = 2 if table.group.order == 9 else 1
        try:
            balanced = difference_balanced_check(table, e_prime=e + 1)
        except DivisibilityPreconditionFailed:
            continue
        mixed = is_uniform_mixing(table, RationalTime(1, 3 ** (e + 1))).verdict
        assert balanced == mixed, table.connection_set


def test_cartesian_product_spectra_add():
    prod = cartesian_product(K2(), K2())
    assert prod.group.factors == (2, 2)
    assert sorted(prod.elements) == [(0, 1), (1, 0)]
    t = eigenvalues(prod)
    assert sorted(t.int_values) == [-2, 0, 0, 2]
    t1 = eigenvalues(K2())
    for g in prod.group.elements():
        assert t.int_value(g) == t1.int_value((g[0],)) + t1.int_value((g[1],))


def test_cartesian_product_mixing_inherits():
    prod = cartesian_product(K2(), C4())
    table = eigenvalues(prod)
    assert is_uniform_mixing(table, RationalTime(1, 8)).verdict
    prod33 = cartesian_product(K3(), K3())
    assert is_uniform_mixing(eigenvalues(prod33), RationalTime(1, 9)).verdict


def test_cartesian_identity():
    from mixkit.groups import GroupSpec
    from mixkit.spectrum import ConnectionSet

    trivial = ConnectionSet(group=GroupSpec(()), elements=())
    s = C4()
    assert cartesian_product(s, trivial) == s
    assert cartesian_product(trivial, s) == s


def test_hypercube_mixes_at_quarter_period():
    # Q_d for d = 1..4 with the standard basis
    for d in range(1, 5):
        g = parse_group(f"Z2^{d}")
        basis = [tuple(1 if i == j else 0 for j in range(d)) for i in range(d)]
        table = eigenvalues(validate_connection_set(g, basis))
        assert is_uniform_mixing(table, RationalTime(1, 8)).verdict
