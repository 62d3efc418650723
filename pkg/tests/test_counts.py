"""Counting bounds: group orders, element-count bounds, partition data."""

import math
from fractions import Fraction
from itertools import combinations_with_replacement

import mpmath
import pytest

from regorb._linalg import rank_of, unipotent_jordan_type
from regorb.counts import (
    LOG_FACTOR,
    ClassFamily,
    PartitionDatum,
    QExpr,
    alpha_bound,
    bounds_csv,
    class_count_bound,
    field_auto_term,
    graph_auto_counts,
    group_order,
    involution_bounds,
    log_factor_bound,
    partition_class_data,
    qexpr,
    rank_count,
    subsystem_miss_bounds,
)


# --- small brute-force helpers over prime fields -------------------------

def gl_elements(n, q):
    mats = []
    cells = n * n
    for code in range(q ** cells):
        flat = []
        m = code
        for _ in range(cells):
            flat.append(m % q)
            m //= q
        rows = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        if rank_of(rows, q) == n:
            mats.append(rows)
    return mats


def pgl_canonical(m, q):
    flat = [x for row in m for x in row]
    lead = next(x for x in flat if x)
    inv = pow(lead, q - 2, q)
    return tuple(tuple((x * inv) % q for x in row) for row in m)


def pgl_elements(n, q):
    return sorted({pgl_canonical(m, q) for m in gl_elements(n, q)})


def mat_mul(a, b, q):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) % q for j in range(n))
        for i in range(n)
    )


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def projective_order(m, q, cap=120):
    power = m
    for k in range(1, cap + 1):
        if power == pgl_canonical(identity(len(m)), q):
            return k
        power = pgl_canonical(mat_mul(power, m, q), q)
    raise AssertionError("order cap exceeded")


# --- QExpr ---------------------------------------------------------------

def test_qexpr_merges_and_sorts():
    e = qexpr((2, 3), (1, 5), (1, 3))
    assert e.terms == ((Fraction(1), Fraction(5)), (Fraction(3), Fraction(3)))
    assert e.max_exponent() == 5
    assert e.evaluate(2) == 32 + 24


def test_qexpr_validation():
    with pytest.raises(ValueError):
        qexpr((1, Fraction(1, 4)))
    with pytest.raises(ValueError):
        qexpr((-1, 2))
    with pytest.raises(ValueError):
        QExpr(((1, 2),), tags=("nonsense",))


def test_qexpr_add_and_scale():
    a = qexpr((1, 2))
    b = qexpr((3, 1))
    assert (a + b).evaluate(3) == 9 + 9
    assert a.scaled(5).evaluate(2) == 20
    with pytest.raises(ValueError):
        a + qexpr((1, 1), tags=(LOG_FACTOR,))


def test_fractional_power_upper_bound():
    e = qexpr((1, Fraction(1, 2)))
    v = e.evaluate(2)
    assert v * v >= 2
    assert float(v) == pytest.approx(math.sqrt(2), abs=1e-9)
    e = qexpr((1, Fraction(5, 6)))
    assert float(e.evaluate(3)) == pytest.approx(3 ** (5 / 6), abs=1e-9)


def test_qexpr_monotone_in_q():
    exprs = [
        involution_bounds(3, 2)[1],
        subsystem_miss_bounds("A3", 4, 2)[1],
        field_auto_term(3, 4, 1, 16, 1),
    ]
    for e in exprs:
        values = [e.evaluate(q) for q in (2, 3, 4, 5, 7)]
        assert values == sorted(values)


def test_log_factor_bound():
    assert log_factor_bound(4) == Fraction(89, 64)
    assert log_factor_bound(2) >= Fraction(1)
    for q in (2, 3, 9, 64):
        assert float(log_factor_bound(q)) >= math.log(math.log2(q) + 2)


# --- group orders --------------------------------------------------------

def test_group_order_values():
    assert group_order("GL", 2, 5) == 480
    assert group_order("PGL", 4, 2) == 20160
    assert group_order("PSL", 2, 9) == 360
    assert group_order("PSL", 2, 4) == 60
    assert group_order("PSL", 3, 2) == 168
    assert group_order("SL", 2, 3) == 24
    with pytest.raises(ValueError):
        group_order("GU", 3, 2)
    with pytest.raises(ValueError):
        group_order("GL", 2, 6)


def test_group_order_matches_enumeration():
    assert len(gl_elements(2, 3)) == group_order("GL", 2, 3)
    assert len(pgl_elements(2, 5)) == group_order("PGL", 2, 5)
    assert len(pgl_elements(3, 2)) == group_order("PGL", 3, 2)


# --- involution and order-3 bounds ---------------------------------------

def test_involution_bound_exponents():
    i2, i3 = involution_bounds(3, 2)
    assert i2.max_exponent() == 5
    assert i3.max_exponent() == 6
    i2, i3 = involution_bounds(2, 5)
    assert i2.max_exponent() == 2
    assert i3.max_exponent() == Fraction(7, 3)
    assert involution_bounds(4, 2)[1].max_exponent() == 11


def test_involution_bounds_dominate_enumeration():
    for n, q, expected_i2 in [(2, 3, 9), (2, 5, 25), (3, 2, 21), (3, 3, 117)]:
        group = pgl_elements(n, q)
        ident = pgl_canonical(identity(n), q)
        i2_count = sum(
            1 for m in group if m != ident and pgl_canonical(mat_mul(m, m, q), q) == ident
        )
        assert i2_count == expected_i2
        i2, _ = involution_bounds(n, q)
        assert i2.evaluate(q) > i2_count


def test_order3_bound_dominates_enumeration():
    group = pgl_elements(3, 2)
    count = sum(1 for m in group if projective_order(m, 2, cap=21) == 3)
    assert count == 56
    assert involution_bounds(3, 2)[1].evaluate(2) > count


# --- field and graph automorphism terms ----------------------------------

def test_field_auto_term_exponents():
    e = field_auto_term(3, 4, 1, 16, 0)
    assert e.terms == ((Fraction(1), Fraction(25, 2)),)
    assert e.tags == (LOG_FACTOR,)
    assert e.notes == ()
    e = field_auto_term(3, 4, 1, 16, 1)
    assert e.max_exponent() == Fraction(29, 2)
    e = field_auto_term(2, 4, 2, 5, 1)
    assert e.max_exponent() == Fraction(28, 3)


def test_field_auto_term_flags_and_errors():
    assert "no-field-automorphisms" in field_auto_term(3, 7, 1, 16, 0).notes
    assert field_auto_term(3, 9, 1, 16, 0).notes == ()
    with pytest.raises(ValueError):
        field_auto_term(3, 4, 1, 8, 0)
    with pytest.raises(ValueError):
        field_auto_term(3, 4, 1, 16, 2)


def test_graph_auto_counts():
    graph, graph_field = graph_auto_counts(4, 3)
    assert graph.terms == ((Fraction(2), Fraction(5)),)
    assert graph_field.terms == ((Fraction(1), Fraction(15, 2)),)
    graph, graph_field = graph_auto_counts(3, 2)
    assert graph.max_exponent() == 2
    assert graph_field.max_exponent() == 4
    graph, graph_field = graph_auto_counts(10, 2)
    assert graph.max_exponent() == 44
    assert graph_field.max_exponent() == Fraction(99, 2)
    with pytest.raises(ValueError):
        graph_auto_counts(2, 3)


# --- subsystem miss bounds -----------------------------------------------

def test_a1_square_bounds():
    n_s, n_u = subsystem_miss_bounds("A1^2", 3, 3)
    assert n_s.terms == ((Fraction(1), Fraction(5)),)
    assert n_u.terms == n_s.terms


def test_a1_cube_bound():
    n_s, n_u = subsystem_miss_bounds("A1^3", 4, 2)
    assert n_s.terms == ((Fraction(2), Fraction(12)),)
    assert n_u is None


def test_a2_bounds():
    n_s, n_u = subsystem_miss_bounds("A2", 5, 2)
    assert n_s.terms == ((Fraction(2), Fraction(14)),)
    n_s, n_u = subsystem_miss_bounds("A2", 4, 2)
    assert n_s.terms == ((Fraction(4), Fraction(10)),)
    # for even n the expanded sum equals the closed geometric form
    assert n_u.evaluate(2) == Fraction(4 * (2 ** 10 - 1), 2 ** 2 - 1)
    assert n_u.evaluate(3) == Fraction(4 * (3 ** 10 - 1), 3 ** 2 - 1)


def test_a2_unipotent_expansion_below_closed_form():
    _, n_u = subsystem_miss_bounds("A2", 3, 4)
    closed = 4 * (mpmath.mpf(4) ** mpmath.mpf("6.5") - 1) / (16 - 1)
    assert mpmath.mpf(float(n_u.evaluate(4))) <= closed * (1 + mpmath.mpf("1e-12"))


def test_a3_bounds():
    n_s, n_u = subsystem_miss_bounds("A3", 4, 2)
    assert n_s.terms == (
        (Fraction(43, 3), Fraction(38, 3)),
        (Fraction(2), Fraction(35, 3)),
        (Fraction(4), Fraction(10)),
    )
    closed = 8 * (mpmath.mpf(2) ** (mpmath.mpf(85) / 6) - 1) / (
        (2 ** 2 - 1) * (mpmath.mpf(2) ** mpmath.mpf("1.5") - 1)
    )
    assert mpmath.mpf(float(n_u.evaluate(2))) <= closed * (1 + mpmath.mpf("1e-12"))
    with pytest.raises(ValueError):
        subsystem_miss_bounds("A3", 3, 2)
    with pytest.raises(ValueError):
        subsystem_miss_bounds("B2", 4, 2)


def test_unipotent_counts_dominate_enumeration():
    # transvections in PGL3(3): the only prime-order unipotent class with
    # all Jordan blocks of size at most 2.  The canonical coset rep may be
    # a scalar times the unipotent lift, so test both scalar multiples.
    group = pgl_elements(3, 3)
    ident = identity(3)
    transvections = 0
    for m in group:
        for c in (1, 2):
            u = tuple(tuple((c * x) % 3 for x in row) for row in m)
            if u != ident and mat_mul(mat_mul(u, u, 3), u, 3) == ident:
                if unipotent_jordan_type(u, 3) == (2, 1):
                    transvections += 1
    assert transvections == 104
    _, a1_u = subsystem_miss_bounds("A1^2", 3, 3)
    _, a2_u = subsystem_miss_bounds("A2", 3, 3)
    assert a1_u.evaluate(3) > 104
    assert a2_u.evaluate(3) > 104


def test_involutions_pgl42_jordan_split():
    group = pgl_elements(4, 2)
    ident = pgl_canonical(identity(4), 2)
    by_type = {}
    for m in group:
        if m != ident and mat_mul(m, m, 2) == ident:
            jt = unipotent_jordan_type(m, 2)
            by_type[jt] = by_type.get(jt, 0) + 1
    assert by_type == {(2, 1, 1): 105, (2, 2): 210}
    _, a2_u = subsystem_miss_bounds("A2", 4, 2)
    assert a2_u.evaluate(2) > 105 + 210


# --- alpha values --------------------------------------------------------

def test_alpha_bound_values():
    assert alpha_bound("generic", 5, 3) == 5
    assert alpha_bound("generic", 2, 4) == 2
    assert alpha_bound("graph-invol-n4", 4, 3) == 6
    assert alpha_bound("graphfield-invol-n3", 3, 4) == 4
    assert alpha_bound("invol-n2", 2, 7) == 3
    assert alpha_bound("field-invol-n2", 2, 4) == 4
    assert alpha_bound("diag-invol-n2-q5", 2, 5) == 4
    assert alpha_bound("psl29-order23", 2, 9) == 3
    assert alpha_bound("psl29-field-invol", 2, 9) == 5
    assert alpha_bound("psl42-graph", 4, 2) == 7


def test_alpha_bound_consistency_errors():
    with pytest.raises(ValueError):
        alpha_bound("graph-invol-n4", 4, 2)
    with pytest.raises(ValueError):
        alpha_bound("psl29-order23", 2, 7)
    with pytest.raises(ValueError):
        alpha_bound("invol-n2", 2, 9)
    with pytest.raises(ValueError):
        alpha_bound("made-up", 3, 3)


# --- class counts and rank counts ----------------------------------------

def test_class_count_bound_values():
    assert class_count_bound(10, 2).evaluate(2) == 1792
    assert class_count_bound(9, 2).evaluate(2) == 896
    assert class_count_bound(2, 7).evaluate(7) == 12


def test_class_count_dominates_enumeration():
    for n, q, expected in [(2, 3, 5), (2, 5, 7)]:
        group = pgl_elements(n, q)
        classes = set()
        seen = set()
        for m in group:
            if m in seen:
                continue
            orbit = {pgl_canonical(mat_mul(mat_mul(g, m, q), _inv(g, q), q), q) for g in group}
            seen |= orbit
            classes.add(min(orbit))
        assert len(classes) == expected
        assert class_count_bound(n, q).evaluate(q) > expected


def _inv(m, q):
    n = len(m)
    order = group_order("GL", n, q)
    power = identity(n)
    for _ in range(order - 1):
        power = mat_mul(power, m, q)
    return power


def test_rank_count_values():
    assert rank_count(3, 0, 2) == 1
    assert rank_count(2, 1, 2) == 9
    assert rank_count(3, 3, 2) == 168
    assert sum(rank_count(3, k, 3) for k in range(4)) == 3 ** 9
    assert sum(rank_count(4, k, 2) for k in range(5)) == 2 ** 16


def test_rank_count_matches_enumeration():
    counts = {}
    for code in range(2 ** 9):
        flat = [(code >> i) & 1 for i in range(9)]
        rows = tuple(tuple(flat[3 * i:3 * i + 3]) for i in range(3))
        counts[rank_of(rows, 2)] = counts.get(rank_of(rows, 2), 0) + 1
    for k in range(4):
        assert counts.get(k, 0) == rank_count(3, k, 2)


# --- partition class data ------------------------------------------------

BADPARTS = {
    (6, 1, 1, 1, 1, 1, 1): (90, 42),
    (5, 2, 1, 1, 1, 1, 1): (88, 41),
    (5, 1, 1, 1, 1, 1, 1, 1): (76, 36),
    (4, 3, 1, 1, 1, 1, 1): (86, 40),
    (4, 2, 2, 1, 1, 1, 1): (84, 38),
    (4, 2, 1, 1, 1, 1, 1, 1): (74, 34),
    (4, 1, 1, 1, 1, 1, 1, 1, 1): (60, 28),
    (3, 3, 2, 1, 1, 1, 1): (82, 38),
    (3, 3, 1, 1, 1, 1, 1, 1): (72, 34),
    (3, 2, 2, 2, 1, 1, 1): (78, 35),
    (3, 2, 2, 1, 1, 1, 1, 1): (70, 32),
    (3, 2, 1, 1, 1, 1, 1, 1, 1): (58, 27),
    (3, 1, 1, 1, 1, 1, 1, 1, 1, 1): (42, 20),
    (2, 2, 2, 2, 2, 1, 1): (70, 30),
    (2, 2, 2, 2, 1, 1, 1, 1): (64, 28),
    (2, 2, 2, 1, 1, 1, 1, 1, 1): (54, 24),
    (2, 2, 1, 1, 1, 1, 1, 1, 1, 1): (40, 18),
    (2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1): (22, 10),
}


def test_wedge2_jordan_table_rows():
    data = {d.partition: d for d in partition_class_data(12, "unipotent-7", "wedge2")}
    for part, (exponent, codim) in BADPARTS.items():
        datum = data[part]
        assert datum.class_exponent == exponent, part
        assert datum.codim_bound == codim, part


def test_root_element_row_generic_n():
    for n in (5, 8, 11):
        data = {d.partition: d for d in partition_class_data(n, "unipotent-2", "wedge2")}
        part = (2,) + (1,) * (n - 2)
        assert data[part].codim_bound == n - 2
        assert data[part].class_exponent == 2 * n - 2
        assert data[part].distinct_parts == 2


def test_unipotent_mode_respects_characteristic():
    parts = {d.partition for d in partition_class_data(4, "unipotent-2", "sym2")}
    assert parts == {(2, 2), (2, 1, 1)}
    parts = {d.partition for d in partition_class_data(4, "unipotent-3", "sym2")}
    assert parts == {(3, 1), (2, 2), (2, 1, 1)}
    parts = {d.partition for d in partition_class_data(3, "unipotent-5", "sym2")}
    assert parts == {(3,), (2, 1)}


def test_semisimple_eigenspace_bounds():
    data = {d.partition: d for d in partition_class_data(5, "semisimple", "sym2")}
    assert data[(4, 1)].eigenspace_bound == 12
    assert data[(4, 1)].codim_bound == 3
    assert data[(4, 1)].class_exponent == 8
    data = {d.partition: d for d in partition_class_data(6, "semisimple", "wedge3")}
    assert data[(3, 3)].eigenspace_bound == 18
    assert data[(3, 3)].codim_bound == 2
    data = {d.partition: d for d in partition_class_data(4, "semisimple", "wedge2")}
    assert data[(2, 2)].eigenspace_bound == 4
    assert data[(3, 1)].eigenspace_bound == 5


def test_unsupported_rule_mode_pairs():
    with pytest.raises(ValueError):
        partition_class_data(6, "unipotent-3", "wedge3")
    with pytest.raises(ValueError):
        partition_class_data(5, "semisimple", "hexagon")
    with pytest.raises(ValueError):
        partition_class_data(50, "semisimple", "sym2")


def test_tensor_twist_codim_equals_class_exponent():
    for d in partition_class_data(6, "unipotent-5", "tensor-twist"):
        assert 36 - d.eigenspace_bound == d.class_exponent
        assert d.codim_bound == d.class_exponent


def test_formal_eigenvalue_oracle_semisimple():
    # assign formally independent eigenvalues per part and measure the
    # largest eigenvalue multiplicity on each module
    def unit(i, m):
        return tuple(int(j == i) for j in range(m))

    for n in range(2, 6):
        for datum in partition_class_data(n, "semisimple", "sym2"):
            part = datum.partition
            m = len(part)
            vals = []
            for i, a in enumerate(part):
                vals.extend([unit(i, m)] * a)
            sym_counts = {}
            for x, y in combinations_with_replacement(range(n), 2):
                key = tuple(u + v for u, v in zip(vals[x], vals[y]))
                sym_counts[key] = sym_counts.get(key, 0) + 1
            assert max(sym_counts.values()) <= datum.eigenspace_bound
        for datum in partition_class_data(n, "semisimple", "wedge2"):
            part = datum.partition
            m = len(part)
            vals = []
            for i, a in enumerate(part):
                vals.extend([unit(i, m)] * a)
            counts = {}
            for x in range(n):
                for y in range(x + 1, n):
                    key = tuple(u + v for u, v in zip(vals[x], vals[y]))
                    counts[key] = counts.get(key, 0) + 1
            if counts:
                assert max(counts.values()) <= datum.eigenspace_bound


def test_order_two_sym2_eigenspaces_within_bound():
    # projective involutions have two eigenvalues; check the explicit
    # symmetric-square eigenspace dimensions against the bound
    n = 5
    data = {d.partition: d for d in partition_class_data(n, "semisimple", "sym2")}
    for a1 in range(3, n):
        a2 = n - a1
        cross = a1 * a2
        same = (a1 * a1 + a2 * a2 + a1 + a2) // 2
        bound = data[(a1, a2)].eigenspace_bound
        assert cross <= bound and same <= bound


# --- class families and CSV ----------------------------------------------

def test_class_family_prefactors():
    fam = ClassFamily("unipotent", qexpr((1, 3)), prefactor="inv-order-minus-one")
    assert fam.prefactor_value(3) == Fraction(1, 2)
    fam = ClassFamily("semisimple", qexpr((1, 3)), prefactor="order-over-order-minus-one")
    assert fam.prefactor_value(3) == Fraction(3, 2)
    fam = ClassFamily("other", qexpr((1, 3)))
    assert fam.prefactor_value(2) == 2


def test_class_family_fixed_bound():
    fam = ClassFamily("half", qexpr((1, 1)), fixed_slope=Fraction(1, 2))
    assert fam.fixed_bound(10) == 5
    fam = ClassFamily("affine", qexpr((1, 1)), fixed_const=Fraction(3), fixed_slope=Fraction(1, 2))
    assert fam.fixed_bound(10) == 8
    with pytest.raises(ValueError):
        ClassFamily("bad", qexpr((1, 1)), fixed_const=Fraction(1), fixed_slope=Fraction(1)).fixed_bound(4)


def test_bounds_csv_golden():
    i2, _ = involution_bounds(2, 3)
    text = bounds_csv([("inv2", i2), ("field", field_auto_term(3, 7, 1, 16, 0))])
    assert text == (
        "family_label,coefficient,exponent_numerator,exponent_denominator,notes\n"
        "inv2,2,2,1,\n"
        "inv2,2,1,1,\n"
        "field,1,25,2,log-prime-divisors;no-field-automorphisms\n"
    )
