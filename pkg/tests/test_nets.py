"""Net partitions and their semisimple/unipotent codimension bounds."""

import pytest
from hypothesis import given, settings, strategies as st

from regorb._linalg import (
    fixed_space_dim,
    jordan_block_unipotent,
    kron,
    sym_power,
    unipotent_jordan_type,
    wedge_power,
)
from regorb.charmod import ModuleSpec, irreducible_character
from regorb.nets import (
    PsiNet,
    _chi_space_nonempty,
    _max_class_integer,
    _restricted_u_matrix,
    c_semisimple,
    c_unipotent,
    contribution_table,
    graph_fix_bound,
    psi_nets,
)
from regorb.rootsys import RankMismatch, Subsystem, Weight


def irr(l, coeffs, p):
    return irreducible_character(ModuleSpec(l, coeffs, p))


def sub(l, *indices):
    return Subsystem(l, indices)


def mixed(l):
    # highest weight with ones in the first and next-to-last positions
    coeffs = [0] * l
    coeffs[0] = 1
    coeffs[l - 2] = 1
    return tuple(coeffs)


def net_by_signature(nets, sig):
    found = [net for net in nets if net.signature() == sig]
    assert found, "no net with signature %s" % sig
    return found[0]


def row_by_signature(report, sig):
    found = [row for row in report.rows if row.signature == sig]
    assert len(found) == 1, "expected one row %s, got %d" % (sig, len(found))
    return found[0]


# --- Jordan machinery ----------------------------------------------------

def test_jordan_single_block():
    assert unipotent_jordan_type(jordan_block_unipotent(5, 7), 7) == (5,)


def test_sym_square_of_j2_is_j3():
    assert unipotent_jordan_type(sym_power(jordan_block_unipotent(2, 5), 2, 5), 5) == (3,)


def test_sym_cube_of_j2_mod_2_splits():
    assert unipotent_jordan_type(sym_power(jordan_block_unipotent(2, 2), 3, 2), 2) == (2, 2)


def test_tensor_j2_j2():
    j2 = jordan_block_unipotent(2, 3)
    assert unipotent_jordan_type(kron(j2, j2, 3), 3) == (3, 1)
    j2 = jordan_block_unipotent(2, 2)
    assert unipotent_jordan_type(kron(j2, j2, 2), 2) == (2, 2)


def test_tensor_j3_j3_mod_3():
    j3 = jordan_block_unipotent(3, 3)
    assert unipotent_jordan_type(kron(j3, j3, 3), 3) == (3, 3, 3)


def test_wedge_square_of_j4():
    assert unipotent_jordan_type(wedge_power(jordan_block_unipotent(4, 7), 2, 7), 7) == (5, 1)


def test_adjoint_matrix_dimensions_and_fixed_space():
    # rank 2 adjoint: 8-dimensional for p = 5, 7-dimensional for p = 3
    m5 = _restricted_u_matrix(2, (1, 1), 5)
    assert len(m5) == 8
    assert fixed_space_dim(m5, 5) == 2
    m3 = _restricted_u_matrix(2, (1, 1), 3)
    assert len(m3) == 7
    assert fixed_space_dim(m3, 3) == 3


def test_two_one_matrix_dimension():
    m = _restricted_u_matrix(2, (2, 1), 5)
    assert len(m) == 15


# --- net partitions ------------------------------------------------------

def test_mixed_module_alpha1_strings():
    nets = psi_nets(irr(5, mixed(5), 3), sub(5, 1))
    by_shape = {}
    for net in nets:
        by_shape[net.signature()] = by_shape.get(net.signature(), 0) + 1
    assert by_shape == {"m1": 16, "m1.m1": 18, "m1.m2.m1": 4, "m2.m2": 1}


def test_wedge_square_strings():
    nets = psi_nets(irr(4, (0, 1, 0, 0), 3), sub(4, 1))
    doubles = [net for net in nets if net.dimension == 2]
    singles = [net for net in nets if net.dimension == 1]
    assert len(doubles) == 3 and len(singles) == 4
    assert all(net.signature() == "m1.m1" for net in doubles)


def test_empty_subsystem_gives_singletons():
    char = irr(4, (0, 1, 0, 0), 3)
    nets = psi_nets(char, sub(4))
    assert len(nets) == 10
    assert all(net.dimension == 1 for net in nets)
    assert sum(net.dimension for net in nets) == char.dimension


def test_psi_nets_rank_mismatch():
    with pytest.raises(RankMismatch):
        psi_nets(irr(3, (1, 0, 0), 2), sub(4, 1))


@pytest.mark.parametrize(
    "l,coeffs,p,indices",
    [
        (2, (1, 1), 3, (1,)),
        (3, (1, 0, 1), 3, (1, 2)),
        (4, (1, 0, 0, 1), 5, (1, 3)),
        (4, (0, 1, 0, 0), 2, (1, 2, 3)),
        (3, (2, 0, 0), 5, (1, 2, 3)),
    ],
)
def test_psi_nets_partition_exactly(l, coeffs, p, indices):
    char = irr(l, coeffs, p)
    psi = sub(l, *indices)
    nets = psi_nets(char, psi)
    support = char.entries()
    seen = {}
    for net in nets:
        for w, m in net.members.items():
            assert w not in seen
            seen[w] = m
        # members differ from the highest by integer combinations on psi
        from regorb.rootsys import RootSystemA

        system = RootSystemA(l)
        for w in net.members:
            coords = system.to_simple_root_coords(net.highest - w)
            for j in range(l):
                if (j + 1) not in psi.indices:
                    assert coords[j] == 0
    assert seen == support
    assert sum(net.dimension for net in nets) == char.dimension


# --- semisimple bounds ---------------------------------------------------

def test_three_string_semisimple_values():
    nets = psi_nets(irr(5, mixed(5), 3), sub(5, 1))
    net = net_by_signature(nets, "m1.m2.m1")
    assert c_semisimple(net, 2) == 2
    assert c_semisimple(net, 3) == 2
    assert c_semisimple(net, "generic") == 2


def test_five_string_semisimple_values():
    nets = psi_nets(irr(3, (4, 0, 0), 5), sub(3, 1))
    net = net_by_signature(nets, "m1.m2.m3.m2.m1")
    assert c_semisimple(net, 2) == 2
    assert c_semisimple(net, 3) == 3
    assert c_semisimple(net, 5) == 4
    assert c_semisimple(net, "generic") == 4


def test_singleton_contributes_nothing():
    nets = psi_nets(irr(5, mixed(5), 3), sub(5, 1))
    net = net_by_signature(nets, "m1")
    assert c_semisimple(net, 2) == 0
    assert c_semisimple(net, "generic") == 0
    assert c_unipotent(net, 3) == 0


def test_a2_net_semisimple_cells():
    nets = psi_nets(irr(5, mixed(5), 3), sub(5, 1, 2))
    net = net_by_signature(nets, "2w1")
    assert net.dimension == 15
    assert c_semisimple(net, 3) == 10
    assert c_semisimple(net, "generic") == 10


def test_a2_vacuous_order_two():
    nets = psi_nets(irr(5, mixed(5), 3), sub(5, 1, 2))
    with pytest.raises(ValueError):
        c_semisimple(nets[0], 2)


def test_adjoint_net_small_center_prefers_r3():
    # with a two-dimensional zero weight space the r = 3 wraparound merges
    # three outer weights, beating the generic pattern
    nets = psi_nets(irr(4, mixed(4), 2), sub(4, 1, 2))
    net = net_by_signature(nets, "w1+w2")
    assert net.dimension == 8
    assert c_semisimple(net, 3) == 5
    assert c_semisimple(net, "generic") == 6


def test_max_class_integer_hexagon():
    hexagon = {(0, 0): 1, (1, 0): 1, (0, 1): 1, (2, 1): 1, (1, 2): 1, (2, 2): 1, (1, 1): 2}
    roots = [(1, 0), (0, 1), (1, 1)]
    assert _max_class_integer(hexagon, roots) == 2


def test_max_class_integer_avoids_wraparound():
    points = {(0, 0): 1, (1, 2): 1, (2, 1): 1}
    roots = [(1, 0), (0, 1), (1, 1)]
    assert _max_class_integer(points, roots) == 2


def test_chi_space_existence():
    assert _chi_space_nonempty((1,), 2)
    assert _chi_space_nonempty((1, 1), 2)
    assert not _chi_space_nonempty((2,), 2)
    assert not _chi_space_nonempty((3,), 2)
    assert not _chi_space_nonempty((3,), 3)
    assert _chi_space_nonempty((3,), 5)
    assert _chi_space_nonempty((2,), 3)


def test_generic_dominates_specific_primes():
    for l, coeffs, p, indices in [
        (5, mixed(5), 3, (1,)),
        (5, mixed(5), 3, (1, 2)),
        (5, mixed(5), 3, (1, 3)),
        (3, (4, 0, 0), 5, (1,)),
    ]:
        psi = sub(l, *indices)
        shape = tuple(len(f) for f in psi.factors)
        for net in psi_nets(irr(l, coeffs, p), psi):
            generic = c_semisimple(net, "generic")
            for r in (2, 3, 5, 7):
                if _chi_space_nonempty(shape, r):
                    assert generic >= c_semisimple(net, r)


def test_semisimple_totals_monotone_in_subsystem():
    cases = [
        (5, mixed(5), 3),
        (3, (4, 0, 0), 5),
        (4, (0, 1, 0, 0), 2),
    ]
    chains = [(), (1,), (1, 2), (1, 2, 3)]
    for l, coeffs, p in cases:
        char = irr(l, coeffs, p)
        for r in (2, 3, 5, "generic"):
            previous = None
            for indices in chains:
                psi = sub(l, *indices)
                shape = tuple(len(f) for f in psi.factors)
                if r != "generic" and not _chi_space_nonempty(shape, r):
                    continue
                total = sum(c_semisimple(net, r) for net in psi_nets(char, psi))
                if previous is not None:
                    assert total >= previous
                previous = total


# --- unipotent bounds ----------------------------------------------------

def test_three_string_unipotent_values():
    for p, expected in [(2, 1), (3, 2), (5, 2)]:
        nets = psi_nets(irr(5, mixed(5), p), sub(5, 1))
        net = net_by_signature(nets, "m1.m2.m1")
        assert c_unipotent(net, p) == expected


def test_natural_stack_unipotent():
    nets = psi_nets(irr(5, mixed(5), 3), sub(5, 1))
    net = net_by_signature(nets, "m2.m2")
    assert net.dimension == 8
    assert c_unipotent(net, 3) == 4


def test_a2_net_unipotent_cells():
    for l, p, expected in [(5, 3, 10), (5, 5, 8), (6, 5, 12)]:
        nets = psi_nets(irr(l, mixed(l), p), sub(l, 1, 2))
        net = net_by_signature(nets, "2w1")
        assert c_unipotent(net, p) == expected


def test_a2_adjoint_net_unipotent_cells():
    nets = psi_nets(irr(5, mixed(5), 3), sub(5, 1, 2))
    assert c_unipotent(net_by_signature(nets, "w1+w2"), 3) == 4
    nets = psi_nets(irr(5, mixed(5), 5), sub(5, 1, 2))
    assert c_unipotent(net_by_signature(nets, "w1+w2"), 5) == 6


def test_long_string_unipotent_j5():
    nets = psi_nets(irr(3, (4, 0, 0), 5), sub(3, 1))
    net = net_by_signature(nets, "m1.m2.m3.m2.m1")
    assert c_unipotent(net, 5) == 4


def test_four_string_unipotent_j4():
    nets = psi_nets(irr(3, (4, 0, 0), 5), sub(3, 1))
    net = net_by_signature(nets, "m2.m4.m4.m2")
    assert c_unipotent(net, 5) == 3


def test_unipotent_rejects_unsupported_subsystem():
    char = irr(5, (0, 0, 1, 0, 0), 2)
    nets = psi_nets(char, sub(5, 1, 2, 3, 4))
    with pytest.raises(ValueError):
        c_unipotent(nets[0], 2)
    nets = psi_nets(char, sub(5))
    with pytest.raises(ValueError):
        c_unipotent(nets[0], 2)


# --- contribution tables -------------------------------------------------

def test_string_table_totals_l5():
    char = irr(5, mixed(5), 3)
    report = contribution_table(char, sub(5, 1), primes_r=(2, 3), primes_p=(3,))
    assert report.total_semisimple(2) == 30
    assert report.total_semisimple(3) == 30
    assert report.total_semisimple("generic") == 30
    assert report.total_unipotent(3) == 30
    row = row_by_signature(report, "m1.m2.m1")
    assert row.count == 4 and row.c_s == (2, 2, 2) and row.c_u == (2,)
    row = row_by_signature(report, "m1.m1")
    assert row.count == 18 and row.c_s == (1, 1, 1)
    row = row_by_signature(report, "m2.m2")
    assert row.count == 1 and row.c_s == (4, 4, 4) and row.c_u == (4,)


def test_string_table_totals_characteristic_two():
    report = contribution_table(
        irr(5, mixed(5), 2), sub(5, 1), primes_r=(2,), primes_p=(2,)
    )
    assert report.total_semisimple(2) == 30
    assert report.total_unipotent(2) == 26
    report = contribution_table(
        irr(6, mixed(6), 2), sub(6, 1), primes_r=(2,), primes_p=(2,)
    )
    # epsilon kicks in: the inner orbit loses one multiplicity
    assert report.total_semisimple(2) == 44
    assert report.total_unipotent(2) == 39


def test_string_table_total_l6_p5():
    report = contribution_table(
        irr(6, mixed(6), 5), sub(6, 1), primes_r=(2, 3), primes_p=(5,)
    )
    assert report.total_unipotent(5) == 45
    assert report.total_semisimple(2) == 45
    assert report.total_semisimple("generic") == 45


def test_a2_table_l5_p3():
    char = irr(5, mixed(5), 3)
    report = contribution_table(char, sub(5, 1, 2), primes_r=(2, 3), primes_p=(3,))
    assert report.total_semisimple(2) is None
    assert report.total_semisimple(3) == 52
    assert report.total_unipotent(3) == 46
    expected = {
        "w1+w2": (3, (None, 6), (4,)),
        "2w1": (1, (None, 10), (10,)),
        "w2": (6, (None, 2), (2,)),
        "w1": (6, (None, 2), (2,)),
        "0": (3, (None, 0), (0,)),
    }
    for sig, (count, cs, cu) in expected.items():
        row = row_by_signature(report, sig)
        assert row.count == count
        assert row.c_s[:2] == cs
        assert row.c_u == cu


def test_a2_table_l6_p5():
    report = contribution_table(
        irr(6, mixed(6), 5), sub(6, 1, 2), primes_r=(3,), primes_p=(5,)
    )
    assert report.total_semisimple(3) == 80
    assert report.total_unipotent(5) == 80
    assert row_by_signature(report, "w1+w2").count == 4
    assert row_by_signature(report, "w2").count == 12
    assert row_by_signature(report, "0").count == 12


def test_sym4_table_l3_p5():
    char = irr(3, (4, 0, 0), 5)
    report = contribution_table(char, sub(3, 1), primes_r=(2, 3, 5), primes_p=(5,))
    assert report.total_semisimple(2) == 13
    assert report.total_semisimple(3) == 17
    assert report.total_semisimple(5) == 20
    assert report.total_semisimple("generic") == 20
    assert report.total_unipotent(5) == 20
    row = row_by_signature(report, "m3.m4.m3")
    assert row.count == 2 and row.c_s == (1, 2, 2, 2) and row.c_u == (2,)


def test_sym4_table_l2_p5():
    report = contribution_table(
        irr(2, (4, 0), 5), sub(2, 1), primes_r=(2, 3, 5), primes_p=(5,)
    )
    assert report.total_semisimple(2) == 6
    assert report.total_semisimple(3) == 8
    assert report.total_semisimple(5) == 10
    assert report.total_unipotent(5) == 10
    assert report.net_count == 5
    assert {row.signature for row in report.rows} == {
        "m1", "m1.m2.m3.m2.m1", "m2.m2", "m2.m4.m4.m2", "m3.m4.m3"
    }


def test_wedge5_table_any_r():
    char = irr(9, (0, 0, 0, 0, 1, 0, 0, 0, 0), 2)
    report = contribution_table(char, sub(9, 1), primes_r=(2, 3), primes_p=(2,))
    assert report.total_semisimple(2) == 70
    assert report.total_semisimple(3) == 70
    assert report.total_semisimple("generic") == 70
    assert report.total_unipotent(2) == 70
    row = row_by_signature(report, "m1.m1")
    assert row.count == 70
    assert row_by_signature(report, "m1").count == 112


def test_totals_match_rows():
    char = irr(5, mixed(5), 3)
    for indices in [(1,), (1, 2), (1, 3)]:
        report = contribution_table(char, sub(5, *indices))
        for col in range(len(report.semisimple_totals)):
            values = [row.c_s[col] for row in report.rows]
            if any(v is None for v in values):
                assert report.semisimple_totals[col] is None
            else:
                assert report.semisimple_totals[col] == sum(
                    row.count * row.c_s[col] for row in report.rows
                )
        for col in range(len(report.primes_p)):
            values = [row.c_u[col] for row in report.rows]
            if any(v is None for v in values):
                assert report.unipotent_totals[col] is None
            else:
                assert report.unipotent_totals[col] == sum(
                    row.count * row.c_u[col] for row in report.rows
                )
        assert report.total_dimension == char.dimension
        for row in report.rows:
            for v in row.c_s:
                if v is not None:
                    assert 0 <= v <= row.net_dimension
            for v in row.c_u:
                if v is not None:
                    assert 0 <= v <= row.net_dimension


def test_peeled_flag_present():
    report = contribution_table(irr(5, mixed(5), 3), sub(5, 1), primes_p=(3,))
    row = row_by_signature(report, "m1.m2.m1")
    assert "peeled" in row.flags


def test_indeterminate_net_flags_and_zero():
    # the rank-2 module with highest weight (2, 2) has no certified
    # irreducible character here, so peeling the full-subsystem net aborts
    char = irr(2, (2, 2), 5)
    assert "uncorrected" in char.flags
    report = contribution_table(char, sub(2, 1, 2), primes_r=(5,), primes_p=(5,))
    assert report.total_unipotent(5) == 0
    assert any("indeterminate:p5" in row.flags for row in report.rows)


def test_csv_rendering_golden():
    report = contribution_table(irr(4, (0, 1, 0, 0), 3), sub(4, 1))
    assert report.to_csv() == (
        "net_signature,multiplicity,c_s_r2,c_s_r3,c_s_generic,"
        "c_u_p2,c_u_p3,c_u_p5,flags\n"
        "m1.m1,3,1,1,1,1,1,1,\n"
        "m1,4,0,0,0,0,0,0,\n"
        "TOTAL,7,3,3,3,3,3,3,\n"
    )


def test_text_rendering_structure():
    report = contribution_table(irr(4, (0, 1, 0, 0), 3), sub(4, 1))
    lines = report.to_text().splitlines()
    assert lines[0].split() == [
        "net", "mult", "dim", "s:r2", "s:r3", "s:generic", "u:p2", "u:p3", "u:p5", "flags"
    ]
    assert lines[1].split() == ["m1.m1", "3", "2", "1", "1", "1", "1", "1", "1"]
    assert lines[-1].split() == ["total", "7", "10", "3", "3", "3", "3", "3", "3"]


def test_csv_blank_for_vacuous_column():
    report = contribution_table(irr(5, mixed(5), 3), sub(5, 1, 2), primes_p=(3,))
    lines = report.to_csv().splitlines()
    total = lines[-1].split(",")
    assert total[0] == "TOTAL"
    assert total[2] == ""          # no order-2 element misses an A2
    assert total[3] == "52"
    assert total[6] == "46"


# --- graph flip bound ----------------------------------------------------

def test_graph_fix_bound_values():
    char = irr(4, (0, 1, 1, 0), 5)
    assert graph_fix_bound(char) == 46
    char = irr(9, (0, 0, 0, 0, 1, 0, 0, 0, 0), 2)
    assert graph_fix_bound(char) == 142
    assert graph_fix_bound(irr(3, (0, 0, 0), 2)) == 1


def test_graph_fix_bound_requires_flip_closed():
    with pytest.raises(ValueError):
        graph_fix_bound(irr(2, (1, 0), 3))
    with pytest.raises(ValueError):
        graph_fix_bound(irr(4, (0, 1, 0, 0), 3))


# --- property checks -----------------------------------------------------

@given(st.sets(st.integers(1, 4), max_size=4))
@settings(max_examples=25, deadline=None)
def test_partition_and_bounds_random_subsystem(indices):
    char = irr(4, (1, 0, 0, 1), 3)
    psi = sub(4, *indices)
    nets = psi_nets(char, psi)
    assert sum(net.dimension for net in nets) == char.dimension
    shape = tuple(len(f) for f in psi.factors)
    for net in nets:
        g = c_semisimple(net, "generic")
        assert 0 <= g <= net.dimension
        if _chi_space_nonempty(shape, 3):
            v = c_semisimple(net, 3)
            assert 0 <= v <= g
