from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from oracles import csr_f, naive_cycles, psr_f, table_f, windows_distinct
from sumreg.errors import CapExceeded, JoinError, OrderError
from sumreg.fsr import (
    CycleRep, FeedbackSpec, Kind, State, adjacency_graph, companion, conjugate,
    cycle_lengths, cycle_of, decompose, evaluate, join_cycles, least_rotation,
    next_state, previous_state,
)

PSR3, CSR3, CSR7 = FeedbackSpec.psr(3), FeedbackSpec.csr(3), FeedbackSpec.csr(7)


def S(bits):
    return State.from_string(bits)


@pytest.mark.parametrize("f, s, bit", [
    (PSR3, "011", 0),
    (CSR3, "000", 1),
    (CSR7, "1111111", 0),
])
def test_evaluate(f, s, bit):
    assert evaluate(f, S(s)) == bit
    assert f(S(s)) == bit


@pytest.mark.parametrize("f, s, nxt", [
    (CSR3, "000", "001"),
    (CSR7, "0111111", "1111111"),
    (PSR3, "111", "111"),
])
def test_next_state(f, s, nxt):
    assert next_state(f, S(s)) == S(nxt)


def test_decimal_label_transition_64_to_128():
    s = State.from_decimal_label(64, 7)
    assert next_state(CSR7, s).decimal_label == 128


def test_order_mismatch():
    with pytest.raises(OrderError):
        evaluate(CSR7, S("000"))
    with pytest.raises(OrderError):
        next_state(PSR3, S("0000"))


def test_order_one_rejected():
    with pytest.raises(OrderError):
        FeedbackSpec.psr(1)
    with pytest.raises(OrderError):
        State(0, 1)


def test_conjugate_and_companion():
    assert conjugate(S("011")) == S("111")
    assert companion(S("1100001")) == S("1100000")
    assert companion(State.from_decimal_label(98, 7)).decimal_label == 97


@given(st.integers(2, 20).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
def test_involutions(nv):
    s = State(nv[1], nv[0])
    assert companion(companion(s)) == s
    assert conjugate(conjugate(s)) == s
    assert State.from_bits(s.bits) == s
    assert State.from_string(str(s)) == s


def test_kind_is_derived_from_table():
    assert FeedbackSpec.psr(5).kind is Kind.PSR
    assert FeedbackSpec.csr(5).kind is Kind.CSR
    assert FeedbackSpec(3, bytes(4)).kind is Kind.GENERAL
    assert FeedbackSpec(3, bytes([0, 1, 1, 0])).kind is Kind.PSR
    with pytest.raises(ValueError):
        FeedbackSpec(3, bytes(3))


@pytest.mark.parametrize("n", range(2, 11))
def test_next_state_is_a_bijection(n):
    for f in (FeedbackSpec.psr(n), FeedbackSpec.csr(n)):
        images = {f.step(v) for v in range(1 << n)}
        assert len(images) == 1 << n
        for v in range(1 << n):
            assert previous_state(f, next_state(f, State(v, n))).value == v


@pytest.mark.parametrize("f, lengths", [
    (PSR3, [1, 1, 2, 4]),
    (CSR3, [4, 4]),
])
def test_decompose_small(f, lengths):
    cycles = decompose(f)
    assert [c.length for c in cycles] == lengths


def test_decompose_csr7():
    cycles = decompose(CSR7)
    assert len(cycles) == 16 and {c.length for c in cycles} == {8}


@pytest.mark.parametrize("n", range(2, 11))
@pytest.mark.parametrize("which", ["psr", "csr"])
def test_decompose_matches_naive(n, which):
    f = getattr(FeedbackSpec, which)(n)
    naive = naive_cycles(n, psr_f if which == "psr" else csr_f)
    cycles = decompose(f)
    assert sorted(c.length for c in cycles) == sorted(len(c) for c in naive)
    assert sum(c.length for c in cycles) == 1 << n
    covered = [v for c in cycles for v in c.state_values()]
    assert sorted(covered) == list(range(1 << n))
    assert sorted(cycle_lengths(f)) == sorted(c.length for c in cycles)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9).flatmap(
    lambda n: st.lists(st.integers(0, 1), min_size=1 << (n - 1), max_size=1 << (n - 1))))
def test_decompose_random_register_partitions_states(table):
    n = len(table).bit_length()
    f = FeedbackSpec(n, bytes(table))
    cycles = decompose(f)
    naive = naive_cycles(n, table_f(table))
    assert Counter(c.length for c in cycles) == Counter(len(c) for c in naive)
    assert cycles == sorted(cycles, key=CycleRep.sort_key)
    for c in cycles:
        vals = c.state_values()
        assert len(set(vals)) == c.length
        assert [f.step(v) for v in vals] == vals[1:] + vals[:1]
        rots = [c.digits[i:] + c.digits[:i] for i in range(c.length)]
        assert c.digits == min(rots)


def test_cap_refused():
    with pytest.raises(CapExceeded):
        decompose(FeedbackSpec.psr(8), cap=7)


@pytest.mark.parametrize("f, s, digits", [
    (CSR7, "0000000", (0, 0, 0, 0, 0, 0, 0, 1)),
    (PSR3, "000", (0,)),
    (FeedbackSpec.csr(2), "11", (1,)),
])
def test_cycle_of(f, s, digits):
    c = cycle_of(f, S(s))
    assert c.digits == digits and c.length == len(digits)
    assert S(s) in c


def test_cycle_of_csr7_origin_lists_mc0():
    c = cycle_of(CSR7, S("0000000"))
    assert sorted(s.decimal_label for s in c.states()) == [1, 2, 3, 5, 9, 17, 33, 65]


@given(st.lists(st.integers(0, 1), min_size=1, max_size=40))
def test_least_rotation(digits):
    k = least_rotation(digits)
    assert digits[k:] + digits[:k] == min(digits[i:] + digits[:i] for i in range(len(digits)))


@pytest.mark.parametrize("f, vertices", [(PSR3, 4), (CSR7, 16), (FeedbackSpec.csr(2), 2)])
def test_adjacency_graph_connected(f, vertices):
    g = adjacency_graph(f)
    assert len(g.cycles) == vertices
    assert g.is_connected()


def test_adjacency_single_cycle():
    f = FeedbackSpec(2, bytes([1, 1]))   # 00 -> 01 -> 11 -> 10
    assert len(decompose(f)) == 1
    g = adjacency_graph(f)
    assert g.edges == {} and g.is_connected()


@pytest.mark.parametrize("n", range(2, 9))
def test_conjugate_and_companion_edges_coincide(n):
    for f in (FeedbackSpec.psr(n), FeedbackSpec.csr(n)):
        a = adjacency_graph(f, pair="conjugate")
        b = adjacency_graph(f, pair="companion")
        assert set(a.edges) == set(b.edges)


def test_adjacency_edge_labels_psr3():
    g = adjacency_graph(PSR3)
    # cycles: 000, 111, (01), (0011); conjugates 000/100 and 111/011 hit the 4-cycle
    assert g.edges == {(0, 3): frozenset({0}), (1, 3): frozenset({2}), (2, 3): frozenset({1})}


def test_join_csr7_at_98_97():
    run = cycle_of(CSR7, S("1110000"))
    other = cycle_of(CSR7, State.from_decimal_label(98, 7))
    p = State.from_decimal_label(98, 7)
    joined = join_cycles(CSR7, other, run, p)
    assert joined.length == 16
    decimals = [s.decimal_label for s in joined.states()]
    # the splice sends 113 to 98 instead of 97
    i = decimals.index(113)
    assert decimals[(i + 1) % 16] == 98


def test_join_two_fixed_points_by_conjugate():
    g = FeedbackSpec(2, bytes([0, 0]))   # f = x1: cycles {00}, {11}, {01, 10}
    c0, c1 = cycle_of(g, S("00")), cycle_of(g, S("11"))
    with pytest.raises(JoinError):
        join_cycles(g, c0, c1, S("00"), pair="conjugate")
    c01 = cycle_of(g, S("01"))
    joined = join_cycles(g, c0, c01, S("00"), pair="conjugate")
    assert joined.length == 3


def test_join_csr3_gives_de_bruijn():
    a, b = decompose(CSR3)
    for v in a.state_values():
        s = State(v, 3)
        if companion(s) in b:
            joined = join_cycles(CSR3, a, b, s)
            assert joined.length == 8
            assert windows_distinct(joined.digits, 3)


def test_join_rejects_unshared_pair():
    a, b = decompose(CSR3)
    s = State(a.state_values()[0], 3)
    with pytest.raises(JoinError):
        join_cycles(CSR3, a, a, s)
