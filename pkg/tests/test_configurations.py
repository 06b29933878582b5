
import pytest
from hypothesis import given, strategies as st

from exclusionpoly.configurations import (
    check_witness,
    config_energy,
    default_sizes,
    dominance_leq,
    enumerate_configurations,
    enumerate_lineups,
    is_generic_size,
    minimal_outside,
    occupation_vector,
    witness_order,
)
from exclusionpoly.errors import DomainError, StructuralError


def test_configuration_lists():
    assert enumerate_configurations(2, 3) == [(1, 2), (1, 3), (2, 3)]
    assert enumerate_configurations(3, 3) == [(1, 2, 3)]
    assert len(enumerate_configurations(3, 6)) == 20
    with pytest.raises(DomainError):
        enumerate_configurations(4, 3)


def test_dominance():
    for c in enumerate_configurations(3, 6):
        assert dominance_leq((1, 2, 3), c)
        assert dominance_leq(c, c)
    assert not dominance_leq((1, 2, 5), (1, 3, 4))
    assert not dominance_leq((1, 3, 4), (1, 2, 5))
    with pytest.raises(StructuralError):
        dominance_leq((1, 2), (1, 2, 3))


def test_energies_and_occupations():
    assert config_energy((1, 2), (1, 2, 3)) == 3
    assert config_energy((1, 2, 3), (0,) * 6) == 0
    assert config_energy((2, 3), (1, 2, 3)) == 5
    assert occupation_vector((1, 2, 3), 6) == (1, 1, 1, 0, 0, 0)
    assert occupation_vector((1, 3, 4), 6) == (1, 0, 1, 1, 0, 0)
    assert occupation_vector((2, 3), 3) == (0, 1, 1)
    with pytest.raises(StructuralError):
        occupation_vector((1, 7), 6)


@given(st.integers(1, 4), st.integers(0, 3), st.data())
def test_dominance_implies_energy_order(n, extra, data):
    d = n + extra
    a = tuple(sorted(data.draw(st.lists(st.integers(1, d), min_size=n, max_size=n, unique=True))))
    b = tuple(sorted(data.draw(st.lists(st.integers(1, d), min_size=n, max_size=n, unique=True))))
    h = sorted(data.draw(st.lists(st.integers(-5, 5), min_size=d, max_size=d)))
    if dominance_leq(a, b):
        assert config_energy(a, h) <= config_energy(b, h)


def test_lineups_at_three_six():
    seqs = [lu.sequence for lu in enumerate_lineups(3, 6, 2)]
    assert seqs == [((1, 2, 3), (1, 2, 4))]
    ends = {lu.sequence[-1] for lu in enumerate_lineups(3, 6, 3)}
    assert ends == {(1, 2, 5), (1, 3, 4)}
    four = {lu.sequence for lu in enumerate_lineups(3, 6, 4)}
    assert four == {
        ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 3, 4)),
        ((1, 2, 3), (1, 2, 4), (1, 3, 4), (1, 2, 5)),
        ((1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6)),
        ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)),
    }


def test_lineup_count_five():
    assert len(enumerate_lineups(4, 8, 5)) == 10


def test_sub_generic_case():
    lus = enumerate_lineups(1, 3, 2)
    assert [lu.sequence for lu in lus] == [((1,), (2,))]


def test_lineup_errors():
    with pytest.raises(DomainError):
        enumerate_lineups(2, 3, 4)
    with pytest.raises(DomainError):
        enumerate_lineups(2, 3, 0)


def test_default_sizes_are_generic_and_minimal():
    for r in range(1, 10):
        n, d = default_sizes(r)
        assert is_generic_size(n, d, r)
        assert n == max(1, r - 1) and d - n == max(1, r - 1)


def brute_force_lineups(n, d, r, den=6):
    # all orderings realized by a grid of non-decreasing h with a strict bottom r
    from itertools import combinations_with_replacement
    found = set()
    for h in combinations_with_replacement(range(den + 1), d):
        order = witness_order(h, n, d)
        es = [config_energy(c, h) for c in order[: r + 1]]
        if all(a < b for a, b in zip(es, es[1:])):
            found.add(tuple(order[:r]))
    return found


@pytest.mark.parametrize("n,d,r", [(2, 4, 3), (2, 4, 4), (2, 5, 4), (3, 5, 3), (1, 4, 3)])
def test_lineups_contain_every_grid_realizable_order(n, d, r):
    ours = {lu.sequence for lu in enumerate_lineups(n, d, r)}
    assert brute_force_lineups(n, d, r) <= ours


@pytest.mark.parametrize("n,d,r", [(2, 4, 4), (3, 6, 4), (2, 5, 5), (4, 8, 5)])
def test_witnesses_realize_their_lineups(n, d, r):
    for lu in enumerate_lineups(n, d, r):
        assert check_witness(lu, n, d)
        for k in range(1, r):
            assert lu.sequence[k] in minimal_outside(lu.sequence[:k], d)


def test_parallel_enumeration_matches(monkeypatch):
    serial = enumerate_lineups(4, 8, 5, workers=1)
    parallel = enumerate_lineups(4, 8, 5, workers=2)
    assert [lu.sequence for lu in serial] == [lu.sequence for lu in parallel]
    assert [lu.witness_h for lu in serial] == [lu.witness_h for lu in parallel]
