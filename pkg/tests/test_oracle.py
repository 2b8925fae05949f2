import pytest

import bruteforce
from helpers import all_double2_deals
from lfdominoes.errors import CapacityError
from lfdominoes.oracle import Oracle, estimate_nodes, full_tree_spe
from lfdominoes.rules import (
    BiggestDoubleForced,
    Deal,
    StarterFreeChoice,
    apply_move,
    deal_random,
    initial_state,
    place,
    standard_set,
    terminal_outcome,
)


def test_example_value_and_line(example_deal):
    res = full_tree_spe(example_deal, StarterFreeChoice(1))
    assert res.value == bruteforce.value_to_player1(example_deal.hand1, example_deal.hand2) == 2
    assert res.principal.move_list()[0] == place(0, 0)
    end = res.principal.end_state()
    assert terminal_outcome(end).payoff_to_player1 == res.value


def test_example_opening_values(example_deal):
    assert bruteforce.opening_values(example_deal.hand1, example_deal.hand2) == {(0, 0): 2, (0, 1): 0, (2, 2): 2}
    oracle = Oracle()
    root = initial_state(example_deal)
    assert {m.tile: oracle.value(apply_move(root, m)) for m in (place(0, 0), place(0, 1), place(2, 2))} == {
        (0, 0): 2, (0, 1): 0, (2, 2): 2}


def test_gain_of_three_exists_off_equilibrium(example_deal):
    """A line worth +3 exists, but it needs player 2 to keep (1,2) in hand."""
    line = [place(0, 0), place(0, 2, 0), place(0, 1, 0), place(1, 1, 1), place(2, 2, 2)]
    s = initial_state(example_deal)
    for m in line:
        s = apply_move(s, m)
    assert terminal_outcome(s).payoff_to_player1 == 3
    assert s.hand_of(2) == ((1, 2),)


@pytest.mark.parametrize("deal", list(all_double2_deals()), ids=str)
@pytest.mark.parametrize("starter", [1, 2])
def test_double2_matches_bruteforce(deal, starter):
    assert full_tree_spe(deal, StarterFreeChoice(starter)).value == bruteforce.value_to_player1(
        deal.hand1, deal.hand2, starter)


def test_double3_matches_bruteforce():
    for seed in range(100):
        deal = deal_random(standard_set(3), 4, seed)
        assert full_tree_spe(deal).value == bruteforce.value_to_player1(deal.hand1, deal.hand2), seed


def test_forced_opening_value(example_deal):
    res = full_tree_spe(example_deal, BiggestDoubleForced())
    assert res.principal.move_list()[0] == place(2, 2)
    assert res.value == -bruteforce.negamax(
        tuple(example_deal.hand2), ((0, 0), (0, 1)), (2, 2), 0)


def test_locked_hand_loses():
    # (3,3) is forced; neither (1,1),(1,2) nor (0,0) can follow, so both pass
    deal = Deal(3, ((0, 0), (3, 3)), ((1, 1), (1, 2)))
    res = full_tree_spe(deal, BiggestDoubleForced())
    assert res.value == 5  # opponent pips 5 minus own pips 0
    assert [str(m) for m in res.principal.move_list()] == ["P 3-3@-", "pass", "pass"]


def test_capacity_guard(example_deal):
    root = initial_state(example_deal)
    assert estimate_nodes(root) == sum([3, 6, 9, 19, 21, 12])
    with pytest.raises(CapacityError) as info:
        full_tree_spe(example_deal, cap=50)
    assert info.value.cap == 50
    big = deal_random(standard_set(9), 20, 1)
    with pytest.raises(CapacityError):
        Oracle(cap=10_000).value(initial_state(big))
