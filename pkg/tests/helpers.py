import itertools
import random

from lfdominoes.rules import Deal, apply_move, deal_random, initial_state, legal_moves, standard_set


def random_state(seed):
    """A non-terminal position from a small random deal after a few random plies."""
    rng = random.Random(seed)
    max_pip = rng.choice([2, 3, 3, 4])
    k = rng.randint(2, min(5, len(standard_set(max_pip)) // 2))
    s = initial_state(deal_random(standard_set(max_pip), k, seed), rng.choice([1, 2]))
    for _ in range(rng.randint(0, 2 * k)):
        nxt = apply_move(s, rng.choice(legal_moves(s)))
        if nxt.is_terminal:
            break
        s = nxt
    return s


def all_double2_deals():
    tiles = sorted(standard_set(2))
    for hand1 in itertools.combinations(tiles, 3):
        hand2 = tuple(t for t in tiles if t not in hand1)
        yield Deal(2, hand1, hand2)
