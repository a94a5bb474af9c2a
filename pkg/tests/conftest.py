"""Shared test helpers: independent oracles and random distribution makers."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from padcrypt import MessageSpace


def kraft_sum(lengths) -> Fraction:
    return sum(Fraction(1, 2 ** n) for n in lengths)


def brute_force_optimal_average(probs) -> Fraction:
    """Minimum average length over all prefix-free length profiles.

    Independent of the Huffman implementation: enumerates every
    nondecreasing length multiset satisfying the Kraft inequality and pairs
    the largest probabilities with the shortest lengths.  Feasible for
    L <= 6 (codeword lengths never need to exceed L - 1).
    """
    L = len(probs)
    assert L >= 2
    ordered = sorted((Fraction(p) for p in probs), reverse=True)
    best = None
    for lengths in itertools.combinations_with_replacement(range(1, L), L):
        if kraft_sum(lengths) > 1:
            continue
        avg = sum(p * n for p, n in zip(ordered, lengths))
        if best is None or avg < best:
            best = avg
    assert best is not None
    return best


def random_rational_space(rng: random.Random, L: int,
                          max_weight: int = 20) -> MessageSpace:
    """L distinct messages with positive exact-rational probabilities."""
    weights = [rng.randint(1, max_weight) for _ in range(L)]
    total = sum(weights)
    messages = [bytes([i]) for i in range(L)]
    return MessageSpace(messages, [Fraction(w, total) for w in weights])


def random_float_space(rng: random.Random, L: int) -> MessageSpace:
    weights = [rng.random() + 0.01 for _ in range(L)]
    total = sum(weights)
    messages = [i.to_bytes(2, "big") for i in range(L)]
    return MessageSpace(messages, [w / total for w in weights])


@pytest.fixture
def seeded():
    return random.Random(0xC0DE)
