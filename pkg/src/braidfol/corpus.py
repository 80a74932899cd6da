"""Random and exhaustive word generators for property runs."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .braid_core import BraidWord, genus, is_knot, is_standard_fast, primality_precheck, standardize


def random_word(rng: random.Random, n: int, length: int) -> BraidWord:
    return BraidWord(n, tuple(rng.randint(1, n - 1) for _ in range(length)))


def _covering_word(rng: random.Random, n: int, length: int) -> BraidWord:
    """Random word using every generator at least twice when the length allows it."""
    base = [g for g in range(1, n) for _ in range(2)] if length >= 2 * (n - 1) else []
    letters = base + [rng.randint(1, n - 1) for _ in range(length - len(base))]
    rng.shuffle(letters)
    return BraidWord(n, tuple(letters))


def random_prime_knot(
    rng: random.Random, n: int, length: int, min_genus: int = 2, tries: int = 2000
) -> BraidWord | None:
    """A standardized word of the given length whose closure is a knot passing the primality precheck."""
    for _ in range(tries):
        b = _covering_word(rng, n, length)
        if not is_knot(b) or genus(b) < min_genus:
            continue
        if not primality_precheck(b).passes:
            continue  # sampling filter only; the standardized word is checked again
        w = standardize(b)
        if primality_precheck(w).passes:
            return w
    return None


def random_corpus(seed: int, count: int, strands: tuple[int, int], lengths: tuple[int, int]) -> list[BraidWord]:
    """Reproducible sample; strand count and length are drawn per word, length matching knot parity."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(*strands)
        length = rng.randint(max(lengths[0], 2 * (n - 1)), lengths[1])
        if (length - n + 1) % 2:
            length += 1 if length < lengths[1] else -1
        w = random_prime_knot(rng, n, length)
        if w is not None:
            out.append(w)
    return out


def _canonical_rotation(letters: tuple[int, ...]) -> tuple[int, ...]:
    return min(letters[k:] + letters[:k] for k in range(len(letters)))


def standardized_prime_words(n: int, max_length: int) -> Iterator[BraidWord]:
    """Every standardized word passing the precheck with a knot closure, one per cyclic class."""
    for length in range(n - 1, max_length + 1):
        if (length - n + 1) % 2:
            continue
        for letters in itertools.product(range(1, n), repeat=length):
            if letters != _canonical_rotation(letters):
                continue
            b = BraidWord(n, letters)
            if not is_knot(b) or not is_standard_fast(b):
                continue
            if primality_precheck(b).passes:
                yield b
