"""
Brute-force reference computations, independent of the Garside machinery.

- ``rewrite_equal``: bounded bidirectional search over words using only the
  Artin relations and free insertion/cancellation.
- ``artin_action``: the (faithful) action of B_n on the free group F_n; equal
  braids iff equal actions.
- ``positive_closure`` and friends: all positive words of a positive braid,
  obtained by closing under the positive relations (the positive monoid
  embeds in B_n, so this set is exactly the braid).
"""

from __future__ import annotations

from collections import deque
from itertools import product

Word = tuple[int, ...]


def _sign(x: int) -> int:
    return 1 if x > 0 else -1


def exponent_sum(w: Word) -> int:
    return sum(_sign(x) for x in w)


def strand_permutation(n: int, w: Word) -> tuple[int, ...]:
    """Final position of every strand, tracked crossing by crossing (1-indexed)."""
    pos = list(range(1, n + 1))
    for x in w:
        i = abs(x)
        for s in range(n):
            if pos[s] == i:
                pos[s] = i + 1
            elif pos[s] == i + 1:
                pos[s] = i
    return tuple(pos)


def relator_moves(w: Word):
    """Words obtained from w by one braid-relation substitution."""
    L = len(w)
    for k in range(L - 1):
        a, b = w[k], w[k + 1]
        if abs(abs(a) - abs(b)) >= 2:
            yield w[:k] + (b, a) + w[k + 2:]
    for k in range(L - 2):
        a, b, c = w[k], w[k + 1], w[k + 2]
        if a == c and _sign(a) == _sign(b) and abs(abs(a) - abs(b)) == 1:
            yield w[:k] + (b, a, b) + w[k + 3:]


def free_moves(w: Word, n: int, max_len: int):
    for k in range(len(w) - 1):
        if w[k] == -w[k + 1]:
            yield w[:k] + w[k + 2:]
    if len(w) + 2 <= max_len:
        for k in range(len(w) + 1):
            for i in range(1, n):
                for s in (1, -1):
                    yield w[:k] + (s * i, -s * i) + w[k:]


def rewrite_equal(n: int, w1: Word, w2: Word, slack: int = 2, max_states: int = 20000):
    """True if a chain of relator/free moves links w1 and w2 within the bounds,
    False if a conjugation-free invariant separates them, None otherwise."""
    if exponent_sum(w1) != exponent_sum(w2):
        return False
    if strand_permutation(n, w1) != strand_permutation(n, w2):
        return False
    if w1 == w2:
        return True
    max_len = max(len(w1), len(w2)) + slack
    seen = [{w1: 0}, {w2: 0}]
    queues = [deque([w1]), deque([w2])]
    while queues[0] or queues[1]:
        side = 0 if (queues[0] and (len(seen[0]) <= len(seen[1]) or not queues[1])) else 1
        w = queues[side].popleft()
        for v in (*relator_moves(w), *free_moves(w, n, max_len)):
            if v in seen[1 - side]:
                return True
            if v not in seen[side]:
                seen[side][v] = 0
                queues[side].append(v)
        if len(seen[0]) + len(seen[1]) > max_states:
            return None
    return None


# ---------------------------------------------------------------------------
# Artin representation on F_n; generators x_1..x_n as letters ±1..±n.


def _reduce(word: list[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _letter_images(n: int, a: int) -> dict[int, Word]:
    i = abs(a)
    if a > 0:
        # x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i
        return {i: (i, i + 1, -i), i + 1: (i,)}
    return {i: (i + 1,), i + 1: (-(i + 1), i, i + 1)}


def artin_action(n: int, w: Word) -> tuple[Word, ...]:
    images = [(k,) for k in range(1, n + 1)]
    for a in w:
        sub = _letter_images(n, a)
        new = []
        for img in images:
            out: list[int] = []
            for x in img:
                g = sub.get(abs(x))
                if g is None:
                    out.append(x)
                elif x > 0:
                    out.extend(g)
                else:
                    out.extend(-y for y in reversed(g))
            new.append(_reduce(out))
        images = new
    return tuple(images)


# ---------------------------------------------------------------------------
# Positive words and divisibility


def positive_closure(w: Word) -> frozenset[Word]:
    """All positive words equal to the positive word w."""
    seen = {w}
    todo = [w]
    while todo:
        v = todo.pop()
        for u in relator_moves(v):
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return frozenset(seen)


def is_simple_word(n: int, w: Word) -> bool:
    """A positive word is a permutation braid iff no two strands cross twice."""
    at = list(range(n))  # at[position] = strand
    crossed = set()
    for x in w:
        i = x - 1
        s, t = at[i], at[i + 1]
        pair = (min(s, t), max(s, t))
        if pair in crossed:
            return False
        crossed.add(pair)
        at[i], at[i + 1] = t, s
    return True


def simple_braids(n: int) -> list[frozenset[Word]]:
    """Every permutation braid of B_n, each as the set of its positive words."""
    top = n * (n - 1) // 2
    classes: dict[frozenset[Word], None] = {frozenset({()}): None}
    seen_words: set[Word] = {()}
    for length in range(1, top + 1):
        for w in product(range(1, n), repeat=length):
            if w in seen_words or not is_simple_word(n, w):
                continue
            cl = positive_closure(w)
            seen_words |= cl
            classes[cl] = None
    return list(classes)


def brute_starting(cl: frozenset[Word]) -> set[int]:
    return {w[0] for w in cl if w}


def brute_finishing(cl: frozenset[Word]) -> set[int]:
    return {w[-1] for w in cl if w}


def brute_left_divisors(cl: frozenset[Word]) -> set[frozenset[Word]]:
    return {positive_closure(w[:k]) for w in cl for k in range(len(w) + 1)}


def brute_meet(a: frozenset[Word], b: frozenset[Word]) -> frozenset[Word]:
    common = brute_left_divisors(a) & brute_left_divisors(b)
    return max(common, key=lambda c: len(next(iter(c))))


def all_words(n: int, max_len: int, reduced: bool = True):
    """Every word (freely reduced if asked) over σ_1^{±1}..σ_{n-1}^{±1} of length <= max_len."""
    letters = [s * i for i in range(1, n) for s in (1, -1)]
    layer: list[Word] = [()]
    yield ()
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for x in letters:
                if reduced and w and w[-1] == -x:
                    continue
                v = w + (x,)
                nxt.append(v)
                yield v
        layer = nxt
