"""Cycling, decycling and super summit sets."""

from __future__ import annotations

from dataclasses import dataclass, field

from .braid import (
    BraidWord,
    CanonicalFactor,
    NormalForm,
    _Builder,
    all_factors,
    conjugate,
    normalize,
    tau,
)

DEFAULT_CAP = 10_000


def cycling(a: NormalForm) -> tuple[NormalForm, BraidWord]:
    """∂₊(a) = Δ^k W_2 ⋯ W_s τ^k(W_1), returned with a conjugator g, g⁻¹ a g = ∂₊(a).

    Braids of canonical length ≤ 1 are fixed points (witness ε).
    """
    if a.length <= 1:
        return a, BraidWord(a.n)
    first = tau(a.factors[0], a.inf)
    out = _Builder(a.n, a.inf, (f.perm for f in a.factors[1:]))
    out.append(first.perm)
    return out.result(), first.word()


def decycling(a: NormalForm) -> tuple[NormalForm, BraidWord]:
    """∂₋(a) = Δ^k τ^k(W_s) W_1 ⋯ W_{s-1}, returned with a conjugator (W_s⁻¹)."""
    if a.length <= 1:
        return a, BraidWord(a.n)
    last = a.factors[-1]
    out = _Builder(a.n, a.inf)
    out.append(tau(last, a.inf).perm)
    for f in a.factors[:-1]:
        out.append(f.perm)
    return out.result(), last.word().inverse()


def reduce_to_summit(a: NormalForm) -> tuple[NormalForm, BraidWord]:
    """Iterated cycling then decycling; lands in the super summit set.

    If inf is not maximal in the conjugacy class, some cycling among the next
    n(n-1)/2 raises it; likewise decycling for sup.
    """
    bound = a.n * (a.n - 1) // 2
    witness: list[int] = []
    idle = 0
    while idle < bound and a.length > 1:
        b, g = cycling(a)
        idle = 0 if b.inf > a.inf else idle + 1
        a = b
        witness.extend(g.letters)
    idle = 0
    while idle < bound and a.length > 1:
        b, g = decycling(a)
        idle = 0 if b.sup < a.sup else idle + 1
        a = b
        witness.extend(g.letters)
    return a, BraidWord(a.n, tuple(witness))


@dataclass(frozen=True)
class SummitSetResult:
    elements: tuple[NormalForm, ...]
    witnesses: dict[NormalForm, BraidWord] = field(compare=False)
    truncated: bool = False

    def __contains__(self, nf: NormalForm) -> bool:
        return nf in self.witnesses

    def __len__(self) -> int:
        return len(self.elements)


def super_summit_set(w: BraidWord | NormalForm, cap: int = DEFAULT_CAP) -> SummitSetResult:
    """Conjugates of w with maximal inf and minimal sup, each with a conjugating witness.

    Reaches one element by cycling/decycling, then closes under conjugation by
    every nontrivial canonical factor. Stops early with ``truncated=True`` once
    ``cap`` elements are known and another is found.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    start = normalize(w) if isinstance(w, BraidWord) else w
    n = start.n
    e0, g0 = reduce_to_summit(start)
    witnesses: dict[NormalForm, BraidWord] = {e0: g0}
    frontier = [e0]
    simples = [f for f in all_factors(n) if not f.is_identity()]
    simple_words = {f: f.word() for f in simples}
    truncated = False
    while frontier and not truncated:
        nxt: list[NormalForm] = []
        for x in frontier:
            for f in simples:
                y = conjugate(x, _factor_nf(f))
                if y.inf != e0.inf or y.sup != e0.sup or y in witnesses:
                    continue
                if len(witnesses) >= cap:
                    truncated = True
                    break
                witnesses[y] = witnesses[x] * simple_words[f]
                nxt.append(y)
            if truncated:
                break
        frontier = nxt
    elements = tuple(sorted(witnesses, key=NormalForm.serialize))
    return SummitSetResult(elements, witnesses, truncated)


def _factor_nf(f: CanonicalFactor) -> NormalForm:
    if f.is_delta():
        return NormalForm(f.n, 1, ())
    return NormalForm(f.n, 0, (f,))
