"""
Exact arithmetic in the braid group B_n via the left Garside normal form.

A braid is represented by its normal form Δ^k W_1 ... W_s, where every W_i is a
permutation braid (canonical factor) different from the identity and from Δ,
and every adjacent pair (W_i, W_{i+1}) is left-weighted. Canonical factors are
stored through their permutation; the normal form is unique, so equality of
braids is equality of normal forms.

Permutation conventions: a factor is stored as a 0-indexed image array
``perm`` (strand starting at position x ends at position perm[x]); the public
surface (``images``, ``project``, ``factor_from_permutation``, serialization)
is 1-indexed. Permutations compose in word order, so the permutation of a
product ab sends x to perm(b)[perm(a)[x]].
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

Perm = tuple[int, ...]


class BraidError(ValueError):
    """Invalid braid input (bad index, bad strand count, bad permutation)."""


class StrandMismatchError(BraidError):
    pass


class WordParseError(BraidError):
    """Braid word text that is not a sequence of integers."""


# ---------------------------------------------------------------------------
# Words


@dataclass(frozen=True, slots=True)
class BraidWord:
    """A word in the Artin generators. Letter ``i`` is σ_i, letter ``-i`` is σ_i⁻¹."""

    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 2:
            raise BraidError(f"strand count must be >= 2, got {self.n}")
        for x in self.letters:
            if not isinstance(x, int) or x == 0 or abs(x) > self.n - 1:
                raise BraidError(f"letter {x!r} out of range for B_{self.n}")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        _check_n(self.n, other.n)
        return BraidWord(self.n, self.letters + other.letters)

    def __pow__(self, k: int) -> BraidWord:
        if k < 0:
            return self.inverse() ** (-k)
        return BraidWord(self.n, self.letters * k)

    def inverse(self) -> BraidWord:
        return BraidWord(self.n, tuple(-x for x in reversed(self.letters)))

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        """Letters as (index, sign) pairs."""
        return tuple((abs(x), 1 if x > 0 else -1) for x in self.letters)

    def exponent_sum(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def is_positive(self) -> bool:
        return all(x > 0 for x in self.letters)

    def text(self) -> str:
        return " ".join(str(x) for x in self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "ε"
        return "".join(f"s{x}" if x > 0 else f"S{-x}" for x in self.letters)


def make_word(n: int, letters: Iterable[int | tuple[int, int]]) -> BraidWord:
    """Build a word from signed indices or from (index, sign) pairs."""
    out = []
    for x in letters:
        if isinstance(x, tuple):
            idx, sign = x
            if sign not in (1, -1):
                raise BraidError(f"sign must be +1 or -1, got {sign}")
            x = idx * sign
        out.append(x)
    return BraidWord(n, tuple(out))


def parse_word(n: int, text: str) -> BraidWord:
    """Parse the whitespace-separated text format, e.g. ``"1 -2 3"``."""
    try:
        letters = tuple(int(tok) for tok in text.split())
    except ValueError as exc:
        raise WordParseError(f"cannot parse braid word {text!r}") from exc
    return BraidWord(n, letters)


def free_reduce(w: BraidWord) -> BraidWord:
    stack: list[int] = []
    for x in w.letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return BraidWord(w.n, tuple(stack))


def delta(n: int) -> BraidWord:
    """The fundamental braid, Δ_n = Δ_{n-1} σ_{n-1} σ_{n-2} ... σ_1."""
    if n < 2:
        raise BraidError(f"strand count must be >= 2, got {n}")
    letters: list[int] = []
    for m in range(2, n + 1):
        letters.extend(range(m - 1, 0, -1))
    return BraidWord(n, tuple(letters))


def _check_n(a: int, b: int) -> None:
    if a != b:
        raise StrandMismatchError(f"strand counts differ: {a} != {b}")


# ---------------------------------------------------------------------------
# Raw permutation arithmetic (0-indexed image tuples). All cached: the
# factors that occur in practice repeat heavily.


@functools.lru_cache(maxsize=None)
def _identity(n: int) -> Perm:
    return tuple(range(n))


@functools.lru_cache(maxsize=None)
def _delta_perm(n: int) -> Perm:
    return tuple(range(n - 1, -1, -1))


@functools.lru_cache(maxsize=None)
def _sigma(n: int, i: int) -> Perm:
    """Permutation of σ_i (i is 1-based)."""
    p = list(range(n))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def _compose(a: Perm, b: Perm) -> Perm:
    """Permutation of the product ab."""
    return tuple([b[x] for x in a])


def _inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for x, y in enumerate(a):
        out[y] = x
    return tuple(out)


@functools.lru_cache(maxsize=1 << 16)
def _right_complement(a: Perm) -> Perm:
    """A* with A·A* = Δ."""
    n = len(a)
    ai = _inv(a)
    return tuple([n - 1 - ai[y] for y in range(n)])


@functools.lru_cache(maxsize=1 << 16)
def _left_complement(a: Perm) -> Perm:
    """∂A with ∂A·A = Δ."""
    n = len(a)
    ai = _inv(a)
    return tuple([ai[n - 1 - x] for x in range(n)])


@functools.lru_cache(maxsize=1 << 16)
def _tau(a: Perm) -> Perm:
    """Δ⁻¹ A Δ, the flip σ_i ↦ σ_{n-i}."""
    n = len(a)
    return tuple([n - 1 - a[n - 1 - x] for x in range(n)])


def _starting(a: Perm) -> list[int]:
    # σ_{i+1} left-divides A iff A[i] > A[i+1]
    return [i for i in range(len(a) - 1) if a[i] > a[i + 1]]


def _finishing(a: Perm) -> list[int]:
    ai = _inv(a)
    return [i for i in range(len(a) - 1) if ai[i] > ai[i + 1]]


def _meet(a: Perm, b: Perm) -> Perm:
    """Greatest common left divisor of two permutation braids."""
    a = list(a)
    b = list(b)
    c = list(range(len(a)))
    n1 = len(a) - 1
    i = 0
    while i < n1:
        if a[i] > a[i + 1] and b[i] > b[i + 1]:
            a[i], a[i + 1] = a[i + 1], a[i]
            b[i], b[i + 1] = b[i + 1], b[i]
            # c <- c σ_{i+1}: swap the values i and i+1 in the image array
            for x in range(len(c)):
                if c[x] == i:
                    c[x] = i + 1
                elif c[x] == i + 1:
                    c[x] = i
            i = max(i - 1, 0)
        else:
            i += 1
    return tuple(c)


def _left_quotient(c: Perm, b: Perm) -> Perm:
    """C⁻¹B for C a left divisor of B."""
    ci = _inv(c)
    return tuple([b[ci[x]] for x in range(len(b))])


@functools.lru_cache(maxsize=1 << 20)
def _rebalance(a: Perm, b: Perm) -> tuple[Perm, Perm] | None:
    """Make (A, B) left-weighted: (A, B) -> (AC, C⁻¹B), C = A* ∧ B. None if already so."""
    c = _meet(_right_complement(a), b)
    if c == _identity(len(a)):
        return None
    return _compose(a, c), _left_quotient(c, b)


def _inversions(a: Perm) -> int:
    n = len(a)
    return sum(1 for x in range(n) for y in range(x + 1, n) if a[x] > a[y])


@functools.lru_cache(maxsize=1 << 16)
def _perm_word(a: Perm) -> tuple[int, ...]:
    """A positive word for the permutation braid, extracting the smallest starting index first."""
    p = list(a)
    out: list[int] = []
    i = 0
    while i < len(p) - 1:
        if p[i] > p[i + 1]:
            out.append(i + 1)
            p[i], p[i + 1] = p[i + 1], p[i]
            i = max(i - 1, 0)
        else:
            i += 1
    return tuple(out)


# ---------------------------------------------------------------------------
# Canonical factors


@dataclass(frozen=True, slots=True)
class CanonicalFactor:
    """A permutation braid ε ≤ F ≤ Δ, identified with its permutation."""

    perm: Perm

    @property
    def n(self) -> int:
        return len(self.perm)

    @property
    def images(self) -> tuple[int, ...]:
        """1-indexed image array."""
        return tuple(x + 1 for x in self.perm)

    def is_identity(self) -> bool:
        return self.perm == _identity(len(self.perm))

    def is_delta(self) -> bool:
        return self.perm == _delta_perm(len(self.perm))

    def length(self) -> int:
        """Word length, i.e. the inversion count of the permutation."""
        return _inversions(self.perm)

    def word(self) -> BraidWord:
        return BraidWord(self.n, _perm_word(self.perm))

    @classmethod
    def identity(cls, n: int) -> CanonicalFactor:
        return cls(_identity(n))

    @classmethod
    def delta(cls, n: int) -> CanonicalFactor:
        return cls(_delta_perm(n))

    @classmethod
    def sigma(cls, n: int, i: int) -> CanonicalFactor:
        return cls(_sigma(n, i))


def project(w: BraidWord) -> tuple[int, ...]:
    """Image of w in S_n as a 1-indexed image array; letters act in word order."""
    p = list(range(w.n))
    for x in w.letters:
        i = abs(x) - 1
        for k in range(w.n):
            if p[k] == i:
                p[k] = i + 1
            elif p[k] == i + 1:
                p[k] = i
    return tuple(x + 1 for x in p)


def factor_from_permutation(p: Sequence[int]) -> CanonicalFactor:
    """The unique canonical factor whose permutation is ``p`` (1-indexed images)."""
    n = len(p)
    if n < 2 or sorted(p) != list(range(1, n + 1)):
        raise BraidError(f"not a permutation of 1..{n}: {list(p)}")
    return CanonicalFactor(tuple(x - 1 for x in p))


def starting_set(f: CanonicalFactor) -> frozenset[int]:
    """{i : σ_i left-divides f}, 1-based."""
    return frozenset(i + 1 for i in _starting(f.perm))


def finishing_set(f: CanonicalFactor) -> frozenset[int]:
    """{i : σ_i right-divides f}, 1-based."""
    return frozenset(i + 1 for i in _finishing(f.perm))


def meet(a: CanonicalFactor, b: CanonicalFactor) -> CanonicalFactor:
    _check_n(a.n, b.n)
    return CanonicalFactor(_meet(a.perm, b.perm))


def left_weighted(a: CanonicalFactor, b: CanonicalFactor) -> bool:
    _check_n(a.n, b.n)
    return starting_set(b) <= finishing_set(a)


# ---------------------------------------------------------------------------
# Normal forms


@dataclass(frozen=True, slots=True)
class NormalForm:
    """Δ^inf · W_1 ⋯ W_s with left-weighted adjacent factors."""

    n: int
    inf: int
    factors: tuple[CanonicalFactor, ...] = ()

    @property
    def length(self) -> int:
        return len(self.factors)

    @property
    def sup(self) -> int:
        return self.inf + len(self.factors)

    def is_identity(self) -> bool:
        return self.inf == 0 and not self.factors

    def exponent_sum(self) -> int:
        return self.inf * self.n * (self.n - 1) // 2 + sum(f.length() for f in self.factors)

    def to_json(self) -> dict:
        return {"inf": self.inf, "factors": [list(f.images) for f in self.factors]}

    def serialize(self) -> str:
        """Canonical compact JSON; equal braids give equal strings."""
        return json.dumps(self.to_json(), separators=(",", ":"))

    def render(self) -> str:
        """``D^k | p(W1) | p(W2) | ...``"""
        parts = [f"D^{self.inf} |"]
        if self.factors:
            parts.append(" | ".join(",".join(map(str, f.images)) for f in self.factors))
        return " ".join(parts)

    def word_length(self) -> int:
        """Length of the word returned by :meth:`to_word`."""
        total = len(delta(self.n)) if self.n >= 2 else 0
        m = -self.inf
        if m <= 0:
            return self.inf * total + sum(f.length() for f in self.factors)
        s = len(self.factors)
        paired = min(m, s)
        return (
            sum(total - f.length() for f in self.factors[:paired])
            + max(0, m - s) * total
            + sum(f.length() for f in self.factors[paired:])
        )

    def to_word(self) -> BraidWord:
        """A word for this braid; negative Δ powers are absorbed into the leading factors."""
        n = self.n
        d = _delta_perm(n)
        if self.inf >= 0:
            letters = _perm_word(d) * self.inf
            for f in self.factors:
                letters += _perm_word(f.perm)
            return BraidWord(n, letters)
        # Δ^{-m} W_1 ⋯ = τ^{m-1}(W_1*)⁻¹ Δ^{-(m-1)} W_2 ⋯
        m = -self.inf
        letters: tuple[int, ...] = ()
        k = 0
        while k < len(self.factors) and m > 0:
            c = _right_complement(self.factors[k].perm)
            if (m - 1) % 2:
                c = _tau(c)
            letters += tuple(-x for x in reversed(_perm_word(c)))
            m -= 1
            k += 1
        letters += tuple(-x for x in reversed(_perm_word(d))) * m
        for f in self.factors[k:]:
            letters += _perm_word(f.perm)
        return BraidWord(n, letters)

    def __str__(self) -> str:
        return self.render()

    @classmethod
    def identity(cls, n: int) -> NormalForm:
        return cls(n, 0, ())

    @classmethod
    def from_json(cls, n: int, obj: dict) -> NormalForm:
        """Inverse of :meth:`to_json`; validates the normal-form invariants."""
        inf = obj["inf"]
        if not isinstance(inf, int) or isinstance(inf, bool):
            raise BraidError(f"inf must be an integer, got {inf!r}")
        factors = []
        for p in obj["factors"]:
            if len(p) != n or not all(isinstance(x, int) and not isinstance(x, bool) for x in p):
                raise BraidError(f"bad permutation array {p!r} for n={n}")
            factors.append(factor_from_permutation(p))
        nf = cls(n, inf, tuple(factors))
        check_normal_form(nf)
        return nf


def check_normal_form(nf: NormalForm) -> None:
    """Raise BraidError unless ``nf`` satisfies every normal-form invariant."""
    for f in nf.factors:
        if f.n != nf.n:
            raise BraidError("factor strand count differs from the braid's")
        if f.is_identity() or f.is_delta():
            raise BraidError("normal form factors must differ from ε and Δ")
    for a, b in zip(nf.factors, nf.factors[1:]):
        if not left_weighted(a, b):
            raise BraidError(f"factor pair {a.images} {b.images} is not left-weighted")


class _Builder:
    """Mutable normal form under right multiplication.

    Represents Δ^inf · τ^flip(s_0) ⋯ τ^flip(s_{m-1}) for the stored list s. The
    lazy flip makes right multiplication by Δ^k O(1); left-weightedness is
    checked in the stored frame, which τ preserves.
    """

    __slots__ = ("n", "inf", "flip", "stored", "_id", "_delta")

    def __init__(self, n: int, inf: int = 0, factors: Iterable[Perm] = ()):
        self.n = n
        self.inf = inf
        self.flip = 0
        self.stored = list(factors)
        self._id = _identity(n)
        self._delta = _delta_perm(n)

    def mul_delta(self, k: int) -> None:
        # X Δ^k = Δ^k τ^k(X)
        self.inf += k
        if k % 2:
            self.flip ^= 1

    def append(self, f: Perm) -> None:
        """Right-multiply by a canonical factor given in the actual frame."""
        if f == self._id:
            return
        if f == self._delta:
            self.mul_delta(1)
            return
        if self.flip:
            f = _tau(f)
        st = self.stored
        st.append(f)
        i = len(st) - 2
        while 0 <= i < len(st) - 1:
            r = _rebalance(st[i], st[i + 1])
            if r is None:
                break
            a, b = r
            if b == self._id:
                del st[i + 1]
            else:
                st[i + 1] = b
            if a == self._delta:
                # Δ emerges at position i: move it to the front, flipping
                # whichever side is shorter.
                if i <= len(st) - i - 1:
                    st[i:i + 1] = []
                    for j in range(i):
                        st[j] = _tau(st[j])
                else:
                    st[i:] = [_tau(x) for x in st[i + 1:]]
                    self.flip ^= 1
                self.inf += 1
            else:
                st[i] = a
            i -= 1

    def append_word(self, letters: Iterable[int]) -> None:
        n = self.n
        for x in letters:
            if x > 0:
                self.append(_sigma(n, x))
            else:
                # σ_i⁻¹ = Δ⁻¹ · ∂σ_i
                self.mul_delta(-1)
                self.append(_left_complement(_sigma(n, -x)))

    def append_nf(self, nf: NormalForm) -> None:
        self.mul_delta(nf.inf)
        for f in nf.factors:
            self.append(f.perm)

    def result(self) -> NormalForm:
        st = self.stored
        if self.flip:
            st = [_tau(x) for x in st]
        return NormalForm(self.n, self.inf, tuple(CanonicalFactor(x) for x in st))


def _builder_from(nf: NormalForm) -> _Builder:
    return _Builder(nf.n, nf.inf, (f.perm for f in nf.factors))


def normalize(w: BraidWord) -> NormalForm:
    b = _Builder(w.n)
    b.append_word(w.letters)
    return b.result()


def multiply(a: NormalForm, b: NormalForm) -> NormalForm:
    _check_n(a.n, b.n)
    out = _builder_from(a)
    out.append_nf(b)
    return out.result()


def product(nfs: Sequence[NormalForm], n: int) -> NormalForm:
    """Normal form of the product of a sequence of normal forms in B_n."""
    out = _Builder(n)
    for nf in nfs:
        _check_n(n, nf.n)
        out.append_nf(nf)
    return out.result()


def invert(a: NormalForm) -> NormalForm:
    # A⁻¹ = Δ⁻¹ ∂A, so a⁻¹ = Δ⁻¹∂W_s ⋯ Δ⁻¹∂W_1 Δ^{-k}
    out = _Builder(a.n)
    for f in reversed(a.factors):
        out.mul_delta(-1)
        out.append(_left_complement(f.perm))
    out.mul_delta(-a.inf)
    return out.result()


def conjugate(a: NormalForm, g: BraidWord | NormalForm) -> NormalForm:
    """Normal form of g⁻¹ a g."""
    _check_n(a.n, g.n)
    g_nf = normalize(g) if isinstance(g, BraidWord) else g
    out = _builder_from(invert(g_nf))
    out.append_nf(a)
    out.append_nf(g_nf)
    return out.result()


def equals(a: NormalForm, b: NormalForm) -> bool:
    _check_n(a.n, b.n)
    return a == b


def tau(x, k: int = 1):
    """Apply the flip automorphism τ^k (σ_i ↦ σ_{n-i}) to a factor, word or normal form."""
    if k % 2 == 0:
        return x
    if isinstance(x, CanonicalFactor):
        return CanonicalFactor(_tau(x.perm))
    if isinstance(x, BraidWord):
        return BraidWord(x.n, tuple((x.n - abs(y)) * (1 if y > 0 else -1) for y in x.letters))
    if isinstance(x, NormalForm):
        return NormalForm(x.n, x.inf, tuple(CanonicalFactor(_tau(f.perm)) for f in x.factors))
    raise TypeError(f"cannot apply tau to {type(x).__name__}")


def all_factors(n: int) -> list[CanonicalFactor]:
    """Every canonical factor of B_n (n! of them), in lexicographic permutation order."""
    from itertools import permutations

    return [CanonicalFactor(p) for p in permutations(range(n))]
