"""
Collins subgroups G_i ≅ F₂ × F₂ of B_n, the embedding of F₂ × F₂, and private
keys drawn from the Mihailova subgroup M(G_i).

Words over the free group on {u, t} are strings in the letters u, t, U, T with
uppercase meaning inverse, e.g. ``"tUt"``.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from .braid import BraidError, BraidWord, NormalForm, normalize

FREE_LETTERS = "utUT"


class InvalidKeyError(BraidError):
    """Invalid private key or key file."""


def _check_index(n: int, i: int) -> None:
    if n < 6:
        raise BraidError(f"Mihailova subgroups need n >= 6, got n={n}")
    if not 1 <= i <= n - 5:
        raise BraidError(f"subgroup index i={i} outside [1, {n - 5}] for n={n}")


def reduce_free(word: str) -> str:
    for ch in word:
        if ch not in FREE_LETTERS:
            raise BraidError(f"bad free-group letter {ch!r} in {word!r}")
    stack: list[str] = []
    for ch in word:
        if stack and stack[-1] == ch.swapcase():
            stack.pop()
        else:
            stack.append(ch)
    return "".join(stack)


def invert_free(word: str) -> str:
    return word[::-1].swapcase()


@dataclass(frozen=True)
class FreePairWord:
    """An element (left, right) of F₂ × F₂; both components are stored freely reduced."""

    left: str = ""
    right: str = ""

    def __post_init__(self):
        object.__setattr__(self, "left", reduce_free(self.left))
        object.__setattr__(self, "right", reduce_free(self.right))

    def __mul__(self, other: FreePairWord) -> FreePairWord:
        return FreePairWord(self.left + other.left, self.right + other.right)

    def inverse(self) -> FreePairWord:
        return FreePairWord(invert_free(self.left), invert_free(self.right))


@dataclass(frozen=True)
class RelatorSet:
    """The words S_1, S_2, ... whose (1, S_k) images extend the diagonal generators.

    An empty list is diagonal-only mode.
    """

    source: str = "diagonal-only"
    s_words: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "s_words", tuple(reduce_free(w) for w in self.s_words))

    @classmethod
    def load(cls, path: str | Path | None) -> RelatorSet:
        """Read a relator file; ``None``, a missing file or an empty file give diagonal-only mode."""
        if path is None:
            return cls()
        p = Path(path)
        if not p.exists():
            return cls()
        text = p.read_text(encoding="utf-8").strip()
        if not text:
            return cls()
        doc = json.loads(text)
        if not isinstance(doc, dict) or not isinstance(doc.get("s_words", []), list):
            raise BraidError(f"malformed relator file {p}")
        return cls(str(doc.get("source", p.name)), tuple(doc.get("s_words", [])))


def gi_generators(n: int, i: int) -> list[BraidWord]:
    """[σ_i², σ_{i+1}², σ_{i+3}², σ_{i+4}²], generating G_i ≅ F₂ × F₂."""
    _check_index(n, i)
    return [BraidWord(n, (k, k)) for k in (i, i + 1, i + 3, i + 4)]


def _expand_free(word: str, u_index: int, t_index: int) -> list[int]:
    out: list[int] = []
    for ch in word:
        k = u_index if ch in "uU" else t_index
        sign = -1 if ch.isupper() else 1
        out += [sign * k, sign * k]
    return out


def phi(n: int, i: int, w: FreePairWord) -> BraidWord:
    """Image of (left, right) under (u,1)↦σ_i², (t,1)↦σ_{i+1}², (1,u)↦σ_{i+3}², (1,t)↦σ_{i+4}²."""
    _check_index(n, i)
    letters = _expand_free(w.left, i, i + 1) + _expand_free(w.right, i + 3, i + 4)
    return BraidWord(n, tuple(letters))


def mihailova_pairs(relators: RelatorSet) -> list[FreePairWord]:
    return [FreePairWord("u", "u"), FreePairWord("t", "t")] + [
        FreePairWord("", s) for s in relators.s_words
    ]


def mihailova_generators(n: int, i: int, relators: RelatorSet | None = None) -> list[BraidWord]:
    """φ-images of (u,u), (t,t), then (1, S_k) for each relator word, in order."""
    relators = relators or RelatorSet()
    return [phi(n, i, p) for p in mihailova_pairs(relators)]


def nf_digest(nf: NormalForm) -> str:
    return hashlib.sha256(nf.serialize().encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class PrivateKey:
    n: int
    i: int
    gen_word: tuple[tuple[int, int], ...]
    expansion: BraidWord
    nf: NormalForm = field(compare=False)
    seed: int | None = None

    def check(self) -> str:
        return nf_digest(self.nf)

    def to_json(self) -> dict:
        return {
            "v": 1,
            "n": self.n,
            "i": self.i,
            "gen_word": [list(g) for g in self.gen_word],
            "seed": self.seed,
            "check": self.check(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps() + "\n", encoding="utf-8")


def expand(n: int, i: int, gen_word, relators: RelatorSet | None = None) -> BraidWord:
    """Concatenate the generator expansions named by (id, sign) pairs; ids are 0-based."""
    gens = mihailova_generators(n, i, relators)
    letters: list[int] = []
    for gid, sign in gen_word:
        if not 0 <= gid < len(gens):
            raise InvalidKeyError(f"generator id {gid} outside [0, {len(gens) - 1}]")
        if sign == 1:
            letters += gens[gid].letters
        elif sign == -1:
            letters += gens[gid].inverse().letters
        else:
            raise InvalidKeyError(f"sign must be +1 or -1, got {sign}")
    return BraidWord(n, tuple(letters))


def make_key(
    n: int,
    i: int,
    gen_word,
    relators: RelatorSet | None = None,
    seed: int | None = None,
) -> PrivateKey:
    _check_index(n, i)
    gen_word = tuple((int(g), int(s)) for g, s in gen_word)
    expansion = expand(n, i, gen_word, relators)
    nf = normalize(expansion)
    if nf.is_identity():
        raise InvalidKeyError("private key represents the identity braid")
    return PrivateKey(n, i, gen_word, expansion, nf, seed)


def sample_key(
    n: int,
    i: int,
    length: int,
    seed: int,
    relators: RelatorSet | None = None,
    max_retries: int = 100,
) -> PrivateKey:
    """Uniform random freely reduced word of exactly ``length`` generator letters."""
    _check_index(n, i)
    if length < 1:
        raise BraidError(f"key length must be >= 1, got {length}")
    relators = relators or RelatorSet()
    ngens = 2 + len(relators.s_words)
    rng = random.Random(seed)
    for _ in range(max_retries):
        word: list[tuple[int, int]] = []
        while len(word) < length:
            g = (rng.randrange(ngens), rng.choice((1, -1)))
            if word and word[-1] == (g[0], -g[1]):
                continue
            word.append(g)
        try:
            return make_key(n, i, word, relators, seed)
        except InvalidKeyError:
            continue
    raise InvalidKeyError(f"no non-identity key after {max_retries} attempts")


def load_key(path: str | Path, relators: RelatorSet | None = None) -> PrivateKey:
    """Read a key file, recompute the expansion and verify the stored check digest."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidKeyError(f"key file {path} is not valid JSON") from exc
    return key_from_json(doc, relators)


def key_from_json(doc: dict, relators: RelatorSet | None = None) -> PrivateKey:
    try:
        if doc["v"] != 1:
            raise InvalidKeyError(f"unsupported key file version {doc['v']!r}")
        key = make_key(doc["n"], doc["i"], doc["gen_word"], relators, doc.get("seed"))
        check = doc["check"]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, BraidError):
            raise
        raise InvalidKeyError(f"malformed key document: {exc}") from exc
    if key.check() != check:
        raise InvalidKeyError("key check digest mismatch (wrong relator set or corrupted file)")
    return key


@dataclass
class FreenessReport:
    n: int
    i: int
    trials: int
    identities: int
    violations: list[str]


def freeness_probe(n: int, i: int, trials: int, max_len: int, seed: int) -> FreenessReport:
    """Check that random nonempty reduced words in σ_i², σ_{i+1}² never normalize to ε."""
    _check_index(n, i)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    violations: list[str] = []
    for _ in range(trials):
        length = rng.randint(1, max_len)
        letters: list[str] = []
        while len(letters) < length:
            ch = rng.choice(FREE_LETTERS)
            if letters and letters[-1] == ch.swapcase():
                continue
            letters.append(ch)
        word = "".join(letters)
        if normalize(phi(n, i, FreePairWord(word, ""))).is_identity():
            violations.append(word)
    return FreenessReport(n, i, trials, len(violations), violations)


def split_halves(n: int, i: int, w: BraidWord) -> FreePairWord | None:
    """Read a word in the squares of σ_i, σ_{i+1}, σ_{i+3}, σ_{i+4} back as an element of F₂ × F₂.

    Returns None if the word is not a product of those squares.
    """
    _check_index(n, i)
    names = {i: "u", i + 1: "t", i + 3: "u", i + 4: "t"}
    letters = w.letters
    if len(letters) % 2:
        return None
    left: list[str] = []
    right: list[str] = []
    for a, b in zip(letters[::2], letters[1::2]):
        if a != b or abs(a) not in names:
            return None
        ch = names[abs(a)]
        ch = ch.upper() if a < 0 else ch
        (left if abs(a) <= i + 1 else right).append(ch)
    return FreePairWord("".join(left), "".join(right))

