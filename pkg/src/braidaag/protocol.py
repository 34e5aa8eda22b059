"""
Commutator key exchange over B_n with private keys in Mihailova subgroups.

Each party publishes the conjugates k⁻¹σ_j k of all Artin generators by its
private key k. Substituting the peer's conjugates into the letters of one's own
key word yields the conjugated key, and both sides arrive at the commutator
K = x⁻¹y⁻¹xy. The classic two-subgroup variant (arbitrary public generator
lists S_A, S_B) is provided by :func:`run_original_aag` as a baseline.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .braid import (
    BraidError,
    BraidWord,
    CanonicalFactor,
    NormalForm,
    StrandMismatchError,
    _Builder,
    invert,
    multiply,
    normalize,
    product,
)
from .mihailova import PrivateKey, RelatorSet, sample_key

WIRE_VERSION = 1
DEFAULT_HASH = "sha256"


class ProtocolError(BraidError):
    pass


class WireFormatError(ProtocolError):
    """Malformed, unsupported or invariant-violating wire document."""


class CommutingSubgroupsError(ProtocolError):
    """The chosen subgroup indices commute elementwise, forcing K = ε."""


class DegenerateSessionError(ProtocolError):
    """The exchange produced the identity shared key."""

    def __init__(self, message: str, transcript: Transcript | None = None):
        super().__init__(message)
        self.transcript = transcript


@dataclass(frozen=True)
class ProtocolMessage:
    n: int
    role: str
    conjugates: tuple[NormalForm, ...]
    version: int = WIRE_VERSION

    def to_json(self) -> dict:
        return {
            "v": self.version,
            "n": self.n,
            "role": self.role,
            "conj": [c.to_json() for c in self.conjugates],
        }


@dataclass(frozen=True)
class SharedKey:
    nf: NormalForm
    digest: bytes

    @property
    def hex(self) -> str:
        return self.digest.hex()


def key_digest(nf: NormalForm, algorithm: str = DEFAULT_HASH) -> bytes:
    return hashlib.new(algorithm, nf.serialize().encode("utf-8")).digest()


def shared_key(nf: NormalForm, algorithm: str = DEFAULT_HASH) -> SharedKey:
    return SharedKey(nf, key_digest(nf, algorithm))


def _expansion(k: PrivateKey | BraidWord) -> BraidWord:
    return k.expansion if isinstance(k, PrivateKey) else k


def _key_nf(k: PrivateKey | BraidWord) -> NormalForm:
    return k.nf if isinstance(k, PrivateKey) else normalize(k)


def generator_nf(n: int, j: int) -> NormalForm:
    return NormalForm(n, 0, (CanonicalFactor.sigma(n, j),))


def commit(k: PrivateKey | BraidWord, role: str = "A") -> ProtocolMessage:
    """Publish k⁻¹σ_j k for j = 1..n-1.

    A bare BraidWord is accepted in place of a PrivateKey (no identity check).
    """
    if role not in ("A", "B"):
        raise ProtocolError(f"role must be 'A' or 'B', got {role!r}")
    n = _expansion(k).n
    knf = _key_nf(k)
    kinv = invert(knf)
    conj = []
    for j in range(1, n):
        b = _Builder(n, kinv.inf, (f.perm for f in kinv.factors))
        b.append(CanonicalFactor.sigma(n, j).perm)
        b.append_nf(knf)
        conj.append(b.result())
    return ProtocolMessage(n, role, tuple(conj))


def substitute(word: BraidWord, images: Sequence[NormalForm]) -> NormalForm:
    """Evaluate ``word`` with σ_j replaced by images[j-1]."""
    if len(images) != word.n - 1:
        raise ProtocolError(f"need {word.n - 1} generator images, got {len(images)}")
    inverses: dict[int, NormalForm] = {}
    seq = []
    for x in word.letters:
        if x > 0:
            seq.append(images[x - 1])
        else:
            if x not in inverses:
                inverses[x] = invert(images[-x - 1])
            seq.append(inverses[x])
    return product(seq, word.n)


def _check_peer(n: int, m: ProtocolMessage, expected_role: str) -> None:
    if m.n != n:
        raise StrandMismatchError(f"message is for B_{m.n}, key is in B_{n}")
    if m.role != expected_role:
        raise ProtocolError(f"expected a message from {expected_role}, got role {m.role!r}")


def derive_key_initiator(
    x: PrivateKey | BraidWord, m: ProtocolMessage, algorithm: str = DEFAULT_HASH
) -> SharedKey:
    """K_A = x⁻¹ · x(y⁻¹σ_1y, …, y⁻¹σ_{n-1}y) = x⁻¹y⁻¹xy."""
    w = _expansion(x)
    _check_peer(w.n, m, "B")
    conjugated = substitute(w, m.conjugates)
    return shared_key(multiply(invert(_key_nf(x)), conjugated), algorithm)


def derive_key_responder(
    y: PrivateKey | BraidWord, m: ProtocolMessage, algorithm: str = DEFAULT_HASH
) -> SharedKey:
    """K_B = (y⁻¹ · y(x⁻¹σ_1x, …))⁻¹ = x⁻¹y⁻¹xy."""
    w = _expansion(y)
    _check_peer(w.n, m, "A")
    conjugated = substitute(w, m.conjugates)
    return shared_key(invert(multiply(invert(_key_nf(y)), conjugated)), algorithm)


# ---------------------------------------------------------------------------
# Wire format


def encode(m: ProtocolMessage) -> bytes:
    return json.dumps(m.to_json(), separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def message_from_json(doc) -> ProtocolMessage:
    if not isinstance(doc, dict):
        raise WireFormatError("message document must be an object")
    if list(doc) != ["v", "n", "role", "conj"]:
        raise WireFormatError(f"unexpected message fields {list(doc)}")
    if doc["v"] != WIRE_VERSION:
        raise WireFormatError(f"unsupported version {doc['v']!r}")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise WireFormatError(f"bad strand count {n!r}")
    if doc["role"] not in ("A", "B"):
        raise WireFormatError(f"bad role {doc['role']!r}")
    conj = doc["conj"]
    if not isinstance(conj, list) or len(conj) != n - 1:
        raise WireFormatError(f"expected {n - 1} conjugates")
    nfs = []
    for entry in conj:
        if not isinstance(entry, dict) or list(entry) != ["inf", "factors"]:
            raise WireFormatError("conjugate entries need exactly the fields inf, factors")
        if not isinstance(entry["factors"], list):
            raise WireFormatError("factors must be a list")
        try:
            nf = NormalForm.from_json(n, entry)
        except BraidError as exc:
            raise WireFormatError(str(exc)) from exc
        if nf.exponent_sum() != 1:
            raise WireFormatError("conjugate of a generator must have exponent sum 1")
        nfs.append(nf)
    return ProtocolMessage(n, doc["role"], tuple(nfs), doc["v"])


def decode(data: bytes | str) -> ProtocolMessage:
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise WireFormatError(f"not a JSON document: {exc}") from exc
    return message_from_json(doc)


# ---------------------------------------------------------------------------
# Sessions


def subgroups_interact(i: int, j: int) -> bool:
    """True when some generator of G_i and some generator of G_j have adjacent or equal indices."""
    a = (i, i + 1, i + 3, i + 4)
    b = (j, j + 1, j + 3, j + 4)
    return any(abs(p - q) <= 1 for p in a for q in b)


@dataclass(frozen=True)
class SessionConfig:
    n: int = 8
    alice_index: int = 1
    bob_index: int = 2
    key_length: int = 16
    seed_a: int = 42
    seed_b: int = 43
    relators: RelatorSet = RelatorSet()
    hash_name: str = DEFAULT_HASH

    def validate(self) -> None:
        for idx in (self.alice_index, self.bob_index):
            if self.n < 6 or not 1 <= idx <= self.n - 5:
                raise ProtocolError(f"subgroup index {idx} outside [1, {self.n - 5}] for n={self.n}")
        if self.key_length < 1:
            raise ProtocolError("key length must be >= 1")
        if not subgroups_interact(self.alice_index, self.bob_index):
            raise CommutingSubgroupsError(
                f"G_{self.alice_index} and G_{self.bob_index} commute elementwise; "
                "the shared key would be the identity"
            )


@dataclass(frozen=True)
class Transcript:
    msg_a: ProtocolMessage
    msg_b: ProtocolMessage
    key_a: SharedKey
    key_b: SharedKey

    @property
    def match(self) -> bool:
        return self.key_a.nf == self.key_b.nf and self.key_a.digest == self.key_b.digest

    def to_bytes(self) -> bytes:
        footer = {"match": self.match, "digest": self.key_a.hex}
        body = [self.msg_a.to_json(), self.msg_b.to_json(), footer]
        return json.dumps(body, separators=(",", ":")).encode("utf-8")

    def save(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_bytes())


@dataclass(frozen=True)
class TranscriptFile:
    """A transcript as read back from disk: the two messages and the footer."""

    msg_a: ProtocolMessage
    msg_b: ProtocolMessage
    match: bool
    digest: str


def read_transcript(data: bytes | str) -> TranscriptFile:
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise WireFormatError(f"not a JSON document: {exc}") from exc
    if not isinstance(doc, list) or len(doc) != 3 or not isinstance(doc[2], dict):
        raise WireFormatError("transcript must be [message, message, footer]")
    a = message_from_json(doc[0])
    b = message_from_json(doc[1])
    if a.role != "A" or b.role != "B" or a.n != b.n:
        raise WireFormatError("transcript messages must be A then B over the same B_n")
    footer = doc[2]
    if not isinstance(footer.get("match"), bool) or not isinstance(footer.get("digest"), str):
        raise WireFormatError("bad transcript footer")
    return TranscriptFile(a, b, footer["match"], footer["digest"])


def exchange(x: PrivateKey | BraidWord, y: PrivateKey | BraidWord, hash_name: str = DEFAULT_HASH) -> Transcript:
    """Run both commits and both derivations for given keys (no configuration checks)."""
    msg_a = commit(x, "A")
    msg_b = commit(y, "B")
    key_a = derive_key_initiator(x, msg_b, hash_name)
    key_b = derive_key_responder(y, msg_a, hash_name)
    return Transcript(msg_a, msg_b, key_a, key_b)


def run_exchange(cfg: SessionConfig, force: bool = False) -> Transcript:
    """Sample both keys from the configuration and run the exchange.

    Commuting index pairs are rejected up front unless ``force``; an identity
    shared key always raises DegenerateSessionError (carrying the transcript).
    """
    if force:
        try:
            cfg.validate()
        except CommutingSubgroupsError:
            pass
    else:
        cfg.validate()
    x = sample_key(cfg.n, cfg.alice_index, cfg.key_length, cfg.seed_a, cfg.relators)
    y = sample_key(cfg.n, cfg.bob_index, cfg.key_length, cfg.seed_b, cfg.relators)
    t = exchange(x, y, cfg.hash_name)
    if t.key_a.nf.is_identity() or t.key_b.nf.is_identity():
        raise DegenerateSessionError("shared key is the identity braid", t)
    return t


@dataclass(frozen=True)
class AAGTranscript:
    msg_a: tuple[NormalForm, ...]
    msg_b: tuple[NormalForm, ...]
    key_a: NormalForm
    key_b: NormalForm

    @property
    def match(self) -> bool:
        return self.key_a == self.key_b


def _eval_word(gens: Sequence[NormalForm], word, n: int) -> NormalForm:
    seq = []
    for idx, sign in word:
        if not 0 <= idx < len(gens):
            raise ProtocolError(f"generator index {idx} outside [0, {len(gens) - 1}]")
        seq.append(gens[idx] if sign > 0 else invert(gens[idx]))
    return product(seq, n)


def run_original_aag(
    n: int,
    s_a: Sequence[BraidWord],
    s_b: Sequence[BraidWord],
    u_word: Sequence[tuple[int, int]],
    v_word: Sequence[tuple[int, int]],
) -> AAGTranscript:
    """The two-subgroup exchange: u is a word over S_A, v a word over S_B (0-based ids)."""
    sa = [normalize(w) for w in s_a]
    sb = [normalize(w) for w in s_b]
    for g in sa + sb:
        if g.n != n:
            raise StrandMismatchError(f"public generator in B_{g.n}, expected B_{n}")
    u = _eval_word(sa, u_word, n)
    v = _eval_word(sb, v_word, n)
    u_inv, v_inv = invert(u), invert(v)
    msg_a = tuple(product([u_inv, t, u], n) for t in sb)
    msg_b = tuple(product([v_inv, s, v], n) for s in sa)
    # Alice: u⁻¹ · u(v⁻¹s_iv); Bob: (v⁻¹ · v(u⁻¹t_ju))⁻¹
    key_a = multiply(u_inv, _eval_word(msg_b, u_word, n))
    key_b = invert(multiply(v_inv, _eval_word(msg_a, v_word, n)))
    return AAGTranscript(msg_a, msg_b, key_a, key_b)
