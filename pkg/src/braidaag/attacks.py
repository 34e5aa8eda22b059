"""
Conjugacy-search attacks on exchange transcripts.

An attack instance is a list of pairs (base, conjugated) sharing one unknown
conjugator g with conjugated = g⁻¹ · base · g. A candidate is only ever
reported as successful after it has been re-checked against every pair.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import random
import time
from dataclasses import dataclass, field
from typing import Sequence

from .braid import (
    BraidWord,
    NormalForm,
    StrandMismatchError,
    _check_n,
    conjugate,
    invert,
    multiply,
    normalize,
)
from .mihailova import sample_key
from .protocol import (
    ProtocolMessage,
    SharedKey,
    commit,
    derive_key_initiator,
    exchange,
    generator_nf,
)
from .summit import DEFAULT_CAP, reduce_to_summit, super_summit_set

METHODS = ("length", "sss")


class UnsupportedMethodError(ValueError):
    pass


@dataclass(frozen=True)
class AttackInstance:
    n: int
    pairs: tuple[tuple[NormalForm, NormalForm], ...]
    planted: BraidWord | None = None

    def __post_init__(self):
        for base, conj in self.pairs:
            _check_n(self.n, base.n)
            _check_n(self.n, conj.n)
        if self.planted is not None:
            g = normalize(self.planted)
            for base, conj in self.pairs:
                if conjugate(base, g) != conj:
                    raise ValueError("planted conjugator does not match the instance pairs")

    @classmethod
    def from_message(cls, msg: ProtocolMessage, planted: BraidWord | None = None) -> AttackInstance:
        pairs = tuple((generator_nf(msg.n, j), c) for j, c in enumerate(msg.conjugates, start=1))
        return cls(msg.n, pairs, planted)

    def solved_by(self, candidate: BraidWord) -> bool:
        g = normalize(candidate)
        return all(conjugate(base, g) == conj for base, conj in self.pairs)


@dataclass(frozen=True)
class AttackReport:
    method: str
    success: bool
    candidate: BraidWord | None
    iterations: int
    key_match: bool | None = None
    # candidate · planted⁻¹; central whenever the candidate is functionally correct
    residual: NormalForm | None = None
    elapsed: float = field(default=0.0, compare=False)

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "success": self.success,
            "candidate": None if self.candidate is None else list(self.candidate.letters),
            "iterations": self.iterations,
            "key_match": self.key_match,
            "residual": None if self.residual is None else self.residual.to_json(),
            "elapsed": round(self.elapsed, 6),
        }


def is_central(nf: NormalForm) -> bool:
    """Whether nf lies in ⟨Δ²⟩."""
    return not nf.factors and nf.inf % 2 == 0


def _finish(method, inst, success, candidate, iterations, started) -> AttackReport:
    if success and not inst.solved_by(candidate):
        success = False
    residual = None
    if success and inst.planted is not None:
        residual = multiply(normalize(candidate), invert(normalize(inst.planted)))
    return AttackReport(
        method,
        success,
        candidate if success else None,
        iterations,
        residual=residual,
        elapsed=time.perf_counter() - started,
    )


def complexity(nfs: Sequence[NormalForm]) -> tuple[int, int]:
    """(total canonical length, total representative word length)."""
    return sum(x.length for x in nfs), sum(x.word_length() for x in nfs)


def length_based_attack(inst: AttackInstance, budget: int) -> AttackReport:
    """Greedy descent: repeatedly conjugate every pair by the single letter that lowers complexity most.

    Maintains cur_k = t · conjugated_k · t⁻¹ for the accumulated word t; when
    every cur_k equals its base, t is a conjugator.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    started = time.perf_counter()
    n = inst.n
    bases = [b for b, _ in inst.pairs]
    cur = [c for _, c in inst.pairs]
    t: list[int] = []
    iterations = 0
    moves = [s * j for j in range(1, n) for s in (1, -1)]
    move_nf = {a: normalize(BraidWord(n, (-a,))) for a in moves}
    score = complexity(cur)
    while cur != bases and iterations < budget:
        iterations += 1
        best = None
        for a in moves:
            # a · cur · a⁻¹
            cand = [conjugate(c, move_nf[a]) for c in cur]
            if cand == bases:
                # a solving move beats any complexity tie-break
                best = (complexity(cand), a, cand)
                break
            sc = complexity(cand)
            if best is None or sc < best[0]:
                best = (sc, a, cand)
        if best is None or (best[2] != bases and best[0] >= score):
            break
        score, a, cur = best
        t.insert(0, a)
    success = cur == bases
    return _finish("length", inst, success, BraidWord(n, tuple(t)), iterations, started)


def sss_conjugator_search(
    s: NormalForm, s_prime: NormalForm, cap: int = DEFAULT_CAP
) -> AttackReport:
    """Find g with g⁻¹ s g = s_prime by meeting in the super summit set."""
    started = time.perf_counter()
    if s.n != s_prime.n:
        raise StrandMismatchError(f"strand counts differ: {s.n} != {s_prime.n}")
    inst = AttackInstance(s.n, ((s, s_prime),))
    if s.exponent_sum() != s_prime.exponent_sum():
        return _finish("sss", inst, False, None, 0, started)
    if s == s_prime:
        return _finish("sss", inst, True, BraidWord(s.n), 0, started)
    summit = super_summit_set(s, cap)
    e, h = reduce_to_summit(s_prime)
    iterations = len(summit)
    g1 = summit.witnesses.get(e)
    if g1 is None and summit.truncated:
        other = super_summit_set(s_prime, cap)
        iterations += len(other)
        for x in summit.elements:
            if x in other:
                e, h, g1 = x, other.witnesses[x], summit.witnesses[x]
                break
    if g1 is None:
        return _finish("sss", inst, False, None, iterations, started)
    # g1⁻¹ s g1 = e = h⁻¹ s' h  =>  s' = (g1 h⁻¹)⁻¹ s (g1 h⁻¹)
    return _finish("sss", inst, True, g1 * h.inverse(), iterations, started)


def sss_attack(inst: AttackInstance, cap: int = DEFAULT_CAP) -> AttackReport:
    """SSS search on the first pair, accepted only if the conjugator fits every pair."""
    started = time.perf_counter()
    base, conj = inst.pairs[0]
    rep = sss_conjugator_search(base, conj, cap)
    return _finish("sss", inst, rep.success, rep.candidate, rep.iterations, started)


def attacker_key_recovery(
    candidate: BraidWord,
    msg_a: ProtocolMessage,
    msg_b: ProtocolMessage,
    k_true: SharedKey | str,
) -> AttackReport:
    """Use a recovered x′ exactly as Alice would and compare the resulting key.

    ``k_true`` may be the true SharedKey or just its hex digest.
    """
    started = time.perf_counter()
    reproduced = commit(candidate, "A")
    if reproduced.conjugates != msg_a.conjugates:
        return AttackReport("key-recovery", False, candidate, 1, None, elapsed=time.perf_counter() - started)
    key = derive_key_initiator(candidate, msg_b)
    if isinstance(k_true, SharedKey):
        match = key.nf == k_true.nf
    else:
        match = key.hex == k_true
    return AttackReport("key-recovery", True, candidate, 1, match, elapsed=time.perf_counter() - started)


def run_method(method: str, inst: AttackInstance, budget: int, cap: int = DEFAULT_CAP) -> AttackReport:
    if method == "length":
        return length_based_attack(inst, budget)
    if method == "sss":
        return sss_attack(inst, cap)
    raise UnsupportedMethodError(f"unsupported method {method!r} (available: {', '.join(METHODS)})")


# ---------------------------------------------------------------------------
# Benchmark


@dataclass(frozen=True)
class BenchmarkConfig:
    n: int = 6
    key_lengths: tuple[int, ...] = (1, 2)
    trials: int = 10
    methods: tuple[str, ...] = ("length",)
    seed: int = 42
    budget: int = 10_000
    cap: int = DEFAULT_CAP
    # "mihailova": key_len generator letters of M(G_i); "artin": key_len random Artin letters
    planted: str = "mihailova"
    alice_index: int = 1
    bob_index: int | None = None


@dataclass
class BenchmarkRow:
    method: str
    n: int
    key_len: int
    trials: int
    successes: int
    key_matches: int
    mean_iterations: float
    seed: int
    reports: list[AttackReport] = field(default_factory=list, repr=False)
    instances: list[AttackInstance] = field(default_factory=list, repr=False)


CSV_HEADER = ["method", "n", "key_len", "trials", "successes", "key_matches", "mean_iterations", "seed"]


def _planted_keys(cfg: BenchmarkConfig, key_len: int, rng: random.Random):
    n = cfg.n
    if key_len == 0:
        return BraidWord(n), BraidWord(n)
    if cfg.planted == "artin":
        def word():
            out: list[int] = []
            while len(out) < key_len:
                x = rng.choice([1, -1]) * rng.randint(1, n - 1)
                if out and out[-1] == -x:
                    continue
                out.append(x)
            return BraidWord(n, tuple(out))
        return word(), word()
    if cfg.planted == "mihailova":
        j = cfg.bob_index if cfg.bob_index is not None else min(cfg.alice_index + 1, n - 5)
        x = sample_key(n, cfg.alice_index, key_len, rng.getrandbits(32))
        y = sample_key(n, j, key_len, rng.getrandbits(32))
        return x, y
    raise ValueError(f"unknown planted mode {cfg.planted!r}")


def attack_benchmark(cfg: BenchmarkConfig) -> list[BenchmarkRow]:
    if cfg.trials < 1:
        raise ValueError("trials must be >= 1")
    for m in cfg.methods:
        if m not in METHODS:
            raise UnsupportedMethodError(f"unsupported method {m!r} (available: {', '.join(METHODS)})")
    rows: list[BenchmarkRow] = []
    for key_len in cfg.key_lengths:
        rng = random.Random(f"{cfg.seed}:{cfg.n}:{key_len}")
        sessions = []
        for _ in range(cfg.trials):
            x, y = _planted_keys(cfg, key_len, rng)
            t = exchange(x, y)
            planted = x.expansion if hasattr(x, "expansion") else x
            sessions.append((t, AttackInstance.from_message(t.msg_a, planted)))
        for method in cfg.methods:
            row = BenchmarkRow(method, cfg.n, key_len, cfg.trials, 0, 0, 0.0, cfg.seed)
            total_iter = 0
            for t, inst in sessions:
                rep = run_method(method, inst, cfg.budget, cfg.cap)
                if rep.success:
                    row.successes += 1
                    rec = attacker_key_recovery(rep.candidate, t.msg_a, t.msg_b, t.key_a)
                    rep = dataclasses.replace(rep, key_match=rec.key_match)
                    row.key_matches += bool(rec.key_match)
                total_iter += rep.iterations
                row.reports.append(rep)
                row.instances.append(inst)
            row.mean_iterations = total_iter / cfg.trials
            rows.append(row)
    return rows


def benchmark_csv(rows: Sequence[BenchmarkRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.method, r.n, r.key_len, r.trials, r.successes, r.key_matches, f"{r.mean_iterations:.3f}", r.seed])
    return buf.getvalue()
