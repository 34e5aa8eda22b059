"""Command-line front end: normalize, keygen, exchange, attack, bench.

Exit codes: 0 success, 1 domain/validation error, 2 I/O or format error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .attacks import (
    METHODS,
    AttackInstance,
    BenchmarkConfig,
    UnsupportedMethodError,
    attack_benchmark,
    attacker_key_recovery,
    benchmark_csv,
    run_method,
    sss_conjugator_search,
)
from .braid import BraidError, StrandMismatchError, WordParseError, normalize, parse_word
from .mihailova import InvalidKeyError, RelatorSet, load_key, sample_key
from .protocol import (
    CommutingSubgroupsError,
    WireFormatError,
    exchange,
    read_transcript,
    subgroups_interact,
)
from .summit import DEFAULT_CAP

EXIT_OK, EXIT_DOMAIN, EXIT_IO = 0, 1, 2


class FormatError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def cmd_normalize(args) -> int:
    nf = normalize(parse_word(args.n, args.word))
    print(nf.render())
    print(f"({nf.inf}, {nf.length}, {nf.sup})")
    return EXIT_OK


def cmd_keygen(args) -> int:
    relators = _load_relators(args.relators)
    key = sample_key(args.n, args.index, args.len, args.seed, relators)
    text = key.dumps() + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(key.check(), file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK


def cmd_exchange(args) -> int:
    relators = _load_relators(args.relators)
    x = _load_key(args.key_a, relators)
    y = _load_key(args.key_b, relators)
    if x.n != y.n:
        raise StrandMismatchError(f"keys live in B_{x.n} and B_{y.n}")
    if not subgroups_interact(x.i, y.i):
        raise CommutingSubgroupsError(f"G_{x.i} and G_{y.i} commute elementwise; the shared key would be the identity")
    t = exchange(x, y)
    if args.out:
        Path(args.out).write_bytes(t.to_bytes())
    print(t.key_a.hex)
    print(f"match={'true' if t.match else 'false'}")
    if t.key_a.nf.is_identity():
        _err("degenerate session: shared key is the identity braid")
        return EXIT_DOMAIN
    return EXIT_OK if t.match else EXIT_DOMAIN


def cmd_attack(args) -> int:
    if args.method not in METHODS:
        raise UnsupportedMethodError(f"unsupported method {args.method!r} (available: {', '.join(METHODS)})")
    if args.transcript is None:
        if args.n is None or args.s is None or args.s_prime is None:
            raise BraidError("give a transcript path, or --n with --s and --s-prime")
        s = normalize(parse_word(args.n, args.s))
        s_prime = normalize(parse_word(args.n, args.s_prime))
        if args.method == "sss":
            rep = sss_conjugator_search(s, s_prime, args.cap)
        else:
            rep = run_method(args.method, AttackInstance(args.n, ((s, s_prime),)), args.budget, args.cap)
    else:
        try:
            data = Path(args.transcript).read_bytes()
        except OSError as exc:
            raise FormatError(f"cannot read transcript: {exc}")
        tf = read_transcript(data)
        inst = AttackInstance.from_message(tf.msg_a)
        rep = run_method(args.method, inst, args.budget, args.cap)
        if rep.success:
            rec = attacker_key_recovery(rep.candidate, tf.msg_a, tf.msg_b, tf.digest)
            rep = dataclasses.replace(rep, key_match=rec.key_match)
    print(f"method={rep.method} success={str(rep.success).lower()} iterations={rep.iterations}")
    if rep.candidate is not None:
        print(f"candidate={rep.candidate.text() or '(empty)'}")
    if rep.key_match is not None:
        print(f"key_match={str(rep.key_match).lower()}")
    print(json.dumps(rep.to_json(), separators=(",", ":")))
    return EXIT_OK


def cmd_bench(args) -> int:
    cfg = BenchmarkConfig(
        n=args.n,
        key_lengths=tuple(int(x) for x in args.len.split(",")),
        trials=args.trials,
        methods=tuple(args.method.split(",")),
        seed=args.seed,
        budget=args.budget,
        cap=args.cap,
        planted=args.planted,
    )
    text = benchmark_csv(attack_benchmark(cfg))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _load_relators(path) -> RelatorSet:
    if path is None:
        return RelatorSet()
    try:
        return RelatorSet.load(path)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read relator file {path}: {exc}")


def _load_key(path, relators):
    try:
        return load_key(path, relators)
    except OSError as exc:
        raise FormatError(f"cannot read key file {path}: {exc}")


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    p = argparse.ArgumentParser(prog="braidaag", description=__doc__.splitlines()[0], formatter_class=fmt)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", help="print the left normal form of a braid word", formatter_class=fmt)
    s.add_argument("--n", type=int, required=True, help="strand count")
    s.add_argument("word", help='signed generator indices, e.g. "1 -2 3"')
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("keygen", help="sample a private key from M(G_i)", formatter_class=fmt)
    s.add_argument("--n", type=int, default=8, help="strand count")
    s.add_argument("--index", type=int, default=1, help="subgroup index i, 1 <= i <= n-5")
    s.add_argument("--len", type=int, default=16, help="number of Mihailova generator letters")
    s.add_argument("--seed", type=int, default=42, help="sampler seed")
    s.add_argument("--relators", default=None, help="relator file (omit for diagonal-only mode)")
    s.add_argument("--out", default=None, help="key file path (stdout if omitted)")
    s.set_defaults(func=cmd_keygen)

    s = sub.add_parser("exchange", help="run the key exchange between two key files", formatter_class=fmt)
    s.add_argument("key_a", help="initiator key file")
    s.add_argument("key_b", help="responder key file")
    s.add_argument("--relators", default=None, help="relator file the keys were generated with")
    s.add_argument("--out", default=None, help="transcript path")
    s.set_defaults(func=cmd_exchange)

    s = sub.add_parser("attack", help="attack a transcript or a single conjugate pair", formatter_class=fmt)
    s.add_argument("transcript", nargs="?", default=None, help="transcript file")
    s.add_argument("--method", default="length", help=f"one of {', '.join(METHODS)}")
    s.add_argument("--budget", type=int, default=10_000, help="length-based attack step limit")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP, help="super summit set size limit")
    s.add_argument("--seed", type=int, default=42, help="accepted for uniformity; the attacks are deterministic")
    s.add_argument("--n", type=int, default=None, help="strand count for --s/--s-prime")
    s.add_argument("--s", default=None, help="base braid word")
    s.add_argument("--s-prime", default=None, help="conjugated braid word")
    s.set_defaults(func=cmd_attack)

    s = sub.add_parser("bench", help="attack benchmark, CSV output", formatter_class=fmt)
    s.add_argument("--n", type=int, default=6, help="strand count")
    s.add_argument("--len", default="1,2,3,4", help="comma-separated key lengths")
    s.add_argument("--trials", type=int, default=50, help="sessions per key length")
    s.add_argument("--method", default="length", help="comma-separated methods")
    s.add_argument("--seed", type=int, default=42, help="benchmark seed")
    s.add_argument("--budget", type=int, default=10_000, help="length-based attack step limit")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP, help="super summit set size limit")
    s.add_argument("--planted", default="artin", choices=["artin", "mihailova"], help="how planted keys are drawn")
    s.add_argument("--out", default=None, help="CSV path (stdout if omitted)")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, WireFormatError, InvalidKeyError, WordParseError) as exc:
        _err(str(exc))
        return EXIT_IO
    except (BraidError, ValueError) as exc:
        _err(str(exc))
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
