import json
import random

import pytest

from braidaag.braid import BraidWord, NormalForm, StrandMismatchError, delta, equals, invert, multiply, normalize
from braidaag.mihailova import make_key, sample_key
from braidaag.protocol import (
    CommutingSubgroupsError,
    DegenerateSessionError,
    ProtocolError,
    SessionConfig,
    WireFormatError,
    commit,
    decode,
    derive_key_initiator,
    derive_key_responder,
    encode,
    exchange,
    generator_nf,
    read_transcript,
    run_exchange,
    run_original_aag,
    subgroups_interact,
)

from oracles import artin_action


def W(n, *letters):
    return BraidWord(n, letters)


def test_commit_identity_key():
    m = commit(W(5))
    assert m.conjugates == tuple(generator_nf(5, j) for j in range(1, 5))


def test_commit_example_matches_direct_computation():
    k = W(6, 1, 1)
    m = commit(k)
    direct = W(6, -1, -1, 2, 1, 1)
    assert m.conjugates[1] == normalize(direct)
    assert artin_action(6, m.conjugates[1].to_word().letters) == artin_action(6, direct.letters)


def test_commit_exponent_sums():
    for seed in range(10):
        m = commit(sample_key(8, 1, 8, seed), "B")
        assert m.role == "B" and len(m.conjugates) == 7
        assert all(c.exponent_sum() == 1 for c in m.conjugates)


def test_commit_bad_role():
    with pytest.raises(ProtocolError):
        commit(W(4, 1), "C")


def test_empty_keys_give_identity():
    y = sample_key(8, 2, 5, 3)
    assert derive_key_initiator(W(8), commit(y, "B")).nf.is_identity()
    assert derive_key_responder(W(8), commit(sample_key(8, 1, 5, 3), "A")).nf.is_identity()


def test_disjoint_supports_give_identity():
    t = exchange(W(8, 1, 1), W(8, 5, -6))
    assert t.match and t.key_a.nf.is_identity()


def test_role_and_strand_checks():
    x = sample_key(8, 1, 4, 1)
    with pytest.raises(ProtocolError):
        derive_key_initiator(x, commit(x, "A"))
    with pytest.raises(StrandMismatchError):
        derive_key_responder(x, commit(W(9, 1), "A"))


def test_session_keys_agree():
    for seed in range(15):
        x = sample_key(8, 1, 10, seed)
        y = sample_key(8, 2, 10, seed + 100)
        t = exchange(x, y)
        assert t.match and equals(t.key_a.nf, t.key_b.nf)
        assert t.key_a.nf.exponent_sum() == 0
        assert t.key_a.digest == t.key_b.digest


def test_key_matches_direct_commutator():
    rng = random.Random(5)
    for _ in range(10):
        x = sample_key(8, 1, 6, rng.randrange(1 << 30))
        y = sample_key(8, 2, 6, rng.randrange(1 << 30))
        direct = normalize(x.expansion.inverse() * y.expansion.inverse() * x.expansion * y.expansion)
        assert exchange(x, y).key_a.nf == direct


def test_swapped_roles_give_inverse_key():
    x = sample_key(8, 1, 8, 1)
    y = sample_key(8, 2, 8, 2)
    k = exchange(x, y).key_a.nf
    k_swapped = exchange(y, x).key_a.nf
    assert k_swapped == invert(k)
    assert multiply(k, k_swapped).is_identity()


@pytest.mark.parametrize("m", [-2, -1, 1, 2])
def test_central_shift_gives_identical_message(m):
    x = sample_key(8, 1, 8, 11)
    shifted = delta(8) ** (2 * m) * x.expansion
    assert encode(commit(shifted)) == encode(commit(x))


def test_wire_round_trip_and_format():
    m = commit(sample_key(8, 1, 4, 9))
    data = encode(m)
    assert decode(data) == m
    assert data.startswith(b'{"v":1,"n":8,"role":"A","conj":[{"inf":')
    assert b" " not in data


def _tamper(data: bytes, fn) -> bytes:
    doc = json.loads(data)
    fn(doc)
    return json.dumps(doc, separators=(",", ":")).encode()


def test_decode_rejects():
    data = encode(commit(sample_key(6, 1, 3, 2)))

    def bad_perm(d):
        d["conj"][0]["factors"] = [[1, 1, 3, 4, 5, 6]]

    def v2(d):
        d["v"] = 2

    def short(d):
        d["conj"].pop()

    def weight(d):
        d["conj"][0] = {"inf": 0, "factors": []}

    for fn in (bad_perm, v2, short, weight):
        with pytest.raises(WireFormatError):
            decode(_tamper(data, fn))
    with pytest.raises(WireFormatError):
        decode(b"not json")
    reordered = json.dumps({"n": 6, "v": 1, "role": "A", "conj": []}).encode()
    with pytest.raises(WireFormatError):
        decode(reordered)


def test_subgroup_interaction_rule():
    assert subgroups_interact(1, 2)
    assert subgroups_interact(1, 1)
    assert subgroups_interact(1, 6)
    assert not subgroups_interact(1, 7)


def test_default_session():
    t = run_exchange(SessionConfig())
    assert t.match and not t.key_a.nf.is_identity()
    assert run_exchange(SessionConfig()).to_bytes() == t.to_bytes()


def test_commuting_config_rejected():
    cfg = SessionConfig(n=12, alice_index=1, bob_index=7)
    with pytest.raises(CommutingSubgroupsError):
        run_exchange(cfg)
    with pytest.raises(DegenerateSessionError) as info:
        run_exchange(cfg, force=True)
    t = info.value.transcript
    assert t.match and t.key_a.nf.is_identity()


def test_transcript_file_round_trip(tmp_path):
    t = run_exchange(SessionConfig(key_length=4))
    p = tmp_path / "t.json"
    t.save(p)
    tf = read_transcript(p.read_bytes())
    assert tf.msg_a == t.msg_a and tf.msg_b == t.msg_b
    assert tf.match and tf.digest == t.key_a.hex
    with pytest.raises(WireFormatError):
        read_transcript(p.read_bytes()[:-5])


def test_original_aag():
    n = 6
    s_a = [W(n, 1, 2), W(n, 3, -1)]
    s_b = [W(n, 2, 2), W(n, 4, -3)]
    t = run_original_aag(n, s_a, s_b, [], [])
    assert t.match and t.key_a.is_identity()
    t = run_original_aag(n, s_a, s_b, [(0, 1), (1, -1), (0, 1)], [(1, 1), (0, 1)])
    assert t.match
    u = (s_a[0] * s_a[1].inverse() * s_a[0])
    v = (s_b[1] * s_b[0])
    assert t.key_a == normalize(u.inverse() * v.inverse() * u * v)
    with pytest.raises(ProtocolError):
        run_original_aag(n, s_a, s_b, [(2, 1)], [])


def test_original_aag_specializes_to_reformed_scheme():
    n = 8
    gens = [W(n, j) for j in range(1, n)]
    x = sample_key(n, 1, 6, 4)
    y = sample_key(n, 2, 6, 5)
    u_word = [(abs(a) - 1, 1 if a > 0 else -1) for a in x.expansion.letters]
    v_word = [(abs(a) - 1, 1 if a > 0 else -1) for a in y.expansion.letters]
    t_orig = run_original_aag(n, gens, gens, u_word, v_word)
    t_new = exchange(x, y)
    assert t_orig.key_a == t_new.key_a.nf == t_orig.key_b
    assert t_orig.msg_a == t_new.msg_a.conjugates
    assert t_orig.msg_b == t_new.msg_b.conjugates


def test_make_key_from_fixed_word():
    k = make_key(8, 1, [(0, 1), (1, -1)])
    assert k.expansion == W(8, 1, 1, 4, 4, -5, -5, -2, -2)
    assert isinstance(k.nf, NormalForm)
