import pytest

from sharply.freeprod import IDENTITY, T, format_word
from sharply.partial import (
    StageError,
    check_invariants,
    init_stage,
    process_next_pair,
    read_snapshot,
    run,
    stage_from_maps,
    totalize,
    write_snapshot,
)


def test_init_stage():
    S = init_stage(seed=5)
    assert S.point_count == 4
    assert S.t == [1, 0, 3, 2]
    assert all(S.t[p] != p for p in range(4))
    assert S.joined == {(0, 1): IDENTITY, (1, 0): T}
    assert S.pending_pairs() == 10
    assert S.rng_seed == 5


def test_first_pair_gets_a_free_generator():
    S = init_stage()
    assert process_next_pair(S) == "free"
    n1 = S.generator("n", 1)
    assert n1.fwd == {0: 0, 1: 2}
    assert format_word(S.joined[(0, 2)]) == "n1"


def test_swapped_pair_gets_a_commuting_generator():
    S = run(8)
    assert process_next_pair(S) == "commuting"
    c1 = S.generator("c", 1)
    assert c1.fwd[0] == 2 and c1.fwd[1] == 3
    assert c1.fwd[S.t[0]] == S.t[c1.fwd[0]]
    assert (2, 3) in S.joined


def test_already_joined_pair_is_a_noop():
    S = init_stage()
    process_next_pair(S)
    gens = len(S.gens)
    assert process_next_pair(S) == "joined-already"
    assert len(S.gens) == gens
    assert format_word(S.joined[(2, 0)]) == "t n1"


def test_totalize_golden_and_idempotent():
    S = init_stage()
    process_next_pair(S)
    process_next_pair(S)
    totalize(S)
    assert S.point_count == 8
    for g in S.gens:
        assert all(p in g.fwd and p in g.bwd for p in S.core)
    before = write_snapshot(S)
    totalize(S)
    assert write_snapshot(S) == before


def test_run_zero_is_init():
    assert write_snapshot(run(0)) == write_snapshot(init_stage())


def test_run_goldens():
    assert run(10, seed=1).point_count == 24
    S = run(50, seed=1)
    assert S.point_count == 192 >= 50
    assert [g.name for g in S.gens][:3] == ["n1", "n2", "c1"]


def test_monotone_growth():
    S = init_stage()
    last = (S.point_count, len(S.joined), len(S.gens))
    for _ in range(30):
        process_next_pair(S)
        totalize(S)
        now = (S.point_count, len(S.joined), len(S.gens))
        assert all(a <= b for a, b in zip(last, now))
        last = now


def test_invariants_small():
    assert check_invariants(run(10, seed=1), 3).ok


@pytest.mark.parametrize("every", [1, 3])
def test_invariants_with_lazier_totalize(every):
    report = check_invariants(run(40, seed=2, every=every), 3)
    assert report.ok, report.to_text()


def test_adversarial_stage_fails_frobenius():
    S = stage_from_maps([1, 0, 3, 2, 5, 4], {"n1": {2: 2, 4: 4}})
    report = check_invariants(S, 2)
    assert not report.ok
    assert report.frobenius
    assert "n1" in report.frobenius[0] and "[2, 4]" in report.frobenius[0]
    assert "verdict: fail" in report.to_text()


def test_adversarial_commuting_clash():
    S = stage_from_maps([1, 0, 3, 2], {"c1": {0: 2, 1: 0}})
    report = check_invariants(S, 1)
    assert report.commuting


def test_bad_t_is_reported():
    S = stage_from_maps([1, 0, 2, 2], {})
    assert check_invariants(S, 1).involution


def test_identity_joins_only_the_base_pair():
    S = run(30)
    assert [p for p, w in S.joined.items() if w == IDENTITY] == [S.base_pair]


def test_snapshot_round_trip():
    S = run(20, seed=3)
    text = write_snapshot(S)
    S2 = read_snapshot(text)
    assert write_snapshot(S2) == text
    assert check_invariants(S2, 3).ok
    # the restored stage keeps running exactly like the original
    process_next_pair(S)
    process_next_pair(S2)
    assert write_snapshot(S) == write_snapshot(S2)


def test_snapshot_errors():
    with pytest.raises(StageError, match="line 2"):
        read_snapshot("points: 2\nt: 1 x\nbase: 0 1\n")
    with pytest.raises(StageError, match="missing"):
        read_snapshot("points: 2\nt: 1 0\n")


def test_invalid_arguments():
    with pytest.raises(ValueError):
        run(-1)
    with pytest.raises(ValueError):
        check_invariants(init_stage(), 0)
