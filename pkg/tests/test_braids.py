"""Braid words, moves, script parsing, loop verification, builtins."""

from collections import Counter
from random import Random

import pytest

from legmon.braids import (
    BUILTIN_NAMES,
    BraidWord,
    IllegalMove,
    Move,
    MoveScript,
    ScriptSyntaxError,
    append_generator,
    apply_move,
    builtin_script,
    parse_script,
    verify_loop,
)


def w(strands, *letters):
    return BraidWord(strands, letters)


def test_word_validation():
    with pytest.raises(ValueError):
        BraidWord(1, ())
    with pytest.raises(ValueError):
        BraidWord(3, (0,))
    with pytest.raises(ValueError):
        BraidWord(3, (3,))
    assert len(w(3, 1, 2, 1)) == 3


def test_apply_move_examples():
    assert apply_move(w(3, 2, 1, 2), Move("r3d", 1)) == w(3, 1, 2, 1)
    assert apply_move(w(4, 1, 3), Move("comm", 1)) == w(4, 3, 1)
    assert apply_move(w(3, 1, 2, 1, 2), Move("shift")) == w(3, 2, 1, 2, 1)
    assert apply_move(w(3, 1, 2, 1), Move("r3a", 1)) == w(3, 2, 1, 2)


def test_illegal_moves():
    with pytest.raises(IllegalMove):
        apply_move(w(3, 1, 2, 1), Move("r3d", 1))  # pattern is r3a's
    with pytest.raises(IllegalMove):
        apply_move(w(3, 1, 2), Move("comm", 1))  # adjacent indices
    with pytest.raises(IllegalMove):
        apply_move(w(4, 1, 3, 2), Move("comm", 3))  # runs off the end
    with pytest.raises(IllegalMove):
        apply_move(w(3, 1, 2, 1), Move("r3a", 3))  # no wrap-around


def test_moves_never_wrap():
    # (2,1,2) read cyclically from position 3 would match r3a, but moves
    # must fit inside the word.
    with pytest.raises(IllegalMove):
        apply_move(w(3, 2, 1, 2), Move("r3a", 3))


def test_move_validation():
    with pytest.raises(ValueError):
        Move("shift", 1)
    with pytest.raises(ValueError):
        Move("comm")
    with pytest.raises(ValueError):
        Move("r3x", 1)


def test_move_inverses_property():
    rng = Random(2)
    words = []
    for _ in range(200):
        k = rng.choice((3, 4))
        n = rng.randint(2, 14)
        words.append(BraidWord(k, tuple(rng.randint(1, k - 1) for _ in range(n))))
    for word in words:
        n = len(word)
        shifted = apply_move(word, Move("shift"))
        for _ in range(n - 1):
            shifted = apply_move(shifted, Move("shift"))
        assert shifted == word  # length-many shifts is the identity
        for pos in range(1, n + 1):
            for kind, inverse in (("comm", "comm"), ("r3a", "r3d"), ("r3d", "r3a")):
                try:
                    once = apply_move(word, Move(kind, pos))
                except IllegalMove:
                    continue
                assert apply_move(once, Move(inverse, pos)) == word
                assert len(once) == n


def test_letter_multiset_changes():
    word = w(3, 1, 2, 1, 2)
    assert Counter(apply_move(word, Move("shift")).letters) == Counter(word.letters)
    moved = apply_move(word, Move("r3a", 1))
    assert Counter(moved.letters) == Counter((2, 1, 2, 2))
    word4 = w(4, 1, 3, 2)
    assert Counter(apply_move(word4, Move("comm", 1)).letters) == Counter(word4.letters)


def test_parse_script_examples():
    base = w(3, 1, 2, 1, 2, 1, 2)
    script = parse_script("shift\nr3d 1", base)
    assert script.moves == (Move("shift"), Move("r3d", 1))
    script = parse_script("# header\n\n  comm 2  # swap\nshift\n", base, name="demo")
    assert script.moves == (Move("comm", 2), Move("shift"))
    assert script.name == "demo"
    assert script.base == base


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("comm 0", "1-based"),
        ("r3x 2", "unknown move keyword"),
        ("shift 3", "takes no position"),
        ("comm", "needs a position"),
        ("r3a two", "not a decimal integer"),
        ("comm -1", "not a decimal integer"),
    ],
)
def test_parse_script_errors(text, fragment):
    base = w(3, 1, 2)
    with pytest.raises(ScriptSyntaxError) as err:
        parse_script(text, base)
    assert fragment in str(err.value)
    assert err.value.line == 1
    assert err.value.column >= 1


def test_script_text_round_trip():
    script = builtin_script("xi2", s=2)
    again = parse_script(script.to_text(), script.base)
    assert again.moves == script.moves


def test_verify_loop_sigma1_example():
    script = builtin_script("sigma1", s=2)
    assert script.base == w(3, *(1, 2) * 9)
    assert script.moves == (
        Move("shift"),
        Move("r3d", 1), Move("r3d", 7), Move("r3d", 13),
        Move("r3a", 4), Move("r3a", 10), Move("r3a", 16),
    )
    report = verify_loop(script)
    assert report.is_loop
    assert len(report.trace) == 8  # base plus one word per move
    assert report.trace[-1] == script.base


def test_verify_loop_shift_examples():
    base = w(3, *(1, 2) * 9)
    one = verify_loop(MoveScript(base, (Move("shift"),)))
    assert not one.is_loop
    assert one.trace[-1].letters[0] == 2
    two = verify_loop(MoveScript(base, (Move("shift"), Move("shift"))))
    assert two.is_loop


def test_verify_loop_reports_step_and_trace():
    base = w(3, 1, 2, 1, 2)
    script = MoveScript(base, (Move("shift"), Move("r3d", 9)))
    with pytest.raises(IllegalMove) as err:
        verify_loop(script)
    assert err.value.step == 2
    assert err.value.trace == (base, apply_move(base, Move("shift")))


@pytest.mark.parametrize("name", ["sigma1", "xi1", "xi2", "xi3"])
@pytest.mark.parametrize("s", [1, 2, 3, 4])
def test_builtin_loops_certify(name, s):
    assert verify_loop(builtin_script(name, s)).is_loop


def test_builtin_delta_power():
    script = builtin_script("delta_power", s=2, k_for_delta=3)
    assert script.base == w(3, *(1, 2) * 9)
    assert script.moves == (Move("shift"), Move("shift"))
    assert verify_loop(script).is_loop
    four = builtin_script("delta_power", s=1, k_for_delta=4)
    assert four.base == w(4, *(1, 2, 3) * 8)
    assert len(four.moves) == 3
    assert verify_loop(four).is_loop


def test_builtin_validation():
    with pytest.raises(ValueError):
        builtin_script("nope")
    with pytest.raises(ValueError):
        builtin_script("sigma1", s=0)
    with pytest.raises(ValueError):
        builtin_script("xi1", s=1, k_for_delta=4)
    assert set(BUILTIN_NAMES) == {"sigma1", "xi1", "xi2", "xi3", "delta_power"}


def test_append_generator():
    base = w(3, *(1, 2) * 9)
    assert append_generator(base, 1).letters == base.letters + (1,)
    grown = append_generator(append_generator(base, 1), 2)
    assert grown == w(3, *(1, 2) * 10)
    with pytest.raises(ValueError):
        append_generator(w(3, 1), 3)
