from __future__ import annotations

import json

import pytest

from nichols_knots.knotdiag import (UNKNOT, BraidError, BraidWord, DiagramError, LongDiagram,
                                    best_conjugate, braid_to_long_diagram, builtin_knot_table,
                                    cap, cross, cup, kink, lookup, parse_braid_word,
                                    plat_from_conway, plat_to_long_diagram, prepare, validate,
                                    width_profile)

TABLE = [e for e in builtin_knot_table() if e is not UNKNOT]


def test_parse_plain_and_power_tokens():
    assert parse_braid_word("1 1 1").letters == (1, 1, 1)
    assert parse_braid_word("s1^3").letters == (1, 1, 1)
    b = parse_braid_word("σ2^-1, 1 -2 1")
    assert b.letters == (-2, 1, -2, 1) and b.width == 3


def test_explicit_width():
    assert parse_braid_word("1 2 3", width=4).width == 4
    with pytest.raises(BraidError):
        parse_braid_word("1 2 3", width=3)


@pytest.mark.parametrize("text", ["1 1", "1 x", "0 1", "1 3"])
def test_rejected_words(text):
    with pytest.raises(BraidError):
        parse_braid_word(text)


def test_permutation_and_components():
    assert BraidWord(3, (1, 2)).components() == 1
    assert BraidWord(2, (1, 1)).components() == 2
    assert BraidWord(3, (1, 1)).components() == 3
    assert BraidWord(2, (1,)).permutation() == [1, 0]


def test_mirror_and_conjugates():
    b = BraidWord(3, (1, -2, 1))
    assert b.mirror().letters == (-1, 2, -1)
    assert b.rotate(1).letters == (-2, 1, 1)
    assert b.flip().letters == (2, -1, 2)


@pytest.mark.parametrize("entry", TABLE, ids=[e.name for e in TABLE])
def test_table_diagrams_are_normal_balanced_knots(entry):
    assert entry.braid.components() == 1
    for where in ("bottom", "top"):
        d = entry.diagram(where=where)
        assert validate(d) == []
        assert d.balanced and d.normal
    if entry.plat is not None:
        assert validate(entry.diagram(style="plat")) == []


def test_trefoil_diagram_crossings():
    d = lookup("3_1").diagram()
    # three braid crossings, one crossing from a rightward extremum, one curl of two crossings
    assert (d.positive, d.negative) == (3, 3)


def test_rightward_extrema_are_reported_before_normalization():
    raw = braid_to_long_diagram(lookup("3_1").braid, normalize=False)
    assert "rightward extremum present" in validate(raw, require_balanced=False)
    assert braid_to_long_diagram(lookup("3_1").braid).normal


@pytest.mark.parametrize("sign", [1, -1])
def test_curls_change_writhe_by_two(sign):
    d = LongDiagram.from_slices(kink(sign))
    assert d.writhe == 2 * sign and d.normal and d.max_width <= 3


def test_malformed_slices():
    with pytest.raises(DiagramError):
        LongDiagram.from_slices([cross(0, "P")])
    for slices in ([cup(0)], [cap(0)], [cup(0), cap(0)]):
        with pytest.raises(DiagramError):
            LongDiagram.from_slices(slices)


def test_empty_word_is_the_unknot():
    b = parse_braid_word("")
    assert b.width == 1 and b.letters == ()


def test_conjugation_never_widens():
    for e in TABLE:
        naive = max(width_profile(braid_to_long_diagram(e.braid)), default=1)
        best = max(width_profile(braid_to_long_diagram(best_conjugate(e.braid))), default=1)
        assert best <= naive


def test_plat_words_are_four_strands():
    b = plat_from_conway([3, 1, 2])
    assert b.width == 4 and set(abs(x) for x in b.letters) <= {1, 2}
    assert validate(LongDiagram.from_slices(plat_to_long_diagram(b).slices), require_balanced=False) == []


def test_lookup_and_mirror():
    e = lookup("5_2")
    m = lookup("m5_2")
    assert m.braid == e.braid.mirror() and m.mirror
    assert lookup("unknot") is UNKNOT
    with pytest.raises(KeyError):
        lookup("12a_1")


def test_connected_sum_stacks_diagrams():
    a = prepare(lookup("3_1").braid)
    b = prepare(lookup("4_1").braid)
    s = a.then(b)
    assert s.crossings == a.crossings + b.crossings
    assert validate(s) == []


def test_json_export():
    d = lookup("4_1").diagram()
    data = json.loads(d.to_json())
    assert len(data["slices"]) == len(d.slices)
