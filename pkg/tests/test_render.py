import pytest

from addcomp.catalog import named_sets
from addcomp.group import GroupError, Window, free_group
from addcomp.render import Layer, Slice, audit, render, render_ascii, render_svg
from addcomp.sets import empty

from conftest import GOLDEN

FIG7 = [Layer("W", named_sets("cor4.8-W")), Layer("M", named_sets("cor4.8-M"))]
WIN = Window.parse("-10..10,-10..10")


def test_golden_svg_is_byte_stable():
    a = render_svg(FIG7, WIN, title="cor4.8")
    b = render_svg(FIG7, WIN, title="cor4.8")
    assert a == b
    assert a == (GOLDEN / "cor4_8.svg").read_text()


def test_golden_ascii():
    assert render_ascii(FIG7, WIN, title="cor4.8") == (GOLDEN / "cor4_8.txt").read_text()


def test_every_glyph_is_a_member():
    assert audit(FIG7, WIN) == []
    text = render_ascii(FIG7, Window.parse("-3..3,-3..3"))
    rows = text.splitlines()[-7:]
    for y, row in zip(range(3, -4, -1), rows):
        cells = row.split()[-1]
        for x, ch in zip(range(-3, 4), cells):
            w = FIG7[0].set.contains((x, y))
            m = FIG7[1].set.contains((x, y))
            assert ch == ("&" if w and m else "#" if w else "o" if m else ".")


def test_empty_set_is_blank():
    text = render_ascii([Layer("E", empty(free_group(2)))], Window.parse("-2..2,-2..2"))
    assert all(set(line.split()[-1]) == {"."} for line in text.splitlines()[-5:])
    svg = render_svg([Layer("E", empty(free_group(2)))], Window.parse("-2..2,-2..2"))
    assert '<g id="layer0"' in svg and "<rect x" in svg


def test_rank_three_needs_a_slice():
    layers = [Layer("W", named_sets("cor4.9-W"))]
    w = Window.parse("-2..2,-2..2,-2..2")
    with pytest.raises(GroupError):
        render(layers, w, "ascii")
    text = render(layers, w, "ascii", Slice.parse("0,2@0,1,0"))
    assert "coordinate 2" in text


def test_side_parabola_shape():
    text = render_ascii([Layer("W+", named_sets("side-parabola-W+"))], Window.parse("-6..6,-4..4"))
    assert text.splitlines()[-5].split()[-1] == ".......######"
