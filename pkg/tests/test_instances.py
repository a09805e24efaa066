import math

import numpy as np
import pytest

from polypack.geometry import Point, ValidationError, is_simple
from polypack.instances import (
    BUILTIN_IDS,
    RECT_IMAX,
    RECT_SA_BEST,
    InstanceFormatError,
    area_lower_bound,
    builtin,
    dumps,
    load,
    loads,
    random_rectangles,
    rectangle_structure,
    reference_layout,
    resolve,
    save,
)
from polypack.model import layout_overlap, layout_radius, validate_solution

from _oracles import polar_to_xy, shoelace

SQ2 = math.sqrt(2)
PI = math.pi


def test_opt3_literal():
    inst = builtin("opt-3")
    assert inst.k == 6 and inst.initial_radius == 3.4
    assert inst.known_optimum == pytest.approx(2 * math.sqrt(3))
    for p in inst.polygons:
        assert p.mass == 100
        np.testing.assert_array_equal(p.r, [2, 2, 2])
        np.testing.assert_allclose(p.theta, [0, 2 * PI / 3, 4 * PI / 3])


def test_opt1_literal():
    inst = builtin("opt-1")
    assert inst.k == 5
    assert [p.mass for p in inst.polygons] == [30, 30, 10, 10, 10]
    for p in inst.polygons[:2]:
        np.testing.assert_allclose(p.r, [math.sqrt(10) / 2] * 4)
    for p in inst.polygons[2:]:
        assert shoelace(polar_to_xy(p.r, p.theta)) == pytest.approx(1.0)
    assert inst.known_optimum == pytest.approx(math.sqrt(4 + 9 / 64))


def test_table2_optima():
    expected = {"opt-1": 2.034, "opt-2": 2.828, "opt-3": 3.464, "opt-4": 4.243, "opt-5": 5.657, "opt-6": 4.243}
    for name, v in expected.items():
        assert builtin(name).known_optimum == pytest.approx(v, abs=1.5e-3), name


def test_rect1_literal():
    inst = builtin("rect-1")
    assert inst.k == 5 and inst.initial_radius == 20
    p = inst.polygons[0]
    assert p.mass == 12
    np.testing.assert_array_equal(p.r, [5, 5, 5, 5])
    assert p.theta[0] == pytest.approx(math.atan(3 / 4))


def test_rect_presets():
    assert RECT_IMAX == {"rect-1": 100000, "rect-2": 120000, "rect-3": 108000, "rect-4": 100000}
    assert RECT_SA_BEST == {"rect-1": 12.776, "rect-2": 16.004, "rect-3": 20.849, "rect-4": 29.969}
    for name in RECT_IMAX:
        assert builtin(name).known_optimum is None


def test_unknown_builtin():
    with pytest.raises(KeyError):
        builtin("opt-7")


@pytest.mark.parametrize("name", BUILTIN_IDS)
def test_builtin_validates(name):
    inst = builtin(name)
    assert inst.k >= 1 and inst.initial_radius > 0
    for p in inst.polygons:
        assert p.mass > 0 and p.vertex_count >= 3
        assert is_simple(polar_to_xy(p.r, p.theta))
    assert inst.initial_radius >= max(p.radius for p in inst.polygons)


# -- rectangle_structure -----------------------------------------------------

def test_rectangle_8x6():
    s = rectangle_structure(8, 6, 12)
    np.testing.assert_allclose(s.r, [5, 5, 5, 5], rtol=1e-15)
    a = math.atan(3 / 4)
    np.testing.assert_allclose(s.theta, [a, PI - a, PI + a, 2 * PI - a], rtol=1e-15)


def test_unit_square():
    s = rectangle_structure(1, 1, 3)
    np.testing.assert_allclose(s.r, [SQ2 / 2] * 4, rtol=1e-15)
    np.testing.assert_allclose(s.theta, [PI / 4, 3 * PI / 4, 5 * PI / 4, 7 * PI / 4], rtol=1e-15)


def test_offset_at_corner_is_rejected():
    # the corner itself would put a vertex at r = 0
    with pytest.raises(ValidationError):
        rectangle_structure(1, 1, 1, com_offset=Point(-0.5, -0.5))
    with pytest.raises(ValidationError):
        rectangle_structure(1, 1, 1, com_offset=Point(0.7, 0))


def test_offset_near_corner_distances():
    s = rectangle_structure(1, 1, 1, com_offset=Point(-0.5 + 1e-9, -0.5 + 1e-9))
    np.testing.assert_allclose(sorted(s.r), [0, 1, 1, SQ2], atol=1e-8)


def test_offset_keeps_area():
    s = rectangle_structure(3, 2, 1, com_offset=Point(0.4, -0.3))
    assert shoelace(polar_to_xy(s.r, s.theta)) == pytest.approx(6.0)


@pytest.mark.parametrize("w,h,m", [(0, 1, 1), (1, -1, 1), (1, 1, 0)])
def test_rectangle_bad_args(w, h, m):
    with pytest.raises(ValidationError):
        rectangle_structure(w, h, m)


# -- random_rectangles -------------------------------------------------------

def test_random_rectangles():
    a = random_rectangles(40, seed=3)
    assert a == random_rectangles(40, seed=3)
    assert a != random_rectangles(40, seed=4)
    assert a.k == 40
    area = 0.0
    for p in a.polygons:
        assert p.vertex_count == 4
        assert np.ptp(p.r) <= 1e-12 * p.r[0]
        P = polar_to_xy(p.r, p.theta)
        w, h = np.ptp(P[:, 0]), np.ptp(P[:, 1])
        assert 2 <= w <= 10 and 2 <= h <= 10
        assert p.r[0] == pytest.approx(math.hypot(w, h) / 2)
        assert 5 <= p.mass <= 30
        area += w * h
    assert a.initial_radius == pytest.approx(2 * math.sqrt(area / PI))
    assert area_lower_bound(a) == pytest.approx(math.sqrt(area / PI))


def test_random_rectangles_r0_covers_largest_piece():
    inst = random_rectangles(1, size_range=(10, 10), seed=0)
    assert inst.initial_radius >= inst.polygons[0].radius


def test_random_rectangles_rejects_bad_input():
    with pytest.raises(ValidationError):
        random_rectangles(0)
    with pytest.raises(ValidationError):
        random_rectangles(3, size_range=(5, 2))


# -- text format ---------------------------------------------------------------

@pytest.mark.parametrize("name", BUILTIN_IDS)
def test_round_trip(name, tmp_path):
    inst = builtin(name)
    path = tmp_path / f"{name}.txt"
    save(inst, path)
    back = load(path)
    assert back == inst
    for p, q in zip(back.polygons, inst.polygons):
        assert p.r.tobytes() == q.r.tobytes() and p.theta.tobytes() == q.theta.tobytes()
    assert dumps(back) == dumps(inst)


def test_round_trip_random(tmp_path):
    inst = random_rectangles(12, seed=8)
    save(inst, tmp_path / "r.txt")
    assert load(tmp_path / "r.txt") == inst
    assert resolve(str(tmp_path / "r.txt")) == inst
    assert resolve("opt-2") == builtin("opt-2")


def test_documented_example_parses():
    text = """
    name: opt-3
    r0: 3.4
    optimum: 3.4641016151377544
    polygon:
      mass: 100
      vertex: 2.0 0.0
      vertex: 2.0 2.0943951023931953
      vertex: 2.0 4.1887902047863905
    # one polygon is enough here
    """
    inst = loads(text)
    assert inst.k == 1 and inst.name == "opt-3" and inst.known_optimum == 3.4641016151377544


HEAD = "name: t\nr0: 5\n"
TRI = "polygon:\n mass: 1\n vertex: 1 0\n vertex: 1 2\n vertex: 1 4\n"


@pytest.mark.parametrize("text,needle", [
    (HEAD + "polygon:\n mass: 1\n vertex: 1 0\n vertex: 1 2\n", "3"),
    (HEAD + "polygon:\n mass: -1\n vertex: 1 0\n vertex: 1 2\n vertex: 1 4\n", "mass"),
])
def test_degenerate_polygons_are_validation_errors(text, needle):
    with pytest.raises(ValidationError) as e:
        loads(text)
    assert "line 3" in str(e.value) and needle in str(e.value)


@pytest.mark.parametrize("text,line", [
    (HEAD + TRI + "colour: red\n", 8),
    (HEAD + "polygon:\n mass: one\n", 4),
    ("r0: 5\n" + TRI, None),
    (HEAD, None),
    (HEAD + " vertex: 1 0\n", 3),
    (HEAD + "polygon:\n mass: 1\n vertex: 1\n", 5),
    (HEAD + "r0: 6\n" + TRI, 3),
    (HEAD + "polygon:\n mass: nan\n", 4),
    (HEAD + "polygon:\n vertex: 1 0\n vertex: 1 2\n vertex: 1 4\n", 3),
    (HEAD + "no colon here\n", 3),
])
def test_format_errors_name_the_line(text, line):
    with pytest.raises(InstanceFormatError) as e:
        loads(text, source="f.txt")
    msg = str(e.value)
    assert msg.startswith("f.txt")
    if line is not None:
        assert f"line {line}" in msg


def test_comment_survives():
    inst = builtin("opt-2")
    assert "emended" in inst.comment
    assert loads(dumps(inst)).comment == inst.comment


# -- hand-built optimal layouts -------------------------------------------------

@pytest.mark.parametrize("name", [n for n in BUILTIN_IDS if n.startswith("opt-")])
def test_reference_layout_reaches_optimum(name):
    L = reference_layout(name)
    if L is None:
        pytest.skip(f"no unambiguous optimal configuration is known for {name}")
    inst = builtin(name)
    assert layout_overlap(inst, L) == 0
    assert validate_solution(inst, L).feasible
    assert layout_radius(inst, L) == pytest.approx(inst.known_optimum, abs=1e-6)
