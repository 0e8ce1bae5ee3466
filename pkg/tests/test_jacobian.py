import dataclasses
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fixtures_lib import (
    figure_eight,
    tail_cycle_curve,
    theta_curve,
    triangle_cycle_host,
    tropical_line,
    two_triangles_bridged,
    unit_triangle_cycle,
    vertical_line,
    weight_two_edge_curve,
    wedge_l,
    wedge_m,
)
from tropcurve.curve import items, translate, _item_intersection
from tropcurve.geom import cross, pt
from tropcurve.intersect import Divisor, stable_intersection
from tropcurve.jacobian import (
    CycleSystem,
    UnsupportedCurveError,
    abel_coordinate,
    cycle_system,
    linearly_equivalent,
    linearly_equivalent_on,
    parametrize_cycles,
    project_point,
    sigma,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_moduli_triangle_host():
    s = cycle_system(triangle_cycle_host())
    assert s.genus == 1
    assert s.moduli() == (Fraction(3, 2),)


def test_moduli_unit_triangle():
    s = cycle_system(unit_triangle_cycle())
    assert s.moduli() == (Fraction(3),)


def test_moduli_genus_two():
    for host in (figure_eight(), two_triangles_bridged()):
        s = cycle_system(host)
        assert s.genus == 2
        assert s.moduli() == (Fraction(3), Fraction(3))


def test_square_cycle_length():
    from tropcurve.curve import curve

    square = curve(
        [(0, 0), (2, 0), (2, 2), (0, 2)],
        edges=[(0, 1), (1, 2), (2, 3), (3, 0)],
        rays=[(0, (-1, -1)), (1, (1, -1)), (2, (1, 1)), (3, (-1, 1))],
    )
    from tropcurve.curve import validate

    assert validate(square).passed
    s = cycle_system(square)
    assert s.moduli() == (Fraction(8),)


def test_parametrization_midpoint():
    c = unit_triangle_cycle()
    s = cycle_system(c)
    (cp,) = s.cycles
    assert cp.base_vertex == 0
    mid = cp.point_at(c, Fraction(3, 2))
    assert mid == pt("1/2", "1/2")
    assert cp.param_of(c, mid) == Fraction(3, 2)
    assert cp.point_at(c, Fraction(0)) == c.vertices[0]
    assert cp.point_at(c, cp.total_length + Fraction(1, 2)) == cp.point_at(
        c, Fraction(1, 2)
    )


def test_project_points():
    c = triangle_cycle_host()
    s = cycle_system(c)
    base = s.cycles[0].base_vertex
    assert project_point(s, c.vertices[base]) == (None, 0)
    # vertex above the base along the cycle
    assert project_point(s, pt("5/2", -1)) == (0, Fraction(1, 2))
    assert project_point(s, pt("5/2", "-1/2")) == (0, Fraction(1))
    # ray points inherit their attachment: the (-2,1) ray hangs off the
    # center vertex, the (1,1) ray off the cycle point at parameter 1
    assert project_point(s, pt(1, 0)) == (None, Fraction(0))
    assert project_point(s, pt(3, 0)) == (0, Fraction(1))
    with pytest.raises(Exception):
        project_point(s, pt(50, 50))


def test_project_tentacle_points():
    c = tail_cycle_curve()
    s = cycle_system(c)
    # every point of the tail maps to the residue of the attachment vertex (0,1)
    target = project_point(s, pt(0, 1))
    assert target == (0, Fraction(2))
    for p in [pt(0, "3/2"), pt(0, 2), pt(0, "5/2"), pt(0, 3), pt("-1/2", "7/2"), pt(2, 3)]:
        assert project_point(s, p) == target


def test_abel_examples():
    c = triangle_cycle_host()
    s = cycle_system(c)
    o_i = c.vertices[s.cycles[0].base_vertex]
    d = Divisor.of({o_i: 1, pt(1, 0): -1})  # O_i minus a base-residue ray point
    coord = abel_coordinate(s, d)
    assert coord.degree == 0 and coord.residues == (Fraction(0),)
    p = s.cycles[0].point_at(c, Fraction(5, 4))
    coord2 = abel_coordinate(s, Divisor.of({p: 1, o_i: -1}))
    assert coord2.residues == (Fraction(5, 4),)
    q = s.cycles[0].point_at(c, Fraction(1, 3))
    coord3 = abel_coordinate(s, Divisor.of({p: 2, q: -1}))
    assert coord3.residues == ((2 * Fraction(5, 4) - Fraction(1, 3)) % Fraction(3, 2),)


def test_equivalence_same_ray():
    c = triangle_cycle_host()
    s = cycle_system(c)
    # two points on the northeast ray from (5/2, -1/2)
    d1 = Divisor.of({pt(4, 1): 1})
    d2 = Divisor.of({pt(6, 3): 1})
    assert linearly_equivalent(s, d1, d2)


def test_equivalence_rejects_distinct_cycle_points():
    c = triangle_cycle_host()
    s = cycle_system(c)
    d1 = Divisor.of({pt(1, 0): 1})   # residue 0
    d2 = Divisor.of({pt(3, 0): 1})   # residue 1
    assert not linearly_equivalent(s, d1, d2)


def test_equivalence_requires_equal_degree():
    c = triangle_cycle_host()
    s = cycle_system(c)
    o_i = c.vertices[s.cycles[0].base_vertex]
    assert not linearly_equivalent(
        s, Divisor.of({o_i: 2}), Divisor.of({o_i: 1})
    )


def test_equivalence_is_equivalence_relation():
    c = triangle_cycle_host()
    s = cycle_system(c)
    ds = [
        Divisor.of({pt(1, 0): 1}),
        Divisor.of({pt("1/2", "1/4"): 1}),  # also on the (-2,1) ray
        Divisor.of({pt(3, 0): 1}),
    ]
    for a in ds:
        assert linearly_equivalent(s, a, a)
    assert linearly_equivalent(s, ds[0], ds[1])
    assert linearly_equivalent(s, ds[1], ds[0])
    assert not linearly_equivalent(s, ds[0], ds[2])


def test_refusals():
    with pytest.raises(UnsupportedCurveError):
        cycle_system(theta_curve())
    s = cycle_system(weight_two_edge_curve())  # bouquet of genus 0, but not reduced
    d = Divisor.of({pt(0, 0): 1})
    with pytest.raises(UnsupportedCurveError):
        linearly_equivalent(s, d, d)


@given(rationals, rationals, rationals)
def test_cycle_shift_pairs_equivalent(a, b, delta):
    c = unit_triangle_cycle()
    s = cycle_system(c)
    (cp,) = s.cycles
    pa, pa2 = cp.point_at(c, a), cp.point_at(c, a + delta)
    pb, pb2 = cp.point_at(c, b), cp.point_at(c, b + delta)
    d1 = Divisor.of({pa2: 1}) - Divisor.of({pa: 1})
    d2 = Divisor.of({pb2: 1}) - Divisor.of({pb: 1})
    assert linearly_equivalent(s, d1, d2)


def _reversed_system(s: CycleSystem, which: int = 0) -> CycleSystem:
    cp = s.cycles[which]
    path = tuple(reversed(cp.vertex_path))
    edges = tuple(reversed(cp.edge_indices))
    breaks = [Fraction(0)]
    for i in range(len(path) - 1):
        seg = (
            cp.breakpoints[len(path) - 1 - i]
            - cp.breakpoints[len(path) - 2 - i]
        )
        breaks.append(breaks[-1] + seg)
    rev = dataclasses.replace(
        cp,
        vertex_path=path,
        edge_indices=edges,
        breakpoints=tuple(breaks),
    )
    cycles = list(s.cycles)
    cycles[which] = rev
    return dataclasses.replace(s, cycles=tuple(cycles))


def _rebased_system(s: CycleSystem, offset: int) -> CycleSystem:
    """Coherent genus-1 variant: base moved along the cycle, center follows."""
    (cp,) = s.cycles
    path = cp.vertex_path[:-1]
    path = path[offset:] + path[:offset]
    c = s.curve
    from tropcurve.geom import primitive_direction

    breaks = [Fraction(0)]
    for i in range(len(path)):
        a = c.vertices[path[i]]
        b = c.vertices[path[(i + 1) % len(path)]]
        _, ll = primitive_direction(b - a)
        breaks.append(breaks[-1] + ll)
    new = dataclasses.replace(
        cp,
        vertex_path=path + (path[0],),
        breakpoints=tuple(breaks),
        base_vertex=path[0],
    )
    new_center = s.graph.node_of_vertex[path[0]]
    bq = dataclasses.replace(
        s.bouquet,
        center_node=new_center,
        cycles=(
            dataclasses.replace(s.bouquet.cycles[0], base_vertex=path[0]),
        ),
    )
    return dataclasses.replace(s, cycles=(new,), bouquet=bq)


def test_verdict_invariant_under_orientation_and_base():
    c = triangle_cycle_host()
    s = cycle_system(c)
    variants = [
        _reversed_system(s),
        _rebased_system(s, 1),
        _rebased_system(s, 2),
        _reversed_system(_rebased_system(s, 1)),
    ]
    pairs = [
        (Divisor.of({pt(1, 0): 1}), Divisor.of({pt("1/2", "1/4"): 1})),
        (Divisor.of({pt(1, 0): 1}), Divisor.of({pt(3, 0): 1})),
        (
            stable_intersection(c, wedge_l((0, 0))),
            stable_intersection(c, wedge_m((2, 1))),
        ),
    ]
    for d1, d2 in pairs:
        verdict = linearly_equivalent(s, d1, d2)
        for v in variants:
            assert linearly_equivalent(v, d1, d2) == verdict


def test_sigma_translation_invariant():
    host = cycle_system(triangle_cycle_host())
    mobile = wedge_l((0, 0))
    ref = sigma(host, mobile)
    assert ref.degree == 3 and ref.residues == (Fraction(1),)
    for t in [pt("1/3", "2/7"), pt(-2, 5), pt("11/2", "-9/4")]:
        moved = translate(mobile, t)
        got = sigma(host, moved)
        assert got == ref


def test_sigma_line_hitting_only_base_ray():
    host = cycle_system(triangle_cycle_host())
    mobile = vertical_line((0, -5))
    coord = sigma(host, mobile)
    assert coord.degree == 2
    assert coord.residues == (Fraction(0),)


def test_sigma_difference_of_wedges():
    host = cycle_system(triangle_cycle_host())
    sl = sigma(host, wedge_l((0, 0)))
    sm = sigma(host, wedge_m((2, 1)))
    assert sl.degree == sm.degree == 3
    assert sl.residues != sm.residues
    diff = (sl - sm).residues[0] % host.moduli()[0]
    assert diff == Fraction(1, 2)


def test_sigma_line_crossing_cycle_twice():
    # line at (8/3, -3/4): west ray crosses the cycle at parameters 3/4 and
    # 1/4, south ray hits the ray attached at parameter 1/2; total 3/2 == 0
    host = cycle_system(triangle_cycle_host())
    mobile = tropical_line(("8/3", "-3/4"))
    d = stable_intersection(host.curve, mobile)
    residues = []
    for p, m in d.entries:
        k, t = project_point(host, p)
        assert k == 0
        residues.append(m * t)
    assert sorted(residues) == [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
    coord = sigma(host, mobile)
    assert coord.degree == 3
    assert coord.residues == (sum(residues) % host.moduli()[0],)
    assert coord.residues == (Fraction(0),)


def test_moment_mechanism_for_transversal_family():
    """Matched crossings of two transversal positions satisfy the moment law.

    Crossing vectors are taken outward (based inside the cycle loop) and
    divided by the crossing multiplicity; the displacement cross products
    then cancel exactly, which is what keeps sigma locally constant.
    """
    from tropcurve.curve import _loop_crossings, locate

    host = triangle_cycle_host()
    loop = tuple(host.vertices[i] for i in (0, 1, 2))
    l0 = tropical_line(("8/3", "-3/4"))
    l1 = tropical_line(("161/60", "-133/180"))

    def crossings(mobile):
        out = []
        for it, w_out, p in _loop_crossings(mobile, loop):
            kind, idx = locate(host, p)
            assert kind == "edge"
            side = items(host)[idx]
            mu = abs(cross(side.prim, w_out))
            out.append(((it.kind, it.index), p, w_out.to_point() * Fraction(1, mu)))
        out.sort(key=lambda r: r[0])
        return out

    c0, c1 = crossings(l0), crossings(l1)
    assert len(c0) == len(c1) >= 2
    total = Fraction(0)
    for (k0, p0, u), (k1, p1, _) in zip(c0, c1):
        assert k0 == k1
        total += cross(p1 - p0, u)
    assert total == 0
