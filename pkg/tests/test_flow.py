"""Suspension flow: gluing, semigroup law, cylinders, lattice decomposition."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from suspquiver import (
    CylinderSpec,
    FlowPoint,
    Path,
    PrecisionError,
    PreconditionError,
    apply_flow,
    cylinder_intersection,
    enumerate_paths,
    in_cylinder,
    in_cylinder_list,
    lattice_decomposition_check,
    make_flow_point,
    mu_vee,
    orbit_lines,
    theta_inf,
)

from conftest import make_cycle_plus_loop, make_single_loop, make_two_loop


def test_make_flow_point_glues(two_loop):
    g = two_loop
    p = make_flow_point(Path(g, ("e", "f", "e")), Fraction(5, 4))
    # (x, 1 + 1/4) ~ (sigma x, 1/4)
    assert p.prefix.edge_ids == ("f", "e") and p.t == Fraction(1, 4)
    with pytest.raises(PrecisionError):
        make_flow_point(Path(g, ("e",)), 1)
    with pytest.raises(PreconditionError):
        FlowPoint(Path(g, ("e",)), Fraction(3, 2))


@given(
    j1=st.integers(0, 6),
    j2=st.integers(0, 6),
    t0=st.fractions(min_value=0, max_value=Fraction(11, 12), max_denominator=12),
)
@settings(max_examples=60, deadline=None)
def test_apply_flow_semigroup(j1, j2, t0):
    g = make_two_loop()
    prefix = Path(g, tuple("ef"[i % 2] for i in range(10)))
    p = FlowPoint(prefix, t0)
    l1, l2 = Fraction(j1, 4), Fraction(j2, 4)
    one = apply_flow(apply_flow(p, l1), l2)
    both = apply_flow(p, l1 + l2)
    assert one.t == both.t
    # prefixes agree up to the shorter knowledge horizon
    k = min(len(one.prefix), len(both.prefix))
    assert one.prefix.edge_ids[:k] == both.prefix.edge_ids[:k]


def test_apply_flow_precision(single_loop):
    p = FlowPoint(Path(make_single_loop(), ("e", "e")), Fraction(1, 2))
    with pytest.raises(PrecisionError):
        apply_flow(p, 2)
    q = apply_flow(p, 0.5)  # float increments are flagged inexact
    assert not q.exact and q.t == 0 and q.prefix.edge_ids == ("e",)


def test_theta_inf(cycle_plus_loop):
    g = cycle_plus_loop
    p = FlowPoint(Path(g, ("q", "p", "l")), Fraction(1, 3))
    qp = theta_inf(p)
    assert qp.m == 1 and qp.t == Fraction(1, 3) and len(qp) == 2
    assert qp.edges[0].word.edge_ids == ("q", "p")
    assert qp.edges[1].word.edge_ids == ("p", "l")


def test_in_cylinder_interval_and_wrap(two_loop):
    g = two_loop
    mu = Path(g, ("e", "f"))
    ci = CylinderSpec(mu, ("interval", Fraction(1, 4), Fraction(3, 4)))
    assert in_cylinder(FlowPoint(Path(g, ("e", "f", "e")), Fraction(1, 2)), ci)
    assert not in_cylinder(FlowPoint(Path(g, ("f", "e", "f")), Fraction(1, 2)), ci)
    assert not in_cylinder(FlowPoint(Path(g, ("e", "f", "e")), Fraction(7, 8)), ci)
    cw = CylinderSpec(mu, ("wrap", Fraction(1, 4)))
    # t < eps: prefix starts with mu
    assert in_cylinder(FlowPoint(Path(g, ("e", "f", "e")), Fraction(1, 8)), cw)
    # t > 1 - eps: prefix = (edge) mu ...
    assert in_cylinder(FlowPoint(Path(g, ("f", "e", "f")), Fraction(7, 8)), cw)
    assert not in_cylinder(FlowPoint(Path(g, ("f", "e", "f")), Fraction(1, 8)), cw)
    with pytest.raises(PrecisionError):
        in_cylinder(FlowPoint(Path(g, ("e",)), Fraction(1, 8)), cw)


def test_mu_vee(two_loop):
    g = make_two_loop()
    ef = Path(g, ("e", "f"))
    efe = Path(g, ("e", "f", "e"))
    ff = Path(g, ("f", "f"))
    assert mu_vee(ef, efe) == efe and mu_vee(efe, ef) == efe
    assert mu_vee(ef, ff) is None


@given(data=st.data())
@settings(max_examples=40, deadline=None)
def test_cylinder_intersection_pointwise(data):
    g = make_cycle_plus_loop()
    words = enumerate_paths(g, 1) + enumerate_paths(g, 2)
    quarters = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]

    def draw_cyl():
        mu = data.draw(st.sampled_from(words))
        if data.draw(st.booleans()):
            a = data.draw(st.sampled_from(quarters[:2]))
            b = data.draw(st.sampled_from([x for x in quarters if x > a]))
            return CylinderSpec(mu, ("interval", a, b))
        eps = data.draw(st.sampled_from([Fraction(1, 8), Fraction(1, 4), Fraction(3, 8)]))
        return CylinderSpec(mu, ("wrap", eps))

    c1, c2 = draw_cyl(), draw_cyl()
    inter = cylinder_intersection(c1, c2)
    # sample points with long prefixes so membership is always decidable
    for prefix in enumerate_paths(g, 5):
        for j in range(8):
            p = FlowPoint(prefix, Fraction(j, 8))
            want = in_cylinder(p, c1) and in_cylinder(p, c2)
            assert in_cylinder_list(p, inter) == want


def test_orbit_lines(two_loop):
    g = two_loop
    p = FlowPoint(Path(g, ("e", "f", "e", "f")), Fraction(0))
    lines = orbit_lines(p, Fraction(1, 2), 3)
    assert lines == [
        "0\te,f,e,f",
        "1/2\te,f,e,f",
        "0\tf,e,f",
        "1/2\tf,e,f",
    ]


@pytest.mark.parametrize("m,n", [(1, 2), (2, 3)])
def test_lattice_decomposition(m, n):
    for g in (make_single_loop(), make_two_loop()):
        rep = lattice_decomposition_check(g, m, n, 5)
        assert rep.ok, rep.to_text()


def test_lattice_decomposition_rejects_non_coprime(two_loop):
    with pytest.raises(PreconditionError):
        lattice_decomposition_check(two_loop, 2, 4, 3)
