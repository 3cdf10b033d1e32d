"""Smoke tests for the Python bindings: presets, integration, reduction,
certificates, and exact root counting."""

import json
from fractions import Fraction

import pytest

import unhinge


def test_preset_and_integrate():
    s = unhinge.make_preset("lagrange-equilateral")
    assert (s.n, s.d) == (3, 2)
    r0 = unhinge.distances(s)
    traj = unhinge.integrate(s, t_end=1.0, tol=1e-10, sample_dt=0.01)
    assert not traj.aborted
    assert len(traj.samples) >= 100
    last = traj.samples[-1]
    assert last.t == pytest.approx(1.0)
    for r, r_init in zip(unhinge.distances(last.state), r0):
        assert r == pytest.approx(r_init, abs=1e-8)


def test_energy_conservation():
    s = unhinge.make_preset("random-seeded", n=3, d=3, seed=7)
    e0 = unhinge.first_integrals(s).energy
    traj = unhinge.integrate(s, t_end=2.0, tol=1e-10, sample_dt=0.1)
    drift = max(
        abs(unhinge.first_integrals(smp.state).energy - e0)
        for smp in traj.samples
    )
    assert drift <= 1e-7


def test_reduction_matches_dynamics():
    s = unhinge.make_preset("random-seeded", n=3, d=3, seed=2)
    traj = unhinge.integrate(s, t_end=1.0, tol=1e-10, sample_dt=1e-3)
    assert not traj.aborted
    residual = unhinge.reduction_residual(traj, s.masses, 1e-3)
    assert residual <= 1e-6


def test_equilibrium_and_balance():
    s = unhinge.make_preset("isosceles-balanced")
    rs = unhinge.standard_coordinates(s)
    assert unhinge.balance_residual(rs.b, s.masses) <= 1e-12

    tri = unhinge.make_preset("lagrange-equilateral")
    trs = unhinge.standard_coordinates(tri)
    assert unhinge.equilibrium_residual(trs, tri.masses) <= 1e-10


def test_certificates():
    c3 = unhinge.certify(3)
    assert c3.verdict == "UNHINGED"
    assert c3.leaf_count == 1

    c4 = unhinge.certify(4)
    assert c4.verdict == "UNHINGED"
    assert (c4.branch_count, c4.leaf_count) == (2, 3)
    assert c4.all_leaves_closed and c4.all_memberships_ok
    assert [m.power for m in c4.memberships] == [2, 2, 1, 1, 1, 1, 2, 1]
    assert unhinge.replay_matches(c4)

    doc = json.loads(c4.json_text)
    assert doc["verdict"] == "UNHINGED"
    assert doc["support"] == [0, 3, 5, 6, 8, 9]


def test_roots():
    assert unhinge.count_roots("x^3 - 4", 0, 10) == 1
    assert unhinge.count_roots("x^2 + 1") == 0
    assert unhinge.count_roots("x^3 - x", 0, 10) == 1
    (a, b), = unhinge.isolate_roots("x^3 - 4", 0, 10)
    lo, hi = Fraction(a), Fraction(b)  # exact endpoints like "1625/1024"
    assert 1 < lo < hi < 2
    assert lo ** 3 <= 4 <= hi ** 3
    with pytest.raises(ValueError):
        unhinge.count_roots("x*y - 1")
