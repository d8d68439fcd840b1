import math

import pytest

import stardisc


def test_generate_samplers():
    for sampler in (stardisc.Sampler.uniform, stardisc.Sampler.sobol, stardisc.Sampler.halton):
        p = stardisc.generate(sampler, 32, 3, instance=1)
        assert len(p) == 32
        assert p.dim == 3
        for i in range(len(p)):
            assert all(0.0 <= c <= 1.0 for c in p.point(i))


def test_generate_deterministic_in_instance():
    a = stardisc.generate(stardisc.Sampler.uniform, 16, 2, instance=3)
    b = stardisc.generate(stardisc.Sampler.uniform, 16, 2, instance=3)
    c = stardisc.generate(stardisc.Sampler.uniform, 16, 2, instance=4)
    assert [a.point(i) for i in range(16)] == [b.point(i) for i in range(16)]
    assert [a.point(i) for i in range(16)] != [c.point(i) for i in range(16)]


def test_suite_problem_mapping():
    prob = stardisc.suite_problem(33, 3, 2)
    assert prob.sampler == stardisc.Sampler.uniform
    assert prob.n == 100
    assert prob.dim == 3
    p = stardisc.generate(prob)
    assert len(p) == 100


def test_sobol_matches_scipy():
    qmc = pytest.importorskip("scipy.stats").qmc
    p = stardisc.generate(stardisc.Sampler.sobol, 64, 4, instance=1)
    # our generator starts at sequence index 1 (the all-zeros point is skipped)
    ref = qmc.Sobol(d=4, scramble=False).random(65)[1:]
    for i in range(64):
        for j in range(4):
            assert p.point(i)[j] == pytest.approx(ref[i][j], abs=1e-12)


def test_local_disc_ops():
    p = stardisc.PointSet(2, [[0.25, 0.25], [0.75, 0.75]])
    q = [0.5, 0.5]
    assert stardisc.volume(q) == 0.25
    assert stardisc.count_open(p, q) == 1
    assert stardisc.count_closed(p, q) == 1
    assert stardisc.delta(p, q) == pytest.approx(0.25 - 0.5)
    assert stardisc.bar_delta(p, q) == pytest.approx(0.5 - 0.25)


def test_dem_matches_brute_force():
    p = stardisc.generate(stardisc.Sampler.halton, 40, 3, instance=1)
    exact = stardisc.brute_force_disc(p)
    dem = stardisc.dem_disc(p)
    assert dem.value == exact.value
    assert stardisc.local_disc_two_sided(p, dem.argmax) == pytest.approx(dem.value)


def test_ta_is_a_lower_bound():
    p = stardisc.generate(stardisc.Sampler.uniform, 50, 4, instance=2)
    exact = stardisc.dem_disc(p).value
    ta = stardisc.ta_lower_bound(p, 30000, 7)
    assert ta.value <= exact + 1e-12
    assert ta.evaluations <= 30000
    assert stardisc.local_disc_two_sided(p, ta.argmax) == pytest.approx(ta.value)


def test_optimize_and_ert():
    def sphere(x):
        return 1.0 - sum((c - 0.5) ** 2 for c in x)

    runs = []
    for opt in stardisc.optimizer_ids():
        r = stardisc.optimize(opt, sphere, 2, 500, 11)
        assert r.evaluations == 500
        assert r.best == pytest.approx(sphere(r.best_x))
        runs.append(r.trajectory)
    assert stardisc.ert(runs, 0.9, 500) < math.inf
    assert stardisc.ert(runs, 2.0, 500) == math.inf


def test_relative_gap():
    assert stardisc.relative_gap(0.5, 0.4, stardisc.BoundSource.dem) == pytest.approx(0.2)
    assert stardisc.relative_gap(0.5, 0.6, stardisc.BoundSource.ta) == 0.0
    with pytest.raises(Exception):
        stardisc.relative_gap(0.5, 0.6, stardisc.BoundSource.dem)
