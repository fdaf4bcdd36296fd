import itertools
import math

import pytest

import sparse_ising as si


def brute_force(inst):
    best = 0
    for signs in itertools.product((1, -1), repeat=inst.n):
        best = max(best, sum(w for u, v, w in inst.edges if signs[u - 1] != signs[v - 1]))
    return best


def test_parse_and_stats():
    inst = si.parse_gset("2 1\n1 2 1", "edge")
    assert (inst.n, inst.m) == (2, 1)
    assert inst.edges == [(1, 2, 1)]
    stats = si.instance_stats(inst)
    assert stats["total_weight"] == 1
    assert stats["min_degree"] == stats["max_degree"] == 1
    assert si.serialize_gset(inst) == "2 1\n1 2 1\n"


def test_parse_error_is_raised():
    with pytest.raises(si.Error, match="line 3"):
        si.parse_gset("3 2\n1 2 1\n2 2 1\n")


def test_cut_energy_identity():
    inst = si.parse_gset("4 4\n1 2 1\n2 3 1\n3 4 -1\n4 1 1")
    spins = [1, -1, 1, -1]
    cut = si.cut_value(inst, spins)
    energy = si.ising_energy(inst, spins)
    assert cut == 2
    assert cut == (2 - energy) // 2


def test_hex_round_trip():
    assert si.decode_hex_solution("A", 4) == [-1, 1, -1, 1]
    spins = si.random_config(37, 5)
    assert si.decode_hex_solution(si.encode_hex_solution(spins), 37) == spins


def test_bundled_assets():
    g72 = si.bundled_solution("g72_7008")
    assert g72["instance"] == "G72"
    assert g72["n"] == 10000 and g72["claimed"] == 7008
    assert len(g72["hex"]) == 2500


def test_registry():
    best = {row["id"]: row["best_known"] for row in si.registry()}
    assert best == {"G65": 5562, "G66": 6364, "G67": 6950, "G70": 9595, "G72": 7008, "G77": 9940, "G81": 14056}


def test_metrics():
    m = si.metrics
    assert m.repetitions(0.99) == 1.0
    assert abs(m.repetitions(0.10) - 43.71) <= 0.01
    proj = m.bls_projection(4316, 2, 20)
    assert proj["time_per_run"] == pytest.approx(431.6)
    assert abs(proj["projected_ttt"] / 18865 - 1) < 0.005
    assert round(100 * m.solution_quality(5546, 5562), 2) == 99.71
    with pytest.raises(si.Error):
        m.repetitions(0.0)


def test_run_trials_report():
    text = "8 12\n" + "".join(
        f"{u} {v} {w}\n"
        for u, v, w in [(1, 2, 1), (2, 3, -1), (3, 4, 1), (4, 1, 1), (5, 6, 1), (6, 7, 1),
                        (7, 8, -1), (8, 5, 1), (1, 5, 1), (2, 6, -1), (3, 7, 1), (4, 8, 1)]
    )
    inst = si.parse_gset(text, "cube")
    opt = brute_force(inst)
    report = si.run_trials(inst, trials=8, target=opt, workers=2, seed=3, solver="sa", sweeps=200)
    assert report["num_trials"] == 8
    assert report["successes"] == 8
    assert report["ttt_reachable"] is True
    assert report["best_value_found"] == opt
    again = si.run_trials(inst, trials=8, target=opt, workers=1, seed=3, solver="sa", sweeps=200)
    assert [t["best_config_hex"] for t in again["trials"]] == [t["best_config_hex"] for t in report["trials"]]
    pt = si.run_trials(inst, trials=2, solver="pticm", sweeps=50, betas=[0.3, 0.8, 1.5, 3.0])
    assert pt["best_value_found"] <= opt
    with pytest.raises(si.Error):
        si.run_trials(inst, solver="sa", sweeps=0)


def test_offline_miss(tmp_path):
    with pytest.raises(si.Error):
        si.load_instance("G72", cache_dir=str(tmp_path), offline=True)
    assert math.isfinite(si.metrics.speedup(2.0, 1.0))
