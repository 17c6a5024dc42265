import math
from collections import Counter
from itertools import combinations

import pytest

from koutlab.bounds import mean_degree
from koutlab.generators import (
    KOutParams,
    er_p_matching_kout,
    generate_er,
    generate_kout,
    generate_rrg,
    make_rng,
    sample_k_subset,
    sample_selections,
)
from koutlab.graph import components, degree_stats, is_connected, to_edgelist_text

# Upper critical values of the chi-square distribution at significance 1e-3.
CHI2_CRIT = {2: 13.815510557964274, 5: 20.515005652432876, 9: 27.877164871256575}


def chi2_stat(counts, expected):
    return sum((c - expected) ** 2 / expected for c in counts)


class TestSampleKSubset:
    def test_forced_subset(self):
        rng = make_rng(1)
        for _ in range(20):
            assert sample_k_subset(rng, 3, 0, 2) == {1, 2}

    def test_excludes_and_distinct(self):
        rng = make_rng(2)
        for _ in range(200):
            s = sample_k_subset(rng, 10, 4, 3)
            assert len(s) == 3 and 4 not in s and all(0 <= v < 10 for v in s)

    def test_too_large_k_rejected(self):
        with pytest.raises(ValueError):
            sample_k_subset(make_rng(0), 4, 0, 4)

    def test_uniformity_chi_square(self):
        # m=5, exclude=0, K=2: six equally likely subsets.
        rng = make_rng(12345)
        draws = 30_000
        counts = Counter(frozenset(sample_k_subset(rng, 5, 0, 2)) for _ in range(draws))
        subsets = [frozenset(c) for c in combinations(range(1, 5), 2)]
        assert set(counts) == set(subsets)
        stat = chi2_stat([counts[s] for s in subsets], draws / 6)
        assert stat < CHI2_CRIT[5]


class TestSelectionMatrix:
    def test_shape_and_domain(self):
        sel = sample_selections(9, 3, make_rng(3))
        assert sel.shape == (9, 3)
        for i in range(9):
            row = set(int(v) for v in sel[i])
            assert len(row) == 3 and i not in row

    def test_per_node_uniformity(self):
        # n=4, K=2: each node picks one of three pair-subsets uniformly.
        rng = make_rng(777)
        draws = 100_000
        counts = [Counter() for _ in range(4)]
        for _ in range(draws):
            sel = sample_selections(4, 2, rng)
            for i in range(4):
                counts[i][frozenset(int(v) for v in sel[i])] += 1
        for i in range(4):
            assert len(counts[i]) == 3
            stat = chi2_stat(list(counts[i].values()), draws / 3)
            assert stat < CHI2_CRIT[2]

    def test_dense_regime_matches_domain(self):
        # Forces the per-node path (K close to n-1).
        sel = sample_selections(6, 4, make_rng(5))
        for i in range(6):
            row = set(int(v) for v in sel[i])
            assert len(row) == 4 and i not in row


class TestGenerateKout:
    def test_n3_k2_always_complete(self):
        for seed in range(25):
            g = generate_kout(KOutParams(3, 2), make_rng(seed))
            assert g.edge_count == 3

    def test_degree_and_edge_bounds(self):
        for seed in range(50):
            g = generate_kout(KOutParams(6, 2), make_rng(seed))
            assert degree_stats(g).min_degree >= 2
            assert 6 <= g.edge_count <= 12

    def test_mean_degree_matches_formula(self):
        trials = 3000
        total = 0.0
        for seed in range(trials):
            g = generate_kout(KOutParams(100, 3), make_rng(seed))
            total += 2 * g.edge_count / 100
        grand = total / trials
        expected = mean_degree(100, 3)
        assert abs(grand - expected) / expected < 0.01

    def test_mutual_selection_count(self):
        # n*K - edge_count counts collapsed mutual picks; its mean is n*K^2/(2(n-1)).
        n, k, trials = 50, 3, 2000
        total = 0
        for seed in range(trials):
            g = generate_kout(KOutParams(n, k), make_rng(seed))
            total += n * k - g.edge_count
        expected = n * k * k / (2 * (n - 1))
        assert abs(total / trials - expected) < 0.3

    def test_component_size_floor(self):
        # A component is either the whole graph or has at least K+1 nodes.
        rng = make_rng(99)
        for k in (2, 3):
            for _ in range(10_000):
                g = generate_kout(KOutParams(30, k), rng)
                for size in components(g).sizes:
                    assert size == 30 or size >= k + 1

    def test_determinism(self):
        a = generate_kout(KOutParams(40, 3), make_rng(8))
        b = generate_kout(KOutParams(40, 3), make_rng(8))
        assert to_edgelist_text(a) == to_edgelist_text(b)
        c = generate_kout(KOutParams(40, 3), make_rng(9))
        assert to_edgelist_text(a) != to_edgelist_text(c)

    def test_invalid_params(self):
        with pytest.raises(ValueError):
            KOutParams(3, 3)
        with pytest.raises(ValueError):
            KOutParams(3, 0)


class TestErdosRenyi:
    def test_extremes(self):
        assert generate_er(5, 0.0, make_rng(0)).edge_count == 0
        assert generate_er(5, 1.0, make_rng(0)).edge_count == 10

    def test_p_out_of_range(self):
        with pytest.raises(ValueError):
            generate_er(5, 1.5, make_rng(0))

    def test_matching_p_values(self):
        assert er_p_matching_kout(3, 2) == 1.0
        assert er_p_matching_kout(100, 3) == pytest.approx(5.909090909 / 99, rel=1e-9)

    def test_classical_connectivity_threshold(self):
        # Well above log(n)/n almost every instance is connected.
        n = 1000
        p = 2 * math.log(n) / n
        connected = sum(
            is_connected(generate_er(n, p, make_rng(seed))) for seed in range(200)
        )
        assert connected / 200 > 0.9


class TestRandomRegular:
    def test_perfect_matching(self):
        g = generate_rrg(4, 1, make_rng(4))
        assert g.edge_count == 2
        s = degree_stats(g)
        assert (s.min_degree, s.max_degree, s.mean_degree) == (1, 1, 1.0)

    def test_forced_complete(self):
        g = generate_rrg(4, 3, make_rng(4))
        assert g.edge_count == 6

    def test_exact_degrees(self):
        g = generate_rrg(100, 4, make_rng(7))
        s = degree_stats(g)
        assert (s.min_degree, s.max_degree, s.mean_degree) == (4, 4, 4.0)

    def test_parity_rejected(self):
        with pytest.raises(ValueError):
            generate_rrg(5, 3, make_rng(0))

    def test_restart_budget(self):
        with pytest.raises(RuntimeError):
            generate_rrg(8, 7, make_rng(0), max_restarts=0)
