from itertools import permutations

import pytest

from qwalk.graphs import bipartition, degree_profile
from qwalk.scan import enumerate_biregular, scan_periodicity


def biadjacency_rows(g, b):
    r0, r1 = sorted(b.c0), sorted(b.c1)
    pos1 = {v: j for j, v in enumerate(r1)}
    rows = []
    for u in r0:
        row = [0] * len(r1)
        for x, y in g.edges:
            if x == u:
                row[pos1[y]] = 1
            elif y == u:
                row[pos1[x]] = 1
        rows.append(tuple(row))
    return rows


def bipartite_isomorphic(rows_a, rows_b):
    """Brute-force row/column permutation search (tiny sides only)."""
    if len(rows_a) != len(rows_b) or len(rows_a[0]) != len(rows_b[0]):
        return False
    target = sorted(rows_b)
    for cperm in permutations(range(len(rows_a[0]))):
        if sorted(tuple(r[c] for c in cperm) for r in rows_a) == target:
            return True
    return False


class TestEnumeration:
    def test_counts_up_to_nine_edges(self):
        graphs = list(enumerate_biregular(9))
        assert len(graphs) == 15
        by_edges = {}
        for g, _ in graphs:
            by_edges[g.num_edges] = by_edges.get(g.num_edges, 0) + 1
        # one star per edge count, plus K22, C6, K23, C8, K24, K33
        assert by_edges == {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 3, 7: 1, 8: 3, 9: 2}

    def test_all_connected_and_biregular(self):
        for g, b in enumerate_biregular(8):
            assert g.is_connected()
            assert bipartition(g).c0 == b.c0
            assert degree_profile(g, b).is_biregular

    def test_pairwise_non_isomorphic_within_profile(self):
        buckets = {}
        for g, b in enumerate_biregular(10):
            prof = degree_profile(g, b)
            key = (len(b.c0), prof.d0, len(b.c1), prof.d1)
            buckets.setdefault(key, []).append(biadjacency_rows(g, b))
        for key, rows_list in buckets.items():
            for i in range(len(rows_list)):
                for j in range(i + 1, len(rows_list)):
                    assert not bipartite_isomorphic(rows_list[i], rows_list[j]), key

    def test_bound_enforced(self):
        with pytest.raises(ValueError):
            list(enumerate_biregular(13))


class TestScanPeriodicity:
    def test_stream_contains_known_fixtures(self):
        results = {
            (len(b.c0), len(b.c1), g.num_edges): v
            for g, b, v in scan_periodicity(6)
        }
        # K22 at 4 edges, C6 and K23 at 6 edges
        k22 = results[(2, 2, 4)]
        assert k22.periodic is True and k22.period == 2
        c6 = results[(3, 3, 6)]
        assert c6.periodic is True and c6.period == 3
        k23 = results[(2, 3, 6)]
        assert k23.periodic is True and k23.period == 2

    def test_verdicts_are_definite_at_small_scale(self):
        for g, b, v in scan_periodicity(8):
            assert v.periodic in (True, False)
