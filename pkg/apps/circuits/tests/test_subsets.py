"""
Qubit-subset selection tests.
"""

import networkx as nx
from django.test import SimpleTestCase

from apps.circuits.devices import HEAVY_HEX_CENTER, chain, grid, heavy_hex_127
from apps.circuits.subsets import BoundaryMode, bfs_order, select_subgraph
from apps.core.exceptions import ValidationError

CLOSED_28 = {
    *range(41, 46), 53, 54, *range(58, 67), 71, 72, 73, *range(77, 86),
}  # fmt: skip


class SelectSubgraphTest(SimpleTestCase):
    def test_closed_loops_28(self):
        sub = select_subgraph(heavy_hex_127(), HEAVY_HEX_CENTER, 28)
        self.assertEqual(set(sub.nodes), CLOSED_28)
        # two whole lattice cells around the centre
        self.assertGreaterEqual(len(nx.cycle_basis(sub.nx_graph)), 2)

    def test_sizes_and_connectivity(self):
        g = heavy_hex_127()
        for mode in BoundaryMode:
            for n in (1, 5, 12, 28, 30, 60):
                sub = select_subgraph(g, HEAVY_HEX_CENTER, n, mode)
                self.assertEqual(len(sub), n, msg=(mode, n))
                self.assertIn(HEAVY_HEX_CENTER, sub)
                self.assertTrue(sub.is_connected(), msg=(mode, n))

    def test_open_is_bfs_prefix(self):
        g = grid(5, 5)
        sub = select_subgraph(g, 12, 5, "open")
        self.assertEqual(set(sub.nodes), {7, 11, 12, 13, 17})
        self.assertEqual(bfs_order(chain(5), 2)[:3], [2, 1, 3])

    def test_whole_device(self):
        g = grid(3, 3)
        self.assertEqual(select_subgraph(g, 4, 9).edges, g.edges)

    def test_validation(self):
        g = heavy_hex_127()
        with self.assertRaises(ValidationError):
            select_subgraph(g, 500, 5)
        with self.assertRaises(ValidationError):
            select_subgraph(g, HEAVY_HEX_CENTER, 0)
        with self.assertRaises(ValidationError):
            select_subgraph(g, HEAVY_HEX_CENTER, 128)
        with self.assertRaises(ValueError):
            select_subgraph(g, HEAVY_HEX_CENTER, 5, "sphere")
