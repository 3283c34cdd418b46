"""Pebbling experiments on the rook's graph K_n x K_n.

Exact pebbling semantics, the cops/citizens/robbers sufficient conditions,
the configuration <-> bipartite multigraph correspondence, support-size laws
and Monte Carlo threshold estimation.
"""

__version__ = "0.1.0"
