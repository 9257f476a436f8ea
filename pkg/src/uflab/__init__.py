"""uflab: generalized voting systems, finite ultrafilters, and friends.

Coalition-based voting systems and their ultrafilter characterization,
preference profiles and Condorcet cycles, filters and grilles on finite
index sets, finite ultraproducts with a fundamental-lemma verifier, set
limits and diagonals, interval bases, finite topologies as preorders, and
Cesàro-based generalized limits - each paired with brute-force oracles at
desk scale.
"""

__version__ = "0.1.0"
