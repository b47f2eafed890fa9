"""Stable graphs: sextuple data, automorphisms, canonical forms, enumeration.

A stable graph records half-edges, vertices, the pairing involution, the
incidence map, vertex genera and labeled legs.  Maximally degenerate graphs
(trivalent, all genera zero) index the deepest boundary points of the moduli
of curves; at total genus g with n marked points they have exactly
3g - 3 + n edges and 2g - 2 + n vertices.
"""

import json

from tangentbase import (
    StableGraph,
    canonical_form,
    enumerate_max_degenerate,
    find_isomorphisms,
    graph_to_document,
)

print("== the theta graph: two vertices, three parallel edges ==")
theta = StableGraph(
    ["a1", "a2", "a3", "b1", "b2", "b3"], ["u", "v"],
    {"a1": "b1", "b1": "a1", "a2": "b2", "b2": "a2", "a3": "b3", "b3": "a3"},
    {"a1": "u", "a2": "u", "a3": "u", "b1": "v", "b2": "v", "b3": "v"},
    {"u": 0, "v": 0}, {})
theta.validate()
stats = theta.stats()
print(f"  vertices={stats.num_vertices} edges={stats.num_edges} "
      f"first_betti={stats.first_betti} total_genus={stats.total_genus}")
print("  classification:", theta.classify())
automorphisms = find_isomorphisms(theta, theta)
print(f"  |Aut| = {len(automorphisms)}  (3! edge permutations x 2 vertex swap)")

print()
print("== canonical forms are complete isomorphism invariants ==")
relabeled = theta.relabeled(
    {"a1": "x", "a2": "y", "a3": "z", "b1": "p", "b2": "q", "b3": "r"},
    {"u": "top", "v": "bottom"})
same, _ = canonical_form(theta)
other, _ = canonical_form(relabeled)
print("  theta and its relabeling canonicalize identically:", same == other)

print()
print("== enumerating maximally degenerate graphs ==")
for genus, legs in [(0, 3), (0, 4), (0, 5), (1, 1), (1, 2), (2, 0)]:
    graphs = enumerate_max_degenerate(genus, legs)
    print(f"  (g, n) = ({genus}, {legs}): {len(graphs)} isomorphism classes")

print()
print("== the two classes of genus 2 without marked points ==")
for graph in enumerate_max_degenerate(2, 0):
    auts = len(find_isomorphisms(graph, graph))
    loops = sum(1 for a, b in graph.edges()
                if graph.incidence[a] == graph.incidence[b])
    name = "theta" if loops == 0 else "dumbbell"
    print(f"  {name}: |Aut| = {auts}")
    print("   ", json.dumps(graph_to_document(graph)))
