"""Ribbon structures, the signed edge representation, and base-point charts.

A ribbon structure picks one of the two cyclic orders at every trivalent
vertex.  Each graph automorphism then acts on the span of the edges by a
signed permutation: an edge keeps sign +1 exactly when the cyclic orders at
its two ends are both preserved or both reversed.  Each half-edge also gets
a chart placing itself at 0, its successor at +1 and the remaining half-edge
at -1; the two charts of an edge give the node parameters (u, v) whose
product is the edge's smoothing coordinate.
"""

from tangentbase import (
    Field,
    INFINITY_POINT,
    StableGraph,
    enumerate_ribbons,
    find_isomorphisms,
    mobius_normalize,
    rep_matrix,
    tangential_base_point,
)

dumbbell = StableGraph(
    ["a1", "a2", "b1", "b2", "c1", "c2"], ["u", "v"],
    {"a1": "a2", "a2": "a1", "b1": "b2", "b2": "b1", "c1": "c2", "c2": "c1"},
    {"a1": "u", "a2": "u", "b1": "u", "b2": "v", "c1": "v", "c2": "v"},
    {"u": 0, "v": 0}, {})
dumbbell.validate()

print("== the dumbbell: loop -- bridge -- loop ==")
print("  edges in canonical order:", dumbbell.edges())
ribbons = enumerate_ribbons(dumbbell)
print(f"  {len(ribbons)} ribbon structures (2 per vertex)")
ribbon = ribbons[0]

print()
print("== the signed action of each automorphism ==")
for a in find_isomorphisms(dumbbell, dumbbell):
    matrix = rep_matrix(a, ribbon)
    moves = " ".join(f"{x}>{y}" for x, y in sorted(a.f1.items()))
    print(f"  {moves}")
    for row in matrix.rows():
        print("     ", row)
print("(flipping one loop reverses the cyclic order at one end of the")
print(" bridge only, so the bridge coordinate picks up the sign -1)")

print()
print("== normalizing three points of the projective line ==")
QQ = Field(0)
mobius = mobius_normalize(QQ, INFINITY_POINT, QQ(0), QQ(1))
print("  the map sending (inf, 0, 1) to (0, +1, -1):", mobius)
for point in (INFINITY_POINT, QQ(0), QQ(1), QQ(3)):
    print(f"    z = {point} -> {mobius.apply(point)}")

print()
print("== the coordinate package of a base point ==")
point = tangential_base_point(dumbbell, ribbon)
print("  coordinates:", " ".join(point.coordinates))
for name, edge in zip(point.coordinates, point.edge_order):
    u, v = point.node_parameters[edge]
    print(f"  {name} = u*v with u the {u}-chart and v the {v}-chart coordinate")
for phi in dumbbell.half_edges:
    chart = point.charts[phi]
    roles = ", ".join(f"{psi} -> {value:+d}" if value else f"{psi} -> 0"
                      for psi, value in sorted(chart.items(),
                                               key=lambda kv: kv[1]))
    print(f"  chart at {phi}: {roles}")
print("  divisor trace:", "; ".join(point.divisor))
