"""Ribbon structures on trivalent graphs and what they induce: the signed
action of graph automorphisms on the span of edges, Moebius chart
normalization on the projective line, and the coordinate package attached to
a maximally degenerate graph.

A ribbon structure fixes, at every (trivalent) vertex, one of the two cyclic
orders of the three incident half-edges, stored as a successor map.  An
automorphism either preserves or reverses the cyclic order at each vertex;
an edge picks up sign +1 when the effects at its two end vertices agree
(a loop's single vertex counts as both ends, so loops always get +1, which
matches the smoothing parameter of a node being symmetric in its two
branches) and -1 otherwise.  Collecting the signs gives a signed permutation
matrix on the edge space per automorphism.

Each half-edge also carries a chart on its projective line: itself to 0, its
cyclic successor to +1, the remaining half-edge to -1.  An edge's two charts
provide the two node parameters (u, v), and the product u*v is the smoothing
coordinate of that edge; one coordinate per edge together with the
coordinate hyperplanes is the tangential-base-point package.
"""

from itertools import product

import numpy as np

from .errors import (
    CharacteristicTwo,
    NotMaxDegenerate,
    NotTrivalent,
    ParseError,
    PointsNotDistinct,
)


class RibbonStructure:
    """A cyclic order on the three half-edges at every vertex."""

    __slots__ = ("graph", "successor")

    def __init__(self, graph, successor):
        self.graph = graph
        self.successor = dict(successor)

    def validate(self):
        at_vertex = self.graph.half_edges_at()
        for v, hs in at_vertex.items():
            if len(hs) != 3:
                raise NotTrivalent(f"vertex {v!r} has valence {len(hs)}")
            a = hs[0]
            cycle = {a, self.successor[a], self.successor[self.successor[a]]}
            if cycle != set(hs) or self.successor[self.successor[self.successor[a]]] != a:
                raise NotTrivalent(
                    f"successor map at vertex {v!r} is not a 3-cycle on its "
                    f"half-edges")

    def cycle_at(self, vertex):
        """The cyclic order at a vertex, listed from its smallest half-edge."""
        start = min(self.graph.half_edges_at()[vertex])
        second = self.successor[start]
        return (start, second, self.successor[second])

    def reversed(self):
        """Reverse the cyclic order at every vertex simultaneously."""
        return RibbonStructure(self.graph,
                               {b: a for a, b in self.successor.items()})

    def to_document(self):
        return {str(v): [str(h) for h in self.cycle_at(v)]
                for v in sorted(self.graph.vertices, key=str)}

    def __eq__(self, other):
        if not isinstance(other, RibbonStructure):
            return NotImplemented
        return self.graph == other.graph and self.successor == other.successor

    def __repr__(self):
        cycles = " ".join("(" + ",".join(map(str, self.cycle_at(v))) + ")"
                          for v in self.graph.vertices)
        return f"<ribbon {cycles}>"


def enumerate_ribbons(graph):
    """Both cyclic orders at every vertex: exactly 2^V structures, ordered by
    the orientation bits along the sorted vertex list."""
    at_vertex = graph.half_edges_at()
    for v in graph.vertices:
        if len(at_vertex[v]) != 3:
            raise NotTrivalent(f"vertex {v!r} has valence {len(at_vertex[v])}")
    vertices = list(graph.vertices)
    out = []
    for bits in product((0, 1), repeat=len(vertices)):
        successor = {}
        for v, bit in zip(vertices, bits):
            a, b, c = sorted(at_vertex[v])
            cycle = (a, b, c) if bit == 0 else (a, c, b)
            successor[cycle[0]] = cycle[1]
            successor[cycle[1]] = cycle[2]
            successor[cycle[2]] = cycle[0]
        out.append(RibbonStructure(graph, successor))
    return out


def ribbon_from_document(doc, graph):
    """Read a ``{vertex: [h1, h2, h3]}`` document as h1->h2->h3->h1."""
    if not isinstance(doc, dict):
        raise ParseError("ribbon document must be an object")
    if set(doc) != {str(v) for v in graph.vertices}:
        raise ParseError("ribbon document must list exactly the vertices")
    by_id = {str(phi): phi for phi in graph.half_edges}
    at_vertex = graph.half_edges_at()
    successor = {}
    for v in graph.vertices:
        entry = [str(h) for h in doc[str(v)]]
        if sorted(entry) != sorted(str(h) for h in at_vertex[v]):
            raise ParseError(
                f"vertex {v!r} must list exactly its three half-edges")
        a, b, c = (by_id[h] for h in entry)
        successor[a] = b
        successor[b] = c
        successor[c] = a
    ribbon = RibbonStructure(graph, successor)
    ribbon.validate()
    return ribbon


# -- the signed action on the edge space ------------------------------------------


def orientation_effect(automorphism, ribbon, vertex):
    """+1 when the automorphism carries the cyclic order at ``vertex`` onto
    the cyclic order at its image vertex, -1 when onto the reversed one."""
    f1 = automorphism.f1
    for phi in ribbon.graph.half_edges_at()[vertex]:
        if ribbon.successor[f1[phi]] != f1[ribbon.successor[phi]]:
            return -1
    return 1


def edge_sign(automorphism, ribbon, edge):
    """+1 iff the cyclic orders at the two ends of the edge are both
    preserved or both reversed; a loop's vertex counts as both ends."""
    graph = ribbon.graph
    a, b = edge
    return (orientation_effect(automorphism, ribbon, graph.incidence[a])
            * orientation_effect(automorphism, ribbon, graph.incidence[b]))


class SignedEdgeMatrix:
    """A square matrix over {-1, 0, +1} indexed by the canonical edge order."""

    __slots__ = ("edge_order", "array")

    def __init__(self, edge_order, array):
        self.edge_order = tuple(edge_order)
        self.array = np.asarray(array, dtype=int)

    @classmethod
    def identity(cls, edge_order):
        return cls(edge_order, np.eye(len(edge_order), dtype=int))

    def __matmul__(self, other):
        if self.edge_order != other.edge_order:
            raise ValueError("matrices over different edge orders")
        return SignedEdgeMatrix(self.edge_order, self.array @ other.array)

    def __eq__(self, other):
        if not isinstance(other, SignedEdgeMatrix):
            return NotImplemented
        return (self.edge_order == other.edge_order
                and np.array_equal(self.array, other.array))

    def is_signed_permutation(self):
        absolute = np.abs(self.array)
        return (bool(np.all(absolute.sum(axis=0) == 1))
                and bool(np.all(absolute.sum(axis=1) == 1)))

    def is_identity(self):
        return np.array_equal(self.array, np.eye(len(self.edge_order), dtype=int))

    def permutation(self):
        """Edge -> edge map forgetting signs."""
        rows = np.argmax(np.abs(self.array), axis=0)
        return {self.edge_order[j]: self.edge_order[rows[j]]
                for j in range(len(self.edge_order))}

    def rows(self):
        return [" ".join(str(x) for x in row) for row in self.array]

    def __repr__(self):
        return "\n".join(self.rows())


def rep_matrix(automorphism, ribbon):
    """The signed permutation matrix of one automorphism: column e carries
    ``edge_sign`` in the row of the image edge."""
    graph = ribbon.graph
    edges = graph.edges()
    index = {e: i for i, e in enumerate(edges)}
    array = np.zeros((len(edges), len(edges)), dtype=int)
    for e in edges:
        image = automorphism.apply_edge(e)
        array[index[image], index[e]] = edge_sign(automorphism, ribbon, e)
    return SignedEdgeMatrix(edges, array)


# -- Moebius normalization ----------------------------------------------------------


class _PointAtInfinity:
    __slots__ = ()

    def __repr__(self):
        return "inf"


INFINITY_POINT = _PointAtInfinity()


def _homogeneous(field, point):
    if point is INFINITY_POINT:
        return field.one, field.zero
    return field(point), field.one


class MobiusMap:
    """A projective transformation z -> (a*z + b)/(c*z + d), normalized so
    that the first nonzero coefficient in (a, b, c, d) is 1."""

    __slots__ = ("field", "a", "b", "c", "d")

    def __init__(self, field, a, b, c, d):
        coefficients = [field(a), field(b), field(c), field(d)]
        unit = next((x for x in coefficients if not x.is_zero()), None)
        if unit is None:
            raise ValueError("the zero matrix is not a projective transformation")
        inv = unit.inverse()
        self.field = field
        self.a, self.b, self.c, self.d = (x * inv for x in coefficients)

    def determinant(self):
        return self.a * self.d - self.b * self.c

    def apply(self, point):
        x, z = _homogeneous(self.field, point)
        num = self.a * x + self.b * z
        den = self.c * x + self.d * z
        if den.is_zero():
            if num.is_zero():
                raise ValueError("transformation is singular at this point")
            return INFINITY_POINT
        return num / den

    def coefficients(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        if not isinstance(other, MobiusMap):
            return NotImplemented
        return self.field == other.field and self.coefficients() == other.coefficients()

    def __repr__(self):
        return f"(({self.a})*z + ({self.b})) / (({self.c})*z + ({self.d}))"


def mobius_normalize(field, p0, p1, p2):
    """The unique transformation sending (p0, p1, p2) to (0, +1, -1).

    Points are field elements or ``INFINITY_POINT``; they must be pairwise
    distinct, and the characteristic must not be 2 (else +1 = -1).
    """
    if field.characteristic == 2:
        raise CharacteristicTwo("targets +1 and -1 coincide in characteristic 2")
    points = [_homogeneous(field, p) for p in (p0, p1, p2)]
    for i in range(3):
        for j in range(i + 1, 3):
            (xi, zi), (xj, zj) = points[i], points[j]
            if (xi * zj - xj * zi).is_zero():
                raise PointsNotDistinct(f"points {i} and {j} coincide")
    (x0, z0), (x1, z1), (x2, z2) = points
    lam = z2 * x1 - x2 * z1
    mu = z0 * x1 - x0 * z1
    # send (p0, p1, p2) to (0, 1, infinity), then compose with w -> w/(2 - w)
    a1, b1 = lam * z0, -(lam * x0)
    c1, d1 = mu * z2, -(mu * x2)
    return MobiusMap(field, a1, b1, c1 + c1 - a1, d1 + d1 - b1)


# -- the coordinate package at a maximally degenerate graph -------------------------


class TangentialBasePoint:
    """Coordinates and charts attached to one ribbon structure.

    ``coordinates[i]`` names the smoothing parameter of ``edge_order[i]``;
    ``charts[phi]`` maps the three half-edges at phi's vertex to their roles
    0, +1, -1 in phi's chart; ``node_parameters[edge]`` is the ordered pair
    of half-edges whose chart coordinates (u, v) satisfy u*v = coordinate;
    ``divisor`` lists the coordinate hyperplanes.
    """

    __slots__ = ("graph", "ribbon", "edge_order", "coordinates", "charts",
                 "node_parameters", "divisor")

    def __init__(self, graph, ribbon, edge_order, coordinates, charts,
                 node_parameters, divisor):
        self.graph = graph
        self.ribbon = ribbon
        self.edge_order = edge_order
        self.coordinates = coordinates
        self.charts = charts
        self.node_parameters = node_parameters
        self.divisor = divisor

    def coordinate_of(self, edge):
        return self.coordinates[self.edge_order.index(edge)]


def tangential_base_point(graph, ribbon):
    """Assemble the coordinate package: one coordinate ``eps<i>`` per edge in
    canonical order, one chart per half-edge, and the divisor trace."""
    if not graph.classify().maximally_degenerate:
        raise NotMaxDegenerate(
            "tangential base points require a maximally degenerate graph")
    ribbon.validate()
    edges = graph.edges()
    coordinates = tuple(f"eps{i + 1}" for i in range(len(edges)))
    charts = {}
    for phi in graph.half_edges:
        second = ribbon.successor[phi]
        third = ribbon.successor[second]
        charts[phi] = {phi: 0, second: 1, third: -1}
    node_parameters = {e: (e[0], e[1]) for e in edges}
    divisor = tuple(f"{name} = 0" for name in coordinates)
    return TangentialBasePoint(graph, ribbon, edges, coordinates, charts,
                               node_parameters, divisor)
