"""Stable graphs as half-edge sextuples, with isomorphism machinery.

A graph is a sextuple ``(F, V, j, incidence, genus, leg_labels)``: a finite
set of half-edges F, vertices V, an involution j on F whose 2-element orbits
are the edges and whose fixed points are the legs, an incidence map F -> V,
a genus label per vertex and a bijective labeling of the legs by 1..n.

Morphisms are pairs of bijections (f1 on half-edges, f0 on vertices)
commuting with the involution and incidence and preserving genus and leg
labels; in particular automorphisms may never permute legs.

Canonical forms use color refinement on half-edges (initial colors from leg
label, vertex genus and valence) followed by backtracking over all
refinement-compatible orderings, keeping the lexicographically smallest
encoding.  This is exact on multigraphs with loops, which dominate here.
"""

from collections import Counter
from itertools import permutations, product
from typing import NamedTuple

from .errors import (
    Disconnected,
    DomainError,
    LegLabelNotBijective,
    NotInvolution,
    ParseError,
    UnstablePair,
)


class GraphStats(NamedTuple):
    num_vertices: int
    num_edges: int
    num_legs: int
    first_betti: int
    total_genus: int
    valences: dict


class GraphClassification(NamedTuple):
    stable: bool
    maximally_degenerate: bool


class StableGraph:
    """One stable graph; treat as immutable once validated."""

    __slots__ = ("half_edges", "vertices", "involution", "incidence", "genus",
                 "leg_labels")

    def __init__(self, half_edges, vertices, involution, incidence, genus,
                 leg_labels):
        self.half_edges = tuple(sorted(half_edges))
        self.vertices = tuple(sorted(vertices))
        self.involution = dict(involution)
        self.incidence = dict(incidence)
        self.genus = dict(genus)
        self.leg_labels = dict(leg_labels)

    # -- validation -----------------------------------------------------------

    def validate(self):
        """Raise a DomainError unless every structural invariant holds."""
        fs = set(self.half_edges)
        vs = set(self.vertices)
        if len(self.half_edges) != len(fs):
            raise DomainError("duplicate half-edge ids")
        if len(self.vertices) != len(vs) or not vs:
            raise DomainError("vertex set empty or with duplicate ids")
        if set(self.involution) != fs:
            raise NotInvolution("involution is not defined on exactly the half-edges")
        for phi in self.half_edges:
            psi = self.involution[phi]
            if psi not in fs or self.involution[psi] != phi:
                raise NotInvolution(f"involution breaks at {phi!r}")
        if set(self.incidence) != fs or any(v not in vs for v in self.incidence.values()):
            raise DomainError("incidence is not a map from half-edges to vertices")
        if set(self.genus) != vs:
            raise DomainError("genus is not defined on exactly the vertices")
        if any(not isinstance(g, int) or g < 0 for g in self.genus.values()):
            raise DomainError("vertex genus must be a nonnegative integer")
        legs = {phi for phi in self.half_edges if self.involution[phi] == phi}
        if set(self.leg_labels) != legs:
            raise LegLabelNotBijective("leg labels must be given on exactly the legs")
        labels = sorted(self.leg_labels.values())
        if labels != list(range(1, len(legs) + 1)):
            raise LegLabelNotBijective(
                f"labels {labels} are not a bijection onto 1..{len(legs)}")
        if not self._is_connected():
            raise Disconnected("graph is not connected")

    def _is_connected(self):
        if not self.vertices:
            return False
        seen = {self.vertices[0]}
        frontier = [self.vertices[0]]
        at_vertex = self.half_edges_at()
        while frontier:
            v = frontier.pop()
            for phi in at_vertex[v]:
                w = self.incidence[self.involution[phi]]
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == len(self.vertices)

    # -- derived structure ------------------------------------------------------

    def half_edges_at(self):
        """Map vertex -> sorted tuple of incident half-edges."""
        at = {v: [] for v in self.vertices}
        for phi in self.half_edges:
            at[self.incidence[phi]].append(phi)
        return {v: tuple(hs) for v, hs in at.items()}

    def legs(self):
        return tuple(phi for phi in self.half_edges if self.involution[phi] == phi)

    def edges(self):
        """Edges as ordered pairs (a, b) with a < b, canonically sorted."""
        out = []
        for phi in self.half_edges:
            psi = self.involution[phi]
            if phi < psi:
                out.append((phi, psi))
        return tuple(out)

    def valences(self):
        return dict(Counter(self.incidence[phi] for phi in self.half_edges))

    def stats(self):
        valences = self.valences()
        for v in self.vertices:
            valences.setdefault(v, 0)
        num_edges = len(self.edges())
        first_betti = num_edges - len(self.vertices) + 1
        total_genus = first_betti + sum(self.genus.values())
        return GraphStats(len(self.vertices), num_edges, len(self.legs()),
                          first_betti, total_genus, valences)

    def classify(self):
        valences = self.stats().valences
        stable = all(2 * self.genus[v] - 2 + valences[v] > 0 for v in self.vertices)
        max_degenerate = stable and all(
            self.genus[v] == 0 and valences[v] == 3 for v in self.vertices)
        return GraphClassification(stable, max_degenerate)

    def relabeled(self, f1, f0):
        """Apply half-edge and vertex relabeling maps."""
        return StableGraph(
            [f1[phi] for phi in self.half_edges],
            [f0[v] for v in self.vertices],
            {f1[phi]: f1[psi] for phi, psi in self.involution.items()},
            {f1[phi]: f0[v] for phi, v in self.incidence.items()},
            {f0[v]: g for v, g in self.genus.items()},
            {f1[phi]: lab for phi, lab in self.leg_labels.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, StableGraph):
            return NotImplemented
        return (self.half_edges == other.half_edges
                and self.vertices == other.vertices
                and self.involution == other.involution
                and self.incidence == other.incidence
                and self.genus == other.genus
                and self.leg_labels == other.leg_labels)

    def __hash__(self):
        return hash((self.half_edges, self.vertices,
                     tuple(sorted(self.involution.items())),
                     tuple(sorted(self.incidence.items())),
                     tuple(sorted(self.genus.items())),
                     tuple(sorted(self.leg_labels.items()))))

    def __repr__(self):
        s = self.stats()
        return (f"<StableGraph V={s.num_vertices} E={s.num_edges} "
                f"legs={s.num_legs} genus={s.total_genus}>")


class GraphMorphism:
    """A pair of bijections (f1 on half-edges, f0 on vertices)."""

    __slots__ = ("f1", "f0")

    def __init__(self, f1, f0):
        self.f1 = dict(f1)
        self.f0 = dict(f0)

    @classmethod
    def identity(cls, graph):
        return cls({phi: phi for phi in graph.half_edges},
                   {v: v for v in graph.vertices})

    def is_valid(self, source, target):
        """Check the four morphism conditions literally."""
        if sorted(self.f1) != list(source.half_edges):
            return False
        if sorted(self.f1.values()) != list(target.half_edges):
            return False
        if sorted(self.f0) != list(source.vertices):
            return False
        if sorted(self.f0.values()) != list(target.vertices):
            return False
        for phi in source.half_edges:
            if self.f1[source.involution[phi]] != target.involution[self.f1[phi]]:
                return False
            if self.f0[source.incidence[phi]] != target.incidence[self.f1[phi]]:
                return False
        for v in source.vertices:
            if source.genus[v] != target.genus[self.f0[v]]:
                return False
        for phi, lab in source.leg_labels.items():
            if target.leg_labels.get(self.f1[phi]) != lab:
                return False
        return True

    def compose(self, other):
        """self after other: (self . other)(x) = self(other(x))."""
        return GraphMorphism({x: self.f1[y] for x, y in other.f1.items()},
                             {x: self.f0[y] for x, y in other.f0.items()})

    def inverse(self):
        return GraphMorphism({y: x for x, y in self.f1.items()},
                             {y: x for x, y in self.f0.items()})

    def apply_edge(self, edge):
        a, b = self.f1[edge[0]], self.f1[edge[1]]
        return (a, b) if a < b else (b, a)

    def __eq__(self, other):
        if not isinstance(other, GraphMorphism):
            return NotImplemented
        return self.f1 == other.f1 and self.f0 == other.f0

    def __hash__(self):
        return hash((tuple(sorted(self.f1.items())),
                     tuple(sorted(self.f0.items()))))

    def __repr__(self):
        moves = " ".join(f"{a}->{b}" for a, b in sorted(self.f1.items()))
        return f"<morphism {moves}>"


# -- isomorphism search ------------------------------------------------------------


def _screen_profiles(source, target):
    ss, ts = source.stats(), target.stats()
    if (ss.num_vertices, ss.num_edges, ss.num_legs) != \
            (ts.num_vertices, ts.num_edges, ts.num_legs):
        return False
    source_profile = sorted((source.genus[v], ss.valences[v]) for v in source.vertices)
    target_profile = sorted((target.genus[v], ts.valences[v]) for v in target.vertices)
    return source_profile == target_profile


def _iter_isomorphisms(source, target):
    """Backtracking over half-edge assignments in sorted source order;
    candidates are tried in sorted target order, so the yield order is
    deterministic (lexicographic in the image tuples)."""
    ss, ts = source.stats(), target.stats()
    label_to_leg = {lab: phi for phi, lab in target.leg_labels.items()}
    target_legs = set(target.leg_labels)
    order = sorted(source.half_edges)
    f1, f0 = {}, {}
    used_half = set()
    used_vertices = set()

    def complete_vertex_map():
        # vertices without half-edges are matched genus by genus
        left = [v for v in source.vertices if v not in f0]
        right = [w for w in target.vertices if w not in used_vertices]
        if not left:
            yield dict(f0)
            return
        by_genus = {}
        for w in right:
            by_genus.setdefault(target.genus[w], []).append(w)
        groups = {}
        for v in left:
            groups.setdefault(source.genus[v], []).append(v)
        if set(groups) != set(by_genus) or any(
                len(groups[g]) != len(ws) for g, ws in by_genus.items()):
            return
        per_genus = []
        for g in sorted(groups):
            vs = groups[g]
            per_genus.append([list(zip(vs, perm))
                              for perm in permutations(by_genus[g])])
        for assignment in product(*per_genus):
            extended = dict(f0)
            for pairs in assignment:
                extended.update(pairs)
            yield extended

    def extend(i):
        if i == len(order):
            for f0_complete in complete_vertex_map():
                yield GraphMorphism(dict(f1), f0_complete)
            return
        phi = order[i]
        lab = source.leg_labels.get(phi)
        if lab is not None:
            psi = label_to_leg.get(lab)
            options = [psi] if psi is not None and psi not in used_half else []
        else:
            partner = source.involution[phi]
            if partner in f1:
                psi = target.involution[f1[partner]]
                options = [] if psi in used_half or psi in target_legs else [psi]
            else:
                options = [psi for psi in target.half_edges
                           if psi not in used_half and psi not in target_legs]
        v = source.incidence[phi]
        for psi in options:
            w = target.incidence[psi]
            if v in f0:
                if f0[v] != w:
                    continue
                fresh_vertex = False
            else:
                if (w in used_vertices
                        or target.genus[w] != source.genus[v]
                        or ts.valences[w] != ss.valences[v]):
                    continue
                fresh_vertex = True
                f0[v] = w
                used_vertices.add(w)
            f1[phi] = psi
            used_half.add(psi)
            yield from extend(i + 1)
            del f1[phi]
            used_half.discard(psi)
            if fresh_vertex:
                del f0[v]
                used_vertices.discard(w)

    yield from extend(0)


def find_isomorphisms(source, target):
    """The complete list of morphisms source -> target, deterministic order.

    Empty means non-isomorphic; ``find_isomorphisms(G, G)`` is Aut G.
    """
    if not _screen_profiles(source, target):
        return []
    return list(_iter_isomorphisms(source, target))


def are_isomorphic(source, target):
    """Existence-only variant of ``find_isomorphisms`` with early exit."""
    if not _screen_profiles(source, target):
        return False
    for _ in _iter_isomorphisms(source, target):
        return True
    return False


# -- canonical form -----------------------------------------------------------------


class _IndexedGraph:
    """Dense integer view of a graph, the working form of canonicalization."""

    __slots__ = ("half_edges", "involution", "vertex_of", "members", "genus",
                 "leg", "size")

    def __init__(self, graph):
        hs = list(graph.half_edges)
        pos = {phi: i for i, phi in enumerate(hs)}
        vertices = list(graph.vertices)
        vidx = {v: k for k, v in enumerate(vertices)}
        self.half_edges = hs
        self.size = len(hs)
        self.involution = [pos[graph.involution[phi]] for phi in hs]
        self.vertex_of = [vidx[graph.incidence[phi]] for phi in hs]
        self.members = [[] for _ in vertices]
        for i in range(self.size):
            self.members[self.vertex_of[i]].append(i)
        self.genus = [graph.genus[v] for v in vertices]
        self.leg = [graph.leg_labels.get(phi, 0) for phi in hs]

    def initial_colors(self):
        keys = [(self.leg[i],
                 self.genus[self.vertex_of[i]],
                 len(self.members[self.vertex_of[i]]))
                for i in range(self.size)]
        palette = {key: c for c, key in enumerate(sorted(set(keys)))}
        return [palette[key] for key in keys]

    def refine(self, colors):
        num = len(set(colors))
        while True:
            around = [tuple(sorted(colors[k] for k in m)) for m in self.members]
            keys = [(colors[i], colors[self.involution[i]],
                     around[self.vertex_of[i]])
                    for i in range(self.size)]
            palette = {key: c for c, key in enumerate(sorted(set(keys)))}
            if len(palette) == num:
                return colors
            num = len(palette)
            colors = [palette[key] for key in keys]

    def encode(self, order):
        pos = [0] * self.size
        for rank, i in enumerate(order):
            pos[i] = rank
        vertex_number = {}
        incidence_code = []
        for i in order:
            v = self.vertex_of[i]
            if v not in vertex_number:
                vertex_number[v] = len(vertex_number)
            incidence_code.append(vertex_number[v])
        # isolated vertices carry only their genus; order them by it
        leftover = sorted((v for v in range(len(self.genus))
                           if v not in vertex_number),
                          key=lambda v: self.genus[v])
        for v in leftover:
            vertex_number[v] = len(vertex_number)
        genus_code = [0] * len(vertex_number)
        for v, k in vertex_number.items():
            genus_code[k] = self.genus[v]
        return (tuple(pos[self.involution[i]] for i in order),
                tuple(incidence_code),
                tuple(genus_code),
                tuple(self.leg[i] for i in order))


def _canonical_order_indexed(indexed):
    best = [None, None]  # encoding, order (as half-edge indices)

    def search(colors):
        colors = indexed.refine(colors)
        classes = {}
        for i, c in enumerate(colors):
            classes.setdefault(c, []).append(i)
        split = None
        for c in sorted(classes):
            if len(classes[c]) > 1:
                split = c
                break
        if split is None:
            order = sorted(range(indexed.size), key=colors.__getitem__)
            enc = indexed.encode(order)
            if best[0] is None or enc < best[0]:
                best[0], best[1] = enc, order
            return
        for i in classes[split]:
            branched = [(c, 0 if k == i else 1) for k, c in enumerate(colors)]
            palette = {key: c for c, key in enumerate(sorted(set(branched)))}
            search([palette[key] for key in branched])

    search(indexed.initial_colors())
    return best[0], best[1]


def _canonical_order(graph):
    """Smallest encoding over all refinement-compatible orderings; returns
    ``(encoding, order)`` with the order listing the original half-edges."""
    indexed = _IndexedGraph(graph)
    encoding, order = _canonical_order_indexed(indexed)
    return encoding, tuple(indexed.half_edges[i] for i in order)


def canonical_form(graph):
    """Relabel into the canonical representative of the isomorphism class.

    Returns ``(canonical_graph, relabeling)`` where the canonical graph uses
    integer ids (half-edges and vertices numbered from 0) and the relabeling
    is the morphism from ``graph`` onto it.  Canonical forms of two graphs
    coincide exactly when the graphs are isomorphic.
    """
    encoding, order = _canonical_order(graph)
    f1 = {phi: i for i, phi in enumerate(order)}
    vertex_number = {}
    for phi in order:
        v = graph.incidence[phi]
        if v not in vertex_number:
            vertex_number[v] = len(vertex_number)
    for v in sorted((v for v in graph.vertices if v not in vertex_number),
                    key=lambda v: graph.genus[v]):
        vertex_number[v] = len(vertex_number)
    canonical = graph.relabeled(f1, vertex_number)
    return canonical, GraphMorphism(f1, vertex_number)


def canonical_encoding(graph):
    """Hashable complete isomorphism invariant."""
    return _canonical_order(graph)[0]


# -- enumeration of maximally degenerate graphs ----------------------------------


def enumerate_max_degenerate(genus, legs):
    """All connected trivalent genus-0-vertex graphs with the requested total
    genus and labeled legs, one canonical representative per isomorphism
    class, deterministically ordered.

    Generation pairs half-edge slots recursively; interchangeable choices
    (slots within one vertex, untouched vertices) are taken in a fixed
    normalized way and duplicates are removed by canonical encoding.
    """
    if 2 * genus - 2 + legs <= 0:
        raise UnstablePair(f"(genus, legs) = ({genus}, {legs}) is not stable")
    num_vertices = 2 * genus - 2 + legs
    num_slots = 3 * num_vertices
    slots = list(range(num_slots))
    vertex_of = [s // 3 for s in slots]
    decided = [False] * num_slots
    pairing = {}
    labels = {}
    used_labels = [False] * (legs + 1)
    max_label_at = [0] * num_vertices
    undecided_at = [3] * num_vertices
    adjacency = [[] for _ in range(num_vertices)]
    found = {}

    def component_closes_short(v):
        """True when v's component has no undecided slot left but does not
        span every vertex; such a branch can never become connected."""
        seen = {v}
        frontier = [v]
        open_slots = undecided_at[v]
        while frontier:
            for w in adjacency[frontier.pop()]:
                if w not in seen:
                    seen.add(w)
                    open_slots += undecided_at[w]
                    frontier.append(w)
        return open_slots == 0 and len(seen) < num_vertices

    def finish():
        involution = dict(pairing)
        for s in labels:
            involution[s] = s
        graph = StableGraph(
            slots, range(num_vertices), involution,
            dict(enumerate(vertex_of)), {v: 0 for v in range(num_vertices)},
            labels)
        encoding, _ = _canonical_order(graph)
        if encoding not in found:
            canonical, _ = canonical_form(graph)
            found[encoding] = canonical

    def extend(start, remaining, unused):
        current = start
        while current < num_slots and decided[current]:
            current += 1
        if current == num_slots:
            if unused == 0:
                finish()
            return
        if unused > remaining:
            return
        v_current = vertex_of[current]
        decided[current] = True
        undecided_at[v_current] -= 1
        # option 1: the current slot becomes a leg.  Slots within one vertex
        # are interchangeable, so labels on a vertex may be forced increasing.
        if unused > 0 and not component_closes_short(v_current):
            previous_max = max_label_at[v_current]
            for lab in range(previous_max + 1, legs + 1):
                if used_labels[lab]:
                    continue
                labels[current] = lab
                used_labels[lab] = True
                max_label_at[v_current] = lab
                extend(current + 1, remaining - 1, unused - 1)
                max_label_at[v_current] = previous_max
                used_labels[lab] = False
                del labels[current]
        # option 2: pair with the first undecided slot of each usable vertex;
        # untouched vertices are interchangeable, so only the first one counts.
        if unused <= remaining - 2:
            seen_fresh = False
            for v in range(num_vertices):
                if undecided_at[v] == 0:
                    continue
                if undecided_at[v] == 3 and v != v_current:
                    if seen_fresh:
                        continue
                    seen_fresh = True
                partner = next(s for s in range(3 * v, 3 * v + 3)
                               if not decided[s])
                if partner < current:
                    continue
                decided[partner] = True
                undecided_at[v] -= 1
                pairing[current] = partner
                pairing[partner] = current
                adjacency[v_current].append(v)
                adjacency[v].append(v_current)
                if not component_closes_short(v):
                    extend(current + 1, remaining - 2, unused)
                adjacency[v].pop()
                adjacency[v_current].pop()
                del pairing[partner]
                del pairing[current]
                undecided_at[v] += 1
                decided[partner] = False
        undecided_at[v_current] += 1
        decided[current] = False

    extend(0, num_slots, legs)
    return [found[key] for key in sorted(found)]


# -- textual document codec -----------------------------------------------------


_DOCUMENT_FIELDS = {"half_edges", "vertices", "involution", "incidence", "leg_labels"}


def graph_to_document(graph):
    """JSON-compatible dict; all ids are rendered as strings."""
    pairs = sorted([str(a), str(b)] if str(a) <= str(b) else [str(b), str(a)]
                   for a, b in graph.edges())
    singles = sorted([str(phi)] for phi in graph.legs())
    return {
        "half_edges": sorted(str(phi) for phi in graph.half_edges),
        "vertices": [{"id": str(v), "genus": graph.genus[v]}
                     for v in sorted(graph.vertices, key=str)],
        "involution": pairs + singles,
        "incidence": {str(phi): str(v)
                      for phi, v in sorted(graph.incidence.items(),
                                           key=lambda kv: str(kv[0]))},
        "leg_labels": {str(phi): lab
                       for phi, lab in sorted(graph.leg_labels.items(),
                                              key=lambda kv: str(kv[0]))},
    }


def graph_from_document(doc):
    """Parse a graph document; referential problems raise ParseError and the
    mathematical invariants are checked with ``validate``."""
    if not isinstance(doc, dict):
        raise ParseError("graph document must be an object")
    unknown = set(doc) - _DOCUMENT_FIELDS
    if unknown:
        raise ParseError(f"unknown field(s) {sorted(unknown)} in graph document")
    missing = _DOCUMENT_FIELDS - set(doc)
    if missing:
        raise ParseError(f"missing field(s) {sorted(missing)} in graph document")
    half_edges = [str(phi) for phi in doc["half_edges"]]
    if len(set(half_edges)) != len(half_edges):
        raise ParseError("duplicate half-edge ids")
    genus = {}
    for entry in doc["vertices"]:
        if not isinstance(entry, dict) or set(entry) != {"id", "genus"}:
            raise ParseError(f"malformed vertex entry {entry!r}")
        if not isinstance(entry["genus"], int) or entry["genus"] < 0:
            raise ParseError(f"genus of vertex {entry['id']!r} must be a "
                             "nonnegative integer")
        genus[str(entry["id"])] = entry["genus"]
    involution = {}
    for orbit in doc["involution"]:
        ids = [str(x) for x in orbit]
        if len(ids) == 1:
            a = b = ids[0]
        elif len(ids) == 2:
            a, b = ids
        else:
            raise ParseError(f"involution orbit {orbit!r} must have 1 or 2 entries")
        for x in (a, b):
            if x not in set(half_edges):
                raise ParseError(f"involution mentions unknown half-edge {x!r}")
            if x in involution:
                raise ParseError(f"half-edge {x!r} appears twice in the involution")
        involution[a] = b
        if a != b:
            involution[b] = a
    if set(involution) != set(half_edges):
        raise ParseError("involution does not cover every half-edge")
    incidence = {}
    for phi, v in doc["incidence"].items():
        phi, v = str(phi), str(v)
        if phi not in set(half_edges):
            raise ParseError(f"incidence mentions unknown half-edge {phi!r}")
        if v not in genus:
            raise ParseError(f"incidence mentions unknown vertex {v!r}")
        incidence[phi] = v
    if set(incidence) != set(half_edges):
        raise ParseError("incidence does not cover every half-edge")
    leg_labels = {}
    for phi, lab in doc["leg_labels"].items():
        phi = str(phi)
        if phi not in set(half_edges):
            raise ParseError(f"leg label on unknown half-edge {phi!r}")
        if not isinstance(lab, int):
            raise ParseError(f"leg label of {phi!r} must be an integer")
        leg_labels[phi] = lab
    return StableGraph(half_edges, genus.keys(), involution, incidence, genus,
                       leg_labels)
