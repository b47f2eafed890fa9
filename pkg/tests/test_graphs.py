import json
import random

import pytest

from tangentbase.errors import (
    Disconnected,
    LegLabelNotBijective,
    NotInvolution,
    ParseError,
    UnstablePair,
)
from tangentbase.graphs import (
    GraphMorphism,
    StableGraph,
    are_isomorphic,
    canonical_encoding,
    canonical_form,
    enumerate_max_degenerate,
    find_isomorphisms,
    graph_from_document,
    graph_to_document,
)

from bruteforce import automorphism_count_by_bijections, naive_enumerate
from conftest import FAMILIES_4, ORACLE_FAMILIES, enumerated
from graph_examples import (
    cross_0_4,
    dumbbell,
    one_loop_one_leg,
    theta,
    three_legged_vertex,
)


# -- validation ---------------------------------------------------------------


def test_validate_one_loop_graph():
    one_loop_one_leg().validate()


def test_validate_rejects_three_cycle():
    graph = StableGraph(["a", "b", "c"], ["v"],
                        {"a": "b", "b": "c", "c": "a"},
                        {"a": "v", "b": "v", "c": "v"}, {"v": 0}, {})
    with pytest.raises(NotInvolution):
        graph.validate()


def test_validate_rejects_disconnected():
    graph = StableGraph(["a", "b", "c", "d"], ["u", "v"],
                        {"a": "b", "b": "a", "c": "d", "d": "c"},
                        {"a": "u", "b": "u", "c": "v", "d": "v"},
                        {"u": 1, "v": 1}, {})
    with pytest.raises(Disconnected):
        graph.validate()


def test_validate_rejects_bad_leg_labels():
    graph = StableGraph(["l1", "l2"], ["v"],
                        {"l1": "l1", "l2": "l2"},
                        {"l1": "v", "l2": "v"}, {"v": 1},
                        {"l1": 1, "l2": 3})
    with pytest.raises(LegLabelNotBijective):
        graph.validate()
    graph = StableGraph(["l1", "e"], ["v"],
                        {"l1": "l1", "e": "e"},
                        {"l1": "v", "e": "v"}, {"v": 1}, {"l1": 1})
    with pytest.raises(LegLabelNotBijective):
        graph.validate()


# -- counting -----------------------------------------------------------------


def test_stats_one_loop():
    stats = one_loop_one_leg().stats()
    assert (stats.num_vertices, stats.num_edges, stats.num_legs) == (1, 1, 1)
    assert stats.first_betti == 1 and stats.total_genus == 1


def test_stats_theta():
    stats = theta().stats()
    assert (stats.num_vertices, stats.num_edges, stats.num_legs) == (2, 3, 0)
    assert stats.first_betti == 2 and stats.total_genus == 2


def test_stats_cross():
    stats = cross_0_4().stats()
    assert (stats.num_vertices, stats.num_edges, stats.num_legs) == (2, 1, 4)
    assert stats.first_betti == 0 and stats.total_genus == 0


def test_classify():
    assert theta().classify() == (True, True)
    isolated_genus_one = StableGraph([], ["v"], {}, {}, {"v": 1}, {})
    assert isolated_genus_one.classify().stable is False
    two_legs = StableGraph(["l1", "l2"], ["v"],
                           {"l1": "l1", "l2": "l2"},
                           {"l1": "v", "l2": "v"}, {"v": 0},
                           {"l1": 1, "l2": 2})
    assert two_legs.classify().stable is False
    assert dumbbell().classify() == (True, True)
    assert three_legged_vertex(genus=1).classify() == (True, False)


# -- isomorphisms ----------------------------------------------------------------


def test_aut_theta_order_12():
    automorphisms = find_isomorphisms(theta(), theta())
    assert len(automorphisms) == 12
    assert automorphism_count_by_bijections(theta()) == 12


def test_aut_one_loop_order_2():
    graph = one_loop_one_leg()
    automorphisms = find_isomorphisms(graph, graph)
    assert len(automorphisms) == 2
    assert automorphism_count_by_bijections(graph) == 2


def test_aut_labeled_cross_trivial():
    graph = cross_0_4()
    automorphisms = find_isomorphisms(graph, graph)
    assert len(automorphisms) == 1
    assert automorphism_count_by_bijections(graph) == 1


def test_morphism_conditions_hold_literally():
    for graph in (theta(), dumbbell(), one_loop_one_leg(), cross_0_4()):
        for a in find_isomorphisms(graph, graph):
            assert a.is_valid(graph, graph)
            for phi in graph.half_edges:
                assert a.f1[graph.involution[phi]] == \
                    graph.involution[a.f1[phi]]
                assert a.f0[graph.incidence[phi]] == graph.incidence[a.f1[phi]]
            for v in graph.vertices:
                assert graph.genus[v] == graph.genus[a.f0[v]]
            for phi, lab in graph.leg_labels.items():
                assert graph.leg_labels[a.f1[phi]] == lab


def test_isomorphism_between_relabelings():
    graph = theta()
    f1 = {"a1": "x5", "a2": "x3", "a3": "x1", "b1": "x6", "b2": "x4", "b3": "x2"}
    f0 = {"u": "p", "v": "q"}
    relabeled = graph.relabeled(f1, f0)
    relabeled.validate()
    morphisms = find_isomorphisms(graph, relabeled)
    assert len(morphisms) == 12
    assert are_isomorphic(graph, relabeled)
    for m in morphisms:
        assert m.is_valid(graph, relabeled)


def test_non_isomorphic_same_stats():
    # theta and dumbbell share all numeric statistics
    assert theta().stats() == dumbbell().stats()
    assert not are_isomorphic(theta(), dumbbell())
    assert find_isomorphisms(theta(), dumbbell()) == []


def test_automorphisms_form_group():
    for genus, legs in FAMILIES_4:
        for graph in enumerated(genus, legs):
            automorphisms = find_isomorphisms(graph, graph)
            identity = GraphMorphism.identity(graph)
            assert identity in automorphisms
            group = set(automorphisms)
            for a in automorphisms:
                assert a.inverse() in group
                assert a.compose(a.inverse()) == identity
            if len(automorphisms) <= 12:
                for a in automorphisms:
                    for b in automorphisms:
                        assert a.compose(b) in group


def test_deterministic_order():
    first = find_isomorphisms(theta(), theta())
    second = find_isomorphisms(theta(), theta())
    assert first == second


# -- canonical form ----------------------------------------------------------------


def test_canonical_form_iso_invariant():
    graph = theta()
    relabeled = graph.relabeled(
        {"a1": "z9", "a2": "z8", "a3": "z7", "b1": "z1", "b2": "z2", "b3": "z3"},
        {"u": "w2", "v": "w1"})
    a, _ = canonical_form(graph)
    b, _ = canonical_form(relabeled)
    assert a == b


def test_canonical_form_separates_classes():
    assert canonical_encoding(theta()) != canonical_encoding(dumbbell())


def test_canonical_form_idempotent():
    for graph in (theta(), dumbbell(), one_loop_one_leg(), cross_0_4()):
        canonical, morphism = canonical_form(graph)
        assert morphism.is_valid(graph, canonical)
        again, _ = canonical_form(canonical)
        assert canonical == again


def test_canonical_form_complete_on_families():
    rng = random.Random(2)
    for genus, legs in ((0, 4), (0, 5), (1, 2), (2, 0), (1, 3)):
        graphs = list(enumerated(genus, legs))
        for i, a in enumerate(graphs):
            for b in graphs[i + 1:]:
                assert not are_isomorphic(a, b)
                assert canonical_encoding(a) != canonical_encoding(b)
        # random relabelings stay in the same class
        for graph in rng.sample(graphs, min(3, len(graphs))):
            shuffled_halves = list(graph.half_edges)
            rng.shuffle(shuffled_halves)
            shuffled_vertices = list(graph.vertices)
            rng.shuffle(shuffled_vertices)
            relabeled = graph.relabeled(
                {phi: f"s{k}" for k, phi in
                 zip(shuffled_halves, graph.half_edges)},
                {v: f"w{k}" for k, v in
                 zip(shuffled_vertices, graph.vertices)})
            assert canonical_encoding(relabeled) == canonical_encoding(graph)


# -- enumeration -------------------------------------------------------------------


def test_enumerate_smallest_families():
    assert len(enumerated(0, 3)) == 1
    assert len(enumerated(1, 1)) == 1
    assert len(enumerated(2, 0)) == 2


def test_enumerate_0_4_partitions():
    graphs = enumerated(0, 4)
    assert len(graphs) == 3
    partitions = set()
    for graph in graphs:
        at_vertex = graph.half_edges_at()
        split = frozenset(
            frozenset(graph.leg_labels[phi] for phi in at_vertex[v]
                      if graph.involution[phi] == phi)
            for v in graph.vertices)
        partitions.add(split)
    assert partitions == {
        frozenset({frozenset({1, 2}), frozenset({3, 4})}),
        frozenset({frozenset({1, 3}), frozenset({2, 4})}),
        frozenset({frozenset({1, 4}), frozenset({2, 3})}),
    }


def test_enumerate_2_0_is_theta_and_dumbbell():
    graphs = enumerated(2, 0)
    encodings = {canonical_encoding(g) for g in graphs}
    assert encodings == {canonical_encoding(theta()), canonical_encoding(dumbbell())}


def test_enumerate_counts_match_oracle():
    for genus, legs in ORACLE_FAMILIES:
        oracle = naive_enumerate(genus, legs)
        assert len(enumerated(genus, legs)) == len(oracle), (genus, legs)


def test_enumerate_shape_formulas():
    for genus, legs in FAMILIES_4:
        for graph in enumerated(genus, legs):
            stats = graph.stats()
            assert stats.num_edges == 3 * genus - 3 + legs
            assert stats.num_vertices == 2 * genus - 2 + legs
            assert stats.total_genus == genus
            assert stats.num_legs == legs
            assert graph.classify().maximally_degenerate
            graph.validate()


def test_enumerate_outputs_are_pairwise_distinct():
    for genus, legs in ((0, 5), (1, 3), (2, 1)):
        graphs = list(enumerated(genus, legs))
        for i, a in enumerate(graphs):
            for b in graphs[i + 1:]:
                assert not are_isomorphic(a, b)


def test_enumerate_deterministic():
    assert enumerate_max_degenerate(1, 2) == enumerate_max_degenerate(1, 2)


def test_enumerate_rejects_unstable():
    with pytest.raises(UnstablePair):
        enumerate_max_degenerate(0, 2)
    with pytest.raises(UnstablePair):
        enumerate_max_degenerate(1, 0)


def _random_stable_graph(rng):
    """Small random connected graph with genus labels, legs, loops and
    parallel edges; at most 8 half-edges so the all-bijection oracle stays
    cheap."""
    while True:
        num_vertices = rng.randint(1, 3)
        slots = []
        for v in range(num_vertices):
            for k in range(rng.randint(0, 4)):
                slots.append(f"h{v}_{k}")
        if len(slots) > 8:
            continue
        incidence = {phi: f"v{phi[1]}" for phi in slots}
        vertices = [f"v{v}" for v in range(num_vertices)]
        genus = {v: rng.randint(0, 2) for v in vertices}
        num_legs = rng.randint(0, len(slots))
        if (len(slots) - num_legs) % 2 == 1:
            num_legs += 1
        if num_legs > len(slots):
            continue
        shuffled = list(slots)
        rng.shuffle(shuffled)
        legs, rest = shuffled[:num_legs], shuffled[num_legs:]
        involution = {phi: phi for phi in legs}
        rng.shuffle(rest)
        for a, b in zip(rest[::2], rest[1::2]):
            involution[a] = b
            involution[b] = a
        graph = StableGraph(slots, vertices, involution, incidence, genus,
                            {phi: i + 1 for i, phi in enumerate(legs)})
        if graph._is_connected():
            return graph


def test_random_graphs_aut_matches_brute_force():
    rng = random.Random(31)
    for _ in range(30):
        graph = _random_stable_graph(rng)
        graph.validate()
        fast = len(find_isomorphisms(graph, graph))
        assert fast == automorphism_count_by_bijections(graph)


def test_random_graphs_canonical_form_consistent():
    rng = random.Random(47)
    graphs = [_random_stable_graph(rng) for _ in range(24)]
    for graph in graphs:
        # canonical encoding is invariant under relabeling
        halves = list(graph.half_edges)
        rng.shuffle(halves)
        verts = list(graph.vertices)
        rng.shuffle(verts)
        relabeled = graph.relabeled(
            dict(zip(graph.half_edges, halves)),
            dict(zip(graph.vertices, verts)))
        assert canonical_encoding(relabeled) == canonical_encoding(graph)
        canonical, morphism = canonical_form(graph)
        assert morphism.is_valid(graph, canonical)
    for i, a in enumerate(graphs):
        for b in graphs[i + 1:]:
            same_class = are_isomorphic(a, b)
            assert same_class == \
                (canonical_encoding(a) == canonical_encoding(b))


# -- codec -------------------------------------------------------------------------


def test_codec_round_trip():
    for graph in (theta(), dumbbell(), one_loop_one_leg(), cross_0_4()):
        doc = graph_to_document(graph)
        # through actual JSON text
        parsed = graph_from_document(json.loads(json.dumps(doc)))
        parsed.validate()
        assert graph_to_document(parsed) == doc
        assert are_isomorphic(parsed, graph)


def test_codec_exact_round_trip_on_string_ids():
    graph = theta()
    parsed = graph_from_document(graph_to_document(graph))
    assert parsed == graph


def test_codec_unknown_field():
    doc = graph_to_document(theta())
    doc["colour"] = "blue"
    with pytest.raises(ParseError):
        graph_from_document(doc)


def test_codec_missing_field():
    doc = graph_to_document(theta())
    del doc["incidence"]
    with pytest.raises(ParseError):
        graph_from_document(doc)


def test_codec_referential_errors():
    doc = graph_to_document(one_loop_one_leg())
    doc["incidence"]["zz"] = "v"
    with pytest.raises(ParseError):
        graph_from_document(doc)
    doc = graph_to_document(one_loop_one_leg())
    doc["involution"] = [["a", "b"], ["b"], ["l"]]
    with pytest.raises(ParseError):
        graph_from_document(doc)


def test_codec_document_example():
    text = """
    {"half_edges": ["a", "b", "l"],
     "vertices": [{"id": "v", "genus": 0}],
     "involution": [["a", "b"], ["l"]],
     "incidence": {"a": "v", "b": "v", "l": "v"},
     "leg_labels": {"l": 1}}
    """
    graph = graph_from_document(json.loads(text))
    graph.validate()
    assert graph.stats().total_genus == 1
    assert are_isomorphic(graph, one_loop_one_leg())
