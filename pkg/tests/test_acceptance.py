"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line
and enforcing its runtime budget.  Expected values come from independent
oracles: substitution, exhaustive search, brute-force generation and
all-bijection counting (see ``bruteforce``), never from the code under test.
"""

import io
import random
import time
from contextlib import redirect_stdout
from fractions import Fraction as F
from pathlib import Path

import numpy as np

from tangentbase.cli import run
from tangentbase.fields import Field, is_prime
from tangentbase.graphs import GraphMorphism, find_isomorphisms
from tangentbase.kummer import (
    KummerCovering,
    all_series_roots,
    split_homs,
    verify_hom,
)
from tangentbase.puiseux import PuiseuxSeries, parse_series
from tangentbase.ribbon import (
    INFINITY_POINT,
    MobiusMap,
    enumerate_ribbons,
    mobius_normalize,
    rep_matrix,
    tangential_base_point,
)

from bruteforce import automorphism_count_by_bijections, naive_enumerate
from conftest import ORACLE_FAMILIES, enumerated
from graph_examples import cross_0_4, dumbbell, one_loop_one_leg, theta

GOLDEN_DIR = Path(__file__).parent / "golden"


class budget:
    """Measure a criterion's runtime and print its PASS line on success."""

    def __init__(self, number, description, seconds):
        self.number = number
        self.description = description
        self.seconds = seconds

    def __enter__(self):
        self.start = time.monotonic()
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is not None:
            print(f"ACCEPTANCE {self.number} FAIL: {self.description}")
            return False
        elapsed = time.monotonic() - self.start
        assert elapsed < self.seconds, \
            f"criterion {self.number} took {elapsed:.1f}s (budget {self.seconds}s)"
        print(f"ACCEPTANCE {self.number} PASS ({elapsed:.2f}s < "
              f"{self.seconds}s): {self.description}")
        return False


def variable(field, num_vars, index, order):
    return PuiseuxSeries.variable(field, num_vars, 1, order, index)


def test_criterion_1_kummer_splitting_degree():
    with budget(1, "Kummer splitting degree equals the covering degree", 5):
        order = F(3)
        for p, n, m in [(5, 2, 1), (5, 4, 1), (5, 2, 2), (13, 3, 1), (13, 6, 2)]:
            field = Field(p)
            plain = [(variable(field, m, i + 1, order), n) for i in range(m)]
            unit = parse_series("1 + t1", m, field, 1, order)
            dressed = [(radicand * unit, k) for radicand, k in plain]
            for relations in (plain, dressed):
                covering = KummerCovering(field, m, order, relations)
                homs = split_homs(covering)
                assert len(homs) == n ** m, (p, n, m)
                for hom in homs:
                    assert verify_hom(covering, hom)
                # pairwise distinct, already at truncation order val/n = 1/n
                for i in range(len(homs)):
                    for j in range(i + 1, len(homs)):
                        differs = [
                            not a.equal_mod(b, F(1, n))
                            for a, b in zip(homs[i].images, homs[j].images)]
                        assert any(differs), (p, n, m, i, j)


def _smallest_prime_with_roots(n):
    p = n + 1
    while not (is_prime(p) and (p - 1) % n == 0):
        p += 1
    return p


def test_criterion_2_root_coherence():
    with budget(2, "staged root extraction agrees with one-stage roots", 5):
        for k in range(1, 13):
            for l in range(1, 13):
                if k * l > 12:
                    continue
                field = Field(_smallest_prime_with_roots(k * l))
                t1 = variable(field, 1, 1, F(2))
                one_stage = all_series_roots(t1, k * l)
                assert len(one_stage) == k * l
                two_stage = {deeper
                             for first in all_series_roots(t1, k)
                             for deeper in all_series_roots(first, l)}
                # set equality of exact term maps
                assert two_stage == set(one_stage), (k, l)


def _random_unit_series(rng, field, order):
    terms = {(F(0),): field(1)}
    for _ in range(rng.randint(1, 5)):
        e = (F(rng.randint(1, 8), rng.choice([1, 2])),)
        if field.characteristic == 0:
            c = field(F(rng.randint(-6, 6), rng.randint(1, 6)))
        else:
            c = field(rng.randrange(field.characteristic))
        if not c.is_zero():
            terms[e] = c
    return PuiseuxSeries(field, 1, 2, order, terms)


def test_criterion_3_newton_root_soundness():
    with budget(3, "Newton roots of 300 random unit series check out", 10):
        rng = random.Random(42)
        order = F(4)
        for field in (Field(0), Field(5), Field(13)):
            count = 0
            while count < 100:
                n = rng.choice([2, 3, 4])
                if field.characteristic != 0 and n % field.characteristic == 0:
                    continue
                series = _random_unit_series(rng, field, order)
                # scale so the constant term is a known n-th power
                if field.characteristic == 0:
                    base = field(F(rng.randint(1, 5), rng.randint(1, 5)))
                    if rng.random() < 0.5:
                        base = -base
                else:
                    base = field(rng.randrange(1, field.characteristic))
                series = series.scale(base ** n)
                root = series.nth_root(n, base)
                assert (root ** n).equal_mod(series, order)
                count += 1


def test_criterion_4_enumeration_matches_oracle():
    with budget(4, "enumeration counts equal the brute-force oracle", 30):
        for genus, legs in ORACLE_FAMILIES:
            graphs = enumerated(genus, legs)
            oracle = naive_enumerate(genus, legs)
            assert len(graphs) == len(oracle), (genus, legs)
            for graph in graphs:
                stats = graph.stats()
                assert stats.num_edges == 3 * genus - 3 + legs
                assert stats.num_vertices == 2 * genus - 2 + legs
        assert len(enumerated(0, 3)) == 1
        assert len(enumerated(0, 4)) == 3
        assert len(enumerated(1, 1)) == 1
        assert len(enumerated(2, 0)) == 2


def test_criterion_5_automorphism_groups():
    with budget(5, "automorphism groups match all-bijection counting", 30):
        for genus, legs in ORACLE_FAMILIES:
            for graph in enumerated(genus, legs):
                automorphisms = find_isomorphisms(graph, graph)
                assert len(automorphisms) == \
                    automorphism_count_by_bijections(graph)
                identity = GraphMorphism.identity(graph)
                group = set(automorphisms)
                assert identity in group
                for a in automorphisms:
                    assert a.inverse() in group
                    for b in automorphisms:
                        assert a.compose(b) in group
        assert len(find_isomorphisms(theta(), theta())) == 12
        loop = one_loop_one_leg()
        assert len(find_isomorphisms(loop, loop)) == 2
        cross = cross_0_4()
        assert len(find_isomorphisms(cross, cross)) == 1


def test_criterion_6_representation_property():
    with budget(6, "signed edge matrices form a representation", 60):
        for genus, legs in ORACLE_FAMILIES:
            for graph in enumerated(genus, legs):
                automorphisms = find_isomorphisms(graph, graph)
                for ribbon in enumerate_ribbons(graph):
                    matrices = {a: rep_matrix(a, ribbon)
                                for a in automorphisms}
                    for matrix in matrices.values():
                        assert matrix.is_signed_permutation()
                    for a in automorphisms:
                        for b in automorphisms:
                            assert matrices[a.compose(b)] == \
                                matrices[a] @ matrices[b]
        bell = dumbbell()
        assert bell.edges() == (("a1", "a2"), ("b1", "b2"), ("c1", "c2"))
        flip = next(a for a in find_isomorphisms(bell, bell)
                    if a.f1 == {"a1": "a2", "a2": "a1", "b1": "b1",
                                "b2": "b2", "c1": "c1", "c2": "c2"})
        matrix = rep_matrix(flip, enumerate_ribbons(bell)[0])
        assert np.array_equal(matrix.array, np.diag([1, -1, 1]))


def test_criterion_7_base_point_shape():
    with budget(7, "base points carry one coordinate and chart per edge", 10):
        for genus, legs in ORACLE_FAMILIES:
            expected = 3 * genus - 3 + legs
            for graph in enumerated(genus, legs):
                for ribbon in enumerate_ribbons(graph):
                    point = tangential_base_point(graph, ribbon)
                    assert len(point.coordinates) == expected
                    assert len(point.divisor) == expected
                    for e in graph.edges():
                        u, v = point.node_parameters[e]
                        assert point.charts[u][u] == 0
                        assert point.charts[v][v] == 0


def _random_point(rng, field):
    if rng.random() < 0.2:
        return INFINITY_POINT
    if field.characteristic == 0:
        return field(F(rng.randint(-15, 15), rng.randint(1, 8)))
    return field(rng.randrange(field.characteristic))


def _maps_triple(mobius, field, triple):
    try:
        images = [mobius.apply(p) for p in triple]
    except ValueError:
        return False
    return images == [field(0), field(1), field(-1)]


def test_criterion_8_mobius_normalization():
    with budget(8, "200 random triples normalize to (0, +1, -1)", 5):
        rng = random.Random(99)
        done = 0
        while done < 200:
            field = Field(0) if done % 2 == 0 else Field(13)
            triple = [_random_point(rng, field) for _ in range(3)]
            points = {p if p is INFINITY_POINT else p.value for p in triple}
            if len(points) < 3:
                continue
            mobius = mobius_normalize(field, *triple)
            assert _maps_triple(mobius, field, triple)
            # perturbing any single coefficient must break at least one image
            for index in range(4):
                coefficients = list(mobius.coefficients())
                coefficients[index] = coefficients[index] + field(1)
                perturbed = MobiusMap(field, *coefficients)
                if perturbed.determinant().is_zero():
                    continue
                assert not _maps_triple(perturbed, field, triple), \
                    (triple, index)
            done += 1


def _run_cli(args):
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = run(args)
    return code, buffer.getvalue()


CLI_GOLDEN = {
    "graphs_enum_0_4.txt": ["graphs", "enum", "--genus", "0", "--legs", "4"],
    "puiseux_root.txt": ["puiseux", "root", "-n", "2", "--char", "0",
                         "--order", "3", "--series", "1+t1"],
    "kummer_split.txt": ["kummer", "split", "--char", "5", "--vars", "1",
                         "--order", "2", "--rel", "t1:4"],
}


def test_criterion_9_cli_determinism():
    with budget(9, "CLI output is golden-stable across runs", 5):
        for name, args in CLI_GOLDEN.items():
            first = _run_cli(args)
            second = _run_cli(args)
            assert first == second
            assert first[0] == 0
            assert first[1] == (GOLDEN_DIR / name).read_text(), name
