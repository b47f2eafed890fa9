"""Tame Kummer coverings of the formal disk and their splitting.

A covering of ``Spec k[[t1,...,tm]]`` is presented by relations
``s_i^(n_i) = a_i`` where every radicand ``a_i`` is unit times monomial, the
monomial a product of *distinct* variables (the normal crossings shape), and
every exponent ``n_i`` is prime to the characteristic.  Splitting enumerates
the ring homomorphisms into the Puiseux ring: the image of ``s_i`` runs over
``zeta^j * r_i`` where ``r_i`` is the principal ``n_i``-th root of ``a_i``
and ``zeta`` the designated primitive ``n_i``-th root of unity, so a covering
of degree ``prod n_i`` splits into exactly that many homomorphisms.
"""

from itertools import product

from .errors import (
    ArityMismatch,
    BadRadicandShape,
    LeadingCoefficientHasNoRoot,
    MissingRootsOfUnity,
    NotUnitTimesMonomial,
    TameViolation,
)


class KummerCovering:
    """Presentation of a tame Kummer covering over the formal disk."""

    __slots__ = ("field", "num_vars", "truncation_order", "relations")

    def __init__(self, field, num_vars, truncation_order, relations):
        self.field = field
        self.num_vars = num_vars
        self.truncation_order = truncation_order
        self.relations = tuple((radicand, int(n)) for radicand, n in relations)

    def validate(self):
        """Check tameness and the normal-crossings radicand shape."""
        p = self.field.characteristic
        for i, (radicand, n) in enumerate(self.relations):
            if n < 1:
                raise TameViolation(f"relation {i}: exponent {n} < 1")
            if p != 0 and n % p == 0:
                raise TameViolation(
                    f"relation {i}: exponent {n} divisible by characteristic {p}")
            if radicand.field != self.field or radicand.num_vars != self.num_vars:
                raise ArityMismatch(f"relation {i}: radicand over the wrong ring")
            try:
                _, exponents, _ = radicand.decompose_unit_monomial()
            except NotUnitTimesMonomial as exc:
                raise BadRadicandShape(f"relation {i}: {exc}") from exc
            if any(e not in (0, 1) for e in exponents):
                raise BadRadicandShape(
                    f"relation {i}: monomial part "
                    f"{tuple(map(str, exponents))} is not a product of "
                    f"distinct variables")

    def __repr__(self):
        rels = ", ".join(f"({r!r})^(1/{n})" for r, n in self.relations)
        return f"KummerCovering({self.field!r}, {rels})"


class SplitHomomorphism:
    """One homomorphism of a split covering: the tuple of generator images."""

    __slots__ = ("images",)

    def __init__(self, images):
        self.images = tuple(images)

    def __eq__(self, other):
        if not isinstance(other, SplitHomomorphism):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __str__(self):
        return ", ".join(str(s) for s in self.images)

    def __repr__(self):
        return f"<hom {self}>"


def split_homs(covering):
    """All homomorphisms splitting the covering, in deterministic order.

    The order is lexicographic in the root-of-unity power tuples
    ``(j_1, ..., j_k)``; the covering degree ``prod n_i`` equals the number
    of homomorphisms returned.
    """
    covering.validate()
    field = covering.field
    principal_roots = []
    primitives = []
    for i, (radicand, n) in enumerate(covering.relations):
        units = field.roots_of_unity(n)
        if units.primitive is None or len(units.roots) != n:
            raise MissingRootsOfUnity(
                f"relation {i}: {field!r} contains {len(units.roots)} of the "
                f"{n} required roots of unity")
        coeff, _, _ = radicand.decompose_unit_monomial()
        scalar_root = field.principal_nth_root(coeff, n)
        if scalar_root is None:
            raise LeadingCoefficientHasNoRoot(
                f"relation {i}: leading coefficient {coeff} has no "
                f"{n}-th root in {field!r}")
        principal_roots.append(radicand.nth_root(n, scalar_root))
        primitives.append(units.primitive)
    homs = []
    for powers in product(*(range(n) for _, n in covering.relations)):
        images = tuple(root.scale(zeta ** j)
                       for root, zeta, j in zip(principal_roots, primitives, powers))
        homs.append(SplitHomomorphism(images))
    return homs


def verify_hom(covering, hom):
    """Independent check: every image raised to its exponent matches the
    radicand up to the truncation order."""
    if len(hom.images) != len(covering.relations):
        raise ArityMismatch(
            f"homomorphism has {len(hom.images)} images for "
            f"{len(covering.relations)} relations")
    order = covering.truncation_order
    for image, (radicand, n) in zip(hom.images, covering.relations):
        if not (image ** n).equal_mod(radicand, order):
            return False
    return True


def all_series_roots(series, n):
    """Every n-th root of a unit-times-monomial series obtainable from a
    scalar root of its leading coefficient, in canonical root order."""
    coeff, _, _ = series.decompose_unit_monomial()
    return [series.nth_root(n, r) for r in series.field.nth_roots(coeff, n)]
