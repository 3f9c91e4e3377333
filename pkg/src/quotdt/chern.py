"""Exact intersection rings of 3-folds and the double point calculus.

A ChernRing is a graded commutative ring presented by degree one generators,
homogeneous rewrite rules (truncations g^k -> 0 plus optional quadratic
relations) and an integration table on the degree three normal-form
monomials.  Elements are sparse dicts from exponent tuples to Fractions;
products are truncated above degree three, which is all a 3-fold can absorb.

The cobordism side packages (ring, bundle) pairs: phi classes of partition
pairs, mixed Chern number vectors, decomposition in the phi basis by an exact
linear solve, and the double point relation checker with its built-ins.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import conventions
from .errors import SingularBasisMatrixError
from .partitions import PartitionPair, enum_partition_pairs

Element = dict  # exponent tuple -> Fraction

DIM = 3
_REDUCE_FUEL = 10 ** 6


@dataclass(frozen=True, eq=False)
class ChernRing:
    name: str
    gens: tuple[str, ...]
    rules: tuple[tuple[tuple[int, ...], "Element"], ...]
    integrals: Mapping[tuple[int, ...], Fraction]
    tangent_total: Element = field(default_factory=dict)

    # -- element constructors ------------------------------------------

    def zero(self) -> Element:
        return {}

    def one(self) -> Element:
        return {(0,) * len(self.gens): Fraction(1)}

    def gen(self, name: str) -> Element:
        idx = self.gens.index(name)
        exps = tuple(1 if i == idx else 0 for i in range(len(self.gens)))
        return {exps: Fraction(1)}

    # -- arithmetic ------------------------------------------------------

    def add(self, a: Element, b: Element) -> Element:
        out = dict(a)
        for exps, c in b.items():
            new = out.get(exps, Fraction(0)) + c
            if new:
                out[exps] = new
            else:
                out.pop(exps, None)
        return out

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.scale(b, Fraction(-1)))

    def scale(self, a: Element, c) -> Element:
        c = Fraction(c)
        if not c:
            return {}
        return {exps: coeff * c for exps, coeff in a.items()}

    def mul(self, a: Element, b: Element) -> Element:
        acc: Element = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(x + y for x, y in zip(e1, e2))
                if sum(key) > DIM:
                    continue
                new = acc.get(key, Fraction(0)) + c1 * c2
                if new:
                    acc[key] = new
                else:
                    acc.pop(key, None)
        return self.reduce(acc)

    def product(self, *elements: Element) -> Element:
        out = self.one()
        for elt in elements:
            out = self.mul(out, elt)
        return out

    def power(self, a: Element, k: int) -> Element:
        out = self.one()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def reduce(self, a: Element) -> Element:
        """Rewrite to normal form under the ring's homogeneous rules."""
        out: Element = {}
        stack = list(a.items())
        fuel = _REDUCE_FUEL
        while stack:
            fuel -= 1
            if fuel < 0:
                raise RuntimeError(f"rewrite system of {self.name} does not terminate")
            exps, coeff = stack.pop()
            if not coeff:
                continue
            rule = self._find_rule(exps)
            if rule is None:
                new = out.get(exps, Fraction(0)) + coeff
                if new:
                    out[exps] = new
                else:
                    out.pop(exps, None)
                continue
            key, replacement = rule
            quotient = tuple(x - y for x, y in zip(exps, key))
            for rexps, rc in replacement.items():
                stack.append((tuple(x + y for x, y in zip(quotient, rexps)), coeff * rc))
        return out

    def _find_rule(self, exps):
        for key, replacement in self.rules:
            if all(e >= k for e, k in zip(exps, key)):
                return key, replacement
        return None

    # -- integration and tangent classes ---------------------------------

    def degree_part(self, a: Element, degree: int) -> Element:
        return {exps: c for exps, c in a.items() if sum(exps) == degree}

    def integrate(self, a: Element) -> Fraction:
        """Degree three functional; lower degrees integrate to zero."""
        total = Fraction(0)
        for exps, coeff in self.reduce(a).items():
            if sum(exps) != DIM:
                continue
            if exps not in self.integrals:
                raise RuntimeError(f"ring {self.name} has no integral for {exps}")
            total += coeff * self.integrals[exps]
        return total

    def tangent_classes(self) -> tuple[Element, Element, Element]:
        return tuple(self.degree_part(self.tangent_total, d) for d in (1, 2, 3))


# -- built-in rings -----------------------------------------------------


def ring_of_projective_product(lam) -> ChernRing:
    """Intersection ring of the product of projective spaces P^lam."""
    lam = tuple(int(x) for x in lam)
    if sum(lam) != DIM or any(x < 1 for x in lam):
        raise ValueError("factor dimensions must be positive and sum to 3")
    k = len(lam)
    rules = []
    for i, dim in enumerate(lam):
        key = tuple(dim + 1 if j == i else 0 for j in range(k))
        rules.append((key, {}))
    integrals = {tuple(lam): Fraction(1)}
    name = "x".join(f"p{d}" for d in lam)
    ring = ChernRing(name, tuple(f"h{i + 1}" for i in range(k)), tuple(rules), integrals)
    total = ring.one()
    for i, dim in enumerate(lam):
        h = ring.gen(f"h{i + 1}")
        total = ring.mul(total, ring.power(ring.add(ring.one(), h), dim + 1))
    object.__setattr__(ring, "tangent_total", total)
    return ring


def projective_bundle_ring(base: str, twist, sign: int = conventions.GROTHENDIECK_SIGN) -> ChernRing:
    """Ring of P(O + L) over a surface base; L has degree `twist`.

    xi is the degree one relative class; the quadratic relation is
    xi^2 = sign * c1(L) xi with the calibrated sign, and the fiber integral is
    int(xi * beta) = int_base(beta).
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if base == "p2":
        twist = int(twist)
        gens = ("h", "xi")
        ell = {(1, 0): Fraction(twist)} if twist else {}
        rules = [((3, 0), {})]
        rules.append(((0, 2), {(1, 1): Fraction(sign * twist)} if twist else {}))
        integrals = {(2, 1): Fraction(1)}
        ring = ChernRing(f"pbundle(p2,{twist})", gens, tuple(rules), integrals)
        base_total = ring.power(ring.add(ring.one(), ring.gen("h")), 3)
    elif base == "p1xp1":
        t1, t2 = (int(x) for x in twist)
        gens = ("a", "b", "xi")
        ell: Element = {}
        if t1:
            ell[(1, 0, 0)] = Fraction(t1)
        if t2:
            ell[(0, 1, 0)] = Fraction(t2)
        rules = [
            ((2, 0, 0), {}),
            ((0, 2, 0), {}),
            ((0, 0, 2), {exps: c * sign for exps, c in _shift(ell, (0, 0, 1)).items()}),
        ]
        integrals = {(1, 1, 1): Fraction(1)}
        ring = ChernRing(f"pbundle(p1xp1,{(t1, t2)})", gens, tuple(rules), integrals)
        base_total = ring.product(
            ring.power(ring.add(ring.one(), ring.gen("a")), 2),
            ring.power(ring.add(ring.one(), ring.gen("b")), 2),
        )
    else:
        raise ValueError(f"unsupported base {base!r}")

    xi = ring.gen("xi")
    euler_factor = ring.mul(
        ring.add(ring.one(), xi),
        ring.add(ring.add(ring.one(), xi), ell),
    )
    object.__setattr__(ring, "tangent_total", ring.mul(base_total, euler_factor))
    return ring


def _shift(elt: Element, offset) -> Element:
    return {tuple(x + y for x, y in zip(exps, offset)): c for exps, c in elt.items()}


def quadric_threefold() -> ChernRing:
    """The smooth quadric 3-fold: Z[H]/(H^4), int H^3 = 2, c(T) = (1+H)^5 / (1+2H)."""
    ring = ChernRing("quadric", ("H",), (((4,), {}),), {(3,): Fraction(2)})
    h = ring.gen("H")
    numerator = ring.power(ring.add(ring.one(), h), 5)
    # (1 + 2H)^-1 truncated in degree <= 3.
    inverse = {(0,): Fraction(1), (1,): Fraction(-2), (2,): Fraction(4), (3,): Fraction(-8)}
    object.__setattr__(ring, "tangent_total", ring.mul(numerator, inverse))
    return ring


def blowup_p3_conic() -> ChernRing:
    """P^3 blown up along a plane conic, presented by structure constants.

    H is the pulled back hyperplane, E the exceptional divisor over the conic:
    H^2 E = 0, H E^2 = -2 H^3, E^3 = -6 H^3, int H^3 = 1.  The degree three
    tangent class is normalized by its integral chi = 6, the only datum any
    degree three functional can see.
    """
    rules = (
        ((2, 1), {}),
        ((1, 2), {(3, 0): Fraction(-2)}),
        ((0, 3), {(3, 0): Fraction(-6)}),
        ((4, 0), {}),
    )
    ring = ChernRing("blowup-p3-conic", ("H", "E"), rules, {(3, 0): Fraction(1)})
    tangent = {
        (1, 0): Fraction(4),
        (0, 1): Fraction(-1),
        (2, 0): Fraction(8),
        (1, 1): Fraction(-4),
        (3, 0): Fraction(6),
        (0, 0): Fraction(1),
    }
    object.__setattr__(ring, "tangent_total", tangent)
    return ring


_NAMED_RINGS = {
    "p3": lambda: ring_of_projective_product((3,)),
    "p2xp1": lambda: ring_of_projective_product((2, 1)),
    "p1cubed": lambda: ring_of_projective_product((1, 1, 1)),
    "quadric": quadric_threefold,
    "blowup-p3-conic": blowup_p3_conic,
}


def named_ring(name: str) -> ChernRing:
    if name in _NAMED_RINGS:
        return _NAMED_RINGS[name]()
    if name.startswith("pbundle-p2-"):
        return projective_bundle_ring("p2", int(name.rsplit("-", 1)[1]))
    raise ValueError(f"unknown ring {name!r}")


# -- bundles on a ring ---------------------------------------------------


@dataclass(eq=False)
class BundleClass:
    """A split bundle on a ring, remembered through its Chern roots."""

    ring: ChernRing
    rank: int
    roots: tuple[Element, ...]

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be at least 1")
        if len(self.roots) > self.rank:
            raise ValueError("more Chern roots than the rank allows")
        self.roots = tuple(self.roots) + ({},) * (self.rank - len(self.roots))

    def total(self) -> Element:
        out = self.ring.one()
        for root in self.roots:
            out = self.ring.mul(out, self.ring.add(self.ring.one(), root))
        return out

    def chern(self, j: int) -> Element:
        if j == 0:
            return self.ring.one()
        return self.ring.degree_part(self.total(), j)


def trivial_bundle_class(ring: ChernRing, rank: int = 1) -> BundleClass:
    return BundleClass(ring, rank, ())


# -- Chern number functionals ---------------------------------------------


def c3_t_omega(ring: ChernRing) -> int:
    """int c3(T tensor omega) = int (c3(T) - c1(T) c2(T)), always an integer."""
    c1, c2, c3 = ring.tangent_classes()
    value = ring.integrate(ring.sub(c3, ring.mul(c1, c2)))
    if value.denominator != 1:
        raise RuntimeError(f"c3_t_omega of {ring.name} is not an integer: {value}")
    return value.numerator


def euler_characteristic(ring: ChernRing) -> int:
    value = ring.integrate(ring.tangent_classes()[2])
    if value.denominator != 1:
        raise RuntimeError(f"chi of {ring.name} is not an integer: {value}")
    return value.numerator


def mixed_monomials(rank: int) -> tuple[tuple[tuple[int, int, int], tuple[int, int, int]], ...]:
    """Exponent pairs (a, b) of the degree three monomials in c(T) and c(F).

    a weights c1, c2, c3 of the tangent bundle, b weights f1, f2, f3 of the
    bundle with f_j present only for j <= min(rank, 3).  Ordered by total
    f-degree, then lexicographically in a, then in b, which puts the pure
    tangent monomials c3, c1c2, c1^3 first.
    """
    fmax = min(rank, 3)
    monos = []
    for a1 in range(4):
        for a2 in range(2):
            for a3 in range(2):
                for b1 in range(4):
                    for b2 in range(2):
                        for b3 in range(2):
                            if b2 and fmax < 2 or b3 and fmax < 3:
                                continue
                            if a1 + 2 * a2 + 3 * a3 + b1 + 2 * b2 + 3 * b3 == DIM:
                                monos.append(((a1, a2, a3), (b1, b2, b3)))
    monos.sort(key=lambda ab: (ab[1][0] + 2 * ab[1][1] + 3 * ab[1][2], ab[0], ab[1]))
    return tuple(monos)


def mixed_chern_vector(ring: ChernRing, bundle: BundleClass) -> tuple[Fraction, ...]:
    """Integrals of every degree three monomial in c(T) and c(F)."""
    if bundle.ring is not ring:
        raise ValueError("bundle does not live on this ring")
    c = ring.tangent_classes()
    f = tuple(bundle.chern(j) for j in (1, 2, 3))
    values = []
    for a, b in mixed_monomials(bundle.rank):
        elt = ring.one()
        for cls, exp in zip(c + f, a + b):
            for _ in range(exp):
                elt = ring.mul(elt, cls)
        values.append(ring.integrate(elt))
    return tuple(values)


# -- phi classes and decomposition ----------------------------------------


def phi_class(lam, mu, rank: int) -> tuple[ChernRing, BundleClass]:
    """The basis class of a partition pair: P^lam with O^(rank-len(mu)) + sum L_m.

    Each part m of mu contributes the pullback of O(1) from a distinct P^m
    factor of the product.
    """
    lam = tuple(lam)
    mu = tuple(mu)
    if len(mu) > rank:
        raise ValueError("mu has more parts than the rank allows")
    ring = ring_of_projective_product(lam)
    used: set[int] = set()
    roots = []
    for part in mu:
        idx = next(
            (i for i, d in enumerate(lam) if d == part and i not in used), None
        )
        if idx is None:
            raise ValueError(f"{mu} is not a sub-multiset of {lam}")
        used.add(idx)
        roots.append(ring.gen(f"h{idx + 1}"))
    return ring, BundleClass(ring, rank, tuple(roots))


def solve_exact(matrix, rhs):
    """Solve a square rational system by Gaussian elimination, exactly."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise SingularBasisMatrixError(f"no pivot in column {col}")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(row[n] for row in aug)


def basis_matrix(rank: int):
    """Partition pairs of size 3 and the matrix of their mixed Chern vectors.

    Column j is the vector of the j-th pair, so the matrix is square of size
    7, 9, 10 for rank 1, 2, >= 3.
    """
    pairs = enum_partition_pairs(DIM, rank)
    columns = [mixed_chern_vector(*phi_class(p.lam, p.mu, rank)) for p in pairs]
    size = len(mixed_monomials(rank))
    if len(pairs) != size:
        raise SingularBasisMatrixError(
            f"{len(pairs)} pairs against {size} monomials cannot form a square system"
        )
    matrix = [[columns[j][i] for j in range(len(pairs))] for i in range(size)]
    return pairs, matrix


def decompose(ring: ChernRing, bundle: BundleClass, rank: int) -> dict[PartitionPair, Fraction]:
    """Coefficients of (ring, bundle) in the phi basis, by exact linear solve."""
    if bundle.rank != rank:
        raise ValueError("bundle rank does not match the requested rank")
    target = mixed_chern_vector(ring, bundle)
    pairs, matrix = basis_matrix(rank)
    coeffs = solve_exact(matrix, target)
    return dict(zip(pairs, coeffs))


def reconstruct(coeffs: Mapping[PartitionPair, Fraction], rank: int) -> tuple[Fraction, ...]:
    """Mixed Chern vector of a formal sum of phi classes."""
    size = len(mixed_monomials(rank))
    total = [Fraction(0)] * size
    for pair, coeff in coeffs.items():
        vec = mixed_chern_vector(*phi_class(pair.lam, pair.mu, rank))
        total = [t + coeff * v for t, v in zip(total, vec)]
    return tuple(total)


# -- double point relation checker ----------------------------------------


@dataclass(frozen=True)
class DprReport:
    names: tuple[str, str, str, str]
    vectors: tuple[tuple[Fraction, ...], ...]
    exponents: tuple[int, int, int, int]
    vector_identity_ok: bool
    exponent_identity_ok: bool

    @property
    def passed(self) -> bool:
        return self.vector_identity_ok and self.exponent_identity_ok


def dpr_check(y_xi, a, b, p_pi) -> DprReport:
    """Check a double point quadruple (Y_xi, A, B, P(pi)) of (ring, bundle) pairs.

    Identity (i): the mixed Chern vector of Y_xi equals v(A) + v(B) - v(P(pi)).
    Identity (ii): the closed-formula exponents satisfy
    c3_t_omega(Y_xi) + c3_t_omega(P(pi)) = c3_t_omega(A) + c3_t_omega(B).
    """
    quadruple = (y_xi, a, b, p_pi)
    ranks = {bundle.rank for _, bundle in quadruple}
    if len(ranks) != 1:
        raise ValueError("all four bundles must have the same rank")
    vectors = tuple(mixed_chern_vector(ring, bundle) for ring, bundle in quadruple)
    exponents = tuple(c3_t_omega(ring) for ring, _ in quadruple)
    expected = tuple(va + vb - vp for va, vb, vp in zip(vectors[1], vectors[2], vectors[3]))
    return DprReport(
        names=tuple(ring.name for ring, _ in quadruple),
        vectors=vectors,
        exponents=exponents,
        vector_identity_ok=vectors[0] == expected,
        exponent_identity_ok=exponents[0] + exponents[3] == exponents[1] + exponents[2],
    )


def quadric_dpr() -> tuple:
    """Degeneration of the quadric 3-fold to two hyperplanes, resolved.

    The small resolution of the pencil has special fiber A u B with A the
    blow-up of P^3 along the plane conic where the singular pencil member
    pinches, B = P^3, and D = P^2 with N_{D/A} = O(-1), so P(pi) is
    P(O + O(1)) over P^2.  Trivial line bundles throughout.
    """
    spaces = (
        quadric_threefold(),
        blowup_p3_conic(),
        ring_of_projective_product((3,)),
        projective_bundle_ring("p2", 1),
    )
    return tuple((ring, trivial_bundle_class(ring)) for ring in spaces)


def normal_cone_dpr() -> tuple:
    """Deformation to the normal cone of a plane in P^3; passes identically."""
    plane_bundle = projective_bundle_ring("p2", 1)
    spaces = (
        ring_of_projective_product((3,)),
        ring_of_projective_product((3,)),
        plane_bundle,
        projective_bundle_ring("p2", 1),
    )
    return tuple((ring, trivial_bundle_class(ring)) for ring in spaces)


def naive_quadric_dpr() -> tuple:
    """The unresolved two-hyperplane degeneration of the quadric.

    Its total space is singular along a conic, so it is not a double point
    degeneration; the checker must report failure on it.  Kept as a negative
    fixture for the checker itself.
    """
    spaces = (
        quadric_threefold(),
        ring_of_projective_product((3,)),
        ring_of_projective_product((3,)),
        projective_bundle_ring("p2", 1),
    )
    return tuple((ring, trivial_bundle_class(ring)) for ring in spaces)


BUILTIN_DPRS = {
    "quadric-dpr": quadric_dpr,
    "normal-cone-dpr": normal_cone_dpr,
    "naive-quadric-dpr": naive_quadric_dpr,
}
