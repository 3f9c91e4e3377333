"""Per-chart virtual characters and their inverse Euler classes.

A chart of a smooth toric 3-fold is an affine space with three tangent
characters a1, a2, a3 (vectors in the character lattice Z^3) and, for a split
rank r bundle, r color characters w_j = u_j * t^(m_j).  A colored plane
partition sitting in the chart determines the virtual tangent character

    T = dual(f) q - dual(q) f / kappa + dual(q) q P(t) / kappa

with f = sum_j w_j, q = sum_j w_j Q_j(t), P(t) = prod_i (1 - t^(a_i)) and
kappa = t^(a1 + a2 + a3).  See conventions.py for the sign calibration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .charalg import EquivParams, LaurentPoly, weight_form
from .errors import NonzeroFixedPartError, ZeroWeightError
from .partitions import ColoredPlanePartition, enum_colored

Vec3 = tuple[int, int, int]


@dataclass(frozen=True)
class ChartWeights:
    """Tangent and color characters of one chart.

    tangent holds three vectors in Z^3.  colors holds one exponent vector per
    color in Z^(3 + r): the twist part m_j followed by the unit vector of u_j.
    """

    tangent: tuple[Vec3, Vec3, Vec3]
    colors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.tangent) != 3:
            raise ValueError("a chart has exactly three tangent characters")
        r = len(self.colors)
        if r < 1:
            raise ValueError("at least one color is required")
        for c in self.colors:
            if len(c) != 3 + r:
                raise ValueError("color exponents must have length 3 + rank")

    @property
    def rank(self) -> int:
        return len(self.colors)

    @property
    def nvars(self) -> int:
        return 3 + len(self.colors)

    @classmethod
    def build(cls, tangent, twists) -> "ChartWeights":
        """Assemble from tangent vectors and per-color twist vectors in Z^3."""
        twists = tuple(tuple(t) for t in twists)
        r = len(twists)
        colors = tuple(
            (*twists[j], *(1 if i == j else 0 for i in range(r))) for j in range(r)
        )
        return cls(tuple(tuple(v) for v in tangent), colors)


def _embed(vec: Vec3, rank: int) -> tuple[int, ...]:
    return (*vec, *((0,) * rank))


def kappa_inverse(chart: ChartWeights) -> LaurentPoly:
    """The monomial kappa^-1 = t^-(a1 + a2 + a3) of a chart."""
    a = [_embed(v, chart.rank) for v in chart.tangent]
    return LaurentPoly.monomial(tuple(-(x + y + z) for x, y, z in zip(*a)))


def symmetry_defect(char: LaurentPoly, chart: ChartWeights) -> LaurentPoly:
    """T + kappa^-1 dual(T); vanishes exactly when the character is symmetric."""
    return char + kappa_inverse(chart) * char.dual()


@lru_cache(maxsize=None)
def vertex_character(cpp: ColoredPlanePartition, chart: ChartWeights) -> LaurentPoly:
    """Virtual tangent character of a colored plane partition in a chart.

    Raises NonzeroFixedPartError if the constant term is nonzero, which would
    contradict virtual dimension zero.
    """
    r = chart.rank
    if cpp.rank != r:
        raise ValueError("colored partition rank does not match chart rank")
    nv = 3 + r
    a = [_embed(v, r) for v in chart.tangent]

    one = LaurentPoly.one(nv)
    p_poly = one
    for ai in a:
        p_poly = p_poly * (one - LaurentPoly.monomial(ai))
    kappa_inv = kappa_inverse(chart)

    f = LaurentPoly.zero(nv)
    q = LaurentPoly.zero(nv)
    for j, color in enumerate(chart.colors):
        w = LaurentPoly.monomial(color)
        f = f + w
        boxes = LaurentPoly.zero(nv)
        for (i, jj, k) in cpp.parts[j]:
            exps = tuple(i * x + jj * y + k * z for x, y, z in zip(a[0], a[1], a[2]))
            boxes = boxes + LaurentPoly.monomial(exps)
        q = q + w * boxes

    t_vir = f.dual() * q - q.dual() * f * kappa_inv + q.dual() * q * p_poly * kappa_inv
    if t_vir.constant_term != 0:
        raise NonzeroFixedPartError(
            f"constant term {t_vir.constant_term} in virtual character"
        )
    return t_vir


def euler_inverse(char: LaurentPoly, params: EquivParams) -> Fraction:
    """Inverse equivariant Euler class of a virtual character.

    Moving monomials with positive coefficient contribute their weight form to
    the denominator, negative ones to the numerator.  A zero weight form means
    the parameters are inadmissible for this character.
    """
    if char.constant_term != 0:
        raise NonzeroFixedPartError("character has a fixed part; Euler class undefined")
    num = 1
    den = 1
    for exps, coeff in char.terms():
        w = weight_form(exps, params)
        if w == 0:
            raise ZeroWeightError(f"monomial {exps} has weight zero")
        if coeff > 0:
            den *= w ** coeff
        else:
            num *= w ** (-coeff)
    return Fraction(num, den)


@lru_cache(maxsize=None)
def chart_contribution(chart: ChartWeights, rank: int, n: int, params: EquivParams) -> Fraction:
    """Sum of inverse Euler classes over all colored plane partitions of size n."""
    if rank != chart.rank:
        raise ValueError("rank does not match chart data")
    if params.rank != rank:
        raise ValueError("parameter rank does not match chart rank")
    total = Fraction(0)
    for cpp in enum_colored(n, rank):
        total += euler_inverse(vertex_character(cpp, chart), params)
    return total
