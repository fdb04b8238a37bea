"""Rank-9 Neron-Severi families and their numerical invariants.

Covers the dichotomy <2d> + E8(-2) versus its index-2 overlattice (with the
parity conditions on the glue vector), transcendental-lattice fingerprints of
stock primitive embeddings, the determinant square-class obstruction, the
eigenspace dimension tables, invariant-monomial counting, the moduli counts of
the six worked projective families (all equal to 11), and the rank-17
Neron-Severi/transcendental pairs <2n> + E8(-1)^2, <-2n> + U^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadInputError, NotPrimitiveError
from . import linalg
from .discforms import (
    Fingerprint,
    discriminant_form,
    lattice_fingerprint,
    opposite_histogram,
)
from .gluing import GlueData, Overlattice, glue, is_primitive
from .involution import k3_lattice
from .lattice import (
    Lattice,
    direct_sum,
    e8,
    enumerate_vectors_of_norm,
    hyperbolic_plane,
    nikulin,
    orthogonal_complement,
    rank_one,
)


@dataclass
class NSFamilyDescriptor:
    two_d: int
    variant: str  # "plain" | "tilde"
    lattice: Lattice
    glue_vector: tuple[int, ...] | None = None  # E8(-2) coordinates, tilde only
    overlattice: Overlattice | None = None


def _validate_two_d(two_d: int) -> None:
    if two_d <= 0 or two_d % 2 != 0:
        raise BadInputError("the polarization degree 2d must be a positive even integer")


def plain_family(two_d: int) -> NSFamilyDescriptor:
    _validate_two_d(two_d)
    lat = direct_sum([rank_one(two_d), e8(-2)], name=f"<{two_d}> + E8(-2)")
    return NSFamilyDescriptor(two_d, "plain", lat)


def glue_vector_norm_class(d: int) -> int:
    """Required v.v mod 8 for the index-2 overlattice: 4 if d=4m+2, 0 if d=4m."""
    if d % 2 != 0:
        raise BadInputError("the index-2 overlattice requires d even")
    return 4 if d % 4 == 2 else 0


def canonical_glue_vector(d: int) -> tuple[int, ...]:
    """Lexicographically first v in E8(-2) with the required norm class.

    Norm -4 vectors serve d = 4m+2 (v.v = 4 mod 8) and norm -8 vectors serve
    d = 4m (v.v = 0 mod 8).
    """
    wanted = -4 if glue_vector_norm_class(d) == 4 else -8
    vectors = enumerate_vectors_of_norm(e8(-2), wanted)
    return vectors[0]


def tilde_family(two_d: int, v=None) -> NSFamilyDescriptor:
    """The unique even index-2 overlattice of <2d> + E8(-2) keeping E8(-2) primitive."""
    _validate_two_d(two_d)
    d = two_d // 2
    if d % 2 != 0:
        raise BadInputError("no index-2 overlattice exists unless d is even (L^2 = 0 mod 4)")
    base = direct_sum([rank_one(two_d), e8(-2)], name=f"<{two_d}> + E8(-2)")
    if v is None:
        v = canonical_glue_vector(d)
    v = tuple(int(c) for c in v)
    norm = e8(-2).norm(list(v))
    if norm % 8 != glue_vector_norm_class(d) % 8:
        raise BadInputError(
            f"glue vector norm {norm} violates the parity condition for d = {d}"
        )
    half = [Fraction(1, 2)] + [Fraction(c, 2) for c in v]
    over = glue(GlueData.of(base, [half]))
    assert over.glue_order == 2
    e8_rows = [list(over.inclusion[i]) for i in range(1, 9)]
    primitive, torsion = is_primitive(over.lattice, e8_rows)
    if not primitive:
        raise NotPrimitiveError(f"E8(-2) is not primitive in the overlattice: {torsion}")
    lat = Lattice(over.lattice.gram_rows(), name=f"<{two_d}>~ + E8(-2)")
    return NSFamilyDescriptor(two_d, "tilde", lat, v, over)


def classify_ns(two_d: int) -> list[NSFamilyDescriptor]:
    """The rank-9 lattices with L^2 = 2d: one family for 2d = 2 mod 4, two for 2d = 0 mod 4."""
    _validate_two_d(two_d)
    out = [plain_family(two_d)]
    if two_d % 4 == 0:
        out.append(tilde_family(two_d))
    return out


# ---------------------------------------------------------------------------
# transcendental fingerprints


def transcendental_fingerprint(ambient: Lattice, ns_basis) -> Fingerprint:
    """Fingerprint of the orthogonal complement of a primitive sublattice."""
    if ns_basis:
        primitive, torsion = is_primitive(ambient, ns_basis)
        if not primitive:
            raise NotPrimitiveError(f"embedding is not primitive: cokernel {torsion}")
    comp, _basis = orthogonal_complement(ambient, ns_basis)
    return lattice_fingerprint(comp)


def k3_model_with_u_plus_n():
    """A unimodular rank-22 model containing U + N primitively.

    Built by gluing two Nikulin blocks of U + N + U^2 + N diagonally along
    their discriminant groups; returns (ambient, ns_basis) with ns = U + N.
    """
    base = direct_sum(
        [hyperbolic_plane(), nikulin(), hyperbolic_plane(), hyperbolic_plane(), nikulin()],
        name="U + N + U^2 + N",
    )
    form = discriminant_form(nikulin())
    vectors = []
    for gen in form.generators:
        v = [Fraction(0)] * 22
        for j, c in enumerate(gen):
            v[2 + j] = c
            v[14 + j] = c
        vectors.append(v)
    over = glue(GlueData.of(base, vectors))
    ambient = Lattice(over.lattice.gram_rows(), name="K3 model")
    assert ambient.determinant == -1 and ambient.signature.as_pair() == (3, 19)
    ns_basis = [list(over.inclusion[i]) for i in range(10)]
    return ambient, ns_basis


def k3_model_morrison_nikulin(n: int):
    """(ambient, ns_basis) with ns = <2n> + E8(-1)^2 inside U^3 + E8(-1)^2."""
    if n < 1:
        raise BadInputError("need n >= 1")
    ambient = k3_lattice()
    first = [0] * 22
    first[0] = 1
    first[1] = n  # e_1 + n f_1 has norm 2n
    ns_basis = [first]
    for j in range(16):
        v = [0] * 22
        v[6 + j] = 1
        ns_basis.append(v)
    return ambient, ns_basis


def k3_model_full():
    """(ambient, ns_basis) with ns the whole lattice (rank-0 complement)."""
    ambient = k3_lattice()
    return ambient, [list(row) for row in linalg.identity_matrix(22)]


# ---------------------------------------------------------------------------
# determinant square-class obstruction


@dataclass(frozen=True)
class SquareClassReport:
    det_ratio_numerator: int
    det_ratio_denominator: int
    is_square: bool
    rank_t: int
    d: int


def _is_rational_square(num: int, den: int) -> bool:
    if num <= 0 or den <= 0:
        return False
    g = math.gcd(num, den)
    num, den = num // g, den // g
    return math.isqrt(num) ** 2 == num and math.isqrt(den) ** 2 == den


def det_square_class_obstruction(rank_t: int) -> SquareClassReport:
    """Square class of det(T_X over Q)/det(T_Y over Q) = 2^(d+2), d = 14 - rank_T.

    Not a square exactly when rank_T is odd, in which case no isometry of the
    rational transcendental forms can exist.
    """
    if not 1 <= rank_t <= 13:
        raise BadInputError("rank of the transcendental lattice must be in 1..13")
    d = 22 - 8 - rank_t
    num = 2 ** (d + 2)
    report = SquareClassReport(num, 1, _is_rational_square(num, 1), rank_t, d)
    assert report.is_square == (rank_t % 2 == 0)
    return report


# ---------------------------------------------------------------------------
# eigenspace dimensions of the polarization


@dataclass(frozen=True)
class EigenspaceReport:
    h_plus: int
    h_minus: int
    fixed_points_plus: int
    fixed_points_minus: int


def eigenspace_dimensions(two_d: int, variant: str = "plain") -> EigenspaceReport:
    """Dimensions of the two eigenspaces of sections and the fixed-point split.

    L^2 = 4n+2 plain: (n+2, n+1), fixed points (6, 2);
    L^2 = 4n   plain: (n+1, n+1), fixed points (4, 4);
    L^2 = 4n   tilde: (n+2, n),   fixed points (8, 0).
    """
    _validate_two_d(two_d)
    if variant == "plain":
        if two_d % 4 == 2:
            n = (two_d - 2) // 4
            rep = EigenspaceReport(n + 2, n + 1, 6, 2)
        else:
            n = two_d // 4
            rep = EigenspaceReport(n + 1, n + 1, 4, 4)
    elif variant == "tilde":
        if two_d % 4 != 0:
            raise BadInputError("the tilde family needs L^2 divisible by 4")
        n = two_d // 4
        rep = EigenspaceReport(n + 2, n, 8, 0)
    else:
        raise BadInputError(f"unknown variant {variant!r}")
    d = two_d // 2
    assert rep.h_plus + rep.h_minus == d + 2
    assert rep.fixed_points_plus + rep.fixed_points_minus == 8
    return rep


# ---------------------------------------------------------------------------
# invariant monomial counting and moduli dimensions


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def count_invariant_monomials(
    num_vars: int,
    negated,
    degree: int,
    parity: str = "invariant",
    exclude=None,
) -> int:
    """Count degree-d monomials with even (or odd) total degree in the negated variables."""
    if degree < 0:
        raise BadInputError("degree must be nonnegative")
    if parity not in ("invariant", "anti_invariant"):
        raise BadInputError('parity must be "invariant" or "anti_invariant"')
    negated = set(negated)
    if any(i < 0 or i >= num_vars for i in negated):
        raise BadInputError("negated indices out of range")
    want_odd = parity == "anti_invariant"
    banned = {tuple(e) for e in exclude} if exclude else set()
    count = 0
    for expo in _compositions(degree, num_vars):
        if expo in banned:
            continue
        neg_degree = sum(expo[i] for i in negated)
        if (neg_degree % 2 == 1) == want_odd:
            count += 1
    return count


_MODULI_EXAMPLES = ("M2", "M6", "M4", "M4tilde", "M8", "M8tilde")


def moduli_dimension(example: str) -> int:
    """Moduli count of the worked projective families; always 11.

    Each branch spells out the published arithmetic with named terms:
    parameter-space dimensions (monomial counts or Grassmannians) minus the
    dimension of the commuting linear symmetry group.
    """
    if example == "M2":
        sextics = count_invariant_monomials(3, {0}, 6)  # 16
        symmetries = 1 + 4  # scalings of x_0 times GL(2) on the fixed plane
        return sextics - symmetries
    if example == "M6":
        quadrics = count_invariant_monomials(5, {0, 1}, 2)  # 3 + 6 = 9
        cubics = count_invariant_monomials(5, {0, 1}, 3)  # 3*3 + 10 = 19
        quadric_multiples = count_invariant_monomials(3, set(), 1)  # 3 linear forms
        group = 4 + 9  # GL(2) x GL(3)
        return (quadrics - 1) + (cubics - 1) - quadric_multiples - (group - 1)
    if example == "M4":
        quartics = count_invariant_monomials(4, {0, 1}, 4)  # 5 + 9 + 5 = 19
        group = 4 + 4  # GL(2) x GL(2)
        return quartics - group
    if example == "M4tilde":
        conics = count_invariant_monomials(3, set(), 2)  # 6
        quartics = count_invariant_monomials(3, set(), 4)  # 15
        group = 9  # GL(3)
        return (conics - 1) + (quartics - 1) - (group - 1)
    if example == "M8":
        split_quadrics = count_invariant_monomials(6, {3, 4, 5}, 2)  # 6 + 6 = 12
        bilinear = count_invariant_monomials(6, {3, 4, 5}, 2, "anti_invariant")  # 9
        grassmannian = 2 * (split_quadrics - 2)  # planes in the 12-dim space
        group = 9 + 9  # GL(3) x GL(3)
        return grassmannian + (bilinear - 1) - (group - 1)
    if example == "M8tilde":
        quadric_space = count_invariant_monomials(6, {4, 5}, 2)  # 10 + 3 = 13
        grassmannian = 3 * (quadric_space - 3)  # 3-spaces in the 13-dim space
        group = 4 + 16  # GL(2) x GL(4)
        return grassmannian - (group - 1)
    raise BadInputError(
        f"unsupported example {example!r}; expected one of {', '.join(_MODULI_EXAMPLES)}"
    )


# ---------------------------------------------------------------------------
# rank-17 pairs


@dataclass
class MorrisonNikulinReport:
    ns: Lattice
    transcendental: Lattice
    ns_fingerprint: Fingerprint
    t_fingerprint: Fingerprint
    checks: dict


def morrison_nikulin_lattices(n: int) -> MorrisonNikulinReport:
    """NS = <2n> + E8(-1)^2 and T = <-2n> + U^2 with opposite discriminant forms."""
    if n < 1:
        raise BadInputError("need n >= 1")
    ns = direct_sum(
        [rank_one(2 * n), e8(-1), e8(-1)], name=f"<{2 * n}> + E8(-1)^2"
    )
    t = direct_sum(
        [rank_one(-2 * n), hyperbolic_plane(), hyperbolic_plane()],
        name=f"<{-2 * n}> + U^2",
    )
    fp_ns = lattice_fingerprint(ns)
    fp_t = lattice_fingerprint(t)
    checks = {
        "ranks_sum_to_22": ns.rank + t.rank == 22,
        "ns_signature": fp_ns.signature == (1, 16),
        "t_signature": fp_t.signature == (2, 3),
        "same_group": fp_ns.invariant_factors == fp_t.invariant_factors,
        "opposite_q": fp_t.q_histogram == opposite_histogram(fp_ns.q_histogram),
    }
    return MorrisonNikulinReport(ns, t, fp_ns, fp_t, checks)
