"""Discriminant groups A_M = M*/M with their finite quadratic forms.

For an even nondegenerate lattice M the Smith normal form of the Gram matrix
gives A_M as a product of cyclic groups together with dual-vector lifts of its
generators.  q is evaluated as x.x mod 2Z on the lifts and the bilinear form b
as x.y mod Z; values are kept as canonical Fractions in [0,2) and [0,1).
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadInputError, OddLatticeError, UnsupportedError
from . import linalg
from .lattice import Lattice, direct_sum, hyperbolic_plane

#: elements of A_M are canonical residue tuples against the invariant factors
DiscElement = tuple[int, ...]

_SUBGROUP_SIZE_BOUND = 2 ** 12
_HISTOGRAM_BOUND = 2 ** 16


class FiniteQuadraticForm:
    """The discriminant form (A_M, q) of an even nondegenerate lattice."""

    def __init__(self, parent: Lattice, factors, generators):
        self.parent = parent
        self.invariant_factors = tuple(int(d) for d in factors)
        self.generators = tuple(tuple(Fraction(c) for c in g) for g in generators)
        self.order = 1
        for d in self.invariant_factors:
            self.order *= d
        gram = parent.gram_rows()
        self._pair = [
            [linalg.dot(g, h, gram) for h in self.generators] for g in self.generators
        ]

    # -- element bookkeeping ------------------------------------------------

    def zero(self) -> DiscElement:
        return (0,) * len(self.invariant_factors)

    def reduce(self, coeffs) -> DiscElement:
        return tuple(int(c) % d for c, d in zip(coeffs, self.invariant_factors))

    def add(self, x: DiscElement, y: DiscElement) -> DiscElement:
        return self.reduce(a + b for a, b in zip(x, y))

    def neg(self, x: DiscElement) -> DiscElement:
        return self.reduce(-a for a in x)

    def scale(self, n: int, x: DiscElement) -> DiscElement:
        return self.reduce(n * a for a in x)

    def elements(self):
        """All elements in lexicographic residue order."""
        return itertools.product(*[range(d) for d in self.invariant_factors])

    def lift(self, x: DiscElement) -> list[Fraction]:
        """A dual-vector representative in M tensor Q."""
        n = self.parent.rank
        out = [Fraction(0)] * n
        for c, g in zip(x, self.generators):
            for i in range(n):
                out[i] += c * g[i]
        return out

    def element_of(self, dual_vector) -> DiscElement:
        """Class of a dual vector (pairs integrally with M) in A_M."""
        w = [Fraction(v) for v in dual_vector]
        gw = linalg.mat_vec(self.parent.gram_rows(), w)
        if any(x.denominator != 1 for x in gw):
            raise BadInputError("vector does not pair integrally with the lattice")
        coords = linalg.mat_vec(self._umat, [int(x) for x in gw])
        full = [int(c) % d for c, d in zip(coords, self._all_factors)]
        return self.reduce(
            full[i] for i in self._nontrivial_indices
        )

    # -- forms ---------------------------------------------------------------

    def q(self, x: DiscElement) -> Fraction:
        """Quadratic form value in Q/2Z, reduced into [0, 2)."""
        total = Fraction(0)
        k = len(x)
        for i in range(k):
            if x[i]:
                total += x[i] * x[i] * self._pair[i][i]
                for j in range(i + 1, k):
                    if x[j]:
                        total += 2 * x[i] * x[j] * self._pair[i][j]
        return total % 2

    def b(self, x: DiscElement, y: DiscElement) -> Fraction:
        """Bilinear form value in Q/Z, reduced into [0, 1)."""
        total = Fraction(0)
        for i, ci in enumerate(x):
            if ci:
                for j, cj in enumerate(y):
                    if cj:
                        total += ci * cj * self._pair[i][j]
        return total % 1

    def q_histogram(self) -> dict[Fraction, int]:
        if self.order > _HISTOGRAM_BOUND:
            raise UnsupportedError(
                f"discriminant group of order {self.order} is too large to histogram"
            )
        return dict(Counter(self.q(x) for x in self.elements()))

    def __repr__(self):
        shape = " x ".join(f"Z/{d}" for d in self.invariant_factors) or "trivial"
        return f"<FiniteQuadraticForm {shape}>"


def discriminant_form(lattice: Lattice) -> FiniteQuadraticForm:
    """Discriminant form of an even nondegenerate lattice via Smith normal form."""
    if not lattice.is_even:
        raise OddLatticeError("discriminant quadratic form needs an even lattice")
    gram = lattice.gram_rows()
    n = lattice.rank
    if n == 0:
        form = FiniteQuadraticForm(lattice, (), ())
        form._umat = []
        form._all_factors = []
        form._nontrivial_indices = []
        return form
    d, u, _v = linalg.smith_normal_form(gram)
    all_factors = [abs(d[i][i]) for i in range(n)]
    ginv = linalg.rational_inverse(gram)
    uinv = linalg.rational_inverse(u)
    lift_cols = linalg.mat_mul(ginv, uinv)  # column i lifts generator i
    keep = [i for i in range(n) if all_factors[i] > 1]
    gens = [[lift_cols[r][i] for r in range(n)] for i in keep]
    form = FiniteQuadraticForm(lattice, [all_factors[i] for i in keep], gens)
    form._umat = u
    form._all_factors = all_factors
    form._nontrivial_indices = keep
    return form


# ---------------------------------------------------------------------------
# verification of q on A_{U(2)^3}


def qK_on_U2_cubed() -> dict:
    """Check that A_{U(2)^3} is (Z/2)^6 carrying q(x) = x1x2 + x3x4 + x5x6.

    All 64 elements are evaluated through the Smith-form machinery against the
    hyperbolic polynomial, using the natural dual vectors e_i/2, f_i/2.
    """
    base = direct_sum([hyperbolic_plane(2)] * 3, name="U(2)^3")
    form = discriminant_form(base)
    assert form.invariant_factors == (2,) * 6
    counts = Counter()
    checked = 0
    for bits in itertools.product((0, 1), repeat=6):
        vec = [Fraction(b, 2) for b in bits]  # order e1,f1,e2,f2,e3,f3
        elem = form.element_of(vec)
        got = form.q(elem)
        expected = Fraction((bits[0] * bits[1] + bits[2] * bits[3] + bits[4] * bits[5]) % 2)
        if got != expected:
            raise AssertionError(
                f"q mismatch at {bits}: machinery gives {got}, hyperbolic form {expected}"
            )
        counts[got] += 1
        checked += 1
    return {
        "elements_checked": checked,
        "q_zero": counts[Fraction(0)],
        "q_one": counts[Fraction(1)],
    }


# ---------------------------------------------------------------------------
# isotropic subgroups


@dataclass(frozen=True)
class IsotropicSubgroup:
    generators: tuple[DiscElement, ...]
    elements: tuple[DiscElement, ...]

    @property
    def order(self) -> int:
        return len(self.elements)


def _closure(form: FiniteQuadraticForm, gens) -> frozenset:
    elems = {form.zero()}
    gens = [form.reduce(g) for g in gens]
    changed = True
    while changed:
        changed = False
        for g in gens:
            for e in list(elems):
                s = form.add(e, g)
                if s not in elems:
                    elems.add(s)
                    changed = True
    return frozenset(elems)


def subgroup_generated_by(form: FiniteQuadraticForm, gens) -> IsotropicSubgroup:
    elems = _closure(form, [form.reduce(g) for g in gens])
    return IsotropicSubgroup(tuple(sorted(set(form.reduce(g) for g in gens))),
                             tuple(sorted(elems)))


def enumerate_isotropic_subgroups(form: FiniteQuadraticForm, order: int) -> list[IsotropicSubgroup]:
    """All subgroups of the given order on which q vanishes identically.

    Deterministic output (sorted by element tuples).  Guarded by a size bound:
    the group must be 2-elementary or have order <= 2^12.
    """
    two_elementary = all(d == 2 for d in form.invariant_factors)
    if not two_elementary and form.order > _SUBGROUP_SIZE_BOUND:
        raise UnsupportedError(
            f"group order {form.order} exceeds the enumeration bound {_SUBGROUP_SIZE_BOUND}"
        )
    if order < 1 or form.order % order != 0:
        return []
    zero = form.zero()
    if order == 1:
        return [IsotropicSubgroup((), (zero,))]
    isotropic = sorted(x for x in form.elements() if form.q(x) == 0)
    found: dict[frozenset, list] = {}

    def extend(current: frozenset, gens: tuple, start: int) -> None:
        if len(current) == order:
            key = current
            if key not in found:
                found[key] = list(gens)
            return
        for idx in range(start, len(isotropic)):
            x = isotropic[idx]
            if x in current:
                continue
            bigger = _closure(form, list(gens) + [x])
            if len(bigger) > order or order % len(bigger) != 0:
                continue
            if any(form.q(e) != 0 for e in bigger):
                continue
            extend(bigger, gens + (x,), idx + 1)

    extend(frozenset([zero]), (), 0)
    out = [
        IsotropicSubgroup(tuple(gens), tuple(sorted(elems)))
        for elems, gens in found.items()
    ]
    out.sort(key=lambda s: s.elements)
    return out


# ---------------------------------------------------------------------------
# orbits under isometry generators


def action_on_disc(form: FiniteQuadraticForm, matrix) -> dict[DiscElement, DiscElement]:
    """Map induced on A_M by an isometry of the parent lattice.

    The matrix acts on column coordinate vectors; it must satisfy
    g^T G g = G.  Validates that q is preserved on all of A_M.
    """
    if form.order > _SUBGROUP_SIZE_BOUND:
        raise UnsupportedError("discriminant group too large for an induced-action table")
    gram = form.parent.gram_rows()
    gtg = linalg.mat_mul(linalg.transpose(matrix), linalg.mat_mul(gram, matrix))
    if not linalg.mat_eq(gtg, gram):
        raise BadInputError("generator is not an isometry of the parent lattice")
    table = {}
    for x in form.elements():
        image = form.element_of(linalg.mat_vec(matrix, form.lift(x)))
        table[x] = image
    for x, y in table.items():
        if form.q(x) != form.q(y):
            raise BadInputError("generator fails to preserve q on the discriminant group")
    return table


def orbits_under_generators(form: FiniteQuadraticForm, generators) -> list[list[DiscElement]]:
    """Orbit partition of A_M under supplied isometry generators.

    Generators may be parent-lattice matrices or precomputed element maps.
    Orbits are sorted lists, ordered by (size, first element); the group is
    never materialized, only the orbit closure.
    """
    if form.order > _SUBGROUP_SIZE_BOUND:
        raise UnsupportedError("discriminant group too large for orbit closure")
    maps = []
    for g in generators:
        if isinstance(g, dict):
            maps.append(g)
        else:
            maps.append(action_on_disc(form, g))
    seen = set()
    orbits = []
    for x in sorted(form.elements()):
        if x in seen:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for table in maps:
                z = table[y]
                if z not in orbit:
                    orbit.add(z)
                    frontier.append(z)
        seen |= orbit
        orbits.append(sorted(orbit))
    orbits.sort(key=lambda o: (len(o), o[0]))
    return orbits


# ---------------------------------------------------------------------------
# lattice fingerprints (shared by several modules)


@dataclass(frozen=True)
class Fingerprint:
    """Isometry invariants used everywhere a named lattice must be recognized."""

    rank: int
    signature: tuple[int, int]
    determinant: int
    even: bool
    invariant_factors: tuple[int, ...]
    q_histogram: tuple[tuple[str, int], ...]

    def histogram_dict(self) -> dict[str, int]:
        return dict(self.q_histogram)


def lattice_fingerprint(lattice: Lattice) -> Fingerprint:
    """(rank, signature, det, parity, disc invariant factors, q histogram)."""
    if lattice.rank == 0:
        return Fingerprint(0, (0, 0), 1, True, (), ())
    hist: tuple[tuple[str, int], ...] = ()
    factors: tuple[int, ...] = ()
    if lattice.is_even:
        form = discriminant_form(lattice)
        factors = form.invariant_factors
        if form.order <= _HISTOGRAM_BOUND:
            hist = tuple(
                sorted((str(k), v) for k, v in form.q_histogram().items())
            )
    return Fingerprint(
        lattice.rank,
        lattice.signature.as_pair(),
        lattice.determinant,
        lattice.is_even,
        factors,
        hist,
    )


def opposite_histogram(hist: tuple[tuple[str, int], ...]) -> tuple[tuple[str, int], ...]:
    """Histogram of -q given the histogram of q (values mod 2Z)."""
    out = []
    for key, count in hist:
        val = Fraction(key)
        out.append((str((-val) % 2), count))
    return tuple(sorted(out))
