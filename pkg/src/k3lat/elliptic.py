"""Weierstrass fibrations y^2 = x(x^2 + a(t)x + b(t)) with exact coefficients.

The model has a visible 2-torsion section at (0, 0); deg a <= 4 and deg b <= 8
keep the family K3-sized and minimal at infinity in the fixed chart u = s^4 x,
v = s^6 y.  Discriminants are kept unit-free (constants are dropped since only
vanishing orders enter the multiplicative fiber types I_n).  The quotient by
translation by the 2-torsion section is the standard 2-isogeny model
(a, b) -> (-2a, a^2 - 4b).

Moduli note: the Weierstrass parameter count for the generic family is
5 + 9 = 14 coefficients minus 1 for the (x, y) scaling and minus 3 for the
automorphisms of the base line, read as PGL(2) of dimension 3, giving 10; the
toolkit asserts the matching value 20 - picard_rank elsewhere.

Only multiplicative fibers are classified.  Additive places (where the
irreducible factor divides both a and b) are detected and flagged
"additive/unsupported", never typed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .errors import BadInputError, UnsupportedError
from . import linalg
from .discforms import lattice_fingerprint
from .lattice import Lattice, direct_sum, hyperbolic_plane, nikulin, nikulin_node_coords


class RatPoly:
    """Univariate polynomial over Q, coefficients low degree first, canonical."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_string(cls, text: str) -> "RatPoly":
        """Parse comma-separated exact rationals like "1,0,-3/2"."""
        parts = [p.strip() for p in text.split(",")]
        try:
            return cls([Fraction(p) for p in parts if p != ""])
        except (ValueError, ZeroDivisionError) as exc:
            raise BadInputError(f"bad polynomial coefficient list {text!r}") from exc

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def leading(self) -> Fraction:
        if self.is_zero:
            raise BadInputError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly([self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly([self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return RatPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatPoly([c * other for c in self.coeffs])
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__
    __radd__ = __add__

    def __divmod__(self, other):
        other = _coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lead = other.leading()
        for i in range(len(rem) - 1, d - 1, -1):
            if rem[i]:
                f = rem[i] / lead
                q[i - d] = f
                for j, c in enumerate(other.coeffs):
                    rem[i - d + j] -= f * c
        return RatPoly(q), RatPoly(rem)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def divides(self, other: "RatPoly") -> bool:
        """Whether self divides other (self nonzero)."""
        if self.is_zero:
            return other.is_zero
        return (other % self).is_zero

    def evaluate(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * Fraction(x) + c
        return acc

    def derivative(self) -> "RatPoly":
        return RatPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "RatPoly":
        if self.is_zero:
            return self
        lead = self.leading()
        return RatPoly([c / lead for c in self.coeffs])

    def gcd(self, other: "RatPoly") -> "RatPoly":
        a, b = self, _coerce(other)
        while not b.is_zero:
            a, b = b, a % b
        return a.monic() if not a.is_zero else a

    def reversed_padded(self, k: int) -> "RatPoly":
        """s^k * p(1/s): the chart-at-infinity transform; needs deg p <= k."""
        if self.degree > k:
            raise BadInputError("degree exceeds the padding bound")
        out = [Fraction(0)] * (k + 1)
        for i, c in enumerate(self.coeffs):
            out[k - i] = c
        return RatPoly(out)

    def ord_at_zero(self) -> int:
        """Vanishing order at 0 (for the zero polynomial raises)."""
        if self.is_zero:
            raise BadInputError("zero polynomial has no finite vanishing order")
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise AssertionError("unreachable")

    def primitive_normalized(self) -> "RatPoly":
        """Integer-primitive representative with positive leading coefficient."""
        if self.is_zero:
            return self
        denom = linalg.lcm_of([c.denominator for c in self.coeffs])
        ints = [int(c * denom) for c in self.coeffs]
        g = 0
        for v in ints:
            g = _gcd(g, v)
        ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return RatPoly(ints)

    def coeff_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = f"{mag}"
            else:
                var = "t" if i == 1 else f"t^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"RatPoly({self})"


def _coerce(x) -> RatPoly:
    if isinstance(x, RatPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return RatPoly([x])
    raise BadInputError(f"cannot treat {x!r} as a polynomial")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


_T = sympy.Symbol("t")


def irreducible_factors(p: RatPoly) -> list[tuple[RatPoly, int]]:
    """Irreducible factorization over Q, factors integer-primitive, sorted.

    The multiplied-out factorization is checked against the input, so the
    factoring backend is never trusted blindly.
    """
    if p.is_zero:
        raise BadInputError("cannot factor the zero polynomial")
    if p.degree == 0:
        return []
    poly = sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)],
        _T,
        domain="QQ",
    )
    _, raw = poly.factor_list()
    out = []
    for f, e in raw:
        coeffs = [Fraction(c.p, c.q) for c in reversed(f.all_coeffs())]
        rp = RatPoly(coeffs).primitive_normalized()
        if rp.degree >= 1:
            out.append((rp, int(e)))
    out.sort(key=lambda fe: (fe[0].degree, fe[0].coeffs))
    product = RatPoly([1])
    for f, e in out:
        for _ in range(e):
            product = product * f
    assert (p * product.leading() - product * p.leading()).is_zero, (
        "factorization does not multiply back to the input"
    )
    return out


def squarefree_part(p: RatPoly) -> RatPoly:
    """p / gcd(p, p'), monic."""
    if p.is_zero:
        raise BadInputError("zero polynomial")
    g = p.gcd(p.derivative())
    return (p // g).monic()


# ---------------------------------------------------------------------------
# fibrations


class WeierstrassFibration:
    """y^2 = x(x^2 + a(t)x + b(t)) with deg a <= 4, deg b <= 8 and Delta != 0."""

    def __init__(self, a, b):
        a = a if isinstance(a, RatPoly) else RatPoly(a)
        b = b if isinstance(b, RatPoly) else RatPoly(b)
        if a.degree > 4:
            raise BadInputError("deg a must be at most 4")
        if b.degree > 8:
            raise BadInputError("deg b must be at most 8")
        disc = b * b * (a * a - 4 * b)
        if disc.is_zero:
            raise BadInputError("degenerate family: discriminant b^2(a^2-4b) vanishes")
        self.a = a
        self.b = b
        self._disc = disc

    @property
    def discriminant(self) -> RatPoly:
        """b^2 (a^2 - 4b), constant units dropped by convention."""
        return self._disc

    def chart_at_infinity(self) -> tuple[RatPoly, RatPoly]:
        """(a^, b^) with a^(s) = s^4 a(1/s), b^(s) = s^8 b(1/s)."""
        return self.a.reversed_padded(4), self.b.reversed_padded(8)

    def __repr__(self):
        return f"WeierstrassFibration(a={self.a}, b={self.b})"


def two_isogeny_quotient(f: WeierstrassFibration) -> WeierstrassFibration:
    """Quotient by translation by the 2-torsion section: (a, b) -> (-2a, a^2 - 4b)."""
    return WeierstrassFibration(-2 * f.a, f.a * f.a - 4 * f.b)


ADDITIVE = "additive/unsupported"


@dataclass(frozen=True)
class FiberPlace:
    location: str  # irreducible polynomial (as text) or "infinity"
    factor: RatPoly | None
    degree: int
    order: int
    kodaira: str

    @property
    def is_multiplicative(self) -> bool:
        return self.kodaira != ADDITIVE


@dataclass
class FiberReport:
    places: list[FiberPlace] = field(default_factory=list)

    def weight(self, kodaira: str) -> int:
        """Total degree of the places carrying the given fiber type."""
        return sum(p.degree for p in self.places if p.kodaira == kodaira)

    def order_sum(self) -> int:
        """Sum of degree * vanishing order over all places (24 for K3 input)."""
        return sum(p.degree * p.order for p in self.places)

    @property
    def all_multiplicative(self) -> bool:
        return all(p.is_multiplicative for p in self.places)

    def to_json(self) -> dict:
        return {
            "places": [
                {
                    "location": p.location,
                    "coefficients": p.factor.coeff_strings() if p.factor else None,
                    "degree": p.degree,
                    "order": p.order,
                    "kodaira": p.kodaira,
                }
                for p in self.places
            ],
            "order_sum": self.order_sum(),
            "all_multiplicative": self.all_multiplicative,
        }


def fiber_configuration(f: WeierstrassFibration) -> FiberReport:
    """Kodaira I_n data of the singular fibers, including the place at infinity.

    Each irreducible factor of Delta over Q is one place: its multiplicity m
    gives type I_m when the fiber is multiplicative, i.e. the factor does not
    divide both a and b.  The place at infinity is read off the chart
    a^(s) = s^4 a(1/s), b^(s) = s^8 b(1/s) via Delta^(s) = s^24 Delta(1/s).
    """
    places = []
    for factor, mult in irreducible_factors(f.discriminant):
        additive = factor.divides(f.a) and factor.divides(f.b)
        kodaira = ADDITIVE if additive else f"I{mult}"
        places.append(
            FiberPlace(str(factor), factor, factor.degree, mult, kodaira)
        )
    ahat, bhat = f.chart_at_infinity()
    dhat = bhat * bhat * (ahat * ahat - 4 * bhat)
    assert dhat.degree <= 24
    m_inf = dhat.ord_at_zero()
    if m_inf > 0:
        additive = ahat.evaluate(0) == 0 and bhat.evaluate(0) == 0
        kodaira = ADDITIVE if additive else f"I{m_inf}"
        places.append(FiberPlace("infinity", None, 1, m_inf, kodaira))
    report = FiberReport(places)
    assert report.order_sum() == 24
    return report


# ---------------------------------------------------------------------------
# Shioda-Tate bookkeeping


def parse_fiber_list(text: str) -> list[tuple[int, int]]:
    """Parse "I2:8,I16:1" into [(2, 8), (16, 1)]."""
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        name, _, count = token.partition(":")
        if not name.startswith("I") or not name[1:].isdigit():
            raise BadInputError(f"only multiplicative fibers I_n are supported, got {name!r}")
        out.append((int(name[1:]), int(count) if count else 1))
    if not out:
        raise BadInputError("empty fiber list")
    return out


def shioda_tate(fibers, torsion_order: int, mw_rank: int = 0) -> tuple[int, Fraction]:
    """Picard rank and |NS discriminant| from multiplicative fiber data.

    fibers is a list of (n, count) pairs for I_n fibers.  Only Mordell-Weil
    rank 0 is supported; then |disc NS| = (prod n_v) / torsion^2.
    """
    if mw_rank != 0:
        raise UnsupportedError("nonzero Mordell-Weil rank is out of scope")
    if torsion_order < 1:
        raise BadInputError("torsion order must be at least 1")
    rank = 2
    prod = 1
    for n, count in fibers:
        n, count = int(n), int(count)
        if n < 1 or count < 1:
            raise BadInputError("fiber entries must be positive I_n with positive count")
        rank += count * (n - 1)
        prod *= n ** count
    return rank, Fraction(prod, torsion_order ** 2)


# ---------------------------------------------------------------------------
# 2-torsion section bookkeeping in U + N


@dataclass
class TorsionSectionReport:
    ns_lattice: Lattice
    tau: tuple[int, ...]
    tau_norm: int
    tau_dot_sigma: int
    tau_dot_fiber: int
    tau_dot_nodes: tuple[int, ...]
    ns_determinant: int
    matches_u_plus_n: bool


def torsion_section_translation_data(f: WeierstrassFibration) -> TorsionSectionReport:
    """NS bookkeeping for the generic shape: 8 I_2 on the b-locus, 8 I_1 elsewhere.

    Basis {sigma, f, N_1..N_7, Nhat}: sigma the zero section (-2), f the fiber,
    N_i the I_2 components missing the zero section.  The 2-torsion section is
    tau = sigma + 2f - Nhat.
    """
    report = fiber_configuration(f)
    if not report.all_multiplicative:
        raise UnsupportedError("configuration has additive places")
    if any(p.location == "infinity" for p in report.places):
        raise UnsupportedError("expected a good fiber at infinity for the generic shape")
    if report.weight("I2") != 8 or report.weight("I1") != 8:
        raise UnsupportedError("expected the generic 8 x I_2 + 8 x I_1 shape")
    for place in report.places:
        if place.kodaira == "I2" and not place.factor.divides(f.b):
            raise UnsupportedError("an I_2 place does not sit on the b-locus")
        if place.kodaira == "I1" and not place.factor.divides(f.a * f.a - 4 * f.b):
            raise UnsupportedError("an I_1 place does not sit on the (a^2-4b)-locus")

    n_lat = nikulin()
    gram = [[0] * 10 for _ in range(10)]
    gram[0][0] = -2  # sigma^2
    gram[0][1] = gram[1][0] = 1  # sigma.f
    for i in range(8):
        for j in range(8):
            gram[2 + i][2 + j] = n_lat.gram[i][j]
    ns = Lattice(
        gram,
        ("sigma", "f") + tuple(n_lat.labels),
        "U + N (section basis)",
    )
    tau = (1, 2, 0, 0, 0, 0, 0, 0, 0, -1)  # sigma + 2f - Nhat
    tau_list = list(tau)
    sigma = [1] + [0] * 9
    fiber = [0, 1] + [0] * 8
    node_pairings = []
    for i in range(1, 9):
        node = [0, 0] + nikulin_node_coords(i)
        node_pairings.append(int(ns.inner(tau_list, node)))
    fp_ns = lattice_fingerprint(ns)
    fp_un = lattice_fingerprint(direct_sum([hyperbolic_plane(), nikulin()]))
    return TorsionSectionReport(
        ns_lattice=ns,
        tau=tau,
        tau_norm=int(ns.norm(tau_list)),
        tau_dot_sigma=int(ns.inner(tau_list, sigma)),
        tau_dot_fiber=int(ns.inner(tau_list, fiber)),
        tau_dot_nodes=tuple(node_pairings),
        ns_determinant=ns.determinant,
        matches_u_plus_n=fp_ns == fp_un,
    )


# ---------------------------------------------------------------------------
# the 16-gon fiber


@dataclass
class SixteenGonReport:
    permutation: tuple[int, ...]
    is_involution: bool
    window_a: tuple[int, ...]
    window_b: tuple[int, ...]
    windows_swapped: bool
    chains_are_a7: bool
    e8_fingerprints_ok: bool


def _cycle_gram(n: int) -> list[list[int]]:
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = -2
        g[i][(i + 1) % n] = g[(i + 1) % n][i] = 1
    return g


def _a7_gram() -> list[list[int]]:
    g = [[0] * 7 for _ in range(7)]
    for i in range(7):
        g[i][i] = -2
        if i + 1 < 7:
            g[i][i + 1] = g[i + 1][i] = 1
    return g


def i16_component_permutation(n_components: int = 16, shift: int = 8) -> SixteenGonReport:
    """Translation action on the 16 components of the I_16 fiber.

    Components C_0..C_15 form a cycle of (-2)-curves; translation by the
    2-torsion section sends C_n to C_{n+8}.  The windows {-2..4} and {6..12}
    are A_7(-1) chains which, completed by the respective section (meeting C_0
    and C_8), carry the two orthogonal E8(-1) blocks; the permutation swaps
    the windows.
    """
    if n_components != 16 or shift != 8:
        raise BadInputError("the component permutation is defined for (16, 8)")
    perm = tuple((i + shift) % n_components for i in range(n_components))
    is_involution = all(perm[perm[i]] == i for i in range(n_components))
    window_a = tuple(i % 16 for i in range(-2, 5))
    window_b = tuple(range(6, 13))
    windows_swapped = set(perm[i] for i in window_a) == set(window_b)

    cycle = _cycle_gram(16)
    a7 = _a7_gram()

    def chain_gram(indices):
        return [[cycle[i][j] for j in indices] for i in indices]

    chains_ok = chain_gram(window_a) == a7 and chain_gram(window_b) == a7

    def e8_block(indices, meets):
        size = len(indices) + 1
        g = [[0] * size for _ in range(size)]
        for r, i in enumerate(indices):
            for c, j in enumerate(indices):
                g[r][c] = cycle[i][j]
        g[size - 1][size - 1] = -2  # the section is a (-2)-curve
        k = indices.index(meets)
        g[size - 1][k] = g[k][size - 1] = 1
        return Lattice(g)

    fp_e8 = []
    for indices, meets in ((window_a, 0), (window_b, 8)):
        lat = e8_block(list(indices), meets)
        fp_e8.append(
            lat.rank == 8
            and lat.is_even
            and lat.determinant == 1
            and lat.signature.as_pair() == (0, 8)
        )
    return SixteenGonReport(
        permutation=perm,
        is_involution=is_involution,
        window_a=window_a,
        window_b=window_b,
        windows_swapped=windows_swapped,
        chains_are_a7=chains_ok,
        e8_fingerprints_ok=all(fp_e8),
    )
