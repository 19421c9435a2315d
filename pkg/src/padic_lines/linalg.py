"""Exact linear algebra over the rationals, with p-adic root analysis.

Vectors are tuples of Fraction, matrices are tuples of row tuples, and
polynomials are tuples of Fraction coefficients listed lowest degree first
(the zero polynomial is the empty tuple).  Nothing here ever rounds.

The eigenvalue toolkit is layered by strength of evidence:

  1. `rational_roots` extracts all eigenvalues that lie in Q, exactly;
  2. `newton_polygon` pins down the p-adic valuations of the remaining
     roots without leaving exact arithmetic (fractional valuation proves
     a root lies outside Q_p);
  3. `padic_spectrum` additionally runs a Hensel lift on integer-valuation
     segments to witness roots in Q_p beyond Q, to a configurable number
     of p-adic digits.  This last layer is best effort: a repeated root
     modulo p leaves the segment unresolved rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .padic import PadicAbs, Prime, abs_max, abs_p, valuation

__all__ = [
    "Vector",
    "Matrix",
    "Polynomial",
    "inner_product",
    "sup_norm",
    "frame_operator",
    "apply_frame_operator",
    "gram_matrix",
    "identity",
    "mat_mul",
    "mat_vec",
    "trace",
    "trace_of_square",
    "char_poly",
    "CHAR_POLY_MAX_DIM",
    "poly_normalize",
    "poly_degree",
    "poly_add",
    "poly_scale",
    "poly_mul",
    "poly_eval",
    "poly_eval_matrix",
    "poly_derivative",
    "poly_divmod",
    "poly_gcd",
    "poly_monic",
    "squarefree_part",
    "squarefree_decomposition",
    "is_squarefree",
    "rational_roots",
    "NewtonPolygon",
    "newton_polygon",
    "HenselWitness",
    "PadicSpectrum",
    "padic_spectrum",
]

Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]
Polynomial = tuple[Fraction, ...]

CHAR_POLY_MAX_DIM = 64

# Hensel witnessing enumerates residues mod p, so it is only attempted for
# primes below this bound; larger primes leave segments unresolved.
_HENSEL_ROOT_SEARCH_LIMIT = 1 << 20


def as_vector(entries) -> Vector:
    return tuple(Fraction(e) for e in entries)


def as_matrix(rows) -> Matrix:
    m = tuple(tuple(Fraction(e) for e in row) for row in rows)
    if m and any(len(row) != len(m[0]) for row in m):
        raise ValueError("ragged matrix")
    return m


def inner_product(x: Vector, y: Vector) -> Fraction:
    """Bilinear symmetric pairing sum_j x_j * y_j (no conjugation)."""
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def sup_norm(x: Vector, p: Prime) -> PadicAbs:
    """Max of the entrywise p-adic absolute values; 0 iff x = 0."""
    if not x:
        raise ValueError("empty vector")
    return abs_max([abs_p(e, p) for e in x])


def frame_operator(vectors: list[Vector] | tuple[Vector, ...]) -> Matrix:
    """Sum of outer products tau_j tau_j^T as an exact d x d matrix."""
    vectors = list(vectors)
    if not vectors:
        raise ValueError("frame operator needs at least one vector")
    d = len(vectors[0])
    if any(len(v) != d for v in vectors):
        raise ValueError("dimension mismatch among vectors")
    rows = [[Fraction(0)] * d for _ in range(d)]
    for v in vectors:
        for i in range(d):
            if v[i] == 0:
                continue
            for j in range(d):
                rows[i][j] += v[i] * v[j]
    return tuple(tuple(row) for row in rows)


def apply_frame_operator(vectors, x: Vector) -> Vector:
    """Directly evaluate x -> sum_j <x, tau_j> tau_j (no matrix formed)."""
    out = [Fraction(0)] * len(x)
    for v in vectors:
        c = inner_product(x, v)
        for i in range(len(x)):
            out[i] += c * v[i]
    return tuple(out)


def gram_matrix(vectors) -> Matrix:
    """n x n matrix of all pairwise inner products."""
    vectors = list(vectors)
    if not vectors:
        raise ValueError("gram matrix needs at least one vector")
    n = len(vectors)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        for k in range(j, n):
            val = inner_product(vectors[j], vectors[k])
            rows[j][k] = val
            rows[k][j] = val
    return tuple(tuple(row) for row in rows)


def identity(d: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(d)) for i in range(d)
    )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise ValueError("matrix shape mismatch")
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt) for row in a
    )


def mat_vec(m: Matrix, x: Vector) -> Vector:
    if len(m[0]) != len(x):
        raise ValueError("matrix/vector shape mismatch")
    return tuple(sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in m)


def _check_square(m: Matrix) -> int:
    if not m or any(len(row) != len(m) for row in m):
        raise ValueError("matrix is not square")
    return len(m)


def trace(m: Matrix) -> Fraction:
    d = _check_square(m)
    return sum((m[i][i] for i in range(d)), Fraction(0))


def trace_of_square(m: Matrix) -> Fraction:
    """Tr(M^2) as sum_ij m_ij * m_ji, without forming the product.

    For symmetric M this is the sum of squares of the entries.
    """
    d = _check_square(m)
    return sum((m[i][j] * m[j][i] for i in range(d) for j in range(d)), Fraction(0))


def char_poly(m: Matrix, max_dim: int = CHAR_POLY_MAX_DIM) -> Polynomial:
    """Monic characteristic polynomial det(xI - M), lowest degree first.

    Uses the Faddeev-LeVerrier recurrence; all divisions are by integers
    and remain exact over the rationals.  Dimension is capped because the
    coefficient size grows super-polynomially.
    """
    d = _check_square(m)
    if d > max_dim:
        raise ValueError(f"char_poly dimension cap exceeded: {d} > {max_dim}")
    coeffs_high_first = [Fraction(1)]
    mk = None
    for k in range(1, d + 1):
        if mk is None:
            mk = m
        else:
            shifted = tuple(
                tuple(mk[i][j] + (coeffs_high_first[-1] if i == j else 0) for j in range(d))
                for i in range(d)
            )
            mk = mat_mul(m, shifted)
        coeffs_high_first.append(-trace(mk) / k)
    return tuple(reversed(coeffs_high_first))


# ---------------------------------------------------------------------------
# polynomial arithmetic over Q
# ---------------------------------------------------------------------------


def poly_normalize(f) -> Polynomial:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(Fraction(c) for c in f)


def poly_degree(f: Polynomial) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(f) - 1


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    n = max(len(f), len(g))
    f = list(f) + [Fraction(0)] * (n - len(f))
    g = list(g) + [Fraction(0)] * (n - len(g))
    return poly_normalize(a + b for a, b in zip(f, g))


def poly_scale(f: Polynomial, c: Fraction) -> Polynomial:
    return poly_normalize(a * c for a in f)


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    if not f or not g:
        return ()
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return poly_normalize(out)


def poly_eval(f: Polynomial, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def poly_eval_matrix(f: Polynomial, m: Matrix) -> Matrix:
    d = _check_square(m)
    acc = tuple(tuple(Fraction(0) for _ in range(d)) for _ in range(d))
    for c in reversed(f):
        acc = mat_mul(acc, m)
        acc = tuple(
            tuple(acc[i][j] + (c if i == j else 0) for j in range(d)) for i in range(d)
        )
    return acc


def poly_derivative(f: Polynomial) -> Polynomial:
    return poly_normalize(i * c for i, c in enumerate(f) if i > 0)


def poly_divmod(f: Polynomial, g: Polynomial) -> tuple[Polynomial, Polynomial]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f)
    quo = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    inv_lead = 1 / g[-1]
    for i in range(len(rem) - len(g), -1, -1):
        c = rem[i + len(g) - 1] * inv_lead
        if c == 0:
            continue
        quo[i] = c
        for j, b in enumerate(g):
            rem[i + j] -= c * b
    return poly_normalize(quo), poly_normalize(rem)


def poly_monic(f: Polynomial) -> Polynomial:
    if not f:
        return ()
    return poly_scale(f, 1 / f[-1])


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd over Q (monic constant 1 for coprime inputs)."""
    a, b = poly_normalize(f), poly_normalize(g)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return poly_monic(a)


def squarefree_part(f: Polynomial) -> Polynomial:
    """f divided by gcd(f, f'), monic: the product of distinct roots' factors."""
    if not f:
        raise ValueError("zero polynomial")
    g = poly_gcd(f, poly_derivative(f))
    return poly_monic(poly_divmod(f, g)[0])


def squarefree_decomposition(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun decomposition: pairs (A_k, k) with f = lead * prod A_k^k, A_k squarefree.

    Only the factors with deg A_k > 0 are returned.
    """
    if not f:
        raise ValueError("zero polynomial")
    f = poly_monic(f)
    if poly_degree(f) == 0:
        return []
    out: list[tuple[Polynomial, int]] = []
    g = poly_gcd(f, poly_derivative(f))
    w = poly_divmod(f, g)[0]
    k = 1
    while poly_degree(w) > 0:
        y = poly_gcd(w, g)
        a = poly_divmod(w, y)[0]
        if poly_degree(a) > 0:
            out.append((poly_monic(a), k))
        w = y
        g = poly_divmod(g, y)[0]
        k += 1
    return out


def is_squarefree(f: Polynomial) -> bool:
    """True iff gcd(f, f') is constant."""
    if not f:
        raise ValueError("zero polynomial")
    return poly_degree(poly_gcd(f, poly_derivative(f))) == 0


# ---------------------------------------------------------------------------
# roots
# ---------------------------------------------------------------------------


def _factorize(n: int) -> dict[int, int]:
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factorize zero")
    out: dict[int, int] = {}
    for q in (2, 3, 5):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    f = 7
    while f * f <= n and f < 100_000:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 2
    if n > 1:
        n = _rho_split(n, out)
    return out


def _rho_split(n: int, out: dict[int, int]) -> int:
    # Pollard rho on leftovers past the trial-division bound; recursion
    # depth is tiny because factors here are at most a few machine words.
    from math import gcd

    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = m
        c = 1
        while d == m:
            x = y = 2
            d = 1
            while d == 1:
                x = (x * x + c) % m
                y = (y * y + c) % m
                y = (y * y + c) % m
                d = gcd(abs(x - y), m)
            c += 1
        stack.extend([d, m // d])
    return 1


def _is_probable_prime(n: int) -> bool:
    from .padic import _is_prime_u64

    if n < 2**64:
        return _is_prime_u64(n)
    # Deterministic witnesses no longer apply; fall back to many rounds of
    # Miller-Rabin with fixed bases, fine for divisor screening.
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53):
        if n % a == 0:
            return n == a
        d, r = n - 1, 0
        while d % 2 == 0:
            d //= 2
            r += 1
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _divisors(n: int) -> list[int]:
    divs = [1]
    for q, e in _factorize(n).items():
        divs = [d * q**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def rational_roots(f: Polynomial) -> list[tuple[Fraction, int]]:
    """All rational roots with multiplicities, sorted ascending.

    Clears denominators, screens candidates by the rational root theorem,
    and deflates exactly to count multiplicities.
    """
    f = poly_normalize(f)
    if not f:
        raise ValueError("zero polynomial")
    roots: list[tuple[Fraction, int]] = []
    zero_mult = 0
    while f and f[0] == 0:
        zero_mult += 1
        f = f[1:]
    if zero_mult:
        roots.append((Fraction(0), zero_mult))
    if poly_degree(f) < 1:
        return sorted(roots)
    lcm = 1
    for c in f:
        lcm = lcm * c.denominator // _gcd_int(lcm, c.denominator)
    ints = [int(c * lcm) for c in f]
    content = 0
    for c in ints:
        content = _gcd_int(content, abs(c))
    ints = [c // content for c in ints]
    candidates: list[Fraction] = []
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            r = Fraction(num, den)
            candidates.extend((r, -r))
    for r in sorted(set(candidates)):
        if poly_eval(f, r) != 0:
            continue
        mult = 0
        while True:
            quo, rem = poly_divmod(f, (-r, Fraction(1)))
            if rem:
                break
            f = quo
            mult += 1
        roots.append((r, mult))
    return sorted(roots)


def _gcd_int(a: int, b: int) -> int:
    from math import gcd

    return gcd(a, b)


# ---------------------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of (i, v_p(c_i)) over the nonzero coefficients.

    Segments are (slope, horizontal length) pairs with slopes strictly
    increasing; a segment of slope s and length l certifies exactly l roots
    of valuation -s in an algebraic closure of Q_p.  Roots at zero (trailing
    zero coefficients of the input) are counted separately since their
    valuation is infinite.
    """

    segments: tuple[tuple[Fraction, int], ...]
    zero_roots: int

    def root_valuations(self) -> tuple[tuple[Fraction, int], ...]:
        """(valuation, count) pairs for the nonzero roots, by segment."""
        return tuple((-s, l) for s, l in self.segments)


def newton_polygon(f: Polynomial, p: Prime) -> NewtonPolygon:
    f = poly_normalize(f)
    if not f:
        raise ValueError("zero polynomial")
    zero_roots = 0
    while f[0] == 0:
        zero_roots += 1
        f = f[1:]
    points = [(i, valuation(c, p)) for i, c in enumerate(f) if c != 0]
    hull = _lower_hull(points)
    segments = []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        segments.append((Fraction(y1 - y0, x1 - x0), x1 - x0))
    return NewtonPolygon(tuple(segments), zero_roots)


def _lower_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    hull: list[tuple[int, int]] = []
    for pt in points:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            # keep the middle point only on a strict left turn (slope increase);
            # collinear points merge into one segment
            if (x1 - x0) * (pt[1] - y0) > (pt[0] - x0) * (y1 - y0):
                break
            hull.pop()
        hull.append(pt)
    return hull


# ---------------------------------------------------------------------------
# p-adic spectrum: rational roots, Hensel witnesses, valuation information
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HenselWitness:
    """A root witnessed in Q_p: root = p**valuation * u with u a unit,
    u = residue + O(p**precision)."""

    valuation: int
    residue: int
    precision: int
    multiplicity: int


@dataclass(frozen=True)
class PadicSpectrum:
    """Outcome of the layered root analysis of one polynomial at one prime.

    `rational` and `witnessed` roots are proven to lie in Q_p; `excluded`
    counts roots proven to lie outside Q_p (fractional valuation, or no
    admissible residue class mod p); `unresolved` counts roots whose
    membership the Hensel layer could not settle.  Counts include
    multiplicity and always sum to the polynomial degree.
    """

    degree: int
    rational: tuple[tuple[Fraction, int], ...]
    witnessed: tuple[HenselWitness, ...]
    unresolved: tuple[tuple[Fraction, int], ...]
    excluded: tuple[tuple[Fraction, int], ...]

    @property
    def fully_rational(self) -> bool:
        return not self.witnessed and not self.unresolved and not self.excluded

    @property
    def fully_in_qp(self) -> bool:
        return not self.unresolved and not self.excluded

    @property
    def proven_outside_qp(self) -> bool:
        return bool(self.excluded)


def padic_spectrum(f: Polynomial, p: Prime, precision: int = 64) -> PadicSpectrum:
    """Run the eigenvalue ladder on f at p.

    Rational roots are extracted exactly; the rational-free remainder is
    split into squarefree components, and each Newton segment of integer
    root valuation is probed for simple residues mod p that Hensel-lift to
    unit roots carrying `precision` p-adic digits.
    """
    f = poly_normalize(f)
    if not f:
        raise ValueError("zero polynomial")
    if precision < 1:
        raise ValueError("precision must be positive")
    degree = poly_degree(f)
    rational = rational_roots(f)
    g = f
    for r, mult in rational:
        for _ in range(mult):
            g = poly_divmod(g, (-r, Fraction(1)))[0]
    witnessed: list[HenselWitness] = []
    unresolved: list[tuple[Fraction, int]] = []
    excluded: list[tuple[Fraction, int]] = []
    if poly_degree(g) > 0:
        for comp, mult in squarefree_decomposition(g):
            for slope, length in newton_polygon(comp, p).segments:
                val = -slope
                if val.denominator != 1:
                    excluded.append((val, length * mult))
                    continue
                wit, unres, excl = _hensel_segment(comp, p, int(val), length, precision)
                witnessed.extend(
                    HenselWitness(int(val), r, precision, mult) for r in wit
                )
                if unres:
                    unresolved.append((val, unres * mult))
                if excl:
                    excluded.append((val, excl * mult))
    spectrum = PadicSpectrum(
        degree,
        tuple(rational),
        tuple(witnessed),
        tuple(unresolved),
        tuple(excluded),
    )
    accounted = (
        sum(m for _, m in spectrum.rational)
        + sum(w.multiplicity for w in spectrum.witnessed)
        + sum(c for _, c in spectrum.unresolved)
        + sum(c for _, c in spectrum.excluded)
    )
    assert accounted == degree, "root accounting out of balance"
    return spectrum


def _hensel_segment(
    comp: Polynomial, p: Prime, val: int, length: int, precision: int
) -> tuple[list[int], int, int]:
    """Witness the valuation-`val` roots of a squarefree component.

    Returns (lifted unit residues mod p**precision, unresolved count,
    excluded count) for the `length` roots on that segment.  A root of
    valuation `val` in Q_p must reduce, after the substitution
    x = p**val * y, to a nonzero root mod p; absence of such residues
    proves exclusion and a simple residue lifts uniquely.
    """
    pv = p.value
    if pv > _HENSEL_ROOT_SEARCH_LIMIT:
        return [], length, 0
    # substitute and normalize so coefficients are p-integral with a unit
    subst = [c * Fraction(pv) ** (val * i) for i, c in enumerate(comp)]
    shift = min(valuation(c, p) for c in subst if c != 0)
    h = [c / Fraction(pv) ** shift for c in subst]
    modulus = pv**precision
    h_mod = [_residue(c, pv, modulus) for c in h]
    h_bar = [c % pv for c in h_mod]
    simple: list[int] = []
    repeated = 0
    for r in range(1, pv):
        m = _root_multiplicity_mod_p(h_bar, r, pv)
        if m == 1:
            simple.append(r)
        elif m > 1:
            repeated += m
    lifted = [_newton_lift(h_mod, r, pv, precision) for r in simple]
    # the reduction mod p is y**i0 times this segment's residual polynomial,
    # so its nonzero roots (at most `length` with multiplicity) are exactly
    # the admissible first digits of the segment's roots
    excluded = length - len(simple) - repeated
    assert excluded >= 0, "residue count exceeds segment length"
    return lifted, repeated, excluded


def _residue(c: Fraction, pv: int, modulus: int) -> int:
    return c.numerator * pow(c.denominator, -1, modulus) % modulus


def _root_multiplicity_mod_p(h_bar: list[int], r: int, pv: int) -> int:
    mult = 0
    poly = [c % pv for c in h_bar]
    while any(poly):
        # synthetic division by (y - r) mod p: Horner from the top, the
        # running values are the quotient coefficients, the last one the
        # remainder
        acc = 0
        quo = []
        for c in reversed(poly):
            acc = (acc * r + c) % pv
            quo.append(acc)
        if quo.pop() != 0:
            break
        poly = list(reversed(quo))
        mult += 1
    return mult


def _newton_lift(h_mod: list[int], r: int, pv: int, precision: int) -> int:
    """Lift a simple root mod p to a root mod p**precision by Newton steps."""
    dh = [(i * c) for i, c in enumerate(h_mod) if i > 0]
    k = 1
    while k < precision:
        k = min(2 * k, precision)
        modulus = pv**k
        fr = _poly_eval_mod(h_mod, r, modulus)
        dfr = _poly_eval_mod(dh, r, modulus)
        r = (r - fr * pow(dfr, -1, modulus)) % modulus
    modulus = pv**precision
    assert _poly_eval_mod(h_mod, r, modulus) == 0, "Hensel lift failed to converge"
    return r


def _poly_eval_mod(coeffs: list[int], x: int, modulus: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % modulus
    return acc
