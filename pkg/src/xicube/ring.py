"""Exact engine for the graded ring of pair invariants.

The ring in question is Q[T, F, G0] where T is the mixed polarization value,
F = T^2 - 4*S*U the pair discriminant and G0 = S^2*V; it sits inside
Q[S, T, U, V] as the bihomogeneous part of bidegree (2l, l).  Elements are
stored on the monomial basis

    T^(l - 2m - 3n) * F^m * G0^n,    2m + 3n <= l,

with exact rational coefficients and keys ordered lexicographically by (m, n).

The substitution y -> x + q*y acts on the generators by

    S -> S,  T -> 3S + qT,  U -> 3S + 2qT + q^2 U,  V -> S + qT + q^2 U + q^3 V,

and the largest power of q dividing the image of an element is its
J-valuation, the quantity that turns symbolic membership into integer
divisibility on minimal-point pairs.  Subspaces cut out by a J-valuation
bound are computed as exact nullspaces of the q-coefficient map.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb, gcd, prod

from .errors import ZeroElement
from .forms import pair_values
from .linalg import IntEchelon, vec_content
from .vectors import Vec3

# monomial keys for expanded polynomials: (e_q, e_S, e_T, e_U, e_V)
ExpandedPoly = dict[tuple[int, int, int, int, int], Fraction]


def tau(ell: int) -> int:
    """Number of pairs (m, n) in N^2 with 2m + 3n <= ell; 0 for negative ell."""
    if ell < 0:
        return 0
    return sum((ell - 3 * n) // 2 + 1 for n in range(ell // 3 + 1))


def basis_of(ell: int) -> list[tuple[int, int]]:
    """All (m, n) with 2m + 3n <= ell, in lexicographic order."""
    if ell < 0:
        raise ValueError("degree must be >= 0")
    return [(m, n) for m in range(ell // 2 + 1) for n in range((ell - 2 * m) // 3 + 1)]


class RingElem:
    """A homogeneous element of degree `degree`, sparse over the (m, n) basis."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs=None):
        if degree < 0:
            raise ValueError("degree must be >= 0")
        self.degree = degree
        self.coeffs: dict[tuple[int, int], Fraction] = {}
        for (m, n), c in (coeffs or {}).items():
            if 2 * m + 3 * n > degree or m < 0 or n < 0:
                raise ValueError(f"key {(m, n)} invalid in degree {degree}")
            c = Fraction(c)
            if c:
                self.coeffs[(m, n)] = c

    def __repr__(self):
        return f"RingElem({self.serialize()!r})"

    def __eq__(self, other):
        return (isinstance(other, RingElem) and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "RingElem") -> "RingElem":
        if self.degree != other.degree:
            raise ValueError("cannot add elements of different degrees")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return RingElem(self.degree, out)

    def __sub__(self, other: "RingElem") -> "RingElem":
        return self + (-1) * other

    def __mul__(self, other):
        if isinstance(other, RingElem):
            out: dict[tuple[int, int], Fraction] = {}
            for (m1, n1), c1 in self.coeffs.items():
                for (m2, n2), c2 in other.coeffs.items():
                    k = (m1 + m2, n1 + n2)
                    out[k] = out.get(k, Fraction(0)) + c1 * c2
            return RingElem(self.degree + other.degree, out)
        return RingElem(self.degree, {k: c * Fraction(other) for k, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "RingElem":
        if e < 0:
            raise ValueError("negative power")
        out = RingElem(0, {(0, 0): 1})
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def coefficient(self, m: int, n: int) -> Fraction:
        return self.coeffs.get((m, n), Fraction(0))

    def integer_normalized(self, sign_key: tuple[int, int] | None = None) -> "RingElem":
        """Scale to coprime integer coefficients.

        The sign is pinned so the coefficient at `sign_key` is positive, or,
        by default, the first nonzero coefficient in lexicographic key order.
        """
        if self.is_zero():
            return self
        den = 1
        for c in self.coeffs.values():
            den = den * c.denominator // gcd(den, c.denominator)
        ints = {k: int(c * den) for k, c in self.coeffs.items()}
        g = vec_content(list(ints.values()))
        if g > 1:
            ints = {k: v // g for k, v in ints.items()}
        if sign_key is None:
            sign_key = min(ints)
        lead = ints.get(sign_key, 0)
        if lead == 0:
            raise ValueError(f"sign key {sign_key} has zero coefficient")
        if lead < 0:
            ints = {k: -v for k, v in ints.items()}
        return RingElem(self.degree, ints)

    def serialize(self) -> str:
        """Textual form 'deg=l; (m,n):num/den; ...' with lexicographic keys."""
        parts = [f"deg={self.degree}"]
        for (m, n) in sorted(self.coeffs):
            c = self.coeffs[(m, n)]
            parts.append(f"({m},{n}):{c.numerator}/{c.denominator}")
        return "; ".join(parts)


def parse_elem(text: str) -> RingElem:
    parts = [p.strip() for p in text.split(";") if p.strip()]
    m = re.fullmatch(r"deg=(\d+)", parts[0])
    if not m:
        raise ValueError(f"bad element header {parts[0]!r}")
    coeffs = {}
    for part in parts[1:]:
        pm = re.fullmatch(r"\((\d+),(\d+)\):(-?\d+)/(\d+)", part)
        if not pm:
            raise ValueError(f"bad term {part!r}")
        coeffs[(int(pm.group(1)), int(pm.group(2)))] = Fraction(int(pm.group(3)), int(pm.group(4)))
    return RingElem(int(m.group(1)), coeffs)


_NAMED: dict[str, tuple[int, dict]] = {
    "T": (1, {(0, 0): 1}),
    "F": (2, {(1, 0): 1}),
    "S2V": (3, {(0, 1): 1}),
    # 4A = T^2 + 3F and 4B = T^3 - 9TF - 108*S^2V
    "A": (2, {(0, 0): Fraction(1, 4), (1, 0): Fraction(3, 4)}),
    "B": (3, {(0, 0): Fraction(1, 4), (1, 0): Fraction(-9, 4), (0, 1): -27}),
    "M": (4, {(2, 0): 1, (0, 1): -3}),
    "N": (6, {(3, 0): 1, (1, 1): -18, (0, 2): -135}),
    "D2": (6, {(3, 0): 1, (0, 2): 27}),
    "D3": (6, {(3, 0): 1, (1, 1): -18, (0, 2): -135}),
    "D6": (9, {(4, 0): 1, (3, 1): 10, (2, 1): -11, (1, 2): -180, (0, 2): -1, (0, 3): -675}),
}


def named_element(name: str) -> RingElem:
    """The distinguished elements T, F, S2V, A, B, M, N(=D3), D2, D3, D6."""
    try:
        degree, coeffs = _NAMED[name]
    except KeyError:
        raise ValueError(f"unknown element {name!r}; choose from {sorted(_NAMED)}") from None
    return RingElem(degree, coeffs)


# -- expansion to Q[S,T,U,V] -------------------------------------------------

_expand_cache: dict[tuple[int, int, int], tuple] = {}


def _expand_monomial(ell: int, m: int, n: int):
    """Expansion of T^(ell-2m-3n) * F^m * G0^n with F -> T^2 - 4SU, G0 -> S^2 V."""
    key = (ell, m, n)
    hit = _expand_cache.get(key)
    if hit is None:
        e = ell - 2 * m - 3 * n
        terms = []
        for j in range(m + 1):
            c = comb(m, j) * (-4) ** j
            terms.append(((0, j + 2 * n, e + 2 * (m - j), j, n), c))
        hit = tuple(terms)
        _expand_cache[key] = hit
    return hit


def expand(e: RingElem) -> ExpandedPoly:
    """The unique representation of the element in Q[S, T, U, V] (q-free keys)."""
    out: ExpandedPoly = {}
    for (m, n), c in e.coeffs.items():
        for mono, ic in _expand_monomial(e.degree, m, n):
            v = out.get(mono, Fraction(0)) + c * ic
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
    return out


def mul_expanded(p: ExpandedPoly, r: ExpandedPoly) -> ExpandedPoly:
    out: ExpandedPoly = {}
    for k1, c1 in p.items():
        for k2, c2 in r.items():
            k = tuple(a + b for a, b in zip(k1, k2))
            v = out.get(k, 0) + c1 * c2
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


# -- the substitution y -> x + q*y -------------------------------------------

_pow_cache: dict[tuple[str, int], dict] = {}
_uv_cache: dict[tuple[int, int, int], dict] = {}


def _gen_power(gen: str, e: int) -> dict:
    """Image of T^e / U^e / V^e under the substitution, exact, untruncated."""
    key = (gen, e)
    hit = _pow_cache.get(key)
    if hit is not None:
        return hit
    out: dict = {}
    if gen == "T":
        # (3S + qT)^e
        for i in range(e + 1):
            out[(i, e - i, i, 0, 0)] = comb(e, i) * 3 ** (e - i)
    elif gen == "U":
        # (3S + 2qT + q^2 U)^e
        for i in range(e + 1):
            for j in range(e - i + 1):
                k = e - i - j
                c = comb(e, i) * comb(e - i, j) * 3**i * 2**j
                out[(j + 2 * k, i, j, k, 0)] = c
    elif gen == "V":
        # (S + qT + q^2 U + q^3 V)^e
        for i in range(e + 1):
            for j in range(e - i + 1):
                for k in range(e - i - j + 1):
                    l = e - i - j - k
                    c = comb(e, i) * comb(e - i, j) * comb(e - i - j, k)
                    out[(j + 2 * k + 3 * l, i, j, k, l)] = c
    else:
        raise ValueError(gen)
    _pow_cache[key] = out
    return out


def _mul_trunc(p: dict, r: dict, qmax: int) -> dict:
    out: dict = {}
    for k1, c1 in p.items():
        q1 = k1[0]
        if q1 > qmax:
            continue
        for k2, c2 in r.items():
            if q1 + k2[0] > qmax:
                continue
            k = tuple(a + b for a, b in zip(k1, k2))
            v = out.get(k, 0) + c1 * c2
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def _uv_image(c: int, d: int, qmax: int) -> dict:
    key = (c, d, qmax)
    hit = _uv_cache.get(key)
    if hit is None:
        hit = _mul_trunc(_gen_power("U", c), _gen_power("V", d), qmax)
        _uv_cache[key] = hit
    return hit


def rho(p: ExpandedPoly, qmax: int | None = None) -> ExpandedPoly:
    """Apply the substitution to a q-free expanded polynomial.

    With qmax set, monomials of q-degree beyond qmax are dropped (the exact
    truncation used by the subspace solver).
    """
    total = 0
    for (eq, a, b, c, d) in p:
        if eq:
            raise ValueError("input must be free of q")
        total = max(total, b + 2 * c + 3 * d)
    if qmax is None:
        qmax = total
    out: ExpandedPoly = {}
    for (eq, a, b, c, d), coeff in p.items():
        img = _mul_trunc(_gen_power("T", b), _uv_image(c, d, qmax), qmax)
        for (q1, a1, b1, c1, d1), ic in img.items():
            k = (q1, a1 + a, b1, c1, d1)
            v = out.get(k, 0) + coeff * ic
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def j_valuation(e: RingElem) -> int:
    """The largest k with q^k dividing the substituted image; 0 <= v <= degree."""
    if e.is_zero():
        raise ZeroElement("the zero element has no J-valuation")
    image = rho(expand(e))
    assert image, "substitution of a nonzero element cannot vanish"
    return min(k[0] for k in image)


# -- subspaces cut out by a J-valuation bound --------------------------------

_image_cache: dict = {}


def _column_images(ell: int, support: tuple[tuple[int, int], ...], qmax: int):
    """Per-monomial substituted images, truncated at q-degree qmax.

    Returns one dict {(q_exp, S, T, U, V): int} per support monomial; the
    cache keeps the widest truncation seen for each (ell, support).
    """
    key = (ell, support)
    hit = _image_cache.get(key)
    if hit is not None and hit[0] >= qmax:
        if hit[0] == qmax:
            return hit[1]
        return [{k: v for k, v in img.items() if k[0] <= qmax} for img in hit[1]]
    images = []
    for (m, n) in support:
        poly = dict(_expand_monomial(ell, m, n))
        images.append(rho(poly, qmax=qmax))
    _image_cache[key] = (qmax, images)
    return images


def _subspace_vectors(ell: int, support, k: int) -> list[list[int]]:
    """Nullspace vectors of the q^0..q^(k-1) coefficient map on the span of support."""
    support = tuple(support)
    ncols = len(support)
    if k <= 0:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    images = _column_images(ell, support, qmax=k - 1)
    row_keys = sorted({mk for img in images for mk in img if mk[0] < k})
    ech = IntEchelon(ncols)
    for mk in row_keys:
        row = [int(img.get(mk, 0)) for img in images]
        ech.insert(row)
    return ech.nullspace()


def j_subspace(ell: int, k: int) -> list[RingElem]:
    """Basis of the degree-ell elements with J-valuation >= k.

    Computed honestly as the exact nullspace of the map sending a coefficient
    vector to the q^0..q^(k-1) coefficients of its substituted image; the
    dimension formula tau(ell) - tau(k-1) is checked *against* this output
    by the tests, never assumed by it.
    """
    if ell < 0 or k < 0:
        raise ValueError("ell and k must be >= 0")
    support = tuple(basis_of(ell))
    vectors = _subspace_vectors(ell, support, k)
    return [RingElem(ell, dict(zip(support, vec))) for vec in vectors]


def evaluate(e: RingElem, x: Vec3, y: Vec3):
    """Substitute the four pair values of (x, y) into the expanded element."""
    s, t, u, v = pair_values(x, y)
    acc = Fraction(0)
    for (eq, a, b, c, d), coeff in expand(e).items():
        assert eq == 0
        acc += coeff * prod((s**a, t**b, u**c, v**d))
    return int(acc) if acc.denominator == 1 else acc
