"""Linear-algebra searches over supports in the graded ring.

Three kinds of searches live here: the maximal-J-valuation element over an
arbitrary monomial support, the distinguished one-dimensional family on the
degree-(12l+2) triangle supports (valuation 6l+2) together with its parity
certificate, and the dimension theory of the subring generated by F, M, N.  The inequality test of the exponent study is also here since it
consumes the same pair data the searches predict divisibility for.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd

from .errors import (DecompositionFailure, DimensionMismatch, InvalidEll,
                     InvariantViolation)
from .linalg import IntEchelon, solve_unique, vec_content
from .minimal import PairRecord
from .rigor import decide_sign, iv_fraction, iv_log_abs_int, mid_str
from .ring import RingElem, _subspace_vectors, basis_of, expand, named_element, rho


@dataclass(frozen=True)
class SupportSet:
    d: int
    pairs: tuple[tuple[int, int], ...]  # lexicographic

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("support must be nonempty")
        for m, n in self.pairs:
            if m < 0 or n < 0 or 2 * m + 3 * n > self.d:
                raise ValueError(f"({m},{n}) outside the degree-{self.d} triangle")
        object.__setattr__(self, "pairs", tuple(sorted(set(self.pairs))))


@dataclass
class SearchResult:
    k_max: int
    basis: list[RingElem]
    dims: dict[int, int] = field(default_factory=dict)  # probed k -> dimension

    @property
    def unique(self) -> bool:
        return len(self.basis) == 1


def maximal_j_element(support: SupportSet) -> SearchResult:
    """Largest k with a nonzero element of the span inside J^(k), with a basis.

    Binary search on k; each probe is an exact nullspace computation.  When
    the top intersection has dimension > 1 the whole basis is returned and
    `unique` is False (no canonical single element exists then).
    """
    d, pairs = support.d, support.pairs
    dims: dict[int, int] = {}

    def dim_at(k: int) -> int:
        if k not in dims:
            dims[k] = len(_subspace_vectors(d, pairs, k))
        return dims[k]

    if dim_at(d + 1) > 0:
        raise InvariantViolation("nonzero element with valuation beyond its degree",
                                 {"d": d, "support": pairs})
    lo, hi = 0, d + 1  # dim_at(lo) = |support| > 0, dim_at(hi) = 0
    dims[0] = len(pairs)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if dim_at(mid) > 0:
            lo = mid
        else:
            hi = mid
    vectors = _subspace_vectors(d, pairs, lo)
    basis = [RingElem(d, dict(zip(pairs, vec))) for vec in vectors]
    return SearchResult(lo, basis, dims)


def special_support(ell: int) -> SupportSet:
    """The triangle support of degree 12*ell+2 anchored at (6*ell+1, 0) and (0, 3*ell)."""
    if ell < 1:
        raise InvalidEll("the support family needs ell >= 1")
    d = 12 * ell + 2
    pairs = [
        (m, n)
        for (m, n) in basis_of(d)
        if Fraction(m, 6 * ell + 1) + Fraction(n, 3 * ell) >= 1
    ]
    return SupportSet(d, tuple(pairs))


def special_family(ell: int) -> RingElem:
    """The generator of the one-dimensional valuation-(6*ell+2) space on the support.

    Normalized to coprime integer coefficients with the (0, 3*ell) anchor
    positive; both anchor coefficients are checked nonzero.
    """
    support = special_support(ell)
    k = 6 * ell + 2
    vectors = _subspace_vectors(support.d, support.pairs, k)
    if len(vectors) != 1:
        raise DimensionMismatch(
            f"expected a one-dimensional space on E_{ell}, got dimension {len(vectors)}"
        )
    elem = RingElem(support.d, dict(zip(support.pairs, vectors[0])))
    elem = elem.integer_normalized(sign_key=(0, 3 * ell))
    for anchor in ((6 * ell + 1, 0), (0, 3 * ell)):
        if elem.coefficient(*anchor) == 0:
            raise InvariantViolation("vanishing anchor coefficient",
                                     {"ell": ell, "anchor": anchor})
    return elem


# -- the subring generated by F, M, N ----------------------------------------

_fmn_cache: dict[tuple[int, int, int], RingElem] = {}


def _fmn_product(e: int, m: int, n: int) -> RingElem:
    key = (e, m, n)
    hit = _fmn_cache.get(key)
    if hit is None:
        hit = named_element("F") ** e * named_element("M") ** m * named_element("N") ** n
        _fmn_cache[key] = hit
    return hit


def _general_subspace_dim(cols: list[RingElem], k: int) -> int:
    """dim of span(cols) ∩ J^(k) for linearly independent columns."""
    keys = sorted({mk for col in cols for mk in col.coeffs})
    indep = IntEchelon(len(cols))
    den = 1
    for col in cols:
        for c in col.coeffs.values():
            den = den * c.denominator // gcd(den, c.denominator)
    for mk in keys:
        indep.insert([int(col.coeffs.get(mk, 0) * den) for col in cols])
    if not indep.full_rank():
        raise InvariantViolation("subspace columns are linearly dependent", {})
    if k <= 0:
        return len(cols)
    images = [rho(expand(col), qmax=k - 1) for col in cols]
    row_keys = sorted({mk for img in images for mk in img if mk[0] < k})
    ech = IntEchelon(len(cols))
    for mk in row_keys:
        row = [img.get(mk, Fraction(0)) for img in images]
        rden = 1
        for v in row:
            v = Fraction(v)
            rden = rden * v.denominator // gcd(rden, v.denominator)
        ech.insert([int(Fraction(v) * rden) for v in row])
    return len(cols) - ech.rank


def s_subspace_dim(two_ell: int, k: int) -> int:
    """dim of the degree-2l part of Q[F,M,N] meeting J^(k).

    Columns are the products F^(l-2m-3n) M^m N^n; the computation is the
    same honest nullspace as for the full ring.
    """
    if two_ell < 0 or two_ell % 2:
        raise ValueError("degree must be even and >= 0")
    ell = two_ell // 2
    cols = [_fmn_product(ell - 2 * m - 3 * n, m, n) for (m, n) in basis_of(ell)]
    return _general_subspace_dim(cols, k)


# -- decomposition of the H-multiplied family element -------------------------

def to_fgh(e: RingElem) -> dict[tuple[int, int, int], Fraction]:
    """Rewrite an element of the F/G/H subring on the basis F^f G^g H^h.

    A monomial T^t F^m G0^n lies in the subring iff n >= t with n - t even;
    then g = t and h = (n - t)/2.
    """
    out: dict[tuple[int, int, int], Fraction] = {}
    for (m, n), c in e.coeffs.items():
        t = e.degree - 2 * m - 3 * n
        if n < t or (n - t) % 2:
            raise DecompositionFailure(f"monomial T^{t} F^{m} G0^{n} is outside Q[F,G,H]")
        out[(m, t, (n - t) // 2)] = c
    return out


@dataclass
class HpDecomposition:
    ell: int
    rst: list[tuple[int, int, int]]  # (r_k, s_k, t_k) for k = 0..ell, coprime ints
    a: int                           # coefficient of G^(3l+2) in H*P mod H
    b: int                           # coefficient of F^(6l+1) in the rescaled P
    scale: Fraction                  # rescaling applied to the input element
    checks: dict[str, bool]

    def all_pass(self) -> bool:
        return all(self.checks.values())


def hp_decompose(pl: RingElem, ell: int) -> HpDecomposition:
    """Decompose H*P on the products (F N, F^2 M, M^2) * M^(3k) N^(2l-2k).

    The triple coefficients are rescaled to coprime integers (the scaling is
    reported); all parity congruences against the binomial pattern of
    (G + F^2)^(3l+2) are checked, along with oddness of the G^(3l+2) unit a
    and of the F^(6l+1) anchor b.
    """
    d = 12 * ell + 2
    if pl.degree != d:
        raise ValueError(f"element has degree {pl.degree}, expected {d}")
    h = RingElem(6, {(0, 2): 1})
    hp = h * pl

    cols: list[RingElem] = []
    for k in range(ell + 1):
        tail = named_element("M") ** (3 * k) * named_element("N") ** (2 * ell - 2 * k)
        cols.append(named_element("F") * named_element("N") * tail)
        cols.append(named_element("F") ** 2 * named_element("M") * tail)
        cols.append(named_element("M") ** 2 * tail)

    keys = sorted({mk for col in cols for mk in col.coeffs} | set(hp.coeffs))
    rows = [[col.coeffs.get(mk, Fraction(0)) for col in cols] for mk in keys]
    rhs = [hp.coeffs.get(mk, Fraction(0)) for mk in keys]
    try:
        sol = solve_unique(rows, rhs)
    except ValueError as exc:
        raise DecompositionFailure(str(exc)) from exc
    if sol is None:
        raise DecompositionFailure("H*P leaves the span of the stated products")

    den = 1
    for c in sol:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in sol]
    g = vec_content(ints)
    if g > 1:
        ints = [v // g for v in ints]
    scale = Fraction(den, g)  # > 0, so the input sign convention survives
    rst = [tuple(ints[3 * k: 3 * k + 3]) for k in range(ell + 1)]

    # unit against G^(3l+2): reduce the rescaled H*P modulo H
    fgh = to_fgh(scale * hp)
    mod_h = {key: c for key, c in fgh.items() if key[2] == 0 and c}
    if set(mod_h) != {(0, 3 * ell + 2, 0)}:
        raise DecompositionFailure(f"H*P mod H is not a multiple of G^{3 * ell + 2}")
    a_frac = mod_h[(0, 3 * ell + 2, 0)]
    b_frac = scale * pl.coefficient(6 * ell + 1, 0)
    if a_frac.denominator != 1 or b_frac.denominator != 1:
        raise InvariantViolation("unit or anchor coefficient is not an integer",
                                 {"a": str(a_frac), "b": str(b_frac)})
    a, b = int(a_frac), int(b_frac)

    m = 3 * ell + 2
    checks = {
        "a_odd": a % 2 == 1,
        "b_odd": b % 2 == 1,
        "b_parity": (b - sum(r for r, _s, _t in rst)) % 2 == 0,
        "binomial_sum": sum(comb(m, 3 * k) for k in range(ell + 1)) == (2**m - (-1) ** ell) // 3,
    }
    for k, (r, s, t) in enumerate(rst):
        checks[f"parity_r{k}"] = (r - a * comb(m, 3 * k)) % 2 == 0
        checks[f"parity_s{k}"] = (s - a * comb(m, 3 * k + 1)) % 2 == 0
        checks[f"parity_t{k}"] = (t - a * comb(m, 3 * k + 2)) % 2 == 0
    return HpDecomposition(ell, rst, a, b, scale, checks)


# -- counting and the inequality test -----------------------------------------

def lattice_triangle_count(a, b, c) -> tuple[int, Fraction, Fraction]:
    """|{(m,n) in N^2 : a*m + b*n <= c}| with its two area bounds.

    Returns (count, c^2/(2ab), (a+b+c)^2/(2ab)) and checks the sandwich.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a <= 0 or b <= 0 or c < 0:
        raise ValueError("a, b must be positive and c >= 0")
    count = 0
    m = 0
    while a * m <= c:
        count += int((c - a * m) / b) + 1
        m += 1
    lower = c * c / (2 * a * b)
    upper = (a + b + c) ** 2 / (2 * a * b)
    if not lower <= count <= upper:
        raise InvariantViolation("lattice count escaped its area bounds",
                                 {"a": str(a), "b": str(b), "c": str(c), "count": count})
    return count, lower, upper


def prop8_decide(t: int, f: int, sv: int, q: int, eps) -> tuple[bool, dict]:
    """Rigorously decide log|T^2/F| * log|T^3/G0| >= 6 log^2|T| - (6-eps) log^2|q|.

    All inputs are exact; the decision uses outward-rounded interval logs
    with escalation and raises Undecidable at the ceiling.  Diagnostics are
    the proof's normalized quantities f, s, t, sigma (relative to log|q|).
    """
    eps = Fraction(eps)
    if eps < 0:
        raise ValueError("eps must be >= 0")
    if t == 0 or f == 0 or sv == 0 or q == 0:
        raise ValueError("T, F, S^2V and q must all be nonzero")
    if abs(q) < 3:
        raise ValueError("needs |q| >= 3")

    def diff():
        lt, lf, lsv, lq = (iv_log_abs_int(v) for v in (t, f, sv, q))
        lhs = (2 * lt - lf) * (3 * lt - lsv)
        rhs = 6 * lt**2 - (6 - iv_fraction(eps)) * lq**2
        return lhs - rhs

    sign = decide_sign(diff, what="pair inequality")
    lt, lf, lsv, lq = (iv_log_abs_int(v) for v in (t, f, sv, q))
    diag = {
        "f": mid_str(lf / lq),
        "s": mid_str(lsv / lq),
        "t": mid_str(lt / lq),
        "sigma": mid_str((2 * lt / lq - lf / lq) * (3 * lt / lq - lsv / lq)),
    }
    return sign > 0, diag


def prop8_inequality(rec: PairRecord, eps) -> tuple[bool, dict]:
    return prop8_decide(rec.t, rec.f, rec.s * rec.s * rec.v, rec.q, eps)
