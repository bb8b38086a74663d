"""The contravariant pairing between the highest-weight module and its mirror,
per-degree matrices of that pairing, their exact inverses, and the canonical
element assembled from them.

All scalars are polynomials or rational functions in the character scale λ,
handled exactly.  Matrix inversion uses fraction-free (Bareiss) elimination
followed by back substitution, and every inverse is multiplied back against
the original matrix before it is accepted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import SingularCharacterError
from .scalars import ONE_POLY, Polynomial, RationalFunction
from .uea import antipode, char_eval, mono_degree, multiply, phi, phi_order, pi_order, verma_act


@dataclass(frozen=True)
class GradedBasis:
    """Monomial bases at one degree: lowering monomials and their positional
    mirrors on the raising side, listed in matching order."""

    degree: int
    minus: tuple
    plus: tuple


# -- basis construction ------------------------------------------------------


def _neg_generators(algebra):
    return sorted(
        (g for g in algebra.generators if g.degree < 0), key=lambda g: (g.degree, g.id)
    )


def _monomials(gens, total):
    """Sorted words in `gens` (all of negative degree) with |degree| = total."""
    out = []

    def rec(i, remaining, word):
        if remaining == 0:
            out.append(tuple(word))
            return
        if i == len(gens):
            return
        step = -gens[i].degree
        for count in range(remaining // step, -1, -1):
            rec(i + 1, remaining - count * step, word + [gens[i].id] * count)

    rec(0, total, [])
    return out


def mirror_map(algebra):
    """Pair each lowering generator with the raising generator in the same
    position at the opposite degree.  Fails when the dimensions differ."""
    key = ("mirror",)
    if key in algebra._cache:
        return algebra._cache[key]
    mapping = {}
    degrees = sorted({abs(g.degree) for g in algebra.generators if g.degree != 0})
    for d in degrees:
        minus = sorted(g.id for g in algebra.generators if g.degree == -d)
        plus = sorted(g.id for g in algebra.generators if g.degree == d)
        if len(minus) != len(plus):
            raise SingularCharacterError(
                f"{algebra.name}: {len(minus)} generators at degree -{d} "
                f"but {len(plus)} at degree +{d}"
            )
        mapping.update(zip(minus, plus))
    algebra._cache[key] = mapping
    return mapping


def build_basis(algebra, degree, tie_break="desc"):
    """Monomials of the given |degree|, longest first; equal lengths are tied
    by exponent vector, descending by default ("asc" flips only the tie)."""
    if tie_break not in ("desc", "asc"):
        raise ValueError(f"unknown tie_break {tie_break!r}")
    gens = _neg_generators(algebra)
    pos = {g.id: i for i, g in enumerate(gens)}

    def expvec(word):
        v = [0] * len(gens)
        for g in word:
            v[pos[g]] += 1
        return tuple(v)

    if tie_break == "desc":
        key = lambda w: (-len(w), tuple(-e for e in expvec(w)))
    else:
        key = lambda w: (-len(w), expvec(w))
    minus = sorted(_monomials(gens, degree), key=key)
    mirror = mirror_map(algebra)
    modkey = lambda gid: (algebra.degree(gid), gid)
    plus = tuple(tuple(sorted((mirror[g] for g in w), key=modkey)) for w in minus)
    return GradedBasis(degree, tuple(minus), plus)


def invert_rational_matrix(rows):
    """Gauss-Jordan inverse of a Fraction matrix, or None if singular."""
    n = len(rows)
    aug = [list(rows[i]) + [Fraction(i == j) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def dual_basis(algebra, degree):
    """Raising elements v_i dual to the lowering generators at -degree, with
    χ([u_i, v_j]) = δ_ij.  Returned as dicts over raising generator ids."""
    minus = sorted(g.id for g in algebra.generators if g.degree == -degree)
    plus = sorted(g.id for g in algebra.generators if g.degree == degree)
    if len(minus) != len(plus):
        raise SingularCharacterError(
            f"{algebra.name}: no dual basis at degree {degree} (dimension mismatch)"
        )
    mat = [
        [
            sum((c * algebra.chi(g) for g, c in algebra.bracket(u, v)), Fraction(0))
            for v in plus
        ]
        for u in minus
    ]
    inv = invert_rational_matrix(mat)
    if inv is None:
        raise SingularCharacterError(
            f"{algebra.name}: character pairing is singular at degree {degree}"
        )
    return [
        {plus[k]: inv[k][j] for k in range(len(plus)) if inv[k][j]}
        for j in range(len(minus))
    ]


# -- the pairing, two ways ---------------------------------------------------


def pairing_entry(algebra, x, y):
    """(x, y) = scaled character of the zero-degree projection of S(y)·x."""
    order = phi_order(algebra)
    if not isinstance(y, dict):
        y = {y: Fraction(1)}
    if not isinstance(x, dict):
        x = {x: Fraction(1)}
    return char_eval(algebra, phi(algebra, multiply(order, antipode(order, y), x)))


def oracle_pairing(algebra, x, y):
    """The same scalar read off the module: act with S(y), letter by letter, on
    the vector x·v and take the coefficient of v."""
    sign = Fraction(-1) if len(y) % 2 else Fraction(1)
    acted = verma_act(algebra, {tuple(reversed(y)): sign}, x, side=1)
    return acted.get((), Polynomial())


def pairing_matrix(algebra, degree, tie_break="desc", dual_normalized=False, basis=None):
    """Matrix of the pairing at one degree: rows over lowering monomials x_k,
    columns over mirrored raising monomials y_l (or over monomials in the dual
    raising elements when dual_normalized is set)."""
    if basis is None:
        basis = build_basis(algebra, degree, tie_break)
    if dual_normalized:
        mirror = mirror_map(algebra)
        duals = {}
        for d in sorted({-algebra.degree(g) for w in basis.minus for g in w}):
            minus = sorted(g.id for g in algebra.generators if g.degree == -d)
            for u, v in zip(minus, dual_basis(algebra, d)):
                duals[mirror[u]] = {(g,): c for g, c in v.items()}
        order = pi_order(algebra)
        ys = []
        for w in basis.plus:
            el = {(): Fraction(1)}
            for g in w:
                el = multiply(order, el, duals[g])
            ys.append(el)
    else:
        ys = list(basis.plus)
    rows = []
    for x in basis.minus:
        row = []
        for y in ys:
            entry = pairing_entry(algebra, x, y)
            assert entry.degree <= degree, "pairing entry exceeds its degree bound"
            row.append(entry)
        rows.append(row)
    return basis, rows


# -- exact inversion ---------------------------------------------------------


def invert_pairing(matrix):
    """Invert a square Polynomial matrix over ℚ(λ).

    Returns (numerators, det), with inverse[i][j] = numerators[i][j] / det.
    Raises SingularCharacterError when the determinant vanishes.  The inverse
    is verified by multiplying back before returning.
    """
    n = len(matrix)
    width = 2 * n
    aug = [
        [matrix[i][j] for j in range(n)]
        + [ONE_POLY if i == j else Polynomial() for j in range(n)]
        for i in range(n)
    ]
    sign = 1
    prev = ONE_POLY
    for k in range(n):
        piv = next((r for r in range(k, n) if aug[r][k]), None)
        if piv is None:
            raise SingularCharacterError("pairing matrix is singular")
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, width):
                aug[i][j] = (aug[i][j] * aug[k][k] - aug[i][k] * aug[k][j]).exact_div(prev)
            aug[i][k] = Polynomial()
        prev = aug[k][k]
    det = prev if sign > 0 else -prev

    # back substitution over rational functions
    inverse = [[None] * n for _ in range(n)]
    for col in range(n):
        xs = [None] * n
        for i in range(n - 1, -1, -1):
            s = RationalFunction(aug[i][n + col])
            for j in range(i + 1, n):
                s = s - RationalFunction(aug[i][j]) * xs[j]
            xs[i] = s / RationalFunction(aug[i][i])
        for i in range(n):
            inverse[i][col] = xs[i]

    for i in range(n):
        for j in range(n):
            s = RationalFunction(Fraction(i == j))
            for k in range(n):
                s = s - RationalFunction(matrix[i][k]) * inverse[k][j]
            if not s.is_zero:
                raise ArithmeticError("inverse verification failed")

    numerators = [
        [inverse[i][j].num * det.exact_div(inverse[i][j].den) for j in range(n)]
        for i in range(n)
    ]
    return numerators, det


# -- the canonical element ---------------------------------------------------


class CanonicalElement:
    """Per-degree components of the canonical element: at degree n the
    coefficient of x_k ⊗ y_l is the (l, k) entry of the inverse pairing matrix,
    stored as a polynomial numerator over one common determinant."""

    def __init__(self, algebra, max_degree, bases, nums, dets):
        self.algebra = algebra
        self.max_degree = max_degree
        self.bases = bases
        self.nums = nums
        self.dets = dets

    def component(self, n):
        det = self.dets[n]
        return {pair: RationalFunction(num, det) for pair, num in self.nums[n].items()}

    def coefficient(self, x, y):
        n = -mono_degree(self.algebra, x)
        if n > self.max_degree or n != mono_degree(self.algebra, y):
            return RationalFunction(0)
        num = self.nums[n].get((x, y))
        return RationalFunction(num, self.dets[n]) if num is not None else RationalFunction(0)

    def pairs(self):
        for n in range(self.max_degree + 1):
            det = self.dets[n]
            for (x, y), num in sorted(self.nums[n].items()):
                yield n, x, y, RationalFunction(num, det)


def canonical_element(algebra, max_degree, tie_break="desc"):
    bases, nums, dets = {}, {}, {}
    bases[0] = GradedBasis(0, ((),), ((),))
    nums[0] = {((), ()): ONE_POLY}
    dets[0] = ONE_POLY
    for n in range(1, max_degree + 1):
        key = ("component", n, tie_break)
        if key not in algebra._cache:
            basis = build_basis(algebra, n, tie_break)
            if not basis.minus:
                algebra._cache[key] = (basis, {}, ONE_POLY)
            else:
                _, matrix = pairing_matrix(algebra, n, tie_break, basis=basis)
                inv_nums, det = invert_pairing(matrix)
                coeffs = {}
                for k, x in enumerate(basis.minus):
                    for l, y in enumerate(basis.plus):
                        if inv_nums[l][k]:
                            coeffs[(x, y)] = inv_nums[l][k]
                algebra._cache[key] = (basis, coeffs, det)
        bases[n], nums[n], dets[n] = algebra._cache[key]
    return CanonicalElement(algebra, max_degree, bases, nums, dets)
