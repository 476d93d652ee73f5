"""Integral reflection representation of small Coxeter systems.

For a small system (exponents in {1, 2, 3, inf}) each generator s_k acts
on Z^rank by an involution whose matrix is the identity outside row k.
Row k holds the integer coefficients

    alpha(k, j) = -1, 0, 1, 2   for  j = k,  m_{k,j} = 2, 3, inf,

which is twice the cosine table of the standard bilinear form, the only
values for which that table is integral.  Products of these generator
matrices represent group elements faithfully, so word problems reduce to
exact integer linear algebra; reducing entries mod m gives the finite
congruence images studied in :mod:`smallcox.congruence`.

Closed forms implemented here and cross-checked against plain matrix
multiplication in the test suite:

* ``pair_product_formula``/``pair_product_square_formula`` give the
  entries of s_k s_l and (s_k s_l)^2 directly from the alpha table;
* ``twin_power_matrix`` gives (s_1 s_2)^k in the rank-2 twin group as
  [[2k+1, -2k], [2k, 1-2k]];
* ``pm_coefficients`` gives the quadratic remainder of Y^m - 1 modulo
  (Y-1)^3, which controls the order of s_i s_{i+1} in the mod-2m image.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .coxeter import INF, CoxeterSystem, Word, require_small, twin
from .matrices import IntMatrix, ModMatrix, identity_rows


def alpha(system: CoxeterSystem, k: int, j: int) -> int:
    """Row-k entry of the k-th generator matrix (1-based indices)."""
    require_small(system)
    if not (1 <= k <= system.rank and 1 <= j <= system.rank):
        raise ValueError(f"indices ({k},{j}) outside 1..{system.rank}")
    return _alpha(system.exponents, k - 1, j - 1)


def _alpha(exponents, k0: int, j0: int) -> int:
    if k0 == j0:
        return -1
    m = exponents[k0][j0]
    if m is INF:
        return 2
    if m == 3:
        return 1
    if m == 2:
        return 0
    raise AssertionError("non-small exponent slipped through")


def _alpha_row(system: CoxeterSystem, k0: int) -> list[int]:
    return [_alpha(system.exponents, k0, j0) for j0 in range(system.rank)]


def generator_matrix(system: CoxeterSystem, k: int) -> IntMatrix:
    """Matrix of the k-th generator: identity except row k."""
    require_small(system)
    if not 1 <= k <= system.rank:
        raise ValueError(f"generator index {k} outside 1..{system.rank}")
    r = system.rank
    rows = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    rows[k - 1] = _alpha_row(system, k - 1)
    return IntMatrix(tuple(map(tuple, rows)))


def evaluate(system: CoxeterSystem, word: Word) -> IntMatrix:
    """Exact image of a word, the product of its generator matrices.

    Right-multiplying by a generator matrix is a column update, so a
    word of length L costs O(L * rank^2) integer operations.
    """
    require_small(system)
    word = system.check_word(word)
    r = system.rank
    rows = [list(row) for row in identity_rows(r)]
    alpha_rows = [_alpha_row(system, k0) for k0 in range(r)]
    for letter in word:
        k0 = letter - 1
        arow = alpha_rows[k0]
        for row in rows:
            v = row[k0]
            if v:
                for j in range(r):
                    if j == k0:
                        row[j] = -v
                    elif arow[j]:
                        row[j] += v * arow[j]
    return IntMatrix(tuple(map(tuple, rows)))


def evaluate_mod(system: CoxeterSystem, word: Word, m: int) -> ModMatrix:
    """Image of a word with entries reduced mod m after every step."""
    require_small(system)
    if m < 2:
        raise ValueError(f"modulus {m} < 2")
    word = system.check_word(word)
    r = system.rank
    rows = [list(row) for row in identity_rows(r)]
    alpha_rows = [_alpha_row(system, k0) for k0 in range(r)]
    for letter in word:
        k0 = letter - 1
        arow = alpha_rows[k0]
        for row in rows:
            v = row[k0]
            if v:
                for j in range(r):
                    if j == k0:
                        row[j] = -v % m
                    elif arow[j]:
                        row[j] = (row[j] + v * arow[j]) % m
    return ModMatrix(tuple(map(tuple, rows)), m)


def pair_product_formula(system: CoxeterSystem, k: int, l: int) -> IntMatrix:
    """Entries of s_k s_l written directly from the alpha table.

    Row i is the standard basis vector e_i away from rows k and l; row l
    repeats the l-th generator row; and row k couples the two:
    the (k, l) entry is -alpha(k, l) and the remaining row-k entries are
    alpha(k, j) + alpha(l, j) * alpha(k, l).
    """
    require_small(system)
    if k == l:
        raise ValueError("need two distinct generators")
    r = system.rank
    k0, l0 = k - 1, l - 1
    exps = system.exponents
    rows = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    rows[l0] = _alpha_row(system, l0)
    akl = _alpha(exps, k0, l0)
    rows[k0] = [-akl if j == l0 else _alpha(exps, k0, j) + _alpha(exps, l0, j) * akl
                for j in range(r)]
    return IntMatrix(tuple(map(tuple, rows)))


def _gamma(system: CoxeterSystem, k0: int, l0: int, j0: int) -> int:
    # row-k entry of s_k s_l away from column l
    exps = system.exponents
    if j0 == k0:
        return _alpha(exps, l0, k0) ** 2 - 1
    return _alpha(exps, k0, j0) + _alpha(exps, l0, j0) * _alpha(exps, k0, l0)


def pair_product_square_formula(system: CoxeterSystem, k: int, l: int) -> IntMatrix:
    """Entries of (s_k s_l)^2 in closed form.

    With a = alpha(k, l) the k-row diagonal entry is a^4 - 3a^2 + 1 and
    the rest of rows k and l are polynomials in a and the row-k entries
    of s_k s_l; all other rows are identity.  Must agree with squaring
    ``pair_product_formula`` (the tests check exactly that).
    """
    require_small(system)
    if k == l:
        raise ValueError("need two distinct generators")
    r = system.rank
    k0, l0 = k - 1, l - 1
    exps = system.exponents
    a = _alpha(exps, k0, l0)
    rows = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    for j0 in range(r):
        if j0 == k0:
            rows[k0][j0] = a ** 4 - 3 * a ** 2 + 1
            rows[l0][j0] = a ** 3 - 2 * a
        elif j0 == l0:
            rows[k0][j0] = -(a ** 3) + 2 * a
            rows[l0][j0] = -(a ** 2) + 1
        else:
            g = _gamma(system, k0, l0, j0)
            rows[k0][j0] = g * a ** 2 - a * _alpha(exps, l0, j0)
            rows[l0][j0] = a * g
    return IntMatrix(tuple(map(tuple, rows)))


class PolyCoeffs(NamedTuple):
    """Coefficients (a, b, c) of the quadratic a*Y^2 + b*Y + c."""

    a: int
    b: int
    c: int


def pm_coefficients(m: int) -> PolyCoeffs:
    """Quadratic congruent to Y^m - 1 modulo (Y - 1)^3, for m >= 3.

    The closed form is (m(m-1)/2, -m(m-2), m(m-3)/2); every coefficient
    is divisible by m when m is odd, and by m/2 always, which is what
    forces (s_i s_{i+1})^m into the level-2m congruence subgroup.
    """
    if m < 3:
        raise ValueError(f"need m >= 3, got {m}")
    return PolyCoeffs(m * (m - 1) // 2, -m * (m - 2), m * (m - 3) // 2)


def order_check_2m(n: int, m: int, i: int) -> bool:
    """Does (X_i X_{i+1})^m reduce to the identity mod 2m in the twin
    group on n strands?  True for every valid i by the quadratic above;
    the check is an honest modular exponentiation."""
    if not 1 <= i <= n - 2:
        raise ValueError(f"need 1 <= i <= {n - 2}, got {i}")
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    system = twin(n)
    pair = evaluate_mod(system, (i, i + 1), 2 * m)
    return (pair ** m).is_identity()


def twin_power_matrix(k: int) -> IntMatrix:
    """(s_1 s_2)^k in the rank-2 twin group: [[2k+1, -2k], [2k, 1-2k]]."""
    if k < 0:
        raise ValueError("negative power")
    return IntMatrix(((2 * k + 1, -2 * k), (2 * k, 1 - 2 * k)))
