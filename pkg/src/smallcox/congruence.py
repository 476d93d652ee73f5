"""Finite congruence images and level-m membership.

Reducing the integral reflection representation mod m sends a small
Coxeter group onto a finite matrix group; the kernel is the principal
congruence subgroup of level m.  Everything here works with those
finite images:

* ``enumerate_image`` lists the image by breadth-first closure of the
  generator matrices (deterministic shortlex discovery order);
* ``congruence_member`` decides level-m membership of a word;
* the ``check_quotient_*`` operations identify the subquotients
  "level m over level 3m / 4m / 12m" with the alternating group, the
  even-weight mod-2 vectors, and their direct product, by carrying a
  second coordinate (a permutation or a bit vector) along the closure;
* ``product_generation_check`` confirms at image level that two coprime
  levels together generate the full even part.

Enumeration keys matrices by the byte string of their canonical
residues.  The default element budget is 10**7; exceeding it raises
``BudgetExceededError`` rather than truncating silently, since images of
infinite Coxeter groups can be arbitrarily large.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Hashable, Optional

from . import perms
from .coxeter import CoxeterSystem, Word, require_small, twin
from .matrices import ModMatrix, det_rows, identity_rows, mul_rows, parse_matrix
from .tits import evaluate_mod, generator_matrix, twin_power_matrix

DEFAULT_CAP = 10_000_000


class BudgetExceededError(RuntimeError):
    """Enumeration outgrew its element budget."""

    def __init__(self, budget: int):
        super().__init__(f"image exceeds element budget {budget}")
        self.budget = budget


def _encode(rows, m: int) -> Hashable:
    if m <= 0xFF:
        return bytes(e for row in rows for e in row)
    return tuple(e for row in rows for e in row)


@dataclass(frozen=True)
class FiniteMatrixGroup:
    """A finite group of matrices mod m, closed under multiplication.

    ``elements`` are in discovery order (identity first, then by
    shortlex word in the generators); ``element_keys`` holds the
    canonical byte encodings for O(1) membership.
    """

    modulus: int
    dimension: int
    elements: tuple[ModMatrix, ...]
    generators: tuple[ModMatrix, ...]
    element_keys: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, mat: ModMatrix) -> bool:
        return _encode(mat.rows, self.modulus) in self.element_keys


def close_under_multiplication(gen_rows: list, m: int,
                               cap: int = DEFAULT_CAP) -> list:
    """BFS closure of generator matrices (as row tuples) mod m."""
    d = len(gen_rows[0]) if gen_rows else 0
    ident = identity_rows(d)
    seen = {_encode(ident, m)}
    out = [ident]
    qi = 0
    while qi < len(out):
        g = out[qi]
        qi += 1
        for x in gen_rows:
            h = mul_rows(g, x, m)
            key = _encode(h, m)
            if key not in seen:
                if len(out) >= cap:
                    raise BudgetExceededError(cap)
                seen.add(key)
                out.append(h)
    return out


def enumerate_image(system: CoxeterSystem, m: int,
                    cap: int = DEFAULT_CAP) -> FiniteMatrixGroup:
    """The image of a small system mod m, as an explicit finite group."""
    require_small(system)
    if m < 2:
        raise ValueError(f"modulus {m} < 2")
    if cap < 1:
        raise ValueError("cap must be positive")
    gens = [generator_matrix(system, k).mod(m) for k in range(1, system.rank + 1)]
    rows = close_under_multiplication([g.rows for g in gens], m, cap)
    elements = tuple(ModMatrix(r, m) for r in rows)
    keys = frozenset(_encode(r, m) for r in rows)
    return FiniteMatrixGroup(m, system.rank, elements, tuple(gens), keys)


def congruence_member(system: CoxeterSystem, word: Word, m: int) -> bool:
    """Is the word in the principal congruence subgroup of level m?"""
    return evaluate_mod(system, word, m).is_identity()


def reduction_kernel(group: FiniteMatrixGroup, m: int) -> FiniteMatrixGroup:
    """Elements of a mod-km group that reduce to the identity mod m.

    This is the image of the level-m congruence subgroup inside the
    mod-km image, so its order is the index of level km inside level m.
    The result carries no distinguished generating set.
    """
    if group.modulus % m:
        raise ValueError(f"{m} does not divide modulus {group.modulus}")
    ident = ModMatrix.identity(group.dimension, m) if m >= 2 else None
    kept = []
    for el in group.elements:
        if m < 2 or el.reduce(m) == ident:
            kept.append(el)
    keys = frozenset(_encode(e.rows, group.modulus) for e in kept)
    return FiniteMatrixGroup(group.modulus, group.dimension,
                             tuple(kept), (), keys)


# ---------------------------------------------------------------------------
# paired enumeration: matrices carrying a second coordinate


@dataclass(frozen=True)
class PairedImage:
    """Closure of (matrix mod m, auxiliary) generator pairs.

    The auxiliary coordinate is any hashable with a componentwise
    product: a permutation tuple, a mod-2 vector, or the row tuple of a
    matrix to another modulus (the CRT representation of a composite
    level keeps each component in machine-size residues).
    """

    modulus: int
    pairs: tuple[tuple[ModMatrix, Hashable], ...]

    @property
    def order(self) -> int:
        return len(self.pairs)


def paired_image(system: CoxeterSystem, m: int,
                 aux_gens: list, aux_mul: Callable, aux_identity,
                 cap: int = DEFAULT_CAP) -> PairedImage:
    require_small(system)
    gen_rows = [generator_matrix(system, k).mod(m).rows
                for k in range(1, system.rank + 1)]
    d = system.rank
    start = (identity_rows(d), aux_identity)
    seen = {(_encode(start[0], m), start[1])}
    out = [start]
    gens = list(zip(gen_rows, aux_gens))
    qi = 0
    while qi < len(out):
        g, s = out[qi]
        qi += 1
        for x, t in gens:
            h = (mul_rows(g, x, m), aux_mul(s, t))
            key = (_encode(h[0], m), h[1])
            if key not in seen:
                if len(out) >= cap:
                    raise BudgetExceededError(cap)
                seen.add(key)
                out.append(h)
    return PairedImage(m, tuple((ModMatrix(g, m), s) for g, s in out))


def _reduces_to_identity(mat: ModMatrix, m: int) -> bool:
    return all(mat.rows[i][j] % m == (1 if i == j else 0) % m
               for i in range(mat.dimension) for j in range(mat.dimension))


@dataclass(frozen=True)
class QuotientCheck:
    """Outcome of one subquotient identification."""

    kind: str
    n: int
    m: int
    image_order: int
    kernel_order: int
    expected_kernel_order: int
    ok: bool
    detail: str = ""


def _kernel_map(pairs, m: int):
    """Pairs whose matrix part is trivial mod m, as a matrix -> aux map.

    Returns (mapping, well_defined, injective): well-defined means no
    matrix appears with two distinct auxiliaries, injective means no
    auxiliary appears for two distinct matrices.
    """
    mapping: dict = {}
    well_defined = True
    for g, s in pairs:
        if _reduces_to_identity(g, m):
            if g.rows in mapping and mapping[g.rows] != s:
                well_defined = False
            mapping[g.rows] = s
    values = set(mapping.values())
    injective = len(values) == len(mapping)
    return mapping, well_defined, injective


def alternating_quotient_check(n: int, m: int,
                               cap: int = DEFAULT_CAP) -> QuotientCheck:
    """Compare level m over level 3m with the alternating group A_n.

    Builds the closure of (X_i mod 3m, transposition (i, i+1)) pairs in
    the twin group on n strands, restricts to pairs whose matrix is
    trivial mod m, and tests that the induced matrix -> permutation map
    is well-defined, injective, lands in A_n, and hits all of A_n.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if m % 3 == 0:
        raise ValueError(f"need 3 not dividing m, got {m}")
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    system = twin(n)
    aux = [perms.adjacent_transposition(n, i) for i in range(1, n)]
    image = paired_image(system, 3 * m, aux, perms.multiply,
                         perms.identity(n), cap)
    mapping, well_defined, injective = _kernel_map(image.pairs, m)
    all_even = all(perms.is_even(s) for s in mapping.values())
    onto = set(mapping.values()) == set(perms.alternating(n))
    ok = well_defined and injective and all_even and onto
    detail = (f"well_defined={well_defined} injective={injective} "
              f"even={all_even} onto={onto}")
    return QuotientCheck("alternating", n, m, image.order, len(mapping),
                         math.factorial(n) // 2, ok, detail)


def check_quotient_alternating(n: int, m: int, cap: int = DEFAULT_CAP) -> bool:
    return alternating_quotient_check(n, m, cap).ok


def even_vector_quotient_check(n: int, m: int,
                               cap: int = DEFAULT_CAP) -> QuotientCheck:
    """Compare level m over level 4m with the even-weight mod-2 vectors.

    Same construction with the second coordinate the mod-2 exponent
    vector of the word; the kernel of reduction mod odd m must biject
    onto the 2^(n-2) vectors of even weight in Z_2^(n-1).
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if m < 2 or m % 2 == 0:
        raise ValueError(f"need odd m >= 3, got {m}")
    system = twin(n)
    r = n - 1
    aux = [tuple(1 if i == k else 0 for i in range(r)) for k in range(r)]

    def xor(a, b):
        return tuple((x + y) & 1 for x, y in zip(a, b))

    image = paired_image(system, 4 * m, aux, xor, tuple([0] * r), cap)
    mapping, well_defined, injective = _kernel_map(image.pairs, m)
    even_vectors = {v for v in itertools.product((0, 1), repeat=r)
                    if sum(v) % 2 == 0}
    onto = set(mapping.values()) == even_vectors
    ok = well_defined and injective and onto
    detail = f"well_defined={well_defined} injective={injective} onto={onto}"
    return QuotientCheck("even-vectors", n, m, image.order, len(mapping),
                         2 ** (n - 2), ok, detail)


def check_quotient_even_vectors(n: int, m: int, cap: int = DEFAULT_CAP) -> bool:
    return even_vector_quotient_check(n, m, cap).ok


def product_quotient_check(n: int, m: int,
                           cap: int = DEFAULT_CAP) -> QuotientCheck:
    """Compare level m over level 12m with A_n x (even vectors).

    Since gcd(12, m) = 1 for odd m prime to 3, an element mod 12m is a
    pair (mod 12, mod m); the closure runs over those pairs instead of
    one huge modulus.  The check passes when both component checks pass
    and the 12m-kernel order is exactly the product of the component
    kernel orders.
    """
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    if m % 2 == 0 or m % 3 == 0:
        raise ValueError(f"need m odd and prime to 3, got {m}")
    alt = alternating_quotient_check(n, m, cap)
    vec = even_vector_quotient_check(n, m, cap)
    system = twin(n)
    aux = [generator_matrix(system, k).mod(m).rows
           for k in range(1, system.rank + 1)]

    def matmul_aux(a, b):
        return mul_rows(a, b, m)

    image = paired_image(system, 12, aux, matmul_aux,
                         identity_rows(n - 1), cap)
    ident = identity_rows(n - 1)
    kernel_order = sum(1 for _, s in image.pairs if s == ident)
    expected = alt.expected_kernel_order * vec.expected_kernel_order
    ok = alt.ok and vec.ok and kernel_order == alt.kernel_order * vec.kernel_order
    detail = (f"alt={alt.kernel_order} vec={vec.kernel_order} "
              f"combined={kernel_order}")
    return QuotientCheck("product", n, m, image.order, kernel_order,
                         expected, ok, detail)


def check_quotient_product(n: int, m: int, cap: int = DEFAULT_CAP) -> bool:
    return product_quotient_check(n, m, cap).ok


def product_generation_check(n: int, m: int, k: int,
                             cap: int = DEFAULT_CAP) -> bool:
    """Do levels m and k together generate the even part mod mk?

    For coprime m, k >= 3: inside the image G mod mk, the subgroup
    generated by everything trivial mod m together with everything
    trivial mod k must be exactly the determinant-one part of G (the
    image of the even-length words).
    """
    if m < 3 or k < 3:
        raise ValueError(f"need m, k >= 3, got {m}, {k}")
    if math.gcd(m, k) != 1:
        raise ValueError(f"need gcd(m, k) = 1, got {m}, {k}")
    system = twin(n)
    group = enumerate_image(system, m * k, cap)
    seeds = [el.rows for el in group.elements
             if _reduces_to_identity(el, m) or _reduces_to_identity(el, k)]
    generated = close_under_multiplication(seeds, m * k, cap)
    even_part = {_encode(el.rows, m * k) for el in group.elements
                 if el.det() == 1 % (m * k)}
    return {_encode(r, m * k) for r in generated} == even_part


def minimal_congruence_power(m: int) -> int:
    """Smallest k >= 1 with (s_1 s_2)^k trivial mod m in the rank-2
    twin group; equals m for odd m and m/2 for even m, because the
    power matrix [[2k+1, -2k], [2k, 1-2k]] is trivial mod m exactly
    when m divides 2k."""
    if m < 3:
        raise ValueError(f"need m >= 3, got {m}")
    for k in range(1, 2 * m + 1):
        if twin_power_matrix(k).mod(m).is_identity():
            return k
    raise AssertionError("unreachable: k = m always works")


def general_linear_order(d: int, p: int) -> int:
    """|GL(d, Z_p)| for prime p."""
    q = p ** d
    out = 1
    for i in range(d):
        out *= q - p ** i
    return out


# ---------------------------------------------------------------------------
# group dump format


def format_group_dump(group: FiniteMatrixGroup) -> str:
    """Header "modulus m, dimension d, order N", then the N matrices."""
    lines = [f"modulus {group.modulus}, dimension {group.dimension}, "
             f"order {group.order}"]
    for el in group.elements:
        lines.append("")
        for row in el.rows:
            lines.append(" ".join(str(e) for e in row))
    return "\n".join(lines) + "\n"


def parse_group_dump(text: str) -> FiniteMatrixGroup:
    lines = text.splitlines()
    header = lines[0].replace(",", " ").split()
    m = int(header[1])
    d = int(header[3])
    order = int(header[5])
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != order * d:
        raise ValueError(f"expected {order * d} matrix rows, found {len(body)}")
    elements = []
    for i in range(order):
        block = "\n".join(body[i * d:(i + 1) * d])
        mat = parse_matrix(f"mod {m}\n{block}")
        elements.append(mat)
    keys = frozenset(_encode(e.rows, m) for e in elements)
    return FiniteMatrixGroup(m, d, tuple(elements), (), keys)
