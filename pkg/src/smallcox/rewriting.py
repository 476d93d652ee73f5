"""Subgroup presentations by Schreier rewriting, and abelianization.

Every subgroup handled here is the kernel of an explicit map onto a
finite group (a permutation group, a mod-m matrix group, or a mod-2
vector group), so cosets biject with image elements and no Todd-Coxeter
style enumeration is ever needed:

* ``coset_table`` lists the cosets by breadth-first closure, recording
  the shortlex-least coset representative word and the action of each
  generator (all generator images are involutions, so the action table
  is its own inverse);
* ``reidemeister_schreier`` presents the kernel on the nontrivial
  Schreier generators u y (rep of uy)^-1, with one rewritten relator
  per (coset, defining relator) pair;
* ``tietze_simplify`` repeatedly eliminates generators that occur
  exactly once in some relator, enough to expose freeness in the cases
  this package cares about;
* ``abelian_invariants`` reads free rank and torsion off the Smith
  normal form of the relator exponent matrix;
* ``KernelRewriter.conjugation_matrix`` computes the action that an
  ambient word induces on the abelianized kernel, which is what the
  crystallographic checks consume.

Presentation text format: first line ``gens g``, then one relator per
line as signed generator indices (``1 2 -1 -2``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Optional, Sequence

import numpy as np

from . import perms
from .coxeter import INF, CoxeterSystem, Word, require_small
from .matrices import (IntMatrix, ModMatrix, SmithForm, identity_rows,
                       mul_rows, smith_normal_form)
from .tits import generator_matrix

DEFAULT_COSET_CAP = 10_000_000

SignedWord = tuple[int, ...]


class RelationCheckError(ValueError):
    """Proposed generator images violate a defining relation."""


class LatticeTorsionError(ValueError):
    """Conjugation asked for an integer matrix but the kernel
    abelianization has torsion."""

    def __init__(self, torsion: tuple[int, ...]):
        super().__init__(f"kernel abelianization has torsion {torsion}")
        self.torsion = torsion


class CosetBudgetError(RuntimeError):
    def __init__(self, budget: int):
        super().__init__(f"coset count exceeds budget {budget}")
        self.budget = budget


@dataclass(frozen=True)
class Presentation:
    generators: int
    relators: tuple[SignedWord, ...]

    def __post_init__(self):
        for rel in self.relators:
            for letter in rel:
                if letter == 0 or abs(letter) > self.generators:
                    raise ValueError(f"relator letter {letter} outside range")


def format_presentation(pres: Presentation) -> str:
    lines = [f"gens {pres.generators}"]
    lines.extend(" ".join(str(x) for x in rel) for rel in pres.relators)
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("gens "):
        raise ValueError("presentation text must start with 'gens g'")
    g = int(lines[0].split()[1])
    rels = tuple(tuple(int(tok) for tok in ln.split()) for ln in lines[1:])
    return Presentation(g, rels)


def coxeter_presentation(system: CoxeterSystem) -> Presentation:
    """Generator squares plus one braid-type relator per finite bond."""
    rels: list[SignedWord] = []
    r = system.rank
    for i in range(1, r + 1):
        rels.append((i, i))
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            m = system.exponent(i, j)
            if m is not INF:
                rels.append((i, j) * m)
    return Presentation(r, tuple(rels))


# ---------------------------------------------------------------------------
# finite quotient maps


@dataclass(frozen=True)
class FiniteQuotientMap:
    """Generator images in a finite group, checked against the relations.

    Supported targets: adjacent transpositions in S_n (``symmetric``),
    the reflection matrices mod m (``modular``), the mod-2 abelianization
    onto bit vectors indexed by odd-bond classes (``mod2_abelian``), and
    the map onto the trivial group (``trivial``).
    """

    system: CoxeterSystem
    kind: str
    images: tuple[Hashable, ...]
    identity_image: Hashable

    def compose(self, a, b):
        if self.kind == "modular":
            return ModMatrix(mul_rows(a.rows, b.rows, a.modulus), a.modulus)
        if self.kind == "mod2_abelian":
            return tuple((x + y) & 1 for x, y in zip(a, b))
        return perms.multiply(a, b)

    def image_of_word(self, word: Sequence[int]):
        out = self.identity_image
        for letter in word:
            out = self.compose(out, self.images[abs(letter) - 1])
        return out


def _power(qmap: FiniteQuotientMap, x, k: int):
    out = qmap.identity_image
    for _ in range(k):
        out = qmap.compose(out, x)
    return out


def _check_relations(qmap: FiniteQuotientMap) -> None:
    system = qmap.system
    for i in range(1, system.rank + 1):
        sq = qmap.compose(qmap.images[i - 1], qmap.images[i - 1])
        if sq != qmap.identity_image:
            raise RelationCheckError(f"image of generator {i} is not an involution")
        for j in range(i + 1, system.rank + 1):
            m = system.exponent(i, j)
            if m is INF:
                continue
            prod = qmap.compose(qmap.images[i - 1], qmap.images[j - 1])
            if _power(qmap, prod, m) != qmap.identity_image:
                raise RelationCheckError(
                    f"bond relation ({i},{j})^{m} fails in the image")


def _family_pattern(system: CoxeterSystem) -> Optional[str]:
    """Which of twin/triplet/symmetric this system is, if any."""
    r = system.rank
    for name, near, far in (("twin", INF, 2), ("triplet", 3, INF),
                            ("symmetric", 3, 2)):
        ok = all(system.exponent(i, j) == (near if abs(i - j) == 1 else far)
                 for i in range(1, r + 1) for j in range(1, r + 1) if i != j)
        if ok:
            return name
    return None


def odd_bond_classes(system: CoxeterSystem) -> list[int]:
    """Class index (0-based) of each generator under odd-bond merging.

    Generators joined by an odd exponent map to the same coordinate of
    the mod-2 abelianization; classes are numbered by smallest member.
    """
    r = system.rank
    parent = list(range(r))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(r):
        for j in range(i + 1, r):
            m = system.exponents[i][j]
            if m is not INF and m % 2 == 1:
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    roots: dict[int, int] = {}
    out = []
    for i in range(r):
        root = find(i)
        if root not in roots:
            roots[root] = len(roots)
        out.append(roots[root])
    return out


def quotient_map(system: CoxeterSystem, kind: str,
                 m: Optional[int] = None) -> FiniteQuotientMap:
    """Build one of the standard finite quotients and verify it."""
    r = system.rank
    if kind == "symmetric":
        if _family_pattern(system) is None:
            raise RelationCheckError(
                "symmetric quotient needs a twin, triplet or symmetric system")
        n = r + 1
        images = tuple(perms.adjacent_transposition(n, i) for i in range(1, n))
        qmap = FiniteQuotientMap(system, kind, images, perms.identity(n))
    elif kind == "modular":
        if m is None or m < 2:
            raise ValueError(f"modular quotient needs m >= 2, got {m}")
        require_small(system)
        images = tuple(generator_matrix(system, k).mod(m) for k in range(1, r + 1))
        qmap = FiniteQuotientMap(system, kind, images,
                                 ModMatrix.identity(r, m))
    elif kind == "mod2_abelian":
        classes = odd_bond_classes(system)
        t = max(classes) + 1
        images = tuple(tuple(1 if c == classes[k] else 0 for c in range(t))
                       for k in range(r))
        qmap = FiniteQuotientMap(system, kind, images, tuple([0] * t))
    elif kind == "trivial":
        images = tuple((0,) for _ in range(r))
        qmap = FiniteQuotientMap(system, kind, images, (0,))
    else:
        raise ValueError(f"unknown quotient kind {kind!r}")
    _check_relations(qmap)
    return qmap


def trivial_map(system: CoxeterSystem) -> FiniteQuotientMap:
    return quotient_map(system, "trivial")


# ---------------------------------------------------------------------------
# coset tables


@dataclass(frozen=True)
class CosetTable:
    """Cosets of a kernel, one per image element.

    ``transversal[c]`` is the shortlex-least word whose image lands in
    coset c (coset 0 is the kernel itself, with the empty word), and
    ``action[c][y-1]`` is the coset of (representative of c) * s_y.
    Generator images are involutions, so each action column is a
    self-inverse permutation of the cosets.
    """

    transversal: tuple[Word, ...]
    action: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.transversal)


def coset_table(qmap: FiniteQuotientMap,
                cap: int = DEFAULT_COSET_CAP) -> CosetTable:
    index = {qmap.identity_image: 0}
    elements = [qmap.identity_image]
    words: list[Word] = [()]
    action: list[list[int]] = []
    qi = 0
    r = len(qmap.images)
    while qi < len(elements):
        g = elements[qi]
        row = []
        for y in range(r):
            h = qmap.compose(g, qmap.images[y])
            at = index.get(h)
            if at is None:
                if len(elements) >= cap:
                    raise CosetBudgetError(cap)
                at = len(elements)
                index[h] = at
                elements.append(h)
                words.append(words[qi] + (y + 1,))
            row.append(at)
        action.append(row)
        qi += 1
    table = CosetTable(tuple(words), tuple(tuple(row) for row in action))
    for c in range(table.count):
        for y in range(r):
            if table.action[table.action[c][y]][y] != c:
                raise RelationCheckError("generator action is not an involution")
    return table


# ---------------------------------------------------------------------------
# free-group word utilities (signed letters)


def free_reduce_signed(word: Sequence[int]) -> SignedWord:
    out: list[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def cyclically_reduce(word: Sequence[int]) -> SignedWord:
    w = list(free_reduce_signed(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert_signed(word: Sequence[int]) -> SignedWord:
    return tuple(-x for x in reversed(word))


# ---------------------------------------------------------------------------
# Reidemeister-Schreier


class KernelRewriter:
    """Rewriting machinery for the kernel of a finite quotient.

    Built from the ambient presentation and a coset table.  The Schreier
    generator for a pair (coset c, generator y) is the kernel element
    u_c s_y (u_{c.y})^-1; pairs where u_c s_y is itself the chosen
    representative (the breadth-first tree edges) are trivial and get no
    index.  Rewriting scans a word letter by letter, emitting the index
    of each pair it crosses.
    """

    def __init__(self, pres: Presentation, table: CosetTable):
        if table.action and len(table.action[0]) != pres.generators:
            raise ValueError("coset table generator count differs from presentation")
        self.pres = pres
        self.table = table
        n_cosets = table.count
        g = pres.generators
        self.pair_index: dict[tuple[int, int], int] = {}
        self.pairs: list[tuple[int, int]] = []
        for c in range(n_cosets):
            for y in range(1, g + 1):
                t = table.action[c][y - 1]
                if table.transversal[c] + (y,) == table.transversal[t]:
                    continue  # tree edge
                self.pair_index[(c, y)] = len(self.pairs)
                self.pairs.append((c, y))
        self.num_schreier = len(self.pairs)
        rels = []
        for c in range(n_cosets):
            for rel in pres.relators:
                w = free_reduce_signed(self.rewrite(rel, start=c))
                if w:
                    rels.append(w)
        self.presentation = Presentation(self.num_schreier, tuple(rels))
        self._smith: Optional[SmithForm] = None

    # -- rewriting -----------------------------------------------------

    def rewrite(self, word: Sequence[int], start: int = 0) -> SignedWord:
        """Signed Schreier-generator word for an ambient (signed) word.

        Scanning from coset ``start`` computes the rewrite of the
        conjugate u r u^-1 for u the representative of ``start``: the
        representative's own letters only cross tree edges.
        """
        action = self.table.action
        index = self.pair_index
        c = start
        out: list[int] = []
        for letter in word:
            y = abs(letter)
            if letter > 0:
                k = index.get((c, y))
                if k is not None:
                    out.append(k + 1)
                c = action[c][y - 1]
            else:
                c = action[c][y - 1]  # involution: s_y^-1 acts like s_y
                k = index.get((c, y))
                if k is not None:
                    out.append(-(k + 1))
        if c != start:
            raise ValueError("word does not normalize the coset: not in kernel "
                             "(or conjugate thereof)")
        return tuple(out)

    def schreier_word(self, k: int) -> Word:
        """Ambient word (positive letters) for Schreier generator k+1."""
        c, y = self.pairs[k]
        u = self.table.transversal[c]
        ubar = self.table.transversal[self.table.action[c][y - 1]]
        return u + (y,) + tuple(reversed(ubar))

    # -- abelianized kernel ---------------------------------------------

    def exponent_vector(self, word: Sequence[int]) -> list[int]:
        """Schreier-generator exponent sums of a kernel word."""
        v = [0] * self.num_schreier
        action = self.table.action
        index = self.pair_index
        c = 0
        for letter in word:
            y = abs(letter)
            if letter > 0:
                k = index.get((c, y))
                if k is not None:
                    v[k] += 1
                c = action[c][y - 1]
            else:
                c = action[c][y - 1]
                k = index.get((c, y))
                if k is not None:
                    v[k] -= 1
        if c != 0:
            raise ValueError("word is not in the kernel")
        return v

    @property
    def smith(self) -> SmithForm:
        if self._smith is None:
            rows = []
            for rel in self.presentation.relators:
                v = [0] * self.num_schreier
                for letter in rel:
                    v[abs(letter) - 1] += 1 if letter > 0 else -1
                rows.append(v)
            self._smith = smith_normal_form(rows, self.num_schreier,
                                            want_transform=True)
        return self._smith

    @property
    def rank(self) -> int:
        return len(self.smith.free_columns)

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.smith.torsion

    def free_coordinates(self, word: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of a kernel word in the free part of the
        abelianized kernel (the basis the Smith column transform picks)."""
        v = self.exponent_vector(word)
        sm = self.smith
        support = [t for t, x in enumerate(v) if x]
        return tuple(sum(v[t] * sm.v[t][j] for t in support)
                     for j in sm.free_columns)

    def conjugation_matrix(self, word: Sequence[int],
                           allow_torsion: bool = False) -> IntMatrix:
        """Matrix of x -> w x w^-1 on the free abelianized kernel.

        Columns are the images of the free basis vectors, so the map is
        a homomorphism in ambient words: M(uv) = M(u) M(v).  With
        torsion present the free part is still well defined, but the
        caller must opt in; by default torsion raises.
        """
        sm = self.smith
        if sm.torsion and not allow_torsion:
            raise LatticeTorsionError(sm.torsion)
        g = self.num_schreier
        word = tuple(word)
        word_inv = invert_signed(word)
        rows = []
        for k in range(g):
            conj = word + self.schreier_word(k) + word_inv
            rows.append(self.exponent_vector(conj))
        free = sm.free_columns
        r = len(free)
        if r == 0:
            return IntMatrix(())
        m_rows = _restricted_basis_change(rows, sm, free)
        # transpose: columns = images of basis vectors
        return IntMatrix(tuple(tuple(m_rows[j][i] for j in range(r))
                               for i in range(r)))


def _restricted_basis_change(c_rows: list[list[int]], sm: SmithForm,
                             free: tuple[int, ...]) -> list[list[int]]:
    """Rows of (V^-1 C V) restricted to the free block.

    Uses int64 numpy products when the worst-case accumulation fits,
    otherwise exact Python integers over the sparse rows of C.
    """
    g = len(c_rows)
    max_c = max((abs(e) for row in c_rows for e in row), default=0)
    max_v = max((abs(e) for row in sm.v for e in row), default=0)
    max_vinv = max((abs(e) for row in sm.v_inv for e in row), default=0)
    bound = g * g * max(1, max_c) * max(1, max_v) * max(1, max_vinv)
    if bound < 2 ** 62:
        c_arr = np.array(c_rows, dtype=np.int64)
        v_free = np.array([[row[j] for j in free] for row in sm.v], dtype=np.int64)
        vinv_free = np.array([sm.v_inv[i] for i in free], dtype=np.int64)
        m = vinv_free @ (c_arr @ v_free)
        return m.tolist()
    # exact fallback, exploiting sparse rows of C
    p = []
    for row in c_rows:
        support = [t for t, x in enumerate(row) if x]
        p.append([sum(row[t] * sm.v[t][j] for t in support) for j in free])
    out = []
    for i in free:
        vrow = sm.v_inv[i]
        support = [t for t, x in enumerate(vrow) if x]
        out.append([sum(vrow[t] * p[t][j] for t in support)
                    for j in range(len(free))])
    return out


def reidemeister_schreier(pres: Presentation, table: CosetTable) -> Presentation:
    """Presentation of the kernel on its nontrivial Schreier generators.

    A kernel of index N under g ambient generators gets exactly
    N*g - (N-1) generators (all pairs minus the spanning-tree edges) and
    one freely reduced relator per (coset, ambient relator) pair, empty
    rewrites dropped.
    """
    return KernelRewriter(pres, table).presentation


def kernel_conjugation_matrix(pres: Presentation, table: CosetTable,
                              word: Sequence[int]) -> IntMatrix:
    """Action of an ambient word on the abelianized kernel.

    Raises LatticeTorsionError when the abelianization is not free; the
    torsion is reported on the error.
    """
    return KernelRewriter(pres, table).conjugation_matrix(word)


# ---------------------------------------------------------------------------
# Tietze simplification


def tietze_simplify(pres: Presentation) -> Presentation:
    """Eliminate generators that occur exactly once in some relator.

    Each round: freely and cyclically reduce all relators, drop empty
    ones, then pick the shortest relator containing a generator exactly
    once, solve for that generator and substitute through.  Terminates
    because each elimination removes a generator.  This is deliberately
    modest; it suffices to expose freeness for the kernels this package
    computes, and it preserves abelian invariants exactly.
    """
    relators = [cyclically_reduce(r) for r in pres.relators]
    relators = [r for r in relators if r]
    alive = sorted(range(1, pres.generators + 1))
    while True:
        target = None
        for ri, rel in enumerate(relators):
            counts: dict[int, int] = {}
            for letter in rel:
                counts[abs(letter)] = counts.get(abs(letter), 0) + 1
            lone = [g for g, cnt in counts.items() if cnt == 1]
            if lone and (target is None or len(rel) < len(relators[target[0]])):
                target = (ri, lone[0])
        if target is None:
            break
        ri, g = target
        rel = relators.pop(ri)
        at = next(i for i, letter in enumerate(rel) if abs(letter) == g)
        spun = rel[at:] + rel[:at]
        # spun = g^e * w, so g = w^-1 when e = +1 and g = w when e = -1
        replacement = invert_signed(spun[1:]) if spun[0] == g else spun[1:]
        new_relators = []
        for other in relators:
            out: list[int] = []
            for letter in other:
                if letter == g:
                    out.extend(replacement)
                elif letter == -g:
                    out.extend(invert_signed(replacement))
                else:
                    out.append(letter)
            reduced = cyclically_reduce(out)
            if reduced:
                new_relators.append(reduced)
        relators = new_relators
        alive.remove(g)
    renumber = {g: i + 1 for i, g in enumerate(alive)}
    final = tuple(tuple((1 if letter > 0 else -1) * renumber[abs(letter)]
                        for letter in rel) for rel in relators)
    return Presentation(len(alive), final)


# ---------------------------------------------------------------------------
# abelianization


@dataclass(frozen=True)
class AbelianInvariants:
    """Free rank plus the torsion divisor chain d_1 | d_2 | ..."""

    rank: int
    torsion: tuple[int, ...]

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append(f"Z^{self.rank}" if self.rank > 1 else "Z")
        parts.extend(f"Z_{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def abelian_invariants(pres: Presentation) -> AbelianInvariants:
    rows = []
    for rel in pres.relators:
        v = [0] * pres.generators
        for letter in rel:
            v[abs(letter) - 1] += 1 if letter > 0 else -1
        rows.append(v)
    if not rows:
        return AbelianInvariants(pres.generators, ())
    sm = smith_normal_form(rows, pres.generators)
    return AbelianInvariants(pres.generators - len(sm.divisors), sm.torsion)
