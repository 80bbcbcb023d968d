"""The Poisson Hopf algebra C[G] of matrix coefficients.

An element is stored per module M as a sparse coefficient matrix T, read
as the functional z -> trace(rho_M(z) T).  The matrix coefficient
c_{f,v}(z) = f(z v) corresponds to T = v f^T, so:

* products are Kronecker products on M (x) N,
* the antipode is the transpose, placed on the dual module,
* c_{f, x p} corresponds to X T and c_{f x, p} to T X.

Entry T_ij is the coefficient of c_{g_j, v_i}, homogeneous of bigrade
(-wt_j, wt_i) for the fixed weight basis v_i and its dual basis g_j.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .linalg import ONE, ZERO, Echelon, SparseMatrix, solve
from .liealg import BasisVector, DeltaExtension, LieAlgebraD, Word
from .repn import ModuleCatalog, WeightModule, direct_sum
from .rootdata import wneg

Block = dict  # dict[tuple[int, int], Fraction]
Bigrade = tuple  # (dual-vector weight, vector weight)


class NotHomogeneous(ValueError):
    pass


def _block_add(acc: Block, other: Block, scale: Fraction = ONE) -> None:
    for key, val in other.items():
        s = acc.get(key, ZERO) + scale * val
        if s:
            acc[key] = s
        else:
            acc.pop(key, None)


def _kron(t: Block, s: Block, n_dim: int, scale: Fraction = ONE) -> Block:
    out: Block = {}
    for (i, j), a in t.items():
        for (k, l), b in s.items():
            out[(i * n_dim + k, j * n_dim + l)] = scale * a * b
    return out


def _left_mul(x: SparseMatrix, t: Block) -> Block:
    """X T."""
    out: Block = {}
    for (i, j), val in t.items():
        for r, xv in x.columns[i]:
            key = (r, j)
            out[key] = out.get(key, ZERO) + xv * val
    return {k: v for k, v in out.items() if v}


def _right_mul(t: Block, x: SparseMatrix) -> Block:
    """T X."""
    rows = x.row_lists
    out: Block = {}
    for (i, j), val in t.items():
        for c, xv in rows[j]:
            key = (i, c)
            out[key] = out.get(key, ZERO) + val * xv
    return {k: v for k, v in out.items() if v}


class CoordElement:
    """Immutable element of C[G]: a map module -> sparse coefficient matrix."""

    __slots__ = ("ring", "blocks", "_evals")

    def __init__(self, ring: "CoordRing", blocks: dict[WeightModule, Block]):
        self.ring = ring
        self.blocks = {m: dict(b) for m, b in blocks.items() if b}
        self._evals: dict[Word, Fraction] = {}

    # -- vector space and algebra

    def __add__(self, other: "CoordElement") -> "CoordElement":
        blocks = {m: dict(b) for m, b in self.blocks.items()}
        for m, b in other.blocks.items():
            acc = blocks.setdefault(m, {})
            _block_add(acc, b)
        return CoordElement(self.ring, blocks)

    def __neg__(self) -> "CoordElement":
        return self.scale(-1)

    def __sub__(self, other: "CoordElement") -> "CoordElement":
        return self + other.scale(-1)

    def scale(self, c) -> "CoordElement":
        c = Fraction(c)
        if not c:
            return CoordElement(self.ring, {})
        return CoordElement(self.ring, {m: {k: c * v for k, v in b.items()} for m, b in self.blocks.items()})

    def __mul__(self, other):
        if isinstance(other, CoordElement):
            return self.ring.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def is_formally_zero(self) -> bool:
        return not self.blocks

    def terms(self) -> Iterator[tuple[Fraction, WeightModule, int, int]]:
        """(coefficient, module, dual index j, vector index i) for c_{g_j, v_i}."""
        for m, b in self.blocks.items():
            for (i, j), val in sorted(b.items()):
                yield val, m, j, i

    # -- grading

    def bigrade_parts(self) -> dict[Bigrade, "CoordElement"]:
        parts: dict[Bigrade, dict[WeightModule, Block]] = {}
        for m, b in self.blocks.items():
            for (i, j), val in b.items():
                grade = (wneg(m.weights[j]), m.weights[i])
                parts.setdefault(grade, {}).setdefault(m, {})[(i, j)] = val
        return {g: CoordElement(self.ring, blocks) for g, blocks in parts.items()}

    def bigrade(self) -> Bigrade | None:
        """The bigrade when all stored terms share one, else None."""
        grades = {
            (wneg(m.weights[j]), m.weights[i]) for m, b in self.blocks.items() for (i, j) in b
        }
        return grades.pop() if len(grades) == 1 else None

    # -- evaluation

    def evaluate(self, word: Sequence[BasisVector]) -> Fraction:
        word = tuple(word)
        hit = self._evals.get(word)
        if hit is not None:
            return hit
        total = ZERO
        for m, b in self.blocks.items():
            by_row: dict[int, list[tuple[int, Fraction]]] = {}
            for (i, j), val in b.items():
                by_row.setdefault(i, []).append((j, val))
            for i, entries in by_row.items():
                image = m.act_word(word, m.basis_vector(i))
                total += sum((val * image[j] for j, val in entries if image[j]), ZERO)
        self._evals[word] = total
        return total

    def __repr__(self) -> str:
        parts = []
        for val, m, j, i in self.terms():
            parts.append(f"{val}*c[{m.describe()}](g{j},v{i})")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class MatrixCoefficient:
    """c^M_{f,v} for a dual vector f and a vector v (coordinate lists)."""

    module: WeightModule
    f: tuple
    v: tuple

    def bigrade(self) -> Bigrade | None:
        lam = self.module.dual_vector_weight(self.f)
        mu = self.module.vector_weight(self.v)
        return None if lam is None or mu is None else (lam, mu)


class CoordRing:
    """Context for C[G] over one twisted double: modules, Hopf and Poisson structure."""

    def __init__(self, d: LieAlgebraD, catalog: ModuleCatalog | None = None):
        self.d = d
        self.catalog = catalog or ModuleCatalog(d)
        self.delta = DeltaExtension(d)
        self._pairing_cache: dict[tuple[int, int, bool], list[list[Fraction]]] = {}
        self._u_cache: dict[tuple[int, int], list[list[Fraction]]] = {}

    # -- constructors

    def zero(self) -> CoordElement:
        return CoordElement(self, {})

    def one(self) -> CoordElement:
        return CoordElement(self, {self.catalog.trivial: {(0, 0): ONE}})

    def coefficient(self, module: WeightModule, f: Sequence, v: Sequence) -> CoordElement:
        block = {}
        for i, vi in enumerate(v):
            if vi:
                for j, fj in enumerate(f):
                    if fj:
                        block[(i, j)] = Fraction(vi) * Fraction(fj)
        return CoordElement(self, {module: block})

    def elementary(self, module: WeightModule, dual_index: int, vector_index: int, coeff=1) -> CoordElement:
        """c_{g_j, v_i} for the dual-basis functional g_j and basis vector v_i."""
        return CoordElement(self, {module: {(vector_index, dual_index): Fraction(coeff)}})

    def from_coefficient(self, mc: MatrixCoefficient) -> CoordElement:
        return self.coefficient(mc.module, mc.f, mc.v)

    def homogeneous_coefficients(self, module: WeightModule) -> list[CoordElement]:
        return [self.elementary(module, j, i) for i in range(module.dim) for j in range(module.dim)]

    # -- Hopf structure

    def mul(self, a: CoordElement, b: CoordElement) -> CoordElement:
        blocks: dict[WeightModule, Block] = {}
        for m, t in a.blocks.items():
            for n, s in b.blocks.items():
                target = self.catalog.tensor(m, n)
                _block_add(blocks.setdefault(target, {}), _kron(t, s, n.dim))
        return CoordElement(self, blocks)

    def counit(self, a: CoordElement) -> Fraction:
        return sum((val for b in a.blocks.values() for (i, j), val in b.items() if i == j), ZERO)

    def antipode(self, a: CoordElement) -> CoordElement:
        return CoordElement(
            self, {self.catalog.dual(m): {(j, i): val for (i, j), val in b.items()} for m, b in a.blocks.items()}
        )

    def comult(self, a: CoordElement) -> list[tuple[CoordElement, CoordElement]]:
        """Delta(c_{f,v}) = sum_i c_{f,v_i} (x) c_{g_i,v}, as (left, right) pairs."""
        pairs = []
        for m, b in a.blocks.items():
            rows: dict[int, dict[int, Fraction]] = {}
            for (j, k), val in b.items():
                rows.setdefault(j, {})[k] = val
            for i in range(m.dim):
                for j, row in rows.items():
                    left = CoordElement(self, {m: {(i, k): val for k, val in row.items()}})
                    right = CoordElement(self, {m: {(j, i): ONE}})
                    pairs.append((left, right))
        return pairs

    # -- brackets

    def _cartan_scalars(self, m: WeightModule, n: WeightModule, twisted: bool) -> list[list[Fraction]]:
        key = (id(m), id(n), twisted)
        cached = self._pairing_cache.get(key)
        if cached is None:
            tf = self.d.twist
            cd = self.d.cartan
            if twisted:
                cached = [[tf.phi(1, a, b) for b in n.weights] for a in m.weights]
            else:
                cached = [[cd.pair(a, b) for b in n.weights] for a in m.weights]
            self._pairing_cache[key] = cached
        return cached

    def _u_values(self, m: WeightModule, n: WeightModule) -> list[list[Fraction]]:
        key = (id(m), id(n))
        cached = self._u_cache.get(key)
        if cached is None:
            tf = self.d.twist
            cached = [[tf.value(a, b) for b in n.weights] for a in m.weights]
            self._u_cache[key] = cached
        return cached

    def _scalar_part(self, t: Block, s: Block, m: WeightModule, n: WeightModule, table) -> Block:
        """sum over entries of table[i][k] - table[j][l] times T_ij S_kl.

        With vector weights eta = wt_i, rho = wt_k and dual weights
        beta = -wt_j, gamma = -wt_l this is [F(eta, rho) - F(beta, gamma)]
        for any bilinear F.
        """
        out: Block = {}
        nd = n.dim
        for (i, j), a in t.items():
            for (k, l), b in s.items():
                scalar = table[i][k] - table[j][l]
                if scalar:
                    out[(i * nd + k, j * nd + l)] = scalar * a * b
        return out

    def _root_part(self, t: Block, s: Block, m: WeightModule, n: WeightModule) -> Block:
        """2 sum_{nu>0} (c_{f, x_nu p} c_{g, x_-nu v} - c_{f x_nu, p} c_{g x_-nu, v}) with the r-matrix normalisation."""
        d = self.d
        rs = d.roots
        out: Block = {}
        nd = n.dim
        for k in range(rs.num_positive):
            pos, neg = BasisVector("x", k), BasisVector("x", rs.negative(k))
            scale = 2 * d.r_scale(k)
            xm, xn_neg = m.actions[pos], n.actions[neg]
            _block_add(out, _kron(_left_mul(xm, t), _left_mul(xn_neg, s), nd), scale)
            _block_add(out, _kron(_right_mul(t, xm), _right_mul(s, xn_neg), nd), -scale)
        return out

    def _bracket(self, a: CoordElement, b: CoordElement, scalar_kind: str, with_roots: bool) -> CoordElement:
        blocks: dict[WeightModule, Block] = {}
        for m, t in a.blocks.items():
            for n, s in b.blocks.items():
                target = self.catalog.tensor(m, n)
                acc = blocks.setdefault(target, {})
                if scalar_kind == "u":
                    table = self._u_values(m, n)
                else:
                    table = self._cartan_scalars(m, n, scalar_kind == "phi")
                _block_add(acc, self._scalar_part(t, s, m, n, table))
                if with_roots:
                    _block_add(acc, self._root_part(t, s, m, n))
        return CoordElement(self, blocks)

    def bracket_r(self, a: CoordElement, b: CoordElement) -> CoordElement:
        """The untwisted bracket with scalar (eta|rho) - (beta|gamma)."""
        return self._bracket(a, b, "form", True)

    def bracket_u(self, a: CoordElement, b: CoordElement) -> CoordElement:
        """[u(mu, mu') - u(lam, lam')] a b on bigrades (lam, mu), (lam', mu')."""
        return self._bracket(a, b, "u", False)

    def bracket(self, a: CoordElement, b: CoordElement) -> CoordElement:
        """The twisted bracket with scalar (Phi_+ eta|rho) - (Phi_+ beta|gamma)."""
        return self._bracket(a, b, "phi", True)

    def bracket_by_sum(self, a: CoordElement, b: CoordElement) -> CoordElement:
        return self.bracket_r(a, b) + self.bracket_u(a, b)

    # -- oracle

    def oracle_bracket_eval(self, a: CoordElement, b: CoordElement, word: Sequence[BasisVector],
                            twisted: bool = True) -> Fraction:
        """(a (x) b)(delta(word)), plus the u-bracket evaluated on the word when twisted."""
        value = ZERO
        for (w1, w2), c in self.delta(tuple(word)).items():
            left = a.evaluate(w1)
            if left:
                value += c * left * b.evaluate(w2)
        if twisted:
            value += self.bracket_u(a, b).evaluate(word)
        return value

    # -- equality

    def packed(self, a: CoordElement) -> tuple[WeightModule, list[Fraction], list[Fraction]] | None:
        """A single coefficient c_{F,V} over a direct sum representing a (None for the empty sum)."""
        pieces = self._rank_pieces(a)
        if not pieces:
            return None
        module = direct_sum(*(m for m, _, _ in pieces))
        big_f = [x for _, f, _ in pieces for x in f]
        big_v = [x for _, _, v in pieces for x in v]
        return module, big_f, big_v

    def _rank_pieces(self, a: CoordElement) -> list[tuple[WeightModule, list[Fraction], list[Fraction]]]:
        """Write each block as sum_k b_k c_k^T with independent columns b_k."""
        pieces = []
        for m, block in a.blocks.items():
            columns: dict[int, list[Fraction]] = {}
            for (i, j), val in block.items():
                columns.setdefault(j, [ZERO] * m.dim)[i] = val
            echelon = Echelon(m.dim)
            order = sorted(columns)
            for j in order:
                echelon.add(columns[j])
            funcs = [[ZERO] * m.dim for _ in echelon.basis]
            for j in order:
                coords = echelon.coordinates(columns[j])
                for k, c in enumerate(coords):
                    if c:
                        funcs[k][j] = c
            for b, c in zip(echelon.basis, funcs):
                pieces.append((m, c, b))
        return pieces

    def is_zero(self, a: CoordElement) -> bool:
        """Exact: a vanishes on U(d) iff F kills the U(d)-submodule generated by V."""
        if a.is_formally_zero():
            return True
        if self.counit(a):
            return False
        for x in self.d.generators:
            if a.evaluate((x,)):
                return False
        pieces = self._rank_pieces(a)
        offsets = []
        total = 0
        for m, _, _ in pieces:
            offsets.append(total)
            total += m.dim
        generators = self.d.generators

        def apply(x: BasisVector, vec: list[Fraction]) -> list[Fraction]:
            out = [ZERO] * total
            for (m, _, _), off in zip(pieces, offsets):
                seg = vec[off:off + m.dim]
                if any(seg):
                    out[off:off + m.dim] = m.actions[x].apply(seg)
            return out

        start = [ZERO] * total
        functional = [ZERO] * total
        for (m, f, v), off in zip(pieces, offsets):
            start[off:off + m.dim] = v
            functional[off:off + m.dim] = f
        span = Echelon(total)
        span.add(start)
        queue = [start]
        if sum((x * y for x, y in zip(functional, start) if x and y), ZERO):
            return False
        while queue:
            vec = queue.pop()
            for x in generators:
                w = apply(x, vec)
                if any(w) and span.add(w):
                    if sum((p * q for p, q in zip(functional, w) if p and q), ZERO):
                        return False
                    queue.append(w)
        return True

    def equals(self, a: CoordElement, b: CoordElement) -> bool:
        return self.is_zero(a - b)

    def solve_combination(self, target: CoordElement, candidates: Sequence[CoordElement]) -> list[Fraction] | None:
        """Coefficients y with target = sum y_k candidates[k] as functionals on U(d), or None.

        Every element is paired against a basis of rho(U(d)) restricted to the
        columns its blocks use, grown by Krylov iteration, so the answer is
        exact in both directions.  Inconsistency is reported as soon as it appears.
        """
        elements = list(candidates) + [target]
        n = len(candidates)
        columns: dict[WeightModule, set[int]] = {}
        for el in elements:
            for m, block in el.blocks.items():
                columns.setdefault(m, set()).update(i for i, _ in block)
        copies: list[tuple[WeightModule, int, int]] = []
        offset = 0
        for m in sorted(columns, key=lambda mod: mod.describe()):
            for i in sorted(columns[m]):
                copies.append((m, i, offset))
                offset += m.dim
        where = {(m, i): off for m, i, off in copies}
        pairing_plan = []
        for el in elements:
            pairing_plan.append([(where[(m, i)] + j, val) for m, block in el.blocks.items() for (i, j), val in block.items()])

        def pair_row(vec: list[Fraction]) -> list[Fraction]:
            return [sum((val * vec[pos] for pos, val in plan if vec[pos]), ZERO) for plan in pairing_plan]

        def apply(x: BasisVector, vec: list[Fraction]) -> list[Fraction]:
            out = [ZERO] * offset
            for m, _, off in copies:
                seg = vec[off:off + m.dim]
                if any(seg):
                    out[off:off + m.dim] = m.actions[x].apply(seg)
            return out

        start = [ZERO] * offset
        for m, i, off in copies:
            start[off + i] = ONE
        system = Echelon(n + 1)
        krylov = Echelon(offset)
        krylov.add(start)
        queue = [start]
        while queue:
            vec = queue.pop(0)
            row = pair_row(vec)
            if any(row):
                system.add(row)
                if system.last_pivot == n:
                    return None
            for x in self.d.generators:
                w = apply(x, vec)
                if any(w) and krylov.add(w):
                    queue.append(w)
        if not system.basis:
            return [ZERO] * n
        coeffs = solve([r[:n] for r in system.basis], [r[n] for r in system.basis])
        return coeffs

    def combination(self, coeffs: Sequence[Fraction], elements: Sequence[CoordElement]) -> CoordElement:
        acc: dict[WeightModule, Block] = {}
        for c, el in zip(coeffs, elements):
            if c:
                for m, block in el.blocks.items():
                    _block_add(acc.setdefault(m, {}), block, Fraction(c))
        return CoordElement(self, acc)

    # -- words

    def words(self, max_len: int, basis: Iterable[BasisVector] | None = None) -> list[Word]:
        basis = list(basis) if basis is not None else list(self.d.basis)
        out: list[Word] = []
        for length in range(max_len + 1):
            out.extend(itertools.product(basis, repeat=length))
        return out


def evaluate(a: CoordElement, word: Sequence[BasisVector]) -> Fraction:
    return a.evaluate(word)


def tensor_bracket(ring: CoordRing, left: list[tuple[CoordElement, CoordElement]],
                   right: list[tuple[CoordElement, CoordElement]]) -> list[tuple[CoordElement, CoordElement]]:
    """{a1 (x) a2, b1 (x) b2} = {a1,b1} (x) a2 b2 + a1 b1 (x) {a2,b2}, extended bilinearly."""
    out = []
    for a1, a2 in left:
        for b1, b2 in right:
            out.append((ring.bracket(a1, b1), ring.mul(a2, b2)))
            out.append((ring.mul(a1, b1), ring.bracket(a2, b2)))
    return out


def evaluate_pair(pairs: list[tuple[CoordElement, CoordElement]], w1: Word, w2: Word) -> Fraction:
    return sum((a.evaluate(w1) * b.evaluate(w2) for a, b in pairs), ZERO)
