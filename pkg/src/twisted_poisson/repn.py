"""Finite-dimensional weight modules of the twisted double.

Every module has a fixed ordered basis of weight vectors; dual vectors are
coordinate rows against that basis, so ``g_i(v_j) = delta_ij`` holds for the
standard coordinate functionals.  On a vector of weight nu the Cartan parts
act by h_lam -> (Phi_+ nu | lam) and k_lam -> -(Phi_- nu | lam), while root
vectors act exactly as in g.
"""

from __future__ import annotations

import itertools
import threading
from fractions import Fraction
from typing import Iterable, Sequence

from .chevalley import NotDominant, build_chevalley_module
from .linalg import ONE, ZERO, Echelon, SparseMatrix, identity
from .lincomb import LinComb
from .liealg import BasisVector, LieAlgebraD
from .report import CheckReport
from .rootdata import Weight, wadd, wneg, weyl_dimension

__all__ = [
    "NotDominant",
    "WeightAbsent",
    "WeightModule",
    "ModuleCatalog",
    "build_irrep",
    "dual_module",
    "tensor_module",
    "direct_sum",
    "right_dual_action",
    "coevaluation",
    "endomorphism_of",
    "image_algebra",
    "cyclic_span",
    "evaluate_word",
    "verify_module_relations",
    "verify_weyl_dimension",
    "verify_weight_symmetry",
    "verify_dual_pairing",
]


class WeightAbsent(ValueError):
    pass


def _negated_transpose(m: SparseMatrix) -> SparseMatrix:
    columns: list[list[tuple[int, Fraction]]] = [[] for _ in range(m.rows)]
    for j, col in enumerate(m.columns):
        for i, val in col:
            columns[i].append((j, -val))
    return SparseMatrix(m.cols, m.rows, columns)


def _kron_identity_left(m: SparseMatrix, n: int) -> SparseMatrix:
    """m (x) 1_n on the basis index i * n + j."""
    columns = []
    for c in range(m.cols):
        for j in range(n):
            columns.append([(i * n + j, val) for i, val in m.columns[c]])
    return SparseMatrix(m.rows * n, m.cols * n, columns)


def _kron_identity_right(n: int, m: SparseMatrix) -> SparseMatrix:
    """1_n (x) m on the basis index i * dim(m) + j."""
    columns = []
    for i in range(n):
        for c in range(m.cols):
            columns.append([(i * m.rows + r, val) for r, val in m.columns[c]])
    return SparseMatrix(n * m.rows, n * m.cols, columns)


def _sparse_add(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    columns = []
    for ca, cb in zip(a.columns, b.columns):
        acc: dict[int, Fraction] = {}
        for i, v in itertools.chain(ca, cb):
            acc[i] = acc.get(i, ZERO) + v
        columns.append(sorted((i, v) for i, v in acc.items() if v))
    return SparseMatrix(a.rows, a.cols, columns)


def _block_diag(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    columns = [list(c) for c in a.columns] + [[(a.rows + i, v) for i, v in c] for c in b.columns]
    return SparseMatrix(a.rows + b.rows, a.cols + b.cols, columns)


class WeightModule:
    """A weight-graded d-module with sparse action matrices for every basis vector of d.

    Modules compare by identity; build them through a :class:`ModuleCatalog`
    so that repeated tensor products and duals are shared.
    """

    def __init__(self, d: LieAlgebraD, weights: Sequence[Weight], actions: dict[BasisVector, SparseMatrix],
                 provenance: tuple, labels: Sequence[str] | None = None):
        self.d = d
        self.weights = tuple(tuple(Fraction(x) for x in w) for w in weights)
        self.actions = actions
        self.provenance = provenance
        self.labels = tuple(labels) if labels is not None else tuple(f"v{i}" for i in range(len(self.weights)))
        self.highest_index: int | None = None
        self.lowest_index: int | None = None

    @property
    def dim(self) -> int:
        return len(self.weights)

    def __repr__(self) -> str:
        return f"WeightModule({self.describe()}, dim={self.dim})"

    def describe(self) -> str:
        kind = self.provenance[0]
        if kind == "irrep":
            return "V(" + ",".join(str(x) for x in self.provenance[1]) + ")"
        if kind == "dual":
            return self.provenance[1].describe() + "*"
        if kind == "tensor":
            return "(" + self.provenance[1].describe() + " x " + self.provenance[2].describe() + ")"
        if kind == "sum":
            return "(" + " + ".join(m.describe() for m in self.provenance[1:]) + ")"
        return kind

    # -- grading

    def weight_space(self, mu: Weight) -> list[int]:
        mu = tuple(Fraction(x) for x in mu)
        return [i for i, w in enumerate(self.weights) if w == mu]

    def distinct_weights(self) -> list[Weight]:
        return sorted(set(self.weights), key=lambda w: tuple(-x for x in self.d.cartan.to_root_coords(w)))

    def vector_weight(self, v: Sequence[Fraction]) -> Weight | None:
        """Weight of a homogeneous vector, None when v is zero or mixed."""
        found = {self.weights[i] for i, x in enumerate(v) if x}
        return found.pop() if len(found) == 1 else None

    def dual_vector_weight(self, f: Sequence[Fraction]) -> Weight | None:
        w = self.vector_weight(f)
        return None if w is None else wneg(w)

    def basis_vector(self, i: int) -> list[Fraction]:
        v = [ZERO] * self.dim
        v[i] = ONE
        return v

    # -- action

    def act(self, x: BasisVector, v: Sequence[Fraction]) -> list[Fraction]:
        return self.actions[x].apply(v)

    def act_element(self, x: LinComb, v: Sequence[Fraction]) -> list[Fraction]:
        out = [ZERO] * self.dim
        for b, c in x.items():
            for i, val in enumerate(self.actions[b].apply(v)):
                if val:
                    out[i] += c * val
        return out

    def act_word(self, word: Sequence[BasisVector], v: Sequence[Fraction]) -> list[Fraction]:
        out = list(v)
        for x in reversed(tuple(word)):
            out = self.actions[x].apply(out)
        return out

    def right_act(self, f: Sequence[Fraction], x: BasisVector) -> list[Fraction]:
        """(f x)(y) = f(x y)."""
        return self.actions[x].apply_transpose(f)

    def dense(self, x: BasisVector) -> list[list[Fraction]]:
        return self.actions[x].to_dense()

    @property
    def generator_matrices(self) -> list[SparseMatrix]:
        return [self.actions[x] for x in self.d.generators]


def _cartan_actions(d: LieAlgebraD, weights: Sequence[Weight]) -> dict[BasisVector, SparseMatrix]:
    tf = d.twist
    out = {}
    for i in range(d.cartan.n):
        lam = d.cartan_weight(BasisVector("h", i))
        out[BasisVector("h", i)] = SparseMatrix.diagonal([tf.phi(1, nu, lam) for nu in weights])
        out[BasisVector("k", i)] = SparseMatrix.diagonal([-tf.phi(-1, nu, lam) for nu in weights])
    return out


def build_irrep(d: LieAlgebraD, highest: Weight) -> WeightModule:
    """V(highest) with the d-action; raises NotDominant for non-dominant input."""
    cd = d.cartan
    highest = tuple(Fraction(x) for x in highest)
    if not cd.is_dominant(highest):
        raise NotDominant(f"highest weight {highest} is not dominant integral")
    chev = build_chevalley_module(cd, highest)
    e = [m.to_dense() for m in chev.e]
    f = [m.to_dense() for m in chev.f]
    roots = d.g.root_matrices(e, f)
    actions = _cartan_actions(d, chev.weights)
    for k, mat in enumerate(roots):
        actions[BasisVector("x", k)] = SparseMatrix.from_dense(mat)
    labels = [f"v{i}" for i in range(chev.dim)]
    module = WeightModule(d, chev.weights, actions, ("irrep", highest), labels)
    module.highest_index = 0
    w0 = d.weyl.w0
    lowest = w0.apply(highest)
    module.lowest_index = module.weight_space(lowest)[0]
    return module


def dual_module(m: WeightModule) -> WeightModule:
    actions = {x: _negated_transpose(a) for x, a in m.actions.items()}
    out = WeightModule(m.d, [wneg(w) for w in m.weights], actions, ("dual", m), [l + "*" for l in m.labels])
    if m.highest_index is not None:
        out.highest_index, out.lowest_index = m.lowest_index, m.highest_index
    return out


def tensor_module(m: WeightModule, n: WeightModule) -> WeightModule:
    if m.d is not n.d:
        raise ValueError("modules over different algebras")
    actions = {
        x: _sparse_add(_kron_identity_left(m.actions[x], n.dim), _kron_identity_right(m.dim, n.actions[x]))
        for x in m.actions
    }
    weights = [wadd(a, b) for a in m.weights for b in n.weights]
    labels = [f"{a}.{b}" for a in m.labels for b in n.labels]
    return WeightModule(m.d, weights, actions, ("tensor", m, n), labels)


def direct_sum(*modules: WeightModule) -> WeightModule:
    if not modules:
        raise ValueError("empty direct sum")
    d = modules[0].d
    actions = {}
    for x in modules[0].actions:
        acc = modules[0].actions[x]
        for m in modules[1:]:
            acc = _block_diag(acc, m.actions[x])
        actions[x] = acc
    weights = [w for m in modules for w in m.weights]
    labels = [f"{k}:{l}" for k, m in enumerate(modules) for l in m.labels]
    return WeightModule(d, weights, actions, ("sum",) + tuple(modules), labels)


class ModuleCatalog:
    """Shares irreducibles, duals, tensor products and sums built over one algebra."""

    def __init__(self, d: LieAlgebraD):
        self.d = d
        self._lock = threading.RLock()
        self._irreps: dict[Weight, WeightModule] = {}
        self._duals: dict[int, WeightModule] = {}
        self._tensors: dict[tuple[int, int], WeightModule] = {}
        self._keep: list[WeightModule] = []
        self.trivial = self.irrep(d.cartan.zero())

    def irrep(self, highest: Weight) -> WeightModule:
        key = tuple(Fraction(x) for x in highest)
        with self._lock:
            if key not in self._irreps:
                self._irreps[key] = build_irrep(self.d, key)
            return self._irreps[key]

    def dual(self, m: WeightModule) -> WeightModule:
        with self._lock:
            if m.provenance[0] == "dual":
                return m.provenance[1]
            if id(m) not in self._duals:
                self._duals[id(m)] = dual_module(m)
                self._keep.append(m)
            return self._duals[id(m)]

    def tensor(self, m: WeightModule, n: WeightModule) -> WeightModule:
        key = (id(m), id(n))
        with self._lock:
            if key not in self._tensors:
                self._tensors[key] = tensor_module(m, n)
                self._keep.extend([m, n])
            return self._tensors[key]


# ---------------------------------------------------------------- dual vectors


def right_dual_action(m: WeightModule, f: Sequence[Fraction], x: BasisVector) -> list[Fraction]:
    """The right action (f x)(y) = f(x y) on M*."""
    return m.right_act(f, x)


def coevaluation(m: WeightModule, catalog: ModuleCatalog | None = None) -> tuple[WeightModule, list[Fraction]]:
    """zeta(1) = sum_i v_i (x) g_i as a vector of M (x) M*."""
    dual = catalog.dual(m) if catalog else dual_module(m)
    target = catalog.tensor(m, dual) if catalog else tensor_module(m, dual)
    vec = [ZERO] * target.dim
    for i in range(m.dim):
        vec[i * m.dim + i] = ONE
    return target, vec


def endomorphism_of(m: WeightModule, vec: Sequence[Fraction]) -> list[list[Fraction]]:
    """psi(v (x) g) = v g(.), as a matrix, for a vector of M (x) M*."""
    n = m.dim
    return [[Fraction(vec[i * n + j]) for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------- spans


def cyclic_span(m: WeightModule, vectors: Iterable[Sequence[Fraction]],
                operators: Sequence[SparseMatrix] | None = None) -> Echelon:
    """Smallest subspace containing ``vectors`` and stable under ``operators``
    (default: the generators of d, giving the U(d)-submodule)."""
    ops = operators if operators is not None else m.generator_matrices
    span = Echelon(m.dim)
    queue = []
    for v in vectors:
        if span.add(v):
            queue.append(list(v))
    while queue:
        v = queue.pop()
        for op in ops:
            w = op.apply(v)
            if any(w) and span.add(w):
                queue.append(w)
    return span


def image_algebra(m: WeightModule) -> list[list[list[Fraction]]]:
    """Basis of the unital algebra generated by the generator actions, closed
    under left multiplication by generators; returned in echelon order."""
    n = m.dim
    flat_identity = [x for row in identity(n) for x in row]
    ops = m.generator_matrices
    span = Echelon(n * n)
    span.add(flat_identity)
    queue = [identity(n)]
    while queue:
        a = queue.pop()
        columns = [[a[r][c] for r in range(n)] for c in range(n)]
        for op in ops:
            prod_cols = [op.apply(col) for col in columns]
            prod = [[prod_cols[c][r] for c in range(n)] for r in range(n)]
            flat = [x for row in prod for x in row]
            if any(flat) and span.add(flat):
                queue.append(prod)
    return [[vec[r * n:(r + 1) * n] for r in range(n)] for vec in span.basis]


def evaluate_word(m: WeightModule, word: Sequence[BasisVector], v: Sequence[Fraction]) -> list[Fraction]:
    return m.act_word(word, v)


# ---------------------------------------------------------------- checks


def verify_module_relations(m: WeightModule, label: str | None = None) -> CheckReport:
    """action([a,b]) = [action(a), action(b)] for every pair of basis vectors,
    plus the grading and Cartan eigenvalue invariants."""
    d = m.d
    report = CheckReport("module_relations")
    report.details["module"] = label or m.describe()
    dense = {x: m.actions[x].to_dense() for x in d.basis}
    n = m.dim

    def mul(a, b):
        return [[sum((a[i][k] * b[k][j] for k in range(n) if a[i][k] and b[k][j]), ZERO) for j in range(n)]
                for i in range(n)]

    products = {}
    for a, b in itertools.combinations(d.basis, 2):
        br = d.bracket_basis(a, b)
        lhs = [[ZERO] * n for _ in range(n)]
        for v, c in br.items():
            mat = dense[v]
            for i in range(n):
                for j in range(n):
                    if mat[i][j]:
                        lhs[i][j] += c * mat[i][j]
        ab = products.get((a, b)) or mul(dense[a], dense[b])
        ba = products.get((b, a)) or mul(dense[b], dense[a])
        rhs = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]
        report.record(lhs == rhs, pair=(d.tag(a), d.tag(b)))
    tf = d.twist
    for i, nu in enumerate(m.weights):
        for c in range(d.cartan.n):
            lam = d.cartan_weight(BasisVector("h", c))
            report.record(m.actions[BasisVector("h", c)].entry(i, i) == tf.phi(1, nu, lam), basis=i, check="h_eigen")
            report.record(m.actions[BasisVector("k", c)].entry(i, i) == -tf.phi(-1, nu, lam), basis=i, check="k_eigen")
        for k in range(len(d.roots.all_coords)):
            target = wadd(nu, d.roots.all_roots[k])
            ok = all(m.weights[r] == target for r, _ in m.actions[BasisVector("x", k)].columns[i])
            report.record(ok, basis=i, root=d.roots.label(k), check="grading_shift")
    return report


def verify_weyl_dimension(m: WeightModule) -> CheckReport:
    report = CheckReport("weyl_dimension")
    if m.provenance[0] == "irrep":
        expected = weyl_dimension(m.d.roots, m.provenance[1])
        report.record(expected == m.dim, module=m.describe(), expected=expected, got=m.dim)
    return report


def verify_weight_symmetry(m: WeightModule) -> CheckReport:
    """Weight multiplicities are invariant under the Weyl group."""
    from collections import Counter

    report = CheckReport("weight_symmetry")
    counts = Counter(m.weights)
    for w in m.d.weyl.elements:
        moved = Counter(w.apply(mu) for mu in m.weights)
        report.record(moved == counts, element=w.label())
    return report


def verify_dual_pairing(m: WeightModule, dual: WeightModule) -> CheckReport:
    """For f in (M*)_mu and x in M_nu with f(x) != 0, -mu = nu."""
    report = CheckReport("dual_pairing")
    for i in range(dual.dim):
        for j in range(m.dim):
            if i == j:
                report.record(wneg(dual.weights[i]) == m.weights[j], dual=i, vector=j)
    return report
