"""Irreducible highest-weight modules from Chevalley generators alone.

The module is grown one weight layer at a time below the highest weight.
A candidate vector ``f_i b`` is recorded through the images ``e_j f_i b``
in the layer above; since an irreducible module has no singular vectors
below the top, a vector vanishes exactly when all those images vanish.
This is the quotient of the (truncated) Verma module by the radical of
the contravariant form, computed layer by layer without forming the form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import ZERO, Echelon, SparseMatrix
from .rootdata import CartanDatum, Weight, wsub


class NotDominant(ValueError):
    pass


@dataclass(frozen=True)
class ChevalleyModule:
    """Weight basis, weights and e_i / f_i matrices of V(highest)."""

    cartan: CartanDatum
    highest: Weight
    weights: tuple[Weight, ...]
    e: tuple[SparseMatrix, ...]
    f: tuple[SparseMatrix, ...]

    @property
    def dim(self) -> int:
        return len(self.weights)


def build_chevalley_module(cd: CartanDatum, highest: Weight) -> ChevalleyModule:
    highest = tuple(Fraction(x) for x in highest)
    if not cd.is_dominant(highest):
        raise NotDominant(f"highest weight {highest} is not dominant integral")
    n = cd.n
    alpha = [cd.simple_root(i) for i in range(n)]

    # layer data: weight -> list of global basis indices
    spaces: dict[Weight, list[int]] = {highest: [0]}
    weights: list[Weight] = [highest]
    # sparse entries: e_entries[i][(row, col)] with col the source index
    e_entries: list[dict[tuple[int, int], Fraction]] = [dict() for _ in range(n)]
    f_entries: list[dict[tuple[int, int], Fraction]] = [dict() for _ in range(n)]

    def apply_f(i: int, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for col, c in vec.items():
            for (row, src), val in f_entries_by_col[i].get(col, {}).items():
                out[row] = out.get(row, ZERO) + c * val
        return {k: v for k, v in out.items() if v}

    def apply_e(j: int, index: int) -> dict[int, Fraction]:
        return dict(e_by_col[j].get(index, {}))

    f_entries_by_col: list[dict[int, dict[tuple[int, int], Fraction]]] = [dict() for _ in range(n)]
    e_by_col: list[dict[int, dict[int, Fraction]]] = [dict() for _ in range(n)]

    layer = [highest]
    while layer:
        targets: dict[Weight, list[tuple[int, int]]] = {}
        for mu in layer:
            for i in range(n):
                nu = wsub(mu, alpha[i])
                targets.setdefault(nu, [])
                for b in spaces[mu]:
                    targets[nu].append((i, b))
        next_layer = []
        for nu, candidates in targets.items():
            # images e_j x live in spaces[nu + alpha_j]
            blocks = []
            offset = 0
            for j in range(n):
                up = tuple(x + y for x, y in zip(nu, alpha[j]))
                basis_up = spaces.get(up, [])
                blocks.append((offset, {g: k for k, g in enumerate(basis_up)}))
                offset += len(basis_up)
            total = offset
            if total == 0:
                continue
            echelon = Echelon(total)
            chosen: list[tuple[tuple[int, int], list[Fraction]]] = []
            images = []
            for i, b in candidates:
                vec = [ZERO] * total
                for j in range(n):
                    start, local = blocks[j]
                    # e_j f_i b = f_i e_j b + delta_ij (nu + alpha_i)(h_i) b
                    contribution = apply_f(i, apply_e(j, b))
                    if i == j:
                        coeff = nu[i] + alpha[i][i]
                        if coeff:
                            contribution[b] = contribution.get(b, ZERO) + coeff
                    for g, val in contribution.items():
                        if val:
                            vec[start + local[g]] += val
                images.append(vec)
                if echelon.add(vec):
                    chosen.append(((i, b), vec))
            if not chosen:
                continue
            base = len(weights)
            indices = list(range(base, base + len(chosen)))
            spaces[nu] = indices
            weights.extend([nu] * len(chosen))
            next_layer.append(nu)
            # e_j on new basis vectors
            for k, (_, vec) in enumerate(chosen):
                g_new = base + k
                for j in range(n):
                    start, local = blocks[j]
                    col: dict[int, Fraction] = {}
                    for g, pos in local.items():
                        if vec[start + pos]:
                            col[g] = vec[start + pos]
                    if col:
                        e_by_col[j][g_new] = col
                        for g, val in col.items():
                            e_entries[j][(g, g_new)] = val
            # f_i on the layer above, expressed in the new basis
            for (i, b), vec in zip(candidates, images):
                coords = echelon.coordinates(vec)
                for k, c in enumerate(coords):
                    if c:
                        f_entries[i][(base + k, b)] = c
                        f_entries_by_col[i].setdefault(b, {})[(base + k, b)] = c
        layer = next_layer

    dim = len(weights)

    def to_sparse(entries: dict[tuple[int, int], Fraction]) -> SparseMatrix:
        columns = [[] for _ in range(dim)]
        for (row, col), val in sorted(entries.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            columns[col].append((row, val))
        return SparseMatrix(dim, dim, columns)

    return ChevalleyModule(
        cartan=cd,
        highest=highest,
        weights=tuple(weights),
        e=tuple(to_sparse(x) for x in e_entries),
        f=tuple(to_sparse(x) for x in f_entries),
    )
