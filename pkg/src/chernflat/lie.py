"""Finite-dimensional Lie algebras given by exact structure constants.

The bracket tensor is stored sparsely for basis pairs (i, j) with i < j only;
antisymmetry supplies the rest.  Indices are 0-based throughout the library
(file formats use 1-based indices and convert at the boundary).  Construction
eagerly validates the Jacobi identity and reports every violating triple.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .linalg import ExactMatrix, kernel_from_rows, rank_of_rows
from .scalars import GaussianRational, ZERO, gaussian

__all__ = [
    "LieAlgebra",
    "JacobiError",
    "Subspace",
    "jacobi_defect",
    "lower_central_series",
    "derived_subalgebra",
    "center",
    "nilpotency_step",
    "is_two_step",
]


class JacobiError(ValueError):
    """Structure constants that fail the Jacobi identity."""

    def __init__(self, defects):
        self.defects = defects
        triples = ", ".join(str(tuple(i + 1 for i in t)) for t, _ in defects[:4])
        more = "" if len(defects) <= 4 else f" (+{len(defects) - 4} more)"
        super().__init__(f"Jacobi identity fails on basis triples {triples}{more}")


def _clean_brackets(dim: int, raw: Mapping) -> dict:
    table: dict = {}
    for (i, j), out in raw.items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise ValueError(f"bracket pair ({i}, {j}) out of range for dimension {dim}")
        if i >= j:
            raise ValueError(f"bracket pair ({i}, {j}) must satisfy i < j")
        vec = {}
        for k, coeff in out.items():
            if not (0 <= k < dim):
                raise ValueError(f"bracket target index {k} out of range for dimension {dim}")
            c = gaussian(coeff)
            if c:
                vec[k] = c
        if vec:
            table[(i, j)] = vec
    return table


class LieAlgebra:
    """A Lie algebra over Q or Q(i), validated at construction time."""

    __slots__ = ("dim", "field", "brackets")

    def __init__(self, dim: int, brackets: Mapping, field: str = "Q"):
        if dim < 1:
            raise ValueError("dimension must be positive")
        if field not in ("Q", "Qi"):
            raise ValueError(f"unknown scalar field tag {field!r}")
        table = _clean_brackets(dim, brackets)
        if field == "Q":
            for (i, j), vec in table.items():
                for k, c in vec.items():
                    if not c.is_real():
                        raise ValueError(
                            f"field 'Q' requires rational structure constants; "
                            f"c[{i},{j}]^{k} = {c} is not real"
                        )
        self.dim = dim
        self.field = field
        self.brackets = table
        defects = jacobi_defect(dim, table)
        if defects:
            raise JacobiError(defects)

    # -- bracket evaluation --------------------------------------------------

    def structure_constant(self, i: int, j: int, k: int) -> GaussianRational:
        if i == j:
            return ZERO
        if i < j:
            return self.brackets.get((i, j), {}).get(k, ZERO)
        return -self.brackets.get((j, i), {}).get(k, ZERO)

    def basis_bracket(self, i: int, j: int) -> tuple:
        """[e_i, e_j] as a coordinate tuple."""
        out = [ZERO] * self.dim
        if i == j:
            return tuple(out)
        if i < j:
            for k, c in self.brackets.get((i, j), {}).items():
                out[k] = c
        else:
            for k, c in self.brackets.get((j, i), {}).items():
                out[k] = -c
        return tuple(out)

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        """Bilinear extension of the bracket to coordinate vectors."""
        xv = [gaussian(a) for a in x]
        yv = [gaussian(a) for a in y]
        if len(xv) != self.dim or len(yv) != self.dim:
            raise ValueError("vector length must match the algebra dimension")
        out = [ZERO] * self.dim
        for (i, j), vec in self.brackets.items():
            coeff = xv[i] * yv[j] - xv[j] * yv[i]
            if coeff:
                for k, c in vec.items():
                    out[k] = out[k] + coeff * c
        return tuple(out)

    def ad(self, x: Sequence) -> ExactMatrix:
        """Matrix of ad_x = [x, .] in the standard basis."""
        cols = []
        for j in range(self.dim):
            ej = [ZERO] * self.dim
            ej[j] = gaussian(1)
            cols.append(self.bracket(x, ej))
        return ExactMatrix.from_columns(cols)

    def basis_ad(self, i: int) -> ExactMatrix:
        ei = [ZERO] * self.dim
        ei[i] = gaussian(1)
        return self.ad(ei)

    def is_abelian(self) -> bool:
        return not self.brackets

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.field == other.field
            and self.brackets == other.brackets
        )

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, field={self.field!r}, nonzero_pairs={len(self.brackets)})"


def jacobi_defect(dim: int, brackets: Mapping) -> list:
    """All basis triples (i, j, k) where the Jacobi cyclic sum is nonzero.

    Accepts a raw bracket table (validated and cleaned first) so candidate
    tensors can be screened without constructing a LieAlgebra.
    """
    table = _clean_brackets(dim, brackets)

    def pair(i, j):
        if i < j:
            return table.get((i, j), {})
        return {k: -c for k, c in table.get((j, i), {}).items()}

    defects = []
    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(j + 1, dim):
                acc = {}
                for (a, b), c_idx in (((i, j), k), ((j, k), i), ((k, i), j)):
                    for r, c in pair(a, b).items():
                        for s, d in pair(r, c_idx).items():
                            cur = acc.get(s, ZERO) + c * d
                            if cur:
                                acc[s] = cur
                            else:
                                acc.pop(s, None)
                if acc:
                    vec = [ZERO] * dim
                    for s, v in acc.items():
                        vec[s] = v
                    defects.append(((i, j, k), tuple(vec)))
    return defects


class Subspace:
    """A subspace of coordinate space with a canonical reduced basis.

    The stored basis is the reduced row-echelon basis of the span (pivots
    scaled to 1, sorted by pivot column), so two Subspace objects are equal
    iff they describe the same subspace.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, vectors: Sequence[Sequence]):
        from .linalg import _Echelon  # internal engine

        ech = _Echelon(ambient_dim)
        for v in vectors:
            vv = [gaussian(a) for a in v]
            if len(vv) != ambient_dim:
                raise ValueError("vector length must match ambient dimension")
            ech.add({c: a for c, a in enumerate(vv) if a})
        rows = []
        for c in sorted(ech.pivot_rows):
            row = ech.pivot_rows[c]
            piv = row[c]
            vec = [ZERO] * ambient_dim
            for cc, vv in row.items():
                vec[cc] = vv / piv
            rows.append(tuple(vec))
        self.ambient_dim = ambient_dim
        self.basis = rows

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        vv = [gaussian(a) for a in v]
        if len(vv) != self.ambient_dim:
            raise ValueError("vector length must match ambient dimension")
        rows = [{c: a for c, a in enumerate(b) if a} for b in self.basis]
        rows.append({c: a for c, a in enumerate(vv) if a})
        return rank_of_rows(self.ambient_dim, rows) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.ambient_dim})"


def lower_central_series(g: LieAlgebra) -> list:
    """Terms g ⊇ [g, g] ⊇ [[g, g], g] ⊇ ... until stabilization."""
    full = [tuple(gaussian(1) if i == j else ZERO for i in range(g.dim)) for j in range(g.dim)]
    series = [Subspace(g.dim, full)]
    current = series[0]
    while True:
        generated = []
        for v in current.basis:
            # images[j] accumulates [v, e_j] in one sweep over the sparse table
            images = [None] * g.dim
            for (i, j), vec in g.brackets.items():
                vi = v[i]
                if vi:
                    row = images[j]
                    if row is None:
                        row = images[j] = [ZERO] * g.dim
                    for k, c in vec.items():
                        row[k] = row[k] + vi * c
                vj = v[j]
                if vj:
                    row = images[i]
                    if row is None:
                        row = images[i] = [ZERO] * g.dim
                    for k, c in vec.items():
                        row[k] = row[k] - vj * c
            for row in images:
                if row is not None and any(row):
                    generated.append(tuple(row))
        nxt = Subspace(g.dim, generated)
        series.append(nxt)
        if nxt.dim == current.dim:
            break
        if nxt.dim == 0:
            break
        current = nxt
    return series


def derived_subalgebra(g: LieAlgebra) -> Subspace:
    return lower_central_series(g)[1]


def center(g: LieAlgebra) -> Subspace:
    """Kernel of the stacked adjoint: {x : [x, e_j] = 0 for all j}."""
    rows = []
    for j in range(g.dim):
        for k in range(g.dim):
            row = {}
            for i in range(g.dim):
                c = g.structure_constant(i, j, k)
                if c:
                    row[i] = c
            if row:
                rows.append(row)
    return Subspace(g.dim, kernel_from_rows(g.dim, rows))


def nilpotency_step(g: LieAlgebra) -> int | None:
    """Smallest s with the (s+1)-th lower central term zero, or None."""
    series = lower_central_series(g)
    if series[-1].dim != 0:
        return None
    return len(series) - 1


def is_two_step(g: LieAlgebra) -> bool:
    """True when [[g, g], g] = 0 (abelian algebras included)."""
    step = nilpotency_step(g)
    return step is not None and step <= 2
