"""Almost complex structures and the eigenspace splitting of the bracket.

An almost complex structure J (rational matrix with J^2 = -I) splits the
complexification of the algebra into +i and -i eigenspaces.  The splitting
carries the complexified structure constants organized by type sector, which
drives every flatness criterion in this package.  Each criterion that admits
two independent characterizations evaluates both and insists they agree; a
disagreement raises immediately instead of returning a guess.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .lie import LieAlgebra, Subspace, center, is_two_step
from .linalg import ExactMatrix, inverse
from .scalars import GaussianRational, I, ONE, ZERO, gaussian

__all__ = [
    "AdaptedConstants",
    "AlmostComplexStructure",
    "ComplexSplitting",
    "Verdict",
    "split",
    "nijenhuis",
    "is_chern_flat",
    "is_qk_chern_flat",
    "check_center_j_invariant",
    "two_step_certificate",
    "reframed_constants",
]


class AlmostComplexStructure:
    """A rational matrix J with J^2 = -I acting on a real algebra."""

    __slots__ = ("j",)

    def __init__(self, j: ExactMatrix):
        if not j.is_square():
            raise ValueError("J must be square")
        if j.rows % 2 != 0:
            raise ValueError("J needs even dimension")
        if not j.is_real():
            raise ValueError("J must have rational entries")
        if j * j != -ExactMatrix.identity(j.rows):
            raise ValueError("J^2 = -I fails")
        self.j = j

    @property
    def dim(self) -> int:
        return self.j.rows

    def apply(self, v) -> tuple:
        return self.j.matvec(v)

    @classmethod
    def standard(cls, n: int) -> "AlmostComplexStructure":
        """Block structure sending e_k to e_{k+n/2} for k < n/2."""
        if n % 2 != 0:
            raise ValueError("standard structure needs even dimension")
        m = n // 2
        cols = []
        for k in range(m):
            col = [ZERO] * n
            col[m + k] = ONE
            cols.append(col)
        for k in range(m):
            col = [ZERO] * n
            col[k] = -ONE
            cols.append(col)
        return cls(ExactMatrix.from_columns(cols))

    def __eq__(self, other):
        if not isinstance(other, AlmostComplexStructure):
            return NotImplemented
        return self.j == other.j

    def __repr__(self):
        return f"AlmostComplexStructure(dim={self.dim})"


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome plus a witness locating the first failure."""

    ok: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


class ComplexSplitting:
    """Eigenspace data of (g, J): frames, sectors, complexified constants.

    The +i eigenvectors are Z_k = x_k - i J x_k for a deterministic rational
    basis {x_k} chosen greedily so that {x_k, J x_k} is a real basis.  The
    combined frame is (Z_1..Z_m, conj Z_1..conj Z_m); structure constants are
    stored for combined index pairs alpha < beta as coefficient vectors in
    that frame.
    """

    __slots__ = ("g", "acs", "m", "real_basis", "onezero", "combined", "combined_inv", "constants", "_dtheta")

    def __init__(self, g: LieAlgebra, acs: AlmostComplexStructure):
        if g.field != "Q":
            raise ValueError("splitting requires a real (field 'Q') algebra")
        if acs.dim != g.dim:
            raise ValueError("J dimension does not match the algebra")
        n = g.dim
        m = n // 2
        from .linalg import _Echelon

        ech = _Echelon(n)
        chosen = []
        for idx in range(n):
            if len(chosen) == m:
                break
            e = [ZERO] * n
            e[idx] = ONE
            before = ech.rank()
            ech.add({idx: ONE})
            if ech.rank() == before:
                continue
            je = acs.apply(e)
            mid = ech.rank()
            ech.add({c: v for c, v in enumerate(je) if v})
            if ech.rank() == mid:
                raise AssertionError("greedy eigenbasis extension failed; J is not a complex structure on Q^n")
            chosen.append(tuple(e))
        if len(chosen) != m:
            raise AssertionError("could not complete an adapted real basis")

        onezero = []
        for x in chosen:
            jx = acs.apply(x)
            onezero.append(tuple(gaussian(a) - I * b for a, b in zip(x, jx)))
        combined = ExactMatrix.from_columns(
            [list(z) for z in onezero] + [[c.conjugate() for c in z] for z in onezero]
        )
        combined_inv = inverse(combined)

        self.g = g
        self.acs = acs
        self.m = m
        self.real_basis = chosen
        self.onezero = onezero
        self.combined = combined
        self.combined_inv = combined_inv
        self._dtheta = None

        for z in onezero:
            jz = acs.j.matvec(z)
            iz = tuple(I * c for c in z)
            if jz != iz:
                raise AssertionError("eigenvector check failed: J Z != i Z")

        constants = {}
        basis_vectors = [combined.column(alpha) for alpha in range(n)]
        for alpha in range(n):
            for beta in range(alpha + 1, n):
                v = g.bracket(basis_vectors[alpha], basis_vectors[beta])
                constants[(alpha, beta)] = combined_inv.matvec(v)
        self.constants = constants

    # -- frame bookkeeping ---------------------------------------------------

    @property
    def dim(self) -> int:
        return self.g.dim

    def to_combined(self, v) -> tuple:
        """Coordinates of a (complexified) vector in the combined frame."""
        return self.combined_inv.matvec(v)

    def from_combined(self, coeffs) -> tuple:
        return self.combined.matvec(coeffs)

    def combined_bracket(self, alpha: int, beta: int) -> tuple:
        if alpha == beta:
            return tuple([ZERO] * self.dim)
        if alpha < beta:
            return self.constants[(alpha, beta)]
        return tuple(-c for c in self.constants[(beta, alpha)])

    # -- sector views --------------------------------------------------------

    def c_pp(self, a: int, b: int) -> tuple:
        """[Z_a, Z_b] in combined coordinates (antisymmetric in a, b)."""
        return self.combined_bracket(a, b)

    def c_pp_01(self, a: int, b: int) -> tuple:
        """(0,1)-components of [Z_a, Z_b]: the coefficients on conj Z_k."""
        return self.combined_bracket(a, b)[self.m :]

    def c_pp_10(self, a: int, b: int) -> tuple:
        return self.combined_bracket(a, b)[: self.m]

    def c_pm(self, a: int, bbar: int) -> tuple:
        """[Z_a, conj Z_bbar] in combined coordinates."""
        return self.combined_bracket(a, self.m + bbar)

    def c_mm(self, abar: int, bbar: int) -> tuple:
        return self.combined_bracket(self.m + abar, self.m + bbar)

    def sector_relations_qk(self) -> Verdict:
        """Mixed sector vanishes and (1,0)x(1,0) brackets land in (0,1)."""
        m = self.m
        for a in range(m):
            for b in range(m):
                if any(self.c_pm(a, b)):
                    return Verdict(False, ("mixed-bracket", a, b))
        for a in range(m):
            for b in range(a + 1, m):
                if any(self.c_pp_10(a, b)):
                    return Verdict(False, ("holomorphic-component", a, b))
        return Verdict(True)

    def complexified_algebra(self) -> LieAlgebra:
        """The complexified algebra in the combined frame, over Q(i)."""
        table = {
            pair: {k: c for k, c in enumerate(vec) if c}
            for pair, vec in self.constants.items()
        }
        return LieAlgebra(self.dim, table, field="Qi")


def split(g: LieAlgebra, acs: AlmostComplexStructure) -> ComplexSplitting:
    """Split the complexified algebra into J-eigenspaces."""
    return ComplexSplitting(g, acs)


class AdaptedConstants:
    """Holomorphic-sector structure constants, detached from the real algebra.

    For a pair with the quasi-Kaehler sector shape the only nonzero constants
    are the coefficients of [Z_i, Z_j] on the conjugate frame, so this table
    determines the pair completely.  Frame changes and normal-form reductions
    accept it in place of a full splitting, which keeps repeated reframing
    loops cheap: no doubled real algebra is rebuilt along the way.

    The quadratic closure relations (the Jacobi identity specialized to this
    shape) are enforced eagerly; tables violating them are rejected.
    """

    __slots__ = ("m", "_rows", "_full")

    def __init__(self, m: int, table: Mapping):
        self._install(m, table)
        bad = self._closure_defect()
        if bad is not None:
            raise ValueError(
                "constants violate the quadratic closure relations at "
                f"(i, j, k, l) = {bad}; no Lie algebra has this adapted table"
            )

    def _install(self, m: int, table: Mapping):
        rows = {}
        for (i, j), row in table.items():
            if not (0 <= i < j < m):
                raise ValueError(f"constants key ({i}, {j}) must satisfy 0 <= i < j < m")
            vec = [ZERO] * m
            for k, c in row.items():
                if not 0 <= k < m:
                    raise ValueError(f"constants target index {k} out of range")
                vec[k] = gaussian(c)
            if any(vec):
                rows[(i, j)] = tuple(vec)
        zero_row = tuple([ZERO] * m)
        full = [[zero_row] * m for _ in range(m)]
        for (i, j), vec in rows.items():
            full[i][j] = vec
            full[j][i] = tuple(-c for c in vec)
        self.m = m
        self._rows = rows
        self._full = full

    def _closure_defect(self):
        m = self.m
        full = self._full
        conj_rows = [
            [tuple(c.conjugate() for c in full[r][k]) for k in range(m)] for r in range(m)
        ]
        for (i, j), cij in self._rows.items():
            nonzero = [(r, cij[r]) for r in range(m) if cij[r]]
            for k in range(m):
                for l in range(m):
                    acc = ZERO
                    for r, cr in nonzero:
                        d = conj_rows[r][k][l]
                        if d:
                            acc = acc + cr * d
                    if acc:
                        return (i, j, k, l)
        return None

    @classmethod
    def from_splitting(cls, s: ComplexSplitting) -> "AdaptedConstants":
        qk = s.sector_relations_qk()
        if not qk:
            raise ValueError(
                f"adapted constants need the quasi-Kaehler sector shape; witness {qk.witness}"
            )
        m = s.m
        table = {}
        for a in range(m):
            for b in range(a + 1, m):
                row = {k: c for k, c in enumerate(s.c_pp_01(a, b)) if c}
                if row:
                    table[(a, b)] = row
        return cls(m, table)

    @classmethod
    def reframed(cls, base: "AdaptedConstants", frame: ExactMatrix) -> "AdaptedConstants":
        """The same pair expressed in the holomorphic frame W = Z.frame.

        An invertible frame change preserves the closure relations, so the
        result inherits validity from base and the quadratic check is not
        repeated; this keeps long scramble/reduce loops cheap.
        """
        if not isinstance(base, AdaptedConstants):
            raise TypeError("reframed expects an AdaptedConstants base")
        out = object.__new__(cls)
        out._install(base.m, reframed_constants(base, frame))
        return out

    def c_pp_01(self, a: int, b: int) -> tuple:
        return self._full[a][b]

    def sector_relations_qk(self) -> Verdict:
        return Verdict(True)

    def table(self) -> dict:
        """Plain {(i, j): {k: coeff}} copy of the nonzero constants."""
        return {
            pair: {k: c for k, c in enumerate(vec) if c}
            for pair, vec in self._rows.items()
        }

    def __eq__(self, other):
        if not isinstance(other, AdaptedConstants):
            return NotImplemented
        return self.m == other.m and self._rows == other._rows

    def __repr__(self):
        return f"AdaptedConstants(m={self.m}, nonzero_pairs={len(self._rows)})"


def nijenhuis(g: LieAlgebra, acs: AlmostComplexStructure, s: Optional[ComplexSplitting] = None) -> dict:
    """Nijenhuis tensor values N(e_i, e_j) for i < j; empty dict means zero.

    N(X,Y) = [JX, JY] - [X, Y] - J[JX, Y] - J[X, JY].  Vanishing is
    cross-checked against the splitting criterion ([10-sector brackets stay in
    the +i eigenspace]); disagreement raises.
    """
    n = g.dim
    values = {}
    for i in range(n):
        ei = [ZERO] * n
        ei[i] = ONE
        jei = acs.apply(ei)
        for j in range(i + 1, n):
            ej = [ZERO] * n
            ej[j] = ONE
            jej = acs.apply(ej)
            term = g.bracket(jei, jej)
            term = tuple(
                t - b - jc - jd
                for t, b, jc, jd in zip(
                    term,
                    g.basis_bracket(i, j),
                    acs.apply(g.bracket(jei, ej)),
                    acs.apply(g.bracket(ei, jej)),
                )
            )
            if any(term):
                values[(i, j)] = term
    s = s or split(g, acs)
    splitting_zero = all(
        not any(s.c_pp_01(a, b)) for a in range(s.m) for b in range(a + 1, s.m)
    )
    if splitting_zero != (not values):
        raise AssertionError("Nijenhuis formula and eigenspace criterion disagree")
    return values


def is_chern_flat(
    g: LieAlgebra, acs: AlmostComplexStructure, s: Optional[ComplexSplitting] = None
) -> Verdict:
    """Mixed-sector flatness, checked through both characterizations.

    (a) every [Z_a, conj Z_b] vanishes; (b) [J e_i, e_j] = [e_i, J e_j] for
    all basis pairs (the diagonal pair encodes [J x, x] = 0).  Both are
    evaluated; disagreement raises.
    """
    s = s or split(g, acs)
    verdict_a = Verdict(True)
    for a in range(s.m):
        for b in range(s.m):
            if any(s.c_pm(a, b)):
                verdict_a = Verdict(False, ("mixed-bracket", a, b))
                break
        if not verdict_a:
            break
    verdict_b = Verdict(True)
    n = g.dim
    for i in range(n):
        ei = [ZERO] * n
        ei[i] = ONE
        jei = acs.apply(ei)
        for j in range(i, n):
            ej = [ZERO] * n
            ej[j] = ONE
            left = g.bracket(jei, ej)
            right = g.bracket(ei, acs.apply(ej))
            if left != right:
                verdict_b = Verdict(False, ("basis-pair", i, j))
                break
        if not verdict_b:
            break
    if verdict_a.ok != verdict_b.ok:
        raise AssertionError("Chern-flat characterizations disagree; internal inconsistency")
    return verdict_b if not verdict_b.ok else verdict_a


def is_qk_chern_flat(
    g: LieAlgebra, acs: AlmostComplexStructure, s: Optional[ComplexSplitting] = None
) -> Verdict:
    """Quasi-Kaehler Chern-flatness, via three equivalent conditions.

    (1) sector relations: mixed brackets vanish and (1,0)x(1,0) brackets land
        in the (0,1) eigenspace;
    (2) the differential of every (1,0)-coframe element has no (2,0) and no
        (1,1) component;
    (3) J[X,Y] = -[JX,Y] = -[X,JY] on all basis pairs.
    All three run on every call and must agree.
    """
    s = s or split(g, acs)
    v1 = s.sector_relations_qk()

    from .forms import coframe_element, exterior_d  # deferred: forms builds on this module

    v2 = Verdict(True)
    for k in range(s.m):
        d = exterior_d(s, coframe_element(s.m, s.m, k))
        if not d.component(2, 0).is_zero():
            v2 = Verdict(False, ("coframe-d-20", k))
            break
        if not d.component(1, 1).is_zero():
            v2 = Verdict(False, ("coframe-d-11", k))
            break

    v3 = Verdict(True)
    n = g.dim
    for i in range(n):
        ei = [ZERO] * n
        ei[i] = ONE
        jei = acs.apply(ei)
        for j in range(n):
            ej = [ZERO] * n
            ej[j] = ONE
            w = g.basis_bracket(i, j)
            lhs = acs.apply(w)
            rhs = tuple(-c for c in g.bracket(jei, ej))
            if lhs != rhs:
                v3 = Verdict(False, ("basis-pair", i, j))
                break
        if not v3:
            break

    if not (v1.ok == v2.ok == v3.ok):
        raise AssertionError("quasi-Kaehler Chern-flat characterizations disagree")
    for v in (v1, v2, v3):
        if not v.ok:
            return v
    return Verdict(True)


def check_center_j_invariant(
    g: LieAlgebra, acs: AlmostComplexStructure, s: Optional[ComplexSplitting] = None
) -> bool:
    """J-invariance of the center; requires a Chern-flat pair."""
    if not is_chern_flat(g, acs, s):
        raise ValueError("center J-invariance check requires a Chern-flat pair")
    z = center(g)
    return all(z.contains(acs.apply(v)) for v in z.basis)


def two_step_certificate(s: ComplexSplitting) -> bool:
    """Quadratic vanishing certificate for 2-step nilpotency.

    For each (i, j, k, l) the contraction over r of c_{ij}^{rbar} with the
    conjugate constants c_{rbar kbar}^{l} must vanish; the verdict is
    cross-checked against the lower central series of the real algebra.
    """
    qk = s.sector_relations_qk()
    if not qk:
        raise ValueError(f"certificate requires quasi-Kaehler sector relations; witness {qk.witness}")
    m = s.m
    relations = True
    for i in range(m):
        for j in range(i + 1, m):
            cij = s.c_pp_01(i, j)
            for k in range(m):
                for l in range(m):
                    acc = ZERO
                    for r in range(m):
                        if cij[r]:
                            crk = s.c_pp_01(r, k)[l]
                            if crk:
                                acc = acc + cij[r] * crk.conjugate()
                    if acc:
                        relations = False
                        break
                if not relations:
                    break
            if not relations:
                break
        if not relations:
            break
    series_two_step = is_two_step(s.g)
    if relations != series_two_step:
        raise AssertionError("quadratic certificate and lower central series disagree")
    return relations and series_two_step


def reframed_constants(s, frame: ExactMatrix) -> dict:
    """Holomorphic-sector constants after the (1,0)-frame change W = Z.frame.

    frame is an invertible m x m matrix whose column i expresses the new
    frame vector W_i in terms of the current holomorphic frame.  s may be a
    ComplexSplitting or an AdaptedConstants table.  Requires the quasi-Kaehler
    sector shape, so the only data is [W_i, W_j] expressed on the conjugate
    frame; returns {(i, j): {k: coeff}} for i < j.
    """
    qk = s.sector_relations_qk()
    if not qk:
        raise ValueError("frame change of holomorphic constants requires quasi-Kaehler sector shape")
    m = s.m
    if frame.rows != m or frame.cols != m:
        raise ValueError("frame matrix must be m x m")
    g_inv = inverse(frame.conj())
    rows = [[s.c_pp_01(a, b) for b in range(m)] for a in range(m)]
    cols = [[frame.entry(a, i) for a in range(m)] for i in range(m)]
    out = {}
    for i in range(m):
        col_i = cols[i]
        for j in range(i + 1, m):
            col_j = cols[j]
            tmp = [ZERO] * m
            for a in range(m):
                fa = col_i[a]
                if not fa:
                    continue
                row_a = rows[a]
                for b in range(m):
                    if a == b:
                        continue
                    fb = col_j[b]
                    if not fb:
                        continue
                    cab = row_a[b]
                    coeff = fa * fb
                    for k in range(m):
                        if cab[k]:
                            tmp[k] = tmp[k] + coeff * cab[k]
            vec = {}
            for l in range(m):
                acc = ZERO
                for k in range(m):
                    if tmp[k]:
                        acc = acc + g_inv.entry(l, k) * tmp[k]
                if acc:
                    vec[l] = acc
            if vec:
                out[(i, j)] = vec
    return out
