"""Normal forms and frame-independent invariants for flat two-step pairs.

The classification machinery works on the holomorphic frame of a splitting
with the quasi-Kaehler sector shape.  Two families admit constructive normal
forms:

  * complex dimension 4: every such non-abelian pair can be reframed so the
    only constant is c_{12} = 1 on the third conjugate direction (a counting
    argument on the center forces the bracket image to span a single
    direction, which the algorithm verifies rather than assumes);
  * complex center of dimension 1: the bracket degenerates to a skew pairing
    on a complement of the center, and a Darboux-style reduction reframes it
    so every generator pair has constant 1 on the last conjugate direction.

Every normal-form routine finishes by recomputing the constants in the frame
it produced and asserting they equal the advertised target exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .acs import AdaptedConstants, AlmostComplexStructure, ComplexSplitting, reframed_constants, split
from .lie import LieAlgebra, center, derived_subalgebra, is_two_step, lower_central_series
from .linalg import ExactMatrix, _Echelon, inverse, kernel_basis, kernel_from_rows, random_invertible, rank
from .scalars import GaussianRational, ONE, ZERO, gaussian

__all__ = [
    "NormalFormError",
    "NormalFormResult",
    "darboux_frame",
    "skew_to_all_ones",
    "dim4_normal_form",
    "center_one_normal_form",
    "normal_form",
    "complex_center_dimension",
    "Fingerprint",
    "fingerprint",
    "random_frame_scramble",
]


class NormalFormError(ValueError):
    """Input outside the family a normal-form routine classifies."""


@dataclass(frozen=True)
class NormalFormResult:
    """A frame realizing a normal form, with the constants it achieves.

    frame columns express the new holomorphic frame in the splitting's
    Z-frame; constants are the recomputed structure constants in that frame
    (coefficients on the conjugate directions), already verified against the
    target shape.
    """

    kind: str
    frame: ExactMatrix
    constants: dict
    parameters: dict


# -- skew bilinear reduction -------------------------------------------------


def _skew_value(omega: ExactMatrix, x, y) -> GaussianRational:
    acc = ZERO
    for a, xa in enumerate(x):
        if not xa:
            continue
        for b, yb in enumerate(y):
            if yb:
                v = omega.entry(a, b)
                if v:
                    acc = acc + xa * v * yb
    return acc


def darboux_frame(omega: ExactMatrix):
    """Basis (u1, w1, .., uk, wk, kernel...) with omega(u_t, w_t) = 1.

    Returns (T, k) where the columns of T are the basis vectors and k is the
    number of hyperbolic pairs; in that basis the form is the standard block
    of k unit pairs followed by zeros.
    """
    if not omega.is_square():
        raise ValueError("skew form matrix must be square")
    r = omega.rows
    if omega.transpose() != -omega:
        raise ValueError("matrix is not skew-symmetric")
    remaining = []
    for t in range(r):
        v = [ZERO] * r
        v[t] = ONE
        remaining.append(v)
    pairs = []
    while True:
        found = None
        for a in range(len(remaining)):
            for b in range(a + 1, len(remaining)):
                val = _skew_value(omega, remaining[a], remaining[b])
                if val:
                    found = (a, b, val)
                    break
            if found:
                break
        if not found:
            break
        a, b, val = found
        u = remaining[a]
        w = [c / val for c in remaining[b]]
        pairs.extend([u, w])
        rest = []
        for t, x in enumerate(remaining):
            if t in (a, b):
                continue
            cu = _skew_value(omega, w, x)
            cw = _skew_value(omega, u, x)
            rest.append([xc + cu * uc - cw * wc for xc, uc, wc in zip(x, u, w)])
        remaining = rest
    cols = pairs + remaining
    t_mat = ExactMatrix.from_columns(cols)
    return t_mat, len(pairs) // 2


def _all_ones_upper(r: int) -> ExactMatrix:
    return ExactMatrix(
        [[ONE if a < b else (-ONE if a > b else ZERO) for b in range(r)] for a in range(r)]
    )


def skew_to_all_ones(omega: ExactMatrix) -> ExactMatrix:
    """T with T^t omega T having every above-diagonal entry equal to 1.

    Requires a nondegenerate skew form of even size.
    """
    r = omega.rows
    if r % 2 != 0:
        raise NormalFormError("skew form of odd size cannot be nondegenerate")
    t1, k1 = darboux_frame(omega)
    if 2 * k1 != r:
        raise NormalFormError("skew form is degenerate")
    target = _all_ones_upper(r)
    t2, k2 = darboux_frame(target)
    if 2 * k2 != r:
        raise AssertionError("all-ones target form should be nondegenerate")
    t_mat = t1 * inverse(t2)
    achieved = t_mat.transpose() * omega * t_mat
    if achieved != target:
        raise AssertionError("skew reduction failed to reach the target form")
    return t_mat


# -- center computations -----------------------------------------------------


def _holomorphic_center_kernel(s: ComplexSplitting):
    """Kernel vectors of a -> [sum a_i Z_i, Z_j] over all (j, target)."""
    m = s.m
    rows = []
    for j in range(m):
        for k in range(m):
            row = {}
            for i in range(m):
                if i == j:
                    continue
                c = s.c_pp_01(i, j)[k]
                if c:
                    row[i] = c
            if row:
                rows.append(row)
    return kernel_from_rows(m, rows)


def _intersection_dim(basis1, basis2) -> int:
    if not basis1 or not basis2:
        return 0
    cols = [list(v) for v in basis1] + [[-c for c in v] for v in basis2]
    stacked = ExactMatrix.from_columns(cols)
    return len(kernel_basis(stacked))


def complex_center_dimension(s: ComplexSplitting) -> int:
    """Complex dimension of the center's holomorphic part.

    Computed from the holomorphic-frame kernel and cross-checked against the
    real center intersected with its image under the structure; the two
    methods must agree.
    """
    qk = s.sector_relations_qk()
    if not qk:
        raise ValueError("holomorphic center computation requires the quasi-Kaehler sector shape")
    kern = _holomorphic_center_kernel(s)
    z_real = center(s.g)
    j_images = [s.acs.apply(v) for v in z_real.basis]
    inter = _intersection_dim(z_real.basis, j_images)
    if 2 * len(kern) != inter:
        raise AssertionError("holomorphic and real center computations disagree")
    return len(kern)


# -- dimension-4 normal form -------------------------------------------------


def _frame_rank(cols) -> int:
    return rank(ExactMatrix.from_columns([list(c) for c in cols]))


def dim4_normal_form(s) -> NormalFormResult:
    """Reframe a non-abelian flat two-step pair of complex dimension 4.

    s may be a ComplexSplitting or an AdaptedConstants table.  Output
    constants are exactly {(0, 1): {2: 1}}: one bracket, coefficient one,
    landing on the third conjugate direction, fourth direction central.
    """
    if s.m != 4:
        raise NormalFormError("this normal form applies to complex dimension 4")
    if not s.sector_relations_qk():
        raise NormalFormError("normal form requires the quasi-Kaehler sector shape")
    if isinstance(s, ComplexSplitting) and not is_two_step(s.g):
        raise NormalFormError("normal form requires a two-step algebra")
    view = s if isinstance(s, AdaptedConstants) else AdaptedConstants.from_splitting(s)
    m = 4
    nonzero = []
    for i in range(m):
        for j in range(i + 1, m):
            vec = view.c_pp_01(i, j)
            if any(vec):
                nonzero.append(((i, j), vec))
    if not nonzero:
        raise NormalFormError("abelian algebra has no normal form in this family")

    conj_images = [[c.conjugate() for c in vec] for _, vec in nonzero]
    if rank(ExactMatrix.from_columns(conj_images)) != 1:
        raise NormalFormError("bracket image spans more than one direction; preconditions violated")

    (i, j), vec = nonzero[0]
    w1 = [ONE if t == i else ZERO for t in range(m)]
    w2 = [ONE if t == j else ZERO for t in range(m)]
    w3 = [c.conjugate() for c in vec]
    fourth = None
    for r in range(m):
        if r in (i, j):
            continue
        cand = [ONE if t == r else ZERO for t in range(m)]
        if _frame_rank([w1, w2, w3, cand]) == 4:
            fourth = cand
            break
    if fourth is None:
        raise AssertionError("could not complete the frame; central direction missing")

    frame0 = ExactMatrix.from_columns([w1, w2, w3, fourth])
    inter = AdaptedConstants.reframed(view, frame0)
    c0 = inter.table()
    if c0.get((0, 1)) != {2: ONE}:
        raise AssertionError("conjugate-image substitution did not normalize the leading bracket")
    for key, row in c0.items():
        if 2 in (key[0], key[1]) and row:
            raise AssertionError("third frame direction is not central")
        if set(row) - {2}:
            raise AssertionError("bracket image left the expected direction")
    alpha = c0.get((0, 3), {}).get(2, ZERO)
    beta = c0.get((1, 3), {}).get(2, ZERO)
    shear = [
        [ONE, ZERO, ZERO, beta],
        [ZERO, ONE, ZERO, -alpha],
        [ZERO, ZERO, ONE, ZERO],
        [ZERO, ZERO, ZERO, ONE],
    ]
    shear_mat = ExactMatrix(shear)
    frame = frame0 * shear_mat
    final = AdaptedConstants.reframed(inter, shear_mat).table()
    if final != {(0, 1): {2: ONE}}:
        raise AssertionError("final constants do not match the normal form target")
    return NormalFormResult("dim4", frame, final, {})


# -- center-one normal form --------------------------------------------------


def center_one_normal_form(s) -> NormalFormResult:
    """Reframe a flat two-step pair whose complex center has dimension 1.

    s may be a ComplexSplitting or an AdaptedConstants table.  Output
    constants are exactly {(i, j): {n-1: 1}} for all i < j < n-1: every pair
    of the 2k non-central directions brackets onto the last conjugate
    direction with coefficient one.
    """
    if not s.sector_relations_qk():
        raise NormalFormError("normal form requires the quasi-Kaehler sector shape")
    if isinstance(s, ComplexSplitting) and not is_two_step(s.g):
        raise NormalFormError("normal form requires a two-step algebra")
    view = s if isinstance(s, AdaptedConstants) else AdaptedConstants.from_splitting(s)
    m = s.m
    kern = _holomorphic_center_kernel(view)
    if len(kern) != 1:
        raise NormalFormError(
            f"complex center dimension is {len(kern)}, this normal form needs exactly 1"
        )
    gen = list(kern[0])
    lead = next(t for t, c in enumerate(gen) if c)
    gen = [c / gen[lead] for c in gen]

    ech = _Echelon(m)
    ech.add({t: c for t, c in enumerate(gen) if c})
    complement = []
    for t in range(m):
        if len(complement) == m - 1:
            break
        before = ech.rank()
        ech.add({t: ONE})
        if ech.rank() > before:
            complement.append([ONE if u == t else ZERO for u in range(m)])
    if len(complement) != m - 1:
        raise AssertionError("could not complete the center generator to a frame")

    frame0 = ExactMatrix.from_columns(complement + [gen])
    inter = AdaptedConstants.reframed(view, frame0)
    omega_entries = [[ZERO] * (m - 1) for _ in range(m - 1)]
    for (a, b), row in inter.table().items():
        if m - 1 in (a, b):
            if row:
                raise AssertionError("center generator is not central in the new frame")
            continue
        extra = set(row) - {m - 1}
        if extra:
            raise AssertionError("derived algebra is not contained in the center direction")
        v = row.get(m - 1, ZERO)
        omega_entries[a][b] = v
        omega_entries[b][a] = -v
    omega = ExactMatrix(omega_entries)
    t_mat = skew_to_all_ones(omega)

    block = [
        [t_mat.entry(a, b) if a < m - 1 and b < m - 1 else (ONE if a == b else ZERO) for b in range(m)]
        for a in range(m)
    ]
    block_mat = ExactMatrix(block)
    frame = frame0 * block_mat
    final = AdaptedConstants.reframed(inter, block_mat).table()
    target = {(a, b): {m - 1: ONE} for a in range(m - 1) for b in range(a + 1, m - 1)}
    if final != target:
        raise AssertionError("final constants do not match the normal form target")
    return NormalFormResult("center_one", frame, final, {"pairs": (m - 1) // 2})


def normal_form(g: LieAlgebra, acs: AlmostComplexStructure, s: Optional[ComplexSplitting] = None) -> NormalFormResult:
    """Dispatch to the applicable normal form; raises NormalFormError outside."""
    s = s or split(g, acs)
    if not s.sector_relations_qk():
        raise NormalFormError("normal forms require the quasi-Kaehler sector shape")
    if g.is_abelian():
        raise NormalFormError("abelian algebras are their own normal form; nothing to do")
    if s.m == 4:
        return dim4_normal_form(s)
    kern = _holomorphic_center_kernel(s)
    if len(kern) == 1:
        return center_one_normal_form(s)
    raise NormalFormError(
        f"no constructive normal form for complex dimension {s.m} with complex center dimension {len(kern)}"
    )


# -- invariants --------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    """Frame-independent invariants of (algebra, optional structure)."""

    dim: int
    center_dim: int
    derived_dim: int
    lower_central_dims: tuple
    center_meet_derived: int
    complex_center_dim: Optional[int] = None
    qk_sectors: Optional[bool] = None
    torsion_free: Optional[bool] = None

    def as_tuple(self) -> tuple:
        return (
            self.dim,
            self.center_dim,
            self.derived_dim,
            self.lower_central_dims,
            self.center_meet_derived,
            self.complex_center_dim,
            self.qk_sectors,
            self.torsion_free,
        )


def fingerprint(g: LieAlgebra, acs: Optional[AlmostComplexStructure] = None) -> Fingerprint:
    """Invariants preserved by isomorphisms (and J-equivariant ones)."""
    z = center(g)
    d = derived_subalgebra(g)
    series = lower_central_series(g)
    meet = _intersection_dim(z.basis, d.basis)
    if acs is None:
        return Fingerprint(g.dim, z.dim, d.dim, tuple(t.dim for t in series), meet)
    s = split(g, acs)
    qk = bool(s.sector_relations_qk())
    torsion_free = all(
        not any(s.c_pp_01(a, b)) for a in range(s.m) for b in range(a + 1, s.m)
    )
    complex_center = complex_center_dimension(s) if qk else None
    return Fingerprint(
        g.dim,
        z.dim,
        d.dim,
        tuple(t.dim for t in series),
        meet,
        complex_center,
        qk,
        torsion_free,
    )


def random_frame_scramble(g: LieAlgebra, acs: AlmostComplexStructure, rng, span: int = 2):
    """Rebuild the pair from its constants in a random holomorphic frame.

    Returns (g2, acs2, frame); the frame is an invertible complex matrix and
    the new pair is isomorphic to the input through it.  Requires the
    quasi-Kaehler sector shape.
    """
    from .constructions import from_holomorphic_constants

    s = split(g, acs)
    frame = random_invertible(s.m, rng, complex_entries=True, span=span)
    constants = reframed_constants(s, frame)
    g2, acs2 = from_holomorphic_constants(s.m, constants)
    return g2, acs2, frame
