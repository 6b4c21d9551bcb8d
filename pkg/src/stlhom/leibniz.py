"""(Left) Leibniz algebras with exact structure constants, their low-degree
homology, and universal central extensions.

Conventions.  The bracket satisfies the (left) identity

    [x, [y, z]] = [[x, y], z] - [[x, z], y]

and the chain differentials on tensor powers are

    d2(x (x) y)       = -[x, y]
    d3(x (x) y (x) z) = -[x, y] (x) z + [x, z] (x) y + x (x) [y, z]

so HL_n = ker d_n / im d_(n+1) with d_1 = 0.

Carriers may have per-coordinate torsion ``moduli`` (0 = free coordinate);
equality of elements and the Leibniz identity are then read modulo those.
Chain-complex computations (boundary, homology_hl, uce) require a free
carrier.
"""

from __future__ import annotations

from .assoc import AssocAlgebra
from .domains import ScalarDomain
from .linalg import (ExactMatrix, SpanSolver, SubspaceBasis,
                     SubquotientInvariants, field_invariants, make_echelon,
                     make_forward, present_quotient, subquotient, vec_axpy,
                     z_invariants)


class LeibnizAlgebra:
    """A Leibniz algebra on dom^dim (possibly with torsion coordinates)."""

    __slots__ = ("dom", "dim", "labels", "table", "moduli", "name")

    def __init__(self, dom: ScalarDomain, dim: int, table: dict,
                 labels: list[str], moduli: list[int], name: str):
        self.dom = dom
        self.dim = dim
        self.table = table          # (i, j) -> sparse bracket vector
        self.labels = labels
        self.moduli = moduli
        self.name = name

    def __repr__(self):
        return f"LeibnizAlgebra({self.name}, dim={self.dim}, dom={self.dom.name})"

    def is_free_carrier(self) -> bool:
        return not any(self.moduli)

    def reduce_vec(self, v: dict) -> dict:
        """Canonicalize modulo the coordinate moduli, dropping zeros."""
        if not any(self.moduli):
            return v
        out = {}
        moduli = self.moduli
        for k, x in v.items():
            m = moduli[k]
            if m:
                x %= m
            if x:
                out[k] = x
        return out

    def basis_bracket(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def bracket(self, u: dict, v: dict) -> dict:
        dom = self.dom
        out: dict[int, object] = {}
        table = self.table
        for i, a in u.items():
            for j, b in v.items():
                w = table.get((i, j))
                if w:
                    vec_axpy(out, w, dom.mul(a, b), dom)
        return self.reduce_vec(out)

    def eq_vec(self, u: dict, v: dict) -> bool:
        if u == v:
            return True
        dom = self.dom
        diff = dict(u)
        vec_axpy(diff, v, dom.neg(dom.one), dom)
        return not self.reduce_vec(diff)

    def describe_element(self, v: dict) -> str:
        if not v:
            return "0"
        parts = []
        for k in sorted(v):
            c = v[k]
            lbl = self.labels[k]
            parts.append(lbl if c == self.dom.one else f"{c}*{lbl}")
        return " + ".join(parts)


class LeibnizIdentityError(ValueError):
    """The alleged bracket table violates the Leibniz identity."""

    def __init__(self, message, triple):
        super().__init__(message)
        self.triple = triple


def make_leibniz(dom: ScalarDomain, dim: int, table: dict,
                 labels: list[str] | None = None,
                 moduli: list[int] | None = None,
                 name: str = "leibniz") -> LeibnizAlgebra:
    """Validate a bracket table and wrap it as a ``LeibnizAlgebra``.

    The Leibniz identity is checked on every basis triple (modulo the
    carrier moduli); the first violation raises ``LeibnizIdentityError``
    with the witness triple.
    """
    if labels is None:
        labels = [f"e{i}" for i in range(dim)]
    if len(labels) != dim:
        raise ValueError("label count does not match dimension")
    if moduli is None:
        moduli = [0] * dim
    if len(moduli) != dim:
        raise ValueError("moduli length does not match dimension")

    clean: dict = {}
    for (i, j), vec in table.items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise ValueError(f"bracket index ({i},{j}) out of range")
        v = {}
        for k, c in vec.items():
            c = dom.normalize(c)
            if c:
                v[k] = c
        if v:
            clean[(i, j)] = v

    alg = LeibnizAlgebra(dom, dim, clean, labels, moduli, name)
    _check_leibniz_identity(alg)
    return alg


def _check_leibniz_identity(alg: LeibnizAlgebra) -> None:
    """Exhaustive check of [x,[y,z]] = [[x,y],z] - [[x,z],y] on basis triples.

    For a fixed (y, z) = (e_j, e_k), both sides vanish identically unless x
    brackets nontrivially with e_j, with e_k, or with the support of
    [e_j, e_k]; only those candidate x are visited.
    """
    dom, dim = alg.dom, alg.dim
    table = alg.table
    one = dom.one
    neg_one = dom.neg(one)
    byfirst: dict[int, dict[int, dict]] = {}
    bysecond: dict[int, set[int]] = {}
    for (i, j), w in table.items():
        byfirst.setdefault(i, {})[j] = w
        bysecond.setdefault(j, set()).add(i)
    empty_row: dict[int, dict] = {}
    empty_set: set[int] = set()

    for j in range(dim):
        row_j = byfirst.get(j, empty_row)
        hit_j = bysecond.get(j, empty_set)
        for k in range(dim):
            w = row_j.get(k)
            cand = set(hit_j)
            cand.update(bysecond.get(k, empty_set))
            if w:
                for t in w:
                    cand.update(bysecond.get(t, empty_set))
            for i in cand:
                lhs = alg.bracket({i: one}, w) if w else {}
                rhs: dict[int, object] = {}
                row_i = byfirst.get(i, empty_row)
                bij = row_i.get(j)
                if bij:
                    vec_axpy(rhs, alg.bracket(bij, {k: one}), one, dom)
                bik = row_i.get(k)
                if bik:
                    vec_axpy(rhs, alg.bracket(bik, {j: one}), neg_one, dom)
                rhs = alg.reduce_vec(rhs)
                if not alg.eq_vec(lhs, rhs):
                    lab = alg.labels
                    raise LeibnizIdentityError(
                        f"Leibniz identity fails at ({lab[i]}, {lab[j]}, "
                        f"{lab[k]}): [x,[y,z]] = {alg.describe_element(lhs)} "
                        f"but [[x,y],z] - [[x,z],y] = "
                        f"{alg.describe_element(rhs)}",
                        (i, j, k))


# ---------------------------------------------------------------------------
# matrix algebras gl_n(R) and sl_n(R)


class GlAlgebra(LeibnizAlgebra):
    """gl_n(R) on the basis E_ij(r_l), flat index (i*n + j)*dimR + l."""

    __slots__ = ("n", "ring")

    def eij_index(self, i: int, j: int, lam: int) -> int:
        return (i * self.n + j) * self.ring.dim + lam

    def eij(self, i: int, j: int, a: dict) -> dict:
        """E_ij(a) for a ring element a in coordinates."""
        base = (i * self.n + j) * self.ring.dim
        return {base + lam: c for lam, c in a.items()}


def build_gl(n: int, ring: AssocAlgebra) -> GlAlgebra:
    """The Leibniz (indeed Lie) algebra gl_n(R) via

    [E_ij(a), E_kl(b)] = delta_jk E_il(ab) - delta_li E_kj(ba).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    dom = ring.dom
    dr = ring.dim
    dim = n * n * dr

    def flat(i, j, lam):
        return (i * n + j) * dr + lam

    table: dict = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j != k and l != i:
                        continue
                    for lam in range(dr):
                        for mu in range(dr):
                            out: dict[int, object] = {}
                            if j == k:
                                for t, c in ring.basis_product(lam, mu).items():
                                    out[flat(i, l, t)] = c
                            if l == i:
                                for t, c in ring.basis_product(mu, lam).items():
                                    key = flat(k, j, t)
                                    cur = dom.sub(out.get(key, dom.zero), c)
                                    if cur:
                                        out[key] = cur
                                    else:
                                        out.pop(key, None)
                            if out:
                                table[(flat(i, j, lam), flat(k, l, mu))] = out

    labels = [f"E{i+1}{j+1}({ring.labels[lam]})"
              for i in range(n) for j in range(n) for lam in range(dr)]
    alg = GlAlgebra(dom, dim, table, labels, [0] * dim, f"gl{n}({ring.name})")
    alg.n = n
    alg.ring = ring
    _check_leibniz_identity(alg)
    return alg


class SlAlgebra(LeibnizAlgebra):
    """sl_n(R) = [gl, gl] in its own coordinates, with gl translation."""

    __slots__ = ("n", "ring", "gl", "basis", "_solver")

    def to_gl(self, v: dict) -> dict:
        out: dict[int, object] = {}
        for t, c in v.items():
            vec_axpy(out, self.basis[t], c, self.dom)
        return out

    def from_gl(self, glvec: dict) -> dict:
        coeffs = self._solver.solve(glvec)
        if coeffs is None:
            raise ValueError("vector does not lie in sl_n(R)")
        return coeffs

    def eij(self, i: int, j: int, a: dict) -> dict:
        """E_ij(a) in sl coordinates (off-diagonal: i != j)."""
        if i == j:
            raise ValueError("eij is for off-diagonal positions")
        return self.from_gl(self.gl.eij(i, j, a))


def build_sl(n: int, ring: AssocAlgebra) -> SlAlgebra:
    """sl_n(R) = span of all gl brackets, with its induced bracket.

    dim = (n^2 - 1) dim R + dim[R, R]; checked.
    """
    gl = build_gl(n, ring)
    dom = gl.dom
    span = SubspaceBasis(dom, gl.dim)
    for w in gl.table.values():
        span.add(w)
    basis = span.vectors()
    dim = len(basis)
    expected = (n * n - 1) * ring.dim + commutator_rank(ring)
    if dim != expected:
        raise AssertionError(
            f"dim sl{n}({ring.name}) = {dim}, expected {expected}")

    solver = SpanSolver(dom, gl.dim, basis)
    table: dict = {}
    for s in range(dim):
        for t in range(dim):
            w = gl.bracket(basis[s], basis[t])
            if not w:
                continue
            coeffs = solver.solve(w)
            if coeffs is None:
                raise AssertionError("sl bracket left the span")
            if coeffs:
                table[(s, t)] = coeffs

    labels = []
    for b in basis:
        lead = min(b)
        labels.append(f"<{gl.labels[lead]}>")
    # no separate identity check: sl is a bracket-closed subspace of the
    # validated gl, and each table entry is a solver-certified coordinate
    # vector of a gl bracket
    alg = SlAlgebra(dom, dim, table, labels, [0] * dim, f"sl{n}({ring.name})")
    alg.n = n
    alg.ring = ring
    alg.gl = gl
    alg.basis = basis
    alg._solver = solver
    return alg


def commutator_rank(ring: AssocAlgebra) -> int:
    from .assoc import commutator_span
    return commutator_span(ring).rank


# ---------------------------------------------------------------------------
# boundaries and homology


def _require_free(L: LeibnizAlgebra, what: str) -> None:
    if not L.is_free_carrier():
        raise ValueError(f"{what} needs a free carrier, but {L.name} has "
                         f"torsion moduli")


def iter_d3_columns(L: LeibnizAlgebra):
    """Yield (flat column index, sparse column) of d3 over the basis cube.

    Columns are produced in lexicographic (i, j, k) order; zero columns are
    skipped.  d3(e_i (x) e_j (x) e_k) =
    -[e_i,e_j] (x) e_k + [e_i,e_k] (x) e_j + e_i (x) [e_j,e_k].
    """
    dim = L.dim
    dom = L.dom
    zero, add, neg = dom.zero, dom.add, dom.neg
    byfirst: dict[int, dict[int, dict]] = {}
    for (i, j), w in L.table.items():
        byfirst.setdefault(i, {})[j] = w
    empty: dict[int, dict] = {}
    for i in range(dim):
        row_i = byfirst.get(i, empty)
        idim = i * dim
        for j in range(dim):
            bij = row_i.get(j)
            row_j = byfirst.get(j, empty)
            base = (idim + j) * dim
            for k in range(dim):
                bik = row_i.get(k)
                bjk = row_j.get(k)
                if not (bij or bik or bjk):
                    continue
                col: dict[int, object] = {}
                if bij:
                    for t, c in bij.items():
                        col[t * dim + k] = neg(c)
                if bik:
                    for t, c in bik.items():
                        key = t * dim + j
                        cur = add(col.get(key, zero), c)
                        if cur:
                            col[key] = cur
                        else:
                            col.pop(key, None)
                if bjk:
                    for t, c in bjk.items():
                        key = idim + t
                        cur = add(col.get(key, zero), c)
                        if cur:
                            col[key] = cur
                        else:
                            col.pop(key, None)
                if col:
                    yield base + k, col


def _column_applier(mat: ExactMatrix):
    """A fast sparse 'multiply by mat' keyed on the vector's support."""
    cols = mat.columns()
    dom = mat.dom

    def apply(vec: dict) -> dict:
        out: dict[int, object] = {}
        for j, x in vec.items():
            col = cols.get(j)
            if col:
                vec_axpy(out, col, x, dom)
        return out

    return apply


def boundary(L: LeibnizAlgebra, n: int) -> ExactMatrix:
    """The chain differential d_n as an ExactMatrix (n in {2, 3})."""
    _require_free(L, "boundary")
    dim = L.dim
    if n == 2:
        rows: dict[int, dict] = {}
        for (i, j), w in L.table.items():
            col = i * dim + j
            for k, c in w.items():
                rows.setdefault(k, {})[col] = L.dom.neg(c)
        return ExactMatrix(L.dom, dim, dim * dim, rows)
    if n == 3:
        rows = {}
        for col, vec in iter_d3_columns(L):
            for r, c in vec.items():
                rows.setdefault(r, {})[col] = c
        return ExactMatrix(L.dom, dim * dim, dim ** 3, rows)
    raise ValueError("boundary implemented for n in {2, 3}")


class HomologyReport:
    """Outcome of one homology computation."""

    __slots__ = ("algebra_name", "degree", "invariants", "dim_chain",
                 "rank_out", "rank_in", "square_zero_checked")

    def __init__(self, algebra_name, degree, invariants, dim_chain,
                 rank_out, rank_in, square_zero_checked):
        self.algebra_name = algebra_name
        self.degree = degree
        self.invariants = invariants
        self.dim_chain = dim_chain
        self.rank_out = rank_out          # rank of d_degree
        self.rank_in = rank_in            # rank of d_(degree+1)
        self.square_zero_checked = square_zero_checked

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra_name,
            "degree": self.degree,
            "invariants": self.invariants.describe(),
            "dimension": self.invariants.dimension,
            "invariant_factors": self.invariants.invariant_factors,
            "dim_chain": self.dim_chain,
            "rank_out": self.rank_out,
            "rank_in": self.rank_in,
            "square_zero_checked": self.square_zero_checked,
        }

    def __repr__(self):
        return (f"HomologyReport(HL_{self.degree}({self.algebra_name}) = "
                f"{self.invariants.describe()})")


def homology_hl(L: LeibnizAlgebra, degree: int) -> HomologyReport:
    """HL_degree(L) for degree in {1, 2}, by exact sparse elimination.

    Degree 2 streams the d3 columns straight into an echelon and verifies
    d2 . d3 = 0 column by column; over a field the homology dimension then
    needs only the two ranks, while over Z the kernel/image subquotient is
    presented and Smith-reduced.
    """
    _require_free(L, "homology")
    dom, dim = L.dom, L.dim
    d2 = boundary(L, 2)

    if degree == 1:
        # d1 = 0: HL_1 = L / im d2
        rank_in = d2.rank()
        if dom.is_field:
            inv = field_invariants(dom, dim - rank_in)
        else:
            units = [{i: 1} for i in range(dim)]
            inv = subquotient(units, list(d2.columns().values()), dim, dom)
        return HomologyReport(L.name, 1, inv, dim, 0, rank_in, True)

    if degree != 2:
        raise ValueError("homology_hl implemented for degrees 1 and 2")

    pair = dim * dim
    rank_d2 = d2.rank()
    apply_d2 = _column_applier(d2)
    img = (make_forward if dom.is_field else make_echelon)(dom, pair)
    for _col, vec in iter_d3_columns(L):
        if apply_d2(vec):
            raise AssertionError(
                f"d2 . d3 != 0 at column {_col}: boundary formulas disagree")
        img.insert(vec)
    rank_d3 = img.rank

    if dom.is_field:
        inv = field_invariants(dom, (pair - rank_d2) - rank_d3)
        return HomologyReport(L.name, 2, inv, pair, rank_d2, rank_d3, True)

    kernel = d2.kernel_basis()
    img_rows = img.row_dicts()
    inv = subquotient(kernel, [img_rows[p] for p in sorted(img_rows)],
                      pair, dom)
    return HomologyReport(L.name, 2, inv, pair, rank_d2, rank_d3, True)


# ---------------------------------------------------------------------------
# structural facts


class StructuralReport:
    __slots__ = ("algebra_name", "dim", "is_perfect", "center_rank",
                 "center_basis", "abelianization_dim")

    def __init__(self, algebra_name, dim, is_perfect, center_rank,
                 center_basis, abelianization_dim):
        self.algebra_name = algebra_name
        self.dim = dim
        self.is_perfect = is_perfect
        self.center_rank = center_rank
        self.center_basis = center_basis
        self.abelianization_dim = abelianization_dim

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra_name,
            "dim": self.dim,
            "is_perfect": self.is_perfect,
            "center_rank": self.center_rank,
            "abelianization_dim": self.abelianization_dim,
        }


def is_central(L: LeibnizAlgebra, v: dict) -> bool:
    """Does v bracket to zero (mod moduli) with every basis vector?"""
    one = L.dom.one
    for j in range(L.dim):
        ej = {j: one}
        if L.bracket(v, ej) or L.bracket(ej, v):
            return False
    return True


def bracket_span(L: LeibnizAlgebra) -> SubspaceBasis:
    """Span of [L, L] plus the moduli relations of a torsion carrier."""
    span = SubspaceBasis(L.dom, L.dim)
    for w in L.table.values():
        span.add(w)
    if not L.dom.is_field:
        for c, m in enumerate(L.moduli):
            if m:
                span.add({c: m})
    return span


def is_perfect(L: LeibnizAlgebra) -> bool:
    """Does [L, L] = L?  Over Z the span must be unimodular, not just full."""
    span = bracket_span(L)
    if span.rank != L.dim:
        return False
    if L.dom.is_field:
        return True
    rows = span.engine.rows
    return all(rows[p][p] == 1 for p in rows)


def structural_report(L: LeibnizAlgebra) -> StructuralReport:
    """Perfectness, two-sided center, and abelianization size.

    Over a torsion carrier 'perfect' means the brackets plus the moduli
    relations generate every coordinate, and centrality is read modulo the
    moduli (slack variables absorb multiples of each modulus).
    """
    dom, dim = L.dom, L.dim

    span = bracket_span(L)
    if dom.is_field:
        perfect = span.rank == dim
    else:
        rows = span.engine.rows
        perfect = (span.rank == dim
                   and all(rows[p][p] == 1 for p in rows))
    abel = dim - span.rank

    # center: [x, e_j] = 0 = [e_j, x] for all j, modulo moduli
    ncond = 2 * dim * dim
    slack: list[tuple[int, int]] = []   # (condition row, modulus)
    rows_m: dict[int, dict] = {}
    for i in range(dim):
        for j in range(dim):
            w = L.basis_bracket(i, j)
            for k, c in w.items():
                rows_m.setdefault(j * dim + k, {})[i] = c
            for k, c in L.basis_bracket(j, i).items():
                rows_m.setdefault(dim * dim + j * dim + k, {})[i] = c
    ncols = dim
    if not dom.is_field and any(L.moduli):
        for j in range(dim):
            for k, m in enumerate(L.moduli):
                if m:
                    rows_m.setdefault(j * dim + k, {})[ncols] = m
                    ncols += 1
                    rows_m.setdefault(dim * dim + j * dim + k, {})[ncols] = m
                    ncols += 1
    mat = ExactMatrix(dom, ncond, ncols, rows_m)
    center = SubspaceBasis(dom, dim)
    basis_out = []
    for v in mat.kernel_basis():
        x = L.reduce_vec({k: c for k, c in v.items() if k < dim})
        if x and center.add(x):
            basis_out.append(x)
    for x in basis_out:
        assert is_central(L, x), "center solve produced a non-central vector"
    return StructuralReport(L.name, dim, perfect, center.rank, basis_out, abel)


# ---------------------------------------------------------------------------
# universal central extensions


class CentralExtensionModel:
    """A central extension total -> base with kernel in the top coordinates.

    The projection is coordinate projection onto the first base.dim
    coordinates; kernel coordinates carry the listed invariants.  The
    universal model also knows how to map tensor classes to coordinates.
    """

    __slots__ = ("total", "base", "kernel_invariants", "tensor_coords",
                 "kernel_moduli")

    def __init__(self, total, base, kernel_invariants, tensor_coords,
                 kernel_moduli):
        self.total = total
        self.base = base
        self.kernel_invariants = kernel_invariants
        self.tensor_coords = tensor_coords
        self.kernel_moduli = kernel_moduli

    def project(self, v: dict) -> dict:
        bd = self.base.dim
        return {k: c for k, c in v.items() if k < bd}

    def kernel_part(self, v: dict) -> dict:
        bd = self.base.dim
        return {k - bd: c for k, c in v.items() if k >= bd}

    def check_homomorphism_on_basis(self) -> None:
        for (s, t), w in self.total.table.items():
            ps = self.project({s: self.total.dom.one})
            pt = self.project({t: self.total.dom.one})
            if not self.base.eq_vec(self.project(w), self.base.bracket(ps, pt)):
                raise AssertionError(
                    f"projection is not a homomorphism at ({s},{t})")

    def check_kernel_central(self) -> None:
        bd = self.base.dim
        for (s, t), w in self.total.table.items():
            if (s >= bd or t >= bd) and w:
                raise AssertionError(
                    f"kernel coordinate brackets nontrivially at ({s},{t})")


def uce(L: LeibnizAlgebra) -> CentralExtensionModel:
    """The universal central extension of a perfect Leibniz algebra.

    Model: (L (x) L)/im(d3) with bracket [u, v] = class(pi(u) (x) pi(v)),
    pi = -d2.  Coordinates are adapted: the first dim(L) coordinates map
    isomorphically onto L under pi (via chosen preimages), the rest present
    ker(pi) = HL_2(L), so the projection is literally [I | 0].
    """
    _require_free(L, "uce")
    dom, dim = L.dom, L.dim
    one = dom.one
    pair = dim * dim
    d2 = boundary(L, 2)
    apply_d2 = _column_applier(d2)

    # choose preimages w_s with pi(w_s) = e_s, streaming d2 columns until
    # they span (unimodularly, over Z)
    head = SubspaceBasis(dom, dim)
    colsolver = SpanSolver(dom, dim)
    colindex: list[int] = []
    cols = d2.columns()
    spanning = False
    for col in sorted(cols):
        vec = cols[col]
        colsolver.add(vec)
        colindex.append(col)
        head.add(vec)
        if head.rank == dim:
            if dom.is_field:
                spanning = True
                break
            rows = head.engine.rows
            if all(rows[p][p] == 1 for p in rows):
                spanning = True
                break
    if not spanning:
        raise ValueError(f"{L.name} is not perfect; uce undefined")

    neg_one = dom.neg(one)
    preimages: list[dict] = []
    for s in range(dim):
        coeffs = colsolver.solve({s: neg_one})   # d2 w_s = -e_s
        assert coeffs is not None
        w = {colindex[t]: c for t, c in coeffs.items()}
        preimages.append(w)

    # stream d3 (checking d2 . d3 = 0 on every column), then present
    # ker(d2)/im(d3)
    img = (make_forward if dom.is_field else make_echelon)(dom, pair)
    for _col, vec in iter_d3_columns(L):
        if apply_d2(vec):
            raise AssertionError("d2 . d3 != 0; boundary formulas disagree")
        img.insert(vec)

    if dom.is_field:
        rank_d2 = d2.rank()
        m = (pair - rank_d2) - img.rank
        moduli = [0] * m
        invariants = field_invariants(dom, m)
        if m == 0:
            def kernel_coords(v: dict) -> dict:
                return {}
        else:
            # representatives: residuals of kernel vectors under the
            # canonical off-pivot projection; m independent ones suffice
            reps: list[dict] = []
            probe = make_forward(dom, pair)
            rep_solver = SpanSolver(dom, pair)
            for v in d2.kernel_basis():
                vbar, _mult = img.reduce_tracked(v)
                if vbar and probe.insert(vbar) is not None:
                    rep_solver.add(vbar)
                    reps.append(vbar)
                    if len(reps) == m:
                        break
            if len(reps) != m:
                raise AssertionError("kernel projection lost rank")

            def kernel_coords(v: dict) -> dict:
                vbar, mult = img.reduce_tracked(v)
                if not vbar:
                    return {}
                coeffs = rep_solver.solve(vbar)
                if coeffs is None:
                    raise AssertionError("vector escaped ker(d2)/im(d3)")
                if mult != 1:
                    scale = dom.inv(dom.normalize(mult))
                    coeffs = {i: dom.mul(c, scale) for i, c in coeffs.items()}
                return coeffs
    else:
        kernel = d2.kernel_basis()
        ksolver = SpanSolver(dom, pair, kernel)
        k = len(kernel)
        coeff_cols = []
        img_rows = img.row_dicts()
        for p in sorted(img_rows):
            c = ksolver.solve(img_rows[p])
            if c is None:
                raise AssertionError("im(d3) escaped ker(d2)")
            coeff_cols.append(c)
        pres = present_quotient(coeff_cols, k, dom)
        m = pres.dim
        moduli = list(pres.moduli)
        factors = sorted(d for d in moduli if d)
        factors += [0] * sum(1 for d in moduli if not d)
        invariants = z_invariants(factors)

        def kernel_coords(v: dict) -> dict:
            c = ksolver.solve(v)
            if c is None:
                raise AssertionError("vector escaped ker(d2)")
            return pres.coords(c)

    def tensor_coords(v: dict) -> dict:
        """Coordinates of the class of a tensor v in the adapted basis."""
        a = apply_d2(v)
        out = {s: dom.neg(c) for s, c in a.items()}    # pi(v) = -d2(v)
        if out:
            v = dict(v)
            for s, c in out.items():
                vec_axpy(v, preimages[s], dom.neg(c), dom)
        for i, c in kernel_coords(v).items():
            if c:
                out[dim + i] = c
        return out

    # bracket table on the adapted basis: only base-base pairs can be nonzero
    total_dim = dim + m
    table: dict = {}
    for s in range(dim):
        for t in range(dim):
            base_br = L.basis_bracket(s, t)
            entry = dict(base_br)
            if m:
                v = {s * dim + t: one}
                for u, c in base_br.items():
                    vec_axpy(v, preimages[u], dom.neg(c), dom)
                for i, c in kernel_coords(v).items():
                    if c:
                        entry[dim + i] = c
            if entry:
                table[(s, t)] = entry

    labels = list(L.labels) + [f"z{i}" for i in range(m)]
    total_moduli = [0] * dim + moduli
    if m:
        total = make_leibniz(dom, total_dim, table, labels=labels,
                             moduli=total_moduli, name=f"uce({L.name})")
    else:
        # trivial kernel: the table equals L's, whose identity is established
        total = LeibnizAlgebra(dom, total_dim, table, labels, total_moduli,
                               f"uce({L.name})")
    model = CentralExtensionModel(total, L, invariants, tensor_coords, moduli)
    model.check_homomorphism_on_basis()
    model.check_kernel_central()
    return model
