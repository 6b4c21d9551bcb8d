"""Sparse exact linear algebra over F_p, Q and Z.

Vectors are dicts ``{column: scalar}`` with no explicit zeros.  The work
horses are three fully-reduced echelon engines sharing one duck-typed API:

* ``F2Echelon``   -- GF(2); rows are Python ints used as bitmasks.
* ``FieldEchelon``-- any ``ScalarDomain`` with ``is_field``; dict rows with
                     pivot entry normalized to 1.
* ``HermiteBasis``-- integer row lattices in Hermite form (pivots positive,
                     extended-gcd insertion; entries above pivots reduced on
                     ``normalize()``).

"Fully reduced" means a stored row has no support at any *other* pivot
column.  That invariant is what keeps streaming insertion cheap: reducing an
incoming vector only ever touches the pivots present in the original vector,
because eliminations introduce support at non-pivot columns only.

On top of the engines: right kernels, Smith normal form with optional
unimodular row transforms, and invariants of subquotients span(K)/span(I).
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm

from .domains import ScalarDomain, Z as _ZDOM


def lsb(mask: int) -> int:
    """Index of the least significant set bit of a nonzero mask."""
    return (mask & -mask).bit_length() - 1


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(a, b) = x*a + y*b`` and ``g >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


# ---------------------------------------------------------------------------
# sparse vector helpers


def vec_axpy(dst: dict, src: dict, c, dom: ScalarDomain) -> None:
    """In-place ``dst += c * src`` with zero dropping (c must be nonzero)."""
    if dom.p is not None:
        p = dom.p
        for k, x in src.items():
            val = (dst.get(k, 0) + c * x) % p
            if val:
                dst[k] = val
            elif k in dst:
                del dst[k]
    else:
        for k, x in src.items():
            val = dst.get(k, 0) + c * x
            if val:
                dst[k] = val
            elif k in dst:
                del dst[k]


def vec_scale(v: dict, c, dom: ScalarDomain) -> dict:
    if not c:
        return {}
    return {k: dom.mul(c, x) for k, x in v.items()}


def vec_combine(u: dict, v: dict, cu: int, cv: int) -> dict:
    """Integer combination ``cu*u + cv*v`` as a fresh dict."""
    out = {k: cu * x for k, x in u.items()} if cu else {}
    for k, x in v.items():
        val = out.get(k, 0) + cv * x
        if val:
            out[k] = val
        elif k in out:
            del out[k]
    return out


def mask_of(v: dict) -> int:
    """GF(2) bitmask of a dict vector (coefficients taken mod 2)."""
    m = 0
    for k, x in v.items():
        if x & 1:
            m |= 1 << k
    return m


def dict_of_mask(m: int) -> dict:
    out = {}
    while m:
        j = lsb(m)
        out[j] = 1
        m &= m - 1
    return out


# ---------------------------------------------------------------------------
# echelon engines


class F2Echelon:
    """Fully reduced row echelon over GF(2), rows stored as int bitmasks."""

    __slots__ = ("width", "rows", "_pivunion")

    def __init__(self, width: int):
        self.width = width
        self.rows: dict[int, int] = {}   # pivot column -> mask
        self._pivunion = 0               # OR of all pivot bits

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def reduce_mask(self, m: int) -> int:
        rows = self.rows
        while True:
            hit = m & self._pivunion
            if not hit:
                return m
            m ^= rows[lsb(hit)]

    def insert_mask(self, m: int) -> int | None:
        """Add a row; return its new pivot column, or None if dependent."""
        m = self.reduce_mask(m)
        if not m:
            return None
        j = lsb(m)
        bit = 1 << j
        rows = self.rows
        for p in rows:
            if rows[p] & bit:
                rows[p] ^= m
        rows[j] = m
        self._pivunion |= bit
        return j

    # dict-vector facade so all engines interoperate
    def insert(self, v: dict) -> int | None:
        return self.insert_mask(mask_of(v))

    def reduce(self, v: dict) -> dict:
        return dict_of_mask(self.reduce_mask(mask_of(v)))

    def row_dicts(self) -> dict[int, dict]:
        return {p: dict_of_mask(m) for p, m in self.rows.items()}


class FieldEchelon:
    """Fully reduced row echelon over a field, rows as sparse dicts.

    Stored rows have their pivot coefficient equal to 1 and no support at any
    other pivot column.
    """

    __slots__ = ("dom", "width", "rows")

    def __init__(self, dom: ScalarDomain, width: int):
        if not dom.is_field:
            raise TypeError("FieldEchelon needs a field domain")
        self.dom = dom
        self.width = width
        self.rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        rows = self.rows
        dom = self.dom
        # eliminations only add support at non-pivot columns, so one snapshot
        # of the pivot hits suffices
        for j in [j for j in v if j in rows]:
            c = v.get(j)
            if c:
                vec_axpy(v, rows[j], dom.neg(c), dom)
        return v

    def insert(self, v: dict) -> int | None:
        v = self.reduce(v)
        if not v:
            return None
        j = min(v)
        dom = self.dom
        c = v[j]
        if c != dom.one:
            inv = dom.inv(c)
            v = {k: dom.mul(inv, x) for k, x in v.items()}
        rows = self.rows
        for p in rows:
            r = rows[p]
            cc = r.get(j)
            if cc:
                vec_axpy(r, v, dom.neg(cc), dom)
        rows[j] = v
        return j

    def row_dicts(self) -> dict[int, dict]:
        return self.rows


class HermiteBasis:
    """Basis of an integer row lattice, maintained in Hermite echelon form.

    Pivot entries are positive; each pivot column is minimal in its row.
    ``reduce`` performs floor-division reduction, so a vector belongs to the
    lattice iff its residual is empty.  ``normalize()`` additionally reduces
    entries above each pivot into ``[0, pivot)`` (canonical form).
    """

    __slots__ = ("width", "rows")

    def __init__(self, width: int):
        self.width = width
        self.rows: dict[int, dict] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def insert(self, v: dict) -> int | None:
        """Grow the lattice by ``v``; return a new pivot column or None."""
        v = {k: x for k, x in v.items() if x}
        rows = self.rows
        while v:
            j = min(v)
            r = rows.get(j)
            if r is None:
                if v[j] < 0:
                    v = {k: -x for k, x in v.items()}
                rows[j] = v
                return j
            a = r[j]
            b = v[j]
            q, rem = divmod(b, a)
            if rem == 0:
                vec_axpy(v, r, -q, _ZDOM)
                continue
            g, x, y = xgcd(a, b)
            # Unimodular 2x2 update: span{r, v} is preserved, the new pivot
            # row has leading entry g, the companion has leading entry 0.
            rows[j] = vec_combine(r, v, x, y)
            v = vec_combine(r, v, -(b // g), a // g)
        return None

    def reduce(self, v: dict) -> dict:
        """Floor-reduce ``v`` by the lattice; empty residual iff member."""
        v = {k: x for k, x in v.items() if x}
        rows = self.rows
        out = {}
        while v:
            j = min(v)
            r = rows.get(j)
            if r is not None:
                q = v[j] // r[j]
                if q:
                    vec_axpy(v, r, -q, _ZDOM)
            if j in v:
                out[j] = v.pop(j)
        return out

    def normalize(self) -> None:
        """Reduce entries above pivots so the basis is canonical Hermite."""
        rows = self.rows
        for j in sorted(rows):
            d = rows[j][j]
            for p, r in rows.items():
                if p == j:
                    continue
                c = r.get(j)
                if c is not None:
                    q = c // d
                    if q:
                        vec_axpy(r, rows[j], -q, _ZDOM)

    def row_dicts(self) -> dict[int, dict]:
        return self.rows


def make_echelon(dom: ScalarDomain, width: int):
    """Pick the right echelon engine for a domain."""
    if dom.name == "f2":
        return F2Echelon(width)
    if dom.is_field:
        return FieldEchelon(dom, width)
    return HermiteBasis(width)


# ---------------------------------------------------------------------------
# forward-only streaming echelons
#
# Without back-reduction a stored row may contain other rows' pivot columns,
# so stored rows are not canonical -- but the *residual* of reduce() is:
# it carries no pivot column at all, and v = (row-span part) + (off-pivot
# part) is a direct-sum decomposition once one row per pivot exists.  That
# canonical projection is all that rank counts, quotient representatives,
# and coordinate extraction need, and skipping back-reduction avoids the
# catastrophic mid-phase fill of a fully reduced form on large streams.


class F2Forward:
    """Forward-only echelon over GF(2) on int bitmasks."""

    __slots__ = ("width", "rows", "_pivunion")

    def __init__(self, width: int):
        self.width = width
        self.rows: dict[int, int] = {}
        self._pivunion = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce_mask(self, m: int) -> int:
        rows = self.rows
        pu = self._pivunion
        while True:
            hit = m & pu
            if not hit:
                return m
            # xor clears the lowest pivot bit; it may toggle higher pivot
            # bits on, but the lowest hit strictly increases, so this stops
            m ^= rows[lsb(hit)]

    def insert_mask(self, m: int) -> int | None:
        m = self.reduce_mask(m)
        if not m:
            return None
        j = lsb(m)
        self.rows[j] = m
        self._pivunion |= 1 << j
        return j

    def insert(self, v: dict) -> int | None:
        return self.insert_mask(mask_of(v))

    def reduce_tracked(self, v: dict) -> tuple[dict, object]:
        return dict_of_mask(self.reduce_mask(mask_of(v))), 1


class FpForward:
    """Forward-only echelon mod a prime, rows as dicts with pivot coeff 1."""

    __slots__ = ("p", "width", "rows")

    def __init__(self, p: int, width: int):
        self.p = p
        self.width = width
        self.rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        rows = self.rows
        p = self.p
        cand = [j for j in v if j in rows]
        heapq.heapify(cand)
        while cand:
            hit = heapq.heappop(cand)
            if hit not in v:
                continue
            c = v[hit]
            for k, x in rows[hit].items():
                old = v.get(k)
                nv = ((old or 0) - c * x) % p
                if nv:
                    if old is None and k in rows and k > hit:
                        heapq.heappush(cand, k)
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def insert(self, v: dict) -> int | None:
        r = self.reduce(v)
        if not r:
            return None
        j = min(r)
        c = r[j]
        if c != 1:
            inv = pow(c, -1, self.p)
            r = {k: (inv * x) % self.p for k, x in r.items()}
        self.rows[j] = r
        return j

    def reduce_tracked(self, v: dict) -> tuple[dict, object]:
        return self.reduce(v), 1


class QForward:
    """Fraction-free forward echelon for rational spans of integer rows.

    Rows are primitive integer vectors (content 1, positive pivot).
    ``reduce_tracked(v)`` returns (r, d) with r an integer vector congruent
    to d*v modulo the row span and supported off the pivot columns; d is a
    positive Fraction.  Rational input is pre-scaled by the lcm of its
    denominators (folded into d)."""

    __slots__ = ("width", "rows")

    def __init__(self, width: int):
        self.width = width
        self.rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce_tracked(self, v: dict) -> tuple[dict, object]:
        d = Fraction(1)
        scale = 1
        for x in v.values():
            den = getattr(x, "denominator", 1)
            if den != 1:
                scale = lcm(scale, den)
        w = {}
        for k, x in v.items():
            xi = int(x * scale)
            if xi:
                w[k] = xi
        d *= scale
        rows = self.rows
        cand = [j for j in w if j in rows]
        heapq.heapify(cand)
        while cand:
            hit = heapq.heappop(cand)
            if hit not in w:
                continue
            row = rows[hit]
            p = row[hit]
            c = w[hit]
            g = gcd(p, c)
            a, b = p // g, c // g
            # w <- a*w - b*row (kills column `hit`, scales the class by a)
            if a != 1:
                for k in w:
                    w[k] *= a
                d *= a
            for k, x in row.items():
                old = w.get(k)
                nv = (old or 0) - b * x
                if nv:
                    if old is None and k in rows and k > hit:
                        heapq.heappush(cand, k)
                    w[k] = nv
                else:
                    w.pop(k, None)
            if w:
                g2 = 0
                for x in w.values():
                    g2 = gcd(g2, x)
                    if g2 == 1:
                        break
                if g2 > 1:
                    for k in w:
                        w[k] //= g2
                    d /= g2
        return w, d

    def insert(self, v: dict) -> int | None:
        r, _d = self.reduce_tracked(v)
        if not r:
            return None
        j = min(r)
        if r[j] < 0:
            r = {k: -x for k, x in r.items()}
        self.rows[j] = r
        return j


def make_forward(dom: ScalarDomain, width: int):
    """Forward-only streaming engine for a field domain."""
    if dom.name == "f2":
        return F2Forward(width)
    if dom.name == "q":
        return QForward(width)
    if dom.is_field:
        return FpForward(dom.p, width)
    raise ValueError("forward engines are for field domains")


class SpanSolver:
    """Express target vectors as combinations of a fixed generating family.

    Inserts the generators with unit tails into an augmented echelon; a
    target is solvable iff its head reduces to zero, and the tail then holds
    the coefficients (with respect to the *original* generator indices, even
    when the generators are dependent).  Over Z solvability means lattice
    membership.
    """

    __slots__ = ("dom", "width", "count", "_eng")

    def __init__(self, dom: ScalarDomain, width: int, vectors=()):
        self.dom = dom
        self.width = width
        self.count = 0
        self._eng = None
        for v in vectors:
            self.add(v)

    def add(self, v: dict) -> int:
        """Append one generator; returns its index."""
        idx = self.count
        self.count += 1
        if self._eng is None or self._eng.width < self.width + self.count:
            self._rebuild()
        row = dict(v)
        row[self.width + idx] = self.dom.one
        self._eng.insert(row)
        return idx

    def _rebuild(self):
        # engines have fixed width; grow in chunks to amortize re-insertion
        cap = max(16, 2 * self.count)
        eng = make_echelon(self.dom, self.width + cap)
        if self._eng is not None:
            for row in list(self._eng.row_dicts().values()):
                eng.insert(dict(row))
        self._eng = eng

    def add_many(self, vectors) -> None:
        for v in vectors:
            self.add(v)

    def solve(self, target: dict) -> dict | None:
        """Coefficients {generator index: scalar} with sum = target, or None."""
        if self._eng is None:
            return {} if not target else None
        res = self._eng.reduce(dict(target))
        w = self.width
        if any(k < w for k in res):
            return None
        neg = self.dom.neg
        return {k - w: neg(x) for k, x in res.items()}

    def rank(self) -> int:
        return self._eng.rank if self._eng is not None else 0


class SubspaceBasis:
    """A subspace (field) or sublattice (Z) of dom^width held in echelon form."""

    __slots__ = ("dom", "width", "engine", "version")

    def __init__(self, dom: ScalarDomain, width: int, gens=()):
        self.dom = dom
        self.width = width
        self.engine = make_echelon(dom, width)
        self.version = 0
        for g in gens:
            self.add(g)

    def add(self, v: dict) -> bool:
        """Grow by one generator; True if the span/lattice changed."""
        eng = self.engine
        if isinstance(eng, HermiteBasis):
            before = {p: r[p] for p, r in eng.rows.items()}
            piv = eng.insert(v)
            if piv is not None:
                self.version += 1
                return True
            after = {p: r[p] for p, r in eng.rows.items()}
            if after != before:
                self.version += 1
                return True
            return False
        if eng.insert(v) is not None:
            self.version += 1
            return True
        return False

    @property
    def rank(self) -> int:
        return self.engine.rank

    def contains(self, v: dict) -> bool:
        return not self.engine.reduce(v)

    def vectors(self) -> list[dict]:
        rows = self.engine.row_dicts()
        return [dict(rows[p]) for p in sorted(rows)]

    def reduce(self, v: dict) -> dict:
        return self.engine.reduce(v)


# ---------------------------------------------------------------------------
# matrices


class ExactMatrix:
    """A sparse matrix over an exact domain (row-major dict of dicts)."""

    __slots__ = ("dom", "nrows", "ncols", "rows")

    def __init__(self, dom: ScalarDomain, nrows: int, ncols: int,
                 rows: dict[int, dict] | None = None):
        self.dom = dom
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else {}

    @classmethod
    def from_entries(cls, dom, nrows, ncols, entries: dict) -> "ExactMatrix":
        """Build from ``{(i, j): value}`` (zeros are dropped)."""
        rows: dict[int, dict] = {}
        for (i, j), val in entries.items():
            val = dom.normalize(val)
            if val:
                rows.setdefault(i, {})[j] = val
        return cls(dom, nrows, ncols, rows)

    @classmethod
    def from_dense(cls, dom, matrix) -> "ExactMatrix":
        rows: dict[int, dict] = {}
        for i, row in enumerate(matrix):
            for j, val in enumerate(row):
                val = dom.normalize(val)
                if val:
                    rows.setdefault(i, {})[j] = val
        return cls(dom, len(matrix), len(matrix[0]) if matrix else 0, rows)

    def to_dense(self) -> list[list]:
        zero = self.dom.zero
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for i, row in self.rows.items():
            for j, val in row.items():
                out[i][j] = val
        return out

    def entry(self, i: int, j: int):
        return self.rows.get(i, {}).get(j, self.dom.zero)

    def columns(self) -> dict[int, dict]:
        cols: dict[int, dict] = {}
        for i, row in self.rows.items():
            for j, val in row.items():
                cols.setdefault(j, {})[i] = val
        return cols

    def matvec(self, v: dict) -> dict:
        """Matrix-vector product A @ v for a sparse column vector v."""
        out: dict[int, object] = {}
        dom = self.dom
        for i, row in self.rows.items():
            acc = dom.zero
            for j, c in row.items():
                x = v.get(j)
                if x is not None:
                    acc = dom.add(acc, dom.mul(c, x))
            if acc:
                out[i] = acc
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.dom, self.ncols, self.nrows, self.columns())

    def is_zero(self) -> bool:
        return not any(self.rows.values())

    def rank(self) -> int:
        eng = make_echelon(self.dom, self.ncols)
        for row in self.rows.values():
            eng.insert(row)
        return eng.rank

    def kernel_basis(self) -> list[dict]:
        """Basis of the right kernel {x : A x = 0}.

        Over a field this is the standard free-column construction from the
        reduced row echelon form.  Over Z we echelonize the rows of
        [A^T | I]; basis rows whose head part vanishes carry a basis of the
        kernel lattice in their tails, and that lattice is automatically
        saturated (it is the kernel of a homomorphism).
        """
        if self.dom.is_field:
            eng = make_echelon(self.dom, self.ncols)
            for row in self.rows.values():
                eng.insert(row)
            rows = eng.row_dicts()
            dom = self.dom
            basis = []
            for f in range(self.ncols):
                if f in rows:
                    continue
                v = {f: dom.one}
                for p, r in rows.items():
                    c = r.get(f)
                    if c:
                        v[p] = dom.neg(c)
                basis.append(v)
            return basis
        cols = self.columns()
        eng = HermiteBasis(self.nrows + self.ncols)
        for j in range(self.ncols):
            v = dict(cols.get(j, {}))
            v[self.nrows + j] = 1
            eng.insert(v)
        basis = []
        for p in sorted(eng.rows):
            if p >= self.nrows:
                row = eng.rows[p]
                basis.append({k - self.nrows: x for k, x in row.items()})
        return basis

    def smith(self, transform: bool = False) -> "SmithForm":
        if self.dom.name != "z":
            raise TypeError("Smith normal form is defined here for Z matrices")
        entries = {(i, j): v for i, row in self.rows.items()
                   for j, v in row.items()}
        return smith_normal_form(entries, self.nrows, self.ncols, transform)


# ---------------------------------------------------------------------------
# Smith normal form


class SmithForm:
    """Result of a Smith reduction of an integer matrix.

    ``diag`` lists the nonzero invariant factors d_1 | d_2 | ... | d_r (all
    positive); ``rank`` is r.  When requested, ``U`` (row-major) and
    ``U_inv`` (column-major) are the unimodular row transforms with
    U @ A @ V = D; the column transform V is not tracked.
    """

    __slots__ = ("diag", "rank", "nrows", "ncols", "U", "U_inv")

    def __init__(self, diag, rank, nrows, ncols, U=None, U_inv=None):
        self.diag = diag
        self.rank = rank
        self.nrows = nrows
        self.ncols = ncols
        self.U = U
        self.U_inv = U_inv

    def __repr__(self):
        return f"SmithForm(diag={self.diag}, rank={self.rank})"


def smith_normal_form(entries: dict, nrows: int, ncols: int,
                      transform: bool = False) -> SmithForm:
    """Smith normal form of an integer matrix given as {(i, j): value}.

    Pivots are chosen by minimum absolute value (with an early exit on a
    unit), which keeps coefficient growth tame on the near-unimodular
    matrices this package produces.  Column positions are scanned rather
    than indexed; the matrices that reach this routine are small.
    """
    rows: dict[int, dict] = {}
    for (i, j), val in entries.items():
        if val:
            rows.setdefault(i, {})[j] = int(val)

    U: dict[int, dict] | None = None
    Uinv_cols: dict[int, dict] | None = None
    if transform:
        U = {i: {i: 1} for i in range(nrows)}
        Uinv_cols = {i: {i: 1} for i in range(nrows)}

    def row_op(i: int, t: int, q: int) -> None:
        # A_i -= q * A_t, mirrored on the transforms (U_inv gains q*col_i
        # added to col_t, the inverse elementary operation)
        tgt = rows.setdefault(i, {})
        vec_axpy(tgt, rows.get(t, {}), -q, _ZDOM)
        if not tgt:
            del rows[i]
        if transform:
            vec_axpy(U.setdefault(i, {}), U.get(t, {}), -q, _ZDOM)
            vec_axpy(Uinv_cols.setdefault(t, {}), Uinv_cols.get(i, {}), q, _ZDOM)

    def row_swap(i: int, t: int) -> None:
        ri, rt = rows.pop(i, None), rows.pop(t, None)
        if rt is not None:
            rows[i] = rt
        if ri is not None:
            rows[t] = ri
        if transform:
            U[i], U[t] = U.get(t, {}), U.get(i, {})
            Uinv_cols[i], Uinv_cols[t] = Uinv_cols.get(t, {}), Uinv_cols.get(i, {})

    def row_negate(i: int) -> None:
        if i in rows:
            rows[i] = {k: -x for k, x in rows[i].items()}
        if transform:
            U[i] = {k: -x for k, x in U.get(i, {}).items()}
            Uinv_cols[i] = {k: -x for k, x in Uinv_cols.get(i, {}).items()}

    # column operations touch A only; V is not tracked
    def col_op(j: int, t: int, q: int) -> None:
        # A[:, j] -= q * A[:, t]
        for r in rows.values():
            c = r.get(t)
            if c:
                val = r.get(j, 0) - q * c
                if val:
                    r[j] = val
                else:
                    r.pop(j, None)

    def col_swap(j: int, t: int) -> None:
        for r in rows.values():
            a, b = r.pop(j, None), r.pop(t, None)
            if b is not None:
                r[j] = b
            if a is not None:
                r[t] = a

    diag: list[int] = []
    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        # select a pivot of minimal |value| in the region [t:, t:]
        best = None
        for i, row in rows.items():
            if i < t:
                continue
            for j, val in row.items():
                if j < t:
                    continue
                a = abs(val)
                if best is None or a < best[0]:
                    best = (a, i, j)
                    if a == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_swap(bi, t)
        if bj != t:
            col_swap(bj, t)
        if rows[t][t] < 0:
            row_negate(t)

        while True:
            dirty = False
            # clear column t; a nonzero floor remainder is a smaller pivot
            for i in [i for i, r in rows.items() if i > t and t in r]:
                q = rows[i][t] // rows[t][t]
                if q:
                    row_op(i, t, q)
                if rows.get(i, {}).get(t):
                    row_swap(i, t)
                    dirty = True
            if dirty:
                continue
            # clear row t with column operations
            for j in [j for j in rows.get(t, {}) if j > t]:
                q = rows[t][j] // rows[t][t]
                if q:
                    col_op(j, t, q)
                if rows.get(t, {}).get(j):
                    col_swap(j, t)
                    dirty = True
            if dirty:
                continue
            if not any(i > t and t in r for i, r in rows.items()):
                break

        d = rows[t][t]
        # enforce the divisibility chain: fold an offending row into row t
        # and redo this pivot (strictly decreases |pivot|, so it terminates)
        offender = None
        for i, row in rows.items():
            if i <= t:
                continue
            for j, val in row.items():
                if j > t and val % d:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(t, offender, -1)   # A_t += A_offender
            continue
        diag.append(d)
        t += 1

    return SmithForm(diag, len(diag), nrows, ncols,
                     U if transform else None,
                     Uinv_cols if transform else None)


# ---------------------------------------------------------------------------
# subquotients


class ContainmentError(ValueError):
    """Raised when the alleged image generators do not lie in the kernel."""


class SubquotientInvariants:
    """Isomorphism invariants of span(kernel)/span(image).

    Over a field only ``dimension`` is set.  Over Z, ``invariant_factors``
    lists the nontrivial torsion factors in ascending divisibility order
    followed by one 0 per free summand (so ``[2, 2, 0]`` means
    Z/2 + Z/2 + Z); ``dimension`` then counts all summands.
    """

    __slots__ = ("domain_name", "dimension", "invariant_factors")

    def __init__(self, domain_name: str, dimension: int,
                 invariant_factors: list[int] | None = None):
        self.domain_name = domain_name
        self.dimension = dimension
        self.invariant_factors = invariant_factors

    @property
    def free_rank(self) -> int:
        if self.invariant_factors is None:
            return self.dimension
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def torsion(self) -> list[int]:
        if self.invariant_factors is None:
            return []
        return [d for d in self.invariant_factors if d]

    def is_trivial(self) -> bool:
        return self.dimension == 0 and not self.torsion

    def __eq__(self, other) -> bool:
        return (isinstance(other, SubquotientInvariants)
                and self.domain_name == other.domain_name
                and self.dimension == other.dimension
                and self.invariant_factors == other.invariant_factors)

    def __repr__(self):
        if self.invariant_factors is None:
            return f"SubquotientInvariants({self.domain_name}, dim={self.dimension})"
        return (f"SubquotientInvariants(z, factors={self.invariant_factors})")

    def describe(self) -> str:
        """Human-readable shape, e.g. ``f2^6`` or ``Z/2^6 + Z^1``."""
        if self.invariant_factors is None:
            return "0" if self.dimension == 0 else f"{self.domain_name}^{self.dimension}"
        parts = []
        tors = self.torsion
        i = 0
        while i < len(tors):
            j = i
            while j < len(tors) and tors[j] == tors[i]:
                j += 1
            parts.append(f"Z/{tors[i]}^{j - i}" if j - i > 1 else f"Z/{tors[i]}")
            i = j
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def field_invariants(dom: ScalarDomain, dimension: int) -> SubquotientInvariants:
    return SubquotientInvariants(dom.name, dimension, None)


def z_invariants(factors: list[int]) -> SubquotientInvariants:
    return SubquotientInvariants("z", len(factors), list(factors))


def subquotient(kernel_gens, image_gens, width: int,
                dom: ScalarDomain) -> SubquotientInvariants:
    """Invariants of span(kernel_gens)/span(image_gens) inside dom^width.

    Every image generator must lie in the span (lattice, over Z) of the
    kernel generators, otherwise ``ContainmentError`` is raised.  Neither
    generating family needs to be independent.
    """
    kern = make_echelon(dom, width)
    for g in kernel_gens:
        kern.insert(g)
    img = make_echelon(dom, width)
    for g in image_gens:
        img.insert(g)

    k = kern.rank
    # augmented copy of the kernel basis: tails record coordinates
    kpivs = kern.pivots()
    tail = {p: width + idx for idx, p in enumerate(kpivs)}
    aug = make_echelon(dom, width + k)
    kern_rows = kern.row_dicts()
    for p in kpivs:
        row = dict(kern_rows[p])
        row[tail[p]] = 1 if dom.name != "q" else dom.one
        aug.insert(row)

    coeff_rows: list[dict] = []
    one = dom.one
    for p, row in img.row_dicts().items():
        res = aug.reduce(dict(row))
        head = {kk: x for kk, x in res.items() if kk < width}
        if head:
            raise ContainmentError(
                f"image vector with pivot {p} is not contained in the kernel span")
        coeff_rows.append({kk - width: dom.neg(x) for kk, x in res.items()})

    if dom.is_field:
        rel = make_echelon(dom, k)
        for r in coeff_rows:
            rel.insert(r)
        return field_invariants(dom, k - rel.rank)

    entries = {(i, j): val for j, col in enumerate(coeff_rows)
               for i, val in col.items()}
    sf = smith_normal_form(entries, k, len(coeff_rows))
    factors = [d for d in sf.diag if d != 1] + [0] * (k - sf.rank)
    return z_invariants(factors)


# ---------------------------------------------------------------------------
# quotient presentations (used for R/I_m, for central kernels, and for the
# second-stage quotients in the Steinberg construction)


class QuotientPresentation:
    """Coordinates on dom^width / span(gens), with optional ambient moduli.

    ``dim`` is the number of retained coordinates and ``moduli[i]`` the
    modulus of coordinate i (0 = free; over a field always 0).  ``coords``
    maps an ambient vector to quotient coordinates linearly; ``lift`` maps
    quotient coordinates back to a representative.
    """

    __slots__ = ("dom", "width", "dim", "moduli", "_mode", "_ech", "_free",
                 "_U_rows", "_lift_cols")

    def __init__(self, dom, width, dim, moduli, mode, ech=None, free=None,
                 U_rows=None, lift_cols=None):
        self.dom = dom
        self.width = width
        self.dim = dim
        self.moduli = moduli
        self._mode = mode
        self._ech = ech
        self._free = free
        self._U_rows = U_rows
        self._lift_cols = lift_cols

    def coords(self, v: dict) -> dict:
        if self._mode == "field":
            res = self._ech.reduce(v)
            free = self._free
            return {free[j]: x for j, x in res.items() if j in free}
        out = {}
        for idx, (urow, d) in enumerate(zip(self._U_rows, self.moduli)):
            acc = 0
            for j, c in urow.items():
                x = v.get(j)
                if x:
                    acc += c * x
            if d:
                acc %= d
            if acc:
                out[idx] = acc
        return out

    def lift(self, coords: dict) -> dict:
        if self._mode == "field":
            inv = self._inv_free()
            return {inv[i]: x for i, x in coords.items() if x}
        out: dict[int, int] = {}
        for i, x in coords.items():
            if x:
                vec_axpy(out, self._lift_cols[i], x, _ZDOM)
        return out

    def _inv_free(self) -> dict:
        # free: ambient column -> coord index; invert once
        return {i: c for c, i in self._free.items()}

    def reduce_coord(self, idx: int, val):
        d = self.moduli[idx]
        return val % d if d else val


def present_quotient(gens, width: int, dom: ScalarDomain,
                     ambient_moduli: list[int] | None = None) -> QuotientPresentation:
    """Present dom^width / (span(gens) + ambient torsion) with coordinates.

    Over a field the retained coordinates are the non-pivot columns of an
    echelon of the generators.  Over Z the generators (plus one column
    ``m_c e_c`` for every ambient modulus m_c != 0) go through a Smith
    reduction with row-transform tracking; retained coordinates are the rows
    of U whose invariant factor is not 1.
    """
    if dom.is_field:
        if ambient_moduli and any(ambient_moduli):
            raise ValueError("field quotients cannot carry ambient moduli")
        ech = make_echelon(dom, width)
        for g in gens:
            ech.insert(g)
        pivots = set(ech.pivots())
        free = {}
        for c in range(width):
            if c not in pivots:
                free[c] = len(free)
        dim = len(free)
        return QuotientPresentation(dom, width, dim, [0] * dim, "field",
                                    ech=ech, free=free)

    entries = {}
    ncols = 0
    for g in gens:
        for i, val in g.items():
            if val:
                entries[(i, ncols)] = val
        ncols += 1
    if ambient_moduli:
        for c, m in enumerate(ambient_moduli):
            if m:
                entries[(c, ncols)] = m
                ncols += 1
    sf = smith_normal_form(entries, width, ncols, transform=True)
    kept: list[int] = []
    moduli: list[int] = []
    for tt in range(width):
        d = sf.diag[tt] if tt < sf.rank else 0
        if d != 1:
            kept.append(tt)
            moduli.append(d)
    U_rows = [sf.U.get(tt, {}) for tt in kept]
    lift_cols = [sf.U_inv.get(tt, {}) for tt in kept]
    return QuotientPresentation(dom, width, len(kept), moduli, "z",
                                U_rows=U_rows, lift_cols=lift_cols)
