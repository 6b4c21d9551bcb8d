"""Unital associative algebras with exact structure constants.

An algebra is a free module over the scalar domain with a distinguished
basis and a multiplication table.  The unit need not be a basis element: it
is stored as a coordinate vector, either taken from ``unit_index`` or found
by solving the two-sided unit equations.

Also here: commutator spans, the ideals I_m = m*R + R*[R,R] (built by a
two-sided closure, without assuming left and right commutator multiples
agree), the quotients R_m = R/I_m, first Hochschild homology, and the JSON
ring format used by the CLI.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .domains import SCALARS, ScalarDomain
from .linalg import (SpanSolver, SubspaceBasis, make_echelon, subquotient,
                     vec_axpy, QuotientPresentation, present_quotient,
                     SubquotientInvariants)


class AssocAlgebra:
    """Finite-dimensional unital associative algebra over an exact domain."""

    __slots__ = ("dom", "dim", "labels", "table", "unit", "unit_index", "name")

    def __init__(self, dom: ScalarDomain, dim: int, table: dict,
                 unit: dict, unit_index: int | None, labels: list[str],
                 name: str):
        self.dom = dom
        self.dim = dim
        self.table = table            # (i, j) -> sparse product vector
        self.unit = unit              # coordinate vector of 1
        self.unit_index = unit_index  # set when 1 is a basis element
        self.labels = labels
        self.name = name

    def __repr__(self):
        return f"AssocAlgebra({self.name}, dim={self.dim}, dom={self.dom.name})"

    def basis_product(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def multiply(self, u: dict, v: dict) -> dict:
        """Bilinear product of two coordinate vectors."""
        dom = self.dom
        out: dict[int, object] = {}
        table = self.table
        for i, a in u.items():
            for j, b in v.items():
                prod = table.get((i, j))
                if prod:
                    vec_axpy(out, prod, dom.mul(a, b), dom)
        return out

    def commutator(self, u: dict, v: dict) -> dict:
        uv = self.multiply(u, v)
        vu = self.multiply(v, u)
        vec_axpy(uv, vu, self.dom.neg(self.dom.one), self.dom)
        return uv

    def describe_element(self, v: dict) -> str:
        if not v:
            return "0"
        parts = []
        for i in sorted(v):
            c = v[i]
            parts.append(self.labels[i] if c == self.dom.one
                         else f"{c}*{self.labels[i]}")
        return " + ".join(parts)


def make_algebra(dom: ScalarDomain, dim: int, structure: dict,
                 labels: list[str] | None = None,
                 unit_index: int | None = None,
                 name: str = "ring") -> AssocAlgebra:
    """Validate structure constants and build an ``AssocAlgebra``.

    ``structure`` maps ``(i, j)`` to a sparse product vector ``{k: coeff}``.
    Associativity is checked on every basis triple; the unit is checked at
    ``unit_index`` if given, otherwise solved for (and must exist).
    Violations raise ``ValueError`` naming a witness.
    """
    if labels is None:
        labels = [f"r{i}" for i in range(dim)]
    if len(labels) != dim:
        raise ValueError("label count does not match dimension")

    table: dict = {}
    for (i, j), vec in structure.items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise ValueError(f"structure index ({i},{j}) out of range")
        clean = {}
        for k, c in vec.items():
            if not 0 <= k < dim:
                raise ValueError(f"product index {k} out of range at ({i},{j})")
            c = dom.normalize(c)
            if c:
                clean[k] = c
        if clean:
            table[(i, j)] = clean

    alg = AssocAlgebra(dom, dim, table, {}, unit_index, labels, name)

    # associativity on basis triples
    for i in range(dim):
        for j in range(dim):
            pij = alg.basis_product(i, j)
            for k in range(dim):
                left = alg.multiply(pij, {k: dom.one})
                right = alg.multiply({i: dom.one}, alg.basis_product(j, k))
                if left != right:
                    raise ValueError(
                        f"associativity fails at ({labels[i]}, {labels[j]}, "
                        f"{labels[k]}): ({labels[i]}*{labels[j]})*{labels[k]} "
                        f"= {left} but {labels[i]}*({labels[j]}*{labels[k]}) "
                        f"= {right}")

    if unit_index is not None:
        u = {unit_index: dom.one}
        for j in range(dim):
            ej = {j: dom.one}
            if alg.multiply(u, ej) != ej or alg.multiply(ej, u) != ej:
                raise ValueError(
                    f"basis element {labels[unit_index]} is not a unit "
                    f"(fails on {labels[j]})")
        alg.unit = u
    else:
        alg.unit = _solve_unit(alg)
        # remember when the unit happens to be a basis vector anyway
        if len(alg.unit) == 1:
            (idx, c), = alg.unit.items()
            if c == dom.one:
                alg.unit_index = idx
    return alg


def _solve_unit(alg: AssocAlgebra) -> dict:
    """Solve u*e_j = e_j = e_j*u for the unit's coordinate vector."""
    dom, dim = alg.dom, alg.dim
    # unknown u = sum u_i e_i; stack equations over pairs (side, j, k)
    width = 2 * dim * dim
    cols = []
    for i in range(dim):
        col: dict[int, object] = {}
        for j in range(dim):
            for k, c in alg.basis_product(i, j).items():
                col[(j * dim) + k] = c
            for k, c in alg.basis_product(j, i).items():
                col[dim * dim + (j * dim) + k] = c
        cols.append(col)
    target: dict[int, object] = {}
    for j in range(dim):
        target[(j * dim) + j] = dom.one
        target[dim * dim + (j * dim) + j] = dom.one
    solver = SpanSolver(dom, width, cols)
    u = solver.solve(target)
    if u is None:
        raise ValueError(f"algebra {alg.name!r} has no unit over {dom.name}")
    return {i: c for i, c in u.items() if c}


# ---------------------------------------------------------------------------
# commutators, ideals, quotients


def commutator_span(alg: AssocAlgebra) -> SubspaceBasis:
    """Span (lattice, over Z) of all commutators [r_i, r_j]."""
    span = SubspaceBasis(alg.dom, alg.dim)
    one = alg.dom.one
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            c = alg.commutator({i: one}, {j: one})
            if c:
                span.add(c)
    return span


def left_right_commutator_spans_agree(alg: AssocAlgebra) -> bool:
    """Compare span(R*[R,R]) with span([R,R]*R) (not assumed equal)."""
    comm = commutator_span(alg).vectors()
    one = alg.dom.one
    left = SubspaceBasis(alg.dom, alg.dim)
    right = SubspaceBasis(alg.dom, alg.dim)
    for i in range(alg.dim):
        ei = {i: one}
        for c in comm:
            left.add(alg.multiply(ei, c))
            right.add(alg.multiply(c, ei))
    lv, rv = left.vectors(), right.vectors()
    return all(right.contains(v) for v in lv) and all(left.contains(v) for v in rv)


def ideal_Im(alg: AssocAlgebra, m: int) -> SubspaceBasis:
    """The two-sided ideal m*R + R*[R,R], closed under both multiplications.

    Closure matters over Z and for noncommutative R; we iterate until the
    span stops growing rather than assuming one-sided generation suffices.
    """
    dom = alg.dom
    span = SubspaceBasis(dom, alg.dim)
    m_scal = dom.from_int(m)
    if m_scal:
        for i in range(alg.dim):
            span.add({i: m_scal})
    one = dom.one
    for c in commutator_span(alg).vectors():
        for i in range(alg.dim):
            span.add(alg.multiply({i: one}, c))
    # two-sided closure fixpoint
    while True:
        before = span.version
        for v in list(span.vectors()):
            for i in range(alg.dim):
                ei = {i: one}
                span.add(alg.multiply(ei, v))
                span.add(alg.multiply(v, ei))
        if span.version == before:
            return span


class QuotientAlgebra:
    """R/I for a two-sided ideal I, with linear coordinates and moduli.

    ``moduli[c]`` is 0 for a free coordinate and d > 0 for a Z/d coordinate
    (always 0 over a field).  ``coords``/``lift`` translate between R and
    the quotient; ``mul`` is the induced multiplication on coordinates.
    """

    __slots__ = ("base", "ideal", "pres", "dim", "moduli", "name")

    def __init__(self, base: AssocAlgebra, ideal: SubspaceBasis,
                 pres: QuotientPresentation, name: str):
        self.base = base
        self.ideal = ideal
        self.pres = pres
        self.dim = pres.dim
        self.moduli = pres.moduli
        self.name = name

    def coords(self, v: dict) -> dict:
        return self.pres.coords(v)

    def lift(self, coords: dict) -> dict:
        return self.pres.lift(coords)

    def mul(self, x: dict, y: dict) -> dict:
        prod = self.base.multiply(self.lift(x), self.lift(y))
        return self.coords(prod)

    @property
    def unit_coords(self) -> dict:
        return self.coords(self.base.unit)

    def invariants(self) -> SubquotientInvariants:
        if self.base.dom.is_field:
            return SubquotientInvariants(self.base.dom.name, self.dim, None)
        factors = sorted((d for d in self.moduli if d), key=abs)
        factors += [0] * sum(1 for d in self.moduli if not d)
        return SubquotientInvariants("z", len(self.moduli), factors)

    def __repr__(self):
        return f"QuotientAlgebra({self.name}, dim={self.dim}, moduli={self.moduli})"


def quotient_Rm(alg: AssocAlgebra, m: int) -> QuotientAlgebra:
    """Build R_m = R/I_m with coordinates (used as cocycle value modules)."""
    ideal = ideal_Im(alg, m)
    pres = present_quotient(ideal.vectors(), alg.dim, alg.dom)
    return QuotientAlgebra(alg, ideal, pres, f"{alg.name}_{m}")


# ---------------------------------------------------------------------------
# Hochschild homology in degree one


def hochschild_h1(alg: AssocAlgebra) -> SubquotientInvariants:
    """HH_1(R) = ker(b1)/im(b2) for the bar-type differentials

    b1(a (x) b) = ab - ba,
    b2(a (x) b (x) c) = ab (x) c - a (x) bc + ca (x) b.
    """
    dom, dim = alg.dom, alg.dim
    one = dom.one
    pair = dim * dim

    # b1 as a matrix: column (i, j) is the commutator [e_i, e_j]
    from .linalg import ExactMatrix
    rows: dict[int, dict] = {}
    for i in range(dim):
        for j in range(dim):
            col = i * dim + j
            for k, c in alg.commutator({i: one}, {j: one}).items():
                rows.setdefault(k, {})[col] = c
    b1 = ExactMatrix(dom, dim, pair, rows)
    kernel = b1.kernel_basis()

    image = make_echelon(dom, pair)
    for i in range(dim):
        ei = {i: one}
        for j in range(dim):
            ej = {j: one}
            pij = alg.basis_product(i, j)
            for k in range(dim):
                col: dict[int, object] = {}
                # ab (x) c
                for t, c in pij.items():
                    col[t * dim + k] = c
                # - a (x) bc
                for t, c in alg.basis_product(j, k).items():
                    key = i * dim + t
                    cur = col.get(key, dom.zero)
                    cur = dom.sub(cur, c)
                    if cur:
                        col[key] = cur
                    elif key in col:
                        del col[key]
                # + ca (x) b
                for t, c in alg.basis_product(k, i).items():
                    key = t * dim + j
                    cur = col.get(key, dom.zero)
                    cur = dom.add(cur, c)
                    if cur:
                        col[key] = cur
                    elif key in col:
                        del col[key]
                if col:
                    image.insert(col)

    img_rows = image.row_dicts()
    return subquotient(kernel, [img_rows[p] for p in sorted(img_rows)],
                       pair, dom)


# ---------------------------------------------------------------------------
# JSON ring format


def _coeff_to_json(c):
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return int(c)


def _coeff_from_json(c):
    if isinstance(c, str):
        return Fraction(c)
    return c


def save_ring_json(alg: AssocAlgebra, path: str) -> None:
    if alg.unit_index is None:
        raise ValueError(
            "the JSON ring format requires the unit to be a basis element")
    quads = []
    for (i, j) in sorted(alg.table):
        for k in sorted(alg.table[(i, j)]):
            quads.append([i, j, k, _coeff_to_json(alg.table[(i, j)][k])])
    doc = {
        "name": alg.name,
        "scalar": alg.dom.name,
        "dim": alg.dim,
        "unit_index": alg.unit_index,
        "structure": quads,
        "labels": alg.labels,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_ring_json(path: str) -> AssocAlgebra:
    with open(path) as fh:
        doc = json.load(fh)
    for field in ("name", "scalar", "dim", "unit_index", "structure"):
        if field not in doc:
            raise ValueError(f"ring file {path} is missing {field!r}")
    dom = SCALARS.get(doc["scalar"])
    if dom is None:
        raise ValueError(f"unknown scalar {doc['scalar']!r} in {path}")
    dim = doc["dim"]
    structure: dict = {}
    for quad in doc["structure"]:
        if len(quad) != 4:
            raise ValueError(f"malformed structure entry {quad!r} in {path}")
        i, j, k, c = quad
        structure.setdefault((i, j), {})[k] = _coeff_from_json(c)
    labels = doc.get("labels")
    return make_algebra(dom, dim, structure, labels=labels,
                        unit_index=doc["unit_index"], name=doc["name"])
