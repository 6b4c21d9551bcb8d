"""Exact linear algebra: frozen examples plus randomized oracle checks.

The Smith form is cross-checked two ways: against the determinantal-divisor
definition (gcds of k x k minors, computed here from scratch) and against
sympy's implementation on random matrices.
"""

import itertools
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from stlhom.domains import F2, F3, F5, Q, Z, parse_scalar
from stlhom.linalg import (ContainmentError, ExactMatrix, F2Echelon,
                           FieldEchelon, HermiteBasis, QForward,
                           SubquotientInvariants, make_echelon, make_forward,
                           present_quotient, smith_normal_form, subquotient,
                           vec_axpy, xgcd)

FIELDS = [F2, F3, F5, Q]


def dense_to_dicts(m):
    return [{j: v for j, v in enumerate(row) if v} for row in m]


# ---------------------------------------------------------------------------
# oracles


def minor_gcd_invariant_factors(m):
    """Invariant factors from determinantal divisors (independent oracle).

    d_k = gcd of all k x k minors; the k-th invariant factor is d_k/d_{k-1}.
    Only usable for tiny matrices, which is the point: it is a direct
    transcription of the definition.
    """
    nr, nc = len(m), len(m[0]) if m else 0

    def det(rows, cols):
        if not rows:
            return 1
        r0 = rows[0]
        return sum((-1) ** idx * m[r0][c] * det(rows[1:], cols[:idx] + cols[idx + 1:])
                   for idx, c in enumerate(cols))

    divisors = [1]
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for rows in itertools.combinations(range(nr), k):
            for cols in itertools.combinations(range(nc), k):
                g = gcd(g, det(list(rows), list(cols)))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]


def sympy_snf_diag(m):
    import sympy
    from sympy.matrices.normalforms import smith_normal_form as snf
    if not m or not m[0]:
        return []
    d = snf(sympy.Matrix(m))
    out = []
    for t in range(min(d.shape)):
        v = int(d[t, t])
        if v:
            out.append(abs(v))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# frozen small cases


def test_xgcd_invariant():
    for a in range(-8, 9):
        for b in range(-8, 9):
            g, x, y = xgcd(a, b)
            assert g == abs(gcd(a, b))
            assert x * a + y * b == g


def test_kernel_of_2_4_over_z():
    mat = ExactMatrix.from_dense(Z, [[2, 4]])
    basis = mat.kernel_basis()
    assert len(basis) == 1
    v = basis[0]
    # (2, -1) up to sign
    assert {k: abs(x) for k, x in v.items()} == {0: 2, 1: 1}
    assert not mat.matvec(v)


def test_smith_of_2_4_0_6():
    sf = ExactMatrix.from_dense(Z, [[2, 4], [0, 6]]).smith()
    assert sf.diag == [2, 6]
    assert sf.rank == 2


def test_smith_matches_minor_gcd_oracle_on_fixed_cases():
    cases = [
        [[2, 4], [0, 6]],
        [[1, 2], [3, 4]],
        [[2, 0], [0, 2]],
        [[6, 10], [15, 4]],
        [[0, 0], [0, 0]],
        [[2, 4, 4], [-6, 6, 12], [10, 4, 16]],
    ]
    for m in cases:
        sf = ExactMatrix.from_dense(Z, m).smith()
        assert sf.diag == minor_gcd_invariant_factors(m), m


def test_subquotient_z2_mod_2z2():
    inv = subquotient([{0: 1}, {1: 1}], [{0: 2}, {1: 2}], 2, Z)
    assert inv.invariant_factors == [2, 2]
    assert inv.describe() == "Z/2^2"
    assert inv.free_rank == 0


def test_subquotient_free_part():
    inv = subquotient([{0: 1}, {1: 1}, {2: 1}], [{0: 2}], 3, Z)
    assert inv.invariant_factors == [2, 0, 0]
    assert inv.free_rank == 2 and inv.torsion == [2]


def test_subquotient_containment_violation():
    with pytest.raises(ContainmentError):
        subquotient([{0: 1}], [{1: 1}], 2, F3)
    with pytest.raises(ContainmentError):
        # (1,0) is in the Q-span but not the Z-lattice of (2,0)
        subquotient([{0: 2}], [{0: 1}], 2, Z)


def test_subquotient_field_dims():
    for dom in FIELDS:
        one = dom.one
        inv = subquotient([{0: one, 1: one}, {1: one}], [{0: one, 1: one}], 2, dom)
        assert inv.dimension == 1
        assert inv.invariant_factors is None


def test_invariants_eq_and_describe():
    a = SubquotientInvariants("z", 3, [2, 2, 0])
    b = SubquotientInvariants("z", 3, [2, 2, 0])
    assert a == b
    assert a.describe() == "Z/2^2 + Z^1"
    assert SubquotientInvariants("f2", 0, None).describe() == "0"
    assert SubquotientInvariants("f3", 6, None).describe() == "f3^6"


# ---------------------------------------------------------------------------
# echelon engines


def test_f2_echelon_matches_generic_field_engine():
    vecs = [{0: 1, 2: 1}, {2: 1, 3: 1}, {0: 1, 3: 1}, {1: 1, 4: 1},
            {0: 1, 1: 1, 2: 1, 3: 1, 4: 1}]
    fast = F2Echelon(5)
    slow = FieldEchelon(F2, 5)
    for v in vecs:
        assert fast.insert(dict(v)) == slow.insert(dict(v))
    assert fast.pivots() == slow.pivots()
    assert fast.row_dicts() == slow.row_dicts()


def test_field_echelon_rows_fully_reduced():
    ech = FieldEchelon(F5, 6)
    for v in [{0: 1, 1: 2, 5: 1}, {1: 3, 2: 1}, {0: 2, 2: 4, 3: 1}, {1: 1, 5: 2}]:
        ech.insert(v)
    pivots = set(ech.pivots())
    for p, row in ech.row_dicts().items():
        assert row[p] == 1
        for c in row:
            assert c == p or c not in pivots


def test_hermite_membership_and_normalize():
    h = HermiteBasis(3)
    h.insert({0: 4, 1: 2, 2: 1})
    h.insert({0: 6, 1: 2})
    h.insert({1: 8})
    # combinations of inserted vectors are members
    assert h.reduce({0: 10, 1: 4, 2: 1}) == {}
    assert h.reduce({0: 4, 1: 10, 2: 1}) == {}
    h.normalize()
    rows = h.row_dicts()
    for p, row in rows.items():
        assert row[p] > 0
        for c, val in row.items():
            if c != p and c in rows:
                assert 0 <= val < rows[c][c]


def test_make_echelon_dispatch():
    assert isinstance(make_echelon(F2, 4), F2Echelon)
    assert isinstance(make_echelon(Q, 4), FieldEchelon)
    assert isinstance(make_echelon(Z, 4), HermiteBasis)
    assert isinstance(make_echelon(parse_scalar("f5"), 4), FieldEchelon)


# ---------------------------------------------------------------------------
# randomized properties

small_entries = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=4, max_cols=5, entries=small_entries):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(entries, min_size=c, max_size=c),
                               min_size=r, max_size=r)))


@given(matrices())
@settings(max_examples=120, deadline=None)
def test_smith_matches_sympy(m):
    sf = ExactMatrix.from_dense(Z, m).smith()
    assert sorted(sf.diag) == sympy_snf_diag(m)
    # divisibility chain
    for a, b in zip(sf.diag, sf.diag[1:]):
        assert b % a == 0


@given(matrices(max_rows=3, max_cols=3, entries=st.integers(-4, 4)))
@settings(max_examples=60, deadline=None)
def test_smith_matches_minor_gcd_oracle(m):
    sf = ExactMatrix.from_dense(Z, m).smith()
    assert sf.diag == minor_gcd_invariant_factors(m)


@given(matrices())
@settings(max_examples=100, deadline=None)
def test_smith_transform_consistency(m):
    """U and U_inv are mutually inverse and U*A has the expected row lattice."""
    nr = len(m)
    sf = ExactMatrix.from_dense(Z, m).smith(transform=True)
    # U * U_inv = I  (U row-major, U_inv column-major)
    for i in range(nr):
        for j in range(nr):
            acc = sum(c * sf.U_inv.get(j, {}).get(k, 0)
                      for k, c in sf.U.get(i, {}).items())
            assert acc == (1 if i == j else 0)


@given(matrices(), st.sampled_from(["f2", "f3", "f5", "q"]))
@settings(max_examples=150, deadline=None)
def test_rank_nullity_and_kernel(m, scal):
    dom = parse_scalar(scal)
    mat = ExactMatrix.from_dense(dom, m)
    basis = mat.kernel_basis()
    assert mat.rank() + len(basis) == mat.ncols
    for v in basis:
        assert not mat.matvec(v)
    # kernel vectors are independent
    ech = make_echelon(dom, mat.ncols)
    for v in basis:
        assert ech.insert(v) is not None


@given(matrices())
@settings(max_examples=100, deadline=None)
def test_integer_kernel_is_saturated(m):
    mat = ExactMatrix.from_dense(Z, m)
    basis = mat.kernel_basis()
    for v in basis:
        assert not mat.matvec(v)
    # rank-nullity against the rational rank
    assert ExactMatrix.from_dense(Q, m).rank() + len(basis) == mat.ncols
    if basis:
        rows = {(i, j): v for i, b in enumerate(basis) for j, v in b.items()}
        sf = smith_normal_form(rows, len(basis), mat.ncols)
        assert sf.diag == [1] * len(basis)   # primitive basis <=> saturated


@given(st.lists(st.lists(small_entries, min_size=5, max_size=5),
                min_size=1, max_size=6),
       st.sampled_from(["f2", "f3", "q", "z"]))
@settings(max_examples=120, deadline=None)
def test_echelon_reduce_kills_span_members(vecs, scal):
    dom = parse_scalar(scal)
    ech = make_echelon(dom, 5)
    dvecs = []
    for row in vecs:
        d = {j: dom.normalize(v) for j, v in enumerate(row) if dom.normalize(v)}
        dvecs.append(d)
        ech.insert(dict(d))
    # an arbitrary (integer) combination of inserted vectors reduces to zero
    combo = {}
    for i, d in enumerate(dvecs):
        vec_axpy(combo, d, dom.from_int(i + 1) if dom.name != "z" else i + 1, dom)
    assert ech.reduce(combo) == {}


@given(st.data())
@settings(max_examples=80, deadline=None)
def test_subquotient_matches_relation_matrix_snf(data):
    """K/I for K free on an explicit basis: invariants come from the
    coefficient matrix alone, which we know by construction."""
    k = data.draw(st.integers(1, 3))
    w = k + data.draw(st.integers(0, 2))
    # unit upper-triangular basis => independent, spans a saturated-enough K
    basis = []
    for i in range(k):
        v = {i: 1}
        for j in range(i + 1, w):
            c = data.draw(small_entries)
            if c:
                v[j] = c
        basis.append(v)
    r = data.draw(st.integers(0, 3))
    C = [[data.draw(st.integers(-3, 3)) for _ in range(k)] for _ in range(r)]
    image = []
    for row in C:
        g = {}
        for ci, b in zip(row, basis):
            if ci:
                vec_axpy(g, b, ci, Z)
        image.append(g)
    inv = subquotient(basis, image, w, Z)
    expected = sympy_snf_diag(C) if C and k else []
    expected = [d for d in expected if d != 1]
    assert inv.torsion == expected
    rk = ExactMatrix.from_dense(Q, C).rank() if r else 0
    assert inv.free_rank == k - rk


# ---------------------------------------------------------------------------
# quotient presentations


def test_present_quotient_field_roundtrip():
    pres = present_quotient([{0: Fraction(1), 1: Fraction(2)}], 3, Q)
    assert pres.dim == 2
    assert pres.moduli == [0, 0]
    v = {0: Fraction(3), 1: Fraction(1), 2: Fraction(5)}
    c = pres.coords(v)
    # coords kill the generator
    assert pres.coords({0: Fraction(1), 1: Fraction(2)}) == {}
    # coords . lift = id
    assert pres.coords(pres.lift(c)) == c


def test_present_quotient_z_torsion():
    pres = present_quotient([{0: 2}, {1: 3}], 2, Z)
    assert sorted(pres.moduli) == [2, 3] or pres.moduli == [6]
    # the class of (1,1) has order 6
    c = pres.coords({0: 1, 1: 1})
    seen = set()
    acc = {}
    for mult in range(1, 7):
        acc = pres.coords({0: mult, 1: mult})
        seen.add(tuple(sorted(acc.items())))
    assert acc == {}          # 6*(1,1) is in the lattice
    assert len(seen) == 6     # earlier multiples are all distinct


def test_present_quotient_ambient_moduli():
    # (Z/4)^2 modulo the class of (2,0)
    pres = present_quotient([{0: 2}], 2, Z, ambient_moduli=[4, 4])
    assert sorted(pres.moduli) == [2, 4]
    assert pres.coords({0: 2}) == {}
    assert pres.coords({0: 8, 1: 4}) == {}


def test_present_quotient_z_free_and_roundtrip():
    pres = present_quotient([{0: 1, 1: 1}], 3, Z)
    assert pres.dim == 2 and pres.moduli == [0, 0]
    for idx in range(pres.dim):
        lifted = pres.lift({idx: 1})
        got = pres.coords(lifted)
        assert got == {idx: 1}


# ---------------------------------------------------------------------------
# forward-only streaming engines


int_matrix = st.lists(st.lists(st.integers(-6, 6), min_size=5, max_size=5),
                      min_size=1, max_size=8)


@given(int_matrix)
def test_forward_rank_agrees_with_reduced_echelon(rows):
    for dom in FIELDS:
        fwd = make_forward(dom, 5)
        ech = make_echelon(dom, 5)
        for row in rows:
            v = {j: dom.normalize(x) for j, x in enumerate(row)}
            v = {j: x for j, x in v.items() if x}
            fwd.insert(dict(v))
            ech.insert(dict(v))
        assert fwd.rank == ech.rank


@given(int_matrix, st.lists(st.integers(-6, 6), min_size=5, max_size=5),
       st.integers(0, 7))
def test_forward_residual_is_canonical(rows, probe, pick):
    """reduce() depends only on the class of v modulo the row span."""
    for dom in (F2, F3):
        fwd = make_forward(dom, 5)
        stored = []
        for row in rows:
            v = {j: dom.normalize(x) for j, x in enumerate(row)}
            v = {j: x for j, x in v.items() if x}
            if v:
                stored.append(v)
            fwd.insert(dict(v))
        v = {j: dom.normalize(x) for j, x in enumerate(probe)}
        v = {j: x for j, x in v.items() if x}
        r1, d1 = fwd.reduce_tracked(v)
        assert d1 == 1
        if stored:
            w = dict(v)
            vec_axpy(w, stored[pick % len(stored)], dom.one, dom)
            r2, _ = fwd.reduce_tracked(w)
            assert r1 == r2
        # residual carries no pivot column
        assert not any(k in fwd.rows for k in r1)


@given(int_matrix, st.lists(st.integers(-6, 6), min_size=5, max_size=5))
def test_qforward_matches_rational_echelon(rows, probe):
    fwd = QForward(5)
    ech = FieldEchelon(Q, 5)
    for row in rows:
        v = {j: x for j, x in enumerate(row) if x}
        fwd.insert(v)
        ech.insert({j: Fraction(x) for j, x in v.items()})
    assert fwd.rank == ech.rank
    v = {j: x for j, x in enumerate(probe) if x}
    r, d = fwd.reduce_tracked(v)
    # r == d*v modulo the span: d*v - r must reduce to zero
    check = {j: Fraction(d) * x for j, x in v.items()}
    for j, x in r.items():
        check[j] = check.get(j, Fraction(0)) - x
    check = {j: x for j, x in check.items() if x}
    assert not ech.reduce(dict(check))
    assert fwd.insert(check) is None
    # and membership agreement: v in span(fwd) iff v in span(ech)
    in_fwd = not r
    in_ech = not ech.reduce({j: Fraction(x) for j, x in v.items()})
    assert in_fwd == in_ech


def test_qforward_accepts_fraction_input():
    fwd = QForward(3)
    assert fwd.insert({0: Fraction(1, 2), 1: Fraction(3, 4)}) == 0
    # stored row is primitive integer: 2x + 3y up to scaling
    assert fwd.rows[0] == {0: 2, 1: 3}
    r, d = fwd.reduce_tracked({0: Fraction(1), 1: Fraction(3, 2)})
    assert not r, "(1, 3/2) is a rational multiple of (1/2, 3/4)"


def test_qforward_multiplier_example():
    fwd = QForward(2)
    fwd.insert({0: 2, 1: 2})           # stored as (1, 1)
    r, d = fwd.reduce_tracked({0: 1, 1: 3})
    # residual must be off the pivot column 0: (0, y) with y/d = 3 - 1 = 2
    assert set(r) == {1}
    assert Fraction(r[1]) / d == 2


@given(int_matrix)
def test_forward_insert_of_dependent_rows_returns_none(rows):
    fwd = make_forward(F3, 5)
    inserted = []
    for row in rows:
        v = {j: x % 3 for j, x in enumerate(row)}
        v = {j: x for j, x in v.items() if x}
        piv = fwd.insert(dict(v))
        if piv is not None:
            inserted.append(v)
    # re-inserting anything already in the span is a no-op
    for v in inserted:
        assert fwd.insert(dict(v)) is None
