"""Leibniz algebra core: validation, gl/sl, boundaries, homology, uce."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from stlhom.assoc import make_algebra
from stlhom.catalog import catalog_ring
from stlhom.domains import F2, F3, F5, Q, Z, parse_scalar
from stlhom.leibniz import (LeibnizAlgebra, LeibnizIdentityError, boundary,
                            build_gl, build_sl, homology_hl, is_central,
                            iter_d3_columns, make_leibniz, structural_report,
                            uce)

DOMS = {"f2": F2, "f3": F3, "f5": F5, "q": Q, "z": Z}


# ---------------------------------------------------------------------------
# independent dense helpers (no sparse engines involved)


def dense_rank(dom, M):
    """Gaussian elimination on a dense list-of-lists copy."""
    M = [row[:] for row in M]
    nr = len(M)
    nc = len(M[0]) if nr else 0
    rank = 0
    for c in range(nc):
        piv = None
        for r in range(rank, nr):
            if M[r][c]:
                piv = r
                break
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = dom.inv(M[rank][c])
        M[rank] = [dom.mul(inv, x) for x in M[rank]]
        for r in range(nr):
            if r != rank and M[r][c]:
                f = M[r][c]
                M[r] = [dom.sub(x, dom.mul(f, y))
                        for x, y in zip(M[r], M[rank])]
        rank += 1
    return rank


def dense_d2(L):
    """d2(e_i (x) e_j) = -[e_i, e_j], assembled densely and independently."""
    n = L.dim
    M = [[L.dom.zero] * (n * n) for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, c in L.basis_bracket(i, j).items():
                M[k][i * n + j] = L.dom.neg(c)
    return M


def dense_d3(L):
    """d3(x(x)y(x)z) = -[x,y](x)z + [x,z](x)y + x(x)[y,z], densely."""
    n = L.dim
    dom = L.dom
    M = [[dom.zero] * (n ** 3) for _ in range(n * n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                col = (i * n + j) * n + k
                for t, c in L.basis_bracket(i, j).items():
                    r = t * n + k
                    M[r][col] = dom.sub(M[r][col], c)
                for t, c in L.basis_bracket(i, k).items():
                    r = t * n + j
                    M[r][col] = dom.add(M[r][col], c)
                for t, c in L.basis_bracket(j, k).items():
                    r = i * n + t
                    M[r][col] = dom.add(M[r][col], c)
    return M


def brute_leibniz_holds(alg):
    one = alg.dom.one
    for i in range(alg.dim):
        for j in range(alg.dim):
            for k in range(alg.dim):
                lhs = alg.bracket({i: one}, alg.bracket({j: one}, {k: one}))
                r1 = alg.bracket(alg.bracket({i: one}, {j: one}), {k: one})
                r2 = alg.bracket(alg.bracket({i: one}, {k: one}), {j: one})
                rhs = dict(r1)
                for c, x in r2.items():
                    v = alg.dom.sub(rhs.get(c, alg.dom.zero), x)
                    if v:
                        rhs[c] = v
                    else:
                        rhs.pop(c, None)
                if not alg.eq_vec(lhs, alg.reduce_vec(rhs)):
                    return False, (i, j, k)
    return True, None


# ---------------------------------------------------------------------------
# make_leibniz validation


def test_tiny_table_is_leibniz_only_in_char_2():
    # [e0,e1] = [e1,e0] = e0: the identity needs e0 = -e0
    table = {(0, 1): {0: 1}, (1, 0): {0: 1}}
    L = make_leibniz(F2, 2, table, name="tiny")
    assert brute_leibniz_holds(L)[0]
    for dom in (F3, Q, Z):
        with pytest.raises(LeibnizIdentityError) as exc:
            make_leibniz(dom, 2, table)
        assert exc.value.triple == (1, 1, 0)


def test_abelian_table_valid_everywhere():
    for dom in (F2, F3, F5, Q, Z):
        L = make_leibniz(dom, 3, {}, name="ab")
        assert L.bracket({0: dom.one}, {1: dom.one}) == {}


def test_make_leibniz_input_validation():
    with pytest.raises(ValueError):
        make_leibniz(F2, 2, {(0, 5): {0: 1}})
    with pytest.raises(ValueError):
        make_leibniz(F2, 2, {}, labels=["a"])
    with pytest.raises(ValueError):
        make_leibniz(F2, 2, {}, moduli=[2])


def test_moduli_reduce_and_eq():
    # carrier Z x Z/2: the square lands in the torsion coordinate
    table = {(0, 0): {1: 1}}
    L = make_leibniz(Z, 2, table, moduli=[0, 2], name="tors")
    assert L.reduce_vec({0: 3, 1: 4}) == {0: 3}
    assert L.eq_vec({1: 1}, {1: -1})
    assert not L.eq_vec({0: 1}, {0: -1})
    two = L.bracket({0: 2}, {0: 1})
    assert two == {}, "2*[e0,e0] = 2 e1 = 0 mod 2"
    assert L.bracket({0: 1}, {0: 1}) == {1: 1}


@given(st.dictionaries(st.tuples(st.integers(0, 1), st.integers(0, 1)),
                       st.dictionaries(st.integers(0, 1), st.integers(-2, 2),
                                       max_size=2),
                       max_size=4))
def test_validator_agrees_with_brute_force(table):
    """make_leibniz accepts exactly the tables where brute force finds no
    violating triple."""
    try:
        L = make_leibniz(F3, 2, table)
    except LeibnizIdentityError as e:
        probe = LeibnizAlgebra(F3, 2, {
            p: {k: F3.normalize(c) for k, c in v.items() if F3.normalize(c)}
            for p, v in table.items()}, ["e0", "e1"], [0, 0], "probe")
        probe.table = {p: v for p, v in probe.table.items() if v}
        ok, witness = brute_leibniz_holds(probe)
        assert not ok
        return
    ok, witness = brute_leibniz_holds(L)
    assert ok, f"validator passed a violating table, witness {witness}"


# ---------------------------------------------------------------------------
# gl and sl


def test_gl2_bracket_values():
    gl = build_gl(2, catalog_ring("ground", F3))
    e = gl.eij_index
    # [E12, E21] = E11 - E22
    assert gl.basis_bracket(e(0, 1, 0), e(1, 0, 0)) == {e(0, 0, 0): 1,
                                                        e(1, 1, 0): 2}
    # [E12, E12] = 0
    assert gl.basis_bracket(e(0, 1, 0), e(0, 1, 0)) == {}
    # [E11, E12] = E12
    assert gl.basis_bracket(e(0, 0, 0), e(0, 1, 0)) == {e(0, 1, 0): 1}


def test_gl4_disjoint_indices_commute():
    gl = build_gl(4, catalog_ring("ground", F2))
    e = gl.eij_index
    assert gl.basis_bracket(e(0, 1, 0), e(2, 3, 0)) == {}
    # and the Steinberg-style product: [E12, E23] = E13
    assert gl.basis_bracket(e(0, 1, 0), e(1, 2, 0)) == {e(0, 2, 0): 1}


def test_gl_antisymmetry_on_basis():
    gl = build_gl(3, catalog_ring("dual", F3))
    for (i, j), w in gl.table.items():
        back = gl.basis_bracket(j, i)
        assert back == {k: gl.dom.neg(c) for k, c in w.items()}


SL_DIMS = [
    # (ring, scalar, n, expected dim = (n^2-1) dimR + dim[R,R])
    ("ground", "f2", 3, 8),
    ("ground", "f3", 3, 8),
    ("ground", "q", 4, 15),
    ("ground", "f5", 5, 24),
    ("int", "z", 3, 8),
    ("int", "z", 4, 15),
    ("dual", "f2", 3, 16),
    ("dual", "q", 4, 30),
    ("trunc3", "f3", 3, 24),
    ("group-c2", "f2", 3, 16),
    ("upper2", "f2", 3, 25),
    ("upper2", "f2", 4, 46),
    ("mat2", "f2", 3, 35),
    ("mat2", "f2", 4, 63),
]


@pytest.mark.parametrize("name,scal,n,expected", SL_DIMS)
def test_sl_dimension(name, scal, n, expected):
    dom = DOMS[scal]
    sl = build_sl(n, catalog_ring(name, dom))
    assert sl.dim == expected


def test_sl_embedding_roundtrip():
    sl = build_sl(3, catalog_ring("dual", F3))
    for (i, j) in [(0, 1), (1, 0), (2, 1), (0, 2)]:
        for lam in range(2):
            v = sl.eij(i, j, {lam: 1})
            glv = sl.to_gl(v)
            assert glv == sl.gl.eij(i, j, {lam: 1})
            assert sl.from_gl(glv) == v


def test_sl_rejects_vectors_outside():
    sl = build_sl(3, catalog_ring("ground", F2))
    gl = sl.gl
    with pytest.raises(ValueError):
        sl.from_gl({gl.eij_index(0, 0, 0): 1})   # E11 has nonzero trace


def test_sl_eij_diagonal_rejected():
    sl = build_sl(3, catalog_ring("ground", F2))
    with pytest.raises(ValueError):
        sl.eij(1, 1, {0: 1})


def test_sl_brackets_match_gl():
    sl = build_sl(3, catalog_ring("group-c2", F3))
    for s in range(sl.dim):
        for t in range(sl.dim):
            inside = sl.to_gl(sl.basis_bracket(s, t))
            outside = sl.gl.bracket(sl.basis[s], sl.basis[t])
            assert inside == outside


@given(st.integers(0, 2), st.integers(0, 2),
       st.dictionaries(st.integers(0, 1), st.integers(-4, 4), max_size=2))
def test_sl_eij_linear_in_ring_argument(i, j, a):
    if i == j:
        return
    sl = _SL_DUAL_F5
    a = {k: sl.ring.dom.normalize(c) for k, c in a.items()}
    a = {k: c for k, c in a.items() if c}
    lhs = sl.eij(i, j, a) if a else {}
    rhs: dict = {}
    for lam, c in a.items():
        for t, x in sl.eij(i, j, {lam: 1}).items():
            v = sl.dom.add(rhs.get(t, 0), sl.dom.mul(c, x))
            if v:
                rhs[t] = v
            else:
                rhs.pop(t, None)
    assert lhs == rhs


_SL_DUAL_F5 = build_sl(3, catalog_ring("dual", F5))


# ---------------------------------------------------------------------------
# boundary and homology


def test_boundary_matches_dense_assembly():
    for ring, dom in [("ground", F3), ("dual", F2)]:
        L = build_gl(2, catalog_ring(ring, dom))
        d2 = boundary(L, 2)
        assert d2.to_dense() == dense_d2(L)
        d3 = boundary(L, 3)
        assert d3.to_dense() == dense_d3(L)


def test_boundary_squares_to_zero_densely():
    L = build_gl(2, catalog_ring("dual", F3))
    A = dense_d2(L)
    B = dense_d3(L)
    n = L.dim
    for r in range(n):
        for c in range(n ** 3):
            acc = L.dom.zero
            for t in range(n * n):
                acc = L.dom.add(acc, L.dom.mul(A[r][t], B[t][c]))
            assert acc == L.dom.zero


def test_boundary_rejects_bad_degree_and_torsion():
    L = make_leibniz(F2, 2, {}, name="ab")
    with pytest.raises(ValueError):
        boundary(L, 1)
    with pytest.raises(ValueError):
        boundary(L, 4)
    T = make_leibniz(Z, 2, {}, moduli=[2, 0], name="t")
    with pytest.raises(ValueError):
        boundary(T, 2)
    with pytest.raises(ValueError):
        homology_hl(T, 2)


def test_homology_of_abelian_carriers():
    # zero bracket: d2 = d3 = 0, so HL1 = L and HL2 = L (x) L
    for dom in (F2, F3, Q):
        for dim in (1, 2, 3):
            L = make_leibniz(dom, dim, {}, name=f"ab{dim}")
            assert homology_hl(L, 1).invariants.dimension == dim
            assert homology_hl(L, 2).invariants.dimension == dim * dim
    Lz = make_leibniz(Z, 2, {}, name="abz")
    inv = homology_hl(Lz, 2).invariants
    assert inv.invariant_factors == [0, 0, 0, 0]


def test_homology_degree_validation():
    L = make_leibniz(F2, 1, {}, name="pt")
    with pytest.raises(ValueError):
        homology_hl(L, 3)


def test_d2_d3_consistency_guard_fires_on_broken_table():
    # bypass make_leibniz: a non-Leibniz table breaks d2 . d3 = 0
    bad = LeibnizAlgebra(F3, 2, {(0, 1): {0: 1}, (1, 0): {0: 1}},
                         ["e0", "e1"], [0, 0], "bad")
    with pytest.raises(AssertionError):
        homology_hl(bad, 2)


HOMOLOGY_RANKS = [
    # (builder, ring, scalar, n): results cross-checked against the dense
    # independent assembly below
    ("ground", "f2", 3),
    ("ground", "f3", 3),
    ("ground", "q", 3),
    ("dual", "f2", 3),
    ("group-c2", "f3", 3),
]


@pytest.mark.parametrize("name,scal,n", HOMOLOGY_RANKS)
def test_hl2_dimension_matches_dense_oracle(name, scal, n):
    dom = DOMS[scal]
    L = build_sl(n, catalog_ring(name, dom))
    rep = homology_hl(L, 2)
    r2 = dense_rank(dom, dense_d2(L))
    r3 = dense_rank(dom, dense_d3(L))
    assert rep.rank_out == r2
    assert rep.rank_in == r3
    assert rep.invariants.dimension == L.dim * L.dim - r2 - r3


def test_hl1_of_perfect_algebras_vanishes():
    for name, scal in [("ground", "f2"), ("dual", "f3"), ("int", "z")]:
        sl = build_sl(3, catalog_ring(name, DOMS[scal]))
        rep = homology_hl(sl, 1)
        assert rep.invariants.is_trivial


HL2_FROZEN = [
    # computed by this pipeline and equal to the independently tested
    # Hochschild/quotient data: dim HL2(sl_n R) = dim HH1(R) + 6 dim R_m
    # with m = 3 for n = 3, m = 2 for n = 4, and plain dim HH1(R) for n = 5
    ("ground", "f2", 3, "0"),
    ("ground", "f2", 4, "f2^6"),
    ("ground", "f2", 5, "0"),
    ("ground", "f3", 3, "f3^6"),
    ("ground", "f3", 4, "0"),
    ("ground", "q", 3, "0"),
    ("ground", "q", 4, "0"),
    ("dual", "f2", 3, "f2^2"),
    ("dual", "f2", 4, "f2^14"),
    ("dual", "q", 3, "q^1"),
    ("trunc3", "f3", 3, "f3^21"),
    ("group-c2", "f2", 4, "f2^14"),
    ("upper2", "f2", 4, "f2^12"),
    ("mat2", "f2", 3, "0"),
    ("mat2", "f2", 4, "0"),
]


@pytest.mark.parametrize("name,scal,n,expected", HL2_FROZEN)
def test_hl2_frozen_values(name, scal, n, expected):
    dom = DOMS[scal]
    L = build_sl(n, catalog_ring(name, dom))
    assert homology_hl(L, 2).invariants.describe() == expected


def test_hl2_integer_invariant_factors():
    sl3 = build_sl(3, catalog_ring("int", Z))
    assert homology_hl(sl3, 2).invariants.invariant_factors == [3] * 6
    sl4 = build_sl(4, catalog_ring("int", Z))
    assert homology_hl(sl4, 2).invariants.invariant_factors == [2] * 6


def test_homology_report_to_dict_shape():
    L = build_sl(3, catalog_ring("ground", F3))
    d = homology_hl(L, 2).to_dict()
    assert d["degree"] == 2
    assert d["dimension"] == 6
    assert d["square_zero_checked"] is True
    assert d["dim_chain"] == 64


# ---------------------------------------------------------------------------
# structural reports


def test_structural_report_abelian():
    L = make_leibniz(F2, 3, {}, name="ab3")
    rep = structural_report(L)
    assert not rep.is_perfect
    assert rep.center_rank == 3
    assert rep.abelianization_dim == 3


def test_structural_report_sl3():
    rep = structural_report(build_sl(3, catalog_ring("ground", F2)))
    assert rep.is_perfect
    assert rep.center_rank == 0
    assert rep.abelianization_dim == 0


def test_sl3_f3_has_central_scalars():
    # char 3 divides n = 3: the identity matrix is traceless and central
    sl = build_sl(3, catalog_ring("ground", F3))
    rep = structural_report(sl)
    assert rep.is_perfect
    assert rep.center_rank == 1
    gl = sl.gl
    ident = {gl.eij_index(i, i, 0): 1 for i in range(3)}
    assert is_central(sl, sl.from_gl(ident))


def test_structural_report_torsion_carrier():
    model = uce(build_sl(4, catalog_ring("int", Z)))
    rep = structural_report(model.total)
    assert rep.is_perfect
    assert rep.center_rank == 6
    for i in range(15, 21):
        assert is_central(model.total, {i: 1})


# ---------------------------------------------------------------------------
# universal central extensions


def test_uce_requires_perfect():
    with pytest.raises(ValueError):
        uce(make_leibniz(F2, 2, {}, name="ab"))


UCE_CASES = [
    ("ground", "f2", 4, 15, "f2^6"),
    ("ground", "f3", 3, 8, "f3^6"),
    ("dual", "f2", 3, 16, "f2^2"),
    ("trunc3", "f3", 4, 45, "f3^3"),
    ("int", "z", 3, 8, "Z/3^6"),
    ("int", "z", 4, 15, "Z/2^6"),
]


@pytest.mark.parametrize("name,scal,n,basedim,kernel", UCE_CASES)
def test_uce_kernel_and_shape(name, scal, n, basedim, kernel):
    dom = DOMS[scal]
    L = build_sl(n, catalog_ring(name, dom))
    model = uce(L)
    assert L.dim == basedim
    assert model.total.dim == basedim + model.kernel_invariants.dimension
    assert model.kernel_invariants.describe() == kernel
    # kernel invariants equal HL2 of the base
    assert model.kernel_invariants == homology_hl(L, 2).invariants
    # projection is a homomorphism with central kernel
    model.check_homomorphism_on_basis()
    model.check_kernel_central()
    # the total is perfect (universal central extensions are)
    assert structural_report(model.total).is_perfect


def test_uce_tensor_coords_match_bracket_table():
    L = build_sl(3, catalog_ring("ground", F3))
    model = uce(L)
    one = L.dom.one
    for s in range(0, L.dim, 3):
        for t in range(L.dim):
            got = model.tensor_coords({s * L.dim + t: one})
            expected = model.total.basis_bracket(s, t)
            assert model.total.eq_vec(got, expected)


def test_uce_tensor_coords_are_linear():
    L = build_sl(3, catalog_ring("ground", F2))
    model = uce(L)
    import random
    rng = random.Random(7)
    pair = L.dim * L.dim
    for _ in range(20):
        u = {rng.randrange(pair): 1 for _ in range(3)}
        v = {rng.randrange(pair): 1 for _ in range(3)}
        s = dict(u)
        for k, c in v.items():
            x = (s.get(k, 0) + c) % 2
            if x:
                s[k] = x
            else:
                s.pop(k, None)
        cu = model.tensor_coords(u)
        cv = model.tensor_coords(v)
        cs = model.tensor_coords(s)
        tot = dict(cu)
        for k, c in cv.items():
            x = (tot.get(k, 0) + c) % 2
            if x:
                tot[k] = x
            else:
                tot.pop(k, None)
        assert model.total.eq_vec(cs, tot)


def test_uce_over_q_with_nontrivial_kernel():
    # exercises the fraction-free multiplier path end to end: the total
    # algebra is re-validated through make_leibniz
    L = build_sl(3, catalog_ring("dual", Q))
    model = uce(L)
    assert model.kernel_invariants.describe() == "q^1"
    assert structural_report(model.total).center_rank == 1


def test_uce_projection_and_kernel_parts():
    model = uce(build_sl(3, catalog_ring("ground", F3)))
    v = {0: 1, 8: 2, 10: 1}
    assert model.project(v) == {0: 1}
    assert model.kernel_part(v) == {0: 2, 2: 1}
