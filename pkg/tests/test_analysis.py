import pytest

from k3hilb import analysis, zlinalg
from k3hilb.analysis import (
    bns_form_signature,
    class_K,
    class_alpha_generator,
    class_one_power,
    class_vector,
    class_x_power,
    cokernel_report,
    integrate,
    middle_lattice,
    mixed_matrix,
    sym_power_matrix,
    top_class,
    verify_quotient_generator,
)
from k3hilb.hilb_basis import canonical_class, hilb_base
from k3hilb.qin_wang import cup_int

c = canonical_class


def test_integrate():
    assert integrate(3, {top_class(3): 5}) == 5
    assert integrate(2, {top_class(2): -7}) == -7
    assert integrate(2, {}) == 0
    with pytest.raises(ValueError):
        integrate(2, {c((1, 1), (1, 0)): 1})  # degree 2, not top


def test_sym_power_matrix_shapes():
    m22 = sym_power_matrix(2, 2)
    assert len(m22) == 276 and len(m22[0]) == 276
    m32 = sym_power_matrix(3, 2)
    assert len(m32) == 299 and len(m32[0]) == 276
    m23 = sym_power_matrix(2, 3)
    assert len(m23) == 23 and len(m23[0]) == 2300


def test_sym_power_matrix_parallel_matches_serial():
    assert sym_power_matrix(2, 2, jobs=2) == sym_power_matrix(2, 2)


def test_verbitsky_full_column_rank():
    for n, k in ((2, 2), (3, 2), (4, 2)):
        assert zlinalg.has_full_column_rank(sym_power_matrix(n, k))


def test_sym2_cokernels_required():
    r2 = cokernel_report(2, "sym2")
    assert r2.cokernel.torsion == (2,) * 22 + (10,)  # (Z/2)^23 + Z/5
    assert r2.cokernel.free_rank == 0
    r3 = cokernel_report(3, "sym2", check_generators=True)
    assert r3.cokernel.torsion == (3,)
    assert r3.cokernel.free_rank == 23
    assert all(g.ok for g in r3.generator_checks)
    r4 = cokernel_report(4, "sym2")
    assert r4.cokernel.torsion == ()
    assert r4.cokernel.free_rank == 24


def test_sym3_cokernel_hilb2():
    r = cokernel_report(2, "sym3", check_generators=True)
    assert r.cokernel.torsion == (2,)
    assert r.cokernel.free_rank == 0
    assert r.generator_checks[0].name == "x^(2)"
    assert r.generator_checks[0].ok


def test_freeness_n4_k2():
    # the degree-4 quotient is torsion-free once n is large enough
    assert cokernel_report(4, "sym2").cokernel.torsion == ()


def test_generator_helpers():
    assert class_one_power(3) == {c((3,), (0,)): 1}
    assert class_x_power(2) == {c((2,), (23,)): 1}
    gen = class_alpha_generator(5)
    assert gen[c((1, 1, 1), (5, 5, 5))] == 1
    assert gen[c((2, 2, 1), (0, 0, 5))] == 6
    with pytest.raises(ValueError):
        class_alpha_generator(0)


def test_class_K_is_integral_and_has_expected_support():
    K = class_K()
    assert K[c((2,), (23,))] == 1
    assert K[c((2, 1), (0, 23))] == -1
    # hyperbolic pair contributions: off-diagonal pairing 1 gives coefficient 3
    assert K[c((2, 1, 1), (0, 1, 2))] == 3
    # all coefficients are integers by construction
    assert all(isinstance(v, int) for v in K.values())


def test_class_vector_drops_overweight():
    vec = class_vector({c((2, 2), (0, 0)): 7, c((2,), (23,)): 1}, 3, 6)
    basis = hilb_base(3, 6)
    assert vec[basis.index(((2, 1), (23, 0)))] == 1
    assert sum(abs(x) for x in vec) == 1  # the weight-4 symbol vanished at n=3


def test_verify_quotient_generator_known_cases():
    m3 = sym_power_matrix(3, 2)
    assert verify_quotient_generator(3, class_one_power(3), m3, 3, 4)
    assert not verify_quotient_generator(3, class_one_power(3), m3, 5, 4)
    m23 = sym_power_matrix(2, 3)
    assert verify_quotient_generator(2, class_x_power(2), m23, 2, 6)


def test_middle_lattice_hilb2():
    report = middle_lattice(2, check_unimodular=True)
    assert report.rank == 276
    assert report.parity == "odd"
    assert report.signature == 156
    assert report.unimodular is True


def test_middle_gram_parallel_matches_serial():
    assert analysis.middle_gram_matrix(2, jobs=2) == analysis.middle_gram_matrix(2)


def test_gram_symmetric():
    g = analysis.middle_gram_matrix(2)
    assert all(g[i][j] == g[j][i] for i in range(len(g)) for j in range(len(g)))


def test_odd_witness_self_pairing():
    # the hyperbolic witness class has self-pairing one at n = 2 and 4
    for k, n in ((0, 2), (1, 4)):
        w = c((1,) * (k + 2), (1, 2) + (23,) * k)
        sq = cup_int(w, w, n)
        assert integrate(n, sq) == 1


def test_bns_signature():
    assert bns_form_signature() == 17


def test_mixed_matrix_shape():
    m = mixed_matrix(2)
    assert len(m) == 23
    assert len(m[0]) == 23 * 276


# ---------------------------------------------------------------------------
# stretch tier: hours-scale verifications, run on demand


@pytest.mark.stretch
def test_sym3_cokernel_hilb3_stretch():
    r = cokernel_report(3, "sym3")
    assert r.cokernel.torsion == (2,) * 230 + (36,) * 22 + (72,)
    assert r.cokernel.free_rank == 254


@pytest.mark.stretch
def test_sym3_cokernel_hilb4_stretch():
    r = cokernel_report(4, "sym3")
    assert r.cokernel.torsion == (2,)
    assert r.cokernel.free_rank == 552


@pytest.mark.stretch
def test_sym3_free_hilb5_stretch():
    assert cokernel_report(5, "sym3").cokernel.torsion == ()


@pytest.mark.stretch
def test_mixed_cokernel_hilb3_stretch():
    r = cokernel_report(3, "h2xh4", check_generators=True)
    assert r.cokernel.torsion == (3,) * 23
    assert r.cokernel.free_rank == 0
    assert all(g.ok for g in r.generator_checks)


@pytest.mark.stretch
def test_mixed_cokernel_hilb4_stretch():
    r = cokernel_report(4, "h2xh4", check_generators=True)
    assert r.cokernel.torsion == (2,) + (6,) * 22 + (108,)
    assert r.cokernel.free_rank == 0
    assert all(g.ok for g in r.generator_checks)


@pytest.mark.stretch
def test_mixed_cokernel_hilb5_stretch():
    r = cokernel_report(5, "h2xh4", check_generators=True)
    assert r.cokernel.torsion == ()
    assert r.cokernel.free_rank == 23
    assert all(g.ok for g in r.generator_checks)


@pytest.mark.stretch
def test_middle_lattice_hilb3_stretch():
    report = middle_lattice(3)
    assert report.rank == 2554
    assert report.parity == "even"
    assert report.signature == -1152
