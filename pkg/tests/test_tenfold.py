import numpy as np
import pytest

from cartan_qubit import tenfold as tf
from cartan_qubit.entanglement import (Antiunitary, make_kane_mele_theta, make_particle_hole_2fermion,
                                       make_time_reversal_2q)
from cartan_qubit.errors import (GaplessHamiltonian, InconsistentSymmetries, NotHermitian,
                                 OutOfTableRange, UnsupportedClass)
from cartan_qubit.linalg import expm_i
from cartan_qubit.pauli import I2, PAULI_PRODUCTS, SZ, PauliDecomposition, h_ai

from conftest import haar_unitary, random_hermitian

WOOTTERS = make_time_reversal_2q()


def random_hp(rng):
    coeffs = np.zeros((4, 4))
    coeffs[0, 0] = rng.normal()
    coeffs[1:, 1:] = rng.normal(size=(3, 3))
    return PauliDecomposition.from_coefficients(coeffs).to_matrix()


def symmetrize(h, op, sign):
    """Projects ``h`` onto matrices with ``op h op^-1 = sign * h``."""
    return (h + sign * op.conjugate(h)) / 2


# detection

def test_detect_time_reversal(rng):
    h = random_hp(rng)
    assert tf.detect_symmetry(h, WOOTTERS) is tf.Symmetry.TIME_REVERSAL
    assert tf.detect_symmetry(h + np.kron(SZ, I2), WOOTTERS) is None


def test_detect_kane_mele(rng):
    km = make_kane_mele_theta()
    h = symmetrize(random_hermitian(rng), km, +1)
    assert tf.detect_symmetry(h, km) is tf.Symmetry.TIME_REVERSAL
    assert km.square == -1


def test_detect_particle_hole(rng):
    pi = make_particle_hole_2fermion()
    h = symmetrize(random_hermitian(rng, 6), pi, -1)
    assert tf.detect_symmetry(h, pi) is tf.Symmetry.PARTICLE_HOLE


def test_detect_dimension_mismatch(rng):
    with pytest.raises(ValueError):
        tf.detect_symmetry(random_hermitian(rng, 6), WOOTTERS)


# classification

def test_classify_ai(rng):
    for _ in range(20):
        assert tf.classify(random_hp(rng), WOOTTERS).name == "AI"


def test_classify_a_with_fields(rng):
    for axis in (PAULI_PRODUCTS[1, 0], PAULI_PRODUCTS[0, 3]):
        assert tf.classify(random_hp(rng) + 0.3 * axis, WOOTTERS).name == "A"
    assert tf.classify(random_hermitian(rng)).name == "A"


def test_classify_d(rng):
    pi = make_particle_hole_2fermion()
    h = symmetrize(random_hermitian(rng, 6), pi, -1)
    assert tf.classify(h, pi=pi).name == "D"


def test_classify_aii(rng):
    km = make_kane_mele_theta()
    h = symmetrize(random_hermitian(rng), km, +1)
    assert tf.classify(h, theta=km).name == "AII"


def test_classify_bdi(rng):
    b = rng.normal(size=(2, 2))
    h = np.block([[np.zeros((2, 2)), b], [b.T, np.zeros((2, 2))]])
    theta = Antiunitary.from_unitary(np.eye(4))
    pi = Antiunitary.from_unitary(np.kron(SZ, I2))
    assert tf.classify(h, theta, pi).name == "BDI"


def test_classify_aiii(rng):
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    h = np.block([[np.zeros((2, 2)), z], [z.conj().T, np.zeros((2, 2))]])
    s = np.kron(SZ, I2)
    assert tf.classify(h, chiral=s).name == "AIII"
    assert tf.classify(h + np.eye(4), chiral=s).name == "A"


def test_inconsistent_symmetries():
    # each symmetry holds within tolerance but their violations add up in S = ΘΠ
    tol = 1e-6
    b = np.array([[0.2, 0.1], [0.0, 0.3]])
    h0 = np.block([[np.zeros((2, 2)), b], [b.T, np.zeros((2, 2))]])
    anti = np.zeros((4, 4))
    anti[0, 1], anti[1, 0] = 1.0, -1.0
    sym = np.diag([1.0, 1.0, 0.0, 0.0])
    eps = 0.4 * tol / np.linalg.norm(anti)
    h = h0 + eps * (1j * anti + sym)
    theta = Antiunitary.from_unitary(np.eye(4))
    pi = Antiunitary.from_unitary(np.kron(SZ, I2))
    assert tf.detect_symmetry(h, theta, tol) is tf.Symmetry.TIME_REVERSAL
    assert tf.detect_symmetry(h, pi, tol) is tf.Symmetry.PARTICLE_HOLE
    with pytest.raises(InconsistentSymmetries):
        tf.classify(h, theta, pi, tol)


def test_classify_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        tf.classify(np.triu(np.ones((4, 4))))


def test_classification_conjugation_covariant(rng):
    km = make_kane_mele_theta()
    pi = make_particle_hole_2fermion()
    cases = [(random_hp(rng), WOOTTERS, None),
             (symmetrize(random_hermitian(rng), km, +1), km, None),
             (symmetrize(random_hermitian(rng, 6), pi, -1), None, pi),
             (random_hermitian(rng), WOOTTERS, None)]
    for h, theta, p in cases:
        before = tf.classify(h, theta, p)
        for _ in range(5):
            u = haar_unitary(rng, h.shape[0])
            moved = [None if op is None else Antiunitary.from_unitary(op.in_basis(u).u)
                     for op in (theta, p)]
            assert tf.classify(u @ h @ u.conj().T, *moved) == before


def test_pauli_candidates(rng):
    labels = {label: sym for label, _, sym in tf.pauli_candidates(random_hp(rng))}
    assert labels["yy"] is tf.Symmetry.TIME_REVERSAL
    # H_AI is also real, so plain conjugation is a symmetry
    labels = {label: sym for label, _, sym in tf.pauli_candidates(h_ai(1, 2, 3).to_matrix())}
    assert labels["11"] is tf.Symmetry.TIME_REVERSAL
    with pytest.raises(ValueError):
        tf.pauli_candidates(np.eye(2))


def test_table_rows_are_unique():
    triples = {(c.theta_square, c.pi_square, c.chiral) for c in tf.CLASSES.values()}
    assert len(triples) == 10
    for c in tf.CLASSES.values():
        assert tf.class_from_symmetries(c.theta_square, c.pi_square, c.chiral) == c
    with pytest.raises(ValueError):
        tf.class_by_name("Q")


# flattening

def test_flatten_diagonal():
    r = tf.flatten(np.diag([2.0, 1.0, -1.0, -3.0]))
    assert r.k_negative == 2
    assert np.allclose(r.flattened, np.diag([1, 1, -1, -1]))
    assert r.gap == 1.0


def test_flatten_h_ai():
    assert tf.flatten(h_ai(1, 3, 0).to_matrix()).k_negative == 2
    with pytest.raises(GaplessHamiltonian):
        tf.flatten(h_ai(1, 3, 2).to_matrix())


def test_flatten_is_involution(rng):
    for _ in range(20):
        r = tf.flatten(random_hermitian(rng))
        f = r.flattened
        assert np.allclose(f, f.conj().T)
        assert np.allclose(f @ f, np.eye(4), atol=1e-12)
        assert r.k_negative == int(np.sum(np.linalg.eigvalsh(f) < 0))


def test_flatten_commutes_with_symmetries(rng):
    for _ in range(20):
        h = random_hermitian(rng)
        f = tf.flatten(h).flattened
        for t in rng.uniform(-3, 3, size=3):
            u = expm_i(h @ h - 2 * h, t)  # any function of h commutes with h
            assert np.allclose(u @ f, f @ u, atol=1e-10)


def test_signature_invariant_examples(rng):
    assert tf.signature_invariant(np.diag([1.0, 2, 3, 4]), "A") == 0
    assert tf.signature_invariant(h_ai(1, 3, 5).to_matrix(), tf.CLASSES["AI"]) == 2
    values = {tf.signature_invariant(np.diag([1.0] * (4 - k) + [-1.0] * k), "A") for k in range(5)}
    assert values == {0, 1, 2, 3, 4}
    with pytest.raises(UnsupportedClass):
        tf.signature_invariant(np.eye(4), "D")


def test_signature_invariant_constant_on_gapped_paths(rng):
    for _ in range(100):
        h0 = random_hermitian(rng)
        x = random_hermitian(rng)
        k0 = tf.signature_invariant(h0, "A")
        for s in np.linspace(0, 1, 11):
            # unitary rotation and positive rescaling never close the gap
            u = expm_i(x, s)
            assert tf.signature_invariant((1 + s) * u @ h0 @ u.conj().T, "A") == k0


def test_signature_invariant_monotone_paths(rng):
    # adding a positive term can only remove negative eigenvalues
    for _ in range(100):
        h0 = random_hermitian(rng)
        z = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        pos = z @ z.conj().T
        ks = []
        for s in np.linspace(0, 3, 31):
            try:
                ks.append(tf.signature_invariant(h0 + s * pos, "A"))
            except GaplessHamiltonian:
                continue
        assert all(a >= b for a, b in zip(ks, ks[1:]))


# Clifford bookkeeping

def test_clifford_examples():
    c = tf.clifford_signature(0, 0)
    assert (c.w, c.s, c.d) == (1, 0, 0)
    assert tf.clifford_signature(1, 1).w == 2
    assert tf.clifford_signature(2, 0).w == 2
    c = tf.clifford_signature(2, 1)
    assert c.w == 4 and c.d is None and c.s == 1
    assert tf.clifford_signature(0, 3).s == 5
    with pytest.raises(ValueError):
        tf.clifford_signature(-1, 0)


# homotopy tables

STABLE_PI0 = {"A": "Z", "AIII": "0", "AI": "Z", "BDI": "Z2", "D": "Z2", "DIII": "0",
               "AII": "2Z", "CII": "0", "C": "0", "CI": "0"}


def test_stable_pi0_matches_table_i():
    for name, text in STABLE_PI0.items():
        assert tf.stable_homotopy(name, 0) == tf.HomotopyGroup.parse(text)


def test_stable_examples():
    assert tf.stable_homotopy("AI", 0) == tf.Z
    assert tf.stable_homotopy("AII", 0) == tf.TWO_Z
    assert tf.stable_homotopy("D", 1) == tf.Z2
    assert tf.stable_homotopy("A", 2) == tf.Z
    assert tf.stable_homotopy("AIII", -1) == tf.Z
    assert tf.stable_homotopy("AI", 8) == tf.stable_homotopy("AI", 0)


def test_table_iii_matches_lookup():
    for name, row in tf.DIMENSION_TABLE.items():
        for d, group in enumerate(row):
            assert tf.stable_homotopy(name, d) == group


def test_bott_shift_on_stored_tables():
    # π_i(R_j) = π_{i-1}(R_{j+1}); in dimension form the row one step up the
    # clock, one column further right, holds the same group
    for order in (tf.REAL_ORDER, tf.COMPLEX_ORDER):
        n = len(order)
        for s, name in enumerate(order):
            nxt = order[(s + 1) % n]
            for d in range(3):
                assert tf.DIMENSION_TABLE[name][d] == tf.DIMENSION_TABLE[nxt][d + 1]
    for j in range(8):
        for i in range(1, 8):
            assert tf.stable_pi(i, f"R{j}") == tf.stable_pi(i - 1, f"R{(j + 1) % 8}")
    assert tf.stable_pi(1, "C0") == tf.stable_pi0("C1")


def test_homotopy_group_parse():
    for text in ("0", "Z", "2Z", "Z2", "Z5"):
        assert str(tf.HomotopyGroup.parse(text)) == text
    assert tf.ZMod(2) == tf.Z2
    with pytest.raises(ValueError):
        tf.HomotopyGroup.parse("Q")
    with pytest.raises(ValueError):
        tf.ZMod(1)


FINITE_CELLS = [
    ("C0", 0, lambda n: tf.ZMod(n + 1), tf.ZERO),
    ("C0", 1, lambda n: tf.Z, tf.ZERO),
    ("C0", 2, lambda n: tf.Z, tf.ZERO),
    ("R0", 0, lambda n: tf.ZMod(n + 1), tf.Z2),
    ("R0", 1, lambda n: tf.Z, tf.Z2),
    ("R0", 2, lambda n: tf.Z, tf.ZERO),
    ("R7", 0, lambda n: tf.ZERO, tf.Z),
    ("R7", 1, lambda n: tf.ZERO, tf.ZERO),
    ("R7", 2, lambda n: tf.ZERO, tf.Z),
]


@pytest.mark.parametrize("space,variant,pi0,pi1", FINITE_CELLS)
def test_finite_cells(space, variant, pi0, pi1):
    for n in (4, 6, 8):
        assert tf.finite_homotopy(space, variant, n) == (pi0(n), pi1)


def test_finite_examples_and_ranges():
    assert tf.finite_homotopy("R0", "disjoint", 4)[0] == tf.ZMod(5)
    assert tf.finite_homotopy("C0", "disjoint", 4)[0] == tf.ZMod(5)
    assert tf.finite_homotopy("R7", "u_over_o", 4)[1] == tf.Z
    assert tf.finite_homotopy("R7", "su_over_so", 4)[1] == tf.ZERO
    assert tf.finite_homotopy("R7", "alt_zn", 4) == (None, tf.ZMod(4))
    assert tf.finite_homotopy("R7", 0, 3) == (tf.ZERO, tf.Z)
    with pytest.raises(OutOfTableRange):
        tf.finite_homotopy("R7", 0, 2)
    with pytest.raises(OutOfTableRange):
        tf.finite_homotopy("R0", 0, 3)
    with pytest.raises(OutOfTableRange):
        tf.finite_homotopy("C0", "z_times_u", 5)
    with pytest.raises(OutOfTableRange):
        tf.finite_homotopy("R3", 0, 4)
    with pytest.raises(OutOfTableRange):
        tf.finite_homotopy("R7", 9, 4)
    with pytest.raises(OutOfTableRange):
        tf.finite_homotopy("R7", "nope", 4)
    assert len(tf.finite_variants("C0")) == 3
