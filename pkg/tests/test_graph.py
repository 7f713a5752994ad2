import numpy as np
import pytest

from cartan_qubit import _backend, graph, tenfold
from cartan_qubit.errors import GaplessSymbol
from cartan_qubit.graph import GraphParams
from cartan_qubit.kak import phi_forward
from cartan_qubit.pauli import PAULI_PRODUCTS, h_ai

from conftest import haar_su2


def random_params(rng, scale=3.0):
    return GraphParams(*rng.uniform(-scale, scale, size=3))


def test_graph_hamiltonian_examples():
    assert np.array_equal(graph.graph_hamiltonian(GraphParams(0, 0, 0)), np.zeros((4, 4)))
    h = graph.graph_hamiltonian(GraphParams(1, 3, 0))
    assert h[0, 1] == h[1, 0] == -2
    assert h[2, 3] == h[3, 2] == 4
    assert np.all(np.diag(h) == 0)


def test_graph_matches_h_ai(rng):
    for _ in range(100):
        p = random_params(rng)
        back = graph.sites_to_computational(graph.graph_hamiltonian(p))
        assert np.allclose(back, p.to_pauli().to_matrix(), atol=1e-14)


def test_params_must_be_finite():
    with pytest.raises(ValueError):
        GraphParams(np.nan, 0, 0)


def test_weyl_symbol_examples():
    s = graph.weyl_symbol(GraphParams(1, 3, 5))
    assert s.h1 == {0.0: 3.0, np.pi: 7.0}
    assert s.h2 == {0.0: -1.0, np.pi: -9.0}
    s = graph.weyl_symbol(GraphParams(0, 0, 2.5))
    assert set(s.h1.values()) == {2.5} and set(s.h2.values()) == {-2.5}


def test_symbol_eigenvalues(rng):
    for _ in range(100):
        p = random_params(rng)
        s = graph.weyl_symbol(p)
        sym = sorted(list(s.h1.values()) + list(s.h2.values()))
        assert np.allclose(sym, np.linalg.eigvalsh(graph.graph_hamiltonian(p)), atol=1e-12)


def test_spectrum_examples():
    gamma = 0.7
    lines = {l.label: l.energy for l in graph.spectrum(GraphParams(1, 3, gamma))}
    assert np.isclose(lines["1+"], gamma - 2) and np.isclose(lines["1-"], gamma + 2)
    assert np.isclose(lines["2+"], -gamma + 4) and np.isclose(lines["2-"], -gamma - 4)
    assert all(l.energy == 0 for l in graph.spectrum(GraphParams(0, 0, 0)))


def test_spectrum_eigenpairs(rng):
    for _ in range(100):
        p = random_params(rng)
        h = p.to_pauli().to_matrix()
        for line in graph.spectrum(p):
            v = line.state.amplitudes
            assert np.allclose(h @ v, line.energy * v, atol=1e-12)


def test_invariant_examples():
    r = graph.invariant_nu(GraphParams(1, 3, 5))
    assert (r.nu1, r.nu2, r.nu) == (1, 1, 2)
    r = graph.invariant_nu(GraphParams(1, 3, 0))
    assert (r.nu1, r.nu2, r.nu) == (0, 0, 0)
    assert graph.invariant_nu(GraphParams(1, 3, -5)).nu == -2
    assert r.to_json()["spectrum"]["2-"] == -4.0


def test_invariant_gapless():
    for gamma in (-4, -2, 2, 4):
        with pytest.raises(GaplessSymbol):
            graph.invariant_nu(GraphParams(1, 3, gamma))


def test_invariant_ranges(rng):
    seen = set()
    for _ in range(500):
        r = graph.invariant_nu(random_params(rng))
        assert r.nu1 in (-1, 0, 1) and r.nu2 in (-1, 0, 1)
        assert r.nu == r.nu1 + r.nu2
        seen.add(r.nu)
    assert seen == {-2, -1, 0, 1, 2}


def test_nu_from_signature(rng):
    # ν = (n+ - n-)/2 for the block-oriented Hamiltonian h1 ⊕ (-h2)
    for _ in range(500):
        p = random_params(rng)
        nu = graph.invariant_nu(p).nu
        k = tenfold.flatten(graph.nu_hamiltonian(p)).k_negative
        assert nu == ((4 - k) - k) // 2
        m = graph.sites_to_computational(graph.nu_hamiltonian(p))
        assert np.allclose(m, PAULI_PRODUCTS[3, 3] @ p.to_pauli().to_matrix())


def test_nu_survives_local_conjugation(rng):
    for _ in range(50):
        p = random_params(rng)
        m = graph.sites_to_computational(graph.nu_hamiltonian(p))
        q = phi_forward(haar_su2(rng), haar_su2(rng)).real
        # SO(4) locals in the magic basis act as real orthogonal conjugations
        k = tenfold.flatten(q @ m @ q.T).k_negative
        assert graph.invariant_nu(p).nu == 2 - k


def test_crossing_points():
    c = graph.crossing_points(1, 3)
    assert sorted(c.values()) == [-4, -2, 2, 4]


def test_fig2_scan(kernels):
    grid = np.arange(-6, 6.0001, 0.5)
    scan = graph.phase_scan(1, 3, grid)
    rows = scan.rows()
    boundaries = [g for g, nu, _ in rows if nu == graph.BOUNDARY]
    assert boundaries == [-4, -2, 2, 4]
    seq = [nu for _, nu, _ in rows if nu != graph.BOUNDARY]
    steps = [seq[0]] + [b for a, b in zip(seq, seq[1:]) if a != b]
    assert steps == [-2, -1, 0, 1, 2]
    assert [round(g, 12) for _, g in scan.crossings()] == [-4, -2, 2, 4]
    assert rows[4] == (-4.0, graph.BOUNDARY, ("2-",))


def test_zero_hopping_scan(kernels):
    scan = graph.phase_scan(0, 0, np.linspace(-1, 1, 21))
    rows = scan.rows()
    assert [g for g, nu, _ in rows if nu == graph.BOUNDARY] == [0.0]
    assert np.allclose(scan.lam[:, 0], -scan.lam[:, 3])
    assert np.allclose(scan.lam[:, 1], -scan.lam[:, 2])
    assert np.array_equal(scan.lam[:, 0], scan.lam[:, 1])


def test_scan_matches_pointwise(rng, kernels):
    alpha, beta = rng.uniform(-2, 2, size=2)
    grid = rng.uniform(-5, 5, size=40)
    scan = graph.phase_scan(alpha, beta, grid)
    for i, g in enumerate(grid):
        r = graph.invariant_nu(GraphParams(alpha, beta, g))
        assert (scan.nu1[i], scan.nu2[i]) == (r.nu1, r.nu2)
        assert np.allclose(scan.lam[i], [r.spectrum[l] for l in graph.LINE_LABELS])


def test_index_consistency(rng, kernels):
    # each unit step of ν1 (ν2) sits on a zero of a λ1 (λ2) line, and with γ
    # increasing every crossing raises ν by one
    for _ in range(50):
        alpha, beta = rng.uniform(-3, 3, size=2)
        grid = np.linspace(-8, 8, 4001)
        scan = graph.phase_scan(alpha, beta, grid)
        gapped = np.flatnonzero(~scan.boundary)
        for i, j in zip(gapped, gapped[1:]):
            d1 = int(scan.nu1[j]) - int(scan.nu1[i])
            d2 = int(scan.nu2[j]) - int(scan.nu2[i])
            lam_i, lam_j = scan.lam[i], scan.lam[j]
            crossed = (np.sign(lam_i) != np.sign(lam_j)) | (scan.lam[i:j + 1] == 0).any(axis=0)
            assert d1 == int(crossed[:2].sum())
            assert d2 == int(crossed[2:].sum())
            if d1 or d2:
                labels = set().union(*scan.zero_modes[i + 1:j + 1])
                assert {graph.LINE_LABELS[n] for n in np.flatnonzero(crossed)} <= labels


def test_single_boundary_steps(kernels):
    scan = graph.phase_scan(1, 3, np.linspace(-6, 6, 1201))
    nu1, nu2 = scan.nu1[~scan.boundary], scan.nu2[~scan.boundary]
    assert set(np.abs(np.diff(nu1))) <= {0, 1}
    assert set(np.abs(np.diff(nu2))) <= {0, 1}


def test_csv_layout(kernels):
    text = graph.phase_scan(1, 3, [-5.0, 2.0, 5.0]).to_csv()
    lines = text.splitlines()
    assert lines[0] == ("gamma,lambda_1_plus,lambda_1_minus,lambda_2_plus,lambda_2_minus,"
                        "nu1,nu2,nu,boundary_flag,zero_mode_labels")
    assert lines[1].split(",")[5:9] == ["-1", "-1", "-2", "0"]
    # 1+ vanishes at γ = 2; 1- and 2- changed sign since the previous row
    assert lines[2].split(",")[8:] == ["1", "1+;1-;2-"]
    assert len(lines) == 4


def test_scan_backends_agree(rng):
    grid = rng.uniform(-6, 6, size=500)
    outs = []
    for name, mod in sorted(_backend.available_kernels().items()):
        outs.append(mod.graph_scan(1.0, 3.0, grid, graph.BOUNDARY_REL))
    for other in outs[1:]:
        for a, b in zip(outs[0], other):
            assert np.array_equal(a, b)


def test_scan_rejects_nonfinite():
    with pytest.raises(ValueError):
        graph.phase_scan(1, 3, [0.0, np.inf])


def test_report_zero_modes(kernels):
    scan = graph.phase_scan(1, 3, [1.9, 2.0, 2.1])
    r = scan.report(1)
    assert ("1-", "|1,->") in r.zero_modes or ("1+", "|1,+>") in r.zero_modes
    assert np.allclose(h_ai(1, 3, 2).to_matrix() @ graph.bell_state("1+").amplitudes, 0)
