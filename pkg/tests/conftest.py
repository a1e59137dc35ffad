"""Shared oracles and fixtures.

The oracles here deliberately avoid the package's FFT path: the lattice
Hamiltonian is assembled as a dense Laplacian and diagonalized with
``numpy.linalg.eigh``.
"""

import re

import numpy as np
import pytest
from scipy.linalg import expm

from nwlattice import LatticeSpec

ACCEPTANCE_LINES = []


def dense_laplacian(n, a):
    lap = -2.0 * np.eye(n)
    for j in range(n):
        lap[j, (j + 1) % n] += 1.0
        lap[j, (j - 1) % n] += 1.0
    return lap / a ** 2


def dense_power(spec, exponent):
    """``H**exponent`` through a full eigendecomposition of ``m² - Δ``."""
    lap = dense_laplacian(spec.n_sites, spec.spacing)
    w, v = np.linalg.eigh(spec.mass ** 2 * np.eye(spec.n_sites) - lap)
    return (v * np.sqrt(w) ** exponent) @ v.T


def xp_symplectic_spectrum(spec, sites):
    """Williamson spectrum of the standard restriction from ``X = H^{-1}/2``, ``P = H/2``."""
    idx = np.ix_(sites, sites)
    X = 0.5 * dense_power(spec, -1)[idx]
    P = 0.5 * dense_power(spec, 1)[idx]
    return np.sort(np.sqrt(np.linalg.eigvals(X @ P).real))


def xp_entropy(nu):
    nu = np.asarray(nu)
    out = 0.0
    for x in nu:
        out += (x + 0.5) * np.log(x + 0.5)
        if x > 0.5:
            out -= (x - 0.5) * np.log(x - 0.5)
    return out


def fock_number_expectation(coeffs, cutoff=6):
    """Mean of ``N_1 + N_2`` in ``exp(iΦ(g))|0⟩`` on two truncated modes."""
    d = cutoff + 1
    a = np.diag(np.sqrt(np.arange(1, d)), 1)
    modes = [np.kron(a, np.eye(d)), np.kron(np.eye(d), a)]
    ag = sum(np.conj(c) * m for c, m in zip(coeffs, modes))
    phi = (ag + ag.conj().T) / np.sqrt(2)
    vac = np.zeros(d * d)
    vac[0] = 1.0
    psi = expm(1j * phi) @ vac
    return sum(np.vdot(psi, m.conj().T @ m @ psi).real for m in modes)


def brute_force_orbit_rank(psi):
    """Rank of ``{(E_ij ⊗ 1) ψ}`` over all matrix units of the first factor."""
    d1, d2 = psi.shape
    vecs = []
    for i in range(d1):
        for j in range(d1):
            e = np.zeros((d1, d1))
            e[i, j] = 1.0
            vecs.append((e @ psi).ravel())
    return np.linalg.matrix_rank(np.array(vecs), tol=1e-10)


def record_acceptance(label, passed, detail):
    ACCEPTANCE_LINES.append(
        f"criterion {label:>2}: {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def lat16():
    return LatticeSpec(16)


@pytest.fixture
def lat32():
    return LatticeSpec(32)


def _order(line):
    label = line.split()[1].rstrip(":")
    return int(re.match(r"\d+", label).group()), label


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=_order):
            terminalreporter.write_line(line)
