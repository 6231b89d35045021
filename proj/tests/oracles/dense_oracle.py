"""Dense-matrix reference values frozen into the C++ tests.

Every quantity is computed by materializing full 2^N x 2^N operators with
numpy Kronecker products. Site 0 is the least significant bit.
"""
import itertools
import math

import numpy as np

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"x": X, "y": Y, "z": Z}
LOWER = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1|


def site_op(n, site, op):
    out = np.array([[1]], dtype=complex)
    for j in reversed(range(n)):
        out = np.kron(out, op if j == site else I2)
    return out


def dicke(n, k):
    psi = np.zeros(2 ** n, dtype=complex)
    for b in range(2 ** n):
        if bin(b).count("1") == k:
            psi[b] = 1
    return psi / np.linalg.norm(psi)


def ghz(n):
    psi = np.zeros(2 ** n, dtype=complex)
    psi[0] = psi[-1] = 1 / math.sqrt(2)
    return psi


def sf_operator(n, a, b, phase):
    m = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for i in range(n):
        for j in range(i + 1, n):
            m += np.exp(1j * phase * (i - j)) * site_op(n, i, PAULI[a]) @ site_op(n, j, PAULI[b])
    return m


def ev(psi, m):
    return np.vdot(psi, m @ psi)


def witness_dicke(psi, n):
    s = sum(ev(psi, sf_operator(n, a, a, 0.0)).real * c for a, c in (("x", 1), ("y", 1), ("z", -1)))
    return 1 - 2 / (n * (n - 1)) * s


def c_alpha(psi, n, a, phase):
    return (ev(psi, sf_operator(n, a, a, phase)) + ev(psi, sf_operator(n, a, a, -phase))).real / (n * (n - 1))


def b_intensity(psi, n, a0, a1, phi, phase):
    b = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for j in range(n):
        b += (a0 * np.exp(1j * phi) * site_op(n, j, LOWER)
              + a1 * np.exp(-1j * phi) * site_op(n, j, LOWER.conj().T)) * np.exp(1j * phase * j)
    return ev(psi, b.conj().T @ b).real


def sep_corr(psi, n, a, b, m):
    return sum(ev(psi, site_op(n, k, PAULI[a]) @ site_op(n, k + m, PAULI[b])).real for k in range(n - m))


if __name__ == "__main__":
    d21 = dicke(2, 1)
    print("W_D Dicke(2,1)", witness_dicke(d21, 2))
    print("W_D |00>", witness_dicke(np.eye(4)[0].astype(complex), 2))
    print("W_D GHZ(2)", witness_dicke(ghz(2), 2))
    print("W_D Dicke(6,3) %.17g" % witness_dicke(dicke(6, 3), 6))
    for n in range(2, 9):
        print("W_D Dicke(%d,%d) %.17g" % (n, n // 2, witness_dicke(dicke(n, n // 2), n)))
    print("<xx> Dicke(2,1)", ev(d21, site_op(2, 0, X) @ site_op(2, 1, X)))
    print("<zz> Dicke(2,1)", ev(d21, site_op(2, 0, Z) @ site_op(2, 1, Z)))
    # Intensity of Dicke(2,1), x-channel (alpha_x = a), q = 0.
    a = 0.01
    tot = b_intensity(d21, 2, a, a, 0.0, 0.0)
    print("Dicke(2,1) x-channel i0+iint / a^2", tot / a ** 2)
    # Output intensity in the long square-pulse plateau with kappa = 1,
    # delta' = 0: |f|^2 -> 1/kappa^2, so I_out = 2 kappa / kappa^2 * tot.
    print("Dicke(2,1) I_out plateau / a^2", 2 * tot / a ** 2)
    # Dicke(4,2) witness scan: c = (1,1,-1) general witness with all q equal.
    d42 = dicke(4, 2)
    best = None
    for p in np.linspace(0, 2 * math.pi, 65):
        w = 1 - (c_alpha(d42, 4, "x", p) + c_alpha(d42, 4, "y", p) - c_alpha(d42, 4, "z", p))
        if best is None or w < best[1] - 1e-12:
            best = (p, w)
    print("Dicke(4,2) scan minimum at phase", best)
    for m in (1, 2, 3):
        print("Dicke(4,2) G^xx(%d) %.17g" % (m, sep_corr(d42, 4, "x", "x", m)))
