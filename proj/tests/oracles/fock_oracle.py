"""Brute-force Fock-space oracle used to freeze expected values in the C++ tests.

Everything here is built from explicit spin-orbital creation/annihilation
matrices on the full 4^norb Fock space, sharing no code path with the
string-driven engine.  Run: python3 fock_oracle.py
"""
import itertools

import numpy as np


def fock_ops(norb):
    """Annihilation matrices for 2*norb spin orbitals (alpha block first)."""
    nso = 2 * norb
    dim = 1 << nso
    ops = []
    for p in range(nso):
        a = np.zeros((dim, dim))
        for state in range(dim):
            if state >> p & 1:
                sign = (-1) ** bin(state & ((1 << p) - 1)).count("1")
                a[state ^ (1 << p), state] = sign
        ops.append(a)
    return ops


def hubbard(nsites, t, u, periodic):
    h = np.zeros((nsites, nsites))
    for p in range(nsites - 1):
        h[p, p + 1] = h[p + 1, p] = -t
    if periodic and nsites > 2:
        h[0, nsites - 1] = h[nsites - 1, 0] = -t
    eri = np.zeros((nsites,) * 4)
    for p in range(nsites):
        eri[p, p, p, p] = u
    return h, eri


def hamiltonian(h, eri, ops):
    norb = h.shape[0]
    ad = [a.T for a in ops]
    H = np.zeros_like(ops[0])
    for s in (0, norb):
        for p in range(norb):
            for q in range(norb):
                if h[p, q] != 0:
                    H += h[p, q] * ad[p + s] @ ops[q + s]
    for p, q, r, s_ in itertools.product(range(norb), repeat=4):
        v = eri[p, q, r, s_]
        if v == 0:
            continue
        for sa in (0, norb):
            for sb in (0, norb):
                H += 0.5 * v * ad[p + sa] @ ad[r + sb] @ ops[s_ + sb] @ ops[q + sa]
    return H


def sector(ops, norb, na, nb):
    dim = ops[0].shape[0]
    amask = (1 << norb) - 1
    return [st for st in range(dim)
            if bin(st & amask).count("1") == na and bin(st >> norb).count("1") == nb]


def ground(h, eri, na, nb):
    norb = h.shape[0]
    ops = fock_ops(norb)
    idx = sector(ops, norb, na, nb)
    H = hamiltonian(h, eri, ops)[np.ix_(idx, idx)]
    w, v = np.linalg.eigh(H)
    psi = np.zeros(ops[0].shape[0])
    psi[idx] = v[:, 0]
    return w, psi, ops


def rdms(psi, ops, norb):
    ad = [a.T for a in ops]
    d1 = np.array([[psi @ ad[i] @ ops[j] @ psi for j in range(norb)] for i in range(norb)])
    aa = np.zeros((norb,) * 4)
    ab = np.zeros((norb,) * 4)
    for i, k, j, l in itertools.product(range(norb), repeat=4):
        aa[i, k, j, l] = psi @ ad[i] @ ad[k] @ ops[l] @ ops[j] @ psi
        ab[i, k, j, l] = psi @ ad[i] @ ad[k + norb] @ ops[l + norb] @ ops[j] @ psi
    return d1, aa, ab


def cumulants(d1, aa, ab):
    n = d1.shape[0]
    caa = 0.5 * aa - 0.5 * (np.einsum("ij,kl->ikjl", d1, d1) - np.einsum("il,kj->ikjl", d1, d1))
    cab = 0.5 * ab - 0.5 * np.einsum("ij,kl->ikjl", d1, d1)
    return caa, cab


def entropy(block, trace):
    n = block.shape[0]
    w = np.linalg.eigvalsh(block.reshape(n * n, n * n) / trace)
    w = w[w > 1e-14]
    return float(-(w * np.log(w)).sum())


if __name__ == "__main__":
    np.set_printoptions(precision=15)
    w, psi, ops = ground(*hubbard(2, 1.0, 4.0, False), 1, 1)
    print("dimer E0", repr(w[0]), "closed form", 2 - 2 * np.sqrt(2))
    d1, aa, ab = rdms(psi, ops, 2)
    f = np.linalg.eigvalsh(d1)[::-1]
    print("dimer natural occupations", repr(f[0]), repr(f[1]))
    caa, cab = cumulants(d1, aa, ab)
    print("dimer |cum_ab|_F", repr(np.linalg.norm(cab)))
    for u in range(9):
        w, psi, ops = ground(*hubbard(2, 1.0, float(u), False), 1, 1)
        d1, aa, ab = rdms(psi, ops, 2)
        caa, cab = cumulants(d1, aa, ab)
        f = np.linalg.eigvalsh(d1)
        f = f[f > 1e-14]
        s1 = float(-(f * np.log(f)).sum())
        print("U", u, "E0", repr(w[0]), "|cum_ab|", repr(np.linalg.norm(cab)), "s1", repr(s1))
    w, psi, ops = ground(*hubbard(6, 1.0, 0.0, True), 3, 3)
    print("ring6 U=0 E0", repr(w[0]))
    w, psi, ops = ground(*hubbard(6, 1.0, 4.0, True), 3, 3)
    print("ring6 U=4 E0..2", repr(w[0]), repr(w[1]), repr(w[2]))
    w, psi, ops = ground(*hubbard(4, 1.0, 2.0, False), 2, 2)
    print("chain4 U=2 E0", repr(w[0]))
    d1, aa, ab = rdms(psi, ops, 4)
    caa, cab = cumulants(d1, aa, ab)
    print("chain4 U=2 |cum_aa|", repr(np.linalg.norm(caa)), "|cum_ab|", repr(np.linalg.norm(cab)))
    print("chain4 U=2 S_aa", repr(entropy(aa, 2.0)), "S_ab", repr(entropy(ab, 4.0)))
