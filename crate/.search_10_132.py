import itertools
import numpy as np

# Standard symplectic intersection form for a genus-2 surface basis.
J = np.array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])

PHI10 = [1, -1, 1, -1, 1]  # t^4 - t^3 + t^2 - t + 1, ascending


def alexander_coeffs(V):
    # det(t V - V^T) as integer polynomial coefficients via numpy polyfit
    # on enough sample points would be inexact; do exact expansion by
    # cofactor over polynomial matrices with small dimension instead.
    import sympy as sp

    t = sp.symbols("t")
    M = sp.Matrix(4, 4, lambda i, j: t * int(V[i][j]) - int(V[j][i]))
    p = sp.Poly(sp.expand(M.det()), t)
    coeffs = p.all_coeffs()[::-1]  # ascending
    # strip trailing/leading zero monomials (units t^k)
    while coeffs and coeffs[0] == 0:
        coeffs = coeffs[1:]
    return [int(c) for c in coeffs]


def matches_phi10(coeffs):
    return coeffs == PHI10 or coeffs == [-c for c in PHI10]


def tl_signature(V, theta):
    w = np.exp(2j * np.pi * theta)
    A = (1 - w) * V + (1 - np.conj(w)) * V.T
    eig = np.linalg.eigvalsh(A)
    return int(np.sum(eig > 1e-9) - np.sum(eig < -1e-9))


def main():
    vals = [-1, 0, 1]
    count = 0
    hits = []
    for diag in itertools.product(vals, repeat=4):
        for upper in itertools.product(vals, repeat=6):
            V = np.zeros((4, 4), dtype=int)
            for i in range(4):
                V[i][i] = diag[i]
            k = 0
            for i in range(4):
                for j in range(i + 1, 4):
                    V[i][j] = upper[k]
                    V[j][i] = upper[k] - J[i][j]
                    k += 1
            count += 1
            # quick numeric screen before exact Alexander computation
            sig = (
                tl_signature(V, 0.05),
                tl_signature(V, 0.20),
                tl_signature(V, 0.40),
            )
            if sig != (0, 2, 0):
                continue
            coeffs = alexander_coeffs(V)
            if not matches_phi10(coeffs):
                continue
            hits.append(V.copy())
            if len(hits) >= 5:
                break
        if len(hits) >= 5:
            break
    print(f"searched ~{count} matrices, found {len(hits)}")
    for V in hits:
        print(V.tolist())


if __name__ == "__main__":
    main()
