"""Straight-line reference evaluations of the SINR expressions.

Matrix products are explicit triple loops and the 2x2 inverse/determinant use
the closed forms, so nothing here shares code with the package.
"""


def mm(a, b):
    n, k = len(a), len(a[0])
    m = len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def herm(a):
    return [[a[i][j].conjugate() for i in range(len(a))] for j in range(len(a[0]))]


def add(a, b):
    return [[a[i][j] + b[i][j] for j in range(len(a[0]))] for i in range(len(a))]


def scale(c, a):
    return [[c * x for x in row] for row in a]


def tolist(x):
    return [[complex(v) for v in row] for row in x]


def inv2(a):
    (p, q), (r, s) = a
    det = p * s - q * r
    return [[s / det, -q / det], [-r / det, p / det]]


def det2(a):
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def eye2():
    return [[1.0 + 0j, 0j], [0j, 1.0 + 0j]]


def noise_term(W, var, model):
    if model == "white":
        return scale(var, eye2())
    return scale(var, mm(herm(W), W))


def gamma1(G1, omega_diag, J, F1, F2, W1, var, model="combined"):
    """UE1: tr[W^H G1 Om J F1 F1^H J^H Om^H G1^H W R1^-1]."""
    G1, J, F1, F2, W1 = map(tolist, (G1, J, F1, F2, W1))
    Om = [[omega_diag[i] if i == j else 0j for j in range(len(omega_diag))]
          for i in range(len(omega_diag))]
    Hb = mm(mm(G1, Om), J)
    A = mm(mm(herm(W1), Hb), F1)
    B = mm(mm(herm(W1), Hb), F2)
    S = mm(A, herm(A))
    R = add(noise_term(W1, var, model), mm(B, herm(B)))
    X = mm(S, inv2(R))
    return (X[0][0] + X[1][1]).real, X


def gamma2(H2, G2, omega_diag, J, F1, F2, W2, var, model="combined"):
    H2, G2, J, F1, F2, W2 = map(tolist, (H2, G2, J, F1, F2, W2))
    Om = [[omega_diag[i] if i == j else 0j for j in range(len(omega_diag))]
          for i in range(len(omega_diag))]
    L = mm(mm(G2, Om), J)
    Wh = herm(W2)
    A = mm(mm(Wh, H2), F2)
    B = mm(mm(Wh, L), F2)
    S = add(mm(A, herm(A)), mm(B, herm(B)))
    C = mm(mm(Wh, add(H2, L)), F1)
    R = add(noise_term(W2, var, model), mm(C, herm(C)))
    X = mm(S, inv2(R))
    return (X[0][0] + X[1][1]).real, X
