"""Dense matrices over tower rings, as lists of rows of RingValue.

Determinants and characteristic polynomials are division free (Berkowitz),
so they are valid over any commutative ring; kernels and restrictions need a
field.
"""
from __future__ import annotations

from .errors import NotAUnit, RingNotField
from .rings import Ring, RingValue, charpoly_raw

Matrix = list  # list[list[RingValue]]


def identity(ring: Ring, n: int) -> Matrix:
    return [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]


def zeros(ring: Ring, n: int, m: int | None = None) -> Matrix:
    return [[ring.zero] * (n if m is None else m) for _ in range(n)]


def ring_of(M: Matrix) -> Ring:
    return M[0][0].ring


def size(M: Matrix) -> int:
    return len(M)


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    R = A[0][0].ring
    add, mul, zero = R.add, R.mul, R.zero_d
    Bt = list(zip(*[[x.data for x in row] for row in B]))
    out = []
    for row in A:
        r = [x.data for x in row]
        new = []
        for col in Bt:
            acc = zero
            for x, y in zip(r, col):
                acc = add(acc, mul(x, y))
            new.append(RingValue(R, acc))
        out.append(new)
    return out


def mat_vec(A: Matrix, v: list) -> list:
    return [sum((x * y for x, y in zip(row, v)), v[0].ring.zero) for row in A]


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(A, B)]


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(A, B)]


def scale(c, A: Matrix) -> Matrix:
    return [[c * x for x in r] for r in A]


def mat_neg(A: Matrix) -> Matrix:
    return [[-x for x in r] for r in A]


def transpose(A: Matrix) -> Matrix:
    return [list(r) for r in zip(*A)]


def mat_pow(A: Matrix, k: int) -> Matrix:
    if k < 0:
        A, k = inverse(A), -k
    out = identity(ring_of(A), len(A))
    while k:
        if k & 1:
            out = mat_mul(out, A)
        k >>= 1
        if k:
            A = mat_mul(A, A)
    return out


def mat_eq(A: Matrix, B: Matrix) -> bool:
    return len(A) == len(B) and all(x == y for r, s in zip(A, B) for x, y in zip(r, s))


def is_identity(A: Matrix) -> bool:
    return mat_eq(A, identity(ring_of(A), len(A)))


def is_zero_matrix(A: Matrix) -> bool:
    return all(x.is_zero() for r in A for x in r)


def trace(A: Matrix):
    R = ring_of(A)
    return sum((A[i][i] for i in range(len(A))), R.zero)


def block_diag(*blocks: Matrix) -> Matrix:
    R = ring_of(blocks[0])
    n = sum(len(b) for b in blocks)
    out = zeros(R, n)
    o = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[o + i][o + j] = x
        o += len(b)
    return out


def map_entries(f, A: Matrix) -> Matrix:
    return [[f(x) for x in r] for r in A]


def charpoly(A: Matrix) -> list[RingValue]:
    """[1, c1, ..., cn] with det(tI - A) = t^n + c1 t^(n-1) + ... + cn."""
    R = ring_of(A)
    return [RingValue(R, c) for c in charpoly_raw(R, [[x.data for x in r] for r in A])]


def det(A: Matrix) -> RingValue:
    if not A:
        raise ValueError("empty matrix")
    c = charpoly(A)[-1]
    return c if len(A) % 2 == 0 else -c


def reversed_charpoly_coeffs(A: Matrix) -> list[RingValue]:
    """Coefficients of det(I - A X), lowest degree first."""
    return charpoly(A)


def inverse(A: Matrix) -> Matrix:
    R = ring_of(A)
    n = len(A)
    if R.is_field:
        return _gauss_jordan_inverse(A)
    cp = charpoly(A)
    cn = cp[-1]
    if not cn.is_unit():
        raise NotAUnit("matrix determinant is not a unit")
    acc = identity(R, n)
    for c in cp[1:-1]:
        acc = mat_add(mat_mul(acc, A), scale(c, identity(R, n)))
    return scale(-cn.inverse(), acc)


def _gauss_jordan_inverse(A: Matrix) -> Matrix:
    R = ring_of(A)
    n = len(A)
    M = [list(r) + identity(R, n)[i] for i, r in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if not M[r][c].is_zero()), None)
        if piv is None:
            raise NotAUnit("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = M[c][c].inverse()
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and not M[r][c].is_zero():
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [r[n:] for r in M]


def _require_field(R: Ring):
    if not R.is_field:
        raise RingNotField(f"{R.descriptor} is not a field")


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    R = ring_of(A)
    _require_field(R)
    M = [list(r) for r in A]
    rows, cols = len(M), len(M[0]) if M else 0
    pivots, r = [], 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not M[i][c].is_zero()), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = M[r][c].inverse()
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and not M[i][c].is_zero():
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def rank(A: Matrix) -> int:
    return len(rref(A)[1])


def kernel(A: Matrix) -> list[list[RingValue]]:
    """Basis of {v : A v = 0} as a list of column vectors."""
    R = ring_of(A)
    n = len(A[0])
    M, pivots = rref(A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [R.zero] * n
        v[f] = R.one
        for i, p in enumerate(pivots):
            v[p] = -M[i][f]
        basis.append(v)
    return basis


def intersect(U: list, V: list, n: int, R: Ring) -> list:
    """Basis of span(U) ∩ span(V) for column-vector lists."""
    if not U or not V:
        return []
    # solve sum a_i u_i - sum b_j v_j = 0
    A = [[u[r] for u in U] + [-v[r] for v in V] for r in range(n)]
    sols = kernel(A)
    out = []
    for s in sols:
        w = [sum((s[i] * U[i][r] for i in range(len(U))), R.zero) for r in range(n)]
        out.append(w)
    return _independent(out, n, R)


def _independent(vectors: list, n: int, R: Ring) -> list:
    if not vectors:
        return []
    M, piv = rref([list(v) for v in vectors])
    return [M[i] for i in range(len(piv))]


def restrict(A: Matrix, basis: list) -> Matrix:
    """Matrix of A on the A-stable span of ``basis`` (columns): A B = B M."""
    R = ring_of(A)
    k = len(basis)
    if k == 0:
        return []
    n = len(A)
    images = [mat_vec(A, b) for b in basis]
    # solve B M = A B column by column
    aug = [[basis[j][r] for j in range(k)] + [images[c][r] for c in range(k)] for r in range(n)]
    M, piv = rref(aug)
    if piv != list(range(k)):
        raise ValueError("basis is not independent")
    for row in M[k:]:
        if any(not x.is_zero() for x in row):
            raise ValueError("subspace is not stable")
    return [[M[i][k + c] for c in range(k)] for i in range(k)]


def quotient_operator(A: Matrix, sub_basis: list, n: int) -> Matrix:
    """Matrix of A on F^n / span(sub_basis), for an A-stable subspace."""
    R = ring_of(A)
    # extend sub_basis to a basis with standard vectors
    chosen = list(sub_basis)
    extra = []
    for i in range(n):
        e = [R.one if j == i else R.zero for j in range(n)]
        if len(_independent(chosen + [e], n, R)) > len(chosen):
            chosen.append(e)
            extra.append(e)
    P = [[chosen[j][r] for j in range(n)] for r in range(n)]  # columns = basis
    C = mat_mul(inverse(P), mat_mul(A, P))
    k = len(sub_basis)
    return [row[k:] for row in C[k:]]
