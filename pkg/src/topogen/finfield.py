"""Brute-force verification layer over small finite fields.

Everything here is independent of the symbolic machinery: explicit matrices,
exact Gaussian elimination, breadth-first group closure, and exhaustive or
Monte Carlo generation tests. Prime fields use plain integer arithmetic;
extension fields use polynomial representatives over an irreducible modulus.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Sequence

from .algebra_core import ClassDescriptor, GroupSpec, is_prime
from .errors import (
    EnumerationTooLarge,
    GroupTooLarge,
    NonSplit,
    NotApplicable,
    SchemaError,
    Uninstantiable,
    UnsupportedGroup,
)


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------


def _factor_prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise SchemaError(f"{q} is not a prime power")
            return p, k
    raise SchemaError(f"{q} is not a prime power")


def _poly_mul_mod(a, b, modulus, p):
    deg = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    # reduce modulo the monic modulus
    for i in range(len(prod) - 1, deg - 1, -1):
        c = prod[i]
        if c:
            for j in range(deg + 1):
                prod[i - deg + j] = (prod[i - deg + j] - c * modulus[j]) % p
    return tuple(prod[:deg]) + (0,) * (deg - len(prod[:deg]))


def _find_irreducible(p: int, k: int) -> tuple:
    """Monic irreducible polynomial of degree k over GF(p), low coeffs first."""

    def is_irreducible(coeffs):
        # trial division by all monic polynomials of degree <= k // 2
        def poly_mod(a, b):
            a = list(a)
            while len(a) >= len(b) and any(a):
                while a and a[-1] == 0:
                    a.pop()
                if len(a) < len(b):
                    break
                c = a[-1] * pow(b[-1], -1, p) % p
                shift = len(a) - len(b)
                for i, x in enumerate(b):
                    a[shift + i] = (a[shift + i] - c * x) % p
                while a and a[-1] == 0:
                    a.pop()
            return a

        for d in range(1, k // 2 + 1):
            for idx in range(p**d):
                low = []
                t = idx
                for _ in range(d):
                    low.append(t % p)
                    t //= p
                divisor = low + [1]
                if not poly_mod(list(coeffs), divisor):
                    return False
        return True

    # prefer x^2 + 1 when it works (nice arithmetic for GF(9))
    candidates = []
    if k == 2:
        candidates.append((1, 0, 1))
    for idx in range(p**k):
        low = []
        t = idx
        for _ in range(k):
            low.append(t % p)
            t //= p
        candidates.append(tuple(low) + (1,))
    for c in candidates:
        if is_irreducible(c):
            return c
    raise SchemaError("no irreducible polynomial found")


class Field:
    """Arithmetic in GF(q). Prime-field elements are plain integers; extension
    field elements are coefficient tuples of length k."""

    def __init__(self, q: int):
        self.q = q
        self.p, self.k = _factor_prime_power(q)
        if self.k == 1:
            self.zero = 0
            self.one = 1
            self.modulus = None
        else:
            self.modulus = _find_irreducible(self.p, self.k)
            self.zero = (0,) * self.k
            self.one = (1,) + (0,) * (self.k - 1)

    # -- element construction -------------------------------------------------
    def coerce(self, x):
        if self.k == 1:
            if isinstance(x, int):
                return x % self.p
            raise SchemaError(f"cannot coerce {x!r} into GF({self.q})")
        if isinstance(x, int):
            return ((x % self.p),) + (0,) * (self.k - 1)
        t = tuple(int(c) % self.p for c in x)
        if len(t) != self.k:
            raise SchemaError(f"cannot coerce {x!r} into GF({self.q})")
        return t

    def elements(self) -> list:
        if self.k == 1:
            return list(range(self.p))
        out = []
        for idx in range(self.q):
            coeffs = []
            t = idx
            for _ in range(self.k):
                coeffs.append(t % self.p)
                t //= self.p
            out.append(tuple(coeffs))
        return out

    # -- arithmetic ------------------------------------------------------------
    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.p
        return _poly_mul_mod(a, b, self.modulus, self.p)

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverting zero field element")
        return self.pow(a, self.q - 2)

    def pow(self, a, e: int):
        result = self.one
        base = a
        e %= self.q - 1 if a != self.zero else 1
        if a == self.zero:
            return self.zero if e else self.one
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def element_order(self, a) -> int:
        if a == self.zero:
            raise SchemaError("zero has no multiplicative order")
        x, k = a, 1
        while x != self.one:
            x = self.mul(x, a)
            k += 1
        return k

    def element_of_order(self, r: int):
        """Some multiplicative element of exact order r, or None."""
        if (self.q - 1) % r != 0:
            return None
        for a in self.elements():
            if a != self.zero and self.element_order(a) == r:
                return a
        return None


@lru_cache(maxsize=None)
def _field(q: int) -> Field:
    return Field(q)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


class GFMatrix:
    """A square matrix over GF(q), optionally tagged with a preserved form.

    form_kind: "symplectic" (skew bilinear), "symmetric" (symmetric bilinear),
    "quadratic" (upper-triangular Gram matrix of a quadratic form; its
    polarization is the associated bilinear form), or None.
    """

    def __init__(self, q: int, entries, form=None, form_kind: Optional[str] = None):
        self.q = q
        self.field = _field(q)
        F = self.field
        self.entries = tuple(tuple(F.coerce(x) for x in row) for row in entries)
        self.n = len(self.entries)
        if any(len(row) != self.n for row in self.entries):
            raise SchemaError("matrix must be square")
        self.form = (
            tuple(tuple(F.coerce(x) for x in row) for row in form)
            if form is not None
            else None
        )
        self.form_kind = form_kind
        if self.form is not None and form_kind is None:
            raise SchemaError("form matrix given without a form kind")
        if self.form is not None:
            _check_form_preserved(F, self.entries, self.form, form_kind)

    def __eq__(self, other):
        return isinstance(other, GFMatrix) and (self.q, self.entries) == (
            other.q,
            other.entries,
        )

    def __hash__(self):
        return hash((self.q, self.entries))

    def __repr__(self):
        return f"GFMatrix(q={self.q}, n={self.n}, form_kind={self.form_kind})"


def _identity(F: Field, n: int):
    return tuple(
        tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n)
    )


def _mat_mul(F: Field, A, B):
    n = len(A)
    Bt = tuple(zip(*B))
    out = []
    if F.k == 1:
        p = F.p
        for row in A:
            out.append(tuple(sum(x * y for x, y in zip(row, col)) % p for col in Bt))
        return tuple(out)
    for row in A:
        new = []
        for col in Bt:
            acc = F.zero
            for x, y in zip(row, col):
                acc = F.add(acc, F.mul(x, y))
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def _mat_vec(F: Field, A, v):
    if F.k == 1:
        p = F.p
        return tuple(sum(x * y for x, y in zip(row, v)) % p for row in A)
    out = []
    for row in A:
        acc = F.zero
        for x, y in zip(row, v):
            acc = F.add(acc, F.mul(x, y))
        out.append(acc)
    return tuple(out)


def _mat_sub(F: Field, A, B):
    return tuple(
        tuple(F.sub(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(A, B)
    )


def _transpose(A):
    return tuple(zip(*A))


def _rref(F: Field, rows):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    if F.k == 1:
        p = F.p
        for c in range(ncols):
            piv = next((i for i in range(r, nrows) if rows[i][c]), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = pow(rows[r][c], -1, p)
            rows[r] = [(inv * x) % p for x in rows[r]]
            pivot_row = rows[r]
            for i in range(nrows):
                f = rows[i][c]
                if i != r and f:
                    rows[i] = [(x - f * y) % p for x, y in zip(rows[i], pivot_row)]
            pivots.append(c)
            r += 1
            if r == nrows:
                break
        return [tuple(row) for row in rows[:r]], pivots
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c] != F.zero), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != F.zero:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [tuple(row) for row in rows[:r]], pivots


def _rank(F: Field, rows) -> int:
    return len(_rref(F, rows)[0])


def _nullspace(F: Field, rows, ncols: int):
    """Basis of {v : A v = 0} for the matrix with the given rows."""
    rref, pivots = _rref(F, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(rref[r][fc])
        basis.append(tuple(v))
    return basis


def _sparse_rows(F: Field, A):
    return [
        {j: x for j, x in enumerate(row) if x != F.zero} for row in A
    ]


def _sparse_mul(F: Field, A, B, n: int):
    """Product of sparse row-dict matrices."""
    out = []
    for row in A:
        acc: dict = {}
        for k, x in row.items():
            for j, y in B[k].items():
                v = F.add(acc.get(j, F.zero), F.mul(x, y))
                if v == F.zero:
                    acc.pop(j, None)
                else:
                    acc[j] = v
        out.append(acc)
    return out


def _sparse_rank(F: Field, rows) -> int:
    """Rank by sparse elimination (cheap for banded matrices)."""
    pivots: dict = {}
    rank = 0
    for row in rows:
        r = dict(row)
        while r:
            c = min(r)
            if c in pivots:
                pr = pivots[c]
                f = F.mul(r[c], F.inv(pr[c]))
                for cc, vv in pr.items():
                    nv = F.sub(r.get(cc, F.zero), F.mul(f, vv))
                    if nv == F.zero:
                        r.pop(cc, None)
                    else:
                        r[cc] = nv
            else:
                pivots[c] = r
                rank += 1
                break
    return rank


def _mat_inv(F: Field, A):
    n = len(A)
    aug = [list(row) + list(idrow) for row, idrow in zip(A, _identity(F, n))]
    rref, pivots = _rref(F, aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in rref)


def _check_form_preserved(F: Field, g, form, kind: str) -> None:
    gt = _transpose(g)
    if kind in ("symplectic", "symmetric"):
        lhs = _mat_mul(F, _mat_mul(F, gt, form), g)
        if lhs != form:
            raise SchemaError("matrix does not preserve the declared form")
        return
    if kind == "quadratic":
        # Q(gx) = Q(x) iff g^T F g + F is symmetric with zero diagonal
        diff = _mat_sub(F, _mat_mul(F, _mat_mul(F, gt, form), g), form)
        n = len(diff)
        for i in range(n):
            if diff[i][i] != F.zero:
                raise SchemaError("matrix does not preserve the quadratic form")
            for j in range(i + 1, n):
                if F.add(diff[i][j], diff[j][i]) != F.zero:
                    raise SchemaError("matrix does not preserve the quadratic form")
        return
    raise SchemaError(f"unknown form kind {kind!r}")


# ---------------------------------------------------------------------------
# Jordan data
# ---------------------------------------------------------------------------


def jordan_type(m: GFMatrix, eigenvalues=None) -> dict:
    """Map eigenvalue -> Jordan partition, computed from rank sequences.

    Raises NonSplit when the characteristic polynomial does not split
    over GF(q) (multiplicities then sum to less than n). Passing an
    explicit eigenvalue list restricts the scan (and skips that check).
    """
    F = m.field
    n = m.n
    result = {}
    accounted = 0
    scan = F.elements() if eigenvalues is None else [F.coerce(x) for x in eigenvalues]
    for lam in scan:
        shift = _sparse_rows(
            F,
            _mat_sub(
                F,
                m.entries,
                tuple(
                    tuple(lam if i == j else F.zero for j in range(n))
                    for i in range(n)
                ),
            ),
        )
        ranks = [n, _sparse_rank(F, shift)]
        power = shift
        while ranks[-1] != ranks[-2]:
            power = _sparse_mul(F, power, shift, n)
            ranks.append(_sparse_rank(F, power))
        mult = n - ranks[1]
        if mult == 0:
            continue
        parts = []
        for s in range(1, len(ranks)):
            ge_s = ranks[s - 1] - ranks[s]
            ge_s1 = ranks[s] - ranks[s + 1] if s + 1 < len(ranks) else 0
            parts.extend([s] * (ge_s - ge_s1))
        partition = tuple(sorted(parts, reverse=True))
        result[lam] = partition
        accounted += sum(partition)
    if eigenvalues is None and accounted != n:
        raise NonSplit("characteristic polynomial does not split over GF(q)")
    return result


def fixed_space_dim(m: GFMatrix) -> int:
    F = m.field
    return m.n - _rank(F, _mat_sub(F, m.entries, _identity(F, m.n)))


# ---------------------------------------------------------------------------
# induced actions
# ---------------------------------------------------------------------------


def induced_matrix(m: GFMatrix, functor: str) -> GFMatrix:
    F = m.field
    g = m.entries
    n = m.n
    if functor in ("tensor", "tensor_square"):
        basis = [(i, j) for i in range(n) for j in range(n)]
        rows = {}
        for bi, (i, j) in enumerate(basis):
            for bk, (k, l) in enumerate(basis):
                rows[(bk, bi)] = F.mul(g[k][i], g[l][j])
        size = len(basis)
        ent = tuple(
            tuple(rows.get((r, c), F.zero) for c in range(size)) for r in range(size)
        )
        return GFMatrix(m.q, ent)
    if functor == "wedge2":
        basis = [(i, j) for i in range(n) for j in range(i + 1, n)]
        idx = {b: t for t, b in enumerate(basis)}
        size = len(basis)
        ent = [[F.zero] * size for _ in range(size)]
        for (i, j), c in idx.items():
            for (k, l), r in idx.items():
                val = F.sub(
                    F.mul(g[k][i], g[l][j]), F.mul(g[l][i], g[k][j])
                )
                ent[r][c] = val
        return GFMatrix(m.q, tuple(tuple(row) for row in ent))
    if functor == "sym2":
        basis = [(i, j) for i in range(n) for j in range(i, n)]
        idx = {b: t for t, b in enumerate(basis)}
        size = len(basis)
        ent = [[F.zero] * size for _ in range(size)]
        for (i, j), c in idx.items():
            for (k, l), r in idx.items():
                if k == l:
                    val = F.mul(g[k][i], g[k][j])
                else:
                    val = F.add(
                        F.mul(g[k][i], g[l][j]), F.mul(g[l][i], g[k][j])
                    )
                ent[r][c] = val
        return GFMatrix(m.q, tuple(tuple(row) for row in ent))
    raise NotApplicable(f"unknown functor {functor!r}")


def kron(m1: GFMatrix, m2: GFMatrix) -> GFMatrix:
    """Kronecker (tensor) product of two matrices over the same field."""
    if m1.q != m2.q:
        raise SchemaError("tensor factors must live over the same field")
    F = m1.field
    a, b = m1.entries, m2.entries
    na, nb = m1.n, m2.n
    ent = [
        [F.mul(a[i][k], b[j][l]) for k in range(na) for l in range(nb)]
        for i in range(na)
        for j in range(nb)
    ]
    return GFMatrix(m1.q, ent)


# ---------------------------------------------------------------------------
# matrix construction from class descriptors
# ---------------------------------------------------------------------------


def _jordan_block(F: Field, size: int, eigen):
    return tuple(
        tuple(
            eigen if i == j else (F.one if j == i + 1 else F.zero)
            for j in range(size)
        )
        for i in range(size)
    )


def _block_diag(F: Field, blocks):
    n = sum(len(b) for b in blocks)
    out = [[F.zero] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return tuple(tuple(row) for row in out)


def invariant_form_matrix(
    entries, q: int, kind: str, seed: int = 0
) -> Optional[tuple]:
    """A nondegenerate form of the given kind preserved by the matrix, or
    None when no such form exists.

    For "quadratic" the returned Gram matrix is upper triangular and its
    polarization has the maximal possible rank (n, or n - 1 when n is odd
    in characteristic 2, in which case the quadratic form must not vanish
    on the radical line).
    """
    F = _field(q)
    g = tuple(tuple(F.coerce(x) for x in row) for row in entries)
    n = len(g)
    gt = _transpose(g)
    # unknowns: X_{ij}, i, j in [0, n); linear equations over GF(q)
    var = lambda i, j: i * n + j
    rows = []

    def add_row(coeffs: dict):
        row = [F.zero] * (n * n)
        for v, c in coeffs.items():
            row[v] = F.add(row[v], c)
        if any(x != F.zero for x in row):
            rows.append(tuple(row))

    # invariance: (g^T X g - X)_{kl} = sum_{i,j} g_{ik} X_{ij} g_{jl} - X_{kl}
    for k in range(n):
        for l in range(n):
            coeffs: dict = {}
            for i in range(n):
                gik = gt[k][i]
                if gik == F.zero:
                    continue
                for j in range(n):
                    c = F.mul(gik, g[j][l])
                    if c != F.zero:
                        coeffs[var(i, j)] = F.add(coeffs.get(var(i, j), F.zero), c)
            coeffs[var(k, l)] = F.add(coeffs.get(var(k, l), F.zero), F.neg(F.one))
            add_row(coeffs)
    if kind == "symplectic":
        for i in range(n):
            add_row({var(i, i): F.one})
            for j in range(i + 1, n):
                add_row({var(i, j): F.one, var(j, i): F.one})
    elif kind == "symmetric":
        for i in range(n):
            for j in range(i + 1, n):
                add_row({var(i, j): F.one, var(j, i): F.neg(F.one)})
    elif kind == "quadratic":
        # Gram matrix upper triangular; invariance above is too strict for
        # quadratic forms, so rebuild: require g^T X g + (-X) symmetric with
        # zero diagonal instead of equal to X.
        rows.clear()
        for k in range(n):
            # diagonal of g^T X g - X vanishes
            coeffs = {}
            for i in range(n):
                gik = gt[k][i]
                if gik == F.zero:
                    continue
                for j in range(n):
                    c = F.mul(gik, g[j][k])
                    if c != F.zero:
                        coeffs[var(i, j)] = F.add(coeffs.get(var(i, j), F.zero), c)
            coeffs[var(k, k)] = F.add(coeffs.get(var(k, k), F.zero), F.neg(F.one))
            add_row(coeffs)
        for k in range(n):
            for l in range(k + 1, n):
                coeffs = {}
                for (a, b) in ((k, l), (l, k)):
                    for i in range(n):
                        gia = gt[a][i]
                        if gia == F.zero:
                            continue
                        for j in range(n):
                            c = F.mul(gia, g[j][b])
                            if c != F.zero:
                                coeffs[var(i, j)] = F.add(
                                    coeffs.get(var(i, j), F.zero), c
                                )
                coeffs[var(k, l)] = F.add(coeffs.get(var(k, l), F.zero), F.neg(F.one))
                coeffs[var(l, k)] = F.add(coeffs.get(var(l, k), F.zero), F.neg(F.one))
                add_row(coeffs)
        # lower triangle forced to zero (canonical representative)
        for i in range(n):
            for j in range(i):
                add_row({var(i, j): F.one})
    else:
        raise SchemaError(f"unknown form kind {kind!r}")
    basis = _nullspace(F, rows, n * n)
    if not basis:
        return None

    def unflatten(v):
        return tuple(tuple(v[i * n + j] for j in range(n)) for i in range(n))

    def good(X):
        if kind != "quadratic":
            return _rank(F, X) == n
        pol = tuple(
            tuple(F.add(X[i][j], X[j][i]) for j in range(n)) for i in range(n)
        )
        want = n if (n % 2 == 0 or F.p != 2) else n - 1
        if _rank(F, pol) < want:
            return False
        if want == n - 1:
            # the quadratic form must not vanish on the radical of the
            # polarization
            for v in _nullspace(F, pol, n):
                val = F.zero
                for i in range(n):
                    for j in range(n):
                        val = F.add(val, F.mul(F.mul(v[i], X[i][j]), v[j]))
                if val == F.zero:
                    return False
        return True

    for v in basis:
        X = unflatten(v)
        if good(X):
            return X
    rng = random.Random(seed + 0xC0FFEE)
    elems = F.elements()
    for _ in range(2000):
        v = [F.zero] * (n * n)
        for b in basis:
            c = elems[rng.randrange(len(elems))]
            v = [F.add(x, F.mul(c, y)) for x, y in zip(v, b)]
        X = unflatten(tuple(v))
        if good(X):
            return X
    return None


def _assign_labels(F: Field, pat, label_assignment) -> dict:
    label_assignment = dict(label_assignment or {})
    assigned: dict = {}
    used = {F.one, F.neg(F.one)}
    labels = [lab for lab, _ in pat.pairs] + [lab for lab, _ in pat.free]
    for lab in labels:
        if lab in label_assignment:
            val = F.coerce(label_assignment[lab])
        else:
            rel = pat.relation_of(lab)
            if rel == "square_is_minus_one":
                val = F.element_of_order(4)
                if val is None:
                    raise Uninstantiable("no fourth root of unity in GF(q)")
            elif rel and rel.startswith("order:"):
                k = int(rel.split(":", 1)[1])
                val = F.element_of_order(k)
                if val is None:
                    raise Uninstantiable(f"no element of order {k} in GF(q)")
                # avoid collisions between labels of the same order
                x = val
                while x in used or F.inv(x) in used:
                    x = F.mul(x, val)
                    if x == val:
                        raise Uninstantiable("not enough roots of unity in GF(q)")
                val = x
            else:
                val = next(
                    (
                        a
                        for a in F.elements()
                        if a not in (F.zero,) and a not in used and F.inv(a) not in used
                    ),
                    None,
                )
                if val is None:
                    raise Uninstantiable("field too small for distinct eigenvalues")
        assigned[lab] = val
        used.add(val)
        used.add(F.inv(val))
    return assigned


_FORM_KIND = {"Sp": "symplectic", "SO": "symmetric", "Spin8": "symmetric", "SL": None}


def matrix_from_class(
    group: GroupSpec,
    cls: ClassDescriptor,
    q: int,
    label_assignment: Optional[dict] = None,
) -> GFMatrix:
    """An explicit matrix with the class's Jordan/eigenvalue data preserving
    a standard-type invariant form found by exact linear solving."""
    from .algebra_core import validate_class

    target = group.class_group()
    cls = validate_class(group, cls)
    F = _field(q)
    n = target.n
    if cls.kind == "unipotent":
        if F.p != (target.p or F.p):
            raise Uninstantiable("unipotent classes need q of the same characteristic")
        if target.p == 0 and any(a > F.p for a in cls.unip.partition):
            raise Uninstantiable("Jordan blocks larger than p have composite order")
        blocks = [_jordan_block(F, a, F.one) for a in cls.unip.partition]
        g = _block_diag(F, blocks)
    else:
        if cls.kind != "semisimple":
            raise SchemaError("unknown class kind")
        pat = cls.eigen
        values = _assign_labels(F, pat, label_assignment)
        diag = [F.one] * pat.mult_one + [F.neg(F.one)] * pat.mult_minus_one
        for lab, mult in pat.pairs:
            diag.extend([values[lab]] * mult)
            diag.extend([F.inv(values[lab])] * mult)
        for lab, mult in pat.free:
            diag.extend([values[lab]] * mult)
        g = tuple(
            tuple(diag[i] if i == j else F.zero for j in range(n)) for i in range(n)
        )
    kind = _FORM_KIND[target.family]
    if kind is None:
        return GFMatrix(q, g)
    if kind == "symmetric" and F.p == 2:
        kind = "quadratic"
    if kind == "symplectic" and F.p == 2:
        # skew = symmetric in characteristic 2; the alternating constraint
        # in the solver keeps the diagonal zero
        pass
    form = invariant_form_matrix(g, q, kind)
    if form is None:
        raise Uninstantiable("no nondegenerate invariant form over GF(q)")
    return GFMatrix(q, g, form=form, form_kind=kind)


def unipotent_matrix(partition: Sequence[int], q: int, form_kind: str) -> GFMatrix:
    """Block-diagonal unipotent matrix with an invariant nondegenerate form,
    without going through a group descriptor."""
    F = _field(q)
    blocks = [_jordan_block(F, a, F.one) for a in sorted(partition, reverse=True)]
    g = _block_diag(F, blocks)
    if form_kind == "symmetric" and F.p == 2:
        form_kind = "quadratic"
    form = invariant_form_matrix(g, q, form_kind)
    if form is None:
        raise Uninstantiable("no nondegenerate invariant form over GF(q)")
    return GFMatrix(q, g, form=form, form_kind=form_kind)


# ---------------------------------------------------------------------------
# Lie centralizers
# ---------------------------------------------------------------------------


def centralizer_lie_dim(group: GroupSpec, m: GFMatrix) -> int:
    """Dimension of {X : Xg = gX} intersected with the Lie algebra
    (X^T J + J X = 0 for Sp/SO with form J; trace 0 for SL)."""
    target = group.class_group()
    F = m.field
    n = m.n
    g = m.entries
    var = lambda i, j: i * n + j
    rows = []
    # Xg - gX = 0
    for k in range(n):
        for l in range(n):
            row = [F.zero] * (n * n)
            for j in range(n):
                row[var(k, j)] = F.add(row[var(k, j)], g[j][l])
            for i in range(n):
                row[var(i, l)] = F.sub(row[var(i, l)], g[k][i])
            if any(x != F.zero for x in row):
                rows.append(tuple(row))
    if target.family == "SL":
        row = [F.zero] * (n * n)
        for i in range(n):
            row[var(i, i)] = F.one
        rows.append(tuple(row))
    else:
        J = m.form
        if J is None:
            raise SchemaError("Sp/SO centralizer needs a form-tagged matrix")
        if m.form_kind == "quadratic":
            J = tuple(
                tuple(F.add(J[i][j], J[j][i]) for j in range(n)) for i in range(n)
            )
        # (X^T J + J X)_{kl} = sum_i X_{ik} J_{il} + sum_j J_{kj} X_{jl}
        for k in range(n):
            for l in range(n):
                row = [F.zero] * (n * n)
                for i in range(n):
                    row[var(i, k)] = F.add(row[var(i, k)], J[i][l])
                for j in range(n):
                    row[var(j, l)] = F.add(row[var(j, l)], J[k][j])
                if any(x != F.zero for x in row):
                    rows.append(tuple(row))
    return len(_nullspace(F, rows, n * n))


# ---------------------------------------------------------------------------
# group enumeration and generation testing
# ---------------------------------------------------------------------------


def group_order(family: str, n: int, q: int, epsilon: int = 1) -> int:
    if family == "SL":
        order = q ** (n * (n - 1) // 2)
        for i in range(2, n + 1):
            order *= q**i - 1
        return order
    if family == "Sp":
        m = n // 2
        order = q ** (m * m)
        for i in range(1, m + 1):
            order *= q ** (2 * i) - 1
        return order
    if family in ("SO", "Spin8"):
        if n % 2:
            m = n // 2
            order = q ** (m * m)
            for i in range(1, m + 1):
                order *= q ** (2 * i) - 1
            return order
        m = n // 2
        order = q ** (m * (m - 1)) * (q**m - epsilon)
        for i in range(1, m):
            order *= q ** (2 * i) - 1
        return order
    raise UnsupportedGroup(f"no order formula for {family}")


def projective_order(family: str, n: int, q: int) -> int:
    if family == "SL":
        return group_order(family, n, q) // gcd(n, q - 1)
    if family == "Sp":
        return group_order(family, n, q) // gcd(2, q - 1)
    raise UnsupportedGroup("projective order implemented for SL and Sp")


def standard_generators(family: str, n: int, q: int) -> list[GFMatrix]:
    F = _field(q)
    if family == "SL":
        gens = []
        adders = [F.one]
        if F.k > 1:
            # a field generator makes the additive span the whole field
            adders.append(F.coerce(tuple([0, 1] + [0] * (F.k - 2))))
        for i in range(n - 1):
            for (a, b) in ((i, i + 1), (i + 1, i)):
                for val in adders:
                    ent = [list(row) for row in _identity(F, n)]
                    ent[a][b] = val
                    gens.append(GFMatrix(q, ent))
        return gens
    if family == "Sp":
        # symplectic transvections x -> x + B(x, v) v over 0/1 vectors v
        J = [[F.zero] * n for _ in range(n)]
        m = n // 2
        for i in range(m):
            J[i][m + i] = F.one
            J[m + i][i] = F.neg(F.one)
        J = tuple(tuple(row) for row in J)
        Jt = _transpose(J)
        gens = []
        for mask in range(1, 2**n):
            v = tuple(F.one if (mask >> i) & 1 else F.zero for i in range(n))
            if sum(1 for x in v if x != F.zero) > 2:
                continue
            w = _mat_vec(F, Jt, v)
            ent = [
                [
                    F.add(
                        F.one if i == j else F.zero, F.mul(v[i], w[j])
                    )
                    for j in range(n)
                ]
                for i in range(n)
            ]
            gens.append(GFMatrix(q, ent, form=J, form_kind="symplectic"))
        return gens
    raise UnsupportedGroup("standard generators implemented for SL and Sp")


def group_closure(generators: Iterable[GFMatrix], cap: int = 10**6):
    """(size, truncated) of the group generated under matrix multiplication."""
    gens = list(generators)
    if not gens:
        return 1, False
    F = gens[0].field
    gen_entries = [g.entries for g in gens]
    n = gens[0].n
    seen = {_identity(F, n)}
    frontier = list(seen)
    while frontier:
        new = []
        for a in frontier:
            for g in gen_entries:
                prod = _mat_mul(F, a, g)
                if prod not in seen:
                    seen.add(prod)
                    new.append(prod)
                    if len(seen) > cap:
                        return len(seen), True
        frontier = new
    return len(seen), False


def _closure_set(F: Field, gen_entries, cap: int):
    n = len(gen_entries[0])
    seen = {_identity(F, n)}
    frontier = list(seen)
    while frontier:
        new = []
        for a in frontier:
            for g in gen_entries:
                prod = _mat_mul(F, a, g)
                if prod not in seen:
                    seen.add(prod)
                    new.append(prod)
                    if len(seen) > cap:
                        raise GroupTooLarge(f"closure exceeds cap {cap}")
        frontier = new
    return seen


def _generates(F: Field, gen_entries, order: int) -> bool:
    """True iff the generated subgroup is the whole group of the given order.

    Bails out early: any subgroup exceeding half the order is the group.
    """
    n = len(gen_entries[0])
    seen = {_identity(F, n)}
    frontier = list(seen)
    threshold = order // 2
    while frontier:
        new = []
        for a in frontier:
            for g in gen_entries:
                prod = _mat_mul(F, a, g)
                if prod not in seen:
                    seen.add(prod)
                    if len(seen) > threshold:
                        return True
                    new.append(prod)
        frontier = new
    return len(seen) == order


def _scalar_matrices(F: Field, n: int, elements):
    out = []
    for lam in F.elements():
        if lam == F.zero:
            continue
        s = tuple(
            tuple(lam if i == j else F.zero for j in range(n)) for i in range(n)
        )
        if s in elements:
            out.append(s)
    return out


def _order_mod_center(F: Field, a, scalars: set) -> int:
    x = a
    k = 1
    while x not in scalars:
        x = _mat_mul(F, x, a)
        k += 1
        if k > 10000:
            raise SchemaError("runaway order computation")
    return k


class _GroupData:
    def __init__(self, family: str, n: int, q: int, cap: int):
        self.family, self.n, self.q = family, n, q
        self.F = _field(q)
        gens = standard_generators(family, n, q)
        self.gen_entries = [g.entries for g in gens]
        self.elements = _closure_set(self.F, self.gen_entries, cap)
        self.order = len(self.elements)
        self.scalars = set(_scalar_matrices(self.F, n, self.elements))

    def elements_of_order_mod_center(self, r: int) -> list:
        out = []
        for a in sorted(self.elements):
            if a in self.scalars:
                continue
            if _order_mod_center(self.F, a, self.scalars) == r:
                out.append(a)
        return out


@lru_cache(maxsize=8)
def _group_data(family: str, n: int, q: int, cap: int) -> _GroupData:
    return _GroupData(family, n, q, cap)


def estimate_generation_probability(
    groupspec: tuple, r: int, s: int, trials: int, seed: int, cap: int = 10**6
):
    """(hits, trials): Monte Carlo estimate of the probability that a random
    (order-r, order-s mod center) pair generates the group modulo its center.
    Deterministic given (seed, trials); per-trial RNG streams."""
    family, n, q = groupspec
    data = _group_data(family, n, q, cap)
    xr = data.elements_of_order_mod_center(r)
    xs = data.elements_of_order_mod_center(s)
    if not xr or not xs:
        raise NotApplicable(f"no elements of order {r} or {s} mod center")
    scalars = sorted(data.scalars)
    cache: dict = {}
    hits = 0
    for t in range(trials):
        rng = random.Random(seed * 1000003 + t)
        x = xr[rng.randrange(len(xr))]
        y = xs[rng.randrange(len(xs))]
        key = (x, y)
        if key not in cache:
            cache[key] = _generates(data.F, [x, y] + scalars, data.order)
        hits += cache[key]
    return hits, trials


def exact_generation_probability(
    groupspec: tuple, r: int, s: int, cap: int = 10**6
) -> Fraction:
    """Exact probability over all (order-r, order-s mod center) pairs, using
    conjugacy reduction on the first element and centralizer-orbit reduction
    on the second."""
    family, n, q = groupspec
    data = _group_data(family, n, q, cap)
    F = data.F
    xr = data.elements_of_order_mod_center(r)
    xs = data.elements_of_order_mod_center(s)
    if not xr or not xs:
        raise NotApplicable(f"no elements of order {r} or {s} mod center")
    scalars = sorted(data.scalars)
    gen_entries = data.gen_entries
    gen_invs = [_mat_inv(F, g) for g in gen_entries]
    # conjugacy classes inside xr
    remaining = set(xr)
    classes = []
    while remaining:
        rep = min(remaining)
        orbit = {rep}
        frontier = [rep]
        while frontier:
            new = []
            for a in frontier:
                for g, gi in zip(gen_entries, gen_invs):
                    b = _mat_mul(F, gi, _mat_mul(F, a, g))
                    if b not in orbit:
                        orbit.add(b)
                        new.append(b)
            frontier = new
        classes.append((rep, len(orbit)))
        remaining -= orbit
    hit_pairs = 0
    for rep, class_size in classes:
        cent = [
            g
            for g in data.elements
            if _mat_mul(F, g, rep) == _mat_mul(F, rep, g)
        ]
        cent_inv = {g: _mat_inv(F, g) for g in cent}
        unseen = set(xs)
        while unseen:
            y = min(unseen)
            orbit = set()
            for g in cent:
                orbit.add(_mat_mul(F, g, _mat_mul(F, y, cent_inv[g])))
            unseen -= orbit
            if _generates(F, [rep, y] + scalars, data.order):
                hit_pairs += class_size * len(orbit)
    return Fraction(hit_pairs, len(xr) * len(xs))


# ---------------------------------------------------------------------------
# invariant subspaces
# ---------------------------------------------------------------------------


def _polarization(F: Field, form, kind: str):
    n = len(form)
    if kind == "quadratic":
        return tuple(
            tuple(F.add(form[i][j], form[j][i]) for j in range(n)) for i in range(n)
        )
    return form


def _is_singular_vector(F: Field, form, kind: str, v) -> bool:
    n = len(v)
    val = F.zero
    for i in range(n):
        if v[i] == F.zero:
            continue
        for j in range(n):
            val = F.add(val, F.mul(F.mul(v[i], form[i][j]), v[j]))
    return val == F.zero


def invariant_subspace_count(
    m: GFMatrix, k: int, type: str = "totally_singular", budget: int = 2_000_000
) -> int:
    """Exact number of m-invariant k-dimensional subspaces of the given type.

    Builds invariant subspaces dimension by dimension through stable flags
    (valid whenever the characteristic polynomial of m splits over GF(q),
    which is checked). type "any" counts all invariant subspaces.
    """
    F = m.field
    n = m.n
    if not 0 <= k <= n:
        raise SchemaError("k out of range")
    if type not in ("totally_singular", "any"):
        raise SchemaError(f"unknown subspace type {type!r}")
    if type == "totally_singular" and m.form is None:
        raise SchemaError("totally singular counting needs a form-tagged matrix")
    bil = _polarization(F, m.form, m.form_kind) if m.form is not None else None
    # jordan_type raises NonSplit when stable flags would not be exhaustive
    eigenvalues = list(jordan_type(m).keys())
    shifts = {
        lam: _mat_sub(
            F,
            m.entries,
            tuple(
                tuple(lam if i == j else F.zero for j in range(n)) for i in range(n)
            ),
        )
        for lam in eigenvalues
    }
    elems = F.elements()
    nonzero = [x for x in elems if x != F.zero]

    current = {(): None}
    visited = 0
    for _dim in range(k):
        nxt = {}
        for basis in current:
            rows_u = list(basis)
            for lam in eigenvalues:
                shift = shifts[lam]
                # v with (m - lam) v in U: nullspace of [shift | -u_basis]
                aug_rows = []
                for i in range(n):
                    row = list(shift[i]) + [F.neg(u[i]) for u in rows_u]
                    aug_rows.append(tuple(row))
                sol = _nullspace(F, aug_rows, n + len(rows_u))
                # candidate vectors are the v-parts, modulo U
                cand_rows = [v[:n] for v in sol]
                space, _ = _rref(F, cand_rows + rows_u)
                # complement of U inside the solution space
                ext = []
                for v in space:
                    combined, _ = _rref(F, rows_u + [v])
                    if len(combined) > len(rows_u):
                        ext.append(v)
                ext_basis, _ = _rref(F, ext)
                # drop any component inside U
                ext_basis = [
                    v
                    for v in ext_basis
                    if len(_rref(F, rows_u + [v])[0]) > len(rows_u)
                ]
                t = len(ext_basis)
                if t == 0:
                    continue
                # lines of the extension space: normalized coefficient tuples
                def coeff_tuples(depth):
                    if depth == 0:
                        yield ()
                        return
                    for rest in coeff_tuples(depth - 1):
                        for c in elems:
                            yield (c,) + rest

                for lead in range(t):
                    for tail in coeff_tuples(t - lead - 1):
                        coeffs = (F.zero,) * lead + (F.one,) + tail
                        v = [F.zero] * n
                        for c, b in zip(coeffs, ext_basis):
                            if c != F.zero:
                                for i in range(n):
                                    v[i] = F.add(v[i], F.mul(c, b[i]))
                        v = tuple(v)
                        if type == "totally_singular":
                            if not _is_singular_vector(F, m.form, m.form_kind, v):
                                continue
                            ok = True
                            for u in rows_u:
                                val = F.zero
                                for i in range(n):
                                    if u[i] == F.zero:
                                        continue
                                    for j in range(n):
                                        val = F.add(
                                            val, F.mul(F.mul(u[i], bil[i][j]), v[j])
                                        )
                                if val != F.zero:
                                    ok = False
                                    break
                            if not ok:
                                continue
                        new_rows, _ = _rref(F, rows_u + [v])
                        key = tuple(new_rows)
                        if key not in nxt:
                            nxt[key] = None
                            visited += 1
                            if visited > budget:
                                raise EnumerationTooLarge(
                                    f"more than {budget} invariant subspaces visited"
                                )
        current = nxt
    return len(current)
