"""
Finite fields GF(p^k) and dense linear algebra over them.

Elements are encoded as integers 0 <= a < q: the base-p digits of ``a``
are the coefficients (lowest degree first) of a polynomial in the
generator ``x`` modulo the defining polynomial.  The prime subfield is
therefore {0, ..., p-1} with its usual arithmetic.

Matrices are lists of row lists of encoded elements and act on column
vectors.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product


# Conway polynomials, coefficients lowest degree first (monic).
CONWAY = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (7, 4): (3, 4, 5, 0, 1),
}


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1] % p
        if c:
            shift = len(a) - 1 - dm
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    return [x % p for x in a]


def _poly_divides(d, a, p):
    # d monic
    r = _poly_mod(a, d, p)
    return not any(r)


def is_irreducible(poly, p: int) -> bool:
    """Exhaustive factor search: no monic factor of degree 1..deg/2."""
    poly = tuple(c % p for c in poly)
    n = len(poly) - 1
    if n < 1 or poly[-1] != 1:
        return False
    for d in range(1, n // 2 + 1):
        for low in product(range(p), repeat=d):
            if _poly_divides(list(low) + [1], poly, p):
                return False
    return True


class FiniteField:
    """GF(p^k) with an explicit monic irreducible defining polynomial."""

    def __init__(self, p: int, k: int = 1, poly=None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if k < 1:
            raise FieldError("degree must be positive")
        if poly is None:
            poly = CONWAY.get((p, k)) or _first_irreducible(p, k)
        poly = tuple(int(c) % p for c in poly)
        if len(poly) != k + 1 or poly[-1] != 1:
            raise FieldError(f"defining polynomial must be monic of degree {k}")
        if not is_irreducible(poly, p):
            raise FieldError(f"polynomial {poly} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.q = p**k
        self.poly = poly
        self._digits = [self._to_digits(a) for a in range(self.q)]
        self._build_tables()

    # -- encoding -----------------------------------------------------
    def _to_digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _from_digits(self, ds):
        a = 0
        for d in reversed(ds):
            a = a * self.p + (d % self.p)
        return a

    def _polymul(self, a, b):
        da, db = self._digits[a], self._digits[b]
        prod_ = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod_[i + j] += x * y
        return self._from_digits(_poly_mod(prod_, self.poly, self.p)[: self.k] + [0] * self.k)

    def _build_tables(self):
        p, q = self.p, self.q
        if self.k == 1:
            self._exp = None
            g = next(a for a in range(1, p) if _mult_order_mod(a, p) == p - 1) if p > 2 else 1
            self.gen = g
            self._inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]
            return
        # search for a primitive element
        for g in range(1, q):
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = self._polymul(x, g)
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == q - 1:
                break
        else:  # pragma: no cover - impossible for a field
            raise FieldError("no primitive element found")
        self.gen = g
        log = [0] * q
        for i, a in enumerate(exp):
            log[a] = i
        self._exp = exp + exp
        self._log = log
        if p == 2:
            self._add = None
        elif q <= 729:
            self._add = [[self._digit_add(a, b) for b in range(q)] for a in range(q)]
        else:
            self._add = None
        self._neg_t = [self._from_digits([-d for d in self._digits[a]]) for a in range(q)]

    def _digit_add(self, a, b):
        return self._from_digits([x + y for x, y in zip(self._digits[a], self._digits[b])])

    # -- arithmetic ---------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add is not None:
            return self._add[a][b]
        return self._digit_add(a, b)

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self._neg_t[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        if self.k == 1:
            return self._inv[a]
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if n == 0 else 0
        if self.k == 1:
            return pow(a, n % (self.p - 1), self.p)
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Image of an integer in the prime subfield."""
        return n % self.p

    def elements(self):
        return range(self.q)

    def nonzero(self):
        return range(1, self.q)

    def order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        n = 1
        x = a
        while x != 1:
            x = self.mul(x, a)
            n += 1
        return n

    def describe(self) -> dict:
        return {"p": self.p, "k": self.k, "poly": list(self.poly)}

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.k, self.poly) == (other.p, other.k, other.poly)

    def __hash__(self):
        return hash((self.p, self.k, self.poly))

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"


def _mult_order_mod(a, p):
    n, x = 1, a % p
    while x != 1:
        x = (x * a) % p
        n += 1
    return n


def _first_irreducible(p, k):
    for low in product(range(p), repeat=k):
        poly = tuple(low) + (1,)
        if is_irreducible(poly, p):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")  # pragma: no cover


@lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> FiniteField:
    """Cached field with the default defining polynomial."""
    return FiniteField(p, k)


def sample_field(p: int, minimum: int = 5) -> FiniteField:
    """Smallest GF(p^k) with at least ``minimum`` elements."""
    k = 1
    while p**k < minimum:
        k += 1
    return GF(p, k)


def primitive_root(p: int) -> int:
    """Smallest generator of (Z/p)^x (1 for p = 2)."""
    if p == 2:
        return 1
    return next(a for a in range(2, p) if _mult_order_mod(a, p) == p - 1)


# ---------------------------------------------------------------------------
# matrices


def zeros(n, m=None):
    return [[0] * (n if m is None else m) for _ in range(n)]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(r) for r in zip(*A)] if A else []


def from_ints(F: FiniteField, A):
    return [[F.from_int(x) for x in row] for row in A]


def mat_mul(F: FiniteField, A, B):
    n, m = len(A), len(B[0]) if B else 0
    Bt = transpose(B)
    add, mul = F.add, F.mul
    out = []
    for i in range(n):
        row = A[i]
        orow = []
        for j in range(m):
            col = Bt[j]
            s = 0
            for a, b in zip(row, col):
                if a and b:
                    s = add(s, mul(a, b))
            orow.append(s)
        out.append(orow)
    return out


def mat_vec(F: FiniteField, A, v):
    add, mul = F.add, F.mul
    out = []
    for row in A:
        s = 0
        for a, b in zip(row, v):
            if a and b:
                s = add(s, mul(a, b))
        out.append(s)
    return out


def mat_add(F, A, B):
    return [[F.add(a, b) for a, b in zip(r, s)] for r, s in zip(A, B)]


def mat_sub(F, A, B):
    return [[F.sub(a, b) for a, b in zip(r, s)] for r, s in zip(A, B)]


def mat_scale(F, c, A):
    return [[F.mul(c, a) for a in r] for r in A]


def mat_pow(F, A, n):
    if n < 0:
        A = mat_inv(F, A)
        n = -n
    R = identity(len(A))
    while n:
        if n & 1:
            R = mat_mul(F, R, A)
        A = mat_mul(F, A, A)
        n >>= 1
    return R


def kron(F, A, B):
    out = []
    for ra in A:
        for rb in B:
            out.append([F.mul(a, b) for a in ra for b in rb])
    return out


def rref(F: FiniteField, A):
    """Reduced row echelon form; returns (rows, pivot_columns) with zero rows dropped."""
    M = [list(r) for r in A]
    ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(M)):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        pr = M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) if y else x for x, y in zip(M[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


class EchelonSpan:
    """Incrementally maintained row space in reduced echelon form."""

    def __init__(self, F: FiniteField, ncols: int):
        self.F = F
        self.ncols = ncols
        self.rows = []
        self.pivots = []

    def reduce(self, v):
        F = self.F
        v = list(v)
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                f = v[c]
                v = [F.sub(x, F.mul(f, y)) if y else x for x, y in zip(v, row)]
        return v

    def add(self, v) -> bool:
        """Insert v; return True if the span grew."""
        F = self.F
        v = self.reduce(v)
        c = next((i for i, x in enumerate(v) if x), None)
        if c is None:
            return False
        inv = F.inv(v[c])
        v = [F.mul(inv, x) for x in v]
        for i, row in enumerate(self.rows):
            if row[c]:
                f = row[c]
                self.rows[i] = [F.sub(x, F.mul(f, y)) if y else x for x, y in zip(row, v)]
        # keep pivots sorted
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < c:
            pos += 1
        self.rows.insert(pos, v)
        self.pivots.insert(pos, c)
        return True

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    @property
    def dim(self):
        return len(self.rows)

    def basis(self):
        return [list(r) for r in self.rows]


def rank(F, A):
    return len(rref(F, A)[0])


def nullspace(F: FiniteField, A, ncols=None):
    """Basis (rows, echelon) of {x : A x = 0}."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    R, piv = rref(F, A) if A else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(R, piv):
            if row[fc]:
                v[pc] = F.neg(row[fc])
        basis.append(v)
    if basis:
        basis, _ = rref(F, basis)
    return basis


def mat_inv(F: FiniteField, A):
    n = len(A)
    aug = [list(r) + e for r, e in zip(A, identity(n))]
    R, piv = rref(F, aug)
    if piv[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def is_invertible(F, A) -> bool:
    return rank(F, A) == len(A)


def det(F, A):
    M = [list(r) for r in A]
    n = len(M)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = F.neg(d)
        d = F.mul(d, M[c][c])
        inv = F.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c]:
                f = F.mul(M[i][c], inv)
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[c])]
    return d


def char_poly(F: FiniteField, A):
    """Characteristic polynomial det(xI - A), coefficients highest degree first.

    Berkowitz's division-free algorithm, valid in every characteristic.
    """
    n = len(A)
    if n == 0:
        return [1]
    add, mul, neg = F.add, F.mul, F.neg
    # vect holds coefficients of the char poly of the leading r x r block
    vect = [1, neg(A[0][0])]
    for r in range(1, n):
        R = A[r][:r]  # row
        S = [A[i][r] for i in range(r)]  # column
        Asub = [A[i][:r] for i in range(r)]
        a = A[r][r]
        # Toeplitz column: 1, -a, -R S, -R A S, ...
        col = [1, neg(a)]
        v = S
        for _ in range(r):
            s = 0
            for x, y in zip(R, v):
                if x and y:
                    s = add(s, mul(x, y))
            col.append(neg(s))
            v = mat_vec(F, Asub, v)
        # multiply Toeplitz (lower triangular, r+2 x r+1) by vect
        new = []
        for i in range(r + 2):
            s = 0
            for j in range(min(i, r) + 1):
                c = col[i - j]
                if c and vect[j]:
                    s = add(s, mul(c, vect[j]))
            new.append(s)
        vect = new
    return vect


def coords_in_basis(F: FiniteField, basis, v):
    """Coordinates of v in the span of ``basis`` rows; raises if v is outside."""
    n = len(basis)
    if n == 0:
        if any(v):
            raise ValueError("vector not in span")
        return []
    # solve c^T B = v, i.e. B^T c = v
    aug = [[basis[j][i] for j in range(n)] + [v[i]] for i in range(len(v))]
    R, piv = rref(F, aug)
    if n in piv:
        raise ValueError("vector not in span")
    c = [0] * n
    for row, pc in zip(R, piv):
        c[pc] = row[n]
    return c


def extend_to_basis(F: FiniteField, sub):
    """Standard basis vectors completing the rows of ``sub`` to a basis."""
    n = len(sub[0]) if sub else 0
    return complement_of(F, sub, n)


def complement_of(F, sub, n):
    span = EchelonSpan(F, n)
    for v in sub:
        span.add(v)
    comp = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        if span.add(e):
            comp.append(e)
    return comp


def restrict_action(F, mats, sub):
    """Matrices of each generator on an invariant subspace with basis rows ``sub``."""
    out = []
    for g in mats:
        cols = [coords_in_basis(F, sub, mat_vec(F, g, v)) for v in sub]
        out.append(transpose(cols) if cols else [])
    return out


def quotient_action(F, mats, sub, n):
    """Complement basis and induced matrices on V / span(sub)."""
    comp = complement_of(F, sub, n)
    full = list(sub) + comp
    k = len(sub)
    out = []
    for g in mats:
        cols = []
        for v in comp:
            c = coords_in_basis(F, full, mat_vec(F, g, v))
            cols.append(c[k:])
        out.append(transpose(cols) if cols else [])
    return comp, out
