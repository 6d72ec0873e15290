"""
Chevalley bases, root-group and torus actions, and fixed-space dimensions.

Basis order: e_a for the positive roots (canonical order), then h_1..h_r,
then e_{-a} in the same order as the positive roots.  For A1 this is
(e, h, f).  Matrices act on column vectors.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import ff
from .ff import FiniteField, sample_field
from .root_datum import RootSystem, _from_cartan, as_base, root_system


class ChevalleyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# integer structure constants


class StructureConstants:
    """N_{a,b} for a root system, by the extraspecial-pair algorithm.

    Extraspecial pairs get N = +(p+1); every other constant is forced by
    the standard identities.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self._pos = {}
        self._extraspecial = {}
        pos_roots = [rs.roots[i] for i in rs.positive]
        pos_set = set(pos_roots)
        order = {r: k for k, r in enumerate(pos_roots)}
        self.order = order
        for xi in pos_roots:
            for r in pos_roots:
                s = _sub(xi, r)
                if s in pos_set:
                    self._extraspecial[xi] = (r, s)
                    break
        for xi in sorted(self._extraspecial, key=lambda v: (sum(v), v)):
            self._fill(xi, pos_roots, pos_set)

    def _fill(self, xi, pos_roots, pos_set):
        rs = self.rs
        r1, s1 = self._extraspecial[xi]
        n1 = rs.string_down(r1, s1) + 1
        self._pos[(r1, s1)] = n1
        nxi = rs.norm(xi)
        for r in pos_roots:
            s = _sub(xi, r)
            if s not in pos_set or self.order[r] >= self.order[s] or r == r1:
                continue
            total = Fraction(0)
            sr = _sub(s, r1)
            if rs.is_root(sr):
                total += Fraction(self.N(s, _neg(r1)) * self.N(r, _neg(s1))) / rs.norm(sr)
            rr = _sub(r, r1)
            if rs.is_root(rr):
                total += Fraction(self.N(_neg(r1), r) * self.N(s, _neg(s1))) / rs.norm(rr)
            val = nxi / n1 * total
            if val.denominator != 1:
                raise ChevalleyError("non-integral structure constant")
            self._pos[(r, s)] = int(val)

    def N(self, a, b):
        rs = self.rs
        c = _add(a, b)
        if not rs.is_root(c):
            return 0
        pa, pb = sum(a) > 0, sum(b) > 0
        if pa and pb:
            if (a, b) in self._pos:
                return self._pos[(a, b)]
            return -self._pos[(b, a)]
        if not pa and not pb:
            return -self.N(_neg(a), _neg(b))
        # mixed signs: use the triple a + b + w = 0
        w = _neg(c)
        for u, v, third in ((b, w, a), (w, a, b)):
            if (sum(u) > 0) == (sum(v) > 0):
                return int(rs.norm(w) / rs.norm(third) * self.N(u, v))
        raise ChevalleyError("unreachable sign pattern")  # pragma: no cover


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


class IntegralLieAlgebra:
    """Chevalley Z-form: sparse bracket table on the basis."""

    def __init__(self, cartan):
        rs = self.rs = root_system(cartan)
        r = self.rank = rs.rank
        self.consts = StructureConstants(rs)
        pos = [rs.roots[i] for i in rs.positive]
        self.basis_roots = pos + [None] * r + [_neg(a) for a in pos]
        self.dim = len(self.basis_roots)
        self.npos = len(pos)
        self.root_pos = {a: k for k, a in enumerate(self.basis_roots) if a is not None}
        self.table = [[self._bracket(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def h_index(self, i):
        return self.npos + i

    def _pair(self, a, i):
        """<a, alpha_i^vee>."""
        C = self.rs.cartan
        return sum(a[j] * C[j][i] for j in range(self.rank))

    def _bracket(self, i, j):
        a, b = self.basis_roots[i], self.basis_roots[j]
        if a is None and b is None:
            return {}
        if a is None:
            c = self._pair(b, i - self.npos)
            return {j: c} if c else {}
        if b is None:
            c = self._pair(a, j - self.npos)
            return {i: -c} if c else {}
        s = _add(a, b)
        if not any(s):
            co = self.rs.coroots[self.rs.index[a]]
            return {self.h_index(k): x for k, x in enumerate(co) if x}
        n = self.consts.N(a, b)
        return {self.root_pos[s]: n} if n else {}

    def bracket(self, x, y):
        """Bracket of integer coordinate vectors."""
        out = [0] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    for k, c in self.table[i][j].items():
                        out[k] += xi * yj * c
        return out

    def ad(self, i):
        """Integer matrix of ad(b_i)."""
        M = [[0] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, c in self.table[i][j].items():
                M[k][j] = c
        return M

    def divided_powers(self, i):
        """[(ad b_i)^k / k! for k = 0, 1, ...] until zero, exactly over Z."""
        A = self.ad(i)
        cur = [[1 if r == c else 0 for c in range(self.dim)] for r in range(self.dim)]
        out = [cur]
        k = 1
        while True:
            nxt = [[sum(A[r][m] * cur[m][c] for m in range(self.dim) if A[r][m]) for c in range(self.dim)] for r in range(self.dim)]
            if any(x % k for row in nxt for x in row):
                raise ChevalleyError("divided power is not integral")
            nxt = [[x // k for x in row] for row in nxt]
            if not any(any(row) for row in nxt):
                return out
            out.append(nxt)
            cur = nxt
            k += 1
            if k > 8:
                raise ChevalleyError("ad e_a is not nilpotent")

    def verify(self):
        """Antisymmetry, |N| = p + 1 and the Jacobi identity on all basis triples."""
        rs = self.rs
        n = self.dim
        for i in range(n):
            for j in range(n):
                a = self.table[i][j]
                b = self.table[j][i]
                if any(a.get(k, 0) != -b.get(k, 0) for k in set(a) | set(b)):
                    raise ChevalleyError(f"bracket not antisymmetric at {(i, j)}")
        for a in rs.roots:
            for b in rs.roots:
                if rs.is_root(_add(a, b)):
                    if abs(self.consts.N(a, b)) != rs.string_down(a, b) + 1:
                        raise ChevalleyError(f"|N| differs from p+1 at {(a, b)}")
        unit = [[1 if k == i else 0 for k in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                bij = self.bracket(unit[i], unit[j])
                for k in range(j + 1, n):
                    t1 = self.bracket(bij, unit[k])
                    t2 = self.bracket(self.bracket(unit[j], unit[k]), unit[i])
                    t3 = self.bracket(self.bracket(unit[k], unit[i]), unit[j])
                    if any(x + y + z for x, y, z in zip(t1, t2, t3)):
                        raise ChevalleyError(f"Jacobi identity fails at {(i, j, k)}")
        return True


@lru_cache(maxsize=None)
def integral_algebra(cartan, verify=None) -> IntegralLieAlgebra:
    """Cached Z-form; verification defaults to on for rank at most 4."""
    L = IntegralLieAlgebra(cartan)
    if verify is None:
        verify = L.rank <= 4
    if verify:
        L.verify()
    return L


# ---------------------------------------------------------------------------
# algebras over finite fields


class ChevalleyAlgebra:
    """Chevalley algebra of the simply connected derived group of a datum, over F.

    Torus elements are cocharacters of the given datum; roots are referred
    to by their X^* vectors in that datum.
    """

    def __init__(self, d, F: FiniteField, verify=None):
        self.datum = as_base(d)
        self.field = F
        self.Z = integral_algebra(self.datum.cartan, verify)
        self.dim = self.Z.dim
        rs = self.datum.system
        self._xvec = {rs.roots[i]: v for i, v in enumerate(self.datum.roots)}
        self._by_x = {v: rs.roots[i] for i, v in enumerate(self.datum.roots)}

    def basis_index(self, root):
        """Basis position of e_root; ``root`` is an X^* vector."""
        return self.Z.root_pos[self._by_x[tuple(root)]]

    def root_x(self, k):
        """X^* vector of the k-th basis element (None for h_i)."""
        a = self.Z.basis_roots[k]
        return None if a is None else self._xvec[a]

    def structure_constant(self, a, b):
        return self.Z.consts.N(self._by_x[tuple(a)], self._by_x[tuple(b)])

    def bracket_matrix(self, k):
        return ff.from_ints(self.field, self.Z.ad(k))

    @lru_cache(maxsize=None)
    def _powers(self, k):
        return [ff.from_ints(self.field, P) for P in self.Z.divided_powers(k)]

    def ad_unipotent(self, root, t):
        """Ad x_root(t) = sum_k t^k (ad e_root)^k / k!."""
        F = self.field
        k = self.basis_index(root)
        out = ff.zeros(self.dim)
        tk = 1
        for P in self._powers(k):
            out = ff.mat_add(F, out, ff.mat_scale(F, tk, P))
            tk = F.mul(tk, t)
        return out

    def ad_torus(self, lam, u):
        """Diagonal action of lam(u): u^<b, lam> on e_b, identity on h."""
        F = self.field
        if u == 0:
            raise ChevalleyError("torus parameter must be nonzero")
        if len(lam) != self.datum.rank_X:
            raise ChevalleyError("cocharacter length differs from rank_X")
        M = ff.identity(self.dim)
        for k in range(self.dim):
            x = self.root_x(k)
            if x is not None:
                M[k][k] = F.pow(u, sum(a * b for a, b in zip(x, lam)))
        return M


def build_chevalley(d, F: FiniteField, verify=None) -> ChevalleyAlgebra:
    return ChevalleyAlgebra(d, F, verify)


def invariant_dim(F: FiniteField, matrices, dual=False, n=None):
    """(dimension, echelon basis) of the common fixed space of the generators,
    or of their inverse-transposes when ``dual``."""
    if n is None:
        if not matrices:
            raise ChevalleyError("dimension needed for an empty generator list")
        n = len(matrices[0])
    rows = []
    for g in matrices:
        if len(g) != n or any(len(r) != n for r in g):
            raise ChevalleyError("generator has the wrong size")
        A = ff.transpose(g) if dual else g
        for i in range(n):
            rows.append([F.sub(A[i][j], 1 if i == j else 0) for j in range(n)])
    basis = ff.nullspace(F, rows, n) if rows else ff.identity(n)
    return len(basis), basis


def sc_generators(A: ChevalleyAlgebra):
    """Simple root-group elements at every nonzero t and simple coroots at the field generator."""
    F = A.field
    d = A.datum
    gens = []
    for a in d.simple_roots:
        for sign in (1, -1):
            root = tuple(sign * x for x in a)
            for t in F.nonzero():
                gens.append(A.ad_unipotent(root, t))
    for c in d.simple_coroots:
        gens.append(A.ad_torus(c, F.gen))
    return gens


def _sc_algebra(d, p):
    b = as_base(d)
    sc = _from_cartan([list(r) for r in b.cartan], "sc")
    return build_chevalley(sc, sample_field(p))


def coadjoint_invariants_sc(d, p: int, detail=False):
    """Invariant dimension of (Lie G'_sc)^* under the simple root groups and torus."""
    A = _sc_algebra(d, p)
    gens = sc_generators(A)
    dim, _ = invariant_dim(A.field, gens, dual=True, n=A.dim)
    return (dim, len(gens)) if detail else dim


def adjoint_invariants_sc(d, p: int, detail=False):
    """Same generators on Lie G'_sc itself (not dualised)."""
    A = _sc_algebra(d, p)
    gens = sc_generators(A)
    dim, _ = invariant_dim(A.field, gens, dual=False, n=A.dim)
    return (dim, len(gens)) if detail else dim


def levi_generators(A: ChevalleyAlgebra, L):
    """Full L^0 recipe: X_* basis at the field generator, and every Levi root group at every t."""
    F = A.field
    d = A.datum
    gens = []
    for i in range(d.rank_X):
        lam = [1 if k == i else 0 for k in range(d.rank_X)]
        gens.append(A.ad_torus(lam, F.gen))
    for ri in L.levi_roots:
        for t in F.nonzero():
            gens.append(A.ad_unipotent(d.roots[ri], t))
    return gens


def nilradical_dual_invariants(d, L, p: int, generators=None, F: FiniteField = None):
    """Invariant dimension of (Lie U)^* for the Levi L.

    ``generators`` may be a list of full-algebra matrices (for a subgroup of
    L); by default the full L^0 recipe is used.
    """
    b = as_base(d)
    if F is None:
        F = sample_field(p)
    A = build_chevalley(b, F)
    idx = [A.basis_index(b.roots[i]) for i in L.unipotent_roots]
    if generators is None:
        generators = levi_generators(A, L)
    sub = []
    others = [k for k in range(A.dim) if k not in set(idx)]
    for g in generators:
        if any(g[r][c] for r in others for c in idx):
            raise ChevalleyError("generator does not preserve Lie U")
        sub.append([[g[r][c] for c in idx] for r in idx])
    dim, _ = invariant_dim(F, sub, dual=True, n=len(idx))
    return dim
