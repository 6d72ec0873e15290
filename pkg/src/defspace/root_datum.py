"""
Based root data, generalised reductive data and their lattice invariants.

A based root datum is stored by its character-lattice rank and the
coordinates of the simple roots (in X^*) and simple coroots (in X_*);
the pairing is the dot product.  Everything else (roots, coroots,
Cartan matrix) is derived, by closure under simple reflections.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
import re

from . import intmat
from .intmat import dot, q_rank


MAX_DELTA_ORDER = 64
MAX_ROOTS = 5000


class RootDatumError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Cartan matrices (Bourbaki numbering, C[i][j] = <alpha_i, alpha_j^vee>)


def cartan_matrix(series: str, rank: int):
    s = series.upper()
    n = rank
    valid = {"A": n >= 1, "B": n >= 2, "C": n >= 2, "D": n >= 3, "E": n in (6, 7, 8), "F": n == 4, "G": n == 2}
    if s not in valid or not valid[s]:
        raise RootDatumError(f"invalid Dynkin type {series}{rank}")
    C = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j):
        C[i][j] = C[j][i] = -1

    if s in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if s == "B":
            C[n - 2][n - 1] = -2
        elif s == "C":
            C[n - 1][n - 2] = -2
    elif s == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif s == "E":
        link(0, 2)
        link(1, 3)
        link(2, 3)
        for i in range(3, n - 1):
            link(i, i + 1)
    elif s == "F":
        link(0, 1)
        link(1, 2)
        link(2, 3)
        C[1][2] = -2
    elif s == "G":
        C[0][1] = -1
        C[1][0] = -3
    return C


# ---------------------------------------------------------------------------
# abstract root systems


class RootSystem:
    """Roots of a Cartan matrix, in simple-root coordinates.

    Roots are sorted by height, then lexicographically; ``coroots[i]``
    gives the coroot of ``roots[i]`` in simple-coroot coordinates.
    """

    def __init__(self, cartan):
        self.cartan = tuple(tuple(r) for r in cartan)
        n = self.rank = len(cartan)
        C = self.cartan
        self.lengths = _root_lengths(C)
        self.gram = [[C[i][j] * self.lengths[j] / 2 for j in range(n)] for i in range(n)]
        _check_positive_definite(self.gram)
        simples = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
        found = set(simples)
        frontier = list(simples)
        while frontier:
            nxt = []
            for b in frontier:
                for i in range(n):
                    pair = sum(b[j] * C[j][i] for j in range(n))
                    if pair:
                        img = tuple(b[k] - (pair if k == i else 0) for k in range(n))
                        if img not in found:
                            found.add(img)
                            nxt.append(img)
            frontier = nxt
            if len(found) > MAX_ROOTS:
                raise RootDatumError("reflection closure does not terminate (not of finite type)")
        self.roots = sorted(found, key=lambda r: (sum(r), r))
        self.index = {r: i for i, r in enumerate(self.roots)}
        self.positive = [i for i, r in enumerate(self.roots) if sum(r) > 0]
        self.simple = [self.index[s] for s in simples]
        self.coroots = [self._coroot(r) for r in self.roots]
        self._check()

    def inner(self, a, b):
        return sum(a[i] * self.gram[i][j] * b[j] for i in range(self.rank) for j in range(self.rank) if a[i] and b[j])

    def norm(self, a):
        return self.inner(a, a)

    def _coroot(self, r):
        ln = self.norm(r)
        out = []
        for i, n_i in enumerate(r):
            c = Fraction(n_i) * self.lengths[i] / ln
            if c.denominator != 1:
                raise RootDatumError("non-integral coroot")
            out.append(int(c))
        return tuple(out)

    def _check(self):
        roots = set(self.roots)
        for r in self.roots:
            if tuple(-x for x in r) not in roots:
                raise RootDatumError("root set is not symmetric")
            if tuple(2 * x for x in r) in roots:
                raise RootDatumError("root system is not reduced")
            if any(x < 0 for x in r) and any(x > 0 for x in r):
                raise RootDatumError("root with mixed-sign coordinates")
        # independent closure of the coroot system from the transposed matrix
        Ct = [list(c) for c in zip(*self.cartan)]
        if self.rank:
            dual = RootSystem.__new__(RootSystem)
            n = self.rank
            simples = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
            found = set(simples)
            frontier = list(simples)
            while frontier:
                nxt = []
                for b in frontier:
                    for i in range(n):
                        pair = sum(b[j] * Ct[j][i] for j in range(n))
                        if pair:
                            img = tuple(b[k] - (pair if k == i else 0) for k in range(n))
                            if img not in found:
                                found.add(img)
                                nxt.append(img)
                frontier = nxt
            if found != set(self.coroots) or len(found) != len(self.roots):
                raise RootDatumError("coroot closure does not match root closure")

    def pairing(self, a, coroot):
        """<a, b^vee> for a in root coords and a coroot in coroot coords."""
        n = self.rank
        return sum(a[j] * self.cartan[j][i] * coroot[i] for i in range(n) for j in range(n) if a[j] and coroot[i])

    def is_root(self, v):
        return tuple(v) in self.index

    def height(self, i):
        return sum(self.roots[i])

    def neg(self, i):
        return self.index[tuple(-x for x in self.roots[i])]

    def string_down(self, a, b):
        """Largest k with b - k a a root."""
        k = 0
        while tuple(y - (k + 1) * x for x, y in zip(a, b)) in self.index:
            k += 1
        return k


def _root_lengths(C):
    n = len(C)
    ln = [None] * n
    for s in range(n):
        if ln[s] is not None:
            continue
        ln[s] = Fraction(2)
        stack = [s]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and C[i][j]:
                    if C[j][i] == 0:
                        raise RootDatumError("Cartan matrix is not symmetrisable")
                    lj = ln[i] * Fraction(C[j][i], C[i][j])
                    if ln[j] is None:
                        ln[j] = lj
                        stack.append(j)
                    elif ln[j] != lj:
                        raise RootDatumError("Cartan matrix is not symmetrisable")
    for i in range(n):
        if C[i][i] != 2 or any(C[i][j] > 0 for j in range(n) if j != i):
            raise RootDatumError("not a generalised Cartan matrix")
    return ln


def _check_positive_definite(G):
    n = len(G)
    for k in range(1, n + 1):
        M = [row[:k] for row in G[:k]]
        if _qdet(M) <= 0:
            raise RootDatumError("Cartan matrix is not of finite type")


def _qdet(M):
    M = [[Fraction(x) for x in r] for r in M]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return d


@lru_cache(maxsize=None)
def root_system(cartan) -> RootSystem:
    return RootSystem(cartan)


# ---------------------------------------------------------------------------
# based root data


@dataclass(frozen=True)
class BasedRootDatum:
    rank_X: int
    simple_roots: tuple
    simple_coroots: tuple

    def __post_init__(self):
        sr = tuple(tuple(int(x) for x in r) for r in self.simple_roots)
        sc = tuple(tuple(int(x) for x in r) for r in self.simple_coroots)
        object.__setattr__(self, "simple_roots", sr)
        object.__setattr__(self, "simple_coroots", sc)
        if self.rank_X < 0:
            raise RootDatumError("negative lattice rank")
        if len(sr) != len(sc):
            raise RootDatumError("simple roots and coroots differ in number")
        if any(len(v) != self.rank_X for v in sr + sc):
            raise RootDatumError("vector length differs from rank_X")
        # builds and validates the root system
        self.system

    @cached_property
    def cartan(self):
        return tuple(tuple(dot(a, c) for c in self.simple_coroots) for a in self.simple_roots)

    @cached_property
    def system(self) -> RootSystem:
        return root_system(self.cartan)

    @property
    def semisimple_rank(self):
        return len(self.simple_roots)

    @cached_property
    def roots(self):
        """Roots as X^* vectors, canonical order."""
        return [self._combine(r, self.simple_roots) for r in self.system.roots]

    @cached_property
    def coroots(self):
        return [self._combine(c, self.simple_coroots) for c in self.system.coroots]

    @cached_property
    def root_index(self):
        return {v: i for i, v in enumerate(self.roots)}

    @cached_property
    def positive_roots(self):
        return [self.roots[i] for i in self.system.positive]

    def _combine(self, coeffs, basis):
        v = [0] * self.rank_X
        for c, b in zip(coeffs, basis):
            if c:
                v = [x + c * y for x, y in zip(v, b)]
        return tuple(v)

    @property
    def num_roots(self):
        return len(self.system.roots)

    def is_semisimple(self):
        return self.rank_X == self.semisimple_rank

    def to_json(self):
        return {
            "rank_X": self.rank_X,
            "simple_roots": [list(r) for r in self.simple_roots],
            "simple_coroots": [list(r) for r in self.simple_coroots],
        }


def _from_cartan(C, isogeny):
    n = len(C)
    if isogeny in ("sc", "simply_connected"):
        return BasedRootDatum(n, [list(r) for r in C], intmat.identity(n))
    if isogeny in ("ad", "adjoint"):
        return BasedRootDatum(n, intmat.identity(n), [list(c) for c in zip(*C)])
    # explicit cocharacter lattice: rows in fundamental-coweight coordinates
    B = [list(r) for r in isogeny]
    if len(B) != n or any(len(r) != n for r in B):
        raise RootDatumError("explicit lattice needs a square basis of full rank")
    if q_rank(B) != n:
        raise RootDatumError("explicit lattice basis is singular")
    coroots = []
    for j in range(n):
        y = intmat.int_solve_rows(B, [C[i][j] for i in range(n)])
        if y is None:
            raise RootDatumError("lattice does not contain the coroot lattice")
        coroots.append(y)
    roots = [[B[k][i] for k in range(n)] for i in range(n)]
    return BasedRootDatum(n, roots, coroots)


def build_simple(series: str, rank: int, isogeny="simply_connected") -> BasedRootDatum:
    """Datum of a simple type; ``isogeny`` is 'simply_connected', 'adjoint' or
    explicit basis rows of X_* in fundamental-coweight coordinates (a lattice
    between the coroot and coweight lattices)."""
    return _from_cartan(cartan_matrix(series, rank), isogeny)


def gl(n: int) -> BasedRootDatum:
    roots = [[1 if k == i else -1 if k == i + 1 else 0 for k in range(n)] for i in range(n - 1)]
    return BasedRootDatum(n, roots, roots)


def torus(n: int) -> BasedRootDatum:
    return BasedRootDatum(n, [], [])


def product(*data: BasedRootDatum) -> BasedRootDatum:
    """Blockwise direct product."""
    total = sum(d.rank_X for d in data)
    roots, coroots = [], []
    off = 0
    for d in data:
        pad = lambda v: [0] * off + list(v) + [0] * (total - off - d.rank_X)
        roots += [pad(v) for v in d.simple_roots]
        coroots += [pad(v) for v in d.simple_coroots]
        off += d.rank_X
    return BasedRootDatum(total, roots, coroots)


_NAME = re.compile(r"^(GL|SL|PGL|PSL|Sp|PSp|SO|Spin|T|Gm|[ABCDEFG])(\d*)(?:_?(sc|ad))?$")


def parse_type(name: str) -> BasedRootDatum:
    """Datum from a name such as 'GL2', 'PGL6', 'Sp4', 'SO5', 'G2', 'B2_ad' or 'A1xA2'."""
    parts = [s for s in name.replace("×", "x").split("x")]
    if len(parts) > 1:
        return product(*(parse_type(s) for s in parts))
    m = _NAME.match(name.strip())
    if not m:
        raise RootDatumError(f"unrecognised type name {name!r}")
    kind, num, iso = m.groups()
    n = int(num) if num else 1
    if kind == "GL":
        return gl(n)
    if kind in ("T", "Gm"):
        return torus(n)
    if kind == "SL":
        return build_simple("A", n - 1, "sc")
    if kind in ("PGL", "PSL"):
        return build_simple("A", n - 1, "adjoint")
    if kind in ("Sp", "PSp"):
        if n % 2:
            raise RootDatumError("symplectic groups need even degree")
        iso_ = "sc" if kind == "Sp" else "adjoint"
        return build_simple("A" if n == 2 else "C", n // 2 if n > 2 else 1, iso_)
    if kind in ("SO", "Spin"):
        if n % 2 == 0:
            raise RootDatumError("only odd orthogonal groups are supported by name")
        iso_ = "adjoint" if kind == "SO" else "sc"
        return build_simple("A" if n == 3 else "B", (n - 1) // 2, iso_)
    return build_simple(kind, n, "adjoint" if iso == "ad" else "sc")


# ---------------------------------------------------------------------------
# generalised reductive data


def _mat_mul(A, B):
    return tuple(tuple(r) for r in intmat.mat_mul(A, B))


def _identity_index(table):
    n = len(table)
    for e in range(n):
        if all(table[e][g] == g and table[g][e] == g for g in range(n)):
            return e
    raise RootDatumError("multiplication table has no identity")


def check_group_table(table):
    n = len(table)
    if any(len(r) != n or any(not 0 <= x < n for x in r) for r in table):
        raise RootDatumError("malformed multiplication table")
    e = _identity_index(table)
    for a in range(n):
        if sorted(table[a]) != list(range(n)):
            raise RootDatumError("table rows are not permutations")
        if not any(table[a][b] == e for b in range(n)):
            raise RootDatumError("element without inverse")
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    raise RootDatumError(f"table is not associative at {(a, b, c)}")
    return e


@dataclass(frozen=True)
class LatticeWithAction:
    """Free Z-module of given rank with a finite group acting by integer matrices
    (on column vectors).  ``splitting`` optionally partitions the basis into
    two stable blocks M1, M2."""

    rank: int
    table: tuple = ((0,),)
    action: tuple = None
    splitting: tuple = None

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in r) for r in self.table)
        object.__setattr__(self, "table", table)
        action = self.action
        if action is None:
            action = tuple(tuple(tuple(r) for r in intmat.identity(self.rank)) for _ in table)
        action = tuple(tuple(tuple(int(x) for x in r) for r in A) for A in action)
        object.__setattr__(self, "action", action)
        if len(table) > MAX_DELTA_ORDER:
            raise RootDatumError("component group larger than the supported cap")
        if len(action) != len(table):
            raise RootDatumError("one action matrix per group element is required")
        if any(len(A) != self.rank or any(len(r) != self.rank for r in A) for A in action):
            raise RootDatumError("action matrix has wrong shape")
        check_group_table(table)
        _check_hom(table, action)
        if self.splitting is not None:
            blocks = tuple(tuple(b) for b in self.splitting)
            object.__setattr__(self, "splitting", blocks)
            if sorted(i for b in blocks for i in b) != list(range(self.rank)):
                raise RootDatumError("splitting is not a partition of the basis")
            for A in action:
                for b in blocks:
                    other = [i for i in range(self.rank) if i not in b]
                    if any(A[i][j] for i in other for j in b):
                        raise RootDatumError("splitting block is not stable")

    def block(self, k):
        """Sub-lattice with action from splitting block k."""
        idx = self.splitting[k]
        act = tuple(tuple(tuple(A[i][j] for j in idx) for i in idx) for A in self.action)
        return LatticeWithAction(len(idx), self.table, act)

    def invariant_rank(self):
        """Rank of the invariants in M tensor Q."""
        rows = []
        for A in self.action:
            rows += [[A[i][j] - (1 if i == j else 0) for j in range(self.rank)] for i in range(self.rank)]
        return self.rank - q_rank(rows) if rows else self.rank

    def to_json(self):
        out = {"rank": self.rank, "table": [list(r) for r in self.table],
               "action": [[list(r) for r in A] for A in self.action]}
        if self.splitting is not None:
            out["splitting"] = [list(b) for b in self.splitting]
        return out


def _check_hom(table, action):
    n = len(table)
    for a in range(n):
        for b in range(n):
            if _mat_mul(action[a], action[b]) != action[table[a][b]]:
                raise RootDatumError(f"action is not a homomorphism at {(a, b)}")
    e = _identity_index(table)
    k = len(action[e])
    if action[e] != tuple(tuple(r) for r in intmat.identity(k)):
        raise RootDatumError("identity element must act trivially")


@dataclass(frozen=True)
class GenReductiveDatum:
    """Based root datum with a finite component group acting by pinned
    automorphisms of X^* (matrices act on column vectors)."""

    base: BasedRootDatum
    table: tuple = ((0,),)
    action: tuple = None

    def __post_init__(self):
        lat = LatticeWithAction(self.base.rank_X, self.table, self.action)
        object.__setattr__(self, "table", lat.table)
        object.__setattr__(self, "action", lat.action)
        self._check_pinned()

    @classmethod
    def trivial(cls, base):
        return cls(base)

    @property
    def order(self):
        return len(self.table)

    @cached_property
    def identity(self):
        return _identity_index(self.table)

    def root_permutation(self, g):
        """Permutation of root indices induced by element g."""
        A = self.action[g]
        idx = self.base.root_index
        return [idx[tuple(intmat.mat_vec(A, r))] for r in self.base.roots]

    def coaction(self, g):
        """Contragredient action on X_*."""
        return tuple(tuple(r) for r in intmat.transpose(intmat.int_inverse(self.action[g])))

    def _check_pinned(self):
        b = self.base
        idx = b.root_index
        simple = set(b.simple_roots)
        coroot_of = dict(zip(b.roots, b.coroots))
        for g in range(self.order):
            A = self.action[g]
            try:
                Ainv_t = intmat.transpose(intmat.int_inverse(A))
            except (ValueError, ZeroDivisionError):
                raise RootDatumError("action matrix is not invertible over Z")
            for r in b.roots:
                img = tuple(intmat.mat_vec(A, r))
                if img not in idx:
                    raise RootDatumError(f"element {g} does not permute the roots")
                if tuple(intmat.mat_vec(Ainv_t, coroot_of[r])) != coroot_of[img]:
                    raise RootDatumError(f"element {g} does not respect coroots")
            for r in b.simple_roots:
                if tuple(intmat.mat_vec(A, r)) not in simple:
                    raise RootDatumError(f"element {g} does not preserve the pinning")

    def to_json(self):
        out = self.base.to_json()
        out["component_group"] = {"table": [list(r) for r in self.table]}
        out["action"] = [[list(r) for r in A] for A in self.action]
        return out


def as_gen(d) -> GenReductiveDatum:
    return d if isinstance(d, GenReductiveDatum) else GenReductiveDatum(d)


def as_base(d) -> BasedRootDatum:
    return d.base if isinstance(d, GenReductiveDatum) else d


# ---------------------------------------------------------------------------
# invariants


def dim_G(d) -> int:
    b = as_base(d)
    return b.rank_X + b.num_roots


def torus_quotient_lattice(d) -> LatticeWithAction:
    """Characters orthogonal to every coroot (the character lattice of G^0/G')."""
    g = as_gen(d)
    b = g.base
    M = intmat.integer_kernel([list(c) for c in b.simple_coroots], b.rank_X)
    action = []
    for A in g.action:
        cols = []
        for m in M:
            c = intmat.int_solve_rows(M, intmat.mat_vec(A, m))
            if c is None:
                raise RootDatumError("action does not preserve the torus quotient")
            cols.append(c)
        action.append(intmat.transpose(cols) if cols else [])
    return LatticeWithAction(len(M), g.table, action)


def dim_Z(d) -> int:
    """Dimension of the centre: rank of the component-group invariants of X^*/ZPhi (rationally)."""
    return torus_quotient_lattice(d).invariant_rank()


def pi1_derived(d) -> tuple:
    """Invariant factors of (X_* cap Q Phi^vee) / Z Phi^vee."""
    b = as_base(d)
    if not b.simple_coroots:
        return ()
    return tuple(intmat.torsion_factors([list(c) for c in b.simple_coroots]))


def is_pi1_etale(d, p: int) -> bool:
    return all(n % p for n in pi1_derived(d))


def with_cocharacter_basis(d: BasedRootDatum, B) -> BasedRootDatum:
    """Re-express d with cocharacter lattice spanned by rows of B (X_* coordinates).

    The new lattice must contain every simple coroot; characters become the dual lattice.
    """
    roots = [intmat.mat_vec(B, a) for a in d.simple_roots]
    coroots = []
    for c in d.simple_coroots:
        y = intmat.int_solve_rows(B, c)
        if y is None:
            raise RootDatumError("coroot outside the requested cocharacter lattice")
        coroots.append(y)
    return BasedRootDatum(len(B), roots, coroots)


def derived_datum(d) -> BasedRootDatum:
    """Datum of the derived group: X_* replaced by X_* cap Q Phi^vee."""
    b = as_base(d)
    M = intmat.integer_kernel([list(c) for c in b.simple_coroots], b.rank_X)
    S = intmat.integer_kernel(M, b.rank_X) if M else intmat.identity(b.rank_X)
    if len(S) == b.rank_X:
        return b
    return with_cocharacter_basis(b, S)


def etale_pi1_cover(d, p: int) -> BasedRootDatum:
    """Intermediate cover whose pi_1 is the prime-to-p part of pi_1(d).

    Non-semisimple input is first replaced by its derived datum.
    """
    b = derived_datum(d)
    n = b.rank_X
    factors = pi1_derived(b)
    v = 0
    for f in factors:
        k = 0
        while f % p == 0:
            f //= p
            k += 1
        v = max(v, k)
    rows = [list(c) for c in b.simple_coroots] + [[p**v if i == j else 0 for j in range(n)] for i in range(n)]
    L = intmat.hermite_basis(rows, n)
    return with_cocharacter_basis(b, L)


def datum_from_json(obj) -> GenReductiveDatum:
    """Build a datum from the JSON schema (series name or explicit vectors)."""
    series = obj.get("series", "explicit")
    if series == "explicit":
        sr = obj.get("simple_roots", [])
        sc = obj.get("simple_coroots", [])
        rank = obj.get("rank_X")
        if rank is None:
            vecs = sr + sc
            if not vecs:
                raise RootDatumError("rank_X required for a datum without roots")
            rank = len(vecs[0])
        base = BasedRootDatum(rank, sr, sc)
    else:
        base = parse_type(series)
    table = obj.get("component_group", {}).get("table", [[0]])
    action = obj.get("action")
    return GenReductiveDatum(base, table, action)
