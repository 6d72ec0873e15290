"""
Generalised 2-cocycles (omega, c) on a possibly non-abelian kernel N and the
rigidified extensions 1 -> N -> G -> Delta -> 1 they classify.

Elements of an extension are pairs (n, delta), indexed n + |N| * delta, with

    (n1, d1) (n2, d2) = (n1 * omega(d1)(n2) * c(d1, d2), d1 d2).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

MAX_ORDER = 256


class GroupError(ValueError):
    pass


class CocycleError(ValueError):
    def __init__(self, axiom, message, witness=None):
        super().__init__(f"axiom ({axiom}): {message}")
        self.axiom = axiom
        self.witness = witness


@dataclass(frozen=True)
class FiniteGroup:
    """Group given by its multiplication table on indices 0..n-1."""

    table: tuple
    name: str = ""

    def __post_init__(self):
        t = tuple(tuple(int(x) for x in r) for r in self.table)
        object.__setattr__(self, "table", t)
        n = len(t)
        if n == 0 or n > MAX_ORDER:
            raise GroupError(f"group order must be between 1 and {MAX_ORDER}")
        if any(len(r) != n for r in t):
            raise GroupError("table is not square")

    @property
    def order(self):
        return len(self.table)

    @cached_property
    def array(self):
        return np.array(self.table, dtype=np.int64)

    @cached_property
    def identity(self):
        T = self.array
        idx = np.arange(self.order)
        for e in range(self.order):
            if (T[e] == idx).all() and (T[:, e] == idx).all():
                return e
        raise GroupError("table has no identity")

    @cached_property
    def inverses(self):
        e = self.identity
        inv = []
        for a in range(self.order):
            hits = [b for b in range(self.order) if self.table[a][b] == e]
            if len(hits) != 1 or self.table[hits[0]][a] != e:
                raise GroupError(f"element {a} has no two-sided inverse")
            inv.append(hits[0])
        return tuple(inv)

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverses[a]

    def verify(self):
        """Exhaustive identity, inverse, closure and associativity check."""
        T = self.array
        n = self.order
        if T.min() < 0 or T.max() >= n:
            raise GroupError("table entries out of range")
        self.identity
        self.inverses
        lhs = T[T]
        rhs = T[np.arange(n)[:, None, None], T[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            raise GroupError(f"not associative at {tuple(int(x) for x in bad[0])}")
        return True

    def element_order(self, a):
        e, k, x = self.identity, 1, a
        while x != e:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self):
        T = self.array
        return bool((T == T.T).all())

    def conj(self, g, x):
        """g x g^-1."""
        return self.table[self.table[g][x]][self.inverses[g]]

    def to_json(self):
        return {"table": [list(r) for r in self.table]}


# ---------------------------------------------------------------------------
# group catalogue


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), f"Z{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Index g + |G| h."""
    m = G.order
    t = [[G.table[a % m][b % m] + m * H.table[a // m][b // m] for b in range(m * H.order)] for a in range(m * H.order)]
    return FiniteGroup(t, f"{G.name}x{H.name}")


def automorphisms(N: FiniteGroup):
    """All automorphisms of N as permutation tuples, by brute force on a generating set."""
    gens = _generators(N)
    e = N.identity
    out = []
    for images in product(range(N.order), repeat=len(gens)):
        phi = _extend_hom(N, gens, images)
        if phi is not None and len(set(phi)) == N.order:
            out.append(phi)
    if not out:  # trivial group
        out = [(e,)]
    return sorted(set(out))


def _generators(N: FiniteGroup):
    """Greedy small generating set."""
    gens = []
    span = {N.identity}
    for a in sorted(range(N.order), key=lambda x: -N.element_order(x)):
        if a not in span:
            gens.append(a)
            span = _closure(N, gens)
        if len(span) == N.order:
            break
    return gens


def _closure(N, gens):
    span = {N.identity}
    frontier = [N.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = N.table[x][g]
                if y not in span:
                    span.add(y)
                    nxt.append(y)
        frontier = nxt
    return span


def _extend_hom(N, gens, images):
    """Extend gens -> images to a homomorphism N -> N (None if ill-defined)."""
    phi = {N.identity: N.identity}
    frontier = [N.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, im in zip(gens, images):
                y = N.table[x][g]
                val = N.table[phi[x]][im]
                if y in phi:
                    if phi[y] != val:
                        return None
                else:
                    phi[y] = val
                    nxt.append(y)
        frontier = nxt
    if len(phi) != N.order:
        return None
    phi = tuple(phi[i] for i in range(N.order))
    for a in range(N.order):
        for b in range(N.order):
            if phi[N.table[a][b]] != N.table[phi[a]][phi[b]]:
                return None
    return phi


def _compose(f, g):
    """f o g for permutation tuples."""
    return tuple(f[x] for x in g)


def _perm_power(f, k):
    out = tuple(range(len(f)))
    for _ in range(k):
        out = _compose(f, out)
    return out


def inner(N: FiniteGroup, g):
    return tuple(N.conj(g, x) for x in range(N.order))


# ---------------------------------------------------------------------------
# cocycles


@dataclass(frozen=True)
class GenTwoCocycle:
    """omega[d] is the permutation of N given by omega(d); c[d1][d2] is an index into N."""

    N: FiniteGroup
    Delta: FiniteGroup
    omega: tuple
    c: tuple

    def __post_init__(self):
        object.__setattr__(self, "omega", tuple(tuple(int(x) for x in w) for w in self.omega))
        object.__setattr__(self, "c", tuple(tuple(int(x) for x in r) for r in self.c))
        if len(self.omega) != self.Delta.order or any(len(w) != self.N.order for w in self.omega):
            raise CocycleError("shape", "omega must give one permutation of N per element of Delta")
        if len(self.c) != self.Delta.order or any(len(r) != self.Delta.order for r in self.c):
            raise CocycleError("shape", "c must be a |Delta| x |Delta| array")
        if self.N.order * self.Delta.order > MAX_ORDER:
            raise CocycleError("shape", f"extension order exceeds {MAX_ORDER}")

    @classmethod
    def semidirect(cls, N, Delta, omega):
        e = N.identity
        return cls(N, Delta, omega, tuple((e,) * Delta.order for _ in range(Delta.order)))

    def to_json(self):
        return {"N": self.N.to_json(), "Delta": self.Delta.to_json(),
                "omega": [list(w) for w in self.omega], "c": [list(r) for r in self.c]}

    @classmethod
    def from_json(cls, obj):
        return cls(FiniteGroup(obj["N"]["table"]), FiniteGroup(obj["Delta"]["table"]), obj["omega"], obj["c"])


def validate_cocycle(z: GenTwoCocycle):
    """Check each omega(d) is an automorphism, then axioms (2), (4), (1), (3)."""
    N, D = z.N, z.Delta
    n = N.order
    nT = N.array
    for d, w in enumerate(z.omega):
        if sorted(w) != list(range(n)):
            raise CocycleError("aut", "omega(delta) is not a permutation", {"delta": d})
        wa = np.array(w)
        bad = np.argwhere(wa[nT] != nT[wa[:, None], wa[None, :]])
        if len(bad):
            a, b = (int(x) for x in bad[0])
            raise CocycleError("aut", "omega(delta) is not a homomorphism", {"delta": d, "x": a, "y": b})
    if any(not 0 <= x < n for r in z.c for x in r):
        raise CocycleError("shape", "c takes values outside N")
    e, eD = N.identity, D.identity
    if z.omega[eD] != tuple(range(n)):
        raise CocycleError(2, "omega(1) is not the identity", {"x": next(x for x in range(n) if z.omega[eD][x] != x)})
    for d in range(D.order):
        if z.c[d][eD] != e:
            raise CocycleError(4, "c(delta, 1) != 1", {"delta": d})
        if z.c[eD][d] != e:
            raise CocycleError(4, "c(1, delta) != 1", {"delta": d})
    for d1 in range(D.order):
        for d2 in range(D.order):
            lhs = _compose(z.omega[d1], z.omega[d2])
            rhs = _compose(inner(N, z.c[d1][d2]), z.omega[D.table[d1][d2]])
            if lhs != rhs:
                x = next(i for i in range(n) if lhs[i] != rhs[i])
                raise CocycleError(1, "omega(d1) omega(d2) != Int(c(d1,d2)) omega(d1 d2)", {"d1": d1, "d2": d2, "x": x})
    for d1, d2, d3 in product(range(D.order), repeat=3):
        d12, d23 = D.table[d1][d2], D.table[d2][d3]
        lhs = N.table[z.c[d1][d2]][z.c[d12][d3]]
        rhs = N.table[z.omega[d1][z.c[d2][d3]]][z.c[d1][d23]]
        if lhs != rhs:
            raise CocycleError(3, "c(d1,d2) c(d1d2,d3) != omega(d1)(c(d2,d3)) c(d1,d2d3)", {"d1": d1, "d2": d2, "d3": d3})
    return True


@dataclass(frozen=True)
class Extension:
    """Group law on N x Delta (index n + |N| delta) with iota(n) = (n, 1) and pi(n, d) = d."""

    group: FiniteGroup
    N: FiniteGroup
    Delta: FiniteGroup

    def index(self, n, d):
        return n + self.N.order * d

    def iota(self, n):
        return self.index(n, self.Delta.identity)

    def pi(self, g):
        return g // self.N.order

    def to_json(self):
        return {"table": [list(r) for r in self.group.table], "N": self.N.to_json(), "Delta": self.Delta.to_json()}


def build_extension(z: GenTwoCocycle) -> Extension:
    validate_cocycle(z)
    N, D = z.N, z.Delta
    n, m = N.order, D.order
    nT = N.array
    om = np.array(z.omega)
    c = np.array(z.c)
    g = np.arange(n * m)
    n1, d1 = (g % n)[:, None], (g // n)[:, None]
    n2, d2 = (g % n)[None, :], (g // n)[None, :]
    prod_n = nT[nT[n1, om[d1, n2]], c[d1, d2]]
    prod_d = D.array[d1, d2]
    T = prod_n + n * prod_d
    G = FiniteGroup(T.tolist())
    G.verify()
    return Extension(G, N, D)


def extension_to_cocycle(E: Extension) -> GenTwoCocycle:
    """(omega*, c*) from the section s(d) = (1, d)."""
    G, N, D = E.group, E.N, E.Delta
    n = N.order
    if G.order != n * D.order:
        raise GroupError("group order differs from |N| |Delta|")
    G.verify()
    T = G.array
    iota = np.arange(n) + n * D.identity
    bad = np.argwhere(T[iota[:, None], iota[None, :]] != iota[N.array])
    if len(bad):
        raise GroupError(f"iota is not a homomorphism at {tuple(int(x) for x in bad[0])}")
    proj = np.arange(G.order) // n
    bad = np.argwhere(T // n != D.array[proj[:, None], proj[None, :]])
    if len(bad):
        raise GroupError(f"pi is not a homomorphism at {tuple(int(x) for x in bad[0])}")
    eN = N.identity
    s = [E.index(eN, d) for d in range(D.order)]

    def back(g):
        if E.pi(g) != D.identity:
            raise GroupError("element is not in the image of iota")  # pragma: no cover
        return g % n

    omega = [tuple(back(G.conj(s[d], E.iota(x))) for x in range(n)) for d in range(D.order)]
    c = [
        tuple(back(G.mul(G.mul(s[d1], s[d2]), G.inv(s[D.mul(d1, d2)]))) for d2 in range(D.order))
        for d1 in range(D.order)
    ]
    z = GenTwoCocycle(N, D, omega, c)
    validate_cocycle(z)
    return z


def twist_by_section(z: GenTwoCocycle, a) -> GenTwoCocycle:
    """Cocycle of the section s'(d) = iota(a(d)) s(d); a(1) must be 1."""
    N, D = z.N, z.Delta
    if a[D.identity] != N.identity:
        raise CocycleError(4, "section twist must be trivial at the identity")
    omega = [_compose(inner(N, a[d]), z.omega[d]) for d in range(D.order)]
    c = [
        tuple(
            N.mul(N.mul(N.mul(a[d1], z.omega[d1][a[d2]]), z.c[d1][d2]), N.inv(a[D.mul(d1, d2)]))
            for d2 in range(D.order)
        )
        for d1 in range(D.order)
    ]
    return GenTwoCocycle(N, D, omega, c)


def relabel(E: Extension, a) -> Extension:
    """Same abstract group, relabelled so that (n, d) names the old (n a(d), d)."""
    N = E.N
    n = N.order
    old = [E.index(N.mul(g % n, a[g // n]), g // n) for g in range(E.group.order)]
    new_of = {o: k for k, o in enumerate(old)}
    T = [[new_of[E.group.mul(old[x], old[y])] for y in range(len(old))] for x in range(len(old))]
    return Extension(FiniteGroup(T), E.N, E.Delta)


# ---------------------------------------------------------------------------
# catalogue of kernels, quotients and cocycles


def kernel_catalogue():
    """Groups of order at most 12 used as kernels."""
    out = [cyclic(n) for n in range(1, 13)]
    z2, z3, z4 = cyclic(2), cyclic(3), cyclic(4)
    out += [direct_product(z2, z2), direct_product(z2, z4), direct_product(z3, z3),
            direct_product(direct_product(z2, z2), z2), direct_product(z2, cyclic(6))]
    out += [dihedral(3), dihedral(4), quaternion(), alternating4(), dihedral(6), dicyclic3()]
    return out


def quotient_catalogue():
    z2 = cyclic(2)
    return [cyclic(1), z2, cyclic(3), cyclic(4), direct_product(z2, z2)]


def _negation(n):
    return tuple((-x) % n for x in range(n))


def dihedral(k) -> FiniteGroup:
    """Order 2k, as Z/k semidirect Z/2 by inversion."""
    E = build_extension(GenTwoCocycle.semidirect(cyclic(k), cyclic(2), (tuple(range(k)), _negation(k))))
    return FiniteGroup(E.group.table, f"D{k}")


def quaternion() -> FiniteGroup:
    z = GenTwoCocycle(cyclic(4), cyclic(2), (tuple(range(4)), _negation(4)), ((0, 0), (0, 2)))
    return FiniteGroup(build_extension(z).group.table, "Q8")


def dicyclic3() -> FiniteGroup:
    """Z/3 semidirect Z/4, generator acting by inversion."""
    om = tuple(tuple(range(3)) if d % 2 == 0 else _negation(3) for d in range(4))
    return FiniteGroup(build_extension(GenTwoCocycle.semidirect(cyclic(3), cyclic(4), om)).group.table, "Dic3")


def alternating4() -> FiniteGroup:
    """Klein four-group semidirect Z/3, cycling the three involutions."""
    V = direct_product(cyclic(2), cyclic(2))
    rot = (0, 2, 3, 1)  # 1 -> 2 -> 3 -> 1 on the nonzero elements
    om = (tuple(range(4)), rot, _compose(rot, rot))
    return FiniteGroup(build_extension(GenTwoCocycle.semidirect(V, cyclic(3), om)).group.table, "A4")


def homomorphisms_to_aut(Delta: FiniteGroup, auts):
    """All homomorphisms Delta -> Aut(N), brute force on a generating set of Delta."""
    gens = _generators(Delta)
    ident = tuple(range(len(auts[0])))
    out = []
    for images in product(auts, repeat=len(gens)):
        phi = {Delta.identity: ident}
        frontier = [Delta.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, im in zip(gens, images):
                    y = Delta.table[x][g]
                    val = _compose(phi[x], im)
                    if y in phi:
                        if phi[y] != val:
                            ok = False
                            break
                    else:
                        phi[y] = val
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok and all(_compose(phi[a], phi[b]) == phi[Delta.table[a][b]] for a in phi for b in phi):
            out.append(tuple(phi[d] for d in range(Delta.order)))
    return out


def _cyclic_generator(Delta):
    for g in range(Delta.order):
        if Delta.element_order(g) == Delta.order:
            return g
    return None


def carry_cocycles(N: FiniteGroup, Delta: FiniteGroup, auts):
    """Cocycles for cyclic Delta = <g> of order k with s(g)^k = x:
    omega(g^i) = phi^i, c(g^i, g^j) = x if i + j >= k else 1, where phi(x) = x and phi^k = Int(x)."""
    k = Delta.order
    g = _cyclic_generator(Delta)
    if g is None or k == 1:
        return []
    powers = [Delta.identity]
    for _ in range(k - 1):
        powers.append(Delta.table[powers[-1]][g])
    expo = {d: i for i, d in enumerate(powers)}
    e = N.identity
    out = []
    for phi in auts:
        phik = _perm_power(phi, k)
        for x in range(N.order):
            if x == e or phi[x] != x or phik != inner(N, x):
                continue
            omega = [_perm_power(phi, expo[d]) for d in range(k)]
            c = [tuple(x if expo[a] + expo[b] >= k else e for b in range(k)) for a in range(k)]
            out.append(GenTwoCocycle(N, Delta, omega, c))
    return out


def klein_bilinear_cocycles(N: FiniteGroup, Delta: FiniteGroup, homs, rng, per_hom=3):
    """For abelian N: c(d, d') = sum_{j,k} d_j d'_k M_jk with M_jk in N[2] fixed by omega."""
    if Delta.order != 4 or _cyclic_generator(Delta) is not None or not N.is_abelian():
        return []
    a, b = [x for x in range(4) if x != Delta.identity][:2]
    bits = {Delta.identity: (0, 0), a: (1, 0), b: (0, 1), Delta.table[a][b]: (1, 1)}
    e = N.identity
    out = []
    for omega in homs:
        fixed2 = [y for y in range(N.order) if N.table[y][y] == e and all(w[y] == y for w in omega)]
        choices = list(product(fixed2, repeat=4))
        rng.shuffle(choices)
        for M in choices[:per_hom]:
            def val(d1, d2):
                acc = e
                for j in range(2):
                    for k in range(2):
                        if bits[d1][j] and bits[d2][k]:
                            acc = N.table[acc][M[2 * j + k]]
                return acc
            c = [tuple(val(d1, d2) for d2 in range(4)) for d1 in range(4)]
            out.append(GenTwoCocycle(N, Delta, omega, c))
    return out


def cocycle_catalogue(seed=0, twists_per_cocycle=1, max_homs=None):
    """Semidirect, carry (dihedral/quaternion-type), Klein bilinear and section-twisted cocycles."""
    rng = random.Random(seed)
    out = []
    for N in kernel_catalogue():
        auts = automorphisms(N)
        for D in quotient_catalogue():
            homs = homomorphisms_to_aut(D, auts)
            if max_homs is not None and len(homs) > max_homs:
                homs = rng.sample(homs, max_homs)
            base = [GenTwoCocycle.semidirect(N, D, om) for om in homs]
            carries = carry_cocycles(N, D, auts)
            if max_homs is not None and len(carries) > max_homs:
                carries = rng.sample(carries, max_homs)
            base += carries
            base += klein_bilinear_cocycles(N, D, homs, rng)
            for z in base:
                out.append(z)
                for _ in range(twists_per_cocycle):
                    if D.order == 1 or N.order == 1:
                        break
                    a = [N.identity if d == D.identity else rng.randrange(N.order) for d in range(D.order)]
                    out.append(twist_by_section(z, a))
    return out
