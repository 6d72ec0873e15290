"""
Parabolic and Levi root partitions defined by cocharacters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm

from .intmat import dot, q_rank, q_solve_rows, transpose
from .root_datum import (
    BasedRootDatum,
    as_gen,
    build_simple,
    dim_G,
    _from_cartan,
)


class LeviError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class LeviDescriptor:
    """Root partition Phi = Phi_L + Phi_U + (-Phi_U) attached to a cocharacter.

    Root sets are stored as sorted tuples of root indices of the datum.
    """

    cocharacter: tuple
    levi_roots: tuple
    unipotent_roots: tuple
    rank_X: int
    subset: tuple = None
    delta_stable: bool = True

    @property
    def dim_U(self):
        return len(self.unipotent_roots)

    @property
    def dim_L(self):
        return self.rank_X + len(self.levi_roots)

    @property
    def dim_G(self):
        return self.dim_L + 2 * self.dim_U

    def to_json(self):
        return {
            "subset": list(self.subset) if self.subset is not None else None,
            "cocharacter": list(self.cocharacter),
            "dim_L": self.dim_L,
            "dim_U": self.dim_U,
            "delta_stable": self.delta_stable,
        }


def _delta_stable(g, roots):
    s = set(roots)
    for k in range(g.order):
        perm = g.root_permutation(k)
        if any(perm[i] not in s for i in s):
            return False
    return True


def parabolic_partition(d, lam, subset=None) -> LeviDescriptor:
    g = as_gen(d)
    b = g.base
    lam = tuple(int(x) for x in lam)
    if len(lam) != b.rank_X:
        raise LeviError("cocharacter length differs from rank_X")
    pairing = [dot(r, lam) for r in b.roots]
    levi = tuple(i for i, x in enumerate(pairing) if x == 0)
    unip = tuple(i for i, x in enumerate(pairing) if x > 0)
    return LeviDescriptor(lam, levi, unip, b.rank_X, subset, _delta_stable(g, levi))


def _face_cocharacter(b: BasedRootDatum, subset):
    """Rational cocharacter pairing to 0 on simple roots in subset and to 1 on the rest.

    Solved over Q inside the span of the simple roots, then cleared of
    denominators; only the signs of the pairings matter.
    """
    n = len(b.simple_roots)
    target = [0 if i in subset else 1 for i in range(n)]
    # find lam with <alpha_i, lam> = target_i: lam = A^T (A A^T)^{-1} target
    A = [list(r) for r in b.simple_roots]
    AAt = [[dot(r, s) for s in A] for r in A]
    y = q_solve_rows(transpose(AAt), target) if n else []
    lam = [sum(Fraction(y[i]) * A[i][k] for i in range(n)) for k in range(b.rank_X)]
    den = lcm(1, *(x.denominator for x in lam))
    return tuple(int(x * den) for x in lam)


def enumerate_standard_levis(d) -> list:
    """One descriptor per subset of simple roots, smallest subsets first."""
    g = as_gen(d)
    b = g.base
    n = len(b.simple_roots)
    out = []
    for k in range(n + 1):
        for S in combinations(range(n), k):
            lam = _face_cocharacter(b, S)
            out.append(parabolic_partition(g, lam, subset=S))
    return out


def has_codim2_levi(d):
    """A Delta-stable Levi of codimension 2, or None."""
    for L in enumerate_standard_levis(d):
        if L.dim_U == 1 and L.delta_stable:
            return L
    return None


@dataclass(frozen=True)
class Tasho1Split:
    """Splitting of the adjoint quotient along a codimension-2 Levi."""

    g1: BasedRootDatum
    beta: tuple
    beta_coroot: tuple
    pgl2: BasedRootDatum
    pairs_checked: int

    def to_json(self):
        return {
            "g1": self.g1.to_json(),
            "beta": list(self.beta),
            "beta_coroot": list(self.beta_coroot),
            "pgl2": self.pgl2.to_json(),
            "pairs_checked": self.pairs_checked,
        }


def tasho1_split(d, L: LeviDescriptor) -> Tasho1Split:
    g = as_gen(d)
    b = g.base
    rs = b.system
    if L.dim_G != dim_G(b) or L.dim_U != 1:
        raise LeviError("Levi is not of codimension 2")
    bi = L.unipotent_roots[0]
    beta = rs.roots[bi]
    bound = 4  # root strings have length at most 3
    checked = 0
    for ai in L.levi_roots:
        a = rs.roots[ai]
        for r in range(1, bound + 1):
            for s in range(1, bound + 1):
                for sign in (1, -1):
                    v = tuple(r * x + sign * s * y for x, y in zip(a, beta))
                    checked += 1
                    if rs.is_root(v):
                        raise LeviError(
                            "mixed root in the commutator of U_alpha and U_beta",
                            witness={"alpha": list(b.roots[ai]), "beta": list(b.roots[bi]),
                                     "r": r, "s": sign * s},
                        )
        if rs.pairing(a, rs.coroots[bi]) or rs.pairing(beta, rs.coroots[ai]):
            raise LeviError("Levi root not orthogonal to beta", witness={"alpha": list(b.roots[ai])})
    # simple roots of Phi_L: the positive Levi roots not a sum of two positive Levi roots
    pos = [i for i in L.levi_roots if sum(rs.roots[i]) > 0]
    pos_set = {rs.roots[i] for i in pos}
    simple = [
        i for i in pos
        if not any(tuple(x - y for x, y in zip(rs.roots[i], rs.roots[j])) in pos_set for j in pos)
    ]
    C = [[rs.pairing(rs.roots[i], rs.coroots[j]) for j in simple] for i in simple]
    g1 = _from_cartan(C, "adjoint")
    return Tasho1Split(g1, b.roots[bi], b.coroots[bi], build_simple("A", 1, "adjoint"), checked)


def levi_center_dim(d, L: LeviDescriptor) -> int:
    """Dimension of Z(L): Delta-invariant characters orthogonal to the coroots of Phi_L, over Q."""
    g = as_gen(d)
    b = g.base
    n = b.rank_X
    rows = [list(b.coroots[i]) for i in L.levi_roots]
    for A in g.action:
        rows += [[A[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    return n - q_rank(rows)
