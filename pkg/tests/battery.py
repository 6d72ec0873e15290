"""
Seeded tame representations sigma, tau with sigma tau sigma^-1 = tau^q.

GL_n reps are conjugated direct sums of characters, unipotent extensions
over a scalar tau, and 2-dim inductions.  Sp4 reps are built inside the
adjoint action: tau a torus element of order dividing q - 1, sigma a torus
element times root groups centralising tau.
"""

from __future__ import annotations

import random

from defspace import ff
from defspace.chevalley import build_chevalley
from defspace.ff import GF
from defspace.galois import LocalFieldDesc, TameRep, adjoint_gl, validate_tame_rep
from defspace.root_datum import parse_type

FIELDS = [
    LocalFieldDesc.unramified(3),
    LocalFieldDesc.unramified(5),
    LocalFieldDesc.unramified(2),
    LocalFieldDesc.unramified(3, 2),
]


def _tame_units(K, q):
    return [x for x in K.nonzero() if K.pow(x, q - 1) == 1]


def _block(F, K, rng, size):
    """(sigma, tau) for one indecomposable-ish block of the given size."""
    q = F.q
    units = list(K.nonzero())
    tame = _tame_units(K, q)
    if size == 1:
        kind = rng.choice(["random", "omega", "trivial"])
        if kind == "omega":
            return [[K.from_int(F.c_sigma)]], [[K.from_int(F.c_tau)]]
        if kind == "trivial":
            return [[1]], [[1]]
        return [[rng.choice(units)]], [[rng.choice(tame)]]
    induced = [x for x in K.nonzero() if K.pow(x, q * q - 1) == 1 and K.pow(x, q - 1) != 1]
    if size == 2 and induced and rng.random() < 0.5:
        t = rng.choice(induced)
        a = rng.choice(units)
        return [[0, a], [1, 0]], [[t, 0], [0, K.pow(t, q)]]
    t = rng.choice(tame)
    S = [[0] * size for _ in range(size)]
    for i in range(size):
        S[i][i] = rng.choice(units)
        for j in range(i + 1, size):
            S[i][j] = rng.randrange(K.q)
    T = [[t if i == j else 0 for j in range(size)] for i in range(size)]
    return S, T


def random_gl_rep(F: LocalFieldDesc, n: int, rng, k=1) -> TameRep:
    K = GF(F.p, k)
    blocks = []
    left = n
    while left:
        b = rng.randint(1, left)
        blocks.append(_block(F, K, rng, b))
        left -= b
    S = ff.zeros(n)
    T = ff.zeros(n)
    off = 0
    for s, t in blocks:
        m = len(s)
        for i in range(m):
            S[off + i][off:off + m] = s[i]
            T[off + i][off:off + m] = t[i]
        off += m
    P = _random_invertible(K, n, rng)
    Pi = ff.mat_inv(K, P)
    rho = TameRep(K, ff.mat_mul(K, ff.mat_mul(K, P, S), Pi), ff.mat_mul(K, ff.mat_mul(K, P, T), Pi))
    validate_tame_rep(F, rho)
    return rho


def _random_invertible(K, n, rng):
    while True:
        M = [[rng.randrange(K.q) for _ in range(n)] for _ in range(n)]
        if ff.is_invertible(K, M):
            return M


SP4 = parse_type("Sp4")


def random_sp4_adjoint(F: LocalFieldDesc, rng, k=1) -> TameRep:
    """Adjoint action of a tame Sp4-valued rep on Lie Sp4."""
    K = GF(F.p, k)
    A = build_chevalley(SP4, K)
    tame = _tame_units(K, F.q)
    lam = [rng.randrange(-2, 3) for _ in range(SP4.rank_X)]
    u = rng.choice(tame)
    tau = A.ad_torus(lam, u)
    mu = [rng.randrange(-2, 3) for _ in range(SP4.rank_X)]
    sigma = A.ad_torus(mu, rng.choice(list(K.nonzero())))
    central = [r for r in SP4.roots if K.pow(u, sum(a * b for a, b in zip(r, lam))) == 1]
    for r in rng.sample(central, min(len(central), rng.randint(0, 3))):
        sigma = ff.mat_mul(K, sigma, A.ad_unipotent(r, rng.randrange(K.q)))
    rho = TameRep(K, sigma, tau)
    validate_tame_rep(F, rho)
    return rho


def presentation_battery(seed=20240917, per_case=50):
    """Yield (group name, field, adjoint module, underlying rep or None)."""
    rng = random.Random(seed)
    for F in FIELDS:
        for name in ("GL2", "GL3", "Sp4"):
            for _ in range(per_case):
                k = rng.choice([1, 2])
                if name == "Sp4":
                    yield name, F, random_sp4_adjoint(F, rng, k), None
                else:
                    rho = random_gl_rep(F, int(name[2]), rng, k)
                    yield name, F, adjoint_gl(rho), rho
