"""
Local fields, tame-quotient representations and cohomology dimension formulas.

A representation is given by the images of a Frobenius lift sigma and a
tame inertia generator tau, subject to sigma tau sigma^-1 = tau^q.  Fixed
spaces are finite linear algebra; h^2 comes from Tate duality and h^1 from
the Euler-Poincare formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import ff
from .ff import FiniteField, GF, primitive_root
from .levi import levi_center_dim
from .root_datum import dim_G


class GaloisError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class LocalFieldDesc:
    """Finite extension of Q_p: residue degree f, ramification e, mu_{p^inf}(F) = mu_{p^m},
    and the mod p cyclotomic character on (sigma, tau) as integers mod p."""

    p: int
    f: int = 1
    e: int = 1
    m: int = 0
    c_sigma: int = None
    c_tau: int = None

    def __post_init__(self):
        p = self.p
        if not ff.is_prime(p):
            raise GaloisError(f"{p} is not prime")
        if self.f < 1 or self.e < 1 or self.m < 0:
            raise GaloisError("f, e must be positive and m non-negative")
        if self.c_sigma is None:
            object.__setattr__(self, "c_sigma", 1)
        if self.c_tau is None:
            object.__setattr__(self, "c_tau", pow(primitive_root(p), self.e, p))
        object.__setattr__(self, "c_sigma", self.c_sigma % p)
        object.__setattr__(self, "c_tau", self.c_tau % p)
        if 0 in (self.c_sigma, self.c_tau):
            raise GaloisError("cyclotomic values must be units")
        if p == 2 and self.m < 1:
            raise GaloisError("every 2-adic field contains -1, so m >= 1")
        if pow(self.c_tau, self.q - 1, p) != 1:
            raise GaloisError("c_tau^(q-1) must be 1")
        trivial = (self.c_sigma, self.c_tau) == (1, 1)
        if (self.m >= 1) != trivial:
            raise GaloisError(
                "m >= 1 exactly when the mod p cyclotomic character is trivial; "
                "give explicit c_sigma, c_tau for this field"
            )

    @property
    def q(self):
        return self.p**self.f

    @property
    def d_F(self):
        return self.e * self.f

    @property
    def has_zeta_p(self):
        return self.m >= 1

    @classmethod
    def unramified(cls, p, f=1):
        return cls(p, f, 1, 1 if p == 2 else 0)

    @classmethod
    def cyclotomic(cls, p, k=1):
        """Q_p(zeta_{p^k})."""
        return cls(p, 1, p ** (k - 1) * (p - 1), k, 1, 1)

    @classmethod
    def explicit(cls, p, f, e, m, c_sigma, c_tau):
        return cls(p, f, e, m, c_sigma, c_tau)

    @classmethod
    def from_json(cls, obj):
        return cls(obj["p"], obj.get("f", 1), obj.get("e", 1), obj.get("m", 1 if obj["p"] == 2 else 0),
                   obj.get("c_sigma"), obj.get("c_tau"))

    def to_json(self):
        return {"p": self.p, "f": self.f, "e": self.e, "m": self.m,
                "c_sigma": self.c_sigma, "c_tau": self.c_tau}


def kummer_dim(F: LocalFieldDesc) -> int:
    """dim_Fp F^x / (F^x)^p from F^x = Z x mu_{q-1} x mu_{p^m} x Z_p^{ef}."""
    return 1 + (1 if F.m >= 1 else 0) + F.e * F.f


# ---------------------------------------------------------------------------
# tame representations


@dataclass(frozen=True)
class TameRep:
    coeff: FiniteField
    sigma: tuple
    tau: tuple

    def __post_init__(self):
        for name in ("sigma", "tau"):
            M = tuple(tuple(int(x) for x in r) for r in getattr(self, name))
            object.__setattr__(self, name, M)
        n = len(self.sigma)
        if len(self.tau) != n or any(len(r) != n for r in self.sigma + self.tau):
            raise GaloisError("sigma and tau must be square of equal size")

    @property
    def dim(self):
        return len(self.sigma)

    @classmethod
    def trivial(cls, coeff, n=1):
        I = ff.identity(n)
        return cls(coeff, I, I)

    @classmethod
    def from_json(cls, obj):
        F = GF(obj["field"]["p"], obj["field"].get("k", 1))
        return cls(F, obj["sigma"], obj["tau"])

    def to_json(self):
        return {"field": self.coeff.describe(), "sigma": [list(r) for r in self.sigma],
                "tau": [list(r) for r in self.tau]}


def validate_tame_rep(F: LocalFieldDesc, rho: TameRep):
    K = rho.coeff
    if K.p != F.p:
        raise GaloisError("coefficient field characteristic differs from p")
    for name in ("sigma", "tau"):
        if not ff.is_invertible(K, getattr(rho, name)):
            raise GaloisError(f"M_{name} is singular")
    lhs = ff.mat_mul(K, ff.mat_mul(K, rho.sigma, rho.tau), ff.mat_inv(K, rho.sigma))
    rhs = ff.mat_pow(K, rho.tau, F.q)
    for i, (a, b) in enumerate(zip(lhs, rhs)):
        for j, (x, y) in enumerate(zip(a, b)):
            if x != y:
                raise GaloisError("sigma tau sigma^-1 != tau^q", witness={"entry": [i, j], "lhs": x, "rhs": y})
    return True


def direct_sum(*reps: TameRep) -> TameRep:
    K = reps[0].coeff
    n = sum(r.dim for r in reps)

    def block(name):
        M = ff.zeros(n)
        off = 0
        for r in reps:
            for i, row in enumerate(getattr(r, name)):
                M[off + i][off:off + r.dim] = list(row)
            off += r.dim
        return M

    return TameRep(K, block("sigma"), block("tau"))


def twist(F: LocalFieldDesc, rho: TameRep, power=1) -> TameRep:
    """rho tensor chi^power."""
    K = rho.coeff
    cs = K.pow(K.from_int(F.c_sigma), power)
    ct = K.pow(K.from_int(F.c_tau), power)
    return TameRep(K, ff.mat_scale(K, cs, rho.sigma), ff.mat_scale(K, ct, rho.tau))


def dual(rho: TameRep) -> TameRep:
    K = rho.coeff
    return TameRep(K, ff.transpose(ff.mat_inv(K, rho.sigma)), ff.transpose(ff.mat_inv(K, rho.tau)))


def twist_dual(F: LocalFieldDesc, rho: TameRep) -> TameRep:
    """V^*(1)."""
    return twist(F, dual(rho))


def h0(rho: TameRep) -> int:
    K = rho.coeff
    n = rho.dim
    if n == 0:
        return 0
    rows = []
    for M in (rho.sigma, rho.tau):
        rows += [[K.sub(M[i][j], 1 if i == j else 0) for j in range(n)] for i in range(n)]
    return len(ff.nullspace(K, rows, n))


def h2_via_duality(F: LocalFieldDesc, rho: TameRep) -> int:
    return h0(twist_dual(F, rho))


def h1_via_EP(F: LocalFieldDesc, rho: TameRep) -> int:
    return h0(rho) + h2_via_duality(F, rho) + rho.dim * F.d_F


def z1_dim(F: LocalFieldDesc, rho: TameRep) -> int:
    return rho.dim * (F.d_F + 1) + h2_via_duality(F, rho)


def cohomology(F: LocalFieldDesc, rho: TameRep) -> dict:
    validate_tame_rep(F, rho)
    a, c = h0(rho), h2_via_duality(F, rho)
    b = a + c + rho.dim * F.d_F
    if a - b + c != -rho.dim * F.d_F:
        raise GaloisError("Euler-Poincare identity violated")  # pragma: no cover
    return {"h0": a, "h1": b, "h2": c, "z1": rho.dim * (F.d_F + 1) + c}


# ---------------------------------------------------------------------------
# adjoint modules for GL_n


def _conj_matrix(K, g):
    """Matrix of X -> g X g^-1 on n x n matrices (row-major vectorisation)."""
    return ff.kron(K, g, ff.transpose(ff.mat_inv(K, g)))


def adjoint_gl(rho: TameRep) -> TameRep:
    K = rho.coeff
    return TameRep(K, _conj_matrix(K, rho.sigma), _conj_matrix(K, rho.tau))


def adjoint0_gl(rho: TameRep) -> TameRep:
    """Conjugation on trace-zero matrices, basis E_ij (i != j) then E_ii - E_nn."""
    K = rho.coeff
    n = rho.dim
    basis = []
    for i in range(n):
        for j in range(n):
            if i != j:
                v = [0] * (n * n)
                v[i * n + j] = 1
                basis.append(v)
    for i in range(n - 1):
        v = [0] * (n * n)
        v[i * n + i] = 1
        v[(n - 1) * n + (n - 1)] = K.neg(1)
        basis.append(v)
    mats = ff.restrict_action(K, [_conj_matrix(K, rho.sigma), _conj_matrix(K, rho.tau)], basis)
    return TameRep(K, mats[0], mats[1])


# ---------------------------------------------------------------------------
# presentation sizes


def presentation_numbers(d, F: LocalFieldDesc, ad_rho: TameRep):
    """(r, s): generators and relations of the framed deformation ring."""
    if ad_rho.dim != dim_G(d):
        raise GaloisError("adjoint module dimension differs from dim G")
    r, s = z1_dim(F, ad_rho), h2_via_duality(F, ad_rho)
    if r - s != dim_G(d) * (F.d_F + 1):
        raise GaloisError("r - s identity violated")  # pragma: no cover
    return r, s


def relative_presentation(dG, dH, F: LocalFieldDesc, ad0_rho: TameRep):
    """(r, t) for the ring over the H-deformation ring."""
    rel = dim_G(dG) - dim_G(dH)
    if ad0_rho.dim != rel:
        raise GaloisError("kernel module dimension differs from dim G - dim H")
    if rel == 0:
        return 0, 0
    r, t = z1_dim(F, ad0_rho), h2_via_duality(F, ad0_rho)
    if r - t != rel * (F.d_F + 1):
        raise GaloisError("r - t identity violated")  # pragma: no cover
    return r, t


def special_level(F: LocalFieldDesc, W: TameRep) -> int:
    """h^0(W(1)); W-special iff >= 1, at level j iff >= j + 1."""
    return h0(twist(F, W))


# ---------------------------------------------------------------------------
# defect and fibre dimensions


def defect(F: LocalFieldDesc, levi, lieU_reps) -> int:
    """max over the supplied Lie U modules of h^0((Lie U)^*(1))."""
    best = 0
    for rep in lieU_reps:
        if rep.dim != levi.dim_U:
            raise GaloisError("Lie U module dimension differs from dim U")
        best = max(best, h2_via_duality(F, rep))
    bound = Fraction(levi.dim_G - levi.dim_L, 2)
    if best > bound:
        raise GaloisError("defect exceeds half the codimension of the Levi")  # pragma: no cover
    return best


def fiber_dim_bound(dG, levi, F: LocalFieldDesc, delta: int) -> int:
    if delta < 0:
        raise GaloisError("defect must be non-negative")
    g = dim_G(dG)
    twice = (g - levi.dim_L) * F.d_F
    return g - levi_center_dim(dG, levi) + twice // 2 + delta


def bound_Y_check(dG, levi, F: LocalFieldDesc, dim_Y: int) -> bool:
    g = dim_G(dG)
    return g * (1 + F.d_F) - dim_Y >= F.d_F * levi.dim_L + levi_center_dim(dG, levi)


# ---------------------------------------------------------------------------
# Borel-valued PGL_2 representations


def borel_pgl2(K: FiniteField, psi, b):
    """(2-dim matrix, Ad on Lie sl_2) for (1 b; 0 psi^-1), i.e. u(b psi) diag(psi, 1) in PGL_2."""
    from .chevalley import build_chevalley
    from .root_datum import build_simple

    A = build_chevalley(build_simple("A", 1, "adjoint"), K)
    g = [[1, b], [0, K.inv(psi)]]
    ad = ff.mat_mul(K, A.ad_unipotent((1,), K.mul(b, psi)), A.ad_torus((1,), psi))
    return g, ad


def _is_split(K, mats):
    """Whether the common invariant line e_1 of upper-triangular mats has an invariant complement."""
    for x in K.elements():
        v = [x, 1]
        if all(_proportional(K, ff.mat_vec(K, M, v), v) for M in mats):
            return True
    return False


def _proportional(K, u, v):
    return K.sub(K.mul(u[0], v[1]), K.mul(u[1], v[0])) == 0


def borel_pgl2_battery(F: LocalFieldDesc, K: FiniteField):
    """Scan tame reps sigma, tau -> (1 b; 0 psi^-1) over K.

    Returns the maximal special level of (Lie sl_2)^* over reps with
    psi not in {omega, omega^-1} and non-split image, the number of such
    reps, and the level of the torus-valued rep with psi = omega.
    """
    omega = (K.from_int(F.c_sigma), K.from_int(F.c_tau))
    omega_inv = (K.inv(omega[0]), K.inv(omega[1]))
    units = list(K.nonzero())
    tame_units = [c for c in units if K.pow(c, F.q - 1) == 1]
    checked = 0
    worst = 0
    for ps in units:
        for pt in tame_units:
            psi = (ps, pt)
            if psi in (omega, omega_inv):
                continue
            for bs in K.elements():
                gs, ads = borel_pgl2(K, ps, bs)
                for bt in K.elements():
                    gt, adt = borel_pgl2(K, pt, bt)
                    rho = TameRep(K, gs, gt)
                    try:
                        validate_tame_rep(F, rho)
                    except GaloisError:
                        continue
                    if _is_split(K, [gs, gt]):
                        continue
                    W = dual(TameRep(K, ads, adt))
                    worst = max(worst, special_level(F, W))
                    checked += 1
    _, ads = borel_pgl2(K, omega[0], 0)
    _, adt = borel_pgl2(K, omega[1], 0)
    counter = special_level(F, dual(TameRep(K, ads, adt)))
    return {"checked": checked, "max_level": worst, "omega_level": counter}
