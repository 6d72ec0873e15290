"""
Component groups mu = (mu_{p^inf}(E) tensor M)^Delta and the dimension formulas
for deformation spaces.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import product
from math import gcd, prod

from . import intmat
from .galois import LocalFieldDesc
from .levi import has_codim2_levi
from .root_datum import (
    BasedRootDatum,
    GenReductiveDatum,
    LatticeWithAction,
    RootDatumError,
    as_base,
    as_gen,
    check_group_table,
    dim_G,
    dim_Z,
    is_pi1_etale,
    torus_quotient_lattice,
)


class ComponentError(ValueError):
    pass


class EtaleWarning(UserWarning):
    """Count reported without the etale fundamental group hypothesis."""


@dataclass(frozen=True)
class GaloisExtDesc:
    """Galois extension E/F: Delta = Gal(E/F) by its table, mu_{p^inf}(E) = mu_{p^m_E},
    and chi(delta) in (Z/p^m_E)^x giving the action of Delta on mu_{p^m_E}."""

    base: LocalFieldDesc
    table: tuple
    chi: tuple
    m_E: int

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in r) for r in self.table)
        object.__setattr__(self, "table", table)
        try:
            e = check_group_table(table)
        except RootDatumError as exc:
            raise ComponentError(str(exc)) from None
        N = self.modulus
        chi = tuple(int(x) % N for x in self.chi)
        object.__setattr__(self, "chi", chi)
        if len(chi) != len(table):
            raise ComponentError("one cyclotomic value per element of Delta is required")
        if self.m_E < self.base.m:
            raise ComponentError("m_E must be at least the cyclotomic exponent of F")
        if chi[e] != 1 % N:
            raise ComponentError("identity must act trivially on roots of unity")
        for a in range(len(table)):
            if gcd(chi[a], N) != 1:
                raise ComponentError("cyclotomic values must be units")
            for b in range(len(table)):
                if chi[table[a][b]] != chi[a] * chi[b] % N:
                    raise ComponentError(f"cyclotomic character is not a homomorphism at {(a, b)}")

    @property
    def p(self):
        return self.base.p

    @property
    def modulus(self):
        return self.base.p**self.m_E

    @property
    def order(self):
        return len(self.table)

    @classmethod
    def trivial(cls, F: LocalFieldDesc):
        """E = F."""
        return cls(F, ((0,),), (1,), F.m)

    @classmethod
    def cyclotomic(cls, p: int, k: int = 1):
        """Q_p(zeta_{p^k}) over Q_p, p odd: Delta cyclic of order p^(k-1)(p-1)."""
        if p == 2:
            raise ComponentError("use an explicit description for 2-power cyclotomic fields")
        N = p**k
        n = N // p * (p - 1)
        g = next(a for a in range(2, N) if gcd(a, N) == 1 and _order_mod(a, N) == n)
        table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
        chi = tuple(pow(g, i, N) for i in range(n))
        return cls(LocalFieldDesc.unramified(p), table, chi, k)

    @classmethod
    def from_json(cls, obj):
        base = LocalFieldDesc.from_json(obj["base"])
        table = obj.get("table", [[0]])
        chi = obj.get("chi", [1] * len(table))
        return cls(base, table, chi, obj.get("m_E", base.m))

    def to_json(self):
        return {"base": self.base.to_json(), "table": [list(r) for r in self.table],
                "chi": list(self.chi), "m_E": self.m_E}


def _order_mod(a, N):
    k, x = 1, a % N
    while x != 1:
        x = x * a % N
        k += 1
    return k


def _check_compatible(ext: GaloisExtDesc, M: LatticeWithAction):
    if M.table != ext.table:
        raise ComponentError("lattice and extension use different Delta tables")


def fixed_point_matrix(ext: GaloisExtDesc, M: LatticeWithAction):
    """Stacked integer matrices chi(delta) A_delta - I."""
    rows = []
    for c, A in zip(ext.chi, M.action):
        rows += [[c * A[i][j] - (1 if i == j else 0) for j in range(M.rank)] for i in range(M.rank)]
    return rows


def mu_group(ext: GaloisExtDesc, M: LatticeWithAction) -> tuple:
    """Invariant factors of (Z/p^m_E tensor M)^Delta, twisted by chi."""
    _check_compatible(ext, M)
    N = ext.modulus
    if M.rank == 0 or N == 1:
        return ()
    K = fixed_point_matrix(ext, M)
    diag = intmat.smith_normal_form(K)[0] if K else []
    diag = list(diag) + [0] * (M.rank - len(diag))
    factors = [gcd(d, N) if d else N for d in diag[: M.rank]]
    return tuple(sorted(f for f in factors if f > 1))


def group_order(factors) -> int:
    return prod(factors)


def characters(factors):
    """All characters of prod Z/n_i, as exponent tuples (k_i mod n_i)."""
    return [tuple(k) for k in product(*(range(n) for n in factors))]


def component_count(ext: GaloisExtDesc, M2: LatticeWithAction, etale=True, semidirect=None) -> dict:
    """Number of components |X(mu)| with its character labels.

    Without the etale hypothesis the count is reported but flagged
    conditional.  The labelling is canonical for a semidirect G/G'
    (default: when Delta acts trivially on M2), else only up to an
    X(mu)-torsor.
    """
    mu = mu_group(ext, M2)
    if not etale:
        warnings.warn("pi_1 of the derived group is not etale; count is conditional", EtaleWarning)
    if semidirect is None:
        semidirect = all(A == M2.action[0] for A in M2.action)
    return {
        "mu": list(mu),
        "count": group_order(mu),
        "conditional": not etale,
        "labelling": "canonical" if semidirect else "up to X(mu)-torsor",
        "characters": [list(c) for c in characters(mu)],
    }


def agen_shape(ext: GaloisExtDesc, M2: LatticeWithAction, d_F: int):
    """(|mu|, r, s): power-series and Laurent variable counts."""
    inv = M2.invariant_rank() if M2.rank else 0
    r = M2.rank * d_F + inv
    s = M2.rank - inv
    return group_order(mu_group(ext, M2)), r, s


def dim_formulas(d, d_F: int) -> dict:
    g, z = dim_G(d), dim_Z(d)
    return {
        "rel_dim_Rsquare": g * (d_F + 1),
        "dim_Xgen": g * (d_F + 1) + 1,
        "dim_Xgen_special_fibre": g * (d_F + 1),
        "dim_Xps": g * d_F + z + 1,
        "fibre_offset": g - z,
    }


def special_codim_bound(d, d_F: int, compatible_codim2=None) -> int:
    if compatible_codim2 is None:
        compatible_codim2 = has_codim2_levi(d) is not None
    return 1 + d_F if compatible_codim2 else 2 * d_F


def factoriality_check(d, p: int, d_F: int, compatible_codim2=None) -> bool:
    if compatible_codim2 is None:
        compatible_codim2 = has_codim2_levi(d) is not None
    if not is_pi1_etale(d, p):
        return False
    return d_F >= 3 or (d_F == 2 and not compatible_codim2)


# ---------------------------------------------------------------------------
# L-groups and C-groups


def _delta_datum(H, ext: GaloisExtDesc) -> GenReductiveDatum:
    if isinstance(H, BasedRootDatum):
        return GenReductiveDatum(H, ext.table)
    if H.table != ext.table:
        raise ComponentError("datum and extension use different Delta tables")
    return H


def lgroup_datum(H, ext: GaloisExtDesc) -> GenReductiveDatum:
    """Dual datum with Delta acting by inverse transposes."""
    g = _delta_datum(H, ext)
    b = g.base
    dual = BasedRootDatum(b.rank_X, b.simple_coroots, b.simple_roots)
    action = [intmat.transpose(intmat.int_inverse(A)) for A in g.action]
    return GenReductiveDatum(dual, g.table, action)


def lgroup_involution_witness(H, ext: GaloisExtDesc):
    """Basis change identifying the double dual with the input (identity here)."""
    g = _delta_datum(H, ext)
    gg = lgroup_datum(lgroup_datum(g, ext), ext)
    W = intmat.identity(g.base.rank_X)
    if gg.base != g.base or gg.action != g.action:
        raise ComponentError("double dual differs from the input")  # pragma: no cover
    return W


def cgroup_component_group(H, ext: GaloisExtDesc):
    """(mu invariant factors, count) for the C-group deformation ring with fixed cyclotomic similitude."""
    M = torus_quotient_lattice(lgroup_datum(H, ext))
    mu = mu_group(ext, M)
    return mu, group_order(mu)
