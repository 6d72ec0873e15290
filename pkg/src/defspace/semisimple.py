"""
Finite matrix representations over F_q: invariant subspaces, composition
flags, semisimplification and characteristic-polynomial comparison.

Submodules are found by spinning every projective point, which is
exhaustive and deterministic while q^d stays below ``MAX_POINTS``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import ff
from .ff import EchelonSpan, FiniteField, GF

MAX_POINTS = 10**6


class RepError(ValueError):
    pass


@dataclass(frozen=True)
class FqMatrixRep:
    """Generators of a representation on F^d; ``tag`` is 'free' or 'tame' (with q)."""

    field: FiniteField
    generators: tuple
    dim: int = None
    tag: str = "free"
    q: int = None

    def __post_init__(self):
        gens = tuple(tuple(tuple(int(x) for x in r) for r in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        d = self.dim if self.dim is not None else (len(gens[0]) if gens else 0)
        object.__setattr__(self, "dim", d)
        F = self.field
        for g in gens:
            if len(g) != d or any(len(r) != d for r in g):
                raise RepError("generator has the wrong size")
            if not ff.is_invertible(F, g):
                raise RepError("generator is singular")
        if self.tag == "tame":
            if len(gens) != 2 or self.q is None:
                raise RepError("tame representations need (sigma, tau) and q")
            s, t = gens
            lhs = ff.mat_mul(F, ff.mat_mul(F, s, t), ff.mat_inv(F, s))
            if lhs != ff.mat_pow(F, t, self.q):
                raise RepError("sigma tau sigma^-1 != tau^q")
        elif self.tag != "free":
            raise RepError(f"unknown presentation tag {self.tag!r}")

    @classmethod
    def from_json(cls, obj):
        F = GF(obj["field"]["p"], obj["field"].get("k", 1))
        return cls(F, obj["generators"], obj.get("dim"), obj.get("tag", "free"), obj.get("q"))

    def to_json(self):
        out = {"field": self.field.describe(), "dim": self.dim, "tag": self.tag,
               "generators": [[list(r) for r in g] for g in self.generators]}
        if self.q is not None:
            out["q"] = self.q
        return out

    def with_generators(self, gens):
        return FqMatrixRep(self.field, gens, len(gens[0]) if gens else 0, self.tag, self.q)


def _check_cap(rep):
    if rep.field.q ** rep.dim > MAX_POINTS:
        raise RepError(f"q^d exceeds the exhaustive cap {MAX_POINTS}")


def projective_points(F: FiniteField, d: int):
    """Representatives with first nonzero coordinate 1."""
    for lead in range(d):
        for tail in product(range(F.q), repeat=d - lead - 1):
            yield [0] * lead + [1] + list(tail)


def spin(rep: FqMatrixRep, v):
    """Echelon basis of the smallest invariant subspace containing v."""
    F = rep.field
    if not any(v):
        raise RepError("cannot spin the zero vector")
    span = EchelonSpan(F, rep.dim)
    span.add(v)
    queue = [list(v)]
    while queue:
        w = queue.pop()
        for g in rep.generators:
            u = ff.mat_vec(F, g, w)
            if span.add(u):
                queue.append(u)
    return span.basis()


def minimal_submodule(rep: FqMatrixRep):
    """A nonzero submodule of least dimension (hence irreducible)."""
    _check_cap(rep)
    best = None
    for v in projective_points(rep.field, rep.dim):
        W = spin(rep, v)
        if best is None or len(W) < len(best):
            best = W
            if len(W) == 1:
                break
    return best


def is_irreducible(rep: FqMatrixRep) -> bool:
    if rep.dim == 0:
        return False
    return len(minimal_submodule(rep)) == rep.dim


def _restrict(rep, W):
    return rep.with_generators(ff.restrict_action(rep.field, rep.generators, W))


def _quotient(rep, W):
    comp, mats = ff.quotient_action(rep.field, rep.generators, W, rep.dim)
    return comp, rep.with_generators(mats)


def _decompose(rep):
    """(flag subspaces, graded pieces) of a composition series."""
    F = rep.field
    if rep.dim == 0:
        return [], []
    W = minimal_submodule(rep)
    piece = _restrict(rep, W)
    if len(W) == rep.dim:
        return [W], [piece]
    comp, Q = _quotient(rep, W)
    qflag, qpieces = _decompose(Q)
    flag = [W]
    for U in qflag:
        lifted = [[0] * rep.dim for _ in U]
        for row, u in zip(lifted, U):
            for c, vec in zip(u, comp):
                if c:
                    for k in range(rep.dim):
                        row[k] = F.add(row[k], F.mul(c, vec[k]))
        span = EchelonSpan(F, rep.dim)
        for v in list(W) + lifted:
            span.add(v)
        flag.append(span.basis())
    return flag, [piece] + qpieces


def composition_flag(rep: FqMatrixRep):
    """Bases of 0 < V_1 < ... < V_k = V with irreducible quotients."""
    return _decompose(rep)[0]


def graded_pieces(rep: FqMatrixRep):
    return _decompose(rep)[1]


def block_diagonal(F, reps, ngens):
    d = sum(r.dim for r in reps)
    gens = []
    for i in range(ngens):
        M = ff.zeros(d)
        off = 0
        for r in reps:
            for a, row in enumerate(r.generators[i]):
                M[off + a][off:off + r.dim] = list(row)
            off += r.dim
        gens.append(M)
    return gens


def semisimplify(rep: FqMatrixRep) -> FqMatrixRep:
    """Block-diagonal sum of the composition factors."""
    pieces = graded_pieces(rep)
    return rep.with_generators(block_diagonal(rep.field, pieces, len(rep.generators)))


def block_fingerprints(rep: FqMatrixRep):
    """Sorted (dimension, generator char polys) of the composition factors."""
    return sorted(
        (p.dim, tuple(tuple(ff.char_poly(rep.field, g)) for g in p.generators)) for p in graded_pieces(rep)
    )


def block_sizes(rep: FqMatrixRep):
    return [p.dim for p in graded_pieces(rep)]


# ---------------------------------------------------------------------------
# characteristic polynomials of words


def word_matrix(rep: FqMatrixRep, word):
    """Product of generators along ``word``: entry i+1 is generator i, -(i+1) its inverse."""
    F = rep.field
    M = ff.identity(rep.dim)
    for letter in word:
        M = ff.mat_mul(F, M, _letter(rep, letter))
    return M


def _letter(rep, letter):
    i = abs(letter) - 1
    if not 0 <= i < len(rep.generators) or letter == 0:
        raise RepError(f"bad letter {letter}")
    g = rep.generators[i]
    return g if letter > 0 else ff.mat_inv(rep.field, g)


def char_poly_word(rep: FqMatrixRep, word):
    """Coefficients of det(x - M_word), highest degree first."""
    return ff.char_poly(rep.field, word_matrix(rep, word))


def reduced_words(ngens: int, maxlen: int):
    """Reduced words up to maxlen, shortest first."""
    letters = [i for k in range(1, ngens + 1) for i in (k, -k)]
    level = [()]
    yield ()
    for _ in range(maxlen):
        nxt = []
        for w in level:
            for a in letters:
                if w and w[-1] == -a:
                    continue
                nxt.append(w + (a,))
        for w in nxt:
            yield w
        level = nxt


def _word_polys(rep, maxlen):
    """Char polys of all reduced words, via prefix products (depth first)."""
    F = rep.field
    letters = [i for k in range(1, len(rep.generators) + 1) for i in (k, -k)]
    mats = {a: _letter(rep, a) for a in letters}
    out = []

    def walk(word, M):
        out.append((word, ff.char_poly(F, M)))
        if len(word) == maxlen:
            return
        for a in letters:
            if word and word[-1] == -a:
                continue
            walk(word + (a,), ff.mat_mul(F, M, mats[a]))

    walk((), ff.identity(rep.dim))
    return out


def brauer_nesbitt_equal(rep1: FqMatrixRep, rep2: FqMatrixRep, maxlen: int = 6) -> dict:
    """Compare char polys over all reduced words up to maxlen.

    ``consistent_up_to`` is not a proof of equal determinant laws beyond maxlen.
    """
    if rep1.field != rep2.field or rep1.dim != rep2.dim or len(rep1.generators) != len(rep2.generators):
        raise RepError("representations differ in field, dimension or generator count")
    a = _word_polys(rep1, maxlen)
    b = _word_polys(rep2, maxlen)
    for (w, p1), (_, p2) in zip(a, b):
        if p1 != p2:
            return {"verdict": "distinguished_by", "word": list(w), "poly1": p1, "poly2": p2}
    return {"verdict": "consistent_up_to", "maxlen": maxlen, "words": len(a)}


# ---------------------------------------------------------------------------
# endomorphisms and isomorphisms


def hom_space(rep1: FqMatrixRep, rep2: FqMatrixRep):
    """Basis of {X : X A_i = B_i X}, X of shape dim2 x dim1, flattened row-major."""
    F = rep1.field
    n, m = rep1.dim, rep2.dim
    rows = []
    for A, B in zip(rep1.generators, rep2.generators):
        for r in range(m):
            for c in range(n):
                row = [0] * (m * n)
                for k in range(n):
                    if A[k][c]:
                        row[r * n + k] = F.add(row[r * n + k], A[k][c])
                for k in range(m):
                    if B[r][k]:
                        row[k * n + c] = F.sub(row[k * n + c], B[r][k])
                rows.append(row)
    if not rows:
        return ff.identity(m * n)
    return ff.nullspace(F, rows, m * n)


def commutant_dim(rep: FqMatrixRep) -> int:
    return len(hom_space(rep, rep))


def absolute_irreducibility(rep: FqMatrixRep) -> dict:
    irr = is_irreducible(rep)
    k = commutant_dim(rep)
    out = {"irreducible": irr, "commutant_dim": k, "absolutely_irreducible": irr and k == 1}
    if irr and k > 1:
        out["commutant_field_degree"] = k
    return out


def is_absolutely_irreducible(rep: FqMatrixRep) -> bool:
    return absolute_irreducibility(rep)["absolutely_irreducible"]


def socle(rep: FqMatrixRep):
    """Basis of the sum of all irreducible submodules."""
    _check_cap(rep)
    span = EchelonSpan(rep.field, rep.dim)
    for v in projective_points(rep.field, rep.dim):
        if span.contains(v):
            continue
        W = spin(rep, v)
        if is_irreducible(_restrict(rep, W)):
            for w in W:
                span.add(w)
    return span.basis()


def is_semisimple(rep: FqMatrixRep) -> bool:
    return len(socle(rep)) == rep.dim


def module_isomorphism(rep1: FqMatrixRep, rep2: FqMatrixRep, cap: int = MAX_POINTS):
    """An invertible X with X A_i X^-1 = B_i, or None (exhaustive over Hom when small)."""
    if rep1.dim != rep2.dim or len(rep1.generators) != len(rep2.generators):
        return None
    F = rep1.field
    n = rep1.dim
    H = hom_space(rep1, rep2)
    if F.q ** len(H) > cap:
        raise RepError("Hom space too large for exhaustive search")
    for coeffs in product(range(F.q), repeat=len(H)):
        if not any(coeffs):
            continue
        flat = [0] * (n * n)
        for c, h in zip(coeffs, H):
            if c:
                flat = [F.add(x, F.mul(c, y)) for x, y in zip(flat, h)]
        X = [flat[i * n:(i + 1) * n] for i in range(n)]
        if ff.is_invertible(F, X):
            return X
    return None


# ---------------------------------------------------------------------------
# random batteries


def random_invertible(F: FiniteField, d: int, rng):
    while True:
        M = [[rng.randrange(F.q) for _ in range(d)] for _ in range(d)]
        if ff.is_invertible(F, M):
            return M


def random_block_triangular(F: FiniteField, d: int, ngens: int, rng, blocks=None) -> FqMatrixRep:
    """Generators that are block upper triangular for a random partition of d."""
    if blocks is None:
        blocks = []
        left = d
        while left:
            b = rng.randint(1, left)
            blocks.append(b)
            left -= b
    gens = []
    for _ in range(ngens):
        M = [[rng.randrange(F.q) for _ in range(d)] for _ in range(d)]
        off = 0
        for b in blocks:
            D = random_invertible(F, b, rng)
            for i in range(b):
                M[off + i][off:off + b] = D[i]
                for j in range(off):
                    M[off + i][j] = 0
            off += b
        gens.append(M)
    return FqMatrixRep(F, gens)
