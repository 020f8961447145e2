"""Quadratic forms on free modules and the Arf invariant over F2[x].

A form is carried by its matrix psi; the quadratic function is
mu(v) = v^T psi v and the underlying pairing is the symmetrization
lambda = psi + epsilon * psi^T.  Over F2[x] the Arf invariant of an even
nonsingular (+1)-form is computed on a symplectic basis as
sum mu(e_i) mu(f_i), read in the quotient of F2[x] by the relations
x^(2k) = x^k for k >= 1 (class ArfClass).
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import (
    AlgebraError,
    Mat,
    PolyF2,
    PrecondError,
    RingTagError,
    ShapeError,
    f2_divmod,
    f2_xgcd,
    format_poly,
)


class SingularFormError(AlgebraError):
    """The pairing is not unimodular where the operation requires it."""


# ---------------------------------------------------------------------------
# Arf classes


@dataclass(frozen=True)
class ArfClass:
    """Normal form in the quotient of F2[x] by {f^2 - f}.

    Canonical support: the constant exponent 0 plus odd exponents >= 1.
    The augmentation-zero ("reduced") subgroup is {constant == 0}.
    """

    constant: int = 0
    odd: frozenset = frozenset()

    def __post_init__(self):
        if self.constant not in (0, 1):
            raise ValueError("constant must be a bit")
        if any(k < 1 or k % 2 == 0 for k in self.odd):
            raise ValueError("support must be odd exponents >= 1")

    @staticmethod
    def zero() -> "ArfClass":
        return ArfClass(0, frozenset())

    @staticmethod
    def from_poly(q: PolyF2) -> "ArfClass":
        return arf_normalize(q)

    def __add__(self, other: "ArfClass") -> "ArfClass":
        return ArfClass(self.constant ^ other.constant, self.odd ^ other.odd)

    def __bool__(self):
        return bool(self.constant or self.odd)

    def is_reduced(self) -> bool:
        return self.constant == 0

    def to_poly(self) -> PolyF2:
        bits = self.constant
        for k in self.odd:
            bits |= 1 << k
        return PolyF2(bits)

    def verschiebung(self, n: int) -> "ArfClass":
        return arf_normalize(self.to_poly().subs_power(n))

    def __str__(self):
        return format_poly(self.to_poly())


def arf_normalize(q: PolyF2) -> ArfClass:
    """Exhaustive rewrite x^(2k) -> x^k (k >= 1) with XOR on collision.

    Terminates because every step strictly decreases the exponent; the
    result has support on exponent 0 and odd exponents only.
    """
    odd = set()
    constant = q.bits & 1
    bits = q.bits >> 1
    k = 1
    while bits:
        if bits & 1:
            e = k
            while e % 2 == 0:
                e //= 2
            odd ^= {e}
        bits >>= 1
        k += 1
    return ArfClass(constant, frozenset(odd))


# ---------------------------------------------------------------------------
# Forms


class QuadraticForm:
    """epsilon-quadratic form (rank, psi, epsilon) on a free module."""

    __slots__ = ("rank", "psi", "epsilon")

    def __init__(self, psi: Mat, epsilon: int = 1):
        if not psi.is_square():
            raise ShapeError("form matrix must be square")
        if epsilon not in (1, -1):
            raise PrecondError("epsilon must be +1 or -1")
        object.__setattr__(self, "rank", psi.rows)
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "epsilon", epsilon)

    def __setattr__(self, *a):
        raise AttributeError("QuadraticForm is immutable")

    @property
    def ring(self):
        return self.psi.ring

    def symmetrization(self) -> Mat:
        s = self.psi.conj_t()
        return self.psi + (s if self.epsilon == 1 else -s)

    def is_even(self) -> bool:
        lam = self.symmetrization()
        return all(not lam[i, i] for i in range(self.rank))

    def is_nonsingular(self) -> bool:
        return self.symmetrization().det().is_unit()

    def mu(self, v: Mat) -> "PolyF2 | PolyInt":
        """Quadratic function of a column vector: v* psi v."""
        return (v.conj_t() * self.psi * v)[0, 0]

    def transport(self, u: Mat) -> "QuadraticForm":
        """Base change by u (columns = new basis in old coordinates)."""
        return QuadraticForm(u.conj_t() * self.psi * u, self.epsilon)

    def __eq__(self, other):
        return (
            isinstance(other, QuadraticForm)
            and self.epsilon == other.epsilon
            and self.psi == other.psi
        )

    def __repr__(self):
        return f"QuadraticForm(eps={self.epsilon:+d}, psi={self.psi})"


def make_P(q: PolyF2, g: PolyF2) -> QuadraticForm:
    """Rank-2 (+1)-quadratic form over F2[x] with pairing [[0,1],[1,0]] and
    quadratic vector (q, g): psi = [[q,1],[0,g]]."""
    one, zero = PolyF2.one(), PolyF2.zero()
    return QuadraticForm(Mat([[q, one], [zero, g]], PolyF2), 1)


def hyperbolic(r: int, ring=PolyF2, epsilon: int = 1) -> QuadraticForm:
    """Standard hyperbolic form on F + F*: psi = [[0, Id],[0, 0]]."""
    ident = Mat.identity(r, ring)
    zero = Mat.zeros(r, r, ring)
    return QuadraticForm(Mat.from_blocks([[zero, ident], [zero, zero]]), epsilon)


def direct_sum(a: QuadraticForm, b: QuadraticForm) -> QuadraticForm:
    if a.ring is not b.ring:
        raise RingTagError("direct sum of forms over different rings")
    if a.epsilon != b.epsilon:
        raise PrecondError("direct sum of forms with different epsilon")
    return QuadraticForm(Mat.block_diag([a.psi, b.psi]), a.epsilon)


def negate(a: QuadraticForm) -> QuadraticForm:
    return QuadraticForm(-a.psi, a.epsilon)


def from_pairing_and_vector(lam: Mat, vec) -> QuadraticForm:
    """Form with given even symmetric pairing and quadratic vector: psi is
    the strict upper part of lam plus the vector on the diagonal."""
    n = lam.rows
    zero = PolyF2.zero()
    out = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i < j:
                out[i][j] = lam[i, j]
            elif i == j:
                out[i][j] = vec[i]
    return QuadraticForm(Mat(out, PolyF2), 1)


# ---------------------------------------------------------------------------
# Symplectic reduction over F2[x]


@dataclass(frozen=True)
class SymplecticBasis:
    """Unimodular change of basis exhibiting hyperbolic pairs.

    Column 2i is e_i and column 2i+1 is f_i; the transported pairing is the
    block-antidiagonal standard symplectic matrix.
    """

    u: Mat

    @property
    def pairs(self):
        return tuple((2 * i, 2 * i + 1) for i in range(self.u.rows // 2))


def standard_symplectic(n: int) -> Mat:
    """Block-antidiagonal pairing diag([[0,1],[1,0]], ...) of size n."""
    if n % 2:
        raise ShapeError("symplectic pairings have even rank")
    one, zero = PolyF2.one(), PolyF2.zero()
    out = [[zero] * n for _ in range(n)]
    for i in range(0, n, 2):
        out[i][i + 1] = one
        out[i + 1][i] = one
    return Mat(out, PolyF2)


def _complete_unimodular(v):
    """Completion of a unimodular vector over F2[x] to a unimodular matrix
    whose first column is v.  Row-reduces v to e_1 by elementary operations
    and returns the product of their inverses."""
    m = len(v)
    w = list(v)
    ops = []  # ("add", target, source, factor) | ("swap", i, j)
    while True:
        nz = [i for i in range(m) if w[i]]
        if not nz:
            raise SingularFormError("zero vector cannot be completed")
        if len(nz) == 1:
            if not w[nz[0]].is_unit():
                raise SingularFormError("vector gcd is not a unit")
            break
        nz.sort(key=lambda i: (w[i].degree(), i))
        piv, other = nz[0], nz[1]
        q, r = f2_divmod(w[other], w[piv])
        w[other] = r
        ops.append(("add", other, piv, q))
    if nz[0] != 0:
        ops.append(("swap", 0, nz[0]))
        w[0], w[nz[0]] = w[nz[0]], w[0]
    # completion = (E_1^{-1} ... E_k^{-1}); every op is an involution mod 2
    rows = [
        [PolyF2.one() if i == j else PolyF2.zero() for j in range(m)]
        for i in range(m)
    ]
    for op in reversed(ops):
        if op[0] == "swap":
            _, i, j = op
            rows[i], rows[j] = rows[j], rows[i]
        else:
            _, tgt, src, q = op
            rows[tgt] = [a + q * b for a, b in zip(rows[tgt], rows[src])]
    return Mat(rows, PolyF2)


def symplectic_reduce(form: QuadraticForm) -> SymplecticBasis:
    """Symplectic Gram-Schmidt over the principal ideal domain F2[x].

    Requires an even nonsingular (+1)-form over F2[x].  Pivots are chosen at
    the lowest remaining index and gcd combinations are accumulated with
    lowest-index preference, so the output is deterministic.
    """
    if form.ring is not PolyF2:
        raise RingTagError("symplectic reduction works over F2[x]")
    if form.epsilon != 1:
        raise PrecondError("symplectic reduction expects a (+1)-form")
    if not form.is_even():
        raise PrecondError("pairing must be alternating (zero diagonal)")
    lam = form.symmetrization()
    if not lam.det().is_unit():
        raise SingularFormError("pairing is not unimodular")
    n = form.rank
    g = [list(r) for r in lam.entries]
    u = [list(r) for r in Mat.identity(n, PolyF2).entries]

    def add_col(tgt, src, f):
        # column op on u and the matching congruence update on g
        if not f:
            return
        for i in range(n):
            u[i][tgt] = u[i][tgt] + f * u[i][src]
        for i in range(n):
            g[i][tgt] = g[i][tgt] + f * g[i][src]
        for j in range(n):
            g[tgt][j] = g[tgt][j] + f * g[src][j]

    def mul_block(base, w: Mat):
        # columns base.. get replaced by their w-combinations
        m = w.rows
        for i in range(n):
            old = [u[i][base + k] for k in range(m)]
            for k in range(m):
                acc = PolyF2.zero()
                for l in range(m):
                    if w[l, k] and old[l]:
                        acc = acc + old[l] * w[l, k]
                u[i][base + k] = acc
        sub = [[g[base + i][base + j] for j in range(m)] for i in range(m)]
        wm = w
        subm = wm.conj_t() * Mat(sub, PolyF2) * wm
        # off-block rows/cols
        for i in range(n):
            if base <= i < base + m:
                continue
            oldrow = [g[i][base + k] for k in range(m)]
            for k in range(m):
                acc = PolyF2.zero()
                for l in range(m):
                    if wm[l, k] and oldrow[l]:
                        acc = acc + oldrow[l] * wm[l, k]
                g[i][base + k] = acc
                g[base + k][i] = acc
        for i in range(m):
            for j in range(m):
                g[base + i][base + j] = subm[i, j]

    for t in range(0, n, 2):
        # pivot e at index t; find f with <e,f> = 1 by running xgcd over the row
        row = [g[t][j] for j in range(t + 1, n)]
        m = len(row)
        gcd = None
        combo = []
        for j in range(m):
            if gcd is None:
                gcd = row[j]
                combo = [PolyF2.one()] + [PolyF2.zero()] * (m - 1)
            else:
                if gcd.is_unit():
                    break
                gg, s, tt = f2_xgcd(gcd, row[j])
                combo = [s * c for c in combo]
                combo[j] = tt
                gcd = gg
        if gcd is None or not gcd.is_unit():
            raise SingularFormError("pairing is not unimodular on a sub-block")
        w_tail = _complete_unimodular(combo)
        one, zero = PolyF2.one(), PolyF2.zero()
        w = [[zero] * (m + 1) for _ in range(m + 1)]
        w[0][0] = one
        for i in range(m):
            for j in range(m):
                w[i + 1][j + 1] = w_tail[i, j]
        mul_block(t, Mat(w, PolyF2))
        # decouple the rest of the block from the new pair (t, t+1)
        for j in range(t + 2, n):
            cf, ce = g[t][j], g[t + 1][j]
            add_col(j, t, ce)
            add_col(j, t + 1, cf)
    um = Mat(u, PolyF2)
    if um.conj_t() * lam * um != standard_symplectic(n):
        raise SingularFormError("internal error: reduction did not standardise")
    return SymplecticBasis(um)


def arf(form: QuadraticForm) -> ArfClass:
    """Arf invariant of an even nonsingular (+1)-form over F2[x]."""
    basis = symplectic_reduce(form)
    t = form.transport(basis.u)
    total = PolyF2.zero()
    for i, j in basis.pairs:
        total = total + t.psi[i, i] * t.psi[j, j]
    return arf_normalize(total)


def witt_equal(a: QuadraticForm, b: QuadraticForm) -> bool:
    """Stable equivalence of even nonsingular (+1)-forms over F2[x]: the
    Arf classes (including the constant, augmentation-at-0 part) agree."""
    return arf(a) == arf(b)
