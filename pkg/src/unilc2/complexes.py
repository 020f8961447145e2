"""1-dimensional (-1)-quadratic complexes and the gluing machine.

The pipeline turns a sum of generator formations plus a null-cobordism
witness (pi, chi) into a nonsingular (+1)-quadratic form over F2[x] and
returns its Arf class:

    formation -> complex -> de-symmetrization check -> corrected cycle
    -> null-cobordism -> union complex -> instant obstruction -> Arf

Complexes here always have modules C_1 = C_0 and differential 2*Id; the
identities that involve pi^{-1} are computed by exact adjugate division
over Z[x] and every stage re-checks the matrix identity it relies on.
"""

from __future__ import annotations

from dataclasses import dataclass

from .forms import (
    ArfClass,
    QuadraticForm,
    arf,
    arf_normalize,
    from_pairing_and_vector,
    standard_symplectic,
)
from .formations import SplitFormation, direct_sum as formation_sum, is_graph, make_M
from .formations import negate as formation_negate
from .rings import (
    AlgebraError,
    C2Poly,
    Mat,
    PolyF2,
    PolyInt,
    PrecondError,
    RingTagError,
    ShapeError,
    solve_right,
)


class StageError(AlgebraError):
    """A machine stage failed; carries the stage tag and offending matrix."""

    def __init__(self, stage: str, message: str, matrix: Mat | None = None):
        self.stage = stage
        self.matrix = matrix
        detail = f" (offending matrix {matrix})" if matrix is not None else ""
        super().__init__(f"[{stage}] {message}{detail}")


class QuadComplex1:
    """1-dimensional (-1)-quadratic complex with C_1 = C_0, d = 2*Id.

    Cycle components: psi0: C^0 -> C_1, psi0t: C^1 -> C_0, psi1: C^0 -> C_0.
    The ring is Z[C2][x] for inputs and Z[x] for evaluated complexes.
    """

    __slots__ = ("rank", "d", "psi0", "psi0t", "psi1")

    def __init__(self, d: Mat, psi0: Mat, psi0t: Mat, psi1: Mat):
        n = d.rows
        for m in (d, psi0, psi0t, psi1):
            if not (m.is_square() and m.rows == n):
                raise ShapeError("all complex components must be n x n")
            if m.ring is not d.ring:
                raise RingTagError("complex components over different rings")
        object.__setattr__(self, "rank", n)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "psi0", psi0)
        object.__setattr__(self, "psi0t", psi0t)
        object.__setattr__(self, "psi1", psi1)

    def __setattr__(self, *a):
        raise AttributeError("QuadComplex1 is immutable")

    @property
    def ring(self):
        return self.d.ring

    def cycle_holds(self) -> bool:
        """psi1 + psi1^* = -(d psi0 + psi0t d^*)."""
        lhs = self.psi1 + self.psi1.conj_t()
        rhs = -(self.d * self.psi0 + self.psi0t * self.d.conj_t())
        return lhs == rhs

    def i_minus(self) -> "QuadComplex1":
        return QuadComplex1(
            self.d.i_minus(),
            self.psi0.i_minus(),
            self.psi0t.i_minus(),
            self.psi1.i_minus(),
        )


def _normalize_mu_signs(f: SplitFormation):
    """Reparameterize G by beta = diag(+-1) so that mu becomes +2*Id.

    Sums involving negated summands carry mu = diag(+-2); the base change
    beta flips the matching columns of gamma and conjugates theta, which is
    the representative the null-cobordism witnesses are written against.
    """
    n = f.g_rank
    ring = f.ring
    two = C2Poly.from_int(2) if ring is C2Poly else PolyInt((2,))
    signs = []
    for i in range(n):
        row_ok = all(not f.mu[i, j] for j in range(n) if j != i)
        col_ok = all(not f.mu[j, i] for j in range(n) if j != i)
        if not (row_ok and col_ok):
            raise PrecondError("mu must be diagonal with entries +-2")
        e = f.mu[i, i]
        if e == two:
            signs.append(1)
        elif e == -two:
            signs.append(-1)
        else:
            raise PrecondError("mu must be diagonal with entries +-2")
    if all(s == 1 for s in signs):
        return f
    one = ring.one()
    rows = [
        [one if (i == j and signs[i] == 1) else (-one if i == j else ring.zero())
         for j in range(n)]
        for i in range(n)
    ]
    beta = Mat(rows, ring)
    return SplitFormation(
        f.gamma * beta, f.mu * beta, beta.conj_t() * f.theta * beta, f.epsilon
    )


def formation_to_complex(f: SplitFormation) -> QuadComplex1:
    """Associated complex of a split (-1)-formation with mu = diag(+-2).

    Dictionary (after sign normalization): d = mu^* = 2*Id, psi0 = 0,
    psi0t = gamma^*, psi1 = -theta.
    """
    if f.epsilon != -1:
        raise PrecondError("the dictionary is for (-1)-formations")
    if f.f_rank != f.g_rank:
        raise PrecondError("square formations only (F and G of equal rank)")
    g = _normalize_mu_signs(f)
    return QuadComplex1(
        g.mu.conj_t(),
        Mat.zeros(g.g_rank, g.g_rank, g.ring),
        g.gamma.conj_t(),
        -g.theta,
    )


def complex_to_formation(c: QuadComplex1) -> SplitFormation:
    """Inverse dictionary: gamma = psi0t^* - psi0, mu = d^*,
    theta = -(psi1 + d psi0)."""
    return SplitFormation(
        c.psi0t.conj_t() - c.psi0,
        c.d.conj_t(),
        -(c.psi1 + c.d * c.psi0),
        -1,
    )


@dataclass(frozen=True)
class NullCobordismData:
    """Witness (pi, chi) for the null-cobordism builder; entries over Z[x]."""

    pi: Mat
    chi: Mat

    def __post_init__(self):
        if self.pi.ring is not PolyInt or self.chi.ring is not PolyInt:
            raise RingTagError("pi and chi must have entries in Z[x]")
        if not (self.pi.is_square() and self.chi.is_square()):
            raise ShapeError("pi and chi must be square")
        if self.pi.rows != self.chi.rows:
            raise ShapeError("pi and chi sizes differ")

    @property
    def p_rank(self) -> int:
        return self.pi.rows


def _pi_inv_d(c: QuadComplex1, n: NullCobordismData) -> Mat:
    """The composite pi^{-1} d^* over Z[x], by exact adjugate division."""
    if n.p_rank != c.rank:
        raise ShapeError("pi size differs from the complex rank")
    d_star = c.d.conj_t().i_minus() if c.ring is C2Poly else c.d.conj_t()
    try:
        return solve_right(n.pi, d_star)
    except AlgebraError as exc:
        raise StageError("desymmetrization", f"invalid pi: {exc}", n.pi) from exc


def check_desymmetrization(
    c: QuadComplex1, n: NullCobordismData, _a: Mat | None = None
) -> bool:
    """(pi^{-1} d^*)^* (chi + chi^*) = (psi0t - psi0^*) pi over Z[x]
    (components evaluated at T -> -1)."""
    a = _a if _a is not None else _pi_inv_d(c, n)
    lhs = a.conj_t() * (n.chi + n.chi.conj_t())
    ci = c.i_minus() if c.ring is C2Poly else c
    rhs = (ci.psi0t - ci.psi0.conj_t()) * n.pi
    return lhs == rhs


def build_psi_hat(
    c: QuadComplex1, n: NullCobordismData, _a: Mat | None = None
) -> QuadComplex1:
    """Corrected cycle with psi1_hat = (pi^{-1}d^*)^* chi (pi^{-1}d^*) - psi0t d^*,
    returned as the T -> -1 evaluation of the complex.

    Verifies that psi1_hat - psi1 is skew-symmetric, which over Z[x] forces
    zero diagonal, so the correction changes the cycle by an even amount.
    """
    a = _a if _a is not None else _pi_inv_d(c, n)
    if not check_desymmetrization(c, n, _a=a):
        raise StageError(
            "desymmetrization",
            "the de-symmetrization identity fails entry-wise",
            n.chi,
        )
    ci = c.i_minus() if c.ring is C2Poly else c
    psi1_hat = a.conj_t() * n.chi * a - ci.psi0t * ci.d.conj_t()
    diff = psi1_hat - ci.psi1
    if diff.conj_t() != -diff:
        raise StageError(
            "psi-hat", "corrected cycle does not differ by a skew matrix", diff
        )
    return QuadComplex1(ci.d, ci.psi0, ci.psi0t, psi1_hat)


@dataclass(frozen=True)
class NullCobordism:
    """Explicit null-cobordism over Z[x]: target complex D, chain map f and
    the quadratic chain delta-psi."""

    d_d: Mat        # differential D_1 -> D_0
    f0: Mat         # C_0 -> D_0 (always Id)
    f1: Mat         # C_1 -> D_1
    dpsi0: Mat      # D^1 -> D_1
    dpsi1: Mat      # D^0 -> D_1
    dpsi1t: Mat     # D^1 -> D_0
    dpsi2: Mat      # D^0 -> D_0 (always 0)


def build_null_cobordism(
    c: QuadComplex1, n: NullCobordismData, _a: Mat | None = None
) -> NullCobordism:
    """D_1 = P^*, D_0 = C_0, d_D = (pi^{-1}d^*)^*, f = (Id, pi^*),
    delta-psi = (-chi^*, -chi d_D^*, psi0t pi, 0), all over Z[x]."""
    a = _a if _a is not None else _pi_inv_d(c, n)
    ci = c.i_minus() if c.ring is C2Poly else c
    d_d = a.conj_t()
    f0 = Mat.identity(c.rank, PolyInt)
    f1 = n.pi.conj_t()
    if f0 * ci.d != d_d * f1:
        raise StageError("null-cobordism", "f is not a chain map", f1)
    return NullCobordism(
        d_d=d_d,
        f0=f0,
        f1=f1,
        dpsi0=-n.chi.conj_t(),
        dpsi1=-(n.chi * d_d.conj_t()),
        dpsi1t=ci.psi0t * n.pi,
        dpsi2=Mat.zeros(c.rank, c.rank, PolyInt),
    )


@dataclass(frozen=True)
class UnionComplex:
    """2-dimensional quadratic complex over F2[x] glued from the two
    null-cobordisms; module ranks (n, 3n, n)."""

    rank: int
    d_f2: Mat       # F_2 -> F_1
    d_f1: Mat       # F_1 -> F_0
    psi0_2: Mat     # F^0 -> F_2
    psi0_1: Mat     # F^1 -> F_1
    psi0_0: Mat     # F^2 -> F_0
    psi1_1: Mat     # F^0 -> F_1
    psi1_0: Mat     # F^1 -> F_0
    psi2_0: Mat     # F^0 -> F_0


def build_union(
    c: QuadComplex1, psi_hat: QuadComplex1, bundle: NullCobordism
) -> UnionComplex:
    """Glue the explicit null-cobordism against the graph-formation side.

    Requires the T -> +1 evaluation of the input to be a graph formation.
    All blocks are reduced to F2[x]; the closed forms are

        d_F^2 = (-f1; d_C; -Id),   d_F^1 = (d_D, f0, 0)

    with the six quadratic blocks as constructed below.
    """
    if c.ring is not C2Poly:
        raise RingTagError("the union glues a Z[C2][x] input")
    fm = complex_to_formation(c)
    plus = SplitFormation(
        fm.gamma.i_plus(), fm.mu.i_plus(), fm.theta.i_plus(), -1
    )
    if not is_graph(plus):
        raise StageError(
            "union", "T -> +1 evaluation is not a graph formation", plus.gamma
        )
    n = c.rank
    zero_n = Mat.zeros(n, n, PolyF2)
    ident = Mat.identity(n, PolyF2)
    f1m = bundle.f1.mod2()
    d_cm = psi_hat.d.mod2()          # = 0 mod 2
    d_dm = bundle.d_d.mod2()
    psi0m = psi_hat.psi0.mod2()
    psi0tm = psi_hat.psi0t.mod2()
    psi1m = psi_hat.psi1.mod2()
    chi_t = (-bundle.dpsi0).mod2()   # = chi^* mod 2
    chi_a = (-bundle.dpsi1).mod2()   # = chi (pi^{-1}d^*) mod 2
    psi0t_pi = bundle.dpsi1t.mod2()
    d_f2 = Mat.from_blocks([[f1m], [d_cm], [ident]])
    d_f1 = Mat.from_blocks([[d_dm, ident, zero_n]])
    if not (d_f1 * d_f2).is_zero():
        raise StageError("union", "d o d is nonzero", d_f1 * d_f2)
    psi0_1 = Mat.from_blocks(
        [
            [chi_t, zero_n, zero_n],
            [psi0tm * f1m.conj_t(), psi1m.conj_t(), zero_n],
            [zero_n, psi0m, zero_n],
        ]
    )
    return UnionComplex(
        rank=n,
        d_f2=d_f2,
        d_f1=d_f1,
        psi0_2=psi0m,  # -psi0 f0^* mod 2, with f0 = Id
        psi0_1=psi0_1,
        psi0_0=zero_n,
        psi1_1=Mat.from_blocks([[chi_a], [psi1m], [zero_n]]),
        psi1_0=Mat.from_blocks([[psi0t_pi, zero_n, zero_n]]),
        psi2_0=zero_n,
    )


@dataclass(frozen=True)
class Obstruction:
    """Instant surgery obstruction: the rank-3n form, the rank-n form it
    reduces to, and their (equal) Arf classes."""

    big: QuadraticForm
    reduced: QuadraticForm
    big_arf: ArfClass
    reduced_arf: ArfClass


def instant_obstruction(u: UnionComplex) -> Obstruction:
    """Surgery obstruction form of the union complex.

    The rank-3n form is

        [[dpsi0, 0, -f1], [0, 0, -Id], [0, 0, 0]]   (mod 2)

    and is stably equivalent to the rank-n form (D^1, dpsi0); the
    equivalence is asserted by comparing Arf classes.
    """
    n = u.rank
    zero_n = Mat.zeros(n, n, PolyF2)
    ident = Mat.identity(n, PolyF2)
    dpsi0 = Mat(
        [[u.psi0_1[i, j] for j in range(n)] for i in range(n)], PolyF2
    )  # = chi^T mod 2 = -dpsi0 = dpsi0 over F2
    f1m = Mat(
        [[u.d_f2[i, j] for j in range(n)] for i in range(n)], PolyF2
    )
    big = QuadraticForm(
        Mat.from_blocks(
            [
                [dpsi0, zero_n, f1m],
                [zero_n, zero_n, ident],
                [zero_n, zero_n, zero_n],
            ]
        ),
        1,
    )
    reduced = QuadraticForm(dpsi0, 1)
    if not reduced.is_nonsingular():
        raise StageError(
            "obstruction", "reduced obstruction form is singular", dpsi0
        )
    big_arf, reduced_arf = arf(big), arf(reduced)
    if big_arf != reduced_arf:
        raise StageError(
            "obstruction", "big and reduced obstruction forms disagree", dpsi0
        )
    return Obstruction(big, reduced, big_arf, reduced_arf)


@dataclass(frozen=True)
class MachineResult:
    arf: ArfClass
    stages: tuple = ()


def run_machine(f: SplitFormation, n: NullCobordismData) -> MachineResult:
    """Full pipeline; returns the Arf class of the reduced obstruction.

    Stage order: formation -> complex, de-symmetrization check, cycle
    correction, null-cobordism, union, instant obstruction, Arf.
    """
    stages = []
    c = formation_to_complex(f)
    if not c.cycle_holds():
        raise StageError("complex", "cycle condition fails", c.psi1)
    stages.append("complex")
    a = _pi_inv_d(c, n)
    if not check_desymmetrization(c, n, _a=a):
        raise StageError(
            "desymmetrization",
            "the de-symmetrization identity fails entry-wise",
            n.chi,
        )
    stages.append("desymmetrization")
    psi_hat = build_psi_hat(c, n, _a=a)
    stages.append("psi-hat")
    bundle = build_null_cobordism(c, n, _a=a)
    stages.append("null-cobordism")
    union = build_union(c, psi_hat, bundle)
    stages.append("union")
    obs = instant_obstruction(union)
    stages.append("obstruction")
    stages.append("arf")
    return MachineResult(arf=obs.reduced_arf, stages=tuple(stages))


# ---------------------------------------------------------------------------
# Relation fixtures: the null-cobordism witnesses for the four generator
# relations, as closed-form matrices in the parameters.


def _zx(*vals) -> list:
    return [v if isinstance(v, PolyInt) else PolyInt((v,)) for v in vals]


RELATION_NAMES = {
    1: "additivity",
    2: "symmetry",
    3: "square-associativity",
    4: "square-root",
}


def relation_fixture(k: int, p: PolyInt, g: PolyInt, p2: PolyInt | None = None):
    """Formation sum, witness (pi, chi) and expected Arf class for relation k.

    1: M(p,g) + M(p2,g) - M(p+p2,g), expected class [p*p2*g^2]
    2: M(2p,g) - M(2g,p), expected 0
    3: M(x^2 p, g) - M(p, x^2 g), expected 0
    4: M(2 p^2 g, g) - M(2p, g), expected 0
    """
    fsum, negate = formation_sum, formation_negate
    two = PolyInt((2,))
    x = PolyInt.x_power(1)
    if k == 1:
        if p2 is None:
            raise PrecondError("relation 1 needs both p parameters")
        f = fsum(fsum(make_M(p, g), make_M(p2, g)), negate(make_M(p + p2, g)))
        tg = two * g
        pi = Mat(
            [
                _zx(0, 1, 0, 2, 0, 0),
                _zx(1, 0, 1, 0, 2, 0),
                _zx(0, 1, 0, 0, 0, 2),
                _zx(1, 0, 0, 0, 0, 0),
                _zx(0, 1, 0, 0, 0, 0),
                _zx(0, 0, 1, 0, 0, 0),
            ],
            PolyInt,
        )
        chi = Mat(
            [
                [g, PolyInt((1,)), g, PolyInt((1,)), tg, PolyInt((1,))],
                _zx(0, 0, 0, p, 1, p2),
                [PolyInt(()), PolyInt(()), PolyInt(()), PolyInt((1,)), tg, PolyInt(())],
                _zx(0, 0, 0, p, 2, 0),
                [PolyInt(()), PolyInt(()), PolyInt(()), PolyInt(()), tg, PolyInt(())],
                _zx(0, 0, 0, 0, 0, p2),
            ],
            PolyInt,
        )
        expected = arf_normalize((p * p2 * g * g).mod2())
        return f, NullCobordismData(pi, chi), expected
    if k == 2:
        f = fsum(make_M(two * p, g), negate(make_M(two * g, p)))
        pi = Mat(
            [_zx(1, 0, 2, 0), _zx(0, 1, 0, 2), _zx(0, 1, 0, 0), _zx(1, 0, 0, 0)],
            PolyInt,
        )
        chi = Mat(
            [
                _zx(0, 0, two * p, 1),
                _zx(0, 0, 1, two * g),
                _zx(0, 0, two * p, 2),
                _zx(0, 0, 0, two * g),
            ],
            PolyInt,
        )
        return f, NullCobordismData(pi, chi), ArfClass.zero()
    if k == 3:
        x2 = PolyInt.x_power(2)
        f = fsum(make_M(x2 * p, g), negate(make_M(p, x2 * g)))
        pi = Mat(
            [_zx(1, 0, 0, 0), _zx(0, x, 0, 2), _zx(x, 0, 2, 0), _zx(0, 1, 0, 0)],
            PolyInt,
        )
        chi = Mat(
            [
                _zx(0, 0, -(x * p), 1),
                _zx(0, 0, -1, two * x * g),
                _zx(0, 0, -p, 0),
                _zx(0, 0, 0, two * g),
            ],
            PolyInt,
        )
        return f, NullCobordismData(pi, chi), ArfClass.zero()
    if k == 4:
        f = fsum(make_M(two * p * p * g, g), negate(make_M(two * p, g)))
        pi = Mat(
            [_zx(1, 1, 0, 0), _zx(0, p, 2, 0), _zx(0, 1, 0, 0), _zx(p, 0, 0, 2)],
            PolyInt,
        )
        p2g = p * p * g
        chi = Mat(
            [
                _zx(0, p2g, 1, -(two * p * g)),
                _zx(0, p2g, PolyInt((1,)) + two * p * g, -1),
                _zx(0, 0, two * g, 0),
                _zx(0, 0, 0, -(two * g)),
            ],
            PolyInt,
        )
        return f, NullCobordismData(pi, chi), ArfClass.zero()
    raise PrecondError(f"unknown relation {k}")


def run_relation(k: int, p: PolyInt, g: PolyInt, p2: PolyInt | None = None):
    """Run the machine on relation k; returns (result, expected ArfClass)."""
    f, ncd, expected = relation_fixture(k, p, g, p2)
    return run_machine(f, ncd), expected


# ---------------------------------------------------------------------------
# The explicit base change that standardises the additivity obstruction form


def _f2(p: PolyInt) -> PolyF2:
    return p.mod2()


def alpha_pullback_check(p1: PolyInt, p2: PolyInt, g: PolyInt) -> bool:
    """Verify the closed-form base change for the additivity relation.

    The rank-6 obstruction form with pairing lam and quadratic vector
    (g,0,0,p1,0,p2) is transported by the displayed unimodular alpha onto
    the standard symplectic pairing with quadratic vector
    (g,0,0,p1,p1*g^2,p2), whose Arf class is [p1*p2*g^2]; basis invariance
    of the Arf algorithm is checked along the way.
    """
    one, zero = PolyF2.one(), PolyF2.zero()
    gp, p1p, p2p = _f2(g), _f2(p1), _f2(p2)
    lam = Mat(
        [
            [zero, one, gp, one, zero, one],
            [one, zero, zero, p1p, one, p2p],
            [gp, zero, zero, one, zero, zero],
            [one, p1p, one, zero, zero, zero],
            [zero, one, zero, zero, zero, zero],
            [one, p2p, zero, zero, zero, zero],
        ],
        PolyF2,
    )
    vec = (gp, zero, zero, p1p, zero, p2p)
    form = from_pairing_and_vector(lam, vec)
    alpha = Mat(
        [
            [one, zero, zero, zero, one, zero],
            [zero, one, gp, one, zero, one],
            [zero, zero, one, zero, one, zero],
            [zero, zero, zero, one, gp, zero],
            [zero, zero, zero, p1p, one + p1p * gp, p2p],
            [zero, zero, zero, zero, zero, one],
        ],
        PolyF2,
    )
    if not alpha.det().is_unit():
        return False
    moved = form.transport(alpha)
    if moved.symmetrization() != standard_symplectic(6):
        return False
    target_vec = (gp, zero, zero, p1p, p1p * gp * gp, p2p)
    if tuple(moved.psi[i, i] for i in range(6)) != target_vec:
        return False
    expected = arf_normalize(p1p * p2p * gp * gp)
    return arf(form) == expected and arf(moved) == expected
