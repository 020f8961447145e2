"""Split epsilon-quadratic formations and the generator families.

A split formation is stored as (gamma, mu, theta, epsilon): the second
lagrangian of the hyperbolic form on F + F* is the image of the column
(gamma over mu): G -> F + F*, and theta is a hessian de-symmetrizing the
pullback form, so that

    theta - epsilon * theta^* = gamma^* mu.

The constructors make_M, make_Q and make_N_resolution build the concrete
generator matrices over Z[C2][x] and Z[x] used throughout the package;
verify_poincare, is_graph and verify_formation_iso are the decidable
certificates attached to them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import (
    AlgebraError,
    C2Poly,
    Mat,
    ONE_MINUS_T,
    PolyInt,
    PrecondError,
    RingTagError,
    ShapeError,
)


class UnsupportedShapeError(AlgebraError):
    """The operation only supports the exponent-two shape mu = 2*Id."""


class SplitFormation:
    """Nonsingular split epsilon-quadratic formation (gamma, mu, theta)."""

    __slots__ = ("gamma", "mu", "theta", "epsilon")

    def __init__(self, gamma: Mat, mu: Mat, theta: Mat, epsilon: int):
        if epsilon not in (1, -1):
            raise PrecondError("epsilon must be +1 or -1")
        if gamma.ring is not mu.ring or gamma.ring is not theta.ring:
            raise RingTagError("formation blocks over different rings")
        if gamma.cols != mu.cols or gamma.rows != mu.rows:
            raise ShapeError("gamma and mu must have equal shape")
        if theta.rows != gamma.cols or not theta.is_square():
            raise ShapeError("theta must be square of size g_rank")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "epsilon", epsilon)

    def __setattr__(self, *a):
        raise AttributeError("SplitFormation is immutable")

    @property
    def ring(self):
        return self.gamma.ring

    @property
    def f_rank(self) -> int:
        return self.gamma.rows

    @property
    def g_rank(self) -> int:
        return self.gamma.cols

    def hessian_holds(self) -> bool:
        """theta - epsilon*theta^* = gamma^* mu, as an exact matrix equality."""
        ts = self.theta.conj_t()
        lhs = self.theta - (ts if self.epsilon == 1 else -ts)
        return lhs == self.gamma.conj_t() * self.mu

    def map_entries(self, fn, ring) -> "SplitFormation":
        return SplitFormation(
            self.gamma.map_entries(fn, ring),
            self.mu.map_entries(fn, ring),
            self.theta.map_entries(fn, ring),
            self.epsilon,
        )

    def __eq__(self, other):
        return (
            isinstance(other, SplitFormation)
            and self.epsilon == other.epsilon
            and self.gamma == other.gamma
            and self.mu == other.mu
            and self.theta == other.theta
        )

    def __repr__(self):
        return (
            f"SplitFormation(eps={self.epsilon:+d}, gamma={self.gamma}, "
            f"mu={self.mu}, theta={self.theta})"
        )


def _require_pg_in_xzx(p: PolyInt, g: PolyInt):
    if (p * g).constant != 0:
        raise PrecondError("p*g must have zero constant coefficient")


def make_M(p: PolyInt, g: PolyInt) -> SplitFormation:
    """Rank-2 generator over Z[C2][x] with parameters p, g (p*g in x*Z[x]):
    gamma = theta = [[p,1],[1,(1-T)g]], mu = 2*Id."""
    _require_pg_in_xzx(p, g)
    pc = C2Poly.from_polyint(p)
    one = C2Poly.one()
    gg = ONE_MINUS_T * C2Poly.from_polyint(g)
    gamma = Mat([[pc, one], [one, gg]], C2Poly)
    mu = Mat.scalar(2, C2Poly.from_int(2), C2Poly)
    return SplitFormation(gamma, mu, gamma, -1)


def make_Q(q: PolyInt) -> SplitFormation:
    """Rank-2 generator over Z[C2][x] with parameter q in x*Z[x]; with
    qh = 2(1-T)q: gamma = [[0,qh],[qh,0]], mu = [[1,(1-T)q],[(1-T),1]],
    theta = [[qh,0],[qh,q*qh]]."""
    if q.constant != 0:
        raise PrecondError("q must have zero constant coefficient")
    qc = C2Poly.from_polyint(q)
    qh = C2Poly.from_int(2) * ONE_MINUS_T * qc
    zero, one = C2Poly.zero(), C2Poly.one()
    gamma = Mat([[zero, qh], [qh, zero]], C2Poly)
    mu = Mat([[one, ONE_MINUS_T * qc], [ONE_MINUS_T, one]], C2Poly)
    theta = Mat([[qh, zero], [qh, qc * qh]], C2Poly)
    return SplitFormation(gamma, mu, theta, -1)


@dataclass(frozen=True)
class LinkingFormGen:
    """Symbolic exponent-two linking-form generator, kept by its parameters;
    computations go through the split-formation resolution."""

    p: PolyInt
    g: PolyInt

    def __post_init__(self):
        if self.p.constant != 0 and self.g.constant != 0:
            raise PrecondError(
                "either p or g must have zero constant coefficient"
            )

    def resolution(self) -> "SplitFormation":
        return make_N_resolution(self.p, self.g)


def make_N_resolution(p: PolyInt, g: PolyInt) -> SplitFormation:
    """Resolution over Z[x] of the exponent-two linking-form generator with
    parameters p, g: gamma = theta = [[p,1],[1,2g]], mu = 2*Id."""
    if p.constant != 0 and g.constant != 0:
        raise PrecondError("either p or g must have zero constant coefficient")
    one = PolyInt.one()
    two_g = PolyInt((2,)) * g
    gamma = Mat([[p, one], [one, two_g]], PolyInt)
    mu = Mat.scalar(2, PolyInt((2,)), PolyInt)
    return SplitFormation(gamma, mu, gamma, -1)


def i_minus(f: SplitFormation) -> SplitFormation:
    """Evaluate T -> -1 entry-wise."""
    return SplitFormation(
        f.gamma.i_minus(), f.mu.i_minus(), f.theta.i_minus(), f.epsilon
    )


def i_plus(f: SplitFormation) -> SplitFormation:
    """Evaluate T -> +1 entry-wise."""
    return SplitFormation(
        f.gamma.i_plus(), f.mu.i_plus(), f.theta.i_plus(), f.epsilon
    )


def _is_two_id(mu: Mat) -> bool:
    if not mu.is_square():
        return False
    two = (
        C2Poly.from_int(2)
        if mu.ring is C2Poly
        else PolyInt((2,))
        if mu.ring is PolyInt
        else None
    )
    if two is None:
        return False
    return mu == Mat.scalar(mu.rows, two, mu.ring)


def verify_poincare(f: SplitFormation) -> bool:
    """Homological duality certificate for the exponent-two shape.

    For mu = 2*Id the duality map on the mod-2 homology of the associated
    complex is gamma, so the verdict is: det(gamma) is a unit mod 2.
    Other mu shapes raise UnsupportedShapeError.
    """
    if not _is_two_id(f.mu):
        raise UnsupportedShapeError("duality check supports only mu = 2*Id")
    return f.gamma.det().is_unit_mod2()


def is_graph(f: SplitFormation) -> bool:
    """True iff the second lagrangian projects isomorphically to F, i.e.
    gamma is invertible over the ring; such formations represent zero."""
    return f.gamma.is_square() and f.gamma.det().is_unit()


def is_contractible(f: SplitFormation) -> bool:
    """True iff mu is invertible over the ring, so the associated complex
    (differential mu^*) is contractible; such formations represent zero."""
    return f.mu.is_square() and f.mu.det().is_unit()


def _is_even_difference(x: Mat, sign: int) -> bool:
    """Whether x = eta - sign * eta^* is solvable: for sign = -1 this means
    x is skew-symmetric; for sign = +1, symmetric with even diagonal."""
    if sign == -1:
        return x.conj_t() == -x
    if x.conj_t() != x:
        return False
    for i in range(x.rows):
        e = x[i, i]
        if x.ring is PolyInt:
            if any(c % 2 for c in e.coeffs):
                return False
        elif x.ring is C2Poly:
            if any(c % 2 for c in e.a.coeffs) or any(c % 2 for c in e.b.coeffs):
                return False
        else:
            if e:
                return False
    return True


def verify_formation_iso(
    src: SplitFormation,
    dst: SplitFormation,
    alpha: Mat,
    beta: Mat,
    nu: Mat,
) -> bool:
    """Check that (alpha, beta, nu) is an isomorphism src -> dst.

    Conditions, with e = epsilon:
      (i)   gamma' beta = alpha gamma + (nu - e nu^*) mu
      (ii)  mu' beta = alpha^{-*} mu
      (iii) beta^* theta' beta - theta - mu^* nu mu is an even difference
            (eta - (-e) eta^* for some eta).
    alpha and beta must be unimodular.
    """
    if src.epsilon != dst.epsilon or src.ring is not dst.ring:
        raise PrecondError("formations must share epsilon and ring")
    e = src.epsilon
    if not (alpha.is_unimodular() and beta.is_unimodular()):
        raise PrecondError("alpha and beta must be unimodular")
    nus = nu.conj_t()
    skew_nu = nu - (nus if e == 1 else -nus)
    if dst.gamma * beta != alpha * src.gamma + skew_nu * src.mu:
        return False
    alpha_inv_star = alpha.conj_t().inverse_unimodular()
    if dst.mu * beta != alpha_inv_star * src.mu:
        return False
    diff = (
        beta.conj_t() * dst.theta * beta
        - src.theta
        - src.mu.conj_t() * nu * src.mu
    )
    return _is_even_difference(diff, -e)


def direct_sum(a: SplitFormation, b: SplitFormation) -> SplitFormation:
    if a.ring is not b.ring:
        raise RingTagError("direct sum over different rings")
    if a.epsilon != b.epsilon:
        raise PrecondError("direct sum with different epsilon")
    return SplitFormation(
        Mat.block_diag([a.gamma, b.gamma]),
        Mat.block_diag([a.mu, b.mu]),
        Mat.block_diag([a.theta, b.theta]),
        a.epsilon,
    )


def negate(a: SplitFormation) -> SplitFormation:
    """Additive inverse representative: theta -> -theta, mu -> -mu."""
    return SplitFormation(a.gamma, -a.mu, -a.theta, a.epsilon)
