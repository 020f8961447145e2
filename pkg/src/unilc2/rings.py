"""Exact arithmetic for the three coefficient rings and their matrices.

The three rings are polynomial rings with involution:

    Z[x]      -- integer polynomials, class PolyInt
    F2[x]     -- binary polynomials, class PolyF2 (stored as a bitmask)
    Z[C2][x]  -- polynomials with coefficients m + n*T, T^2 = 1, class C2Poly

The involution is the identity on all three (T is its own inverse and x is
fixed), so conjugate-transpose of a matrix is plain transpose; the hooks are
kept explicit so every formula reads like the matrix identity it checks.

Ring homomorphisms of the pullback square are provided as functions:
apply_i(sign, .) substitutes T -> sign*1, apply_j reduces mod 2, and
pullback_pair / pullback_inverse realise the isomorphism of Z[C2][x] with
the fibre product of two copies of Z[x] over F2[x].

Polynomials are immutable and canonical (no trailing zero coefficients), so
equality is structural.  The text grammar used by the CLI lives here too:
terms ``c``, ``c*x^k``, ``x^k``, ``T``, ``c*T*x^k`` joined by ``+``/``-``,
matrices written ``[a,b;c,d]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

NEG_INF = float("-inf")  # degree of the zero polynomial


class AlgebraError(Exception):
    """Base class for all domain errors raised by this package."""


class RingTagError(AlgebraError):
    """Mixed-ring operands."""


class ShapeError(AlgebraError):
    """Matrix dimension mismatch."""


class NotInImageError(AlgebraError):
    """A pair (u, v) with u != v mod 2 is not in the image of the pullback."""


class NonDivisibleError(AlgebraError):
    """Exact division failed: the composite is not defined over the ring."""


class PrecondError(AlgebraError):
    """An operation's precondition is violated."""


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


# ---------------------------------------------------------------------------
# Z[x]


class PolyInt:
    """Integer polynomial, coefficients indexed by exponent."""

    __slots__ = ("coeffs",)
    TAG = "Z[x]"

    def __init__(self, coeffs=()):
        object.__setattr__(self, "coeffs", _strip(coeffs))

    def __setattr__(self, *a):
        raise AttributeError("PolyInt is immutable")

    @classmethod
    def from_int(cls, n: int) -> "PolyInt":
        return cls((n,))

    @classmethod
    def x_power(cls, k: int, c: int = 1) -> "PolyInt":
        return cls((0,) * k + (c,))

    @classmethod
    def zero(cls) -> "PolyInt":
        return cls(())

    @classmethod
    def one(cls) -> "PolyInt":
        return cls((1,))

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, PolyInt) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("PolyInt", self.coeffs))

    def __add__(self, other):
        other = _as_polyint(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyInt(out)

    __radd__ = __add__

    def __neg__(self):
        return PolyInt(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_polyint(other))

    def __rsub__(self, other):
        return _as_polyint(other) + (-self)

    def __mul__(self, other):
        other = _as_polyint(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyInt(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return PolyInt(out)

    __rmul__ = __mul__

    def conj(self):
        """Ring involution (the identity on Z[x])."""
        return self

    def is_unit(self) -> bool:
        return self.coeffs == (1,) or self.coeffs == (-1,)

    def unit_inverse(self):
        if not self.is_unit():
            raise PrecondError(f"{self} is not a unit in Z[x]")
        return self

    def is_unit_mod2(self) -> bool:
        """True iff the image in F2[x] is a unit, i.e. the polynomial is odd
        in the constant coefficient and even elsewhere."""
        return self.constant % 2 == 1 and all(c % 2 == 0 for c in self.coeffs[1:])

    def mod2(self) -> "PolyF2":
        bits = 0
        for i, c in enumerate(self.coeffs):
            if c & 1:
                bits |= 1 << i
        return PolyF2(bits)

    def subs_power(self, n: int) -> "PolyInt":
        """Substitute x -> x^n."""
        if n <= 0:
            raise PrecondError("power substitution needs n > 0")
        out = [0] * (n * len(self.coeffs))
        for i, c in enumerate(self.coeffs):
            out[n * i] = c
        return PolyInt(out)

    def exact_div(self, d: "PolyInt") -> "PolyInt":
        """Exact quotient self / d in Z[x]; NonDivisibleError if not exact."""
        if not d:
            raise NonDivisibleError("division by zero polynomial")
        if not self:
            return PolyInt(())
        rem = list(self.coeffs)
        dc = d.coeffs
        dd = len(dc) - 1
        dl = dc[-1]
        q = [0] * max(len(rem) - dd, 0)
        while len(rem) - 1 >= dd:
            lc = rem[-1]
            if lc % dl:
                raise NonDivisibleError("composite not defined over the ring")
            c = lc // dl
            k = len(rem) - 1 - dd
            q[k] = c
            for i, dco in enumerate(dc):
                rem[k + i] -= c * dco
            while rem and rem[-1] == 0:
                rem.pop()
            if not rem:
                break
        if rem:
            raise NonDivisibleError("composite not defined over the ring")
        return PolyInt(q)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"PolyInt({format_poly(self)})"


def _as_polyint(v) -> PolyInt:
    if isinstance(v, PolyInt):
        return v
    if isinstance(v, int):
        return PolyInt((v,))
    raise RingTagError(f"cannot coerce {v!r} into Z[x]")


# ---------------------------------------------------------------------------
# F2[x], stored as an integer bitmask (bit k = coefficient of x^k)


class PolyF2:
    """Binary polynomial; addition is XOR."""

    __slots__ = ("bits",)
    TAG = "F2[x]"

    def __init__(self, bits: int = 0):
        if bits < 0:
            raise ValueError("bitmask must be nonnegative")
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, *a):
        raise AttributeError("PolyF2 is immutable")

    @classmethod
    def from_int(cls, n: int) -> "PolyF2":
        return cls(n & 1)

    @classmethod
    def x_power(cls, k: int, c: int = 1) -> "PolyF2":
        return cls((c & 1) << k)

    @classmethod
    def zero(cls) -> "PolyF2":
        return cls(0)

    @classmethod
    def one(cls) -> "PolyF2":
        return cls(1)

    @property
    def coeffs(self):
        return tuple((self.bits >> i) & 1 for i in range(self.bits.bit_length()))

    @property
    def constant(self) -> int:
        return self.bits & 1

    def degree(self):
        return self.bits.bit_length() - 1 if self.bits else NEG_INF

    def __bool__(self):
        return bool(self.bits)

    def __eq__(self, other):
        return isinstance(other, PolyF2) and self.bits == other.bits

    def __hash__(self):
        return hash(("PolyF2", self.bits))

    def __add__(self, other):
        other = _as_polyf2(other)
        return PolyF2(self.bits ^ other.bits)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = _as_polyf2(other)
        a, b, out = self.bits, other.bits, 0
        while a:
            if a & 1:
                out ^= b
            a >>= 1
            b <<= 1
        return PolyF2(out)

    __rmul__ = __mul__

    def conj(self):
        return self

    def is_unit(self) -> bool:
        return self.bits == 1

    def unit_inverse(self):
        if not self.is_unit():
            raise PrecondError(f"{self} is not a unit in F2[x]")
        return self

    def subs_power(self, n: int) -> "PolyF2":
        if n <= 0:
            raise PrecondError("power substitution needs n > 0")
        out, a, i = 0, self.bits, 0
        while a:
            if a & 1:
                out |= 1 << (n * i)
            a >>= 1
            i += 1
        return PolyF2(out)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"PolyF2({format_poly(self)})"


def _as_polyf2(v) -> PolyF2:
    if isinstance(v, PolyF2):
        return v
    if isinstance(v, int):
        return PolyF2(v & 1)
    raise RingTagError(f"cannot coerce {v!r} into F2[x]")


def f2_divmod(a: PolyF2, b: PolyF2):
    """Quotient and remainder in the Euclidean domain F2[x]."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    q, r, db = 0, a.bits, b.bits.bit_length() - 1
    while r.bit_length() - 1 >= db:
        shift = r.bit_length() - 1 - db
        q |= 1 << shift
        r ^= b.bits << shift
    return PolyF2(q), PolyF2(r)


def f2_xgcd(a: PolyF2, b: PolyF2):
    """Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = PolyF2(1), PolyF2(0)
    t0, t1 = PolyF2(0), PolyF2(1)
    while r1:
        q, r = f2_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 + q * s1
        t0, t1 = t1, t0 + q * t1
    return r0, s0, t0


# ---------------------------------------------------------------------------
# Z[C2] and Z[C2][x]


@dataclass(frozen=True)
class C2Elt:
    """Group-ring element m + n*T with T^2 = 1."""

    m: int = 0
    n: int = 0

    def __add__(self, other):
        other = _as_c2elt(other)
        return C2Elt(self.m + other.m, self.n + other.n)

    def __neg__(self):
        return C2Elt(-self.m, -self.n)

    def __sub__(self, other):
        return self + (-_as_c2elt(other))

    def __mul__(self, other):
        other = _as_c2elt(other)
        return C2Elt(
            self.m * other.m + self.n * other.n,
            self.m * other.n + self.n * other.m,
        )

    __rmul__ = __mul__
    __radd__ = __add__

    def conj(self):
        """Involution T -> T^{-1} = T: the identity."""
        return self

    def __bool__(self):
        return bool(self.m or self.n)

    def __str__(self):
        return format_poly(C2Poly.from_parts(PolyInt((self.m,)), PolyInt((self.n,))))


def _as_c2elt(v) -> C2Elt:
    if isinstance(v, C2Elt):
        return v
    if isinstance(v, int):
        return C2Elt(v, 0)
    raise RingTagError(f"cannot coerce {v!r} into Z[C2]")


T_GEN = C2Elt(0, 1)


class C2Poly:
    """Polynomial over Z[C2], stored as the pair (a, b) with value a + b*T."""

    __slots__ = ("a", "b")
    TAG = "Z[C2][x]"

    def __init__(self, coeffs=()):
        ms, ns = [], []
        for c in coeffs:
            c = _as_c2elt(c)
            ms.append(c.m)
            ns.append(c.n)
        object.__setattr__(self, "a", PolyInt(ms))
        object.__setattr__(self, "b", PolyInt(ns))

    def __setattr__(self, *a):
        raise AttributeError("C2Poly is immutable")

    @classmethod
    def from_parts(cls, a: PolyInt, b: PolyInt) -> "C2Poly":
        self = cls.__new__(cls)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        return self

    @classmethod
    def from_polyint(cls, p: PolyInt) -> "C2Poly":
        return cls.from_parts(p, PolyInt(()))

    @classmethod
    def from_int(cls, n: int) -> "C2Poly":
        return cls.from_parts(PolyInt((n,)), PolyInt(()))

    @classmethod
    def zero(cls) -> "C2Poly":
        return cls.from_parts(PolyInt(()), PolyInt(()))

    @classmethod
    def one(cls) -> "C2Poly":
        return cls.from_parts(PolyInt((1,)), PolyInt(()))

    @classmethod
    def t(cls) -> "C2Poly":
        return cls.from_parts(PolyInt(()), PolyInt((1,)))

    @property
    def coeffs(self):
        la, lb = self.a.coeffs, self.b.coeffs
        k = max(len(la), len(lb))
        return tuple(
            C2Elt(la[i] if i < len(la) else 0, lb[i] if i < len(lb) else 0)
            for i in range(k)
        )

    def degree(self):
        da, db = self.a.degree(), self.b.degree()
        return max(da, db)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        return isinstance(other, C2Poly) and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash(("C2Poly", self.a.coeffs, self.b.coeffs))

    def __add__(self, other):
        other = _as_c2poly(other)
        return C2Poly.from_parts(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return C2Poly.from_parts(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-_as_c2poly(other))

    def __rsub__(self, other):
        return _as_c2poly(other) + (-self)

    def __mul__(self, other):
        # (a + bT)(c + dT) = (ac + bd) + (ad + bc)T
        other = _as_c2poly(other)
        return C2Poly.from_parts(
            self.a * other.a + self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def conj(self):
        return self

    def is_unit(self) -> bool:
        """Units of Z[C2][x] are +-1 and +-T."""
        return (self.a.is_unit() and not self.b) or (self.b.is_unit() and not self.a)

    def unit_inverse(self):
        if not self.is_unit():
            raise PrecondError(f"{self} is not a unit in Z[C2][x]")
        return self  # (+-1)^2 = 1 and (+-T)^2 = 1

    def is_unit_mod2(self) -> bool:
        """Unit detection in F2[C2][x].

        Writing the mod-2 image as alpha(x) + beta(x)*s with s = 1 + T
        (s^2 = 0 in characteristic 2), the element is a unit iff alpha = 1;
        here alpha = (a + b) mod 2.
        """
        return (self.a + self.b).is_unit_mod2()

    def inverse_mod2(self) -> "C2Poly":
        """An inverse of the mod-2 image, as a lift with 0/1 coefficients.

        With s = 1 + T nilpotent, (1 + beta*s)^{-1} = 1 + beta*s, so the
        inverse of alpha + beta*s with alpha = 1 is 1 + beta*s = (1+beta) + beta*T.
        """
        if not self.is_unit_mod2():
            raise PrecondError(f"{self} is not a unit mod 2")
        beta = PolyInt(tuple(c & 1 for c in self.b.coeffs))
        return C2Poly.from_parts(PolyInt((1,)) + beta, beta)

    def congruent_mod2(self, other: "C2Poly") -> bool:
        d = self - other
        return all(c % 2 == 0 for c in d.a.coeffs) and all(c % 2 == 0 for c in d.b.coeffs)

    def subs_power(self, n: int) -> "C2Poly":
        return C2Poly.from_parts(self.a.subs_power(n), self.b.subs_power(n))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"C2Poly({format_poly(self)})"


def _as_c2poly(v) -> C2Poly:
    if isinstance(v, C2Poly):
        return v
    if isinstance(v, int):
        return C2Poly.from_int(v)
    if isinstance(v, C2Elt):
        return C2Poly((v,))
    if isinstance(v, PolyInt):
        return C2Poly.from_polyint(v)
    raise RingTagError(f"cannot coerce {v!r} into Z[C2][x]")


ONE_MINUS_T = C2Poly.from_parts(PolyInt((1,)), PolyInt((-1,)))

RING_CLASSES = (PolyInt, PolyF2, C2Poly)
RING_BY_TAG = {cls.TAG: cls for cls in RING_CLASSES}


# ---------------------------------------------------------------------------
# Homomorphisms of the pullback square


def apply_i(sign: int, p: C2Poly) -> PolyInt:
    """Substitute T -> sign * 1 coefficient-wise (sign is +1 or -1)."""
    if sign not in (1, -1):
        raise PrecondError("sign must be +1 or -1")
    return p.a + p.b if sign == 1 else p.a - p.b


def apply_j(p: PolyInt, sign: int = 1) -> PolyF2:
    """Reduce coefficients mod 2 (both square legs agree, sign is cosmetic)."""
    return p.mod2()


def apply_k(p: C2Poly) -> PolyF2:
    """The diagonal composite: mod-2 reduction after either T-evaluation."""
    return apply_j(apply_i(-1, p))


def pullback_pair(p: C2Poly):
    """(T -> -1 image, T -> +1 image); a ring isomorphism onto the pairs
    of integer polynomials that agree mod 2."""
    return (apply_i(-1, p), apply_i(1, p))


def pullback_inverse(u: PolyInt, v: PolyInt) -> C2Poly:
    """Inverse of pullback_pair on pairs with u = v mod 2."""
    diff = v - u
    if any(c % 2 for c in diff.coeffs):
        raise NotInImageError(f"({u}, {v}) do not agree mod 2")
    two = PolyInt((2,))
    a = (u + v).exact_div(two)
    b = (v - u).exact_div(two)
    return C2Poly.from_parts(a, b)


def ring_add(x, y):
    if type(x) is not type(y):
        raise RingTagError(f"mixed rings: {type(x).__name__} + {type(y).__name__}")
    return x + y


def ring_mul(x, y):
    if type(x) is not type(y):
        raise RingTagError(f"mixed rings: {type(x).__name__} * {type(y).__name__}")
    return x * y


def ring_neg(x):
    return -x


def is_unit(x) -> bool:
    return x.is_unit()


def is_unit_mod2(x) -> bool:
    if isinstance(x, (PolyInt, C2Poly)):
        return x.is_unit_mod2()
    raise RingTagError("unit-mod-2 test is defined over Z[x] and Z[C2][x]")


# ---------------------------------------------------------------------------
# Matrices


class Mat:
    """Dense matrix over one of the three rings.

    Entries are stored row-major as a tuple of tuples; the ring is the entry
    class.  conj_t applies the ring involution entry-wise and transposes.
    """

    __slots__ = ("rows", "cols", "entries", "ring")

    def __init__(self, entries, ring=None):
        rows = tuple(tuple(r) for r in entries)
        if rows:
            w = len(rows[0])
            if any(len(r) != w for r in rows):
                raise ShapeError("ragged rows")
        else:
            w = 0
        if ring is None:
            if not rows or not rows[0]:
                raise ShapeError("empty matrix needs an explicit ring")
            ring = type(rows[0][0])
        if ring not in RING_CLASSES:
            raise RingTagError(f"unknown ring {ring}")
        coerce = {PolyInt: _as_polyint, PolyF2: _as_polyf2, C2Poly: _as_c2poly}[ring]
        rows = tuple(tuple(coerce(e) for e in r) for r in rows)
        for r in rows:
            for e in r:
                if type(e) is not ring:
                    raise RingTagError("mixed-ring entries")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", w)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "ring", ring)

    def __setattr__(self, *a):
        raise AttributeError("Mat is immutable")

    # -- constructors

    @classmethod
    def _raw(cls, rows, ring) -> "Mat":
        """Internal fast path: entries already canonical for the ring."""
        self = cls.__new__(cls)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", len(rows[0]) if rows else 0)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "ring", ring)
        return self

    @classmethod
    def identity(cls, n: int, ring) -> "Mat":
        one, zero = ring.one(), ring.zero()
        return cls(
            [[one if i == j else zero for j in range(n)] for i in range(n)], ring
        )

    @classmethod
    def zeros(cls, r: int, c: int, ring) -> "Mat":
        zero = ring.zero()
        return cls([[zero] * c for _ in range(r)], ring)

    @classmethod
    def scalar(cls, n: int, value, ring) -> "Mat":
        zero = ring.zero()
        return cls(
            [[value if i == j else zero for j in range(n)] for i in range(n)], ring
        )

    @classmethod
    def from_blocks(cls, blocks) -> "Mat":
        """Assemble from a 2-d grid of matrices with matching edge sizes."""
        ring = blocks[0][0].ring
        out = []
        for brow in blocks:
            h = brow[0].rows
            if any(b.rows != h for b in brow):
                raise ShapeError("block row heights differ")
            for i in range(h):
                row = []
                for b in brow:
                    row.extend(b.entries[i])
                out.append(row)
        return cls(out, ring)

    @classmethod
    def block_diag(cls, blocks) -> "Mat":
        ring = blocks[0].ring
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        zero = ring.zero()
        out = [[zero] * m for _ in range(n)]
        i = j = 0
        for b in blocks:
            for r in range(b.rows):
                for c in range(b.cols):
                    out[i + r][j + c] = b.entries[r][c]
            i += b.rows
            j += b.cols
        return cls(out, ring)

    # -- basics

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.ring is other.ring
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.ring.TAG, self.entries))

    def __getitem__(self, rc):
        return self.entries[rc[0]][rc[1]]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(not e for r in self.entries for e in r)

    def _check_ring(self, other):
        if self.ring is not other.ring:
            raise RingTagError(f"mixed rings: {self.ring.TAG} vs {other.ring.TAG}")

    def __add__(self, other):
        self._check_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("addition shape mismatch")
        return Mat._raw(
            tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            ),
            self.ring,
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Mat._raw(
            tuple(tuple(-e for e in r) for r in self.entries), self.ring
        )

    def __mul__(self, other):
        if not isinstance(other, Mat):
            return Mat(
                [[e * other for e in r] for r in self.entries], self.ring
            )
        self._check_ring(other)
        if self.cols != other.rows:
            raise ShapeError(
                f"product shape mismatch: {self.rows}x{self.cols} * {other.rows}x{other.cols}"
            )
        bt = list(zip(*other.entries))
        zero = self.ring.zero()
        out = []
        for r in self.entries:
            row = []
            for c in bt:
                acc = zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return Mat._raw(tuple(out), self.ring)

    def __rmul__(self, other):
        return Mat([[other * e for e in r] for r in self.entries], self.ring)

    def transpose(self) -> "Mat":
        return Mat._raw(
            tuple(zip(*self.entries)) if self.entries else (), self.ring
        )

    def conj_t(self) -> "Mat":
        """Conjugate-transpose: involution entry-wise, then transpose."""
        return Mat._raw(
            tuple(tuple(e.conj() for e in r) for r in zip(*self.entries))
            if self.entries
            else (),
            self.ring,
        )

    def map_entries(self, fn, ring) -> "Mat":
        return Mat([[fn(e) for e in r] for r in self.entries], ring)

    def mod2(self) -> "Mat":
        if self.ring is PolyInt:
            return self.map_entries(lambda e: e.mod2(), PolyF2)
        if self.ring is C2Poly:
            return self.map_entries(apply_k, PolyF2)
        return self

    def i_minus(self) -> "Mat":
        return self.map_entries(lambda e: apply_i(-1, e), PolyInt)

    def i_plus(self) -> "Mat":
        return self.map_entries(lambda e: apply_i(1, e), PolyInt)

    def to_c2(self) -> "Mat":
        if self.ring is C2Poly:
            return self
        if self.ring is PolyInt:
            return self.map_entries(C2Poly.from_polyint, C2Poly)
        raise RingTagError("no canonical embedding of F2[x] into Z[C2][x]")

    def submatrix(self, drop_row: int, drop_col: int) -> "Mat":
        return Mat(
            [
                [e for j, e in enumerate(r) if j != drop_col]
                for i, r in enumerate(self.entries)
                if i != drop_row
            ],
            self.ring,
        )

    def det(self):
        """Determinant by first-row expansion with column-subset memo."""
        if not self.is_square():
            raise ShapeError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return self.ring.one()
        ent = self.entries
        memo = {}

        def rec(row, colmask):
            if row == n:
                return self.ring.one()
            key = colmask
            got = memo.get(key)
            if got is not None:
                return got
            acc = self.ring.zero()
            sign = 1
            m = colmask
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                e = ent[row][j]
                if e:
                    sub = rec(row + 1, colmask & ~(1 << j))
                    term = e * sub
                    acc = acc + (term if sign > 0 else -term)
                sign = -sign
            memo[key] = acc
            return acc

        return rec(0, (1 << n) - 1)

    def adjugate(self) -> "Mat":
        """adj(A) with A * adj(A) = det(A) * Id."""
        if not self.is_square():
            raise ShapeError("adjugate of a non-square matrix")
        n = self.rows
        if n == 0:
            return self
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = self.submatrix(i, j).det()
                out[j][i] = minor if (i + j) % 2 == 0 else -minor
        return Mat(out, self.ring)

    def inverse_unimodular(self) -> "Mat":
        """Inverse of a matrix whose determinant is a ring unit."""
        d = self.det()
        return self.adjugate() * d.unit_inverse()

    def is_unimodular(self) -> bool:
        return self.is_square() and self.det().is_unit()

    def __str__(self):
        return format_matrix(self)

    def __repr__(self):
        return f"Mat[{self.ring.TAG}]{format_matrix(self)}"


def solve_right(a: Mat, b: Mat) -> Mat:
    """Solve A * X = B exactly over Z[x] via adj(A) * B / det(A).

    A must be square with nonzero determinant; every entry of adj(A)*B must
    be exactly divisible by det(A), otherwise the composite is not defined
    over the ring and NonDivisibleError is raised.
    """
    if a.ring is not PolyInt or b.ring is not PolyInt:
        raise RingTagError("solve_right works over Z[x]")
    if not a.is_square():
        raise ShapeError("solve_right needs a square left-hand side")
    if a.rows != b.rows:
        raise ShapeError("solve_right shape mismatch")
    d = a.det()
    if not d:
        raise PrecondError("singular matrix in solve_right")
    num = a.adjugate() * b
    return num.map_entries(lambda e: e.exact_div(d), PolyInt)


# ---------------------------------------------------------------------------
# Text grammar


_TERM_SPLIT = re.compile(r"(?=[+-])")


def parse_poly(text: str, ring):
    """Parse the term grammar into a polynomial of the given ring class."""
    s = text.replace(" ", "").replace("\t", "")
    if not s:
        raise ValueError("empty polynomial text")
    if s in ("0", "+0", "-0"):
        return ring.zero()
    terms = [t for t in _TERM_SPLIT.split(s) if t]
    acc = ring.zero()
    for term in terms:
        sign = 1
        if term[0] == "+":
            term = term[1:]
        elif term[0] == "-":
            sign = -1
            term = term[1:]
        if not term:
            raise ValueError(f"dangling sign in {text!r}")
        coeff, has_t, exp = 1, False, 0
        for factor in term.split("*"):
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            if factor == "T":
                if has_t:
                    raise ValueError(f"repeated T in term {term!r}")
                has_t = True
            elif factor[0] == "x":
                if factor == "x":
                    exp += 1
                elif factor[1] == "^":
                    exp += int(factor[2:])
                else:
                    raise ValueError(f"bad factor {factor!r}")
            else:
                coeff *= int(factor)
        coeff *= sign
        if has_t and ring is not C2Poly:
            raise RingTagError(f"T is not an element of {ring.TAG}")
        if ring is C2Poly:
            part = C2Poly.from_parts(
                PolyInt.x_power(exp, 0 if has_t else coeff),
                PolyInt.x_power(exp, coeff if has_t else 0),
            )
        elif ring is PolyInt:
            part = PolyInt.x_power(exp, coeff)
        else:
            part = PolyF2.x_power(exp, coeff & 1)
        acc = acc + part
    return acc


def _fmt_term(c: int, k: int, t: bool) -> str:
    body = []
    if abs(c) != 1 or (k == 0 and not t):
        body.append(str(abs(c)))
    if t:
        body.append("T")
    if k == 1:
        body.append("x")
    elif k > 1:
        body.append(f"x^{k}")
    return ("-" if c < 0 else "+") + "*".join(body)


def format_poly(p) -> str:
    """Canonical text form, ascending exponent; within an exponent the
    T-free part precedes the T part."""
    terms = []
    if isinstance(p, C2Poly):
        la, lb = p.a.coeffs, p.b.coeffs
        for k in range(max(len(la), len(lb))):
            m = la[k] if k < len(la) else 0
            n = lb[k] if k < len(lb) else 0
            if m:
                terms.append(_fmt_term(m, k, False))
            if n:
                terms.append(_fmt_term(n, k, True))
    elif isinstance(p, PolyInt):
        for k, c in enumerate(p.coeffs):
            if c:
                terms.append(_fmt_term(c, k, False))
    elif isinstance(p, PolyF2):
        for k in range(p.bits.bit_length()):
            if (p.bits >> k) & 1:
                terms.append(_fmt_term(1, k, False))
    else:
        raise RingTagError(f"cannot format {p!r}")
    if not terms:
        return "0"
    out = "".join(terms)
    return out[1:] if out[0] == "+" else out


def parse_matrix(text: str, ring) -> Mat:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError("matrix text must be wrapped in [...]")
    body = s[1:-1].strip()
    if not body:
        return Mat.zeros(0, 0, ring)
    rows = [
        [parse_poly(e, ring) for e in row.split(",")] for row in body.split(";")
    ]
    return Mat(rows, ring)


def format_matrix(m: Mat) -> str:
    return (
        "["
        + ";".join(",".join(format_poly(e) for e in row) for row in m.entries)
        + "]"
    )
