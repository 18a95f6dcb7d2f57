"""Exact field arithmetic: prime fields, Galois extensions, Q, number fields.

Scalars are stored in a compact "raw" encoding chosen per field (int for
finite fields, Fraction for Q, tuple of Fractions for number fields) and the
Field object supplies the arithmetic on raws.  The Scalar wrapper provides
operator overloading for user-facing code; hot loops work on raws directly.

Only simple separable extensions of a prime field or Q are supported, with
the power basis 1, a, ..., a^(l-1) of k[x]/(m).  Towers are not built here;
flatten them before constructing the field.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    FieldMismatchError,
    InseparableError,
    InternalCheckError,
    IrreducibilityUndecidedError,
    NotIrreducibleError,
    UserInputError,
)

GALOIS_TABLE_MAX = 256


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Scalar:
    """A field element: a raw value tagged with its owning field."""

    __slots__ = ("field", "raw")

    def __init__(self, field, raw):
        self.field = field
        self.raw = raw

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"scalars from {self.field} and {other.field} cannot be combined"
                )
            return other.raw
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return NotImplemented

    def __add__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.add(self.raw, raw))

    __radd__ = __add__

    def __sub__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.sub(self.raw, raw))

    def __rsub__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.sub(raw, self.raw))

    def __mul__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.mul(self.raw, raw))

    __rmul__ = __mul__

    def __truediv__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.mul(self.raw, self.field.inv(raw)))

    def __rtruediv__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.mul(raw, self.field.inv(self.raw)))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.raw))

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        f = self.field
        if n < 0:
            return Scalar(f, f.pow(f.inv(self.raw), -n))
        return Scalar(f, f.pow(self.raw, n))

    def inverse(self):
        return Scalar(self.field, self.field.inv(self.raw))

    def is_zero(self):
        return self.raw == self.field.zero

    def __bool__(self):
        return self.raw != self.field.zero

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.raw == other.raw
        if isinstance(other, (int, Fraction)):
            return self.raw == self.field.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.raw))

    def __str__(self):
        return self.field.repr_raw(self.raw)

    def __repr__(self):
        return f"Scalar({self.field}, {self.field.repr_raw(self.raw)})"


class Field:
    """Common interface; subclasses fill in the raw arithmetic."""

    base = None
    minpoly = None

    def scalar(self, x):
        return Scalar(self, self.coerce(x))

    def raw_of(self, x):
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatchError(f"expected scalar over {self}, got {x.field}")
            return x.raw
        return self.coerce(x)

    def pow(self, a, n):
        acc = self.one
        base = a
        while n:
            if n & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            n >>= 1
        return acc

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a):
        return a == self.zero

    @property
    def is_extension(self):
        return self.base is not None

    def __ne__(self, other):
        return not self.__eq__(other)


class PrimeField(Field):
    """F_p with raws the integers 0..p-1."""

    def __init__(self, p):
        if not _is_prime(p):
            raise UserInputError(f"modulus {p} is not prime")
        self.p = p
        self.characteristic = p
        self.size = p
        self.degree = 1
        self.zero = 0
        self.one = 1 % p
        self._inv = [0] * p
        for a in range(1, p):
            self._inv[a] = pow(a, p - 2, p)

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise UserInputError(f"fraction {x} has no image in F_{self.p}")
            return (x.numerator * self._inv[x.denominator % self.p]) % self.p
        if isinstance(x, Scalar):
            return self.raw_of(x)
        raise UserInputError(f"cannot coerce {x!r} into F_{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        return self._inv[a]

    def frobenius(self, a):
        return a

    def elements(self):
        return range(self.p)

    def random_raw(self, rng):
        return rng.randrange(self.p)

    def repr_raw(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"Fp({self.p})"


class RationalField(Field):
    """Q with raws Fractions."""

    characteristic = 0
    size = None
    degree = 1
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, Scalar):
            return self.raw_of(x)
        raise UserInputError(f"cannot coerce {x!r} into Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / a

    def random_raw(self, rng):
        return Fraction(rng.randrange(-9, 10), rng.randrange(1, 8))

    def repr_raw(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


# ---------------------------------------------------------------------------
# polynomials over a field, as lists of raws indexed by degree
# ---------------------------------------------------------------------------


def poly_trim(F, f):
    while f and f[-1] == F.zero:
        f = f[:-1]
    return f


def poly_add(F, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else F.zero
        b = g[i] if i < len(g) else F.zero
        out.append(F.add(a, b))
    return poly_trim(F, out)


def poly_neg(F, f):
    return [F.neg(c) for c in f]

def poly_sub(F, f, g):
    return poly_add(F, f, poly_neg(F, g))


def poly_scale(F, f, c):
    if c == F.zero:
        return []
    return [F.mul(c, a) for a in f]


def poly_mul(F, f, g):
    if not f or not g:
        return []
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == F.zero:
            continue
        for j, b in enumerate(g):
            if b == F.zero:
                continue
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return poly_trim(F, out)


def poly_divmod(F, f, g):
    g = poly_trim(F, g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = poly_trim(F, list(f))
    lead_inv = F.inv(g[-1])
    dg = len(g) - 1
    quot = [F.zero] * max(0, len(f) - dg)
    rem = list(f)
    while len(rem) - 1 >= dg and rem:
        c = F.mul(rem[-1], lead_inv)
        k = len(rem) - 1 - dg
        quot[k] = c
        for i in range(len(g)):
            rem[k + i] = F.sub(rem[k + i], F.mul(c, g[i]))
        rem = poly_trim(F, rem)
        if not rem:
            break
    return poly_trim(F, quot), rem


def poly_mod(F, f, g):
    return poly_divmod(F, f, g)[1]


def poly_monic(F, f):
    f = poly_trim(F, f)
    if not f:
        return f
    return poly_scale(F, f, F.inv(f[-1]))


def poly_gcd(F, f, g):
    a = poly_trim(F, list(f))
    b = poly_trim(F, list(g))
    while b:
        a, b = b, poly_mod(F, a, b)
    return poly_monic(F, a)


def poly_ext_gcd(F, f, g):
    """(d, u, v) with u*f + v*g = d = monic gcd."""
    a, b = poly_trim(F, list(f)), poly_trim(F, list(g))
    ua, va = [F.one], []
    ub, vb = [], [F.one]
    while b:
        q, r = poly_divmod(F, a, b)
        a, b = b, r
        ua, ub = ub, poly_sub(F, ua, poly_mul(F, q, ub))
        va, vb = vb, poly_sub(F, va, poly_mul(F, q, vb))
    if not a:
        return [], [], []
    c = F.inv(a[-1])
    return poly_scale(F, a, c), poly_scale(F, ua, c), poly_scale(F, va, c)


def poly_deriv(F, f):
    out = []
    for i in range(1, len(f)):
        out.append(F.mul(F.coerce(i), f[i]))
    return poly_trim(F, out)


def poly_eval(F, f, a):
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, a), c)
    return acc


def poly_pow_mod(F, f, e, m):
    acc = [F.one]
    base = poly_mod(F, f, m)
    while e:
        if e & 1:
            acc = poly_mod(F, poly_mul(F, acc, base), m)
        base = poly_mod(F, poly_mul(F, base, base), m)
        e >>= 1
    return acc


def poly_squarefree_part(F, f):
    """Product of the distinct irreducible factors of f (monic)."""
    f = poly_monic(F, f)
    if len(f) <= 1:
        return f
    df = poly_deriv(F, f)
    if not df:
        # char p with f = g(x^p); take p-th roots of the coefficients
        p = F.characteristic
        if p == 0:
            raise UserInputError("zero derivative for nonconstant poly in char 0")
        root = []
        for i in range(0, len(f), p):
            c = f[i]
            # in F_q, c^(q/p) is the p-th root
            e = F.size // p if getattr(F, "size", None) else None
            if e is None:
                raise UserInputError("p-th root extraction needs a finite field")
            root.append(F.pow(c, e))
        return poly_squarefree_part(F, root)
    g = poly_gcd(F, f, df)
    if len(g) == 1:
        return f
    quot, rem = poly_divmod(F, f, g)
    assert not rem
    # quot may still share factors with g in char p; iterate
    part = poly_monic(F, quot)
    extra = poly_squarefree_part(F, g)
    q2, r2 = poly_divmod(F, extra, poly_gcd(F, extra, part))
    assert not r2
    return poly_mul(F, part, q2)


def poly_coprime_split(F, f, rng):
    """Split monic f over a finite field as (g, h) coprime, both nontrivial.

    Returns None when f is (a power of) a single irreducible.  Uses root
    scanning, then distinct-degree separation, then equal-degree splitting.
    """
    f = poly_monic(F, f)
    n = len(f) - 1
    if n < 2:
        return None
    sf = poly_squarefree_part(F, f)
    if len(sf) - 1 < 2:
        return None  # power of a single irreducible
    g = _split_squarefree(F, sf, rng)
    if g is None:
        return None
    # grow g to the full primary part: keep absorbing shared irreducibles
    part = g
    while True:
        other, rem = poly_divmod(F, f, part)
        assert not rem
        d = poly_gcd(F, part, other)
        if len(d) == 1:
            break
        part = poly_mul(F, part, d)
    assert len(part) > 1 and len(other) > 1
    return poly_monic(F, part), poly_monic(F, other)


def _split_squarefree(F, f, rng):
    """A proper monic factor of squarefree monic f, or None if irreducible."""
    q = F.size
    n = len(f) - 1
    if n < 2:
        return None
    # cheap pass: linear factors by root scan (fields here are small)
    if q <= 4096:
        for c in F.elements():
            if poly_eval(F, f, c) == F.zero:
                g = [F.neg(c), F.one]
                if n > 1:
                    return g
    x = [F.zero, F.one]
    xq = x
    for d in range(1, n // 2 + 1):
        # advance to x^(q^d) mod f
        xq = _poly_q_power_mod(F, xq, f)
        g = poly_gcd(F, poly_sub(F, xq, x), f)
        if 1 < len(g) < len(f):
            return poly_monic(F, g)
        if len(g) == len(f):
            # all factors have degree exactly d; f reducible iff n > d
            if n == d:
                return None
            return _equal_degree_split(F, f, d, rng)
    return None


def _poly_q_power_mod(F, g, m):
    """g(x) -> g(x)^q mod m for q = |F|."""
    return poly_pow_mod(F, g, F.size, m)


def _equal_degree_split(F, f, d, rng):
    """Cantor-Zassenhaus: proper factor of squarefree f = product of
    irreducibles all of degree d (at least two of them)."""
    q = F.size
    n = len(f) - 1
    p = F.characteristic
    s = 0
    qq = 1
    while qq < q:
        qq *= p
        s += 1
    for _ in range(200):
        r = [F.random_raw(rng) for _ in range(n)]
        r = poly_trim(F, r)
        if len(r) <= 1:
            continue
        if p == 2:
            # trace map sum_{i<s*d} r^(2^i) mod f
            t = r
            acc = r
            for _ in range(s * d - 1):
                t = poly_mod(F, poly_mul(F, t, t), f)
                acc = poly_add(F, acc, t)
            g = poly_gcd(F, acc, f)
        else:
            e = (q**d - 1) // 2
            t = poly_pow_mod(F, r, e, f)
            g = poly_gcd(F, poly_sub(F, t, [F.one]), f)
        if 1 < len(g) < len(f):
            return poly_monic(F, g)
    raise InternalCheckError("equal-degree splitting failed to find a factor")


def _integer_divisors(n):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def rational_roots(f):
    """All rational roots of f with Fraction coefficients."""
    if not f:
        raise UserInputError("zero polynomial has every root")
    den = 1
    for c in f:
        den = den * c.denominator // _gcd_int(den, c.denominator)
    ints = [int(c * den) for c in f]
    while ints and ints[-1] == 0:
        ints.pop()
    roots = []
    lead = ints[-1]
    k = 0
    while k < len(ints) and ints[k] == 0:
        k += 1
    if k > 0:
        roots.append(Fraction(0))
    const = ints[k]
    for pn in _integer_divisors(const):
        for qn in _integer_divisors(lead):
            for sgn in (1, -1):
                cand = Fraction(sgn * pn, qn)
                if cand in roots:
                    continue
                acc = Fraction(0)
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    roots.append(cand)
    return roots


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def is_irreducible(F, coeffs, assume_irreducible=False):
    """Decide irreducibility of a monic polynomial over F_p or Q.

    Over F_p the search is exhaustive up to degree 8; over Q it is the
    rational-root test, complete for degree <= 3.  Beyond those ranges the
    caller must pass assume_irreducible=True to proceed.
    """
    f = poly_trim(F, [F.raw_of(c) for c in coeffs])
    deg = len(f) - 1
    if deg < 1:
        raise UserInputError("a minimal polynomial must have degree >= 1")
    if deg == 1:
        return True
    if isinstance(F, PrimeField):
        if deg > 8 and not assume_irreducible:
            raise IrreducibilityUndecidedError(
                f"exhaustive irreducibility search is capped at degree 8, got {deg}; "
                "pass assume_irreducible to proceed"
            )
        if deg > 8:
            return True
        for k in range(1, deg // 2 + 1):
            # all monic polynomials of degree k over F_p
            for idx in range(F.p**k):
                g = []
                m = idx
                for _ in range(k):
                    g.append(m % F.p)
                    m //= F.p
                g.append(F.one)
                if not poly_mod(F, f, g):
                    return False
        return True
    if isinstance(F, RationalField):
        roots = rational_roots(f)
        if roots:
            return False
        if deg <= 3:
            return True
        if assume_irreducible:
            return True
        raise IrreducibilityUndecidedError(
            f"irreducibility over Q is only decided up to degree 3 (got degree {deg} "
            "with no rational root); pass assume_irreducible to proceed"
        )
    raise UserInputError(f"irreducibility test not supported over {F}")


# ---------------------------------------------------------------------------
# extensions
# ---------------------------------------------------------------------------


class _ExtensionMixin:
    """Coordinate plumbing shared by Galois and number fields."""

    def coordinates_raw(self, a):
        raise NotImplementedError

    def from_coordinates_raw(self, coords):
        raise NotImplementedError

    def embed_base(self, braw):
        coords = [braw] + [self.base.zero] * (self.degree_over_base - 1)
        return self.from_coordinates_raw(coords)

    def mult_matrix_raw(self, lam):
        """l x l matrix over the base field: column s = coords(alpha_s * lam)."""
        l = self.degree_over_base
        cols = []
        for s in range(l):
            alpha_s = self.power_basis_raw(s)
            cols.append(self.coordinates_raw(self.mul(alpha_s, lam)))
        return [[cols[s][r] for s in range(l)] for r in range(l)]

    def power_basis_raw(self, s):
        coords = [self.base.zero] * self.degree_over_base
        coords[s] = self.base.one
        return self.from_coordinates_raw(coords)


def _check_minpoly(base, coeffs, assume_irreducible):
    raw = [base.raw_of(c) for c in coeffs]
    raw = poly_trim(base, raw)
    if len(raw) < 3:
        raise UserInputError("extension minimal polynomial must have degree >= 2")
    if raw[-1] != base.one:
        raise UserInputError("minimal polynomial must be monic")
    if not is_irreducible(base, raw, assume_irreducible=assume_irreducible):
        raise NotIrreducibleError(f"minimal polynomial {raw} factors over {base}")
    d = poly_deriv(base, raw)
    g = poly_gcd(base, raw, d) if d else list(raw)
    if len(g) != 1:
        raise InseparableError(f"gcd(m, m') has degree {len(g) - 1}; extension not separable")
    return raw


class GaloisField(_ExtensionMixin, Field):
    """F_{p^l} = F_p[x]/(m) with int-encoded raws (base-p digit strings).

    Small fields get full add/mul/inv lookup tables; larger ones fall back to
    digit arithmetic on demand.
    """

    def __init__(self, base, minpoly, name="x", assume_irreducible=False):
        if not isinstance(base, PrimeField):
            raise UserInputError("GaloisField base must be a prime field")
        self.base = base
        self.name = name
        self.minpoly = _check_minpoly(base, minpoly, assume_irreducible)
        self.p = base.p
        self.characteristic = base.p
        self.degree_over_base = len(self.minpoly) - 1
        self.degree = self.degree_over_base
        self.size = self.p**self.degree
        self.zero = 0
        self.one = 1
        # x^l = -(m_0 + ... + m_{l-1} x^{l-1})
        self._xl = [base.neg(c) for c in self.minpoly[:-1]]
        self._tables = None
        if self.size <= GALOIS_TABLE_MAX:
            self._build_tables()

    # digit <-> int encoding
    def _decode(self, a):
        out = []
        for _ in range(self.degree):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits):
        acc = 0
        for c in reversed(digits):
            acc = acc * self.p + c
        return acc

    def _mul_digits(self, da, db):
        F = self.base
        prod = [F.zero] * (2 * self.degree - 1)
        for i, a in enumerate(da):
            if a == 0:
                continue
            for j, b in enumerate(db):
                if b == 0:
                    continue
                prod[i + j] = F.add(prod[i + j], F.mul(a, b))
        # reduce degrees >= l downward using x^l expansion
        for k in range(len(prod) - 1, self.degree - 1, -1):
            c = prod[k]
            if c == 0:
                continue
            prod[k] = 0
            for i, m in enumerate(self._xl):
                prod[k - self.degree + i] = F.add(prod[k - self.degree + i], F.mul(c, m))
        return prod[: self.degree]

    def _build_tables(self):
        q = self.size
        digits = [self._decode(a) for a in range(q)]
        add_t = []
        mul_t = []
        for a in range(q):
            da = digits[a]
            row_a = []
            row_m = []
            for b in range(q):
                db = digits[b]
                row_a.append(self._encode([(x + y) % self.p for x, y in zip(da, db)]))
                row_m.append(self._encode(self._mul_digits(da, db)))
            add_t.append(row_a)
            mul_t.append(row_m)
        neg_t = [self._encode([(-x) % self.p for x in digits[a]]) for a in range(q)]
        inv_t = [0] * q
        for a in range(1, q):
            inv_t[a] = self.pow_no_table(a, q - 2)
        frob_t = [self.pow_no_table(a, self.p) for a in range(q)]
        self._tables = (add_t, mul_t, neg_t, inv_t, frob_t)
        self.add = lambda a, b: add_t[a][b]
        self.mul = lambda a, b: mul_t[a][b]
        self.neg = lambda a: neg_t[a]
        self.inv = self._inv_table
        self.frobenius = lambda a: frob_t[a]

    def _inv_table(self, a):
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        return self._tables[3][a]

    def __reduce__(self):
        # tables hold bound lambdas; rebuild them on unpickle instead
        return (GaloisField, (self.base, list(self.minpoly), self.name, True))

    def mul_no_table(self, a, b):
        return self._encode(self._mul_digits(self._decode(a), self._decode(b)))

    def pow_no_table(self, a, n):
        acc = 1
        base = a
        while n:
            if n & 1:
                acc = self._encode(self._mul_digits(self._decode(acc), self._decode(base)))
            base = self._encode(self._mul_digits(self._decode(base), self._decode(base)))
            n >>= 1
        return acc

    # generic (table-free) ops; overwritten by _build_tables when small
    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        da, db = self._decode(a), self._decode(b)
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a):
        if self.p == 2:
            return a
        return self._encode([(-x) % self.p for x in self._decode(a)])

    def mul(self, a, b):
        return self._encode(self._mul_digits(self._decode(a), self._decode(b)))

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        return self.pow_no_table(a, self.size - 2)

    def frobenius(self, a):
        return self.pow_no_table(a, self.p)

    def coerce(self, x):
        if isinstance(x, int):
            return self.embed_base(x % self.p)
        if isinstance(x, Fraction):
            return self.embed_base(self.base.coerce(x))
        if isinstance(x, Scalar):
            if x.field == self:
                return x.raw
            if x.field == self.base:
                return self.embed_base(x.raw)
        if isinstance(x, (tuple, list)):
            if len(x) != self.degree:
                raise UserInputError(
                    f"coordinate tuple of length {len(x)} for degree-{self.degree} extension"
                )
            return self.from_coordinates_raw([self.base.coerce(c) for c in x])
        raise UserInputError(f"cannot coerce {x!r} into {self!r}")

    def coordinates_raw(self, a):
        return self._decode(a)

    def from_coordinates_raw(self, coords):
        return self._encode([c % self.p for c in coords])

    def elements(self):
        return range(self.size)

    def random_raw(self, rng):
        return rng.randrange(self.size)

    def repr_raw(self, a):
        return "(" + ", ".join(str(c) for c in self._decode(a)) + ")"

    def __eq__(self, other):
        return (
            isinstance(other, GaloisField)
            and other.p == self.p
            and other.minpoly == self.minpoly
        )

    def __hash__(self):
        return hash(("GF", self.p, tuple(self.minpoly)))

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"


class NumberField(_ExtensionMixin, Field):
    """Q[x]/(m) with raws tuples of Fractions (power-basis coordinates)."""

    characteristic = 0
    size = None

    def __init__(self, minpoly, name="x", assume_irreducible=False):
        self.base = RationalField()
        self.name = name
        self.minpoly = _check_minpoly(self.base, minpoly, assume_irreducible)
        self.degree_over_base = len(self.minpoly) - 1
        self.degree = self.degree_over_base
        l = self.degree
        self.zero = tuple([Fraction(0)] * l)
        self.one = tuple([Fraction(1)] + [Fraction(0)] * (l - 1))
        # expansions of x^k for k = l .. 2l-2
        self._high = []
        cur = [-c for c in self.minpoly[:-1]]
        self._high.append(list(cur))
        for _ in range(l - 2):
            cur = [Fraction(0)] + cur
            top = cur.pop()
            if top:
                for i in range(l):
                    cur[i] += top * self._high[0][i]
            self._high.append(list(cur))

    def coerce(self, x):
        if isinstance(x, (int, Fraction)):
            return self.embed_base(Fraction(x))
        if isinstance(x, Scalar):
            if x.field == self:
                return x.raw
            if x.field == self.base:
                return self.embed_base(x.raw)
        if isinstance(x, (tuple, list)):
            if len(x) != self.degree:
                raise UserInputError(
                    f"coordinate tuple of length {len(x)} for degree-{self.degree} extension"
                )
            return tuple(Fraction(c) for c in x)
        raise UserInputError(f"cannot coerce {x!r} into {self!r}")

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        l = self.degree
        prod = [Fraction(0)] * (2 * l - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
        out = prod[:l]
        for k in range(l, 2 * l - 1):
            c = prod[k]
            if c:
                exp = self._high[k - l]
                for i in range(l):
                    out[i] += c * exp[i]
        return tuple(out)

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        Q = self.base
        g, u, _ = poly_ext_gcd(Q, list(a), self.minpoly)
        assert len(g) == 1
        u = poly_scale(Q, u, Q.inv(g[0]))
        u = (u + [Fraction(0)] * self.degree)[: self.degree]
        return tuple(u)

    def coordinates_raw(self, a):
        return list(a)

    def from_coordinates_raw(self, coords):
        return tuple(Fraction(c) for c in coords)

    def random_raw(self, rng):
        return tuple(Fraction(rng.randrange(-5, 6)) for _ in range(self.degree))

    def repr_raw(self, a):
        return "(" + ", ".join(str(c) for c in a) + ")"

    def __eq__(self, other):
        return isinstance(other, NumberField) and other.minpoly == self.minpoly

    def __hash__(self):
        return hash(("NF", tuple(self.minpoly)))

    def __repr__(self):
        return f"Q[{self.name}]/(deg {self.degree})"


# ---------------------------------------------------------------------------
# public constructors and checks
# ---------------------------------------------------------------------------


def field_from_string(text):
    """Parse "Fp(2)" or "Q" into a field."""
    t = text.strip()
    if t == "Q":
        return RationalField()
    if t.startswith("Fp(") and t.endswith(")"):
        inner = t[3:-1]
        try:
            p = int(inner)
        except ValueError:
            raise UserInputError(f"bad prime in field literal {text!r}") from None
        return PrimeField(p)
    raise UserInputError(f"unknown field literal {text!r} (expected 'Q' or 'Fp(p)')")


def extension_field(base, minpoly, name="x", assume_irreducible=False):
    """Simple separable extension of F_p or Q by a monic minimal polynomial.

    minpoly lists coefficients constant-term first and must be monic (the
    last entry is the leading 1).
    """
    if isinstance(base, PrimeField):
        return GaloisField(base, minpoly, name=name, assume_irreducible=assume_irreducible)
    if isinstance(base, RationalField):
        return NumberField(minpoly, name=name, assume_irreducible=assume_irreducible)
    raise UserInputError("extension towers must be flattened: base must be F_p or Q")


def check_separable(field):
    """Re-run the separability test gcd(m, m') = const for an extension field."""
    if not field.is_extension:
        raise UserInputError(f"{field} is not an extension field")
    base = field.base
    m = field.minpoly
    d = poly_deriv(base, m)
    if not d:
        return False
    return len(poly_gcd(base, m, d)) == 1


def coordinates(scalar):
    """Coordinates of an extension scalar in the power basis, as base Scalars."""
    F = scalar.field
    if not F.is_extension:
        raise UserInputError(f"{F} is not an extension field; no coordinates to take")
    return [Scalar(F.base, c) for c in F.coordinates_raw(scalar.raw)]


GF2 = PrimeField(2)
