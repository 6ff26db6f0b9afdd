"""Exact arithmetic in finite fields and univariate polynomials over them.

A field is represented by a context object (:class:`PrimeField`,
:class:`ExtField`, or :class:`~etaleh1.algebras.AlgebraField`) exposing the
black-box operation set: equality, negation, inversion, addition,
multiplication, inverse Frobenius, and univariate factorisation.  Field
*elements* are plain immutable Python data (ints for prime fields, tuples of
ints for extensions), which keeps inner loops cheap; all semantics live in
the context object.

Univariate polynomials over a field F are coefficient tuples
``(c0, c1, ..., cn)`` with ``cn != 0`` (the zero polynomial is ``()``), and
the functions below take the field as first argument.

Factorisation is deterministic distinct-degree decomposition followed by
equal-degree splitting driven by a fixed seeded pseudorandom stream, so
repeated runs produce identical output.  Factors are returned in a canonical
order: graded, then lexicographic on coefficient vectors mapped to integers.
"""

import random
from dataclasses import dataclass

from .errors import ZeroPolynomial


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Abstract black-box field context.

    Subclasses define ``p`` (characteristic), ``order``, ``degree`` (over the
    prime field), and the raw-element operations.  Raw elements must be
    hashable and comparable for equality.
    """

    p = None
    order = None
    degree = None

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero()

    def from_int(self, n):
        """Image of the integer n under Z -> F."""
        raise NotImplementedError

    def to_int(self, a):
        """Injective encoding of elements into 0..order-1, used for canonical sorts."""
        raise NotImplementedError

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one()
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def frobenius(self, a):
        """a -> a^p."""
        return self.pow(a, self.p)

    def frobenius_root(self, a):
        """The unique b with b^p = a; inverse of Frobenius on a finite field."""
        return self.pow(a, self.order // self.p)

    def elements(self):
        """Iterate over all field elements (small fields only)."""
        for n in range(self.order):
            yield self.element_from_index(n)

    def element_from_index(self, n):
        raise NotImplementedError

    def rand(self, rng):
        return self.element_from_index(rng.randrange(self.order))


class PrimeField(Field):
    """F_p with elements the ints 0..p-1."""

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.order = p
        self.degree = 1

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return -a % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def from_int(self, n):
        return n % self.p

    def to_int(self, a):
        return a % self.p

    def element_from_index(self, n):
        return n % self.p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


class ExtField(Field):
    """F_{p^m} = F_p[z]/(modulus), elements length-m int tuples (low degree first)."""

    def __init__(self, p, modulus):
        base = PrimeField(p)
        modulus = poly_monic(base, poly_trim_f(base, tuple(c % p for c in modulus)))
        m = len(modulus) - 1
        if m < 1:
            raise ValueError("modulus must have positive degree")
        if not is_irreducible(base, modulus):
            raise ValueError("modulus is not irreducible")
        self.p = p
        self.base = base
        self.modulus = modulus
        self.degree = m
        self.order = p ** m
        # reduction table for z^m .. z^(2m-2)
        self._red = [self._pow_z(m + i) for i in range(m - 1)]

    def _pow_z(self, e):
        # z^e reduced mod modulus, as length-m tuple
        poly = ((0,) * e) + (1,)
        _, r = poly_divmod(self.base, poly, self.modulus)
        return tuple(r) + (0,) * (self.degree - len(r))

    def zero(self):
        return (0,) * self.degree

    def one(self):
        return (1,) + (0,) * (self.degree - 1)

    def gen(self):
        """The class of z."""
        if self.degree == 1:
            return self.zero()
        return (0, 1) + (0,) * (self.degree - 2)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def mul(self, a, b):
        p, m = self.p, self.degree
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = [c % p for c in prod[:m]]
        for i in range(m, 2 * m - 1):
            c = prod[i] % p
            if c:
                red = self._red[i - m]
                for j in range(m):
                    out[j] = (out[j] + c * red[j]) % p
        return tuple(out)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        f = poly_trim_f(self.base, a)
        g, s, _ = poly_xgcd(self.base, f, self.modulus)
        assert len(g) == 1
        c = self.base.inv(g[0])
        s = tuple(self.base.mul(c, x) for x in s)
        return s + (0,) * (self.degree - len(s))

    def is_zero(self, a):
        return all(x % self.p == 0 for x in a)

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.degree - 1)

    def to_int(self, a):
        n = 0
        for c in reversed(a):
            n = n * self.p + (c % self.p)
        return n

    def element_from_index(self, n):
        coeffs = []
        for _ in range(self.degree):
            coeffs.append(n % self.p)
            n //= self.p
        return tuple(coeffs)

    def embed_base(self, a):
        """Image of a in F_p under the canonical inclusion F_p -> F_{p^m}."""
        return self.from_int(a)

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.p == self.p
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ExtField", self.p, self.modulus))


@dataclass(frozen=True)
class FieldSpec:
    """Serializable description of F_{p^m}: prime p, degree m, monic modulus.

    Line format ``p=<prime>;m=<deg>;mod=<c0,...,cm>`` is used by every module
    input.  For m = 1 the modulus is the polynomial z itself.
    """

    p: int
    m: int
    modulus: tuple

    def build(self):
        if self.m == 1:
            return PrimeField(self.p)
        return ExtField(self.p, self.modulus)

    def serialize(self):
        mods = ",".join(str(c) for c in self.modulus)
        return f"p={self.p};m={self.m};mod={mods}"

    @staticmethod
    def parse(line):
        parts = dict(item.split("=", 1) for item in line.strip().split(";"))
        p = int(parts["p"])
        m = int(parts["m"])
        modulus = tuple(int(c) for c in parts["mod"].split(","))
        if len(modulus) != m + 1:
            raise ValueError("modulus length does not match degree")
        return FieldSpec(p, m, modulus)

    @staticmethod
    def for_order(p, m):
        """Canonical spec for F_{p^m}: smallest monic irreducible in graded-lex order."""
        if m == 1:
            return FieldSpec(p, 1, (0, 1))
        base = PrimeField(p)
        return FieldSpec(p, m, find_irreducible(base, m))


def field_for_order(p, m):
    return FieldSpec.for_order(p, m).build()


# ---------------------------------------------------------------------------
# univariate polynomials over a Field: coefficient tuples, low degree first


def poly_trim_f(F, coeffs):
    coeffs = list(coeffs)
    while coeffs and F.is_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


def poly_deg(f):
    return len(f) - 1


def poly_is_zero(f):
    return len(f) == 0


def poly_const(F, c):
    return () if F.is_zero(c) else (c,)


def poly_x(F):
    return (F.zero(), F.one())


def poly_add(F, f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = F.add(out[i], c)
    return poly_trim_f(F, out)


def poly_neg(F, f):
    return tuple(F.neg(c) for c in f)


def poly_sub(F, f, g):
    return poly_add(F, f, poly_neg(F, g))


def poly_scale(F, c, f):
    if F.is_zero(c):
        return ()
    return poly_trim_f(F, tuple(F.mul(c, a) for a in f))


def poly_mul(F, f, g):
    if not f or not g:
        return ()
    out = [F.zero()] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if not F.is_zero(a):
            for j, b in enumerate(g):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return poly_trim_f(F, out)


def poly_divmod(F, f, g):
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    f = list(f)
    dg = len(g) - 1
    inv_lead = F.inv(g[-1])
    q = [F.zero()] * max(0, len(f) - dg)
    while len(f) - 1 >= dg and f:
        c = F.mul(f[-1], inv_lead)
        k = len(f) - 1 - dg
        q[k] = c
        for i, b in enumerate(g):
            f[k + i] = F.sub(f[k + i], F.mul(c, b))
        while f and F.is_zero(f[-1]):
            f.pop()
    return poly_trim_f(F, q), poly_trim_f(F, f)


def poly_mod(F, f, g):
    return poly_divmod(F, f, g)[1]


def poly_monic(F, f):
    if not f:
        return f
    if f[-1] == F.one():
        return f
    return poly_scale(F, F.inv(f[-1]), f)


def poly_gcd(F, f, g):
    while g:
        f, g = g, poly_mod(F, f, g)
    return poly_monic(F, f)


def poly_xgcd(F, f, g):
    """Return (d, s, t) monic with s*f + t*g = d = gcd(f, g)."""
    r0, r1 = f, g
    s0, s1 = (F.one(),), ()
    t0, t1 = (), (F.one(),)
    while r1:
        q, r = poly_divmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(F, s0, poly_mul(F, q, s1))
        t0, t1 = t1, poly_sub(F, t0, poly_mul(F, q, t1))
    if not r0:
        return (), s0, t0
    c = F.inv(r0[-1])
    return poly_scale(F, c, r0), poly_scale(F, c, s0), poly_scale(F, c, t0)


def poly_eval(F, f, x):
    acc = F.zero()
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def poly_deriv(F, f):
    out = []
    for i in range(1, len(f)):
        out.append(F.mul(F.from_int(i), f[i]))
    return poly_trim_f(F, out)


def poly_pow_mod(F, f, n, m):
    result = (F.one(),)
    base = poly_mod(F, f, m)
    while n:
        if n & 1:
            result = poly_mod(F, poly_mul(F, result, base), m)
        base = poly_mod(F, poly_mul(F, base, base), m)
        n >>= 1
    return result


def poly_from_ints(F, ints):
    return poly_trim_f(F, tuple(F.from_int(n) for n in ints))


def poly_key(F, f):
    """Canonical sort key: (degree, coefficient integers from the top down)."""
    return (len(f), tuple(F.to_int(c) for c in reversed(f)))


def poly_str(F, f, var="x"):
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if F.is_zero(c):
            continue
        cs = str(F.to_int(c))
        if i == 0:
            terms.append(cs)
        elif i == 1:
            terms.append(f"{cs}*{var}" if cs != "1" else var)
        else:
            terms.append(f"{cs}*{var}^{i}" if cs != "1" else f"{var}^{i}")
    return "+".join(terms)


# ---------------------------------------------------------------------------
# irreducibility and factorisation


def is_irreducible(F, f):
    """Rabin test: x^(q^n) = x mod f and gcd(x^(q^(n/r)) - x, f) = 1 for prime r | n."""
    n = poly_deg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    q = F.order
    x = poly_x(F)
    h = poly_pow_mod(F, x, q ** n, f)
    if poly_sub(F, h, poly_mod(F, x, f)):
        return False
    for r in _prime_divisors(n):
        h = poly_pow_mod(F, x, q ** (n // r), f)
        g = poly_gcd(F, poly_sub(F, h, x), f)
        if poly_deg(g) != 0:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def find_irreducible(F, n):
    """Smallest monic irreducible of degree n in graded-lex enumeration order."""
    for idx in range(F.order ** n):
        coeffs = []
        m = idx
        for _ in range(n):
            coeffs.append(F.element_from_index(m % F.order))
            m //= F.order
        f = tuple(coeffs) + (F.one(),)
        if is_irreducible(F, f):
            return f
    raise AssertionError("no irreducible polynomial found")


def _squarefree_decompose(F, f):
    """Yield (squarefree g, multiplicity e) with f = prod g^e, f monic."""
    out = {}

    def accumulate(g, mult):
        if poly_deg(g) > 0:
            out[g] = out.get(g, 0) + mult

    def rec(f, mult):
        if poly_deg(f) <= 0:
            return
        df = poly_deriv(F, f)
        if poly_is_zero(df):
            # f = h(x^p); over a finite field take p-th roots of coefficients
            p = F.p
            h = tuple(F.frobenius_root(f[i]) for i in range(0, len(f), p))
            rec(poly_trim_f(F, h), mult * p)
            return
        g = poly_gcd(F, f, df)
        w = poly_divmod(F, f, g)[0]  # product of squarefree part
        i = 1
        while poly_deg(w) > 0:
            y = poly_gcd(F, w, g)
            z = poly_divmod(F, w, y)[0]
            accumulate(z, mult * i)
            w = y
            g = poly_divmod(F, g, y)[0]
            i += 1
        if poly_deg(g) > 0:
            rec(g, mult)

    rec(poly_monic(F, f), 1)
    return sorted(out.items(), key=lambda it: poly_key(F, it[0]))


def _distinct_degree(F, f):
    """Split squarefree monic f into products of irreducibles of fixed degree."""
    q = F.order
    out = []
    x = poly_x(F)
    h = poly_mod(F, x, f)
    d = 0
    rest = f
    while poly_deg(rest) > 2 * d:
        d += 1
        h = poly_pow_mod(F, h, q, rest)
        g = poly_gcd(F, poly_sub(F, h, poly_mod(F, x, rest)), rest)
        if poly_deg(g) > 0:
            out.append((g, d))
            rest = poly_divmod(F, rest, g)[0]
            h = poly_mod(F, h, rest)
    if poly_deg(rest) > 0:
        out.append((rest, poly_deg(rest)))
    return out


def _equal_degree_split(F, f, d, rng):
    """Cantor-Zassenhaus split of monic squarefree f, all factors of degree d."""
    n = poly_deg(f)
    if n == d:
        return [f]
    q = F.order
    while True:
        h = poly_trim_f(F, tuple(F.rand(rng) for _ in range(n)))
        if poly_deg(h) < 1:
            continue
        g = poly_gcd(F, h, f)
        if 0 < poly_deg(g) < n:
            pass  # lucky gcd split
        elif F.p == 2:
            # trace map over F_{2^(m*d)}
            t = poly_mod(F, h, f)
            acc = t
            for _ in range(F.degree * d - 1):
                t = poly_pow_mod(F, t, 2, f)
                acc = poly_add(F, acc, t)
            g = poly_gcd(F, acc, f)
        else:
            e = (q ** d - 1) // 2
            t = poly_pow_mod(F, h, e, f)
            g = poly_gcd(F, poly_sub(F, t, (F.one(),)), f)
        if 0 < poly_deg(g) < n:
            left = _equal_degree_split(F, g, d, rng)
            right = _equal_degree_split(F, poly_divmod(F, f, g)[0], d, rng)
            return left + right


def factor_univariate(F, f, seed=0):
    """Factor f into monic irreducibles over the finite field F.

    Returns (lead, [(factor, multiplicity), ...]) with the factor list in
    canonical order and lead * prod(factor^mult) = f exactly.
    """
    if poly_is_zero(f):
        raise ZeroPolynomial("cannot factor the zero polynomial")
    lead = f[-1]
    f = poly_monic(F, f)
    rng = random.Random((seed, F.order, poly_key(F, f)).__repr__())
    factors = []
    for g, mult in _squarefree_decompose(F, f):
        for h, d in _distinct_degree(F, g):
            for irr in _equal_degree_split(F, h, d, rng):
                factors.append((poly_monic(F, irr), mult))
    factors.sort(key=lambda it: poly_key(F, it[0]))
    return lead, factors


def poly_roots(F, f):
    """Roots of f in F, each listed once, in canonical element order."""
    _, factors = factor_univariate(F, f)
    roots = [F.neg(g[0]) for g, _ in factors if poly_deg(g) == 1]
    return sorted(roots, key=F.to_int)
