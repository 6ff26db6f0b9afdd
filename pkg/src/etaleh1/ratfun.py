"""The rational function field k(x) as a black-box field context.

Elements are pairs (num, den) of coefficient tuples over the finite base
field, normalised so that den is monic and gcd(num, den) = 1.  The context
object satisfies the same raw-element protocol as the finite fields, so the
generic linear algebra works over k(x) unchanged.  The height of num/den is
max(deg num, deg den).
"""

from .fields import (
    Field,
    poly_add,
    poly_deg,
    poly_divmod,
    poly_gcd,
    poly_monic,
    poly_mul,
    poly_neg,
    poly_scale,
    poly_sub,
    poly_trim_f,
)


class RatFunField(Field):
    """k(x) over a finite field k; raw elements are reduced (num, den) pairs."""

    def __init__(self, base, var="x"):
        self.base = base
        self.var = var
        self.p = base.p
        self.order = None  # infinite
        self.degree = None

    def normalize(self, num, den):
        F = self.base
        num = poly_trim_f(F, num)
        den = poly_trim_f(F, den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return ((), (F.one(),))
        g = poly_gcd(F, num, den)
        if poly_deg(g) > 0:
            num = poly_divmod(F, num, g)[0]
            den = poly_divmod(F, den, g)[0]
        lc = den[-1]
        if lc != F.one():
            inv = F.inv(lc)
            num = poly_scale(F, inv, num)
            den = poly_scale(F, inv, den)
        return (num, den)

    def from_poly(self, num):
        return self.normalize(num, (self.base.one(),))

    def x(self):
        return self.from_poly((self.base.zero(), self.base.one()))

    def zero(self):
        return ((), (self.base.one(),))

    def one(self):
        return ((self.base.one(),), (self.base.one(),))

    def add(self, a, b):
        F = self.base
        n = poly_add(F, poly_mul(F, a[0], b[1]), poly_mul(F, b[0], a[1]))
        return self.normalize(n, poly_mul(F, a[1], b[1]))

    def neg(self, a):
        return (poly_neg(self.base, a[0]), a[1])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        F = self.base
        return self.normalize(poly_mul(F, a[0], b[0]), poly_mul(F, a[1], b[1]))

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError("inverse of zero rational function")
        return self.normalize(a[1], a[0])

    def is_zero(self, a):
        return not a[0]

    def from_int(self, n):
        c = self.base.from_int(n)
        return ((c,), (self.base.one(),)) if not self.base.is_zero(c) else self.zero()

    def from_base(self, c):
        return self.normalize((c,), (self.base.one(),))

    def height(self, a):
        return max(poly_deg(a[0]), poly_deg(a[1]), 0)

    def is_polynomial(self, a):
        return poly_deg(a[1]) == 0

    def numerator(self, a):
        return a[0]

    def denominator(self, a):
        return a[1]

    def evaluate(self, a, point):
        """Value at x = point (a base-field element); None at a pole."""
        from .fields import poly_eval

        F = self.base
        d = poly_eval(F, a[1], point)
        if F.is_zero(d):
            return None
        return F.mul(poly_eval(F, a[0], point), F.inv(d))

    def swap_chart(self, a):
        """The substitution x -> 1/x, mapping k(x) to itself."""
        F = self.base
        num, den = a
        if not num:
            return self.zero()
        dn, dd = poly_deg(num), poly_deg(den)
        m = max(dn, dd)
        # f(1/x) = x^(m-dn) rev(num) / x^(m-dd) rev(den)
        rn = tuple(reversed(num))
        rd = tuple(reversed(den))
        rn = ((F.zero(),) * (m - dn)) + rn if m > dn else rn
        rd = ((F.zero(),) * (m - dd)) + rd if m > dd else rd
        return self.normalize(tuple(rn), tuple(rd))

    def pth_root(self, a):
        """The p-th root if a is a p-th power in k(x); None otherwise."""
        F = self.base
        p = self.p

        def root(poly):
            if not poly:
                return ()
            if (len(poly) - 1) % p != 0:
                return None
            out = []
            for i, c in enumerate(poly):
                if i % p == 0:
                    out.append(F.frobenius_root(c))
                elif not F.is_zero(c):
                    return None
            return tuple(out)

        # normalise denominators: a = num/den = num*den^(p-1) / den^p
        num, den = a
        num2 = num
        for _ in range(p - 1):
            num2 = poly_mul(F, num2, den)
        rn = root(num2)
        if rn is None:
            return None
        return self.normalize(rn, den)

    def to_int(self, a):
        raise TypeError("k(x) elements have no canonical integer encoding")

    def __repr__(self):
        return f"RatFun({self.base!r}, {self.var})"

    def __eq__(self, other):
        return isinstance(other, RatFunField) and other.base == self.base

    def __hash__(self):
        return hash(("RatFunField", self.base))

    def text(self, a):
        from .fields import poly_str

        num, den = a
        if not num:
            return "0"
        ns = poly_str(self.base, num, self.var)
        if poly_deg(den) == 0:
            return ns
        return f"({ns})/({poly_str(self.base, den, self.var)})"

    def parse(self, text):
        """Parse `num` or `(num)/(den)` in the univariate poly syntax."""
        text = text.strip()
        if text.startswith("(") and ")/(" in text:
            left, right = text[1:-1].split(")/(")
            return self.normalize(_parse_upoly(self.base, left, self.var),
                                  _parse_upoly(self.base, right, self.var))
        return self.from_poly(_parse_upoly(self.base, text, self.var))


def _parse_upoly(F, text, var):
    text = text.strip()
    if text == "0":
        return ()
    coeffs = {}
    for chunk in text.split("+"):
        parts = chunk.strip().split("*")
        if parts[0].replace("-", "").isdigit():
            c = F.from_int(int(parts[0]))
            rest = parts[1:]
        else:
            c = F.one()
            rest = parts
        e = 0
        for factor in rest:
            if "^" in factor:
                name, ex = factor.split("^")
                assert name.strip() == var
                e += int(ex)
            else:
                assert factor.strip() == var
                e += 1
        coeffs[e] = F.add(coeffs.get(e, F.zero()), c)
    out = [F.zero()] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return poly_trim_f(F, out)
