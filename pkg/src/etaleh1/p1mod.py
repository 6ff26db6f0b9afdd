"""Standard modules O(a) on P^1 and their morphism calculus.

A morphism O(b) -> O(a) of standard modules is an s x t matrix whose (i,j)
entry is homogeneous of degree a_i - b_j in x, y (zero when that degree is
negative).  Entries are BiPoly values: coefficient vectors indexed by the
x-exponent, with coefficients in a PolyRing -- a 0-variable ring for
concrete curves, or a ring of system variables when morphisms are built
symbolically for the groupoid emitter.

Identity, composition, direct sum, tensor product, dual, and exterior
powers are the usual matrix operations with degree bookkeeping; fibers at 0
and infinity substitute (0,1) and (1,0) for (x,y), and the first
infinitesimal neighbourhood at infinity substitutes x = 1, y^2 = 0.
"""

from .errors import TypeMismatch

# ---------------------------------------------------------------------------
# type sequences


def type_len(a):
    return len(a)


def type_sum(a):
    return sum(a)


def canonical_type(a):
    """Non-increasing order, the canonical form of a type sequence."""
    return tuple(sorted(a, reverse=True))


def tensor_type(a, b):
    """Type of O(a) (x) O(b); index (i,j) sits at position i*len(b)+j."""
    return tuple(ai + bj for ai in a for bj in b)


def hom_space_dim(a, b):
    """N(a,b) = sum max(a_i - b_j + 1, 0): free coefficients of a StdHom b -> a."""
    return sum(max(ai - bj + 1, 0) for ai in a for bj in b)


def hom_slots(a, b):
    """Coefficient slots of a StdHom of shape (dst=a, src=b), canonical order.

    Yields (i, j, x_exponent) row-major with x-exponent ascending; the count
    equals hom_space_dim(a, b).
    """
    out = []
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            d = ai - bj
            for e in range(d + 1):
                out.append((i, j, e))
    return out


# ---------------------------------------------------------------------------
# homogeneous bivariate polynomials over a PolyRing


class BiPoly:
    """Homogeneous polynomial of fixed degree in x, y over a coefficient ring.

    coeffs[i] is the coefficient of x^i y^(deg-i); a negative degree forces
    the zero polynomial (empty coefficient tuple).
    """

    __slots__ = ("ring", "deg", "coeffs")

    def __init__(self, ring, deg, coeffs=None):
        self.ring = ring
        self.deg = deg
        if deg < 0:
            self.coeffs = ()
        elif coeffs is None:
            self.coeffs = tuple(ring.zero() for _ in range(deg + 1))
        else:
            coeffs = tuple(coeffs)
            assert len(coeffs) == deg + 1
            self.coeffs = coeffs

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other):
        assert self.deg == other.deg or self.is_zero() or other.is_zero()
        if self.deg < 0:
            return other
        if other.deg < 0:
            return self
        return BiPoly(self.ring, self.deg, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return BiPoly(self.ring, self.deg, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BiPoly):
            if self.deg < 0 or other.deg < 0:
                return BiPoly(self.ring, self.deg + other.deg if self.deg + other.deg < 0 else -1)
            deg = self.deg + other.deg
            out = [self.ring.zero() for _ in range(deg + 1)]
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for j, b in enumerate(other.coeffs):
                    if not b.is_zero():
                        out[i + j] = out[i + j] + a * b
            return BiPoly(self.ring, deg, tuple(out))
        # coefficient-ring scalar (Poly)
        return BiPoly(self.ring, self.deg, tuple(c * other for c in self.coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, BiPoly)
            and (self.coeffs == other.coeffs or (self.is_zero() and other.is_zero()))
        )

    def __hash__(self):
        return hash(self.coeffs)

    def at_zero(self):
        """Value at (x,y) = (0,1)."""
        return self.coeffs[0] if self.deg >= 0 else self.ring.zero()

    def at_infty(self):
        """Value at (x,y) = (1,0)."""
        return self.coeffs[self.deg] if self.deg >= 0 else self.ring.zero()

    def at_infty2(self):
        """Value on the first infinitesimal neighbourhood: pair (c0, c1) = c0 + c1*y."""
        if self.deg < 0:
            return (self.ring.zero(), self.ring.zero())
        c0 = self.coeffs[self.deg]
        c1 = self.coeffs[self.deg - 1] if self.deg >= 1 else self.ring.zero()
        return (c0, c1)

    def substitute_y1(self):
        """Dehomogenise: the univariate polynomial p(x, 1) as a coefficient list."""
        return list(self.coeffs)

    def __repr__(self):
        if self.deg < 0:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = []
            if i:
                mono.append(f"x^{i}" if i > 1 else "x")
            if self.deg - i:
                mono.append(f"y^{self.deg - i}" if self.deg - i > 1 else "y")
            body = "*".join(mono)
            parts.append(f"({c}){'*' + body if body else ''}")
        return " + ".join(parts) if parts else "0"


def bipoly_const(ring, c_poly):
    return BiPoly(ring, 0, (c_poly,))


def bipoly_monomial(ring, deg, x_exp, coeff=None):
    """coeff * x^x_exp * y^(deg - x_exp)."""
    coeffs = [ring.zero()] * (deg + 1)
    coeffs[x_exp] = ring.one() if coeff is None else coeff
    return BiPoly(ring, deg, tuple(coeffs))


# ---------------------------------------------------------------------------
# morphisms of standard modules


class StdHom:
    """Morphism O(src_type) -> O(dst_type), a matrix of BiPoly entries."""

    __slots__ = ("ring", "src_type", "dst_type", "entries")

    def __init__(self, ring, src_type, dst_type, entries):
        self.ring = ring
        self.src_type = tuple(src_type)
        self.dst_type = tuple(dst_type)
        self.entries = entries
        assert len(entries) == len(self.dst_type)
        for i, row in enumerate(entries):
            assert len(row) == len(self.src_type)
            for j, e in enumerate(row):
                want = self.dst_type[i] - self.src_type[j]
                assert e.deg == want or (want < 0 and e.deg < 0), (
                    f"entry ({i},{j}) has degree {e.deg}, want {want}"
                )

    @staticmethod
    def zero(ring, src_type, dst_type):
        entries = [
            [BiPoly(ring, ai - bj) for bj in src_type]
            for ai in dst_type
        ]
        return StdHom(ring, src_type, dst_type, entries)

    @staticmethod
    def identity(ring, a):
        h = StdHom.zero(ring, a, a)
        for i in range(len(a)):
            h.entries[i][i] = bipoly_monomial(ring, 0, 0)
        return h

    @staticmethod
    def from_coeffs(ring, src_type, dst_type, coeff_polys):
        """Build from coefficient values listed in hom_slots order."""
        slots = hom_slots(dst_type, src_type)
        assert len(coeff_polys) == len(slots)
        h = StdHom.zero(ring, src_type, dst_type)
        for (i, j, e), c in zip(slots, coeff_polys):
            d = dst_type[i] - src_type[j]
            coeffs = list(h.entries[i][j].coeffs)
            coeffs[e] = coeffs[e] + c
            h.entries[i][j] = BiPoly(ring, d, tuple(coeffs))
        return h

    def coeff_list(self):
        """Coefficient values in hom_slots order (inverse of from_coeffs)."""
        out = []
        for i, j, e in hom_slots(self.dst_type, self.src_type):
            out.append(self.entries[i][j].coeffs[e])
        return out

    def __add__(self, other):
        self._same_shape(other)
        entries = [
            [a + b for a, b in zip(ra, rb)]
            for ra, rb in zip(self.entries, other.entries)
        ]
        return StdHom(self.ring, self.src_type, self.dst_type, entries)

    def __neg__(self):
        entries = [[-e for e in row] for row in self.entries]
        return StdHom(self.ring, self.src_type, self.dst_type, entries)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c_poly):
        entries = [[e * c_poly for e in row] for row in self.entries]
        return StdHom(self.ring, self.src_type, self.dst_type, entries)

    def _same_shape(self, other):
        if self.src_type != other.src_type or self.dst_type != other.dst_type:
            raise TypeMismatch(
                f"shape ({self.dst_type})<-({self.src_type}) vs ({other.dst_type})<-({other.src_type})"
            )

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other):
        return (
            isinstance(other, StdHom)
            and self.src_type == other.src_type
            and self.dst_type == other.dst_type
            and all(a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb))
        )


def compose(f, g):
    """f o g for g: c -> b and f: b -> a."""
    if f.src_type != g.dst_type:
        raise TypeMismatch(f"compose: {f.src_type} != {g.dst_type}")
    ring = f.ring
    out = StdHom.zero(ring, g.src_type, f.dst_type)
    for i in range(len(f.dst_type)):
        for j in range(len(g.src_type)):
            acc = out.entries[i][j]
            for k in range(len(f.src_type)):
                e1 = f.entries[i][k]
                e2 = g.entries[k][j]
                if e1.deg < 0 or e2.deg < 0 or e1.is_zero() or e2.is_zero():
                    continue
                acc = acc + e1 * e2
            out.entries[i][j] = acc
    return out


def direct_sum(f, g):
    ring = f.ring
    src = f.src_type + g.src_type
    dst = f.dst_type + g.dst_type
    out = StdHom.zero(ring, src, dst)
    for i, row in enumerate(f.entries):
        for j, e in enumerate(row):
            out.entries[i][j] = e
    oi, oj = len(f.dst_type), len(f.src_type)
    for i, row in enumerate(g.entries):
        for j, e in enumerate(row):
            out.entries[oi + i][oj + j] = e
    return out


def tensor(f, g):
    """Kronecker product with index (i,k) -> i*len(g)+k on both sides."""
    ring = f.ring
    src = tensor_type(f.src_type, g.src_type)
    dst = tensor_type(f.dst_type, g.dst_type)
    out = StdHom.zero(ring, src, dst)
    sg, tg = len(g.dst_type), len(g.src_type)
    for i1, row1 in enumerate(f.entries):
        for j1, e1 in enumerate(row1):
            if e1.deg < 0 or e1.is_zero():
                continue
            for i2, row2 in enumerate(g.entries):
                for j2, e2 in enumerate(row2):
                    if e2.deg < 0 or e2.is_zero():
                        continue
                    out.entries[i1 * sg + i2][j1 * tg + j2] = e1 * e2
    return out


def dual(f):
    """Transpose: O(-a) -> O(-b) for f: O(b) -> O(a)."""
    ring = f.ring
    src = tuple(-ai for ai in f.dst_type)
    dst = tuple(-bj for bj in f.src_type)
    out = StdHom.zero(ring, src, dst)
    for i, row in enumerate(f.entries):
        for j, e in enumerate(row):
            out.entries[j][i] = e
    return out


def _subsets(n, k):
    def rec(start, chosen):
        if len(chosen) == k:
            yield tuple(chosen)
            return
        for v in range(start, n):
            chosen.append(v)
            yield from rec(v + 1, chosen)
            chosen.pop()

    yield from rec(0, [])


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, clen = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


def exterior_power(f, k):
    """Lambda^k f on k-th exterior powers, via k x k minors."""
    ring = f.ring
    rows = list(_subsets(len(f.dst_type), k))
    cols = list(_subsets(len(f.src_type), k))
    src = tuple(sum(f.src_type[j] for j in c) for c in cols)
    dst = tuple(sum(f.dst_type[i] for i in r) for r in rows)
    out = StdHom.zero(ring, src, dst)
    import itertools

    for ri, r in enumerate(rows):
        for ci, c in enumerate(cols):
            deg = dst[ri] - src[ci]
            acc = BiPoly(ring, deg)
            for perm in itertools.permutations(range(k)):
                term = None
                ok = True
                for idx in range(k):
                    e = f.entries[r[idx]][c[perm[idx]]]
                    if e.deg < 0 or e.is_zero():
                        ok = False
                        break
                    term = e if term is None else term * e
                if not ok:
                    continue
                sign = _perm_sign(list(perm))
                if sign < 0:
                    term = -term
                if k == 0:
                    term = bipoly_monomial(ring, 0, 0)
                acc = acc + term
            out.entries[ri][ci] = acc
    return out


def det(f):
    """Determinant of a square StdHom: a map O(sum b) -> O(sum a)."""
    n = len(f.src_type)
    if len(f.dst_type) != n:
        raise TypeMismatch("determinant of a non-square morphism")
    return exterior_power(f, n)


def swap_tensor(ring, a, b):
    """The symmetry O(a (x) b) -> O(b (x) a), a permutation morphism."""
    src = tensor_type(a, b)
    dst = tensor_type(b, a)
    out = StdHom.zero(ring, src, dst)
    la, lb = len(a), len(b)
    for i in range(la):
        for j in range(lb):
            out.entries[j * la + i][i * lb + j] = bipoly_monomial(ring, 0, 0)
    return out


def permutation_hom(ring, a, perm):
    """O(a) -> O(a permuted): basis vector j goes to slot perm[j]."""
    dst = [0] * len(a)
    for j in range(len(a)):
        dst[perm[j]] = a[j]
    dst = tuple(dst)
    out = StdHom.zero(ring, a, dst)
    for j in range(len(a)):
        out.entries[perm[j]][j] = bipoly_monomial(ring, 0, 0)
    return out


def fiber_at_0(f):
    """Scalar matrix (over the coefficient ring) at (x,y) = (0,1)."""
    return [[e.at_zero() for e in row] for row in f.entries]


def fiber_at_infty(f):
    """Scalar matrix at (x,y) = (1,0)."""
    return [[e.at_infty() for e in row] for row in f.entries]


def inf_nbhd_infty(f):
    """Matrix over R[y]/(y^2) at x = 1: entries are (c0, c1) pairs."""
    return [[e.at_infty2() for e in row] for row in f.entries]


def equations_of_vanishing(h):
    """All coefficient Polys of a StdHom, for emitting `h = 0` equations."""
    out = []
    for row in h.entries:
        for e in row:
            for c in e.coeffs:
                if not c.is_zero():
                    out.append(c)
    return out
