"""Full-rank k[x]-lattices inside K = k(x)^n, via polynomial Hermite forms.

A lattice is stored as a denominator d in k[x] and an n x n column basis
matrix H over k[x] in column Hermite normal form: the lattice is
(1/d) * (k[x]-span of the columns).  This is the workhorse for orders and
ideals in function fields: sums, products, membership, indices and
idealizer-style computations all reduce to polynomial column reduction.
"""

from .fields import (
    poly_deg,
    poly_divmod,
    poly_gcd,
    poly_monic,
    poly_mul,
    poly_scale,
    poly_sub,
    poly_trim_f,
)


def _col_nonzero(col):
    return any(len(c) > 0 for c in col)


def hermite_columns(F, cols, n):
    """Column HNF of a list of length-n k[x]-vectors.

    Returns a list of at most n columns, lower triangular in the sense that
    column i has its first nonzero entry in some row r_i with r_0 < r_1 < ..;
    pivots are monic and entries to the right of each pivot row are reduced.
    """
    work = [list(c) for c in cols if _col_nonzero(c)]
    out = []
    row = 0
    while row < n and work:
        nonzero_here = [c for c in work if len(c[row]) > 0]
        zero_here = [c for c in work if len(c[row]) == 0]
        if not nonzero_here:
            work = zero_here
            row += 1
            continue
        # repeatedly reduce by the minimal-degree pivot in this row
        while len(nonzero_here) > 1:
            nonzero_here.sort(key=lambda c: poly_deg(c[row]))
            piv = nonzero_here[0]
            kept = [piv]
            for c in nonzero_here[1:]:
                q, _ = poly_divmod(F, c[row], piv[row])
                if q != ():
                    for i in range(n):
                        c[i] = poly_sub(F, c[i], poly_mul(F, q, piv[i]))
                if len(c[row]) > 0:
                    kept.append(c)
                elif _col_nonzero(c):
                    zero_here.append(c)
            nonzero_here = kept
        pivcol = nonzero_here[0]
        lc = pivcol[row][-1]
        if lc != F.one():
            inv = F.inv(lc)
            for i in range(n):
                pivcol[i] = poly_scale(F, inv, pivcol[i])
        out.append(pivcol)
        work = zero_here
        row += 1
    # reduce entries left of pivots: for canonicity, reduce each column's
    # pivot-row entries of later columns modulo earlier pivots
    for i, piv in enumerate(out):
        prow = next(r for r in range(n) if len(piv[r]) > 0)
        for j in range(i):
            other = out[j]
            if len(other[prow]) > 0:
                q, _ = poly_divmod(F, other[prow], piv[prow])
                if q != ():
                    for r in range(n):
                        other[r] = poly_sub(F, other[r], poly_mul(F, q, piv[r]))
    return out


class KxLattice:
    """(1/den) * k[x]-span of full-rank columns, canonical Hermite basis."""

    def __init__(self, F, n, den, cols):
        self.F = F
        self.n = n
        self.den = poly_monic(F, den)
        self.cols = cols  # HNF columns over k[x]
        if len(cols) != n:
            raise ValueError("lattice is not full rank")

    @staticmethod
    def from_rf_vectors(rf, vectors):
        """Build from K-vectors with RatFun coordinates."""
        F = rf.base
        n = len(vectors[0])
        den = (F.one(),)
        for v in vectors:
            for c in v:
                g = poly_gcd(F, den, c[1])
                den = poly_divmod(F, poly_mul(F, den, c[1]), g)[0]
        den = poly_monic(F, den)
        cols = []
        for v in vectors:
            col = []
            for c in v:
                num, d = c
                q, r = poly_divmod(F, poly_mul(F, num, den), d)
                assert r == (), "denominator bookkeeping error"
                col.append(q)
            cols.append(col)
        hnf = hermite_columns(F, cols, n)
        return KxLattice(rf.base, n, den, hnf)

    def rf_basis(self, rf):
        """Basis as K-vectors (RatFun coordinates)."""
        out = []
        for col in self.cols:
            out.append(tuple(rf.normalize(c, self.den) for c in col))
        return out

    def _common(self, other):
        F = self.F
        g = poly_gcd(F, self.den, other.den)
        lcm = poly_divmod(F, poly_mul(F, self.den, other.den), g)[0]
        s1 = poly_divmod(F, lcm, self.den)[0]
        s2 = poly_divmod(F, lcm, other.den)[0]
        c1 = [[poly_mul(F, s1, e) for e in col] for col in self.cols]
        c2 = [[poly_mul(F, s2, e) for e in col] for col in other.cols]
        return lcm, c1, c2

    def add(self, other):
        lcm, c1, c2 = self._common(other)
        hnf = hermite_columns(self.F, c1 + c2, self.n)
        return KxLattice(self.F, self.n, lcm, hnf)

    def contains_col(self, den, col):
        """Membership of (1/den)*col (k[x] entries) via triangular solve."""
        F = self.F
        # rescale to the lattice's denominator: (1/den)col in (1/D)span(H)
        # <=> (D/den) col in span(H); needs den | D * col componentwise
        target = []
        for c in col:
            num = poly_mul(F, self.den, c)
            q, r = poly_divmod(F, num, den)
            if r != ():
                return False
            target.append(q)
        # solve H u = target over k[x] by triangular elimination
        work = list(target)
        pivots = []
        for colv in self.cols:
            prow = next(r for r in range(self.n) if len(colv[r]) > 0)
            pivots.append((prow, colv))
        pivots.sort(key=lambda t: t[0])
        for prow, colv in pivots:
            if len(work[prow]) == 0:
                continue
            q, r = poly_divmod(F, work[prow], colv[prow])
            if r != ():
                return False
            for i in range(self.n):
                work[i] = poly_sub(F, work[i], poly_mul(F, q, colv[i]))
        return all(len(w) == 0 for w in work)

    def contains_rf_vector(self, rf, v):
        F = rf.base
        den = (F.one(),)
        for c in v:
            g = poly_gcd(F, den, c[1])
            den = poly_divmod(F, poly_mul(F, den, c[1]), g)[0]
        col = []
        for num, d in v:
            col.append(poly_divmod(F, poly_mul(F, num, den), d)[0])
        return self.contains_col(den, col)

    def contains_lattice(self, other):
        return all(self.contains_col(other.den, col) for col in other.cols)

    def equals(self, other):
        return self.contains_lattice(other) and other.contains_lattice(self)

    def index_poly(self):
        """det(H)/den^n: the `index` of the lattice in (1/1)k[x]^n, monic."""
        F = self.F
        det = (F.one(),)
        # triangular determinant: product of pivots
        for col in self.cols:
            prow = next(r for r in range(self.n) if len(col[r]) > 0)
            det = poly_mul(F, det, col[prow])
        return poly_monic(F, det)

    def scale_poly(self, f):
        """Lattice * f for f in k[x]."""
        F = self.F
        g = poly_gcd(F, f, self.den)
        f2 = poly_divmod(F, f, g)[0]
        den2 = poly_divmod(F, self.den, g)[0]
        cols = [[poly_mul(F, f2, e) for e in col] for col in self.cols]
        return KxLattice(F, self.n, den2, hermite_columns(F, cols, self.n))

    def scale_inv_poly(self, f):
        """Lattice / f."""
        F = self.F
        cols = [list(c) for c in self.cols]
        return KxLattice(F, self.n, poly_monic(F, poly_mul(F, self.den, f)),
                         hermite_columns(F, cols, self.n))
