"""Function fields of curves: finite k(x)-algebras, maximal orders, points.

A function-field algebra is a FiniteAlgebra over the RatFunField context, so
the generic linear algebra and quotient machinery apply unchanged.  On top
of that this module provides the integral structure: k[x]-orders as
KxLattices, maximal orders by the radical-idealizer (Round 2) iteration,
closed points as primary components of O/pO, valuations by ideal powers,
and fractional ideal arithmetic.  The chart at infinity is handled by the
substitution x -> 1/x, which turns a k[1/x]-question into a k[x]-question
for the swapped algebra.
"""

from . import linalg as la
from .algebras import (
    AlgebraField,
    FiniteAlgebra,
    algebra_from_poly,
    nilradical,
    primary_decompose,
    quotient_by_ideal,
)
from .errors import NotReduced
from .fields import (
    poly_deg,
    poly_divmod,
    poly_gcd,
    poly_monic,
    poly_mul,
    poly_sub,
    poly_trim_f,
    factor_univariate,
)
from .kxlattice import KxLattice, hermite_columns
from .ratfun import RatFunField


class FunFieldAlg:
    """A finite k(x)-algebra presented by basis and multiplication table.

    alg is a FiniteAlgebra over the RatFunField rf; elements are tuples of
    RatFun coordinates.  The height bound of the presentation is the maximal
    height of the structure constants.
    """

    def __init__(self, rf, alg):
        self.rf = rf
        self.k = rf.base
        self.alg = alg
        self.degree = alg.dim

    @staticmethod
    def from_min_poly(rf, coeffs):
        """k(x)[e]/(f) for a monic f given by RatFun coefficients (low first)."""
        n = len(coeffs)
        F = rf
        mult = []
        for i in range(n):
            row = []
            for j in range(n):
                vec = [F.zero()] * n
                if i + j < n:
                    vec[i + j] = F.one()
                    row.append(tuple(vec))
                    continue
                # reduce e^(i+j) via f
                power = [F.zero()] * (i + j) + [F.one()]
                power = _reduce_power(rf, power, coeffs)
                row.append(tuple(power))
            mult.append(row)
        unit = tuple([F.one()] + [F.zero()] * (n - 1))
        return FunFieldAlg(rf, FiniteAlgebra(rf, mult, unit))

    def height(self):
        h = 0
        for row in self.alg.mult:
            for vec in row:
                for c in vec:
                    h = max(h, self.rf.height(c))
        return h

    def swap_chart(self):
        """The same algebra with every coefficient rewritten via x -> 1/x."""
        rf = self.rf
        mult = [
            [tuple(rf.swap_chart(c) for c in vec) for vec in row]
            for row in self.alg.mult
        ]
        unit = tuple(rf.swap_chart(c) for c in self.alg.unit)
        return FunFieldAlg(rf, FiniteAlgebra(rf, mult, unit))

    def trace_form(self):
        return self.alg.trace_form()

    def discriminant(self):
        """det of the trace form, a RatFun (0 iff not etale over k(x))."""
        return la.mat_det(self.rf, self.trace_form())

    def is_separable(self):
        return not self.rf.is_zero(self.discriminant())

    def min_poly(self, v):
        from .algebras import minimal_polynomial_over_base

        return minimal_polynomial_over_base(self.alg, v)

    def is_reduced(self):
        """Reducedness test.

        Separable algebras (nonzero discriminant) are reduced.  Otherwise
        every basis element's minimal polynomial is inspected: a repeated
        irreducible factor, or a purely inseparable layer whose coefficients
        are p-th powers, certifies a nilpotent.
        """
        if self.is_separable():
            return True
        rf = self.rf
        p = rf.p
        for idx in range(self.degree):
            f = self.min_poly(self.alg.basis_vec(idx))
            # strip f = g(T^(p^e)) with g' != 0
            e = 0
            g = f
            while _rfpoly_deriv_zero(rf, g):
                g = g[::p]
                e += 1
            if not _rfpoly_squarefree(rf, g):
                return False
            if e >= 1 and all(rf.pth_root(c) is not None for c in g):
                return False
        return True

    def __repr__(self):
        return f"FunFieldAlg(degree={self.degree} over {self.rf!r})"


def _reduce_power(rf, power, coeffs):
    """Reduce a power-basis vector modulo the monic relation e^n = -sum c_i e^i."""
    n = len(coeffs)
    work = list(power)
    while len(work) > n:
        c = work.pop()
        if rf.is_zero(c):
            continue
        off = len(work) - n
        for i in range(n):
            work[off + i] = rf.sub(work[off + i], rf.mul(c, coeffs[i]))
    while len(work) < n:
        work.append(rf.zero())
    return work


def _rfpoly_deriv_zero(rf, f):
    p = rf.p
    return all(rf.is_zero(c) for i, c in enumerate(f) if i % p != 0 and i > 0) and len(f) > 1


def _rfpoly_squarefree(rf, f):
    """gcd(f, f') = 1 for a polynomial over k(x) (f' assumed nonzero)."""
    fp = [rf.mul(rf.from_int(i), f[i]) for i in range(1, len(f))]
    g = _rfpoly_gcd(rf, list(f), fp)
    return len(g) == 1


def _rfpoly_trim(rf, f):
    while f and rf.is_zero(f[-1]):
        f.pop()
    return f


def _rfpoly_gcd(rf, a, b):
    a = _rfpoly_trim(rf, list(a))
    b = _rfpoly_trim(rf, list(b))
    while b:
        # a mod b
        inv = rf.inv(b[-1])
        while len(a) >= len(b) and a:
            c = rf.mul(a[-1], inv)
            k = len(a) - len(b)
            for i in range(len(b)):
                a[k + i] = rf.sub(a[k + i], rf.mul(c, b[i]))
            a = _rfpoly_trim(rf, a)
        a, b = b, a
    if a:
        inv = rf.inv(a[-1])
        a = [rf.mul(inv, c) for c in a]
    return a


# ---------------------------------------------------------------------------
# orders


class Order:
    """A k[x]-order in a function-field algebra, as a multiplicatively closed
    full lattice containing 1.  Basis vectors are in ambient coordinates.
    """

    def __init__(self, ff, lattice):
        self.ff = ff
        self.lattice = lattice
        self.basis = lattice.rf_basis(ff.rf)
        self.n = ff.degree

    def contains(self, v):
        return self.lattice.contains_rf_vector(self.ff.rf, v)

    def mult_coords(self, v, w):
        """Coordinates of v*w in the order basis (RatFun entries)."""
        prod = self.ff.alg.mul(v, w)
        return self.coords(prod)

    def coords(self, v):
        """Coordinates of an algebra element w.r.t. the order basis."""
        rf = self.ff.rf
        mat = [[self.basis[j][i] for j in range(self.n)] for i in range(self.n)]
        sol = la.solve_right(rf, mat, list(v))
        assert sol is not None
        return sol

    def structure_polys(self):
        """Structure constants of the order basis; entries in k[x] by closedness."""
        rf = self.ff.rf
        out = []
        for i in range(self.n):
            row = []
            for j in range(self.n):
                coords = self.mult_coords(self.basis[i], self.basis[j])
                polys = []
                for c in coords:
                    assert rf.is_polynomial(c), "order basis not multiplicatively closed"
                    polys.append(rf.numerator(c))
                row.append(polys)
            out.append(row)
        return out

    def disc_poly(self):
        """Discriminant of the order basis: det Tr(w_i w_j), monic in k[x]."""
        rf = self.ff.rf
        A = self.ff.alg
        gram = [
            [A.trace(A.mul(self.basis[i], self.basis[j])) for j in range(self.n)]
            for i in range(self.n)
        ]
        d = la.mat_det(rf, gram)
        assert rf.is_polynomial(d), "discriminant of an order must be integral"
        return poly_monic(rf.base, rf.numerator(d))


def order_from_generators(ff, vectors):
    """The k[x]-order generated by 1 and the given vectors (saturated)."""
    rf = ff.rf
    gens = [ff.alg.unit] + [tuple(v) for v in vectors]
    lat = KxLattice.from_rf_vectors(rf, _spanning_vectors(ff, gens))
    while True:
        basis = lat.rf_basis(rf)
        prods = []
        for i in range(len(basis)):
            for j in range(i, len(basis)):
                p = ff.alg.mul(basis[i], basis[j])
                if not lat.contains_rf_vector(rf, p):
                    prods.append(p)
        if not prods:
            return Order(ff, lat)
        lat = lat.add(KxLattice.from_rf_vectors(rf, basis + prods))


def _spanning_vectors(ff, gens):
    """Extend generators to a full-rank spanning set by adding basis multiples."""
    rf = ff.rf
    vecs = list(gens)
    mat = [list(v) for v in vecs]
    if la.mat_rank(rf, mat) < ff.degree:
        # multiply generators together until the span is everything
        frontier = list(gens)
        while la.mat_rank(rf, [list(v) for v in vecs]) < ff.degree:
            new = []
            for a in frontier:
                for b in gens:
                    new.append(ff.alg.mul(a, b))
            vecs.extend(new)
            frontier = new
            if len(vecs) > 4 * ff.degree * len(gens) + 16:
                raise AssertionError("generators do not span the algebra")
    return vecs


def initial_order(ff):
    """An order from the ambient basis, scaled to clear denominators."""
    rf = ff.rf
    F = rf.base
    d = (F.one(),)
    for row in ff.alg.mult:
        for vec in row:
            for c in vec:
                g = poly_gcd(F, d, c[1])
                d = poly_divmod(F, poly_mul(F, d, c[1]), g)[0]
    dd = rf.from_poly(d)
    scaled = []
    for i in range(ff.degree):
        scaled.append(tuple(rf.mul(dd, c) for c in ff.alg.basis_vec(i)))
    return order_from_generators(ff, scaled)


def _colon_in_order(order, target, source, f):
    """The lattice {z in (1/f)*O : z * source_basis subset target}.

    f is a k[x] polynomial with f * (target : source) inside O.  All three
    lattices live in the same algebra; the computation is k-linear algebra
    on coordinates modulo f.
    """
    ff = order.ff
    rf = ff.rf
    F = rf.base
    n = order.n
    if poly_deg(f) == 0:
        # colon contains O itself iff O*source subset target; just test
        pass
    # unknowns: w = sum u_i w_i with u_i in k[x] mod f; conditions:
    # coords of w * s_b in the target basis lie in f*k[x].
    src_basis = source.rf_basis(rf)
    tgt_basis = target.rf_basis(rf)
    tmat = [[tgt_basis[j][i] for j in range(n)] for i in range(n)]
    # precompute coords of w_i * s_b in target basis: rational functions
    cond = []  # list of rows over k(x): cond[(b,row)][i]
    for b in range(n):
        prods = [ff.alg.mul(order.basis[i], src_basis[b]) for i in range(n)]
        for row in range(n):
            entry = []
            for i in range(n):
                sol = la.solve_right(rf, tmat, list(prods[i]))
                assert sol is not None
                entry.append(sol[row])
            cond.append(entry)
    # common denominator of all condition entries
    e = (F.one(),)
    for entry in cond:
        for c in entry:
            g = poly_gcd(F, e, c[1])
            e = poly_divmod(F, poly_mul(F, e, c[1]), g)[0]
    fe = poly_monic(F, poly_mul(F, f, e))
    deg_fe = poly_deg(fe)
    if deg_fe == 0:
        return KxLattice(F, n, (F.one(),), [list(col) for col in _poly_identity_cols(F, n)])
    # unknowns: coefficients of u_i mod fe: n * deg_fe over k
    nunk = n * deg_fe
    rows = []
    for entry in cond:
        # condition: sum_i u_i * (num_i) = 0 mod fe * den-part  -- clear e:
        # coords entry_i = num_i / den_i; with common denominator e:
        # sum u_i * (num_i * e / den_i) = 0 mod f*e
        polys = []
        for c in entry:
            scaled = poly_divmod(F, poly_mul(F, c[0], e), c[1])
            assert scaled[1] == ()
            polys.append(scaled[0])
        # k-linear rows: coefficient of x^r in sum_i u_i * polys[i] mod fe
        # u_i = sum_s u_{i,s} x^s, s < deg_fe
        block = [[F.zero()] * nunk for _ in range(deg_fe)]
        for i in range(n):
            base = poly_divmod(F, polys[i], fe)[1]
            cur = base
            for s in range(deg_fe):
                for r, coef in enumerate(cur):
                    block[r][i * deg_fe + s] = F.add(block[r][i * deg_fe + s], coef)
                # multiply by x mod fe
                cur = poly_divmod(F, (F.zero(),) + tuple(cur), fe)[1]
        rows.extend(block)
    kernel = la.kernel_basis(F, rows) if rows else []
    # lattice generated by f*O and the kernel lifts, divided by f
    gens_cols = []
    for col in order.lattice.cols:
        gens_cols.append([poly_mul(F, f, poly_mul(F, c, (F.one(),))) for c in col])
    den = order.lattice.den
    for v in kernel:
        # w = sum u_i w_i: in ambient coordinates w.r.t. the lattice structure:
        col = [() for _ in range(n)]
        for i in range(n):
            u = poly_trim_f(F, tuple(v[i * deg_fe + s] for s in range(deg_fe)))
            if not u:
                continue
            for r in range(n):
                col[r] = poly_add_(F, col[r], poly_mul(F, u, order.lattice.cols[i][r]))
        gens_cols.append(col)
    hnf = hermite_columns(F, gens_cols, n)
    lat = KxLattice(F, n, poly_monic(F, poly_mul(F, den, f)), hnf)
    return lat


def poly_add_(F, a, b):
    from .fields import poly_add

    return poly_add(F, a, b)


def _poly_identity_cols(F, n):
    cols = []
    for i in range(n):
        col = [() for _ in range(n)]
        col[i] = (F.one(),)
        cols.append(col)
    return cols


def radical_of_p(order, p):
    """The radical of pO as a lattice: preimage of nil(O/pO)."""
    ff = order.ff
    rf = ff.rf
    F = rf.base
    Abar, kappa, reduce_vec, lift_vec = order_mod_p(order, p)
    nil = nilradical(Abar)
    gens = [col for col in _scaled_cols(order, p)]
    for v in nil:
        gens.append(lift_vec(v))
    hnf = hermite_columns(F, gens, order.n)
    return KxLattice(F, order.n, order.lattice.den, hnf)


def _scaled_cols(order, p):
    F = order.ff.rf.base
    return [[poly_mul(F, p, c) for c in col] for col in order.lattice.cols]


def order_mod_p(order, p):
    """O/pO as a FiniteAlgebra over the residue field kappa of p.

    Returns (algebra, kappa, reduce_coeffs, lift_vector) where reduce_coeffs
    maps a k[x]-coordinate vector (w.r.t. the order basis) into kappa^n and
    lift_vector lifts a kappa^n vector to a k[x]-column in lattice coords.
    """
    rf = order.ff.rf
    F = rf.base
    n = order.n
    degp = poly_deg(p)
    if degp == 1:
        kappa = F
        a = F.neg(p[0])  # root of the monic linear p

        def red_poly(g):
            from .fields import poly_eval

            return poly_eval(F, g, a)

        def lift_el(c):
            return (c,) if not F.is_zero(c) else ()

    else:
        kappa = AlgebraField(algebra_from_poly(F, p))

        def red_poly(g):
            _, r = poly_divmod(F, g, p)
            return tuple(r) + (F.zero(),) * (degp - len(r))

        def lift_el(c):
            return poly_trim_f(F, c)

    sc = order.structure_polys()
    mult = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(tuple(red_poly(g) for g in sc[i][j]))
        mult.append(row)
    unit_coords = order.coords(order.ff.alg.unit)
    unit = []
    for c in unit_coords:
        assert rf.is_polynomial(c)
        unit.append(red_poly(rf.numerator(c)))
    Abar = FiniteAlgebra(kappa, mult, tuple(unit))

    def reduce_vec(coord_polys):
        return tuple(red_poly(g) for g in coord_polys)

    def lift_vec(kv):
        # kappa^n vector -> k[x] column in the *lattice column* coordinates
        col = [() for _ in range(n)]
        for i, c in enumerate(kv):
            g = lift_el(c)
            if not g:
                continue
            for r in range(n):
                col[r] = poly_add_(F, col[r], poly_mul(F, g, order.lattice.cols[i][r]))
        return col

    return Abar, kappa, reduce_vec, lift_vec


def maximal_order(ff, seed=0):
    """The maximal order of a reduced k(x)-algebra (integral closure of k[x]).

    Radical-idealizer enlargement at every prime whose square divides the
    discriminant, iterated until no enlargement exists anywhere; that
    stability is the maximality certificate.
    """
    if not ff.is_reduced():
        raise NotReduced("maximal orders require a reduced algebra")
    rf = ff.rf
    F = rf.base
    order = initial_order(ff)
    while True:
        disc = order.disc_poly()
        assert poly_deg(disc) >= 0 and not all(F.is_zero(c) for c in disc), (
            "order discriminant vanishes; algebra is not reduced/separable"
        )
        _, factors = factor_univariate(F, disc, seed=seed)
        enlarged = False
        for p, mult in factors:
            if mult < 2:
                continue
            J = radical_of_p(order, p)
            idl = _colon_in_order(order, J, J, p)
            if not order.lattice.contains_lattice(idl) or not idl.contains_lattice(order.lattice):
                if not idl.equals(order.lattice):
                    order = Order(ff, idl)
                    enlarged = True
                    break
        if not enlarged:
            return order


# ---------------------------------------------------------------------------
# closed points, residue fields, valuations


class ClosedPoint:
    """A maximal ideal of a chart order, with residue data.

    chart is 'fin' (k[x]) or 'inf' (k[1/x]); p is the monic prime of the
    chart polynomial ring below the point; ideal is the maximal-ideal
    lattice; residue_map sends order-basis kappa-vectors to the residue
    field; degree is the residue degree over k; ram is e(P | p).
    """

    def __init__(self, chart, p, ideal, order, kappa, resfield, project, degree, ram):
        self.chart = chart
        self.p = p
        self.ideal = ideal
        self.order = order
        self.kappa = kappa
        self.resfield = resfield
        self.project = project      # kappa^n vector (coords in order basis mod p) -> resfield raw
        self.degree = degree
        self.ram = ram
        self._power_cache = {1: ideal}

    def ideal_power(self, m):
        assert m >= 1
        if m not in self._power_cache:
            prev = self.ideal_power(m - 1)
            self._power_cache[m] = ideal_product(self.order, prev, self.ideal)
        return self._power_cache[m]

    def key(self):
        """Deterministic sort key."""
        F = self.order.ff.rf.base
        return (
            self.chart,
            tuple(F.to_int(c) for c in self.p),
            tuple(
                tuple(tuple(F.to_int(cc) for cc in c) for c in col)
                for col in self.ideal.cols
            ),
        )

    def __repr__(self):
        return f"ClosedPoint({self.chart}, p={self.p}, deg={self.degree})"


def points_above(order, p, chart="fin", seed=0):
    """Closed points of the chart order above the prime p, canonical order."""
    rf = order.ff.rf
    F = rf.base
    n = order.n
    Abar, kappa, reduce_vec, lift_vec = order_mod_p(order, p)
    out = []
    for B, proj in primary_decompose(Abar):
        nil = nilradical(B)
        Bred, tored = quotient_by_ideal(B, nil)
        # maximal ideal: preimage of nil under O -> Abar -> B -> Bred
        comp = la.mat_mul(kappa, tored.matrix, proj.matrix)
        kernel = la.kernel_basis(kappa, comp)
        gens = _scaled_cols(order, p)
        for v in kernel:
            gens.append(lift_vec(v))
        hnf = hermite_columns(F, gens, n)
        ideal = KxLattice(F, n, order.lattice.den, hnf)
        fdeg = Bred.dim  # residue degree over kappa
        e = B.dim // Bred.dim
        degree = fdeg * max(poly_deg(p), 1)
        resfield = AlgebraField(Bred, check=False) if Bred.dim > 1 else kappa

        def project(kv, comp=comp, Bred=Bred):
            w = la.mat_vec(kappa, comp, list(kv))
            if Bred.dim > 1:
                return tuple(w)
            # identify the 1-dimensional factor with kappa via its unit
            return kappa.mul(w[0], kappa.inv(Bred.unit[0]))

        out.append(ClosedPoint(chart, p, ideal, order, kappa, resfield, project, degree, e))
    out.sort(key=lambda P: P.key())
    return out


def ideal_product(order, A, B):
    """Product lattice of two ideals of the order."""
    rf = order.ff.rf
    a = A.rf_basis(rf)
    b = B.rf_basis(rf)
    prods = [order.ff.alg.mul(u, v) for u in a for v in b]
    return KxLattice.from_rf_vectors(rf, prods)


def ideal_inverse(order, A):
    """(O : A) for a full ideal A of O."""
    f = A.index_poly()
    den_part = A.den
    # scale: A >= (f*den...)   use f*den as the killer
    F = order.ff.rf.base
    killer = poly_monic(F, poly_mul(F, f, A.den))
    return _colon_in_order(order, order.lattice, A, killer)


def valuation(point, v):
    """v_P(f) for a nonzero element of the function-field algebra.

    Requires the order to be maximal.  Elements are ambient coordinate
    vectors; poles are handled by clearing denominators with powers of p.
    """
    order = point.order
    rf = order.ff.rf
    F = rf.base
    assert not order.ff.alg.is_zero_vec(v)
    # clear denominators: scale by d(x) so that d*v is in O
    coords = order.coords(v)
    d = (F.one(),)
    for c in coords:
        g = poly_gcd(F, d, c[1])
        d = poly_divmod(F, poly_mul(F, d, c[1]), g)[0]
    vd = tuple(rf.mul(rf.from_poly(d), c) for c in v)
    # valuation of d at p times e
    vp_d = 0
    dd = d
    while True:
        q, r = poly_divmod(F, dd, point.p)
        if r != ():
            break
        vp_d += 1
        dd = q
    vw = 0
    while point.ideal_power(vw + 1).contains_rf_vector(rf, vd):
        vw += 1
        if vw > 10000:
            raise AssertionError("runaway valuation")
    return vw - vp_d * point.ram


def residue_value(point, v):
    """Image of a P-integral element in the residue field of P."""
    order = point.order
    rf = order.ff.rf
    F = rf.base
    coords = order.coords(v)
    out = []
    for num, den in coords:
        # the element must be integral at p: denominators prime to p
        _, r = poly_divmod(F, den, point.p)
        assert r != () or poly_deg(den) == 0, "element has a pole at the point"
        out.append(_mod_p_div(F, num, den, point.p))
    return point.project(tuple(out))


def _mod_p_div(F, num, den, p):
    """num/den mod p in the residue field of p."""
    from .fields import poly_eval, poly_xgcd

    degp = poly_deg(p)
    if degp == 1:
        a = F.neg(p[0])
        dv = poly_eval(F, den, a)
        return F.mul(poly_eval(F, num, a), F.inv(dv))
    g, s, _ = poly_xgcd(F, den, p)
    assert poly_deg(g) == 0
    inv = poly_mul(F, ((F.inv(g[0]),)), s)
    prod = poly_mul(F, num, inv)
    _, r = poly_divmod(F, prod, p)
    return tuple(r) + (F.zero(),) * (degp - len(r))
