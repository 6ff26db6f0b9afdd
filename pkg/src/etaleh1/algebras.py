"""Finite commutative algebras over a finite field, given by structure constants.

An algebra is a k-vector space with basis e_1..e_n, a multiplication table
of structure constants, and a unit vector.  This realises the black-box
computation model: primary decomposition, nilradicals, minimal polynomials
and small generator sets are all linear algebra plus univariate
factorisation.

Primary decomposition is deterministic: the nilradical is split off first
(stable kernel chain of the iterated Frobenius-power map), then the reduced
quotient is split with Berlekamp's fixed-space method (the q-power map is
k-linear on an etale algebra and its fixed space has dimension equal to the
number of factors), and idempotents are Hensel-lifted back.  Factors are
sorted by (dimension, minimal-polynomial data) so output order is canonical.
"""

from . import linalg as la
from .errors import NotAField, SubalgebraNotClosed
from .fields import Field, factor_univariate, poly_deg, poly_trim_f


class FiniteAlgebra:
    """Commutative k-algebra with chosen basis and structure constants.

    mult[i][j] is the coordinate vector of e_i * e_j; unit is the coordinate
    vector of 1.  Values are immutable after construction.
    """

    def __init__(self, field, mult, unit, check=False):
        self.field = field
        self.dim = len(mult)
        self.mult = [[tuple(v) for v in row] for row in mult]
        self.unit = tuple(unit)
        if check:
            assert self.is_commutative() and self.is_associative() and self.is_unital()

    # -- element arithmetic on raw coordinate tuples --------------------

    def zero_vec(self):
        return (self.field.zero(),) * self.dim

    def basis_vec(self, i):
        F = self.field
        return tuple(F.one() if j == i else F.zero() for j in range(self.dim))

    def add(self, u, v):
        F = self.field
        return tuple(F.add(a, b) for a, b in zip(u, v))

    def sub(self, u, v):
        F = self.field
        return tuple(F.sub(a, b) for a, b in zip(u, v))

    def scale(self, c, u):
        F = self.field
        return tuple(F.mul(c, a) for a in u)

    def mul(self, u, v):
        F = self.field
        out = [F.zero()] * self.dim
        for i, a in enumerate(u):
            if F.is_zero(a):
                continue
            mi = self.mult[i]
            for j, b in enumerate(v):
                if F.is_zero(b):
                    continue
                c = F.mul(a, b)
                for t, m in enumerate(mi[j]):
                    if not F.is_zero(m):
                        out[t] = F.add(out[t], F.mul(c, m))
        return tuple(out)

    def pow(self, u, n):
        result = self.unit
        base = u
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def is_zero_vec(self, u):
        F = self.field
        return all(F.is_zero(a) for a in u)

    def mul_matrix(self, u):
        """Matrix of multiplication by u acting on coordinate columns."""
        cols = [self.mul(u, self.basis_vec(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def trace(self, u):
        F = self.field
        acc = F.zero()
        for j in range(self.dim):
            acc = F.add(acc, self.mul(u, self.basis_vec(j))[j])
        return acc

    def trace_form(self):
        """Gram matrix Tr(e_i e_j)."""
        return [
            [self.trace(self.mul(self.basis_vec(i), self.basis_vec(j))) for j in range(self.dim)]
            for i in range(self.dim)
        ]

    # -- structural checks ----------------------------------------------

    def is_commutative(self):
        return all(
            self.mult[i][j] == self.mult[j][i]
            for i in range(self.dim)
            for j in range(i)
        )

    def is_associative(self):
        for i in range(self.dim):
            ei = self.basis_vec(i)
            for j in range(self.dim):
                p = self.mul(ei, self.basis_vec(j))
                for t in range(self.dim):
                    et = self.basis_vec(t)
                    if self.mul(p, et) != self.mul(ei, self.mul(self.basis_vec(j), et)):
                        return False
        return True

    def is_unital(self):
        return all(
            self.mul(self.unit, self.basis_vec(i)) == self.basis_vec(i)
            for i in range(self.dim)
        )

    def elem(self, coords):
        return AlgElem(self, tuple(coords))

    def one(self):
        return AlgElem(self, self.unit)

    def __repr__(self):
        return f"FiniteAlgebra(dim={self.dim} over {self.field!r})"


class AlgElem:
    """Element of a FiniteAlgebra; thin wrapper over a coordinate tuple."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        assert len(coords) == algebra.dim
        self.algebra = algebra
        self.coords = tuple(coords)

    def __add__(self, other):
        return AlgElem(self.algebra, self.algebra.add(self.coords, other.coords))

    def __sub__(self, other):
        return AlgElem(self.algebra, self.algebra.sub(self.coords, other.coords))

    def __mul__(self, other):
        return AlgElem(self.algebra, self.algebra.mul(self.coords, other.coords))

    def __pow__(self, n):
        return AlgElem(self.algebra, self.algebra.pow(self.coords, n))

    def __neg__(self):
        F = self.algebra.field
        return AlgElem(self.algebra, tuple(F.neg(c) for c in self.coords))

    def __eq__(self, other):
        return isinstance(other, AlgElem) and self.algebra is other.algebra and self.coords == other.coords

    def __hash__(self):
        return hash((id(self.algebra), self.coords))

    def is_zero(self):
        return self.algebra.is_zero_vec(self.coords)

    def __repr__(self):
        return f"AlgElem{self.coords}"


class AlgebraMorphism:
    """k-linear map between algebras; matrix acts on coordinate columns."""

    def __init__(self, source, target, matrix):
        self.source = source
        self.target = target
        self.matrix = [list(row) for row in matrix]

    def apply(self, coords):
        return tuple(la.mat_vec(self.target.field, self.matrix, list(coords)))

    def preserves_unit(self):
        return self.apply(self.source.unit) == self.target.unit

    def preserves_products(self):
        src = self.source
        for i in range(src.dim):
            for j in range(i + 1):
                lhs = self.apply(src.mul(src.basis_vec(i), src.basis_vec(j)))
                rhs = self.target.mul(self.apply(src.basis_vec(i)), self.apply(src.basis_vec(j)))
                if lhs != rhs:
                    return False
        return True


def algebra_from_poly(F, f):
    """F[x]/(f) with monomial basis 1, x, .., x^(deg-1)."""
    from .fields import poly_divmod, poly_monic

    f = poly_monic(F, f)
    n = poly_deg(f)
    mult = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = ((F.zero(),) * (i + j)) + (F.one(),)
            _, r = poly_divmod(F, prod, f)
            row.append(tuple(r) + (F.zero(),) * (n - len(r)))
        mult.append(row)
    unit = (F.one(),) + (F.zero(),) * (n - 1)
    return FiniteAlgebra(F, mult, unit)


def product_algebra(A, B):
    """Direct product A x B with the concatenated basis."""
    F = A.field
    n, m = A.dim, B.dim
    z = F.zero()
    mult = []
    for i in range(n + m):
        row = []
        for j in range(n + m):
            if i < n and j < n:
                v = A.mult[i][j] + (z,) * m
            elif i >= n and j >= n:
                v = (z,) * n + B.mult[i - n][j - n]
            else:
                v = (z,) * (n + m)
            row.append(v)
        mult.append(row)
    unit = A.unit + B.unit
    return FiniteAlgebra(F, mult, unit)


def tensor_algebra(A, B):
    """A (x)_k B with basis e_i (x) f_j ordered by (i, j)."""
    F = A.field
    n, m = A.dim, B.dim
    dim = n * m
    mult = [[None] * dim for _ in range(dim)]
    for i1 in range(n):
        for j1 in range(m):
            r1 = i1 * m + j1
            for i2 in range(n):
                pa = A.mult[i1][i2]
                for j2 in range(m):
                    pb = B.mult[j1][j2]
                    vec = [F.zero()] * dim
                    for s, ca in enumerate(pa):
                        if F.is_zero(ca):
                            continue
                        for t, cb in enumerate(pb):
                            if not F.is_zero(cb):
                                vec[s * m + t] = F.add(vec[s * m + t], F.mul(ca, cb))
                    mult[r1][i2 * m + j2] = tuple(vec)
    unit = [F.zero()] * dim
    for s, ca in enumerate(A.unit):
        for t, cb in enumerate(B.unit):
            unit[s * m + t] = F.mul(ca, cb)
    return FiniteAlgebra(F, mult, unit)


def subspace_algebra(A, basis_vectors):
    """Algebra structure on a multiplicatively closed subspace containing 1.

    Returns (B, inclusion matrix columns) where B has the given vectors as
    basis.  Raises SubalgebraNotClosed if the span is not a unital subalgebra.
    """
    F = A.field
    basis = [list(v) for v in basis_vectors]
    unit_coords = la.coordinates_in_basis(F, basis, A.unit)
    if unit_coords is None:
        raise SubalgebraNotClosed("unit not in span")
    n = len(basis)
    mult = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = A.mul(tuple(basis[i]), tuple(basis[j]))
            coords = la.coordinates_in_basis(F, basis, prod)
            if coords is None:
                raise SubalgebraNotClosed("span not closed under multiplication")
            row.append(tuple(coords))
        mult.append(row)
    return FiniteAlgebra(F, mult, tuple(unit_coords)), basis


def quotient_by_ideal(A, ideal_basis):
    """Quotient algebra A / span(ideal_basis), with the projection morphism.

    The ideal span must be an ideal; representatives are the non-pivot
    coordinates after row reduction.
    """
    F = A.field
    if not ideal_basis:
        proj = AlgebraMorphism(A, A, la.mat_identity(F, A.dim))
        return A, proj
    red, pivots = la.rref(F, [list(v) for v in ideal_basis])
    red = red[: len(pivots)]
    pivot_set = set(pivots)
    rest = [i for i in range(A.dim) if i not in pivot_set]

    def project(vec):
        v = list(vec)
        for r, pc in zip(red, pivots):
            if not F.is_zero(v[pc]):
                c = v[pc]
                v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, r)]
        return tuple(v[i] for i in rest)

    m = len(rest)
    mult = []
    for a in range(m):
        row = []
        ea = A.basis_vec(rest[a])
        for b in range(m):
            row.append(project(A.mul(ea, A.basis_vec(rest[b]))))
        mult.append(row)
    B = FiniteAlgebra(F, mult, project(A.unit))
    proj_matrix = [[None] * A.dim for _ in range(m)]
    for j in range(A.dim):
        col = project(A.basis_vec(j))
        for i in range(m):
            proj_matrix[i][j] = col[i]
    return B, AlgebraMorphism(A, B, proj_matrix)


def nilradical(A):
    """Basis of the nilradical, via the stable kernel chain of x -> x^p.

    The p-power map is F_p-linear; its iterated kernels stabilise at the set
    of nilpotents.  The result is returned as an F-basis (rref rows).
    """
    F = A.field
    if A.dim == 0:
        return []
    fpb = _fp_basis(F)
    m = len(fpb)
    n = A.dim
    # F_p-basis of A: fpb[r] * e_i
    fp_vectors = []
    for i in range(n):
        for r in range(m):
            fp_vectors.append(A.scale(fpb[r], A.basis_vec(i)))
    dim_fp = n * m
    Fp = _prime_subfield(F)

    def to_fp(vec):
        out = []
        for c in vec:
            out.extend(_fp_coords(F, c))
        return out

    # matrix of x -> x^p in the F_p-basis
    cols = [to_fp(A.pow(v, F.p)) for v in fp_vectors]
    M = [[cols[j][i] for j in range(dim_fp)] for i in range(dim_fp)]
    # stable kernel chain of the iterated p-power map
    Mk = M
    kernel = la.kernel_basis(Fp, Mk)
    while True:
        Mk = la.mat_mul(Fp, Mk, M)
        nxt = la.kernel_basis(Fp, Mk)
        if len(nxt) == len(kernel):
            break
        kernel = nxt
    vectors = []
    for v in kernel:
        acc = A.zero_vec()
        for idx, c in enumerate(v):
            if not Fp.is_zero(c):
                acc = A.add(acc, A.scale(_fp_embed(F, c), fp_vectors[idx]))
        vectors.append(list(acc))
    if not vectors:
        return []
    red, pivots = la.rref(F, vectors)
    return [tuple(red[i]) for i in range(len(pivots))]


def _prime_subfield(F):
    from .fields import PrimeField

    return PrimeField(F.p)


def _fp_basis(F):
    """Raw elements of F forming an F_p-basis."""
    from .fields import ExtField, PrimeField

    if isinstance(F, PrimeField):
        return [1]
    if isinstance(F, ExtField):
        return [F.element_from_index(F.p ** i) for i in range(F.degree)]
    if isinstance(F, AlgebraField):
        inner = _fp_basis(F.algebra.field)
        out = []
        for i in range(F.algebra.dim):
            for b in inner:
                out.append(F.algebra.scale(b, F.algebra.basis_vec(i)))
        return out
    raise TypeError(f"unsupported field {F!r}")


def _fp_coords(F, a):
    from .fields import ExtField, PrimeField

    if isinstance(F, PrimeField):
        return [a % F.p]
    if isinstance(F, ExtField):
        return list(a)
    if isinstance(F, AlgebraField):
        out = []
        for c in a:
            out.extend(_fp_coords(F.algebra.field, c))
        return out
    raise TypeError(f"unsupported field {F!r}")


def _fp_embed(F, c):
    return F.from_int(c)


def frobenius_fixed_space(A):
    """Basis of {x in A : x^q = x}, q the base field order (k-linear map)."""
    F = A.field
    q = F.order
    cols = [A.pow(A.basis_vec(j), q) for j in range(A.dim)]
    M = [
        [F.sub(cols[j][i], F.one() if i == j else F.zero()) for j in range(A.dim)]
        for i in range(A.dim)
    ]
    return la.kernel_basis(F, M)


def minimal_polynomial_over_base(A, coords):
    """Minimal polynomial of an element over the base field, coefficient tuple."""
    F = A.field
    powers = [A.unit]
    cur = A.unit
    for _ in range(A.dim):
        cur = A.mul(cur, coords)
        powers.append(cur)
    for d in range(1, A.dim + 1):
        mat = [[powers[j][i] for j in range(d)] for i in range(A.dim)]
        sol = la.solve_right(F, mat, [F.neg(c) for c in powers[d]])
        if sol is not None:
            return poly_trim_f(F, tuple(sol) + (F.one(),))
    raise AssertionError("element has no minimal polynomial (impossible)")


def minimal_polynomial(A, coords, over_basis):
    """Minimal monic polynomial of an element over a unital subalgebra.

    over_basis is a list of coordinate vectors spanning the subalgebra; the
    span is verified to be closed.  Coefficients are returned as coordinate
    vectors of A, low degree first, with the leading coefficient omitted
    (it is 1).
    """
    F = A.field
    subspan = [list(v) for v in over_basis]
    subspace_algebra(A, subspan)  # raises SubalgebraNotClosed if not closed
    r = len(subspan)
    powers = [A.unit]
    cur = A.unit
    for _ in range(A.dim):
        cur = A.mul(cur, coords)
        powers.append(cur)
    for d in range(1, A.dim + 1):
        # unknowns c_{i,j}: sum_{i<d} (sum_j c_{i,j} w_j) a^i = -a^d
        cols = []
        for i in range(d):
            for j in range(r):
                cols.append(A.mul(tuple(subspan[j]), powers[i]))
        mat = [[cols[c][row] for c in range(len(cols))] for row in range(A.dim)]
        sol = la.solve_right(F, mat, [F.neg(x) for x in powers[d]])
        if sol is not None:
            coeffs = []
            for i in range(d):
                acc = A.zero_vec()
                for j in range(r):
                    acc = A.add(acc, A.scale(sol[i * r + j], tuple(subspan[j])))
                coeffs.append(acc)
            return coeffs  # monic of degree d; coeffs[i] multiplies a^i
    raise AssertionError("element has no minimal polynomial (impossible)")


def _lift_idempotent(A, e):
    """Hensel-lift e with e^2 - e nilpotent to an exact idempotent."""
    while True:
        e2 = A.mul(e, e)
        if e2 == e:
            return e
        # e <- 3e^2 - 2e^3 (reduces to e <- e^2 in characteristic 2)
        three = A.scale(A.field.from_int(3), e2)
        two = A.scale(A.field.from_int(2), A.mul(e2, e))
        e = A.sub(three, two)


def _split_by_idempotent(A, e):
    """Split A = eA x (1-e)A; returns [(factor, projection), ...]."""
    F = A.field
    out = []
    for idem in (e, A.sub(A.unit, e)):
        img = [list(A.mul(idem, A.basis_vec(j))) for j in range(A.dim)]
        red, pivots = la.rref(F, img)
        basis = [red[i] for i in range(len(pivots))]
        n = len(basis)
        mult = []
        for i in range(n):
            row = []
            for j in range(n):
                prod = A.mul(tuple(basis[i]), tuple(basis[j]))
                row.append(tuple(la.coordinates_in_basis(F, basis, prod)))
            mult.append(row)
        unit = tuple(la.coordinates_in_basis(F, basis, idem))
        B = FiniteAlgebra(F, mult, unit)
        # projection x -> coords of idem * x in the factor basis
        proj = []
        for j in range(A.dim):
            col = la.coordinates_in_basis(F, basis, A.mul(idem, A.basis_vec(j)))
            proj.append(col)
        matrix = [[proj[j][i] for j in range(A.dim)] for i in range(n)]
        out.append((B, AlgebraMorphism(A, B, matrix)))
    return out


def primary_decompose(A):
    """Primary decomposition of a finite commutative algebra.

    Returns a list of (local factor, projection morphism) pairs in canonical
    order (sorted by dimension, then by the integer encoding of the minimal
    polynomials of the projected basis elements).
    """
    F = A.field

    def factor_key(pair):
        B, proj = pair
        key = [B.dim]
        for j in range(A.dim):
            mp = minimal_polynomial_over_base(B, proj.apply(A.basis_vec(j)))
            key.append(tuple(F.to_int(c) for c in mp))
        return tuple(key)

    def rec(B, proj):
        nil = nilradical(B)
        Bred, to_red = quotient_by_ideal(B, nil)
        fixed = frobenius_fixed_space(Bred)
        if len(fixed) <= 1:
            return [(B, proj)]
        # a fixed vector that is not a multiple of 1 has a split minimal poly
        split_elt = None
        for v in fixed:
            mp = minimal_polynomial_over_base(Bred, tuple(v))
            if poly_deg(mp) >= 2:
                split_elt = (tuple(v), mp)
                break
        assert split_elt is not None
        v, mp = split_elt
        _, factors = factor_univariate(F, mp)
        root = F.neg(factors[0][0][0])  # first linear factor x - root
        # idempotent of the root eigenspace: prod over other roots
        e = Bred.unit
        for g, _mult in factors[1:]:
            other = F.neg(g[0])
            num = Bred.sub(v, Bred.scale(other, Bred.unit))
            den = F.sub(root, other)
            e = Bred.mul(e, Bred.scale(F.inv(den), num))
        # lift e along B -> Bred: choose any preimage, then Hensel-lift
        lift = la.solve_right(F, to_red.matrix, list(e))
        e_lifted = _lift_idempotent(B, tuple(lift))
        out = []
        for C, p in _split_by_idempotent(B, e_lifted):
            comp = la.mat_mul(F, p.matrix, proj.matrix)
            out.extend(rec(C, AlgebraMorphism(A, C, comp)))
        return out

    identity = AlgebraMorphism(A, A, la.mat_identity(F, A.dim))
    factors = rec(A, identity)
    factors.sort(key=factor_key)
    return factors


def is_field_algebra(A):
    if A.dim == 0:
        return False
    if nilradical(A):
        return False
    return len(frobenius_fixed_space(A)) == 1


class AlgebraField(Field):
    """A FiniteAlgebra that is a field, used as a black-box field context.

    Raw elements are the coordinate tuples of the algebra.  This is how
    residue fields of primary decompositions enter further computations
    (towers of finite fields).
    """

    def __init__(self, algebra, check=True):
        if check and not is_field_algebra(algebra):
            raise NotAField("algebra is not a field")
        self.algebra = algebra
        base = algebra.field
        self.p = base.p
        self.order = base.order ** algebra.dim
        self.degree = base.degree * algebra.dim
        self.base = base

    def zero(self):
        return self.algebra.zero_vec()

    def one(self):
        return self.algebra.unit

    def add(self, a, b):
        return self.algebra.add(a, b)

    def neg(self, a):
        F = self.base
        return tuple(F.neg(c) for c in a)

    def sub(self, a, b):
        return self.algebra.sub(a, b)

    def mul(self, a, b):
        return self.algebra.mul(a, b)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        sol = la.solve_right(self.base, self.algebra.mul_matrix(a), list(self.algebra.unit))
        assert sol is not None
        return tuple(sol)

    def is_zero(self, a):
        return self.algebra.is_zero_vec(a)

    def from_int(self, n):
        return self.algebra.scale(self.base.from_int(n), self.algebra.unit)

    def to_int(self, a):
        n = 0
        for c in reversed(a):
            n = n * self.base.order + self.base.to_int(c)
        return n

    def element_from_index(self, n):
        coords = []
        for _ in range(self.algebra.dim):
            coords.append(self.base.element_from_index(n % self.base.order))
            n //= self.base.order
        return tuple(coords)

    def embed_base(self, a):
        """Canonical inclusion of the base field."""
        return self.algebra.scale(a, self.algebra.unit)

    def __repr__(self):
        return f"AlgebraField(order={self.order})"

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return id(self)


def small_generators(L):
    """Small generator set for a field algebra over its base field.

    Returns (gens, rels, monomials) where gens is a list of coordinate
    vectors, rels[i] is the minimal polynomial of gens[i] over the subfield
    generated by the earlier generators -- expressed as a dict mapping
    exponent tuples (over all generators) to base-field coefficients -- and
    monomials is the list of (exponent tuple, coordinate vector) pairs whose
    span is L, so that L = k[gens]/(rels) explicitly.

    The generator count is at most log2(dim L).
    """
    if not is_field_algebra(L):
        raise NotAField("small_generators requires a field")
    F = L.field
    gens = []
    rel_polys = []
    # monomial basis of the subalgebra generated so far: exponent tuple -> vector
    monomials = [((), L.unit)]
    degrees = []

    def sub_basis():
        return [list(v) for _, v in monomials]

    for idx in range(L.dim):
        s = L.basis_vec(idx)
        basis = sub_basis()
        if la.coordinates_in_basis(F, basis, s) is not None:
            continue
        coeffs = minimal_polynomial(L, s, basis)
        d = len(coeffs)
        # express each coefficient in the current monomial basis
        rel = {}
        for i, cv in enumerate(coeffs):
            coords = la.coordinates_in_basis(F, basis, cv)
            for (exps, _), c in zip(monomials, coords):
                if not F.is_zero(c):
                    key = exps + (i,)
                    rel[key] = c
        lead = tuple(0 for _ in gens) + (d,)
        rel[lead] = F.one()
        gens.append(s)
        degrees.append(d)
        rel_polys.append(rel)
        # extend the monomial basis with the new generator's powers
        new_monomials = []
        power = L.unit
        for e in range(d):
            for exps, v in monomials:
                new_monomials.append((exps + (e,), L.mul(v, power)))
            power = L.mul(power, s)
        monomials = new_monomials
        if len(monomials) == L.dim:
            break
    # pad earlier exponent tuples to the full generator count
    g = len(gens)
    monomials = [(exps + (0,) * (g - len(exps)), v) for exps, v in monomials]
    rels = []
    for i, rel in enumerate(rel_polys):
        rels.append({exps + (0,) * (g - len(exps)): c for exps, c in rel.items()})
    assert len(monomials) == L.dim
    assert g <= max(1, L.dim).bit_length()
    return gens, rels, monomials


def primitive_element(L):
    """A generator of the field algebra L over its base, deterministic scan."""
    F = L.field
    for idx in range(L.dim):
        v = L.basis_vec(idx)
        if poly_deg(minimal_polynomial_over_base(L, v)) == L.dim:
            return v
    # combinations e_i + c e_j
    for i in range(L.dim):
        for j in range(L.dim):
            if i == j:
                continue
            for n in range(1, F.order):
                v = L.add(L.basis_vec(i), L.scale(F.element_from_index(n), L.basis_vec(j)))
                if poly_deg(minimal_polynomial_over_base(L, v)) == L.dim:
                    return v
    raise AssertionError("no primitive element found")
