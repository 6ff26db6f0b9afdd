"""Multivariate polynomial ideals over finite fields.

Sparse distributed representation: a polynomial is a dict mapping exponent
vectors to nonzero field elements, where an exponent vector is a sorted
tuple of (variable index, exponent) pairs.  This stays cheap even in rings
with tens of thousands of variables, which the groupoid emitter produces.

The Groebner engine is plain Buchberger with the coprimality and chain
criteria, graded reverse lexicographic order by default, and hard budgets:
exceeding a cap raises BudgetExceeded, never truncates.  Zero-dimensional
quotients are extracted as FiniteAlgebras from the monomial staircase.

Noether normalisation follows a deterministic escalation of sparse
upper-triangular substitutions (identity first, then coordinate sums with
small scalars from a seeded stream); over very small fields the base may be
extended and the extension degree is reported.
"""

import itertools
import random

from .algebras import FiniteAlgebra
from .errors import ArityMismatch, BudgetExceeded, Budgets, DEFAULT_BUDGETS, UnitIdeal


def _merge_exps(a, b):
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))


def _exp_divides(a, b):
    """Does monomial a divide monomial b?"""
    db = dict(b)
    return all(db.get(v, 0) >= e for v, e in a)


def _exp_div(b, a):
    """Quotient monomial b / a (assumes divisibility)."""
    out = dict(b)
    for v, e in a:
        out[v] -= e
        if out[v] == 0:
            del out[v]
    return tuple(sorted(out.items()))


def _exp_lcm(a, b):
    out = dict(a)
    for v, e in b:
        out[v] = max(out.get(v, 0), e)
    return tuple(sorted(out.items()))


def _exp_total(a):
    return sum(e for _, e in a)


def grevlex_key(exp):
    return (_exp_total(exp), tuple(sorted(((-v, -e) for v, e in exp))))


class MonomialOrder:
    """A monomial order given by a sort key (max = leading)."""

    def __init__(self, name, key):
        self.name = name
        self.key = key

    def __repr__(self):
        return f"MonomialOrder({self.name})"


GREVLEX = MonomialOrder("grevlex", grevlex_key)


def lex_order(nvars):
    def key(exp):
        dense = [0] * nvars
        for v, e in exp:
            dense[v] = e
        return tuple(dense)

    return MonomialOrder("lex", key)


def grlex_order(nvars):
    def key(exp):
        dense = [0] * nvars
        for v, e in exp:
            dense[v] = e
        return (sum(dense), tuple(dense))

    return MonomialOrder("grlex", key)


def permuted_grevlex(var_order):
    """Grevlex on the listed variable ordering (first entry is the biggest)."""
    pos = {v: i for i, v in enumerate(var_order)}

    def key(exp):
        return (_exp_total(exp), tuple(sorted((-pos[v], -e) for v, e in exp)))

    return MonomialOrder(f"grevlex[{','.join(map(str, var_order))}]", key)


class PolyRing:
    """k[x_0, .., x_{n-1}] with named variables."""

    def __init__(self, field, names):
        self.field = field
        self.names = list(names)
        self.nvars = len(self.names)
        self._index = {n: i for i, n in enumerate(self.names)}

    def var(self, i):
        return Poly(self, {((i, 1),): self.field.one()})

    def var_named(self, name):
        return self.var(self._index[name])

    def const(self, c):
        if self.field.is_zero(c):
            return Poly(self, {})
        return Poly(self, {(): c})

    def zero(self):
        return Poly(self, {})

    def one(self):
        return self.const(self.field.one())

    def from_terms(self, terms):
        F = self.field
        clean = {}
        for exp, c in terms.items():
            if not F.is_zero(c):
                exp = tuple(sorted((v, e) for v, e in exp if e))
                if exp in clean:
                    c2 = F.add(clean[exp], c)
                    if F.is_zero(c2):
                        del clean[exp]
                    else:
                        clean[exp] = c2
                else:
                    clean[exp] = c
        return Poly(self, clean)

    def __repr__(self):
        show = ",".join(self.names[:6]) + (",..." if self.nvars > 6 else "")
        return f"PolyRing({self.field!r}; {show})"


class Poly:
    """Element of a PolyRing; immutable after construction."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        return max((_exp_total(e) for e in self.terms), default=-1)

    def __add__(self, other):
        F = self.ring.field
        out = dict(self.terms)
        for exp, c in other.terms.items():
            if exp in out:
                s = F.add(out[exp], c)
                if F.is_zero(s):
                    del out[exp]
                else:
                    out[exp] = s
            else:
                out[exp] = c
        return Poly(self.ring, out)

    def __neg__(self):
        F = self.ring.field
        return Poly(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.ring.field
        if isinstance(other, Poly):
            out = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = _merge_exps(e1, e2)
                    c = F.mul(c1, c2)
                    if e in out:
                        s = F.add(out[e], c)
                        if F.is_zero(s):
                            del out[e]
                        else:
                            out[e] = s
                    elif not F.is_zero(c):
                        out[e] = c
            return Poly(self.ring, out)
        # scalar
        if F.is_zero(other):
            return Poly(self.ring, {})
        return Poly(self.ring, {e: F.mul(c, other) for e, c in self.terms.items()})

    __rmul__ = __mul__

    def scale_monomial(self, exp, coeff):
        F = self.ring.field
        out = {}
        for e, c in self.terms.items():
            out[_merge_exps(e, exp)] = F.mul(c, coeff)
        return Poly(self.ring, out)

    def __pow__(self, n):
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def leading(self, order=GREVLEX):
        exp = max(self.terms, key=order.key)
        return exp, self.terms[exp]

    def constant_part(self):
        return self.terms.get((), self.ring.field.zero())

    def variables(self):
        out = set()
        for e in self.terms:
            for v, _ in e:
                out.add(v)
        return out

    def subst(self, mapping):
        """Substitute Polys for variables; vars absent from mapping are kept."""
        ring = self.ring
        out = ring.zero()
        for exp, c in self.terms.items():
            term = ring.const(c)
            for v, e in exp:
                base = mapping.get(v)
                if base is None:
                    base = ring.var(v)
                term = term * base ** e
            out = out + term
        return out

    def evaluate(self, values, algebra, embed=None):
        """Evaluate at a point with coordinates in a FiniteAlgebra.

        values[i] is the coordinate vector for variable i; embed maps raw
        base-field elements into the algebra's field (identity by default).
        """
        if len(values) != self.ring.nvars:
            raise ArityMismatch(
                f"expected {self.ring.nvars} coordinates, got {len(values)}"
            )
        A = algebra
        F = A.field
        if embed is None:
            def embed(c):
                return c
        acc = A.zero_vec()
        for exp, c in self.terms.items():
            term = A.scale(embed(c), A.unit)
            for v, e in exp:
                term = A.mul(term, A.pow(values[v], e))
            acc = A.add(acc, term)
        return acc

    def map_ring(self, new_ring, var_map, coeff_map=None):
        """Move into another ring: var_map[i] is the new index of variable i."""
        F = new_ring.field
        out = {}
        for exp, c in self.terms.items():
            new_exp = tuple(sorted((var_map[v], e) for v, e in exp))
            out[new_exp] = coeff_map(c) if coeff_map else c
        return Poly(new_ring, out)

    def text(self, order=GREVLEX):
        """External syntax: coef*xi^ei*... joined by +, leading terms first."""
        if not self.terms:
            return "0"
        F = self.ring.field
        parts = []
        for exp in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[exp]
            factors = [str(F.to_int(c))]
            for v, e in exp:
                factors.append(f"{self.ring.names[v]}^{e}")
            parts.append("*".join(factors))
        return "+".join(parts)

    def __repr__(self):
        return self.text()


def parse_poly(ring, text):
    """Parse the external `coef*x^e*...+...` syntax."""
    F = ring.field
    text = text.strip()
    if text == "0":
        return ring.zero()
    terms = {}
    for chunk in text.split("+"):
        factors = chunk.strip().split("*")
        coeff = F.from_int(int(factors[0]))
        exp = {}
        for factor in factors[1:]:
            if "^" in factor:
                name, e = factor.split("^")
                e = int(e)
            else:
                name, e = factor, 1
            v = ring._index[name.strip()]
            exp[v] = exp.get(v, 0) + e
        key = tuple(sorted(exp.items()))
        terms[key] = F.add(terms.get(key, F.zero()), coeff)
    return ring.from_terms(terms)


# ---------------------------------------------------------------------------
# Groebner bases


class _Reducer:
    """Basis wrapper with precomputed leading data for division."""

    def __init__(self, ring, polys, order):
        self.ring = ring
        self.order = order
        self.entries = []
        for p in polys:
            if not p.is_zero():
                le, lc = p.leading(order)
                self.entries.append((le, dict(le), ring.field.inv(lc), p))

    def find_divisor(self, exp):
        dexp = dict(exp)
        for le, dle, lcinv, p in self.entries:
            ok = True
            for v, e in le:
                if dexp.get(v, 0) < e:
                    ok = False
                    break
            if ok:
                return le, lcinv, p
        return None


def normal_form(f, reducer, budgets=DEFAULT_BUDGETS):
    """Full normal form of f modulo the reducer basis."""
    ring = f.ring
    F = ring.field
    out = {}
    work = f
    steps = 0
    while not work.is_zero():
        exp, c = work.leading(reducer.order)
        hit = reducer.find_divisor(exp)
        if hit is None:
            out[exp] = c
            work = Poly(ring, {e: k for e, k in work.terms.items() if e != exp})
            continue
        le, lcinv, p = hit
        q = _exp_div(exp, le)
        factor = F.neg(F.mul(c, lcinv))
        work = work + p.scale_monomial(q, factor)
        steps += 1
        if steps > budgets.max_pairs:
            raise BudgetExceeded("reduction steps", budgets.max_pairs)
    return Poly(ring, out)


def groebner_basis(ring, gens, order=GREVLEX, budgets=DEFAULT_BUDGETS):
    """Reduced Groebner basis; membership of each input generator re-verified.

    Raises BudgetExceeded if any cap trips, UnitIdeal never (a unit ideal
    yields the basis [1]).
    """
    F = ring.field
    basis = []
    for g in gens:
        if not g.is_zero():
            if g.total_degree() > budgets.max_degree:
                raise BudgetExceeded("input degree", budgets.max_degree)
            basis.append(g)
    # initial interreduction keeps the pair set small
    basis = _interreduce(ring, basis, order, budgets)
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}
    processed = set()
    count = 0
    while pairs:
        count += 1
        if count > budgets.max_pairs:
            raise BudgetExceeded("S-pairs", budgets.max_pairs)
        i, j = min(
            pairs,
            key=lambda ij: (
                order.key(
                    _exp_lcm(basis[ij[0]].leading(order)[0], basis[ij[1]].leading(order)[0])
                ),
                ij,
            ),
        )
        pairs.discard((i, j))
        processed.add((i, j))
        ei, ci = basis[i].leading(order)
        ej, cj = basis[j].leading(order)
        lcm = _exp_lcm(ei, ej)
        # Buchberger's first criterion: coprime leading monomials
        if _exp_total(lcm) == _exp_total(ei) + _exp_total(ej):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            ek = basis[k].leading(order)[0]
            if _exp_divides(ek, lcm):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a in processed and b in processed:
                    skip = True
                    break
        if skip:
            continue
        spoly = basis[i].scale_monomial(_exp_div(lcm, ei), F.inv(ci)) - basis[j].scale_monomial(
            _exp_div(lcm, ej), F.inv(cj)
        )
        reducer = _Reducer(ring, basis, order)
        rem = normal_form(spoly, reducer, budgets)
        if rem.is_zero():
            continue
        if rem.total_degree() > budgets.max_degree:
            raise BudgetExceeded("polynomial degree", budgets.max_degree)
        basis.append(rem)
        if len(basis) > budgets.max_basis:
            raise BudgetExceeded("basis size", budgets.max_basis)
        n = len(basis) - 1
        for t in range(n):
            pairs.add((t, n))
    basis = _interreduce(ring, basis, order, budgets)
    # verify ideal membership of the inputs (reduction to zero)
    reducer = _Reducer(ring, basis, order)
    for g in gens:
        assert normal_form(g, reducer, budgets).is_zero(), "input fails to reduce to 0"
    return basis


def _interreduce(ring, basis, order, budgets):
    """Autoreduce: every element fully reduced modulo the others, leads monic."""
    F = ring.field
    work = [p for p in basis if not p.is_zero()]
    changed = True
    while changed:
        changed = False
        out = []
        for i in range(len(work)):
            others = out + work[i + 1:]
            if others:
                reducer = _Reducer(ring, others, order)
                q = normal_form(work[i], reducer, budgets)
            else:
                q = work[i]
            if q.is_zero():
                changed = True
                continue
            if q.terms != work[i].terms:
                changed = True
            _, lc = q.leading(order)
            if lc != F.one():
                q = q * F.inv(lc)
            out.append(q)
        work = out
    work.sort(key=lambda p: order.key(p.leading(order)[0]))
    return work


def is_unit_ideal(basis, order=GREVLEX):
    return any(p.leading(order)[0] == () for p in basis if not p.is_zero())


# ---------------------------------------------------------------------------
# dimension, Noether normalisation, fiber rings


def dimension(ring, basis, order=GREVLEX):
    """Krull dimension of the quotient via the leading-term ideal.

    basis must be a Groebner basis.  Raises UnitIdeal on the unit ideal.
    """
    if is_unit_ideal(basis, order):
        raise UnitIdeal("dimension of the unit ideal requested")
    supports = []
    for p in basis:
        le = p.leading(order)[0]
        supports.append(frozenset(v for v, _ in le))
    supports = [s for s in set(supports) if s]
    # relevant variables: only those in some support can need covering
    relevant = sorted(set().union(*supports)) if supports else []
    best = [len(relevant)]

    def min_hitting(remaining, chosen, memo):
        if not remaining:
            best[0] = min(best[0], chosen)
            return chosen
        if chosen >= best[0]:
            return None
        key = frozenset(remaining)
        hit = memo.get(key)
        if hit is not None and hit <= chosen:
            return None
        memo[key] = chosen
        s = min(remaining, key=len)
        result = None
        for v in sorted(s):
            rest = [t for t in remaining if v not in t]
            r = min_hitting(rest, chosen + 1, memo)
            if r is not None and (result is None or r < result):
                result = r
        return result

    if not supports:
        return ring.nvars
    cover = min_hitting(supports, 0, {})
    return ring.nvars - cover


def independent_set(ring, basis, dim, order=GREVLEX):
    """A maximal independent variable set of size dim (lexicographically first)."""
    supports = []
    for p in basis:
        le = p.leading(order)[0]
        s = frozenset(v for v, _ in le)
        if s:
            supports.append(s)

    def ok(S):
        return not any(s <= S for s in supports)

    chosen = set()
    for v in range(ring.nvars):
        if len(chosen) == dim:
            break
        cand = chosen | {v}
        if ok(cand):
            # ensure completability is not required: greedy works since we
            # verify the final size below
            chosen = cand
    if len(chosen) < dim:
        # greedy failed; fall back to exhaustive search over subsets
        for combo in itertools.combinations(range(ring.nvars), dim):
            if ok(set(combo)):
                return sorted(combo)
        raise AssertionError("no independent set of the computed dimension")
    return sorted(chosen)


class NoetherData:
    """Result of Noether normalisation.

    Attributes: ring, gens (substituted generators), basis (their Groebner
    basis in `order`, a grevlex with non-projection variables heaviest),
    dim, projection_vars (indices), change (dict var -> Poly giving the
    substitution applied), extension_degree (base field extension used;
    1 in the common case).
    """

    def __init__(self, ring, gens, basis, dim, projection_vars, change, order,
                 extension_degree=1):
        self.ring = ring
        self.gens = gens
        self.basis = basis
        self.dim = dim
        self.projection_vars = list(projection_vars)
        self.change = change
        self.order = order
        self.extension_degree = extension_degree


def _noether_position_ok(ring, basis, proj_vars, order):
    """Pure powers of every non-projection variable among the leading terms."""
    proj = set(proj_vars)
    need = set(range(ring.nvars)) - proj
    for v in sorted(need):
        found = False
        for p in basis:
            le = p.leading(order)[0]
            if len(le) == 1 and le[0][0] == v:
                found = True
                break
        if not found:
            return False
    return True


def _projection_order(ring, proj_vars):
    """Grevlex with non-projection variables heavier than projection ones."""
    proj = set(proj_vars)
    front = [v for v in range(ring.nvars) if v not in proj]
    return permuted_grevlex(front + sorted(proj))


def noether_normalize(ring, gens, order=GREVLEX, budgets=DEFAULT_BUDGETS, seed=0,
                      max_attempts=12):
    """Noether normalisation by deterministic substitution escalation.

    Tries the identity first, then sparse upper-triangular coordinate sums
    with scalars from a seeded stream.  The quotient being module-finite
    over the projection coordinates is certified by pure powers of every
    other variable among the leading terms (in a grevlex order where the
    projection variables are lightest).  Raises UnitIdeal for the unit ideal
    and BudgetExceeded if the escalation or Groebner budgets run out.
    """
    F = ring.field
    rng = random.Random(("noether", seed))
    basis0 = groebner_basis(ring, gens, order, budgets)
    if is_unit_ideal(basis0, order):
        raise UnitIdeal("cannot normalise the unit ideal")
    dim = dimension(ring, basis0, order)
    proj = independent_set(ring, basis0, dim, order)
    for attempt in range(max_attempts):
        if attempt == 0:
            subst = {}
            gens_a = list(gens)
        else:
            # triangular: projection candidates get shifted by non-candidates
            others = [v for v in range(ring.nvars) if v not in proj]
            subst = {}
            bound = min(F.order - 1, attempt + 1)
            for s in proj:
                expr = ring.var(s)
                for v in others:
                    c = rng.randrange(0, bound + 1)
                    if c:
                        expr = expr + ring.var(v) * F.from_int(c)
                subst[s] = expr
            gens_a = [g.subst(subst) for g in gens]
        order_a = _projection_order(ring, proj)
        basis_a = groebner_basis(ring, gens_a, order_a, budgets)
        if _noether_position_ok(ring, basis_a, proj, order_a):
            return NoetherData(ring, gens_a, basis_a, dim, proj, subst, order_a)
    raise BudgetExceeded("Noether substitution attempts", max_attempts)


def fiber_ring(nd, budgets=DEFAULT_BUDGETS):
    """Coordinate ring of the zero fiber of the Noether projection.

    Returns (FiniteAlgebra R, var_images) where var_images[i] is the image of
    ring variable i in R as a coordinate vector.
    """
    ring = nd.ring
    F = ring.field
    order = nd.order
    gens = list(nd.gens) + [ring.var(v) for v in nd.projection_vars]
    basis = groebner_basis(ring, gens, order, budgets)
    if is_unit_ideal(basis, order):
        # empty fiber: the zero algebra
        return FiniteAlgebra(F, [], ()), [() for _ in range(ring.nvars)]
    leads = [p.leading(order)[0] for p in basis]
    # staircase enumeration
    staircase = []
    seen = set()
    queue = [()]
    while queue:
        exp = queue.pop(0)
        if exp in seen:
            continue
        seen.add(exp)
        if any(_exp_divides(le, exp) for le in leads):
            continue
        staircase.append(exp)
        if len(staircase) > budgets.max_fiber_dim:
            raise BudgetExceeded("fiber dimension", budgets.max_fiber_dim)
        for v in range(ring.nvars):
            queue.append(_merge_exps(exp, ((v, 1),)))
    staircase.sort(key=order.key)
    index = {e: i for i, e in enumerate(staircase)}
    n = len(staircase)
    reducer = _Reducer(ring, basis, order)

    def nf_coords(p):
        nf = normal_form(p, reducer, budgets)
        vec = [F.zero()] * n
        for e, c in nf.terms.items():
            vec[index[e]] = c
        return tuple(vec)

    mult = []
    for i in range(n):
        row = []
        for j in range(n):
            if j < i:
                row.append(mult[j][i])
                continue
            prod = Poly(ring, {_merge_exps(staircase[i], staircase[j]): F.one()})
            row.append(nf_coords(prod))
        mult.append(row)
    unit = nf_coords(ring.one())
    R = FiniteAlgebra(F, mult, unit)
    var_images = [nf_coords(ring.var(v)) for v in range(ring.nvars)]
    return R, var_images


# ---------------------------------------------------------------------------
# linear elimination preprocessing


class LinearElimination:
    """Result of eliminating variables with degree-<=1 equations.

    polys: remaining generators (same ring, eliminated vars absent);
    substitution: dict var -> Poly over the remaining variables;
    inconsistent: True when a nonzero constant was derived (empty variety).
    """

    def __init__(self, polys, substitution, inconsistent):
        self.polys = polys
        self.substitution = substitution
        self.inconsistent = inconsistent

    def lift_point(self, values, algebra, embed=None):
        """Extend coordinates of the reduced system to the full variable set."""
        full = list(values)
        for v, expr in self.substitution.items():
            full[v] = expr.evaluate(values, algebra, embed)
        return full


def eliminate_linear(ring, polys, keep=frozenset()):
    """Repeatedly solve degree-<=1 generators and substitute them away."""
    F = ring.field
    polys = [p for p in polys if not p.is_zero()]
    substitution = {}
    while True:
        linear = [p for p in polys if p.total_degree() <= 1]
        if not linear:
            break
        # Gaussian elimination over the occurring variables
        vars_sorted = sorted(set().union(*[p.variables() for p in linear]) - set(keep))
        if not vars_sorted:
            if any(not p.is_zero() for p in linear):
                return LinearElimination(polys, substitution, True)
            break
        col = {v: i for i, v in enumerate(vars_sorted)}
        rows = []
        for p in linear:
            row = [F.zero()] * (len(vars_sorted) + 1)
            ok = True
            for e, c in p.terms.items():
                if e == ():
                    row[-1] = c
                else:
                    v = e[0][0]
                    if v in col:
                        row[col[v]] = c
                    else:
                        ok = False  # keep-variable: leave this poly alone
                        break
            if ok:
                rows.append(row)
        if not rows:
            break
        from . import linalg as la

        red, pivots = la.rref(F, rows)
        if len(vars_sorted) in pivots:
            return LinearElimination(polys, substitution, True)
        local_subst = {}
        for r, pc in zip(red, pivots):
            v = vars_sorted[pc]
            terms = {}
            for j, v2 in enumerate(vars_sorted):
                if j != pc and not F.is_zero(r[j]):
                    terms[((v2, 1),)] = F.neg(r[j])
            if not F.is_zero(r[-1]):
                terms[()] = F.neg(r[-1])
            local_subst[v] = ring.from_terms(terms)
        # compose into the accumulated substitution
        for v, expr in substitution.items():
            substitution[v] = expr.subst(local_subst)
        substitution.update(local_subst)
        new_polys = []
        for p in polys:
            q = p.subst(local_subst)
            if not q.is_zero():
                new_polys.append(q)
        polys = new_polys
    # dedupe
    seen = set()
    out = []
    for p in polys:
        key = frozenset(p.terms.items())
        if key not in seen:
            seen.add(key)
            out.append(p)
    return LinearElimination(out, substitution, False)


def evaluate(poly, values, algebra, embed=None):
    """Module-level alias for Poly.evaluate (spec operation name)."""
    return poly.evaluate(values, algebra, embed)
