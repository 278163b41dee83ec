"""Free noncommutative algebra on the generator symbols t_{ij}^{(r)},
series-valued generator matrices, Hopf structure maps (coproduct, counit,
antipode), tensor squares, and the m_f substitution endomorphisms.

Generators are interned into single integers encoding (r, i, j) so that
integer order equals the (r, i, j) generator order; words are tuples of
these integers.  All coefficients are Fraction.
"""

from fractions import Fraction

import numpy as np

from .exact import (ONE, ZERO, TruncSeries, rat_from_str, rat_to_str,
                    series_inverse, series_mul, series_shift)


class NonInvertible(ValueError):
    pass


# ---------------------------------------------------------------------------
# generator symbols

_I_BITS = 6
_J_BITS = 6
_MASK = (1 << _I_BITS) - 1


def gen_id(i, j, r):
    """Intern t_{ij}^{(r)} (1-based i, j; r >= 1) as a single integer."""
    if not (1 <= i <= _MASK and 1 <= j <= _MASK and r >= 1):
        raise ValueError("generator indices out of range")
    return (((r << _I_BITS) | i) << _J_BITS) | j


def gen_ijr(g):
    """Decode a generator id back to (i, j, r)."""
    j = g & _MASK
    i = (g >> _J_BITS) & _MASK
    r = g >> (_I_BITS + _J_BITS)
    return i, j, r


def word_sum_r(w):
    return sum(gen_ijr(g)[2] for g in w)


# ---------------------------------------------------------------------------
# noncommutative polynomials

def _term_key(w):
    return (len(w), w)


class NCPoly:
    """Finite Q-linear combination of words in the generators."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {} if terms is None else terms

    @staticmethod
    def zero():
        return NCPoly({})

    @staticmethod
    def one():
        return NCPoly({(): ONE})

    @staticmethod
    def constant(c):
        c = Fraction(c)
        return NCPoly({(): c} if c else {})

    @staticmethod
    def gen(i, j, r):
        return NCPoly({(gen_id(i, j, r),): ONE})

    @staticmethod
    def from_word(w, c=ONE):
        c = Fraction(c)
        return NCPoly({tuple(w): c} if c else {})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCPoly.constant(other)
        return isinstance(other, NCPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "NCPoly(0)"
        bits = []
        for w in sorted(self.terms, key=_term_key)[:6]:
            mono = "*".join("t[%d,%d;%d]" % gen_ijr(g) for g in w) or "1"
            bits.append("%s*%s" % (self.terms[w], mono))
        if len(self.terms) > 6:
            bits.append("...")
        return "NCPoly(%s)" % " + ".join(bits)

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return NCPoly.constant(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, ZERO) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return NCPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __neg__(self):
        return NCPoly({w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return NCPoly.zero()
            return NCPoly({w: c * x for w, x in self.terms.items()})
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                v = out.get(w, ZERO) + c1 * c2
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
        return NCPoly(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def unit_inverse(self):
        """Inverse when the polynomial is a nonzero constant."""
        if list(self.terms) != [()]:
            raise NonInvertible("constant term is not scalar")
        return NCPoly.constant(ONE / self.terms[()])

    def constant_coeff(self):
        return self.terms.get((), ZERO)

    def max_len(self):
        return max((len(w) for w in self.terms), default=0)

    def max_sum_r(self):
        return max((word_sum_r(w) for w in self.terms), default=0)

    def to_json(self):
        out = []
        for w in sorted(self.terms, key=_term_key):
            out.append({"coeff": rat_to_str(self.terms[w]),
                        "word": [list(gen_ijr(g)) for g in w]})
        return out

    @staticmethod
    def from_json(recs):
        terms = {}
        for rec in recs:
            w = tuple(gen_id(i, j, r) for i, j, r in rec["word"])
            terms[w] = rat_from_str(rec["coeff"])
        return NCPoly(terms)


class TensorNCPoly:
    """Q-linear combination of word (x) word; the legs commute."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {} if terms is None else terms

    @staticmethod
    def one():
        return TensorNCPoly({((), ()): ONE})

    @staticmethod
    def of(left, right):
        """left (x) right for NCPoly legs."""
        out = {}
        for w1, c1 in left.terms.items():
            for w2, c2 in right.terms.items():
                v = c1 * c2
                if v:
                    out[(w1, w2)] = out.get((w1, w2), ZERO) + v
                    if not out[(w1, w2)]:
                        del out[(w1, w2)]
        return TensorNCPoly(out)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, TensorNCPoly) and self.terms == other.terms

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TensorNCPoly(
                {((), ()): Fraction(other)} if other else {})
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, ZERO) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return TensorNCPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return TensorNCPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TensorNCPoly(
                {((), ()): Fraction(other)} if other else {})
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return TensorNCPoly({})
            return TensorNCPoly({k: c * x for k, x in self.terms.items()})
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                v = out.get(k, ZERO) + c1 * c2
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return TensorNCPoly(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def unit_inverse(self):
        if list(self.terms) != [((), ())]:
            raise NonInvertible("constant term is not scalar")
        return TensorNCPoly({((), ()): ONE / self.terms[((), ())]})


# ---------------------------------------------------------------------------
# generator matrices as truncated series

class MatSeries:
    """T(u) = sum_k C_k u^{-k} with C_k an N x N matrix of ring elements;
    C_0 is the identity for generator matrices (checked on demand)."""

    __slots__ = ("coeffs", "N")

    def __init__(self, coeffs, N):
        self.coeffs = list(coeffs)
        self.N = N

    @property
    def order(self):
        return len(self.coeffs) - 1

    def entry(self, i, j):
        """TruncSeries of entry (i, j) (0-based)."""
        return TruncSeries([c[i, j] for c in self.coeffs])

    def truncate(self, K):
        if K > self.order:
            raise ValueError("cannot extend truncation order")
        return MatSeries(self.coeffs[: K + 1], self.N)

    def map_coeffs(self, fn):
        out = []
        for c in self.coeffs:
            m = np.empty((self.N, self.N), dtype=object)
            for i in range(self.N):
                for j in range(self.N):
                    m[i, j] = fn(c[i, j])
            out.append(m)
        return MatSeries(out, self.N)


def _zeros(N):
    return np.full((N, N), NCPoly.zero(), dtype=object)


def _eye(N, one=None):
    one = NCPoly.one() if one is None else one
    m = np.full((N, N), one - one, dtype=object)
    for i in range(N):
        m[i, i] = one
    return m


def t_matrix(N, K):
    """The generic generator matrix: entry (i,j) = delta_ij + sum_r
    t_{ij}^{(r)} u^{-r}."""
    if K < 1:
        raise ValueError("K >= 1 required")
    coeffs = [_eye(N)]
    for r in range(1, K + 1):
        m = np.empty((N, N), dtype=object)
        for i in range(N):
            for j in range(N):
                m[i, j] = NCPoly.gen(i + 1, j + 1, r)
        coeffs.append(m)
    return MatSeries(coeffs, N)


def _mat_dot(a, b, N):
    out = np.empty((N, N), dtype=object)
    for i in range(N):
        for j in range(N):
            acc = None
            for k in range(N):
                if a[i, k] and b[k, j]:
                    t = a[i, k] * b[k, j]
                    acc = t if acc is None else acc + t
            if acc is None:
                acc = a[0, 0] - a[0, 0]
            out[i, j] = acc
    return out


def mat_mul(A, B):
    K = min(A.order, B.order)
    N = A.N
    out = []
    for k in range(K + 1):
        acc = None
        for a in range(k + 1):
            t = _mat_dot(A.coeffs[a], B.coeffs[k - a], N)
            acc = t if acc is None else acc + t
        out.append(acc)
    return MatSeries(out, N)


def mat_inverse(A):
    """Inverse via the geometric series; requires constant term I."""
    N = A.N
    if isinstance(A.coeffs[0][0, 0], TensorNCPoly):
        ident = _eye(N, one=TensorNCPoly.one())
    else:
        ident = _eye(N, one=NCPoly.one())
    if not (A.coeffs[0] == ident).all():
        raise NonInvertible("constant term is not the identity")
    out = [ident]
    for k in range(1, A.order + 1):
        acc = None
        for a in range(1, k + 1):
            t = _mat_dot(A.coeffs[a], out[k - a], N)
            acc = t if acc is None else acc + t
        out.append(-acc)
    return MatSeries(out, N)


def mat_shift(A, c):
    """A(u + c), entrywise binomial re-expansion."""
    N = A.N
    shifted = [TruncSeries([A.coeffs[k][i, j] for k in range(A.order + 1)])
               for i in range(N) for j in range(N)]
    shifted = [series_shift(s, c) for s in shifted]
    out = []
    for k in range(A.order + 1):
        m = np.empty((N, N), dtype=object)
        for i in range(N):
            for j in range(N):
                m[i, j] = shifted[i * N + j].coeffs[k]
        out.append(m)
    return MatSeries(out, N)


def transpose_t(A, data):
    """Entry (-j, -i) of the result is theta_{ij} t_{ij}(u), indices in the
    signed set of the algebra data."""
    from .liealg import theta_value
    N = A.N
    out = []
    for k in range(A.order + 1):
        m = np.empty((N, N), dtype=object)
        for i in data.indices:
            for j in data.indices:
                th = theta_value(data.family, i, j)
                src = A.coeffs[k][data.pos(i), data.pos(j)]
                m[data.pos(-j), data.pos(-i)] = th * src if th != 1 else src
        out.append(m)
    return MatSeries(out, N)


# ---------------------------------------------------------------------------
# Hopf structure maps

def coproduct_poly(p, N):
    """Delta extended multiplicatively from
    Delta(t_{ij}^{(r)}) = sum_a sum_{b=0..r} t_{ia}^{(b)} (x) t_{aj}^{(r-b)}
    with t^{(0)} = delta."""
    out = None
    for w, c in p.terms.items():
        term = TensorNCPoly({((), ()): c})
        for g in w:
            i, j, r = gen_ijr(g)
            acc = TensorNCPoly({})
            for a in range(1, N + 1):
                for b in range(r + 1):
                    if b == 0:
                        left = NCPoly.one() if a == i else None
                    else:
                        left = NCPoly.gen(i, a, b)
                    if left is None:
                        continue
                    if b == r:
                        right = NCPoly.one() if a == j else None
                    else:
                        right = NCPoly.gen(a, j, r - b)
                    if right is None:
                        continue
                    acc = acc + TensorNCPoly.of(left, right)
            term = term * acc
        out = term if out is None else out + term
    return out if out is not None else TensorNCPoly({})


def counit_poly(p):
    """epsilon: kills every generator, keeps the constant term."""
    return p.constant_coeff()


def antipode_table(N, K):
    """Map generator id -> NCPoly: t_{ij}^{(r)} -> entry (i,j) of T^{-1}
    at order r, for r <= K."""
    inv = mat_inverse(t_matrix(N, K))
    table = {}
    for r in range(1, K + 1):
        for i in range(N):
            for j in range(N):
                table[gen_id(i + 1, j + 1, r)] = inv.coeffs[r][i, j]
    return table


def substitute_poly(p, table, anti=False):
    """Algebra (anti)homomorphism determined by generator images."""
    out = None
    for w, c in p.terms.items():
        term = NCPoly.constant(c)
        seq = reversed(w) if anti else w
        for g in seq:
            term = term * table[g]
        out = term if out is None else out + term
    return out if out is not None else NCPoly.zero()


def antipode_poly(p, table):
    """S extended as an anti-homomorphism from the T^{-1} entry images."""
    return substitute_poly(p, table, anti=True)


def mf_table(N, K, f):
    """Generator images of the substitution induced by T(u) -> f(u) T(u):
    m_f(t_{ij}^{(r)}) = t_{ij}^{(r)} + sum_{a<r} f_a t_{ij}^{(r-a)}
    + f_r delta_ij."""
    if f.coeffs[0] != ONE:
        raise ValueError("f must have constant term 1")
    table = {}
    for r in range(1, K + 1):
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                img = NCPoly.gen(i, j, r)
                for a in range(1, r):
                    if a <= f.order and f.coeffs[a]:
                        img = img + f.coeffs[a] * NCPoly.gen(i, j, r - a)
                if r <= f.order and f.coeffs[r] and i == j:
                    img = img + NCPoly.constant(f.coeffs[r])
                table[gen_id(i, j, r)] = img
    return table


def apply_mf(A, f):
    """The m_f substitution applied entrywise to a generator matrix."""
    K = A.order
    table = mf_table(A.N, max_order_in(A), f)
    return A.map_coeffs(lambda p: substitute_poly(p, table))


def max_order_in(A):
    m = 1
    for c in A.coeffs:
        for p in c.flat:
            if isinstance(p, NCPoly):
                for w in p.terms:
                    for g in w:
                        m = max(m, gen_ijr(g)[2])
    return m
