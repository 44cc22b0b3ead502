"""Truncated graded conformal vertex algebras and their mode operators.

Two built-in instances: the rank-one Heisenberg vertex algebra at level 1
(central charge 1) and the Virasoro vertex algebra with rational central
charge.  Basis vectors are indexed by partitions:

* Heisenberg: all partitions of d, the vector b_{-p1} ... b_{-pk}|0>;
* Virasoro:   partitions of d with parts >= 2, the vector L_{-p1}...L_{-pk}|0>.

The vector layer (FockVector) is untruncated and exact; the truncation
window [0, N] only governs which mode matrices may be realized.

Mode operators of composite vectors are built by the standard recursive
reconstruction from generator modes,

    (a_{(-m)}B)_(n) = sum_{j>=0} C(m+j-1, j) *
        ( a_{(-m-j)} B_{(n+j)} + (-1)^(m-1) B_{(n-m-j)} a_{(j)} ),

with the generator actions (Heisenberg modes, Virasoro L's) given in
closed combinatorial form.  The axiom checker validates the construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .exactalg import SparseMatrix, SparseVector

Partition = tuple  # decreasing tuple of positive ints

HEISENBERG = "heisenberg"
VIRASORO = "virasoro"


class TruncationWindowError(ValueError):
    """A mode application would leave the degree window [0, N]."""


def binom(m: int, n: int) -> Fraction:
    """Generalized binomial coefficient C(m, n) for integer m, n >= 0."""
    if n < 0:
        return Fraction(0)
    num = 1
    for i in range(n):
        num *= m - i
    return Fraction(num, factorial(n))


def partitions_of(d: int, min_part: int = 1):
    """Partitions of d with parts >= min_part, decreasing, canonical order."""
    result = []

    def rec(remaining, max_part, prefix):
        if remaining == 0:
            result.append(tuple(prefix))
            return
        for p in range(min(max_part, remaining), min_part - 1, -1):
            prefix.append(p)
            rec(remaining - p, p, prefix)
            prefix.pop()

    rec(d, d, [])
    return result


class FockVector:
    """Exact linear combination of partition-indexed basis vectors."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for p, c in dict(terms).items():
                c = c if isinstance(c, Fraction) else Fraction(c)
                if c != 0:
                    self.terms[tuple(p)] = c

    @staticmethod
    def basis(p) -> "FockVector":
        return FockVector({tuple(p): Fraction(1)})

    @staticmethod
    def vacuum() -> "FockVector":
        return FockVector({(): Fraction(1)})

    @staticmethod
    def zero() -> "FockVector":
        return FockVector()

    def is_zero(self):
        return not self.terms

    def add_term(self, p, c):
        p = tuple(p)
        w = self.terms.get(p, Fraction(0)) + c
        if w == 0:
            self.terms.pop(p, None)
        else:
            self.terms[p] = w

    def plus(self, other, c=Fraction(1)):
        out = FockVector(self.terms)
        for p, v in other.terms.items():
            out.add_term(p, c * v)
        return out

    def scaled(self, c):
        c = c if isinstance(c, Fraction) else Fraction(c)
        if c == 0:
            return FockVector()
        return FockVector({p: c * v for p, v in self.terms.items()})

    def degrees(self):
        return sorted({sum(p) for p in self.terms})

    def degree(self):
        """Degree if homogeneous, else raise."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError(f"vector is not homogeneous: degrees {ds}")
        return ds[0]

    def __eq__(self, other):
        return isinstance(other, FockVector) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{list(p) if p else '|0>'}"
                          for p, c in sorted(self.terms.items()))


@dataclass(frozen=True)
class VertexAlgebraInstance:
    """A truncated graded conformal vertex algebra with cached mode data."""

    kind: str
    truncation: int
    central_charge: Fraction = None
    min_part: int = field(default=None, compare=False)
    _basis_cache: dict = field(default_factory=dict, compare=False,
                               repr=False)
    _mode_cache: dict = field(default_factory=dict, compare=False, repr=False)
    _apply_cache: dict = field(default_factory=dict, compare=False,
                               repr=False)
    _L_cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in (HEISENBERG, VIRASORO):
            raise ValueError(f"unknown vertex algebra kind {self.kind!r}")
        if self.kind == HEISENBERG:
            object.__setattr__(self, "min_part", 1)
            if self.central_charge is None:
                object.__setattr__(self, "central_charge", Fraction(1))
            elif self.central_charge != 1:
                raise ValueError("the Heisenberg instance has central charge 1")
        else:
            object.__setattr__(self, "min_part", 2)
            if self.central_charge is None:
                raise ValueError("Virasoro needs an explicit central charge")
            object.__setattr__(self, "central_charge",
                               Fraction(self.central_charge))

    # --- graded basis -----------------------------------------------------

    def basis(self, d: int):
        if d < 0:
            return []
        key = d
        if key not in self._basis_cache:
            self._basis_cache[key] = partitions_of(d, self.min_part)
        return self._basis_cache[key]

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def basis_index(self, p: Partition) -> int:
        return self.basis(sum(p)).index(tuple(p))

    @property
    def conformal_vector(self) -> FockVector:
        if self.kind == HEISENBERG:
            return FockVector({(1, 1): Fraction(1, 2)})
        return FockVector.basis((2,))

    @property
    def vacuum(self) -> FockVector:
        return FockVector.vacuum()

    # --- generator mode actions -------------------------------------------

    def _heis_mode(self, n: int, p: Partition) -> FockVector:
        """b_(n) on a Heisenberg basis partition; [b_m, b_k] = m delta_{m+k}."""
        if n == 0:
            return FockVector.zero()
        if n < 0:
            return FockVector.basis(tuple(sorted(p + (-n,), reverse=True)))
        mult = p.count(n)
        if mult == 0:
            return FockVector.zero()
        q = list(p)
        q.remove(n)
        return FockVector.basis(tuple(q)).scaled(Fraction(n * mult))

    def _vir_L(self, k: int, p: Partition) -> FockVector:
        """L_k on a Virasoro PBW basis partition (parts >= 2)."""
        key = (k, p)
        cached = self._L_cache.get(key)
        if cached is not None:
            return cached
        c = self.central_charge
        if not p:
            out = (FockVector.basis((-k,)) if k <= -2 else FockVector.zero())
        elif k <= -2 and -k >= p[0]:
            out = FockVector.basis((-k,) + p)
        else:
            lam, rest = p[0], p[1:]
            # L_k L_{-lam} = L_{-lam} L_k + (k+lam) L_{k-lam}
            #                + delta_{k,lam} c (k^3-k)/12
            out = self._vir_prepend(lam, self._vir_L(k, rest))
            out = out.plus(self._vir_L(k - lam, rest), Fraction(k + lam))
            if k == lam:
                out = out.plus(FockVector.basis(rest),
                               c * Fraction(k ** 3 - k, 12))
        self._L_cache[key] = out
        return out

    def _vir_prepend(self, m: int, v: FockVector) -> FockVector:
        out = FockVector.zero()
        for q, coef in v.terms.items():
            out = out.plus(self._vir_L(-m, q), coef)
        return out

    def _gen_mode(self, n: int, p: Partition) -> FockVector:
        """Mode a_(n) of the generating vector: Heisenberg b or Virasoro omega."""
        if self.kind == HEISENBERG:
            return self._heis_mode(n, p)
        return self._vir_L(n - 1, p)

    @property
    def _gen_weight(self) -> int:
        return 1 if self.kind == HEISENBERG else 2

    # --- composite mode action ---------------------------------------------

    def _apply_partition_mode(self, A: Partition, n: int,
                              p: Partition) -> FockVector:
        key = (A, n, p)
        cached = self._apply_cache.get(key)
        if cached is not None:
            return cached
        if not A:  # vacuum: Y(|0>,z) = id
            out = FockVector.basis(p) if n == -1 else FockVector.zero()
            self._apply_cache[key] = out
            return out
        gw = self._gen_weight
        # A = a_{(-m)} B with a the generator
        m = A[0] - gw + 1
        B = A[1:]
        deg_u = sum(p)
        deg_B = sum(B)
        out = FockVector.zero()
        sign = Fraction((-1) ** (m - 1))
        # first sum: a_{(-m-j)} B_{(n+j)} u ; nonzero needs the inner result
        # degree deg_u + deg_B - (n+j) - 1 >= 0
        jmax1 = deg_u + deg_B - n - 1
        for j in range(0, max(jmax1, -1) + 1):
            inner = self._apply_partition_mode(B, n + j, p)
            if inner.is_zero():
                continue
            coef = binom(m + j - 1, j)
            for q, cq in inner.terms.items():
                out = out.plus(self._gen_mode(-m - j, q), coef * cq)
        # second sum: B_{(n-m-j)} a_{(j)} u ; a_{(j)} u = 0 for large j
        jmax2 = deg_u + gw - 1
        for j in range(0, jmax2 + 1):
            inner = self._gen_mode(j, p)
            if inner.is_zero():
                continue
            coef = sign * binom(m + j - 1, j)
            for q, cq in inner.terms.items():
                out = out.plus(self._apply_partition_mode(B, n - m - j, q),
                               coef * cq)
        self._apply_cache[key] = out
        return out

    def apply_mode(self, A, n: int, v: FockVector) -> FockVector:
        """A_(n) v, exact and untruncated.  A is a FockVector or partition."""
        if not isinstance(A, FockVector):
            A = FockVector.basis(A)
        out = FockVector.zero()
        for ap, ac in A.terms.items():
            for p, pc in v.terms.items():
                out = out.plus(self._apply_partition_mode(ap, n, p), ac * pc)
        return out

    def apply_L(self, k: int, v: FockVector) -> FockVector:
        """Virasoro mode L_k = omega_(k+1) on any vector."""
        return self.apply_mode(self.conformal_vector, k + 1, v)

    def translate(self, v: FockVector) -> FockVector:
        """T = L_{-1}."""
        return self.apply_L(-1, v)

    # --- realized matrices ---------------------------------------------------

    def vector_coords(self, v: FockVector, d: int) -> SparseVector:
        basis = self.basis(d)
        entries = {}
        for p, c in v.terms.items():
            if sum(p) != d:
                raise ValueError(f"term {p} not of degree {d}")
            entries[basis.index(p)] = c
        return SparseVector(entries, len(basis))

    def mode_matrix(self, A, n: int, d: int) -> SparseMatrix:
        """Exact matrix of A_(n): V_d -> V_{d+m-n-1} inside the window."""
        if not isinstance(A, FockVector):
            A = FockVector.basis(A)
        m = A.degree()
        if m is None:
            raise ValueError("zero vector has no mode matrix")
        target = d + m - n - 1
        if not (0 <= d <= self.truncation and 0 <= target <= self.truncation):
            raise TruncationWindowError(
                f"mode A_{n} of a degree-{m} vector maps degree {d} to "
                f"{target}, outside the window [0, {self.truncation}]")
        key = (frozenset(A.terms.items()), n, d)
        cached = self._mode_cache.get(key)
        if cached is not None:
            return cached
        cols = []
        for p in self.basis(d):
            image = self.apply_mode(A, n, FockVector.basis(p))
            if not image.is_zero() and image.degree() != target:
                raise AssertionError("mode degree bookkeeping violated")
            cols.append(self.vector_coords(image, target).entries)
        mat = SparseMatrix.from_columns(cols, self.dim(target))
        self._mode_cache[key] = mat
        return mat

    def L_matrix(self, k: int, d: int) -> SparseMatrix:
        return self.mode_matrix(self.conformal_vector, k + 1, d)


# --- U(V) elements, bracket, involution, contragredient pairing ------------


class LieElement:
    """Finite formal sum of coefficient * A_[n] with A a FockVector term."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # terms: dict (partition, n) -> Fraction
        self.terms = {}
        if terms:
            for (p, n), c in dict(terms).items():
                c = c if isinstance(c, Fraction) else Fraction(c)
                if c != 0:
                    self.terms[(tuple(p), n)] = c

    @staticmethod
    def mode(A, n: int, c=Fraction(1)) -> "LieElement":
        if isinstance(A, FockVector):
            return LieElement({(p, n): Fraction(c) * cc
                               for p, cc in A.terms.items()})
        return LieElement({(tuple(A), n): Fraction(c)})

    @staticmethod
    def zero() -> "LieElement":
        return LieElement()

    def is_zero(self):
        return not self.terms

    def plus(self, other, c=Fraction(1)):
        out = LieElement(self.terms)
        for k, v in other.terms.items():
            w = out.terms.get(k, Fraction(0)) + c * v
            if w == 0:
                out.terms.pop(k, None)
            else:
                out.terms[k] = w
        return out

    def scaled(self, c):
        c = Fraction(c)
        return LieElement({k: c * v for k, v in self.terms.items()}
                          if c else {})

    def apply(self, V: VertexAlgebraInstance, v: FockVector) -> FockVector:
        out = FockVector.zero()
        for (p, n), c in self.terms.items():
            out = out.plus(V.apply_mode(p, n, v), c)
        return out

    def realize(self, V: VertexAlgebraInstance, d: int) -> SparseMatrix:
        """Matrix on V_d; every term must stay inside the window."""
        mats = None
        for (p, n), c in sorted(self.terms.items()):
            m = V.mode_matrix(p, n, d).scaled(c)
            mats = m if mats is None else mats.plus(m)
        if mats is None:
            raise ValueError("realizing the zero element needs a target degree")
        return mats

    def term_degree(self):
        """Operator degree if all terms share it, else raise."""
        degs = {sum(p) - n - 1 for (p, n) in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"mixed operator degrees {sorted(degs)}")
        return degs.pop()

    def __eq__(self, other):
        return isinstance(other, LieElement) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{list(p) if p else '|0>'}[{n}]"
                          for (p, n), c in sorted(self.terms.items()))


def u_bracket(x: LieElement, y: LieElement,
              V: VertexAlgebraInstance) -> LieElement:
    """[A_[m], B_[k]] = sum_{n>=0} C(m,n) (A_(n) B)_[m+k-n].

    Terms whose vector part leaves the degree window are dropped (and only
    such terms; the bracket is otherwise exact).
    """
    out = LieElement.zero()
    for (pa, m), ca in x.terms.items():
        dega = sum(pa)
        for (pb, k), cb in y.terms.items():
            degb = sum(pb)
            # A_(n)B = 0 once its degree dega+degb-n-1 < 0
            for n in range(0, dega + degb):
                prod = V.apply_mode(pa, n, FockVector.basis(pb))
                if prod.is_zero():
                    continue
                if prod.degree() > V.truncation:
                    continue
                out = out.plus(LieElement.mode(prod, m + k - n),
                               ca * cb * binom(m, n))
    return out


def theta(x: LieElement, V: VertexAlgebraInstance) -> LieElement:
    """The involution A_[j] -> (-1)^(a-1) sum_i (1/i!) (L_1^i A)_[2a-j-i-2]."""
    out = LieElement.zero()
    for (p, j), c in x.terms.items():
        a = sum(p)
        sign = Fraction((-1) ** ((a - 1) % 2))
        vec = FockVector.basis(p)
        i = 0
        while not vec.is_zero():
            out = out.plus(LieElement.mode(vec, 2 * a - j - i - 2),
                           c * sign / factorial(i))
            vec = V.apply_L(1, vec)
            i += 1
    return out


def contragredient_pair(V: VertexAlgebraInstance, psi: FockVector,
                        x: LieElement, u: FockVector) -> Fraction:
    """<A_[n] psi, u> = <psi, theta(A_[n]) u> on the graded dual.

    psi is a dual vector written in the dual partition basis of its degree;
    the pairing is the coefficient pairing <p*, q> = delta_{p,q}.
    """
    acted = theta(x, V).apply(V, u)
    total = Fraction(0)
    for p, c in psi.terms.items():
        total += c * acted.terms.get(p, Fraction(0))
    return total


def check_axioms(V: VertexAlgebraInstance, max_degree: int = None,
                 max_index: int = 4) -> list:
    """Coefficientwise axiom checks on the truncated instance.

    Verifies the vacuum axiom, the translation axiom (TA)_n = -n A_{n-1},
    locality through the commutator identity
    [A_m, B_k] = sum_{n>=0} C(m,n) (A_(n)B)_{m+k-n} (checked on vectors,
    independently of how composite modes were built), the Virasoro
    relations with central term, and the L0 grading.  Returns a list of
    report entries {check, passed, witness}.
    """
    if max_degree is None:
        max_degree = min(4, V.truncation)
    entries = []

    def record(check, passed, witness=None):
        entries.append({"check": check, "passed": passed,
                        "witness": witness})

    vectors = [FockVector.basis(p)
               for d in range(max_degree + 1) for p in V.basis(d)]

    # vacuum axiom: |0>_(n) = delta_{n,-1} id and A_(n)|0> for n >= 0 is 0,
    # A_(-1)|0> = A
    ok, witness = True, None
    vac = FockVector.vacuum()
    for u in vectors:
        for n in range(-max_index, max_index + 1):
            out = V.apply_mode(vac, n, u)
            want = u if n == -1 else FockVector.zero()
            if out != want:
                ok, witness = False, f"|0>_({n}) on {u}"
                break
    for A in vectors:
        for n in range(0, max_index + 1):
            if not V.apply_mode(A, n, vac).is_zero():
                ok, witness = False, f"{A}_({n})|0> != 0"
        if V.apply_mode(A, -1, vac) != A:
            ok, witness = False, f"{A}_(-1)|0> != {A}"
    record("vacuum", ok, witness)

    # translation axiom
    ok, witness = True, None
    for A in vectors:
        TA = V.translate(A)
        for n in range(-max_index, max_index + 1):
            for u in vectors:
                lhs = V.apply_mode(TA, n, u)
                rhs = V.apply_mode(A, n - 1, u).scaled(-n)
                if lhs != rhs:
                    ok, witness = False, f"(T{A})_({n}) on {u}"
                    break
    record("translation", ok, witness)

    # locality via the commutator identity on vectors
    ok, witness = True, None
    for A in vectors:
        da = A.degree()
        for B in vectors:
            db = B.degree()
            for m in range(-2, 3):
                for k in range(-2, 3):
                    for u in vectors[:6]:
                        lhs = V.apply_mode(A, m, V.apply_mode(B, k, u)).plus(
                            V.apply_mode(B, k, V.apply_mode(A, m, u)),
                            Fraction(-1))
                        rhs = FockVector.zero()
                        for n in range(0, da + db):
                            AnB = V.apply_mode(A, n, B)
                            if AnB.is_zero():
                                continue
                            rhs = rhs.plus(
                                V.apply_mode(AnB, m + k - n, u), binom(m, n))
                        if lhs != rhs:
                            ok = False
                            witness = f"[{A}_({m}), {B}_({k})] on {u}"
                            break
    record("locality_commutator", ok, witness)

    # Virasoro relations with central term
    ok, witness = True, None
    c = V.central_charge
    for n in range(-max_index, max_index + 1):
        for m in range(-max_index, max_index + 1):
            for u in vectors:
                lhs = V.apply_L(n, V.apply_L(m, u)).plus(
                    V.apply_L(m, V.apply_L(n, u)), Fraction(-1))
                rhs = V.apply_L(n + m, u).scaled(n - m)
                if n + m == 0:
                    rhs = rhs.plus(u, c * Fraction(n ** 3 - n, 12))
                if lhs != rhs:
                    ok, witness = False, f"[L_{n}, L_{m}] on {u}"
                    break
    record("virasoro_bracket", ok, witness)

    # L0 grading
    ok, witness = True, None
    for u in vectors:
        if V.apply_L(0, u) != u.scaled(u.degree()):
            ok, witness = False, f"L_0 on {u}"
    record("l0_grading", ok, witness)
    return entries


def c2_quotient_dim(V: VertexAlgebraInstance, N: int = None) -> dict:
    """Per-degree dim of M_d modulo span{A_{-n}u : n >= 2} inside the window.

    An over-approximation of dim(M/C_2 M) componentwise, non-increasing in N.
    """
    from .exactalg import Subspace, span_insert

    if N is None:
        N = V.truncation
    dims = {}
    for d in range(N + 1):
        amb = V.dim(d)
        space = Subspace.empty(amb)
        for da in range(1, d + 1):
            for A in V.basis(da):
                for du in range(0, d + 1):
                    # A_{(-n)} maps degree du to du + da + n - 1 = d
                    n = d - du - da + 1
                    if n < 2:
                        continue
                    for u in V.basis(du):
                        img = V.apply_mode(A, -n, FockVector.basis(u))
                        if img.is_zero():
                            continue
                        space = span_insert(space,
                                            V.vector_coords(img, d))
        dims[d] = amb - space.rank
    return dims
