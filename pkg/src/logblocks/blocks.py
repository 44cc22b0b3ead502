"""Coinvariants of tensor products of vacuum modules under the Lie algebra
of global-form Fourier coefficients.

Pipeline: enumerate global log 1-forms on the curve, restrict each to the
punctured disc at every puncture, convert each restriction into a mode sum
(residue pairing), and quotient the tensor product of module windows by
the span of all generator applications.

Frame conventions at the punctures:

* nodal punctures carry the branch coordinate s = 1/t, so the restriction
  is pulled back through t -> 1/t before the residue pairing;
* the puncture at infinity on the projective line additionally twists by
  theta (the contragredient involution), which converts a mode written in
  the frame at zero into its action on the fiber at infinity;
* the puncture at zero uses the residue pairing directly.

Dimensions are reported per total degree through the truncation window
with a stabilization flag (the value is unchanged when recomputed at
truncation N-1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .curves import (NODAL_INF1, NODAL_INF2, P1_ZERO, P1_INFINITY,
                     CurveModel, GlobalLogForm, Puncture, global_form_basis,
                     restrict_to_disc)
from .exactalg import SparseVector, Subspace, span_insert
from .series import DiscForm, invert_variable
from .vacore import FockVector, LieElement, VertexAlgebraInstance, theta


def vertex_op_residue(v: FockVector, omega: DiscForm,
                      V: VertexAlgebraInstance) -> LieElement:
    """Residue pairing of Y(v, t) against a disc form.

    For omega = sum_k c_k t^k dt the residue of Y(v,t) omega picks the
    mode with t-exponent -n-1+k = -1, so the result is sum_k c_k v_[k].
    """
    if not isinstance(v, FockVector):
        v = FockVector.basis(v)
    v.degree()  # homogeneity check
    out = LieElement.zero()
    for k, c in omega.in_dt().series.coefficients.items():
        out = out.plus(LieElement.mode(v, k), c)
    return out


@dataclass(frozen=True)
class LieGenerator:
    """One global form paired with one algebra vector: a component per
    puncture, all coming from restrictions of the same form."""

    form_label: str
    vector: tuple  # partition of the paired algebra vector
    components: tuple  # one LieElement per puncture


def puncture_component(v, omega: DiscForm, p: Puncture,
                       V: VertexAlgebraInstance) -> LieElement:
    """Mode sum at one puncture from a restricted form, frame-adjusted."""
    if p.location in (NODAL_INF1, NODAL_INF2):
        return vertex_op_residue(v, invert_variable(omega), V)
    if p.location == P1_INFINITY:
        return theta(vertex_op_residue(v, invert_variable(omega), V), V)
    return vertex_op_residue(v, omega, V)


def lie_generators(curve: CurveModel, V: VertexAlgebraInstance,
                   max_pole: int = None, max_deg: int = None,
                   vector_pool=None) -> list:
    """All (global form, homogeneous vector) generators up to the bounds.

    vector_pool defaults to every partition basis vector of V with degree
    at most the truncation; functoriality checks substitute a subalgebra
    pool of FockVectors.
    """
    N = V.truncation
    if max_deg is None:
        max_deg = N + 2
    if max_pole is None:
        max_pole = N + 2
    if vector_pool is None:
        vector_pool = [FockVector.basis(p)
                       for d in range(N + 1) for p in V.basis(d)]
    series_order = max(2 * N + max_deg + max_pole + 4, 8)
    gens = []
    for omega in global_form_basis(curve, max_pole, max_deg):
        restrictions = [restrict_to_disc(omega, p, series_order)
                        for p in curve.punctures]
        for v in vector_pool:
            if v.is_zero():
                continue
            comps = tuple(puncture_component(v, r, p, V)
                          for r, p in zip(restrictions, curve.punctures))
            if all(c.is_zero() for c in comps):
                continue
            key = next(iter(v.terms))
            gens.append(LieGenerator(omega.label(), key, comps))
    return gens


# --- tensor window and spans -------------------------------------------------


class TensorWindow:
    """Basis of the total-degree <= N window of a tensor product of
    vacuum modules, with columns ordered by total degree descending."""

    def __init__(self, modules, N: int):
        self.modules = list(modules)
        self.N = N
        tuples = [()]
        for M in self.modules:
            tuples = [t + (p,) for t in tuples
                      for d in range(N + 1 - sum(sum(q) for q in t))
                      for p in M.basis(d)]
        tuples.sort(key=lambda t: (-sum(sum(p) for p in t), t))
        self.basis = tuples
        self.index = {t: i for i, t in enumerate(tuples)}
        self.dimension = len(tuples)
        self._degree_counts = {}
        for t in tuples:
            d = sum(sum(p) for p in t)
            self._degree_counts[d] = self._degree_counts.get(d, 0) + 1

    def ambient_dim(self, d: int) -> int:
        return self._degree_counts.get(d, 0)

    def total_degree(self, t) -> int:
        return sum(sum(p) for p in t)

    def flatten(self, terms: dict) -> SparseVector:
        return SparseVector({self.index[t]: c for t, c in terms.items()},
                            self.dimension)

    def apply_generator(self, gen: LieGenerator):
        """All in-window images of the generator on the window basis.

        An application with any out-of-window component is dropped whole;
        returns (vectors, dropped count).
        """
        vectors = []
        dropped = 0
        for t in self.basis:
            out = {}
            ok = True
            for i, comp in enumerate(gen.components):
                if comp.is_zero():
                    continue
                acted = comp.apply(self.modules[i], FockVector.basis(t[i]))
                for q, c in acted.terms.items():
                    new = t[:i] + (q,) + t[i + 1:]
                    if sum(sum(p) for p in new) > self.N:
                        ok = False
                        break
                    out[new] = out.get(new, Fraction(0)) + c
                if not ok:
                    break
            if not ok:
                dropped += 1
                continue
            out = {k: c for k, c in out.items() if c != 0}
            if out:
                vectors.append(self.flatten(out))
        return vectors, dropped


@dataclass(frozen=True)
class CoinvariantReport:
    curve: str
    punctures: tuple
    algebra: str
    truncation: int
    max_pole: int
    max_deg: int
    generator_count: int
    dropped_applications: int
    rows: tuple  # (degree, ambient_dim, image_rank, quotient_dim, stabilized)

    def quotient_dims(self) -> dict:
        return {r[0]: r[3] for r in self.rows}

    def total_dim(self) -> int:
        return sum(r[3] for r in self.rows)

    def to_csv(self) -> str:
        lines = ["degree,ambient_dim,image_rank,quotient_dim,stabilized"]
        for d, amb, rank, quo, stab in self.rows:
            lines.append(f"{d},{amb},{rank},{quo},{str(stab).lower()}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        head = [
            f"curve: {self.curve}",
            f"punctures: {', '.join(self.punctures)}",
            f"algebra: {self.algebra}",
            f"truncation: {self.truncation}",
            f"max_pole: {self.max_pole}",
            f"max_deg: {self.max_deg}",
            f"generators: {self.generator_count}",
            f"dropped_applications: {self.dropped_applications}",
            "",
        ]
        return "\n".join(head) + self.to_csv()


def _algebra_label(V: VertexAlgebraInstance) -> str:
    if V.kind == "heisenberg":
        return "heisenberg"
    return f"virasoro(c={V.central_charge})"


def _dims_from_span(window: TensorWindow, span: Subspace, N: int):
    """Per-degree image ranks from the degree-descending echelon pivots.

    With columns sorted by descending total degree, the vectors of total
    degree <= d occupy a trailing coordinate block, so the rank of the
    intersection with that block is the number of echelon pivots inside
    it; per-degree ranks are consecutive differences.
    """
    # pivot index -> degree of its basis tuple
    pivot_degs = [window.total_degree(window.basis[p]) for p in span.pivots]
    cumulative = {}
    for d in range(N + 1):
        cumulative[d] = sum(1 for pd in pivot_degs if pd <= d)
    ranks = {}
    prev = 0
    for d in range(N + 1):
        ranks[d] = cumulative[d] - prev
        prev = cumulative[d]
    return ranks


def _coinvariant_core(curve, modules, generators, N):
    window = TensorWindow(modules, N)
    span = Subspace.empty(window.dimension)
    dropped = 0
    for gen in generators:
        vectors, d = window.apply_generator(gen)
        dropped += d
        for vec in vectors:
            span = span_insert(span, vec)
    ranks = _dims_from_span(window, span, N)
    dims = {d: window.ambient_dim(d) - ranks[d] for d in range(N + 1)}
    return window, ranks, dims, dropped


def coinvariant_dims(curve: CurveModel, V: VertexAlgebraInstance,
                     modules=None, N: int = None, max_pole: int = None,
                     max_deg: int = None, vector_pool=None,
                     check_stability: bool = True) -> CoinvariantReport:
    """Per-degree dimensions of the coinvariant quotient inside the window.

    modules defaults to one vacuum module (a copy of V) per puncture.
    The stabilization flag per degree records whether rerunning at N-1
    yields the same value.
    """
    if N is None:
        N = V.truncation
    if max_deg is None:
        max_deg = N + 2
    if max_pole is None:
        max_pole = N + 2
    if modules is None:
        modules = [V] * len(curve.punctures)
    if len(modules) != len(curve.punctures):
        raise ValueError("one module per puncture required")
    gens = lie_generators(curve, V, max_pole=max_pole, max_deg=max_deg,
                          vector_pool=vector_pool)
    window, ranks, dims, dropped = _coinvariant_core(curve, modules, gens, N)
    stabilized = {d: False for d in range(N + 1)}
    if check_stability and N >= 1:
        Vprev = VertexAlgebraInstance(V.kind, N - 1,
                                      None if V.kind == "heisenberg"
                                      else V.central_charge)
        pool_prev = None
        if vector_pool is not None:
            pool_prev = [v for v in vector_pool
                         if v.degrees() and v.degrees()[-1] <= N - 1]
        prev = coinvariant_dims(curve, Vprev, modules=[Vprev] * len(modules),
                                N=N - 1, max_pole=max_pole, max_deg=max_deg,
                                vector_pool=pool_prev, check_stability=False)
        prev_dims = prev.quotient_dims()
        for d in range(N):
            stabilized[d] = prev_dims.get(d) == dims[d]
    rows = tuple((d, window.ambient_dim(d), ranks[d], dims[d], stabilized[d])
                 for d in range(N + 1))
    return CoinvariantReport(curve.kind,
                             tuple(p.name for p in curve.punctures),
                             _algebra_label(V), N, max_pole, max_deg,
                             len(gens), dropped, rows)


@dataclass(frozen=True)
class PropagationReport:
    base: CoinvariantReport
    extended: CoinvariantReport
    hypothesis_applies: bool
    equal_per_degree: dict

    def all_equal(self) -> bool:
        return all(self.equal_per_degree.values())


def propagation_check(curve_base: CurveModel, curve_ext: CurveModel,
                      V: VertexAlgebraInstance, N: int = None,
                      **kwargs) -> PropagationReport:
    """Compare dimension tables before and after a vacuum insertion.

    The propagation theorem applies when the extra punctures carry the
    vacuum module on the same curve; otherwise both tables are still
    reported, flagged as out of hypothesis.
    """
    base = coinvariant_dims(curve_base, V, N=N, **kwargs)
    ext = coinvariant_dims(curve_ext, V, N=N, **kwargs)
    applies = (curve_base.kind == curve_ext.kind
               and len(curve_ext.punctures) >= len(curve_base.punctures))
    bd, ed = base.quotient_dims(), ext.quotient_dims()
    equal = {d: bd.get(d) == ed.get(d) for d in bd}
    return PropagationReport(base, ext, applies, equal)


def virasoro_subalgebra_pool(V: VertexAlgebraInstance) -> list:
    """Vectors of the conformal subalgebra generated by omega inside V.

    Spanning set: L_{-lam_1} ... L_{-lam_k} |0> over partitions with parts
    >= 2 and total degree <= N, computed through omega's modes in V.
    """
    from .vacore import partitions_of

    pool = []
    for d in range(V.truncation + 1):
        for lam in partitions_of(d, 2):
            v = FockVector.vacuum()
            for part in reversed(lam):
                v = V.apply_L(-part, v)
            if not v.is_zero():
                pool.append(v)
    return pool


@dataclass(frozen=True)
class FunctorialityReport:
    big: CoinvariantReport
    sub: CoinvariantReport
    inequality_per_degree: dict

    def holds(self) -> bool:
        return all(self.inequality_per_degree.values())


def functoriality_check(curve: CurveModel, V: VertexAlgebraInstance,
                        N: int = None, **kwargs) -> FunctorialityReport:
    """Coinvariants over the conformal subalgebra dominate those over V.

    Blocks over the big algebra inject into blocks over the subalgebra,
    so per-degree quotient dims must satisfy dim_sub >= dim_big.
    """
    big = coinvariant_dims(curve, V, N=N, **kwargs)
    pool = virasoro_subalgebra_pool(V)
    sub = coinvariant_dims(curve, V, N=N, vector_pool=pool, **kwargs)
    bd, sd = big.quotient_dims(), sub.quotient_dims()
    ineq = {d: sd[d] >= bd[d] for d in bd}
    return FunctorialityReport(big, sub, ineq)
