"""State-sum evaluation of the bracket and the normalized invariant Y.

Every classical crossing is resolved three ways: virtualized, smoothed
parallel to the orientations, or smoothed cup-cap.  A fully resolved state
is a disjoint union of circles carrying virtual crossings and wens, and
evaluates to

    coeff(state) * t^(#circles) * r^(#virtual crossings mod 2) * s^(#wens mod 2).

The bracket sums this over all 3^n states.  Y multiplies the bracket by
r^(virtual writhe) and by the inverse writhe power of omega = a*r - nu*b,
whose inverse is (-r*a - nu*b)/delta.

Coefficient systems:

* generic       positive triple (a, b, c), negative (x, y, z), free t:
                polynomial output, no division anywhere.
* welded(nu)    positive (a, b, nu*b), negative (-a, b, nu*b)/delta,
                t = -2*nu; nu may stay symbolic or be +-1.
* extended      welded with nu = 1; the only solved mode that admits wens.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from weldskein import statesum
from weldskein.algebra import (FULL, DeltaFraction, Polynomial, VariableSet,
                               delta)
from weldskein.diagram import Diagram, check_valid, virtual_writhe, writhe

SMOOTHINGS = ('V', 'I', 'C')


class WenError(ValueError):
    """Wens are only invariant material for nu = 1 (extended mode)."""


@dataclass(frozen=True)
class CoefficientSystem:
    """The nine skein coefficients in generic or solved form."""

    kind: str                       # 'generic' | 'welded' | 'extended'
    nu: Optional[int] = None        # +-1, or None for symbolic (welded only)

    def __post_init__(self):
        if self.kind not in ('generic', 'welded', 'extended'):
            raise ValueError(f'unknown coefficient system kind {self.kind!r}')
        if self.kind == 'extended' and self.nu not in (None, 1):
            raise ValueError('extended mode forces nu = 1')
        if self.kind == 'extended':
            object.__setattr__(self, 'nu', 1)
        if self.kind == 'generic' and self.nu is not None:
            raise ValueError('generic mode carries no nu')
        if self.nu not in (None, 1, -1):
            raise ValueError('nu must be +-1 or symbolic (None)')

    # -- constructors --------------------------------------------------------

    @classmethod
    def generic(cls) -> 'CoefficientSystem':
        return cls('generic')

    @classmethod
    def welded(cls, nu: Optional[int] = None) -> 'CoefficientSystem':
        return cls('welded', nu)

    @classmethod
    def extended(cls) -> 'CoefficientSystem':
        return cls('extended', 1)

    # -- coefficient values ---------------------------------------------------

    @property
    def is_solved(self) -> bool:
        return self.kind != 'generic'

    def nu_poly(self, vs: VariableSet = FULL) -> Polynomial:
        if self.nu is None:
            return Polynomial.var('nu', vs)
        return Polynomial.const(self.nu, vs)

    def positive_triple(self, vs: VariableSet = FULL) -> tuple[DeltaFraction, ...]:
        if self.kind == 'generic':
            return tuple(DeltaFraction(Polynomial.var(n, vs)) for n in 'abc')
        av, bv = Polynomial.var('a', vs), Polynomial.var('b', vs)
        return (DeltaFraction(av), DeltaFraction(bv),
                DeltaFraction(self.nu_poly(vs) * bv))

    def negative_triple(self, vs: VariableSet = FULL) -> tuple[DeltaFraction, ...]:
        if self.kind == 'generic':
            return tuple(DeltaFraction(Polynomial.var(n, vs)) for n in 'xyz')
        av, bv = Polynomial.var('a', vs), Polynomial.var('b', vs)
        return (DeltaFraction(-av, 1), DeltaFraction(bv, 1),
                DeltaFraction(self.nu_poly(vs) * bv, 1))

    def t_value(self, vs: VariableSet = FULL) -> DeltaFraction:
        if self.kind == 'generic':
            return DeltaFraction(Polynomial.var('t', vs))
        return DeltaFraction(self.nu_poly(vs) * -2)

    def r_value(self, vs: VariableSet = FULL) -> DeltaFraction:
        return DeltaFraction(Polynomial.var('r', vs))

    def s_value(self, vs: VariableSet = FULL) -> DeltaFraction:
        return DeltaFraction(Polynomial.var('s', vs))

    def omega(self, vs: VariableSet = FULL) -> Polynomial:
        """The kink unit a*r - nu*b (solved modes)."""
        if not self.is_solved:
            raise ValueError('omega is only defined for solved families')
        ar = Polynomial.var('a', vs) * Polynomial.var('r', vs)
        return ar - self.nu_poly(vs) * Polynomial.var('b', vs)

    def omega_inverse(self, vs: VariableSet = FULL) -> DeltaFraction:
        """(-r*a - nu*b)/delta; the reciprocal of omega since r^2 = nu^2 = 1."""
        if not self.is_solved:
            raise ValueError('omega is only defined for solved families')
        ra = Polynomial.var('r', vs) * Polynomial.var('a', vs)
        num = -ra - self.nu_poly(vs) * Polynomial.var('b', vs)
        return DeltaFraction(num, 1)

    def describe(self) -> str:
        if self.kind == 'generic':
            return 'generic'
        if self.kind == 'extended':
            return 'extended (nu=1)'
        nu = 'symbolic' if self.nu is None else str(self.nu)
        return f'welded (nu={nu})'


@dataclass(frozen=True)
class State:
    """A total assignment of smoothings to the classical crossings."""

    assignment: tuple[str, ...]

    def __post_init__(self):
        for s in self.assignment:
            if s not in SMOOTHINGS:
                raise ValueError(f'unknown smoothing {s!r}')

    @classmethod
    def from_digits(cls, digits: Sequence[int]) -> 'State':
        return cls(tuple(SMOOTHINGS[d] for d in digits))


def _check_wens(d: Diagram, cs: CoefficientSystem) -> None:
    if d.wens and cs.kind == 'welded' and cs.nu != 1:
        raise WenError(
            'wens require nu = 1 (extended family); the nu = -1 welded family '
            'is not invariant under the wen-flip move')


# -- direct per-state evaluation (kept independent of the histogram kernel) --


def smoothing_pairs(c, smoothing: str):
    """Edge joins a smoothing induces at one classical crossing.

    'V' keeps the transversal strands, 'I' joins the strands parallel to
    their orientations, 'C' joins inputs together and outputs together.
    """
    if smoothing == 'V':
        return ((c.over_in, c.over_out), (c.under_in, c.under_out))
    if smoothing == 'I':
        return ((c.over_in, c.under_out), (c.under_in, c.over_out))
    return ((c.over_in, c.under_in), (c.over_out, c.under_out))


def state_loops(d: Diagram, s: State) -> int:
    """Closed components of the resolved state, including free loops."""
    parent: dict[str, str] = {}

    def find(e):
        parent.setdefault(e, e)
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    def union(e1, e2):
        r1, r2 = find(e1), find(e2)
        if r1 != r2:
            parent[r1] = r2

    for v in d.virtual_x:
        union(v.a_in, v.a_out)
        union(v.b_in, v.b_out)
    for w in d.wens:
        union(w.w_in, w.w_out)
    for c, sm in zip(d.classical, s.assignment):
        for e1, e2 in smoothing_pairs(c, sm):
            union(e1, e2)
    roots = {find(e) for e in parent}
    return len(roots) + d.free_loops


def state_value(d: Diagram, s: State, cs: CoefficientSystem,
                vs: VariableSet = FULL) -> DeltaFraction:
    """Value of one smoothing state: coeff * t^loops * r^parity * s^wens."""
    if len(s.assignment) != len(d.classical):
        raise ValueError('state must assign a smoothing to every classical crossing')
    _check_wens(d, cs)
    pos = cs.positive_triple(vs)
    neg = cs.negative_triple(vs)
    value = DeltaFraction.from_int(1, vs)
    n_virt = 0
    for c, sm in zip(d.classical, s.assignment):
        triple = pos if c.sign > 0 else neg
        value = value * triple[SMOOTHINGS.index(sm)]
        if sm == 'V':
            n_virt += 1
    loops = state_loops(d, s)
    value = value * cs.t_value(vs) ** loops
    parity = (len(d.virtual_x) + n_virt) % 2
    if parity:
        value = value * cs.r_value(vs)
    if len(d.wens) % 2:
        value = value * cs.s_value(vs)
    return value


# -- bracket via the histogram kernel ----------------------------------------


def _kernel_inputs(d: Diagram):
    """Contract virtual/wen incidences; map crossing slots to node ids.

    Returns (n_nodes, crossing_nodes, signs, constant_loops) where
    constant_loops counts circles closed in every state (components that meet
    no classical crossing, plus free loops).
    """
    parent: dict[str, str] = {}

    def find(e):
        parent.setdefault(e, e)
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    def union(e1, e2):
        r1, r2 = find(e1), find(e2)
        if r1 != r2:
            parent[r1] = r2

    for v in d.virtual_x:
        union(v.a_in, v.a_out)
        union(v.b_in, v.b_out)
    for w in d.wens:
        union(w.w_in, w.w_out)
    for e in d.edges():
        find(e)
    node_of: dict[str, int] = {}
    crossing_nodes: list[int] = []
    signs: list[int] = []
    for c in d.classical:
        signs.append(c.sign)
        for e in (c.over_in, c.over_out, c.under_in, c.under_out):
            root = find(e)
            if root not in node_of:
                node_of[root] = len(node_of)
            crossing_nodes.append(node_of[root])
    touched = set(node_of)
    all_roots = {find(e) for e in parent}
    constant_loops = len(all_roots - touched) + d.free_loops
    return len(node_of), crossing_nodes, signs, constant_loops


def bracket(d: Diagram, cs: CoefficientSystem, *, threads: int = 1,
            backend: Optional[str] = None, check_wens: bool = True,
            vs: VariableSet = FULL) -> DeltaFraction:
    """The unnormalized state sum over all 3^n smoothing states."""
    check_valid(d)
    if check_wens:
        _check_wens(d, cs)
    n_nodes, crossing_nodes, signs, const_loops = _kernel_inputs(d)
    hist = statesum.smoothing_histogram(n_nodes, crossing_nodes, signs,
                                        threads=threads, backend=backend)
    n_pos = sum(1 for s in signs if s > 0)
    n_neg = len(signs) - n_pos
    v_d = len(d.virtual_x)
    wen_parity = len(d.wens) % 2
    idx = {name: vs.index(name) for name in vs.names}
    nvars = len(vs)
    terms: dict[tuple[int, ...], int] = {}
    for (vp, ip, vn, inn, loops), count in hist.items():
        cp = n_pos - vp - ip
        cn = n_neg - vn - inn
        total_loops = loops + const_loops
        parity = (v_d + vp + vn) % 2
        exp = [0] * nvars
        if cs.kind == 'generic':
            coeff = count
            exp[idx['a']] = vp
            exp[idx['b']] = ip
            exp[idx['c']] = cp
            exp[idx['x']] = vn
            exp[idx['y']] = inn
            exp[idx['z']] = cn
            exp[idx['t']] = total_loops
        else:
            # t = -2nu; negative triple numerators (-a, b, nu*b)
            coeff = count * (-1) ** vn * (-2) ** total_loops
            nu_exp = cp + cn + total_loops
            if cs.nu is None:
                exp[idx['nu']] = nu_exp % 2
            else:
                coeff *= cs.nu ** nu_exp
            exp[idx['a']] = vp + vn
            exp[idx['b']] = ip + cp + inn + cn
        exp[idx['r']] = parity
        exp[idx['s']] = wen_parity
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + coeff
    num = Polynomial(vs, terms)
    return DeltaFraction(num, n_neg if cs.is_solved else 0)


def y_invariant(d: Diagram, cs: CoefficientSystem, *, threads: int = 1,
                backend: Optional[str] = None, check_wens: bool = True,
                vs: VariableSet = FULL) -> DeltaFraction:
    """r^v(L) * omega^(-w(L)) * bracket(L) for a solved coefficient family."""
    if not cs.is_solved:
        raise ValueError('the normalized invariant needs a solved family')
    value = bracket(d, cs, threads=threads, backend=backend,
                    check_wens=check_wens, vs=vs)
    if virtual_writhe(d)[1]:
        value = value * cs.r_value(vs)
    w = writhe(d)
    if w >= 0:
        value = value * cs.omega_inverse(vs) ** w
    else:
        value = value * DeltaFraction(cs.omega(vs) ** (-w))
    return value


def y_lambda(d: Diagram, r: int = 1, s: int = 1, *, threads: int = 1,
             backend: Optional[str] = None):
    """Y in extended mode, pushed through alpha/beta and dehomogenized.

    A non-homogeneous alpha/beta image would mean an evaluator bug, so the
    degree check failure propagates as an error rather than being swallowed.
    """
    from weldskein.algebra import to_alpha_beta
    if r not in (1, -1) or s not in (1, -1):
        raise ValueError('r and s must be specialized to +-1')
    value = y_invariant(d, CoefficientSystem.extended(),
                        threads=threads, backend=backend)
    value = value.substitute({'r': r, 's': s})
    lp = to_alpha_beta(value)
    if lp.homogeneous_degree() != 0:
        raise ValueError(
            f'alpha/beta image not homogeneous of degree 0: {lp.render()}')
    return lp.dehomogenize()
