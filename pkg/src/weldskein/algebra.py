"""Exact arithmetic for the skein coefficient ring.

Values live in Z[a,b,c,x,y,z,t][r,nu,s] with r^2 = nu^2 = s^2 = 1, extended
by denominators that are powers of delta = b^2 - a^2.  All arithmetic is
exact; polynomials are kept in canonical form (no zero coefficients), so
structural equality coincides with mathematical equality.

The ordinary symbols carry natural-number exponents, the involutive symbols
(r, nu, s) only exponent 0 or 1; multiplication reduces involutive exponents
modulo 2.

A change of variables alpha = b + a, beta = b - a turns a delta-power
fraction into a Laurent polynomial with dyadic rational coefficients; see
:func:`to_alpha_beta` and :meth:`LaurentPoly.dehomogenize`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction as QQ
from typing import Mapping, Optional, Union

ORDINARY_NAMES = ('a', 'b', 'c', 'x', 'y', 'z', 't')
INVOLUTIVE_NAMES = ('r', 'nu', 's')


class VariableMismatchError(ValueError):
    """Raised when combining values over different variable sets."""


class SubstitutionError(ValueError):
    """Raised for substitutions that leave the representable ring."""


@dataclass(frozen=True)
class VariableSet:
    """Ordered ordinary and involutive symbol names.

    Ordinary symbols come from {a,b,c,x,y,z,t} and take natural-number
    exponents; involutive symbols come from {r,nu,s} and square to one.
    """

    ordinary: tuple[str, ...]
    involutive: tuple[str, ...]

    def __post_init__(self):
        names = self.ordinary + self.involutive
        if len(set(names)) != len(names):
            raise ValueError(f'duplicate symbol names in {names}')
        for n in self.ordinary:
            if n not in ORDINARY_NAMES:
                raise ValueError(f'unknown ordinary symbol {n!r}')
        for n in self.involutive:
            if n not in INVOLUTIVE_NAMES:
                raise ValueError(f'unknown involutive symbol {n!r}')

    @property
    def names(self) -> tuple[str, ...]:
        return self.ordinary + self.involutive

    def index(self, name: str) -> int:
        return self.names.index(name)

    def is_involutive(self, name: str) -> bool:
        return name in self.involutive

    def __len__(self) -> int:
        return len(self.ordinary) + len(self.involutive)


#: Variable set used throughout the evaluator and verifier.
FULL = VariableSet(ORDINARY_NAMES, INVOLUTIVE_NAMES)


def _check_same_vs(p: 'Polynomial', q: 'Polynomial') -> None:
    if p.vs != q.vs:
        raise VariableMismatchError(f'variable sets differ: {p.vs} vs {q.vs}')


class Polynomial:
    """Multivariate polynomial with integer coefficients.

    Terms are stored as a map from exponent vectors (one slot per symbol of
    the variable set, involutive slots restricted to 0/1) to nonzero
    arbitrary-precision integers.
    """

    __slots__ = ('vs', '_terms', '_hash')

    def __init__(self, vs: VariableSet, terms: Mapping[tuple[int, ...], int]):
        self.vs = vs
        n_ord = len(vs.ordinary)
        clean: dict[tuple[int, ...], int] = {}
        for exp, coeff in terms.items():
            if coeff == 0:
                continue
            if len(exp) != len(vs):
                raise ValueError(f'exponent vector {exp} has wrong length for {vs.names}')
            if any(e < 0 for e in exp):
                raise ValueError(f'negative exponent in {exp}')
            if any(e > 1 for e in exp[n_ord:]):
                raise ValueError(f'involutive exponent above 1 in {exp}')
            clean[tuple(exp)] = clean.get(tuple(exp), 0) + coeff
        self._terms = {e: c for e, c in clean.items() if c != 0}
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vs: VariableSet = FULL) -> 'Polynomial':
        return cls(vs, {})

    @classmethod
    def const(cls, n: int, vs: VariableSet = FULL) -> 'Polynomial':
        return cls(vs, {(0,) * len(vs): int(n)})

    @classmethod
    def one(cls, vs: VariableSet = FULL) -> 'Polynomial':
        return cls.const(1, vs)

    @classmethod
    def var(cls, name: str, vs: VariableSet = FULL) -> 'Polynomial':
        exp = [0] * len(vs)
        exp[vs.index(name)] = 1
        return cls(vs, {tuple(exp): 1})

    @classmethod
    def monomial(cls, vs: VariableSet, coeff: int, **powers: int) -> 'Polynomial':
        exp = [0] * len(vs)
        for name, e in powers.items():
            exp[vs.index(name)] = e
        return cls(vs, {tuple(exp): coeff})

    # -- ring structure ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.const(other, self.vs)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vs == other.vs and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vs, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other) -> 'Polynomial':
        if isinstance(other, int):
            other = Polynomial.const(other, self.vs)
        _check_same_vs(self, other)
        terms = dict(self._terms)
        for exp, c in other._terms.items():
            terms[exp] = terms.get(exp, 0) + c
        return Polynomial(self.vs, terms)

    __radd__ = __add__

    def __neg__(self) -> 'Polynomial':
        return Polynomial(self.vs, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> 'Polynomial':
        if isinstance(other, int):
            other = Polynomial.const(other, self.vs)
        return self + (-other)

    def __rsub__(self, other) -> 'Polynomial':
        return (-self) + other

    def __mul__(self, other) -> 'Polynomial':
        if isinstance(other, int):
            return Polynomial(self.vs, {e: c * other for e, c in self._terms.items()})
        _check_same_vs(self, other)
        n_ord = len(self.vs.ordinary)
        terms: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = tuple(
                    (u + v) if i < n_ord else (u + v) % 2
                    for i, (u, v) in enumerate(zip(e1, e2))
                )
                terms[exp] = terms.get(exp, 0) + c1 * c2
        return Polynomial(self.vs, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> 'Polynomial':
        if n < 0:
            raise ValueError('negative polynomial power')
        result = Polynomial.one(self.vs)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure queries --------------------------------------------------

    def terms(self) -> dict[tuple[int, ...], int]:
        """Copy of the term map (exponent vector -> coefficient)."""
        return dict(self._terms)

    def degree_in(self, name: str) -> int:
        """Largest exponent of ``name``; -1 for the zero polynomial."""
        i = self.vs.index(name)
        return max((e[i] for e in self._terms), default=-1)

    def uses(self, name: str) -> bool:
        i = self.vs.index(name)
        return any(e[i] for e in self._terms)

    def constant_value(self) -> int:
        """The integer value of a constant polynomial."""
        if not self._terms:
            return 0
        [(exp, c)] = self._terms.items()
        if any(exp):
            raise ValueError(f'{self} is not constant')
        return c

    def content_and_sign(self) -> int:
        """gcd of coefficients, carrying the sign of the leading term."""
        from math import gcd
        g = 0
        for c in self._terms.values():
            g = gcd(g, abs(c))
        if g == 0:
            return 1
        lead = self._terms[max(self._terms)]
        return g if lead > 0 else -g

    def substitute(self, assignment: Mapping[str, Union['Polynomial', int]]) -> 'Polynomial':
        """Exact substitution of symbols by polynomials or integers.

        Involutive symbols may only be replaced by +1 or -1.
        """
        vs = self.vs
        values: dict[int, Polynomial] = {}
        for name, val in assignment.items():
            if isinstance(val, int):
                if vs.is_involutive(name) and val not in (1, -1):
                    raise SubstitutionError(f'involutive symbol {name} assigned {val}, need +-1')
                val_p = Polynomial.const(val, vs)
            else:
                if val.vs != vs:
                    raise VariableMismatchError('substituted value over different variable set')
                if vs.is_involutive(name):
                    raise SubstitutionError(f'involutive symbol {name} needs a +-1 value')
                val_p = val
            values[vs.index(name)] = val_p
        out = Polynomial.zero(vs)
        for exp, coeff in self._terms.items():
            factor = Polynomial.const(coeff, vs)
            rest = [0] * len(vs)
            for i, e in enumerate(exp):
                if i in values:
                    if e:
                        factor = factor * values[i] ** e
                else:
                    rest[i] = e
            out = out + factor * Polynomial(vs, {tuple(rest): 1})
        return out

    # -- rendering -----------------------------------------------------------

    def render(self) -> str:
        """Canonical text form: sorted monomials, explicit ^ and *."""
        if not self._terms:
            return '0'
        parts = []
        for exp in sorted(self._terms, reverse=True):
            coeff = self._terms[exp]
            factors = []
            for name, e in zip(self.vs.names, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f'{name}^{e}')
            if not factors:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = '*'.join(factors)
            else:
                body = '*'.join([str(abs(coeff))] + factors)
            parts.append(('- ' if coeff < 0 else '+ ') + body)
        text = ' '.join(parts)
        return text[2:] if text.startswith('+ ') else '-' + text[2:]

    __str__ = render

    def __repr__(self):
        return f'Polynomial({self.render()})'


def delta(vs: VariableSet = FULL) -> Polynomial:
    """The distinguished denominator b^2 - a^2."""
    b2 = Polynomial.monomial(vs, 1, b=2)
    a2 = Polynomial.monomial(vs, 1, a=2)
    return b2 - a2


def divide_by_delta(p: Polynomial) -> Optional[Polynomial]:
    """Exact quotient p / (b^2 - a^2), or None when delta does not divide p.

    Works by long division in b: delta is monic of degree 2 in b, so
    b^k = b^(k-2) * delta + a^2 * b^(k-2) for k >= 2.
    """
    vs = p.vs
    ib = vs.index('b')
    ia = vs.index('a')
    buckets: dict[int, dict[tuple[int, ...], int]] = {}
    for exp, c in p.terms().items():
        buckets.setdefault(exp[ib], {})[exp] = c
    quotient: dict[tuple[int, ...], int] = {}
    # walk every b-degree downward; reduction at k feeds the k-2 bucket
    for k in range(max(buckets, default=0), 1, -1):
        for exp, c in list(buckets.get(k, {}).items()):
            if c == 0:
                continue
            qexp = list(exp)
            qexp[ib] = k - 2
            qexp = tuple(qexp)
            quotient[qexp] = quotient.get(qexp, 0) + c
            rexp = list(qexp)
            rexp[ia] += 2
            rexp = tuple(rexp)
            lower = buckets.setdefault(k - 2, {})
            lower[rexp] = lower.get(rexp, 0) + c
    for k in (0, 1):
        if any(c != 0 for c in buckets.get(k, {}).values()):
            return None
    return Polynomial(vs, quotient)


class DeltaFraction:
    """A polynomial divided by a power of delta = b^2 - a^2.

    Canonical form: delta does not divide the numerator unless the power is
    zero.  Equality of canonical forms is structural.
    """

    __slots__ = ('num', 'delta_power')

    def __init__(self, num: Polynomial, delta_power: int = 0):
        if delta_power < 0:
            raise ValueError('delta power must be a natural number')
        if num.is_zero():
            delta_power = 0
        else:
            while delta_power > 0:
                q = divide_by_delta(num)
                if q is None:
                    break
                num = q
                delta_power -= 1
        self.num = num
        self.delta_power = delta_power

    @classmethod
    def from_int(cls, n: int, vs: VariableSet = FULL) -> 'DeltaFraction':
        return cls(Polynomial.const(n, vs))

    @property
    def vs(self) -> VariableSet:
        return self.num.vs

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = DeltaFraction.from_int(other, self.vs)
        elif isinstance(other, Polynomial):
            other = DeltaFraction(other)
        if not isinstance(other, DeltaFraction):
            return NotImplemented
        return self.num == other.num and self.delta_power == other.delta_power

    def __hash__(self):
        return hash((self.num, self.delta_power))

    def __add__(self, other) -> 'DeltaFraction':
        if isinstance(other, (int, Polynomial)):
            other = DeltaFraction(other if isinstance(other, Polynomial)
                                  else Polynomial.const(other, self.vs))
        _check_same_vs(self.num, other.num)
        k = max(self.delta_power, other.delta_power)
        d = delta(self.vs)
        num = (self.num * d ** (k - self.delta_power)
               + other.num * d ** (k - other.delta_power))
        return DeltaFraction(num, k)

    __radd__ = __add__

    def __neg__(self) -> 'DeltaFraction':
        return DeltaFraction(-self.num, self.delta_power)

    def __sub__(self, other) -> 'DeltaFraction':
        if isinstance(other, (int, Polynomial)):
            other = DeltaFraction(other if isinstance(other, Polynomial)
                                  else Polynomial.const(other, self.vs))
        return self + (-other)

    def __mul__(self, other) -> 'DeltaFraction':
        if isinstance(other, int):
            return DeltaFraction(self.num * other, self.delta_power)
        if isinstance(other, Polynomial):
            other = DeltaFraction(other)
        _check_same_vs(self.num, other.num)
        return DeltaFraction(self.num * other.num,
                             self.delta_power + other.delta_power)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> 'DeltaFraction':
        if n < 0:
            raise ValueError('negative fraction power; invert explicitly')
        return DeltaFraction(self.num ** n, self.delta_power * n)

    def substitute(self, assignment: Mapping[str, Union[Polynomial, int]]) -> 'DeltaFraction':
        """Substitute into the numerator, then re-canonicalize.

        Substituting for a or b would change the meaning of the delta-power
        denominator, so it is refused unless the power is zero or the
        numerator vanishes under the substitution.
        """
        new_num = self.num.substitute(assignment)
        if self.delta_power > 0 and not new_num.is_zero():
            touched = {n for n in assignment if n in ('a', 'b')}
            if touched:
                raise SubstitutionError(
                    f'cannot substitute {sorted(touched)} under a delta denominator')
        return DeltaFraction(new_num, self.delta_power)

    def render(self) -> str:
        num = self.num.render()
        if self.delta_power == 0:
            return num
        denom = '(b^2 - a^2)' if self.delta_power == 1 else f'(b^2 - a^2)^{self.delta_power}'
        if self.num._terms and len(self.num._terms) > 1:
            num = f'({num})'
        return f'{num} / {denom}'

    __str__ = render

    def __repr__(self):
        return f'DeltaFraction({self.render()})'


# Backwards-friendly alias used in the public API.
Fraction = DeltaFraction


# -- alpha/beta Laurent polynomials -----------------------------------------


class LaurentPoly:
    """Laurent polynomial with rational coefficients.

    Ordinary variables take arbitrary integer exponents; the involutive
    variables r and s tag along with exponents 0/1.
    """

    __slots__ = ('variables', '_terms', '_hash')

    INVOLUTIVE = ('r', 's')

    def __init__(self, variables: tuple[str, ...],
                 terms: Mapping[tuple[int, ...], QQ]):
        self.variables = tuple(variables)
        nvars = len(self.variables) + 2
        clean: dict[tuple[int, ...], QQ] = {}
        for exp, coeff in terms.items():
            coeff = QQ(coeff)
            if coeff == 0:
                continue
            if len(exp) != nvars:
                raise ValueError('exponent vector has wrong length')
            if any(e not in (0, 1) for e in exp[len(self.variables):]):
                raise ValueError('involutive exponent above 1')
            clean[tuple(exp)] = clean.get(tuple(exp), QQ(0)) + coeff
        self._terms = {e: c for e, c in clean.items() if c != 0}
        self._hash = None

    @classmethod
    def zero(cls, variables=('alpha', 'beta')) -> 'LaurentPoly':
        return cls(variables, {})

    @classmethod
    def const(cls, value, variables=('alpha', 'beta')) -> 'LaurentPoly':
        return cls(variables, {(0,) * (len(variables) + 2): QQ(value)})

    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> dict[tuple[int, ...], QQ]:
        return dict(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.variables)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other) -> 'LaurentPoly':
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.variables)
        if self.variables != other.variables:
            raise VariableMismatchError('Laurent variable sets differ')
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, QQ(0)) + c
        return LaurentPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.variables)
        return self + (-other)

    def __mul__(self, other) -> 'LaurentPoly':
        if isinstance(other, (int, QQ)):
            return LaurentPoly(self.variables,
                               {e: c * other for e, c in self._terms.items()})
        if self.variables != other.variables:
            raise VariableMismatchError('Laurent variable sets differ')
        k = len(self.variables)
        terms: dict[tuple[int, ...], QQ] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = tuple((u + v) if i < k else (u + v) % 2
                            for i, (u, v) in enumerate(zip(e1, e2)))
                terms[exp] = terms.get(exp, QQ(0)) + c1 * c2
        return LaurentPoly(self.variables, terms)

    __rmul__ = __mul__

    def homogeneous_degree(self) -> Optional[int]:
        """Common total degree in the ordinary variables, or None."""
        k = len(self.variables)
        degs = {sum(e[:k]) for e in self._terms}
        if not degs:
            return 0
        return degs.pop() if len(degs) == 1 else None

    def dehomogenize(self) -> 'LaurentPoly':
        """Substitute beta := 1 (lambda := alpha/beta); needs degree 0."""
        if self.variables != ('alpha', 'beta'):
            raise ValueError('dehomogenize expects an alpha/beta Laurent polynomial')
        if self.homogeneous_degree() != 0:
            raise ValueError('not homogeneous of degree 0')
        terms = {}
        for (ea, eb, er, es), c in self._terms.items():
            key = (ea, er, es)
            terms[key] = terms.get(key, QQ(0)) + c
        return LaurentPoly(('lambda',), terms)

    def render(self) -> str:
        if not self._terms:
            return '0'
        names = self.variables + self.INVOLUTIVE
        parts = []
        for exp in sorted(self._terms, reverse=True):
            coeff = self._terms[exp]
            factors = []
            for name, e in zip(names, exp):
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f'{name}^{e}')
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = '*'.join(factors)
            else:
                body = '*'.join([str(mag)] + factors)
            parts.append(('- ' if coeff < 0 else '+ ') + body)
        text = ' '.join(parts)
        return text[2:] if text.startswith('+ ') else '-' + text[2:]

    __str__ = render

    def __repr__(self):
        return f'LaurentPoly({self.render()})'


def to_alpha_beta(f: DeltaFraction) -> LaurentPoly:
    """Apply a = (alpha - beta)/2, b = (alpha + beta)/2 to a delta fraction.

    delta = b^2 - a^2 factors as alpha * beta, so the delta-power denominator
    becomes a monomial and the result is an honest Laurent polynomial.  The
    symbol nu must already be specialized; r and s are carried along.
    """
    vs = f.vs
    for name in ('c', 'x', 'y', 'z', 't', 'nu'):
        if name in vs.names and f.num.uses(name):
            raise SubstitutionError(f'cannot map {name} into the alpha/beta ring')
    ia, ib = vs.index('a'), vs.index('b')
    ir = vs.index('r') if 'r' in vs.names else None
    is_ = vs.index('s') if 's' in vs.names else None
    half = QQ(1, 2)
    # alpha/beta exponent pair for a^i b^j via binomial expansion
    out: dict[tuple[int, int, int, int], QQ] = {}
    k = f.delta_power
    for exp, coeff in f.num.terms().items():
        i, j = exp[ia], exp[ib]
        er = exp[ir] if ir is not None else 0
        es = exp[is_] if is_ is not None else 0
        # (alpha-beta)^i (alpha+beta)^j / 2^(i+j)
        poly: dict[tuple[int, int], QQ] = {(0, 0): QQ(coeff) * half ** (i + j)}
        for sign, reps in ((-1, i), (1, j)):
            for _ in range(reps):
                nxt: dict[tuple[int, int], QQ] = {}
                for (ea, eb), c in poly.items():
                    nxt[(ea + 1, eb)] = nxt.get((ea + 1, eb), QQ(0)) + c
                    nxt[(ea, eb + 1)] = nxt.get((ea, eb + 1), QQ(0)) + sign * c
                poly = nxt
        for (ea, eb), c in poly.items():
            key = (ea - k, eb - k, er, es)
            out[key] = out.get(key, QQ(0)) + c
    return LaurentPoly(('alpha', 'beta'), out)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r'\s*(?:(\d+)|([a-zA-Z_][a-zA-Z_0-9]*)|([()^*+-])|(/))')


class PolyParseError(ValueError):
    pass


class _Parser:
    def __init__(self, text: str, vs: VariableSet):
        self.vs = vs
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                if text[pos:].strip():
                    raise PolyParseError(f'bad character at {pos}: {text[pos:pos+10]!r}')
                break
            self.tokens.append(m.group(m.lastindex))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, tok):
        got = self.next()
        if got != tok:
            raise PolyParseError(f'expected {tok!r}, got {got!r}')

    def parse_expr(self) -> Polynomial:
        sign = 1
        while self.peek() in ('+', '-'):
            if self.next() == '-':
                sign = -sign
        total = self.parse_term() * sign
        while self.peek() in ('+', '-'):
            sign = 1
            while self.peek() in ('+', '-'):
                if self.next() == '-':
                    sign = -sign
            total = total + self.parse_term() * sign
        return total

    def parse_term(self) -> Polynomial:
        p = self.parse_factor()
        while self.peek() == '*':
            self.next()
            p = p * self.parse_factor()
        return p

    def parse_factor(self) -> Polynomial:
        tok = self.next()
        if tok is None:
            raise PolyParseError('unexpected end of input')
        if tok == '(':
            p = self.parse_expr()
            self.expect(')')
        elif tok.isdigit():
            p = Polynomial.const(int(tok), self.vs)
        elif tok in self.vs.names:
            p = Polynomial.var(tok, self.vs)
        else:
            raise PolyParseError(f'unknown symbol {tok!r}')
        if self.peek() == '^':
            self.next()
            e = self.next()
            if e is None or not e.isdigit():
                raise PolyParseError('exponent must be a natural number')
            p = p ** int(e)
        return p


def parse_polynomial(text: str, vs: VariableSet = FULL) -> Polynomial:
    """Parse the canonical rendering back into a polynomial."""
    parser = _Parser(text, vs)
    p = parser.parse_expr()
    if parser.peek() is not None:
        raise PolyParseError(f'trailing input {parser.tokens[parser.i:]!r}')
    return p


def parse_fraction(text: str, vs: VariableSet = FULL) -> DeltaFraction:
    """Parse ``poly`` or ``poly / (b^2 - a^2)^k`` into a fraction."""
    if '/' not in text:
        return DeltaFraction(parse_polynomial(text, vs))
    num_text, denom_text = text.split('/', 1)
    denom_text = denom_text.strip()
    m = re.fullmatch(r'\(\s*b\s*\^\s*2\s*-\s*a\s*\^\s*2\s*\)(?:\s*\^\s*(\d+))?', denom_text)
    if not m:
        raise PolyParseError(f'denominator must be a power of (b^2 - a^2): {denom_text!r}')
    power = int(m.group(1) or 1)
    return DeltaFraction(parse_polynomial(num_text, vs), power)
