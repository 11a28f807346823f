"""Sparse multivariate polynomials with exact rational coefficients.

Small utility ring used for family coefficient polynomials and bad loci.
Coefficients are Fractions (usually integers); exponents are tuples.
"""

from __future__ import annotations

from fractions import Fraction


class Poly:
    """Polynomial in ``nvars`` variables, stored as {exponent tuple: coeff}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(exps)] = c
        self.terms = clean

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def var(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def univariate(cls, coeffs):
        """Build a 1-variable polynomial from an ascending coefficient list."""
        return cls(1, {(k,): Fraction(c) for k, c in enumerate(coeffs)})

    def degree(self):
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Poly(self.nvars, terms)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly(self.nvars, terms)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n):
        out = Poly.const(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return Poly.const(self.nvars, other)

    def __call__(self, *values):
        """Evaluate at rational values; returns a Fraction."""
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        vals = [Fraction(v) for v in values]
        out = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for v, e in zip(vals, exps):
                term *= v ** e
            out += term
        return out

    def eval_mod(self, values, p):
        """Evaluate at integer residues mod p.  Requires integer coefficients."""
        out = 0
        for exps, c in self.terms.items():
            if c.denominator != 1:
                raise ValueError("eval_mod needs integer coefficients")
            term = c.numerator % p
            for v, e in zip(values, exps):
                term = term * pow(v % p, e, p) % p
            out = (out + term) % p
        return out

    def eval_field(self, field, values):
        """Evaluate at elements of an ExtField.  Requires integer coefficients."""
        out = field.zero
        for exps, c in self.terms.items():
            if c.denominator != 1:
                raise ValueError("eval_field needs integer coefficients")
            term = field.from_int(c.numerator)
            for v, e in zip(values, exps):
                for _ in range(e):
                    term = field.mul(term, v)
            out = field.add(out, term)
        return out

    def homogenize(self):
        """Homogenize with a new leading variable t0: f(t) -> t0^deg f(t/t0)."""
        d = self.degree()
        terms = {}
        for exps, c in self.terms.items():
            e0 = d - sum(exps)
            terms[(e0,) + exps] = c
        return Poly(self.nvars + 1, terms)

    def to_terms(self):
        """JSON-friendly term list [[coeff, e1, ..., en], ...], sorted."""
        out = []
        for exps in sorted(self.terms):
            c = self.terms[exps]
            if c.denominator != 1:
                raise ValueError("only integer-coefficient polynomials serialize")
            out.append([c.numerator, *exps])
        return out

    @classmethod
    def from_terms(cls, nvars, terms):
        return cls(nvars, {tuple(t[1:]): Fraction(t[0]) for t in terms})

    def __repr__(self):
        return f"Poly({self.nvars}, {self.terms!r})"
