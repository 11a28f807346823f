"""Empirical function-field equidistribution census over F_q(t).

For a curve family over the t-line and an auxiliary prime l, measure the
distribution of char-poly classes of Frobenius over all good specializations
t in F_{q^n}, compare against the fixed-determinant coset densities from the
matrix-group tables, and track the q^{-n/2} deviation envelope across n.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .finitefield import ExtField
from .groups import GroupSpec, charpoly_class_density, group_order


@dataclass(frozen=True)
class FFieldCensus:
    q: int
    n: int
    l: int
    n_points: int
    frequencies: dict  # class key (tr, det) or (a1, a2, mult) -> Fraction
    predicted: dict  # same keyspace -> Fraction, or None if unavailable
    deviation: Fraction  # max |freq - predicted|; None without predictions
    warnings: tuple = field(default_factory=tuple)

    def to_json(self):
        def frtab(d):
            if d is None:
                return None
            return {str(k): f"{v.numerator}/{v.denominator}" for k, v in sorted(d.items())}

        return json.dumps(
            {
                "q": self.q,
                "n": self.n,
                "l": self.l,
                "n_points": self.n_points,
                "frequencies": frtab(self.frequencies),
                "predicted": frtab(self.predicted),
                "deviation": None if self.deviation is None else float(self.deviation),
                "warnings": list(self.warnings),
            },
            sort_keys=True,
        )

    def csv_rows(self):
        rows = []
        keys = set(self.frequencies) | set(self.predicted or {})
        for k in sorted(keys):
            f = self.frequencies.get(k, Fraction(0))
            p = (self.predicted or {}).get(k, Fraction(0))
            rows.append([self.q, self.n, self.l, str(k), float(f), float(p), float(abs(f - p))])
        return rows


def ffield_specializations(family, q, n):
    """All t in (F_{q^n})^r with bad_locus(t) != 0, as field-element tuples.

    Ordered by the deterministic field-element encoding so parallel runs
    merge identically.
    """
    fld = ExtField(q, n)
    import itertools

    out = []
    for t in itertools.product(fld.elements(), repeat=family.r):
        if family.bad_locus.eval_field(fld, t) != fld.zero:
            out.append(t)
    out.sort(key=lambda t: tuple(fld.encode(v) for v in t))
    return fld, out


def ffield_frobenius(family, fld, t, l):
    """Char-poly class of Frobenius for the specialization at t over fld.

    g=1: (a mod l, #fld mod l) with a = #fld + 1 - #E_t(fld), the curve
    counted exhaustively through the explicit field model.
    """
    if fld.order % l == 0:
        raise ValueError("l divides the field order")
    if family.genus != 1:
        raise ValueError("field-model Frobenius implemented for genus 1")
    if family.bad_locus.eval_field(fld, t) == fld.zero:
        raise ValueError("singular specialization")
    A = family.A.eval_field(fld, t)
    B = family.B.eval_field(fld, t)
    # delta = -16 (4A^3 + 27B^2) must be nonzero in the field
    A3 = fld.mul(fld.mul(A, A), A)
    B2 = fld.mul(B, B)
    disc = fld.add(fld.mul(fld.from_int(4), A3), fld.mul(fld.from_int(27), B2))
    if disc == fld.zero or fld.q == 2:
        raise ValueError("singular specialization")
    nsq = fld.sqrt_counts()
    count = 1  # point at infinity
    for x in fld.elements():
        x2 = fld.mul(x, x)
        rhs = fld.add(fld.add(fld.mul(x2, x), fld.mul(A, x)), B)
        count += nsq[rhs]
    a = fld.order + 1 - count
    return (a % l, fld.order % l)


def pm_class(key, l):
    """Char-poly class up to sign: (tr, det) and (-tr, det) coincide in the
    mod +-1 quotient, where negating the matrix flips the trace (and a1)
    while fixing the determinant (and a2, similitude)."""
    tr = key[0]
    rep = min(tr % l, (-tr) % l)
    return (rep,) + tuple(key[1:])


def _measure(family, q, n, l):
    fld, points = ffield_specializations(family, q, n)
    counts = {}
    for t in points:
        key = pm_class(ffield_frobenius(family, fld, t, l), l)
        counts[key] = counts.get(key, 0) + 1
    total = len(points)
    freqs = {k: Fraction(v, total) for k, v in sorted(counts.items())}
    return total, freqs


def chebotarev_report(family, q, l, n_range):
    """Per-n census with predictions from the det = q^n coset.

    The deviation envelope is calibrated at the smallest n: with
    c_emp = deviation(n0), the expected error envelope is
    deviation(n) <= c_emp * q^{-(n - n0)/2} for larger n.  The report
    records each census; callers assert the envelope.
    """
    n_range = sorted(n_range)
    warnings = []
    spec = GroupSpec(family.genus, l, "gsp")
    if math.gcd(group_order(spec), q) != 1:
        warnings.append("group order shares a factor with q")
    if math.gcd(q, 6 * l) != 1:
        warnings.append("q not coprime to 6l")
    out = []
    for n in n_range:
        delta = pow(q, n, l)
        total, freqs = _measure(family, q, n, l)
        if family.genus == 1:
            dens = charpoly_class_density(spec, delta)
            predicted = {}
            for tr, v in dens.items():
                key = pm_class((tr, delta), l)
                predicted[key] = predicted.get(key, Fraction(0)) + v
        else:
            predicted = None
        if predicted is None:
            deviation = None
        else:
            keys = set(freqs) | set(predicted)
            deviation = max(
                abs(freqs.get(k, Fraction(0)) - predicted.get(k, Fraction(0)))
                for k in keys
            )
        out.append(
            FFieldCensus(q, n, l, total, freqs, predicted, deviation, tuple(warnings))
        )
    return out


def envelope_check(censuses):
    """(c_emp, per-n pass list): deviation(n) <= c_emp q^{-(n-n0)/2}."""
    if not censuses or censuses[0].deviation is None:
        raise ValueError("no deviations to check")
    n0 = censuses[0].n
    c_emp = float(censuses[0].deviation)
    q = censuses[0].q
    results = []
    for c in censuses:
        bound = c_emp * q ** (-(c.n - n0) / 2)
        results.append((c.n, float(c.deviation), bound, float(c.deviation) <= bound + 1e-12))
    return c_emp, results


def genus2_census(family, q, l):
    """Char-poly class census for a genus-2 family over the base field F_q.

    Classes are (a1 mod l, a2 mod l, q mod l); predictions come from the
    similitude = q coset of GSp4(F_l) when l = 3, else None.  Field
    extensions (n > 1) are out of reach for the quintic point counts and
    raise.
    """
    from .curves import frobenius_invariants, specialize

    if family.genus != 2:
        raise ValueError("genus-2 family required")
    if q == 2 or q % l == 0:
        raise ValueError("invalid base characteristic")
    import itertools

    counts = {}
    total = 0
    for t in itertools.product(range(q), repeat=family.r):
        if family.bad_locus.eval_mod(t, q) == 0:
            continue
        s = specialize(family, t)
        a1, a2 = frobenius_invariants(s, q)
        key = pm_class((a1 % l, a2 % l, q % l), l)
        counts[key] = counts.get(key, 0) + 1
        total += 1
    freqs = {k: Fraction(v, total) for k, v in sorted(counts.items())}
    predicted = None
    if l == 3:
        spec = GroupSpec(2, l, "gsp")
        dens = charpoly_class_density(spec, q % l)
        predicted = {}
        for (e1, e2), v in dens.items():
            key = pm_class((e1, e2, q % l), l)
            predicted[key] = predicted.get(key, Fraction(0)) + v
    deviation = None
    if predicted is not None:
        keys = set(freqs) | set(predicted)
        deviation = max(
            abs(freqs.get(k, Fraction(0)) - predicted.get(k, Fraction(0))) for k in keys
        )
    return FFieldCensus(q, 1, l, total, freqs, predicted, deviation)
