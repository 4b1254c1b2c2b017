"""The (i, p)-indexed quantum torus, KR monomials, truncation and the q=1
substitution checks.

The torus generators are indexed by pairs (i, p) with p matching a fixed
parity per node; their commutation exponents come from the Laurent expansion
of the inverse of the t-deformed symmetrized Cartan matrix.  Elements are
stored in the bar-invariant commutative-monomial basis, so the bar involution
acts on coefficients alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .braid import IndexSequence, build_seed
from .cartan import CartanDatum, build_cartan, parity_function, validate_height_function
from .commutative import LaurentPoly, RationalX
from .torus import (
    QCoeff,
    TorusError,
    _split_coeff,
    _split_terms,
    _parse_factor,
    qcoeff_from_text,
    qcoeff_to_text,
)

HatIndex = tuple[int, int]  # (node, level)
ExpKey = tuple[tuple[HatIndex, int], ...]  # sorted ((i,p), exponent) pairs


class QGrothError(ValueError):
    pass


# ----------------------------------------------------------------------
# the t-deformed Cartan matrix and its inverse series


class TCartan:
    """Cached Laurent coefficients of the inverse t-deformed Cartan matrix.

    With M(t) = t * C(t) (an integer polynomial matrix with M(0) = 1), the
    series inverse follows the recurrence s_m = -C_off s_{m-1} - s_{m-2}, and
    the cached coefficient b(i, j, u) equals d_i * (s_{u-1})_{i,j}.
    """

    def __init__(self, datum: CartanDatum, umax: int | None = None):
        self.datum = datum
        self.umax = umax if umax is not None else 2 * datum.coxeter_number + 2
        self._series: list[list[list[int]]] = []
        self._extend(self.umax)

    def _extend(self, umax: int) -> None:
        n = self.datum.rank
        c_off = [
            [self.datum.cartan[i][j] if i != j else 0 for j in range(n)] for i in range(n)
        ]
        s = self._series
        if not s:
            s.append([[1 if i == j else 0 for j in range(n)] for i in range(n)])
        while len(s) <= umax:
            m = len(s)
            prev = s[m - 1]
            prev2 = s[m - 2] if m >= 2 else None
            new = [
                [
                    -sum(c_off[i][t] * prev[t][j] for t in range(n))
                    - (prev2[i][j] if prev2 is not None else 0)
                    for j in range(n)
                ]
                for i in range(n)
            ]
            s.append(new)
        self.umax = max(self.umax, umax)

    def tilde_b(self, i: int, j: int, u: int, *, extend: bool = True) -> int:
        """The coefficient of t^u in the (i, j) entry of the inverse matrix."""
        if u <= 0:
            return 0
        if u - 1 >= len(self._series):
            if not extend:
                raise QGrothError(f"coefficient cache ends below u={u}")
            self._extend(u + 8)
        return self.datum.d(i) * self._series[u - 1][i - 1][j - 1]

    def check_vanishing(self, umax: int = 50) -> bool:
        """Conditions: b(i,j,u) = 0 when u <= d(i,j) or u = d(i,j) mod 2."""
        n = self.datum.rank
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                dij = self.datum.dist(i, j)
                for u in range(-4, umax + 1):
                    v = self.tilde_b(i, j, u)
                    if (u <= dij or (u - dij) % 2 == 0) and v != 0:
                        return False
        return True


def npairing(tc: TCartan, a: HatIndex, b: HatIndex) -> int:
    """The skew commutation exponent between torus generators at a and b."""
    (i, p), (j, s) = a, b
    eps = parity_function(tc.datum)
    if (p - eps[i]) % 2 or (s - eps[j]) % 2:
        raise QGrothError(f"parity violation at {a} or {b}")
    return (
        tc.tilde_b(i, j, p - s - 1)
        - tc.tilde_b(i, j, s - p - 1)
        - tc.tilde_b(i, j, p - s + 1)
        + tc.tilde_b(i, j, s - p + 1)
    )


# ----------------------------------------------------------------------
# torus elements


@dataclass
class XTorus:
    """Ambient data: pairing cache and bar weights for the (i,p) torus."""

    tc: TCartan
    _pairs: dict[tuple[HatIndex, HatIndex], int] = field(default_factory=dict)

    @property
    def datum(self) -> CartanDatum:
        return self.tc.datum

    def pairing(self, a: HatIndex, b: HatIndex) -> int:
        key = (a, b)
        if key not in self._pairs:
            v = npairing(self.tc, a, b)
            self._pairs[key] = v
            self._pairs[(b, a)] = -v
        return self._pairs[key]

    def pairing_vec(self, a: ExpKey, b: ExpKey) -> int:
        return sum(
            ea * eb * self.pairing(ua, ub) for ua, ea in a for ub, eb in b
        )


def _normkey(exps: dict[HatIndex, int]) -> ExpKey:
    return tuple(sorted(((u, e) for u, e in exps.items() if e), key=lambda t: (t[0][1], t[0][0])))


@dataclass(eq=False)
class XElement:
    """A torus element in the bar-invariant commutative-monomial basis."""

    ambient: XTorus
    terms: dict[ExpKey, QCoeff] = field(default_factory=dict)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(ambient: XTorus) -> "XElement":
        return XElement(ambient, {})

    @staticmethod
    def monomial(ambient: XTorus, exps: dict[HatIndex, int], coeff: QCoeff | None = None) -> "XElement":
        c = QCoeff.one() if coeff is None else coeff
        return XElement(ambient, {_normkey(exps): c} if c else {})

    @staticmethod
    def raw_generator(ambient: XTorus, i: int, p: int, exp: int = 1) -> "XElement":
        """The plain generator power, q^{-e d_i / 2} times the basis monomial."""
        d = ambient.datum.d(i)
        return XElement.monomial(ambient, {(i, p): exp}, QCoeff.q_power(-exp * d))

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "XElement") -> "XElement":
        out = dict(self.terms)
        for a, c in other.terms.items():
            s = out.get(a, QCoeff()) + c
            if s:
                out[a] = s
            else:
                out.pop(a, None)
        return XElement(self.ambient, out)

    def __neg__(self) -> "XElement":
        return XElement(self.ambient, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "XElement") -> "XElement":
        return self + (-other)

    def scale(self, c: QCoeff) -> "XElement":
        if not c:
            return XElement.zero(self.ambient)
        return XElement(self.ambient, {a: cc * c for a, cc in self.terms.items()})

    def __mul__(self, other: "XElement") -> "XElement":
        out: dict[ExpKey, QCoeff] = {}
        amb = self.ambient
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                twist = amb.pairing_vec(a, b)  # q^{twist/2}
                merged: dict[HatIndex, int] = dict(a)
                for u, e in b:
                    merged[u] = merged.get(u, 0) + e
                key = _normkey(merged)
                add = (ca * cb).shift(twist)
                s = out.get(key, QCoeff()) + add
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return XElement(amb, out)

    def bar(self) -> "XElement":
        return XElement(self.ambient, {a: c.bar() for a, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, XElement):
            return NotImplemented
        return self.terms == other.terms

    @property
    def is_zero(self) -> bool:
        return not self.terms

    # -- structure maps ---------------------------------------------------

    def truncate(self, xi: dict[int, int]) -> "XElement":
        out = {
            a: c
            for a, c in self.terms.items()
            if all(p <= xi[i] for (i, p), _ in a)
        }
        return XElement(self.ambient, out)

    def relabel(self, f) -> "XElement":
        out: dict[ExpKey, QCoeff] = {}
        for a, c in self.terms.items():
            key = _normkey({f(u): e for u, e in a})
            if key in out:
                raise QGrothError("relabelling collides")  # pragma: no cover
            out[key] = c
        return XElement(self.ambient, out)

    def dq_shift(self, direction: int = 1) -> "XElement":
        """The automorphism sending (i, p) to (i*, p +- h)."""
        if direction not in (1, -1):
            raise QGrothError("direction must be +1 or -1")
        h = self.ambient.datum.coxeter_number
        star = self.ambient.datum.star_of
        return self.relabel(lambda u: (star(u[0]), u[1] + direction * h))

    def tr_shift(self, r: int) -> "XElement":
        if r % 2:
            raise QGrothError("level shifts must be even")
        return self.relabel(lambda u: (u[0], u[1] + r))

    def at_q1(self) -> LaurentPoly:
        out = LaurentPoly.zero()
        for a, c in self.terms.items():
            out = out + LaurentPoly.monomial({("X",) + u: e for u, e in a}, c.at_q1())
        return out

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"XElement({xelement_to_text(self)})"


def kr_monomial(ambient: XTorus, i: int, p: int, s: int) -> XElement:
    """The commutative monomial on the parity ladder of node i from p to s."""
    eps = parity_function(ambient.datum)
    if (p - eps[i]) % 2 or (s - p) % 2:
        raise QGrothError("levels must match the node parity")
    if p > s:
        raise QGrothError("empty ladder: need p <= s")
    return XElement.monomial(ambient, {(i, u): 1 for u in range(p, s + 1, 2)})


def z_xi(ambient: XTorus, xi: dict[int, int], i: int, p: int) -> XElement:
    validate_height_function(ambient.datum, xi)
    return kr_monomial(ambient, i, p, xi[i])


def b_monomial_exponents(datum: CartanDatum, i: int, p: int) -> dict[HatIndex, int]:
    """Exponents of the elementary ratio monomial at (i, p)."""
    exps: dict[HatIndex, int] = {(i, p - 1): 1, (i, p + 1): 1}
    for j in range(1, datum.rank + 1):
        if j != i and datum.c(j, i) < 0:
            exps[(j, p)] = datum.c(j, i)
    return exps


# ----------------------------------------------------------------------
# compatible readings and the torus comparison


def compatible_reading(datum: CartanDatum, xi: dict[int, int], count: int) -> list[HatIndex]:
    """The first ``count`` pairs (i, p) with p <= xi_i, highest levels first."""
    validate_height_function(datum, xi)
    out: list[HatIndex] = []
    level = max(xi.values())
    while len(out) < count:
        for i in sorted(range(1, datum.rank + 1)):
            if xi[i] >= level and (xi[i] - level) % 2 == 0:
                out.append((i, level))
        level -= 1
    return out[:count]


def check_kappa(
    datum: CartanDatum, xi: dict[int, int], window: int, tc: TCartan | None = None
) -> bool:
    """Both halves of the torus comparison on a window of the reading."""
    tc = tc if tc is not None else TCartan(datum)
    ambient = XTorus(tc)
    margin = window + 2 * datum.rank + 2
    pairs = compatible_reading(datum, xi, margin)
    seq = IndexSequence(datum, tuple(i for i, _ in pairs))
    seed = build_seed(seq, window)
    krs = [z_xi(ambient, xi, i, p) for (i, p) in pairs[:window]]
    kr_exps = [next(iter(k.terms)) for k in krs]
    for u in range(window):
        for v in range(u + 1, window):
            n = ambient.pairing_vec(kr_exps[u], kr_exps[v])
            if n != seed.lam_entry(u + 1, v + 1):
                return False
    for u in sorted(seed.exchangeable):
        image: dict[HatIndex, int] = {}
        for k in range(1, window + 1):
            coeff = seed.b_entry(k, u)
            if coeff:
                for idx, e in kr_exps[k - 1]:
                    image[idx] = image.get(idx, 0) + coeff * e
        i, p = pairs[u - 1]
        want = {idx: -e for idx, e in b_monomial_exponents(datum, i, p - 1).items()}
        if {k: v for k, v in image.items() if v} != {k: v for k, v in want.items() if v}:
            return False
    return True


# ----------------------------------------------------------------------
# fixture verification


def _is_dominant(key: ExpKey) -> bool:
    return bool(key) and all(e > 0 for _, e in key)


def _is_antidominant(key: ExpKey) -> bool:
    return bool(key) and all(e < 0 for _, e in key)


def verify_fq_fixture(x: XElement, i: int, p: int, s: int) -> dict[str, bool]:
    """The five structural checks of a fundamental/KR fixture.

    Unique dominant monomial at the stated ladder with coefficient one,
    unique anti-dominant partner one Coxeter number up, support range with an
    interior factor, bar-invariance and positivity.
    """
    datum = x.ambient.datum
    h = datum.coxeter_number
    report: dict[str, bool] = {}

    dominant = [a for a in x.terms if _is_dominant(a)]
    want_dom = next(iter(kr_monomial(x.ambient, i, p, s).terms))
    report["dominant"] = (
        len(dominant) == 1
        and dominant[0] == want_dom
        and x.terms.get(want_dom) == QCoeff.one()
    )

    anti = [a for a in x.terms if _is_antidominant(a)]
    want_anti = _normkey(
        {(datum.star_of(i), u): -1 for u in range(p + h, s + h + 1, 2)}
    )
    report["antidominant"] = (
        len(anti) == 1 and anti[0] == want_anti and x.terms.get(want_anti) == QCoeff.one()
    )

    rng = True
    for a in x.terms:
        if a in (want_dom, want_anti):
            continue
        levels = [u for (_, u), _ in a]
        if not levels or not all(p <= u <= s + h for u in levels):
            rng = False
            break
        if not any(p < u < s + h for u in levels):
            rng = False
            break
    report["range"] = rng
    report["bar_invariant"] = x == x.bar()
    report["positive"] = all(c.is_nonnegative() for c in x.terms.values())
    return report


def verify_truncated_fixture(
    x: XElement, dominant: dict[HatIndex, int], xi: dict[int, int]
) -> dict[str, bool]:
    """Checks applicable to a truncated simple-character fixture.

    A truncated element has no anti-dominant partner, so the applicable
    checks are: unique dominant monomial as stated (with a q-power lead),
    support below the height function, bar-invariance up to a global q-power
    twist, and positivity.
    """
    report: dict[str, bool] = {}
    doms = [a for a in x.terms if _is_dominant(a)]
    want = _normkey(dominant)
    lead = x.terms.get(want, QCoeff())
    report["dominant"] = len(doms) == 1 and doms[0] == want and lead.is_q_power()
    twist = 0
    if lead.is_q_power():
        ((k0, _),) = lead.terms.items()
        twist = -k0
    xn = x.scale(QCoeff.q_power(twist))
    report["bar_invariant"] = xn == xn.bar()
    report["support"] = all(pp <= xi[j] for a in x.terms for (j, pp), _ in a)
    report["positive"] = all(c.is_nonnegative() for c in x.terms.values())
    return report


# ----------------------------------------------------------------------
# text format: "(coeff) X[i,p]^e*X[j,s]^e ..." with raw ordered products


def xelement_to_text(x: XElement) -> str:
    if x.is_zero:
        return "(0)"
    parts = []
    for a in sorted(x.terms, key=lambda k: tuple((u[1], u[0], e) for u, e in k)):
        # X^a = q^{gamma/2} * ordered raw product, gamma in half-units
        gamma = sum(e * x.ambient.datum.d(u[0]) for u, e in a)
        for t1 in range(len(a)):
            for t2 in range(t1 + 1, len(a)):
                gamma -= a[t1][1] * a[t2][1] * x.ambient.pairing(a[t1][0], a[t2][0])
        coeff = x.terms[a].shift(gamma)
        mono = "*".join(
            f"X[{u[0]},{u[1]}]" + (f"^{e}" if e != 1 else "") for u, e in a
        )
        parts.append(f"({qcoeff_to_text(coeff)}) {mono}".rstrip())
    return " + ".join(parts)


def xelement_from_text(ambient: XTorus, text: str) -> XElement:
    out = XElement.zero(ambient)
    for term in _split_terms(text):
        coeff_text, mono_text = _split_coeff(term)
        acc = XElement.monomial(ambient, {}, qcoeff_from_text(coeff_text))
        if mono_text:
            for factor in mono_text.split("*"):
                idx, exp = _parse_factor(factor)
                if len(idx) != 2:
                    raise TorusError(f"need X[i,p] indices, got {factor!r}")
                acc = acc * XElement.raw_generator(ambient, idx[0], idx[1], exp)
        out = out + acc
    return out


# ----------------------------------------------------------------------
# the q = 1 substitution pipeline for the rank-2 doubled-edge case


def _xvar(i: int, p: int) -> LaurentPoly:
    return LaurentPoly.var(("X", i, p))


def _kr_poly_x(xi: dict[int, int], i: int, p: int) -> LaurentPoly:
    """The ladder monomial in X-variables; empty ladders collapse to 1."""
    if p > xi[i]:
        return LaurentPoly.const(1)
    exps = {("X", i, u): 1 for u in range(p, xi[i] + 1, 2)}
    return LaurentPoly.monomial(exps)


def substitute_b2(m_max: int = 1) -> dict[str, bool]:
    """Run the q=1 substitution checks for the doubled-edge rank-2 case.

    Returns a named report; every entry must be True.  Identities follow the
    fixed reference data: the mutation path along vertex triples, the four
    variable images, the two product identities and the two full reductions.
    """
    if m_max < 1:
        raise QGrothError("the reductions need m_max >= 1")
    datum = build_cartan("B", 2)
    xi = {1: 0, 2: 1}
    window = 4 * (m_max + 3)
    pairs = compatible_reading(datum, xi, window + 8)
    position = {pair: u + 1 for u, pair in enumerate(pairs)}
    seq = IndexSequence(datum, tuple(i for i, _ in pairs))
    seed = build_seed(seq, window)

    b = seed.b.copy()
    variables: list[LaurentPoly] = [
        LaurentPoly.var(("Z",) + pairs[u]) for u in range(window)
    ]

    def mutate_at(vertex: HatIndex) -> None:
        u = position[vertex]
        col = b[:, u - 1]
        m_plus = LaurentPoly.const(1)
        m_minus = LaurentPoly.const(1)
        for v in range(window):
            e = int(col[v])
            if e > 0:
                m_plus = m_plus * variables[v] ** e
            elif e < 0:
                m_minus = m_minus * variables[v] ** (-e)
        variables[u - 1] = (m_plus + m_minus).divexact(variables[u - 1])
        row = b[u - 1, :].copy()
        colc = col.copy()
        b2 = b + np.outer(np.maximum(colc, 0), np.maximum(row, 0)) - np.outer(
            np.maximum(-colc, 0), np.maximum(-row, 0)
        )
        b2[u - 1, :] = -row
        b2[:, u - 1] = -colc
        b[:, :] = b2

    for mm in range(m_max + 2):
        top = 1 - 4 * mm
        mutate_at((2, top))
        mutate_at((1, -4 * mm))
        mutate_at((2, top))

    xi_primed = {1: 0, 2: -1}

    def z(i: int, p: int) -> LaurentPoly:
        if p > xi[i]:
            return LaurentPoly.const(1)
        return LaurentPoly.var(("Z", i, p))

    def psi_hat(i: int, p: int) -> LaurentPoly:
        """Image of the primed initial variable at (i, p), in Z-variables."""
        if i == 1:
            return variables[position[(1, p)] - 1]
        # node 2: the primed vertex (2, p) sits at the unprimed vertex (2, p+2)
        return variables[position[(2, p + 2)] - 1]

    report: dict[str, bool] = {}

    # (a) the four displayed images of primed cluster variables
    for m in range(m_max + 1):
        t = 4 * m
        num1 = (
            z(2, 3 - t) ** 2 * z(1, -t) ** 2
            + (z(2, 3 - t) * z(1, 2 - t) * z(1, -t) * z(2, -1 - t)).scale(2)
            + z(1, 2 - t) ** 2 * z(2, -1 - t) ** 2
            + z(1, 2 - t) * z(2, 1 - t) ** 2 * z(1, -2 - t)
        )
        den1 = z(2, 1 - t) ** 2 * z(1, -t)
        report[f"psi_hat_Z1_m{m}"] = psi_hat(1, -t) * den1 == num1
        num2 = (
            z(2, 3 - t) * z(1, -t) * z(2, -1 - t)
            + z(1, 2 - t) * z(2, -1 - t) ** 2
            + z(2, 1 - t) ** 2 * z(1, -2 - t)
        )
        den2 = z(2, 1 - t) * z(1, -t)
        report[f"psi_hat_Z2_m{m}"] = psi_hat(2, -1 - t) * den2 == num2
        report[f"psi_hat_Z1low_m{m}"] = psi_hat(1, -2 - t) == z(1, -2 - t)
        report[f"psi_hat_Z2low_m{m}"] = psi_hat(2, -3 - t) == z(2, -1 - t)

    # pass to X-variables
    table = {("Z", i, p): _kr_poly_x(xi, i, p) for (i, p) in pairs[:window]}

    def psi_hat_x(i: int, p: int) -> RationalX:
        # primed variables above the primed height function are empty ladders
        if p > xi_primed[i]:
            return RationalX.from_poly(LaurentPoly.const(1))
        return RationalX.from_poly(psi_hat(i, p).substitute(table))

    def psi_x(i: int, p: int) -> RationalX:
        """Image of the primed torus generator at (i, p), as a rational function."""
        return psi_hat_x(i, p) * psi_hat_x(i, p + 2).inverse()

    def xv(i: int, p: int) -> RationalX:
        return RationalX.from_poly(_xvar(i, p))

    # (b) the four displayed substitution expressions
    def bracket_1_low(m: int) -> RationalX:  # (1, -4m-2)
        t = 4 * m
        return (
            xv(1, -2 - t).inverse() * xv(2, 1 - t).inverse() * xv(2, 1 - t).inverse()
            + (xv(2, -1 - t) * xv(2, 1 - t).inverse() * xv(1, -t).inverse() * xv(1, -2 - t).inverse()).scale_int(2)
            + xv(1, -t).inverse() * xv(1, -t).inverse() * xv(1, -2 - t).inverse() * xv(2, -1 - t) * xv(2, -1 - t)
            + xv(1, -t).inverse()
        )

    def bracket_1(m: int) -> RationalX:  # (1, -4m)
        t = 4 * m
        return (
            xv(1, -t) * xv(2, 1 - t).inverse() ** 2
            + (xv(2, -1 - t) * xv(2, 1 - t).inverse()).scale_int(2)
            + xv(1, -t).inverse() * xv(2, -1 - t) ** 2
            + xv(1, -2 - t)
        )

    def bracket_2_low(m: int) -> RationalX:  # (2, -4m-3)
        t = 4 * m
        return (
            xv(2, 1 - t).inverse()
            + xv(1, -t).inverse() * xv(2, -1 - t)
            + xv(1, -2 - t) * xv(2, -1 - t).inverse()
        )

    def bracket_2(m: int) -> RationalX:  # (2, -4m-1)
        t = 4 * m
        return (
            xv(2, -1 - t)
            + xv(1, -t).inverse() * xv(2, -1 - t) ** 2 * xv(2, 1 - t)
            + xv(1, -2 - t) * xv(2, 1 - t)
        )

    for m in range(m_max + 1):
        report[f"psi_x_1low_m{m}"] = psi_x(1, -4 * m - 2) == bracket_1_low(m).inverse()
        report[f"psi_x_2low_m{m}"] = psi_x(2, -4 * m - 3) == bracket_2_low(m).inverse()
        report[f"psi_x_1_m{m}"] = psi_x(1, -4 * m) == bracket_1(m)
        report[f"psi_x_2_m{m}"] = psi_x(2, -4 * m - 1) == bracket_2(m)

    # (c) product identities
    for m in range(m_max + 1):
        t = 4 * m
        lhs = psi_x(1, -2 - t) * psi_x(1, -t)
        report[f"product_1_m{m}"] = lhs == xv(1, -t) * xv(1, -2 - t)
        lhs2 = psi_x(2, -3 - t) * psi_x(2, -1 - t)
        report[f"product_2_m{m}"] = lhs2 == xv(2, 1 - t) * xv(2, -1 - t)

    # (d) the canonical-class image of the level -7 four-term sum
    img_d = (
        psi_x(2, -7)
        + psi_x(1, -6) * psi_x(2, -5).inverse()
        + psi_x(2, -5) * psi_x(1, -4).inverse()
        + psi_x(2, -3).inverse()
    )
    target_d = (
        xv(2, 1).inverse() + xv(1, 0).inverse() * xv(2, -1) + xv(1, -2) * xv(2, -1).inverse() + xv(2, -3)
    )
    report["reduction_L2"] = img_d == target_d

    # (e) the image of the level -4 five-term sum
    img_e = (
        psi_x(1, -4)
        + psi_x(2, -3) ** 2 * psi_x(1, -2).inverse()
        + (psi_x(2, -3) * psi_x(2, -1).inverse()).scale_int(2)
        + psi_x(1, -2) * psi_x(2, -1) ** (-2)
        + psi_x(1, 0).inverse()
    )
    target_e = (
        xv(1, -4) * xv(2, -3).inverse() ** 2
        + (xv(2, -3).inverse() * xv(2, -5)).scale_int(2)
        + xv(1, -4).inverse() * xv(2, -5) ** 2
        + xv(1, -6)
        + xv(1, -2).inverse()
    )
    report["reduction_L1"] = img_e == target_e
    return report
