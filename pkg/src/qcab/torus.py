"""Exact arithmetic in based quantum tori and cluster-variable tracking.

Elements are stored in the basis of bar-invariant normalized monomials X^a:
the product rule is X^a * X^b = q^{(1/2) a^T P b} X^{a+b} for the ambient
skew pairing P, so the bar involution acts coefficient-wise.  Coefficients
live in Z[q^{+-1/2}], with q-exponents kept as integers counting half-units.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .seeds import CompatiblePair, mutate_pair, pos


class TorusError(ValueError):
    pass


class NotPointedError(TorusError):
    pass


class DivisionRemainderError(TorusError):
    """Exact division failed; with valid inputs this signals a genuine bug."""


# ----------------------------------------------------------------------
# coefficients in Z[q^{+-1/2}]


class QCoeff:
    """A Laurent polynomial in q^{1/2}; keys count half-integer exponents."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, int] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @staticmethod
    def q_power(half_units: int, coeff: int = 1) -> "QCoeff":
        return QCoeff({half_units: coeff})

    @staticmethod
    def one() -> "QCoeff":
        return QCoeff({0: 1})

    @staticmethod
    def integer(n: int) -> "QCoeff":
        return QCoeff({0: n})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QCoeff) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other: "QCoeff") -> "QCoeff":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return QCoeff(out)

    def __neg__(self) -> "QCoeff":
        return QCoeff({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "QCoeff") -> "QCoeff":
        return self + (-other)

    def __mul__(self, other: "QCoeff") -> "QCoeff":
        if len(self.terms) == 1:
            ((k1, v1),) = self.terms.items()
            if v1 == 1:
                return other.shift(k1)
            return QCoeff({k1 + k2: v1 * v2 for k2, v2 in other.terms.items()})
        out: dict[int, int] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + v1 * v2
        return QCoeff(out)

    def shift(self, half_units: int) -> "QCoeff":
        return QCoeff({k + half_units: v for k, v in self.terms.items()})

    def bar(self) -> "QCoeff":
        return QCoeff({-k: v for k, v in self.terms.items()})

    def is_q_power(self) -> bool:
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def is_nonnegative(self) -> bool:
        return all(v > 0 for v in self.terms.values())

    def q_power_inverse(self) -> "QCoeff":
        if not self.is_q_power():
            raise TorusError("coefficient is not a unit q-power")
        (k, v), = self.terms.items()
        return QCoeff({-k: v})

    def at_q1(self) -> int:
        return sum(self.terms.values())

    def __repr__(self) -> str:
        return f"QCoeff({qcoeff_to_text(self)!r})"


def qcoeff_to_text(c: QCoeff) -> str:
    if not c:
        return "0"
    parts = []
    for k in sorted(c.terms, reverse=True):
        v = c.terms[k]
        if k == 0:
            parts.append(f"{v}")
            continue
        if k % 2 == 0:
            e = k // 2
            qs = "q" if e == 1 else f"q^{e}"
        else:
            qs = f"q^{k}/2"
        if v == 1:
            parts.append(qs)
        elif v == -1:
            parts.append(f"-{qs}")
        else:
            parts.append(f"{v}*{qs}")
    text = " + ".join(parts)
    return text.replace("+ -", "- ")


def qcoeff_from_text(text: str) -> QCoeff:
    text = text.strip()
    if text == "0":
        return QCoeff()
    out: dict[int, int] = {}
    for chunk in text.replace("- ", "+ -").split(" + "):
        chunk = chunk.strip()
        if not chunk:
            continue
        coeff = 1
        if chunk.startswith("-"):
            coeff = -1
            chunk = chunk[1:]
        if "*" in chunk:
            num, chunk = chunk.split("*", 1)
            coeff *= int(num)
        if chunk.startswith("q"):
            rest = chunk[1:]
            if not rest:
                k = 2
            elif rest.startswith("^"):
                rest = rest[1:]
                k = int(rest[:-2]) if rest.endswith("/2") else 2 * int(rest)
            else:
                raise TorusError(f"bad coefficient chunk {chunk!r}")
        else:
            coeff *= int(chunk)
            k = 0
        out[k] = out.get(k, 0) + coeff
    return QCoeff(out)


# ----------------------------------------------------------------------
# Laurent elements of T(Lambda)


@dataclass(frozen=True)
class QLaurent:
    """An element of the based quantum torus attached to a window Lambda."""

    lam: np.ndarray  # ambient skew pairing, (s, s)
    terms: dict[tuple[int, ...], QCoeff] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return self.lam.shape[0]

    def _same(self, other: "QLaurent") -> None:
        if self.lam.shape != other.lam.shape or not np.array_equal(self.lam, other.lam):
            raise TorusError("mismatched ambient tori")

    @staticmethod
    def zero(lam: np.ndarray) -> "QLaurent":
        return QLaurent(lam, {})

    @staticmethod
    def monomial(lam: np.ndarray, a: tuple[int, ...], coeff: QCoeff | None = None) -> "QLaurent":
        c = QCoeff.one() if coeff is None else coeff
        return QLaurent(lam, {tuple(int(x) for x in a): c} if c else {})

    @staticmethod
    def generator(lam: np.ndarray, u: int, exp: int = 1) -> "QLaurent":
        a = [0] * lam.shape[0]
        a[u - 1] = exp
        return QLaurent.monomial(lam, tuple(a))

    def __add__(self, other: "QLaurent") -> "QLaurent":
        self._same(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            s = out.get(a, QCoeff()) + c
            if s:
                out[a] = s
            else:
                out.pop(a, None)
        return QLaurent(self.lam, out)

    def __neg__(self) -> "QLaurent":
        return QLaurent(self.lam, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "QLaurent") -> "QLaurent":
        return self + (-other)

    def scale(self, c: QCoeff) -> "QLaurent":
        if not c:
            return QLaurent.zero(self.lam)
        return QLaurent(self.lam, {a: cc * c for a, cc in self.terms.items()})

    def __mul__(self, other: "QLaurent") -> "QLaurent":
        self._same(other)
        if not self.terms or not other.terms:
            return QLaurent.zero(self.lam)
        out: dict[tuple[int, ...], QCoeff] = {}
        lam = self.lam
        akeys = list(self.terms)
        bkeys = list(other.terms)
        twists = np.array(akeys) @ lam @ np.array(bkeys).T  # q^{twist/2}
        for i, a in enumerate(akeys):
            ca = self.terms[a]
            trow = twists[i]
            for j, b in enumerate(bkeys):
                key = tuple(x + y for x, y in zip(a, b))
                add = (ca * other.terms[b]).shift(int(trow[j]))
                s = out.get(key, QCoeff()) + add
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return QLaurent(self.lam, out)

    def __pow__(self, n: int) -> "QLaurent":
        if n < 0:
            raise TorusError("negative powers only exist for monomials")
        out = QLaurent.monomial(self.lam, (0,) * self.size)
        for _ in range(n):
            out = out * self
        return out

    def bar(self) -> "QLaurent":
        return QLaurent(self.lam, {a: c.bar() for a, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QLaurent):
            return NotImplemented
        return np.array_equal(self.lam, other.lam) and self.terms == other.terms

    def __hash__(self) -> int:  # pragma: no cover
        return hash((self.lam.tobytes(), tuple(sorted(self.terms))))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"QLaurent({qlaurent_to_text(self)})"


def normal_monomial(lam: np.ndarray, a: tuple[int, ...]) -> QLaurent:
    """The bar-invariant normalized monomial Z^a."""
    return QLaurent.monomial(lam, a)


def multiply(x: QLaurent, y: QLaurent) -> QLaurent:
    return x * y


# ----------------------------------------------------------------------
# term orders, pointedness and exact division


def _order_key(lam: np.ndarray):
    weight = lam.sum(axis=0)  # row vector 1^T Lambda

    def key(a: tuple[int, ...]):
        return (int(weight @ np.array(a)), a)

    return key


def leading_term(x: QLaurent) -> tuple[tuple[int, ...], QCoeff]:
    if x.is_zero:
        raise TorusError("zero element has no leading term")
    key = _order_key(x.lam)
    a = max(x.terms, key=key)
    return a, x.terms[a]


def divide_right_exact(x: QLaurent, d: QLaurent, max_steps: int | None = None) -> QLaurent:
    """The unique y with y * d = x, by leading-term elimination.

    The divisor's leading coefficient must be a unit q-power (true for every
    pointed cluster variable).  A nonzero remainder raises, which for cluster
    exchange steps signals an implementation bug, not a data condition.
    """
    x._same(d)
    if d.is_zero:
        raise TorusError("division by zero")
    lam = x.lam
    key = _order_key(lam)
    ld_exp, ld_coeff = leading_term(d)
    ld_inv = ld_coeff.q_power_inverse()
    ld_vec = np.array(ld_exp)
    rem = x
    out: dict[tuple[int, ...], QCoeff] = {}
    steps = 0
    cap = max_steps if max_steps is not None else 4 * (len(x.terms) + 1) * (len(d.terms) + 1) + 64
    while not rem.is_zero:
        steps += 1
        if steps > cap:
            raise DivisionRemainderError("right division did not terminate: nonzero remainder")
        m = max(rem.terms, key=key)
        c = rem.terms[m]
        t_exp = tuple(a - b for a, b in zip(m, ld_exp))
        twist = int(np.array(t_exp) @ lam @ ld_vec)  # X^t X^ld = q^{twist/2} X^m
        t_coeff = (c * ld_inv).shift(-twist)
        out[t_exp] = out.get(t_exp, QCoeff()) + t_coeff
        rem = rem - QLaurent.monomial(lam, t_exp, t_coeff) * d
    return QLaurent(lam, {a: c for a, c in out.items() if c})


def degree_of_pointed(x: QLaurent, pair: CompatiblePair) -> tuple[int, ...]:
    """The degree vector g of a pointed element, with certificate checks.

    Verifies x = q^{a/2} Z^g + sum_n p_n Z^{g + B n} over n >= 0 supported on
    the exchangeable positions, and that the lead coefficient is a q-power.
    """
    if x.is_zero:
        raise NotPointedError("zero element is not pointed")
    key = _order_key(pair.lam)
    g = max(x.terms, key=key)
    if not x.terms[g].is_q_power():
        raise NotPointedError("lead coefficient is not a q-power")
    rest = [m for m in x.terms if m != g]
    if not rest:
        return g
    diffs = np.array(rest) - np.array(g)  # (T, s)
    w = diffs @ pair.lam.T  # rows are Lambda (m - g)
    scale = np.array([2 * d for d in pair.diag])
    n = np.zeros_like(diffs)
    ex_idx = np.array([u - 1 for u in sorted(pair.exchangeable)])
    if ex_idx.size:
        vals = -w[:, ex_idx]
        if np.any(vals % scale[ex_idx]) or np.any(vals < 0):
            raise NotPointedError("an exponent is not of the form g + B n")
        n[:, ex_idx] = vals // scale[ex_idx]
    if not np.array_equal(n @ pair.b.T, diffs):
        raise NotPointedError("an exponent is not of the form g + B n")
    return g


def gvector_mutate(g_prime: tuple[int, ...], k: int, b_mutated: np.ndarray) -> tuple[int, ...]:
    """Degree transport along one mutation, using the mutated matrix entries."""
    gk = g_prime[k - 1]
    col = b_mutated[:, k - 1]
    adj = pos(col) if gk >= 0 else pos(-col)
    out = np.array(g_prime) + gk * adj
    out[k - 1] = -gk
    return tuple(int(v) for v in out)


# ----------------------------------------------------------------------
# cluster state


@dataclass(frozen=True)
class ClusterState:
    """A seed reached by mutations, with variables kept in the initial torus."""

    initial: CompatiblePair
    current: CompatiblePair
    variables: tuple[QLaurent, ...]
    history: tuple[int, ...]
    pair_chain: tuple[CompatiblePair, ...]  # seeds after each step, len(history)+1

    @staticmethod
    def from_pair(pair: CompatiblePair) -> "ClusterState":
        lam = pair.lam
        gens = tuple(QLaurent.generator(lam, u) for u in range(1, pair.size + 1))
        return ClusterState(pair, pair, gens, (), (pair,))


def _expand_current_monomial(state: ClusterState, expvec: np.ndarray) -> QLaurent:
    """The image in the initial torus of the current-seed monomial Z^expvec."""
    lam_cur = state.current.lam
    twist = 0
    for u in range(state.current.size):
        for v in range(u + 1, state.current.size):
            twist += int(expvec[u]) * int(expvec[v]) * int(lam_cur[u, v])
    out = QLaurent.monomial(state.initial.lam, (0,) * state.initial.size, QCoeff.q_power(-twist))
    for u in range(state.current.size):
        for _ in range(int(expvec[u])):
            out = out * state.variables[u]
    return out


def mutate_state(state: ClusterState, k: int) -> ClusterState:
    """Exchange at k; the new variable is (M' + M'') right-divided by the old."""
    cur = state.current
    if k not in cur.exchangeable:
        raise TorusError(f"position {k} is frozen")
    col = cur.b[:, k - 1].copy()
    col[k - 1] = 0
    m1 = pos(col)
    m2 = pos(-col)
    ek = np.zeros(cur.size, dtype=np.int64)
    ek[k - 1] = 1
    num = QLaurent.zero(state.initial.lam)
    for mvec in (m1, m2):
        twist = int(mvec @ cur.lam @ ek)  # Z^{m - e_k} = q^{twist/2} Z^m Z_k^{-1}
        num = num + _expand_current_monomial(state, mvec).scale(QCoeff.q_power(twist))
    new_var = divide_right_exact(num, state.variables[k - 1])
    nxt = mutate_pair(cur, k)
    variables = list(state.variables)
    variables[k - 1] = new_var
    return ClusterState(
        state.initial,
        nxt,
        tuple(variables),
        state.history + (k,),
        state.pair_chain + (nxt,),
    )


def predicted_degree(state: ClusterState, position: int) -> tuple[int, ...]:
    """Initial-seed degree of a current variable via the stepwise degree rule."""
    born = 0
    for t in range(len(state.history), 0, -1):
        if state.history[t - 1] == position:
            born = t
            break
    g = tuple(
        1 if u == position else 0 for u in range(1, state.initial.size + 1)
    )
    for t in range(born, 0, -1):
        g = gvector_mutate(g, state.history[t - 1], state.pair_chain[t].b)
    return g


# ----------------------------------------------------------------------
# canonical text rendering


def _monomial_text(a: tuple[int, ...], label: str = "Z") -> str:
    factors = []
    for u, e in enumerate(a, start=1):
        if e == 0:
            continue
        factors.append(f"{label}[{u}]" + (f"^{e}" if e != 1 else ""))
    return "*".join(factors)


def qlaurent_to_text(x: QLaurent) -> str:
    if x.is_zero:
        return "(0)"
    parts = []
    for a in sorted(x.terms):
        mono = _monomial_text(a)
        coeff = qcoeff_to_text(x.terms[a])
        parts.append(f"({coeff}) {mono}".rstrip())
    return " + ".join(parts)


def qlaurent_from_text(lam: np.ndarray, text: str) -> QLaurent:
    out = QLaurent.zero(lam)
    s = lam.shape[0]
    for term in _split_terms(text):
        coeff_text, mono_text = _split_coeff(term)
        a = [0] * s
        if mono_text:
            for factor in mono_text.split("*"):
                name, exp = _parse_factor(factor)
                if not 1 <= name[0] <= s:
                    raise TorusError(f"index {name[0]} outside window")
                a[name[0] - 1] += exp
        out = out + QLaurent.monomial(lam, tuple(a), qcoeff_from_text(coeff_text))
    return out


def _split_terms(text: str) -> list[str]:
    terms, depth, cur = [], 0, []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and text.startswith(" + ", i):
            terms.append("".join(cur))
            cur = []
            i += 3
            continue
        cur.append(ch)
        i += 1
    if cur:
        terms.append("".join(cur))
    return [t.strip() for t in terms if t.strip()]


def _split_coeff(term: str) -> tuple[str, str]:
    term = term.strip()
    if not term.startswith("("):
        return "1", term
    depth = 0
    for i, ch in enumerate(term):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                return term[1:i], term[i + 1 :].strip()
    raise TorusError(f"unbalanced parentheses in {term!r}")


def _parse_factor(factor: str) -> tuple[tuple[int, ...], int]:
    factor = factor.strip()
    if "^" in factor:
        base, exp_text = factor.rsplit("^", 1)
        exp = int(exp_text)
    else:
        base, exp = factor, 1
    if "[" not in base or not base.endswith("]"):
        raise TorusError(f"bad monomial factor {factor!r}")
    inside = base[base.index("[") + 1 : -1]
    idx = tuple(int(t) for t in inside.split(","))
    return idx, exp
