"""Finite-type Cartan data, root systems and exact weight arithmetic.

All node labels and word positions are 1-based, matching the usual tables.
Weights carry their coordinates in the fundamental-weight basis and, when they
lie in the root lattice, an exact integer coordinate vector in the simple-root
basis as well.  Every bilinear-form value produced here is an exact integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

FAMILIES = "ABCDEFG"

# Coxeter number h = 2|Phi^+|/n is computed from the root system, never tabled.


class CartanError(ValueError):
    """Raised for unsupported families/ranks or malformed Cartan input."""


@dataclass(frozen=True)
class Weight:
    """A weight written in the fundamental-weight basis.

    ``alpha`` holds the simple-root coordinates when the weight is known to
    lie in the root lattice; it is ``None`` otherwise.
    """

    wt: tuple[int, ...]
    alpha: tuple[int, ...] | None = None

    def __add__(self, other: "Weight") -> "Weight":
        wt = tuple(a + b for a, b in zip(self.wt, other.wt))
        al = None
        if self.alpha is not None and other.alpha is not None:
            al = tuple(a + b for a, b in zip(self.alpha, other.alpha))
        return Weight(wt, al)

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def __neg__(self) -> "Weight":
        al = None if self.alpha is None else tuple(-a for a in self.alpha)
        return Weight(tuple(-a for a in self.wt), al)

    def scale(self, c: int) -> "Weight":
        al = None if self.alpha is None else tuple(c * a for a in self.alpha)
        return Weight(tuple(c * a for a in self.wt), al)

    @property
    def is_zero(self) -> bool:
        return all(a == 0 for a in self.wt)


@dataclass(frozen=True)
class CartanDatum:
    """Cartan matrix, minimal symmetrizer and derived root-system data."""

    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]  # c[i-1][j-1] = <h_i, alpha_j>
    symmetrizer: tuple[int, ...]  # minimal positive d_i with d_i c_ij = d_j c_ji
    coxeter_number: int
    distance: tuple[tuple[int, ...], ...]  # edge distance d(i,j) in the diagram
    star: tuple[int, ...]  # Dynkin involution, star[i-1] = i*
    positive_roots: tuple[tuple[int, ...], ...]  # alpha-basis coordinates
    w0_word: tuple[int, ...]

    # -- basic tables -------------------------------------------------

    def c(self, i: int, j: int) -> int:
        return self.cartan[i - 1][j - 1]

    def d(self, i: int) -> int:
        return self.symmetrizer[i - 1]

    def dist(self, i: int, j: int) -> int:
        return self.distance[i - 1][j - 1]

    def star_of(self, i: int) -> int:
        return self.star[i - 1]

    @property
    def longest_length(self) -> int:
        return len(self.positive_roots)

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"CartanDatum({self.family}{self.rank})"

    # -- weights ------------------------------------------------------

    def fundamental_weight(self, i: int) -> Weight:
        self._check_node(i)
        return Weight(tuple(1 if k == i - 1 else 0 for k in range(self.rank)))

    def simple_root(self, j: int) -> Weight:
        self._check_node(j)
        wt = tuple(self.cartan[i][j - 1] for i in range(self.rank))
        al = tuple(1 if k == j - 1 else 0 for k in range(self.rank))
        return Weight(wt, al)

    def zero_weight(self) -> Weight:
        return Weight((0,) * self.rank, (0,) * self.rank)

    def weight_from_alpha(self, coeffs: tuple[int, ...]) -> Weight:
        wt = tuple(
            sum(self.cartan[i][j] * coeffs[j] for j in range(self.rank))
            for i in range(self.rank)
        )
        return Weight(wt, tuple(coeffs))

    def to_alpha(self, w: Weight) -> Weight:
        """Attach the root-lattice coordinates of ``w``, if they are integral."""
        if w.alpha is not None:
            return w
        inv = _cartan_inverse(self)
        coeffs = []
        for row in inv:
            v = sum(row[j] * w.wt[j] for j in range(self.rank))
            if v.denominator != 1:
                raise CartanError("weight does not lie in the root lattice")
            coeffs.append(int(v))
        return Weight(w.wt, tuple(coeffs))

    def reflect(self, i: int, w: Weight) -> Weight:
        """Simple reflection s_i(w) = w - <h_i, w> alpha_i."""
        self._check_node(i)
        return w - self.simple_root(i).scale(w.wt[i - 1])

    def _check_node(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise CartanError(f"node {i} out of range for {self.family}{self.rank}")


# ----------------------------------------------------------------------
# construction


def _base_cartan(family: str, rank: int) -> list[list[int]]:
    n = rank
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(a: int, b: int, cab: int = -1, cba: int = -1) -> None:
        c[a - 1][b - 1] = cab
        c[b - 1][a - 1] = cba

    if family == "A" and n >= 1:
        for i in range(1, n):
            link(i, i + 1)
    elif family == "B" and n >= 2:
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 1, n, -1, -2)  # node n is the short one
    elif family == "C" and n >= 2:
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 1, n, -2, -1)  # node n is the long one
    elif family == "D" and n >= 4:
        for i in range(1, n - 2):
            link(i, i + 1)
        link(n - 2, n - 1)
        link(n - 2, n)
    elif family == "E" and n in (6, 7, 8):
        link(1, 3)
        link(2, 4)
        for i in range(3, n):
            link(i, i + 1)
    elif family == "F" and n == 4:
        link(1, 2)
        link(2, 3, -1, -2)  # nodes 1,2 long; 3,4 short
        link(3, 4)
    elif family == "G" and n == 2:
        # Node 1 short, node 2 long; the only labelling consistent with the
        # reference data this library certifies against.
        link(1, 2, -3, -1)
    else:
        raise CartanError(f"unsupported type {family}{rank}")
    return c


def _minimal_symmetrizer(c: list[list[int]]) -> list[int]:
    # Spread ratios d_i c_ij = d_j c_ji along the (connected) diagram.
    n = len(c)
    d = [Fraction(0)] * n
    d[0] = Fraction(1)
    todo = [0]
    while todo:
        i = todo.pop()
        for j in range(n):
            if i != j and c[i][j] != 0:
                ratio = Fraction(c[i][j], c[j][i])
                dj = d[i] * ratio
                if d[j] == 0:
                    d[j] = dj
                    todo.append(j)
                elif d[j] != dj:
                    raise CartanError("matrix is not symmetrizable")
    lcm_den = 1
    for x in d:
        lcm_den = lcm_den * x.denominator // _gcd(lcm_den, x.denominator)
    vals = [int(x * lcm_den) for x in d]
    g = 0
    for v in vals:
        g = _gcd(g, v)
    return [v // g for v in vals]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _distance_table(c: list[list[int]]) -> list[list[int]]:
    n = len(c)
    big = n + 10
    dist = [[0 if i == j else (1 if c[i][j] != 0 else big) for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if dist[i][k] + dist[k][j] < dist[i][j]:
                    dist[i][j] = dist[i][k] + dist[k][j]
    return dist


def _positive_roots(c: list[list[int]]) -> list[tuple[int, ...]]:
    """Reflection closure of the simple roots, in simple-root coordinates."""
    n = len(c)
    simple = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
    seen: set[tuple[int, ...]] = set(simple)
    todo = list(simple)
    while todo:
        x = todo.pop()
        for i in range(n):
            # s_i in alpha-coordinates: x_i -> x_i - sum_j c_ij x_j
            pairing = sum(c[i][j] * x[j] for j in range(n))
            y = list(x)
            y[i] -= pairing
            ty = tuple(y)
            if ty not in seen:
                seen.add(ty)
                todo.append(ty)
    return sorted(r for r in seen if all(a >= 0 for a in r))


@lru_cache(maxsize=None)
def build_cartan(family: str, rank: int) -> CartanDatum:
    """Build the Cartan datum of a finite type such as ``("B", 2)``."""
    family = family.upper()
    if family not in FAMILIES:
        raise CartanError(f"unknown family {family!r}")
    c = _base_cartan(family, rank)
    d = _minimal_symmetrizer(c)
    pos = _positive_roots(c)
    n = rank
    if 2 * len(pos) % n != 0:
        raise CartanError("inconsistent root count")
    h = 2 * len(pos) // n

    datum = CartanDatum(
        family=family,
        rank=rank,
        cartan=tuple(tuple(row) for row in c),
        symmetrizer=tuple(d),
        coxeter_number=h,
        distance=tuple(tuple(row) for row in _distance_table(c)),
        star=(0,) * rank,  # placeholder, replaced below
        positive_roots=tuple(pos),
        w0_word=(),
    )
    w0 = _longest_word_greedy(datum)
    star = []
    for i in range(1, rank + 1):
        img = weyl_act(datum, w0, datum.simple_root(i))
        neg = tuple(-a for a in img.alpha)  # type: ignore[arg-type]
        try:
            j = 1 + [tuple(r) for r in _simple_tuples(rank)].index(neg)
        except ValueError as exc:  # pragma: no cover - internal consistency
            raise CartanError("w0 does not permute the simple roots") from exc
        star.append(j)
    object.__setattr__(datum, "star", tuple(star))
    object.__setattr__(datum, "w0_word", w0)
    return datum


def _simple_tuples(n: int) -> list[tuple[int, ...]]:
    return [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]


def parse_type(code: str) -> CartanDatum:
    """Parse a string code like ``"B2"`` or ``"F4"``."""
    code = code.strip()
    if len(code) < 2 or code[0].upper() not in FAMILIES:
        raise CartanError(f"bad type code {code!r}")
    return build_cartan(code[0].upper(), int(code[1:]))


@lru_cache(maxsize=None)
def _cartan_inverse(datum: CartanDatum) -> tuple[tuple[Fraction, ...], ...]:
    n = datum.rank
    a = [[Fraction(datum.cartan[i][j]) for j in range(n)] for i in range(n)]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = a[col][col]
        a[col] = [x / f for x in a[col]]
        inv[col] = [x / f for x in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return tuple(tuple(row) for row in inv)


# ----------------------------------------------------------------------
# Weyl-group operations


def weyl_act(datum: CartanDatum, word: tuple[int, ...] | list[int], w: Weight) -> Weight:
    """Apply s_{i_1} o ... o s_{i_r} to ``w`` (s_{i_1} outermost)."""
    out = w
    for i in reversed(tuple(word)):
        out = datum.reflect(i, out)
    return out


def bilinear(datum: CartanDatum, x: Weight, y: Weight) -> int:
    """Exact invariant form; at least one argument must lie in the root lattice."""
    if x.alpha is None and y.alpha is None:
        raise CartanError("bilinear form needs one argument in the root lattice")
    if x.alpha is None:
        x, y = y, x
    # (alpha_i, pi_j) = d_i delta_ij
    return sum(
        datum.symmetrizer[i] * x.alpha[i] * y.wt[i] for i in range(datum.rank)  # type: ignore[index]
    )


def beta_sequence(datum: CartanDatum, word: tuple[int, ...] | list[int]) -> list[Weight]:
    """beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k}); requires a reduced word."""
    word = tuple(word)
    betas = []
    for k in range(len(word)):
        b = weyl_act(datum, word[:k], datum.simple_root(word[k]))
        if any(a < 0 for a in b.alpha):  # type: ignore[union-attr]
            raise CartanError(f"word {word} is not reduced (position {k + 1})")
        betas.append(b)
    return betas


def is_reduced(datum: CartanDatum, word: tuple[int, ...] | list[int]) -> bool:
    try:
        beta_sequence(datum, word)
    except CartanError:
        return False
    return True


def _longest_word_greedy(datum: CartanDatum) -> tuple[int, ...]:
    # Push a dominant regular weight to the antidominant chamber.
    cur = Weight(tuple(1 for _ in range(datum.rank)))
    word: list[int] = []
    while True:
        for i in range(1, datum.rank + 1):
            if cur.wt[i - 1] > 0:
                cur = datum.reflect(i, cur)
                word.append(i)
                break
        else:
            return tuple(word)


def longest_word(
    datum: CartanDatum, adapted_to: dict[int, int] | None = None
) -> tuple[int, ...]:
    """A reduced word for w0; adapted to a height function when one is given.

    With ``adapted_to`` = {node: height}, each emitted letter is a source of
    the successively reflected quiver (largest height, ties to the smaller
    node index).
    """
    if adapted_to is None:
        return datum.w0_word
    xi = dict(adapted_to)
    length = datum.longest_length
    word: list[int] = []
    for _ in range(length):
        sources = [
            i
            for i in range(1, datum.rank + 1)
            if all(xi[i] > xi[j] for j in range(1, datum.rank + 1) if j != i and datum.c(i, j) < 0)
        ]
        # pick the source keeping the word reduced (always exists for a valid
        # height function); prefer larger height then smaller index
        sources.sort(key=lambda i: (-xi[i], i))
        for i in sources:
            if is_reduced(datum, word + [i]):
                word.append(i)
                xi[i] -= 2
                break
        else:  # pragma: no cover - cannot happen for valid height functions
            raise CartanError("no adapted reduced word exists")
    return tuple(word)


def validate_height_function(datum: CartanDatum, xi: dict[int, int]) -> None:
    eps = parity_function(datum)
    for i in range(1, datum.rank + 1):
        if i not in xi:
            raise CartanError(f"height function misses node {i}")
        if (xi[i] - eps[i]) % 2 != 0:
            raise CartanError(f"height parity mismatch at node {i}")
        for j in range(i + 1, datum.rank + 1):
            if datum.c(i, j) < 0 and abs(xi[i] - xi[j]) != 1:
                raise CartanError(f"heights at adjacent nodes {i},{j} must differ by 1")


def parity_function(datum: CartanDatum) -> dict[int, int]:
    """The fixed parity eps_i = d(i, 1) mod 2 used for (i, p) index sets."""
    return {i: datum.dist(i, 1) % 2 for i in range(1, datum.rank + 1)}
