"""Compatible pairs (Lambda, B) on finite windows and their mutations.

A pair lives on a window [1, s].  The exchange matrix is stored as a dense
(s, s) integer matrix whose columns at frozen positions are identically zero;
Lambda is dense skew-symmetric.  Positions are 1-based in every public API.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np


class SeedError(ValueError):
    pass


def pos(a: np.ndarray) -> np.ndarray:
    """Entrywise positive part [x]_+."""
    return np.maximum(a, 0)


@dataclass(frozen=True)
class CompatiblePair:
    """A skew-symmetric Lambda with an exchange matrix B and diagonal data.

    ``diag[u-1]`` is the symmetrizer value attached to position u; the
    compatibility identity reads sum_k B[k,u] Lambda[k,v] = 2 diag[u] delta_uv
    for exchangeable u.
    """

    lam: np.ndarray
    b: np.ndarray
    exchangeable: frozenset[int]
    diag: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.lam.shape[0]

    @property
    def frozen(self) -> frozenset[int]:
        return frozenset(range(1, self.size + 1)) - self.exchangeable

    def b_entry(self, u: int, v: int) -> int:
        if v not in self.exchangeable:
            raise SeedError(f"column {v} is frozen")
        return int(self.b[u - 1, v - 1])

    def lam_entry(self, u: int, v: int) -> int:
        return int(self.lam[u - 1, v - 1])

    def copy_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return self.lam.copy(), self.b.copy()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CompatiblePair):
            return NotImplemented
        return (
            self.exchangeable == other.exchangeable
            and self.diag == other.diag
            and np.array_equal(self.lam, other.lam)
            and np.array_equal(self.b, other.b)
        )

    def __hash__(self) -> int:  # pragma: no cover - not used as dict key
        return hash((self.exchangeable, self.diag, self.lam.tobytes(), self.b.tobytes()))


def make_pair(
    lam: np.ndarray,
    b: np.ndarray,
    exchangeable: frozenset[int] | set[int],
    diag: tuple[int, ...],
) -> CompatiblePair:
    lam = np.asarray(lam, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    s = lam.shape[0]
    if lam.shape != (s, s) or b.shape != (s, s):
        raise SeedError("Lambda and B must be square of equal size")
    if not np.array_equal(lam, -lam.T):
        raise SeedError("Lambda must be skew-symmetric")
    ex = frozenset(int(u) for u in exchangeable)
    for v in range(1, s + 1):
        if v not in ex and np.any(b[:, v - 1]):
            raise SeedError(f"frozen column {v} must be zero")
    if len(diag) != s:
        raise SeedError("diagonal length mismatch")
    lam.setflags(write=False)
    b.setflags(write=False)
    return CompatiblePair(lam, b, ex, tuple(int(d) for d in diag))


def check_compatible(pair: CompatiblePair) -> bool:
    """Whether sum_k b_{k,u} Lambda_{k,v} = 2 d_u delta_{u,v} for u exchangeable."""
    m = pair.b.T @ pair.lam
    for u in pair.exchangeable:
        row = m[u - 1]
        want = np.zeros(pair.size, dtype=np.int64)
        want[u - 1] = 2 * pair.diag[u - 1]
        if not np.array_equal(row, want):
            return False
    return True


def mutate_pair(pair: CompatiblePair, k: int) -> CompatiblePair:
    """BZ mutation mu_k(Lambda, B) = (E^T Lambda E, E B F) at an exchangeable k."""
    if k not in pair.exchangeable:
        raise SeedError(f"position {k} is frozen or out of range")
    s = pair.size
    kk = k - 1
    lam, b = pair.copy_arrays()
    col = b[:, kk]
    # E differs from the identity in column k only.
    v = pos(-col).astype(np.int64)
    v[kk] = -1
    m = lam.copy()
    m[:, kk] = lam @ v
    m[kk, :] = v @ m
    # B' via the scalar mutation formula (equivalent to E B F).
    row = b[kk, :]
    b2 = b + np.outer(pos(col), pos(row)) - np.outer(pos(-col), pos(-row))
    b2[kk, :] = -row
    b2[:, kk] = -col
    m.setflags(write=False)
    b2.setflags(write=False)
    return CompatiblePair(m, b2, pair.exchangeable, pair.diag)


def mutate_pair_seq(pair: CompatiblePair, ks: tuple[int, ...] | list[int]) -> CompatiblePair:
    for k in ks:
        pair = mutate_pair(pair, k)
    return pair


def permute_pair(pair: CompatiblePair, perm: dict[int, int]) -> CompatiblePair:
    """Relabel positions by a permutation that preserves the frozen set.

    ``perm`` maps old position -> new position; unspecified points are fixed.
    """
    s = pair.size
    full = {u: perm.get(u, u) for u in range(1, s + 1)}
    if sorted(full.values()) != list(range(1, s + 1)):
        raise SeedError("not a permutation of the window")
    for u in pair.frozen:
        if full[u] not in pair.frozen:
            raise SeedError("permutation must preserve the frozen set")
    inv = {v: u for u, v in full.items()}
    idx = np.array([inv[v] - 1 for v in range(1, s + 1)])
    lam = pair.lam[np.ix_(idx, idx)].copy()
    b = pair.b[np.ix_(idx, idx)].copy()
    diag = tuple(pair.diag[inv[v] - 1] for v in range(1, s + 1))
    ex = frozenset(full[u] for u in pair.exchangeable)
    lam.setflags(write=False)
    b.setflags(write=False)
    return CompatiblePair(lam, b, ex, diag)


def transpositions(*ks: int) -> dict[int, int]:
    """The permutation sigma_{k_1} sigma_{k_2} ... for disjoint transpositions."""
    perm: dict[int, int] = {}
    for k in ks:
        perm[k] = k + 1
        perm[k + 1] = k
    return perm


# ----------------------------------------------------------------------
# valued quivers


@dataclass(frozen=True)
class ValuedQuiver:
    """Arrow presentation of an exchange matrix.

    An arrow (u, v) with value (a, b) means b_{u,v} = a >= 0 and b_{v,u} = b <= 0,
    entries at frozen columns being understood as 0.  No arrows are kept
    between two frozen vertices.
    """

    size: int
    frozen: frozenset[int]
    arrows: tuple[tuple[int, int, int, int], ...]  # (src, dst, a, b)

    def arrow_map(self) -> dict[tuple[int, int], tuple[int, int]]:
        return {(s, t): (a, b) for s, t, a, b in self.arrows}


def quiver_from_matrix(b: np.ndarray, frozen: frozenset[int] | set[int]) -> ValuedQuiver:
    s = b.shape[0]
    frozen = frozenset(frozen)
    arrows = []
    for u in range(1, s + 1):
        for v in range(u + 1, s + 1):
            if u in frozen and v in frozen:
                continue
            x = int(b[u - 1, v - 1]) if v not in frozen else 0
            y = int(b[v - 1, u - 1]) if u not in frozen else 0
            if x == 0 and y == 0:
                continue
            if x > 0 or y < 0:
                if x < 0 or y > 0:
                    raise SeedError(f"entries at ({u},{v}) have incoherent signs")
                arrows.append((u, v, x, y))
            else:
                arrows.append((v, u, y, x))
    return ValuedQuiver(s, frozen, tuple(sorted(arrows)))


def quiver_to_matrix(q: ValuedQuiver) -> np.ndarray:
    b = np.zeros((q.size, q.size), dtype=np.int64)
    for s, t, a, bb in q.arrows:
        if t not in q.frozen:
            b[s - 1, t - 1] = a
        if s not in q.frozen:
            b[t - 1, s - 1] = bb
    return b


def quiver_mutate(q: ValuedQuiver, k: int) -> ValuedQuiver:
    """Valued-quiver mutation at k via the local composition/cancel/reverse rules."""
    if k in q.frozen or not 1 <= k <= q.size:
        raise SeedError(f"vertex {k} is frozen or out of range")
    amap = q.arrow_map()

    def value_between(u: int, v: int) -> tuple[int, int, int]:
        # returns (orientation, a, b): +1 for arrow u->v, -1 for v->u, 0 none
        if (u, v) in amap:
            a, b = amap[(u, v)]
            return 1, a, b
        if (v, u) in amap:
            a, b = amap[(v, u)]
            return -1, a, b
        return 0, 0, 0

    ins = [(s, a, b) for (s, t), (a, b) in amap.items() if t == k]
    outs = [(t, a, b) for (s, t), (a, b) in amap.items() if s == k]

    new: dict[tuple[int, int], tuple[int, int]] = dict(amap)

    for i, a, b in ins:  # arrow i -> k with value (a, b)
        for j, c, d in outs:  # arrow k -> j with value (c, d)
            if i == j or (i in q.frozen and j in q.frozen):
                continue
            if a * c <= 0 and b * d <= 0:
                continue
            orient, e, f = value_between(i, j)
            for key in ((i, j), (j, i)):
                new.pop(key, None)
            if orient >= 0:
                # composition rule on a path i -> k -> j with arrow i -> j
                e2, f2 = e + a * c, f - b * d
                if e2 or f2:
                    new[(i, j)] = (e2, f2)
            else:
                # cancellation rule against the closing arrow j -> i
                if f + a * c <= 0 <= e - b * d:
                    if e - b * d or f + a * c:
                        new[(j, i)] = (e - b * d, f + a * c)
                elif f + a * c >= 0 >= e - b * d:
                    new[(i, j)] = (f + a * c, e - b * d)
                else:  # pragma: no cover - cannot happen for exchange matrices
                    raise SeedError("cancel rule produced incoherent values")

    # reversal rule at k
    final: dict[tuple[int, int], tuple[int, int]] = {}
    for (s, t), (a, b) in new.items():
        if s == k or t == k:
            final[(t, s)] = (-b, -a)
        else:
            final[(s, t)] = (a, b)
    arrows = tuple(sorted((s, t, a, b) for (s, t), (a, b) in final.items()))
    return ValuedQuiver(q.size, q.frozen, arrows)


# ----------------------------------------------------------------------
# seed files


def pair_to_json(pair: CompatiblePair, type_code: str = "", sequence: list[int] | None = None) -> str:
    s = pair.size
    triplets = [
        [u, v, int(pair.b[u - 1, v - 1])]
        for u in range(1, s + 1)
        for v in range(1, s + 1)
        if pair.b[u - 1, v - 1]
    ]
    doc = {
        "type": type_code,
        "sequence": list(sequence) if sequence is not None else [],
        "window": s,
        "lambda": pair.lam.tolist(),
        "b": triplets,
        "frozen": sorted(pair.frozen),
        "diag": list(pair.diag),
    }
    return json.dumps(doc, indent=None, separators=(",", ":"), sort_keys=True)


def pair_from_json(text: str) -> tuple[CompatiblePair, dict]:
    doc = json.loads(text)
    s = int(doc["window"])
    lam = np.array(doc["lambda"], dtype=np.int64)
    b = np.zeros((s, s), dtype=np.int64)
    for u, v, val in doc["b"]:
        b[u - 1, v - 1] = val
    frozen = set(doc.get("frozen", []))
    ex = set(range(1, s + 1)) - frozen
    diag = tuple(doc.get("diag", [1] * s))
    return make_pair(lam, b, ex, diag), doc
