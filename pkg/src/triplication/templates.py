"""Explicit triplication-table constructions.

All constructions instantiate one template: given an ordered starter ``T0``,
a special pair of ordered pseudostarters ``(T1, T2)`` (their multiset union
covers ``Z_m^*`` exactly twice), and a key ``t != 0``, row ``i`` of the
template holds

    ``(x_i^0, y_i^0)   (t + x_i^1, t + y_i^1)   (t + x_i^2, t + y_i^2)``

with the special pair ``(t, t)`` on top.  A template always satisfies table
clauses (i)-(iii); a key is *admissible* when clause (iv) (no duplicate
pairs) holds too, making the template a triplication table.

Specializations:

* one starter:    ``T1 = T0``, ``T2 = conjugate(T0)``;
* three starters: any consistently ordered starters;
* epicycloidal:   ``T1 = [(x_i, mu*x_i)]`` with ``(mu-1)*x_i = i`` and
  ``T2 = conjugate(T1)``.
"""

from __future__ import annotations

import math
from collections import Counter

from .errors import (
    InconsistentOrdering,
    InvalidInput,
    KeyNotAdmissible,
    MultiplierNotInvertible,
    SpecialPairViolation,
)
from .pairings import (
    Pairing,
    StarterKind,
    classify,
    conjugate,
    modinv,
)
from .tables import TriplicationTable, validate

__all__ = [
    "admissible_keys",
    "build_template",
    "epicycloidal",
    "is_disjoint",
    "is_special_pair",
    "one_starter_table",
    "patterned_starter",
    "template_base_from_spec",
    "three_starter_table",
]

Pair = tuple[int, int]


def is_special_pair(t1: Pairing, t2: Pairing) -> bool:
    """True when the multiset union of components of ``t1`` and ``t2``
    contains every element of ``Z_m^*`` exactly twice."""
    if t1.modulus != t2.modulus:
        return False
    m = t1.modulus
    counts = Counter(t1.components()) + Counter(t2.components())
    return all(counts.get(c, 0) == 2 for c in range(1, m)) and counts.get(0, 0) == 0


def is_disjoint(t1: Pairing, t2: Pairing) -> bool:
    """True when the pairings share no ordered pair."""
    return not set(t1.pairs) & set(t2.pairs)


def _align_bases(t0: Pairing, t1: Pairing, t2: Pairing) -> tuple[Pairing, ...]:
    """Sort each base by difference class and force a shared per-row sign.

    ``t0``'s own orientation wins: rows of ``t1``/``t2`` whose sign differs
    from ``t0``'s are swapped, preserving printed layouts that use mixed
    signs.  A base whose difference classes are not exactly ``1..q`` cannot
    be aligned and is rejected.
    """
    if not (t0.modulus == t1.modulus == t2.modulus):
        raise InconsistentOrdering("base pairings have different moduli")
    if not (len(t0) == len(t1) == len(t2)):
        raise InconsistentOrdering("base pairings have different lengths")
    m = t0.modulus

    def by_class(p: Pairing, label: str) -> dict[int, Pair]:
        rows: dict[int, Pair] = {}
        for x, y in p.pairs:
            d = (y - x) % m
            if d == 0:
                raise InvalidInput(f"{label} contains a zero-difference pair")
            c = min(d, m - d)
            if c in rows:
                raise InvalidInput(f"{label} repeats difference class {c}")
            rows[c] = (x, y)
        if set(rows) != set(range(1, len(p) + 1)):
            raise InvalidInput(
                f"{label} difference classes {sorted(rows)} are not 1..{len(p)}"
            )
        return rows

    rows0 = by_class(t0, "T0")
    aligned = [Pairing(m, tuple(rows0[i] for i in sorted(rows0)))]
    for label, p in (("T1", t1), ("T2", t2)):
        rows = by_class(p, label)
        fixed = []
        for i in sorted(rows):
            x, y = rows[i]
            x0, y0 = rows0[i]
            sign0 = 1 if (y0 - x0) % m == i else -1
            sign = 1 if (y - x) % m == i else -1
            fixed.append((x, y) if sign == sign0 else (y, x))
        aligned.append(Pairing(m, tuple(fixed)))
    return tuple(aligned)


def _checked_base(t0: Pairing, t1: Pairing, t2: Pairing) -> tuple[Pairing, ...]:
    t0, t1, t2 = _align_bases(t0, t1, t2)
    if classify(t0).kind < StarterKind.STARTER:
        raise InvalidInput(f"T0 is not a starter: {classify(t0).witness}")
    if not is_special_pair(t1, t2):
        raise SpecialPairViolation(
            "components of (T1, T2) do not cover Z_m^* exactly twice"
        )
    return t0, t1, t2


def _emit(t0: Pairing, t1: Pairing, t2: Pairing, key: int) -> list[Pair]:
    m = t0.modulus
    pairs: list[Pair] = [(key, key)]
    for (x0, y0), (x1, y1), (x2, y2) in zip(t0.pairs, t1.pairs, t2.pairs):
        pairs.append((x0, y0))
        pairs.append(((key + x1) % m, (key + y1) % m))
        pairs.append(((key + x2) % m, (key + y2) % m))
    return pairs


def build_template(t0: Pairing, t1: Pairing, t2: Pairing, key: int) -> tuple[Pair, ...]:
    """Instantiate the template; returns the raw ``3q + 1`` pairs.

    Requires ``t0`` to be a starter and ``(t1, t2)`` a special pair; the key
    must be nonzero.  Clauses (i)-(iii) hold for the result by construction
    (asserted); clause (iv) may fail, so the result is not necessarily a
    valid table.
    """
    t0, t1, t2 = _checked_base(t0, t1, t2)
    m = t0.modulus
    if not 1 <= key < m:
        raise InvalidInput(f"key must lie in 1..{m - 1}, got {key}")
    pairs = _emit(t0, t1, t2, key)

    counts = Counter(c for p in pairs for c in p)
    assert counts[0] == 2 and all(counts[c] == 3 for c in range(1, m))
    sum_counts = Counter((u + v) % m for u, v in pairs)
    assert sum_counts[0] <= 2 and all(
        k <= 3 for s, k in sum_counts.items() if s != 0
    )
    return tuple(pairs)


def admissible_keys(t0: Pairing, t1: Pairing, t2: Pairing) -> frozenset[int]:
    """Keys in ``Z_m^*`` whose template contains no duplicate pair.

    Computed by direct duplicate testing for every key; an empty set is a
    valid answer.
    """
    t0, t1, t2 = _checked_base(t0, t1, t2)
    m = t0.modulus
    good = []
    for key in range(1, m):
        pairs = _emit(t0, t1, t2, key)
        if len(set(pairs)) == len(pairs):
            good.append(key)
    return frozenset(good)


def one_starter_table(t: Pairing, key: int) -> TriplicationTable:
    """Table built from a single ordered starter: ``(T, T, T')`` plus key."""
    base = (t, t, conjugate(t))
    if key not in admissible_keys(*base):
        raise KeyNotAdmissible(f"key {key} duplicates a pair in the template")
    return validate(build_template(*base, key), t.modulus)


def three_starter_table(
    t0: Pairing, t1: Pairing, t2: Pairing, key: int
) -> TriplicationTable:
    """Table built from three consistently ordered starters.

    ``t1`` and ``t2`` must be starters (two starters always form a special
    pair) and must differ; a shared pair forces an empty key set.
    """
    for label, t in (("T1", t1), ("T2", t2)):
        if classify(t).kind < StarterKind.STARTER:
            raise InvalidInput(f"{label} is not a starter: {classify(t).witness}")
    if key not in admissible_keys(t0, t1, t2):
        raise KeyNotAdmissible(f"key {key} duplicates a pair in the template")
    return validate(build_template(t0, t1, t2, key), t0.modulus)


def epicycloidal(m: int, mu: int) -> Pairing:
    """The pseudostarter ``[(x_i, mu * x_i)]`` with ``(mu - 1) x_i = i``.

    Defined for ``mu`` in ``2..m-2`` with ``gcd(mu - 1, m) = 1``; the
    directed differences are ``+i`` by construction.
    """
    if m < 3 or m % 2 == 0:
        raise InvalidInput(f"order must be odd and >= 3, got {m}")
    if not 2 <= mu <= m - 2:
        raise InvalidInput(f"multiplier must lie in 2..{m - 2}, got {mu}")
    if math.gcd(mu - 1, m) != 1:
        raise MultiplierNotInvertible(f"gcd({mu} - 1, {m}) != 1")
    inv = modinv(mu - 1, m)
    q = (m - 1) // 2
    pairs = []
    for i in range(1, q + 1):
        x = (inv * i) % m
        pairs.append((x, (mu * x) % m))
    return Pairing(m, tuple(pairs), ordered=True)


def patterned_starter(m: int) -> Pairing:
    """The starter ``{(x, m - x)}``; never strong (every pair sums to 0).

    Reordered to the canonical directed-difference form, pair ``i`` having
    difference ``+i``.
    """
    if m < 3 or m % 2 == 0:
        raise InvalidInput(f"order must be odd and >= 3, got {m}")
    q = (m - 1) // 2
    rows: dict[int, Pair] = {}
    for x in range(1, q + 1):
        y = m - x
        d = (y - x) % m
        c = min(d, m - d)
        rows[c] = (x, y) if d == c else (y, x)
    return Pairing(m, tuple(rows[i] for i in sorted(rows)), ordered=True)


def template_base_from_spec(spec: dict) -> tuple[Pairing, Pairing, Pairing]:
    """Resolve a template-spec dict into the base triple ``(T0, T1, T2)``.

    ``spec["mode"]`` selects the construction: ``"one-starter"`` needs
    ``T0``; ``"three-starter"`` needs ``T0``, ``T1``, ``T2``;
    ``"epicycloidal"`` needs ``T0`` and ``mu``.  Pair lists are
    ``[[x, y], ...]`` over ``Z_m``.
    """
    try:
        mode = spec["mode"]
        m = int(spec["m"])
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed template spec: {exc}") from exc

    def take(name: str) -> Pairing:
        if name not in spec or spec[name] is None:
            raise InvalidInput(f"mode {mode!r} requires {name}")
        return Pairing(m, tuple((int(x), int(y)) for x, y in spec[name]))

    if mode == "one-starter":
        t0 = take("T0")
        return t0, t0, conjugate(t0)
    if mode == "three-starter":
        return take("T0"), take("T1"), take("T2")
    if mode == "epicycloidal":
        t0 = take("T0")
        if "mu" not in spec or spec["mu"] is None:
            raise InvalidInput("mode 'epicycloidal' requires mu")
        t1 = epicycloidal(m, int(spec["mu"]))
        return t0, t1, conjugate(t1)
    raise InvalidInput(f"unknown mode {mode!r}")
