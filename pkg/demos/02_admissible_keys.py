"""Admissible keys: which shifts turn a template into a valid table.

A template duplicates a pair exactly when the key collides with the base
structure; the admissible keys are the survivors.  For the one-starter
construction they are exactly the non-sums of the base starter.
"""

from triplication import (
    Pairing,
    admissible_keys,
    conjugate,
    enumerate_strong_starters,
    epicycloidal,
    patterned_starter,
    sums,
)

# One-starter rule: K = Z_m^* minus the pair sums (empty if 0 is a sum).
t = Pairing(7, [(2, 3), (4, 6), (5, 1)])
print("starter:", list(t.pairs), " sums:", sorted(set(sums(t))))
print("admissible keys:", sorted(admissible_keys(t, t, conjugate(t))))

pat = patterned_starter(7)
print("\npatterned starter", sorted(tuple(sorted(p)) for p in pat.pairs),
      "has all sums zero; keys:", sorted(admissible_keys(pat, pat, conjugate(pat))))

# For strong starters the rule pins the count at (m-1)/2.
for m in (7, 11, 13):
    counts = {
        len(admissible_keys(s, s, conjugate(s))) for s in enumerate_strong_starters(m)
    }
    print(f"strong starters of order {m}: key counts {sorted(counts)} "
          f"(expected {(m - 1) // 2})")

# Three-starter bases behave irregularly: same four starters, very
# different key sets depending on the roles.
S = {
    1: Pairing(19, [(15, 16), (4, 6), (10, 13), (8, 12), (2, 7), (14, 1), (17, 5), (3, 11), (9, 18)]),
    2: Pairing(19, [(2, 3), (16, 18), (14, 17), (5, 9), (6, 11), (7, 13), (8, 15), (4, 12), (1, 10)]),
    4: Pairing(19, [(11, 12), (4, 6), (17, 1), (9, 13), (3, 8), (10, 16), (14, 2), (18, 7), (15, 5)]),
}
print("\norder-19 three-starter bases:")
for triple in ((1, 1, 2), (1, 1, 4), (4, 1, 2)):
    K = admissible_keys(*(S[i] for i in triple))
    print(f"  roles {triple}: |K| = {len(K):2d}  K = {sorted(K)}")

# Multiplier-based pseudostarter bases: prime order often gives (m-1)/2
# keys, but not always.
t0 = Pairing(13, [(3, 4), (6, 8), (9, 12), (10, 1), (2, 7), (5, 11)])
for mu in (2, 3, 4):
    e = epicycloidal(13, mu)
    K = admissible_keys(t0, e, conjugate(e))
    print(f"order 13, multiplier {mu}: |K| = {len(K)}  K = {sorted(K)}")
