"""End-to-end walk: from a base starter of order 7 to a strong starter of
order 21.

The construction has three steps: build a triplication table from the base
starter and a key, solve the induced 3-valued constraint problem, and decode
the solution back into Z_21.
"""

from triplication import (
    Pairing,
    Scenario,
    classify,
    compile_instance,
    derive_index_structures,
    one_starter_table,
    recover_starter,
    render_table,
    solve,
    sums,
)

base = Pairing(7, [(2, 3), (4, 6), (1, 5)])
print("base starter over Z_7:", list(base.pairs))
print("classification:", classify(base).kind.name)
print("pair sums:", list(sums(base)), "(distinct and nonzero, hence strong)")

# Step I: the table.  Column 0 copies the starter; columns 1 and 2 are the
# starter and its conjugate shifted by the key.
tt = one_starter_table(base, key=1)
print("\ntriplication table with key 1:")
print(render_table(tt))

mono, weak, carries = derive_index_structures(tt)
print("\nweak sets (pair indices sharing a sum):", weak.by_sum)
print("strong pairs:", [tt.pairs[i] for i in weak.strong])
print("difference carries:", carries.delta)

# Step II: the constraint problem.  One 3-value unknown per table entry;
# rows need distinct adjusted differences, weak sets distinct adjusted sums,
# equal-value positions distinct unknowns.
sc = Scenario("carry", 7)
inst = compile_instance(tt, sc)
print(f"\ncompiled: {inst.n_vars} variables, {len(inst.groups)} constraint groups")

outcome = solve(inst, mode="first")
print(f"solved: {outcome.status} after {outcome.stats.nodes} nodes")

count = solve(inst, mode="count").count
print(f"the instance has {count} solutions in total")

# Step III: decode.  Each element of the new starter is rebuilt from its
# residue mod 7 and the solved quotient digit.
starter = recover_starter(tt, outcome.tables[0], sc)
print("\nrecovered starter of order 21:")
print(sorted(tuple(sorted(p)) for p in starter.pairs))
print("classification:", classify(starter).kind.name)
