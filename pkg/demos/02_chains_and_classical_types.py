"""Simple chains and the classical families.

A labelled path is a *simple chain* when its end and interior vertices
satisfy the defining label identities; every simple chain carries a fixed
parameter and an index set, one per orientation.  The classical diagrams are
exactly the seven head-plus-chain shapes, and the generator below produces
all of them at a fixed rank and label group.

Run:  python demos/02_chains_and_classical_types.py
"""

from collections import Counter

from gddkit.chains import build_simple_chain, chain_profile, is_simple_chain, ChainProfile
from gddkit.classify import classical_type, tail_vertices
from gddkit.core import GDD
from gddkit.roots import Parameter
from gddkit.tables import generate_classical

par = Parameter(3)
q = par.q

# The all-q chain with edges q^-1 is the simplest simple chain.
g = GDD(6, (q, q, q, q), {(i, i + 1): q ** -1 for i in range(3)})
print("all-q chain is simple:", is_simple_chain(g))
for p in chain_profile(g):
    print(f"  parameter z^{p.q.exponent}, index set {sorted(p.index_set)}")

# Rebuilding from the profile recovers the chain (and any siblings the
# branching conditions allow).
rebuilt = build_simple_chain(4, ChainProfile(q, frozenset()), 6)
print("rebuilt instances:", len(rebuilt), "contains original:", g in rebuilt)

# Every classical diagram of rank 5 over mu_6, tallied by recognized type.
instances = generate_classical(5, 6)
tally = Counter()
for inst in instances:
    kinds = {t.kind for t in classical_type(inst)}
    tally[frozenset(kinds)] += 1
print(f"\nclassical rank-5 instances over mu_6: {len(instances)}")
for kinds, count in sorted(tally.items(), key=lambda kv: -kv[1])[:6]:
    print(f"  {count:4d} x {sorted(kinds)}")

# Tails: the distinguished far ends of the classical reading.
sample = sorted(instances, key=lambda h: h.to_text())[0]
print("\na sample instance and its tails:", sorted(tail_vertices(sample)))
print(sample.to_text())
