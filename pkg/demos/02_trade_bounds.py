# Lower bounds on defining sets from disjoint volume-2 trades.
# Each trade must be hit by any defining set, so a family of disjoint
# trades (and odd cycles of overlapping ones) gives a bound.

# %%
from supersimple import (
    catalog_build,
    catalog_get,
    certify_half,
    find_block_trades,
    generic_bound,
    orbit_trade_scan,
    validate_certificate,
)

# %%
d = catalog_build("dd-16")
g = find_block_trades(d)
print(len(d), "blocks,", len(g.edges), "trade edges")
deg = [0] * len(d)
for i, j in g.edges:
    deg[i] += 1
    deg[j] += 1
print("max degree", max(deg), "isolated blocks", deg.count(0))

# %%
# Matching only
cert = generic_bound(d, edges_only=True)
print("matching bound", validate_certificate(d, cert))

# %%
# Adding odd cycles: a cycle of length s needs ceil(s/2) blocks
cert = generic_bound(d)
print("with cycles", validate_certificate(d, cert), "cycles used", len(cert.cycles))

# %%
# The cyclic structure lets us pack one orbit of trades and copy it around.
for eid in ["dd-13", "dd-16", "dd-19", "dd-34", "dd-43"]:
    e = catalog_get(eid)
    d = catalog_build(e)
    cert = orbit_trade_scan(e)
    b = validate_certificate(d, cert)
    print(f"{eid:<7} blocks {len(d):>4}  bound {b:>4}  table says {e.claimed_bound:>4}  half? {certify_half(d, cert)}")

# %%
# dd-34 stays below its table value: the trade graph there has a vertex
# cover of 198 blocks, so no packing of these trades can reach 204.
print(orbit_trade_scan(catalog_get("dd-34")).to_lines()[:6])
