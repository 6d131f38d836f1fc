# Tour of the built-in base-block tables: develop, verify, and look at the
# ones that do not check out.

# %%
import numpy as np

from supersimple import catalog_build, catalog_get, catalog_list, full_report
from supersimple.errata import errata_rows, render_errata

# %%
# The smallest worked design: 4 base blocks developed mod 13.
e = catalog_get("dd-13")
d = catalog_build(e)
print(e.summary())
print(d.blocks[:5], "...", len(d), "blocks")

# %%
# Every ordered pair should sit in exactly two blocks, earlier point first.
counts = np.zeros((d.v, d.v), dtype=int)
for b in d.blocks:
    for i in range(4):
        for j in range(i + 1, 4):
            counts[b[i], b[j]] += 1
print(counts)
print("off-diagonal values:", np.unique(counts[~np.eye(d.v, dtype=bool)]))

# %%
# The verifier does the same check plus simplicity and super-simplicity.
print(full_report(d, "dd").render_text())

# %%
# Now everything at once. Flagged tables come with a witness and, when a
# one-entry change fixes them, a suggested repair.
rows = errata_rows()
print(render_errata(rows))

# %%
# Summary by kind
for kind in sorted({r.entry.kind for r in rows}):
    mine = [r for r in rows if r.entry.kind == kind]
    ok = sum(r.confirmed for r in mine)
    print(f"{kind:<10} {ok}/{len(mine)} verified")

# %%
print([e.id for e in catalog_list()])
