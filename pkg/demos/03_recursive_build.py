# Building larger designs from small ones: inflate a grouped design with a
# transversal design, then fill its groups with small directed designs.

# %%
from supersimple import GroupedDesign, full_report, run_recipe, shipped_recipe, td_build
from supersimple.construct import SHIPPED_RECIPES

# %%
# A TD(4,3) from the affine plane over GF(3)
td = td_build(4, 3)
print(td.groups)
print(td.blocks)

# %%
print(SHIPPED_RECIPES["lemma12-v49"])

# %%
# Every step is verified as it is produced
res = run_recipe(shipped_recipe("lemma12-v49"), on_step=lambda s: print(s.trail_line()), with_certificate=True)
print(len(res.output), "blocks on", res.output.v, "points")
print(full_report(res.output, "dd").verdict)
print("trade bound", res.certificate.bound if res.certificate else None)

# %%
# All shipped recipes. Those depending on a table that fails verification
# stop at that step.
for name in SHIPPED_RECIPES:
    try:
        r = run_recipe(shipped_recipe(name))
        kind = "dgdd" if isinstance(r.output, GroupedDesign) else "dd"
        print(f"{name:<14} {len(r.output):>5} blocks  {kind} {full_report(r.output, kind).verdict}")
    except Exception as exc:
        print(f"{name:<14} stopped: {exc}")
