"""Six equiangular lines in H^2 as one orbit of a reflection group.

Builds the order-720 group from its four generators, takes the orbit of w,
and walks through what can be read off: the angle set, the design strength,
how the generators permute the lines, and the bound the system meets.
"""
from quatlines import constants as C
from quatlines.grouplib import close_group, cycle_notation, permutation_action
from quatlines.linesys import angle_set, is_t_design, orbit_lines, special_bound
from quatlines.qlinalg import QuatMatrix

G = close_group(C.GROUP_GENERATORS["h720"], name="h720")
print(f"closed {G.name}: {G.order} elements")

words = [QuatMatrix.identity(2), C.b1, C.b1 @ C.b1, C.b2, C.b1 @ C.b2, C.b1 @ C.b1 @ C.b2]
six = orbit_lines(G, C.w, order_by=words)
print(f"orbit of w: {six.n_vectors} vectors on {len(six)} lines")

a = angle_set(six)
print("angles:", [str(x) for x in a.values], "equiangular" if a.equiangular else "")

for t in (1, 2, 3):
    d = is_t_design(six, t)
    print(f"  t={t}: defect {d.defect}")

act = permutation_action(G, six)
for name in ("b1", "b2", "b3", "b4"):
    print(f"  {name} acts as {cycle_notation(act.of(G.index(getattr(C, name))))}")
print(f"image has order {act.image_order}; kernel has {len(act.kernel)} elements")

print("special bound for {2/5}:", special_bound(a.values, 2))
