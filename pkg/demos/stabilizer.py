"""The stabilizer of one of the six lines, and recovering its fixed lines.

The stabilizer acts on the line of w through scalars alpha_g, which form a
binary icosahedral group.  The same subgroup also fixes the orthogonal line,
with the Galois-twisted character.  A numerical search over the stabilizer's
generators finds both lines again, and the snapped vectors are certified exactly.
"""
from quatlines import constants as C
from quatlines.fixedlines import search_fixed_lines
from quatlines.grouplib import close_group
from quatlines.stabilizers import projective_stabilizer, restriction_characters

G = close_group(C.GROUP_GENERATORS["h720"])
S = projective_stabilizer(G, C.w)
Sp = projective_stabilizer(G, C.w_perp)
print(f"|G_w| = {S.order}, scalars form {S.hstar_class()}, faithful: {S.is_faithful()}")
print(f"indicators: {S.fs_indicator()} on W, {Sp.fs_indicator()} on W_perp")

chi, chip, distinct = restriction_characters(S, Sp)
print("character at g2:", S.character(C.g2), "versus", Sp.character(C.g2))
print("components distinct:", distinct)

found = search_fixed_lines([C.b3, C.g2])
for c in found:
    print(f"found line {c.exact} (residual {c.residual:.1e}, certified {c.certified})")
