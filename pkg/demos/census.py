"""Reducible subgroups of the 720 and 1440 groups, and the lines they fix.

Each maximal reducible class is searched for fixed lines; the orbit of each
certified line under the whole group is then summarised.
"""
from quatlines import constants as C
from quatlines.fixedlines import search_fixed_lines
from quatlines.grouplib import close_group, enumerate_subgroups
from quatlines.linesys import angle_set, is_t_design, orbit_lines

for name in ("h720", "h1440"):
    G = close_group(C.GROUP_GENERATORS[name], name=name)
    subs = enumerate_subgroups(G)
    red = [s for s in subs if s.reducible]
    print(f"{name}: {len(subs)} classes, {len(red)} reducible")
    for s in red:
        if not s.maximal_reducible:
            continue
        found = [c for c in search_fixed_lines(s.generator_matrices(G), restarts=60) if c.certified]
        for c in found:
            L = orbit_lines(G, c.exact)
            angles = sorted(str(x) for x in angle_set(L).values)
            strength = max((t for t in (1, 2, 3) if is_t_design(L, t).is_design), default=0)
            print(f"  order {s.order}: line {c.exact} -> {len(L)} lines, angles {angles}, t={strength}")
