"""Cable and splice arithmetic."""

from braidfol.construction import cable_obstruction, splice_feasible

for p, q, gk in [(2, 1, 1), (3, -1, 2), (5, 1, 0)]:
    v = cable_obstruction(p, q, gk)
    print(f"({p},{q}) cable of a genus {gk} knot: {v.conclusion}")
    for line in v.chain:
        print("   ", line)
for g1, g2 in [(2, 3), (1, 4)]:
    v = splice_feasible(g1, g2)
    print(f"splice g1={g1} g2={g2}: {v.conclusion}; " + "; ".join(v.chain))
