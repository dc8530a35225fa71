# Two triangles joined by one edge: the smallest graph where the three
# detectors have an obvious right answer.
from refnet import Edge, build_graph, edge_betweenness, girvan_newman, louvain, smith_pittman

pairs = [("1", "2"), ("2", "3"), ("1", "3"), ("3", "4"), ("4", "5"), ("5", "6"), ("4", "6")]
g = build_graph([Edge(a, b) for a, b in pairs], directed=False)

# The bridge 3-4 carries every path between the triangles (3 x 3 = 9 pairs).
for (a, b), score in sorted(edge_betweenness(g).items(), key=lambda kv: -kv[1]):
    print(f"{a}-{b}  {score:.1f}")

# Girvan-Newman removes the busiest edge each round and records a level
# whenever the graph splits.
gn = girvan_newman(g)
for level in gn.levels:
    print(level.partition.num_communities, "communities, Q =", round(level.q, 6))
print("GN best:", gn.best.communities())

# Smith-Pittman only looks at edges touching the highest-degree node.
# Nodes 3 and 4 tie on degree, so node 3 (inserted first) is the focus.
sp = smith_pittman(g)
print("SP first removal:", sp.removals[0].edge, "focus", sp.removals[0].focus)
print("SP best:", sp.best.communities())

# Louvain lands on the same split; Q = 5/14.
p = louvain(g, seed=0)
print("Louvain:", p.communities(), round(p.q, 6), round(5 / 14, 6))
