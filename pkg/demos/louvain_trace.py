# Watch Louvain climb: every accepted move raises modularity.
import random

from refnet import Edge, Graph, louvain, modularity
from refnet.detect import LouvainTrace

rng = random.Random(3)
nodes = [f"v{i}" for i in range(12)]
edges = []
for i in range(12):
    for j in range(i + 1, 12):
        # denser inside the three blocks of four
        if rng.random() < (0.8 if i // 4 == j // 4 else 0.1):
            edges.append(Edge(nodes[i], nodes[j], rng.randint(1, 3)))
g = Graph(nodes, edges, directed=False)

trace = LouvainTrace()
p = louvain(g, seed=7, trace=trace)

q = modularity(g, list(range(len(nodes))))
print(f"start  Q = {q:+.6f}")
for k, move in enumerate(trace.moves, 1):
    q = modularity(g, move)
    print(f"move {k:2d} Q = {q:+.6f}  ({len(set(move.values()))} groups)")
for k, flat in enumerate(trace.passes, 1):
    print(f"after pass {k}: Q = {modularity(g, flat):+.6f}")
print("final:", p.communities())
