"""Build the Hermitian Cayley graphs and inspect their local structure.

Vertices are 2x2 Hermitian matrices over GF(q^2); two are adjacent when
their difference has rank one.
"""
from srgkit import graphs, hermitian, starcomp

for q in (2, 3, 4):
    G = hermitian.cayley_graph(q)
    cert = graphs.verify_srg(G)
    cliques = graphs.local_cliques(G, 0)
    print(f"q = {q}: {len(hermitian.rank_one_set(q))} rank-one matrices, certified SR{cert.params}")
    print(f"        neighbourhood of vertex 0 is {len(cliques)} disjoint cliques of size {cliques[0]}")

print("\nFor q = 2 this is the Clebsch graph; for q = 3 it has parameters SR(81, 20, 1, 6).")
print("Each closed neighbourhood should be a star complement for the eigenvalue e = q - 1:")
for q, (a, e) in ((2, (0, 1)), (3, (1, 2))):
    report = starcomp.closed_nbhd_theorem_check(a, e, hermitian.cayley_graph(q))
    print(f"  q = {q}: {report.vertices_checked} vertices checked, failures = {list(report.failures)}")

print("\ngraph6 for q = 2:", graphs.encode_graph6(hermitian.cayley_graph(2)))
