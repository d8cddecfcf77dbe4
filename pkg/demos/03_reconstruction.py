"""Rebuild strongly regular graphs from a star complement.

Given the star complement Q and parameters, every 0/1 matrix B with
B B^T = R determines the rest of the graph through

    eI - A_P = B^T (eI - A_Q)^{-1} B.
"""
from srgkit import graphs, hermitian
from srgkit import starcomp as sc

print("Petersen graph from a 5-cycle:")
pb = sc.ReconstructionProblem.from_star_complement(graphs.cycle(5), (0, 1, 1))
print("  R =", [list(r) for r in pb.R.rows])
out = sc.run_reconstruction(pb)
print(f"  {len(out.search.solutions)} factor(s) found in {out.search.nodes_explored} nodes")
print(f"  certified SR{out.certificates[0].params}: {graphs.encode_graph6(out.graphs[0])}")

print("\nComplement of the line graph of K6, from K3,3:")
pb = sc.ReconstructionProblem.from_star_complement(graphs.complete_bipartite(3), (1, 3, 1))
out = sc.run_reconstruction(pb)
print(f"  {len(out.search.solutions)} factors, {out.rejected} rejected, "
      f"graphs: {[c.params for c in out.certificates]}")

print("\nClebsch graph from the windmill K1,5 with block hints:")
fx = sc.load_fixture("clebsch_windmill")
pb = sc.ReconstructionProblem.from_star_complement(fx.Q, fx.params)
out = sc.run_reconstruction(pb, block_hints=fx.hints)
print(f"  hints: widths {fx.hints.widths}, column sums {fx.hints.col_sums}")
print(f"  {len(out.search.solutions)} factors, {len(out.graphs)} distinct graphs, all SR{out.certificates[0].params}")
clebsch = hermitian.cayley_graph(2)
print("  same vertex count and degree as the q = 2 Hermitian graph:",
      all(G.n == clebsch.n and G.degrees() == clebsch.degrees() for G in out.graphs))

print("\nA search that cannot finish within its budget says so:")
res = sc.b_search(pb.R, pb.m, node_cap=50)
print(f"  status {res.status} after {res.nodes_explored} nodes")
