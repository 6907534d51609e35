"""
Weighted graphs and their Laplacians
====================================

Build graphs from edge lists, files, and generators; inspect the metric
structure; act with the Laplacian on finitely supported vectors.
"""

import graphheat as gh

# a weighted 4-cycle with one chord, non-uniform measure, one absorbing site
g = gh.WeightedGraph(
    4,
    edges=[(0, 1, 1.0), (1, 2, 0.5), (2, 3, 2.0), (3, 0, 1.0), (0, 2, 0.25)],
    measure=[1.0, 2.0, 1.0, 0.5],
    killing=[0.0, 0.0, 0.3, 0.0],
)
print("violations:", gh.validate(g))
print("connected:", gh.is_connected(g))
print("edges:", list(g.edges()))

print("\nhop distances from vertex 0:", gh.distances_from(g, 0))
print("weighted degrees:", [round(gh.degree(g, v), 3) for v in g.vertices])

# the same graph as a file
text = gh.dump_graph(g)
print("\nfile form:\n" + text)
assert gh.parse_graph(text).edge_count == g.edge_count

# Laplacian action: L 1_x has support in the closed neighborhood of x
op = gh.LaplacianOperator(g)
e1 = gh.WeightedVector.basis(g, 1)
print("L 1_1 =", dict(op.apply(e1).items()))
print("<1_0, L 1_1> =", op.matrix_element(0, 1), "(minus the edge weight)")

# the energy form agrees with the operator pairing
f = gh.WeightedVector(g, {0: 1.0, 2: -2.0})
h = gh.WeightedVector(g, {1: 0.5, 2: 1.0, 3: 1.0})
print("\nQ(f, h) =", gh.quadratic_form(g, f, h))
print("<f, L h> =", gh.inner(f, op.apply(h)))

# dense form for the linear-algebra layer: L = M^{-1} A
A, M = gh.dense_matrices(g)
print("\nA =\n", A)
print("diag(M) =", M.diagonal())
