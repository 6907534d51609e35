"""
Certifying the inequalities
===========================

Every estimate the library relies on is checked as an explicit inequality:
reports carry the measured left-hand side, the computed right-hand side, and
the margin.  On valid inputs every report must pass; a failure would signal
an implementation bug, which is exactly what makes these reports usable as a
test oracle.
"""

import graphheat as gh

g = gh.random_connected_graph(10, 0.3, seed=21, random_killing=True)
dec = gh.decompose(g)

# generic Taylor-remainder bound for the functional calculus
print("Taylor-remainder reports (cosine calculus, random point masses):")
f = gh.WeightedVector.basis(g, 0)
h = gh.WeightedVector.basis(g, 7)
for order in range(4):
    rep = gh.taylor_bound(dec, gh.ScalarFunction.cosine(), f, h, order)
    print(f"  order {order}: lhs={rep.lhs:.3e}  rhs={rep.rhs:.3e}  passed={rep.passed}")

# short-time bounds for the two propagators at the pair's critical order
print("\nsemigroup / unitary short-time reports for pair (0, 7):")
d = gh.combinatorial_distance(g, 0, 7)
for t in (1e-3, 1e-2, 1e-1):
    srep = gh.semigroup_bound(g, 0, 7, t, d)
    urep = gh.unitary_bound(g, 0, 7, t, d)
    print(f"  t={t:6.0e}:  semigroup margin={srep.margin:.3e}  "
          f"unitary margin={urep.margin:.3e}")

# the full verification sweep a CI job would run
print("\nverification sweep over all pairs, t in {1e-4, ..., 1e-1}:")
ts = [1e-4, 1e-3, 1e-2, 1e-1]
total = passed = 0
for x in g.vertices:
    for y in range(x, g.n):
        for rep in gh.pair_verification_reports(g, x, y, ts):
            total += 1
            passed += rep.passed
print(f"  {passed}/{total} reports passed")

print("\nthe same sweep is available from the command line:")
print("  graphheat verify --gen random:10:0.3:21 --out report.csv")
