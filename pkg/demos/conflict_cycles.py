"""
Cycles: which are allowed and how they are solved
=================================================

Support cycles (a claim that ends up supporting itself) are rejected when
the graph is built. Cycles that pass through a conflict are allowed; their
labels are the solution of a fixed-point system.
"""

from laf import CycleViolation, SolverError, evaluate, parse_kb, residuals
from laf.data import read

###############################################################################
# A pure support cycle is refused, with a witness path.
try:
    evaluate(parse_kb(read("cyclic.laf")))
except CycleViolation as exc:
    print(exc)

###############################################################################
# A claim that argues against itself: ~a is derived from a. For relevance
# the equations reduce to x = 1 - x, so both sides settle at 0.5. Plain
# iteration flips between 0 and 1; the solver damps it.
src = "algebra r fuzzy; fact a(x) labels [1]; rule r: ~a(x) <- a(x) labels [1];"
ev = evaluate(parse_kb(src), rules_as_premises=False)
print("~a(x) mu+ =", ev.labeling.mu_plus["~a(x)"][0], "after", ev.report.iterations, "sweeps")
print("largest residual:", max(max(v) for v in residuals(ev.labeling).values()))

###############################################################################
# The same shape over a one-tag intuition algebra has no solution at all:
# x = {PL} minus x. The solver proves this by search and says so.
src = "algebra i tags { PL }; fact a(x) labels [{PL}]; rule r: ~a(x) <- a(x) labels [{PL}];"
try:
    evaluate(parse_kb(src), rules_as_premises=False)
except SolverError as exc:
    print("no fixed point:", exc.no_fixed_point, "-", exc)

###############################################################################
# With the rule's own label as an extra premise the system becomes solvable.
ev = evaluate(parse_kb(src))
print("a(x) mu- =", set(ev.labeling.mu_minus["a(x)"][0]))
