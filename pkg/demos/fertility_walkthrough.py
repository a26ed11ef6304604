"""
Assisted reproduction: a worked example
=======================================

Loads the bundled fertility knowledge base, builds its argumentation
graph, propagates relevance and intuition labels and prints the final
acceptability statuses.
"""

from laf import evaluate, parse_kb, report_text, trace
from laf.data import read

# the knowledge base is plain text; print it to see the rules and labels
source = read("fertility.laf")
print(source)

kb = parse_kb(source, "fertility.laf")
ev = evaluate(kb)

###############################################################################
# The graph: one I-node per sentence (facts, rules, derived literals), one
# RA-node per rule application and one CA-node for the single conflict.
g = ev.graph
print(f"{len(g.inodes)} I-nodes, {len(g.ranodes)} RA-nodes, {len(g.canodes)} CA-nodes")
for ra in g.ranodes.values():
    print(f"  {ra.key}: {', '.join(ra.premises)} => {ra.conclusion}")

###############################################################################
# Labels before (mu+) and after (mu-) the conflict between med_repr and its
# complement. med_repr loses part of its relevance, ~med_repr loses all of it.
for key in ("med_repr(cp)", "~med_repr(cp)", "sol_rep_prob(cp)"):
    plus, minus = ev.labeling.mu_plus[key], ev.labeling.mu_minus[key]
    print(f"{key:18} relevance {plus[0]:.4g} -> {minus[0]:.4g}   intuition {sorted(minus[1])}")

###############################################################################
# The final claim gets 0.5352 when rule weights count as premises and 0.76
# when they do not.
off = evaluate(kb, rules_as_premises=False)
print("without rule premises:", off.labeling.mu_minus["sol_rep_prob(cp)"][0])

###############################################################################
# Statuses per algebra, then the derivation of the final claim.
print(report_text(ev.labeling, ev.statuses))
print(trace(ev.labeling, "sol_rep_prob(cp)").render())
