"""
Plugging in a new label algebra
===============================

Any subclass of LabelAlgebra can be used next to the built-in ones. Here a
"trust" algebra uses min for support, max for aggregation and a hard cut
for conflict: a claim keeps its trust only if it beats its rival.
"""

from dataclasses import dataclass

from laf import FuzzyAlgebra, KnowledgeBase, Literal, Presumption, RuleSchema, evaluate, report_text
from laf.algebra import LabelAlgebra


@dataclass(frozen=True)
class TrustAlgebra(LabelAlgebra):
    name: str = "trust"
    kind: str = "fuzzy"

    @property
    def top(self):
        return 1.0

    @property
    def bottom(self):
        return 0.0

    def leq(self, a, b):
        return a <= b

    def support(self, a, b):
        return min(a, b)

    def aggregate(self, a, b):
        return max(a, b)

    def conflict(self, a, b):
        return a if a > b else 0.0

    def validate(self, value):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"trust {value!r} outside [0, 1]")
        return float(value)

    def is_assured(self, value):
        return value == 1.0

    def distance(self, a, b):
        return abs(a - b)

    def format_label(self, value):
        return repr(value)

    def to_json(self, value):
        return value


###############################################################################
# Two witnesses disagree about whether the suspect was at home.
def lit(text):
    neg = text.startswith("~")
    pred, arg = text.lstrip("~").rstrip(")").split("(")
    return Literal(pred, (arg,), neg)


algebras = (FuzzyAlgebra("relevance"), TrustAlgebra())
kb = KnowledgeBase(
    algebras,
    facts=(
        Presumption(lit("says_home(ann)"), (0.9, 0.8)),
        Presumption(lit("says_away(bob)"), (0.7, 0.6)),
    ),
    rules=(
        RuleSchema("w1", lit("home(s)"), (lit("says_home(ann)"),), (1.0, 1.0)),
        RuleSchema("w2", lit("~home(s)"), (lit("says_away(bob)"),), (1.0, 1.0)),
    ),
)

ev = evaluate(kb)
for key in ("home(s)", "~home(s)"):
    print(key, "mu+", ev.labeling.mu_plus[key], "mu-", ev.labeling.mu_minus[key])

###############################################################################
# Under relevance both claims survive partially; under trust, Ann's claim
# keeps its full trust and Bob's is rejected.
print(report_text(ev.labeling, ev.statuses))
