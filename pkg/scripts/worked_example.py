"""Walk through the double-2 example: each decision's visible subtree and choice."""

from lfdominoes.cli import format_trace
from lfdominoes.harness import EXAMPLE_BUDGET, trace_worked_example
from lfdominoes.oracle import full_tree_spe
from lfdominoes.tree import expand_within_budget

trace = trace_worked_example()
states = trace.path.states()
for rec, state in zip(trace.periods, states):
    sub = expand_within_budget(state, EXAMPLE_BUDGET)
    print(f"--- period {rec.period}, player {rec.player}: levels {list(sub.level_counts)}")
    print(sub.dump())
print()
print(format_trace(trace))
exact = full_tree_spe(trace.deal)
print(f"\nexact value with unlimited foresight: {exact.value:+d}, opening {exact.principal.move_list()[0]}")
