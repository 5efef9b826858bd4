"""
Invariants of integer division by repeated subtraction
======================================================

Walks one loop through every stage: parse, recurrences, closed forms,
elimination, and the interpreter check.
"""

from loopinv import parse_loop, extract_recurrences, assemble_closed_form, invariant_ideal
from loopinv.pipeline import RunConfig, run, serialize

src = """
while rem >= y do
  rem := rem - y;
  quo := quo + 1
end
"""

# the guard is kept as text only; the body is what matters
prog = parse_loop(src)
print(prog.guard, [a.target for a in prog.assignments])

# quo starts at 0, rem at a symbol x; y is a loop constant
system = extract_recurrences(prog, {"quo": 0, "rem": "x"})
for v, rec in system.recurrences.items():
    print(v, rec)

closed = [assemble_closed_form(rec).closed_form for rec in system.recurrences.values()]
for cf in closed:
    print(f"{cf.variable}(n) =", cf)

# eliminate n: what is left holds at every iteration
ideal = invariant_ideal(closed, ["quo", "rem"], reduce=True)
print(list(map(str, ideal)))

# the same thing in one call, with the exact interpreter as a second opinion
report = run(RunConfig(source=src, initial_values={"quo": 0, "rem": "x"}, reduce=True, check_iterations=30))
print(serialize(report, timings=False))
