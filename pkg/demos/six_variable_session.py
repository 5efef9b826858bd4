"""
Six variables, two hidden history registers
===========================================

Two second-order recurrences are written with temporaries (s1, s2 and t1, t2),
which the extractor folds back into shifts of b and d.
"""

import json

from loopinv.pipeline import RunConfig, run, serialize

loop = """
while true do
  a := 3*(n + 3/2)*a;
  s1 := s2; s2 := b;
  b := 5*(3/2 + n)*s2 - 3/2*(1 + 2*n)*(3 + 2*n)*s1;
  c := -3*c + 2;
  t1 := t2; t2 := d;
  d := 4*(4 + n)*t2 - 3*(3 + n)*(4 + n)*t1;
  e := (n + 4)*e;
  f := 2*f
end
"""
init = {"t1": 1, "t2": 1, "s1": 1, "s2": 2, "a": 3, "b": 1, "c": 1, "d": 3, "e": 2, "f": 5}

rep = run(RunConfig(source=loop, initial_values=init, check_iterations=40))
print(serialize(rep))

# --reduce drops generators implied by the others
small = run(RunConfig(source=loop, initial_values=init, reduce=True, check_iterations=40))
print(json.dumps(json.loads(serialize(small, "json", timings=False))["generators"], indent=1))

# leave everything symbolic: the starting values show up in the invariants
sym = run(RunConfig(source=loop, check_iterations=10))
print(len(sym.basis.generators), "generators,", sym.check.passed)
