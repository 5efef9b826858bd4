"""
A short tour of the recurrence solver
=====================================

C-finite, hypergeometric and mixed recurrences, plus one that has no
closed form of the supported shape.
"""

from loopinv import MultiPoly, OreOperator, Recurrence, UniPoly, assemble_closed_form, petkovsek_hyper_solutions
from loopinv.ore import gcrd, lclm
from loopinv.recurrences import initial_value_system

x = UniPoly.x()
S = OreOperator.S()
a0, a1 = MultiPoly.var("a_0"), MultiPoly.var("a_1")

# constant coefficients: characteristic roots 2 and 3
cf = assemble_closed_form(Recurrence(S**2 - 5 * S + 6, "u", (a0, a1)))
print(cf.status, "|", cf.closed_form)

# polynomial coefficients: two hypergeometric solutions
L = OreOperator([-6 * (x + 1) * (x + 2), -5 * (x + 2), 1])
print(L)
hs = sorted(petkovsek_hyper_solutions(L), key=str)
print([str(h) for h in hs])
for n, lhs, rhs in initial_value_system(Recurrence(L, "a", (a0, a1)), hs, ["k1", "k2"]):
    print(f"n = {n}: {lhs} = {rhs}")
print(assemble_closed_form(Recurrence(L, "a", (a0, a1))).closed_form)

# the annihilator of a sum is an lclm; the gcrd recovers a shared factor
A, B = S - 2, S - OreOperator([x + 1])
M = lclm(A, B)
print(M, "| order", M.order, "| gcrd", gcrd(M, A))

# Fibonacci: roots are irrational, so no closed form over the rationals
rep = assemble_closed_form(Recurrence(S**2 - S - 1, "f", (MultiPoly.const(0), MultiPoly.const(1))))
print(rep.ok, rep.reason)
