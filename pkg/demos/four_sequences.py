"""
Relations among mixed exponential and factorial sequences
=========================================================

a(n) = ((-1)^n + 6^n) n!,  b(n) = 2^n,  c(n) = 3^n n!,  d(n) = n!
"""

from loopinv import MultiPoly, OreOperator, Recurrence, UniPoly, assemble_closed_form, invariant_ideal
from loopinv.ideals import exp_lattice, lattice_ideal

x = UniPoly.x()

# multiplicative relations among the bases first
lat = exp_lattice([-1, 2, 3, 6])
print(lat.basis)
print(list(map(str, lattice_ideal(lat))))


def closed(op, var, init):
    return assemble_closed_form(Recurrence(op, var, tuple(MultiPoly.coerce(v) for v in init))).closed_form


def sequences(a0, a1, b0, c0, d0):
    return [
        closed(OreOperator([-6 * (x + 1) * (x + 2), -5 * (x + 2), 1]), "a", (a0, a1)),
        closed(OreOperator([-2, 1]), "b", (b0,)),
        closed(OreOperator([-3 * (x + 1), 1]), "c", (c0,)),
        closed(OreOperator([-(x + 1), 1]), "d", (d0,)),
    ]


cfs = sequences(2, 5, 1, 1, 1)
for cf in cfs:
    print(f"{cf.variable}(n) =", cf)
I = invariant_ideal(cfs, ["a", "b", "c", "d"], reduce=True)
print(list(map(str, I)))

# sanity: the relation vanishes on the actual values
g = I.generators[0]
print([g.evaluate({cf.variable: cf.evaluate(n) for cf in cfs}) for n in range(6)])

# symbolic starting values stay as extra variables of the ring
V = MultiPoly.var
sym = invariant_ideal(sequences(V("a_0"), V("a_1"), V("b_0"), V("c_0"), V("d_0")), ["a", "b", "c", "d"], reduce=True)
print(sym.generators[0].content_normalized())
