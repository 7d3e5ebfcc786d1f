"""Arithmetic in GF(2^n) with elements stored as plain ints.

Bit i of an element is the coefficient of x^i in the polynomial basis.
"""

from apnspectra.gf2n import factorize, make_field, poly_hex

F = make_field(6)
print(f"GF(2^6) reduction polynomial {poly_hex(F.reduction_poly)}, primitive element {F.primitive:#x}")
print("group order", F.order, "=", " * ".join(f"{p}^{e}" for p, e in factorize(F.order).items()))

a, b = 0b101101, 0b010011
print(f"{a:#x} * {b:#x} = {F.mul(a, b):#x}; inverse of a is {F.inv(a):#x}; check {F.mul(a, F.inv(a))}")
print("Frobenius is additive:", F.frobenius(a ^ b, 1) == F.frobenius(a, 1) ^ F.frobenius(b, 1))

# the absolute trace is balanced on GF(2^n)
traces = [F.trace(x) for x in range(F.size)]
print("trace ones:", sum(traces), "of", F.size)

# subfields GF(2^k) for k | n
for k in (1, 2, 3, 6):
    print(f"GF(2^{k}) inside GF(2^6): {len(F.subfield_elements(k))} elements")

# another basis for the same field
G = make_field(6, 0x5B)
print("alternative polynomial", poly_hex(G.reduction_poly), "primitive", hex(G.primitive))
