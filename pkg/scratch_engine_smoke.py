import time

from reltensor.backends import GroupBackend, SetOpBackend, VectFqBackend
from reltensor.engine import Envelope, SimpleLabel
from reltensor.polynomial import MPoly, falling_factorial
from reltensor.symfunc import charlier, deligne_dim

t0 = time.time()
B = SetOpBackend()
E = Envelope(B)
two = E.object_by_label("(2)")
three = E.object_by_label("(3)")

# end dim identity on (2): Bell(4) = 15
r = E.end_dim_check(two)
print("end_dim (2):", r, "OK" if r["lhs"] == r["rhs"] == 15 else "FAIL")

# identity composes to itself
i2 = E.identity(two)
print("id.id == id:", E.compose(i2, i2) == i2)

# trace of identity = t^2
tr = E.trace(i2)
print("trace id_(2):", tr, tr == MPoly.var("t") ** 2)

# split idempotents on (3): orthogonal, sum to identity
i3 = E.identity(three)
sod = E.sod_idempotents(three)
tot = E.zero(three, three)
for p in sod.values():
    tot = tot + p
print("sod sums to id:", tot == i3)
ok = True
vals = list(sod.values())
for a in range(len(vals)):
    for b in range(len(vals)):
        prod = E.compose(vals[a], vals[b])
        want = vals[a] if a == b else E.zero(three, three)
        if prod != want:
            ok = False
print("sod orthogonal idempotents:", ok)

# char at identity = Charlier
c2 = E.char_x0(two, 0)
print("char_x0((2), id):", c2, c2 == charlier(2))
A3 = B.aut_group(three)
c3 = E.char_x0(three, 0)
print("char_x0((3), id):", c3, c3 == -charlier(3))
# transposition on (3): mu = (2,1), l = 2, m1 = 1 -> C_1 = 1 - t... sign (+1)^2
swap = A3.items.index((1, 0, 2))
c3s = E.char_x0(three, swap)
print("char_x0((3), swap):", c3s, c3s == charlier(1))
cyc = A3.items.index((1, 2, 0))
c3c = E.char_x0(three, cyc)
print("char_x0((3), 3-cycle):", c3c, c3c == -charlier(0))

# homological route agrees
for g in range(A3.n):
    a = E.char_x0(three, g)
    b = E.char_x0_homological(three, g)
    if a != b:
        print("HOMOLOGICAL MISMATCH at", g, a, b)
        break
else:
    print("char_x0 == char_x0_homological on (3): True")

# simple dims vs the interpolation formula
for lam, row in [((1,), "[1]"), ((2,), "[2]"), ((1, 1), "[1,1]")]:
    lab = E.simple_label_by_row(f"({sum(lam)})", row)
    d = E.simple_dim(lab)
    want = deligne_dim(lam)
    print(f"dim {row}:", d, d == want)

# T families: isomorphism graphs for n = 2
fam = E.enumerate_T((two, two))
print("T((2),(2)) members:", len(fam.members), len(fam.members) == 2)
print("chi_T identity:", E.chi_T((two, two), [0, 0]))

# multiplicity of the unit in [x] tensor [x]
lab1 = E.simple_label_by_row("(1)", "[1]")
m = E.hom_unit_multiplicity([lab1, lab1])
print("unit mult in [1][1]:", m)

print("setop block: %.2fs" % (time.time() - t0))

t0 = time.time()
BV = VectFqBackend(2)
EV = Envelope(BV)
r = EV.end_dim_check(1)
print("end_dim F2^1:", r, "OK" if r["lhs"] == r["rhs"] == 5 else "FAIL")
c = EV.char_x0(1, 0)
print("char_x0(F2^1, id):", c, c == MPoly.var("t") - 1)
print("vectfq block: %.2fs" % (time.time() - t0))

t0 = time.time()
BG = GroupBackend()
EG = Envelope(BG)
c3 = EG.object_by_label("C3")
A = BG.aut_group(c3)
print("Aut(C3) order:", A.n)
v = EG.char_x0(c3, 0)
print("char_x0(C3, id):", v, v == MPoly.var("t_C3") - 1)
lab = SimpleLabel("C3", 0)
d = EG.simple_dim(lab)
want = (MPoly.var("t_C3") - MPoly.const(3)) * MPoly.const(0.5 if False else 1)
print("dim triv(C3):", d)
fac = EG.dim_factorization_check(lab)
print("factorization:", fac["factors"], fac["scalar"], fac["ok"])
print("group block: %.2fs" % (time.time() - t0))
