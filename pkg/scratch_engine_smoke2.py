import time

from reltensor.backends import GroupBackend, SetOpBackend, VectFqBackend
from reltensor.engine import Envelope, SimpleLabel

B = SetOpBackend()
E = Envelope(B)
one = E.object_by_label("(1)")
two = E.object_by_label("(2)")
three = E.object_by_label("(3)")

t0 = time.time()
s1 = E.simple_label_by_row("(1)", "[1]")
table = E.tensor_decompose(s1, s1)
print("s1 * s1:")
for lab, m in table.items():
    print("  ", lab, m)
print("decompose: %.2fs" % (time.time() - t0))

# dimension audit: sum of mult * dim == dim(s1)^2
t0 = time.time()
d1 = E.simple_dim(s1)
total = None
for lab, m in table.items():
    d = E.simple_dim(lab) * m
    total = d if total is None else total + d
print("dim check:", total == d1 * d1, total, "vs", d1 * d1)
print("dims: %.2fs" % (time.time() - t0))

# Grothendieck: unit and generator products
t0 = time.time()
u = E.grothendieck_unit()
print("unit * unit == unit:", E.grothendieck_product(u, u) == u)
g1 = E.grothendieck_generator(s1)
p = E.grothendieck_product(g1, g1)
print("g1 * g1 components:", p.sorted_labels())
for lab in p.sorted_labels():
    print("  ", lab, [str(v) for v in p.components[lab].values])
print("grothendieck: %.2fs" % (time.time() - t0))

# the big family counts
for target, want in [("(0)", 6), ("(5)", 1080), ("(6)", 720)]:
    t0 = time.time()
    fam = E.enumerate_T((three, three, E.object_by_label(target)))
    print(f"T((3),(3),{target}):", len(fam.members), "want", want,
          "%.2fs" % (time.time() - t0))

# chi table + orbit profile timing on the heaviest family
t0 = time.time()
fam = E.enumerate_T((three, three, E.object_by_label("(6)")))
ct = fam.class_table()
print("class table entries:", len(ct), "%.2fs" % (time.time() - t0))
t0 = time.time()
op = fam.orbit_profile()
print("orbits:", len(op), "stab sizes:", [n for n, _ in op],
      "%.2fs" % (time.time() - t0))

# unit multiplicity with both routes on a 3-factor family
t0 = time.time()
s2_triv = E.simple_label_by_row("(2)", "[2]")
s2_sign = E.simple_label_by_row("(2)", "[1,1]")
print("unit in [2]x[2]:", E.hom_unit_multiplicity([s2_triv, s2_triv]))
print("unit in [2]sgn x [2]sgn:", E.hom_unit_multiplicity([s2_sign, s2_sign]))
print("unit in [2]triv x [2]sgn:", E.hom_unit_multiplicity([s2_triv, s2_sign]))
print("unit in s1 x s1 x s1:", E.hom_unit_multiplicity([s1, s1, s1]))
print("routes: %.2fs" % (time.time() - t0))

# vectfq tensor decompose
t0 = time.time()
BV = VectFqBackend(2)
EV = Envelope(BV)
v1 = SimpleLabel("F2^1", 0)
tv = EV.tensor_decompose(v1, v1)
print("F2 v1*v1:")
for lab, m in tv.items():
    print("  ", lab, m)
print("vect decompose: %.2fs" % (time.time() - t0))

# group backend tensor decompose on C2
t0 = time.time()
BG = GroupBackend()
EG = Envelope(BG)
c2 = SimpleLabel("C2", 0)
tg = EG.tensor_decompose(c2, c2)
print("C2 triv * triv:")
for lab, m in tg.items():
    print("  ", lab, m)
print("group decompose: %.2fs" % (time.time() - t0))
