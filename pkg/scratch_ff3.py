import time

from reltensor.backends import VectFqBackend
from reltensor.engine import Envelope
from reltensor.groupchar import conjugacy_classes
from reltensor.polynomial import MPoly

t = MPoly.var("t")
t0 = time.time()
B = VectFqBackend(2)
E = Envelope(B)
x = 3
A = B.aut_group(x)
print("Aut order:", A.n, "%.2fs" % (time.time() - t0))


def order_of(g):
    k, acc = 1, g
    while acc != A.identity:
        acc = A.mul(acc, g)
        k += 1
    return k


want = {
    1: t ** 3 - 14 * t ** 2 + 49 * t - 44,
    2: -(t - 1) * (t - 4),
    4: MPoly.zero(),
    3: -(t - 2),
    7: MPoly.const(-1),
}

t0 = time.time()
for cls in conjugacy_classes(A):
    g = cls[0]
    o = order_of(g)
    v = E.char_x0(x, g)
    ok = v == want[o]
    print(f"order {o} size {len(cls)}: {v}  {'OK' if ok else 'FAIL'}")
print("char column: %.2fs" % (time.time() - t0))

t0 = time.time()
for cls in conjugacy_classes(A):
    g = cls[0]
    a = E.char_x0(x, g)
    b = E.char_x0_homological(x, g)
    print("homological match order", order_of(g), ":", a == b)
print("homological: %.2fs" % (time.time() - t0))

t0 = time.time()
want_dims = {
    "chi0": (t - 1) * (t - 2) * (t - 32) * MPoly.const(1) / 168,
}
rows = E.dims_report(x)
for r in rows:
    print(r["row"], "deg", r["degree"], ":", r["dim"])
print("dims: %.2fs" % (time.time() - t0))

# factorization patterns from the generic table
t0 = time.time()
for lab in E.simple_labels(x):
    f = E.dim_factorization_check(lab)
    print(f["label"].char_index, f["factors"], f["scalar"], f["ok"])
print("factorization: %.2fs" % (time.time() - t0))
