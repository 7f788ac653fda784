import itertools

from reltensor.groupchar import FiniteGroup


def _rank(rows, q):
    m = [list(r) for r in rows]
    d = len(m)
    rank = 0
    for c in range(len(m[0])):
        piv = next((r for r in range(rank, d) if m[r][c] % q), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], q - 2, q)
        m[rank] = [x * inv % q for x in m[rank]]
        for r in range(d):
            if r != rank and m[r][c] % q:
                f = m[r][c]
                m[r] = [(x - f * y) % q for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def gl_group(d, q):
    """GL(d, q) on matrix tuples, for cross-checking backend-built groups."""
    vecs = list(itertools.product(range(q), repeat=d))
    mats = [rows for rows in itertools.product(vecs, repeat=d)
            if _rank(rows, q) == d]

    def mul(a, b):
        return tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(d)) % q for j in range(d))
            for i in range(d))

    return FiniteGroup.from_composition(mats, mul)
