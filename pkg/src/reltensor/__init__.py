"""Exact computation in semisimple tensor categories of twisted relations
over finite combinatorial backends.

The package is layered bottom-up:

    polynomial  exact multivariate polynomials over the rationals
    lattice     finite lattices, Moebius functions, order complex homology
    cyclo       exact cyclotomic numbers
    groupchar   character theory of small finite groups
    symfunc     Schur vectors, Kronecker and stable Kronecker products
    backends    the three concrete model categories (sets opposite,
                F_q-vector spaces, small groups)
    engine      the twisted relation calculus itself
    cli         batch command line front end
"""

__version__ = "0.1.0"
