"""Shared builders for the test suite: the two running examples (a 6x6
Rees 0-matrix semigroup over S4 and a transformation semigroup inside
T7), small standard semigroup families, and the oracle corpus."""

import operator
import random

from maxsemi.errors import CapacityError, InputError
from maxsemi.perm_group import Permutation, generate_group, parse_cycles
from maxsemi.rees_matrix import ReesZeroMatrixSemigroup, brandt
from maxsemi.semigroup_core import Transformation, closure, from_table

S4_MATRIX_CYCLES = [
    ["(3 4)", "(1 3 2 4)", "(1 4)(2 3)", "0", "0", "0"],
    ["(2 4)", "0", "(1 3 2)", "0", "0", "0"],
    ["0", "(3 4)", "0", "0", "0", "0"],
    ["0", "0", "0", "(1 4 3)", "(1 3)(2 4)", "0"],
    ["0", "0", "0", "(1 4)", "(1 4 2)", "0"],
    ["0", "0", "0", "0", "0", "(1 4 2)"],
]

W_GENERATOR_ROWS = [
    [1, 3, 4, 1, 5, 5, 5],
    [1, 4, 1, 3, 5, 5, 5],
    [3, 3, 1, 2, 5, 5, 5],
    [4, 4, 2, 3, 5, 5, 5],
    [1, 1, 3, 4, 5, 5, 6],
    [1, 2, 2, 4, 5, 6, 7],
    [1, 4, 3, 4, 5, 6, 7],
    [1, 2, 4, 4, 5, 6, 7],
]


def symmetric_group(n):
    cyc = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"
    return generate_group(n, [parse_cycles("(1 2)", n), parse_cycles(cyc, n)])


def cyclic_group(n):
    if n == 1:
        return generate_group(1, [])
    cyc = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"
    return generate_group(n, [parse_cycles(cyc, n)])


def s4_rzms():
    """The running 6x6 example: a regular Rees 0-matrix semigroup over S4
    with three Graham-Houghton components."""
    s4 = symmetric_group(4)
    matrix = tuple(
        tuple(None if e == "0" else parse_cycles(e, 4) for e in row)
        for row in S4_MATRIX_CYCLES
    )
    return ReesZeroMatrixSemigroup(s4, matrix)


def w_semigroup():
    """W <= T_7, the running example for the arbitrary-semigroup search."""
    gens = [Transformation.one_based(r) for r in W_GENERATOR_ROWS]
    return closure(gens, operator.mul)


def w_named_classes(sg, gs):
    """Green's class ids of the named elements the T7 example tests use."""
    gens = [Transformation.one_based(r) for r in W_GENERATOR_ROWS]
    x = {k: sg.index(g) for k, g in enumerate(gens, start=1)}
    prod = sg.product
    names = {
        "L_x1": gs.l_class[x[1]],
        "L_x3": gs.l_class[x[3]],
        "L_x4": gs.l_class[x[4]],
        "L_x1x6": gs.l_class[prod(x[1], x[6])],
        "R_x1": gs.r_class[x[1]],
        "R_x2": gs.r_class[x[2]],
        "R_x3": gs.r_class[x[3]],
        "R_x8x2": gs.r_class[prod(x[8], x[2])],
        "R_x6x2": gs.r_class[prod(x[6], x[2])],
        "R_x7x3": gs.r_class[prod(x[7], x[3])],
    }
    return x, names


def monogenic(index, period):
    """<a | a^(index+period) = a^index> as a Cayley table on exponents."""
    n = index + period - 1

    def reduce(k):
        return k if k <= n else ((k - index) % period) + index

    table = [[reduce(i + j + 2) - 1 for j in range(n)] for i in range(n)]
    return from_table(table, generator_indices=[0])


def zero_semigroup(k):
    """k elements, every product equal to element 0."""
    table = [[0] * k for _ in range(k)]
    return from_table(table, generator_indices=list(range(1, k)) or [0])


def left_zero(k):
    table = [[i] * k for i in range(k)]
    return from_table(table)


def right_zero(k):
    table = [list(range(k)) for _ in range(k)]
    return from_table(table)


def group_with_zero(n):
    """Cyclic group of order n with a zero adjoined; generators are a
    group generator and the zero."""
    size = n + 1  # index 0 is the zero, indices 1..n the group

    def mul(a, b):
        if a == 0 or b == 0:
            return 0
        return (a - 1 + b - 1) % n + 1

    table = [[mul(a, b) for b in range(size)] for a in range(size)]
    return from_table(table, generator_indices=[2 if n > 1 else 1, 0])


def all_regular_matrices(group, n_rows, n_cols):
    """Every regular n_rows x n_cols structure matrix over the group."""
    entries = [None] + list(group.elements)
    cells = n_rows * n_cols

    def regular(flat):
        for r in range(n_rows):
            if all(flat[r * n_cols + c] is None for c in range(n_cols)):
                return False
        for c in range(n_cols):
            if all(flat[r * n_cols + c] is None for r in range(n_rows)):
                return False
        return True

    import itertools

    for flat in itertools.product(entries, repeat=cells):
        if regular(flat):
            yield tuple(
                tuple(flat[r * n_cols + c] for c in range(n_cols))
                for r in range(n_rows)
            )


def random_transformation_semigroups(degree, count, seed, max_size=16):
    """Seeded random subsemigroups of T_degree with at most max_size
    elements, as FiniteSemigroups."""
    rng = random.Random(seed)
    out = []
    seen = set()
    attempts = 0
    while len(out) < count and attempts < count * 60:
        attempts += 1
        gens = [
            Transformation(tuple(rng.randrange(degree) for _ in range(degree)))
            for _ in range(rng.randint(1, 3))
        ]
        try:
            sg = closure(gens, operator.mul, max_size=max_size)
        except CapacityError:
            continue
        key = frozenset(sg.elements)
        if key in seen:
            continue
        seen.add(key)
        out.append(sg)
    return out


def adjoin_identity_to_rzms(rzms):
    """The Rees matrix semigroup with an identity adjoined, so that its
    big J-class is no longer maximal."""
    from maxsemi.rees_matrix import generating_set

    gens = generating_set(rzms) + ["1"]

    def mul(a, b):
        if a == "1":
            return b
        if b == "1":
            return a
        return rzms.multiply(a, b)

    return closure(gens, mul)


def oracle_corpus():
    """The verification corpus: monogenic semigroups, tiny Rees matrix
    semigroups over C1 and C2 (plain and with an identity adjoined),
    random transformation semigroups, and the constant families.
    Everything has at most 16 elements."""
    from maxsemi.semigroup_core import semigroup_from_rzms

    corpus = []
    for index in range(1, 8):
        for period in range(1, 9 - index):
            corpus.append((f"monogenic({index},{period})", monogenic(index, period)))
    for gname, group in (("C1", cyclic_group(1)), ("C2", cyclic_group(2))):
        for n_rows in (1, 2):
            for n_cols in (1, 2):
                for k, matrix in enumerate(
                        all_regular_matrices(group, n_rows, n_cols)):
                    rzms = ReesZeroMatrixSemigroup(group, matrix)
                    corpus.append((
                        f"rzms-{gname}-{n_rows}x{n_cols}-{k}",
                        semigroup_from_rzms(rzms),
                    ))
                    corpus.append((
                        f"rzms1-{gname}-{n_rows}x{n_cols}-{k}",
                        adjoin_identity_to_rzms(rzms),
                    ))
    for k, sg in enumerate(random_transformation_semigroups(3, 40, seed=101)):
        corpus.append((f"randT3-{k}", sg))
    for k, sg in enumerate(random_transformation_semigroups(4, 40, seed=202)):
        corpus.append((f"randT4-{k}", sg))
    rng = random.Random(909)
    trivial = cyclic_group(1)
    picked = 0
    while picked < 40:
        matrix = tuple(
            tuple(trivial.elements[0] if rng.random() < 0.55 else None
                  for _ in range(3))
            for _ in range(3))
        try:
            rzms = ReesZeroMatrixSemigroup(trivial, matrix)
        except InputError:
            continue
        picked += 1
        corpus.append((f"rzms-C1-3x3-{picked}", semigroup_from_rzms(rzms)))
        corpus.append((f"rzms1-C1-3x3-{picked}", adjoin_identity_to_rzms(rzms)))
    for k in range(2, 10):
        corpus.append((f"zero-{k}", zero_semigroup(k)))
        corpus.append((f"leftzero-{k}", left_zero(k)))
        corpus.append((f"rightzero-{k}", right_zero(k)))
    return corpus
