"""Static combinatorial data for the F4 root system in its fixed convex order.

The 24 positive roots are indexed 1..24.  Each entry carries the root in
simple-root coordinates, its standard Lyndon word over {1,2,3,4}, and for
composite roots the defining minimal pair (a, b) with a < i < b, plus any
alternative Lyndon pairs used only for cross-checks.
"""

from __future__ import annotations

from functools import lru_cache

from .coeff import RF_ONE, RatFunc2

# structural constant matrix (a_ij), stored as (r-exponent, s-exponent) pairs
_A_EXP = (
    ((2, -2), (0, 2), (0, 0), (0, 0)),
    ((-2, 0), (2, -2), (0, 2), (0, 0)),
    ((0, 0), (-2, 0), (1, -1), (0, 1)),
    ((0, 0), (0, 0), (-1, 0), (1, -1)),
)

CARTAN = (
    (2, -1, 0, 0),
    (-1, 2, -1, 0),
    (0, -2, 2, -1),
    (0, 0, -1, 2),
)

# (coords, lyndon word, minimal pair or None, alternative Lyndon pairs)
_TABLE = (
    ((1, 0, 0, 0), "1", None, ()),
    ((1, 1, 0, 0), "12", (1, 16), ()),
    ((1, 1, 1, 0), "123", (2, 22), ((1, 17),)),
    ((1, 1, 2, 0), "1233", (3, 22), ((1, 18),)),
    ((1, 2, 2, 0), "12332", (4, 16), ()),
    ((1, 1, 1, 1), "1234", (3, 24), ((2, 23), (1, 19))),
    ((1, 1, 2, 1), "12343", (6, 22), ((1, 20),)),
    ((2, 3, 4, 2), "12343123432", (7, 9), ()),
    ((1, 2, 2, 1), "123432", (7, 16), ()),
    ((1, 2, 3, 1), "1234323", (9, 22), ((7, 17),)),
    ((1, 1, 2, 2), "123434", (7, 24), ((6, 23), (1, 21))),
    ((1, 2, 2, 2), "1234342", (11, 16), ((9, 24),)),
    ((1, 2, 3, 2), "12343423", (12, 22), ((11, 17),)),
    ((1, 2, 4, 2), "123434233", (13, 22), ((11, 18),)),
    ((1, 3, 4, 2), "1234342332", (14, 16), ()),
    ((0, 1, 0, 0), "2", None, ()),
    ((0, 1, 1, 0), "23", (16, 22), ()),
    ((0, 1, 2, 0), "233", (17, 22), ()),
    ((0, 1, 1, 1), "234", (17, 24), ((16, 23),)),
    ((0, 1, 2, 1), "2343", (19, 22), ()),
    ((0, 1, 2, 2), "23434", (20, 24), ((19, 23),)),
    ((0, 0, 1, 0), "3", None, ()),
    ((0, 0, 1, 1), "34", (22, 24), ()),
    ((0, 0, 0, 1), "4", None, ()),
)

NUM_ROOTS = 24
ROOT_COORDS = tuple(row[0] for row in _TABLE)
LYNDON_WORDS = tuple(row[1] for row in _TABLE)
MIN_PAIRS = {i + 1: row[2] for i, row in enumerate(_TABLE) if row[2] is not None}
ALT_LYNDON_PAIRS = {i + 1: row[3] for i, row in enumerate(_TABLE) if row[3]}
HEIGHTS = tuple(sum(c) for c in ROOT_COORDS)
SIMPLE_INDICES = (1, 16, 22, 24)
SIMPLE_OF_ALPHA = {1: 1, 2: 16, 3: 22, 4: 24}
ALPHA_OF_SIMPLE = {v: k for k, v in SIMPLE_OF_ALPHA.items()}
WORD_TO_INDEX = {w: i + 1 for i, w in enumerate(LYNDON_WORDS)}


def root(i: int):
    """Simple-root coordinates of the i-th positive root (1-based)."""
    return ROOT_COORDS[i - 1]


def height(i: int) -> int:
    return HEIGHTS[i - 1]


def structural_constant(i: int, j: int) -> RatFunc2:
    er, es = _A_EXP[i - 1][j - 1]
    return RatFunc2.monomial(er, es)


def ri_si(i: int):
    """(r_i, s_i): squared parameters on the long roots, plain on the short."""
    if i in (1, 2):
        return RatFunc2.monomial(2, 0), RatFunc2.monomial(0, 2)
    return RatFunc2.monomial(1, 0), RatFunc2.monomial(0, 1)


def ri_si_exponents(i: int):
    return (2, 2) if i in (1, 2) else (1, 1)


def pairing_exponents(mu, nu):
    """(r-exponent, s-exponent) of the group pairing of omega'_mu against
    omega_nu, i.e. the product of a_ji over i in mu, j in nu."""
    er = es = 0
    for i in range(4):
        mi = mu[i]
        if mi:
            for j in range(4):
                nj = nu[j]
                if nj:
                    a, b = _A_EXP[j][i]
                    er += a * mi * nj
                    es += b * mi * nj
    return er, es


def pairing_omega(mu, nu) -> RatFunc2:
    er, es = pairing_exponents(mu, nu)
    return RatFunc2.monomial(er, es)


def add_vec(u, v):
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2], u[3] + v[3])


def sub_vec(u, v):
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2], u[3] - v[3])


def two_rho():
    return (16, 30, 42, 22)


def rho():
    return (8, 15, 21, 11)


@lru_cache(maxsize=None)
def kostant_monomials(d):
    """All PBW exponent vectors (n_1..n_24) with sum n_i beta_i = d,
    in lexicographic order."""
    out = []
    support = [(0, 0, 0, 0)]
    for c in ROOT_COORDS:
        prev = support[-1]
        support.append(tuple(max(prev[k], c[k]) for k in range(4)))

    def rec(idx, residual, acc):
        if idx == 0:
            if residual == (0, 0, 0, 0):
                out.append(tuple(acc))
            return
        reach = support[idx]
        if any(residual[k] and not reach[k] for k in range(4)):
            return
        beta = ROOT_COORDS[idx - 1]
        nmax = min(
            residual[k] // beta[k] for k in range(4) if beta[k]
        )
        for n in range(nmax, -1, -1):
            rem = tuple(residual[k] - n * beta[k] for k in range(4))
            acc[idx - 1] = n
            rec(idx - 1, rem, acc)
        acc[idx - 1] = 0

    rec(NUM_ROOTS, tuple(d), [0] * NUM_ROOTS)
    return tuple(sorted(out))


def decompositions(i: int):
    """All unordered pairs {a, b} with root(a) + root(b) = root(i)."""
    target = root(i)
    out = []
    for a in range(1, NUM_ROOTS + 1):
        for b in range(a, NUM_ROOTS + 1):
            if add_vec(root(a), root(b)) == target:
                out.append((a, b))
    return out


def check_table():
    """Structural invariants of the root table; raises AssertionError."""
    assert len(ROOT_COORDS) == NUM_ROOTS
    for i in range(1, NUM_ROOTS + 1):
        coords = root(i)
        word = LYNDON_WORDS[i - 1]
        letters = sorted(word)
        content = tuple(letters.count(str(k + 1)) for k in range(4))
        assert content == coords, f"word/root mismatch at {i}"
        assert height(i) == sum(coords)
        if i in SIMPLE_INDICES:
            assert i not in MIN_PAIRS
        else:
            a, b = MIN_PAIRS[i]
            assert a < i < b, f"minimal pair of {i} not straddling"
            assert add_vec(root(a), root(b)) == coords
            assert LYNDON_WORDS[a - 1] + LYNDON_WORDS[b - 1] == word
            for (a2, b2) in ALT_LYNDON_PAIRS.get(i, ()):  # alternative pairs
                assert add_vec(root(a2), root(b2)) == coords
        for (a, b) in decompositions(i):
            assert a < i < b, f"convexity fails at {i}: ({a}, {b})"
    total = (0, 0, 0, 0)
    for c in ROOT_COORDS:
        total = add_vec(total, c)
    assert total == two_rho(), "sum of positive roots is not 2*rho"
    assert tuple(2 * x for x in rho()) == two_rho()
    # Cartan consistency: a_ij * a_ji = (r_i s_i^-1)^(c_ij), a_ii = r_i s_i^-1
    for i in range(1, 5):
        ri, si = ri_si(i)
        diag = ri / si
        assert structural_constant(i, i) == diag
        for j in range(1, 5):
            lhs = structural_constant(i, j) * structural_constant(j, i)
            assert lhs == diag ** CARTAN[i - 1][j - 1], (i, j)
    return True


def format_table() -> str:
    """Plain-text dump of the root table."""
    lines = ["idx  root          height  word          minimal pair"]
    for i in range(1, NUM_ROOTS + 1):
        pair = MIN_PAIRS.get(i)
        pair_s = f"{pair[0]:>2} + {pair[1]:>2}" if pair else "simple"
        lines.append(
            f"{i:>3}  {str(root(i)):<13} {height(i):>5}   {LYNDON_WORDS[i-1]:<13} {pair_s}"
        )
    return "\n".join(lines)
