"""The positive-part engine.

Quantum root vectors are built as iterated two-parameter brackets over the
minimal pairs of the convex order.  ``TableBuilder`` derives, for every pair
i < j of convex indices, the rewriting rule

    E_i E_j  =  p_ij * E_j E_i  +  C_ij

with the correction C_ij supported strictly between i and j.  ``PbwEngine``
then multiplies arbitrary elements in the descending PBW normal form, over
Q(r, s) or over a cyclotomic specialization, optionally truncating exponents
at ell for the restricted algebra.

PBW monomials are exponent tuples ``exps`` of length 24 where ``exps[k]`` is
the exponent of the (k+1)-th root vector; the monomial is read with indices
descending left to right.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache

from . import rootdata as rd
from .coeff import (
    QQ,
    RF_ONE,
    RF_ZERO,
    CycloNum,
    FieldEmbedding,
    RatFunc2,
    parse_ratfunc,
    ratfunc_to_text,
    specialize,
)

NUM = rd.NUM_ROOTS
ZERO_EXPS = (0,) * NUM


class TableBuildError(RuntimeError):
    """Fatal inconsistency while deriving the straightening rules."""


# ---------------------------------------------------------------------------
# Exponent-tuple helpers
# ---------------------------------------------------------------------------


def mono_exps(*pairs):
    """Exponent tuple from (root_index, exponent) pairs."""
    v = [0] * NUM
    for i, n in pairs:
        v[i - 1] += n
    return tuple(v)


def exps_inc(v, i):
    k = i - 1
    return v[:k] + (v[k] + 1,) + v[k + 1 :]


def exps_dec(v, i):
    k = i - 1
    return v[:k] + (v[k] - 1,) + v[k + 1 :]


def exps_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def exps_degree(v):
    d = [0, 0, 0, 0]
    for k, n in enumerate(v):
        if n:
            c = rd.ROOT_COORDS[k]
            d[0] += n * c[0]
            d[1] += n * c[1]
            d[2] += n * c[2]
            d[3] += n * c[3]
    return tuple(d)


def exps_height(v):
    return sum(n * rd.HEIGHTS[k] for k, n in enumerate(v) if n)


def exps_max_index(v):
    for k in range(NUM - 1, -1, -1):
        if v[k]:
            return k + 1
    return 0


def exps_min_index(v):
    for k in range(NUM):
        if v[k]:
            return k + 1
    return 0


def letters_desc(v):
    """The monomial as a tuple of root indices, descending."""
    out = []
    for k in range(NUM - 1, -1, -1):
        out.extend([k + 1] * v[k])
    return tuple(out)


def word_to_exps(word):
    v = [0] * NUM
    for i in word:
        v[i - 1] += 1
    return tuple(v)


def elem_degree(elem):
    for v in elem:
        return exps_degree(v)
    return None


# ---------------------------------------------------------------------------
# Bracket trees and the free expansion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BracketTree:
    """leaf: simple root index; node: [left, right] with bracket scalar p."""

    index: int
    left: "BracketTree | None" = None
    right: "BracketTree | None" = None
    p: RatFunc2 | None = None

    @property
    def is_leaf(self):
        return self.left is None


@lru_cache(maxsize=None)
def root_vector_tree(i: int) -> BracketTree:
    if i in rd.SIMPLE_INDICES:
        return BracketTree(i)
    a, b = rd.MIN_PAIRS[i]
    p = rd.pairing_omega(rd.root(b), rd.root(a))
    return BracketTree(i, root_vector_tree(a), root_vector_tree(b), p)


def _free_mul(x, y):
    out = {}
    for wx, cx in x.items():
        for wy, cy in y.items():
            w = wx + wy
            c = cx * cy
            v = out.get(w)
            out[w] = c if v is None else v + c
    return {w: c for w, c in out.items() if c}


def _free_scale(x, c):
    if not c:
        return {}
    return {w: v * c for w, v in x.items()}


def _free_add(x, y):
    out = dict(x)
    for w, c in y.items():
        v = out.get(w)
        v = c if v is None else v + c
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


@lru_cache(maxsize=None)
def expand_to_free(i: int):
    """The i-th root vector as a combination of words over the four simple
    generators (letters 1..4)."""
    tree = root_vector_tree(i)
    if tree.is_leaf:
        return {(rd.ALPHA_OF_SIMPLE[i],): RF_ONE}
    a, b = rd.MIN_PAIRS[i]
    left = expand_to_free(a)
    right = expand_to_free(b)
    return _free_add(_free_mul(left, right), _free_scale(_free_mul(right, left), -tree.p))


def lyndon_leading_word(i: int):
    """Lexicographically smallest word in the free expansion, with coefficient."""
    free = expand_to_free(i)
    w = min(free)
    return "".join(str(k) for k in w), free[w]


# ---------------------------------------------------------------------------
# Straightening table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StraighteningRule:
    i: int
    j: int
    p: object
    correction: dict  # exps -> coefficient, support strictly inside (i, j)


class StraighteningTable:
    """All 276 rules E_i E_j = p * E_j E_i + C_ij for i < j."""

    def __init__(self, rules: dict, mode="generic"):
        self.rules = rules
        self.mode = mode
        self._swapped = None
        self._specialized = {}

    def rule(self, i, j) -> StraighteningRule:
        return self.rules[(i, j)]

    def __len__(self):
        return len(self.rules)

    def swap_rs(self) -> "StraighteningTable":
        """Coefficient-wise r <-> s image; the rewriting table of the
        tau-image (negative) side read back as a positive-part table."""
        if self.mode != "generic":
            raise ValueError("swap_rs applies to the generic table")
        if self._swapped is None:
            rules = {}
            for (i, j), rule in self.rules.items():
                rules[(i, j)] = StraighteningRule(
                    i,
                    j,
                    rule.p.swap_rs(),
                    {m: c.swap_rs() for m, c in rule.correction.items()},
                )
            self._swapped = StraighteningTable(rules, mode="generic-swapped")
        return self._swapped

    def specialize(self, emb: FieldEmbedding) -> "StraighteningTable":
        key = (emb.field.order, emb.rexp, emb.sexp, emb.ell)
        cached = self._specialized.get(key)
        if cached is None:
            rules = {}
            for (i, j), rule in self.rules.items():
                rules[(i, j)] = StraighteningRule(
                    i,
                    j,
                    specialize(rule.p, emb),
                    {m: specialize(c, emb) for m, c in rule.correction.items()},
                )
            cached = StraighteningTable(rules, mode=f"specialized{key}")
            self._specialized[key] = cached
        return cached


# -- canonical serialization --------------------------------------------------
#
# exps serialize in the monomial's reading order (n_24, ..., n_1).


def _exps_to_doc(v):
    return list(reversed(v))


def _exps_from_doc(lst):
    return tuple(reversed([int(x) for x in lst]))


TABLE_FORMAT_VERSION = 1


def table_to_doc(table: StraighteningTable) -> dict:
    if table.mode != "generic":
        raise ValueError("only the generic table is cached")
    rules = []
    for (i, j) in sorted(table.rules):
        rule = table.rules[(i, j)]
        corr = [
            {"exps": _exps_to_doc(m), "coeff": ratfunc_to_text(c)}
            for m, c in sorted(rule.correction.items())
        ]
        rules.append({"i": i, "j": j, "p": ratfunc_to_text(rule.p), "correction": corr})
    return {"format_version": TABLE_FORMAT_VERSION, "mode": "generic", "rules": rules}


def table_from_doc(doc: dict) -> StraighteningTable:
    if doc.get("format_version") != TABLE_FORMAT_VERSION:
        raise ValueError(
            f"table cache format_version {doc.get('format_version')!r} is not "
            f"{TABLE_FORMAT_VERSION}"
        )
    if doc.get("mode") != "generic":
        raise ValueError(f"table cache mode {doc.get('mode')!r} is not 'generic'")
    rules = {}
    for rec in doc["rules"]:
        i, j = int(rec["i"]), int(rec["j"])
        corr = {
            _exps_from_doc(ent["exps"]): parse_ratfunc(ent["coeff"])
            for ent in rec["correction"]
        }
        rules[(i, j)] = StraighteningRule(i, j, parse_ratfunc(rec["p"]), corr)
    return StraighteningTable(rules)


def table_to_bytes(table: StraighteningTable) -> bytes:
    return json.dumps(table_to_doc(table), sort_keys=True, separators=(",", ":")).encode()


def table_fingerprint(table: StraighteningTable) -> str:
    return hashlib.sha256(table_to_bytes(table)).hexdigest()


def tables_equal(a: StraighteningTable, b: StraighteningTable) -> bool:
    if set(a.rules) != set(b.rules):
        return False
    for key, ra in a.rules.items():
        rb = b.rules[key]
        if ra.p != rb.p or ra.correction != rb.correction:
            return False
    return True


# ---------------------------------------------------------------------------
# Table construction
# ---------------------------------------------------------------------------

MINPAIR_OF = {pair: k for k, pair in rd.MIN_PAIRS.items()}

# bracket vanishings equivalent to the six quadratic/cubic Serre relations;
# these seed the derivation and everything else follows mechanically
SERRE_BASE_PAIRS = {(1, 2), (2, 16), (16, 17), (18, 22), (22, 23), (23, 24)}

_DISCONNECTED_SIMPLE = {(1, 22), (1, 24), (16, 24)}


class TableBuilder:
    """Derives the full straightening table over Q(r, s).

    Pairs are processed in increasing combined height, ties by increasing gap
    j - i; a rule needed out of this order is derived on demand, and a cyclic
    demand aborts the build (it would indicate a convexity violation).
    """

    def __init__(self):
        self.rules: dict[tuple, StraighteningRule] = {}
        self._building: set[tuple] = set()

    # -- public -------------------------------------------------------------

    def build(self) -> StraighteningTable:
        pairs = [
            (i, j)
            for i in range(1, NUM + 1)
            for j in range(i + 1, NUM + 1)
        ]
        pairs.sort(key=lambda ij: (rd.HEIGHTS[ij[0] - 1] + rd.HEIGHTS[ij[1] - 1],
                                   ij[1] - ij[0], ij[0]))
        for (i, j) in pairs:
            self._get_rule(i, j)
        return StraighteningTable(dict(self.rules))

    # -- rule derivation ------------------------------------------------------

    def _get_rule(self, i, j):
        rule = self.rules.get((i, j))
        if rule is not None:
            return rule
        if (i, j) in self._building:
            raise TableBuildError(
                f"cyclic dependency while deriving rule ({i}, {j}); "
                "the convex processing order is violated"
            )
        self._building.add((i, j))
        try:
            rule = self._derive(i, j)
        finally:
            self._building.discard((i, j))
        self._check_window(rule)
        self.rules[(i, j)] = rule
        return rule

    def _derive(self, i, j):
        p = rd.pairing_omega(rd.root(j), rd.root(i))
        k = MINPAIR_OF.get((i, j))
        if k is not None:
            return StraighteningRule(i, j, p, {mono_exps((k, 1)): RF_ONE})
        if (i, j) in _DISCONNECTED_SIMPLE or (i, j) in SERRE_BASE_PAIRS:
            return StraighteningRule(i, j, p, {})

        splits = []
        for a, b in self._bracket_presentations(j):
            splits.append(("split_j", a, b))
        for a, b in self._bracket_presentations(i):
            splits.append(("split_i", a, b))
        if not splits:
            raise TableBuildError(f"no derivation route for simple pair ({i}, {j})")

        last_error = None
        for policy in ("leftmost", "rightmost", "mingap"):
            for split, a, b in splits:
                q = self._get_rule(a, b).p
                if split == "split_j":
                    words = {
                        (i, a, b): RF_ONE,
                        (i, b, a): -q,
                        (a, b, i): -p,
                        (b, a, i): p * q,
                    }
                else:
                    words = {
                        (a, b, j): RF_ONE,
                        (b, a, j): -q,
                        (j, a, b): -p,
                        (j, b, a): p * q,
                    }
                try:
                    normal, lam = self._straighten(words, (i, j), policy)
                except TableBuildError as exc:
                    last_error = exc
                    continue
                denom = RF_ONE - lam
                if not denom:
                    last_error = TableBuildError(
                        f"degenerate derivation for rule ({i}, {j}) via {split}/{policy}"
                    )
                    continue
                # C (1 - lam) = normal + lam * p * M[j, i]
                corr = dict(normal)
                ji = mono_exps((i, 1), (j, 1))
                if lam:
                    v = corr.get(ji, RF_ZERO) + lam * p
                    if v:
                        corr[ji] = v
                    else:
                        corr.pop(ji, None)
                inv = denom.inverse()
                corr = {m: c * inv for m, c in corr.items() if c}
                return StraighteningRule(i, j, p, corr)
        raise last_error

    def _bracket_presentations(self, k):
        """Pairs (a, b) whose derived bracket equals the k-th root vector:
        the defining minimal pair first, then any alternative Lyndon pair
        whose rule has already confirmed the single-monomial correction."""
        if k in rd.SIMPLE_INDICES:
            return []
        target = {mono_exps((k, 1)): RF_ONE}
        out = [rd.MIN_PAIRS[k]]
        for (a, b) in rd.ALT_LYNDON_PAIRS.get(k, ()):
            try:
                rule = self._get_rule(a, b)
            except TableBuildError:
                continue
            if rule.correction == target:
                out.append((a, b))
        return out

    def _check_window(self, rule):
        lo, hi = rule.i, rule.j
        for m in rule.correction:
            if exps_min_index(m) <= lo or exps_max_index(m) >= hi:
                raise TableBuildError(
                    f"correction of rule ({lo}, {hi}) escapes its window: "
                    f"{letters_desc(m)}"
                )

    # -- word rewriting with one formal unknown --------------------------------

    def _straighten(self, words, unknown, policy="leftmost"):
        """Normal-form the word combination; the 2-letter word equal to
        ``unknown`` is treated as a formal symbol.  Returns (normal, lam)."""
        normal: dict = {}
        lam = RF_ZERO
        pending = dict(words)
        while pending:
            word = min(pending)
            coeff = pending.pop(word)
            if not coeff:
                continue
            if word == unknown:
                lam = lam + coeff
                continue
            spot = self._pick_inversion(word, policy)
            if spot is None:
                v = word_to_exps(word)
                cur = normal.get(v, RF_ZERO) + coeff
                if cur:
                    normal[v] = cur
                else:
                    normal.pop(v, None)
                continue
            u, w = word[spot], word[spot + 1]
            if (u, w) == unknown:
                raise TableBuildError(
                    f"unknown pair {unknown} inside a longer word {word}: "
                    "degree bookkeeping is broken"
                )
            rule = self._get_rule(u, w)
            pre, post = word[:spot], word[spot + 2 :]
            swapped = pre + (w, u) + post
            cur = pending.get(swapped, RF_ZERO) + coeff * rule.p
            if cur:
                pending[swapped] = cur
            else:
                pending.pop(swapped, None)
            for m, cm in rule.correction.items():
                nw = pre + letters_desc(m) + post
                cur = pending.get(nw, RF_ZERO) + coeff * cm
                if cur:
                    pending[nw] = cur
                else:
                    pending.pop(nw, None)
        return normal, lam

    @staticmethod
    def _pick_inversion(word, policy):
        """Position of the adjacent ascending pair to rewrite next."""
        if policy == "leftmost":
            for k in range(len(word) - 1):
                if word[k] < word[k + 1]:
                    return k
            return None
        if policy == "rightmost":
            for k in range(len(word) - 2, -1, -1):
                if word[k] < word[k + 1]:
                    return k
            return None
        best = None
        best_key = None
        for k in range(len(word) - 1):
            u, w = word[k], word[k + 1]
            if u < w:
                key = (rd.HEIGHTS[u - 1] + rd.HEIGHTS[w - 1], w - u, k)
                if best_key is None or key < best_key:
                    best, best_key = k, key
        return best


_GENERIC_TABLE = None


def build_straightening_table() -> StraighteningTable:
    return TableBuilder().build()


def generic_table() -> StraighteningTable:
    """Build (once) and share the generic table."""
    global _GENERIC_TABLE
    if _GENERIC_TABLE is None:
        _GENERIC_TABLE = build_straightening_table()
    return _GENERIC_TABLE


def set_generic_table(table: StraighteningTable):
    global _GENERIC_TABLE
    _GENERIC_TABLE = table


# ---------------------------------------------------------------------------
# Coefficient contexts
# ---------------------------------------------------------------------------


class GenericOps:
    """Coefficients in Q(r, s)."""

    kind = "generic"

    def __init__(self):
        self.one = RF_ONE
        self.zero = RF_ZERO
        self._pair_cache = {}

    def pairing(self, mu, nu):
        key = (mu, nu)
        v = self._pair_cache.get(key)
        if v is None:
            v = rd.pairing_omega(mu, nu)
            self._pair_cache[key] = v
        return v

    def from_exponents(self, er, es):
        return RatFunc2.monomial(er, es)

    def rational(self, c):
        return RatFunc2.const(c)


class CycloOps:
    """Coefficients in Q[x]/Phi_n at r = xi^rexp, s = xi^sexp."""

    kind = "cyclo"

    def __init__(self, emb: FieldEmbedding):
        self.emb = emb
        self.one = emb.field.one
        self.zero = emb.field.zero
        self._pair_cache = {}

    def pairing(self, mu, nu):
        key = (mu, nu)
        v = self._pair_cache.get(key)
        if v is None:
            er, es = rd.pairing_exponents(mu, nu)
            v = self.emb.theta_pow(self.emb.eval_monomial_exp(er, es))
            self._pair_cache[key] = v
        return v

    def from_exponents(self, er, es):
        return self.emb.theta_pow(self.emb.eval_monomial_exp(er, es))

    def rational(self, c):
        return self.emb.field.from_rational(c)


# ---------------------------------------------------------------------------
# Normal-form engine
# ---------------------------------------------------------------------------


class PbwEngine:
    """Multiplication of PBW elements over a frozen straightening table.

    ``truncate`` kills any exponent reaching ell (the restricted algebra);
    leave it ``None`` for the full algebra, including exact ell-th powers at
    a specialization.
    """

    def __init__(self, table: StraighteningTable, ops, truncate: int | None = None):
        self.table = table
        self.ops = ops
        self.truncate = truncate
        self._left: dict = {}
        self._right: dict = {}
        self._mul: dict = {}

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def generic(table=None, truncate=None):
        return PbwEngine(table or generic_table(), GenericOps(), truncate)

    @staticmethod
    def at_root(emb: FieldEmbedding, table=None, truncate: bool = False):
        table = (table or generic_table()).specialize(emb)
        return PbwEngine(table, CycloOps(emb), emb.ell if truncate else None)

    # -- element helpers -------------------------------------------------------

    def root_vector(self, i):
        return {mono_exps((i, 1)): self.ops.one}

    def one_elem(self):
        return {ZERO_EXPS: self.ops.one}

    def add(self, x, y):
        out = dict(x)
        for v, c in y.items():
            cur = out.get(v)
            cur = c if cur is None else cur + c
            if cur:
                out[v] = cur
            else:
                out.pop(v, None)
        return out

    def sub(self, x, y):
        out = dict(x)
        for v, c in y.items():
            cur = out.get(v)
            cur = -c if cur is None else cur - c
            if cur:
                out[v] = cur
            else:
                out.pop(v, None)
        return out

    def scale(self, x, c):
        if not c:
            return {}
        return {v: cv * c for v, cv in x.items()}

    def equal(self, x, y):
        return x == y

    # -- monomial straightening ---------------------------------------------------

    def _inc(self, v, i):
        n = v[i - 1] + 1
        if self.truncate is not None and n >= self.truncate:
            return None
        return exps_inc(v, i)

    def straighten_left(self, i, v):
        """E_i * M(v) in normal form, as a dict exps -> coeff."""
        key = (i, v)
        out = self._left.get(key)
        if out is not None:
            return out
        j = exps_max_index(v)
        if i >= j:
            w = self._inc(v, i)
            out = {} if w is None else {w: self.ops.one}
            self._left[key] = out
            return out
        rule = self.table.rule(i, j)
        v2 = exps_dec(v, j)
        acc: dict = {}
        for w, c in self.straighten_left(i, v2).items():
            w2 = self._inc(w, j)
            if w2 is None:
                continue
            c2 = c * rule.p
            cur = acc.get(w2)
            cur = c2 if cur is None else cur + c2
            if cur:
                acc[w2] = cur
            else:
                acc.pop(w2, None)
        for m, cm in rule.correction.items():
            for w, c in self.mul_mono(m, v2).items():
                c2 = c * cm
                cur = acc.get(w)
                cur = c2 if cur is None else cur + c2
                if cur:
                    acc[w] = cur
                else:
                    acc.pop(w, None)
        self._left[key] = acc
        return acc

    def straighten_right(self, v, i):
        """M(v) * E_i in normal form."""
        key = (v, i)
        out = self._right.get(key)
        if out is not None:
            return out
        c0 = exps_min_index(v)
        if c0 == 0 or i <= c0:
            w = self._inc(v, i)
            out = {} if w is None else {w: self.ops.one}
            self._right[key] = out
            return out
        rule = self.table.rule(c0, i)
        v2 = exps_dec(v, c0)
        acc: dict = {}
        for w, c in self.straighten_right(v2, i).items():
            w2 = self._inc(w, c0)
            if w2 is None:
                continue
            c2 = c * rule.p
            cur = acc.get(w2)
            cur = c2 if cur is None else cur + c2
            if cur:
                acc[w2] = cur
            else:
                acc.pop(w2, None)
        for m, cm in rule.correction.items():
            for w, c in self.mul_mono(v2, m).items():
                c2 = c * cm
                cur = acc.get(w)
                cur = c2 if cur is None else cur + c2
                if cur:
                    acc[w] = cur
                else:
                    acc.pop(w, None)
        self._right[key] = acc
        return acc

    def mul_mono(self, u, v):
        """M(u) * M(v) in normal form."""
        if u == ZERO_EXPS:
            return {v: self.ops.one}
        if v == ZERO_EXPS:
            return {u: self.ops.one}
        key = (u, v)
        out = self._mul.get(key)
        if out is not None:
            return out
        if sum(u) <= sum(v):
            a = exps_min_index(u)
            u2 = exps_dec(u, a)
            mid = self.straighten_left(a, v)
            acc: dict = {}
            for w, c in mid.items():
                for w2, c2 in self.mul_mono(u2, w).items():
                    c3 = c * c2
                    cur = acc.get(w2)
                    cur = c3 if cur is None else cur + c3
                    if cur:
                        acc[w2] = cur
                    else:
                        acc.pop(w2, None)
        else:
            b = exps_max_index(v)
            v2 = exps_dec(v, b)
            mid = self.straighten_right(u, b)
            acc = {}
            for w, c in mid.items():
                for w2, c2 in self.mul_mono(w, v2).items():
                    c3 = c * c2
                    cur = acc.get(w2)
                    cur = c3 if cur is None else cur + c3
                    if cur:
                        acc[w2] = cur
                    else:
                        acc.pop(w2, None)
        self._mul[key] = acc
        return acc

    # -- element operations -------------------------------------------------------

    def mul(self, x, y):
        out: dict = {}
        for u, cu in x.items():
            for v, cv in y.items():
                c = cu * cv
                for w, cw in self.mul_mono(u, v).items():
                    c2 = c * cw
                    cur = out.get(w)
                    cur = c2 if cur is None else cur + c2
                    if cur:
                        out[w] = cur
                    else:
                        out.pop(w, None)
        return out

    def power(self, x, n):
        out = self.one_elem()
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def bracket(self, x, y):
        """[x, y] = x y - <omega'_deg(y), omega_deg(x)> y x for homogeneous x, y."""
        dx, dy = elem_degree(x), elem_degree(y)
        if dx is None or dy is None:
            return {}
        p = self.ops.pairing(dy, dx)
        return self.sub(self.mul(x, y), self.scale(self.mul(y, x), p))

    def commutator(self, i, j):
        """The table correction C_ij = [E_i, E_j] for i < j."""
        return dict(self.table.rule(i, j).correction)

    # -- twisted adjoint powers --------------------------------------------------

    def ad_q_power(self, side, x, y, q, m, p=None):
        """Iterated (ad_q x)^(m) on y (side='left') or (ad_q y)^(m) on x
        (side='right'); p defaults to the self-pairing of the acting factor."""
        if side == "left":
            act, arg = x, y
        elif side == "right":
            act, arg = y, x
        else:
            raise ValueError("side must be 'left' or 'right'")
        d = elem_degree(act)
        if p is None:
            p = self.ops.pairing(d, d)
        out = arg
        pk = self.ops.one
        for n in range(1, m + 1):
            if side == "left":
                out = self.sub(self.mul(act, out), self.scale(self.mul(out, act), pk * q))
            else:
                out = self.sub(self.mul(out, act), self.scale(self.mul(act, out), pk * q))
            pk = pk * p
        return out

    def ad_nilpotency_degree(self, i, j, cap=12):
        """Least m <= cap with (ad_q E_i)_L^(m) E_j = 0, q the bracket scalar."""
        x = self.root_vector(i)
        y = self.root_vector(j)
        q = self.ops.pairing(rd.root(j), rd.root(i))
        p = self.ops.pairing(rd.root(i), rd.root(i))
        out = y
        pk = self.ops.one
        for m in range(1, cap + 1):
            out = self.sub(self.mul(x, out), self.scale(self.mul(out, x), pk * q))
            pk = pk * p
            if not out:
                return m
        raise TableBuildError(f"ad power of ({i}, {j}) not nilpotent within cap {cap}")


# -- functional wrappers matching the module-level operation names ------------


def multiply(a, b, table: StraighteningTable, engine_cache={}):
    eng = engine_cache.get(id(table))
    if eng is None:
        eng = PbwEngine(table, GenericOps())
        engine_cache[id(table)] = eng
    return eng.mul(a, b)


def commutator(i, j, table: StraighteningTable):
    return dict(table.rule(i, j).correction)
