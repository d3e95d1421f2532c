"""The single-mode fermionic quantum plane: normal forms and differentiation.

The algebra is generated by theta_1 .. theta_n with quadratic relations read
off from a Hecke R-matrix: the relation subspace in degree 2 is the image of
PR + 1/q.  For the supported (monomially triangular) inputs the relations
reduce to swap rules

    theta_b theta_a -> c(b, a) * theta_a theta_b   for b > a,
    theta_a theta_a -> 0,

so every word reduces to a single strictly increasing monomial with a scalar
coefficient, and the degree-m component has the binomial dimension C(n, m).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .coeff import LaurentPoly
from .rmatrix import HeckeData, braided_integer, braided_integer_bar
from .tensor import TensorOp


class NonPBWInputError(ValueError):
    """The degree-2 relations of the input do not reduce to monomial swap rules."""


class SwapRuleTable:
    """Swap rules for one mode: coefficients c(b, a) with b > a, diagonal kill.

    ``coeff[(b, a)]`` is the scalar with theta_b theta_a = c * theta_a theta_b.
    ``data`` remembers the R-matrix the rules were derived from, which the
    differentiation operators need.
    """

    def __init__(self, n: int, coeff: dict, data=None):
        self.n = n
        self.coeff = dict(coeff)
        self.data = data

    def reduce_word(self, word):
        """Reduce an index word to (coefficient, sorted monomial) or (0, None)."""
        word = list(word)
        c = LaurentPoly.one()
        # insertion sort; each swap applies one rule and strictly lowers the
        # inversion count, so this terminates
        for i in range(1, len(word)):
            j = i
            while j > 0 and word[j - 1] >= word[j]:
                if word[j - 1] == word[j]:
                    return LaurentPoly.zero(), None
                c = c * self.coeff[(word[j - 1], word[j])]
                word[j - 1], word[j] = word[j], word[j - 1]
                j -= 1
        return c, tuple(word)


class WedgeElement:
    """Linear combination of strictly increasing index monomials."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        out = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    out[tuple(mono)] = c
        self.terms = out

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def unit(cls, n):
        return cls(n, {(): LaurentPoly.one()})

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("mixed dimensions")
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                del out[k]
        return WedgeElement(self.n, out)

    def __sub__(self, other):
        return self + other.scale(LaurentPoly.from_int(-1))

    def scale(self, coeff):
        if isinstance(coeff, int):
            coeff = LaurentPoly.from_int(coeff)
        return WedgeElement(self.n, {k: c * coeff for k, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, WedgeElement) and self.n == other.n and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def degrees(self):
        return sorted({len(k) for k in self.terms})

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for mono in sorted(self.terms, key=lambda m: (len(m), m)):
            word = " ".join("t%d" % a for a in mono) or "1"
            bits.append("(%s) %s" % (self.terms[mono], word))
        return " + ".join(bits)


def derive_wedge_rules(data: HeckeData) -> SwapRuleTable:
    """Solve the degree-2 relation rows of PR + 1/q for monomial swap rules.

    Every column of the relation operator must be supported either on a single
    diagonal pair (a, a) or on one pair {(a, b), (b, a)}; anything else, or an
    inconsistent or non-Laurent solution, raises :class:`NonPBWInputError`.
    Completeness is certified by a rank check at exact rational sample points.
    """
    n = data.n
    ring = data.R.ring
    qinv = data.q.unit_inverse()
    M = data.PR() + TensorOp.identity(n, 2, ring=ring).scale(qinv)
    columns = {}
    for (row, col), c in M.entries.items():
        columns.setdefault(col, {})[row] = c

    rules = {}
    diag_seen = set()
    for col, rows in columns.items():
        support = set(rows)
        if support == {col} and col[0] == col[1]:
            diag_seen.add(col[0])
            continue
        pair = {tuple(sorted(col))}
        if {tuple(sorted(r)) for r in support} != pair or len(support) > 2:
            raise NonPBWInputError(
                "non-PBW Hecke input: relation column %r mixes monomials %r" % (col, support)
            )
        a, b = min(col), max(col)
        if a == b:
            raise NonPBWInputError("non-PBW Hecke input: degenerate diagonal column %r" % (col,))
        beta = rows.get((b, a))
        alpha = rows.get((a, b), LaurentPoly.zero())
        if not beta:
            raise NonPBWInputError(
                "non-PBW Hecke input: relation at column %r has no disordered term" % (col,)
            )
        quot = alpha.divide_exact(beta)
        if quot is None:
            raise NonPBWInputError(
                "non-PBW Hecke input: swap coefficient for %r is not Laurent" % (col,)
            )
        c = -quot
        prev = rules.get((b, a))
        if prev is not None and prev != c:
            raise NonPBWInputError(
                "non-PBW Hecke input: inconsistent rules for pair (%d, %d)" % (b, a)
            )
        rules[(b, a)] = c

    if diag_seen != set(range(1, n + 1)):
        raise NonPBWInputError("non-PBW Hecke input: missing diagonal relations")
    expected_pairs = {(b, a) for a in range(1, n + 1) for b in range(a + 1, n + 1)}
    if set(rules) != expected_pairs:
        raise NonPBWInputError("non-PBW Hecke input: missing swap rules")

    table = SwapRuleTable(n, rules, data)
    _verify_rule_span(M, table, n)
    return table


def _verify_rule_span(M: TensorOp, table: SwapRuleTable, n: int):
    """Relation rows and derived rules must span the same subspace.

    Each relation column reduces to zero under the rules (rules imply the
    relations), and the rank of the relation operator at sampled rational q
    equals the rule count n(n+1)/2 (relations imply the rules).
    """
    columns = {}
    for (row, col), c in M.entries.items():
        columns.setdefault(col, {})[row] = c
    for col, rows in columns.items():
        acc = {}
        for row, c in rows.items():
            rc, mono = table.reduce_word(row)
            if mono is None:
                continue
            s = acc.get(mono, LaurentPoly.zero()) + rc * c
            if s:
                acc[mono] = s
            else:
                acc.pop(mono, None)
        if acc:
            raise NonPBWInputError("derived rules do not annihilate relation column %r" % (col,))
    target = n * (n + 1) // 2
    for q0 in (Fraction(7, 5), Fraction(-3, 2)):
        vectors = []
        index = {ix: k for k, ix in enumerate(itertools.product(range(1, n + 1), repeat=2))}
        for col, rows in columns.items():
            vec = [Fraction(0)] * len(index)
            for row, c in rows.items():
                vec[index[row]] = c.evaluate(q0)
            vectors.append(vec)
        if _rat_rank(vectors) != target:
            raise NonPBWInputError(
                "relation space rank at q=%s is not n(n+1)/2; rules are incomplete" % q0
            )


def _rat_rank(vectors) -> int:
    """Rank of a list of Fraction vectors by Gaussian elimination."""
    rows = [list(v) for v in vectors if any(v)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rows and col < ncols:
        pivot = next((i for i, r in enumerate(rows) if r[col]), None)
        if pivot is None:
            col += 1
            continue
        rows[0], rows[pivot] = rows[pivot], rows[0]
        lead = rows[0]
        inv = Fraction(1) / lead[col]
        for i in range(1, len(rows)):
            f = rows[i][col]
            if f:
                fi = f * inv
                rows[i] = [a - fi * b for a, b in zip(rows[i], lead)]
        rank += 1
        rows = [r for r in rows[1:] if any(r)]
        col += 1
    return rank


def wedge_normal_form(word, table: SwapRuleTable) -> WedgeElement:
    """Fully reduce an index word to the strictly increasing basis."""
    for a in word:
        if not 1 <= a <= table.n:
            raise ValueError("index %r out of range 1..%d" % (a, table.n))
    c, mono = table.reduce_word(word)
    if mono is None:
        return WedgeElement.zero(table.n)
    return WedgeElement(table.n, {mono: c})


def reduce_element(x: WedgeElement, table: SwapRuleTable) -> WedgeElement:
    out = WedgeElement.zero(x.n)
    for mono, c in x.terms.items():
        out = out + wedgify(mono, c, table)
    return out


def wedgify(word, coeff, table: SwapRuleTable) -> WedgeElement:
    c, mono = table.reduce_word(word)
    if mono is None:
        return WedgeElement.zero(table.n)
    return WedgeElement(table.n, {mono: c * coeff})


def top_form(n: int) -> WedgeElement:
    """The monomial theta_1 ... theta_n spanning the top degree."""
    return WedgeElement(n, {tuple(range(1, n + 1)): LaurentPoly.one()})


def apply_operator(op: TensorOp, words: dict, table: SwapRuleTable) -> WedgeElement:
    """Apply an m-leg operator to a combination of length-m index words.

    ``words`` maps index tuples (not necessarily sorted) to coefficients; the
    operator is contracted against the word slots and the result is reduced.
    """
    vec = op.apply_to_vector(words)
    out = WedgeElement.zero(table.n)
    for word, c in vec.items():
        out = out + wedgify(word, c, table)
    return out


def braided_partial(i: int, x: WedgeElement, table: SwapRuleTable,
                    side: str = "left") -> WedgeElement:
    """Braided differentiation by theta_i, from the left or the right.

    Degree-m terms are contracted with the braided integer operator built from
    -1/q R: the first output leg (left) or last output leg (right) is set to
    ``i`` and dropped, and the remaining word is reduced to normal form.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if table.data is None:
        raise ValueError("rule table carries no R-matrix; derive it from HeckeData")
    n = x.n
    out = WedgeElement.zero(n)
    bold = table.data.bold_R()
    by_degree = {}
    for mono, c in x.terms.items():
        by_degree.setdefault(len(mono), {})[mono] = c
    for m, words in by_degree.items():
        if m == 0:
            continue
        op = braided_integer(m, bold) if side == "left" else braided_integer_bar(m, bold)
        vec = op.apply_to_vector(words)
        for row, c in vec.items():
            if side == "left":
                if row[0] != i:
                    continue
                rest = row[1:]
            else:
                if row[-1] != i:
                    continue
                rest = row[:-1]
            out = out + wedgify(rest, c, table)
    return out


def degree_rank(n: int, m: int, table: SwapRuleTable, q0=Fraction(7, 5)) -> int:
    """Rank of the reduced images of all degree-m words, at rational q0.

    Enumerates every length-m word over 1..n, reduces it, and computes the
    rank of the coefficient matrix over the increasing-monomial basis.
    """
    basis = {mono: k for k, mono in enumerate(itertools.combinations(range(1, n + 1), m))}
    vectors = []
    for word in itertools.product(range(1, n + 1), repeat=m):
        c, mono = table.reduce_word(word)
        if mono is None:
            continue
        vec = [Fraction(0)] * len(basis)
        vec[basis[mono]] = c.evaluate(q0)
        vectors.append(vec)
    if not vectors:
        return 0
    return _rat_rank(vectors)
