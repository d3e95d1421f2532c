"""Normal ordering for words in the multi-mode exchange algebra.

Generators are pairs (mode, index).  A word is normal when modes are
nondecreasing left to right and, inside each equal-mode run, indices are
strictly increasing.  Reordering uses three families of rules:

  * same mode: the swap rules of the single-mode quantum plane, plus the
    diagonal kill theta_a theta_a -> 0;
  * adjacent modes (gap 1): theta^(i) theta^(i-1) is rewritten through the
    braided anticommutator, with no correction terms;
  * general gap g >= 2: the same leading rewrite plus correction terms
    supported on mode pairs (j+s, i-s) strictly inside the gap, and, for even
    gaps, on the middle mode.

Every rewrite strictly decreases the pair (mode inversion weight, index
inversion count) lexicographically, which gives termination: the mode weight
sums mode differences over inverted positions, correction pairs move modes
toward the middle of the gap, and convexity keeps contributions from
untouched positions from growing.  Reduction processes pending words largest
measure first, so each distinct word is expanded at most once per call.  The
rewrite budget guards the length of sequential rewrite chains, the quantity
the termination measure bounds; exceeding it raises with the offending word.
"""

from __future__ import annotations

import heapq
import os
from functools import lru_cache

from .coeff import LaurentPoly
from .rmatrix import HeckeData, hecke_PR_inverse, standard_sln_R
from .tensor import TensorOp
from .wedge import derive_wedge_rules

DEFAULT_BUDGET = 10**7

VARIANTS = ("theorem21", "gerv")


class BudgetExceededError(RuntimeError):
    def __init__(self, word, budget):
        super().__init__("rewrite budget %d exceeded while reducing %r" % (budget, word))
        self.word = word
        self.budget = budget


def resolve_budget(budget=None) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get("BRAIDED_FOCK_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class ModeElement:
    """Linear combination of mode words with Laurent coefficients.

    A word is a tuple of (mode, index) pairs; the empty word is the unit.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        out = {}
        if terms:
            for word, c in terms.items():
                if c:
                    out[tuple(word)] = c
        self.terms = out

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def unit(cls, n):
        return cls(n, {(): LaurentPoly.one()})

    @classmethod
    def from_word(cls, n, word, coeff=None):
        return cls(n, {tuple(word): coeff if coeff is not None else LaurentPoly.one()})

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("mixed dimensions")
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                del out[w]
        return ModeElement(self.n, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, coeff):
        if isinstance(coeff, int):
            coeff = LaurentPoly.from_int(coeff)
        return ModeElement(self.n, {w: c * coeff for w, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, ModeElement) and self.n == other.n and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def to_json(self):
        out = []
        for w in sorted(self.terms):
            out.append({"coeff": self.terms[w].to_json(), "word": [list(g) for g in w]})
        return {"n": self.n, "terms": out}

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms):
            word = " ".join("t[%d]_%d" % g for g in w) or "1"
            bits.append("(%s) %s" % (self.terms[w], word))
        return " + ".join(bits)


def _columns_of(op) -> dict:
    cols = {}
    for (row, col), c in op.entries.items():
        cols.setdefault(col, []).append((row, c))
    for col in cols:
        cols[col].sort(key=lambda rc: rc[0])
    return cols


class ExchangeRules:
    """Rewrite rules for one Hecke R-matrix, in either rule variant.

    ``theorem21`` is the full mode-exchange algebra with correction terms;
    ``gerv`` is the plain braided tensor product where all cross-mode pairs
    reorder with the leading rule alone.
    """

    def __init__(self, data: HeckeData, variant: str = "theorem21"):
        if variant not in VARIANTS:
            raise ValueError("unknown rules variant %r" % variant)
        self.data = data
        self.n = data.n
        self.variant = variant
        self.swap = derive_wedge_rules(data)
        pr = data.PR()
        qinv = data.q.unit_inverse()
        self.pr_cols = _columns_of(pr)
        self.pbold_cols = _columns_of(pr.scale(-qinv))
        one = TensorOp.identity(self.n, 2, ring=data.R.ring)
        self.plus_pbold_cols = _columns_of(one + pr.scale(-qinv))
        self.pr_inv_cols = _columns_of(hecke_PR_inverse(data))
        self.q = data.q
        self.q_inv = qinv
        self.qm2_minus_1 = qinv * qinv - LaurentPoly.one()
        self._gap_coeffs = {}
        self._expansions = {}

    def _descendant_factor(self, s: int) -> LaurentPoly:
        # weight of the depth-s correction pair; the one-step recursion forces
        # the geometric weight q^(-2(s-1)) because (1 + PbR)(1 + (q - 1/q)PR)
        # collapses to q^(-2) (1 + PbR) under the quadratic relation
        f = self._gap_coeffs.get(s)
        if f is None:
            f = self.qm2_minus_1 * self.q_inv ** (2 * (s - 1))
            self._gap_coeffs[s] = f
        return f

    def cross_expansion(self, gap: int, a: int, b: int):
        """Rewrite data for theta^(i)_a theta^(j)_b with i - j = gap > 0.

        Returns tuples (dm1, dm2, c, d, coeff): the rewritten pair is
        theta^(j+dm1)_c theta^(j+dm2)_d with the given coefficient.
        """
        key = (gap, a, b)
        cached = self._expansions.get(key)
        if cached is not None:
            return cached
        out = []
        for (c, d), coeff in self.pbold_cols.get((a, b), ()):
            out.append((0, gap, c, d, coeff))
        if self.variant == "theorem21" and gap >= 2:
            s = 1
            while 2 * s < gap:
                f = self._descendant_factor(s)
                for (c, d), coeff in self.plus_pbold_cols.get((a, b), ()):
                    out.append((s, gap - s, c, d, coeff * f))
                s += 1
            if gap % 2 == 0:
                mid = gap // 2
                coeff = self.qm2_minus_1 * self.q_inv ** (gap - 2)
                out.append((mid, mid, a, b, coeff))
        out = tuple(out)
        self._expansions[key] = out
        return out


@lru_cache(maxsize=None)
def standard_rules(n: int, variant: str = "theorem21") -> ExchangeRules:
    return ExchangeRules(standard_sln_R(n), variant)


# ---- normal ordering --------------------------------------------------------


def word_measure(word):
    """(mode inversion weight, same-mode index inversion count)."""
    mu = nu = 0
    L = len(word)
    for p in range(L):
        mp, ap = word[p]
        for t in range(p + 1, L):
            mt, at = word[t]
            if mp > mt:
                mu += mp - mt
            elif mp == mt and ap > at:
                nu += 1
    return mu, nu


def _child_measure(word, p, g1, g2, mu, nu):
    """Measure of ``word`` with positions p, p+1 replaced by g1, g2."""
    o1, o2 = word[p], word[p + 1]
    m_o1, a_o1 = o1
    m_o2, a_o2 = o2
    m_n1, a_n1 = g1
    m_n2, a_n2 = g2
    # internal pair
    if m_o1 > m_o2:
        mu -= m_o1 - m_o2
    elif m_o1 == m_o2 and a_o1 > a_o2:
        nu -= 1
    if m_n1 > m_n2:
        mu += m_n1 - m_n2
    elif m_n1 == m_n2 and a_n1 > a_n2:
        nu += 1
    # pairs with untouched positions
    for t, (mt, at) in enumerate(word):
        if t == p or t == p + 1:
            continue
        if t < p:
            for mo, ao, mn, an in ((m_o1, a_o1, m_n1, a_n1), (m_o2, a_o2, m_n2, a_n2)):
                if mt > mo:
                    mu -= mt - mo
                elif mt == mo and at > ao:
                    nu -= 1
                if mt > mn:
                    mu += mt - mn
                elif mt == mn and at > an:
                    nu += 1
        else:
            for mo, ao, mn, an in ((m_o1, a_o1, m_n1, a_n1), (m_o2, a_o2, m_n2, a_n2)):
                if mo > mt:
                    mu -= mo - mt
                elif mo == mt and ao > at:
                    nu -= 1
                if mn > mt:
                    mu += mn - mt
                elif mn == mt and an > at:
                    nu += 1
    return mu, nu


def _bad_pair(word, strategy):
    rng = range(len(word) - 1)
    if strategy == "rightmost":
        rng = reversed(rng)
    for p in rng:
        m1, a1 = word[p]
        m2, a2 = word[p + 1]
        if m1 > m2 or (m1 == m2 and a1 >= a2):
            return p
    return None


def _expand(word, p, rules: ExchangeRules):
    """One rewrite of the bad adjacent pair at position p; yields (word, coeff, gens)."""
    (m1, a1), (m2, a2) = word[p], word[p + 1]
    head, tail = word[:p], word[p + 2:]
    out = []
    if m1 == m2:
        if a1 == a2:
            return out
        c = rules.swap.coeff[(a1, a2)]
        g1, g2 = (m1, a2), (m1, a1)
        out.append((head + (g1, g2) + tail, c, g1, g2))
        return out
    for dm1, dm2, c, d, coeff in rules.cross_expansion(m1 - m2, a1, a2):
        g1, g2 = (m2 + dm1, c), (m2 + dm2, d)
        out.append((head + (g1, g2) + tail, coeff, g1, g2))
    return out


class ReductionStats:
    """Work accounting for one reduction.

    ``depth`` is the longest sequential rewrite chain from an input word to
    any word it produced; the budget guards this quantity, which the strictly
    decreasing termination measure bounds.  ``expansions`` is the total number
    of distinct words rewritten (tree size after merging like terms).
    """

    __slots__ = ("depth", "expansions")

    def __init__(self, depth=0, expansions=0):
        self.depth = depth
        self.expansions = expansions

    def __repr__(self):
        return "ReductionStats(depth=%d, expansions=%d)" % (self.depth, self.expansions)


def normal_form_stats(x: ModeElement, rules: ExchangeRules, strategy: str = "leftmost",
                      budget=None):
    """Reduce to normal form; returns (element, :class:`ReductionStats`).

    Pending words are processed largest measure first and like terms are
    merged eagerly, so every distinct word is expanded at most once per call;
    all contributions to a word arrive before it is expanded, which makes its
    recorded chain depth final.
    """
    budget = resolve_budget(budget)
    done = {}
    pending = {}
    heap = []

    def push(word, coeff, depth, mu, nu):
        cur = pending.get(word)
        if cur is None:
            pending[word] = [coeff, depth]
            heapq.heappush(heap, (-mu, -nu, word))
        else:
            cur[0] = cur[0] + coeff
            if depth > cur[1]:
                cur[1] = depth

    for word, coeff in x.terms.items():
        if _bad_pair(word, strategy) is None:
            s = done.get(word)
            done[word] = coeff if s is None else s + coeff
        else:
            mu, nu = word_measure(word)
            push(word, coeff, 0, mu, nu)

    stats = ReductionStats()
    while heap:
        neg_mu, neg_nu, word = heapq.heappop(heap)
        entry = pending.pop(word, None)
        if entry is None or not entry[0]:
            continue
        coeff, depth = entry
        if depth + 1 > budget:
            raise BudgetExceededError(word, budget)
        stats.expansions += 1
        if depth + 1 > stats.depth:
            stats.depth = depth + 1
        p = _bad_pair(word, strategy)
        mu, nu = -neg_mu, -neg_nu
        for child, c, g1, g2 in _expand(word, p, rules):
            cc = coeff * c
            if not cc:
                continue
            if _bad_pair(child, strategy) is None:
                s = done.get(child)
                s = cc if s is None else s + cc
                if s:
                    done[child] = s
                else:
                    del done[child]
            else:
                cmu, cnu = _child_measure(word, p, g1, g2, mu, nu)
                push(child, cc, depth + 1, cmu, cnu)

    return ModeElement(x.n, done), stats


def normal_form(x: ModeElement, rules: ExchangeRules, strategy: str = "leftmost",
                budget=None) -> ModeElement:
    return normal_form_stats(x, rules, strategy, budget)[0]


def normal_form_word(word, rules: ExchangeRules, coeff=None, strategy: str = "leftmost",
                     budget=None) -> ModeElement:
    return normal_form(ModeElement.from_word(rules.n, word, coeff), rules, strategy, budget)


def gerv_normal_form(x: ModeElement, n: int = None, budget=None) -> ModeElement:
    """Normal form in the plain braided tensor product (no correction terms)."""
    return normal_form(x, standard_rules(n or x.n, "gerv"), budget=budget)


# ---- generators and consistency checks ---------------------------------------


def r_anticommutator(rules: ExchangeRules, g1, g2) -> ModeElement:
    """theta^(i)_a theta^(j)_b + (1/q) sum_cd (PR)^cd_ab theta^(j)_c theta^(i)_d, unreduced."""
    (i, a), (j, b) = g1, g2
    terms = {((i, a), (j, b)): LaurentPoly.one()}
    for (c, d), coeff in rules.pr_cols.get((a, b), ()):
        w = ((j, c), (i, d))
        s = terms.get(w)
        v = rules.q_inv * coeff
        terms[w] = v if s is None else s + v
    return ModeElement(rules.n, terms)


def check_moderel(i: int, j: int, n: int, rules: ExchangeRules = None) -> bool:
    """Exchange-relation consistency for one mode pair i > j.

    Normal-orders both sides of

        theta^j theta^i PR + q theta^i theta^j
            = theta^(j+1) theta^(i-1) (PR)^{-1} + (1/q) theta^(i-1) theta^(j+1)

    componentwise and compares exactly.
    """
    if i <= j:
        raise ValueError("need i > j")
    rules = rules or standard_rules(n)
    one = LaurentPoly.one()
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            lhs = {}
            for (c, d), coeff in rules.pr_cols.get((a, b), ()):
                _acc(lhs, ((j, c), (i, d)), coeff)
            _acc(lhs, ((i, a), (j, b)), rules.q * one)
            rhs = {}
            for (c, d), coeff in rules.pr_inv_cols.get((a, b), ()):
                _acc(rhs, ((j + 1, c), (i - 1, d)), coeff)
            _acc(rhs, ((i - 1, a), (j + 1, b)), rules.q_inv * one)
            L = normal_form(ModeElement(n, lhs), rules)
            R = normal_form(ModeElement(n, rhs), rules)
            if L != R:
                return False
    return True


def check_modeind(i: int, j: int, n: int, rules: ExchangeRules = None) -> bool:
    """Closed-form correction terms against the one-step recursion, gap >= 2.

    Verifies componentwise that

        {theta^i, theta^j}_R = {theta^(i-1), theta^(j+1)}_R (1 + (q - 1/q) PR)
            + (1/q^2 - 1) theta^(j+1) theta^(i-1) (1 - (1/q) PR)

    after normal ordering both sides.
    """
    if i - j < 2:
        raise ValueError("need i - j >= 2")
    rules = rules or standard_rules(n)
    lam = rules.q - rules.q_inv
    ident = TensorOp.identity(n, 2, ring=rules.data.R.ring)
    pr = rules.data.PR()
    m1_cols = _columns_of(ident + pr.scale(lam))
    m2_cols = _columns_of(ident - pr.scale(rules.q_inv))
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            lhs = normal_form(r_anticommutator(rules, (i, a), (j, b)), rules)
            rhs = ModeElement.zero(n)
            for (c, d), coeff in m1_cols.get((a, b), ()):
                rhs = rhs + r_anticommutator(rules, (i - 1, c), (j + 1, d)).scale(coeff)
            extra = {}
            for (c, d), coeff in m2_cols.get((a, b), ()):
                _acc(extra, ((j + 1, c), (i - 1, d)), rules.qm2_minus_1 * coeff)
            rhs = normal_form(rhs + ModeElement(n, extra), rules)
            if lhs != rhs:
                return False
    return True


def check_modeanticom(i: int, j: int, n: int, rules: ExchangeRules = None) -> bool:
    """(theta^i theta^j + theta^j theta^i)(PR + 1/q) normal-orders to zero."""
    if i <= j:
        raise ValueError("need i > j")
    rules = rules or standard_rules(n)
    m = rules.data.PR() + TensorOp.identity(n, 2, ring=rules.data.R.ring).scale(rules.q_inv)
    cols = _columns_of(m)
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            acc = {}
            for (c, d), coeff in cols.get((a, b), ()):
                _acc(acc, ((i, c), (j, d)), coeff)
                _acc(acc, ((j, c), (i, d)), coeff)
            if normal_form(ModeElement(n, acc), rules):
                return False
    return True


def _acc(terms: dict, word, coeff):
    s = terms.get(word)
    s = coeff if s is None else s + coeff
    if s:
        terms[word] = s
    else:
        terms.pop(word, None)


def shift_leibniz(i: int, x: ModeElement) -> ModeElement:
    """Apply the mode shift by i as a derivation over generator slots, unreduced."""
    out = {}
    for word, c in x.terms.items():
        for p, (m, a) in enumerate(word):
            _acc(out, word[:p] + ((m + i, a),) + word[p + 1:], c)
    return ModeElement(x.n, out)


def translate_element(d: int, x: ModeElement) -> ModeElement:
    return ModeElement(x.n, {tuple((m + d, a) for m, a in w): c for w, c in x.terms.items()})
