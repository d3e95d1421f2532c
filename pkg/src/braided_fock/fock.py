"""Semi-infinite states near the vacuum and the Heisenberg shift operators.

The vacuum is the ordered product of full columns omega^k = theta^(k)_1 ...
theta^(k)_n for k >= 0.  A state is a linear combination of configurations
that differ from the vacuum in finitely many columns: explicitly stored
columns below ``tail_start`` (each a strictly increasing, possibly partial,
index tuple) and implicit full columns from ``tail_start`` on.  Canonically,
``tail_start`` is as small as the content allows and empty columns are not
stored, so equal states compare equal as dictionaries.

The shift operator b_i replaces one generator theta^(j)_a by theta^(j+i)_a,
summed over every generator slot as a derivation, with the whole word then
normal-ordered.  The infinite sum over tail columns is cut down by a
conservative vanishing test: a slot shifted from column j to mode k is
dropped when every column between k and j (including k, excluding j) is
full, because the shifted generator then reorders onto a full column and a
product of n+1 generators of one mode vanishes; correction terms produced on
the way live strictly between k and j and die against the same full columns.
Every pruned slot can be logged, and pruning can be switched off entirely
inside a finite slot window for oracle comparisons.
"""

from __future__ import annotations

from .coeff import LaurentPoly, braided_int_scalar
from .modealg import ExchangeRules, ModeElement, normal_form, standard_rules


class FockState:
    """Finitely supported deviation from the semi-infinite vacuum.

    Construction canonicalizes: full columns adjoining the tail are absorbed
    into it, empty columns are dropped, and the stored ``tail_start`` is the
    largest of the per-term minimal tails, with shorter terms padded by
    explicit full columns.  Equal states therefore compare equal as maps.
    """

    __slots__ = ("n", "tail_start", "terms")

    def __init__(self, n: int, tail_start: int, terms=None):
        raw = {}
        full = tuple(range(1, n + 1))
        if terms:
            for cfg, c in terms.items():
                if not c:
                    continue
                cols = {int(m): tuple(ix) for m, ix in cfg if len(ix)}
                for ix in cols.values():
                    if not all(1 <= a <= n for a in ix) or any(
                        x >= y for x, y in zip(ix, ix[1:])
                    ):
                        raise ValueError(
                            "column content must be strictly increasing indices in 1..n"
                        )
                t = tail_start
                while cols.get(t - 1) == full:
                    t -= 1
                    del cols[t]
                if any(m >= t for m in cols):
                    raise ValueError("explicit column inside the implicit tail")
                key = (t, tuple(sorted(cols.items())))
                cur = raw.get(key)
                cur = c if cur is None else cur + c
                if cur:
                    raw[key] = cur
                else:
                    del raw[key]
        other = _assemble(n, raw, tail_start)
        self.n = n
        self.tail_start = other.tail_start
        self.terms = other.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, FockState):
            return NotImplemented
        if self.n != other.n:
            return False
        if not self.terms and not other.terms:
            return True
        return self.tail_start == other.tail_start and self.terms == other.terms

    def scale(self, coeff):
        if isinstance(coeff, int):
            coeff = LaurentPoly.from_int(coeff)
        return FockState(self.n, self.tail_start, {k: c * coeff for k, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, FockState) or self.n != other.n:
            raise ValueError("can only add states on the same space")
        raw = {}
        for s in (self, other):
            for key, c in _to_raw(s).items():
                cur = raw.get(key)
                cur = c if cur is None else cur + c
                if cur:
                    raw[key] = cur
                else:
                    del raw[key]
        return _assemble(self.n, raw, min(self.tail_start, other.tail_start))

    def __sub__(self, other):
        return self + other.scale(-1)

    def to_json(self):
        terms = []
        for cfg in sorted(self.terms):
            terms.append(
                {
                    "coeff": self.terms[cfg].to_json(),
                    "columns": {str(m): list(ix) for m, ix in cfg},
                }
            )
        return {"n": self.n, "tail_start": self.tail_start, "terms": terms}

    @classmethod
    def from_json(cls, obj):
        terms = {}
        for t in obj["terms"]:
            cfg = tuple(sorted((int(m), tuple(ix)) for m, ix in t["columns"].items()))
            terms[cfg] = LaurentPoly.from_json(t["coeff"])
        return cls(int(obj["n"]), int(obj["tail_start"]), terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for cfg in sorted(self.terms):
            cols = " ".join(
                "%d:%s" % (m, "".join(str(a) for a in ix)) for m, ix in cfg
            ) or "(vacuum)"
            bits.append("(%s) [%s | tail %d]" % (self.terms[cfg], cols, self.tail_start))
        return " + ".join(bits)


def vacuum(n: int, base: int = 0) -> FockState:
    """The undisturbed state: full columns from ``base`` on, nothing below."""
    return FockState(n, base, {(): LaurentPoly.one()})


def _full(n: int):
    return tuple(range(1, n + 1))


def _strip(cols: dict, window_end: int, n: int):
    """Canonical (tail_start, config) for explicit columns below window_end."""
    full = _full(n)
    t = window_end
    while cols.get(t - 1) == full:
        t -= 1
    cfg = tuple(sorted((m, ix) for m, ix in cols.items() if m < t and ix))
    return t, cfg


def _to_raw(s: FockState) -> dict:
    raw = {}
    for cfg, c in s.terms.items():
        t, cfg2 = _strip(dict(cfg), s.tail_start, s.n)
        key = (t, cfg2)
        cur = raw.get(key)
        cur = c if cur is None else cur + c
        if cur:
            raw[key] = cur
        else:
            del raw[key]
    return raw


def _make_state(n: int, tail_start: int, terms: dict) -> FockState:
    s = FockState.__new__(FockState)
    s.n = n
    s.tail_start = tail_start
    s.terms = terms
    return s


def _assemble(n: int, raw: dict, fallback_tail: int) -> FockState:
    """Build a canonical state from {(per-term tail, config): coeff}."""
    if not raw:
        return _make_state(n, fallback_tail, {})
    full = _full(n)
    T = max(t for t, _ in raw)
    terms = {}
    for (t, cfg), c in raw.items():
        cfg2 = cfg + tuple((m, full) for m in range(t, T))
        cfg2 = tuple(sorted(cfg2))
        cur = terms.get(cfg2)
        cur = c if cur is None else cur + c
        if cur:
            terms[cfg2] = cur
        else:
            del terms[cfg2]
    if not terms:
        return _make_state(n, fallback_tail, {})
    return _make_state(n, T, terms)


def _word_to_cols(word) -> dict:
    cols = {}
    for m, a in word:
        cols.setdefault(m, []).append(a)
    return {m: tuple(v) for m, v in cols.items()}


def _flatten(cols: dict):
    """Word of all generators in order; also the start offset of each column."""
    word = []
    offsets = {}
    for m in sorted(cols):
        offsets[m] = len(word)
        word.extend((m, a) for a in cols[m])
    return word, offsets


def multiply_left(x: ModeElement, s: FockState, rules: ExchangeRules = None,
                  budget=None) -> FockState:
    """Normal-order a mode element against a state from the left."""
    rules = rules or standard_rules(s.n)
    full = _full(s.n)
    raw = {}
    for cfg, sc in s.terms.items():
        for xword, xc in x.terms.items():
            top = max((m for m, _ in xword), default=s.tail_start - 1)
            W = max(s.tail_start, top + 1)
            cols = dict(cfg)
            for k in range(s.tail_start, W):
                cols[k] = full
            flat, _ = _flatten(cols)
            word = tuple(xword) + tuple(flat)
            coeff = sc * xc
            nf = normal_form(ModeElement.from_word(s.n, word, coeff), rules, budget=budget)
            for w2, c2 in nf.terms.items():
                key = _strip(_word_to_cols(w2), W, s.n)
                cur = raw.get(key)
                cur = c2 if cur is None else cur + c2
                if cur:
                    raw[key] = cur
                else:
                    del raw[key]
    return _assemble(s.n, raw, s.tail_start)


def _prunable(cols: dict, tail_from: int, n: int, j: int, k: int) -> bool:
    """True when the shifted generator provably dies against full columns."""
    rng = range(k, j) if k < j else range(j + 1, k + 1)
    for c in rng:
        if c >= tail_from:
            continue
        if len(cols.get(c, ())) != n:
            return False
    return True


def apply_b(i: int, s: FockState, rules: ExchangeRules = None, prune: bool = True,
            slot_window=None, columns=None, log_pruned=None, budget=None) -> FockState:
    """The shift derivation b_i applied to a state.

    ``slot_window=(lo, hi)`` restricts the generator slots to columns in the
    given range and materializes the tail through ``hi``; with ``prune=False``
    this is the brute-force oracle.  ``columns`` restricts the slots to the
    listed columns only (the per-column pieces of the derivation).  Pruned
    slots are appended to ``log_pruned`` when a list is supplied.
    """
    if i == 0:
        raise ValueError("shift must be nonzero")
    if columns is not None and not columns:
        return _make_state(s.n, s.tail_start, {})
    rules = rules or standard_rules(s.n)
    n = s.n
    full = _full(n)
    raw = {}
    for cfg, sc in s.terms.items():
        T = s.tail_start
        if slot_window is not None:
            lo, hi = slot_window
            T_impl = max(T, hi + 1)
        elif columns is not None:
            T_impl = max(T, max(columns) + 1)
        elif i < 0:
            T_impl = T - i
        else:
            T_impl = T
        cols = dict(cfg)
        for c in range(T, T_impl):
            cols[c] = full
        for j in sorted(cols):
            if slot_window is not None and not (lo <= j <= hi):
                continue
            if columns is not None and j not in columns:
                continue
            for pos, a in enumerate(cols[j]):
                k = j + i
                if prune and _prunable(cols, T_impl, n, j, k):
                    if log_pruned is not None:
                        log_pruned.append(
                            {"column": j, "index": a, "target_mode": k, "term": list(map(list, cfg))}
                        )
                    continue
                W = max(T_impl, k + 1)
                cols2 = dict(cols)
                for c in range(T_impl, W):
                    cols2[c] = full
                flat, offsets = _flatten(cols2)
                flat[offsets[j] + pos] = (k, a)
                nf = normal_form(ModeElement.from_word(n, tuple(flat), sc), rules, budget=budget)
                for w2, c2 in nf.terms.items():
                    key = _strip(_word_to_cols(w2), W, n)
                    cur = raw.get(key)
                    cur = c2 if cur is None else cur + c2
                    if cur:
                        raw[key] = cur
                    else:
                        del raw[key]
    return _assemble(n, raw, s.tail_start)


def apply_b_to_columns(i: int, s: FockState, cols, rules: ExchangeRules = None,
                       budget=None) -> FockState:
    """The Leibniz sum restricted to slots in the listed columns."""
    return apply_b(i, s, rules=rules, columns=tuple(cols), budget=budget)


def translate(s: FockState, d: int) -> FockState:
    """Shift every mode (explicit and tail) by d."""
    terms = {tuple((m + d, ix) for m, ix in cfg): c for cfg, c in s.terms.items()}
    return FockState(s.n, s.tail_start + d, terms)


def scalar_part(s: FockState, base: int = 0):
    """The coefficient c with s = c * vacuum(n, base), or None if deviations remain."""
    if not s.terms:
        return LaurentPoly.zero()
    if s.tail_start == base and set(s.terms) == {()}:
        return s.terms[()]
    return None


def commutator_on_vacuum(i: int, j: int, n: int, rules: ExchangeRules = None,
                         window=None, log_pruned=None, budget=None):
    """(b_i b_{-j} - b_{-j} b_i) applied to the vacuum.

    Returns (scalar, state): ``scalar`` is the Laurent coefficient when the
    result is a multiple of the vacuum and None otherwise.  ``window=W`` runs
    the computation without pruning, with slots restricted to columns in
    [-W, W + max(i, j)].
    """
    if not (i >= 1 and j >= 1):
        raise ValueError("commutator_on_vacuum expects positive i and j")
    rules = rules or standard_rules(n)
    v = vacuum(n, 0)
    kw = {"rules": rules, "budget": budget}
    if window is not None:
        kw["prune"] = False
        kw["slot_window"] = (-window, window + max(i, j))
    else:
        kw["log_pruned"] = log_pruned
    first = apply_b(i, apply_b(-j, v, **kw), **kw)
    second = apply_b(-j, apply_b(i, v, **kw), **kw)
    result = first - second
    return scalar_part(result), result


def heisenberg_matches(scalar: LaurentPoly, i: int, j: int, n: int) -> bool:
    """Denominator-cleared Heisenberg relation test.

    Checks scalar * (1 - q^(-2i)) = [i == j] * i * (1 - q^(-2 n i)) exactly,
    which is the cleared form of the expected commutator value.
    """
    one = LaurentPoly.one()
    lhs = scalar * (one - LaurentPoly.q_power(-2 * i))
    if i != j:
        rhs = LaurentPoly.zero()
    else:
        rhs = (one - LaurentPoly.q_power(-2 * n * i)) * i
    return lhs == rhs


def lemma33_coefficient(n: int, rules: ExchangeRules = None) -> LaurentPoly:
    """Engine value of the column-0 piece: b_2 applied to b_{-2} of column 0."""
    rules = rules or standard_rules(n)
    s = apply_b_to_columns(-2, vacuum(n, 0), [0], rules=rules)
    out = apply_b(2, s, rules=rules)
    c = scalar_part(out)
    if c is None:
        raise ArithmeticError("column-0 contribution is not a multiple of the vacuum")
    return c


def lemma33_closed_form(n: int) -> LaurentPoly:
    """[n; q^-2] + (1 - q^-2)([n-1; q^-4] - q^(-2(n-1)) [n-1; q^-2])."""
    one = LaurentPoly.one()
    qm2 = LaurentPoly.q_power(-2)
    return braided_int_scalar(n, -2) + (one - qm2) * (
        braided_int_scalar(n - 1, -4)
        - LaurentPoly.q_power(-2 * (n - 1)) * braided_int_scalar(n - 1, -2)
    )


def lemma33_second_term(n: int, rules: ExchangeRules = None) -> LaurentPoly:
    """Engine value of the column-1 piece: b_2 applied to b_{-2} of column 1."""
    rules = rules or standard_rules(n)
    s = apply_b_to_columns(-2, vacuum(n, 0), [1], rules=rules)
    out = apply_b(2, s, rules=rules)
    c = scalar_part(out)
    if c is None:
        raise ArithmeticError("column-1 contribution is not a multiple of the vacuum")
    return c


def lemma33_second_term_expected(n: int) -> LaurentPoly:
    """q^(-2(n-1)) [n; q^-2]."""
    return LaurentPoly.q_power(-2 * (n - 1)) * braided_int_scalar(n, -2)
