"""Structural classifiers over both instantiations.

Finite instances are decided exhaustively (pencils, 0-simplicity, pure
infiniteness, fundamentality, classification onto a symmetric inverse
monoid).  For the prefix-map monoids the globally quantified flags are
reported as "sampled": each sampled idempotent gets a constructive,
machine-checked witness, and the report records the schema and sample
count instead of claiming an exhaustive proof.
"""

import random
from dataclasses import dataclass, field

from .core import AlgebraError
from . import cuntz as cz
from . import duality
from .cuntz import CuntzMonoid
from .finite import FiniteMonoid


class NoPencil(AlgebraError):
    pass


class NotClassifiable(AlgebraError):
    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class OutOfClass(AlgebraError):
    """Spatial realization asked outside the classifiable class."""


@dataclass
class Pencil:
    source: object
    target: object
    elements: list


@dataclass
class Flag:
    value: bool
    mode: str  # "exact" or "sampled"
    detail: object = None

    def to_json(self):
        return {"value": self.value, "mode": self.mode, "detail": self.detail}


@dataclass
class AnalysisReport:
    instance: str
    flags: dict = field(default_factory=dict)
    classification: object = None
    units: object = None

    def to_json(self):
        return {"instance": self.instance,
                "flags": {k: v.to_json() for k, v in sorted(self.flags.items())},
                "classification": self.classification,
                "units": self.units}


# ---------------------------------------------------------------------------
# Pencils and 0-simplifying
# ---------------------------------------------------------------------------

def find_pencil(S, e, f):
    """Elements x_i with join of d(x_i) exactly e and every r(x_i) <= f."""
    if e == S.zero or f == S.zero:
        raise NoPencil("pencils are defined between non-zero idempotents")
    if isinstance(S, CuntzMonoid):
        return Pencil(e, f, [S.transfer_witness(e, f)])
    candidates = [x for x in S.elements
                  if x != S.zero and S.leq(S.domain(x), e)
                  and S.leq(S.range(x), f)]
    chosen = []
    for atom in S.atoms_below(e):
        for x in candidates:
            if S.leq(atom, S.domain(x)):
                if x not in chosen:
                    chosen.append(x)
                break
        else:
            raise NoPencil(f"atom {atom} of {e} cannot be covered inside {f}")
    return Pencil(e, f, chosen)


def check_pencil(S, pencil):
    dom = S.zero
    for x in pencil.elements:
        if not S.leq(S.range(x), pencil.target):
            return False
        dom = S.join(dom, S.domain(x))
    return dom == pencil.source


def vee_ideal(S, s):
    """The smallest two-sided ideal containing s that is closed under
    compatible binary joins (finite instances only)."""
    ideal = {S.zero, s}
    changed = True
    while changed:
        changed = False
        for m in list(ideal):
            for t in S.elements:
                for p in (S.multiply(t, m), S.multiply(m, t)):
                    if p not in ideal:
                        ideal.add(p)
                        changed = True
        for a in list(ideal):
            for b in list(ideal):
                if S.compatible(a, b):
                    j = S.raw_join(a, b)
                    if j not in ideal:
                        ideal.add(j)
                        changed = True
    return ideal


def is_zero_simplifying(S, rng=None, samples=100):
    """Whether the pencil preorder relates every ordered pair of non-zero
    idempotents.  Returns (Flag)."""
    if isinstance(S, CuntzMonoid):
        rng = rng or random.Random(0)
        tested = 0
        for _ in range(samples):
            e = cz.random_clopen(rng, S)
            f = cz.random_clopen(rng, S)
            pencil = find_pencil(S, e, f)
            if not check_pencil(S, pencil):
                return Flag(False, "sampled",
                            {"counterexample": [str(e), str(f)]})
            tested += 1
        return Flag(True, "sampled",
                    {"schema": "transfer map into the first cylinder of f",
                     "samples": tested})
    for e in S.nonzero_idempotents():
        for f in S.nonzero_idempotents():
            try:
                find_pencil(S, e, f)
            except NoPencil:
                return Flag(False, "exact",
                            {"counterexample": [str(e), str(f)]})
    return Flag(True, "exact", {"checked_pairs": len(S.nonzero_idempotents()) ** 2})


def is_zero_simple(S, rng=None, samples=100):
    """Whether every non-zero idempotent pair (e, f) admits x with
    d(x) = e and r(x) <= f."""
    if isinstance(S, CuntzMonoid):
        rng = rng or random.Random(0)
        for _ in range(samples):
            e = cz.random_clopen(rng, S)
            f = cz.random_clopen(rng, S)
            x = S.transfer_witness(e, f)
            if S.domain(x) != e or not S.leq(S.range(x), f):
                return Flag(False, "sampled",
                            {"counterexample": [str(e), str(f)]})
        return Flag(True, "sampled",
                    {"schema": "transfer map", "samples": samples})
    for e in S.nonzero_idempotents():
        for f in S.nonzero_idempotents():
            if not any(S.domain(x) == e and S.leq(S.range(x), f)
                       for x in S.elements if x != S.zero):
                return Flag(False, "exact",
                            {"counterexample": [str(e), str(f)]})
    return Flag(True, "exact", {"checked_pairs": len(S.nonzero_idempotents()) ** 2})


def is_zero_disjunctive(S, rng=None, samples=100):
    """Boolean idempotent algebras separate below: for 0 < f < e the
    element e * complement(f) is a non-zero witness disjoint from f."""
    if isinstance(S, CuntzMonoid):
        rng = rng or random.Random(0)
        for _ in range(samples):
            e = cz.random_clopen(rng, S)
            f = S.raw_meet(e, cz.random_clopen(rng, S))
            if f == S.zero or f == e:
                continue
            g = S.multiply(e, S.complement(f))
            if g == S.zero or S.multiply(g, f) != S.zero:
                return Flag(False, "sampled",
                            {"counterexample": [str(e), str(f)]})
        return Flag(True, "sampled",
                    {"schema": "relative complement", "samples": samples})
    for e in S.nonzero_idempotents():
        for f in S.nonzero_idempotents():
            if f == e or not S.leq(f, e):
                continue
            g = S.multiply(e, S.complement(f))
            if g == S.zero or S.multiply(g, f) != S.zero:
                return Flag(False, "exact",
                            {"counterexample": [str(e), str(f)]})
    return Flag(True, "exact", {"schema": "relative complement"})


def properly_infinite_pair(S, e):
    """Finite search for x, y with d(x) = d(y) = e and orthogonal ranges
    inside e; None when no such pair exists."""
    below = [x for x in S.elements
             if x != S.zero and S.domain(x) == e and S.leq(S.range(x), e)]
    for x in below:
        for y in below:
            if S.multiply(S.range(x), S.range(y)) == S.zero:
                return x, y
    return None


def is_purely_infinite(S, rng=None, samples=100):
    if isinstance(S, CuntzMonoid):
        rng = rng or random.Random(0)
        for _ in range(samples):
            e = cz.random_clopen(rng, S)
            x, y = S.properly_infinite_witness(e)
            ok = (S.domain(x) == e and S.domain(y) == e
                  and S.orthogonal(S.range(x), S.range(y))
                  and S.leq(S.join(S.range(x), S.range(y)), e))
            if not ok:
                return Flag(False, "sampled", {"counterexample": str(e)})
        return Flag(True, "sampled",
                    {"schema": "child-cylinder pair", "samples": samples})
    for e in sorted(S.nonzero_idempotents(), key=str):
        if properly_infinite_pair(S, e) is None:
            return Flag(False, "exact", {"counterexample": str(e)})
    return Flag(True, "exact", {})


def is_fundamental_flag(S, rng=None, samples=100):
    if isinstance(S, CuntzMonoid):
        rng = rng or random.Random(0)
        for _ in range(samples):
            s = cz.random_prefix_map(rng, S)
            depth = max([len(d) for d, _ in s.pairs] + [0]) + 2
            if S.commutes_with_cylinders(s, depth) and not S.is_idempotent(s):
                return Flag(False, "sampled", {"counterexample": str(s)})
        return Flag(True, "sampled",
                    {"schema": "cylinder commutation implies idempotent",
                     "samples": samples})
    witness = duality.centralizer_counterexample(S)
    if witness is None:
        return Flag(True, "exact", {})
    return Flag(False, "exact", {"counterexample": str(witness)})


# ---------------------------------------------------------------------------
# Classification and spatial realization
# ---------------------------------------------------------------------------

@dataclass
class Classification:
    n: int
    mapping: dict  # element -> PartialBijection in I_n


def classify(S):
    """Identify a fundamental 0-simplifying finite instance with the
    symmetric inverse monoid on its E-atoms, with a verified isomorphism."""
    if not duality.is_fundamental(S):
        raise NotClassifiable("not fundamental")
    if not is_zero_simplifying(S).value:
        raise NotClassifiable("not 0-simplifying")
    n = len(duality.eatoms(S))
    mapping = {s: duality.theta(S, s) for s in S.elements}
    images = set(mapping.values())
    from .finite import SymmetricInverseMonoid
    target = SymmetricInverseMonoid(n)
    if len(images) != len(S.elements) or images != set(target.elements):
        raise NotClassifiable("conjugation action is not bijective")
    for s in S.elements:
        if mapping[S.inverse(s)] != target.inverse(mapping[s]):
            raise NotClassifiable("isomorphism fails on an inverse")
        for t in S.elements:
            if mapping[S.multiply(s, t)] != target.multiply(mapping[s], mapping[t]):
                raise NotClassifiable("isomorphism fails on a product")
    return Classification(n, mapping)


def group_of_units(S):
    units = S.units()
    gens = []
    generated = {S.one}
    for g in sorted(units):
        if g in generated:
            continue
        gens.append(g)
        frontier = set(generated) | {g}
        while frontier:
            new = set()
            for a in frontier:
                for b in gens:
                    for p in (S.multiply(a, b), S.multiply(b, a)):
                        if p not in generated and p not in frontier:
                            new.add(p)
            generated |= frontier
            frontier = new
    return len(units), sorted(units), gens


def finite_spatial_realization_check(S, T):
    """Decide U(S) iso U(T), assert it matches S iso T; both via
    classification (the unit groups are full symmetric groups, so the
    group order n! pins down n)."""
    try:
        cs, ct = classify(S), classify(T)
    except NotClassifiable as exc:
        raise OutOfClass(str(exc))
    units_iso = len(S.units()) == len(T.units())
    monoids_iso = cs.n == ct.n
    if units_iso != monoids_iso:
        raise AssertionError("unit groups disagree with classification")
    return units_iso


def principality_decompose_finite(S, s):
    """Split a partial bijection into its fixed idempotent part and
    singleton square-zero parts; always succeeds at finite scale."""
    fixed = S.phi(s)
    moving = S.multiply(s, S.sigma(s))
    parts = S.atoms_below(moving)
    return fixed, parts


# ---------------------------------------------------------------------------
# Top-level report
# ---------------------------------------------------------------------------

def analyze(S, seed=42, samples=100):
    rng = random.Random(seed)
    report = AnalysisReport(instance=S.name())
    if isinstance(S, CuntzMonoid):
        report.flags["is_boolean_inverse_meet_monoid"] = _axiom_flag_sampled(
            S, random.Random(seed), samples)
    else:
        report.flags["is_boolean_inverse_meet_monoid"] = _axiom_flag_finite(
            S, random.Random(seed))
    report.flags["is_fundamental"] = is_fundamental_flag(S, rng, samples)
    report.flags["is_zero_simple"] = is_zero_simple(S, rng, samples)
    report.flags["is_zero_simplifying"] = is_zero_simplifying(S, rng, samples)
    report.flags["is_zero_disjunctive"] = is_zero_disjunctive(S, rng, samples)
    report.flags["is_congruence_free"] = Flag(
        report.flags["is_fundamental"].value
        and report.flags["is_zero_simple"].value
        and report.flags["is_zero_disjunctive"].value,
        "sampled" if isinstance(S, CuntzMonoid) else "exact",
        {"composition": "fundamental and 0-simple and 0-disjunctive"})
    report.flags["is_purely_infinite"] = is_purely_infinite(S, rng, samples)
    if isinstance(S, FiniteMonoid):
        try:
            c = classify(S)
            report.classification = {"n": c.n}
        except NotClassifiable as exc:
            report.classification = {"n": None, "reason": exc.reason}
        order, _, gens = group_of_units(S)
        report.units = {"order": order, "generators": [str(g) for g in gens]}
    return report


def _axiom_triples_ok(S, triples):
    for s, t, u in triples:
        if S.multiply(S.multiply(s, t), u) != S.multiply(s, S.multiply(t, u)):
            return (str(s), str(t), str(u))
        if S.multiply(S.multiply(s, S.inverse(s)), s) != s:
            return (str(s),)
        if S.multiply(s, S.zero) != S.zero or S.multiply(S.zero, s) != S.zero:
            return (str(s),)
        if S.multiply(s, S.one) != s or S.multiply(S.one, s) != s:
            return (str(s),)
    return None


def _axiom_flag_finite(S, rng, cap=50):
    if len(S.elements) <= cap:
        triples = [(s, t, u) for s in S.elements for t in S.elements
                   for u in S.elements]
        mode = "exact"
    else:
        triples = [(rng.choice(S.elements), rng.choice(S.elements),
                    rng.choice(S.elements)) for _ in range(1000)]
        mode = "sampled"
    bad = _axiom_triples_ok(S, triples)
    if bad:
        return Flag(False, mode, {"counterexample": list(bad)})
    return Flag(True, mode, {"triples": len(triples)})


def _axiom_flag_sampled(S, rng, samples):
    triples = [(cz.random_prefix_map(rng, S), cz.random_prefix_map(rng, S),
                cz.random_prefix_map(rng, S)) for _ in range(samples)]
    bad = _axiom_triples_ok(S, triples)
    if bad:
        return Flag(False, "sampled", {"counterexample": list(bad)})
    return Flag(True, "sampled", {"triples": len(triples)})
