"""Concrete finite Boolean inverse meet-monoids.

Three families: the symmetric inverse monoids on n points, finite direct
products of instances, and the monoid of local bisections of a finite
discrete groupoid.  All carriers are enumerated eagerly and every element
is an immutable canonical value, so downstream classifiers can scan
exhaustively.
"""

import itertools
import json
from dataclasses import dataclass

from .core import AlgebraError, Monoid


class TooLarge(AlgebraError):
    """Carrier would exceed the enumeration cap."""


class InvalidGroupoid(AlgebraError):
    """Groupoid data violates a groupoid law."""


# ---------------------------------------------------------------------------
# Partial bijections and the symmetric inverse monoid
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class PartialBijection:
    """A finite injective partial map on {1..n}, stored as sorted pairs."""

    n: int
    pairs: tuple

    @staticmethod
    def make(n, pairs):
        pairs = tuple(sorted(set(pairs)))
        srcs = [i for i, _ in pairs]
        dsts = [j for _, j in pairs]
        if len(set(srcs)) != len(srcs) or len(set(dsts)) != len(dsts):
            raise ValueError(f"not a partial bijection: {pairs}")
        for i, j in pairs:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"point out of range in {pairs}")
        return PartialBijection(n, pairs)

    def mapping(self):
        return dict(self.pairs)

    def __str__(self):
        if not self.pairs:
            return "{}"
        return "{" + ",".join(f"{i}->{j}" for i, j in self.pairs) + "}"


class FiniteMonoid(Monoid):
    """A monoid with a fully enumerated carrier."""

    def __init__(self):
        self.elements = []
        self._idempotents = None
        self._atoms = None

    def idempotents(self):
        if self._idempotents is None:
            self._idempotents = [s for s in self.elements if self.is_idempotent(s)]
        return self._idempotents

    def nonzero_idempotents(self):
        return [e for e in self.idempotents() if e != self.zero]

    def atoms(self):
        """All minimal non-zero elements under the natural partial order."""
        if self._atoms is None:
            out = []
            for x in self.elements:
                if x == self.zero:
                    continue
                if any(y != self.zero and y != x and self.leq(y, x)
                       for y in self.elements):
                    continue
                out.append(x)
            self._atoms = sorted(out)
        return self._atoms

    def atoms_below(self, s):
        return [a for a in self.atoms() if self.leq(a, s)]

    def units(self):
        return [g for g in self.elements if self.is_unit(g)]


class SymmetricInverseMonoid(FiniteMonoid):
    """All partial bijections on {1..n}; capped at n = 6."""

    CAP = 6

    def __init__(self, n):
        super().__init__()
        if n < 1:
            raise ValueError("n must be >= 1")
        if n > self.CAP:
            raise TooLarge(f"I_{n} exceeds the enumeration cap n <= {self.CAP}")
        self.n = n
        self.zero = PartialBijection.make(n, [])
        self.one = PartialBijection.make(n, [(i, i) for i in range(1, n + 1)])
        points = range(1, n + 1)
        for k in range(n + 1):
            for dom in itertools.combinations(points, k):
                for img in itertools.permutations(points, k):
                    self.elements.append(PartialBijection.make(n, zip(dom, img)))
        self.elements.sort()

    def name(self):
        return f"I{self.n}"

    def multiply(self, s, t):
        tm, sm = t.mapping(), s.mapping()
        return PartialBijection.make(
            self.n, [(i, sm[j]) for i, j in tm.items() if j in sm])

    def inverse(self, s):
        return PartialBijection.make(self.n, [(j, i) for i, j in s.pairs])

    def is_idempotent(self, s):
        return all(i == j for i, j in s.pairs)

    def complement(self, e):
        if not self.is_idempotent(e):
            raise ValueError(f"complement of a non-idempotent: {e}")
        fixed = {i for i, _ in e.pairs}
        return PartialBijection.make(
            self.n, [(i, i) for i in range(1, self.n + 1) if i not in fixed])

    def raw_meet(self, s, t):
        # graph intersection: the largest common restriction
        return PartialBijection.make(self.n, set(s.pairs) & set(t.pairs))

    def raw_join(self, s, t):
        return PartialBijection.make(self.n, set(s.pairs) | set(t.pairs))


class ProductMonoid(FiniteMonoid):
    """Direct product of two finite instances, componentwise."""

    def __init__(self, left, right):
        super().__init__()
        self.left, self.right = left, right
        self.zero = (left.zero, right.zero)
        self.one = (left.one, right.one)
        self.elements = sorted(itertools.product(left.elements, right.elements))

    def name(self):
        return f"{self.left.name()}x{self.right.name()}"

    def multiply(self, s, t):
        return (self.left.multiply(s[0], t[0]), self.right.multiply(s[1], t[1]))

    def inverse(self, s):
        return (self.left.inverse(s[0]), self.right.inverse(s[1]))

    def is_idempotent(self, s):
        return self.left.is_idempotent(s[0]) and self.right.is_idempotent(s[1])

    def complement(self, e):
        return (self.left.complement(e[0]), self.right.complement(e[1]))

    def raw_meet(self, s, t):
        return (self.left.raw_meet(s[0], t[0]), self.right.raw_meet(s[1], t[1]))

    def raw_join(self, s, t):
        return (self.left.raw_join(s[0], t[0]), self.right.raw_join(s[1], t[1]))


# ---------------------------------------------------------------------------
# Finite discrete groupoids
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Arrow:
    id: str
    src: str
    dst: str


class FiniteGroupoid:
    """A finite discrete groupoid given by an explicit composition table.

    ``compose[(a, b)] = c`` means a after b, defined iff dst(b) = src(a).
    Validation is eager: associativity over all composable triples,
    identity and inverse laws.
    """

    def __init__(self, objects, arrows, compose, inverse, identities=None):
        self.objects = tuple(sorted(objects))
        self.arrows = tuple(sorted(arrows))
        self.arrow_by_id = {a.id: a for a in self.arrows}
        self.compose = dict(compose)
        self.inverse = dict(inverse)
        if identities is None:
            identities = self._infer_identities()
        self.identities = dict(identities)
        self.validate()

    def _infer_identities(self):
        out = {}
        for x in self.objects:
            for a in self.arrows:
                if a.src == x and a.dst == x and self.compose.get((a.id, a.id)) == a.id:
                    if all(self.compose.get((b.id, a.id)) == b.id
                           for b in self.arrows if b.src == x):
                        out[x] = a.id
                        break
        return out

    def validate(self):
        ids = {a.id for a in self.arrows}
        if len(ids) != len(self.arrows):
            raise InvalidGroupoid("duplicate arrow ids")
        for a in self.arrows:
            if a.src not in self.objects or a.dst not in self.objects:
                raise InvalidGroupoid(f"arrow {a.id} touches an unknown object")
        for x in self.objects:
            e = self.identities.get(x)
            if e is None or e not in ids:
                raise InvalidGroupoid(f"no identity arrow at object {x}")
            ea = self.arrow_by_id[e]
            if ea.src != x or ea.dst != x:
                raise InvalidGroupoid(f"identity at {x} is not an endo-arrow")
        for a in self.arrows:
            for b in self.arrows:
                defined = (a.id, b.id) in self.compose
                if defined != (b.dst == a.src):
                    raise InvalidGroupoid(
                        f"composition {a.id}*{b.id} wrongly (un)defined")
                if defined:
                    c = self.arrow_by_id.get(self.compose[(a.id, b.id)])
                    if c is None or c.src != b.src or c.dst != a.dst:
                        raise InvalidGroupoid(
                            f"composite {a.id}*{b.id} has wrong endpoints")
        for a in self.arrows:
            ai = self.inverse.get(a.id)
            if ai is None or ai not in ids:
                raise InvalidGroupoid(f"no inverse for {a.id}")
            if self.compose.get((ai, a.id)) != self.identities[a.src]:
                raise InvalidGroupoid(f"inverse law fails for {a.id}")
            if self.compose.get((a.id, ai)) != self.identities[a.dst]:
                raise InvalidGroupoid(f"inverse law fails for {a.id}")
            e = self.identities[a.src]
            if self.compose.get((a.id, e)) != a.id:
                raise InvalidGroupoid(f"identity law fails for {a.id}")
        for a in self.arrows:
            for b in self.arrows:
                if b.dst != a.src:
                    continue
                for c in self.arrows:
                    if c.dst != b.src:
                        continue
                    lhs = self.compose[(self.compose[(a.id, b.id)], c.id)]
                    rhs = self.compose[(a.id, self.compose[(b.id, c.id)])]
                    if lhs != rhs:
                        raise InvalidGroupoid(
                            f"associativity fails at {a.id},{b.id},{c.id}")

    def identity_ids(self):
        return sorted(self.identities.values())

    # -- JSON wire format ----------------------------------------------

    def to_json(self):
        return {
            "objects": list(self.objects),
            "arrows": [{"id": a.id, "src": a.src, "dst": a.dst}
                       for a in self.arrows],
            "compose": sorted([a, b, c] for (a, b), c in self.compose.items()),
            "inverse": sorted([a, b] for a, b in self.inverse.items()),
            "identities": sorted([x, e] for x, e in self.identities.items()),
        }

    @staticmethod
    def from_json(data):
        try:
            objects = data["objects"]
            arrows = [Arrow(d["id"], d["src"], d["dst"]) for d in data["arrows"]]
            compose = {(a, b): c for a, b, c in data["compose"]}
            inverse = {a: b for a, b in data["inverse"]}
            identities = None
            if "identities" in data:
                identities = {x: e for x, e in data["identities"]}
        except (KeyError, TypeError) as exc:
            raise InvalidGroupoid(f"malformed groupoid data: {exc}")
        return FiniteGroupoid(objects, arrows, compose, inverse, identities)

    @staticmethod
    def load(path):
        with open(path) as fh:
            return FiniteGroupoid.from_json(json.load(fh))


def _component(prefix, n_objects, group_order):
    """Pair groupoid on n_objects times the cyclic group Z_group_order."""
    objects = [f"{prefix}o{i}" for i in range(n_objects)]
    arrows, compose, inverse, identities = [], {}, {}, {}
    def aid(i, j, g):
        return f"{prefix}a{i}_{j}_{g}"
    for i in range(n_objects):
        for j in range(n_objects):
            for g in range(group_order):
                arrows.append(Arrow(aid(i, j, g), objects[i], objects[j]))
                inverse[aid(i, j, g)] = aid(j, i, (-g) % group_order)
    for i in range(n_objects):
        identities[objects[i]] = aid(i, i, 0)
    for i in range(n_objects):
        for j in range(n_objects):
            for k in range(n_objects):
                for g in range(group_order):
                    for h in range(group_order):
                        # (j->k, g) after (i->j, h)
                        compose[(aid(j, k, g), aid(i, j, h))] = \
                            aid(i, k, (g + h) % group_order)
    return objects, arrows, compose, inverse, identities


def _assemble(components):
    objects, arrows, compose, inverse, identities = [], [], {}, {}, {}
    for ci, (m, k) in enumerate(components):
        o, a, c, v, e = _component(f"c{ci}", m, k)
        objects += o
        arrows += a
        compose.update(c)
        inverse.update(v)
        identities.update(e)
    return FiniteGroupoid(objects, arrows, compose, inverse, identities)


def pair_groupoid(n_objects):
    return _assemble([(n_objects, 1)])


def group_groupoid(order):
    """The cyclic group of the given order as a one-object groupoid."""
    return _assemble([(1, order)])


def discrete_groupoid(n_objects):
    """n isolated objects, identity arrows only."""
    return _assemble([(1, 1)] * n_objects)


def random_groupoid(rng, max_arrows=8):
    """A random valid groupoid: a disjoint union of pair-groupoid x cyclic
    components, with at most max_arrows arrows in total."""
    components, remaining = [], max_arrows
    while remaining >= 1 and (not components or rng.random() < 0.7):
        choices = [(m, k) for m in (1, 2, 3) for k in (1, 2, 3, 4)
                   if m * m * k <= remaining]
        if not choices:
            break
        m, k = rng.choice(choices)
        components.append((m, k))
        remaining -= m * m * k
    if not components:
        components = [(1, 1)]
    return _assemble(components)


# ---------------------------------------------------------------------------
# Local bisection monoids B(G)
# ---------------------------------------------------------------------------

class LocalBisectionMonoid(FiniteMonoid):
    """All local bisections of a finite discrete groupoid, as a Boolean
    inverse meet-monoid.

    Elements are sorted tuples of arrow ids.  Zero is the empty set and
    one is the set of identity arrows.  The arrow cap is 16 so that
    B(pair groupoid on 4) is admissible.
    """

    CAP = 16

    def __init__(self, groupoid):
        super().__init__()
        if len(groupoid.arrows) > self.CAP:
            raise TooLarge(
                f"{len(groupoid.arrows)} arrows exceeds the cap {self.CAP}")
        self.groupoid = groupoid
        self.zero = ()
        self.one = tuple(groupoid.identity_ids())
        ids = [a.id for a in groupoid.arrows]
        for subset in itertools.chain.from_iterable(
                itertools.combinations(ids, k) for k in range(len(ids) + 1)):
            if self._is_bisection(subset):
                self.elements.append(tuple(sorted(subset)))
        self.elements.sort()

    def name(self):
        return f"B(G:{len(self.groupoid.objects)}obj,{len(self.groupoid.arrows)}arr)"

    def _is_bisection(self, subset):
        g = self.groupoid
        srcs = [g.arrow_by_id[i].src for i in subset]
        dsts = [g.arrow_by_id[i].dst for i in subset]
        return len(set(srcs)) == len(srcs) and len(set(dsts)) == len(dsts)

    def multiply(self, s, t):
        g = self.groupoid
        out = set()
        for a in s:
            for b in t:
                if g.arrow_by_id[b].dst == g.arrow_by_id[a].src:
                    out.add(g.compose[(a, b)])
        return tuple(sorted(out))

    def inverse(self, s):
        return tuple(sorted(self.groupoid.inverse[a] for a in s))

    def is_idempotent(self, s):
        return set(s) <= set(self.one)

    def complement(self, e):
        if not self.is_idempotent(e):
            raise ValueError(f"complement of a non-idempotent: {e}")
        return tuple(sorted(set(self.one) - set(e)))

    def raw_meet(self, s, t):
        return tuple(sorted(set(s) & set(t)))

    def raw_join(self, s, t):
        return tuple(sorted(set(s) | set(t)))
