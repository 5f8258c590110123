"""Exact arithmetic in the prefix-replacement monoid C_n on n-ary Cantor
space, plus the constructive witness toolbox built on it.

Elements are PrefixMaps: finite tables of (domain word -> range word) pairs
over the alphabet {1..n}, denoting the partial homeomorphism d_i.w -> r_i.w.
Idempotents are the tables with d = r throughout; they encode clopen subsets
of Cantor space by their (prefix-free) word sets.  Points of the space are
restricted to eventually periodic words u.v.v.v..., on which membership,
images, and equality are all exactly decidable.

Everything here is value-semantic: construction normalizes eagerly and two
tables denote the same map iff their normal forms are identical.
"""

import itertools
from dataclasses import dataclass

from .core import AlgebraError, Monoid


class PointOutsideDomain(AlgebraError):
    pass


class NotInvolution(AlgebraError):
    pass


class NotBelowSupport(AlgebraError):
    pass


class ZeroIdempotent(AlgebraError):
    """A construction was asked for at the zero idempotent."""


class IdentityIdempotent(AlgebraError):
    """A construction needing room outside e was asked for at e = 1."""


class NoIso(AlgebraError):
    """No element has the requested domain and range; carries both
    cylinder counts."""

    def __init__(self, count_e, count_f, modulus):
        super().__init__(
            f"cylinder counts {count_e} and {count_f} differ mod {modulus}")
        self.count_e, self.count_f, self.modulus = count_e, count_f, modulus


class NotMoved(AlgebraError):
    pass


class EmptySupportRegion(AlgebraError):
    pass


class NotClopen(AlgebraError):
    pass


def _letters(n):
    return [str(i) for i in range(1, n + 1)]


@dataclass(frozen=True, order=True)
class PrefixMap:
    """Normalized prefix-substitution table.

    Normal form: no pair refines another, domains and ranges are each
    prefix-free, no complete sibling family (d.a, r.a) for all letters a
    remains unmerged, and pairs are sorted by domain word.
    """

    n: int
    pairs: tuple

    @staticmethod
    def make(n, pairs):
        if n < 2:
            raise ValueError("alphabet size must be >= 2")
        pairs = {(d, r) for d, r in pairs}
        for d, r in pairs:
            for ch in d + r:
                if not ("1" <= ch <= str(n)):
                    raise ValueError(f"letter {ch!r} outside alphabet 1..{n}")
        # drop pairs that are restrictions of another pair
        drop = set()
        for d1, r1 in pairs:
            for d2, r2 in pairs:
                if ((d1, r1) != (d2, r2) and d1.startswith(d2)
                        and r2 + d1[len(d2):] == r1):
                    drop.add((d1, r1))
        pairs -= drop
        for words, side in (([d for d, _ in pairs], "domain"),
                            ([r for _, r in pairs], "range")):
            for a, b in itertools.combinations(sorted(words), 2):
                if b.startswith(a):
                    raise ValueError(f"{side} words not prefix-free: {a}, {b}")
        # merge complete sibling families to fixpoint
        letters = _letters(n)
        changed = True
        while changed:
            changed = False
            families = {}
            for d, r in pairs:
                if d and r and d[-1] == r[-1]:
                    families.setdefault((d[:-1], r[:-1]), set()).add(d[-1])
            for (pd, pr), seen in families.items():
                if len(seen) == n:
                    for a in letters:
                        pairs.discard((pd + a, pr + a))
                    pairs.add((pd, pr))
                    changed = True
                    break
        return PrefixMap(n, tuple(sorted(pairs)))

    def domain_words(self):
        return [d for d, _ in self.pairs]

    def range_words(self):
        return [r for _, r in self.pairs]

    def __str__(self):
        if not self.pairs:
            return "{}"
        return "{" + ",".join(f"{d or 'e'}->{r or 'e'}"
                              for d, r in self.pairs) + "}"


@dataclass(frozen=True, order=True)
class EPPoint:
    """The eventually periodic infinite word pre.rep.rep.rep..."""

    pre: str
    rep: str

    @staticmethod
    def make(pre, rep):
        if not rep:
            raise ValueError("period must be non-empty")
        for k in range(1, len(rep) + 1):
            if len(rep) % k == 0 and rep == rep[:k] * (len(rep) // k):
                rep = rep[:k]
                break
        # absorb trailing preperiod letters into a rotated period
        while pre and pre[-1] == rep[-1]:
            pre = pre[:-1]
            rep = rep[-1] + rep[:-1]
        return EPPoint(pre, rep)

    def expand(self, m):
        s = self.pre
        while len(s) < m:
            s += self.rep
        return s[:m]

    def has_prefix(self, w):
        return self.expand(len(w)) == w

    def __str__(self):
        return f"{self.pre}|{self.rep}"


# ---------------------------------------------------------------------------
# Text grammar
# ---------------------------------------------------------------------------

def _parse_word(text, n, pos):
    if text == "e":
        return ""
    for i, ch in enumerate(text):
        if not ("1" <= ch <= str(n)):
            raise ValueError(f"bad letter {ch!r} at position {pos + i}")
    return text


def parse_prefix_map(n, text):
    """Parse `{d1->r1,d2->r2,...}` with `e` for the empty word."""
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError("prefix map must be enclosed in { }, at position 0")
    body = text[1:-1].strip()
    pairs = []
    pos = 1
    if body:
        for chunk in body.split(","):
            if "->" not in chunk:
                raise ValueError(f"missing -> at position {pos}")
            d, r = chunk.split("->", 1)
            pairs.append((_parse_word(d.strip(), n, pos),
                          _parse_word(r.strip(), n, pos)))
            pos += len(chunk) + 1
    return PrefixMap.make(n, pairs)


def parse_clopen(n, text):
    """Parse `[w1,w2,...]` as an idempotent prefix map."""
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError("clopen must be enclosed in [ ], at position 0")
    body = text[1:-1].strip()
    words = []
    pos = 1
    if body:
        for chunk in body.split(","):
            words.append(_parse_word(chunk.strip(), n, pos))
            pos += len(chunk) + 1
    return PrefixMap.make(n, [(w, w) for w in words])


def parse_point(n, text):
    """Parse `u|v` as the point u.v^omega."""
    text = text.strip()
    if "|" not in text:
        raise ValueError("point must be written u|v, at position 0")
    u, v = text.split("|", 1)
    u = _parse_word(u.strip(), n, 0) if u.strip() else ""
    v = _parse_word(v.strip(), n, len(u) + 1)
    return EPPoint.make(u, v)


def format_clopen(e):
    if not e.pairs:
        return "[]"
    return "[" + ",".join(d or "e" for d in e.domain_words()) + "]"


# ---------------------------------------------------------------------------
# The monoid
# ---------------------------------------------------------------------------

class CuntzMonoid(Monoid):
    """C_n as a Boolean inverse meet-monoid over PrefixMap values."""

    def __init__(self, n):
        if n < 2:
            raise ValueError("alphabet size must be >= 2")
        self.n = n
        self.zero = PrefixMap.make(n, [])
        self.one = PrefixMap.make(n, [("", "")])

    def name(self):
        return f"C{self.n}"

    def element(self, pairs):
        return PrefixMap.make(self.n, pairs)

    def clopen(self, words):
        return PrefixMap.make(self.n, [(w, w) for w in words])

    def cylinder(self, word):
        return self.clopen([word])

    def multiply(self, s, t):
        # s after t: route each t-pair through the s-pairs it can reach
        out = []
        for dt, rt in t.pairs:
            for ds, rs in s.pairs:
                if ds.startswith(rt):
                    out.append((dt + ds[len(rt):], rs))
                elif rt.startswith(ds):
                    out.append((dt, rs + rt[len(ds):]))
        return PrefixMap.make(self.n, out)

    def inverse(self, s):
        return PrefixMap.make(self.n, [(r, d) for d, r in s.pairs])

    def is_idempotent(self, s):
        return all(d == r for d, r in s.pairs)

    def complement(self, e):
        if not self.is_idempotent(e):
            raise NotClopen(f"complement of a non-idempotent: {e}")
        words = set(e.domain_words())

        def leaves(prefix):
            if prefix in words:
                return []
            if not any(w.startswith(prefix) for w in words):
                return [prefix]
            out = []
            for a in _letters(self.n):
                out += leaves(prefix + a)
            return out

        return self.clopen(leaves(""))

    def raw_meet(self, s, t):
        # agreement holds on whole cylinders only: one pair must refine
        # the other with matching range extension
        out = []
        for d1, r1 in s.pairs:
            for d2, r2 in t.pairs:
                if d2.startswith(d1) and r1 + d2[len(d1):] == r2:
                    out.append((d2, r2))
                elif d1.startswith(d2) and r2 + d1[len(d2):] == r1:
                    out.append((d1, r1))
        return PrefixMap.make(self.n, out)

    def raw_join(self, s, t):
        return PrefixMap.make(self.n, s.pairs + t.pairs)

    # -- points ---------------------------------------------------------

    def contains_point(self, e, p):
        if not self.is_idempotent(e):
            raise NotClopen(f"membership asked of a non-idempotent: {e}")
        return any(p.has_prefix(d) for d in e.domain_words())

    def apply_point(self, s, p):
        for d, r in s.pairs:
            if not p.has_prefix(d):
                continue
            if len(d) <= len(p.pre):
                return EPPoint.make(r + p.pre[len(d):], p.rep)
            k = (len(d) - len(p.pre)) % len(p.rep)
            return EPPoint.make(r, p.rep[k:] + p.rep[:k])
        raise PointOutsideDomain(f"{p} outside the domain of {s}")

    def fixes_point(self, s, p):
        return self.apply_point(s, p) == p

    # -- basic witnesses ------------------------------------------------

    def infinitesimal_at(self, e, p):
        """A square-zero element inside e whose domain contains p.

        Takes the e-word prefixing p, extends it by p's next letter for
        the domain, and by that letter cycled for the range.
        """
        if e == self.zero:
            raise PointOutsideDomain("the zero idempotent has no points")
        for w in e.domain_words():
            if p.has_prefix(w):
                c = p.expand(len(w) + 1)[-1]
                flipped = str(int(c) % self.n + 1)
                return self.element([(w + c, w + flipped)])
        raise PointOutsideDomain(f"{p} outside {format_clopen(e)}")

    def f1_witness(self, e, p):
        """A non-trivial involution t with support inside e and p in the
        support."""
        return self.involution_from_infinitesimal(self.infinitesimal_at(e, p))

    def find_moved_point(self, g, e):
        """Some point of e that g moves; e must be non-zero and lie below
        the support of g."""
        if e == self.zero or not self.leq(e, self.sigma(g)):
            raise EmptySupportRegion(
                f"{format_clopen(e)} is not a non-zero part of the support")
        for w in e.domain_words():
            for d, r in g.pairs:
                if d == r:
                    continue
                if not (d.startswith(w) or w.startswith(d)):
                    continue
                x = d if len(d) >= len(w) else w
                # a non-identity pair fixes at most one point of its
                # cylinder, so one of three distinct probes moves
                for q in (EPPoint.make(x, "1"), EPPoint.make(x, "2"),
                          EPPoint.make(x, "12")):
                    if self.apply_point(g, q) != q:
                        return q
        raise EmptySupportRegion(f"no moved point found in {format_clopen(e)}")

    def separating_idempotent(self, g, p):
        """A cylinder around p carried entirely off itself by g."""
        if self.apply_point(g, p) == p:
            raise NotMoved(f"{g} fixes {p}")
        for m in range(1, 200):
            cyl = self.cylinder(p.expand(m))
            if not self.leq(cyl, self.domain(g)):
                continue
            image = self.multiply(self.multiply(g, cyl), self.inverse(g))
            if self.raw_meet(cyl, image) == self.zero:
                return cyl
        raise AssertionError("separating cylinder search did not terminate")

    def f2_witness(self, t, e):
        """An involution g supported in e v tet that agrees with t there.

        Built as t.d(a) v d(a).t v i for an infinitesimal a inside a part
        of e moved wholly off itself by t, with i the identity elsewhere.
        """
        if not self.is_involution(t) or t == self.one:
            raise NotInvolution(f"{t} is not a non-trivial involution")
        if e == self.zero or not self.leq(e, self.sigma(t)):
            raise NotBelowSupport(
                f"{format_clopen(e)} is not a non-zero part of the support of t")
        p = self.find_moved_point(t, e)
        f = self.raw_meet(self.separating_idempotent(t, p), e)
        a = self.infinitesimal_at(f, p)
        da = self.domain(a)
        tdat = self.multiply(self.multiply(t, da), t)
        i = self.raw_meet(self.complement(da), self.complement(tdat))
        return self.join_all([self.multiply(t, da), self.multiply(da, t), i])

    def f3_witness(self, e):
        """A unit of order exactly 3 supported inside e."""
        if e == self.zero:
            raise ZeroIdempotent("no order-3 unit inside zero")
        w = e.domain_words()[0]
        b = self.element([(w + "11", w + "12")])
        a = self.element([(w + "12", w + "2")])
        g = self.involution_from_infinitesimal(a)
        h = self.involution_from_infinitesimal(b)
        return self.multiply(g, h)

    # -- clopen transfer ------------------------------------------------

    @staticmethod
    def _code(k):
        """A prefix-free set of k words over {1,2} ('' when k = 1)."""
        if k == 1:
            return [""]
        return ["1" * i + "2" for i in range(k - 1)] + ["1" * (k - 1)]

    def transfer_witness(self, e, f):
        """An element with domain exactly e and range inside f."""
        if e == self.zero or f == self.zero:
            raise ZeroIdempotent("transfer needs non-zero idempotents")
        words = e.domain_words()
        f0 = f.domain_words()[0]
        code = self._code(len(words))
        return self.element([(w, f0 + c) for w, c in zip(words, code)])

    def properly_infinite_witness(self, e):
        """Two elements with domain e and orthogonal ranges inside e."""
        if e == self.zero:
            raise ZeroIdempotent("zero is not properly infinite")
        words = e.domain_words()
        w0 = words[0]
        code = self._code(len(words))
        x = self.element([(w, w0 + "1" + c) for w, c in zip(words, code)])
        y = self.element([(w, w0 + "2" + c) for w, c in zip(words, code)])
        return x, y

    def conjugator_unit(self, e, f):
        """A unit g with g.e.g^-1 <= f, for e != 1 and f != 0."""
        if self.is_idempotent(e) and e == self.one:
            raise IdentityIdempotent("cannot conjugate the identity downward")
        if f == self.zero:
            raise ZeroIdempotent("cannot conjugate into zero")
        if e == self.zero:
            return self.one
        ebar = self.complement(e)
        outside = self.raw_meet(f, ebar)
        if outside != self.zero:
            # room outside e: transfer e there and close to an involution
            a = self.transfer_witness(e, outside)
            return self.involution_from_infinitesimal(a)
        # f <= e: hop through the complement in two steps
        u = self.conjugator_unit(e, ebar)
        v = self.conjugator_unit(ebar, f)
        return self.multiply(v, u)

    def cylinder_count(self, e):
        if not self.is_idempotent(e):
            raise NotClopen(f"cylinder count of a non-idempotent: {e}")
        return len(e.pairs)

    def clopen_iso(self, e, f):
        """An element with domain exactly e and range exactly f.

        Exists iff the cylinder counts agree mod n - 1 (subdividing one
        cylinder into its n children raises the count by n - 1).
        """
        if e == self.zero or f == self.zero:
            raise ZeroIdempotent("clopen_iso needs non-zero idempotents")
        ce, cf = self.cylinder_count(e), self.cylinder_count(f)
        if (ce - cf) % (self.n - 1) != 0:
            raise NoIso(ce, cf, self.n - 1)
        ew, fw = list(e.domain_words()), list(f.domain_words())
        for words, target in ((ew, len(fw)), (fw, len(ew))):
            while len(words) < target:
                w = sorted(words)[-1]
                words.remove(w)
                words += [w + a for a in _letters(self.n)]
        return self.element(zip(sorted(ew), sorted(fw)))

    def piecewise_factorize(self, s):
        """Write s as an orthogonal join of unit-times-idempotent parts.

        Returns [(g_i, e_i)] with each g_i a unit, e_i <= d(s), and
        s = join of g_i.e_i.
        """
        if s == self.zero:
            raise ZeroIdempotent("zero has no factorization parts")
        if self.is_unit(s):
            return [(s, self.one)]
        pairs = []
        for d, r in s.pairs:
            if d == "" or r == "":
                # refine once so both complements below are non-empty
                pairs += [(d + a, r + a) for a in _letters(self.n)]
            else:
                pairs.append((d, r))
        out = []
        for d, r in pairs:
            patch = self.clopen_iso(self.complement(self.cylinder(d)),
                                    self.complement(self.cylinder(r)))
            g = self.join(self.element([(d, r)]), patch)
            out.append((g, self.cylinder(d)))
        return out

    def unit_in_ultrafilter(self, s, p):
        """A unit agreeing with s on a neighborhood of p."""
        self.apply_point(s, p)  # raises PointOutsideDomain when p outside d(s)
        if self.is_unit(s):
            return s
        for g, e in self.piecewise_factorize(s):
            if self.contains_point(e, p):
                return g
        raise AssertionError("factorization parts must cover d(s)")

    def principality_decompose(self, s):
        """Split s into an idempotent plus orthogonal square-zero parts,
        or certify failure by a fixed point.

        Returns ("decomposition", fixed_part, [infinitesimals]) when every
        non-identity pair has incomparable words, else
        ("witness", d, r, p) for a pair with comparable distinct words and
        its (verified) fixed point p.
        """
        for d, r in s.pairs:
            if d != r and (d.startswith(r) or r.startswith(d)):
                tail = r[len(d):] if len(r) > len(d) else d[len(r):]
                return ("witness", d, r, EPPoint.make(d, tail))
        fixed = self.phi(s)
        parts = [self.element([(d, r)]) for d, r in s.pairs if d != r]
        return ("decomposition", fixed, parts)

    def support_cover(self, e):
        """Involutions whose supports join exactly to e (one child swap
        per cylinder of e and letter pair)."""
        if e == self.zero:
            raise ZeroIdempotent("zero has no support cover")
        out = []
        for w in e.domain_words():
            for i, j in itertools.combinations(_letters(self.n), 2):
                a = self.element([(w + i, w + j)])
                out.append(self.involution_from_infinitesimal(a))
        return out

    def hengist_witness(self, s, p):
        """One infinitesimal, or two whose product, lies in the
        ultrafilter encoded by (s, p): returns a list xs of square-zero
        elements whose product is non-zero, below s, with p in its domain."""
        self.apply_point(s, p)
        if self.apply_point(s, p) != p:
            cyl = self.separating_idempotent(s, p)
            return [self.multiply(s, cyl)]
        for d, r in s.pairs:
            if not p.has_prefix(d) and not p.has_prefix(r):
                continue
            if d == r:
                if not p.has_prefix(d):
                    continue
                y = p.expand(len(d) + 1)
                m = y[:-1] + str(int(y[-1]) % self.n + 1)
                return [self.element([(m, y)]), self.element([(y, m)])]
            if len(r) > len(d) and r.startswith(d) and p.has_prefix(d):
                w = r[len(d):]
                y = r[:-1] + str(int(r[-1]) % self.n + 1)
                return [self.element([(y, r + w)]), self.element([(r, y)])]
            if len(d) > len(r) and d.startswith(r) and p.has_prefix(d):
                w = d[len(r):]
                y = d[:-1] + str(int(d[-1]) % self.n + 1)
                return [self.element([(y, d)]), self.element([(d + w, y)])]
        raise AssertionError(f"no infinitesimal pair found for {s} at {p}")

    def commutes_with_cylinders(self, s, depth):
        """Whether s commutes with every cylinder idempotent of word
        length up to depth."""
        for m in range(depth + 1):
            for word in itertools.product(_letters(self.n), repeat=m):
                cyl = self.cylinder("".join(word))
                if self.multiply(s, cyl) != self.multiply(cyl, s):
                    return False
        return True


# ---------------------------------------------------------------------------
# Postcondition validators (shared by the CLI and the test suite)
# ---------------------------------------------------------------------------

def validate_f1(S, e, p, t):
    sig = S.sigma(t)
    return [("nontrivial_involution",
             t != S.one and S.multiply(t, t) == S.one),
            ("support_below_e", S.leq(sig, e)),
            ("point_in_support", S.contains_point(sig, p))]


def validate_f2(S, t, e, g, rng, samples=50):
    sig = S.sigma(g)
    bound = S.join(e, S.multiply(S.multiply(t, e), t))
    agrees = True
    if sig != S.zero:
        for _ in range(samples):
            q = random_point_in(rng, S, sig)
            if S.apply_point(g, q) != S.apply_point(t, q):
                agrees = False
                break
    return [("involution", S.multiply(g, g) == S.one),
            ("support_below_e_join_tet", S.leq(sig, bound)),
            ("agrees_with_t_on_support", agrees)]


def validate_f3(S, e, g):
    g2 = S.multiply(g, g)
    return [("order_three", S.multiply(g2, g) == S.one),
            ("not_identity", g != S.one and g2 != S.one),
            ("support_below_e", S.leq(S.sigma(g), e))]


def validate_transfer(S, e, f, x):
    return [("domain_is_e", S.domain(x) == e),
            ("range_below_f", S.leq(S.range(x), f))]


def validate_conjugator(S, e, f, g):
    conj = S.multiply(S.multiply(g, e), S.inverse(g))
    return [("unit", S.is_unit(g)),
            ("conjugate_below_f", S.leq(conj, f))]


def validate_iso(S, e, f, x):
    return [("domain_is_e", S.domain(x) == e),
            ("range_is_f", S.range(x) == f)]


def validate_properly_infinite(S, e, x, y):
    rx, ry = S.range(x), S.range(y)
    return [("domains_are_e", S.domain(x) == e and S.domain(y) == e),
            ("ranges_orthogonal", S.orthogonal(rx, ry)),
            ("ranges_inside_e", S.leq(S.join(rx, ry), e))]


def validate_factorize(S, s, parts):
    units_ok = all(S.is_unit(g) for g, _ in parts)
    doms_ok = all(S.leq(e, S.domain(s)) for _, e in parts)
    pieces = [S.multiply(g, e) for g, e in parts]
    ortho = all(S.orthogonal(pieces[i], pieces[j])
                for i in range(len(pieces)) for j in range(i + 1, len(pieces)))
    return [("all_units", units_ok),
            ("idempotents_below_domain", doms_ok),
            ("pieces_orthogonal", ortho),
            ("rejoins_to_s", S.join_all(pieces) == s)]


def validate_cover(S, e, ts):
    sup = S.zero
    for t in ts:
        sup = S.join(sup, S.sigma(t))
    return [("all_involutions",
             all(S.multiply(t, t) == S.one and t != S.one for t in ts)),
            ("supports_join_to_e", sup == e)]


def validate_principality(S, s, result):
    if result[0] == "witness":
        _, d, r, p = result
        comparable = d != r and (d.startswith(r) or r.startswith(d))
        return [("pair_comparable_distinct", comparable),
                ("point_is_fixed", S.apply_point(s, p) == p)]
    _, fixed, parts = result
    pieces = [fixed] + parts
    ortho = all(S.orthogonal(pieces[i], pieces[j])
                for i in range(len(pieces)) for j in range(i + 1, len(pieces)))
    return [("fixed_part_idempotent", S.is_idempotent(fixed)),
            ("parts_square_zero", all(S.is_infinitesimal(x) for x in parts)),
            ("parts_orthogonal", ortho),
            ("rejoins_to_s", S.join_all(pieces) == s)]


def validate_hengist(S, s, p, xs):
    prod = xs[0]
    for x in xs[1:]:
        prod = S.multiply(prod, x)
    return [("all_square_zero", all(S.is_infinitesimal(x) for x in xs)),
            ("product_nonzero", prod != S.zero),
            ("product_below_s", S.leq(prod, s)),
            ("point_in_product_domain", S.contains_point(S.domain(prod), p))]


# ---------------------------------------------------------------------------
# Seeded generators for sampled checks
# ---------------------------------------------------------------------------

def random_word(rng, n, max_len=3):
    return "".join(rng.choice(_letters(n))
                   for _ in range(rng.randint(0, max_len)))


def random_point(rng, n, max_len=3):
    pre = random_word(rng, n, max_len)
    rep = "".join(rng.choice(_letters(n))
                  for _ in range(rng.randint(1, max_len)))
    return EPPoint.make(pre, rep)


def random_point_in(rng, monoid, e):
    """A random eventually periodic point of the non-zero clopen e."""
    w = rng.choice(e.domain_words())
    return EPPoint.make(w + random_word(rng, monoid.n),
                        "".join(rng.choice(_letters(monoid.n))
                                for _ in range(rng.randint(1, 3))))


def random_complete_code(rng, n, splits):
    """A prefix-free word set covering the whole space, grown by
    subdividing random leaves."""
    words = [""]
    for _ in range(splits):
        w = rng.choice(words)
        words.remove(w)
        words += [w + a for a in _letters(n)]
    return sorted(words)


def random_clopen(rng, monoid, nonzero=True):
    code = random_complete_code(rng, monoid.n, rng.randint(1, 3))
    keep = [w for w in code if rng.random() < 0.5]
    if nonzero and not keep:
        keep = [rng.choice(code)]
    return monoid.clopen(keep)


def random_prefix_map(rng, monoid, nonzero=False):
    dom = random_complete_code(rng, monoid.n, rng.randint(0, 3))
    ran = random_complete_code(rng, monoid.n, rng.randint(0, 3))
    k = rng.randint(1 if nonzero else 0, min(len(dom), len(ran)))
    dom = rng.sample(dom, k)
    ran = rng.sample(ran, k)
    rng.shuffle(ran)
    return monoid.element(zip(dom, ran))


def random_unit(rng, monoid):
    splits = rng.randint(0, 3)
    dom = random_complete_code(rng, monoid.n, splits)
    ran = random_complete_code(rng, monoid.n, splits)
    rng.shuffle(ran)
    return monoid.element(zip(dom, ran))
