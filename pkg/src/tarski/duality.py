"""Stone-type duality at finite scale.

For a finite Boolean inverse meet-monoid S the ultrafilters are exactly
the up-sets of atoms, so the dual groupoid is built directly from atoms:
arrows are the atoms of S, objects the atoms of E(S), and composition is
the monoid product where domains and ranges match.  The two round trips
(monoid -> bisections of its atom groupoid, groupoid -> atom groupoid of
its bisection monoid) are verified element by element and emitted as
certificates.
"""

from dataclasses import dataclass

from .core import AlgebraError
from .finite import Arrow, FiniteGroupoid, LocalBisectionMonoid, PartialBijection


class NotBoolean(AlgebraError):
    """The idempotents fail a Boolean-algebra law, or an atom product is
    not an atom (the instance is not a Boolean inverse meet-monoid)."""


class RoundTripFailure(AlgebraError):
    def __init__(self, message, certificate):
        super().__init__(message)
        self.certificate = certificate


@dataclass
class AtomGroupoid:
    """Dual groupoid of a finite instance, with the atom dictionaries."""

    monoid: object
    groupoid: FiniteGroupoid
    arrow_of_atom: dict
    atom_of_arrow: dict
    object_of_eatom: dict
    eatom_of_object: dict


def _check_boolean(S):
    idems = S.idempotents()
    for e in idems:
        eb = S.complement(e)
        if not S.is_idempotent(eb):
            raise NotBoolean(f"complement of {e} is not idempotent")
        if S.multiply(e, eb) != S.zero or S.raw_join(e, eb) != S.one:
            raise NotBoolean(f"complement laws fail at {e}")
    idem_set = set(idems)
    for e in idems:
        for f in idems:
            if S.raw_meet(e, f) not in idem_set or S.raw_join(e, f) not in idem_set:
                raise NotBoolean(f"E(S) not closed under meet/join at {e}, {f}")


def eatoms(S):
    """Atoms of the Boolean algebra of idempotents, sorted."""
    idems = [e for e in S.idempotents() if e != S.zero]
    return sorted(e for e in idems
                  if not any(f != e and f != S.zero and S.leq(f, e)
                             for f in idems))


def atom_groupoid(S):
    _check_boolean(S)
    obj_atoms = eatoms(S)
    arr_atoms = S.atoms()
    object_of_eatom = {e: f"o{i}" for i, e in enumerate(obj_atoms)}
    arrow_of_atom = {a: f"a{i}" for i, a in enumerate(arr_atoms)}
    arrows = []
    for a in arr_atoms:
        d, r = S.domain(a), S.range(a)
        if d not in object_of_eatom or r not in object_of_eatom:
            raise NotBoolean(f"domain or range of atom {a} is not an E-atom")
        arrows.append(Arrow(arrow_of_atom[a], object_of_eatom[d],
                            object_of_eatom[r]))
    compose, inverse = {}, {}
    for a in arr_atoms:
        inverse[arrow_of_atom[a]] = arrow_of_atom[S.inverse(a)]
        for b in arr_atoms:
            if S.domain(a) != S.range(b):
                continue
            ab = S.multiply(a, b)
            if ab not in arrow_of_atom:
                raise NotBoolean(f"composable atom product {a}*{b} not an atom")
            compose[(arrow_of_atom[a], arrow_of_atom[b])] = arrow_of_atom[ab]
    # E-atoms are idempotent atoms of S, so they are their own identities
    identities = {object_of_eatom[e]: arrow_of_atom[e] for e in obj_atoms}
    groupoid = FiniteGroupoid([object_of_eatom[e] for e in obj_atoms],
                              arrows, compose, inverse, identities)
    return AtomGroupoid(S, groupoid, arrow_of_atom,
                        {v: k for k, v in arrow_of_atom.items()},
                        object_of_eatom,
                        {v: k for k, v in object_of_eatom.items()})


def theta(S, s):
    """The action of s on E-atoms by conjugation, as a partial bijection
    on 1-based atom indices."""
    obj_atoms = eatoms(S)
    index = {e: i + 1 for i, e in enumerate(obj_atoms)}
    pairs = []
    for f in obj_atoms:
        if not S.leq(f, S.domain(s)):
            continue
        image = S.multiply(S.multiply(s, f), S.inverse(s))
        if image not in index:
            raise NotBoolean(f"conjugate of E-atom {f} by {s} is not an E-atom")
        pairs.append((index[f], index[image]))
    return PartialBijection.make(len(obj_atoms), pairs)


def mu_related(S, s, t):
    """Whether s and t conjugate every idempotent identically (the
    maximum idempotent-separating congruence)."""
    if S.domain(s) != S.domain(t) or S.range(s) != S.range(t):
        return False
    ti = S.inverse(t)
    si = S.inverse(s)
    for e in S.idempotents():
        if not S.leq(e, S.domain(s)):
            continue
        if S.multiply(S.multiply(s, e), si) != S.multiply(S.multiply(t, e), ti):
            return False
    return True


def is_fundamental(S):
    """Whether only idempotents centralize all idempotents."""
    return centralizer_counterexample(S) is None


def centralizer_counterexample(S):
    """A non-idempotent commuting with every idempotent, or None."""
    for s in S.elements:
        if S.is_idempotent(s):
            continue
        if all(S.multiply(s, e) == S.multiply(e, s) for e in S.idempotents()):
            return s
    return None


def is_essentially_principal(G):
    """True when every endo-arrow of the finite groupoid is an identity."""
    ids = set(G.identity_ids())
    return all(a.id in ids for a in G.arrows if a.src == a.dst)


def orbit_count(G):
    parent = {x: x for x in G.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in G.arrows:
        parent[find(a.src)] = find(a.dst)
    return len({find(x) for x in G.objects})


# ---------------------------------------------------------------------------
# Round trips
# ---------------------------------------------------------------------------

def duality_roundtrip_monoid(S):
    """Verify S is isomorphic to the bisection monoid of its atom
    groupoid via s -> {atoms below s}; returns a certificate dict."""
    ag = atom_groupoid(S)
    B = LocalBisectionMonoid(ag.groupoid)

    def image(s):
        return tuple(sorted(ag.arrow_of_atom[a] for a in S.atoms_below(s)))

    table = {s: image(s) for s in S.elements}
    cert = {"kind": "monoid_roundtrip",
            "monoid": S.name(),
            "size": len(S.elements),
            "pairing": sorted((str(s), list(v)) for s, v in table.items())}

    def fail(reason, s, t=None):
        cert["violation"] = {"reason": reason, "element": str(s),
                             "other": None if t is None else str(t)}
        raise RoundTripFailure(reason, cert)

    if len(set(table.values())) != len(S.elements):
        fail("pairing not injective", S.zero)
    if set(table.values()) != set(B.elements):
        fail("pairing not surjective onto the bisection monoid", S.zero)
    if table[S.zero] != B.zero or table[S.one] != B.one:
        fail("constants not preserved", S.zero)
    for s in S.elements:
        if table[S.inverse(s)] != B.inverse(table[s]):
            fail("inverse not preserved", s)
        for t in S.elements:
            if table[S.multiply(s, t)] != B.multiply(table[s], table[t]):
                fail("product not preserved", s, t)
            if table[S.raw_meet(s, t)] != B.raw_meet(table[s], table[t]):
                fail("meet not preserved", s, t)
            if S.compatible(s, t):
                if table[S.join(s, t)] != B.join(table[s], table[t]):
                    fail("compatible join not preserved", s, t)
    cert["verified"] = True
    return cert


def duality_roundtrip_groupoid(G):
    """Verify G is isomorphic to the atom groupoid of its bisection
    monoid via g -> the singleton bisection {g}."""
    B = LocalBisectionMonoid(G)
    ag = atom_groupoid(B)
    H = ag.groupoid

    table = {a.id: ag.arrow_of_atom[(a.id,)] for a in G.arrows}
    cert = {"kind": "groupoid_roundtrip",
            "objects": len(G.objects),
            "arrows": len(G.arrows),
            "functor": sorted([a, b] for a, b in table.items())}

    def fail(reason, a, b=None):
        cert["violation"] = {"reason": reason, "arrow": a, "other": b}
        raise RoundTripFailure(reason, cert)

    if len(set(table.values())) != len(H.arrows):
        fail("arrow map not bijective", "")
    obj_map = {}
    for a in G.arrows:
        ha = H.arrow_by_id[table[a.id]]
        for g_obj, h_obj in ((a.src, ha.src), (a.dst, ha.dst)):
            if obj_map.setdefault(g_obj, h_obj) != h_obj:
                fail("object map inconsistent", a.id)
    if len(set(obj_map.values())) != len(H.objects):
        fail("object map not bijective", "")
    for a in G.arrows:
        if table[G.inverse[a.id]] != H.inverse[table[a.id]]:
            fail("inverse not preserved", a.id)
        for b in G.arrows:
            if b.dst != a.src:
                continue
            if table[G.compose[(a.id, b.id)]] != \
                    H.compose[(table[a.id], table[b.id])]:
                fail("composition not preserved", a.id, b.id)
    for x, e in G.identities.items():
        if H.identities[obj_map[x]] != table[e]:
            fail("identities not preserved", e)
    cert["verified"] = True
    return cert
