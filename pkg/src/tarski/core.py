"""Generic operators over Boolean inverse meet-monoids.

An instance supplies multiplication, inversion, the constants zero and one,
an idempotent test, complementation inside the Boolean algebra of
idempotents, and instance-specific meet/join.  Everything else -- the
natural partial order, compatibility, the fixed-point operator phi, the
support operator sigma, and the unit constructions built from balanced
elements and infinitesimals -- is derived here once and shared by every
concrete instance.

Convention: ``multiply(s, t)`` applies ``t`` first ("s after t"), so that
elements compose like functions acting on points from the left.
"""


class AlgebraError(Exception):
    """An algebraic precondition failed."""


class Incompatible(AlgebraError):
    """Join requested for an incompatible pair."""


class NotAUnit(AlgebraError):
    pass


class NotBalanced(AlgebraError):
    """unit_from_balanced needs d(s) = r(s)."""


class NotInfinitesimal(AlgebraError):
    pass


class Monoid:
    """Contract a Boolean inverse meet-monoid instance implements.

    Elements are immutable values with canonical-form equality: two
    elements are equal iff their normalized representations are equal,
    so ``==`` and ``hash`` are always sound.
    """

    zero = None
    one = None

    # -- instance-supplied primitives -----------------------------------

    def multiply(self, s, t):
        raise NotImplementedError

    def inverse(self, s):
        raise NotImplementedError

    def is_idempotent(self, s):
        raise NotImplementedError

    def complement(self, e):
        """Complement of an idempotent in the Boolean algebra E(S)."""
        raise NotImplementedError

    def raw_meet(self, s, t):
        raise NotImplementedError

    def raw_join(self, s, t):
        """Join of a pair already known to be compatible."""
        raise NotImplementedError

    # -- derived operators ----------------------------------------------

    def domain(self, s):
        """The domain idempotent d(s) = s^-1 s."""
        return self.multiply(self.inverse(s), s)

    def range(self, s):
        """The range idempotent r(s) = s s^-1."""
        return self.multiply(s, self.inverse(s))

    def leq(self, s, t):
        """Natural partial order: s <= t iff s = t d(s)."""
        return s == self.multiply(t, self.domain(s))

    def compatible(self, s, t):
        """s ~ t iff s t^-1 and s^-1 t are both idempotent."""
        return (self.is_idempotent(self.multiply(s, self.inverse(t)))
                and self.is_idempotent(self.multiply(self.inverse(s), t)))

    def orthogonal(self, s, t):
        """s _|_ t iff s t^-1 and s^-1 t are both zero."""
        return (self.multiply(s, self.inverse(t)) == self.zero
                and self.multiply(self.inverse(s), t) == self.zero)

    def meet(self, s, t):
        return self.raw_meet(s, t)

    def join(self, s, t):
        if not self.compatible(s, t):
            raise Incompatible(f"no join: {s} and {t} are incompatible")
        return self.raw_join(s, t)

    def join_all(self, parts):
        """Iterated binary join; parts must be pairwise compatible."""
        parts = list(parts)
        if not parts:
            return self.zero
        acc = parts[0]
        for p in parts[1:]:
            acc = self.join(acc, p)
        return acc

    def phi(self, s):
        """Fixed-point operator phi(s) = s /\\ 1 (always an idempotent)."""
        return self.raw_meet(s, self.one)

    def sigma(self, s):
        """Support operator: complement(phi(s)) * d(s), the moving part."""
        return self.multiply(self.complement(self.phi(s)), self.domain(s))

    def cooper_decompose(self, s):
        """Split s into its fixed part and moving part.

        Returns (phi(s), s * sigma(s)); the two parts are orthogonal, join
        back to s, and the second has no fixed part.
        """
        return self.phi(s), self.multiply(s, self.sigma(s))

    # -- units and infinitesimals ---------------------------------------

    def is_unit(self, s):
        return self.domain(s) == self.one and self.range(s) == self.one

    def is_involution(self, s):
        return self.is_unit(s) and self.multiply(s, s) == self.one

    def is_infinitesimal(self, s):
        return s != self.zero and self.multiply(s, s) == self.zero

    def commutator(self, g, h):
        if not (self.is_unit(g) and self.is_unit(h)):
            raise NotAUnit("commutator is defined on units only")
        ghg = self.multiply(self.multiply(g, h), self.inverse(g))
        return self.multiply(ghg, self.inverse(h))

    def unit_from_balanced(self, s):
        """Extend an element with d(s) = r(s) to a unit by the identity
        on the complement of its domain."""
        e = self.domain(s)
        if e != self.range(s):
            raise NotBalanced(f"d(s) != r(s) for {s}")
        return self.join(s, self.complement(e))

    def involution_from_infinitesimal(self, a):
        """The involution a v a^-1 v e, where e is the identity off the
        domain and range of a.  Non-trivial and lies above a."""
        if not self.is_infinitesimal(a):
            raise NotInfinitesimal(f"{a} is not an infinitesimal")
        e = self.multiply(self.complement(self.domain(a)),
                          self.complement(self.range(a)))
        return self.join(self.join(a, self.inverse(a)), e)
