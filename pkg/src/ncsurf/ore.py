"""Ore-operator arithmetic over sympy rational-function fields.

An operator is a finite sum sum_k c_k(z) S^k where the generator S acts on
functions by a twist sigma (q-scaling or additive shift of z) or by d/dz.
Multiplication realizes S.g = sigma(g).S (twist kinds) or S.g = g.S + g'
(differential kind)."""

from math import comb


def subs_gen(F, g, index, val):
    """Substitute the field generator F.gens[index] by the field element val
    in the FracElement g (term-wise; handles fractional val)."""
    return _subs_poly(F, g.numer, index, val) / _subs_poly(F, g.denom, index, val)


def _subs_poly(F, p, index, val):
    gens = [F(x) for x in F.gens]
    gens[index] = val
    out = F.zero
    for monom, coeff in p.terms():
        term = F.one * coeff
        for base, k in zip(gens, monom):
            if k:
                term = term * base ** k
        out = out + term
    return out


class OreAlgebra:
    """kind: 'diff' (S = d/dz), 'ashift' (S: z -> z + step), or 'qshift'
    (S: z -> step*z); z_index locates the acted-on variable among F.gens."""

    def __init__(self, F, kind, step=None, z_index=0):
        if kind not in ("diff", "ashift", "qshift"):
            raise ValueError("unknown algebra kind %r" % (kind,))
        if kind != "diff" and step is None:
            raise ValueError("shift algebras need a step element")
        self.F = F
        self.kind = kind
        self.step = step
        self.z_index = z_index
        self.z = F(F.gens[z_index])

    def sigma(self, g, power=1):
        if power == 0 or self.kind == "diff":
            return g
        if self.kind == "ashift":
            val = self.z + power * self.step
        elif power >= 0:
            val = self.step ** power * self.z
        else:
            val = self.z / self.step ** (-power)
        return subs_gen(self.F, g, self.z_index, val)

    def delta(self, g, order=1):
        x = self.F.gens[self.z_index]
        for _ in range(order):
            g = g.diff(x)
        return g

    # operator constructors
    def op(self, terms):
        return OreOp(self, {k: self.F.one * c for k, c in terms.items() if c})

    def S(self, k=1):
        if self.kind == "diff" and k < 0:
            raise ValueError("differential operators have nonnegative degree")
        return self.op({k: self.F.one})

    def mult(self, g):
        return self.op({0: g})

    def zero(self):
        return self.op({})

    def one(self):
        return self.op({0: self.F.one})


class OreOp:
    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = {k: c for k, c in terms.items() if c}

    def _check(self, other):
        if other.alg is not self.alg:
            raise ValueError("operators come from different algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, self.alg.F.zero) + c
        return OreOp(self.alg, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return OreOp(self.alg, {k: -c for k, c in self.terms.items()})

    def scale(self, g):
        """Left multiplication by the function g."""
        return OreOp(self.alg, {k: g * c for k, c in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        alg = self.alg
        out = {}

        def acc(k, c):
            if c:
                out[k] = out.get(k, alg.F.zero) + c

        if alg.kind == "diff":
            for i, a in self.terms.items():
                for j, b in other.terms.items():
                    # S^i.b = sum_t C(i,t) b^(t) S^(i-t)
                    for t in range(i + 1):
                        acc(i - t + j, comb(i, t) * a * alg.delta(b, t))
        else:
            for i, a in self.terms.items():
                for j, b in other.terms.items():
                    acc(i + j, a * alg.sigma(b, i))
        return OreOp(self.alg, out)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative operator powers are not supported")
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def apply(self, g):
        alg = self.alg
        out = alg.F.zero
        for k, c in self.terms.items():
            if alg.kind == "diff":
                out = out + c * alg.delta(g, k)
            else:
                out = out + c * alg.sigma(g, k)
        return out

    def coeff(self, k):
        return self.terms.get(k, self.alg.F.zero)

    def support(self):
        return sorted(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, OreOp):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("operators are mutable-style values; not hashable")

    def degree(self):
        return max(self.terms) if self.terms else None

    def lead(self):
        return self.terms[max(self.terms)] if self.terms else self.alg.F.zero

    def __repr__(self):
        if not self.terms:
            return "OreOp(0)"
        return "OreOp(" + " + ".join(
            "(%s)*S^%d" % (c, k) for k, c in sorted(self.terms.items())
        ) + ")"
