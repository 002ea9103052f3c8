"""The one-dimensional anyonic line C[t]/t^n and its braided tensor powers.

A single coordinate t of degree 1 satisfies t^n = 0.  Distinct tensor
slots keep their position; moving a later slot past an earlier one picks
up the phase zeta_n, so slot j crossing slot i (j > i) costs zeta_n per
unit exponent pair.  Addition of anyonic variables is the coproduct
t -> t1 + t2; its powers expand with Gaussian binomial coefficients, and
[n,k] at zeta_n vanishing is exactly what kills (t1 + t2)^n.

Calculus: the braided derivative acts on monomials by the q-integer rule
d(t^k) = [k]_q t^(k-1) with q = zeta_n, and integration picks out the
coefficient of the top power t^(n-1).

The antipode on monomials uses the closed form
S(t^k) = (-1)^k zeta_n^(k(k-1)/2) t^k, the phases accumulated by
reversing k strands; a recursive expansion from the antipode law is kept
alongside as an independent oracle, and the law itself is property-tested.
"""

from __future__ import annotations

from functools import lru_cache

from .cyclotomic import CycNum, q_integer, root_of_unity

__all__ = [
    "ThetaPoly",
    "coproduct",
    "counit",
    "antipode",
    "antipode_recursive",
    "braided_derivative",
    "braided_integral",
    "parse_theta_expr",
    "ExprError",
]


def _as_cyc(value) -> CycNum:
    return value if isinstance(value, CycNum) else CycNum.promote(value)


class ThetaPoly:
    """Element of the m-fold braided tensor power of C[t]/t^n.

    Terms map exponent tuples (e1..em), all entries < n, to coefficients;
    monomials with any exponent >= n are annihilated on construction.
    """

    __slots__ = ("n", "vars", "terms")

    def __init__(self, n: int, vars: int, terms=()):
        if n < 1:
            raise ValueError("modulus n must be >= 1")
        if vars < 1:
            raise ValueError("need at least one tensor slot")
        self.n = n
        self.vars = vars
        out = {}
        for exps, val in dict(terms).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != vars:
                raise ValueError(f"exponent tuple {exps} does not have {vars} slots")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponents are not allowed")
            if any(e >= n for e in exps):
                continue  # t^n = 0
            val = _as_cyc(val)
            if not val.is_zero():
                cur = out.get(exps)
                out[exps] = val if cur is None else cur + val
        self.terms = {k: v for k, v in out.items() if not v.is_zero()}

    @classmethod
    def zero(cls, n: int, vars: int = 1) -> "ThetaPoly":
        return cls(n, vars)

    @classmethod
    def one(cls, n: int, vars: int = 1) -> "ThetaPoly":
        return cls(n, vars, {(0,) * vars: CycNum.one()})

    @classmethod
    def theta(cls, n: int, vars: int = 1, slot: int = 1) -> "ThetaPoly":
        """The coordinate of the given slot (1-based)."""
        if not 1 <= slot <= vars:
            raise ValueError(f"slot {slot} outside 1..{vars}")
        exps = tuple(1 if i == slot - 1 else 0 for i in range(vars))
        return cls(n, vars, {exps: CycNum.one()})

    @classmethod
    def monomial(cls, n: int, exps, coeff=1) -> "ThetaPoly":
        exps = tuple(exps)
        return cls(n, len(exps), {exps: _as_cyc(coeff)})

    def _check_shape(self, other: "ThetaPoly"):
        if self.n != other.n or self.vars != other.vars:
            raise ValueError("operands live in different anyspaces")

    def __add__(self, other):
        self._check_shape(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            cur = out.get(k)
            out[k] = v if cur is None else cur + v
        return ThetaPoly(self.n, self.vars, out)

    def __sub__(self, other):
        self._check_shape(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            cur = out.get(k)
            out[k] = -v if cur is None else cur - v
        return ThetaPoly(self.n, self.vars, out)

    def __neg__(self):
        return ThetaPoly(self.n, self.vars, {k: -v for k, v in self.terms.items()})

    def scaled(self, scalar) -> "ThetaPoly":
        scalar = _as_cyc(scalar)
        return ThetaPoly(self.n, self.vars, {k: scalar * v for k, v in self.terms.items()})

    def __rmul__(self, scalar):
        return self.scaled(scalar)

    def __mul__(self, other):
        """Braided product: slots stay ordered, and each unit of slot j in
        the left factor crossing a unit of slot i < j in the right factor
        contributes a zeta_n phase."""
        if isinstance(other, (int, CycNum)):
            return self.scaled(other)
        self._check_shape(other)
        n = self.n
        zeta = root_of_unity(n, 1)
        out = {}
        for a, va in self.terms.items():
            for b, vb in other.terms.items():
                exps = tuple(x + y for x, y in zip(a, b))
                if any(e >= n for e in exps):
                    continue
                crossings = 0
                for j in range(1, self.vars):
                    if a[j]:
                        for i in range(j):
                            crossings += a[j] * b[i]
                val = va * vb
                if crossings % n:
                    val = val * root_of_unity(n, crossings)
                cur = out.get(exps)
                out[exps] = val if cur is None else cur + val
        return ThetaPoly(n, self.vars, out)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined")
        result = ThetaPoly.one(self.n, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, ThetaPoly):
            return NotImplemented
        return self.n == other.n and self.vars == other.vars and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exps) -> CycNum:
        return self.terms.get(tuple(exps), CycNum.zero())

    def widened(self, vars: int, offset: int = 0) -> "ThetaPoly":
        """Re-embed into a larger tensor power, shifting slots by offset."""
        assert vars >= self.vars + offset
        out = {}
        for exps, val in self.terms.items():
            new = [0] * vars
            for i, e in enumerate(exps):
                new[i + offset] = e
            out[tuple(new)] = val
        return ThetaPoly(self.n, vars, out)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms):
            factors = []
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"t{i + 1}")
                elif e > 1:
                    factors.append(f"t{i + 1}^{e}")
            mono = "*".join(factors) if factors else "1"
            parts.append(f"({self.terms[exps]})*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"ThetaPoly[n={self.n}]({self.render()})"


def coproduct(p: ThetaPoly) -> ThetaPoly:
    """Additive coproduct t -> t1 + t2 extended as an algebra map into the
    braided tensor square."""
    if p.vars != 1:
        raise ValueError("coproduct is defined on the one-variable line")
    n = p.n
    tsum = ThetaPoly(n, 2, {(1, 0): CycNum.one(), (0, 1): CycNum.one()})
    out = ThetaPoly.zero(n, 2)
    powers = ThetaPoly.one(n, 2)
    by_exp = {k[0]: v for k, v in p.terms.items()}
    top = max(by_exp, default=0)
    for k in range(top + 1):
        if k in by_exp:
            out = out + powers.scaled(by_exp[k])
        powers = powers * tsum
    return out


def counit(p: ThetaPoly) -> CycNum:
    """Evaluation at all slots = 0: the constant coefficient."""
    return p.terms.get((0,) * p.vars, CycNum.zero())


@lru_cache(maxsize=None)
def _antipode_monomial(n: int, k: int) -> CycNum:
    """Closed-form antipode coefficient on t^k: reversing k strands
    accumulates k(k-1)/2 crossings."""
    sign = CycNum.one() if k % 2 == 0 else -CycNum.one()
    return sign * root_of_unity(n, k * (k - 1) // 2)


def antipode(p: ThetaPoly) -> ThetaPoly:
    if p.vars != 1:
        raise ValueError("antipode is defined on the one-variable line")
    return ThetaPoly(p.n, 1, {k: _antipode_monomial(p.n, k[0]) * v
                              for k, v in p.terms.items()})


def _antipode_rec_coeff(n: int, k: int, memo: dict) -> CycNum:
    """Antipode by unwinding the defining identity
    sum_j [k,j]_q S(t^j) t^(k-j) = delta_{k,0}; independent of the closed
    form above."""
    if k in memo:
        return memo[k]
    from .cyclotomic import q_binomial

    if k == 0:
        memo[0] = CycNum.one()
        return memo[0]
    q = root_of_unity(n, 1)
    total = CycNum.zero()
    for j in range(k):
        total = total + q_binomial(k, j, q) * _antipode_rec_coeff(n, j, memo)
    memo[k] = -total
    return memo[k]


def antipode_recursive(p: ThetaPoly) -> ThetaPoly:
    if p.vars != 1:
        raise ValueError("antipode is defined on the one-variable line")
    memo = {}
    return ThetaPoly(p.n, 1, {k: _antipode_rec_coeff(p.n, k[0], memo) * v
                              for k, v in p.terms.items()})


def braided_derivative(p: ThetaPoly) -> ThetaPoly:
    """d(t^k) = [k]_q t^(k-1) with q = zeta_n, extended linearly."""
    if p.vars != 1:
        raise ValueError("the derivative acts on the one-variable line")
    q = root_of_unity(p.n, 1)
    out = {}
    for (k,), val in p.terms.items():
        if k == 0:
            continue
        coeff = q_integer(k, q) * val
        if not coeff.is_zero():
            cur = out.get((k - 1,))
            out[(k - 1,)] = coeff if cur is None else cur + coeff
    return ThetaPoly(p.n, 1, out)


def braided_integral(p: ThetaPoly) -> CycNum:
    """Berezin-style integral: the coefficient of t^(n-1)."""
    if p.vars != 1:
        raise ValueError("the integral acts on the one-variable line")
    return p.terms.get((p.n - 1,), CycNum.zero())


# ---------------------------------------------------------------------------
# tiny expression grammar for the command line: +, -, *, ^, ( ), t1..tm
# ---------------------------------------------------------------------------

class ExprError(ValueError):
    pass


def _tokenize(src: str):
    tokens = []
    i = 0
    while i < len(src):
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^()":
            tokens.append(ch)
            i += 1
            continue
        if ch == "t":
            j = i + 1
            while j < len(src) and src[j].isdigit():
                j += 1
            if j == i + 1:
                raise ExprError("variable needs a slot number, like t1")
            tokens.append(("var", int(src[i + 1 : j])))
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            tokens.append(("int", int(src[i:j])))
            i = j
            continue
        raise ExprError(f"unexpected character {ch!r} at position {i}")
    return tokens


def parse_theta_expr(src: str, n: int, vars: int = None) -> ThetaPoly:
    """Parse an expression over +, -, *, integer powers and t1..tm.

    If `vars` is omitted, the number of slots is the largest variable
    index that appears (at least 1).
    """
    tokens = _tokenize(src)
    if vars is None:
        vars = max([t[1] for t in tokens if isinstance(t, tuple) and t[0] == "var"],
                   default=1)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        if pos >= len(tokens):
            raise ExprError("unexpected end of expression")
        tok = tokens[pos]
        if expected is not None and tok != expected:
            raise ExprError(f"expected {expected!r}, found {tok!r}")
        pos += 1
        return tok

    def parse_sum():
        node = parse_product()
        while peek() in ("+", "-"):
            op = take()
            right = parse_product()
            node = node + right if op == "+" else node - right
        return node

    def parse_product():
        node = parse_power()
        while True:
            nxt = peek()
            if nxt == "*":
                take()
                node = node * parse_power()
            elif nxt == "(" or (isinstance(nxt, tuple) and nxt[0] == "var"):
                node = node * parse_power()  # juxtaposition
            else:
                return node

    def parse_power():
        base = parse_atom()
        if peek() == "^":
            take()
            tok = take()
            if not (isinstance(tok, tuple) and tok[0] == "int"):
                raise ExprError("exponent must be a nonnegative integer")
            return base ** tok[1]
        return base

    def parse_atom():
        tok = peek()
        if tok == "(":
            take()
            node = parse_sum()
            take(")")
            return node
        if tok == "-":
            take()
            return -parse_atom()
        if tok == "+":
            take()
            return parse_atom()
        if isinstance(tok, tuple) and tok[0] == "var":
            take()
            slot = tok[1]
            if not 1 <= slot <= vars:
                raise ExprError(f"variable t{slot} outside 1..{vars}")
            return ThetaPoly.theta(n, vars, slot)
        if isinstance(tok, tuple) and tok[0] == "int":
            take()
            return ThetaPoly.one(n, vars).scaled(tok[1])
        raise ExprError(f"unexpected token {tok!r}")

    result = parse_sum()
    if pos != len(tokens):
        raise ExprError(f"trailing input from token {tokens[pos]!r}")
    return result
