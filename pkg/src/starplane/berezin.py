"""Berezin data for a normalized star product on the plane.

The adjoint operator (1/h) ad x acts on g only through y-derivatives; it
factors as phi dy (1 + S dy) for a unique y-operator S = O(h).  The density
f then solves phi (1 + dy S) f = 1 and differs from 1/phi by an exact
y-derivative, witnessed by tau = -S f.  All coefficients live in the ring of
polynomials localized at phi, so everything stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from .errors import IntegrationObstruction, NotNormalized
from .localized import LocalizedFn
from .poly import Poly2
from .quantize import QuantizeConfig, quantize
from .series import HSeries
from .star import StarProduct, extract_poisson_p3, spq_membership


class YOpSeries:
    """Operator sum_b w_b(x, y; h) dy^b with HSeries<LocalizedFn> coefficients."""

    __slots__ = ("n_order", "terms", "phi")

    def __init__(self, n_order: int, terms, phi: Poly2):
        self.n_order = n_order
        self.terms = {b: w for b, w in terms.items() if not w.is_zero()}
        self.phi = phi

    def zero_series(self) -> HSeries:
        return HSeries.constant(LocalizedFn(0, 0, self.phi), self.n_order)

    def coeff(self, b: int) -> HSeries:
        return self.terms.get(b, self.zero_series())

    def apply(self, f: HSeries) -> HSeries:
        out = self.zero_series()
        for b, w in self.terms.items():
            out = out + w * _series_dy(f, b)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def h_trailing_zero(self) -> bool:
        """True when the h^0 part vanishes (operator is O(h))."""
        return all(not w[0] for w in self.terms.values())

    def __eq__(self, other):
        if not isinstance(other, YOpSeries):
            return NotImplemented
        return (self.n_order == other.n_order and self.phi == other.phi
                and self.terms == other.terms)

    def __repr__(self):
        body = " + ".join(f"({w!r})*dy^{b}" for b, w in sorted(self.terms.items()))
        return f"YOpSeries[{body or '0'}]"


def _series_dy(f: HSeries, n: int = 1) -> HSeries:
    return HSeries(f.order, [c.dy(n) for c in f.coeffs])


@dataclass
class BerezinData:
    S: YOpSeries
    f: HSeries
    tau: HSeries
    phi: Poly2
    n_order: int

    @property
    def omega_coeff(self) -> HSeries:
        """Coefficient of dx ^ dy in the 2-form Omega."""
        return self.f


def ad_x(m: StarProduct, phi: Poly2) -> YOpSeries:
    """(1/h)(x * g - g * x) as a y-operator series, read off the a = 1 column.

    Against f = x only single x-derivatives survive, and m_k(g, x) vanishes
    because the second slot only sees y-derivatives.
    """
    if not spq_membership(m):
        raise NotNormalized("ad_x requires a normalized (pure-shape) product")
    p3 = extract_poisson_p3(m)
    if p3.coeffs[0] != phi:
        raise NotNormalized("phi does not match the leading Poisson coefficient")
    N = m.n_order - 1
    terms = {}
    for k in range(1, m.n_order + 1):
        op = m.order_op(k)
        for ((ax, ay), (bx, by)), c in op.terms.items():
            if ax != 1:
                continue
            w = terms.setdefault(by, [LocalizedFn(0, 0, phi)] * (N + 1))
            w[k - 1] = w[k - 1] + LocalizedFn(c, 0, phi)
    return YOpSeries(N, {b: HSeries(N, w) for b, w in terms.items()}, phi)


def extract_S(W: YOpSeries, phi: Poly2) -> YOpSeries:
    """Solve phi dy (1 + S dy) = W for the finite S = sum_j s_j dy^j, S = O(h).

    Matching the dy^b coefficient of both sides gives the triangular system
    s_{b-1}' + s_{b-2} = v_b (primes are d/dy on coefficients) with
    V = W/phi - dy and the b = 1 slot reading s_0' = v_1.  A finite S exists
    only when the chain is cut from the top: with B + 1 the highest dy-order
    of W, set s_B = 0 and back-substitute s_{b-2} = v_b - s_{b-1}' downward;
    the leftover b = 1 slot is then a consistency check.  (Solving upward by
    y-antiderivatives instead generically produces an infinite tail: a
    nonzero s_{j-1} forces a nonzero s_j.)
    """
    N = W.n_order
    zero = HSeries.constant(LocalizedFn(0, 0, phi), N)
    v = {}
    for b, w in W.terms.items():
        vb = HSeries(N, [c.div_phi() for c in w.coeffs])
        if b == 1:
            vb = vb - HSeries.constant(LocalizedFn(1, 0, phi), N)
        if not vb.is_zero():
            v[b] = vb
    maxb = max(v, default=1)
    s = {j: zero for j in range(max(maxb - 2, 0) + 1)}
    for b in range(maxb, 1, -1):
        s[b - 2] = v.get(b, zero) - _series_dy(s.get(b - 1, zero))
    if _series_dy(s[0]) != v.get(1, zero):
        raise IntegrationObstruction("no finite S: the dy^1 slot is inconsistent")
    S = YOpSeries(N, s, phi)
    if not S.h_trailing_zero():
        raise IntegrationObstruction("extracted S has a nonzero h^0 part")
    return S


def density_f(phi: Poly2, S: YOpSeries, N: int) -> BerezinData:
    """Unique f with phi (1 + dy S) f = 1 mod h^(N+1), via the fixed point
    f = 1/phi - dy(S f); tau = -S f certifies f - 1/phi = dy(tau)."""
    inv = LocalizedFn.one_over_phi(phi)
    zero = LocalizedFn(0, 0, phi)
    coeffs = [inv] + [zero] * N
    for n in range(1, N + 1):
        partial = HSeries(N, coeffs)
        g = _series_dy(S.apply(partial))
        coeffs[n] = -g[n]
    f = HSeries(N, coeffs)
    tau = -S.apply(f)
    # defining identity, exact through h^N
    lhs = (f + _series_dy(S.apply(f))) * LocalizedFn(phi, 0, phi)
    one = HSeries.constant(LocalizedFn(1, 0, phi), N)
    if lhs != one:
        raise IntegrationObstruction("density identity phi(1 + dy S)f = 1 failed")
    return BerezinData(S=S, f=f, tau=tau, phi=phi, n_order=N)


def berezin_pipeline(phi: Poly2, N: int, cfg: QuantizeConfig | None = None) -> BerezinData:
    """quantize -> ad_x -> S -> density, all exact through h^N."""
    base = cfg or QuantizeConfig(order=N + 1)
    if base.order != N + 1:
        base = QuantizeConfig(N + 1, base.max_op_order, base.max_coeff_degree,
                              base.escalation_steps)
    m = quantize(phi, base)
    W = ad_x(m, phi)
    S = extract_S(W, phi)
    return density_f(phi, S, N)
