"""Universal Lie-word fit for the order-(k+1) bidifferential operator.

Writing psi = sum_i xi_i(x) eta_i(y) dx ^ dy over monomial separable terms,
the fit looks for universal rational coefficients Lambda_{sigma,tau}, one per
pair of permutation words of length k, such that

    m_{k+1}(f, g) = sum over index tuples (i_1 .. i_{k+1}) of
        Lambda_{sigma,tau} * [L_{X_{i_1}} word_sigma(X_{i_2..}) f]
                           * [L_{Y_{i_1}} word_tau(Y_{i_2..}) g]

holds simultaneously for every sample psi, with m_{k+1} taken from the exact
order-by-order construction.  X_i = xi_i dx, Y_i = eta_i dy, and a word acts
by composing the corresponding first-order operators in the given order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

from . import linsolve
from .diffop import BiDiffOp, DiffOp
from .poly import Poly2
from .quantize import QuantizeConfig, quantize


@dataclass
class FitReport:
    k: int
    status: str  # "ok" | "underdetermined" | "not_representable"
    lambdas: dict = field(default_factory=dict)  # (sigma, tau) -> Fraction
    num_unknowns: int = 0
    rank: int = 0
    kernel_dim: int = 0
    samples: list = field(default_factory=list)


def _separable_terms(phi: Poly2):
    """Monomial decomposition phi = sum_i xi_i(x) * eta_i(y)."""
    out = []
    for (i, j), c in phi.sorted_terms():
        out.append((Poly2.monomial(i, 0, c), Poly2.monomial(0, j)))
    return out


def _word_op(letters, order, axis):
    """Compose L over the given letters in word order (leftmost outermost)."""
    op = DiffOp.identity()
    for idx in order:
        xi = letters[idx]
        key = (1, 0) if axis == "x" else (0, 1)
        op = op.compose(DiffOp({key: xi}))
    return op


def _tensor(a: DiffOp, b: DiffOp) -> BiDiffOp:
    terms = {}
    for da, ca in a.terms.items():
        for db, cb in b.terms.items():
            key = (da, db)
            c = ca * cb
            if key in terms:
                c = terms[key] + c
            if c:
                terms[key] = c
            elif key in terms:
                del terms[key]
    return BiDiffOp(terms)


def _ansatz_ops(phi: Poly2, k: int):
    """BiDiffOp per (sigma, tau) word pair, summed over index tuples."""
    terms = _separable_terms(phi)
    n = len(terms)
    words = list(permutations(range(k)))
    ops = {(s, t): BiDiffOp() for s in words for t in words}
    for tup in product(range(n), repeat=k + 1):
        xis = [terms[i][0] for i in tup]
        etas = [terms[i][1] for i in tup]
        x_words = {}
        y_words = {}
        for w in words:
            order = [0] + [1 + w[i] for i in range(k)]
            x_words[w] = _word_op(xis, order, "x")
            y_words[w] = _word_op(etas, order, "y")
        for s in words:
            for t in words:
                ops[(s, t)] = ops[(s, t)] + _tensor(x_words[s], y_words[t])
    return ops


def fit_lie_words(phi_samples, k: int, cfg: QuantizeConfig | None = None) -> FitReport:
    if k < 1:
        raise ValueError("k must be >= 1")
    samples = list(phi_samples)
    base = cfg or QuantizeConfig(order=k + 1)
    pairs = None
    rows = []
    targets = []
    for phi in samples:
        m = quantize(phi, QuantizeConfig(k + 1, base.max_op_order,
                                         base.max_coeff_degree, base.escalation_steps))
        target = m.order_op(k + 1)
        ops = _ansatz_ops(phi, k)
        if pairs is None:
            pairs = sorted(ops)
        targets.append((target, ops))
        keys = set(target.terms)
        for op in ops.values():
            keys |= set(op.terms)
        for key in sorted(keys):
            mons = set(target.terms.get(key, Poly2.zero()).terms)
            for op in ops.values():
                mons |= set(op.terms.get(key, Poly2.zero()).terms)
            rhs_poly = target.terms.get(key, Poly2.zero())
            for mon in sorted(mons):
                coeffs = {}
                for col, pair in enumerate(pairs):
                    v = ops[pair].terms.get(key, Poly2.zero()).coeff(*mon)
                    if v:
                        coeffs[col] = v
                rows.append((coeffs, rhs_poly.coeff(*mon)))
    res = linsolve.solve(rows, len(pairs))
    report = FitReport(k=k, status="ok", num_unknowns=len(pairs),
                       rank=res.rank, kernel_dim=res.kernel_dim,
                       samples=samples)
    if not res.consistent:
        report.status = "not_representable"
        return report
    lambdas = {pairs[i]: res.solution[i] for i in range(len(pairs))}
    # re-substitute to certify the fit on every sample
    for target, ops in targets:
        acc = BiDiffOp()
        for pair, lam in lambdas.items():
            if lam:
                acc = acc + BiDiffOp({key: p * lam for key, p in ops[pair].terms.items()})
        if acc != target:
            report.status = "not_representable"
            return report
    report.lambdas = lambdas
    if res.kernel_dim:
        report.status = "underdetermined"
    return report
