"""
Randomized identity suites.

Each identity draws its cases from a ``random.Random`` seeded with ``"<seed>:<suite>.<name>"``
and compares both sides by exact equality of normal forms. Reports are deterministic for a
fixed seed whatever the number of workers.
"""

import logging
import random
import time
from concurrent import futures
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from iterated_forms.calculus import (CInsertion, ExteriorDifferential, Insertion, LieDerivative, d, d_iterated,
                                     d_partition, graded_commutator, homotopy_identity_defect, include_lambda01,
                                     kappa, lambda01_to_lambda1, lie, lie_via_cartan, primitive, project_lambda01,
                                     pullback)
from iterated_forms.coeffs import SmoothMap, Space, vf_bracket
from iterated_forms.errors import IteratedFormsError, UnknownSuiteError
from iterated_forms.forms import Form, slot_degree_components, wedge_all
from iterated_forms.grading import SlotPermutation, sign_of
from iterated_forms.sampling import COORDINATE_NAMES, Sampler, default_space
from iterated_forms.tensors import (alternate, alternation, contract, embed, evaluate_components,
                                    evaluate_insertion, extract, find_linearity_violation, insert_slot, is_tensor,
                                    lie_tensor, linearity_defect, permute, pullback_tensor, shift_slots, symmetrization,
                                    symmetrize, tensor_product)

logger = logging.getLogger(__name__)

SUITES = ("commutation", "partition", "kappa", "homotopy", "tensor", "pullback")

# Random cases per identity unless a run asks for more or fewer
DEFAULT_CASES = 200

Case = Callable[[Sampler], Optional[str]]


class CheckParameters:
    """
    Parameters of a suite run

    Keyword Args:
        seed (int): base seed; every identity derives its own generator from it
        cases (int): random cases per identity
        workers (int): identities evaluated concurrently
        dimension (int): number of coordinates of the sampled space
        max_degree (int): largest total degree of sampled polynomials
        max_terms (int): largest number of terms in sampled polynomials and forms
        max_generators (int): largest number of generators in a sampled monomial
        max_slot (int): slot ceiling of the forms and index sets drawn for the Λ_∞-wide identities
    """

    def __init__(self, **kwargs):
        self.seed: int = kwargs.get("seed", 0)
        self.cases: int = kwargs.get("cases", DEFAULT_CASES)
        self.workers: int = kwargs.get("workers", 1)
        self.dimension: int = kwargs.get("dimension", 2)
        self.max_degree: int = kwargs.get("max_degree", 2)
        self.max_terms: int = kwargs.get("max_terms", 3)
        self.max_generators: int = kwargs.get("max_generators", 3)
        self.max_slot: int = kwargs.get("max_slot", 4)
        if self.cases < 1:
            raise ValueError("At least one case per identity is required")
        if self.max_slot < 1:
            raise ValueError("The slot ceiling must be positive")
        if self.workers < 1:
            raise ValueError("At least one worker is required")

    def sampler(self, key: str) -> Sampler:
        """
        A fresh sampler whose random stream depends only on the seed and ``key``
        """

        rng = random.Random("{}:{}".format(self.seed, key))
        return Sampler(rng, default_space(self.dimension), max_degree=self.max_degree, max_terms=self.max_terms,
                       max_generators=self.max_generators, max_slot=self.max_slot)


@dataclass(frozen=True)
class Identity:
    suite: str
    name: str
    description: str
    case: Case

    @property
    def key(self) -> str:
        return "{}.{}".format(self.suite, self.name)


@dataclass(frozen=True)
class IdentityResult:
    """
    Outcome of one identity: the number of cases run and the first counterexample, if any
    """

    identity: Identity
    cases: int
    counterexample: Optional[str] = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        line = "{} {:<40} {} cases".format(status, self.identity.key, self.cases)
        if not self.passed:
            line += "\n    {}".format(self.counterexample)
        return line


@dataclass(frozen=True)
class CheckReport:
    suite: str
    seed: int
    results: Tuple[IdentityResult, ...]

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failures(self) -> List[IdentityResult]:
        return [result for result in self.results if not result.passed]

    def __str__(self):
        lines = [str(result) for result in self.results]
        lines.append("{}: {} of {} identities passed (seed {})".format(
            self.suite, len(self.results) - len(self.failures), len(self.results), self.seed))
        return "\n".join(lines)


def _differ(lhs: Form, rhs: Form, *context) -> Optional[str]:
    if lhs == rhs:
        return None
    return "{}: {} != {}".format(", ".join(str(c) for c in context), lhs, rhs)


def _nonzero(value: Form, *context) -> Optional[str]:
    if not value:
        return None
    return "{}: expected 0, got {}".format(", ".join(str(c) for c in context), value)


def _target_space(sampler: Sampler) -> Space:
    return Space(COORDINATE_NAMES[-sampler.space.dimension:])


# commutation


def d_squared(sampler: Sampler) -> Optional[str]:
    omega = sampler.form(sampler.max_slot)
    k = sampler.randint(1, sampler.max_slot)
    return _nonzero(d(k, d(k, omega)), "ω = {}".format(omega), "k = {}".format(k))


def d_commute(sampler: Sampler) -> Optional[str]:
    omega = sampler.form(sampler.max_slot)
    i, j = sampler.randint(1, sampler.max_slot), sampler.randint(1, sampler.max_slot)
    bracket = graded_commutator(ExteriorDifferential(i), ExteriorDifferential(j))
    return _nonzero(bracket(omega), "ω = {}".format(omega), "i = {}, j = {}".format(i, j))


def wedge_graded_commutative(sampler: Sampler) -> Optional[str]:
    a, b = sampler.monomial(sampler.max_slot), sampler.monomial(sampler.max_slot)
    sign = sign_of(a.degree(), b.degree())
    return _differ(a * b, (b * a).scale(sign), "a = {}".format(a), "b = {}".format(b))


def wedge_associative(sampler: Sampler) -> Optional[str]:
    a, b, c = sampler.form(3, 1), sampler.form(3, 1), sampler.form(3, 1)
    return _differ((a * b) * c, a * (b * c), "a = {}".format(a), "b = {}".format(b), "c = {}".format(c))


def insertions_commute(sampler: Sampler) -> Optional[str]:
    X, Y, omega = sampler.vector_field(), sampler.vector_field(), sampler.form(1)
    bracket = graded_commutator(Insertion(X, 1), Insertion(Y, 1))
    return _nonzero(bracket(omega), "X = {}, Y = {}".format(X, Y), "ω = {}".format(omega))


def lie_commutes_with_d(sampler: Sampler) -> Optional[str]:
    X, omega = sampler.vector_field(), sampler.form(3)
    k = sampler.randint(1, 3)
    bracket = graded_commutator(LieDerivative(X), ExteriorDifferential(k))
    return _nonzero(bracket(omega), "X = {}".format(X), "k = {}".format(k), "ω = {}".format(omega))


def insertion_lie(sampler: Sampler) -> Optional[str]:
    X, Y, omega = sampler.vector_field(), sampler.vector_field(), sampler.form(1)
    lhs = graded_commutator(Insertion(X, 1), LieDerivative(Y))(omega)
    return _differ(lhs, Insertion(vf_bracket(X, Y), 1)(omega), "X = {}, Y = {}".format(X, Y), "ω = {}".format(omega))


def lie_lie(sampler: Sampler) -> Optional[str]:
    X, Y, omega = sampler.vector_field(), sampler.vector_field(), sampler.form(1)
    lhs = graded_commutator(LieDerivative(X), LieDerivative(Y))(omega)
    return _differ(lhs, LieDerivative(vf_bracket(X, Y))(omega), "X = {}, Y = {}".format(X, Y),
                   "ω = {}".format(omega))


def cartan_formula(sampler: Sampler) -> Optional[str]:
    X, omega = sampler.vector_field(), sampler.form(1)
    return _differ(lie_via_cartan(X, 1, omega), lie(X, omega), "X = {}".format(X), "ω = {}".format(omega))


def insertion_commutes_with_other_d(sampler: Sampler) -> Optional[str]:
    X, omega = sampler.vector_field(), sampler.form(3)
    l, m = sampler.rng.sample([1, 2, 3], 2)
    bracket = graded_commutator(Insertion(X, l), ExteriorDifferential(m))
    return _nonzero(bracket(omega), "X = {}".format(X), "l = {}, m = {}".format(l, m), "ω = {}".format(omega))


# partition


def partition_formula(sampler: Sampler) -> Optional[str]:
    K = sampler.index_set(sampler.max_slot, max_size=3)
    f = sampler.poly(3)
    return _differ(d_partition(K, f), d_iterated(K, f), "K = {}".format(K), "f = {}".format(f))


def iterated_order_independent(sampler: Sampler) -> Optional[str]:
    K = sampler.index_set(sampler.max_slot, max_size=3)
    f = sampler.poly(3)
    slots = list(K)
    sampler.rng.shuffle(slots)
    result = Form.coefficient(f)
    for k in slots:
        result = d(k, result)
    return _differ(result, d_iterated(K, f), "order = {}".format(slots), "f = {}".format(f))


# kappa


def kappa_display(sampler: Sampler) -> Optional[str]:
    """
    κ_(12)(d₁g∧⋯∧d₂h∧⋯∧d₁₂ℓ) = d₂g∧⋯∧d₁h∧⋯∧d₁₂ℓ
    """

    space = sampler.space
    gs = [sampler.poly(2) for _ in range(sampler.randint(0, 2))]
    hs = [sampler.poly(2) for _ in range(sampler.randint(0, 2))]
    ls = [sampler.poly(2) for _ in range(sampler.randint(0, 1))]
    before = wedge_all(space, [d(1, Form.coefficient(g)) for g in gs] + [d(2, Form.coefficient(h)) for h in hs]
                       + [d_iterated((1, 2), l) for l in ls])
    after = wedge_all(space, [d(2, Form.coefficient(g)) for g in gs] + [d(1, Form.coefficient(h)) for h in hs]
                      + [d_iterated((1, 2), l) for l in ls])
    return _differ(kappa(SlotPermutation.transposition(1, 2), before), after, "g = {}, h = {}, ℓ = {}".format(
        [str(g) for g in gs], [str(h) for h in hs], [str(l) for l in ls]))


def kappa_involution(sampler: Sampler) -> Optional[str]:
    omega = sampler.form(2)
    swap = SlotPermutation.transposition(1, 2)
    return _differ(kappa(swap, kappa(swap, omega)), omega, "ω = {}".format(omega))


def kappa_composition(sampler: Sampler) -> Optional[str]:
    sigma, tau, omega = sampler.permutation(3), sampler.permutation(3), sampler.form(3)
    return _differ(kappa(sigma, kappa(tau, omega)), kappa(sigma.compose(tau), omega),
                   "σ = {}, τ = {}".format(sigma, tau), "ω = {}".format(omega))


def kappa_intertwines_d(sampler: Sampler) -> Optional[str]:
    sigma, omega = sampler.permutation(3), sampler.form(3)
    k = sampler.randint(1, 3)
    return _differ(kappa(sigma, d(k, omega)), d(sigma(k), kappa(sigma, omega)),
                   "σ = {}, k = {}".format(sigma, k), "ω = {}".format(omega))


# homotopy


def homotopy_identity(sampler: Sampler) -> Optional[str]:
    omega = sampler.form(2)
    return _nonzero(homotopy_identity_defect(omega), "ω = {}".format(omega))


def constructive_exactness(sampler: Sampler) -> Optional[str]:
    eta = sampler.form(2)
    eta = eta - include_lambda01(project_lambda01(eta))
    omega = d(2, eta)
    return _differ(d(2, primitive(omega)), omega, "ω = {}".format(omega))


def euler_operator(sampler: Sampler) -> Optional[str]:
    """
    [i_C, d₂] multiplies the slot-1 degree s component by s
    """

    omega = sampler.form(2)
    expected = Form.zero(omega.space)
    for s, component in slot_degree_components(omega, 1).items():
        expected = expected + component.scale(s)
    return _differ(graded_commutator(CInsertion(), ExteriorDifferential(2))(omega), expected, "ω = {}".format(omega))


def projection_retract(sampler: Sampler) -> Optional[str]:
    base = project_lambda01(sampler.form(2))
    return (_differ(project_lambda01(include_lambda01(base)), base, "π∘ι, ω = {}".format(base))
            or _differ(lambda01_to_lambda1(d(2, base)), d(1, lambda01_to_lambda1(base)), "relabel∘d₂, ω = {}".format(base)))


# tensor


def _order(sampler: Sampler, low: int = 0) -> int:
    return sampler.randint(low, 3)


def extract_embed(sampler: Sampler) -> Optional[str]:
    p = _order(sampler)
    T = sampler.tensor(p)
    recovered = extract(embed(T), p)
    if recovered != T:
        return "p = {}: extract(embed({})) = {}".format(p, T, recovered)
    if bool(embed(T)) != (not T.is_zero):
        return "embed({}) vanishes".format(T)
    return None


def evaluation(sampler: Sampler) -> Optional[str]:
    p = _order(sampler)
    T = sampler.tensor(p)
    fields = [sampler.vector_field() for _ in range(p)]
    lhs, rhs = evaluate_insertion(embed(T), fields), evaluate_components(T, fields)
    if lhs != rhs:
        return "T = {}, X = {}: {} != {}".format(T, [str(X) for X in fields], lhs, rhs)
    return None


def equivariance(sampler: Sampler) -> Optional[str]:
    p = _order(sampler, 1)
    T, sigma = sampler.tensor(p), sampler.permutation(p)
    return _differ(embed(permute(sigma, T)), kappa(sigma, embed(T)), "T = {}".format(T), "σ = {}".format(sigma))


def lie_compatibility(sampler: Sampler) -> Optional[str]:
    p = _order(sampler)
    X, T = sampler.vector_field(), sampler.tensor(p)
    return _differ(embed(lie_tensor(X, T)), lie(X, embed(T)), "X = {}".format(X), "T = {}".format(T))


def product_shift(sampler: Sampler) -> Optional[str]:
    p, q = sampler.randint(0, 2), sampler.randint(0, 2)
    first, second = sampler.tensor(p), sampler.tensor(q)
    return _differ(embed(tensor_product(first, second)), embed(first) * shift_slots(embed(second), p),
                   "T₁ = {}".format(first), "T₂ = {}".format(second))


def slot_contraction(sampler: Sampler) -> Optional[str]:
    p = _order(sampler, 1)
    T, X = sampler.tensor(p), sampler.vector_field()
    l = sampler.randint(1, p)
    inserted = extract(insert_slot(embed(T), X, l, order=p), p - 1)
    expected = contract(T, X, l)
    if inserted != expected:
        return "T = {}, X = {}, l = {}: {} != {}".format(T, X, l, inserted, expected)
    return None


def averaging(sampler: Sampler) -> Optional[str]:
    p = _order(sampler, 1)
    T = sampler.tensor(p)
    return (_differ(alternation(embed(T), p), embed(alternate(T)), "alternation, T = {}".format(T))
            or _differ(symmetrization(embed(T), p), embed(symmetrize(T)), "symmetrization, T = {}".format(T)))


def characterization(sampler: Sampler) -> Optional[str]:
    p = sampler.randint(2, 3)
    T, obstruction = sampler.tensor(p), sampler.obstruction(p)
    omega = embed(T) + obstruction
    result = is_tensor(omega, p)
    if result.is_tensor or result.obstruction != obstruction or result.tensor != T:
        return "ω = {}: misclassified as {} + {}".format(omega, result.tensor, result.obstruction)
    if find_linearity_violation(omega, p) is None:
        return "ω = {}: no linearity violation found".format(omega)
    fields = [sampler.vector_field() for _ in range(p)]
    f, slot = sampler.poly(2), sampler.randint(1, p)
    defect = linearity_defect(embed(T), fields, slot, f)
    if defect:
        return "T = {}: A-linearity fails in slot {} with f = {}".format(T, slot, f)
    return None


# pullback


def pullback_commutes_with_d(sampler: Sampler) -> Optional[str]:
    target = _target_space(sampler)
    phi = sampler.smooth_map(sampler.space, target)
    omega = Sampler(sampler.rng, target, max_degree=2, max_terms=2, max_generators=2).form(3)
    k = sampler.randint(1, 3)
    return _differ(pullback(phi, d(k, omega)), d(k, pullback(phi, omega)),
                   "φ = {}".format([str(c) for c in phi.components]), "k = {}".format(k), "ω = {}".format(omega))


def pullback_composition(sampler: Sampler) -> Optional[str]:
    middle = _target_space(sampler)
    phi = sampler.smooth_map(sampler.space, middle)
    psi = sampler.smooth_map(middle, sampler.space, max_degree=1)
    omega = Sampler(sampler.rng, sampler.space, max_degree=1, max_terms=2, max_generators=2).form(2)
    return _differ(pullback(SmoothMap.compose(psi, phi), omega), pullback(phi, pullback(psi, omega)),
                   "φ = {}".format([str(c) for c in phi.components]),
                   "ψ = {}".format([str(c) for c in psi.components]), "ω = {}".format(omega))


def pullback_tensor_compatibility(sampler: Sampler) -> Optional[str]:
    target = _target_space(sampler)
    phi = sampler.smooth_map(sampler.space, target)
    T = Sampler(sampler.rng, target, max_degree=2, max_terms=2).tensor(sampler.randint(0, 2))
    return _differ(embed(pullback_tensor(phi, T)), pullback(phi, embed(T)),
                   "φ = {}".format([str(c) for c in phi.components]), "T = {}".format(T))


IDENTITIES: Tuple[Identity, ...] = (
    Identity("commutation", "d_squared", "d_k d_k = 0", d_squared),
    Identity("commutation", "d_commute", "[d_i, d_j] = 0", d_commute),
    Identity("commutation", "wedge_graded_commutative", "ab = (−1)^⟨a,b⟩ ba", wedge_graded_commutative),
    Identity("commutation", "wedge_associative", "(ab)c = a(bc)", wedge_associative),
    Identity("commutation", "insertions_commute", "[i_X, i_Y] = 0", insertions_commute),
    Identity("commutation", "lie_commutes_with_d", "[L_X, d_k] = 0", lie_commutes_with_d),
    Identity("commutation", "insertion_lie", "[i_X, L_Y] = i_[X,Y]", insertion_lie),
    Identity("commutation", "lie_lie", "[L_X, L_Y] = L_[X,Y]", lie_lie),
    Identity("commutation", "cartan_formula", "L_X = [i_X, d] on Λ₁", cartan_formula),
    Identity("commutation", "insertion_commutes_with_other_d", "[i_X^(l), d_m] = 0 for l ≠ m",
             insertion_commutes_with_other_d),
    Identity("partition", "partition_formula", "partition sum = d_K f", partition_formula),
    Identity("partition", "iterated_order_independent", "d_K f independent of order", iterated_order_independent),
    Identity("kappa", "kappa_display", "κ_(12) swaps d₁ and d₂, fixes d₁₂", kappa_display),
    Identity("kappa", "kappa_involution", "κ_(12)² = id", kappa_involution),
    Identity("kappa", "kappa_composition", "κ_σ κ_τ = κ_στ", kappa_composition),
    Identity("kappa", "kappa_intertwines_d", "κ_σ d_k = d_σ(k) κ_σ", kappa_intertwines_d),
    Identity("homotopy", "homotopy_identity", "[H₂, d₂] = id − ιπ", homotopy_identity),
    Identity("homotopy", "constructive_exactness", "d₂ H₂ ω = ω for closed ω with π(ω) = 0",
             constructive_exactness),
    Identity("homotopy", "euler_operator", "[i_C, d₂] = s on slot-1 degree s", euler_operator),
    Identity("homotopy", "projection_retract", "π ι = id and relabel d₂ = d₁ relabel", projection_retract),
    Identity("tensor", "extract_embed", "extract ∘ embed = id", extract_embed),
    Identity("tensor", "evaluation", "insertions evaluate components", evaluation),
    Identity("tensor", "equivariance", "embed τ(σ) = κ_σ embed", equivariance),
    Identity("tensor", "lie_compatibility", "embed L_X = L_X embed", lie_compatibility),
    Identity("tensor", "product_shift", "embed(T₁⊗T₂) = embed T₁ ∧ shift embed T₂", product_shift),
    Identity("tensor", "slot_contraction", "insert_slot matches T(…, X, …)", slot_contraction),
    Identity("tensor", "averaging", "alternation and symmetrization commute with embed", averaging),
    Identity("tensor", "characterization", "obstructions are detected and break A-linearity", characterization),
    Identity("pullback", "pullback_commutes_with_d", "φ* d_k = d_k φ*", pullback_commutes_with_d),
    Identity("pullback", "pullback_composition", "(ψ∘φ)* = φ* ψ*", pullback_composition),
    Identity("pullback", "pullback_tensor_compatibility", "embed φ*T = φ* embed T", pullback_tensor_compatibility),
)


def identities_of(suite: str) -> List[Identity]:
    """
    The identities of a suite (``"all"`` selects every suite)

    Raises:
        UnknownSuiteError: if the suite does not exist
    """

    if suite == "all":
        return list(IDENTITIES)
    if suite not in SUITES:
        raise UnknownSuiteError(suite)
    return [identity for identity in IDENTITIES if identity.suite == suite]


def run_identity(identity: Identity, params: CheckParameters) -> IdentityResult:
    sampler = params.sampler(identity.key)
    start = time.perf_counter()
    for case in range(1, params.cases + 1):
        try:
            failure = identity.case(sampler)
        except IteratedFormsError as e:
            failure = "raised {}: {}".format(type(e).__name__, e)
        if failure is not None:
            logger.info("%s failed on case %d", identity.key, case)
            return IdentityResult(identity, case, "case {}: {}".format(case, failure), time.perf_counter() - start)
    elapsed = time.perf_counter() - start
    logger.debug("%s passed %d cases in %.2fs", identity.key, params.cases, elapsed)
    return IdentityResult(identity, params.cases, None, elapsed)


def run_checks(suite: str, seed: int = 0, cases: int = DEFAULT_CASES, **kwargs) -> CheckReport:
    """
    Runs an identity suite

    Args:
        suite: one of :py:data:`SUITES` or ``"all"``
        seed: base seed
        cases: random cases per identity

    Keyword Args:
        Any other :py:class:`CheckParameters` field

    Returns:
        The report, with results in suite order

    Raises:
        UnknownSuiteError: if the suite does not exist
    """

    params = CheckParameters(seed=seed, cases=cases, **kwargs)
    selected = identities_of(suite)
    logger.info("Running %d identities of suite %s (seed %d, %d cases)", len(selected), suite, seed, cases)
    if params.workers == 1:
        results: Sequence[IdentityResult] = [run_identity(identity, params) for identity in selected]
    else:
        with futures.ThreadPoolExecutor(max_workers=params.workers) as pool:
            results = list(pool.map(lambda identity: run_identity(identity, params), selected))
    return CheckReport(suite, seed, tuple(results))
