"""Named check suites over fixtures, files or generated instances."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product

from ..checks import Check, check
from ..errors import InvalidAlgebra, UnknownSuite
from ..heyting import (HeytingAlgebra, adjunction_violation, downset_algebra, downset_masks, frame_law_violation,
                       sup_dagger_violation)
from ..oracles import (all_pretransformations, compose_inf_by_definition, compose_ord_by_definition, delta_home_levels,
                       fibers_as_sets)
from ..presheaf import (Presheaf, Transformation, compose_transformations, identity_transformation,
                        is_sheaf, is_levelwise_bijection, naturality_violation, sheaf_counterexample)
from ..pretrans import Mode, PreTransformation, RelObject, compose_inf, compose_ord
from ..relations import FiniteSet
from ..functors import adjunction as adj
from ..functors import caveats, comparison, equivalence, singletons, two_point
from . import generate as gen
from . import textio

PRESHEAF_FIXTURES = ("SEP", "NSH", "MIS")
LATTICE_FIXTURES = ("H2", "C3", "B4", "DC3")


@dataclass(frozen=True)
class InstanceSource:
    """Exactly one of: ``fixtures`` (the built-in library), ``path`` (a file) or ``params`` (the generator)."""
    fixtures: bool = False
    path: str | None = None
    params: gen.GeneratorParams | None = None

    def __post_init__(self):
        if sum([self.fixtures, self.path is not None, self.params is not None]) != 1:
            raise ValueError("choose exactly one instance source")

    def describe(self) -> str:
        if self.fixtures:
            return "fixtures"
        if self.path is not None:
            return f"file {self.path}"
        p = self.params
        return f"seed {p.seed}, count {p.count}, max-h {p.max_h}, max-carrier {p.max_carrier}"


@dataclass
class SuiteReport:
    suite: str
    source: str
    instances: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.failures


def _fixture_presheaves() -> list[Presheaf]:
    return [textio.load_fixture(n) for n in PRESHEAF_FIXTURES]


def _presheaves_from_file(path) -> list[Presheaf]:
    return [item.obj for item in textio.load_document(path) if item.kind == "presheaf"]


def _named(F: Presheaf, label: str) -> Presheaf:
    return F if F.label == label else Presheaf(F.algebra, F.carriers, F.restrictions, label)


def _terminal_collapse(F: Presheaf, T: Presheaf) -> Transformation:
    """The unique map into a presheaf with one member at every level."""
    return Transformation(F, T, [{x: T.carriers[h][0] for x in F.carriers[h]} for h in F.algebra.elements])


def _generated(params):
    return list(gen.generate(params))


# -- individual suites -------------------------------------------------------------------------------------

def _algebra_checks(H: HeytingAlgebra, label: str) -> list[Check]:
    out = [check("implication-adjunction", adjunction_violation(H), label),
           check("frame-law", frame_law_violation(H), label),
           check("sup-dagger-adjunction", sup_dagger_violation(H), label)]
    D = downset_algebra(H)
    out.append(check("downsets-form-algebra",
                     None if len(D.sets) == len(downset_masks(H)) else "down-set count differs", label))
    return out


def suite_heyting(source, report):
    if source.params is not None:
        rng = random.Random(source.params.seed)
        for i in range(source.params.count):
            H = gen.random_lattice(rng, source.params.max_h, f"G{i}")
            report.instances.append(f"G{i}({H.n})")
            report.checks += _algebra_checks(H, f"G{i}")
        return
    if source.path is not None:
        for item in textio.load_document(source.path):
            if item.kind == "lattice":
                report.instances.append(item.name)
                report.checks += _algebra_checks(item.obj, item.name)
        return
    for name in LATTICE_FIXTURES:
        report.instances.append(name)
        report.checks += _algebra_checks(textio.load_fixture(name), name)
    report.instances.append("N5")
    try:
        textio.load_fixture("N5")
        problem = "N5 was accepted"
    except InvalidAlgebra as exc:
        problem = None if exc.witness else "rejected without a witness"
    report.checks.append(check("n5-rejected", problem, "N5"))


def _comparison_for(F: Presheaf, report):
    G = comparison.gamma(F)
    report.checks += comparison.comparison_check(F, G)
    report.checks.append(check("dagger-injective-on-sheaf", comparison.lemma_dagger_injective(G), G.label))
    ident = identity_transformation(F)
    report.checks.append(check("gamma-identity",
                               None if comparison.gamma_mor(ident).components ==
                               identity_transformation(G).components else "not the identity", F.label))


def suite_comparison(source, report):
    if source.params is not None:
        for inst in _generated(source.params):
            report.instances.append(inst.label)
            for F in inst.presheaves[:2]:
                _comparison_for(F, report)
            s, t = inst.transformations
            gs, gt = comparison.gamma_mor(s), comparison.gamma_mor(t)
            report.checks.append(check("gamma-natural", naturality_violation(gs), inst.label))
            composite = comparison.gamma_mor(compose_transformations(t, s))
            report.checks.append(check("gamma-functor",
                                       None if composite == compose_transformations(gt, gs) else "composite differs",
                                       inst.label))
            lt = comparison.lambda_mor(gt)
            report.checks.append(check("lambda-natural", naturality_violation(lt), inst.label))
        return
    presheaves = _presheaves_from_file(source.path) if source.path else _fixture_presheaves()
    for F in presheaves:
        report.instances.append(F.label)
        _comparison_for(F, report)
    if source.fixtures:
        mis = textio.load_fixture("MIS")
        report.checks += comparison.comparison_check(mis, comparison.gamma(mis))


def _pt_checks(H: HeytingAlgebra, rng: random.Random, max_carrier: int, label: str) -> list[Check]:
    A = gen.random_carrier(rng, max_carrier, "A")
    B = gen.random_carrier(rng, max_carrier, "B")
    C = gen.random_carrier(rng, max_carrier, "C")
    tau = gen.random_pretransformation(rng, H, A, B, Mode.ORD)
    sigma = gen.random_pretransformation(rng, H, B, C, Mode.ORD)
    D = downset_algebra(H)
    rho = gen.random_pretransformation(rng, D, A, B, Mode.INF)
    pi = gen.random_pretransformation(rng, D, B, C, Mode.INF)
    p_tau = comparison.psi(tau)
    out = [
        check("psi-infima-preserving", None if p_tau.infima_preserving else "a fiber is not principal", label),
        check("phi-order-preserving", None if comparison.phi(rho).order_preserving else "a fiber is not down-closed",
              label),
        check("phi-psi-identity", None if comparison.phi(p_tau) == tau else "round trip differs", label),
        check("psi-phi-identity", None if comparison.psi(comparison.phi(rho)) == rho else "round trip differs",
              label),
        check("psi-composition",
              None if comparison.psi(compose_ord(sigma, tau)) == compose_inf(comparison.psi(sigma), p_tau)
              else "composites differ", label),
        check("phi-composition",
              None if comparison.phi(compose_inf(pi, rho)) == compose_ord(comparison.phi(pi), comparison.phi(rho))
              else "composites differ", label),
    ]
    return out


def suite_pt_comparison(source, report):
    if source.params is not None:
        rng = random.Random(source.params.seed)
        for i in range(source.params.count):
            H = gen.random_lattice(rng, source.params.max_h, f"G{i}")
            report.instances.append(f"G{i}")
            report.checks += _pt_checks(H, rng, source.params.max_carrier, f"G{i}")
        return
    rng = random.Random(0)
    for name in ("C3", "B4"):
        H = textio.load_fixture(name)
        for i in range(10):
            report.instances.append(f"{name}#{i}")
            report.checks += _pt_checks(H, rng, 3, f"{name}#{i}")


def _oracle_mismatch(fast: PreTransformation, slow: dict):
    got = fibers_as_sets(fast)
    for key in slow:
        if got[key] != slow[key]:
            return f"at {key}: fast {sorted(got[key])} vs definition {sorted(slow[key])}"
    return None


def composition_pair_checks(sigma, tau, label):
    out = []
    if sigma.order_preserving and tau.order_preserving:
        out.append(check("compose-ord-definition",
                         _oracle_mismatch(compose_ord(sigma, tau), compose_ord_by_definition(sigma, tau)), label))
    if sigma.infima_preserving and tau.infima_preserving:
        out.append(check("compose-inf-definition",
                         _oracle_mismatch(compose_inf(sigma, tau), compose_inf_by_definition(sigma, tau)), label))
    return out


def exhaustive_composition_checks(H: HeytingAlgebra, max_carrier: int = 2) -> list[Check]:
    """Every composable pair over carriers of size 1..max_carrier, in both modes; failures only plus a summary."""
    sets = [FiniteSet(f"X{n}", tuple(f"x{i}" for i in range(n))) for n in range(1, max_carrier + 1)]
    ord_masks = downset_masks(H)
    inf_masks = [H.down_mask[h] for h in H.elements]
    out = []
    counts = {"ord": 0, "inf": 0}
    for mode, masks in (("ord", ord_masks), ("inf", inf_masks)):
        fast = compose_ord if mode == "ord" else compose_inf
        slow = compose_ord_by_definition if mode == "ord" else compose_inf_by_definition
        first = None
        for A, B, C in product(sets, repeat=3):
            lefts = list(all_pretransformations(H, B, C, masks))
            for tau in all_pretransformations(H, A, B, masks):
                for sigma in lefts:
                    counts[mode] += 1
                    problem = _oracle_mismatch(fast(sigma, tau), slow(sigma, tau))
                    if problem and first is None:
                        first = f"{sigma!r} after {tau!r}: {problem}"
        out.append(check(f"compose-{mode}-exhaustive", first, f"{H.label} ({counts[mode]} pairs)"))
    return out


def suite_composition(source, report):
    if source.fixtures:
        for name in ("H2", "C3"):
            report.instances.append(name)
            report.checks += exhaustive_composition_checks(textio.load_fixture(name), 2)
    params = source.params or gen.GeneratorParams(seed=1, count=50, max_h=4, max_carrier=3)
    rng = random.Random(params.seed)
    for i in range(params.count):
        H = gen.random_lattice(rng, params.max_h, f"G{i}")
        A, B, C = (gen.random_carrier(rng, params.max_carrier, s) for s in "ABC")
        mode = rng.choice((Mode.ORD, Mode.INF))
        tau = gen.random_pretransformation(rng, H, A, B, mode)
        sigma = gen.random_pretransformation(rng, H, B, C, mode)
        report.instances.append(f"G{i}:{mode.value}")
        report.checks += composition_pair_checks(sigma, tau, f"G{i}:{mode.value}")


def _adjunction_for(presheaves, maps, objects, report, composable=None):
    if composable is None:
        composable = [(maps[i + 1], maps[i]) for i in range(len(maps) - 1)]
    morphisms = [adj.delta_inf_mor(t) for t in maps]
    report.checks += adj.adjunction_check(presheaves, objects, maps, composable, morphisms)


def _home_levels_check(F: Presheaf) -> Check:
    """Comparing only at home levels must lose idempotency on F, while the full gluing keeps it."""
    narrow = delta_home_levels(F)
    problem = None
    if compose_inf(narrow, narrow) == narrow:
        problem = "the home-level agreement matrix is idempotent here"
    elif adj.delta_inf_obj(F).violation() is not None:
        problem = "the full agreement matrix is not an object"
    return check("home-levels-reading-fails", problem, F.label)


def suite_adjunction(source, report):
    if source.params is not None:
        rng = random.Random(source.params.seed ^ 0x5A5A)
        for inst in _generated(source.params):
            report.instances.append(inst.label)
            objects = [adj.delta_inf_obj(F) for F in inst.presheaves]
            objects.append(gen.random_inf_object(rng, inst.algebra,
                                                 gen.random_carrier(rng, source.params.max_carrier, "R")))
            _adjunction_for(list(inst.presheaves), list(inst.transformations), objects, report)
        return
    presheaves = _presheaves_from_file(source.path) if source.path else _fixture_presheaves()
    objects = [adj.delta_inf_obj(F) for F in presheaves]
    maps, composable = [], []
    if source.fixtures:
        sep = presheaves[0]
        maps = [_terminal_collapse(F, sep) for F in presheaves[1:]]
        maps.append(identity_transformation(sep))
        composable = [(maps[-1], maps[0]), (maps[-1], maps[1])]
        objects.append(RelObject(textio.load_fixture("PER"), Mode.INF))
        report.checks.append(_home_levels_check(textio.load_fixture("NSH")))
    for F in presheaves:
        report.instances.append(F.label)
    _adjunction_for(presheaves, maps, objects, report, composable)


def _agreement_checks(obj: RelObject, label: str) -> list[Check]:
    H = obj.algebra
    out = []
    if H.n ** len(obj.carrier) <= 5000:
        problem = None
        for h in H.elements:
            fast = singletons.enumerate_singletons(obj, h)
            slow = singletons.singletons_by_definition(obj, h)
            if fast != slow:
                problem = f"enumeration differs from the definition at {H.names[h]}"
                break
        out.append(check("singleton-enumeration", problem, label))
    every = [a for h in H.elements for a in adj.theta_inf_obj(obj).carriers[h]]
    lhs_rhs = closed = None
    for a in every:
        for b in every:
            for l in H.elements:
                r = singletons.singleton_agreement(a, b, l)
                if r.restrictions_equal != r.composite_holds and lhs_rhs is None:
                    lhs_rhs = f"{a.describe()} vs {b.describe()} at {H.names[l]}: {r}"
                if r.composite_holds != r.closed_form and closed is None:
                    closed = f"{a.describe()} vs {b.describe()} at {H.names[l]}: {r}"
    out.append(check("agreement-iff-composite", lhs_rhs, label))
    out.append(check("composite-closed-form", closed, label))
    for h in H.elements:
        for a in adj.theta_inf_obj(obj).carriers[h]:
            if H.sup(a.extent) != h:
                out.append(check("singleton-joins-to-level", f"{a.describe()} joins below its level", label))
                return out
    out.append(check("singleton-joins-to-level", None, label))
    return out


def suite_singleton_agreement(source, report):
    if source.params is not None:
        rng = random.Random(source.params.seed)
        for i in range(source.params.count):
            H = gen.random_lattice(rng, min(source.params.max_h, 4), f"G{i}")
            obj = gen.random_inf_object(rng, H, gen.random_carrier(rng, source.params.max_carrier, "R"))
            report.instances.append(f"G{i}")
            report.checks += _agreement_checks(obj, f"G{i}")
        return
    presheaves = _presheaves_from_file(source.path) if source.path else _fixture_presheaves()
    for F in presheaves:
        report.instances.append(f"Delta({F.label})")
        report.checks += _agreement_checks(adj.delta_inf_obj(F), f"Delta({F.label})")
    if source.fixtures:
        report.instances.append("PER")
        report.checks += _agreement_checks(RelObject(textio.load_fixture("PER"), Mode.INF), "PER")


def _sheaf_iff_for(F: Presheaf, report):
    r = adj.sheaf_iff_eta_iso(F)
    report.checks.append(check("sheaf-iff-eta-iso", None if r.agrees else
                               f"sheaf={r.sheaf} but eta bijective={r.eta_iso}", F.label))


def suite_sheaf_iff(source, report):
    if source.params is not None:
        for inst in _generated(source.params):
            report.instances.append(inst.label)
            for F in inst.presheaves:
                _sheaf_iff_for(F, report)
        return
    for F in (_presheaves_from_file(source.path) if source.path else _fixture_presheaves()):
        report.instances.append(F.label)
        _sheaf_iff_for(F, report)


def _equivalence_for(F: Presheaf, report, extra_objects=()):
    S = adj.a_shv(F)
    cx = sheaf_counterexample(S)
    report.checks.append(check("a-shv-is-sheaf", None if cx is None else
                               f"cover of {S.algebra.names[cx.cover_of]} has {len(cx.amalgamations)} amalgamations",
                               F.label))
    if is_sheaf(F):
        report.checks.append(check("a-shv-fixes-sheaves",
                                   None if is_levelwise_bijection(adj.eta(F)) else "eta is not a bijection", F.label))
    D = adj.delta_inf_obj(F)
    report.checks += adj.representability_checks(D, F.label)
    rel = equivalence.delta_pre(F)
    report.checks += equivalence.equivalence_checks([F], [rel, *extra_objects])
    report.checks.append(check("a-rel-object", equivalence.a_rel(rel).violation(), F.label))


def suite_equivalence(source, report):
    if source.params is not None:
        rng = random.Random(source.params.seed ^ 0x3C3C)
        for inst in _generated(source.params):
            report.instances.append(inst.label)
            H = inst.algebra
            extra = []
            if H.n <= 4:
                extra.append(gen.random_ord_object(rng, H, gen.random_carrier(rng, min(2, source.params.max_carrier),
                                                                               "R")))
            _equivalence_for(inst.presheaves[0], report, extra)
            _equivalence_for(inst.presheaves[1], report)
        return
    for F in (_presheaves_from_file(source.path) if source.path else _fixture_presheaves()):
        report.instances.append(F.label)
        _equivalence_for(F, report)


def suite_example_2pt(source, report):
    H = textio.load_fixture("H2")
    limit = 3 if source.params is None else min(3, source.params.max_carrier)
    report.instances.append(f"H2, carriers <= {limit}")
    census = two_point.two_point_census(H, limit)
    for law in ("objects-are-pers", "morphisms-are-class-functions"):
        group = [c for c in census.checks if c.law == law]
        bad = next((c for c in group if not c.passed), None)
        report.checks.append(check(law, None if bad is None else f"{bad.instance}: {bad.counterexample}",
                                   f"H2 ({len(group)} cases)"))


def suite_caveats(source, report):
    seed = source.params.seed if source.params is not None else 9
    report.instances.append(f"random search, seed {seed}")
    found = caveats.search_completion_failure(seed=seed, trials=3000)
    report.checks.append(check("completion-breaks-idempotency",
                               None if found.found is not None else found.describe(), "order-preserving idempotents"))
    found = caveats.search_levelwise_failure(seed=seed, trials=6000)
    report.checks.append(check("levelwise-breaks-idempotency",
                               None if found.found is not None else found.describe(), "infima-preserving objects"))
    found = caveats.search_levelwise_failure(seed=seed, trials=6000, symmetric=False)
    report.checks.append(check("levelwise-breaks-idempotency-nonsymmetric",
                               None if found.found is not None else found.describe(),
                               "infima-preserving idempotents"))


SUITES = {
    "heyting": suite_heyting,
    "comparison": suite_comparison,
    "pt-comparison": suite_pt_comparison,
    "composition": suite_composition,
    "adjunction": suite_adjunction,
    "singleton-agreement": suite_singleton_agreement,
    "sheaf-iff": suite_sheaf_iff,
    "equivalence": suite_equivalence,
    "example-2pt": suite_example_2pt,
    "caveats": suite_caveats,
}


def run_suite(name: str, source: InstanceSource) -> SuiteReport:
    try:
        runner = SUITES[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    report = SuiteReport(name, source.describe())
    start = time.perf_counter()
    runner(source, report)
    report.elapsed_ms = (time.perf_counter() - start) * 1000
    return report
