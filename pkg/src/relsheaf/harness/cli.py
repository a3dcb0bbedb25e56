"""Command line entry point: ``relsheaf <command> ...``.

Results go to stdout and are byte-stable for identical inputs; timings go to
stderr.  Exit status is 0 when everything checked holds, 1 when a check or
validation fails, and 2 for unreadable input or bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys

from ..errors import BoundsError, ParseError, RelsheafError
from ..heyting import HeytingAlgebra, downset_algebra
from ..presheaf import Presheaf, sheaf_counterexample
from ..pretrans import Mode, RelObject, classify, rel_object_violation
from ..functors import adjunction as adj
from ..functors.equivalence import theta_pre
from . import textio
from .generate import GeneratorParams
from .suites import SUITES, InstanceSource, run_suite


def _lattice_name(H: HeytingAlgebra) -> str:
    return H.label


def _single(path, kind):
    docs = textio.load_document(path)
    items = [d for d in docs if d.kind == kind]
    if not items:
        raise ParseError(1, f"no [{kind}] section", path)
    return items[-1]


def singleton_name(alpha, member_name=str) -> str:
    """Canonical text for a singleton: the members with a non-bottom value, as ``member:value``."""
    H = alpha.target.algebra
    body = ",".join(f"{member_name(x)}:{H.names[v]}"
                    for x, v in zip(alpha.target.carrier, alpha.extent) if v != H.bottom)
    return "{" + body + "}"


def sheafified_names(F: Presheaf) -> dict:
    """Names for members of the associated sheaf, keeping the name of a unique representable preimage."""
    H = F.algebra
    names = {}
    for h in H.elements:
        preimages = {}
        for x, alpha in adj.eta_component(F, h).items():
            preimages.setdefault(alpha, []).append(x)
        used = set()
        for alpha in adj.a_shv(F).carriers[h]:
            pre = preimages.get(alpha, [])
            name = str(pre[0]) if len(pre) == 1 else singleton_name(alpha, lambda m: f"{m[1]}@{H.names[m[0]]}")
            while name in used:
                name += "'"
            used.add(name)
            names[alpha] = name
    return names


def cmd_validate(args) -> int:
    for item in textio.load_document(args.file):
        obj = item.obj
        if item.kind == "lattice":
            print(f"lattice {item.name}: valid, {obj.n} elements")
        elif item.kind == "presheaf":
            sizes = " ".join(f"{obj.algebra.names[h]}:{n}" for h, n in enumerate(obj.sizes()))
            print(f"presheaf {item.name}: valid, carriers {sizes}")
        else:
            c = classify(obj)
            print(f"reltrans {item.name}: {len(obj.target)}x{len(obj.source)}, "
                  f"order-preserving={'yes' if c.order_preserving else 'no'}, "
                  f"infima-preserving={'yes' if c.infima_preserving else 'no'}")
            if obj.is_endo():
                problem = rel_object_violation(obj, item.mode)
                print(f"  {item.mode.value} object: " + ("yes" if problem is None else f"no ({problem})"))
    return 0


def cmd_downsets(args) -> int:
    H = _single(args.file, "lattice").obj
    D = downset_algebra(H)
    sys.stdout.write(textio.format_lattice(D, f"D({_lattice_name(H)})"))
    return 0


def cmd_sheaf_check(args) -> int:
    F = _single(args.file, "presheaf").obj
    cx = sheaf_counterexample(F)
    if cx is None:
        print(f"{F.label}: sheaf")
        return 0
    H = F.algebra
    parts = "{" + ",".join(H.names[k] for k in cx.family.parts) + "}"
    family = " ".join(f"{H.names[k]}={x}" for k, x in zip(cx.family.parts, cx.family.choice)) or "(empty)"
    print(f"{F.label}: not a sheaf")
    print(f"cover {parts} of {H.names[cx.cover_of]}")
    print(f"family {family}")
    print(f"amalgamations {len(cx.amalgamations)}" + ("" if not cx.amalgamations else
                                                      ": " + " ".join(map(str, cx.amalgamations))))
    return 1


def cmd_sheafify(args) -> int:
    item = _single(args.file, "presheaf")
    F = item.obj
    S = adj.a_shv(F)
    names = sheafified_names(F)
    text = textio.format_lattice(F.algebra) + "\n"
    text += textio.format_presheaf(S, F.algebra.label, F.label, names.__getitem__)
    verdict = "sheaf" if sheaf_counterexample(S) is None else "NOT a sheaf"
    sys.stdout.write(text + f"# sheaf-check: {verdict}\n")
    return 0 if verdict == "sheaf" else 1


def cmd_delta(args) -> int:
    F = _single(args.file, "presheaf").obj
    D = adj.delta_inf_obj(F)
    H = F.algebra
    text = textio.format_lattice(H) + "\n"
    text += textio.format_reltrans(D.relation, Mode.INF, H.label, f"Delta({F.label})",
                                   lambda m: f"{m[1]}@{H.names[m[0]]}")
    sys.stdout.write(text)
    return 0


def cmd_theta(args) -> int:
    item = _single(args.file, "reltrans")
    tau = item.obj
    problem = rel_object_violation(tau, item.mode) if tau.is_endo() else "endo"
    if problem is not None:
        print(f"{item.name} is not an {item.mode.value} object: {problem}", file=sys.stderr)
        return 1
    obj = RelObject(tau, item.mode)
    P = adj.theta_inf_obj(obj) if item.mode is Mode.INF else theta_pre(obj)
    names = {a: singleton_name(a) for c in P.carriers for a in c}
    text = textio.format_lattice(tau.algebra) + "\n"
    text += textio.format_presheaf(P, tau.algebra.label, f"Theta({item.name})", names.__getitem__)
    sys.stdout.write(text)
    return 0


def cmd_check_suite(args) -> int:
    if args.fixtures:
        source = InstanceSource(fixtures=True)
    else:
        source = InstanceSource(params=GeneratorParams(seed=args.seed, max_h=args.max_h,
                                                       max_carrier=args.max_carrier, count=args.count))
    report = run_suite(args.name, source)
    if args.format == "lines":
        for c in report.checks:
            print(json.dumps({"suite": report.suite, "instance": c.instance, "law": c.law,
                              "verdict": "pass" if c.passed else "fail", "counterexample": c.counterexample}))
    else:
        print(f"suite {report.suite} ({report.source})")
        print(f"instances {len(report.instances)}: {' '.join(report.instances)}")
        tally = {}
        for c in report.checks:
            ok, total = tally.get(c.law, (0, 0))
            tally[c.law] = (ok + c.passed, total + 1)
        for law, (ok, total) in tally.items():
            print(f"{'PASS' if ok == total else 'FAIL'} {law} {ok}/{total}")
        for c in report.failures:
            print(f"  counterexample {c.law} [{c.instance}]: {c.counterexample}")
        print(f"result {'PASS' if report.passed else 'FAIL'}: {len(report.checks) - len(report.failures)}"
              f"/{len(report.checks)} checks")
    print(f"elapsed {report.elapsed_ms:.0f} ms", file=sys.stderr)
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relsheaf", allow_abbrev=False,
                                     description="Presheaves and relational sheaves over finite Heyting algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, file_help=None):
        p = sub.add_parser(name, help=help_text, allow_abbrev=False)
        if file_help:
            p.add_argument("file", help=file_help)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "load a file and report on each section", "input file")
    add("downsets", cmd_downsets, "print the down-set algebra of a lattice", "lattice file")
    add("sheaf-check", cmd_sheaf_check, "check the sheaf condition (exit 1 if it fails)", "presheaf file")
    add("sheafify", cmd_sheafify, "print the associated sheaf", "presheaf file")
    add("delta", cmd_delta, "print the glued relational object of a presheaf", "presheaf file")
    add("theta", cmd_theta, "print the presheaf of singletons of a relational object", "reltrans file")
    p = add("check-suite", cmd_check_suite, "run a named check suite")
    p.add_argument("name", choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--max-h", type=int, default=5)
    p.add_argument("--max-carrier", type=int, default=3)
    p.add_argument("--fixtures", action="store_true", help="use the built-in fixtures instead of generated instances")
    p.add_argument("--format", choices=("text", "lines"), default="text",
                   help="plain text summary or one JSON object per check")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except BoundsError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RelsheafError as exc:
        witness = getattr(exc, "witness", ())
        extra = f" (witness: {' '.join(witness)})" if witness else ""
        print(f"invalid: {type(exc).__name__}: {exc}{extra}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
