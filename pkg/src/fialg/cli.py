"""Command-line front end.

Exit codes: 0 success / verified / true; 1 falsified / infeasible /
not proper; 2 usage error; 3 input or parse error; 4 resource guard
exceeded.  Identical arguments and files produce identical stdout bytes.
"""

from __future__ import annotations

import argparse
import sys

from .decompose import (
    canonical_decompose,
    derivation_space,
    is_proper,
    lie_n_derivation_space,
)
from .elements import format_element, parse_element
from .errors import GuardExceeded, MismatchError, ParseError
from .lie import (
    DEFAULT_TUPLE_GUARD,
    flat_from_linmap,
    is_derivation,
    is_lie_n_derivation,
    linmap_from_flat,
    nested_commutator,
)
from .maps import LinMap, format_map, parse_map
from .oracle import (
    DEFAULT_ENUM_GUARD,
    LEMMAS,
    check_lemma,
    enumerate_linmaps,
    module_elements,
)
from .poset import chain, parse_poset, poset_info
from .rings import ModRing, parse_ring


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, content: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(content)


def _load_elements(poset, ring, paths):
    out = []
    for path in paths:
        el = parse_element(poset, _read(path))
        if el.ring != ring:
            raise ParseError(
                "element file %s is over %s, expected %s" % (path, el.ring, ring)
            )
        out.append(el)
    return out


def _load_map(poset, ring, path):
    m = parse_map(poset, _read(path))
    if m.ring != ring:
        raise ParseError("map file %s is over %s, expected %s" % (path, m.ring, ring))
    return m


def _print_check(label, report):
    print("%s: %s" % (label, "yes" if report.verdict else "no"))
    print("tuples checked: %d" % report.tuples_checked)
    if report.witness is not None:
        idx, left, right = report.witness
        print("witness tuple (basis indices): %s" % (list(idx),))
        print("left:  %r" % left)
        print("right: %r" % right)


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="fialg",
        description="Exact computations in incidence algebras of finite posets.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_poset = sub.add_parser("poset", help="poset file utilities")
    poset_sub = p_poset.add_subparsers(dest="poset_command", required=True)
    p_info = poset_sub.add_parser("info", help="summarize a poset file")
    p_info.add_argument("file")

    p_mul = sub.add_parser("mul", help="convolve elements")
    p_mul.add_argument("--ring", required=True)
    p_mul.add_argument("poset")
    p_mul.add_argument("elements", nargs="+")

    p_pn = sub.add_parser("pn", help="nested commutator of elements")
    p_pn.add_argument("--n", type=int, default=None)
    p_pn.add_argument("--ring", required=True)
    p_pn.add_argument("poset")
    p_pn.add_argument("elements", nargs="+")

    p_verify = sub.add_parser("verify", help="check an identity for a map")
    verify_sub = p_verify.add_subparsers(dest="identity", required=True)
    v_der = verify_sub.add_parser("derivation")
    v_lie = verify_sub.add_parser("lie")
    v_lie.add_argument("--n", type=int, required=True)
    for vp in (v_der, v_lie):
        vp.add_argument("--ring", required=True)
        vp.add_argument("--poset", required=True)
        vp.add_argument("--map", dest="map_file", required=True)
        vp.add_argument("--guard", type=int, default=DEFAULT_TUPLE_GUARD)

    p_dec = sub.add_parser("decompose", help="canonical decomposition of a map")
    p_dec.add_argument("--n", type=int, required=True)
    p_dec.add_argument("--ring", required=True)
    p_dec.add_argument("--poset", required=True)
    p_dec.add_argument("--map", dest="map_file", required=True)
    p_dec.add_argument("--out-d")
    p_dec.add_argument("--out-tau")

    p_prop = sub.add_parser("proper", help="decide properness of a map")
    p_prop.add_argument("--n", type=int, required=True)
    p_prop.add_argument("--ring", required=True)
    p_prop.add_argument("--poset", required=True)
    p_prop.add_argument("--map", dest="map_file", required=True)
    p_prop.add_argument("--guard", type=int, default=DEFAULT_TUPLE_GUARD)
    p_prop.add_argument("--out-d")
    p_prop.add_argument("--out-tau")

    p_space = sub.add_parser("space", help="solution space of the arity-n identity")
    p_space.add_argument("--n", type=int, required=True)
    p_space.add_argument("--ring", required=True)
    p_space.add_argument("--poset", required=True)
    p_space.add_argument("--guard", type=int, default=DEFAULT_TUPLE_GUARD)
    p_space.add_argument("--out")

    p_lemma = sub.add_parser("lemma", help="randomized lemma checking")
    p_lemma.add_argument("id", choices=LEMMAS)
    p_lemma.add_argument("--trials", type=int, required=True)
    p_lemma.add_argument("--seed", required=True)
    p_lemma.add_argument("--ring", required=True)
    src = p_lemma.add_mutually_exclusive_group(required=True)
    src.add_argument("--poset")
    src.add_argument("--random-size", type=int)
    p_lemma.add_argument("--n", type=int, default=None)
    p_lemma.add_argument("--jobs", type=int, default=1)

    p_cex = sub.add_parser(
        "counterexample", help="reproduce the torsion counterexample"
    )
    p_cex.add_argument("--n", type=int, required=True)

    p_oracle = sub.add_parser("oracle", help="brute-force cross checks")
    oracle_sub = p_oracle.add_subparsers(dest="oracle_command", required=True)
    o_enum = oracle_sub.add_parser("enumerate")
    o_enum.add_argument("--n", type=int, required=True)
    o_enum.add_argument("--ring", required=True)
    o_enum.add_argument("--poset", required=True)
    o_enum.add_argument("--guard", type=int, default=DEFAULT_ENUM_GUARD)

    return ap


def _run(argv) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "poset":
        p = parse_poset(_read(args.file))
        sys.stdout.write(poset_info(p))
        return 0

    if args.command in ("mul", "pn"):
        ring = parse_ring(args.ring)
        p = parse_poset(_read(args.poset))
        els = _load_elements(p, ring, args.elements)
        if args.command == "mul":
            if len(els) < 2:
                raise ParseError("mul needs at least two elements")
            acc = els[0]
            for el in els[1:]:
                acc = acc * el
        else:
            if args.n is not None and args.n != len(els):
                raise ParseError(
                    "--n %d does not match %d element arguments" % (args.n, len(els))
                )
            acc = nested_commutator(els)
        sys.stdout.write(format_element(acc))
        return 0

    if args.command == "verify":
        ring = parse_ring(args.ring)
        p = parse_poset(_read(args.poset))
        m = _load_map(p, ring, args.map_file)
        if args.identity == "derivation":
            report = is_derivation(m)
            _print_check("derivation", report)
        else:
            if args.n < 2:
                raise ParseError("--n must be >= 2")
            report = is_lie_n_derivation(m, args.n, guard=args.guard)
            _print_check("Lie %d-derivation" % args.n, report)
        return 0 if report.verdict else 1

    if args.command == "decompose":
        ring = parse_ring(args.ring)
        p = parse_poset(_read(args.poset))
        m = _load_map(p, ring, args.map_file)
        dec = canonical_decompose(m, args.n)
        c = dec.checks
        print("sum d + tau = L: %s" % ("ok" if c.sum_ok else "FAIL"))
        print("d is a derivation: %s" % ("ok" if c.deriv_ok else "FAIL"))
        print("tau is central-valued: %s" % ("ok" if c.central_ok else "FAIL"))
        print("tau kills commutator values: %s" % ("ok" if c.annihilation_ok else "FAIL"))
        if args.out_d:
            _write(args.out_d, format_map(dec.derivation_part))
        if args.out_tau:
            _write(args.out_tau, format_map(dec.central_part))
        return 0 if c.all_ok() else 1

    if args.command == "proper":
        ring = parse_ring(args.ring)
        p = parse_poset(_read(args.poset))
        m = _load_map(p, ring, args.map_file)
        decision = is_proper(m, args.n, guard=args.guard)
        print("proper: %s" % ("yes" if decision.proper else "no"))
        if decision.proper:
            if args.out_d:
                _write(args.out_d, format_map(decision.derivation_part))
            if args.out_tau:
                _write(args.out_tau, format_map(decision.central_part))
        return 0 if decision.proper else 1

    if args.command == "space":
        ring = parse_ring(args.ring)
        p = parse_poset(_read(args.poset))
        if args.n < 2:
            raise ParseError("--n must be >= 2")
        space = lie_n_derivation_space(p, ring, args.n, args.guard)
        print("unknowns: %d" % space.ncols)
        print("generators: %d" % len(space.generators))
        if args.out:
            blocks = [
                format_map(linmap_from_flat(p, ring, gen)) for gen in space.generators
            ]
            _write(args.out, "---\n".join(blocks))
        return 0

    if args.command == "lemma":
        ring = parse_ring(args.ring)
        p = parse_poset(_read(args.poset)) if args.poset else None
        report = check_lemma(
            args.id,
            args.trials,
            args.seed,
            ring,
            poset=p,
            random_size=args.random_size,
            n=args.n,
            jobs=args.jobs,
        )
        print(
            "lemma %s: trials %d, passes %d, failures %d, vacuous %d"
            % (report.lemma, report.trials, report.passes, report.failures, report.vacuous)
        )
        if report.mode != "sampled":
            print("mode: %s" % report.mode)
        if report.first_failure:
            print("first failure: %s" % report.first_failure)
        return 0 if report.ok else 1

    if args.command == "counterexample":
        if args.n < 3:
            _build_parser().error("counterexample needs --n >= 3")
        ring = ModRing(args.n - 1)
        p = chain(2)
        ident = LinMap.identity(p, ring)
        lie = is_lie_n_derivation(ident, args.n)
        decision = is_proper(ident, args.n)
        print(
            "Lie %d-derivation: %s; proper: %s"
            % (
                args.n,
                "yes" if lie.verdict else "no",
                "yes" if decision.proper else "no",
            )
        )
        reproduced = lie.verdict and not decision.proper
        return 0 if reproduced else 1

    if args.command == "oracle":
        ring = parse_ring(args.ring)
        if not isinstance(ring, ModRing):
            raise ParseError("oracle enumerate needs a finite ring zmod:m")
        p = parse_poset(_read(args.poset))
        if args.n < 2:
            raise ParseError("--n must be >= 2")
        all_maps = enumerate_linmaps(p, ring, guard=args.guard)
        brute_der = {
            flat_from_linmap(m) for m in all_maps if is_derivation(m).verdict
        }
        brute_lie = {
            flat_from_linmap(m)
            for m in all_maps
            if is_lie_n_derivation(m, args.n, guard=args.guard).verdict
        }
        sys_der = module_elements(derivation_space(p, ring), ring, guard=args.guard)
        sys_lie = module_elements(
            lie_n_derivation_space(p, ring, args.n, args.guard), ring, guard=args.guard
        )
        print("maps enumerated: %d" % len(all_maps))
        print("derivations: brute %d, system %d" % (len(brute_der), len(sys_der)))
        print(
            "Lie %d-derivations: brute %d, system %d"
            % (args.n, len(brute_lie), len(sys_lie))
        )
        match = brute_der == sys_der and brute_lie == sys_lie
        print("match: %s" % ("yes" if match else "no"))
        return 0 if match else 1

    raise AssertionError("unhandled command")


def main(argv=None) -> int:
    try:
        return _run(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except ParseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except GuardExceeded as exc:
        print("resource guard exceeded: %s" % exc, file=sys.stderr)
        return 4
    except MismatchError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except (OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
