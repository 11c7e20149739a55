"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
Every subcommand accepts ``--json`` for machine-readable output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional, Sequence

from . import areas, elimination, hall, identities, pbw, signature
from .magma import format_tree, foliage, parse_tree
from .words import (
    FreeElement,
    Word,
    all_words,
    element_to_json,
    format_element,
    format_word,
    fraction_str,
    parse_element,
    parse_word,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, text_lines, payload) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        for line in text_lines:
            print(line)


def _word(args, text: str):
    w = parse_word(text)
    if any(a > args.alphabet for a in w):
        raise UsageError(f"word {text} uses letters outside 1..{args.alphabet}")
    return w


def _element(args, text: str) -> FreeElement:
    f = parse_element(text)
    if any(a > args.alphabet for w in f for a in w):
        raise UsageError(f"element {text} uses letters outside 1..{args.alphabet}")
    return f


def _pairs(specs: Sequence[str]) -> list[tuple[int, int]]:
    out = []
    for s in specs:
        try:
            d, n = s.split(":")
            out.append((int(d), int(n)))
        except ValueError:
            raise UsageError(f"expected ALPHABET:DEGREE, got {s!r}") from None
    return out


def _hall_set(args, degree: Optional[int] = None):
    return hall.generate_hall(args.alphabet, args.order, max(args.max_degree, degree or 0))


def _hall_set_for(args, w: Word):
    """Hall set large enough to factorize ``w``."""
    if not w:
        return _hall_set(args)
    if args.order == "lyndon":
        return _hall_set(args, max(len(u) for u, _ in hall.lyndon_factorize(w)))
    return _hall_set(args, len(w))


# -- subcommands --------------------------------------------------------------

def cmd_hall(args) -> int:
    if args.witt_check:
        rows, bad_all, lines = [], [], []
        for d, n in _pairs(args.witt_check):
            for order in hall.ORDERS:
                rs, bad = hall.witt_check(d, n, order)
                rows += rs
                bad_all += [(d, order, format_tree(t)) for t in bad]
                ok = all(r.ok for r in rs) and not bad
                lines.append(
                    f"d={d} order={order} degrees<= {n}: "
                    + " ".join(f"{r.generated}/{r.expected}" for r in rs)
                    + f"  last-factor failures: {len(bad)}  {'PASS' if ok else 'FAIL'}"
                )
        ok = all(r.ok for r in rows) and not bad_all
        _emit(args, lines, {
            "rows": [r.__dict__ | {"ok": r.ok} for r in rows],
            "last_factor_failures": bad_all,
            "passed": ok,
        })
        return EXIT_OK if ok else EXIT_FAIL
    H = _hall_set(args)
    lines = [f"{t.degree}\t{format_word(foliage(t))}\t{format_tree(t)}" for t in H.trees]
    _emit(args, lines, [
        {"degree": t.degree, "foliage": format_word(foliage(t)), "tree": format_tree(t)} for t in H.trees
    ])
    return EXIT_OK


def cmd_factorize(args) -> int:
    w = _word(args, args.word)
    H = _hall_set_for(args, w)
    factors = hall.hall_factorize(w, H)
    lines = [hall.factor_string(factors)] + [
        f"{format_word(foliage(t))}\t{format_tree(t)}\t^{k}" for t, k in factors
    ]
    _emit(args, lines, [
        {"hall_word": format_word(foliage(t)), "tree": format_tree(t), "power": k} for t, k in factors
    ])
    return EXIT_OK


def cmd_pbw(args) -> int:
    w = _word(args, args.word)
    P = pbw.pbw_element(w, _hall_set_for(args, w))
    _emit(args, [format_element(P)], element_to_json(P))
    return EXIT_OK


def _duality_check(args) -> int:
    lines, payload, ok = [], [], True
    for d, n in _pairs(args.verify_duality or []):
        H = hall.generate_hall(d, args.order, n)
        rep = pbw.verify_duality(H, n, "direct")
        disagree = []
        if args.compare_strategies:
            for t in H.trees:
                vals = [pbw.dual_of_hall_word(t, H, s) for s in pbw.STRATEGIES]
                if any(v != vals[0] for v in vals[1:]):
                    disagree.append(format_tree(t))
        ok &= rep.passed and not disagree
        lines.append(
            f"d={d} n<={n} order={H.order.name}: {rep.n_pairs} pairs, "
            f"{len(rep.failures)} failures, {len(rep.triangularity_warnings)} triangularity warnings"
            + (f", strategies disagree on {len(disagree)} Hall words" if args.compare_strategies else "")
        )
        payload.append(rep.to_json() | {"strategy_disagreements": disagree})
    if args.expand_random:
        rng = random.Random(args.seed)
        H = hall.generate_hall(args.alphabet, args.order, args.max_len)
        bad = 0
        for _ in range(args.expand_random):
            f = identities.random_element(rng, args.alphabet, args.max_len, n_terms=4)
            if pbw.expand_in_dual_basis(f, H).evaluate() != f:
                bad += 1
        ok &= bad == 0
        lines.append(f"expansion round trips: {args.expand_random - bad}/{args.expand_random}")
        payload.append({"expansion_round_trips": args.expand_random, "failures": bad})
    lines.append("PASS" if ok else "FAIL")
    _emit(args, lines, {"checks": payload, "passed": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_dual(args) -> int:
    if args.verify_duality or args.expand_random:
        return _duality_check(args)
    if not args.word:
        raise UsageError("dual needs a WORD or --verify-duality")
    w = _word(args, args.word)
    H = _hall_set_for(args, w)
    if args.via_integrals:
        r = pbw.dual_basis_via_integrals(w, H)
        _emit(
            args,
            [f"coefficient: {fraction_str(r.coefficient)}", f"monomial: {r.monomial}", format_element(r.value)],
            {
                "coefficient": fraction_str(r.coefficient),
                "monomial": pbw.monomial_to_json(r.monomial),
                "element": element_to_json(r.value),
            },
        )
        return EXIT_OK
    S = pbw.dual_basis_element(w, H, args.strategy)
    _emit(args, [format_element(S)], element_to_json(S))
    return EXIT_OK


def cmd_expand(args) -> int:
    f = _element(args, args.element)
    H = _hall_set(args, max(f.degree, 1))
    p = pbw.expand_in_dual_basis(f, H)
    ok = p.evaluate() == f
    _emit(args, [str(p), f"round trip: {'ok' if ok else 'MISMATCH'}"], pbw.hallpoly_to_json(p))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_rewrite_areas(args) -> int:
    lines, payload, ok = [], {}, True
    if args.beta:
        bad = [k for k in range(1, args.beta + 1) if areas.beta(k) != areas.beta_recursive(k)]
        ok &= not bad
        lines.append(f"beta closed form vs recursion, k<={args.beta}: {'agree' if not bad else f'differ at {bad}'}")
        payload["beta"] = {"k_max": args.beta, "mismatches": bad,
                           "values": [fraction_str(areas.beta(k)) for k in range(1, min(args.beta, 10) + 1)]}
    if args.check_words:
        payload["words"] = []
        # every alphabet size from 2 up to --alphabet
        for d in range(2, args.alphabet + 1):
            n, bad = areas.check_word_rewrites(d, args.check_words)
            ok &= not bad
            lines.append(f"word rewrites, d={d}, length<={args.check_words}: {n - len(bad)}/{n} exact")
            payload["words"].append({"alphabet": d, "checked": n, "failures": [format_word(w) for w in bad]})
    if args.check_instances:
        payload["instances"] = []
        for d in range(2, args.alphabet + 1):
            n, bad = areas.check_rewriter(d, args.check_instances)
            ok &= not bad
            lines.append(f"rewriter instances, d={d}, n<={args.check_instances}: {n - len(bad)}/{n} sound")
            payload["instances"].append({
                "alphabet": d,
                "checked": n,
                "failures": [
                    {"area_of": format_tree(f.area_of), "monomial": [format_tree(t) for t in f.monomial],
                     "reason": f.reason}
                    for f in bad
                ],
            })
    if args.area_of:
        if not args.monomial:
            raise UsageError("--area-of needs --monomial")
        A = parse_tree(args.area_of)
        M = [parse_tree(s) for s in args.monomial]
        r = areas.rewrite_area_of_monomial(A, M)
        lines += [str(r.poly), f"leading coefficient: {fraction_str(r.leading)}"]
        payload["rewrite"] = {"poly": areas.areapoly_to_json(r.poly), "leading": fraction_str(r.leading)}
    if args.word:
        w = _word(args, args.word)
        p = areas.word_to_area_poly(w)
        exact = areas.eval_area_poly(p) == FreeElement.word(w)
        ok &= exact
        lines += [str(p), f"evaluation: {'exact' if exact else 'MISMATCH'}"]
        payload["word"] = {"word": format_word(w), "poly": areas.areapoly_to_json(p), "exact": exact}
    if not payload:
        raise UsageError("rewrite-areas needs WORD, --area-of, --beta, --check-words or --check-instances")
    payload["passed"] = ok
    _emit(args, lines, payload)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    names = [args.identity] if args.identity else list(identities.IDENTITIES)
    for name in names:
        if name not in identities.IDENTITIES:
            raise UsageError(f"unknown identity {name!r}")
    if args.letters or args.elements:
        if len(names) != 1:
            raise UsageError("--letters/--elements need --identity")
        if args.letters:
            args_ = [FreeElement.letter(a) for a in args.letters]
        else:
            args_ = [_element(args, s) for s in args.elements]
        try:
            r = identities.verify(names[0], args_)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        text = format_element(r) if not r.is_zero() else "0"
        _emit(args, [f"residual: {text}"], {"identity": names[0], "residual": element_to_json(r), "zero": r.is_zero()})
        return EXIT_OK if r.is_zero() else EXIT_FAIL
    rng = random.Random(args.seed)
    lines, payload, ok = [], [], True
    for name in names:
        passed, total, first = 0, 0, None
        tuples = [list(t) for t in identities.letter_tuples(name, args.alphabet, args.perm_n)]
        tuples += [
            identities.random_tuple(rng, name, args.alphabet, args.max_len, n=2 + i % (args.perm_n - 1))
            for i in range(args.random)
        ]
        for t in tuples:
            total += 1
            r = identities.verify(name, t)
            if r.is_zero():
                passed += 1
            elif first is None:
                first = {"args": [format_element(f) for f in t], "residual": format_element(r)}
        ok &= passed == total
        lines.append(f"{name}: {passed}/{total}" + (f"  first counterexample: {first}" if first else ""))
        payload.append({"identity": name, "passed": passed, "total": total, "counterexample": first})
    _emit(args, lines, {"seed": args.seed, "results": payload, "passed": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_eliminate(args) -> int:
    c = args.c or args.alphabet
    if args.self_check:
        lines, payload, ok = [], {}, True
        bad_forms, bad_rel = [], []
        for d in range(2, args.alphabet + 1):
            for a in range(1, d):
                for n in range(args.self_check + 1):
                    if elimination.closed_forms(a, n, d) != elimination.closed_forms_by_tree(a, n, d):
                        bad_forms.append((d, a, n))
                    if n and not all(r.is_zero() for r in elimination.acn_relation_check(a, n, d)):
                        bad_rel.append((d, a, n))
        bad_dec, count = [], 0
        for d in range(2, args.alphabet + 1):
            for w in all_words(d, args.max_len):
                count += 1
                s = elimination.decompose_series(FreeElement.word(w), d)
                if s.reconstruct() != FreeElement.word(w) or not all(
                    z.is_zero() or elimination.is_in_Z(z, d) for z in s.coefficients
                ):
                    bad_dec.append(format_word(w))
        hall_bad = []
        for d in range(2, args.alphabet + 1):
            hall_bad += elimination.hall_x_compatibility(hall.generate_hall(d, "lyndon", 5)).failures
        ok = not (bad_forms or bad_rel or bad_dec or hall_bad)
        lines = [
            f"closed forms n<={args.self_check}: {len(bad_forms)} mismatches",
            f"integral/area relations n<={args.self_check}: {len(bad_rel)} nonzero residuals",
            f"decompositions of {count} words, length<={args.max_len}: {len(bad_dec)} failures",
            f"Hall trees re-read over X: {len(hall_bad)} failures",
            "PASS" if ok else "FAIL",
        ]
        payload = {"closed_forms": bad_forms, "relations": bad_rel, "decompositions": bad_dec,
                   "hall_x": hall_bad, "passed": ok}
        _emit(args, lines, payload)
        return EXIT_OK if ok else EXIT_FAIL
    if not args.element:
        raise UsageError("eliminate needs ELEMENT or --self-check")
    f = _element(args, args.element)
    s = elimination.decompose_series(f, c)
    ok = s.reconstruct() == f
    lines = [f"c = {c}"]
    for k, (z, sk) in enumerate(zip(s.coefficients, s.scalar_slots)):
        lines.append(f"z_{k} = {format_element(z)}" + (f"   scalar {fraction_str(sk)}" if sk else ""))
    lines.append(f"reconstruction: {'exact' if ok else 'MISMATCH'}")
    _emit(args, lines, s.to_json())
    return EXIT_OK if ok else EXIT_FAIL


def _signature_suite(args) -> int:
    rng = random.Random(args.seed)
    worst_shuffle = 0.0
    for i in range(100):
        d = rng.choice((2, 3))
        f = identities.random_element(rng, d, 3, n_terms=3)
        g = identities.random_element(rng, d, 3, n_terms=3)
        path = signature.PiecewisePath.random(args.seed * 1000 + i, rng.randint(1, 6), d)
        worst_shuffle = max(worst_shuffle, signature.check_shuffle_identity(f, g, path, 6))
    chen = max(
        signature.chen_defect(
            signature.PiecewisePath.random(args.seed + 1 + k, 3, 3, 0.5),
            signature.PiecewisePath.random(args.seed + 101 + k, 4, 3, 0.5),
            5,
        )
        for k in range(5)
    )
    # the left-point error is first order with a constant of the size of the
    # squared path length, hence the moderate scale
    path = signature.PiecewisePath.random(args.seed, 5, 3, 0.3)
    axis = signature.PiecewisePath([[0, 0, 0], [1, 0, 0], [1, 1, 0]])
    integration = {}
    monotone = True
    for label, pth, fs, gs in (
        ("axis", axis, "1", "2"),
        ("random", path, "1", "2"),
        ("random", path, "12", "3"),
        ("random", path, "2", "13 + 1"),
    ):
        errs = [
            signature.check_halfshuffle_integration(parse_element(fs), parse_element(gs), pth, None, N)
            for N in (10, 100, 1000)
        ]
        integration[f"{label}: {fs} < {gs}"] = errs
        monotone &= errs[0] >= errs[1] >= errs[2] and errs[2] <= 1e-3
    ok = worst_shuffle <= 1e-9 and chen <= 1e-10 and monotone
    lines = [
        f"shuffle identity, 100 cases, level 6: max error {worst_shuffle:.3e}",
        f"Chen multiplicativity, level 5: max defect {chen:.3e}",
    ] + [f"integration {k}: errors at 10/100/1000 = " + ", ".join(f"{e:.2e}" for e in v) for k, v in integration.items()]
    lines.append(f"convention: {signature.INTEGRATION_CONVENTION}")
    lines.append("PASS" if ok else "FAIL")
    _emit(args, lines, {
        "seed": args.seed,
        "shuffle_identity_max_error": worst_shuffle,
        "shuffle_tolerance": 1e-9,
        "chen_max_defect": chen,
        "chen_tolerance": 1e-10,
        "integration_errors": integration,
        "integration_tolerance_at_1000": 1e-3,
        "convention": signature.INTEGRATION_CONVENTION,
        "passed": ok,
    })
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sig(args) -> int:
    if args.check_suite:
        return _signature_suite(args)
    if args.csv:
        path = signature.PiecewisePath.from_csv(args.csv)
    else:
        path = signature.PiecewisePath.random(args.seed, args.segments, args.alphabet)
    if path.d < args.alphabet and args.element:
        raise UsageError("path dimension smaller than the alphabet")
    if args.element:
        f = _element(args, args.element)
        value = signature.pair_path(f, path)
        _emit(args, [f"<{format_element(f)}, S> = {value!r}"],
              {"element": element_to_json(f), "value": value, "seed": None if args.csv else args.seed})
        return EXIT_OK
    s = signature.signature(path, args.level)
    data = s.to_json() | {"seed": None if args.csv else args.seed}
    lines = [f"{w}\t{v!r}" for w, v in data["coefficients"].items()]
    _emit(args, lines, data)
    return EXIT_OK


def cmd_rank_report(args) -> int:
    H = hall.generate_hall(args.alphabet, args.order, args.max_degree)
    rows = areas.hall_area_rank_report(args.alphabet, args.max_degree, H)
    lines = [f"degree {r.degree}: rank {r.rank} / {r.dimension}" + ("" if r.full_rank else f"  ({len(r.relations)} relations)")
             for r in rows]
    _emit(args, lines, [r.to_json() for r in rows])
    if args.expect_full_rank and not all(r.full_rank for r in rows):
        return EXIT_FAIL
    return EXIT_OK


def cmd_worked_example(args) -> int:
    rep = signature.worked_example(seed=args.seed, n_segments=args.segments)
    j = rep.to_json()
    lines = [
        f"word: {j['word']}",
        f"factorization: {j['factor_string']}",
        f"dual element: {j['dual_element_terms']} words, normalizer {j['normalizer']} on the Hall integrals",
        f"direct pairing:     {rep.direct!r}",
        f"normalized product: {rep.product!r}",
        f"relative error: {rep.relative_error:.2e} (tolerance {rep.tolerance:g})",
        f"constant in plain iterated integrals: {j['plain_iterated_integral_constant']} "
        f"(quoted constant {j['quoted_constant']}: {'matches' if j['quoted_constant_matches'] else 'does not match'})",
        "PASS" if rep.passed else "FAIL",
    ]
    _emit(args, lines, j)
    return EXIT_OK if rep.passed else EXIT_FAIL


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alphabet", type=int, default=2, metavar="D", help="alphabet size d (letters 1..d)")
    common.add_argument("--order", choices=hall.ORDERS, default="lyndon", help="Hall order")
    common.add_argument("--max-degree", type=int, default=4, metavar="N", help="Hall set degree bound")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for random elements and paths (default 0; 42 for worked-example)")
    common.add_argument("--json", action="store_true", help="JSON output")

    p = _Parser(prog="halfshuffle", description="Exact algebra of the half shuffle product.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("hall", parents=[common], help="list Hall trees")
    s.add_argument("--witt-check", nargs="+", metavar="D:N", help="check counts for both orders")
    s.set_defaults(func=cmd_hall)

    s = sub.add_parser("factorize", parents=[common], help="decreasing Hall factorisation")
    s.add_argument("word")
    s.set_defaults(func=cmd_factorize)

    s = sub.add_parser("pbw", parents=[common], help="PBW basis element P_w")
    s.add_argument("word")
    s.set_defaults(func=cmd_pbw)

    s = sub.add_parser("dual", parents=[common], help="dual basis element S_w")
    s.add_argument("word", nargs="?")
    s.add_argument("--strategy", choices=pbw.STRATEGIES, default="direct")
    s.add_argument("--via-integrals", action="store_true", help="print as a multiple of Hall integrals")
    s.add_argument("--verify-duality", nargs="+", metavar="D:N", help="check <S_u, P_v> = delta")
    s.add_argument("--compare-strategies", action="store_true")
    s.add_argument("--expand-random", type=int, default=0, metavar="K",
                   help="round-trip K random elements through the Hall-integral expansion")
    s.add_argument("--max-len", type=int, default=5)
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("expand", parents=[common], help="expand an element in Hall integrals")
    s.add_argument("element", help='e.g. "12 - 1/2*21 + 3*e"')
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("rewrite-areas", parents=[common], help="symbolic iterated-area rewriting")
    s.add_argument("word", nargs="?")
    s.add_argument("--area-of", metavar="TREE")
    s.add_argument("--monomial", nargs="+", metavar="TREE")
    s.add_argument("--beta", type=int, default=0, metavar="K")
    s.add_argument("--check-words", type=int, default=0, metavar="L")
    s.add_argument("--check-instances", type=int, default=0, metavar="N")
    s.set_defaults(func=cmd_rewrite_areas)

    s = sub.add_parser("verify", parents=[common], help="check product identities")
    s.add_argument("--identity", metavar="NAME", help=", ".join(identities.IDENTITIES))
    s.add_argument("--letters", nargs="+", type=int)
    s.add_argument("--elements", nargs="+")
    s.add_argument("--random", type=int, default=200, metavar="K", help="random tuples per identity")
    s.add_argument("--max-len", type=int, default=4)
    s.add_argument("--perm-n", type=int, default=4, help="largest arity for permutation-shuffle")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("eliminate", parents=[common], help="decompose in powers of the greatest letter")
    s.add_argument("element", nargs="?")
    s.add_argument("--c", type=int, help="letter to eliminate (default: the greatest)")
    s.add_argument("--self-check", type=int, default=0, metavar="N")
    s.add_argument("--max-len", type=int, default=5)
    s.set_defaults(func=cmd_eliminate)

    s = sub.add_parser("sig", parents=[common], help="path signatures")
    s.add_argument("element", nargs="?", help="pair this element with the signature")
    s.add_argument("--csv", metavar="FILE")
    s.add_argument("--segments", type=int, default=5)
    s.add_argument("--level", type=int, default=3)
    s.add_argument("--check-suite", action="store_true")
    s.set_defaults(func=cmd_sig)

    s = sub.add_parser("rank-report", parents=[common], help="rank of Hall-area monomials")
    s.add_argument("--expect-full-rank", action="store_true")
    s.set_defaults(func=cmd_rank_report)

    s = sub.add_parser("worked-example", parents=[common], help="dual basis coefficient of 233212222111")
    s.add_argument("--segments", type=int, default=10)
    s.set_defaults(func=cmd_worked_example)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.alphabet < 1 or args.max_degree < 1:
        parser.exit(EXIT_USAGE, "halfshuffle: error: --alphabet and --max-degree must be positive\n")
    if args.seed is None:
        args.seed = 42 if args.command == "worked-example" else 0
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"halfshuffle {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
