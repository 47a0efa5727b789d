"""``isorev`` command line.

Exit codes: 0 ok, 1 verification failed, 2 malformed input or tag mismatch,
3 element not in its group.
"""
from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import jsonio
from .classify import classify
from .errors import InvalidFamilyParams, IsorevError, MalformedInput, NotInGroup, TagMismatch
from .isometry import FAMILIES, GroupTag, Isometry
from .oracle import (non_self_dual_angles, planted_element, random_group_element, search_normal_form,
                     self_dual_angles, sp_angles)
from .reverser import verify_witness

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_MEMBERSHIP = 0, 1, 2, 3


def _positive_float(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return x


def _positive_int(text: str) -> int:
    x = int(text)
    if x < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return x


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="isorev", description="Reversibility of unitary affine isometries.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--tol", type=_positive_float, default=1e-9)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--output", help="write JSON here instead of stdout")

    c = sub.add_parser("classify", help="classify an isometry given as JSON")
    common(c)
    c.add_argument("--input", required=True)
    c.add_argument("--oracle", action="store_true", help="cross-check with the randomized reverser search")
    c.add_argument("--trials", type=_positive_int, default=10_000)
    c.add_argument("--normal-form", action="store_true", help="include the normal form in the report")

    v = sub.add_parser("verify", help="check that WITNESS reverses INPUT")
    common(v)
    v.add_argument("--input", required=True)
    v.add_argument("--witness", required=True)

    g = sub.add_parser("generate", help="emit a random group element")
    common(g)
    g.add_argument("--group", choices=FAMILIES, required=True)
    g.add_argument("--n", type=_positive_int, required=True)
    g.add_argument("--affine", action="store_true")
    g.add_argument("--family", choices=("random", "planted-spectrum", "exceptional"), default="random")

    s = sub.add_parser("selftest", help="run the property suites at reduced scale")
    common(s)
    s.add_argument("--n-max", type=_positive_int, default=5)
    s.add_argument("--trials", type=_positive_int, default=200)
    return p


def _emit(obj, path: str | None):
    text = jsonio.dumps(obj)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _seed(args) -> int:
    env = os.environ.get("ISOREV_SEED")
    return int(env) if env not in (None, "") else args.seed


def cmd_classify(args) -> int:
    g = jsonio.load_isometry(args.input)
    verdict = classify(g, args.tol * g.n)
    out = verdict.to_json(include_normal_form=args.normal_form)
    code = EXIT_OK
    if args.oracle:
        found = search_normal_form(verdict.normal_form, trials=args.trials, seed=_seed(args)) is not None
        agree = found == verdict.strongly_reversible
        out["oracle"] = {"search_found_involution": found, "trials": args.trials, "agrees": agree}
        if not agree:
            print("oracle disagrees with the verdict", file=sys.stderr)
            code = EXIT_FAIL
    _emit(out, args.output)
    return code


def cmd_verify(args) -> int:
    g = jsonio.load_isometry(args.input)
    h = jsonio.load_isometry(args.witness)
    if g.tag != h.tag:
        raise TagMismatch(f"{g.tag} vs {h.tag}")
    w = verify_witness(g, h, args.tol * g.n)
    ok = w.residual_conj <= args.tol * g.n and w.det_ok
    _emit({**w.to_json(), "tol": args.tol * g.n, "ok": ok}, args.output)
    return EXIT_OK if ok else EXIT_FAIL


def generate(group: str, n: int, affine: bool, family: str, seed: int) -> Isometry:
    tag = GroupTag(group, affine, n)
    rng = np.random.default_rng(seed)
    if family == "random":
        return random_group_element(tag, seed)
    if family == "exceptional":
        if not (group == "su" and affine and n % 4 == 1 and n >= 5):
            raise InvalidFamilyParams("exceptional family needs su, --affine and n = 1 mod 4 with n >= 5")
        ang = self_dual_angles(n, rng, s=0, t=1, distinct=True)
        fixed = [complex(rng.standard_normal(), rng.standard_normal())]
        return planted_element(tag, ang, fixed, seed)
    # planted-spectrum: a random spectrum of a random kind
    if group == "sp":
        ang = sp_angles(n, rng, bool(rng.random() < 0.5))
    elif group == "u":
        ang = self_dual_angles(n, rng) if rng.random() < 0.5 else non_self_dual_angles(n, rng)
    else:
        if n >= 3 and rng.random() < 0.25:
            ang = non_self_dual_angles(n, rng, special=True)
        else:
            ang = self_dual_angles(n, rng, special=True)
    fixed = None
    if affine:
        t = sum(1 for a in ang if a == 0.0)
        if t and rng.random() < 0.7:
            fixed = (rng.standard_normal(t) + 1j * rng.standard_normal(t) if tag.field == "C"
                     else rng.standard_normal((t, 4)))
    return planted_element(tag, ang, fixed, seed)


def cmd_generate(args) -> int:
    g = generate(args.group, args.n, args.affine, args.family, _seed(args))
    _emit(jsonio.isometry_to_json(g), args.output)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from . import selftest

    rep = selftest.main(args.n_max, args.trials, _seed(args))
    _emit(rep, args.output)
    return EXIT_OK if rep["all_passed"] else EXIT_FAIL


COMMANDS = {"classify": cmd_classify, "verify": cmd_verify,
            "generate": cmd_generate, "selftest": cmd_selftest}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except NotInGroup as exc:
        print(f"isorev: {exc}", file=sys.stderr)
        return EXIT_MEMBERSHIP
    except (MalformedInput, TagMismatch, OSError) as exc:
        print(f"isorev: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidFamilyParams as exc:
        print(f"isorev: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except IsorevError as exc:
        print(f"isorev: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
