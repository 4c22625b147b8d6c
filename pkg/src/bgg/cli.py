"""Batch command line front end.

Exit codes: 0 success, 1 mathematical precondition failure (window too
small, support meets center, start certification, ...), 2 input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import cache as cachemod
from . import serialize
from .errors import InputError, MathPreconditionError
from .fields import PrimeField, RationalField, default_field
from .geometry import (SubspaceSpec, certify_sheaf, fiber_rank, local_pd,
                       probe_degeneracy, project)
from .symmetric import SPresentation
from .tate import TateWindow, tate_from_differential, tate_from_presentation
from .transforms import (beilinson_shape, betti_numbers, betti_pretty,
                         hilbert_from_coranks, hilbert_from_kernel,
                         rigid_complex, walter_shape)
from .zoo import builtin_presentation, horrocks_mumford, schur_oracle


def parse_field(text):
    if text is None:
        return default_field()
    if text == "rational":
        return RationalField()
    return PrimeField(int(text))


def parse_window(text, default=None):
    if text is None:
        if default is None:
            raise InputError("a --window lo:hi is required")
        return default
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError as e:
        raise InputError(f"bad window {text!r}, expected lo:hi") from e


def parse_point(text, field, v):
    try:
        coords = [field(int(c)) for c in text.split(",")]
    except ValueError as e:
        raise InputError(f"bad point {text!r}") from e
    if len(coords) != v + 1:
        raise InputError(f"point needs {v + 1} coordinates")
    return SubspaceSpec.point(field, v, coords)


def parse_sub(text, field, v):
    thetas = []
    for part in text.split(";"):
        thetas.append([field(int(c)) for c in part.split(",")])
    return SubspaceSpec(field, v, thetas)


def load_presentation(args, field) -> SPresentation:
    if args.builtin:
        return builtin_presentation(args.builtin, field)
    if args.input:
        with open(args.input) as fh:
            return serialize.spresentation_from_json(json.load(fh), field)
    raise InputError("need --input FILE or --builtin NAME")


def build_tate(args, field) -> TateWindow:
    window = parse_window(args.window)
    start = getattr(args, "start", None) or "auto"
    src = {"builtin": args.builtin} if args.builtin else \
        {"file": os.path.abspath(args.input)} if args.input else None
    if src is None:
        raise InputError("need --input FILE or --builtin NAME")
    request = {"kind": "tate", **field.to_json(), "source": src,
               "window": list(window), "start": start}
    if not args.no_cache:
        hit = cachemod.cache_get(request)
        if hit is not None:
            print("cache hit", file=sys.stderr)
            return serialize.tatewindow_from_json(hit)
    pres = load_presentation(args, field)
    T = tate_from_presentation(pres, window, start=start)
    if not args.no_cache:
        cachemod.cache_put(request, serialize.tatewindow_to_json(T))
    return T


def build_hm(field, window):
    d0, _ = horrocks_mumford(field)
    lo, hi = window
    if lo > 0 or hi < 1:
        raise InputError("the HM window must contain positions 0 and 1")
    return tate_from_differential(d0, left=-lo, right=hi - 1)


def emit(args, human: str, payload):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(human)


def add_source_args(sp, window_required=True):
    sp.add_argument("--input", help="presentation JSON file")
    sp.add_argument("--builtin", help="builtin name, e.g. point2, O2(-1), omega3(2), cubic3, twopoint2")
    sp.add_argument("--window", required=window_required, help="lo:hi")
    sp.add_argument("--start", help="strand start degree (default: auto)")


def main(argv=None) -> int:
    import re
    neg = re.compile(r"^-\d+.*$")  # let window values like -6:4 pass as values

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help='prime (e.g. 32003) or "rational"; default 32003')
    common.add_argument("--json", action="store_true", help="also emit JSON on stdout")
    common.add_argument("--threads", type=int, default=os.cpu_count(),
                        help="worker threads for sampling loops")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")

    ap = argparse.ArgumentParser(
        prog="bgg",
        description="Exact Tate resolutions over the exterior algebra: "
                    "cohomology tables, regularity, Hilbert polynomials, "
                    "Betti numbers, Beilinson/Walter shapes, fibers, projections.")
    ap._negative_number_matcher = neg
    sub = ap.add_subparsers(dest="command", required=True)

    def parser(name):
        sp = sub.add_parser(name, parents=[common])
        sp._negative_number_matcher = neg
        return sp

    for name in ("tate", "table", "regularity", "betti", "dual"):
        add_source_args(parser(name))
    sp = parser("hilbert")
    add_source_args(sp)
    sp.add_argument("--position", type=int, help="kernel position (default: window middle)")
    sp = parser("beilinson")
    add_source_args(sp)
    sp.add_argument("--r", type=int, default=0)
    sp = parser("walter")
    add_source_args(sp)
    sp.add_argument("--r", type=int, default=0)
    sp.add_argument("--lpd", type=int, default=0)
    sp = parser("rigid")
    add_source_args(sp)
    sp.add_argument("--position", type=int, required=True)
    for name in ("fiber", "localpd"):
        sp = parser(name)
        add_source_args(sp)
        sp.add_argument("--point", required=True, help="homogeneous coordinates, e.g. 1,0,0")
        sp.add_argument("--position", type=int, default=0)
    sp = parser("probe")
    add_source_args(sp)
    sp.add_argument("--sub", required=True, help="annihilator forms, e.g. 1,0,0;0,1,0")
    sp.add_argument("--position", type=int, default=0)
    sp.add_argument("--samples", type=int, default=20)
    sp = parser("project")
    add_source_args(sp)
    sp.add_argument("--sub", required=True)
    sp = parser("certify")
    sp.add_argument("--hm", action="store_true", help="certify the built-in HM complex")
    sp.add_argument("--input", help="JSON with {d_in: ..., d_out: ...}")
    sp.add_argument("--a", type=int, default=0)
    sp.add_argument("--l", type=int, default=4)
    sp.add_argument("--samples", type=int, default=25)
    sp = parser("demo-hm")
    sp.add_argument("--window", default="-6:4")
    sp = parser("demo-schur")
    sp.add_argument("--v", type=int, required=True)
    sp.add_argument("--lam", required=True, help="partition, e.g. 1,1,0")
    sp.add_argument("--window", default="-4:4")

    try:
        args = ap.parse_args(argv)
        return run(args)
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except MathPreconditionError as e:
        print(f"precondition failed: {e}", file=sys.stderr)
        return 1


def run(args) -> int:
    field = parse_field(args.field)
    rng = np.random.default_rng(args.seed)
    cmd = args.command

    if cmd == "demo-hm":
        if field.kind != "prime":
            raise InputError("demo-hm runs over a prime field")
        T = build_hm(field, parse_window(args.window))
        tab = T.table()
        emit(args, T.summary() + "\n\n" + tab.pretty(), {"table": tab.to_json()})
        return 0

    if cmd == "demo-schur":
        lam = [int(x) for x in args.lam.split(",")]
        if len(lam) != args.v:
            raise InputError(f"partition must have length v={args.v}")
        from .zoo import twisted_differentials  # shape check is in schur_oracle
        lo, hi = parse_window(args.window)
        rows = []
        for a in range(lo, hi + 1):
            r, dim = schur_oracle(args.v, lam, a)
            rows.append({"a": a, "r": r, "h": dim})
        human = "\n".join(f"a={row['a']:>3}: nonzero cell h^{row['r']}({row['a'] - row['r']}) = {row['h']}"
                          for row in rows)
        emit(args, human, {"schur": rows, "lam": lam, "v": args.v})
        return 0

    if cmd == "certify":
        if args.hm or not args.input:
            if field.kind != "prime":
                raise InputError("certify --hm runs over a prime field")
            d0, dm1 = horrocks_mumford(field)
            d_in, d_out = dm1, d0
        else:
            with open(args.input) as fh:
                obj = json.load(fh)
            d_in = serialize.extmatrix_from_json(obj["d_in"], field)
            d_out = serialize.extmatrix_from_json(obj["d_out"], field)
        verdict = certify_sheaf(d_in, d_out, a=args.a, l=args.l,
                                samples=args.samples, rng=rng, threads=args.threads)
        emit(args, verdict.text(),
             {"ok": verdict.ok, "rank": verdict.rank, "lpd_bound": verdict.lpd_bound,
              "codim_bound": verdict.codim_bound, "torsion_free": verdict.torsion_free,
              "samples": verdict.samples, "profiles": verdict.sample_profiles,
              "message": verdict.message})
        return 0 if verdict.ok else 1

    T = build_tate(args, field)

    if cmd == "tate":
        emit(args, T.summary(), serialize.tatewindow_to_json(T))
    elif cmd == "table":
        tab = T.table()
        emit(args, tab.pretty(), tab.to_json())
    elif cmd == "regularity":
        reg = T.table().regularity()
        emit(args, f"regularity = {reg}", {"regularity": reg})
    elif cmd == "dual":
        D = T.dual()
        emit(args, D.summary() + "\n\n" + D.table().pretty(),
             {"table": D.table().to_json()})
    elif cmd == "hilbert":
        p = args.position if args.position is not None else (T.lo + T.hi) // 2
        chi = hilbert_from_kernel(T, p)
        n_lo, n_hi = T.table().n_range()
        vals = {n: chi(n) for n in range(n_lo, n_hi + 1)}
        agree = all(hilbert_from_coranks(T, n) == chi(n)
                    for n in range(T.lo, T.hi - T.v + 1))
        human = (f"chi(n) = {chi}\n"
                 + " ".join(f"chi({n})={x}" for n, x in vals.items())
                 + f"\ncorank formula agrees: {agree}")
        emit(args, human, {"hilbert": chi.to_json(),
                           "values": {str(n): x for n, x in vals.items()},
                           "corank_formula_agrees": agree})
    elif cmd == "betti":
        b = betti_numbers(T)
        emit(args, betti_pretty(b),
             {"betti": sorted([j, q, r] for (j, q), r in b.items())})
    elif cmd == "beilinson":
        shape = beilinson_shape(T, args.r)
        emit(args, shape.pretty(), shape.to_json())
    elif cmd == "walter":
        shape = walter_shape(T, args.r, args.lpd)
        emit(args, shape.pretty(), shape.to_json())
    elif cmd == "rigid":
        R = rigid_complex(T, args.position)
        shape = R.shape()
        emit(args, shape.pretty() + f"\n(d∘d = 0: {R.dd_is_zero()})",
             {**shape.to_json(), "dd_zero": R.dd_is_zero()})
    elif cmd == "fiber":
        pt = parse_point(args.point, field, T.v)
        r = fiber_rank(T, pt, args.position)
        emit(args, f"fiber rank = {r}", {"fiber_rank": r})
    elif cmd == "localpd":
        pt = parse_point(args.point, field, T.v)
        l = local_pd(T, pt, args.position)
        emit(args, f"local projective dimension = {l}", {"local_pd": l})
    elif cmd == "probe":
        sub_spec = parse_sub(args.sub, field, T.v)
        rep = probe_degeneracy(T, sub_spec, a=args.position,
                               samples=args.samples, rng=rng, threads=args.threads)
        emit(args, rep.verdict(),
             {"codim": rep.codim, "samples": rep.samples, "ranks": rep.ranks,
              "pds": rep.pds, "pure": rep.pure, "rank": rep.rank})
    elif cmd == "project":
        sub_spec = parse_sub(args.sub, field, T.v)
        P = project(T, sub_spec)
        emit(args, P.summary() + "\n\n" + P.table().pretty(),
             {"table": P.table().to_json()})
    else:
        raise InputError(f"unknown command {cmd}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
