"""Command-line front end.

Loads named objects from text files into a single-domain workspace and
runs solving, projection, membership, weighted-polymorphism checking,
classification, clone generation, polymorphism enumeration, and
superposition.  Reports go to standard output and are byte-identical
across runs; diagnostics go to standard error.  Exit status: 0 for an
answered query (member and nonmember alike), 2 for input errors, 3 for
resource-cap errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys

from . import formats
from .classify import classify_boolean
from .errors import DEFAULT_CAPS, InputError, ResourceLimitError
from .membership import wclone_member, wrelclone_member
from .operations import clone_generate, superpose
from .polymorphisms import pol_k
from .vcsp import project, solve_bruteforce
from .weightings import (
    CANONICAL_TAGS,
    is_weighted_polymorphism,
    wt_superpose,
    zero_extend,
)


def _caps_from(args):
    caps = DEFAULT_CAPS
    for flag, fieldname in (
        ("max_assignments", "max_assignments"),
        ("max_ops", "max_ops"),
        ("max_matches", "max_matches"),
        ("max_lp_rows", "max_lp_rows"),
        ("max_sequences", "max_sequences"),
    ):
        value = getattr(args, flag, None)
        if value is not None:
            caps = dataclasses.replace(caps, **{fieldname: value})
    return caps


def _workspace(paths):
    ws = formats.Workspace()
    for path in paths:
        ws.load_file(path)
    return ws


def _lookup(store, name, kind):
    if name not in store:
        raise InputError(f"unknown {kind} name {name!r}")
    return store[name]


def _write_or_print(out_dir, filename, text):
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, filename), "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args):
    ws = _workspace(args.files)
    instance = _lookup(ws.instances, args.instance, "instance")
    result = solve_bruteforce(instance, _caps_from(args))
    if not result.solved:
        print("infeasible")
        return
    print(f"optimum {result.optimal_cost}")
    for witness in result.witnesses:
        pairs = " ".join(f"{v}={witness[v]}" for v in instance.variables)
        print(f"witness {pairs}")


def cmd_project(args):
    ws = _workspace(args.files)
    instance = _lookup(ws.instances, args.instance, "instance")
    rel = project(instance, args.onto, _caps_from(args))
    sys.stdout.write(formats.serialize_relation("projection", rel))


def cmd_member(args):
    ws = _workspace(args.files)
    caps = _caps_from(args)
    if args.mode == "wrelclone":
        language = [_lookup(ws.relations, n, "relation") for n in args.language]
        target = _lookup(ws.relations, args.target, "relation")
        library = list(ws.weightings.values())
        result = wrelclone_member(language, target, caps, library=library)
        if result.member:
            print("member")
            print(f"shift {result.shift}")
            _emit_gadget(args.out, result)
        else:
            print("nonmember")
            _emit_weighting(args.out, "separator", result.separator)
        return
    sources = [_lookup(ws.weightings, n, "weighting") for n in args.language]
    target = _lookup(ws.weightings, args.target, "weighting")
    result = wclone_member(sources, target, caps)
    if result.member:
        print("member")
        print(f"terms {len(result.recipe)}")
        _emit_recipe(args.out, result.recipe)
    else:
        print("nonmember")
        _write_or_print(
            args.out,
            "separator.rel",
            formats.serialize_relation("separator", result.separator),
        )


def _emit_gadget(out_dir, result):
    rel_names = {}
    scales = {}
    stanzas = []
    for idx, (rel, (source, alpha, _)) in enumerate(sorted(
            result.provenance.items(),
            key=lambda kv: (kv[1][1], sorted(kv[0].table.items())))):
        base = f"r{idx}"
        stanzas.append(formats.serialize_relation(base, source))
        scales[rel] = (base, alpha)
        rel_names[rel] = base
    body = "".join(stanzas) + formats.serialize_instance(
        "gadget", result.gadget, rel_names, scales
    )
    body += "# interface " + " ".join(result.interface) + "\n"
    _write_or_print(out_dir, "gadget.vcsp", body)


def _emit_weighting(out_dir, name, omega):
    text, names = formats.serialize_weighting(name, omega)
    body = formats.weighting_operation_stanzas(omega, names) + text
    _write_or_print(out_dir, f"{name}.wt", body)


def _emit_recipe(out_dir, recipe):
    chunks = []
    for i, (source, gs, coeff) in enumerate(recipe):
        text, names = formats.serialize_weighting(f"w{i}", source)
        chunks.append(formats.weighting_operation_stanzas(source, names))
        chunks.append(text)
        inner = []
        for j, g in enumerate(gs):
            idx = g.projection_index()
            if idx is not None:
                inner.append(formats.projection_name(idx, g.arity))
            else:
                gname = f"g{i}_{j}"
                chunks.append(formats.serialize_operation(gname, g))
                inner.append(gname)
        chunks.append(f"# term {i}: coeff {coeff} inner {' '.join(inner)}\n")
    _write_or_print(out_dir, "recipe.wt", "".join(chunks))


def cmd_check_wpol(args):
    ws = _workspace(args.files)
    omega = _lookup(ws.weightings, args.weighting, "weighting")
    rel = _lookup(ws.relations, args.relation, "relation")
    check = is_weighted_polymorphism(omega, rel, _caps_from(args))
    if check.holds:
        print("improves")
        return
    print("violates")
    if check.violation is not None:
        print(f"sum {check.violation}")
    if check.witness is not None:
        for i, t in enumerate(check.witness):
            print(f"x{i + 1} " + " ".join(str(v) for v in t))
    if check.bad_operation is not None:
        sys.stdout.write(formats.serialize_operation("culprit", check.bad_operation))


def cmd_classify_boolean(args):
    ws = _workspace(args.files)
    names = args.language if args.language else sorted(ws.relations)
    language = [_lookup(ws.relations, n, "relation") for n in names]
    verdict = classify_boolean(language, _caps_from(args))
    if verdict.tractable:
        tag = next(t for t in CANONICAL_TAGS if verdict.type_report[t]
                   and _same_canonical(verdict.witness, t))
        print(f"tractable {tag}")
    else:
        print(f"np-hard {verdict.np_hard_reason}")
    for tag in CANONICAL_TAGS:
        print(f"type {tag} {'true' if verdict.type_report[tag] else 'false'}")


def _same_canonical(omega, tag):
    from .weightings import canonical_weighting

    return omega == canonical_weighting(tag)


def cmd_clone_gen(args):
    ws = _workspace(args.files)
    generators = [_lookup(ws.operations, n, "operation") for n in args.generators]
    if not generators and ws.domain is None:
        raise InputError("clone-gen with no generators needs at least one file")
    slices = clone_generate(
        generators, args.cap, _caps_from(args), domain=ws.domain
    )
    for k in range(1, args.cap + 1):
        print(f"arity {k} size {len(slices.slice(k))}")
    if args.out:
        for k in range(1, args.cap + 1):
            chunks = [
                formats.serialize_operation(f"c{k}_{i}", f)
                for i, f in enumerate(slices.sorted_slice(k))
            ]
            _write_or_print(args.out, f"clone_k{k}.ops", "".join(chunks))


def cmd_pol(args):
    ws = _workspace(args.files)
    language = [_lookup(ws.relations, n, "relation") for n in args.language]
    found = sorted(pol_k(language, args.arity, _caps_from(args), domain=ws.domain))
    print(f"count {len(found)}")
    if args.out:
        chunks = [
            formats.serialize_operation(f"p{i}", f) for i, f in enumerate(found)
        ]
        _write_or_print(args.out, f"pol_k{args.arity}.ops", "".join(chunks))


def cmd_superpose(args):
    ws = _workspace(args.files)
    inner = [
        formats.resolve_operation(n, ws.domain, ws.operations) for n in args.inner
    ]
    if args.op:
        f = formats.resolve_operation(args.op, ws.domain, ws.operations)
        sys.stdout.write(
            formats.serialize_operation("superposition", superpose(f, inner))
        )
        return
    omega = _lookup(ws.weightings, args.weighting, "weighting")
    slices, (extended,) = zero_extend([omega], max(omega.arity, inner[0].arity),
                                      _caps_from(args))
    for g in inner:
        if not slices.contains(g):
            raise InputError(
                "inner operation outside the clone generated by the support"
            )
    raw = wt_superpose(extended, inner, slices)
    print(f"proper {'true' if not raw.improper_operations() else 'false'}")
    text, names = formats.serialize_weighting("superposition", raw)
    sys.stdout.write(formats.weighting_operation_stanzas(raw, names) + text)


def _add_caps(parser):
    parser.add_argument("--max-assignments", type=int, dest="max_assignments")
    parser.add_argument("--max-ops", type=int, dest="max_ops")
    parser.add_argument("--max-matches", type=int, dest="max_matches")
    parser.add_argument("--max-lp-rows", type=int, dest="max_lp_rows")
    parser.add_argument("--max-sequences", type=int, dest="max_sequences")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wvcsp",
        description="Exact tools for weighted relations, weightings, and VCSPs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance by exact enumeration")
    p.add_argument("files", nargs="+")
    p.add_argument("--instance", required=True)
    _add_caps(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("project", help="project an instance onto variables")
    p.add_argument("files", nargs="+")
    p.add_argument("--instance", required=True)
    p.add_argument("--onto", nargs="*", default=[])
    _add_caps(p)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("member", help="decide closure membership")
    p.add_argument("files", nargs="+")
    p.add_argument("--mode", choices=["wrelclone", "wclone"], required=True)
    p.add_argument("--language", nargs="+", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--out")
    _add_caps(p)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("check-wpol", help="test a weighted polymorphism")
    p.add_argument("files", nargs="+")
    p.add_argument("--weighting", required=True)
    p.add_argument("--relation", required=True)
    _add_caps(p)
    p.set_defaults(func=cmd_check_wpol)

    p = sub.add_parser("classify-boolean", help="Boolean dichotomy verdict")
    p.add_argument("files", nargs="*")
    p.add_argument("--language", nargs="*", default=None)
    _add_caps(p)
    p.set_defaults(func=cmd_classify_boolean)

    p = sub.add_parser("clone-gen", help="generate capped clone slices")
    p.add_argument("files", nargs="*")
    p.add_argument("--generators", nargs="*", default=[])
    p.add_argument("--cap", type=int, required=True)
    p.add_argument("--out")
    _add_caps(p)
    p.set_defaults(func=cmd_clone_gen)

    p = sub.add_parser("pol", help="enumerate k-ary polymorphisms")
    p.add_argument("files", nargs="+")
    p.add_argument("--language", nargs="+", required=True)
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--out")
    _add_caps(p)
    p.set_defaults(func=cmd_pol)

    p = sub.add_parser("superpose", help="superpose an operation or weighting")
    p.add_argument("files", nargs="+")
    p.add_argument("--op")
    p.add_argument("--weighting")
    p.add_argument("--inner", nargs="+", required=True)
    _add_caps(p)
    p.set_defaults(func=cmd_superpose)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ResourceLimitError, RecursionError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
