"""Command line for the cover classifier.

The CLI is a thin client: every subcommand except ``serve`` sends one request
to the HTTP service (an in-process instance by default, or a remote server via
--server / KDOUBLE_SERVER) and renders the returned JSON document locally.

Exit codes: 0 success; 1 failed check, failed verification, unknown family, or
invalid input data; 2 usage error or internal defect.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .classify import family_table
from .equations import render as render_model
from .quotients import display_name
from .serialize import building_data_from_json, from_envelope


class _Failure(Exception):
    """Carries an exit code and a message for the user."""

    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


class _Client:
    """One origin for all requests: in-process app or a remote base URL."""

    def __init__(self, server: str | None) -> None:
        server = server or os.environ.get("KDOUBLE_SERVER")
        if server:
            import httpx

            self._client = httpx.Client(base_url=server, timeout=600.0)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service.app import create_app

            self._client = TestClient(create_app())

    def get(self, path: str) -> dict:
        return self._finish(self._client.get(path))

    def post(self, path: str, body: dict) -> dict:
        return self._finish(self._client.post(path, json=body))

    @staticmethod
    def _finish(resp) -> dict:
        if resp.status_code == 200:
            return resp.json()
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        if resp.status_code in (400, 404):
            raise _Failure(1, str(detail))
        raise _Failure(2, f"service error {resp.status_code}: {detail}")


def _jobs_default() -> int:
    env = os.environ.get("KDOUBLE_JOBS", "")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def _selector_body(args) -> dict:
    if args.family is not None:
        return {"family": args.family}
    text = open(args.data, encoding="utf-8").read()
    try:
        bd = building_data_from_json(text)
    except (ValueError, KeyError) as exc:
        raise _Failure(1, f"cannot read building data from {args.data}: {exc}")
    return {
        "data": {
            "orders": list(bd.group.orders),
            "l": list(bd.l),
            "d": list(bd.d),
            "base_dim": bd.base_dim,
            "connected": bd.connected,
        }
    }


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def _vector(values) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"


def _align(header: tuple[str, ...], rows: list[tuple[str, ...]]) -> str:
    table = [header] + rows
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
             for row in table]
    return "\n".join(lines)


def _no_latex(args) -> None:
    if args.format == "latex":
        raise _Failure(2, "latex output is only available for 'equations'")


def cmd_classify(args) -> int:
    client = _Client(args.server)
    doc = client.post("/classify", {"k_max": args.kmax, "jobs": args.jobs})
    found = from_envelope(doc)
    check_failures: list[str] = []
    if args.check:
        expected = [f for f in family_table() if f.k <= args.kmax]
        exp_by_label = {f.label: f for f in expected}
        for fam in found:
            ref = exp_by_label.pop(fam.label, None)
            if ref is None:
                check_failures.append(f"unexpected family {fam.label}")
            elif ref != fam:
                check_failures.append(f"family {fam.label} differs from the reference row")
        check_failures.extend(f"missing family {label}" for label in sorted(exp_by_label))
    if args.format == "json":
        _emit(args, _dump(doc))
    else:
        _no_latex(args)
        header = ("label", "k", "type", "d", "l", "K2", "deg_phi", "mod_dim")
        rows = [
            (
                fam.label,
                str(fam.k),
                fam.type,
                _vector(fam.d),
                _vector(fam.l),
                str(fam.K2),
                str(fam.deg_canonical),
                str(fam.modular_dimension),
            )
            for fam in found
        ]
        body = _align(header, rows)
        if args.check:
            status = (
                f"check passed: {len(found)} families"
                if not check_failures
                else "check FAILED:\n" + "\n".join(check_failures)
            )
            body += "\n" + status
        _emit(args, body)
    if check_failures:
        return 1
    return 0


def cmd_invariants(args) -> int:
    client = _Client(args.server)
    doc = client.post("/invariants", _selector_body(args))
    if args.format == "json":
        _emit(args, _dump(doc))
        return 0
    _no_latex(args)
    inv = from_envelope(doc)
    lines = [
        f"p_g = {inv.p_g}",
        f"q = {inv.q}",
        f"chi_O = {inv.chi_O}",
        f"K2 = {inv.K2}",
        f"c = {inv.c}",
        f"K_sign = {inv.K_sign}",
        f"base_points = {inv.base_points}",
        f"deg_canonical = {inv.deg_canonical}",
        f"nodes = {inv.nodes}",
    ]
    _emit(args, "\n".join(lines))
    return 0


def cmd_quotients(args) -> int:
    client = _Client(args.server)
    body = _selector_body(args)
    body["only_k3"] = args.only_k3
    body["towers"] = args.towers
    doc = client.post("/quotients", body)
    if args.format == "json":
        _emit(args, _dump(doc))
        return 0
    _no_latex(args)
    items = from_envelope(doc)
    lines = []
    if args.towers:
        for tower in items:
            chain = " -> ".join(_vector(H.basis) for H in tower.subgroups)
            lines.append(
                f"nodes {_vector(tower.nodes)}  subgroups {chain}  "
                f"involutions {_vector(tower.involutions)}"
            )
        _emit(args, "\n".join(lines) if lines else "none")
        return 0
    for rep in items:
        lines.append(
            f"H={_vector(rep.subgroup.basis)} rank={rep.rank} "
            f"{display_name(rep.label)}  "
            f"[K2={rep.label.K2} p_g={rep.label.p_g} nodes={rep.label.nodes}]"
        )
    _emit(args, "\n".join(lines) if lines else "none")
    return 0


def cmd_burgers(args) -> int:
    client = _Client(args.server)
    doc = client.post("/burgers", _selector_body(args))
    if args.format == "json":
        _emit(args, _dump(doc))
        return 0
    _no_latex(args)
    triples = from_envelope(doc)
    if not triples:
        _emit(args, "none")
        return 0
    lines = []
    for b in triples:
        nodes = _vector(tuple(rep.label.nodes for rep in b.reports))
        lines.append(
            f"sigmas={_vector(b.sigmas)} surviving={_vector(b.surviving)} "
            f"quotient_nodes={nodes}"
        )
    _emit(args, "\n".join(lines))
    return 0


def cmd_equations(args) -> int:
    client = _Client(args.server)
    doc = client.post("/equations", _selector_body(args))
    if args.format == "json":
        _emit(args, _dump(doc))
        return 0
    model = from_envelope(doc)
    _emit(args, render_model(model, args.format))
    return 0


def cmd_verify(args) -> int:
    client = _Client(args.server)
    body = {"jobs": args.jobs}
    if args.section is not None:
        body["sections"] = [args.section]
    doc = client.post("/verify", body)
    _emit(args, doc["report"])
    return 0 if doc["ok"] else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kdouble",
        description="Classify and analyse smooth (Z/2)^k covers of the plane "
        "with geometric genus three.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "json", "latex"), default="text",
        help="output format (latex applies to equations only)",
    )
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument(
        "--jobs", type=int, default=_jobs_default(),
        help="worker count for parallel steps (default: KDOUBLE_JOBS or 1)",
    )
    common.add_argument(
        "--server", help="base URL of a running service (default: in-process)"
    )
    selector = argparse.ArgumentParser(add_help=False)
    group = selector.add_mutually_exclusive_group(required=True)
    group.add_argument("--family", help="family label, e.g. C3")
    group.add_argument("--data", help="path to a JSON building-data file")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="run the family search")
    p.add_argument("--kmax", type=int, default=6, help="largest rank to search (1-6)")
    p.add_argument(
        "--check", action="store_true",
        help="compare the result against the built-in family table",
    )
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser(
        "invariants", parents=[common, selector],
        help="numerical invariants of one cover",
    )
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser(
        "quotients", parents=[common, selector],
        help="quotient-surface reports for every subgroup",
    )
    p.add_argument("--only-k3", action="store_true", help="keep only K3 quotients")
    p.add_argument("--towers", action="store_true", help="list maximal K3 towers")
    p.set_defaults(func=cmd_quotients)

    p = sub.add_parser(
        "burgers", parents=[common, selector],
        help="triples of involutions with all-K3 quotients",
    )
    p.set_defaults(func=cmd_burgers)

    p = sub.add_parser(
        "equations", parents=[common, selector],
        help="weighted-projective equation model",
    )
    p.set_defaults(func=cmd_equations)

    p = sub.add_parser("verify", parents=[common], help="run the check registry")
    p.add_argument(
        "--section", type=int, choices=(2, 3, 4, 5, 6),
        help="run a single registry section",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", parents=[common], help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "classify" and not 1 <= args.kmax <= 6:
        parser.error("--kmax must be between 1 and 6")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except _Failure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
