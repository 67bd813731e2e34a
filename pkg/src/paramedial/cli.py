"""Command-line front end: count, enumerate, verify.

Output of ``enumerate`` is byte-deterministic for fixed arguments, so it
can be diffed and cached: when the PARAMEDIAL_CACHE_DIR environment
variable is set, serialized results are stored there keyed by command,
parameters and library version, and a warm run replays the exact bytes.
Run manifests (which carry a timestamp) are only written on request via
--manifest, never into the primary output.

Exit codes: 0 success, 1 verification failure, 2 usage/order/IO error,
3 resource or bound exceeded.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from datetime import datetime, timezone

from . import __version__
from .affine import (
    AffineForm,
    ClassRecord,
    CyclicGroup,
    ElemAbelian2Group,
    GroupDescriptor,
    is_simple,
    materialize,
    table_to_text,
)
from .enum_cyclic import (
    UnsupportedOrder,
    case_label,
    closed_form_count,
    enumerate_cyclic,
    gl2_closed_count,
    pq_total,
)
from .enum_gl2 import coset_reps_for, enumerate_gl2, simple_subset
from .modring import Mat2, Modulus, Residue, Unit, Vec2
from .oracle import ResourceLimitError, classify_triples, encode_triple

CACHE_ENV = "PARAMEDIAL_CACHE_DIR"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _parse_group(tokens: list[str], parser: argparse.ArgumentParser) -> GroupDescriptor:
    try:
        if tokens[0] == "cyclic" and len(tokens) == 3:
            return CyclicGroup(Modulus(int(tokens[1]), int(tokens[2])))
        if tokens[0] == "elem2" and len(tokens) == 2:
            return ElemAbelian2Group(int(tokens[1]))
    except ValueError as exc:
        parser.error(str(exc))
    parser.error(f"expected '--group cyclic P K' or '--group elem2 P', got {tokens!r}")


def _group_json(group: GroupDescriptor) -> dict:
    if isinstance(group, CyclicGroup):
        return {"kind": "cyclic", "p": group.modulus.p, "k": group.modulus.k}
    return {"kind": "elem2", "p": group.p}


def _records_for(group: GroupDescriptor) -> list[ClassRecord]:
    if isinstance(group, CyclicGroup):
        cls = enumerate_cyclic(group.modulus)
        return [ClassRecord(f, case_label(f), is_simple(f)) for f in cls.forms]
    return enumerate_gl2(group.p).records()


def record_to_dict(rec: ClassRecord) -> dict:
    """JSON form of one class: matrices row-major, vectors flat."""
    form = rec.form
    if isinstance(form.group, CyclicGroup):
        phi = [[form.phi.value]]
        psi = [[form.psi.value]]
        c = [form.c.value]
    else:
        phi = [list(r) for r in form.phi.rows()]
        psi = [list(r) for r in form.psi.rows()]
        c = list(form.c.entries())
    return {
        "group": _group_json(form.group),
        "phi": phi,
        "psi": psi,
        "c": c,
        "simple": rec.simple,
        "case": rec.case,
    }


def form_from_dict(d: dict) -> AffineForm:
    g = d["group"]
    if g["kind"] == "cyclic":
        m = Modulus(g["p"], g["k"])
        group = CyclicGroup(m)
        return AffineForm(
            group,
            Unit(Residue(d["phi"][0][0], m)),
            Unit(Residue(d["psi"][0][0], m)),
            Residue(d["c"][0], m),
        )
    p = g["p"]
    group = ElemAbelian2Group(p)
    (a, b), (c_, d_) = d["phi"]
    (e, f), (g_, h) = d["psi"]
    return AffineForm(
        group, Mat2(a, b, c_, d_, p), Mat2(e, f, g_, h, p), Vec2(d["c"][0], d["c"][1], p)
    )


def _group_token(group: GroupDescriptor) -> str:
    if isinstance(group, CyclicGroup):
        return f"cyclic({group.modulus.p},{group.modulus.k})"
    return f"elem2({group.p})"


def _flat_matrix(rows: list[list[int]]) -> str:
    return ";".join(",".join(str(v) for v in row) for row in rows)


def render_records(records: list[ClassRecord], fmt: str) -> bytes:
    if fmt == "json":
        payload = [record_to_dict(r) for r in records]
        return (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["group", "phi", "psi", "c", "simple", "case"])
        for rec in records:
            d = record_to_dict(rec)
            writer.writerow(
                [
                    _group_token(rec.form.group),
                    _flat_matrix(d["phi"]),
                    _flat_matrix(d["psi"]),
                    ",".join(str(v) for v in d["c"]),
                    "true" if rec.simple else "false",
                    rec.case,
                ]
            )
        return buf.getvalue().encode()
    if fmt == "tables":
        chunks = []
        for rec in records:
            d = record_to_dict(rec)
            header = (
                f"# group={_group_token(rec.form.group)}"
                f" case={rec.case}"
                f" simple={'true' if rec.simple else 'false'}"
                f" phi={_flat_matrix(d['phi'])}"
                f" psi={_flat_matrix(d['psi'])}"
                f" c={','.join(str(v) for v in d['c'])}"
            )
            chunks.append(header + "\n" + table_to_text(materialize(rec.form)))
        return "\n".join(chunks).encode()
    raise ValueError(f"unknown format {fmt!r}")


# -- caching and manifests ------------------------------------------------------


def _cache_key(command: str, params: dict) -> str:
    canon = json.dumps({"command": command, "params": params, "version": __version__}, sort_keys=True)
    return hashlib.sha256(canon.encode()).hexdigest()


def _cache_path(key: str) -> str | None:
    cache_dir = os.environ.get(CACHE_ENV)
    if not cache_dir:
        return None
    return os.path.join(cache_dir, f"{key}.out")


def _cache_load(path: str | None) -> bytes | None:
    if path is None or not os.path.exists(path):
        return None
    with open(path, "rb") as fh:
        return fh.read()


def _cache_store(path: str | None, data: bytes) -> None:
    if path is None:
        return
    os.makedirs(os.path.dirname(path), exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path))
    with os.fdopen(fd, "wb") as fh:
        fh.write(data)
    os.replace(tmp, path)


def _write_manifest(path: str, command: str, params: dict, data: bytes) -> None:
    manifest = {
        "command": command,
        "parameters": params,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "output_digest": "sha256:" + hashlib.sha256(data).hexdigest(),
    }
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _emit(data: bytes, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(out_path, "wb") as fh:
            fh.write(data)


# -- subcommands ------------------------------------------------------------------


def cmd_count(args, parser) -> int:
    if args.order is not None:
        count = pq_total(args.order)
        params = {"order": args.order}
    else:
        group = _parse_group(args.group, parser)
        if isinstance(group, CyclicGroup):
            count = closed_form_count(group.modulus)
        else:
            count = gl2_closed_count(group.p)
        params = {"group": _group_json(group)}
    if args.json:
        print(json.dumps({"command": "count", **params, "count": count}, sort_keys=True))
    else:
        print(count)
    return EXIT_OK


def cmd_enumerate(args, parser) -> int:
    group = _parse_group(args.group, parser)
    params = {
        "group": _group_json(group),
        "simple_only": args.simple_only,
        "format": args.format,
    }
    key_path = _cache_path(_cache_key("enumerate", params))
    data = _cache_load(key_path)
    if data is None:
        records = _records_for(group)
        if args.simple_only:
            records = [r for r in records if r.simple]
        data = render_records(records, args.format)
        _cache_store(key_path, data)
    try:
        _emit(data, args.out)
        if args.manifest:
            _write_manifest(args.manifest, "enumerate", params, data)
    except OSError as exc:
        target = args.out or args.manifest or "<stdout>"
        print(f"error: cannot write {target}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


@dataclass
class _Report:
    failures: int = 0

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        if ok:
            print(f"ok: {name}")
        else:
            self.failures += 1
            print(f"FAIL: {name}" + (f" ({detail})" if detail else ""))


def _verify_cyclic(group: CyclicGroup, level: str, report: _Report) -> None:
    m = group.modulus
    cls = enumerate_cyclic(m)
    expected = closed_form_count(m)
    report.check(
        f"count over Z_{m.n} equals closed form {expected}",
        cls.count == expected,
        f"got {cls.count}",
    )
    ok_units = all(f.phi.value % m.p != 0 and f.psi.value % m.p != 0 for f in cls.forms)
    report.check("phi and psi are units", ok_units)
    ok_pm = all((f.phi.value**2 - f.psi.value**2) % m.n == 0 for f in cls.forms)
    report.check("phi^2 = psi^2 for every class", ok_pm)
    keys = [f.triple_key() for f in cls.forms]
    report.check("classes are sorted and distinct", keys == sorted(set(keys)))
    if level == "oracle":
        oracle_cls = classify_triples(group, max_order=27)
        report.check(
            f"oracle orbit count equals {expected}",
            oracle_cls.count == expected,
            f"got {oracle_cls.count}",
        )
        hit = {oracle_cls.orbit_of(f) for f in cls.forms}
        report.check(
            "representatives hit every orbit exactly once",
            len(hit) == len(cls.forms) == oracle_cls.count,
        )


def _verify_elem2(group: ElemAbelian2Group, level: str, report: _Report) -> None:
    p = group.p
    cls = enumerate_gl2(p)
    expected = gl2_closed_count(p)
    report.check(
        f"count over Z_{p}^2 equals closed form {expected}",
        cls.total == expected,
        f"got {cls.total}",
    )
    ok_struct = True
    for row in cls.rows:
        if row.phi.det() == 0 or row.psi.det() == 0 or row.phi.square() != row.psi.square():
            ok_struct = False
        if list(row.coset_reps) != coset_reps_for(row.phi, row.psi):
            ok_struct = False
    report.check("rows satisfy phi^2 = psi^2 with admissible constants", ok_struct)
    if p != 2:
        simple_total = simple_subset(cls).total
        formula = (
            (p * p - 4 * p + 5) // 2
            + (p - 3)
            + (p * p - p)
            + (p - 1) * (p - 3) // 2
            + (p - 1)
        )
        report.check(
            f"simple class count equals {formula}",
            simple_total == formula,
            f"got {simple_total}",
        )
    ok_flags = all(is_simple(rec.form) == rec.simple for rec in cls.records())
    report.check("simplicity flags match the invariant-subgroup criterion", ok_flags)
    if level == "oracle":
        if p > 5:
            raise ResourceLimitError(f"oracle verification over Z_{p}^2 is bounded to p <= 5")
        oracle_cls = classify_triples(group)
        report.check(
            f"oracle orbit count equals {expected}",
            oracle_cls.count == expected,
            f"got {oracle_cls.count}",
        )
        hit = {oracle_cls.partition.index[encode_triple(rec.form)] for rec in cls.records()}
        report.check(
            "representatives hit every orbit exactly once",
            len(hit) == cls.total == oracle_cls.count,
        )


def cmd_verify(args, parser) -> int:
    group = _parse_group(args.group, parser)
    report = _Report()
    if isinstance(group, CyclicGroup):
        _verify_cyclic(group, args.level, report)
    else:
        _verify_elem2(group, args.level, report)
    if report.failures:
        print(f"{report.failures} check(s) failed")
        return EXIT_VERIFY_FAILED
    print("all checks passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paramedial",
        description="Count, enumerate and verify paramedial quasigroups of prime-power order.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_count = sub.add_parser("count", help="number of classes for an order or a group")
    target = p_count.add_mutually_exclusive_group(required=True)
    target.add_argument("--order", type=int, help="total over all abelian groups of this order")
    target.add_argument("--group", nargs="+", metavar="SPEC", help="cyclic P K | elem2 P")
    p_count.add_argument("--json", action="store_true", help="emit a JSON object instead of the bare integer")
    p_count.set_defaults(func=cmd_count)

    p_enum = sub.add_parser("enumerate", help="export one representative per class")
    p_enum.add_argument("--group", nargs="+", metavar="SPEC", required=True, help="cyclic P K | elem2 P")
    p_enum.add_argument("--simple-only", action="store_true", help="keep only simple quasigroups")
    p_enum.add_argument("--format", choices=["json", "csv", "tables"], default="json")
    p_enum.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    p_enum.add_argument("--manifest", metavar="PATH", help="also write a run manifest with digest")
    p_enum.set_defaults(func=cmd_enumerate)

    p_verify = sub.add_parser("verify", help="run invariant checks against the classification")
    p_verify.add_argument("--group", nargs="+", metavar="SPEC", required=True, help="cyclic P K | elem2 P")
    p_verify.add_argument("--level", choices=["fast", "oracle"], default="fast")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except UnsupportedOrder as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
