"""Command line surface.

Subcommands: enumerate, classify, invariants, verify, export.  Exit
statuses: 0 success / all checks passed, 1 usage or parse error, 2
classification answered "no complex structure", 3 verification failure.
All output is deterministic: identical inputs give identical bytes.
"""

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from math import comb

from .cohomology import (
    closed_table,
    frolicher_holds,
    jordan_block_module_cohomology,
    oracle_table,
    structural_checks,
    verify_symmetry,
)
from .exactla import jordan_type
from .model import (
    ComplexModel,
    InvalidModelError,
    admits_complex_structure,
    build_algebra,
    commutator_dimension,
    enumerate_models,
    structure_equations,
)
from .partitions import Partition, partitions_of, restricted_count
from .records import ExportRecord, compact_equations
from .sl2 import (
    delta,
    irreducible,
    tensor,
    wedge,
    wedge_irreducible_oracle,
    wedge_weight_oracle,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_COMPLEX = 2
EXIT_VERIFY_FAILED = 3

WORKERS_ENV = "ALMOSTABELIAN_WORKERS"


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit status 2 on bad usage; we reserve 2 for
    a negative classification, so usage errors exit with 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def partition_argument(text):
    try:
        parts = [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers, got %r" % text)
    if not parts:
        raise argparse.ArgumentTypeError("empty partition")
    try:
        return Partition(parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser():
    parser = _Parser(prog="almostabelian", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", help="list the models of one dimension")
    p.add_argument("--dim", type=int, required=True, help="algebra dimension (even, >= 4)")

    p = sub.add_parser("classify", help="test a Jordan type for a complex structure")
    p.add_argument("--jordan", type=partition_argument, required=True, metavar="a,b,c",
                   help="Jordan block sizes, any order")

    p = sub.add_parser("invariants", help="Betti and Hodge tables of one model")
    p.add_argument("--q", type=partition_argument, required=True, metavar="a,b")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--oracle", action="store_true", help="use the rank oracle instead of the closed forms")
    p.add_argument("--output", default=None, help="write to this path instead of stdout")

    p = sub.add_parser("verify", help="run the full cross-check sweep")
    p.add_argument("--max-dim", type=int, default=12, dest="max_dim",
                   help="largest algebra dimension to sweep (default 12)")

    p = sub.add_parser("export", help="structure equations of one model")
    p.add_argument("--q", type=partition_argument, required=True, metavar="a,b")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--format", choices=("json", "salamon"), required=True)
    p.add_argument("--output", default=None, help="write to this path instead of stdout")

    return parser


def _emit(text, output):
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w") as handle:
            handle.write(text)


def _model_from_args(parser, args):
    try:
        return ComplexModel(args.q.n, args.q, args.j)
    except InvalidModelError as exc:
        parser.error(str(exc))


def cmd_enumerate(parser, args):
    if args.dim < 4 or args.dim % 2:
        parser.error("--dim must be an even integer >= 4")
    n = (args.dim - 2) // 2
    for c in enumerate_models(n):
        alg = build_algebra(c)
        sys.stdout.write(
            "m=%s q=%s j=%d eps=%d step=%d commutator=%d\n"
            % (c.m, c.q, c.j, c.epsilon, c.step, commutator_dimension(alg))
        )
    return EXIT_OK


def cmd_classify(parser, args):
    m = args.jordan
    if m.n % 2 == 0 or m.n < 3:
        parser.error("--jordan must sum to an odd number >= 3")
    witness = admits_complex_structure(m)
    if witness is None:
        sys.stdout.write("no complex structure for m=%s\n" % m)
        return EXIT_NO_COMPLEX
    sys.stdout.write("complex structure exists for m=%s: q=%s j=%d\n" % (m, witness.q, witness.j))
    return EXIT_OK


def _render_text_tables(record):
    lines = []
    lines.append(
        "model: n=%d q=[%s] j=%d eps=%d m=[%s] step=%d"
        % (
            record.n,
            ",".join(str(p) for p in record.q),
            record.j,
            record.epsilon,
            ",".join(str(p) for p in record.m),
            record.step,
        )
    )
    lines.append("source: %s" % record.source)
    lines.append("betti: " + " ".join(str(b) for b in record.betti))
    lines.append("hodge (rows p=0..%d, cols q=0..%d):" % (record.n + 1, record.n + 1))
    for row in record.hodge:
        lines.append("  " + " ".join(str(h) for h in row))
    checks = dict(record.checks)
    symmetry = "n/a" if checks["symmetry"] is None else ("yes" if checks["symmetry"] else "no")
    lines.append(
        "checks: frolicher=%s symmetry=%s nijenhuis=%s"
        % (
            "yes" if checks["frolicher"] else "no",
            symmetry,
            "yes" if checks["nijenhuis"] else "no",
        )
    )
    return "\n".join(lines) + "\n"


def cmd_invariants(parser, args):
    model = _model_from_args(parser, args)
    record = ExportRecord.for_model(model, source="oracle" if args.oracle else "closed-form")
    if args.format == "json":
        _emit(record.to_json(), args.output)
    else:
        _emit(_render_text_tables(record), args.output)
    return EXIT_OK


def cmd_export(parser, args):
    model = _model_from_args(parser, args)
    if args.format == "salamon":
        _emit(compact_equations(structure_equations(model)) + "\n", args.output)
    else:
        record = ExportRecord.for_model(model)
        _emit(record.to_json(), args.output)
    return EXIT_OK


# -- verification sweep ---------------------------------------------------------


def _representation_identity_checks():
    checks = []
    for i in range(1, 16):
        for k in range(1, 16):
            checks.append(delta(tensor(irreducible(i), irreducible(k))) == min(i, k))
    for i in range(1, 13):
        for r in range(0, i + 1):
            w = wedge(irreducible(i), r)
            checks.append(delta(w) == restricted_count((r * (i - r)) // 2, i - r, r))
            checks.append(w == wedge(irreducible(i), i - r))
    for i in range(1, 11):
        for r in range(0, i + 1):
            checks.append(wedge(irreducible(i), r) == wedge_irreducible_oracle(i, r))
    for n in range(1, 9):
        v = n * irreducible(2)
        checks.append(delta(wedge(v, 1)) == n)
        checks.append(delta(wedge(v, 2)) == n * n)
        checks.append(delta(wedge(v, 3)) == n * comb(n, 2))
        checks.append(delta(wedge(v, 4)) == comb(n, 2) ** 2)
        checks.append(delta(wedge(v, 5)) == comb(n, 2) * comb(n, 3))
    for v in (irreducible(4) + irreducible(2), 3 * irreducible(2), irreducible(5) + irreducible(3)):
        for r in range(0, v.dim() + 1):
            checks.append(wedge(v, r) == wedge_weight_oracle(v, r))
    for i in range(1, 11):
        checks.append(jordan_block_module_cohomology(i) == (1, 1))
    return checks


def _partition_identity_checks():
    checks = []
    for n in range(0, 11):
        for r in range(0, 11):
            for m in range(0, n * r + 1):
                checks.append(restricted_count(m, n, r) == restricted_count(n * r - m, n, r))
                checks.append(restricted_count(m, n, r) == restricted_count(m, r, n))
            checks.append(
                sum(restricted_count(m, n, r) for m in range(0, n * r + 1)) == comb(n + r, r)
            )
    return checks


def _enumeration_checks(max_n):
    checks = []
    for n in range(1, max_n + 1):
        models = enumerate_models(n)
        ms = [c.m for c in models]
        checks.append(len(set(ms)) == len(ms))
        for q in partitions_of(n):
            expected = len({p + 1 for p in q.parts}) + 1
            if all(p == 1 for p in q.parts):
                expected -= 1
            checks.append(sum(1 for c in models if c.q == q) == expected)
        admitted = set(ms)
        for m in partitions_of(2 * n + 1):
            witness = admits_complex_structure(m)
            if m in admitted:
                checks.append(witness is not None and witness.m == m)
            else:
                checks.append(witness is None)
    return checks


def _model_sweep_entry(payload):
    """All per-model checks; a top-level function so pools can pickle it."""
    n, qparts, j = payload
    model = ComplexModel(n, Partition(qparts), j)
    alg = build_algebra(model)
    structural = structural_checks(model)
    ct = closed_table(model)
    ot = oracle_table(model)
    rep_closed = verify_symmetry(model, table=ct)
    rep_oracle = verify_symmetry(model, table=ot)
    expected_heisenberg = Partition([2] + [1] * (2 * n - 1))
    checks = dict(structural)
    checks.update(
        {
            "betti_oracle_eq": ct.betti == ot.betti,
            "hodge_oracle_eq": ct.hodge == ot.hodge,
            "frolicher_closed": frolicher_holds(ct.betti, ct.hodge),
            "frolicher_oracle": frolicher_holds(ot.betti, ot.hodge),
            "symmetry_closed": rep_closed.ok,
            "symmetry_oracle": rep_oracle.ok,
            "poincare": rep_closed.poincare and rep_oracle.poincare,
            "serre": rep_closed.serre and rep_oracle.serre,
            "commutator_rule": (commutator_dimension(alg) == 1)
            == (model.m == expected_heisenberg),
            "jordan_rank_recovery": Partition(jordan_type(alg.a_matrix())) == model.m,
        }
    )
    return checks


def _worker_count():
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        requested = int(raw)
    except ValueError:
        return 1
    return max(1, min(requested, os.cpu_count() or 1))


def run_verify(max_dim):
    """The full sweep; returns (summary lines, all passed)."""
    categories = []
    categories.append(("representation identities", _representation_identity_checks()))
    categories.append(("partition identities", _partition_identity_checks()))
    max_n = (max_dim - 2) // 2
    categories.append(("enumeration", _enumeration_checks(min(max_n, 6))))

    payloads = []
    for n in range(1, max_n + 1):
        for c in enumerate_models(n):
            payloads.append((n, c.q.parts, c.j))
    workers = _worker_count()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_model = list(pool.map(_model_sweep_entry, payloads))
    else:
        per_model = [_model_sweep_entry(p) for p in payloads]

    structural_names = (
        "j_squared",
        "nijenhuis",
        "d_squared",
        "dbar_squared",
        "d_splits",
        "jordan_recovery",
        "jordan_rank_recovery",
        "step_formula",
        "stable_series",
        "commutator_rule",
    )
    oracle_names = ("betti_oracle_eq", "hodge_oracle_eq")
    frolicher_names = ("frolicher_closed", "frolicher_oracle")
    symmetry_names = ("symmetry_closed", "symmetry_oracle", "poincare", "serre")
    for title, names in (
        ("structural checks", structural_names),
        ("oracle agreement", oracle_names),
        ("frolicher", frolicher_names),
        ("symmetry and duality", symmetry_names),
    ):
        bucket = []
        for checks in per_model:
            bucket.extend(checks[name] for name in names)
        categories.append((title, bucket))

    lines = []
    all_ok = True
    for title, bucket in categories:
        passed = sum(1 for ok in bucket if ok)
        failed = len(bucket) - passed
        all_ok = all_ok and failed == 0
        lines.append("%s: %d passed, %d failed" % (title, passed, failed))
    lines.append("models checked: %d" % len(payloads))
    lines.append("result: %s" % ("PASS" if all_ok else "FAIL"))
    return lines, all_ok


def cmd_verify(parser, args):
    if args.max_dim < 4:
        parser.error("--max-dim must be >= 4")
    lines, all_ok = run_verify(args.max_dim if args.max_dim % 2 == 0 else args.max_dim - 1)
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if all_ok else EXIT_VERIFY_FAILED


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "enumerate": cmd_enumerate,
        "classify": cmd_classify,
        "invariants": cmd_invariants,
        "verify": cmd_verify,
        "export": cmd_export,
    }
    return handlers[args.command](parser, args)


if __name__ == "__main__":
    sys.exit(main())
