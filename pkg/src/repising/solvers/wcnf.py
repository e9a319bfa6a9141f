"""DIMACS weighted-CNF import/export for MAX-2-SAT instances.

The affine metadata relating SAT objective to Ising energy (scale, offset)
is preserved in comment lines, which external MAX-SAT solvers ignore.
"""

from __future__ import annotations

from fractions import Fraction

from .maxsat import MaxSatInstance


def format_wcnf(inst: MaxSatInstance) -> str:
    top = inst.total_weight + 1
    lines = [
        "c weighted MAX-2-SAT reduction of an Ising ground-state instance",
        f"c scale {inst.scale}",
        f"c offset {inst.offset.numerator}/{inst.offset.denominator}",
        f"p wcnf {inst.var_count} {len(inst.clauses)} {top}",
    ]
    for w, lits in inst.clauses:
        lines.append(" ".join([str(w), *map(str, lits), "0"]))
    return "\n".join(lines) + "\n"


def write_wcnf(inst: MaxSatInstance, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_wcnf(inst))


def parse_wcnf(text: str) -> MaxSatInstance:
    var_count = None
    declared = None
    scale = 1
    offset = Fraction(0)
    clauses = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            parts = line.split()
            if len(parts) == 3 and parts[1] == "scale":
                scale = int(parts[2])
            elif len(parts) == 3 and parts[1] == "offset":
                offset = Fraction(parts[2])
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) < 4 or parts[1] != "wcnf":
                raise ValueError(f"line {lineno}: malformed problem line {line!r}")
            var_count = int(parts[2])
            declared = int(parts[3])
            continue
        if var_count is None:
            raise ValueError(f"line {lineno}: clause before problem line")
        parts = [int(x) for x in line.split()]
        if parts[-1] != 0:
            raise ValueError(f"line {lineno}: clause not terminated by 0")
        w, lits = parts[0], tuple(parts[1:-1])
        clauses.append((w, lits))
    if var_count is None:
        raise ValueError("missing problem line")
    if declared is not None and declared != len(clauses):
        raise ValueError(f"declared {declared} clauses, found {len(clauses)}")
    return MaxSatInstance(var_count, clauses, offset, scale)


def read_wcnf(path) -> MaxSatInstance:
    with open(path) as fh:
        return parse_wcnf(fh.read())
