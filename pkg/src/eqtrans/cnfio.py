"""Text formats: DIMACS CNF, ``.rel`` variable maps and assignment files.

``.rel`` layout::

    c optional comments
    p rel <N> <M>
    <var> <i> <j>          (M lines, 1 <= i, j <= N, i != j)

Assignment layout: one ``<var> <0|1>`` per line, ``c`` comments allowed.
Writers emit LF line endings; readers tolerate CR.
"""

import re
import warnings
from dataclasses import dataclass, field

from .constraints import ClauseSet
from .eqgraph import Assignment, RelationGraph
from .errors import (
    ClauseCountMismatch,
    DuplicatePair,
    DuplicateVariable,
    LiteralOutOfRange,
    MalformedHeader,
    MalformedLine,
    UnterminatedClause,
    VertexOutOfRange,
)

__all__ = [
    "RelMap",
    "read_dimacs",
    "write_dimacs",
    "read_rel",
    "write_rel",
    "read_rel_comments",
    "read_assignment",
    "write_assignment",
    "merge",
    "load_dimacs",
    "load_rel",
]


def _lines(text):
    for number, raw in enumerate(text.split("\n"), start=1):
        yield number, raw.rstrip("\r").strip()


_INT = re.compile(r"-?[0-9]+")


def _int(token, number):
    if not _INT.fullmatch(token):
        raise MalformedLine(f"not an integer: {token!r}", number)
    return int(token)


def read_dimacs(text):
    """Parse DIMACS CNF text into a :class:`ClauseSet`.

    Clauses may span lines; a lone ``0`` is an empty clause.  A clause
    count that disagrees with the header only triggers a
    :class:`ClauseCountMismatch` warning.
    """
    header = None
    clauses = []
    current = []
    for number, line in _lines(text):
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise MalformedHeader("second problem line", number)
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise MalformedHeader(f"expected 'p cnf <vars> <clauses>', got {line!r}", number)
            if not (_INT.fullmatch(parts[2]) and _INT.fullmatch(parts[3])):
                raise MalformedHeader(f"non-integer counts in {line!r}", number)
            nv, nc = int(parts[2]), int(parts[3])
            if nv < 0 or nc < 0:
                raise MalformedHeader(f"negative counts in {line!r}", number)
            header = (nv, nc)
            continue
        if header is None:
            raise MalformedHeader("clause data before 'p cnf' line", number)
        for token in line.split():
            lit = _int(token, number)
            if lit == 0:
                clauses.append(current)
                current = []
            elif abs(lit) > header[0]:
                raise LiteralOutOfRange(f"literal {lit} exceeds {header[0]} variables", number)
            else:
                current.append(lit)
    if header is None:
        raise MalformedHeader("missing 'p cnf' line")
    if current:
        raise UnterminatedClause(f"last clause {current} lacks terminating 0")
    if len(clauses) != header[1]:
        warnings.warn(
            f"header declares {header[1]} clauses, found {len(clauses)}",
            ClauseCountMismatch,
            stacklevel=2,
        )
    return ClauseSet(header[0], clauses)


def write_dimacs(f, comments=()):
    out = [f"c {c}" for c in comments]
    out.append(f"p cnf {f.num_vars} {len(f.clauses)}")
    out.extend(" ".join(map(str, c + [0])) for c in f.clauses)
    return "\n".join(out) + "\n"


@dataclass
class RelMap:
    """Binding of relational variables to vertex pairs over domain 1..n."""

    n: int
    entries: list = field(default_factory=list)  # (var, i, j), i < j

    def __post_init__(self):
        canon = []
        for var, i, j in self.entries:
            canon.append((var, min(i, j), max(i, j)))
        self.entries = canon
        # RelationGraph enforces range and uniqueness.
        self.to_graph()

    def to_graph(self):
        return RelationGraph(self.n, [(i, j, var) for var, i, j in self.entries])

    @classmethod
    def from_graph(cls, g):
        return cls(g.n, [(var, i, j) for i, j, var in g.edges])

    @property
    def variables(self):
        return [var for var, _, _ in self.entries]

    def max_var(self):
        return max(self.variables, default=0)


def read_rel(text):
    header = None
    entries = []
    pairs = {}
    seen_vars = {}
    for number, line in _lines(text):
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise MalformedHeader("second problem line", number)
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "rel":
                raise MalformedHeader(f"expected 'p rel <N> <M>', got {line!r}", number)
            if not (_INT.fullmatch(parts[2]) and _INT.fullmatch(parts[3])):
                raise MalformedHeader(f"non-integer counts in {line!r}", number)
            header = (int(parts[2]), int(parts[3]))
            if header[0] < 0 or header[1] < 0:
                raise MalformedHeader(f"negative counts in {line!r}", number)
            continue
        if header is None:
            raise MalformedHeader("entry before 'p rel' line", number)
        parts = line.split()
        if len(parts) != 3:
            raise MalformedLine(f"expected '<var> <i> <j>', got {line!r}", number)
        var, i, j = (_int(t, number) for t in parts)
        if var < 1:
            raise MalformedLine(f"variable id {var} must be positive", number)
        if not (1 <= i <= header[0] and 1 <= j <= header[0]) or i == j:
            raise VertexOutOfRange(f"line {number}: pair ({i},{j}) invalid for N={header[0]}")
        pair = (min(i, j), max(i, j))
        if pair in pairs:
            raise DuplicatePair(f"line {number}: pair {pair} already bound to variable {pairs[pair]}")
        if var in seen_vars:
            raise DuplicateVariable(f"line {number}: variable {var} already bound to {seen_vars[var]}")
        pairs[pair] = var
        seen_vars[var] = pair
        entries.append((var, pair[0], pair[1]))
    if header is None:
        raise MalformedHeader("missing 'p rel' line")
    if len(entries) != header[1]:
        raise MalformedHeader(f"header declares {header[1]} entries, found {len(entries)}")
    return RelMap(header[0], entries)


def write_rel(rel, comments=()):
    out = [f"c {c}" for c in comments]
    out.append(f"p rel {rel.n} {len(rel.entries)}")
    out.extend(f"{var} {i} {j}" for var, i, j in rel.entries)
    return "\n".join(out) + "\n"


def read_rel_comments(text, n=None):
    """Collect ``c rel <var> <i> <j>`` comment lines embedded in a CNF file.

    The domain size defaults to the largest vertex mentioned.
    """
    entries = []
    for number, line in _lines(text):
        parts = line.split()
        if len(parts) >= 2 and parts[0] == "c" and parts[1] == "rel":
            if len(parts) != 5:
                raise MalformedLine(f"expected 'c rel <var> <i> <j>', got {line!r}", number)
            entries.append(tuple(_int(t, number) for t in parts[2:]))
    if n is None:
        n = max((max(i, j) for _, i, j in entries), default=0)
    return RelMap(n, entries)


def read_assignment(text):
    values = {}
    for number, line in _lines(text):
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedLine(f"expected '<var> <0|1>', got {line!r}", number)
        var, bit = _int(parts[0], number), _int(parts[1], number)
        if var < 1 or bit not in (0, 1):
            raise MalformedLine(f"bad entry {line!r}", number)
        if var in values:
            raise DuplicateVariable(f"line {number}: variable {var} assigned twice")
        values[var] = bit
    return Assignment(values)


def write_assignment(chi, comments=()):
    out = [f"c {c}" for c in comments]
    out.extend(f"{var} {chi[var]}" for var in sorted(chi))
    return "\n".join(out) + "\n"


def merge(sat, trans):
    """Clauses of ``sat`` followed by those of ``trans``, over the larger variable range."""
    return ClauseSet(max(sat.num_vars, trans.num_vars), [list(c) for c in sat.clauses] + [list(c) for c in trans.clauses])


def load_dimacs(path):
    with open(path, encoding="utf-8", newline="") as fh:
        return read_dimacs(fh.read())


def load_rel(path):
    with open(path, encoding="utf-8", newline="") as fh:
        return read_rel(fh.read())
