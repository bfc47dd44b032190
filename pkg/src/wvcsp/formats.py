"""Text formats for relations, operations, weightings, and instances.

One object per stanza; a file may hold several stanzas.  Blank lines and
`#` comments are ignored everywhere.  Serialization is canonical (sorted,
exact rationals) so emitted files are byte-identical across runs and
re-parse to equal objects.

Formats:
  relation <name> domain <d> arity <r>    then `<e1> .. <er> : <p[/q]>`
                                          per defined tuple, lex order
  op <name> domain <d> arity <k>          then d^k lines `<in..> : <out>`
  weighting <name> domain <d> arity <k>   then `<opname> : <weight>`;
                                          e<i>_<k> names the i-th projection
  instance <name> domain <d> vars <v..>   then `constraint <rel> <v..>`
                                          with an optional `scale <p/q>`
"""

from __future__ import annotations

import re
from fractions import Fraction

from .core import Domain, WeightedRelation, wr_scale_shift
from .errors import InputError
from .operations import Operation, projection
from .vcsp import VcspInstance
from .weightings import Weighting

_HEADERS = ("relation", "op", "weighting", "instance")
_PROJ_RE = re.compile(r"^e(\d+)_(\d+)$")


def _logical_lines(text):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def _stanzas(text):
    current = None
    for line in _logical_lines(text):
        head = line.split(None, 1)[0]
        if head in _HEADERS:
            if current:
                yield current
            current = [line]
        else:
            if current is None:
                raise InputError(f"content before any header: {line!r}")
            current.append(line)
    if current:
        yield current


def _split_rule(line):
    if ":" not in line:
        raise InputError(f"expected `lhs : rhs` line, got {line!r}")
    lhs, rhs = line.rsplit(":", 1)
    return lhs.split(), rhs.strip()


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad rational {text!r}")


# ---------------------------------------------------------------- relations

def parse_relation(lines):
    header, body = lines[0], lines[1:]
    parts = header.split()
    if len(parts) != 6 or parts[0] != "relation" or parts[2] != "domain" \
            or parts[4] != "arity":
        raise InputError(f"malformed relation header: {header!r}")
    name = parts[1]
    domain = Domain(int(parts[3]))
    arity = int(parts[5])
    table = {}
    prev = None
    for line in body:
        lhs, rhs = _split_rule(line)
        if len(lhs) != arity:
            raise InputError(f"tuple of length {len(lhs)}, expected {arity}")
        t = tuple(int(v) for v in lhs)
        if prev is not None and t <= prev:
            raise InputError("relation tuples must be strictly increasing")
        prev = t
        table[t] = _fraction(rhs)
    return name, WeightedRelation(domain, arity, table)


def serialize_relation(name, rel):
    out = [f"relation {name} domain {rel.domain.size} arity {rel.arity}"]
    for t in rel.defined_tuples():
        out.append(f"{' '.join(str(v) for v in t)} : {rel.table[t]}")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------- operations

def parse_operation(lines):
    header, body = lines[0], lines[1:]
    parts = header.split()
    if len(parts) != 6 or parts[0] != "op" or parts[2] != "domain" \
            or parts[4] != "arity":
        raise InputError(f"malformed op header: {header!r}")
    name = parts[1]
    domain = Domain(int(parts[3]))
    arity = int(parts[5])
    expected = list(domain.tuples(arity))
    if len(body) != len(expected):
        raise InputError(
            f"op {name}: {len(body)} table lines, expected {len(expected)}"
        )
    table = []
    for line, want in zip(body, expected):
        lhs, rhs = _split_rule(line)
        if tuple(int(v) for v in lhs) != want:
            raise InputError(f"op {name}: table lines out of order at {line!r}")
        table.append(int(rhs))
    return name, Operation(domain, arity, tuple(table))


def serialize_operation(name, op):
    out = [f"op {name} domain {op.domain.size} arity {op.arity}"]
    for t, v in zip(op.domain.tuples(op.arity), op.table):
        out.append(f"{' '.join(str(x) for x in t)} : {v}")
    return "\n".join(out) + "\n"


def projection_name(index, arity):
    return f"e{index}_{arity}"


def resolve_operation(name, domain, operations):
    """A named operation: a builtin projection e<i>_<k> or a loaded op."""
    m = _PROJ_RE.match(name)
    if m:
        index, arity = int(m.group(1)), int(m.group(2))
        return projection(domain, arity, index)
    if name in operations:
        return operations[name]
    raise InputError(f"unknown operation name {name!r}")


# --------------------------------------------------------------- weightings

def parse_weighting(lines, operations):
    header, body = lines[0], lines[1:]
    parts = header.split()
    if len(parts) != 6 or parts[0] != "weighting" or parts[2] != "domain" \
            or parts[4] != "arity":
        raise InputError(f"malformed weighting header: {header!r}")
    name = parts[1]
    domain = Domain(int(parts[3]))
    arity = int(parts[5])
    weights = {}
    for line in body:
        lhs, rhs = _split_rule(line)
        if len(lhs) != 1:
            raise InputError(f"expected `<opname> : <weight>`, got {line!r}")
        f = resolve_operation(lhs[0], domain, operations)
        if f in weights:
            raise InputError(f"operation {lhs[0]!r} weighted twice")
        weights[f] = _fraction(rhs)
    return name, Weighting(domain, arity, weights)


def serialize_weighting(name, omega, op_names=None):
    """Canonical text form; op_names maps non-projection support operations
    to their serialized names (generated as f<rank> when omitted)."""
    out = [f"weighting {name} domain {omega.domain.size} arity {omega.arity}"]
    names = {}
    for f in omega.support():
        i = f.projection_index()
        if i is not None:
            names[f] = projection_name(i, f.arity)
        elif op_names and f in op_names:
            names[f] = op_names[f]
        else:
            names[f] = "f" + "".join(str(v) for v in f.table)
    for f in sorted(omega.support(), key=lambda f: (f.projection_index() is None,
                                                    names[f])):
        out.append(f"{names[f]} : {omega.weights[f]}")
    return "\n".join(out) + "\n", names


def weighting_operation_stanzas(omega, names):
    """Op stanzas for the non-projection support, for accompanying output."""
    chunks = []
    for f in sorted(omega.support()):
        if f.projection_index() is None:
            chunks.append(serialize_operation(names[f], f))
    return "".join(chunks)


# ---------------------------------------------------------------- instances

def parse_instance(lines, relations):
    header, body = lines[0], lines[1:]
    parts = header.split()
    if len(parts) < 5 or parts[0] != "instance" or parts[2] != "domain" \
            or parts[4] != "vars":
        raise InputError(f"malformed instance header: {header!r}")
    name = parts[1]
    domain = Domain(int(parts[3]))
    variables = parts[5:]
    constraints = []
    for line in body:
        parts = line.split()
        if not parts or parts[0] != "constraint":
            raise InputError(f"expected a constraint line, got {line!r}")
        parts = parts[1:]
        scale = None
        if len(parts) >= 2 and parts[-2] == "scale":
            scale = _fraction(parts[-1])
            parts = parts[:-2]
        if not parts:
            raise InputError(f"constraint without a relation name: {line!r}")
        relname, scope = parts[0], tuple(parts[1:])
        if relname not in relations:
            raise InputError(f"unknown relation name {relname!r}")
        rel = relations[relname]
        if scale is not None:
            rel = wr_scale_shift(rel, scale, 0)
        constraints.append((scope, rel))
    return name, VcspInstance(variables, domain, constraints)


def serialize_instance(name, instance, rel_names, scales=None):
    """Canonical text form; rel_names maps each constraint relation to a
    name, scales optionally maps a relation to (base name, factor)."""
    out = [
        f"instance {name} domain {instance.domain.size} vars "
        + " ".join(instance.variables)
    ]
    lines = []
    for scope, rel in instance.constraints:
        if scales and rel in scales:
            base, factor = scales[rel]
            lines.append(f"constraint {base} {' '.join(scope)} scale {factor}")
        else:
            lines.append(f"constraint {rel_names[rel]} {' '.join(scope)}")
    out.extend(sorted(lines))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- workspace

class Workspace:
    """All named objects loaded in one invocation, over one shared domain."""

    def __init__(self):
        self.relations = {}
        self.operations = {}
        self.weightings = {}
        self.instances = {}
        self.domain = None

    def _claim_domain(self, domain):
        if self.domain is None:
            self.domain = domain
        elif self.domain != domain:
            raise InputError(
                f"mixed domains in one invocation: {self.domain.size} and "
                f"{domain.size}"
            )

    def _register(self, store, kind, name, value):
        if name in store:
            raise InputError(f"duplicate {kind} name {name!r}")
        store[name] = value

    def load_text(self, text):
        for stanza in _stanzas(text):
            kind = stanza[0].split(None, 1)[0]
            if kind == "relation":
                name, rel = parse_relation(stanza)
                self._claim_domain(rel.domain)
                self._register(self.relations, kind, name, rel)
            elif kind == "op":
                name, op = parse_operation(stanza)
                self._claim_domain(op.domain)
                self._register(self.operations, kind, name, op)
            elif kind == "weighting":
                name, omega = parse_weighting(stanza, self.operations)
                self._claim_domain(omega.domain)
                self._register(self.weightings, kind, name, omega)
            else:
                name, inst = parse_instance(stanza, self.relations)
                self._claim_domain(inst.domain)
                self._register(self.instances, kind, name, inst)

    def load_file(self, path):
        with open(path, "r", encoding="utf-8") as fh:
            self.load_text(fh.read())
