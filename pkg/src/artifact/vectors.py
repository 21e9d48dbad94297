"""Test-vector files for the model oracle.

One check per line; blank lines and lines starting with # are skipped.
Three kinds of check:

    fixlaw <term> <term> <fuel?>
    philaw <term> <term> <term> <fuel?>
    track  <asm> <asm> <table> <term> <fuel?>

fixlaw f a asks whether fix f a and f (fix f) a are Kleene-equal within
fuel.  philaw fr gr n asks the same for the recursion equation of the
well-founded recursor at fr, gr, n.  track A B tbl e asks whether e
tracks the table map from A to B.

Terms are s-expressions: the atoms S K Pr Pr1 Pr2 are combinators,
every other atom is an opaque token, and (f a b) applies f to a then b.
An assembly is (asm (<elem> <term>+) ...) listing each element with its
realisers; a table is (table (<from> <to>) ...).  A trailing fuel field
may be omitted, in which case the runner's default applies.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .assemblies import FiniteAssembly, TrackedMorphism, check_tracking
from .errors import ParseError
from .pca import App, ClTerm, Var, _ATOMS, check_fix_law, check_phi_law

Sexp = Union[str, list]


def _read_sexps(text: str, lineno: int) -> list[Sexp]:
    toks = text.replace("(", " ( ").replace(")", " ) ").split()
    nodes: list[Sexp] = []
    stack: list[list[Sexp]] = []
    for tok in toks:
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if not stack:
                raise ParseError("unbalanced )", span=(lineno, 0))
            done = stack.pop()
            (stack[-1] if stack else nodes).append(done)
        else:
            (stack[-1] if stack else nodes).append(tok)
    if stack:
        raise ParseError("unbalanced (", span=(lineno, 0))
    return nodes


def _term(node: Sexp, lineno: int) -> ClTerm:
    if isinstance(node, str):
        return _ATOMS.get(node, Var(node))
    if not node:
        raise ParseError("empty application", span=(lineno, 0))
    t = _term(node[0], lineno)
    for part in node[1:]:
        t = App(t, _term(part, lineno))
    return t


def _assembly(node: Sexp, lineno: int) -> FiniteAssembly:
    if not isinstance(node, list) or not node or node[0] != "asm":
        raise ParseError("expected (asm ...)", span=(lineno, 0))
    carrier: list[str] = []
    pairs: set[tuple[ClTerm, str]] = set()
    for entry in node[1:]:
        if not isinstance(entry, list) or len(entry) < 2 or not isinstance(
            entry[0], str
        ):
            raise ParseError(
                "assembly entries are (<elem> <term>+)", span=(lineno, 0)
            )
        carrier.append(entry[0])
        for r in entry[1:]:
            pairs.add((_term(r, lineno), entry[0]))
    try:
        return FiniteAssembly(tuple(carrier), frozenset(pairs))
    except ValueError as e:
        raise ParseError(str(e), span=(lineno, 0)) from None


def _table(node: Sexp, lineno: int) -> dict[str, str]:
    if not isinstance(node, list) or not node or node[0] != "table":
        raise ParseError("expected (table ...)", span=(lineno, 0))
    tbl: dict[str, str] = {}
    for entry in node[1:]:
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(s, str) for s in entry)
        ):
            raise ParseError("table entries are (<from> <to>)", span=(lineno, 0))
        tbl[entry[0]] = entry[1]
    return tbl


def _fuel(nodes: list[Sexp], want: int, lineno: int, default: int) -> int:
    if len(nodes) == want + 1:
        tail = nodes[want]
        if not isinstance(tail, str) or not tail.isdigit():
            raise ParseError("fuel must be a natural number", span=(lineno, 0))
        return int(tail)
    if len(nodes) == want:
        return default
    raise ParseError("wrong number of fields", span=(lineno, 0))


@dataclass(frozen=True)
class Vector:
    kind: str
    lineno: int
    payload: tuple

    def run(self) -> bool:
        if self.kind == "fixlaw":
            f, a, fuel = self.payload
            return check_fix_law(f, a, fuel)
        if self.kind == "philaw":
            fr, gr, n, fuel = self.payload
            return check_phi_law(fr, gr, n, fuel)
        src, dst, tbl, tracker, fuel = self.payload
        return check_tracking(src, dst, TrackedMorphism(tbl, tracker, fuel))


def parse_vectors(text: str, default_fuel: int) -> list[Vector]:
    vectors: list[Vector] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        nodes = _read_sexps(line, lineno)
        if not nodes or not isinstance(nodes[0], str):
            raise ParseError("missing check keyword", span=(lineno, 0))
        kind, rest = nodes[0], nodes[1:]
        if kind == "fixlaw":
            fuel = _fuel(rest, 2, lineno, default_fuel)
            payload = (_term(rest[0], lineno), _term(rest[1], lineno), fuel)
        elif kind == "philaw":
            fuel = _fuel(rest, 3, lineno, default_fuel)
            payload = (
                _term(rest[0], lineno),
                _term(rest[1], lineno),
                _term(rest[2], lineno),
                fuel,
            )
        elif kind == "track":
            fuel = _fuel(rest, 4, lineno, default_fuel)
            src = _assembly(rest[0], lineno)
            dst = _assembly(rest[1], lineno)
            tbl = _table(rest[2], lineno)
            missing = set(src.carrier) - set(tbl)
            if missing or set(tbl.values()) - set(dst.carrier):
                raise ParseError(
                    "table does not map the source carrier into the target",
                    span=(lineno, 0),
                )
            payload = (src, dst, tbl, _term(rest[3], lineno), fuel)
        else:
            raise ParseError(f"unknown check kind {kind}", span=(lineno, 0))
        vectors.append(Vector(kind, lineno, payload))
    return vectors


def run_vector_file(path: Path, default_fuel: int) -> tuple[bool, list[str]]:
    """Run every check in the file; report one pass or fail line each."""
    vectors = parse_vectors(path.read_text(), default_fuel)
    report: list[str] = []
    all_ok = True
    for v in vectors:
        ok = v.run()
        all_ok = all_ok and ok
        report.append(f"{path.name}:{v.lineno}: {v.kind} {'pass' if ok else 'FAIL'}")
    return all_ok, report
