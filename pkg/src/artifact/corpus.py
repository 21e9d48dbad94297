"""Corpus manifest parsing and batch checking.

The manifest is a plain-text ordered list of corpus files.  Each line
names a file (relative to the manifest), a tier, and the set of axioms
declarations in that file may depend on, transitively.  Checking loads
the files in order against one shared context and then audits every
checked declaration against its file's allowance.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError
from .kernel import used_axioms
from .loader import Loader

TIERS = ("definitions", "theorems")


@dataclass(frozen=True)
class ManifestEntry:
    path: str
    tier: str
    allowed: frozenset[str]


@dataclass(frozen=True)
class DeclAudit:
    file: str
    name: str
    is_axiom: bool
    axioms: frozenset[str]


@dataclass(frozen=True)
class CorpusReport:
    entries: tuple[ManifestEntry, ...]
    decls: tuple[DeclAudit, ...]
    violations: tuple[str, ...]
    elapsed: float

    @property
    def ok(self) -> bool:
        return not self.violations

    def file_axioms(self, path: str) -> frozenset[str]:
        """Union of axiom dependencies over one file's declarations."""
        acc: set[str] = set()
        for d in self.decls:
            if Path(d.file).name == Path(path).name and not d.is_axiom:
                acc |= d.axioms
        return frozenset(acc)

    def decl_axioms(self, name: str) -> frozenset[str]:
        for d in self.decls:
            if d.name == name:
                return d.axioms
        raise KeyError(name)


def parse_manifest(path: Path | str) -> list[ManifestEntry]:
    path = Path(path)
    entries: list[ManifestEntry] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(),
                                 start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ParseError(
                f"manifest line {lineno}: expected `path tier axioms`, "
                f"got {len(fields)} fields")
        fpath, tier, axioms = fields
        if tier not in TIERS:
            raise ParseError(
                f"manifest line {lineno}: unknown tier {tier!r}")
        if fpath in seen:
            raise ParseError(
                f"manifest line {lineno}: duplicate entry {fpath}")
        seen.add(fpath)
        allowed = (frozenset() if axioms == "-"
                   else frozenset(axioms.split(",")))
        if "" in allowed:
            raise ParseError(
                f"manifest line {lineno}: empty axiom name")
        entries.append(ManifestEntry(fpath, tier, allowed))
    if not entries:
        raise ParseError(f"manifest {path} lists no files")
    return entries


def check_corpus(manifest_path: Path | str) -> CorpusReport:
    """Check every manifest file in order and audit axiom use.

    Kernel failures raise, tagged with file and declaration.  The report
    collects ordering problems (an import that does not precede its
    importer, or a loaded file missing from the manifest) and budget
    problems (a definition depending on an axiom its file does not
    allow).
    """
    manifest_path = Path(manifest_path)
    entries = parse_manifest(manifest_path)
    base = manifest_path.parent
    listed = {(base / e.path).resolve(): e for e in entries}

    prelude: Path | None = None
    first = (base / entries[0].path).resolve()
    if first.name == "prelude.smltt":
        prelude = first

    loader = Loader(prelude_path=prelude)
    violations: list[str] = []
    start = time.monotonic()
    for entry in entries:
        resolved = (base / entry.path).resolve()
        before = set(loader.loaded)
        loader.load(resolved)
        pulled = loader.loaded - before - {resolved}
        for extra in sorted(pulled):
            if extra in listed:
                violations.append(
                    f"{entry.path}: import {extra.name} is listed after "
                    f"its importer")
            else:
                violations.append(
                    f"{entry.path}: import {extra.name} is not listed in "
                    f"the manifest")
    elapsed = time.monotonic() - start

    audits: list[DeclAudit] = []
    for decl in loader.decls:
        axioms = frozenset(used_axioms(loader.ctx, decl.name))
        audits.append(DeclAudit(decl.file, decl.name, decl.is_axiom, axioms))
        if decl.is_axiom:
            continue
        resolved = Path(decl.file).resolve()
        entry = listed.get(resolved)
        if entry is None:
            continue
        over = axioms - entry.allowed
        if over:
            violations.append(
                f"{entry.path}: {decl.name} uses {', '.join(sorted(over))} "
                f"outside the file's allowance")

    return CorpusReport(tuple(entries), tuple(audits), tuple(violations),
                        elapsed)
