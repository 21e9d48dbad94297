"""File loading: import resolution, prelude bootstrapping, declaration
checking.

Files use a flat global namespace. Imports are resolved relative to the
importing file, loaded once each, and must precede use of their names.
The prelude (the only file allowed to declare axioms) is loaded before
any user file; its location comes from the SMLTT_PRELUDE environment
variable when set, else from the stdlib directory shipped with the
repository.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .errors import KernelError, ParseError
from .kernel import Context, base_context, check_decl
from .surface import Decl, Elaborator, parse_program

PRELUDE_ENV_VAR = "SMLTT_PRELUDE"


def default_prelude_path() -> Path:
    override = os.environ.get(PRELUDE_ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).resolve().parents[2] / "stdlib" / "prelude.smltt"


@dataclass(frozen=True)
class CheckedDecl:
    file: str
    name: str
    is_axiom: bool


class Loader:
    def __init__(self, ctx: Optional[Context] = None,
                 prelude_path: Optional[Path] = None,
                 allow_axioms: bool = False):
        self.ctx = ctx if ctx is not None else base_context()
        self.prelude_path = (Path(prelude_path) if prelude_path is not None
                             else default_prelude_path())
        self.allow_axioms = allow_axioms
        self.loaded: set[Path] = set()
        self.in_progress: list[Path] = []
        self.decls: list[CheckedDecl] = []

    def load(self, path: Path | str) -> None:
        """Load a file after making sure the prelude is in scope."""
        self.ensure_prelude()
        self._load_file(Path(path))

    def ensure_prelude(self) -> None:
        if self.prelude_path.resolve() not in self.loaded:
            if not self.prelude_path.exists():
                raise FileNotFoundError(
                    f"prelude not found at {self.prelude_path}; set "
                    f"{PRELUDE_ENV_VAR} to override")
            self._load_file(self.prelude_path)

    # -- internals ----------------------------------------------------------

    def _load_file(self, path: Path) -> None:
        resolved = path.resolve()
        if resolved in self.loaded:
            return
        if resolved in self.in_progress:
            cycle = " -> ".join(p.name for p in self.in_progress)
            raise ParseError(f"import cycle: {cycle} -> {resolved.name}")
        text = resolved.read_text(encoding="utf-8")
        self.in_progress.append(resolved)
        try:
            try:
                program = parse_program(text)
            except KernelError as e:
                e.file = str(path)  # type: ignore[attr-defined]
                raise
            for decl in program:
                self._process_decl(resolved, path, decl)
        finally:
            self.in_progress.pop()
        self.loaded.add(resolved)

    def _owner(self, resolved: Path) -> str:
        if resolved == self.prelude_path.resolve():
            return "prelude"
        return str(resolved)

    def _process_decl(self, resolved: Path, display: Path, decl: Decl) -> None:
        if decl.kind == "import":
            self._load_file(resolved.parent / decl.name)
            return
        try:
            elab = Elaborator(set(self.ctx.globals))
            ty = elab.decl_type(decl.ty)
            body = elab.term(decl.body) if decl.body is not None else None
            report = check_decl(self.ctx, decl.name, ty, body,
                                owner=self._owner(resolved),
                                allow_axioms=self.allow_axioms)
        except KernelError as e:
            if e.decl is None:
                e.decl = decl.name
            if e.span is None:
                e.span = (decl.line, decl.col)
            e.file = str(display)  # type: ignore[attr-defined]
            raise
        self.decls.append(CheckedDecl(str(display), report.name,
                                      report.is_axiom))


def load_program(paths: list[Path | str],
                 prelude_path: Optional[Path] = None,
                 allow_axioms: bool = False) -> Loader:
    """Check a list of files (plus their imports) against a fresh context."""
    loader = Loader(prelude_path=prelude_path, allow_axioms=allow_axioms)
    for p in paths:
        loader.load(p)
    return loader
