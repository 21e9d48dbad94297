"""Surface syntax: lexer, parser, elaborator, and printer.

The surface language is a thin named-variable layer over the core terms.
Declarations are `def name : type := term`, `axiom name : type`, and
`import "path"`; comments run from `--` to end of line.

Type and term formers:

    (x : A) -> B      dependent function type        A -> B    non-dependent
    (x : A) ** B      dependent pair type            A ** B
    (x : a) ~> b      code for a function type       a ~> b
    (x : a) ~* b      code for a pair type           a ~* b
    fun x y => e      lambda (left-nested)
    fun^ i j => e     size-quantifier lambda
    forall i. a       size quantifier code           exists i. a
    forall i < e. a   bounded variant                exists i < e. a
    f a               application                    f @ i   size application
    a <= b            code for a size inequality     a < b   strict (= ^a <= b)
    0s  ^e  3         size zero, successor, literals
    Id A a b, refl a, J m b l r p
    idc a x y, botc, topc, boolc, U, Size, Bool, Top, Bot, tt, ff, star
    fst p, snd p, (a , b), pack i a, exind m br s
    botind m s, topind m c s, boolind m t f s
    fix f, fixb f, funext T f g, El a

Binder-taking eliminator arguments are written as `fun` terms and the
binders are consumed structurally: `J (fun a b q => T) (fun a => e) l r p`.

Elaboration resolves names to de Bruijn indices.  The only implicit
coercion is at the declaration type slot: a declared type that is not
headed by a large type former is wrapped in El.  Everywhere else El is
written explicitly, which keeps printing and re-parsing exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from . import terms as T
from .errors import ElaborationAmbiguity, ParseError, UnboundIdentifier

# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

_KEYWORDS = frozenset({
    "def", "axiom", "import", "fun", "forall", "exists",
    "U", "Size", "Bool", "Top", "Bot", "tt", "ff", "star",
    "Id", "refl", "J", "botind", "topind", "boolind", "exind",
    "pack", "fst", "snd", "fix", "fixb", "funext", "El",
    "idc", "botc", "topc", "boolc",
})

# longest first so `<=` wins over `<` and `~>` over nothing
_PUNCTS = ("~>", "~*", "->", "**", "=>", ":=", "<=",
           "(", ")", ":", ",", "@", "^", ".", "<")

_IDENT_START = frozenset("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CONT = _IDENT_START | frozenset("0123456789'")


@dataclass(frozen=True)
class Token:
    kind: str           # "ident" | "num" | "str" | "punct" | "kw" | "eof"
    value: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == '"':
            j = i + 1
            while j < n and text[j] != '"':
                if text[j] == "\n":
                    raise ParseError("unterminated string literal",
                                     span=(line, col))
                j += 1
            if j >= n:
                raise ParseError("unterminated string literal", span=(line, col))
            toks.append(Token("str", text[i + 1:j], line, col))
            col += j + 1 - i
            i = j + 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "s":
                j += 1
            toks.append(Token("num", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c in _IDENT_START:
            j = i
            while j < n and text[j] in _IDENT_CONT:
                j += 1
            word = text[i:j]
            toks.append(Token("kw" if word in _KEYWORDS else "ident",
                              word, line, col))
            col += j - i
            i = j
            continue
        for p in _PUNCTS:
            if text.startswith(p, i):
                toks.append(Token("punct", p, line, col))
                col += len(p)
                i += len(p)
                break
        else:
            raise ParseError(f"unexpected character {c!r}", span=(line, col))
    toks.append(Token("eof", "", line, col))
    return toks


# ---------------------------------------------------------------------------
# Surface AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SVar:
    name: str
    line: int = 0
    col: int = 0


@dataclass(frozen=True)
class SKw:
    name: str
    line: int = 0
    col: int = 0


@dataclass(frozen=True)
class SApp:
    fn: "Surface"
    arg: "Surface"


@dataclass(frozen=True)
class SForApp:
    fn: "Surface"
    arg: "Surface"


@dataclass(frozen=True)
class SLam:
    names: tuple[str, ...]
    body: "Surface"


@dataclass(frozen=True)
class SForLam:
    names: tuple[str, ...]
    body: "Surface"


@dataclass(frozen=True)
class SBinderType:
    former: str                 # "->" | "**" | "~>" | "~*"
    name: Optional[str]
    dom: "Surface"
    cod: "Surface"


@dataclass(frozen=True)
class SQuant:
    former: str                 # "forall" | "exists"
    name: str
    bound: Optional["Surface"]
    body: "Surface"


@dataclass(frozen=True)
class SCmp:
    op: str                     # "<=" | "<"
    lhs: "Surface"
    rhs: "Surface"


@dataclass(frozen=True)
class SPair:
    fst: "Surface"
    snd: "Surface"


@dataclass(frozen=True)
class SNum:
    value: int


@dataclass(frozen=True)
class SSuc:
    arg: "Surface"


Surface = Union[SVar, SKw, SApp, SForApp, SLam, SForLam, SBinderType,
                SQuant, SCmp, SPair, SNum, SSuc]


@dataclass(frozen=True)
class Decl:
    kind: str                   # "def" | "axiom" | "import"
    name: str                   # import: the path string
    ty: Optional[Surface]
    body: Optional[Surface]
    line: int
    col: int


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_ARROWS = ("->", "~>", "**", "~*")


class _Parser:
    def __init__(self, toks: list[Token]):
        self.toks = toks
        self.pos = 0

    def peek(self, ahead: int = 0) -> Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.toks[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def err(self, msg: str, tok: Optional[Token] = None) -> ParseError:
        t = tok or self.peek()
        return ParseError(msg, span=(t.line, t.col))

    def expect(self, kind: str, value: Optional[str] = None) -> Token:
        t = self.peek()
        if t.kind != kind or (value is not None and t.value != value):
            want = value or kind
            raise self.err(f"expected {want!r}, found {t.value or t.kind!r}")
        return self.next()

    def at_punct(self, value: str) -> bool:
        t = self.peek()
        return t.kind == "punct" and t.value == value

    def at_kw(self, value: str) -> bool:
        t = self.peek()
        return t.kind == "kw" and t.value == value

    # -- declarations -------------------------------------------------------

    def parse_program(self) -> list[Decl]:
        decls = []
        while self.peek().kind != "eof":
            decls.append(self.parse_decl())
        return decls

    def parse_decl(self) -> Decl:
        t = self.peek()
        if self.at_kw("import"):
            self.next()
            path = self.expect("str")
            return Decl("import", path.value, None, None, t.line, t.col)
        if self.at_kw("def"):
            self.next()
            name = self.expect("ident").value
            self.expect("punct", ":")
            ty = self.parse_term()
            self.expect("punct", ":=")
            body = self.parse_term()
            return Decl("def", name, ty, body, t.line, t.col)
        if self.at_kw("axiom"):
            self.next()
            name = self.expect("ident").value
            self.expect("punct", ":")
            ty = self.parse_term()
            return Decl("axiom", name, ty, None, t.line, t.col)
        raise self.err("expected a declaration (def, axiom, or import)")

    # -- terms --------------------------------------------------------------

    def parse_term(self) -> Surface:
        if self.at_kw("fun"):
            return self.parse_fun()
        if self.at_kw("forall") or self.at_kw("exists"):
            return self.parse_quant()
        return self.parse_arrow()

    def parse_fun(self) -> Surface:
        self.next()
        sized = self.at_punct("^")
        if sized:
            self.next()
        names = []
        while self.peek().kind == "ident":
            names.append(self.next().value)
        if not names:
            raise self.err("expected at least one binder after 'fun'")
        self.expect("punct", "=>")
        body = self.parse_term()
        return (SForLam if sized else SLam)(tuple(names), body)

    def parse_quant(self) -> Surface:
        former = self.next().value
        name = self.expect("ident").value
        bound = None
        if self.at_punct("<"):
            self.next()
            bound = self.parse_app()
        self.expect("punct", ".")
        body = self.parse_term()
        return SQuant(former, name, bound, body)

    def _at_binder_group(self) -> bool:
        return (self.at_punct("(") and self.peek(1).kind == "ident"
                and self.peek(2).kind == "punct" and self.peek(2).value == ":")

    def parse_arrow(self) -> Surface:
        if self._at_binder_group():
            open_tok = self.next()
            name = self.next().value
            self.next()  # ':'
            dom = self.parse_term()
            self.expect("punct", ")")
            t = self.peek()
            if t.kind == "punct" and t.value in _ARROWS:
                self.next()
                cod = self.parse_term()
                return SBinderType(t.value, name, dom, cod)
            raise self.err("expected '->', '~>', '**', or '~*' after "
                           "binder group", open_tok)
        lhs = self.parse_cmp()
        t = self.peek()
        if t.kind == "punct" and t.value in _ARROWS:
            self.next()
            cod = self.parse_term()
            return SBinderType(t.value, None, lhs, cod)
        return lhs

    def parse_cmp(self) -> Surface:
        lhs = self.parse_app()
        if self.at_punct("<=") or self.at_punct("<"):
            op = self.next().value
            rhs = self.parse_app()
            return SCmp(op, lhs, rhs)
        return lhs

    def _at_atom_start(self) -> bool:
        t = self.peek()
        if t.kind in ("ident", "num"):
            return True
        if t.kind == "punct" and t.value in ("(", "^"):
            return True
        if t.kind == "kw" and t.value not in ("def", "axiom", "import"):
            # 'fun'/'forall'/'exists' as arguments must be parenthesized
            return t.value not in ("fun", "forall", "exists")
        return False

    def parse_app(self) -> Surface:
        head = self.parse_prefix()
        while True:
            if self.at_punct("@"):
                self.next()
                head = SForApp(head, self.parse_prefix())
            elif self._at_atom_start():
                head = SApp(head, self.parse_prefix())
            else:
                return head

    def parse_prefix(self) -> Surface:
        if self.at_punct("^"):
            self.next()
            return SSuc(self.parse_prefix())
        return self.parse_atom()

    def parse_atom(self) -> Surface:
        t = self.peek()
        if t.kind == "ident":
            self.next()
            return SVar(t.value, t.line, t.col)
        if t.kind == "num":
            self.next()
            return SNum(int(t.value.rstrip("s")))
        if t.kind == "kw":
            if t.value in ("fun", "forall", "exists"):
                return self.parse_term()
            self.next()
            return SKw(t.value, t.line, t.col)
        if self.at_punct("("):
            self.next()
            inner = self.parse_term()
            if self.at_punct(","):
                parts = [inner]
                while self.at_punct(","):
                    self.next()
                    parts.append(self.parse_term())
                self.expect("punct", ")")
                out = parts[-1]
                for p in reversed(parts[:-1]):
                    out = SPair(p, out)
                return out
            self.expect("punct", ")")
            return inner
        raise self.err(f"expected a term, found {t.value or t.kind!r}")


def parse_program(text: str) -> list[Decl]:
    return _Parser(tokenize(text)).parse_program()


def parse_term(text: str) -> Surface:
    p = _Parser(tokenize(text))
    s = p.parse_term()
    if p.peek().kind != "eof":
        raise p.err("trailing input after term")
    return s


# ---------------------------------------------------------------------------
# Elaboration
# ---------------------------------------------------------------------------

_NULLARY = {
    "U": T.U, "Size": T.Size, "Bool": T.Bool, "Top": T.Top, "Bot": T.Bot,
    "tt": T.Tt, "ff": T.Ff, "star": T.Star,
    "botc": T.BotCode, "topc": T.TopCode, "boolc": T.BoolCode,
}

# keyword -> (binder counts per argument); total arity = len(tuple)
_KW_SHAPE = {
    "refl": (0,), "El": (0,), "fst": (0,), "snd": (0,),
    "fix": (0,), "fixb": (0,),
    "pack": (0, 0), "idc": (0, 0, 0), "Id": (0, 0, 0),
    "funext": (0, 0, 0),
    "J": (3, 1, 0, 0, 0),
    "exind": (1, 2, 0),
    "boolind": (1, 0, 0, 0),
    "topind": (1, 0, 0),
    "botind": (1, 0),
}


def _lower_code(t: T.Term) -> T.Term:
    """Rewrite a quantifier body written with large type formers into the
    corresponding universe code.  Quantifier bodies must be small, so
    `forall i. Bool -> Bool` means the code Pi^U(bool, bool); terms that
    are already codes pass through unchanged."""
    match t:
        case T.Bool():
            return T.BoolCode()
        case T.Top():
            return T.TopCode()
        case T.Bot():
            return T.BotCode()
        case T.Pi(dom, cod):
            return T.PiCode(_lower_code(dom), _lower_code(cod))
        case T.Sigma(dom, cod):
            return T.SigCode(_lower_code(dom), _lower_code(cod))
        case T.Id(ty, lhs, rhs):
            return T.IdCode(_lower_code(ty), lhs, rhs)
        case T.El(code):
            return code
        case T.U() | T.Size():
            raise ElaborationAmbiguity(
                "a quantifier body must be small, and U and Size have "
                "no universe code")
    return t


def _build_kw(kw: str, args: list[T.Term]) -> T.Term:
    if kw == "refl":
        return T.Refl(args[0])
    if kw == "El":
        return T.El(args[0])
    if kw == "fst":
        return T.Proj1(args[0])
    if kw == "snd":
        return T.Proj2(args[0])
    if kw == "fix":
        return T.Fix(args[0])
    if kw == "fixb":
        return T.FixBeta(args[0])
    if kw == "pack":
        return T.ExPair(args[0], args[1])
    if kw == "idc":
        return T.IdCode(args[0], args[1], args[2])
    if kw == "Id":
        return T.Id(args[0], args[1], args[2])
    if kw == "funext":
        return T.Funext(args[0], args[1], args[2])
    if kw == "J":
        return T.J(args[0], args[1], args[2], args[3], args[4])
    if kw == "exind":
        return T.ExInd(args[0], args[1], args[2])
    if kw == "boolind":
        return T.BoolInd(args[0], args[1], args[2], args[3])
    if kw == "topind":
        return T.TopInd(args[0], args[1], args[2])
    if kw == "botind":
        return T.BotInd(args[0], args[1])
    raise AssertionError(kw)


class Elaborator:
    """Names to de Bruijn indices against a fixed set of global names."""

    def __init__(self, globals_: set[str]):
        self.globals = globals_

    def term(self, s: Surface, env: tuple[str, ...] = ()) -> T.Term:
        return self._elab(s, list(env))

    def decl_type(self, s: Surface) -> T.Term:
        """Elaborate a declaration's type slot, inserting El when the
        result is not headed by a large type former."""
        t = self._elab(s, [])
        if isinstance(t, (T.U, T.Size, T.Bool, T.Top, T.Bot,
                          T.Pi, T.Sigma, T.Id, T.El)):
            return t
        return T.El(t)

    # -- internals ----------------------------------------------------------

    def _elab(self, s: Surface, env: list[str]) -> T.Term:
        if isinstance(s, SVar):
            for rev, name in enumerate(reversed(env)):
                if name == s.name:
                    return T.Var(rev)
            if s.name in self.globals:
                return T.Const(s.name)
            raise UnboundIdentifier(f"unbound identifier {s.name!r}",
                                    span=(s.line, s.col))
        if isinstance(s, SKw):
            if s.name in _NULLARY:
                return _NULLARY[s.name]()
            raise ElaborationAmbiguity(
                f"{s.name!r} needs {len(_KW_SHAPE[s.name])} arguments",
                span=(s.line, s.col))
        if isinstance(s, SNum):
            return T.size_literal(s.value)
        if isinstance(s, SSuc):
            return T.SzSuc(self._elab(s.arg, env))
        if isinstance(s, SPair):
            return T.Pair(self._elab(s.fst, env), self._elab(s.snd, env))
        if isinstance(s, SCmp):
            lhs = self._elab(s.lhs, env)
            rhs = self._elab(s.rhs, env)
            if s.op == "<":
                lhs = T.SzSuc(lhs)
            return T.LeqCode(lhs, rhs)
        if isinstance(s, SLam):
            body = self._elab(s.body, env + list(s.names))
            for _ in s.names:
                body = T.Lam(body)
            return body
        if isinstance(s, SForLam):
            body = self._elab(s.body, env + list(s.names))
            for _ in s.names:
                body = T.ForLam(body)
            return body
        if isinstance(s, SForApp):
            return T.ForApp(self._elab(s.fn, env), self._elab(s.arg, env))
        if isinstance(s, SBinderType):
            dom = self._elab(s.dom, env)
            cod = self._elab(s.cod, env + [s.name if s.name else ""])
            ctor = {"->": T.Pi, "**": T.Sigma,
                    "~>": T.PiCode, "~*": T.SigCode}[s.former]
            return ctor(dom, cod)
        if isinstance(s, SQuant):
            body = _lower_code(self._elab(s.body, env + [s.name]))
            if s.bound is not None:
                bound = T.weaken(self._elab(s.bound, env), 0, 1)
                guard = T.LeqCode(T.SzSuc(T.Var(0)), bound)
                inner = {"forall": T.PiCode, "exists": T.SigCode}[s.former]
                body = inner(guard, T.weaken(body, 0, 1))
            ctor = {"forall": T.ForallCode, "exists": T.ExistsCode}[s.former]
            return ctor(body)
        if isinstance(s, SApp):
            spine: list[Surface] = []
            head = s
            while isinstance(head, SApp):
                spine.append(head.arg)
                head = head.fn
            spine.reverse()
            if isinstance(head, SKw) and head.name not in _NULLARY:
                return self._elab_kw_spine(head, spine, env)
            out = self._elab(head, env)
            for arg in spine:
                out = T.App(out, self._elab(arg, env))
            return out
        raise AssertionError(f"unhandled surface node {s!r}")

    def _elab_kw_spine(self, head: SKw, spine: list[Surface],
                       env: list[str]) -> T.Term:
        shape = _KW_SHAPE[head.name]
        if len(spine) < len(shape):
            raise ElaborationAmbiguity(
                f"{head.name!r} needs {len(shape)} arguments, "
                f"got {len(spine)}", span=(head.line, head.col))
        args = [self._elab_binder_arg(head, a, k, env)
                for a, k in zip(spine[:len(shape)], shape)]
        out = _build_kw(head.name, args)
        for extra in spine[len(shape):]:
            out = T.App(out, self._elab(extra, env))
        return out

    def _elab_binder_arg(self, head: SKw, arg: Surface, binders: int,
                         env: list[str]) -> T.Term:
        if binders == 0:
            return self._elab(arg, env)
        if not isinstance(arg, SLam) or len(arg.names) < binders:
            raise ElaborationAmbiguity(
                f"argument of {head.name!r} must bind {binders} "
                f"variable(s) with 'fun'", span=(head.line, head.col))
        taken = list(arg.names[:binders])
        rest = arg.names[binders:]
        body: Surface = arg.body if not rest else SLam(rest, arg.body)
        return self._elab(body, env + taken)


def elaborate_term(s: Surface, globals_: set[str]) -> T.Term:
    return Elaborator(globals_).term(s)


def elaborate_decl_type(s: Surface, globals_: set[str]) -> T.Term:
    return Elaborator(globals_).decl_type(s)


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

_TERM, _CMP, _APP, _ATOM = 0, 1, 2, 3


def _name(depth: int) -> str:
    return f"x{depth}"


def _pp(t: T.Term, d: int, level: int) -> str:
    s, lv = _pp_raw(t, d)
    if lv < level:
        return f"({s})"
    return s


def _fun(names: int, body: T.Term, d: int, sized: bool = False) -> str:
    binders = " ".join(_name(d + k) for k in range(names))
    head = "fun^" if sized else "fun"
    return f"({head} {binders} => {_pp(body, d + names, _TERM)})"


def _pp_raw(t: T.Term, d: int) -> tuple[str, int]:
    match t:
        case T.Var(ix):
            return _name(d - 1 - ix), _ATOM
        case T.Const(name):
            return name, _ATOM
        case T.U():
            return "U", _ATOM
        case T.Size():
            return "Size", _ATOM
        case T.Bool():
            return "Bool", _ATOM
        case T.Top():
            return "Top", _ATOM
        case T.Bot():
            return "Bot", _ATOM
        case T.Tt():
            return "tt", _ATOM
        case T.Ff():
            return "ff", _ATOM
        case T.Star():
            return "star", _ATOM
        case T.Sz0():
            return "0s", _ATOM
        case T.SzSuc(a):
            return f"^{_pp(a, d, _ATOM)}", _ATOM
        case T.BotCode():
            return "botc", _ATOM
        case T.TopCode():
            return "topc", _ATOM
        case T.BoolCode():
            return "boolc", _ATOM
        case T.Pi(dom, cod):
            return (f"({_name(d)} : {_pp(dom, d, _TERM)}) -> "
                    f"{_pp(cod, d + 1, _TERM)}"), _TERM
        case T.Sigma(dom, cod):
            return (f"({_name(d)} : {_pp(dom, d, _TERM)}) ** "
                    f"{_pp(cod, d + 1, _TERM)}"), _TERM
        case T.PiCode(dom, cod):
            return (f"({_name(d)} : {_pp(dom, d, _TERM)}) ~> "
                    f"{_pp(cod, d + 1, _TERM)}"), _TERM
        case T.SigCode(dom, cod):
            return (f"({_name(d)} : {_pp(dom, d, _TERM)}) ~* "
                    f"{_pp(cod, d + 1, _TERM)}"), _TERM
        case T.ForallCode(body):
            return f"forall {_name(d)}. {_pp(body, d + 1, _TERM)}", _TERM
        case T.ExistsCode(body):
            return f"exists {_name(d)}. {_pp(body, d + 1, _TERM)}", _TERM
        case T.LeqCode(lhs, rhs):
            return f"{_pp(lhs, d, _APP)} <= {_pp(rhs, d, _APP)}", _CMP
        case T.El(code):
            return f"El {_pp(code, d, _ATOM)}", _APP
        case T.Id(ty, lhs, rhs):
            return (f"Id {_pp(ty, d, _ATOM)} {_pp(lhs, d, _ATOM)} "
                    f"{_pp(rhs, d, _ATOM)}"), _APP
        case T.IdCode(code, lhs, rhs):
            return (f"idc {_pp(code, d, _ATOM)} {_pp(lhs, d, _ATOM)} "
                    f"{_pp(rhs, d, _ATOM)}"), _APP
        case T.Lam(body):
            return (f"fun {_name(d)} => {_pp(body, d + 1, _TERM)}"), _TERM
        case T.ForLam(body):
            return (f"fun^ {_name(d)} => {_pp(body, d + 1, _TERM)}"), _TERM
        case T.App(fn, arg):
            return f"{_pp(fn, d, _APP)} {_pp(arg, d, _ATOM)}", _APP
        case T.ForApp(fn, arg):
            return f"{_pp(fn, d, _APP)} @ {_pp(arg, d, _ATOM)}", _APP
        case T.Pair(fst, snd):
            return f"({_pp(fst, d, _TERM)} , {_pp(snd, d, _TERM)})", _ATOM
        case T.Proj1(pair):
            return f"fst {_pp(pair, d, _ATOM)}", _APP
        case T.Proj2(pair):
            return f"snd {_pp(pair, d, _ATOM)}", _APP
        case T.ExPair(size, wit):
            return f"pack {_pp(size, d, _ATOM)} {_pp(wit, d, _ATOM)}", _APP
        case T.Refl(arg):
            return f"refl {_pp(arg, d, _ATOM)}", _APP
        case T.J(motive, base, lhs, rhs, path):
            return (f"J {_fun(3, motive, d)} {_fun(1, base, d)} "
                    f"{_pp(lhs, d, _ATOM)} {_pp(rhs, d, _ATOM)} "
                    f"{_pp(path, d, _ATOM)}"), _APP
        case T.BotInd(motive, scrut):
            return (f"botind {_fun(1, motive, d)} "
                    f"{_pp(scrut, d, _ATOM)}"), _APP
        case T.TopInd(motive, base, scrut):
            return (f"topind {_fun(1, motive, d)} {_pp(base, d, _ATOM)} "
                    f"{_pp(scrut, d, _ATOM)}"), _APP
        case T.BoolInd(motive, tcase, fcase, scrut):
            return (f"boolind {_fun(1, motive, d)} {_pp(tcase, d, _ATOM)} "
                    f"{_pp(fcase, d, _ATOM)} {_pp(scrut, d, _ATOM)}"), _APP
        case T.ExInd(motive, branch, scrut):
            return (f"exind {_fun(1, motive, d)} {_fun(2, branch, d)} "
                    f"{_pp(scrut, d, _ATOM)}"), _APP
        case T.Fix(fn):
            return f"fix {_pp(fn, d, _ATOM)}", _APP
        case T.FixBeta(fn):
            return f"fixb {_pp(fn, d, _ATOM)}", _APP
        case T.Funext(fnty, lhs, rhs):
            return (f"funext {_pp(fnty, d, _ATOM)} {_pp(lhs, d, _ATOM)} "
                    f"{_pp(rhs, d, _ATOM)}"), _APP
    raise AssertionError(f"unhandled term {t!r}")


def print_term(t: T.Term, depth: int = 0) -> str:
    """Render a core term; parse + elaborate of the output is alpha-equal
    to the input for well-scoped terms."""
    return _pp(t, depth, _TERM)
