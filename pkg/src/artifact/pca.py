"""A small partial combinatory algebra with fuel-bounded reduction.

Terms are built from the combinators S and K, primitive pairing Pr with
projections Pr1 and Pr2, binary application, and named atoms.  Atoms
stand for opaque realiser tokens and for the variables that bracket
abstraction eliminates; they reduce to themselves.

Definedness is always relative to a stated fuel.  One unit of fuel pays
for one firing of a delta rule:

    S x y z  ->  x z (y z)
    K x y    ->  x
    Pr1 (Pr x y)  ->  x
    Pr2 (Pr x y)  ->  y

The reducer is normal order and returns the full normal form when it is
reached within fuel (a fortiori a weak head normal form: applications
are unwound along the spine first, so discarded arguments are never
evaluated).  Running out of fuel yields the Diverged outcome, a value,
not an error.  Equality of outcomes is Kleene equality at desk scale:
two terms agree when both normalize to the same term or both exhaust
the fuel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


class ClTerm:
    """Base class for combinator terms."""

    __slots__ = ()

    def __call__(self, *args: "ClTerm") -> "ClTerm":
        t: ClTerm = self
        for a in args:
            t = App(t, a)
        return t


@dataclass(frozen=True, slots=True)
class S(ClTerm):
    def __str__(self) -> str:
        return "S"


@dataclass(frozen=True, slots=True)
class K(ClTerm):
    def __str__(self) -> str:
        return "K"


@dataclass(frozen=True, slots=True)
class Pr(ClTerm):
    def __str__(self) -> str:
        return "Pr"


@dataclass(frozen=True, slots=True)
class Pr1(ClTerm):
    def __str__(self) -> str:
        return "Pr1"


@dataclass(frozen=True, slots=True)
class Pr2(ClTerm):
    def __str__(self) -> str:
        return "Pr2"


@dataclass(frozen=True, slots=True)
class Var(ClTerm):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class App(ClTerm):
    fn: ClTerm
    arg: ClTerm

    def __str__(self) -> str:
        fn = str(self.fn)
        arg = str(self.arg)
        if isinstance(self.arg, App):
            arg = f"({arg})"
        return f"{fn} {arg}"


@dataclass(frozen=True, slots=True)
class Diverged:
    """Fuel ran out before a normal form was reached."""

    def __str__(self) -> str:
        return "<diverged>"


DIVERGED = Diverged()

Outcome = Union[ClTerm, Diverged]


class _OutOfFuel(Exception):
    pass


def _spine(t: ClTerm) -> tuple[ClTerm, list[ClTerm]]:
    args: list[ClTerm] = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def _rebuild(head: ClTerm, args: list[ClTerm]) -> ClTerm:
    for a in args:
        head = App(head, a)
    return head


def _spend(fuel: list[int]) -> None:
    if fuel[0] <= 0:
        raise _OutOfFuel
    fuel[0] -= 1


def _whnf_stack(t: ClTerm, fuel: list[int]) -> tuple[ClTerm, list[ClTerm]]:
    """Weak head reduction over an argument stack; stack[-1] is the next
    argument.  Avoids rebuilding the term between steps."""
    head = t
    stack: list[ClTerm] = []
    while True:
        while isinstance(head, App):
            stack.append(head.arg)
            head = head.fn
        if isinstance(head, S) and len(stack) >= 3:
            _spend(fuel)
            x, y, z = stack.pop(), stack.pop(), stack.pop()
            stack.append(App(y, z))
            stack.append(z)
            head = x
        elif isinstance(head, K) and len(stack) >= 2:
            _spend(fuel)
            x = stack.pop()
            stack.pop()
            head = x
        elif isinstance(head, (Pr1, Pr2)) and stack:
            phead, pstack = _whnf_stack(stack.pop(), fuel)
            if isinstance(phead, Pr) and len(pstack) == 2:
                _spend(fuel)
                head = pstack[-1] if isinstance(head, Pr1) else pstack[-2]
            else:
                stack.append(_rebuild(phead, reversed(pstack)))
                return head, stack
        else:
            return head, stack


def _normalize(t: ClTerm, fuel: list[int]) -> ClTerm:
    # Explicit frames: unfolding chains can nest too deep for recursion.
    head, pending = _whnf_stack(t, fuel)
    frames: list[tuple[ClTerm, list[ClTerm], list[ClTerm]]] = [
        (head, pending, [])
    ]
    while True:
        head, pending, done = frames[-1]
        if pending:
            h, s = _whnf_stack(pending.pop(), fuel)
            frames.append((h, s, []))
        else:
            frames.pop()
            value = _rebuild(head, done)
            if not frames:
                return value
            frames[-1][2].append(value)


def reduce(t: ClTerm, fuel: int) -> Outcome:
    """Normal form of t, or DIVERGED when fuel runs out first."""
    if fuel < 0:
        raise ValueError("fuel must be nonnegative")
    budget = [fuel]
    try:
        return _normalize(t, budget)
    except _OutOfFuel:
        return DIVERGED


def kleene_equal(a: ClTerm, b: ClTerm, fuel: int) -> bool:
    """Both normalize to the same term, or both run out of fuel."""
    ra = reduce(a, fuel)
    rb = reduce(b, fuel)
    if isinstance(ra, Diverged) and isinstance(rb, Diverged):
        return True
    return ra == rb


# --- bracket abstraction ---------------------------------------------------


def free_in(name: str, t: ClTerm) -> bool:
    if isinstance(t, Var):
        return t.name == name
    if isinstance(t, App):
        return free_in(name, t.fn) or free_in(name, t.arg)
    return False


def subst(t: ClTerm, name: str, arg: ClTerm) -> ClTerm:
    if isinstance(t, Var) and t.name == name:
        return arg
    if isinstance(t, App):
        return App(subst(t.fn, name, arg), subst(t.arg, name, arg))
    return t


IDENT = App(App(S(), K()), K())


def bracket(name: str, body: ClTerm) -> ClTerm:
    """Combinator behaving like abstraction of name over body: applying
    the result to a reduces like body with a substituted for name."""
    if isinstance(body, Var) and body.name == name:
        return IDENT
    if not free_in(name, body):
        return App(K(), body)
    assert isinstance(body, App)
    return App(App(S(), bracket(name, body.fn)), bracket(name, body.arg))


def lams(names: list[str], body: ClTerm) -> ClTerm:
    for n in reversed(names):
        body = bracket(n, body)
    return body


# --- fixpoint --------------------------------------------------------------


def pca_fix() -> ClTerm:
    """Fixpoint combinator: fix f is defined, and fix f a is Kleene-equal
    to f (fix f) a.  Built so that fix f reaches a normal-form-headed
    value without unfolding under the guard argument."""
    x, y, a = Var("x"), Var("y"), Var("a")
    w = lams(["x", "y"], App(y, bracket("a", x(x, y, a))))
    return App(w, w)


def check_fix_law(f: ClTerm, a: ClTerm, fuel: int) -> bool:
    fix = pca_fix()
    lhs = fix(f, a)
    rhs = f(App(fix, f), a)
    return kleene_equal(lhs, rhs, fuel)


# --- the recursion realiser ------------------------------------------------


def phi_realiser() -> ClTerm:
    """The step term whose fixpoint realises well-founded recursion: given
    the recursive call f, an environment e, a bound k and an argument n,
    it runs e at k and n and hands over the one-step-smaller recursor."""
    f, e, k, n, m = Var("f"), Var("e"), Var("k"), Var("n"), Var("m")
    inner = bracket("m", f(e, k, m))
    return lams(["f", "e", "k", "n"], e(k, n, inner))


def check_phi_law(fr: ClTerm, gr: ClTerm, n: ClTerm, fuel: int) -> bool:
    """The recursion equation for F := fix phi: running F equals running
    the environment once with the guarded recursor as last argument."""
    big_f = App(pca_fix(), phi_realiser())
    lhs = big_f(fr, gr, n)
    rhs = fr(gr, n, bracket("m", big_f(fr, gr, Var("m"))))
    return kleene_equal(lhs, rhs, fuel)


# --- s-expression reading and showing --------------------------------------

_ATOMS = {"S": S(), "K": K(), "Pr": Pr(), "Pr1": Pr1(), "Pr2": Pr2()}


def _tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _parse_tokens(toks: list[str], pos: int) -> tuple[ClTerm, int]:
    if pos >= len(toks):
        raise ValueError("unexpected end of term")
    tok = toks[pos]
    if tok == ")":
        raise ValueError("unexpected )")
    if tok != "(":
        return _atom(tok), pos + 1
    pos += 1
    parts: list[ClTerm] = []
    while pos < len(toks) and toks[pos] != ")":
        part, pos = _parse_tokens(toks, pos)
        parts.append(part)
    if pos >= len(toks):
        raise ValueError("missing )")
    if not parts:
        raise ValueError("empty application")
    t = parts[0]
    for p in parts[1:]:
        t = App(t, p)
    return t, pos + 1


def _atom(tok: str) -> ClTerm:
    if tok in _ATOMS:
        return _ATOMS[tok]
    return Var(tok)


def parse_clterm(text: str) -> ClTerm:
    """Read a term: atoms are S K Pr Pr1 Pr2 or token names, and
    (f a b) applies f to a then b."""
    toks = _tokenize(text)
    t, pos = _parse_tokens(toks, 0)
    if pos != len(toks):
        raise ValueError(f"trailing input after term: {' '.join(toks[pos:])}")
    return t


def show_clterm(t: ClTerm) -> str:
    head, args = _spine(t)
    if not args:
        return str(head)
    return "(" + " ".join([str(head)] + [show_clterm(a) for a in args]) + ")"
