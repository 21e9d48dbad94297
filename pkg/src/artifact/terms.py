"""Core term language.

De Bruijn indexed syntax for a Martin-Loef style theory with one Tarski
universe of small types, a large type of size ordinals, impredicative
existential/universal size quantifiers, and a well-founded fixpoint former
over sizes.

Terms and types share one grammar.  The large formers (Pi, Sigma, Id, Bot,
Top, Bool, Size, U, El) classify anything; the universe codes (BotCode
through IdCode, plus LeqCode, ExistsCode, ForallCode) are terms of type U,
and El maps a code to the type it names.  Every binder is a plain subterm;
the number of variables a field binds is recorded in _BINDERS, which drives
the generic weakening and substitution traversals.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Term:
    pass


# variables and universe ----------------------------------------------------

@dataclass(frozen=True)
class Var(Term):
    index: int


@dataclass(frozen=True)
class U(Term):
    pass


@dataclass(frozen=True)
class El(Term):
    code: Term


# dependent products and sums ----------------------------------------------

@dataclass(frozen=True)
class Pi(Term):
    dom: Term
    cod: Term  # binds 1


@dataclass(frozen=True)
class Lam(Term):
    body: Term  # binds 1; un-annotated, checkable only


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class Sigma(Term):
    dom: Term
    cod: Term  # binds 1


@dataclass(frozen=True)
class Pair(Term):
    fst: Term
    snd: Term


@dataclass(frozen=True)
class Proj1(Term):
    pair: Term


@dataclass(frozen=True)
class Proj2(Term):
    pair: Term


# propositional equality -----------------------------------------------------

@dataclass(frozen=True)
class Id(Term):
    ty: Term
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Refl(Term):
    arg: Term


@dataclass(frozen=True)
class J(Term):
    motive: Term  # binds 3: endpoints and the path
    base: Term    # binds 1: the reflexivity case
    lhs: Term
    rhs: Term
    path: Term


# finite types ---------------------------------------------------------------

@dataclass(frozen=True)
class Bot(Term):
    pass


@dataclass(frozen=True)
class BotInd(Term):
    motive: Term  # binds 1
    scrut: Term


@dataclass(frozen=True)
class Top(Term):
    pass


@dataclass(frozen=True)
class Star(Term):
    pass


@dataclass(frozen=True)
class TopInd(Term):
    motive: Term  # binds 1
    base: Term
    scrut: Term


@dataclass(frozen=True)
class Bool(Term):
    pass


@dataclass(frozen=True)
class Tt(Term):
    pass


@dataclass(frozen=True)
class Ff(Term):
    pass


@dataclass(frozen=True)
class BoolInd(Term):
    motive: Term  # binds 1
    on_tt: Term
    on_ff: Term
    scrut: Term


# sizes and their ordering ---------------------------------------------------

@dataclass(frozen=True)
class Size(Term):
    pass


@dataclass(frozen=True)
class Sz0(Term):
    pass


@dataclass(frozen=True)
class SzSuc(Term):
    arg: Term


@dataclass(frozen=True)
class LeqCode(Term):
    """Code of the ordering proposition between two sizes."""
    lo: Term
    hi: Term


# global references ----------------------------------------------------------

@dataclass(frozen=True)
class Const(Term):
    """Reference to a registered global: a builtin ordering constant, a
    prelude axiom, or a checked definition."""
    name: str


# fixpoints ------------------------------------------------------------------

@dataclass(frozen=True)
class Fix(Term):
    """Well-founded recursion over sizes; definitionally opaque."""
    fn: Term


@dataclass(frozen=True)
class FixBeta(Term):
    """Propositional unfolding law for Fix(fn)."""
    fn: Term


# function extensionality ----------------------------------------------------

@dataclass(frozen=True)
class Funext(Term):
    """Axiom instance: the pointwise-equality map out of Id(fnty, lhs, rhs)
    is a coherent equivalence.  fnty must be written as a Pi type, an El of
    a Pi code, or an El of a universal-quantifier code."""
    fnty: Term
    lhs: Term
    rhs: Term


# impredicative size quantifiers ----------------------------------------------

@dataclass(frozen=True)
class ExistsCode(Term):
    body: Term  # binds 1 size; must be small


@dataclass(frozen=True)
class ExPair(Term):
    size: Term
    witness: Term


@dataclass(frozen=True)
class ExInd(Term):
    motive: Term  # binds 1; must land in U
    branch: Term  # binds 2: the size and the witness
    scrut: Term


@dataclass(frozen=True)
class ForallCode(Term):
    body: Term  # binds 1 size; must be small


@dataclass(frozen=True)
class ForLam(Term):
    body: Term  # binds 1 size


@dataclass(frozen=True)
class ForApp(Term):
    fn: Term
    size: Term


# universe codes for the base formers -----------------------------------------

@dataclass(frozen=True)
class BotCode(Term):
    pass


@dataclass(frozen=True)
class TopCode(Term):
    pass


@dataclass(frozen=True)
class BoolCode(Term):
    pass


@dataclass(frozen=True)
class PiCode(Term):
    dom: Term
    cod: Term  # binds 1


@dataclass(frozen=True)
class SigCode(Term):
    dom: Term
    cod: Term  # binds 1


@dataclass(frozen=True)
class IdCode(Term):
    ty: Term
    lhs: Term
    rhs: Term


# ---------------------------------------------------------------------------
# Generic traversal machinery.
#
# For every class with term-valued fields, a tuple of binder counts aligned
# with the dataclass field order.  Leaves (and Var/Const, which carry no
# subterms) are absent.

_BINDERS: dict[type, tuple[int, ...]] = {
    El: (0,),
    Pi: (0, 1),
    Lam: (1,),
    App: (0, 0),
    Sigma: (0, 1),
    Pair: (0, 0),
    Proj1: (0,),
    Proj2: (0,),
    Id: (0, 0, 0),
    Refl: (0,),
    J: (3, 1, 0, 0, 0),
    BotInd: (1, 0),
    TopInd: (1, 0, 0),
    BoolInd: (1, 0, 0, 0),
    SzSuc: (0,),
    LeqCode: (0, 0),
    Fix: (0,),
    FixBeta: (0,),
    Funext: (0, 0, 0),
    ExistsCode: (1,),
    ExPair: (0, 0),
    ExInd: (1, 2, 0),
    ForallCode: (1,),
    ForLam: (1,),
    ForApp: (0, 0),
    PiCode: (0, 1),
    SigCode: (0, 1),
    IdCode: (0, 0, 0),
}


def map_subterms(t: Term, fn, depth: int = 0) -> Term:
    """Rebuild t with fn(child, depth + binders) applied to each child."""
    spec = _BINDERS.get(type(t))
    if spec is None:
        return t
    fields = dataclasses.fields(t)
    changed = False
    out = []
    for f, binds in zip(fields, spec):
        sub = getattr(t, f.name)
        new = fn(sub, depth + binds)
        changed = changed or new is not sub
        out.append(new)
    return type(t)(*out) if changed else t


def subterms(t: Term):
    """Yield t and every subterm, preorder."""
    stack = [t]
    while stack:
        s = stack.pop()
        yield s
        if type(s) in _BINDERS:
            for f in dataclasses.fields(s):
                stack.append(getattr(s, f.name))


def weaken(t: Term, cutoff: int = 0, amount: int = 1) -> Term:
    """Shift free variables at or above cutoff up by amount."""
    if amount == 0:
        return t
    if isinstance(t, Var):
        return Var(t.index + amount) if t.index >= cutoff else t
    return map_subterms(t, lambda s, d: weaken(s, d, amount), cutoff)


def subst(t: Term, depth: int, repl: Term) -> Term:
    """Replace Var(depth) by repl (shifted under depth binders) and lower
    the variables above it."""
    if isinstance(t, Var):
        if t.index == depth:
            return weaken(repl, 0, depth)
        if t.index > depth:
            return Var(t.index - 1)
        return t
    return map_subterms(t, lambda s, d: subst(s, d, repl), depth)


def subst_top(t: Term, s: Term) -> Term:
    """Instantiate the outermost bound variable of t with s."""
    return subst(t, 0, s)


def alpha_eq(a: Term, b: Term) -> bool:
    """Alpha equality; with de Bruijn indices this is structural equality."""
    return a == b


def arrow(dom: Term, cod: Term) -> Term:
    """Non-dependent Pi."""
    return Pi(dom, weaken(cod))


def arrow_code(dom: Term, cod: Term) -> Term:
    """Non-dependent Pi code."""
    return PiCode(dom, weaken(cod))


def size_literal(n: int) -> Term:
    t: Term = Sz0()
    for _ in range(n):
        t = SzSuc(t)
    return t
