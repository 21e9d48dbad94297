"""Bidirectional type checker.

Typing is split into inference, checking, and an is-a-type judgment.  The
large formers (Pi, Sigma, Id, the base types, U, El) are handled by the
is-a-type judgment; terms whose inferred type is the universe are accepted
in type positions by wrapping them in El semantically.  Checking handles
the un-annotated introduction forms (abstractions, pairs, size packages)
plus the two fixpoint formers, and otherwise defers to inference followed
by conversion.

Globals live in a flat name -> entry table.  Defined globals carry their
evaluated body and hence unfold during conversion; axioms and the builtin
ordering constants carry no body and stay neutral.  Axiom declarations are
rejected outside the trusted prelude unless explicitly overridden.

The function extensionality axiom is a term former (`Funext`) rather than
a single constant, because its instances range over function types with
both small and large domains.  Its inferred type is the coherent
equivalence statement (inverse, section, retraction, one triangle law) for
the pointwise-equality map of the instance, synthesized from one of two
fixed templates below.
"""

from __future__ import annotations

import sys
import threading
from dataclasses import dataclass
from typing import Callable, Optional

from . import terms as T
from .errors import (AxiomOutsidePrelude, CannotInfer, DuplicateName,
                     ExpectedUniverse, FixShapeMismatch, KernelError,
                     NotAFunction, SmallnessViolation, TypeMismatch,
                     UnboundVariable, UnknownName)
from .semantics import (NativeClosure, Val, VBool, VBot, VEl, VExC, VExPair,
                        VForC, VId, VLam, VLeqC, VNeutral, VPi, VRefl,
                        VSigma, VSize, VSzSuc, VTop, VU, HFix, convert,
                        do_app, do_el, do_proj1, evaluate, fresh, readback)

sys.setrecursionlimit(100_000)

PRELUDE_OWNERS = ("builtin", "prelude")


@dataclass
class GlobalEntry:
    name: str
    ty: Val
    ty_term: T.Term
    value: Optional[Val]
    body: Optional[T.Term]
    is_axiom: bool
    owner: str


@dataclass
class Context:
    globals: dict
    local_tys: tuple = ()
    env: tuple = ()

    @property
    def depth(self) -> int:
        return len(self.env)

    def extend(self, tyv: Val) -> "Context":
        return Context(self.globals, self.local_tys + (tyv,),
                       self.env + (fresh(self.depth),))

    def eval(self, t: T.Term) -> Val:
        return evaluate(t, self.env, self.globals)


def base_context() -> Context:
    """Fresh context with the builtin ordering constants registered."""
    ctx = Context({})
    for name, ty in ordering_signatures():
        tyv = check_is_type(ctx, ty)
        ctx.globals[name] = GlobalEntry(name, tyv, ty, None, None, False,
                                        "builtin")
    return ctx


def ordering_signatures() -> list[tuple[str, T.Term]]:
    """Types of the primitive ordering constants, checked in the empty
    context at registration time."""
    size = T.Size()

    def leq(a, b):
        return T.El(T.LeqCode(a, b))

    v = T.Var
    return [
        ("le0", T.Pi(size, leq(T.Sz0(), v(0)))),
        ("lesuc", T.Pi(size, leq(v(0), T.SzSuc(v(0))))),
        ("lerefl", T.Pi(size, leq(v(0), v(0)))),
        ("letrans",
         T.Pi(size, T.Pi(size, T.Pi(size,
              T.Pi(leq(v(2), v(1)),
                   T.Pi(leq(v(2), v(1)),  # under p: i=3, j=2, k=1
                        leq(v(4), v(2)))))))),
        ("leeq",
         T.Pi(size, T.Pi(size,
              T.Pi(leq(v(1), v(0)),
                   T.Pi(leq(v(2), v(1)),
                        T.El(T.IdCode(T.LeqCode(v(3), v(2)),
                                      v(1), v(0)))))))),
    ]


# --- inference -----------------------------------------------------------


def infer(ctx: Context, t: T.Term) -> Val:
    match t:
        case T.Var(i):
            if i < 0 or i >= ctx.depth:
                raise UnboundVariable(f"variable index {i} out of scope")
            return ctx.local_tys[-1 - i]
        case T.Const(n):
            entry = ctx.globals.get(n)
            if entry is None:
                raise UnknownName(f"unknown name {n}")
            return entry.ty
        case T.App(T.Lam(body), a):
            # Beta redex, typed as a let: the bound variable gets the
            # argument's type and its value.
            aty = infer(ctx, a)
            inner = Context(ctx.globals, ctx.local_tys + (aty,),
                            ctx.env + (ctx.eval(a),))
            return infer(inner, body)
        case T.App(f, a):
            fty = infer(ctx, f)
            if not isinstance(fty, VPi):
                raise NotAFunction("application head is not of function type")
            check(ctx, a, fty.dom)
            return fty.cod(ctx.eval(a))
        case T.ForApp(f, s):
            fty = infer(ctx, f)
            if not (isinstance(fty, VEl) and isinstance(fty.code, VForC)):
                raise NotAFunction(
                    "size application head is not universally quantified")
            check(ctx, s, VSize())
            return do_el(fty.code.body(ctx.eval(s)))
        case T.Proj1(p):
            pty = infer(ctx, p)
            if not isinstance(pty, VSigma):
                raise TypeMismatch("projection from a non-pair type")
            return pty.dom
        case T.Proj2(p):
            pty = infer(ctx, p)
            if not isinstance(pty, VSigma):
                raise TypeMismatch("projection from a non-pair type")
            return pty.cod(do_proj1(ctx.eval(p)))
        case T.Star():
            return VTop()
        case T.Tt() | T.Ff():
            return VBool()
        case T.Sz0():
            return VSize()
        case T.SzSuc(s):
            check(ctx, s, VSize())
            return VSize()
        case T.Refl(a):
            aty = infer(ctx, a)
            av = ctx.eval(a)
            return VId(aty, av, av)
        case T.J(m, b, lhs, rhs, path):
            return _infer_j(ctx, m, b, lhs, rhs, path)
        case T.BotInd(m, s):
            check(ctx, s, VBot())
            _check_motive_ty(ctx, m, VBot())
            return evaluate(m, ctx.env + (ctx.eval(s),), ctx.globals)
        case T.TopInd(m, b, s):
            check(ctx, s, VTop())
            _check_motive_ty(ctx, m, VTop())
            check(ctx, b,
                  evaluate(m, ctx.env + (evaluate(T.Star(), (), ctx.globals),),
                           ctx.globals))
            return evaluate(m, ctx.env + (ctx.eval(s),), ctx.globals)
        case T.BoolInd(m, bt, bf, s):
            check(ctx, s, VBool())
            _check_motive_ty(ctx, m, VBool())
            gl = ctx.globals
            check(ctx, bt, evaluate(m, ctx.env + (ctx.eval(T.Tt()),), gl))
            check(ctx, bf, evaluate(m, ctx.env + (ctx.eval(T.Ff()),), gl))
            return evaluate(m, ctx.env + (ctx.eval(s),), gl)
        case T.ExInd(m, br, s):
            return _infer_exind(ctx, m, br, s)
        case T.LeqCode(lo, hi):
            check(ctx, lo, VSize())
            check(ctx, hi, VSize())
            return VU()
        case T.BotCode() | T.TopCode() | T.BoolCode():
            return VU()
        case T.PiCode(d, c) | T.SigCode(d, c):
            check(ctx, d, VU())
            inner = ctx.extend(do_el(ctx.eval(d)))
            check(inner, c, VU())
            return VU()
        case T.IdCode(code, l, r):
            check(ctx, code, VU())
            ty = do_el(ctx.eval(code))
            check(ctx, l, ty)
            check(ctx, r, ty)
            return VU()
        case T.ExistsCode(b) | T.ForallCode(b):
            inner = ctx.extend(VSize())
            check_small(inner, b, "quantifier body")
            return VU()
        case T.Funext(fnty, f, g):
            return _infer_funext(ctx, fnty, f, g)
        case T.Lam(_) | T.Pair(_, _) | T.ForLam(_) | T.ExPair(_, _):
            raise CannotInfer(
                f"{type(t).__name__} has no annotation; checkable only")
        case T.Fix(_) | T.FixBeta(_):
            raise CannotInfer("fixpoints are checked against a stated type")
    raise CannotInfer(f"cannot infer a type for {type(t).__name__}")


def _infer_j(ctx: Context, m, b, lhs, rhs, path) -> Val:
    aty = infer(ctx, lhs)
    check(ctx, rhs, aty)
    lv = ctx.eval(lhs)
    rv = ctx.eval(rhs)
    check(ctx, path, VId(aty, lv, rv))
    d = ctx.depth
    mctx = ctx.extend(aty).extend(aty).extend(
        VId(aty, fresh(d), fresh(d + 1)))
    check_is_type(mctx, m)
    bctx = ctx.extend(aty)
    x = fresh(d)
    base_target = evaluate(m, ctx.env + (x, x, VRefl(x)), ctx.globals)
    check(bctx, b, base_target)
    return evaluate(m, ctx.env + (lv, rv, ctx.eval(path)), ctx.globals)


def _infer_exind(ctx: Context, m, br, s) -> Val:
    sty = infer(ctx, s)
    if not (isinstance(sty, VEl) and isinstance(sty.code, VExC)):
        raise TypeMismatch(
            "existential elimination of a non-existential type")
    body = sty.code.body
    mctx = ctx.extend(sty)
    check_small(mctx, m, "existential eliminator motive")
    d = ctx.depth
    brctx = ctx.extend(VSize())
    brctx = brctx.extend(do_el(body(fresh(d))))
    pk = VExPair(fresh(d), fresh(d + 1))
    target = do_el(evaluate(m, ctx.env + (pk,), ctx.globals))
    check(brctx, br, target)
    return do_el(evaluate(m, ctx.env + (ctx.eval(s),), ctx.globals))


def _check_motive_ty(ctx: Context, m: T.Term, scrut_ty: Val) -> None:
    check_is_type(ctx.extend(scrut_ty), m)


# --- checking ------------------------------------------------------------


def check(ctx: Context, t: T.Term, ty: Val) -> None:
    match t:
        case T.Lam(body):
            if not isinstance(ty, VPi):
                raise TypeMismatch("function abstraction against a type "
                                   "that is not a dependent product")
            inner = ctx.extend(ty.dom)
            check(inner, body, ty.cod(fresh(ctx.depth)))
            return
        case T.ForLam(body):
            if not (isinstance(ty, VEl) and isinstance(ty.code, VForC)):
                raise TypeMismatch("size abstraction against a type that is "
                                   "not universally quantified")
            inner = ctx.extend(VSize())
            check(inner, body, do_el(ty.code.body(fresh(ctx.depth))))
            return
        case T.Pair(a, b):
            if not isinstance(ty, VSigma):
                raise TypeMismatch("pair against a type that is not a "
                                   "dependent sum")
            check(ctx, a, ty.dom)
            check(ctx, b, ty.cod(ctx.eval(a)))
            return
        case T.ExPair(s, w):
            if not (isinstance(ty, VEl) and isinstance(ty.code, VExC)):
                raise TypeMismatch("size package against a type that is not "
                                   "existentially quantified")
            check(ctx, s, VSize())
            check(ctx, w, do_el(ty.code.body(ctx.eval(s))))
            return
        case T.Fix(_):
            _check_fix(ctx, t, ty, beta=False)
            return
        case T.FixBeta(_):
            _check_fix(ctx, t, ty, beta=True)
            return
        case T.App(T.Lam(body), a):
            # beta redex as a let, mirroring the inference rule
            aty = infer(ctx, a)
            inner = Context(ctx.globals, ctx.local_tys + (aty,),
                            ctx.env + (ctx.eval(a),))
            check(inner, body, ty)
            return
    got = infer(ctx, t)
    if not convert(ctx.depth, got, ty):
        raise TypeMismatch(
            "inferred type does not match the expected type\n"
            f"  expected: {readback(ctx.depth, ty)}\n"
            f"  inferred: {readback(ctx.depth, got)}")


def check_small(ctx: Context, t: T.Term, what: str) -> None:
    """Check t : U, reporting failures as smallness violations."""
    if isinstance(t, (T.U, T.Size, T.Pi, T.Sigma, T.Id, T.Bot, T.Top,
                      T.Bool, T.El)):
        raise SmallnessViolation(
            f"{what} must be a universe code, got the large former "
            f"{type(t).__name__}")
    try:
        check(ctx, t, VU())
    except (TypeMismatch, CannotInfer) as e:
        raise SmallnessViolation(f"{what} must be small: {e.message}") from e


def check_is_type(ctx: Context, t: T.Term, strict: bool = True) -> Val:
    """Check that t is a type and return its value.

    Nested type positions (binder components, motives) are re-evaluated
    through closures later, so they must denote their value verbatim:
    a bare universe code there is rejected rather than silently decoded.
    Only a declaration's root type slot (strict=False) auto-wraps El,
    because there the returned value is the single source of truth.
    """
    match t:
        case T.U():
            return VU()
        case T.Size():
            return VSize()
        case T.Bot():
            return VBot()
        case T.Top():
            return VTop()
        case T.Bool():
            return VBool()
        case T.Pi(d, c) | T.Sigma(d, c):
            dv = check_is_type(ctx, d)
            inner = ctx.extend(dv)
            check_is_type(inner, c)
            return ctx.eval(t)
        case T.Id(a, l, r):
            av = check_is_type(ctx, a)
            check(ctx, l, av)
            check(ctx, r, av)
            return VId(av, ctx.eval(l), ctx.eval(r))
        case T.El(c):
            check(ctx, c, VU())
            return do_el(ctx.eval(c))
    got = infer(ctx, t)
    if not convert(ctx.depth, got, VU()):
        raise ExpectedUniverse(
            "a type position needs a type or a universe code, but this "
            f"term's type is {readback(ctx.depth, got)}")
    if strict:
        raise ExpectedUniverse(
            "a universe code in a nested type position must be decoded "
            "explicitly: wrap it in El")
    return do_el(ctx.eval(t))


# --- fixpoints -----------------------------------------------------------


def _check_fix(ctx: Context, t: T.Term, ty: Val, beta: bool) -> None:
    f = t.fn
    if not (isinstance(ty, VPi) and isinstance(ty.dom, VSize)):
        raise FixShapeMismatch(
            "a fixpoint needs a target type quantifying over sizes")
    if beta:
        body_clo = ty.cod

        def cfam(v: Val) -> Val:
            bv = body_clo(v)
            if not isinstance(bv, VId):
                raise FixShapeMismatch(
                    "the unfolding law's target must be a family of "
                    "equality types over sizes")
            return bv.ty
    else:
        cfam = ty.cod

    def recty(vi: Val) -> Val:
        return VPi(VSize(), NativeClosure(lambda vj: VPi(
            VEl(VLeqC(VSzSuc(vj), vi)),
            NativeClosure(lambda _p: cfam(vj)))))

    ftarget = VPi(VSize(), NativeClosure(lambda vi: VPi(
        recty(vi), NativeClosure(lambda _r: cfam(vi)))))
    check(ctx, f, ftarget)
    if beta:
        d = ctx.depth
        vi = fresh(d)
        bv = ty.cod(vi)
        if not isinstance(bv, VId):
            raise FixShapeMismatch(
                "the unfolding law's target must be a family of equality "
                "types over sizes")
        fv = ctx.eval(f)
        fixv = VNeutral(HFix(fv), ())
        lhs_exp = do_app(fixv, vi)
        rec = VLam(NativeClosure(
            lambda vj: VLam(NativeClosure(lambda _p: do_app(fixv, vj)))))
        rhs_exp = do_app(do_app(fv, vi), rec)
        if not convert(d + 1, bv.lhs, lhs_exp, bv.ty):
            raise FixShapeMismatch(
                "the unfolding law's left side must be the fixpoint "
                "applied to the bound size")
        if not convert(d + 1, bv.rhs, rhs_exp, bv.ty):
            raise FixShapeMismatch(
                "the unfolding law's right side must be one unfolding of "
                "the fixpoint")


# --- function extensionality ----------------------------------------------


def _build_equiv_structure(xty: Callable[[int], T.Term],
                           yty: Callable[[int], T.Term],
                           hap: Callable[[int], T.Term]) -> T.Term:
    """Coherent-equivalence statement for the pointwise map hap : X -> Y.
    Components in prelude order: inverse, section, retraction, triangle."""
    inv_ty = T.Pi(yty(0), xty(1))
    eta_ty = T.Pi(xty(1), T.Id(
        xty(2), T.App(T.Var(1), T.App(hap(2), T.Var(0))), T.Var(0)))
    eps_ty = T.Pi(yty(2), T.Id(
        yty(3), T.App(hap(3), T.App(T.Var(2), T.Var(0))), T.Var(0)))
    hp = T.App(hap(4), T.Var(0))
    hihp = T.App(hap(4), T.App(T.Var(3), hp))
    ap_motive = T.Id(yty(7), T.App(hap(7), T.Var(2)), T.App(hap(7), T.Var(1)))
    ap_base = T.Refl(T.App(hap(5), T.Var(0)))
    ap_term = T.J(ap_motive, ap_base, T.App(T.Var(3), hp), T.Var(0),
                  T.App(T.Var(2), T.Var(0)))
    coh_ty = T.Pi(xty(3), T.Id(T.Id(yty(4), hihp, hp), ap_term,
                               T.App(T.Var(1), hp)))
    return T.Sigma(inv_ty, T.Sigma(eta_ty, T.Sigma(eps_ty, coh_ty)))


def _funext_pi_template() -> T.Term:
    # environment slots: dom, cod-as-function, f, g
    def dom(k):
        return T.Var(k + 3)

    def codf(k):
        return T.Var(k + 2)

    def fv(k):
        return T.Var(k + 1)

    def gv(k):
        return T.Var(k)

    def pit(k):
        return T.Pi(dom(k), T.App(codf(k + 1), T.Var(0)))

    def xty(k):
        return T.Id(pit(k), fv(k), gv(k))

    def yty(k):
        return T.Pi(dom(k), T.Id(T.App(codf(k + 1), T.Var(0)),
                                 T.App(fv(k + 1), T.Var(0)),
                                 T.App(gv(k + 1), T.Var(0))))

    def hap(k):
        motive = T.Pi(dom(k + 4), T.Id(T.App(codf(k + 5), T.Var(0)),
                                       T.App(T.Var(3), T.Var(0)),
                                       T.App(T.Var(2), T.Var(0))))
        base = T.Lam(T.Refl(T.App(T.Var(1), T.Var(0))))
        return T.Lam(T.J(motive, base, fv(k + 1), gv(k + 1), T.Var(0)))

    return _build_equiv_structure(xty, yty, hap)


def _funext_forall_template() -> T.Term:
    # environment slots: body-as-function, f, g
    def bodyf(k):
        return T.Var(k + 2)

    def fv(k):
        return T.Var(k + 1)

    def gv(k):
        return T.Var(k)

    def xty(k):
        return T.El(T.IdCode(T.ForallCode(T.App(bodyf(k + 1), T.Var(0))),
                             fv(k), gv(k)))

    def yty(k):
        return T.El(T.ForallCode(T.IdCode(
            T.App(bodyf(k + 1), T.Var(0)),
            T.ForApp(fv(k + 1), T.Var(0)),
            T.ForApp(gv(k + 1), T.Var(0)))))

    def hap(k):
        motive = T.El(T.ForallCode(T.IdCode(
            T.App(bodyf(k + 5), T.Var(0)),
            T.ForApp(T.Var(3), T.Var(0)),
            T.ForApp(T.Var(2), T.Var(0)))))
        base = T.ForLam(T.Refl(T.ForApp(T.Var(1), T.Var(0))))
        return T.Lam(T.J(motive, base, fv(k + 1), gv(k + 1), T.Var(0)))

    return _build_equiv_structure(xty, yty, hap)


_FUNEXT_PI = _funext_pi_template()
_FUNEXT_FORALL = _funext_forall_template()


def _infer_funext(ctx: Context, fnty: T.Term, f: T.Term, g: T.Term) -> Val:
    tv = check_is_type(ctx, fnty)
    check(ctx, f, tv)
    check(ctx, g, tv)
    fv = ctx.eval(f)
    gv = ctx.eval(g)
    if isinstance(tv, VPi):
        env = (tv.dom, VLam(tv.cod), fv, gv)
        return evaluate(_FUNEXT_PI, env, ctx.globals)
    if isinstance(tv, VEl) and isinstance(tv.code, VForC):
        env = (VLam(tv.code.body), fv, gv)
        return evaluate(_FUNEXT_FORALL, env, ctx.globals)
    raise TypeMismatch("function extensionality applies at dependent "
                       "products and universal size quantifications only")


# --- declarations ---------------------------------------------------------


@dataclass
class DeclReport:
    name: str
    owner: str
    is_axiom: bool


def check_decl(ctx: Context, name: str, ty: T.Term, body: Optional[T.Term],
               owner: str, allow_axioms: bool = False) -> DeclReport:
    if ctx.depth != 0:
        raise KernelError("declarations check in the empty local context")
    if name in ctx.globals:
        raise DuplicateName(f"duplicate global name {name}", decl=name)
    try:
        tyv = check_is_type(ctx, ty, strict=False)
        if body is None:
            if owner not in PRELUDE_OWNERS and not allow_axioms:
                raise AxiomOutsidePrelude(
                    f"axiom {name} declared outside the prelude", decl=name)
            value = None
        else:
            check(ctx, body, tyv)
            value = ctx.eval(body)
    except KernelError as e:
        if e.decl is None:
            e.decl = name
        raise
    ctx.globals[name] = GlobalEntry(name, tyv, ty, value, body,
                                    body is None, owner)
    return DeclReport(name, owner, body is None)


def used_axioms(ctx: Context, name: str) -> set[str]:
    """Transitive axiom dependencies of a global, through the types and
    bodies of every referenced definition."""
    if name not in ctx.globals:
        raise UnknownName(f"unknown name {name}")
    memo: dict[str, set[str]] = {}

    def of_name(n: str) -> set[str]:
        if n in memo:
            return memo[n]
        entry = ctx.globals[n]
        acc: set[str] = set()
        memo[n] = acc
        if entry.is_axiom:
            acc.add(n)
            return acc
        acc |= of_term(entry.ty_term)
        if entry.body is not None:
            acc |= of_term(entry.body)
        return acc

    def of_term(t: T.Term) -> set[str]:
        acc: set[str] = set()
        for s in T.subterms(t):
            if isinstance(s, T.Funext):
                acc.add("funext")
            elif isinstance(s, T.Const):
                if s.name in ctx.globals:
                    acc |= of_name(s.name)
        return acc

    return of_name(name)


def run_deep(fn: Callable, *args, stack_bytes: int = 1 << 29):
    """Run fn in a worker thread with a large stack; checking deeply nested
    proof terms can exceed the default interpreter stack."""
    result: list = []
    error: list = []

    def work():
        try:
            result.append(fn(*args))
        except BaseException as e:  # re-raised in the caller
            error.append(e)

    old = threading.stack_size(stack_bytes)
    try:
        th = threading.Thread(target=work)
        th.start()
        th.join()
    finally:
        threading.stack_size(old)
    if error:
        raise error[0]
    return result[0]
