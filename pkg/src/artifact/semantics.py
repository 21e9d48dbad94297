"""Normalization by evaluation.

Terms evaluate into a semantic domain of weak-head values; readback quotes
values to beta-normal terms at a binder depth; conversion compares values,
applying eta at dependent products, dependent sums, and the universal size
quantifier (and nowhere else).

Computation rules implemented by the evaluator: beta for application,
projections on pairs, path induction on refl, the boolean/unit eliminators
on their constructors, the existential eliminator on packed pairs, size
application on size abstractions, and El on structural codes.  Fix and
FixBeta never unfold; they evaluate to neutral heads, as do the registered
axioms, the ordering constants, and funext instances.

Environments are tuples of values, innermost binder last.  Globals are a
name -> entry mapping threaded through evaluation so closures can resolve
constants; an entry whose `value` is None (axioms, builtins) stays neutral.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import terms as T


class EvalError(Exception):
    """Raised when evaluation meets an ill-typed value shape; the checker
    guarantees this never fires on accepted terms."""


# --- values -------------------------------------------------------------


class Val:
    pass


@dataclass
class Closure:
    gl: dict
    env: tuple
    term: T.Term

    def __call__(self, *vs: Val) -> Val:
        return evaluate(self.term, self.env + tuple(vs), self.gl)


@dataclass
class NativeClosure:
    fn: Callable[..., Val]

    def __call__(self, *vs: Val) -> Val:
        return self.fn(*vs)


@dataclass
class VU(Val):
    pass


@dataclass
class VBot(Val):
    pass


@dataclass
class VTop(Val):
    pass


@dataclass
class VBool(Val):
    pass


@dataclass
class VSize(Val):
    pass


@dataclass
class VPi(Val):
    dom: Val
    cod: object  # closure


@dataclass
class VSigma(Val):
    dom: Val
    cod: object


@dataclass
class VId(Val):
    ty: Val
    lhs: Val
    rhs: Val


@dataclass
class VEl(Val):
    """El of a code with no computation rule: an ordering code, a size
    quantifier code, or a neutral code."""
    code: Val


@dataclass
class VStar(Val):
    pass


@dataclass
class VTt(Val):
    pass


@dataclass
class VFf(Val):
    pass


@dataclass
class VSz0(Val):
    pass


@dataclass
class VSzSuc(Val):
    arg: Val


@dataclass
class VRefl(Val):
    arg: Val


@dataclass
class VLam(Val):
    clo: object


@dataclass
class VPair(Val):
    fst: Val
    snd: Val


@dataclass
class VForLam(Val):
    clo: object


@dataclass
class VExPair(Val):
    size: Val
    witness: Val


@dataclass
class VBotC(Val):
    pass


@dataclass
class VTopC(Val):
    pass


@dataclass
class VBoolC(Val):
    pass


@dataclass
class VPiC(Val):
    dom: Val
    cod: object


@dataclass
class VSigC(Val):
    dom: Val
    cod: object


@dataclass
class VIdC(Val):
    ty: Val
    lhs: Val
    rhs: Val


@dataclass
class VLeqC(Val):
    lo: Val
    hi: Val


@dataclass
class VExC(Val):
    body: object


@dataclass
class VForC(Val):
    body: object


# --- neutrals -----------------------------------------------------------


@dataclass
class HVar:
    lvl: int


@dataclass
class HConst:
    name: str


@dataclass
class HFix:
    fn: Val


@dataclass
class HFixBeta:
    fn: Val


@dataclass
class HFunext:
    fnty: Val
    lhs: Val
    rhs: Val


@dataclass
class FApp:
    arg: Val


@dataclass
class FForApp:
    size: Val


@dataclass
class FProj1:
    pass


@dataclass
class FProj2:
    pass


@dataclass
class FJ:
    motive: object  # closure, 3 args
    base: object    # closure, 1 arg
    lhs: Val
    rhs: Val


@dataclass
class FBotInd:
    motive: object


@dataclass
class FTopInd:
    motive: object
    base: Val


@dataclass
class FBoolInd:
    motive: object
    on_tt: Val
    on_ff: Val


@dataclass
class FExInd:
    motive: object
    branch: object  # closure, 2 args


@dataclass
class VNeutral(Val):
    head: object
    spine: tuple


def fresh(depth: int) -> VNeutral:
    return VNeutral(HVar(depth), ())


def _extend(n: VNeutral, frame) -> VNeutral:
    return VNeutral(n.head, n.spine + (frame,))


# --- evaluation ---------------------------------------------------------


def do_app(f: Val, a: Val) -> Val:
    if isinstance(f, VLam):
        return f.clo(a)
    if isinstance(f, VNeutral):
        return _extend(f, FApp(a))
    raise EvalError("application of a non-function value")


def do_forapp(f: Val, s: Val) -> Val:
    if isinstance(f, VForLam):
        return f.clo(s)
    if isinstance(f, VNeutral):
        return _extend(f, FForApp(s))
    raise EvalError("size application of a non-abstraction value")


def do_proj1(p: Val) -> Val:
    if isinstance(p, VPair):
        return p.fst
    if isinstance(p, VNeutral):
        return _extend(p, FProj1())
    raise EvalError("first projection of a non-pair value")


def do_proj2(p: Val) -> Val:
    if isinstance(p, VPair):
        return p.snd
    if isinstance(p, VNeutral):
        return _extend(p, FProj2())
    raise EvalError("second projection of a non-pair value")


def do_j(motive, base, lhs: Val, rhs: Val, path: Val) -> Val:
    if isinstance(path, VRefl):
        return base(path.arg)
    if isinstance(path, VNeutral):
        return _extend(path, FJ(motive, base, lhs, rhs))
    raise EvalError("path induction on a non-path value")


def do_botind(motive, scrut: Val) -> Val:
    if isinstance(scrut, VNeutral):
        return _extend(scrut, FBotInd(motive))
    raise EvalError("empty elimination of a non-neutral value")


def do_topind(motive, base: Val, scrut: Val) -> Val:
    if isinstance(scrut, VStar):
        return base
    if isinstance(scrut, VNeutral):
        return _extend(scrut, FTopInd(motive, base))
    raise EvalError("unit elimination of a non-unit value")


def do_boolind(motive, on_tt: Val, on_ff: Val, scrut: Val) -> Val:
    if isinstance(scrut, VTt):
        return on_tt
    if isinstance(scrut, VFf):
        return on_ff
    if isinstance(scrut, VNeutral):
        return _extend(scrut, FBoolInd(motive, on_tt, on_ff))
    raise EvalError("boolean elimination of a non-boolean value")


def do_exind(motive, branch, scrut: Val) -> Val:
    if isinstance(scrut, VExPair):
        return branch(scrut.size, scrut.witness)
    if isinstance(scrut, VNeutral):
        return _extend(scrut, FExInd(motive, branch))
    raise EvalError("existential elimination of a non-package value")


def do_el(c: Val) -> Val:
    if isinstance(c, VBotC):
        return VBot()
    if isinstance(c, VTopC):
        return VTop()
    if isinstance(c, VBoolC):
        return VBool()
    if isinstance(c, VPiC):
        cod = c.cod
        return VPi(do_el(c.dom), NativeClosure(lambda v: do_el(cod(v))))
    if isinstance(c, VSigC):
        cod = c.cod
        return VSigma(do_el(c.dom), NativeClosure(lambda v: do_el(cod(v))))
    if isinstance(c, VIdC):
        return VId(do_el(c.ty), c.lhs, c.rhs)
    if isinstance(c, (VLeqC, VExC, VForC, VNeutral)):
        return VEl(c)
    raise EvalError("El of a non-code value")


def evaluate(t: T.Term, env: tuple, gl: dict) -> Val:
    match t:
        case T.Var(i):
            return env[-1 - i]
        case T.U():
            return VU()
        case T.El(c):
            return do_el(evaluate(c, env, gl))
        case T.Pi(d, c):
            return VPi(evaluate(d, env, gl), Closure(gl, env, c))
        case T.Lam(b):
            return VLam(Closure(gl, env, b))
        case T.App(f, a):
            return do_app(evaluate(f, env, gl), evaluate(a, env, gl))
        case T.Sigma(d, c):
            return VSigma(evaluate(d, env, gl), Closure(gl, env, c))
        case T.Pair(a, b):
            return VPair(evaluate(a, env, gl), evaluate(b, env, gl))
        case T.Proj1(p):
            return do_proj1(evaluate(p, env, gl))
        case T.Proj2(p):
            return do_proj2(evaluate(p, env, gl))
        case T.Id(ty, l, r):
            return VId(evaluate(ty, env, gl), evaluate(l, env, gl),
                       evaluate(r, env, gl))
        case T.Refl(a):
            return VRefl(evaluate(a, env, gl))
        case T.J(m, b, l, r, p):
            return do_j(Closure(gl, env, m), Closure(gl, env, b),
                        evaluate(l, env, gl), evaluate(r, env, gl),
                        evaluate(p, env, gl))
        case T.Bot():
            return VBot()
        case T.BotInd(m, s):
            return do_botind(Closure(gl, env, m), evaluate(s, env, gl))
        case T.Top():
            return VTop()
        case T.Star():
            return VStar()
        case T.TopInd(m, b, s):
            return do_topind(Closure(gl, env, m), evaluate(b, env, gl),
                             evaluate(s, env, gl))
        case T.Bool():
            return VBool()
        case T.Tt():
            return VTt()
        case T.Ff():
            return VFf()
        case T.BoolInd(m, bt, bf, s):
            return do_boolind(Closure(gl, env, m), evaluate(bt, env, gl),
                              evaluate(bf, env, gl), evaluate(s, env, gl))
        case T.Size():
            return VSize()
        case T.Sz0():
            return VSz0()
        case T.SzSuc(a):
            return VSzSuc(evaluate(a, env, gl))
        case T.LeqCode(lo, hi):
            return VLeqC(evaluate(lo, env, gl), evaluate(hi, env, gl))
        case T.Const(n):
            entry = gl.get(n)
            if entry is None:
                raise EvalError(f"unknown constant {n}")
            if entry.value is not None:
                return entry.value
            return VNeutral(HConst(n), ())
        case T.Fix(f):
            return VNeutral(HFix(evaluate(f, env, gl)), ())
        case T.FixBeta(f):
            return VNeutral(HFixBeta(evaluate(f, env, gl)), ())
        case T.Funext(ty, f, g):
            return VNeutral(HFunext(evaluate(ty, env, gl),
                                    evaluate(f, env, gl),
                                    evaluate(g, env, gl)), ())
        case T.ExistsCode(b):
            return VExC(Closure(gl, env, b))
        case T.ExPair(s, w):
            return VExPair(evaluate(s, env, gl), evaluate(w, env, gl))
        case T.ExInd(m, br, s):
            return do_exind(Closure(gl, env, m), Closure(gl, env, br),
                            evaluate(s, env, gl))
        case T.ForallCode(b):
            return VForC(Closure(gl, env, b))
        case T.ForLam(b):
            return VForLam(Closure(gl, env, b))
        case T.ForApp(f, s):
            return do_forapp(evaluate(f, env, gl), evaluate(s, env, gl))
        case T.BotCode():
            return VBotC()
        case T.TopCode():
            return VTopC()
        case T.BoolCode():
            return VBoolC()
        case T.PiCode(d, c):
            return VPiC(evaluate(d, env, gl), Closure(gl, env, c))
        case T.SigCode(d, c):
            return VSigC(evaluate(d, env, gl), Closure(gl, env, c))
        case T.IdCode(ty, l, r):
            return VIdC(evaluate(ty, env, gl), evaluate(l, env, gl),
                        evaluate(r, env, gl))
    raise EvalError(f"no evaluation rule for {type(t).__name__}")


# --- readback -----------------------------------------------------------


def _rb_clo(depth: int, clo, arity: int = 1) -> T.Term:
    vs = tuple(fresh(depth + k) for k in range(arity))
    return readback(depth + arity, clo(*vs))


def readback(depth: int, v: Val) -> T.Term:
    match v:
        case VNeutral(head, spine):
            acc = _rb_head(depth, head)
            for fr in spine:
                acc = _rb_frame(depth, acc, fr)
            return acc
        case VU():
            return T.U()
        case VBot():
            return T.Bot()
        case VTop():
            return T.Top()
        case VBool():
            return T.Bool()
        case VSize():
            return T.Size()
        case VPi(d, c):
            return T.Pi(readback(depth, d), _rb_clo(depth, c))
        case VSigma(d, c):
            return T.Sigma(readback(depth, d), _rb_clo(depth, c))
        case VId(ty, l, r):
            return T.Id(readback(depth, ty), readback(depth, l),
                        readback(depth, r))
        case VEl(c):
            return T.El(readback(depth, c))
        case VStar():
            return T.Star()
        case VTt():
            return T.Tt()
        case VFf():
            return T.Ff()
        case VSz0():
            return T.Sz0()
        case VSzSuc(a):
            return T.SzSuc(readback(depth, a))
        case VRefl(a):
            return T.Refl(readback(depth, a))
        case VLam(c):
            return T.Lam(_rb_clo(depth, c))
        case VPair(a, b):
            return T.Pair(readback(depth, a), readback(depth, b))
        case VForLam(c):
            return T.ForLam(_rb_clo(depth, c))
        case VExPair(s, w):
            return T.ExPair(readback(depth, s), readback(depth, w))
        case VBotC():
            return T.BotCode()
        case VTopC():
            return T.TopCode()
        case VBoolC():
            return T.BoolCode()
        case VPiC(d, c):
            return T.PiCode(readback(depth, d), _rb_clo(depth, c))
        case VSigC(d, c):
            return T.SigCode(readback(depth, d), _rb_clo(depth, c))
        case VIdC(ty, l, r):
            return T.IdCode(readback(depth, ty), readback(depth, l),
                            readback(depth, r))
        case VLeqC(lo, hi):
            return T.LeqCode(readback(depth, lo), readback(depth, hi))
        case VExC(b):
            return T.ExistsCode(_rb_clo(depth, b))
        case VForC(b):
            return T.ForallCode(_rb_clo(depth, b))
    raise EvalError(f"no readback for {type(v).__name__}")


def _rb_head(depth: int, head) -> T.Term:
    if isinstance(head, HVar):
        return T.Var(depth - 1 - head.lvl)
    if isinstance(head, HConst):
        return T.Const(head.name)
    if isinstance(head, HFix):
        return T.Fix(readback(depth, head.fn))
    if isinstance(head, HFixBeta):
        return T.FixBeta(readback(depth, head.fn))
    if isinstance(head, HFunext):
        return T.Funext(readback(depth, head.fnty),
                        readback(depth, head.lhs), readback(depth, head.rhs))
    raise EvalError("unknown neutral head")


def _rb_frame(depth: int, acc: T.Term, fr) -> T.Term:
    if isinstance(fr, FApp):
        return T.App(acc, readback(depth, fr.arg))
    if isinstance(fr, FForApp):
        return T.ForApp(acc, readback(depth, fr.size))
    if isinstance(fr, FProj1):
        return T.Proj1(acc)
    if isinstance(fr, FProj2):
        return T.Proj2(acc)
    if isinstance(fr, FJ):
        return T.J(_rb_clo(depth, fr.motive, 3), _rb_clo(depth, fr.base),
                   readback(depth, fr.lhs), readback(depth, fr.rhs), acc)
    if isinstance(fr, FBotInd):
        return T.BotInd(_rb_clo(depth, fr.motive), acc)
    if isinstance(fr, FTopInd):
        return T.TopInd(_rb_clo(depth, fr.motive),
                        readback(depth, fr.base), acc)
    if isinstance(fr, FBoolInd):
        return T.BoolInd(_rb_clo(depth, fr.motive),
                         readback(depth, fr.on_tt),
                         readback(depth, fr.on_ff), acc)
    if isinstance(fr, FExInd):
        return T.ExInd(_rb_clo(depth, fr.motive),
                       _rb_clo(depth, fr.branch, 2), acc)
    raise EvalError("unknown spine frame")


# --- conversion ----------------------------------------------------------


def convert(depth: int, a: Val, b: Val, ty: Optional[Val] = None) -> bool:
    """Definitional equality of two values of the given type.  Eta applies
    at Pi and universal-quantifier types (compare under a fresh argument)
    and at Sigma types (compare projections).  With no type, or at any
    other type, comparison is structural on weak-head forms, still chasing
    eta when an abstraction or pair meets a neutral."""
    if a is b:
        return True
    if isinstance(ty, VPi):
        x = fresh(depth)
        return convert(depth + 1, do_app(a, x), do_app(b, x), ty.cod(x))
    if isinstance(ty, VEl) and isinstance(ty.code, VForC):
        x = fresh(depth)
        return convert(depth + 1, do_forapp(a, x), do_forapp(b, x),
                       do_el(ty.code.body(x)))
    if isinstance(ty, VSigma):
        a1 = do_proj1(a)
        if not convert(depth, a1, do_proj1(b), ty.dom):
            return False
        return convert(depth, do_proj2(a), do_proj2(b), ty.cod(a1))
    return _conv_val(depth, a, b)


def _conv_clo(depth: int, c1, c2, arity: int = 1) -> bool:
    if c1 is c2:
        return True
    vs = tuple(fresh(depth + k) for k in range(arity))
    return _conv_val(depth + arity, c1(*vs), c2(*vs))


def _conv_val(depth: int, a: Val, b: Val) -> bool:
    if a is b:
        return True
    # untyped eta: an abstraction or pair against anything applicable
    if isinstance(a, VLam) or isinstance(b, VLam):
        if not all(isinstance(v, (VLam, VNeutral)) for v in (a, b)):
            return False
        x = fresh(depth)
        return _conv_val(depth + 1, do_app(a, x), do_app(b, x))
    if isinstance(a, VForLam) or isinstance(b, VForLam):
        if not all(isinstance(v, (VForLam, VNeutral)) for v in (a, b)):
            return False
        x = fresh(depth)
        return _conv_val(depth + 1, do_forapp(a, x), do_forapp(b, x))
    if isinstance(a, VPair) or isinstance(b, VPair):
        if not all(isinstance(v, (VPair, VNeutral)) for v in (a, b)):
            return False
        return (_conv_val(depth, do_proj1(a), do_proj1(b))
                and _conv_val(depth, do_proj2(a), do_proj2(b)))
    if type(a) is not type(b):
        return False
    match a:
        case VNeutral():
            return _conv_neutral(depth, a, b)
        case VU() | VBot() | VTop() | VBool() | VSize() | VStar() | VTt() \
                | VFf() | VSz0() | VBotC() | VTopC() | VBoolC():
            return True
        case VPi(d, c) | VSigma(d, c):
            return (_conv_val(depth, d, b.dom)
                    and _conv_clo(depth, c, b.cod))
        case VPiC(d, c) | VSigC(d, c):
            return (_conv_val(depth, d, b.dom)
                    and _conv_clo(depth, c, b.cod))
        case VId(ty, l, r):
            return (_conv_val(depth, ty, b.ty)
                    and _conv_val(depth, l, b.lhs)
                    and _conv_val(depth, r, b.rhs))
        case VIdC(ty, l, r):
            return (_conv_val(depth, ty, b.ty)
                    and _conv_val(depth, l, b.lhs)
                    and _conv_val(depth, r, b.rhs))
        case VEl(c):
            return _conv_val(depth, c, b.code)
        case VSzSuc(x):
            return _conv_val(depth, x, b.arg)
        case VRefl(x):
            return _conv_val(depth, x, b.arg)
        case VExPair(s, w):
            return (_conv_val(depth, s, b.size)
                    and _conv_val(depth, w, b.witness))
        case VLeqC(lo, hi):
            return (_conv_val(depth, lo, b.lo)
                    and _conv_val(depth, hi, b.hi))
        case VExC(c) | VForC(c):
            return _conv_clo(depth, c, b.body)
    return False


def _conv_neutral(depth: int, a: VNeutral, b: VNeutral) -> bool:
    if not _conv_head(depth, a.head, b.head):
        return False
    if len(a.spine) != len(b.spine):
        return False
    for fa, fb in zip(a.spine, b.spine):
        if not _conv_frame(depth, fa, fb):
            return False
    return True


def _conv_head(depth: int, ha, hb) -> bool:
    if type(ha) is not type(hb):
        return False
    if isinstance(ha, HVar):
        return ha.lvl == hb.lvl
    if isinstance(ha, HConst):
        return ha.name == hb.name
    if isinstance(ha, (HFix, HFixBeta)):
        return _conv_val(depth, ha.fn, hb.fn)
    if isinstance(ha, HFunext):
        return (_conv_val(depth, ha.fnty, hb.fnty)
                and _conv_val(depth, ha.lhs, hb.lhs)
                and _conv_val(depth, ha.rhs, hb.rhs))
    return False


def _conv_frame(depth: int, fa, fb) -> bool:
    if type(fa) is not type(fb):
        return False
    if isinstance(fa, FApp):
        return _conv_val(depth, fa.arg, fb.arg)
    if isinstance(fa, FForApp):
        return _conv_val(depth, fa.size, fb.size)
    if isinstance(fa, (FProj1, FProj2)):
        return True
    if isinstance(fa, FJ):
        return (_conv_clo(depth, fa.motive, fb.motive, 3)
                and _conv_clo(depth, fa.base, fb.base)
                and _conv_val(depth, fa.lhs, fb.lhs)
                and _conv_val(depth, fa.rhs, fb.rhs))
    if isinstance(fa, FBotInd):
        return _conv_clo(depth, fa.motive, fb.motive)
    if isinstance(fa, FTopInd):
        return (_conv_clo(depth, fa.motive, fb.motive)
                and _conv_val(depth, fa.base, fb.base))
    if isinstance(fa, FBoolInd):
        return (_conv_clo(depth, fa.motive, fb.motive)
                and _conv_val(depth, fa.on_tt, fb.on_tt)
                and _conv_val(depth, fa.on_ff, fb.on_ff))
    if isinstance(fa, FExInd):
        return (_conv_clo(depth, fa.motive, fb.motive)
                and _conv_clo(depth, fa.branch, fb.branch, 2))
    return False


def normalize(t: T.Term, env: tuple = (), gl: Optional[dict] = None,
              depth: int = 0) -> T.Term:
    return readback(depth, evaluate(t, env, gl if gl is not None else {}))
