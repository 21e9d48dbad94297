"""Deterministic generators for the definitional-equality suites.

Terms are generated together with their types, bottom-up, so every
output checks by construction; the tests re-check them against the
kernel anyway to guard the generator itself.  The smallness mutants
are the same shapes with a deliberately large former planted in a
position that must be small.
"""

import random

from artifact import terms as T

# Codes usable as quantifier bodies and product components.
SMALL_CODES = [
    T.BoolCode(),
    T.TopCode(),
    T.SigCode(T.BoolCode(), T.TopCode()),
    T.PiCode(T.BoolCode(), T.BoolCode()),
]

LARGE_FORMERS = [
    T.U(),
    T.Size(),
    T.Bool(),
    T.Top(),
    T.Bot(),
    T.Pi(T.Bool(), T.Bool()),
    T.Pi(T.U(), T.U()),
    T.Sigma(T.Bool(), T.Top()),
    T.Sigma(T.Top(), T.Bool()),
    T.Id(T.Bool(), T.Tt(), T.Tt()),
    T.Id(T.Top(), T.Star(), T.Star()),
    T.El(T.BoolCode()),
    T.El(T.TopCode()),
    T.El(T.PiCode(T.BoolCode(), T.BoolCode())),
    T.Pi(T.Bool(), T.U()),
    T.Sigma(T.Bool(), T.U()),
    T.Id(T.U(), T.BoolCode(), T.BoolCode()),
]


def el_ty(code: T.Term) -> T.Term:
    match code:
        case T.BoolCode():
            return T.Bool()
        case T.TopCode():
            return T.Top()
        case T.SigCode(d, c):
            return T.Sigma(el_ty(d), el_ty(c))
        case T.PiCode(d, c):
            return T.Pi(el_ty(d), el_ty(c))
    raise AssertionError(f"no element type for {code}")


class TypedGen:
    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def type_term(self) -> T.Term:
        pool = [
            T.Bool(), T.Top(), T.Size(), T.U(),
            T.Pi(T.Bool(), T.Bool()),
            T.Pi(T.Top(), T.Bool()),
            T.Sigma(T.Bool(), T.Top()),
            T.Sigma(T.Top(), T.Bool()),
            T.El(T.ExistsCode(self.rng.choice(SMALL_CODES))),
            T.El(T.ForallCode(self.rng.choice(SMALL_CODES))),
        ]
        return self.rng.choice(pool)

    def term(self, ty: T.Term, depth: int, env: tuple = ()) -> T.Term:
        r = self.rng
        # a variable of exactly this type, sometimes
        hits = [i for i, t in enumerate(env) if t == ty]
        if hits and r.random() < 0.3:
            return T.Var(r.choice(hits))
        if depth > 0 and r.random() < 0.25:
            # wrap in a beta redex; the cut must be inferable, so stick
            # to types whose terms all are
            cut = r.choice([T.Bool(), T.Top(), T.Size(), T.U()])
            body = self.term(ty, depth - 1, (cut,) + env)
            return T.App(T.Lam(body), self.term(cut, depth - 1, env))
        match ty:
            case T.Bool():
                if depth <= 0:
                    return r.choice([T.Tt(), T.Ff()])
                return r.choice([
                    lambda: T.Tt(),
                    lambda: T.Ff(),
                    lambda: T.BoolInd(T.Bool(),
                                      self.term(T.Bool(), depth - 1, env),
                                      self.term(T.Bool(), depth - 1, env),
                                      self.term(T.Bool(), depth - 1, env)),
                    lambda: T.TopInd(T.Bool(),
                                     self.term(T.Bool(), depth - 1, env),
                                     self.term(T.Top(), depth - 1, env)),
                ])()
            case T.Top():
                return T.Star()
            case T.Size():
                if depth <= 0:
                    return T.Sz0()
                return r.choice([
                    lambda: T.Sz0(),
                    lambda: T.SzSuc(self.term(T.Size(), depth - 1, env)),
                ])()
            case T.U():
                if depth <= 0:
                    return r.choice([T.BoolCode(), T.TopCode(), T.BotCode()])
                return r.choice([
                    lambda: T.BoolCode(),
                    lambda: T.TopCode(),
                    lambda: T.BotCode(),
                    # cods bind an element var, so keep them closed
                    lambda: T.PiCode(self.term(T.U(), depth - 1, env),
                                     self.term(T.U(), 0, ())),
                    lambda: T.SigCode(self.term(T.U(), depth - 1, env),
                                      self.term(T.U(), 0, ())),
                    lambda: T.IdCode(T.BoolCode(),
                                     self.term(T.Bool(), depth - 1, env),
                                     self.term(T.Bool(), depth - 1, env)),
                    lambda: T.LeqCode(self.term(T.Size(), depth - 1, env),
                                      self.term(T.Size(), depth - 1, env)),
                    lambda: T.ExistsCode(r.choice(SMALL_CODES)),
                    lambda: T.ForallCode(r.choice(SMALL_CODES)),
                ])()
            case T.Pi(dom, cod):
                return T.Lam(self.term(cod, depth - 1, (dom,) + env))
            case T.Sigma(dom, cod):
                return T.Pair(self.term(dom, depth - 1, env),
                              self.term(cod, depth - 1, env))
            case T.El(T.ExistsCode(c)):
                return T.ExPair(self.term(T.Size(), depth - 1, env),
                                self.term(el_ty(c), depth - 1, env))
            case T.El(T.ForallCode(c)):
                return T.ForLam(self.term(el_ty(c), depth - 1,
                                          (T.Size(),) + env))
        raise AssertionError(f"no productions for {ty}")


def typed_terms(n: int, seed: int = 2026) -> list[tuple[T.Term, T.Term]]:
    """n pairs (type, term), closed and well-typed."""
    g = TypedGen(seed)
    out = []
    for _ in range(n):
        ty = g.type_term()
        out.append((ty, g.term(ty, g.rng.randint(1, 4))))
    return out


def fix_cases(n: int, seed: int = 2027) -> list[tuple[T.Term, T.Term]]:
    """n pairs (f, s) to drive the opacity check on App(Fix f, s)."""
    g = TypedGen(seed)
    out = []
    for _ in range(n):
        body = g.term(T.Bool(), 2, (T.Size(), T.Pi(T.Bool(), T.Bool())))
        f = T.Lam(T.Lam(body))
        out.append((f, g.term(T.Size(), 2)))
    return out


def smallness_mutants(n: int, seed: int = 2028) -> list[tuple[str, T.Term]]:
    """n distinct ill-formed terms: a large former where a code is due.

    Each entry is (position, term); the term must be rejected when
    checked against U (quantifier cases) or inferred (eliminator
    motive cases, built over a package variable of type Var 0's).
    """
    rng = random.Random(seed)
    seen = set()
    out: list[tuple[str, T.Term]] = []
    while len(out) < n:
        pos = rng.choice(["ex-body", "for-body", "motive"])
        large = rng.choice(LARGE_FORMERS)
        if pos == "ex-body":
            t: T.Term = T.ExistsCode(large)
        elif pos == "for-body":
            t = T.ForallCode(large)
        else:
            t = T.ExInd(large, T.Tt(), T.Var(0))
        if (pos, t) in seen:
            continue
        seen.add((pos, t))
        out.append((pos, t))
    return out


# ---------------------------------------------------------------------------
# untyped combinator terms for the realisability suites

from artifact.pca import App, ClTerm, K, Pr, Pr1, Pr2, S  # noqa: E402

CL_LEAVES = [S(), K(), Pr(), Pr1(), Pr2()]


def random_clterm(rng: random.Random, size: int) -> ClTerm:
    """A random applicative term over the five combinators."""
    if size <= 1:
        return rng.choice(CL_LEAVES)
    left = rng.randint(1, size - 1)
    return App(random_clterm(rng, left), random_clterm(rng, size - left))
