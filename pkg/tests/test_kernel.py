"""Typing rules, fixpoints, the extensionality former, axiom tracking."""

import pytest

from artifact import kernel as K
from artifact import terms as T
from artifact.errors import (AxiomOutsidePrelude, CannotInfer, DuplicateName,
                             FixShapeMismatch, SmallnessViolation,
                             TypeMismatch, UnboundVariable, UnknownName)
from artifact.semantics import VId, VPi, VSigma, VU, normalize


@pytest.fixture()
def ctx():
    return K.base_context()


def has_type(ctx, t, ty):
    K.check(ctx, t, K.check_is_type(ctx, ty))


def rejects(ctx, t, ty, exc=TypeMismatch):
    with pytest.raises(exc):
        K.check(ctx, t, K.check_is_type(ctx, ty))


BOOL2BOOL = T.Pi(T.Bool(), T.Bool())
IDFN = T.Lam(T.Var(0))


def test_builtin_ordering_constants(ctx):
    for name in ("le0", "lesuc", "lerefl", "letrans", "leeq"):
        assert name in ctx.globals
        assert not ctx.globals[name].is_axiom


def test_polymorphic_identity(ctx):
    ty = T.Pi(T.U(), T.Pi(T.El(T.Var(0)), T.El(T.Var(1))))
    has_type(ctx, T.Lam(T.Lam(T.Var(0))), ty)


def test_constructor_at_wrong_type_rejected(ctx):
    rejects(ctx, T.Star(), T.Bool())
    rejects(ctx, T.Tt(), T.Top())


def test_unbound_variable(ctx):
    with pytest.raises(UnboundVariable):
        K.infer(ctx, T.Var(0))


def test_unknown_name(ctx):
    with pytest.raises(UnknownName):
        K.infer(ctx, T.Const("nope"))


def test_el_computes_in_checking(ctx):
    has_type(ctx, IDFN, T.El(T.PiCode(T.BoolCode(), T.BoolCode())))


def test_dependent_pair(ctx):
    # (b, refl b) : (b : Bool) ** Id Bool b b
    ty = T.Sigma(T.Bool(), T.Id(T.Bool(), T.Var(0), T.Var(0)))
    has_type(ctx, T.Pair(T.Tt(), T.Refl(T.Tt())), ty)
    rejects(ctx, T.Pair(T.Tt(), T.Refl(T.Ff())), ty)


def test_j_infers_and_computes(ctx):
    t = T.J(T.Bool(), T.Var(0), T.Tt(), T.Tt(), T.Refl(T.Tt()))
    assert isinstance(K.infer(ctx, t), type(K.check_is_type(ctx, T.Bool())))
    assert normalize(t, (), ctx.globals) == T.Tt()


def test_codes_live_in_universe(ctx):
    assert isinstance(K.infer(ctx, T.PiCode(T.BoolCode(), T.TopCode())), VU)
    assert isinstance(K.infer(ctx, T.LeqCode(T.Sz0(), T.Sz0())), VU)
    assert isinstance(K.infer(ctx, T.ExistsCode(T.BoolCode())), VU)
    assert isinstance(K.infer(ctx, T.ForallCode(T.BoolCode())), VU)


def test_quantifier_bodies_must_be_small(ctx):
    with pytest.raises(SmallnessViolation):
        K.infer(ctx, T.ExistsCode(T.Size()))
    with pytest.raises(SmallnessViolation):
        K.infer(ctx, T.ForallCode(T.U()))
    with pytest.raises(SmallnessViolation):
        K.infer(ctx, T.ExistsCode(T.Pi(T.Bool(), T.Bool())))


def test_exind_motive_must_be_small(ctx):
    K.check_decl(ctx, "pk", T.El(T.ExistsCode(T.BoolCode())),
                 T.ExPair(T.Sz0(), T.Tt()), owner="t")
    pk = T.Const("pk")
    # fine: motive is a code
    t = T.ExInd(T.BoolCode(), T.Var(0), pk)
    K.check(ctx, t, K.check_is_type(ctx, T.Bool()))
    # large motive rejected
    with pytest.raises(SmallnessViolation):
        K.infer(ctx, T.ExInd(T.Bool(), T.Var(0), pk))


def test_abstractions_cannot_be_inferred(ctx):
    with pytest.raises(CannotInfer):
        K.infer(ctx, IDFN)
    with pytest.raises(CannotInfer):
        K.infer(ctx, T.Pair(T.Tt(), T.Tt()))


def test_conversion_unfolds_definitions(ctx):
    K.check_decl(ctx, "myBool", T.U(), T.BoolCode(), owner="t")
    has_type(ctx, T.Tt(), T.El(T.Const("myBool")))


def test_duplicate_name_rejected(ctx):
    K.check_decl(ctx, "d", T.Bool(), T.Tt(), owner="t")
    with pytest.raises(DuplicateName):
        K.check_decl(ctx, "d", T.Bool(), T.Tt(), owner="t")


def test_axiom_placement(ctx):
    with pytest.raises(AxiomOutsidePrelude):
        K.check_decl(ctx, "ax", T.Bool(), None, owner="t")
    K.check_decl(ctx, "ax", T.Bool(), None, owner="t", allow_axioms=True)
    assert K.used_axioms(ctx, "ax") == {"ax"}
    K.check_decl(ctx, "ax2", T.Bool(), None, owner="prelude")
    assert ctx.globals["ax2"].is_axiom


def test_used_axioms_transitive(ctx):
    K.check_decl(ctx, "a1", T.Bool(), None, owner="prelude")
    K.check_decl(ctx, "uses", T.Bool(), T.Const("a1"), owner="t")
    K.check_decl(ctx, "uses2", T.Bool(), T.Const("uses"), owner="t")
    assert K.used_axioms(ctx, "uses2") == {"a1"}
    K.check_decl(ctx, "pure", T.Bool(), T.Tt(), owner="t")
    assert K.used_axioms(ctx, "pure") == set()


def test_builtins_are_not_axioms(ctx):
    K.check_decl(ctx, "r", T.El(T.LeqCode(T.Sz0(), T.Sz0())),
                 T.App(T.Const("lerefl"), T.Sz0()), owner="t")
    assert K.used_axioms(ctx, "r") == set()


# --- fixpoints -----------------------------------------------------------


def declare_const_fix(ctx):
    """Constant-true recursive family over sizes, with its unfolding law."""
    recty = T.Pi(T.Size(), T.Pi(T.El(T.LeqCode(T.SzSuc(T.Var(0)),
                                               T.Var(1))), T.Bool()))
    K.check_decl(ctx, "cfun", T.Pi(T.Size(), T.Pi(recty, T.Bool())),
                 T.Lam(T.Lam(T.Tt())), owner="t")
    K.check_decl(ctx, "cfix", T.Pi(T.Size(), T.Bool()),
                 T.Fix(T.Const("cfun")), owner="t")
    fbty = T.Pi(T.Size(), T.Id(
        T.Bool(),
        T.App(T.Const("cfix"), T.Var(0)),
        T.App(T.App(T.Const("cfun"), T.Var(0)),
              T.Lam(T.Lam(T.App(T.Const("cfix"), T.Var(1)))))))
    K.check_decl(ctx, "cfixb", fbty, T.FixBeta(T.Const("cfun")), owner="t")


def test_fix_and_unfolding_law(ctx):
    declare_const_fix(ctx)


def test_fix_needs_size_domain(ctx):
    rejects(ctx, T.Fix(T.Lam(T.Lam(T.Tt()))), T.Pi(T.Bool(), T.Bool()),
            FixShapeMismatch)


def test_fix_body_shape_checked(ctx):
    # recursive argument used at the wrong type
    bad = T.Lam(T.Lam(T.App(T.App(T.Var(0), T.Var(1)), T.Tt())))
    rejects(ctx, T.Fix(bad), T.Pi(T.Size(), T.Bool()), TypeMismatch)


def test_fixbeta_endpoints_verified(ctx):
    declare_const_fix(ctx)
    bad = T.Pi(T.Size(), T.Id(T.Bool(),
                              T.App(T.Const("cfix"), T.Var(0)), T.Ff()))
    rejects(ctx, T.FixBeta(T.Const("cfun")), bad, FixShapeMismatch)


def test_fix_is_definitionally_opaque(ctx):
    declare_const_fix(ctx)
    # cfix 0 does not reduce to tt, so refl does not prove the unfolding
    stmt = T.Id(T.Bool(), T.App(T.Const("cfix"), T.Sz0()), T.Tt())
    rejects(ctx, T.Refl(T.App(T.Const("cfix"), T.Sz0())), stmt)
    # but the law instantiated at 0 proves it
    has_type(ctx, T.App(T.Const("cfixb"), T.Sz0()), stmt)


# --- the extensionality former --------------------------------------------


def equiv_statement(xc, yc, hap):
    """Coherent-equivalence statement for hap : El xc -> El yc, spelled the
    way the library states it.  Closed codes and a closed hap only."""
    X = T.El(xc)
    Y = T.El(yc)
    inv_ty = T.Pi(Y, X)
    eta_ty = T.Pi(X, T.Id(X, T.App(T.Var(1), T.App(hap, T.Var(0))),
                          T.Var(0)))
    eps_ty = T.Pi(Y, T.Id(Y, T.App(hap, T.App(T.Var(2), T.Var(0))),
                          T.Var(0)))
    hp = T.App(hap, T.Var(0))
    ap_term = T.J(T.Id(Y, T.App(hap, T.Var(2)), T.App(hap, T.Var(1))),
                  T.Refl(T.App(hap, T.Var(0))),
                  T.App(T.Var(3), hp), T.Var(0),
                  T.App(T.Var(2), T.Var(0)))
    coh_ty = T.Pi(X, T.Id(
        T.Id(Y, T.App(hap, T.App(T.Var(3), hp)), hp),
        ap_term,
        T.App(T.Var(1), hp)))
    return T.Sigma(inv_ty, T.Sigma(eta_ty, T.Sigma(eps_ty, coh_ty)))


def small_pi_instance(ctx):
    fc = T.PiCode(T.BoolCode(), T.BoolCode())
    K.check_decl(ctx, "idb", T.El(fc), IDFN, owner="t")
    f = T.Const("idb")
    xc = T.IdCode(fc, f, f)
    yc = T.PiCode(T.BoolCode(),
                  T.IdCode(T.BoolCode(), T.App(f, T.Var(0)),
                           T.App(f, T.Var(0))))
    motive = T.Pi(T.El(T.BoolCode()),
                  T.Id(T.El(T.BoolCode()), T.App(T.Var(3), T.Var(0)),
                       T.App(T.Var(2), T.Var(0))))
    hap = T.Lam(T.J(motive, T.Lam(T.Refl(T.App(T.Var(1), T.Var(0)))),
                    f, f, T.Var(0)))
    K.check_decl(ctx, "hapb", T.Pi(T.El(xc), T.El(yc)), hap, owner="t")
    return fc, f, equiv_statement(xc, yc, T.Const("hapb"))


def test_funext_at_small_function_type(ctx):
    fc, f, stmt = small_pi_instance(ctx)
    has_type(ctx, T.Funext(T.El(fc), f, f), stmt)


def test_funext_at_size_quantifier(ctx):
    fc = T.ForallCode(T.BoolCode())
    K.check_decl(ctx, "fall", T.El(fc), T.ForLam(T.Tt()), owner="t")
    f = T.Const("fall")
    xc = T.IdCode(fc, f, f)
    yc = T.ForallCode(T.IdCode(T.BoolCode(), T.ForApp(f, T.Var(0)),
                               T.ForApp(f, T.Var(0))))
    motive = T.El(T.ForallCode(T.IdCode(
        T.BoolCode(), T.ForApp(T.Var(3), T.Var(0)),
        T.ForApp(T.Var(2), T.Var(0)))))
    hap = T.Lam(T.J(motive, T.ForLam(T.Refl(T.ForApp(T.Var(1), T.Var(0)))),
                    f, f, T.Var(0)))
    K.check_decl(ctx, "hapf", T.Pi(T.El(xc), T.El(yc)), hap, owner="t")
    stmt = equiv_statement(xc, yc, T.Const("hapf"))
    has_type(ctx, T.Funext(T.El(fc), f, f), stmt)


def test_funext_rejects_other_types(ctx):
    with pytest.raises(TypeMismatch):
        K.infer(ctx, T.Funext(T.Bool(), T.Tt(), T.Tt()))


def test_funext_counts_as_axiom_use(ctx):
    fc, f, stmt = small_pi_instance(ctx)
    fe = T.Funext(T.El(fc), f, f)
    assert isinstance(K.infer(ctx, fe), VSigma)
    K.check_decl(ctx, "fe", stmt, fe, owner="t")
    assert K.used_axioms(ctx, "fe") == {"funext"}


def test_funext_instances_at_same_arguments_are_equal(ctx):
    fc = T.PiCode(T.BoolCode(), T.BoolCode())
    fe = T.Funext(T.El(fc), IDFN, IDFN)
    a = normalize(fe, (), ctx.globals)
    b = normalize(fe, (), ctx.globals)
    assert a == b
