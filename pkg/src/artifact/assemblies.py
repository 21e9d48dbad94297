"""Finite assemblies over the combinator algebra.

An assembly is a finite carrier of named elements together with a
realisability relation: finitely many (realiser, element) pairs where
every element is realised at least once.  Realisers are combinator
terms; opaque tokens are represented by atoms, so the same relation
type serves both the quotient construction (realisers never applied)
and tracking checks (realisers fed to a tracker term).

truncate_m quotients an assembly by the least equivalence relation
merging elements that share a realiser.  The quotient is modest by
construction: after merging, no realiser lies in two classes.  The
projection onto the quotient is tracked by the identity combinator,
since every realiser of an element realises its class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .pca import App, ClTerm, Diverged, IDENT, Pr, Var, bracket, reduce


@dataclass(frozen=True)
class FiniteAssembly:
    carrier: tuple[str, ...]
    realisers: frozenset[tuple[ClTerm, str]]

    def __post_init__(self) -> None:
        if len(set(self.carrier)) != len(self.carrier):
            raise ValueError("carrier elements must be distinct")
        elems = set(self.carrier)
        realised = set()
        for r, x in self.realisers:
            if x not in elems:
                raise ValueError(f"realiser pair names unknown element {x}")
            if not isinstance(r, ClTerm):
                raise ValueError("realisers must be combinator terms")
            realised.add(x)
        missing = elems - realised
        if missing:
            raise ValueError(f"elements without a realiser: {sorted(missing)}")

    @staticmethod
    def from_tokens(
        table: Mapping[str, Iterable[Union[str, ClTerm]]]
    ) -> "FiniteAssembly":
        """Build an assembly from element -> realiser lists; plain strings
        become opaque atoms."""
        pairs = set()
        for x, rs in table.items():
            for r in rs:
                pairs.add((Var(r) if isinstance(r, str) else r, x))
        return FiniteAssembly(tuple(table.keys()), frozenset(pairs))

    def tokens(self) -> frozenset[ClTerm]:
        return frozenset(r for r, _ in self.realisers)

    def realisers_of(self, x: str) -> frozenset[ClTerm]:
        return frozenset(r for r, y in self.realisers if y == x)


@dataclass(frozen=True)
class FinitePer:
    """A partial equivalence on realisers: disjoint nonempty classes."""

    classes: tuple[frozenset[ClTerm], ...]

    def __post_init__(self) -> None:
        seen: set[ClTerm] = set()
        for cls in self.classes:
            if not cls:
                raise ValueError("per classes must be nonempty")
            if seen & cls:
                raise ValueError("per classes must be disjoint")
            seen |= cls


@dataclass(frozen=True)
class TrackedMorphism:
    """A set map between carriers, a term claimed to track it, and the
    reduction budget the claim is checked under."""

    fn_table: Mapping[str, str]
    tracker: ClTerm
    fuel: int


def check_tracking(
    src: FiniteAssembly, dst: FiniteAssembly, m: TrackedMorphism
) -> bool:
    """Every realiser of every source element must be sent, within fuel,
    to a realiser of the element's image."""
    for x in src.carrier:
        if x not in m.fn_table:
            raise ValueError(f"fn_table is not total: missing {x}")
        if m.fn_table[x] not in set(dst.carrier):
            raise ValueError(f"fn_table leaves the target carrier at {x}")
    dst_norm: dict[str, set[ClTerm]] = {y: set() for y in dst.carrier}
    for r, y in dst.realisers:
        v = reduce(r, m.fuel)
        if not isinstance(v, Diverged):
            dst_norm[y].add(v)
    for r, x in src.realisers:
        v = reduce(App(m.tracker, r), m.fuel)
        if isinstance(v, Diverged):
            return False
        if v not in dst_norm[m.fn_table[x]]:
            return False
    return True


def is_modest(asm: FiniteAssembly) -> bool:
    """No realiser occurs for two distinct elements."""
    owner: dict[ClTerm, str] = {}
    for r, x in asm.realisers:
        if owner.setdefault(r, x) != x:
            return False
    return True


def per_of(asm: FiniteAssembly) -> FinitePer:
    """The per underlying a modest assembly: one class per element."""
    if not is_modest(asm):
        raise ValueError("assembly is not modest")
    return FinitePer(tuple(asm.realisers_of(x) for x in asm.carrier))


def truncate_m(asm: FiniteAssembly) -> tuple[FiniteAssembly, dict[str, str]]:
    """Quotient by realiser sharing, transitively.

    Returns the quotient assembly and the projection on elements.  Class
    names join the sorted member names with '|'.  Each class is realised
    by the union of its members' realisers, so the projection is tracked
    by the identity combinator.
    """
    parent = {x: x for x in asm.carrier}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: str, y: str) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    holders: dict[ClTerm, str] = {}
    for r, x in asm.realisers:
        if r in holders:
            union(holders[r], x)
        else:
            holders[r] = x

    members: dict[str, list[str]] = {}
    for x in asm.carrier:
        members.setdefault(find(x), []).append(x)
    names = {root: "|".join(sorted(ms)) for root, ms in members.items()}

    eta = {x: names[find(x)] for x in asm.carrier}
    seen: set[str] = set()
    carrier = tuple(
        names[find(x)]
        for x in asm.carrier
        if names[find(x)] not in seen and not seen.add(names[find(x)])
    )
    pairs = frozenset((r, eta[x]) for r, x in asm.realisers)
    return FiniteAssembly(carrier, pairs), eta


def eta_morphism(asm: FiniteAssembly, fuel: int) -> TrackedMorphism:
    """The projection of an assembly onto its quotient, identity-tracked."""
    _, eta = truncate_m(asm)
    return TrackedMorphism(eta, IDENT, fuel)


# --- the universal property, brute force -----------------------------------
#
# For the quotient tests realisers are opaque tokens and are never fed to
# the algebra; a map is tracked when some token function carries the
# realisability relation across.  That is the degenerate reading of
# tracking for token realisers, and it is what the factorisation below
# ranges over.


def tracked_maps(
    src: FiniteAssembly, dst: FiniteAssembly
) -> set[tuple[str, ...]]:
    """All token-tracked set maps, as image tuples in carrier order.
    For each candidate token function the per-element images are cut
    down by every realiser pair, then multiplied out."""
    src_toks = sorted(src.tokens(), key=str)
    dst_toks = sorted(dst.tokens(), key=str)
    if not src_toks:
        return {()} if not src.carrier else set()
    out: set[tuple[str, ...]] = set()
    for image in itertools.product(dst_toks, repeat=len(src_toks)):
        tr = dict(zip(src_toks, image))
        allowed: dict[str, set[str]] = {x: set(dst.carrier) for x in src.carrier}
        ok = True
        for r, x in src.realisers:
            allowed[x] &= {y for y in allowed[x] if (tr[r], y) in dst.realisers}
            if not allowed[x]:
                ok = False
                break
        if ok:
            out.update(
                itertools.product(*(sorted(allowed[x]) for x in src.carrier))
            )
    return out


def is_token_tracked(
    src: FiniteAssembly, dst: FiniteAssembly, g: Mapping[str, str]
) -> bool:
    return tuple(g[x] for x in src.carrier) in tracked_maps(src, dst)


def check_truncation_universal(a: FiniteAssembly, x: FiniteAssembly) -> bool:
    """Exactly one factorisation through the quotient: for every tracked
    g from a into the modest assembly x, exactly one map f from the
    quotient satisfies f after the projection equals g and is tracked."""
    if not is_modest(x):
        raise ValueError("target of the universal property must be modest")
    quotient, eta = truncate_m(a)
    g_maps = tracked_maps(a, x)
    f_maps = tracked_maps(quotient, x)
    cls_index = {c: i for i, c in enumerate(quotient.carrier)}
    for g in g_maps:
        count = 0
        for f in f_maps:
            if all(f[cls_index[eta[e]]] == g[i]
                   for i, e in enumerate(a.carrier)):
                count += 1
        if count != 1:
            return False
    return True


# --- binary products and pairing of trackers -------------------------------


def pair_name(y: str, z: str) -> str:
    return f"({y},{z})"


def pair_assembly(b: FiniteAssembly, c: FiniteAssembly) -> FiniteAssembly:
    """Product assembly: pairs of elements, realised by paired realisers."""
    carrier = tuple(pair_name(y, z) for y in b.carrier for z in c.carrier)
    pairs = frozenset(
        (Pr()(r, s), pair_name(y, z))
        for r, y in b.realisers
        for s, z in c.realisers
    )
    return FiniteAssembly(carrier, pairs)


def pair_tracker(d: ClTerm, e: ClTerm) -> ClTerm:
    """Track the pairing of two tracked maps: send a realiser n to the
    pair of d n and e n.  d and e must be closed terms."""
    n = Var("n")
    return bracket("n", Pr()(App(d, n), App(e, n)))


def pair_morphism(
    mf: TrackedMorphism, ma: TrackedMorphism, fuel: int
) -> TrackedMorphism:
    """The pairing of two morphisms out of a common source."""
    if set(mf.fn_table) != set(ma.fn_table):
        raise ValueError("paired morphisms must share their source carrier")
    table = {x: pair_name(mf.fn_table[x], ma.fn_table[x]) for x in mf.fn_table}
    return TrackedMorphism(table, pair_tracker(mf.tracker, ma.tracker), fuel)
