"""Proof-producing term processing.

`process` rewrites a well-sorted core term to its processed form --
beta-normal, let-free, every binder renamed to a fresh canonical variable --
while emitting a certificate deriving `() |> t ~ u` in the calculus.  The
recursion mirrors the rules: Refl at leaves, Cong at applications, Beta at
redexes, Bind at binders, Let at lets, and Trans where the head of an
application itself reduces to a lambda-abstraction.

Also provides the two instantiation lemma generators.
"""

import itertools
from typing import NamedTuple

from . import core
from .calculus import Certificate, EqJudgment, LemmaFormula, ProofStep
from .context import EMPTY, apply_context
from .core import (App, Applied, Atom, Const, DivergenceError, Fun, Lam, Let,
                   Quant, Var, beta_step, binder_parts, fresh_var,
                   implies_term, make_binder, sort_of, substitute)
from .typecheck import ARITH_SYMBOLS, CORE_SYMBOLS, Signature


class ProcessResult(NamedTuple):
    term: object
    certificate: Certificate


def _is_normal(t):
    return beta_step(t) is None


def _plain(t):
    """True when t contains no binder and no let."""
    if isinstance(t, (Var, Const)):
        return True
    if isinstance(t, App):
        return _plain(t.fn) and _plain(t.arg)
    return False


def _used_names(t, out):
    if isinstance(t, (Var, Const)):
        out.add(t.name)
        return
    if isinstance(t, App):
        _used_names(t.fn, out)
        _used_names(t.arg, out)
        return
    bp = binder_parts(t)
    if bp is not None:
        out.add(bp[1].name)
        _used_names(bp[2], out)
        return
    for v, img in t.bindings:
        out.add(v.name)
        _used_names(img, out)
    _used_names(t.body, out)


def signature_for_term(t):
    """A minimal signature declaring the constants and sorts occurring in t."""
    sig = Signature()

    def add_sort(s):
        if isinstance(s, Atom):
            if s.name not in sig.sorts:
                sig.sorts[s.name] = 0
        elif isinstance(s, Applied):
            if s.name not in sig.sorts:
                sig.sorts[s.name] = len(s.args)
            for a in s.args:
                add_sort(a)
        else:
            add_sort(s.dom)
            add_sort(s.cod)

    def walk(u):
        if isinstance(u, Const):
            add_sort(u.sort)
            if (u.name not in sig.symbols and u.name not in CORE_SYMBOLS
                    and u.name not in ARITH_SYMBOLS and u.name != "="
                    and not u.name[0].isdigit()):
                sig.symbols[u.name] = u.sort
            return
        if isinstance(u, Var):
            add_sort(u.sort)
            return
        if isinstance(u, App):
            walk(u.fn)
            walk(u.arg)
            return
        bp = binder_parts(u)
        if bp is not None:
            add_sort(bp[1].sort)
            walk(bp[2])
            return
        for _, img in u.bindings:
            walk(img)
        walk(u.body)

    walk(t)
    return sig


class _Processor:
    def __init__(self, used_names, max_steps):
        self.steps = []
        self.memo = {}
        self.ids = itertools.count(1)
        self.used_names = used_names
        self.wcount = 0
        self.budget = max_steps

    def spend(self):
        self.budget -= 1
        if self.budget < 0:
            raise DivergenceError("processing exceeded the step cap")

    def fresh_name(self):
        while True:
            name = "w" if self.wcount == 0 else f"w{self.wcount}"
            self.wcount += 1
            if name not in self.used_names:
                self.used_names.add(name)
                return name

    def emit(self, rule, premises, ctx, lhs, rhs):
        step = ProofStep(f"s{next(self.ids)}", rule, tuple(premises),
                         EqJudgment(ctx, lhs, rhs))
        self.steps.append(step)
        return step

    def run(self, ctx, t):
        key = (ctx, t)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        res = self._dispatch(ctx, t)
        self.memo[key] = res
        return res

    def _dispatch(self, ctx, t):
        if isinstance(t, (Var, Const)):
            u = apply_context(ctx, t)
            return self.emit("refl", (), ctx, t, u), u
        # a term the context leaves alone and that needs no work: one refl
        if _plain(t) and apply_context(ctx, t) == t and _is_normal(t):
            return self.emit("refl", (), ctx, t, t), t
        if isinstance(t, App):
            return self._app(ctx, t)
        bp = binder_parts(t)
        if bp is not None:
            kind, x, body = bp
            if kind == "eps":
                raise ValueError("cannot process a term under a choice binder")
            y = fresh_var(self.fresh_name(), x.sort)
            ctx2 = ctx.fix(y).map([(x, y)])
            s, b2 = self.run(ctx2, body)
            u = make_binder(kind, y, b2)
            return self.emit("bind", (s.id,), ctx, t, u), u
        if isinstance(t, Let):
            val_ids = []
            pairs = []
            for v, img in t.bindings:
                s, img2 = self.run(ctx, img)
                val_ids.append(s.id)
                pairs.append((v, img2))
            ctx2 = ctx.map(pairs)
            sb, u = self.run(ctx2, t.body)
            return self.emit("let", (*val_ids, sb.id), ctx, t, u), u
        raise TypeError(f"not a core term: {t!r}")

    def _app(self, ctx, t):
        if isinstance(t.fn, Lam):
            s1, v2 = self.run(ctx, t.arg)
            ctx2 = ctx.map([(t.fn.var, v2)])
            s2, u = self.run(ctx2, t.fn.body)
            self.spend()
            return self.emit("beta", (s1.id, s2.id), ctx, t, u), u
        s1, f2 = self.run(ctx, t.fn)
        s2, a2 = self.run(ctx, t.arg)
        cong = self.emit("cong", (s1.id, s2.id), ctx, t, App(f2, a2))
        if not isinstance(f2, Lam):
            return cong, App(f2, a2)
        # the processed head became a lambda-abstraction: reduce the new
        # redex with a beta step and chain the two with trans
        refl = self.emit("refl", (), ctx, a2, a2)
        ctx2 = ctx.map([(f2.var, a2)])
        s3, u = self.run(ctx2, f2.body)
        self.spend()
        beta = self.emit("beta", (refl.id, s3.id), ctx, App(f2, a2), u)
        return self.emit("trans", (cong.id, beta.id), ctx, t, u), u


def process(t, signature=None, max_steps=core.DEFAULT_STEP_CAP):
    """Process t, returning (processed term, certificate of () |> t ~ u)."""
    sig = signature.copy() if signature is not None else signature_for_term(t)
    used = set(sig.symbols) | set(CORE_SYMBOLS)
    _used_names(t, used)
    proc = _Processor(used, max_steps)
    _, u = proc.run(EMPTY, t)
    return ProcessResult(u, Certificate(tuple(proc.steps), sig))


# ------------------------------------------------- instantiation lemmas

_inst_ids = itertools.count(1)


def _instantiate(phi, t, kind):
    bp = binder_parts(phi)
    if bp is None or bp[0] != kind:
        article = "a universal" if kind == "forall" else "an existential"
        raise ValueError(f"not {article}: {_kind_str(phi)}")
    _, x, body = bp
    if sort_of(t) != x.sort:
        raise ValueError(
            f"instantiation term has sort {core.sort_str(sort_of(t))}, "
            f"expected {core.sort_str(x.sort)}")
    inst = substitute(body, {x.id: t})
    if kind == "forall":
        formula = implies_term(phi, inst)
        rule = "inst_forall"
    else:
        formula = implies_term(inst, phi)
        rule = "inst_exists"
    step = ProofStep(f"i{next(_inst_ids)}", rule, (), LemmaFormula(formula),
                     binding=((x.name, t),))
    return LemmaFormula(formula), step


def _kind_str(t):
    bp = binder_parts(t)
    if bp is not None:
        return f"a {bp[0]} term"
    return f"a {type(t).__name__.lower()} term"


def instantiate_forall(phi, t):
    """The lemma (forall x. body) => body[x := t] with its inst step."""
    return _instantiate(phi, t, "forall")


def instantiate_exists(phi, t):
    """The lemma body[x := t] => (exists x. body) with its inst step."""
    return _instantiate(phi, t, "exists")
