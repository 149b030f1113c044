"""Signatures, well-sortedness, and elaboration of surface terms into core.

Declarations are normalized to fully curried sorts, so the three spellings
of a binary function declaration coincide; partial application is then
well-typed for every symbol.  Elaboration and sort inference happen in one
pass.
"""

from dataclasses import dataclass, field

from . import core, surface
from .core import (Applied, Atom, BOOL, Const, Fun, INT, REAL,
                   Lam, Let, Quant, Var, fresh_var, fun_sort, sort_of, sort_str)
from .sexpr import SourceError
from .surface import (CAssert, CDeclareFun, CDeclareSort, CDefineFun, CExit,
                      CSetLogic, CUnknown, SAnnot, SApply, SArrow, SBinder,
                      SId, SIdent, SLet, SLit, SMatch, SParam)


class SortError(SourceError):
    pass


BUILTIN_SORTS = {"Bool": 0, "Int": 0, "Real": 0}

_B2 = Fun(BOOL, Fun(BOOL, BOOL))
CORE_SYMBOLS = {
    "true": BOOL,
    "false": BOOL,
    "not": Fun(BOOL, BOOL),
    "and": _B2,
    "or": _B2,
    "xor": _B2,
    "=>": _B2,
}

_I2I = Fun(INT, Fun(INT, INT))
_I2B = Fun(INT, Fun(INT, BOOL))
ARITH_SYMBOLS = {
    "+": _I2I, "-": _I2I, "*": _I2I,
    "<=": _I2B, "<": _I2B, ">=": _I2B, ">": _I2B,
}


def logic_has_arith(logic):
    return logic is not None and ("IA" in logic or "RA" in logic or logic == "ALL")


@dataclass
class Signature:
    """Declared symbols and sort names.  Symbols map to curried core sorts."""

    symbols: dict = field(default_factory=dict)
    sorts: dict = field(default_factory=lambda: dict(BUILTIN_SORTS))

    def copy(self):
        return Signature(dict(self.symbols), dict(self.sorts))

    def declare_sort(self, name, arity, pos=(0, 0), filename="<input>"):
        if name in self.sorts:
            raise SortError(f"sort {name} declared twice", *pos, filename)
        self.sorts[name] = arity

    def declare_fun(self, name, sort, pos=(0, 0), filename="<input>"):
        if name in self.symbols or name in CORE_SYMBOLS:
            raise SortError(f"symbol {name} declared twice", *pos, filename)
        self.symbols[name] = sort

    def lookup(self, name, arith=False):
        if name in self.symbols:
            return self.symbols[name]
        if name in CORE_SYMBOLS:
            return CORE_SYMBOLS[name]
        if arith and name in ARITH_SYMBOLS:
            return ARITH_SYMBOLS[name]
        return None


class TypingEnv:
    """A signature plus a scoped stack of local binder variables."""

    def __init__(self, signature, arith=False, filename="<input>"):
        self.signature = signature
        self.arith = arith
        self.filename = filename
        self.scopes = []

    def push(self, vars_):
        self.scopes.append({v.name: v for v in vars_})

    def pop(self):
        self.scopes.pop()

    def lookup_var(self, name):
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return None


def normalize_sort(s, signature, filename="<input>"):
    """Surface sort to core sort, arrows fully curried right-associated."""
    if isinstance(s, SIdent):
        if s.name not in signature.sorts:
            raise SortError(f"unknown sort {s.name}", *s.pos, filename)
        if signature.sorts[s.name] != 0:
            raise SortError(f"sort {s.name} expects arguments", *s.pos, filename)
        return Atom(s.name)
    if isinstance(s, SParam):
        arity = signature.sorts.get(s.name)
        if arity is None:
            raise SortError(f"unknown sort {s.name}", *s.pos, filename)
        if arity != len(s.args):
            raise SortError(f"sort {s.name} expects {arity} arguments", *s.pos, filename)
        return Applied(s.name, tuple(normalize_sort(a, signature, filename)
                                     for a in s.args))
    if isinstance(s, SArrow):
        args = [normalize_sort(a, signature, filename) for a in s.args]
        return fun_sort(args, normalize_sort(s.result, signature, filename))
    raise TypeError(f"not a surface sort: {s!r}")


def normalize_decl(arg_sorts, result, signature=None, filename="<input>"):
    """Curried sort of a declaration: `f (A B) R` becomes A -> (B -> R')."""
    signature = signature if signature is not None else Signature()
    args = [normalize_sort(a, signature, filename) for a in arg_sorts]
    return fun_sort(args, normalize_sort(result, signature, filename))


def infer_sort(env, t):
    """Elaborate a surface term to core, returning (core term, sort)."""
    f = env.filename
    if isinstance(t, SLit):
        if t.kind == "numeral":
            return Const(t.text, INT), INT
        if t.kind == "decimal":
            return Const(t.text, REAL), REAL
        raise SortError("string literals have no sort here", *t.pos, f)
    if isinstance(t, SId):
        if t.name == "=":
            # = is polymorphic: a bare or partially applied occurrence
            # needs an ascription (as = (-> S S Bool)) naming its instance
            if t.ascribed is None:
                raise SortError("cannot infer a sort for bare =", *t.pos, f)
            s = normalize_sort(t.ascribed, env.signature, f)
            if not (isinstance(s, Fun) and isinstance(s.cod, Fun)
                    and s.cod.cod == BOOL and s.dom == s.cod.dom):
                raise SortError("= must be ascribed a sort (-> S S Bool)",
                                *t.pos, f)
            return Const("=", s), s
        v = env.lookup_var(t.name)
        if v is not None:
            result, s = v, v.sort
        else:
            s = env.signature.lookup(t.name, env.arith)
            if s is None:
                raise SortError(f"unbound symbol {t.name}", *t.pos, f)
            result = Const(t.name, s)
        if t.ascribed is not None:
            asc = normalize_sort(t.ascribed, env.signature, f)
            if asc != s:
                raise SortError(
                    f"sort ascription mismatch: expected {sort_str(asc)}, "
                    f"found {sort_str(s)}", *t.pos, f)
        return result, s
    if isinstance(t, SApply):
        if isinstance(t.head, SId) and t.head.name == "=" and t.head.ascribed is None:
            if len(t.args) != 2:
                raise SortError("= takes exactly two arguments", *t.pos, f)
            lhs, ls = infer_sort(env, t.args[0])
            rhs, rs = infer_sort(env, t.args[1])
            if ls != rs:
                raise SortError(
                    f"equality between different sorts: {sort_str(ls)} "
                    f"and {sort_str(rs)}", *t.pos, f)
            return core.eq_term(lhs, rhs), BOOL
        head, hs = infer_sort(env, t.head)
        for a in t.args:
            arg, as_ = infer_sort(env, a)
            if not isinstance(hs, Fun):
                raise SortError(
                    f"applying a term of non-functional sort {sort_str(hs)}",
                    *t.pos, f)
            if hs.dom != as_:
                raise SortError(
                    f"argument sort mismatch: expected {sort_str(hs.dom)}, "
                    f"found {sort_str(as_)}", *getattr(a, "pos", t.pos), f)
            head, hs = core.App(head, arg), hs.cod
        return head, hs
    if isinstance(t, SBinder):
        vars_ = [fresh_var(n, normalize_sort(s, env.signature, f))
                 for n, s in t.binders]
        env.push(vars_)
        try:
            body, bs = infer_sort(env, t.body)
        finally:
            env.pop()
        if t.kind == "lambda":
            for v in reversed(vars_):
                body = Lam(v, body)
                bs = Fun(v.sort, bs)
            return body, bs
        if t.kind in ("forall", "exists"):
            if bs != BOOL:
                raise SortError(
                    f"{t.kind} body has sort {sort_str(bs)}, expected Bool",
                    *t.pos, f)
            for v in reversed(vars_):
                body = Quant(t.kind, v, body)
            return body, BOOL
        # eps: the sort of the chosen witness
        if bs != BOOL:
            raise SortError(
                f"eps body has sort {sort_str(bs)}, expected Bool", *t.pos, f)
        for v in reversed(vars_):
            body = Quant("eps", v, body)
        return body, vars_[0].sort
    if isinstance(t, SLet):
        pairs = []
        for n, img in t.bindings:
            cimg, s = infer_sort(env, img)
            pairs.append((fresh_var(n, s), cimg))
        env.push([v for v, _ in pairs])
        try:
            body, bs = infer_sort(env, t.body)
        finally:
            env.pop()
        return Let(tuple(pairs), body), bs
    if isinstance(t, SMatch):
        raise SortError("unsupported construct: match", *t.pos, f)
    if isinstance(t, SAnnot):
        # attributes are preserved only at the surface level
        return infer_sort(env, t.term)
    raise TypeError(f"not a surface term: {t!r}")


@dataclass
class CheckedScript:
    signature: Signature
    asserts: list  # core terms of sort Bool
    logic: str = None
    commands: list = None


def check_script(cmds, filename="<input>"):
    """Process declarations in order and elaborate every assert to Bool."""
    sig = Signature()
    logic = None
    asserts = []
    for c in cmds:
        if isinstance(c, CSetLogic):
            logic = c.name
        elif isinstance(c, CDeclareSort):
            sig.declare_sort(c.name, c.arity, c.pos, filename)
        elif isinstance(c, CDeclareFun):
            sort = normalize_decl(c.arg_sorts, c.result, sig, filename)
            sig.declare_fun(c.name, sort, c.pos, filename)
        elif isinstance(c, CDefineFun):
            env = TypingEnv(sig, logic_has_arith(logic), filename)
            vars_ = [fresh_var(n, normalize_sort(s, sig, filename))
                     for n, s in c.params]
            env.push(vars_)
            try:
                _, bs = infer_sort(env, c.body)
            finally:
                env.pop()
            declared = normalize_sort(c.result, sig, filename)
            if bs != declared:
                raise SortError(
                    f"define-fun body has sort {sort_str(bs)}, expected "
                    f"{sort_str(declared)}", *c.pos, filename)
            sig.declare_fun(c.name, fun_sort([v.sort for v in vars_], declared),
                            c.pos, filename)
        elif isinstance(c, CAssert):
            env = TypingEnv(sig, logic_has_arith(logic), filename)
            term, s = infer_sort(env, c.term)
            if s != BOOL:
                raise SortError(
                    f"assert body has sort {sort_str(s)}, expected Bool",
                    *c.pos, filename)
            asserts.append(term)
        elif isinstance(c, (CExit, CUnknown)):
            pass
        else:
            raise TypeError(f"not a command: {c!r}")
    return CheckedScript(sig, asserts, logic, list(cmds))


# ------------------------------------------------------- core -> surface

def sort_to_surface(s):
    if isinstance(s, Atom):
        return SIdent(s.name)
    if isinstance(s, Applied):
        return SParam(s.name, tuple(sort_to_surface(a) for a in s.args))
    args = []
    while isinstance(s, Fun):
        args.append(sort_to_surface(s.dom))
        s = s.cod
    return SArrow(tuple(args), sort_to_surface(s))


def _visible_names(t, scope, skip_ids, out):
    """Names a binder must avoid: free variables and constants in its body."""
    if isinstance(t, Var):
        if t.id not in skip_ids:
            out.add(scope.get(t.id, t.name))
    elif isinstance(t, Const):
        out.add(t.name)
    elif isinstance(t, core.App):
        _visible_names(t.fn, scope, skip_ids, out)
        _visible_names(t.arg, scope, skip_ids, out)
    elif isinstance(t, (Lam, Quant)):
        _visible_names(t.body, scope, skip_ids | {t.var.id}, out)
    elif isinstance(t, Let):
        for _, img in t.bindings:
            _visible_names(img, scope, skip_ids, out)
        _visible_names(t.body, scope,
                       skip_ids | {v.id for v, _ in t.bindings}, out)


def _pick_name(var, body, scope):
    """Display name for a binder, renamed apart from names visible in the body."""
    taken = set()
    _visible_names(body, scope, {var.id}, taken)
    name = var.name
    k = 1
    while name in taken:
        name = f"{var.name}{k}"
        k += 1
    return name


def erase(t, scope=None):
    """Core term back to a surface term that reparses and re-elaborates to it.

    `scope` maps variable ids of free variables to their printed names.
    """
    scope = scope or {}
    if isinstance(t, Var):
        return SId(scope.get(t.id, t.name))
    if isinstance(t, Const):
        if t.name.isdigit() and t.sort == INT:
            return SLit("numeral", t.name)
        if t.sort == REAL and "." in t.name:
            return SLit("decimal", t.name)
        if t.name == "=":
            # outside a full application, = carries its instance sort
            return SId("=", sort_to_surface(t.sort))
        return SId(t.name)
    if isinstance(t, core.App):
        # = must reach the surface fully applied
        if (isinstance(t.fn, core.App) and isinstance(t.fn.fn, Const)
                and t.fn.fn.name == "="):
            return SApply(SId("="),
                          (erase(t.fn.arg, scope), erase(t.arg, scope)))
        # flatten the application spine: ((f a) b) prints as (f a b)
        spine = []
        head = t
        while isinstance(head, core.App):
            spine.append(head.arg)
            head = head.fn
        spine.reverse()
        return SApply(erase(head, scope),
                      tuple(erase(a, scope) for a in spine))
    bp = core.binder_parts(t)
    if bp is not None:
        kind, v, body = bp
        name = _pick_name(v, body, scope)
        inner = erase(body, {**scope, v.id: name})
        return SBinder(kind, ((name, sort_to_surface(v.sort)),), inner)
    if isinstance(t, Let):
        taken = set()
        _visible_names(t.body, scope, {v.id for v, _ in t.bindings}, taken)
        names = []
        for v, _ in t.bindings:
            n = v.name
            k = 1
            while n in taken:
                n = f"{v.name}{k}"
                k += 1
            taken.add(n)
            names.append(n)
        bindings = tuple((n, erase(img, scope))
                         for n, (_, img) in zip(names, t.bindings))
        scope2 = dict(scope)
        for n, (v, _) in zip(names, t.bindings):
            scope2[v.id] = n
        return SLet(bindings, erase(t.body, scope2))
    raise TypeError(f"not a core term: {t!r}")


def print_core(t, scope=None):
    return surface.print_term(erase(t, scope))
