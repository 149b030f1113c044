"""The extended fine-grained proof calculus.

Certificates are DAGs of steps, each carrying its full context and an
equality conclusion `ctx |> lhs ~ rhs` (or, for instantiation lemmas, a
closed Boolean formula).  The checker validates every rule locally from the
step, its premises' conclusions, and the context; terms are always compared
up to alpha.

Concrete syntax, one step per line:

    (step <id> :rule <name> :premises (<id>*) :context (<entry>*)
          :conclusion (= <term> <term>))

with context entries `(fix <name> <sort>)` or `(map (<name> <term>)+)`,
ordered outermost-first.  Lemma steps use `:conclusion <formula>` and
`:binding ((<name> <term>)+)`; taut steps name their theory with
`:theory <tag>`.  Files may open with declare-sort/declare-fun commands.
"""

from dataclasses import dataclass

from . import core, sexpr, surface, typecheck
from .context import EMPTY, Fix, Map, apply_context, contexts_equal
from .core import (App, BOOL, Const, Lam, Let, Quant, Var, alpha_eq,
                   beta_normal_form, binder_parts, free_vars,
                   make_binder, not_term, sort_of, substitute)
from .sexpr import ParseError, SList, Token
from .typecheck import Signature, TypingEnv, infer_sort, normalize_sort


RULES = ("refl", "trans", "cong", "bind", "beta", "let",
         "sko_ex", "sko_all", "taut", "inst_forall", "inst_exists")
LEMMA_RULES = ("inst_forall", "inst_exists")

# the one built-in taut validator: equality in the pure beta fragment
BETA_THEORY = "beta"


class CertificateError(ParseError):
    pass


@dataclass(frozen=True)
class EqJudgment:
    ctx: object  # Context
    lhs: object
    rhs: object


@dataclass(frozen=True)
class LemmaFormula:
    formula: object  # closed core term of sort Bool


@dataclass(frozen=True)
class ProofStep:
    id: str
    rule: str
    premises: tuple  # step ids
    conclusion: object  # EqJudgment | LemmaFormula
    binding: tuple = ()  # ((name, term), ...) for lemma steps
    theory: str = None  # for taut steps


@dataclass(frozen=True)
class Certificate:
    steps: tuple
    signature: object = None

    @property
    def final(self):
        return self.steps[-1]


@dataclass
class StepResult:
    id: str
    status: str  # "ok" | "trusted" | "invalid"
    message: str = ""


@dataclass
class Report:
    results: list
    verdict: str  # "valid" | "invalid" | "valid-with-trust"
    final_conclusion: object = None
    trusted_count: int = 0

    @property
    def first_failure(self):
        for r in self.results:
            if r.status == "invalid":
                return r
        return None


def _bad(step, msg):
    return StepResult(step.id, "invalid", f"{step.rule} step {step.id}: {msg}")


def _ok(step):
    return StepResult(step.id, "ok")


def _eq_conclusion(step):
    if not isinstance(step.conclusion, EqJudgment):
        return None
    return step.conclusion


def _split_context(ctx, n):
    """Split off the last n entries: (prefix context, [entries])."""
    tail = []
    c = ctx
    for _ in range(n):
        if c.entry is None:
            return None, None
        tail.append(c.entry)
        c = c.parent
    tail.reverse()
    return c, tail


def check_step(step, premises):
    """Check one rule application given its premise steps (already checked)."""
    if step.rule not in RULES:
        return _bad(step, f"unknown rule {step.rule}")
    handler = _HANDLERS[step.rule]
    try:
        return handler(step, premises)
    except (ValueError, TypeError) as e:
        return _bad(step, str(e))


def _check_refl_shape(step):
    c = _eq_conclusion(step)
    if c is None:
        return _bad(step, "expected an equality conclusion")
    if not alpha_eq(apply_context(c.ctx, c.lhs), c.rhs):
        return _bad(step, "context applied to the left side does not match the right side")
    return _ok(step)


def _check_refl(step, premises):
    if premises:
        return _bad(step, "refl takes no premises")
    return _check_refl_shape(step)


def _check_cong(step, premises):
    # a zero-premise cong is accepted as a refl-shaped leaf
    if not premises:
        return _check_refl_shape(step)
    if len(premises) != 2:
        return _bad(step, "cong takes two premises")
    c = _eq_conclusion(step)
    if c is None:
        return _bad(step, "expected an equality conclusion")
    p1, p2 = (_eq_conclusion(p) for p in premises)
    if p1 is None or p2 is None:
        return _bad(step, "premises must be equality judgments")
    for p in (p1, p2):
        if not contexts_equal(p.ctx, c.ctx):
            return _bad(step, "premise context differs from the conclusion context")
    if not isinstance(c.lhs, App) or not isinstance(c.rhs, App):
        return _bad(step, "conclusion sides must be applications")
    if not alpha_eq(c.lhs.fn, p1.lhs) or not alpha_eq(c.rhs.fn, p1.rhs):
        return _bad(step, f"head does not match the first premise ({_pc(c.lhs.fn)})")
    if not alpha_eq(c.lhs.arg, p2.lhs) or not alpha_eq(c.rhs.arg, p2.rhs):
        return _bad(step, f"argument does not match the second premise ({_pc(c.lhs.arg)})")
    return _ok(step)


def _check_trans(step, premises):
    if len(premises) != 2:
        return _bad(step, "trans takes two premises")
    c = _eq_conclusion(step)
    if c is None:
        return _bad(step, "expected an equality conclusion")
    p1, p2 = (_eq_conclusion(p) for p in premises)
    if p1 is None or p2 is None:
        return _bad(step, "premises must be equality judgments")
    for p in (p1, p2):
        if not contexts_equal(p.ctx, c.ctx):
            return _bad(step, "premise context differs from the conclusion context")
    if not alpha_eq(p1.rhs, p2.lhs):
        return _bad(step, f"middle terms differ ({_pc(p1.rhs)} vs {_pc(p2.lhs)})")
    if not alpha_eq(c.lhs, p1.lhs) or not alpha_eq(c.rhs, p2.rhs):
        return _bad(step, "conclusion does not chain the premises")
    return _ok(step)


def _check_bind(step, premises):
    if len(premises) != 1:
        return _bad(step, "bind takes one premise")
    c = _eq_conclusion(step)
    p = _eq_conclusion(premises[0])
    if c is None or p is None:
        return _bad(step, "expected equality judgments")
    prefix, tail = _split_context(p.ctx, 2)
    if prefix is None or not isinstance(tail[0], Fix) or not isinstance(tail[1], Map):
        return _bad(step, "premise context must end with a fixed variable and a mapping")
    if not contexts_equal(prefix, c.ctx):
        return _bad(step, "premise context does not extend the conclusion context")
    y = tail[0].var
    if len(tail[1].pairs) != 1:
        return _bad(step, "premise mapping must bind exactly one variable")
    x, img = tail[1].pairs[0]
    if not (isinstance(img, Var) and img.id == y.id):
        return _bad(step, "premise mapping must send the bound variable to the fixed one")
    bl = binder_parts(c.lhs)
    br = binder_parts(c.rhs)
    if bl is None or br is None or bl[0] != br[0] or bl[0] not in core.BIND_KINDS:
        return _bad(step, "conclusion sides must share a forall/exists/lambda binder")
    kind = bl[0]
    if not alpha_eq(make_binder(kind, x, p.lhs), c.lhs):
        return _bad(step, "left side does not rebind the premise's left term")
    if not alpha_eq(make_binder(kind, y, p.rhs), c.rhs):
        return _bad(step, "right side does not rebind the premise's right term")
    if y.id in free_vars(c.lhs):
        return _bad(step, f"side condition violated: {y.name} occurs free in {_pc(c.lhs)}")
    return _ok(step)


def _check_beta(step, premises):
    if len(premises) != 2:
        return _bad(step, "beta takes two premises")
    c = _eq_conclusion(step)
    p1 = _eq_conclusion(premises[0])
    p2 = _eq_conclusion(premises[1])
    if c is None or p1 is None or p2 is None:
        return _bad(step, "expected equality judgments")
    if not contexts_equal(p1.ctx, c.ctx):
        return _bad(step, "first premise context differs from the conclusion context")
    prefix, tail = _split_context(p2.ctx, 1)
    if prefix is None or not isinstance(tail[0], Map) or len(tail[0].pairs) != 1:
        return _bad(step, "second premise context must end with a single mapping")
    if not contexts_equal(prefix, c.ctx):
        return _bad(step, "second premise context does not extend the conclusion context")
    x, s = tail[0].pairs[0]
    if not alpha_eq(s, p1.rhs):
        return _bad(step, "mapped term does not match the first premise's right side")
    if not (isinstance(c.lhs, App) and isinstance(c.lhs.fn, Lam)):
        return _bad(step, "conclusion left side must be a beta-redex")
    if not alpha_eq(c.lhs.arg, p1.lhs):
        return _bad(step, "redex argument does not match the first premise's left side")
    if not alpha_eq(c.lhs.fn, Lam(x, p2.lhs)):
        return _bad(step, "redex body does not match the second premise's left side")
    if not alpha_eq(c.rhs, p2.rhs):
        return _bad(step, "conclusion right side does not match the second premise")
    if not alpha_eq(apply_context(c.ctx, s), s):
        return _bad(step, f"side condition violated: context changes {_pc(s)}")
    return _ok(step)


def _check_let(step, premises):
    if len(premises) < 2:
        return _bad(step, "let takes the binding premises plus a body premise")
    c = _eq_conclusion(step)
    if c is None:
        return _bad(step, "expected an equality conclusion")
    ps = [_eq_conclusion(p) for p in premises]
    if any(p is None for p in ps):
        return _bad(step, "premises must be equality judgments")
    *vals, body = ps
    n = len(vals)
    for p in vals:
        if not contexts_equal(p.ctx, c.ctx):
            return _bad(step, "binding premise context differs from the conclusion context")
    prefix, tail = _split_context(body.ctx, 1)
    if prefix is None or not isinstance(tail[0], Map) or len(tail[0].pairs) != n:
        return _bad(step, f"body premise context must end with a mapping of {n} variables")
    if not contexts_equal(prefix, c.ctx):
        return _bad(step, "body premise context does not extend the conclusion context")
    pairs = tail[0].pairs
    for (x, s), p in zip(pairs, vals):
        if not alpha_eq(s, p.rhs):
            return _bad(step, f"mapped term for {x.name} does not match its premise")
        if not alpha_eq(apply_context(c.ctx, s), s):
            return _bad(step, f"side condition violated: context changes {_pc(s)}")
    if not isinstance(c.lhs, Let):
        return _bad(step, "conclusion left side must be a let")
    expected = Let(tuple((x, p.lhs) for (x, _), p in zip(pairs, vals)), body.lhs)
    if not alpha_eq(c.lhs, expected):
        return _bad(step, "let bindings or body do not match the premises")
    if not alpha_eq(c.rhs, body.rhs):
        return _bad(step, "conclusion right side does not match the body premise")
    return _ok(step)


def _check_sko(step, premises, qkind, negate):
    if len(premises) != 1:
        return _bad(step, "skolemization takes one premise")
    c = _eq_conclusion(step)
    p = _eq_conclusion(premises[0])
    if c is None or p is None:
        return _bad(step, "expected equality judgments")
    prefix, tail = _split_context(p.ctx, 1)
    if prefix is None or not isinstance(tail[0], Map) or len(tail[0].pairs) != 1:
        return _bad(step, "premise context must end with a single mapping")
    if not contexts_equal(prefix, c.ctx):
        return _bad(step, "premise context does not extend the conclusion context")
    x, img = tail[0].pairs[0]
    body = not_term(p.lhs) if negate else p.lhs
    if not alpha_eq(img, Quant("eps", x, body)):
        return _bad(step, "mapped term is not the matching choice term")
    if not alpha_eq(c.lhs, Quant(qkind, x, p.lhs)):
        return _bad(step, "conclusion left side does not quantify the premise's left term")
    if not alpha_eq(c.rhs, p.rhs):
        return _bad(step, "conclusion right side does not match the premise")
    return _ok(step)


def _check_sko_ex(step, premises):
    return _check_sko(step, premises, "exists", negate=False)


def _check_sko_all(step, premises):
    return _check_sko(step, premises, "forall", negate=True)


def _check_taut(step, premises):
    if premises:
        return _bad(step, "taut takes no premises")
    c = _eq_conclusion(step)
    if c is None:
        return _bad(step, "expected an equality conclusion")
    if step.theory == BETA_THEORY:
        if alpha_eq(beta_normal_form(c.lhs), beta_normal_form(c.rhs)):
            return _ok(step)
        return _bad(step, "sides have different beta-normal forms")
    tag = step.theory or "<untagged>"
    return StepResult(step.id, "trusted",
                      f"taut step {step.id} trusted for theory {tag}")


def _strip_quant(t, kind):
    bp = binder_parts(t)
    if bp is None or bp[0] != kind:
        return None
    return bp[1], bp[2]


def _check_inst(step, premises, forall):
    if premises:
        return _bad(step, "instantiation lemmas take no premises")
    if not isinstance(step.conclusion, LemmaFormula):
        return _bad(step, "expected a lemma formula conclusion")
    f = step.conclusion.formula
    if not (isinstance(f, App) and isinstance(f.fn, App)
            and isinstance(f.fn.fn, Const) and f.fn.fn.name == "=>"):
        return _bad(step, "lemma must be an implication")
    quant_side, inst_side = (f.fn.arg, f.arg) if forall else (f.arg, f.fn.arg)
    sq = _strip_quant(quant_side, "forall" if forall else "exists")
    if sq is None:
        kind = "forall" if forall else "exists"
        return _bad(step, f"lemma lacks a {kind} on the quantified side")
    x, body = sq
    if len(step.binding) != 1:
        return _bad(step, "binding must name exactly one variable")
    name, t = step.binding[0]
    if name != x.name:
        return _bad(step, f"binding names {name}, the quantifier binds {x.name}")
    if sort_of(t) != x.sort:
        return _bad(step, "instantiation term has the wrong sort")
    if not alpha_eq(inst_side, substitute(body, {x.id: t})):
        return _bad(step, "instance side is not the substituted body")
    return _ok(step)


def _check_inst_forall(step, premises):
    return _check_inst(step, premises, forall=True)


def _check_inst_exists(step, premises):
    return _check_inst(step, premises, forall=False)


_HANDLERS = {
    "refl": _check_refl,
    "cong": _check_cong,
    "trans": _check_trans,
    "bind": _check_bind,
    "beta": _check_beta,
    "let": _check_let,
    "sko_ex": _check_sko_ex,
    "sko_all": _check_sko_all,
    "taut": _check_taut,
    "inst_forall": _check_inst_forall,
    "inst_exists": _check_inst_exists,
}


def check_certificate(cert):
    """Check all steps in order and summarize the verdict."""
    by_id = {}
    results = []
    ok = True
    trusted = 0
    for step in cert.steps:
        if step.id in by_id:
            results.append(StepResult(step.id, "invalid",
                                      f"duplicate step id {step.id}"))
            ok = False
            continue
        missing = [p for p in step.premises if p not in by_id]
        if missing:
            results.append(StepResult(
                step.id, "invalid",
                f"step {step.id} references unknown or later step {missing[0]}"))
            by_id[step.id] = step
            ok = False
            continue
        r = check_step(step, [by_id[p] for p in step.premises])
        by_id[step.id] = step
        results.append(r)
        if r.status == "invalid":
            ok = False
        elif r.status == "trusted":
            trusted += 1
    final = cert.final.conclusion if cert.steps else None
    if isinstance(final, EqJudgment) and not final.ctx.is_empty():
        results.append(StepResult(cert.final.id, "invalid",
                                  "final judgment has a non-empty context"))
        ok = False
    if not ok:
        verdict = "invalid"
    elif trusted:
        verdict = "valid-with-trust"
    else:
        verdict = "valid"
    return Report(results, verdict, final, trusted)


def _pc(t):
    return typecheck.print_core(t)


# ---------------------------------------------------------------- parsing

def _is_sym(e, text=None):
    return (isinstance(e, Token) and e.kind == sexpr.SYMBOL
            and (text is None or e.text == text))


class _CertParser:
    def __init__(self, signature, filename):
        self.sig = signature.copy() if signature is not None else Signature()
        self.filename = filename
        # one core variable per (name, sort) across the whole certificate,
        # so identical contexts in different steps share variable identity
        self.registry = {}

    def var_for(self, name, sort):
        key = (name, sort)
        if key not in self.registry:
            self.registry[key] = core.fresh_var(name, sort)
        return self.registry[key]

    def elab(self, e, scope):
        term = surface.term_from_sexpr(e, self.filename)
        env = TypingEnv(self.sig, arith=True, filename=self.filename)
        env.push(scope.values())
        t, s = infer_sort(env, term)
        return t, s

    def parse_context(self, e, where):
        ctx = EMPTY
        scope = {}
        if e is None:
            return ctx, scope
        if not isinstance(e, SList):
            raise CertificateError("expected a context entry list",
                                   *sexpr.sexpr_pos(e), self.filename)
        for entry in e.items:
            if not isinstance(entry, SList) or not entry.items:
                raise CertificateError("expected (fix ...) or (map ...)",
                                       *sexpr.sexpr_pos(entry), self.filename)
            head = entry.items[0]
            if _is_sym(head, "fix"):
                if len(entry.items) != 3 or not _is_sym(entry.items[1]):
                    raise CertificateError("expected (fix <name> <sort>)",
                                           *sexpr.sexpr_pos(entry), self.filename)
                name = entry.items[1].text
                ssort = surface.sort_from_sexpr(entry.items[2], self.filename)
                sort = normalize_sort(ssort, self.sig, self.filename)
                v = self.var_for(name, sort)
                ctx = ctx.fix(v)
                scope[name] = v
            elif _is_sym(head, "map"):
                if len(entry.items) < 2:
                    raise CertificateError("expected (map (<name> <term>)+)",
                                           *sexpr.sexpr_pos(entry), self.filename)
                pairs = []
                for item in entry.items[1:]:
                    if (not isinstance(item, SList) or len(item.items) != 2
                            or not _is_sym(item.items[0])):
                        raise CertificateError("expected (<name> <term>)",
                                               *sexpr.sexpr_pos(item), self.filename)
                    name = item.items[0].text
                    img, sort = self.elab(item.items[1], scope)
                    pairs.append((self.var_for(name, sort), img))
                try:
                    ctx = ctx.map(pairs)
                except ValueError as err:
                    raise CertificateError(str(err), *sexpr.sexpr_pos(entry),
                                           self.filename)
                for v, _ in pairs:
                    scope[v.name] = v
            else:
                raise CertificateError("unknown context entry",
                                       *sexpr.sexpr_pos(entry), self.filename)
        return ctx, scope

    def parse_step(self, e):
        items = e.items
        if len(items) < 2 or not _is_sym(items[0], "step") or not _is_sym(items[1]):
            raise CertificateError("expected (step <id> ...)", e.line, e.col,
                                   self.filename)
        step_id = items[1].text
        kw = {}
        i = 2
        while i < len(items):
            k = items[i]
            if not (isinstance(k, Token) and k.kind == sexpr.KEYWORD):
                raise CertificateError("expected a keyword",
                                       *sexpr.sexpr_pos(k), self.filename)
            if i + 1 >= len(items):
                raise CertificateError(f"missing value for {k.text}",
                                       k.line, k.col, self.filename)
            kw[k.text] = items[i + 1]
            i += 2
        if ":rule" not in kw or not _is_sym(kw[":rule"]):
            raise CertificateError("step lacks a :rule", e.line, e.col, self.filename)
        rule = kw[":rule"].text
        if rule not in RULES:
            raise CertificateError(f"unknown rule {rule}",
                                   *sexpr.sexpr_pos(kw[":rule"]), self.filename)
        premises = ()
        if ":premises" in kw:
            pe = kw[":premises"]
            if not isinstance(pe, SList) or not all(_is_sym(x) for x in pe.items):
                raise CertificateError("expected a list of step ids",
                                       *sexpr.sexpr_pos(pe), self.filename)
            premises = tuple(x.text for x in pe.items)
        theory = None
        if ":theory" in kw:
            if not _is_sym(kw[":theory"]):
                raise CertificateError("expected a theory tag",
                                       *sexpr.sexpr_pos(kw[":theory"]), self.filename)
            theory = kw[":theory"].text
        if ":conclusion" not in kw:
            raise CertificateError("step lacks a :conclusion", e.line, e.col,
                                   self.filename)
        binding = ()
        if ":binding" in kw:
            be = kw[":binding"]
            if not isinstance(be, SList):
                raise CertificateError("expected a binding list",
                                       *sexpr.sexpr_pos(be), self.filename)
            bs = []
            for item in be.items:
                if (not isinstance(item, SList) or len(item.items) != 2
                        or not _is_sym(item.items[0])):
                    raise CertificateError("expected (<name> <term>)",
                                           *sexpr.sexpr_pos(item), self.filename)
                t, _ = self.elab(item.items[1], {})
                bs.append((item.items[0].text, t))
            binding = tuple(bs)
        if rule in LEMMA_RULES:
            formula, fsort = self.elab(kw[":conclusion"], {})
            if fsort != BOOL:
                raise CertificateError("lemma formula must have sort Bool",
                                       *sexpr.sexpr_pos(kw[":conclusion"]),
                                       self.filename)
            conclusion = LemmaFormula(formula)
        else:
            ctx, scope = self.parse_context(kw.get(":context"), e)
            ce = kw[":conclusion"]
            if (not isinstance(ce, SList) or len(ce.items) != 3
                    or not _is_sym(ce.items[0], "=")):
                raise CertificateError("expected (= <term> <term>)",
                                       *sexpr.sexpr_pos(ce), self.filename)
            lhs, ls = self.elab(ce.items[1], scope)
            rhs, rs = self.elab(ce.items[2], scope)
            if ls != rs:
                raise CertificateError("conclusion sides have different sorts",
                                       *sexpr.sexpr_pos(ce), self.filename)
            conclusion = EqJudgment(ctx, lhs, rhs)
        return ProofStep(step_id, rule, premises, conclusion, binding, theory)


def parse_certificate(text, signature=None, filename="<certificate>"):
    exprs = sexpr.parse_text(text, filename)
    parser = _CertParser(signature, filename)
    steps = []
    for e in exprs:
        if not isinstance(e, SList) or not e.items:
            raise CertificateError("expected a command or step",
                                   *sexpr.sexpr_pos(e), filename)
        if _is_sym(e.items[0], "step"):
            steps.append(parser.parse_step(e))
            continue
        cmd = surface.command_from_sexpr(e, filename)
        if isinstance(cmd, surface.CDeclareSort):
            parser.sig.declare_sort(cmd.name, cmd.arity, cmd.pos, filename)
        elif isinstance(cmd, surface.CDeclareFun):
            sort = typecheck.normalize_decl(cmd.arg_sorts, cmd.result,
                                            parser.sig, filename)
            parser.sig.declare_fun(cmd.name, sort, cmd.pos, filename)
        else:
            raise CertificateError("only declarations and steps are allowed",
                                   e.line, e.col, filename)
    if not steps:
        raise CertificateError("certificate has no steps", 1, 1, filename)
    return Certificate(tuple(steps), parser.sig)


# --------------------------------------------------------------- printing

def _assign_names(cert):
    """Unique printed name per context-variable id across the certificate."""
    names = {}
    used = set(cert.signature.symbols) if cert.signature else set()
    used |= set(typecheck.CORE_SYMBOLS)

    def claim(v):
        if v.id in names:
            return
        name = v.name
        k = 1
        while name in used:
            name = f"{v.name}{k}"
            k += 1
        names[v.id] = name
        used.add(name)

    for step in cert.steps:
        if isinstance(step.conclusion, EqJudgment):
            for e in step.conclusion.ctx.entries():
                if isinstance(e, Fix):
                    claim(e.var)
                else:
                    for v, _ in e.pairs:
                        claim(v)
    return names


def _print_entry(e, names):
    if isinstance(e, Fix):
        return f"(fix {names[e.var.id]} {core.sort_str(e.var.sort)})"
    pairs = " ".join(
        f"({names[v.id]} {typecheck.print_core(img, names)})" for v, img in e.pairs)
    return f"(map {pairs})"


def print_step(step, names):
    parts = [f"(step {step.id} :rule {step.rule}"]
    if step.premises:
        parts.append(":premises (" + " ".join(step.premises) + ")")
    if isinstance(step.conclusion, EqJudgment):
        c = step.conclusion
        entries = c.ctx.entries()
        if entries:
            parts.append(":context ("
                         + " ".join(_print_entry(e, names) for e in entries) + ")")
        if step.theory is not None:
            parts.append(f":theory {step.theory}")
        parts.append(f":conclusion (= {typecheck.print_core(c.lhs, names)} "
                     f"{typecheck.print_core(c.rhs, names)}))")
    else:
        if step.binding:
            bs = " ".join(f"({n} {typecheck.print_core(t, names)})"
                          for n, t in step.binding)
            parts.append(f":binding ({bs})")
        parts.append(
            f":conclusion {typecheck.print_core(step.conclusion.formula, names)})")
    return " ".join(parts)


def print_certificate(cert):
    lines = []
    if cert.signature is not None:
        for name, arity in cert.signature.sorts.items():
            if name not in typecheck.BUILTIN_SORTS:
                lines.append(f"(declare-sort {name} {arity})")
        for name, sort in cert.signature.symbols.items():
            args = []
            s = sort
            while isinstance(s, core.Fun):
                args.append(s.dom)
                s = s.cod
            astr = " ".join(core.sort_str(a) for a in args)
            lines.append(f"(declare-fun {name} ({astr}) {core.sort_str(s)})")
    names = _assign_names(cert)
    for step in cert.steps:
        lines.append(print_step(step, names))
    return "\n".join(lines) + "\n"
