"""Lambda-calculus encoding of judgments, used as an independent validity
check on the calculus.

A judgment `ctx |> t ~ u` is encoded as a pair of boxed lambda-terms L and R
built by folding the context; beta-normalizing the encodings (substitutions
are pushed into the box contents) and stripping the matching lambda-prefixes
reifies the pair back into a universally quantified equality, whose sides can
then be compared in the pure lambda fragment.
"""

from dataclasses import dataclass

from . import core
from .core import (App, Quant, Var, alpha_eq, beta_normal_form, eq_term,
                   expand_lets, free_vars, fresh_var, substitute)
from .context import Fix


class EncodingError(Exception):
    """The two encodings do not share a lambda-prefix."""


@dataclass(frozen=True)
class Box:
    """A leaf holding an (opaque) core term."""
    term: object


@dataclass(frozen=True)
class BAbs:
    """lambda x. M at the encoding level."""
    var: Var
    body: object


@dataclass(frozen=True)
class BRedex:
    """(lambda x1 ... xn. M) t1 ... tn at the encoding level."""
    vars: tuple
    body: object
    args: tuple  # core terms, len(args) == len(vars)


def _encode(ctx, t):
    boxed = Box(t)
    for entry in reversed(ctx.entries()):
        if isinstance(entry, Fix):
            boxed = BAbs(entry.var, boxed)
        else:
            vs = tuple(v for v, _ in entry.pairs)
            args = tuple(img for _, img in entry.pairs)
            boxed = BRedex(vs, boxed, args)
    return boxed


def encode_left(ctx, t):
    """L(ctx)[t]: fold the context into abstractions and redexes."""
    return _encode(ctx, t)


def encode_right(ctx, u):
    """R(ctx)[u]: the exact mirror of encode_left."""
    return _encode(ctx, u)


def _bsubst(m, sigma):
    """Capture-avoiding substitution on a boxed term; boxes are opaque
    except that the substitution is applied to their contents."""
    if not sigma:
        return m
    if isinstance(m, Box):
        return Box(substitute(m.term, sigma))
    img_fv = set()
    for img in sigma.values():
        img_fv |= free_vars(img)
    if isinstance(m, BAbs):
        sigma2 = {k: v for k, v in sigma.items() if k != m.var.id}
        if m.var.id in img_fv:
            v2 = fresh_var(m.var.name, m.var.sort)
            sigma2[m.var.id] = v2
            return BAbs(v2, _bsubst(m.body, sigma2))
        return BAbs(m.var, _bsubst(m.body, sigma2))
    # BRedex: arguments first, then the body under the bound variables
    args = tuple(substitute(a, sigma) for a in m.args)
    bound = {v.id for v in m.vars}
    sigma2 = {k: v for k, v in sigma.items() if k not in bound}
    vs = list(m.vars)
    for i, v in enumerate(vs):
        if v.id in img_fv:
            v2 = fresh_var(v.name, v.sort)
            sigma2[v.id] = v2
            vs[i] = v2
    return BRedex(tuple(vs), _bsubst(m.body, sigma2), args)


def _normalize(m):
    """Contract all encoding-level redexes: (prefix variables, box content)."""
    if isinstance(m, Box):
        return [], m.term
    if isinstance(m, BAbs):
        prefix, t = _normalize(m.body)
        return [m.var] + prefix, t
    sigma = {v.id: a for v, a in zip(m.vars, m.args)}
    return _normalize(_bsubst(m.body, sigma))


def reify(m, n):
    """The formula forall xs. t ~ u from two encodings with matching prefixes."""
    xs, t = _normalize(m)
    ys, u = _normalize(n)
    if len(xs) != len(ys) or any(x.sort != y.sort for x, y in zip(xs, ys)):
        raise EncodingError("encodings have mismatched lambda-prefixes")
    if ys:
        u = substitute(u, {y.id: x for x, y in zip(xs, ys)})
    formula = eq_term(t, u)
    for x in reversed(xs):
        formula = Quant("forall", x, formula)
    return formula


def oracle_check(judgment, max_steps=core.DEFAULT_STEP_CAP):
    """Second opinion on ctx |> t ~ u: `lambda-valid` when the reified
    equality holds in the pure lambda fragment, `needs-theory` otherwise."""
    formula = reify(encode_left(judgment.ctx, judgment.lhs),
                    encode_right(judgment.ctx, judgment.rhs))
    while isinstance(formula, Quant):
        formula = formula.body
    # formula is (= t u) applied in curried form
    t, u = formula.fn.arg, formula.arg
    tn = beta_normal_form(expand_lets(t), max_steps)
    un = beta_normal_form(expand_lets(u), max_steps)
    return "lambda-valid" if alpha_eq(tn, un) else "needs-theory"


def check_certificate_oracle(cert, max_steps=core.DEFAULT_STEP_CAP):
    """Run oracle_check on every equality step; returns [(step id, verdict)]."""
    from .calculus import EqJudgment

    out = []
    for step in cert.steps:
        if isinstance(step.conclusion, EqJudgment):
            out.append((step.id, oracle_check(step.conclusion, max_steps)))
    return out
