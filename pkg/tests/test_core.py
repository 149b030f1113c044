"""Core terms: alpha-equivalence, substitution, beta-reduction."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from hosmt.core import (App, BOOL, Const, DivergenceError, Fun, INT, Lam, Let,
                        Quant, Var, alpha_eq, beta_normal_form, beta_step,
                        expand_lets, free_vars, fresh_var, fun_sort, sort_of,
                        sort_str, substitute)

import gen
import nameless

INTI = Fun(INT, INT)
p2 = Const("p", Fun(INT, INTI))
p1 = Const("p", INTI)
f1 = Const("f", INTI)
a = Const("a", INT)


def lam(v, b):
    return Lam(v, b)


class TestSorts:
    def test_fun_sort_right_fold(self):
        assert fun_sort([INT, INT], INT) == Fun(INT, Fun(INT, INT))

    def test_sort_str_flattens(self):
        assert sort_str(fun_sort([INT, INT], INT)) == "(-> Int Int Int)"


class TestFreeVars:
    def test_closed(self):
        x = fresh_var("x", INT)
        t = App(lam(x, App(App(p2, x), x)), a)
        assert free_vars(t) == set()

    def test_open_app(self):
        x = fresh_var("x", INT)
        z = fresh_var("z", INT)
        assert free_vars(App(lam(z, z), x)) == {x.id}

    def test_under_binder(self):
        x = fresh_var("x", INT)
        assert free_vars(App(f1, x)) == {x.id}
        assert free_vars(lam(x, App(f1, x))) == set()

    def test_let_scopes_body_only(self):
        v = fresh_var("v", INT)
        t = Let(((v, App(f1, v)),), v)
        # non-recursive: the v in the image is free
        assert free_vars(t) == {v.id}


class TestAlphaEq:
    def test_identity(self):
        x, y = fresh_var("x", INT), fresh_var("y", INT)
        assert alpha_eq(lam(x, x), lam(y, y))

    def test_nested_difference(self):
        x1, y1 = fresh_var("x", INT), fresh_var("y", INT)
        x2, y2 = fresh_var("x", INT), fresh_var("y", INT)
        s = lam(x1, lam(y1, x1))
        t = lam(y2, lam(x2, x2))
        assert not alpha_eq(s, t)
        assert nameless.to_db(s) != nameless.to_db(t)

    def test_renamed(self):
        x, w = fresh_var("x", INT), fresh_var("w", INT)
        s = lam(x, App(App(p2, x), x))
        t = lam(w, App(App(p2, w), w))
        assert alpha_eq(s, t)
        assert nameless.to_db(s) == nameless.to_db(t)

    def test_sorts_matter(self):
        x, y = fresh_var("x", INT), fresh_var("y", BOOL)
        assert not alpha_eq(lam(x, x), lam(y, y))

    def test_agrees_with_nameless(self):
        rng = random.Random(11)
        for _ in range(300):
            s = gen.gen_closed(rng, depth=4)
            t = gen.gen_closed(rng, depth=4)
            assert alpha_eq(s, t) == (nameless.to_db(s) == nameless.to_db(t))
            assert alpha_eq(s, s)

    @given(st.integers(0, 10**6))
    def test_equivalence_relation(self, seed):
        rng = random.Random(seed)
        s = gen.gen_closed(rng, depth=3)
        t = gen.gen_closed(rng, depth=3)
        u = gen.gen_closed(rng, depth=3)
        assert alpha_eq(s, s)
        assert alpha_eq(s, t) == alpha_eq(t, s)
        if alpha_eq(s, t) and alpha_eq(t, u):
            assert alpha_eq(s, u)


class TestSubstitute:
    def test_example1_body(self):
        x = fresh_var("x", INT)
        t = App(App(p2, x), x)
        assert substitute(t, {x.id: a}) == App(App(p2, a), a)

    def test_capture_avoidance(self):
        x, y = fresh_var("x", INT), fresh_var("y", INT)
        t = lam(x, y)
        r = substitute(t, {y.id: x})
        assert isinstance(r, Lam)
        assert r.var.id != x.id  # binder renamed
        assert r.body == x
        db = nameless.db_subst(nameless.to_db(t), {y.id: nameless.to_db(x)})
        assert nameless.to_db(r) == db

    def test_empty(self):
        t = App(f1, a)
        assert substitute(t, {}) == t

    def test_simultaneity_swap(self):
        x, y = fresh_var("x", INT), fresh_var("y", INT)
        sigma = {x.id: y, y.id: x}
        assert substitute(x, sigma) == y
        assert substitute(y, sigma) == x

    def test_agrees_with_nameless_oracle(self):
        rng = random.Random(23)
        for _ in range(500):
            t, fv = gen.gen_open(rng, depth=5)
            sigma = {v.id: gen.gen_term(rng, v.sort, 3) for v in fv
                     if rng.random() < 0.8}
            got = nameless.to_db(substitute(t, sigma))
            want = nameless.db_subst(
                nameless.to_db(t),
                {k: nameless.to_db(img) for k, img in sigma.items()})
            assert got == want


class TestBetaStep:
    def test_example1(self):
        x = fresh_var("x", INT)
        t = App(lam(x, App(App(p2, x), x)), a)
        assert beta_step(t) == App(App(p2, a), a)

    def test_normal_form_absent(self):
        assert beta_step(App(p1, a)) is None

    def test_outermost_first(self):
        x = fresh_var("x", INT)
        y, z = fresh_var("y", INT), fresh_var("z", INT)
        inner = App(lam(z, App(p1, z)), y)
        t = App(lam(y, inner), App(f1, x))
        r = beta_step(t)
        # the outer redex is contracted, leaving the inner one intact
        assert alpha_eq(r, App(lam(z, App(p1, z)), App(f1, x)))


class TestNormalForm:
    def test_example2(self):
        x, y, z = (fresh_var(n, INT) for n in "xyz")
        t = lam(x, App(lam(y, App(lam(z, App(p1, z)), y)), App(f1, x)))
        w = fresh_var("w", INT)
        assert alpha_eq(beta_normal_form(t), lam(w, App(p1, App(f1, w))))

    def test_leaf(self):
        assert beta_normal_form(a) == a

    def test_example3_body(self):
        y = fresh_var("y", INT)
        xa, za = fresh_var("x", INTI), fresh_var("z", INTI)
        xb, xc = fresh_var("x", INT), fresh_var("x", INT)
        left = App(Lam(xa, App(Lam(za, za), xa)), Lam(xb, y))
        right = App(Lam(xc, App(p1, xc)), y)
        assert beta_normal_form(App(left, right)) == y

    def test_divergence_cap(self):
        # omega is ill-sorted, built by force for the cap check
        d = fresh_var("d", INT)
        omega = Lam(d, App(d, d))
        with pytest.raises(DivergenceError):
            beta_normal_form(App(omega, omega), max_steps=50)

    def test_idempotent_and_order_independent(self):
        rng = random.Random(31)
        for _ in range(300):
            t = gen.gen_closed(rng, depth=4)
            n = beta_normal_form(t)
            assert beta_step(n) is None
            assert alpha_eq(beta_normal_form(n), n)
            # innermost evaluation over de Bruijn indices agrees
            assert nameless.to_db(n) == nameless.db_nf(nameless.to_db(t))

    def test_alpha_stable(self):
        rng = random.Random(37)
        for _ in range(100):
            t = gen.gen_closed(rng, depth=4)
            fresh = substitute(Lam(fresh_var("q", INT), t),
                               {}).body  # cheap alpha copy via identity
            assert alpha_eq(beta_normal_form(t), beta_normal_form(fresh))


class TestFreshVar:
    def test_distinct(self):
        v1, v2 = fresh_var("w", INT), fresh_var("w", INT)
        assert v1.id != v2.id

    def test_thousand_distinct(self):
        ids = {fresh_var("w", INT).id for _ in range(1000)}
        assert len(ids) == 1000


class TestExpandLets:
    def test_simple(self):
        v = fresh_var("v", INT)
        t = Let(((v, a),), App(f1, v))
        assert expand_lets(t) == App(f1, a)

    def test_simultaneous(self):
        x, y = fresh_var("x", INT), fresh_var("y", INT)
        outer_x = fresh_var("x", INT)
        t = Lam(outer_x, Let(((x, outer_x), (y, x)), App(App(p2, x), y)))
        r = expand_lets(t)
        # simultaneous: y's image is the outer-bound x occurrence, untouched
        assert alpha_eq(r, Lam(outer_x, App(App(p2, outer_x), x)))


def test_sort_of():
    x = fresh_var("x", INT)
    assert sort_of(lam(x, App(f1, x))) == INTI
    assert sort_of(Quant("forall", x, App(Const("p", Fun(INT, BOOL)), x))) == BOOL
    assert sort_of(Quant("eps", x, Const("true", BOOL))) == INT
