"""Certificate checking: rule contracts, parsing, printing, soundness."""

import random

import pytest

from hosmt.calculus import (BETA_THEORY, CertificateError, EqJudgment,
                            LemmaFormula, ProofStep, check_certificate,
                            check_step, parse_certificate, print_certificate)
from hosmt.context import EMPTY, apply_context
from hosmt.core import (App, BOOL, Const, Fun, INT, Lam, Let, Quant,
                        alpha_eq, fresh_var, not_term)

from conftest import DATA

import mutate

GOLDEN = ("example1.hoproof", "example2.hoproof", "example3.hoproof")


def load(name):
    path = DATA / name
    return parse_certificate(path.read_text(), filename=str(path))


def step(sid, rule, premises, ctx, lhs, rhs, **kw):
    return ProofStep(sid, rule, tuple(premises),
                     EqJudgment(ctx, lhs, rhs), **kw)


class TestGolden:
    @pytest.mark.parametrize("name", GOLDEN)
    def test_valid_without_trust(self, name):
        report = check_certificate(load(name))
        assert report.verdict == "valid"
        assert report.trusted_count == 0

    def test_example1_final(self):
        cert = load("example1.hoproof")
        c = cert.final.conclusion
        assert c.ctx.is_empty()
        assert cert.final.rule == "beta"
        a = Const("a", INT)
        p = Const("p", Fun(INT, Fun(INT, INT)))
        x = fresh_var("x", INT)
        lhs = App(Lam(x, App(App(p, x), x)), a)
        rhs = App(App(p, a), a)
        assert alpha_eq(c.lhs, lhs) and alpha_eq(c.rhs, rhs)

    def test_example3_contains_trans_under_bind(self):
        cert = load("example3.hoproof")
        assert cert.final.rule == "bind"
        by_id = {s.id: s for s in cert.steps}
        (child,) = cert.final.premises
        assert by_id[child].rule == "trans"

    def test_rule_locality(self):
        # each step's verdict is a function of the step and its premises alone
        for name in GOLDEN:
            cert = load(name)
            report = check_certificate(cert)
            by_id = {s.id: s for s in cert.steps}
            for s, r in zip(cert.steps, report.results):
                local = check_step(s, [by_id[p] for p in s.premises])
                assert local.status == r.status

    def test_beta_let_kinship(self):
        # every beta step's premises also justify the corresponding let step
        found = 0
        for name in GOLDEN:
            cert = load(name)
            by_id = {s.id: s for s in cert.steps}
            for s in cert.steps:
                if s.rule != "beta":
                    continue
                p1, p2 = (by_id[p] for p in s.premises)
                tail = p2.conclusion.ctx.entry
                (x, _), = tail.pairs
                c = s.conclusion
                let_lhs = Let(((x, p1.conclusion.lhs),), p2.conclusion.lhs)
                ls = step("k", "let", (p1.id, p2.id), c.ctx, let_lhs, c.rhs)
                assert check_step(ls, [p1, p2]).status == "ok"
                found += 1
        assert found >= 5


class TestParsing:
    def test_unknown_rule(self):
        with pytest.raises(CertificateError) as e:
            parse_certificate("(step s1 :rule bita :conclusion (= 1 1))")
        assert "unknown rule bita" in str(e.value)

    def test_direct_refl(self):
        cert = parse_certificate(
            "(declare-fun a () Int)\n"
            "(step s1 :rule refl :context ((map (x a))) "
            ":conclusion (= x a))\n"
            "(step s2 :rule refl :conclusion (= a a))")
        assert [s.rule for s in cert.steps] == ["refl", "refl"]
        c = cert.steps[0].conclusion
        assert len(c.ctx.entries()) == 1
        assert apply_context(c.ctx, c.lhs) == c.rhs

    def test_missing_conclusion(self):
        with pytest.raises(CertificateError) as e:
            parse_certificate("(step s1 :rule refl)")
        assert "lacks a :conclusion" in str(e.value)

    def test_shared_variable_identity(self):
        # the same (name, sort) across steps is one variable
        cert = parse_certificate(
            "(declare-fun f (Int) Int)\n"
            "(step s1 :rule refl :context ((fix w Int) (map (x w))) "
            ":conclusion (= (f x) (f w)))\n"
            "(step s2 :rule refl :context ((fix w Int) (map (x w))) "
            ":conclusion (= x w))")
        c1, c2 = (s.conclusion for s in cert.steps)
        assert c1.ctx.entries()[0].var.id == c2.ctx.entries()[0].var.id

    @pytest.mark.parametrize("name", GOLDEN)
    def test_print_roundtrip(self, name):
        cert = load(name)
        text = print_certificate(cert)
        cert2 = parse_certificate(text)
        assert check_certificate(cert2).verdict == "valid"
        assert print_certificate(cert2) == text
        assert [s.rule for s in cert2.steps] == [s.rule for s in cert.steps]


class TestPerturbations:
    def test_example1_bad_leaf(self):
        text = (DATA / "example1.hoproof").read_text()
        bad = text.replace("(step r3 :rule refl :context ((map (x a))) "
                           ":conclusion (= x a))",
                           "(step r3 :rule refl :context ((map (x a))) "
                           ":conclusion (= x (p a a)))")
        assert bad != text
        report = check_certificate(parse_certificate(bad))
        assert report.verdict == "invalid"
        assert report.first_failure.id == "r3"

    def test_final_context_must_be_empty(self):
        cert = parse_certificate(
            "(declare-fun a () Int)\n"
            "(step s1 :rule refl :context ((map (x a))) "
            ":conclusion (= x a))")
        report = check_certificate(cert)
        assert report.verdict == "invalid"
        assert "non-empty context" in report.first_failure.message

    def test_duplicate_step_id(self):
        cert = parse_certificate(
            "(declare-fun a () Int)\n"
            "(step s1 :rule refl :conclusion (= a a))\n"
            "(step s1 :rule refl :conclusion (= a a))")
        assert check_certificate(cert).verdict == "invalid"

    def test_forward_premise_reference(self):
        cert = parse_certificate(
            "(declare-fun a () Int)\n"
            "(step s1 :rule trans :premises (s2 s2) :conclusion (= a a))\n"
            "(step s2 :rule refl :conclusion (= a a))")
        report = check_certificate(cert)
        assert report.verdict == "invalid"
        assert "unknown or later" in report.first_failure.message


class TestTaut:
    def test_beta_theory_validated(self):
        cert = parse_certificate(
            "(declare-fun a () Int)\n"
            "(step s1 :rule taut :theory beta "
            ":conclusion (= ((lambda ((x Int)) x) a) a))")
        report = check_certificate(cert)
        assert report.verdict == "valid" and report.trusted_count == 0

    def test_beta_theory_rejects(self):
        cert = parse_certificate(
            "(declare-fun a () Int)(declare-fun b () Int)\n"
            "(step s1 :rule taut :theory beta :conclusion (= a b))")
        report = check_certificate(cert)
        assert report.verdict == "invalid"
        assert "beta-normal" in report.first_failure.message

    def test_other_theories_trusted(self):
        cert = parse_certificate(
            "(step s1 :rule taut :theory arith "
            ":conclusion (= (+ 1 1) 2))")
        report = check_certificate(cert)
        assert report.verdict == "valid-with-trust"
        assert report.trusted_count == 1
        assert report.results[0].status == "trusted"


class TestSko:
    def setup_method(self):
        self.p = Const("p", Fun(INT, BOOL))
        self.x = fresh_var("x", INT)

    def test_sko_ex(self):
        x, p = self.x, self.p
        body = App(p, x)
        eps = Quant("eps", x, body)
        prem = step("p1", "refl", (), EMPTY.map([(x, eps)]),
                    body, App(p, eps))
        conc = step("c", "sko_ex", ("p1",), EMPTY,
                    Quant("exists", x, body), App(p, eps))
        assert check_step(prem, []).status == "ok"
        assert check_step(conc, [prem]).status == "ok"

    def test_sko_all(self):
        x, p = self.x, self.p
        body = App(p, x)
        eps = Quant("eps", x, not_term(body))
        prem = step("p1", "refl", (), EMPTY.map([(x, eps)]),
                    body, App(p, eps))
        conc = step("c", "sko_all", ("p1",), EMPTY,
                    Quant("forall", x, body), App(p, eps))
        assert check_step(conc, [prem]).status == "ok"

    def test_sko_ex_wrong_witness(self):
        # the mapped term must be the choice term for the body, not its negation
        x, p = self.x, self.p
        body = App(p, x)
        eps = Quant("eps", x, not_term(body))
        prem = step("p1", "refl", (), EMPTY.map([(x, eps)]),
                    body, App(p, eps))
        conc = step("c", "sko_ex", ("p1",), EMPTY,
                    Quant("exists", x, body), App(p, eps))
        r = check_step(conc, [prem])
        assert r.status == "invalid" and "choice term" in r.message


class TestInst:
    def test_inst_forall(self):
        cert = parse_certificate(
            "(declare-fun p (Int) Bool)(declare-fun a () Int)\n"
            "(step s1 :rule inst_forall :binding ((x a)) "
            ":conclusion (=> (forall ((x Int)) (p x)) (p a)))")
        assert check_certificate(cert).verdict == "valid"

    def test_inst_exists(self):
        cert = parse_certificate(
            "(declare-fun p (Int) Bool)(declare-fun a () Int)\n"
            "(step s1 :rule inst_exists :binding ((x a)) "
            ":conclusion (=> (p a) (exists ((x Int)) (p x))))")
        assert check_certificate(cert).verdict == "valid"

    def test_inst_forall_wrong_instance(self):
        cert = parse_certificate(
            "(declare-fun p (Int) Bool)"
            "(declare-fun a () Int)(declare-fun b () Int)\n"
            "(step s1 :rule inst_forall :binding ((x a)) "
            ":conclusion (=> (forall ((x Int)) (p x)) (p b)))")
        report = check_certificate(cert)
        assert report.verdict == "invalid"
        assert "not the substituted body" in report.first_failure.message

    def test_inst_forall_wrong_sort(self):
        cert = parse_certificate(
            "(declare-fun p (Int) Bool)(declare-fun f (Int) Int)\n"
            "(step s1 :rule inst_forall :binding ((x f)) "
            ":conclusion (=> (forall ((x Int)) (p x)) (p 1)))")
        report = check_certificate(cert)
        assert report.verdict == "invalid"
        assert "wrong sort" in report.first_failure.message


class TestSideConditions:
    def test_bind_capture_rejected(self):
        # premise (y, x -> y) |> y ~ y would conclude lambda x. y ~ lambda y. y,
        # but y occurs free on the left: the derivation must be rejected
        x = fresh_var("x", INT)
        y = fresh_var("y", INT)
        prem_ctx = EMPTY.fix(y).map([(x, y)])
        prem = step("p1", "refl", (), prem_ctx, y, y)
        conc = step("c", "bind", ("p1",), EMPTY, Lam(x, y), Lam(y, y))
        r = check_step(conc, [prem])
        assert r.status == "invalid" and "side condition" in r.message

    def test_beta_non_invariant_argument_rejected(self):
        # the mapped term must be invariant under the conclusion context
        a = Const("a", INT)
        x = fresh_var("x", INT)
        z = fresh_var("z", INT)
        ctx = EMPTY.map([(x, a)])
        p1 = step("p1", "refl", (), ctx, x, x)  # (deliberately bogus shape)
        p2 = step("p2", "refl", (), ctx.map([(z, x)]), z, x)
        conc = step("c", "beta", ("p1", "p2"), ctx, App(Lam(z, z), x), x)
        r = check_step(conc, [p1, p2])
        assert r.status == "invalid" and "side condition" in r.message

    def test_let_non_invariant_value_rejected(self):
        a = Const("a", INT)
        x = fresh_var("x", INT)
        v = fresh_var("v", INT)
        ctx = EMPTY.map([(x, a)])
        p1 = step("p1", "refl", (), ctx, x, x)
        p2 = step("p2", "refl", (), ctx.map([(v, x)]), v, x)
        conc = step("c", "let", ("p1", "p2"), ctx, Let(((v, x),), v), x)
        r = check_step(conc, [p1, p2])
        assert r.status == "invalid" and "side condition" in r.message


class TestMutations:
    def test_kit_rejection_rate(self):
        rng = random.Random(99)
        total = 0
        rejected = 0
        for name in GOLDEN:
            cert = load(name)
            for _ in range(70):
                _, mutated = mutate.random_mutation(cert, rng)
                total += 1
                if check_certificate(mutated).verdict == "invalid":
                    rejected += 1
        assert total == 210
        assert rejected / total >= 0.95

    def test_each_mutation_kind_applies(self):
        rng = random.Random(7)
        cert = load("example3.hoproof")
        for m in mutate.MUTATIONS:
            assert m(cert, rng) is not None
