#!/usr/bin/env python3
"""Random end-to-end pipeline demo.

Generates random well-sorted terms, processes each one into a certificate,
checks the certificate, cross-checks every step with the encoding oracle,
and prints summary statistics.
"""

import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

from hosmt.calculus import check_certificate
from hosmt.core import (App, BOOL, Const, Fun, INT, Lam, Let, Quant,
                        fresh_var)
from hosmt.oracle import check_certificate_oracle
from hosmt.processor import process


@dataclass
class Config:
    count: int = 200
    max_depth: int = 6
    seed: int = 0
    oracle: bool = True


CONSTS = (
    Const("a", INT),
    Const("b", INT),
    Const("c0", BOOL),
    Const("f", Fun(INT, INT)),
    Const("g", Fun(INT, Fun(INT, INT))),
    Const("p", Fun(INT, BOOL)),
    Const("q", Fun(Fun(INT, INT), BOOL)),
)

BASE_SORTS = (INT, BOOL, Fun(INT, INT))


def gen_term(rng, sort, depth, env):
    pool = ([v for v in env if v.sort == sort]
            + [c for c in CONSTS if c.sort == sort])
    if depth <= 0 or rng.random() < 0.15:
        if pool:
            return rng.choice(pool)
        x = fresh_var("x", sort.dom)
        return Lam(x, gen_term(rng, sort.cod, 0, env + [x]))
    roll = rng.random()
    if roll < 0.35:
        dom = rng.choice(BASE_SORTS)
        return App(gen_term(rng, Fun(dom, sort), depth - 1, env),
                   gen_term(rng, dom, depth - 1, env))
    if roll < 0.5 and isinstance(sort, Fun):
        x = fresh_var("x", sort.dom)
        return Lam(x, gen_term(rng, sort.cod, depth - 1, env + [x]))
    if roll < 0.65:
        s = rng.choice(BASE_SORTS)
        v = fresh_var("v", s)
        return Let(((v, gen_term(rng, s, depth - 1, env)),),
                   gen_term(rng, sort, depth - 1, env + [v]))
    if sort == BOOL and roll < 0.8:
        x = fresh_var("x", rng.choice(BASE_SORTS))
        return Quant(rng.choice(("forall", "exists")), x,
                     gen_term(rng, BOOL, depth - 1, env + [x]))
    dom = rng.choice(BASE_SORTS)
    x = fresh_var("r", dom)
    return App(Lam(x, gen_term(rng, sort, depth - 1, env + [x])),
               gen_term(rng, dom, depth - 1, env))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=Config.count)
    ap.add_argument("--max-depth", type=int, default=Config.max_depth)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--no-oracle", dest="oracle", action="store_false")
    cfg = Config(**vars(ap.parse_args()))

    rng = random.Random(cfg.seed)
    rules = Counter()
    steps = []
    verdicts = Counter()
    oracle_ok = 0
    started = time.monotonic()
    for i in range(cfg.count):
        sort = rng.choice(BASE_SORTS)
        depth = rng.randint(1, cfg.max_depth)
        t = gen_term(rng, sort, depth, [])
        result = process(t)
        report = check_certificate(result.certificate)
        verdicts[report.verdict] += 1
        rules.update(s.rule for s in result.certificate.steps)
        steps.append(len(result.certificate.steps))
        if cfg.oracle:
            oracle_ok += all(v == "lambda-valid" for _, v in
                             check_certificate_oracle(result.certificate))
    elapsed = time.monotonic() - started

    print(f"{cfg.count} terms (seed {cfg.seed}, depth <= {cfg.max_depth}) "
          f"in {elapsed:.2f}s")
    print(f"verdicts: {dict(verdicts)}")
    print(f"steps per certificate: min {min(steps)} / "
          f"mean {sum(steps) / len(steps):.1f} / max {max(steps)}")
    print("rule histogram: "
          + ", ".join(f"{r} {n}" for r, n in rules.most_common()))
    if cfg.oracle:
        print(f"oracle: {oracle_ok}/{cfg.count} certificates "
              "fully lambda-valid")
    return 0 if verdicts.get("valid", 0) == cfg.count else 1


if __name__ == "__main__":
    raise SystemExit(main())
