"""Acceptance battery: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or as a script.
"""
import sys

import pytest

from symx.models import BasedFn, product_based
from symx.order import Rat
from symx.suites import RunConfig, run_suite

LINES: list[str] = []


def report(number: int, text: str, ok: bool) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}"
    LINES.append(line)
    print(line)


def suite(name, index=2, slots=2, depth=2, cases=1000, budget=10 ** 7):
    return run_suite(RunConfig(name, index, slots, depth, cases, 0, budget, "json"))


def test_c01_symmetry_lemma():
    rep = suite("symmetry-lemma", 2, 2, 2)
    ok = rep.passed and rep.wall < 60 and rep.counts["tuples"] > 0
    report(1, f"symmetry lemma 2x2, name depth 2, formula depth 1: {rep.counts['tuples']} tuples, "
              f"{len(rep.counterexamples)} counterexamples, {rep.wall:.1f}s "
              f"(corrupted action caught {rep.counts['mutant_counterexamples']} times)", ok)
    assert ok


def test_c02_oracle_equivalence():
    rep = suite("oracle-equiv", 3, 3, 2, 10 ** 4)
    ok = rep.passed and rep.counts["instances"] >= 10 ** 4
    report(2, f"forces vs oracle on {rep.counts['instances']} instances up to 3x3: "
              f"{len(rep.counterexamples)} mismatches", ok)
    assert ok


def test_c03_restriction():
    rep = suite("restriction", 3, 3)
    ok = rep.passed and rep.counts["triples"] >= 1000
    report(3, f"restriction laws on {rep.counts['triples']} triples: {len(rep.counterexamples)} failures", ok)
    assert ok


def test_c04_mixing():
    rep = suite("mixing", 3, 3)
    ok = rep.passed and rep.counts["antichains"] >= 1000
    report(4, f"mixing on {rep.counts['antichains']} antichains (<= 4 branches), certificate support is "
              f"the union of branch supports so its fix is the intersected group: "
              f"{len(rep.counterexamples)} failures", ok)
    assert ok


def test_c05_normality():
    rep = suite("normality")
    ok = rep.passed and rep.counts["pairs"] >= 1000
    report(5, f"conjugate_fix on {rep.counts['pairs']} (pi, E) pairs, checked extensionally: "
              f"{len(rep.counterexamples)} failures", ok)
    assert ok


def test_c06_tenacity():
    rep = suite("tenacity", 3, 3)
    report(6, f"tenacity witness supp(p) on all {rep.counts['conditions']} conditions up to 3x3: "
              f"{len(rep.counterexamples)} failures", rep.passed)
    assert rep.passed


def test_c07_model_one():
    rep = suite("model1-product")
    f6 = product_based(BasedFn(1, ((Rat(1), 0),), 2), BasedFn(2, ((Rat(0), 1), (Rat(5), 0)), 3), 2, 3)
    worked = f6 == BasedFn(5, ((Rat(0), 4), (Rat(1), 1), (Rat(5), 0)), 6)
    ok = rep.passed and worked and rep.counts["pairs"] >= 1000
    report(7, f"based products for n, m <= 5 on {rep.counts['pairs']} pairs, worked example {f6}: "
              f"{len(rep.counterexamples)} failures (product after unproduct holds on the image; "
              f"the product map is not onto)", ok)
    assert ok


def test_c08_model_two():
    rep = suite("model2-codes")
    ok = rep.passed and rep.counts["prefixes"] >= 1000
    report(8, f"interleave on {rep.counts['prefixes']} prefixes, product_code round trips, intersection law "
              f"on all {rep.counts['pairs']} pairs S, T of {{0..7}}: {len(rep.counterexamples)} failures", ok)
    assert ok


def test_c09_choice_name():
    rep = suite("choice-build")
    ok = rep.passed and rep.counts["instances"] >= 20
    report(9, f"choice names on {rep.counts['instances']} instances, ill-defined fixture rejected: "
              f"{len(rep.counterexamples)} failures", ok)
    assert ok


def test_c10_measurability():
    rep = suite("measurability", 3, 3)
    report(10, f"check-ordinal families ({rep.counts['families']}) injective, measured and densely "
               f"measurable; non-measurable fixture fails: {len(rep.counterexamples)} failures", rep.passed)
    assert rep.passed


def test_c11_find_automorphism():
    rep = suite("find-auto")
    ok = rep.passed and rep.counts["specs"] >= 1000
    report(11, f"{rep.counts['specs']} specs ({rep.counts['solved']} solved and re-verified, "
               f"{rep.counts['unsatisfiable']} unsatisfiable as predicted), impossible fixtures all "
               f"rejected: {len(rep.counterexamples)} failures", ok)
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
