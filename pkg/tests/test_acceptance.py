"""Acceptance criteria 1-7.  Each test prints one PASS/FAIL line."""

import math
import random
import time

from pbc.exceptional import (
    chain_count, hom_length, jet_degree, maximal_chains, orthonormal_divisor, subsheaf_lattice,
)
from pbc.kclass import LiftDatum, SheafClass, minimal_lift_class, pullback_class, shriek_class
from pbc.lattice import (
    DivisorClass, component_coordinates, e_pi, enumerate_minus_one_divisors, enumerate_minus_two_classes,
    exceptional_components, intersect,
)
from pbc.pseudo_twist import pseudo_twist_down, pseudo_twist_up, resolve_disjoint
from pbc.rigidity import RestrictionData, chi_alpha, index_of_rigidity, leaf_tangent_dim
from pbc.surface import BaseCase, SurfaceModel, anticanonical_class

from conftest import SEED, independent, random_class, random_resolution_instance, random_surface
from golden_cases import all_cases, run_case

DISJOINT = RestrictionData.disjoint()


class Criterion:
    """Collects failures and prints a single verdict line with the runtime."""

    def __init__(self, number, title, limit=None):
        self.number, self.title, self.limit = number, title, limit
        self.failures = []

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def check(self, ok, detail):
        if not ok and len(self.failures) < 5:
            self.failures.append(detail)

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        if self.limit is not None and elapsed >= self.limit:
            self.failures.append(f"runtime {elapsed:.2f}s >= {self.limit}s")
        verdict = "PASS" if not self.failures else "FAIL"
        print(f"\n[{verdict}] criterion {self.number}: {self.title} ({elapsed:.2f}s)"
              + ("" if not self.failures else f" -- {self.failures[0]}"))
        assert not self.failures, self.failures
        return False


def test_criterion_1_lattice_identities():
    rng = random.Random(SEED + 1)
    with Criterion(1, "lattice identities on 200 forests, n <= 8", limit=5) as c:
        for trial in range(200):
            x = random_surface(rng, rng.randint(0, 8))
            comps = exceptional_components(x)
            total = DivisorClass.zero(x.n)
            for f in comps:
                for g in comps:
                    c.check(intersect(x, f.class_f_dual, g.class_f) == (-1 if f.index == g.index else 0),
                            f"trial {trial}: dual pairing f{f.index} g{g.index}")
                c.check(min(component_coordinates(x, f.class_f_dual), default=0) >= 0,
                        f"trial {trial}: dual of f{f.index} not effective")
                c.check(intersect(x, e_pi(x), f.class_e_f) == -1, f"trial {trial}: e_pi.e_f")
                total = total + f.class_e_f
            c.check(total == e_pi(x), f"trial {trial}: e_pi != sum e_f")
            c.check(len(enumerate_minus_one_divisors(x)) == x.n, f"trial {trial}: -1 divisor count")


def test_criterion_2_kclass_transport():
    rng = random.Random(SEED + 2)
    with Criterion(2, "K-class transport on 500 cases", limit=5) as c:
        for trial in range(500):
            x = random_surface(rng, rng.randint(1, 7))
            k = rng.randint(0, x.n)
            j = rng.randint(k, x.n)
            m = random_class(rng, k)
            first = LiftDatum({i: rng.randint(0, 2) for i in range(k, j)})
            second = LiftDatum({i: rng.randint(0, 2) for i in range(j, x.n)})
            one_step = minimal_lift_class(m, first.merge(second), x)
            for out in (pullback_class(m, x), shriek_class(m, x), one_step):
                c.check((out.rank, out.chi) == (m.rank, m.chi), f"trial {trial}: rank/chi changed")
            c.check(shriek_class(m, x).c1 - pullback_class(m, x).c1 == m.rank * e_pi(x, k),
                    f"trial {trial}: shriek gap")
            two_step = minimal_lift_class(minimal_lift_class(m, first, x.prefix(j)), second, x)
            c.check(two_step == one_step, f"trial {trial}: two-stage lift differs")


def test_criterion_3_pseudo_twist_ledger():
    rng = random.Random(SEED + 3)
    with Criterion(3, "pseudo-twist r2 - r1 = rank on 500 pairs", limit=5) as c:
        done = 0
        while done < 500:
            x = random_surface(rng, rng.randint(1, 6))
            m = random_class(rng, 0)
            lift = minimal_lift_class(m, LiftDatum({i: rng.randint(0, 2) for i in range(x.n)}), x)
            f = rng.randrange(x.n)
            e_f = orthonormal_divisor(x, f)
            r1 = intersect(x, lift.c1, e_f)
            if r1 < 0:
                continue
            up, got_r1 = pseudo_twist_up(x, m, lift, f)
            down, got_r2 = pseudo_twist_down(x, m, lift, f)
            c.check(got_r1 == r1 and got_r2 == r1 + m.rank, f"case {done}: r-values")
            c.check(got_r2 - got_r1 == m.rank, f"case {done}: r2 - r1 != rank")
            c.check(up.c1 == m.c1 == down.c1, f"case {done}: c1 moved")
            c.check(up.chi == m.chi + r1 and down.chi == m.chi - r1 - m.rank, f"case {done}: chi")
            done += 1


def test_criterion_4_disjointness_algorithm():
    rng = random.Random(SEED + 4)
    with Criterion(4, "resolve_disjoint on 200 jet profiles, total <= 12", limit=10) as c:
        for trial in range(200):
            x, m, jets = random_resolution_instance(rng, max_total=12)
            trace = resolve_disjoint(x, m, jets)
            meet = intersect(x, m.c1, anticanonical_class(x))
            c.check(len(trace.steps) == jets.total_length, f"trial {trial}: step count")
            c.check(jets.total_length <= meet, f"trial {trial}: total exceeds c1.C_alpha")
            final = trace.final_surface
            c.check(intersect(final, trace.final_sheaf.c1, anticanonical_class(final)) == 0,
                    f"trial {trial}: final lift meets C_alpha")
            expected = chi_alpha(x, m, m, RestrictionData.transverse(jets))
            surface = x
            for i, step in enumerate(trace.steps):
                surface = surface.blow_up(step.node)
                value = chi_alpha(surface, step.sheaf, step.sheaf, RestrictionData.transverse(step.jets))
                c.check(value == expected, f"trial {trial} step {i}: chi_alpha {value} != {expected}")


def test_criterion_5_rigidity():
    rng = random.Random(SEED + 5)
    with Criterion(5, "-2 classes have index 2 and leaf dimension 0; fiber has index 0", limit=5) as c:
        surfaces = [SurfaceModel(BaseCase.F2_RATIONAL), independent(2)]
        surfaces += [random_surface(rng, rng.randint(0, 4)) for _ in range(6)]
        checked = 0
        for x in surfaces:
            for d in enumerate_minus_two_classes(x, 3):
                m = SheafClass(0, d, rng.randint(-3, 3))
                c.check(index_of_rigidity(x, m, DISJOINT) == 2, f"{d}: index")
                c.check(leaf_tangent_dim(x, m, DISJOINT, 1) == 0, f"{d}: leaf dimension")
                checked += 1
        c.check(checked >= 100, f"only {checked} -2 classes checked")
        y = SurfaceModel(BaseCase.F2_RATIONAL)
        fiber = SheafClass(0, DivisorClass(0, 1, ()), 1)
        c.check(index_of_rigidity(y, fiber, DISJOINT) == 0, "fiber index")


def test_criterion_6_exceptional_combinatorics():
    rng = random.Random(SEED + 6)
    with Criterion(6, "exceptional combinatorics for n <= 6", limit=10) as c:
        for n in range(7):
            for _ in range(3):
                x = random_surface(rng, n)
                ep = e_pi(x)
                lattice = subsheaf_lattice(x)
                c.check(len(lattice) == 2 ** n, f"n={n}: lattice size")
                for _, d in lattice:
                    c.check(intersect(x, d, ep - d) == 0, f"n={n}: D.(e_pi - D) for {d}")
                simple = sorted(orthonormal_divisor(x, f).vector() for f in range(n))
                seen = set()
                for ch in maximal_chains(x):
                    steps = sorted((ch[i + 1].c1 - ch[i].c1).vector() for i in range(n))
                    c.check(steps == simple, f"n={n}: subquotients not a permutation of e_f")
                    seen.add(tuple(e.c1 for e in ch))
                c.check(len(seen) == math.factorial(n) == chain_count(x), f"n={n}: chain count")
                for f in range(n):
                    c.check(jet_degree(x, f) == sum(hom_length(x, f, g) for g in range(n)),
                            f"n={n}: jet degree of {f}")
        c.check(jet_degree(independent(1), 0) == 1, "single blowup jet degree")


def test_criterion_7_golden_cli(tmp_path):
    with Criterion(7, "golden CLI reports are byte-identical") as c:
        configs = set()
        for config, argv, golden in all_cases():
            configs.add(config)
            outs = []
            for attempt in range(2):
                out = tmp_path / f"{attempt}_{golden.name}"
                c.check(run_case(config, argv, out) == 0, f"{golden.name}: nonzero exit")
                outs.append(out.read_bytes())
            c.check(outs[0] == outs[1] == golden.read_bytes(), f"{golden.name}: bytes differ")
        c.check(configs == {"single_blowup", "two_chain", "three_points"}, "shipped configs")

