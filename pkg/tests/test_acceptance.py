"""Acceptance suite: twelve end-to-end criteria, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the summary lines.
"""

import random

import pytest

from oracles import (
    invariance_oracle,
    jacobi_oracle,
    nilpotent_partition_oracle,
    orbit_data_map,
    pprime_oracle,
    rand_gram,
    rand_isometry,
    rand_nonzero,
    rand_orbit_map,
    rand_skew,
    rand_triple,
    rank_two_skew,
    triples_projectively_equal,
)
from quadlie.dblext import (
    builtin,
    double_extend,
    extract_double_extension,
    g_lambda_mu,
    g_of_partition,
    jordan_type_algebra,
    partition_map,
    with_central,
)
from quadlie.errors import AbelianError
from quadlie.exterior import AltForm, brackets_from_threeform, super_poisson, threeform_from_brackets
from quadlie.iso import (
    centromorphism_shape_check,
    centromorphisms,
    decide_iso,
    dup_transport_check,
    qdim_formula,
    quadratic_dimension,
)
from quadlie.linalg import Mat, SkewMap
from quadlie.orbits import (
    InvertibleTriple,
    Partition,
    enumerate_Pprime,
    enumerate_triples,
    fitting,
    invertible_triple,
    orbit_invariant,
    projective_equal,
    witness_map,
)
from quadlie.qla import QLA, dup, orthogonal_sum, abelian
from quadlie.serialize import dumps, loads, qla_from_json, qla_to_json


def report(number: int, failures: list[str]) -> None:
    status = "PASS" if not failures else "FAIL"
    print(f"\ncriterion {number}: {status}")
    for f in failures[:10]:
        print(f"  - {f}")
    assert not failures, failures


def conj(u: Mat, c: SkewMap) -> SkewMap:
    return SkewMap(c.space, u @ c.mat @ u.inverse())


# ---------------------------------------------------------------------------
# shared generated suite for criteria 2 and 3
# ---------------------------------------------------------------------------

def generated_suite():
    """(algebra, rank of the skew map or None for sums) with every rank class covered."""
    rng = random.Random(1001)
    suite = []
    for k in range(60):
        n = rng.randint(2, 6)
        q = rand_gram(rng, n)
        kind = k % 4
        if kind == 0:
            m = Mat.zeros(n)
        elif kind == 1:
            u = tuple(rng.randint(-2, 2) for _ in range(n))
            v = tuple(rng.randint(-2, 2) for _ in range(n))
            m = rank_two_skew(q, u, v)
        else:
            if n < 4:
                q = rand_gram(rng, rng.randint(4, 6))
            m = rand_skew(rng, q).mat
        suite.append((double_extend(q, m), m.rank()))
    for k in range(12):
        a = builtin(rng.choice(["g3", "g4", "g5", "g6"]))
        b = builtin(rng.choice(["g4", "g5"])) if k % 2 else abelian(rng.randint(1, 2))
        suite.append((orthogonal_sum(a, b), None))
    return suite


SUITE = None


def suite():
    global SUITE
    if SUITE is None:
        SUITE = generated_suite()
    return SUITE


def test_criterion_1_builtins():
    failures = []
    for name in ["g3", "g4", "g5", "g6"]:
        g = builtin(name, 1) if name == "g3" else builtin(name)
        if not (g.check_invariant_form() and g.check_jacobi()):
            failures.append(f"{name} is not a valid quadratic Lie algebra")
        if dup(g).value != 3:
            failures.append(f"dup({name}) = {dup(g).value}")
    g4 = builtin("g4")
    if not g4.is_solvable() or g4.is_nilpotent():
        failures.append("g4 should be solvable and not nilpotent")
    for name in ["g5", "g6"]:
        if not builtin(name).is_nilpotent():
            failures.append(f"{name} should be nilpotent")
    report(1, failures)


def test_criterion_2_dup_trichotomy():
    failures = []
    counted = 0
    by_rank = {0: 0, 2: 0, 4: 0}
    for g, r in suite():
        if r == 0:
            # rank zero gives an Abelian algebra, where dup is undefined
            try:
                dup(g)
                failures.append("rank-0 double extension did not raise AbelianError")
            except AbelianError:
                by_rank[0] += 1
            continue
        d = dup(g).value
        counted += 1
        if d not in (0, 1, 3):
            failures.append(f"dup = {d}")
        if r is not None:
            by_rank[2 if r == 2 else 4] += 1
            if r == 2 and d != 3:
                failures.append(f"rank 2 gave dup {d}")
            if r >= 4 and d != 1:
                failures.append(f"rank {r} gave dup {d}")
        if d == 1:
            dd = len(g.derived())
            if dd % 2 == 0 or dd < 5:
                failures.append(f"S1 case with dim [g,g] = {dd}")
    if counted < 50:
        failures.append(f"only {counted} non-Abelian instances")
    if not all(by_rank.values()):
        failures.append(f"rank classes not all covered: {by_rank}")
    report(2, failures)


def test_criterion_3_jacobi_vs_poisson():
    failures = []
    rng = random.Random(1003)
    cases = [g for g, _ in suite()]
    perturbed = 0
    while perturbed < 20:
        g = builtin(rng.choice(["g4", "g5", "g6"]))
        form = threeform_from_brackets(g)
        i, j, k = sorted(rng.sample(range(g.dim), 3))
        delta = AltForm(g.dim, 3, {(i, j, k): rng.choice([1, -1, 2, "i"])})
        h = brackets_from_threeform(g.space, form + delta)
        if jacobi_oracle(h):
            continue
        cases.append(h)
        perturbed += 1
    for g in cases:
        form = threeform_from_brackets(g)
        poisson_zero = super_poisson(g.space, form, form).is_zero()
        if g.check_jacobi() != poisson_zero:
            failures.append(f"dim {g.dim}: Jacobi {g.check_jacobi()} but {{I,I}} = 0 is {poisson_zero}")
        if g.check_jacobi() != jacobi_oracle(g):
            failures.append(f"dim {g.dim}: Jacobi check disagrees with the oracle")
        if not invariance_oracle(g):
            failures.append("suite instance with a non-invariant form")
    report(3, failures)


def test_criterion_4_lambda_mu_family():
    failures = []
    if decide_iso(g_lambda_mu(1, 2), g_lambda_mu(1, 1)).isomorphic:
        failures.append("g(1,2) ~ g(1,1)")
    if not decide_iso(g_lambda_mu(1, -1), g_lambda_mu(1, 1)).isomorphic:
        failures.append("g(1,-1) !~ g(1,1)")
    for lam in [2, "i", "3/5"]:
        if not decide_iso(builtin("g4", lam), builtin("g4")).isomorphic:
            failures.append(f"g4({lam}) !~ g4")
    report(4, failures)


def test_criterion_5_nilpotent_classification():
    failures = []
    for n in range(1, 9):
        if [p.parts for p in enumerate_Pprime(n)] != pprime_oracle(n):
            failures.append(f"P'({n}) disagrees with the oracle")
    algebras = {}
    for n in range(1, 7):
        for d in enumerate_Pprime(n):
            c = partition_map(d.parts)
            if orbit_invariant(c).nilpotent != d or nilpotent_partition_oracle(c.mat) != d.parts:
                failures.append(f"core map of {d.parts} has a different partition")
            if max(d.parts) == 1:
                # all-ones gives C = 0 and an Abelian algebra; no extraction or iso there
                continue
            g = g_of_partition(d.parts)
            got = orbit_invariant(extract_double_extension(g).cbar).nilpotent
            if got != d:
                failures.append(f"extraction from g_{list(d.parts)} gave {got.parts}")
            algebras[d.parts] = g
    for a, ga in algebras.items():
        for b, gb in algebras.items():
            if a != b and decide_iso(ga, gb).isomorphic:
                failures.append(f"{a} ~ {b}")
    report(5, failures)


def test_criterion_6_orbit_invariance():
    failures = []
    rng = random.Random(1006)
    for trial in range(100):
        c, nil, triple = rand_orbit_map(rng, 8)
        base = orbit_invariant(c)
        u = rand_isometry(rng, c.space)
        if orbit_invariant(conj(u, c)) != base:
            failures.append(f"trial {trial}: conjugation changed the invariant")
        lam = rand_nonzero(rng)
        scaled = orbit_invariant(SkewMap(c.space, c.mat.scale(lam)))
        if not projective_equal(scaled, base):
            failures.append(f"trial {trial}: scaling by {lam} broke projective equality")
    report(6, failures)


def test_criterion_7_triple_bijection():
    failures = []
    total = 0
    for p in range(1, 4):
        for t in enumerate_triples(p, [1, 2, "i"]):
            total += 1
            w = witness_map(t)
            if w.dim != 2 * p or invertible_triple(w) != t:
                failures.append(f"p={p}: witness does not round-trip for {t}")
    if not total:
        failures.append("no triples enumerated")
    report(7, failures)


def test_criterion_8_fitting_and_mixtures():
    failures = []
    rng = random.Random(1008)
    nil_pool = [Partition((1,)), Partition((3,)), Partition((2, 2)), Partition((3, 1))]
    triple_pool = [rand_triple(rng, rng.randint(1, 2), values=(1, 2, "i")) for _ in range(3)]
    data = []
    for k in range(50):
        nil = rng.choice(nil_pool)
        triple = rng.choice(triple_pool)
        if k % 3 == 0:
            triple = triple.scaled(rand_nonzero(rng))
        c = orbit_data_map(nil, triple)
        c = conj(rand_isometry(rng, c.space), c)
        split = fitting(c)
        if (split.nil_part.dim, split.inv_part.dim) != (nil.size, triple.dim):
            failures.append(f"mixture {k}: fitting dims {(split.nil_part.dim, split.inv_part.dim)}")
        data.append((nil, triple, double_extend(c.space, c)))
    for i, (na, ta, ga) in enumerate(data):
        for nb, tb, gb in data[i:]:
            expected = na == nb and triples_projectively_equal(ta, tb)
            if decide_iso(ga, gb).isomorphic != expected:
                failures.append(f"{na.parts}/{ta} vs {nb.parts}/{tb}: expected {expected}")
    report(8, failures)


def reduced_singular_fixtures():
    fixtures = {
        "g4": builtin("g4"),
        "g5": builtin("g5"),
        "g6": builtin("g6"),
        "j4": jordan_type_algebra("even", 2),
        "j6": jordan_type_algebra("even", 3),
    }
    for n in range(1, 7):
        for d in enumerate_Pprime(n):
            if 1 in d.parts:
                # a part of size one puts ker C outside im C
                continue
            fixtures[f"g_{list(d.parts)}"] = g_of_partition(d.parts)
    return fixtures


def test_criterion_9_quadratic_dimension():
    failures = []
    expected = {"g4": 2, "g5": 4}
    for name, g in reduced_singular_fixtures().items():
        if not g.is_reduced():
            failures.append(f"{name} is not reduced")
            continue
        q = quadratic_dimension(g)
        if q != qdim_formula(g) or q != expected.get(name, q):
            failures.append(f"{name}: qdim {q}, formula {qdim_formula(g)}")
        if not centromorphism_shape_check(g):
            failures.append(f"{name}: shape check failed")
    if quadratic_dimension(builtin("g3")) != 1:
        failures.append("o(3) quadratic dimension is not 1")
    report(9, failures)


def test_criterion_10_dup_transport():
    failures = []
    rng = random.Random(1010)
    for name, g in reduced_singular_fixtures().items():
        maps = centromorphisms(g).maps
        base = dup(g).value
        tested = 0
        for _ in range(200):
            if tested >= 5:
                break
            d = Mat.zeros(g.dim)
            for m in maps:
                d = d + m.scale(rng.randint(-3, 3))
            if not d.det():
                continue
            got = dup_transport_check(g, d)
            if got != (base, base):
                failures.append(f"{name}: dup {got[0]} vs transported {got[1]}")
            tested += 1
        if tested < 5:
            failures.append(f"{name}: only {tested} invertible combinations found")
    report(10, failures)


def test_criterion_11_five_dimensional_corpus():
    failures = []
    rng = random.Random(1011)
    for lam in [1, 2, "i", rand_nonzero(rng)]:
        g = with_central(builtin("g3", lam), 2)
        if dup(g).value != 3:
            failures.append(f"g3({lam}) + C^2: dup {dup(g).value}")
    for name, g in [("g4 + C", with_central(builtin("g4"), 1)), ("g5", builtin("g5"))]:
        if dup(g).value != 3:
            failures.append(f"{name}: dup {dup(g).value}")
    got = orbit_invariant(extract_double_extension(builtin("g5")).cbar).nilpotent.parts
    if got != (3,):
        failures.append(f"extraction on g5 gave {got}")
    if jordan_type_algebra("odd", 1).structure != builtin("g5").structure:
        failures.append("j3 and g5 structure constants differ")
    report(11, failures)


def test_criterion_12_roundtrips():
    failures = []
    fixtures = [
        builtin("g3"),
        builtin("g3", "1/2+i"),
        builtin("g4"),
        builtin("g5"),
        builtin("g6"),
        g_lambda_mu(1, 2),
        jordan_type_algebra("odd", 2),
        jordan_type_algebra("scaled", 2, "i"),
        g_of_partition([3, 2, 2]),
        with_central(builtin("g4"), 2),
    ] + list(reduced_singular_fixtures().values())
    for g in fixtures:
        text = dumps(qla_to_json(g))
        back = qla_from_json(loads(text))
        if back != g or dumps(qla_to_json(back)) != text:
            failures.append(f"JSON round-trip failed on a dim {g.dim} fixture")
        if brackets_from_threeform(g.space, threeform_from_brackets(g)) != g:
            failures.append(f"threeform round-trip failed on a dim {g.dim} fixture")
    rng = random.Random(1012)
    done = 0
    while done < 50:
        c, _, _ = rand_orbit_map(rng, 8)
        if not c.mat.rank():
            continue
        data = extract_double_extension(double_extend(c.space, c))
        if not projective_equal(orbit_invariant(data.cbar), orbit_invariant(c)):
            failures.append(f"core {done}: extraction changed the orbit invariant")
        done += 1
    report(12, failures)
