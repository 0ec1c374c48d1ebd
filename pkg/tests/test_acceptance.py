"""Exit criteria, run at full size with exact arithmetic and zero tolerance."""

import json
import random
import time
from fractions import Fraction

import pytest

from lipfree import document as doc
from lipfree.cli import run
from lipfree.extremal import (
    brute_force_extreme,
    classify_molecule,
    exposure_certificate,
    exposure_margin,
    mass_concentration_check,
    split_representation,
    verify_certificate,
)
from lipfree.free_space import (
    dist_to_subspace,
    dual_norm,
    from_representation,
    molecule,
    primal_norm,
    rebase,
)
from lipfree.lipschitz import lip_norm, magic_function, pair_quotient
from lipfree.metric import epsilon_segment, segment
from lipfree.suite import corpus, mass_instance, padded_representation, random_element, random_family

from conftest import ACCEPTANCE_LINES

SEED = 20240601
EPS_VALUES = (Fraction(1, 2), Fraction(1, 3), Fraction(1, 5), Fraction(1, 10), Fraction(1, 100))
SPLIT_GRID = [(a, e) for a in (Fraction(1, 4), Fraction(1, 8)) for e in (Fraction(1, 4), Fraction(1, 8))]


def report(tag, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {tag} {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.fixture(scope="module")
def spaces():
    # corpus() cycles euclidean / shortest_path / generic profiles
    found = corpus(SEED, 100, 3, 10)
    assert len(found) >= 100 and all(3 <= M.n <= 10 for M in found)
    return found


def test_c1_theorem_equivalence(spaces):
    start = time.perf_counter()
    checked, bad = 0, []
    for M in spaces:
        for p, q in M.ordered_pairs():
            trivial = len(segment(M, p, q)) == 2
            extreme, _ = brute_force_extreme(M, (p, q))
            exposed = exposure_margin(M, (p, q)) > 0
            checked += 1
            if not (trivial == extreme == exposed):
                bad.append((M, p, q))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed <= 120
    report("C1", "trivial segment <=> LP-extreme <=> margin > 0", ok,
           f"{checked} ordered pairs over {len(spaces)} spaces, {len(bad)} disagreements, {elapsed:.1f}s")
    assert not bad
    assert elapsed <= 120


def test_c2_strong_duality(spaces):
    rng = random.Random(SEED + 2)
    count, gaps = 0, 0
    for M in spaces:
        for _ in range(2):
            mu = random_element(rng, M)
            primal, rep = primal_norm(mu)
            count += 1
            if primal != dual_norm(mu) or from_representation(M, rep) != mu:
                gaps += 1
    ok = count >= 200 and gaps == 0
    report("C2", "primal norm == dual norm", ok, f"{count} elements, {gaps} nonzero gaps")
    assert ok


def test_c3_magic_function_lemma(spaces):
    checks, violations = 0, 0
    for M in spaces:
        for p, q in M.ordered_pairs():
            f = magic_function(M, p, q)
            checks += 1
            violations += lip_norm(f) > 1
            seg = segment(M, p, q)
            esegs = [(e, epsilon_segment(M, p, q, e)) for e in EPS_VALUES]
            for u, v in M.ordered_pairs():
                quotient = pair_quotient(f, u, v)
                for e, es in esegs:
                    if quotient > 1 - e:
                        checks += 1
                        violations += not (u in es and v in es)
                if quotient == 1:
                    checks += 1
                    violations += not (u in seg and v in seg)
    report("C3", "magic function norm, eps-segment and segment implications", violations == 0,
           f"{checks} implications, {violations} violations")
    assert violations == 0


def test_c4_mass_concentration():
    rng = random.Random(SEED + 4)
    count, violations = 10_000, 0
    for _ in range(count):
        a, b, alpha, eps = mass_instance(rng)
        assert sum(x * y for x, y in zip(a, b)) >= 1 - alpha * eps
        res = mass_concentration_check(a, b, alpha, eps)
        violations += not (res.passed and res.tail_mass <= eps)
    report("C4", "mass concentration tail <= eps", violations == 0,
           f"{count} instances, {violations} violations")
    assert violations == 0


def test_c5_quotient_split(spaces):
    runs, violations, pairs = 0, 0, 0
    for M in spaces:
        for p, q in M.ordered_pairs():
            if len(segment(M, p, q)) != 2:
                continue
            pairs += 1
            Mq = M.with_base(q)
            mu = rebase(molecule(M, p, q), q)
            _, optimal = primal_norm(mu)
            for alpha, eps in SPLIT_GRID:
                padded = padded_representation(Mq, p, q, alpha, eps)
                assert from_representation(Mq, padded) == mu
                for rep in (optimal, padded):
                    res = split_representation(Mq, p, q, rep, alpha, eps)
                    runs += 1
                    violations += not (res.bad_mass <= 2 * eps and res.residual_norm <= 2 * eps and res.ok)
    report("C5", "split bad mass and residual norm <= 2 eps", violations == 0,
           f"{pairs} trivial pairs, {runs} splits, {violations} violations")
    assert violations == 0 and pairs > 0


def test_c6_intersection_shadow(spaces):
    rng = random.Random(SEED + 6)
    used = spaces[:60]
    checks, violations, positives = 0, 0, 0
    for M in used:
        for _ in range(3):
            family = random_family(rng, M)
            common = frozenset.intersection(*family)
            pool = [common, family[0], frozenset.union(*family), frozenset(range(M.n))]
            mu = random_element(rng, M, support=sorted(rng.choice(pool)))
            in_each = all(dist_to_subspace(mu, N) == 0 for N in family)
            in_common = dist_to_subspace(mu, common) == 0
            checks += 1
            positives += in_common
            violations += in_each != in_common
    ok = len(used) >= 50 and violations == 0
    report("C6", "dist 0 to every member <=> dist 0 to the intersection", ok,
           f"{checks} families over {len(used)} spaces ({positives} inside), {violations} violations")
    assert ok


def test_c7_certificate_replay_and_determinism(spaces, tmp_path):
    certs, failures = 0, 0
    for M in spaces:
        for p, q in M.ordered_pairs():
            if not classify_molecule(M, (p, q)).is_exposed:
                continue
            cert = exposure_certificate(M, (p, q))
            text = doc.dumps(doc.certificate_to_doc(cert))
            back = doc.certificate_from_doc(json.loads(text))
            certs += 1
            failures += not (verify_certificate(back) and back == cert
                             and doc.dumps(doc.certificate_to_doc(back)) == text)

    outputs = {}
    for tag, argv in [
        ("expose", ["expose", "--n", "8", "--profile", "generic", "--seed", "9", "--format", "document"]),
        ("classify", ["classify", "--n", "8", "--profile", "shortest_path", "--seed", "4", "--format", "document"]),
        ("suite", ["suite", "--seed", "42", "--count", "6", "--n", "6", "--format", "document"]),
    ]:
        blobs = []
        for k in range(2):
            out = tmp_path / f"{tag}{k}"
            assert run(argv + ["--out", str(out)]) == 0
            blobs.append(out.read_bytes())
        outputs[tag] = blobs[0] == blobs[1]
    replay_cli = tmp_path / "expose0"
    cli_replay_ok = run(["verify", "--input", str(replay_cli)]) == 0

    ok = failures == 0 and all(outputs.values()) and cli_replay_ok
    report("C7", "certificate replay and CLI determinism", ok,
           f"{certs} certificates, {failures} replay failures, byte-identical runs {outputs}")
    assert ok
