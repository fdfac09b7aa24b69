"""Acceptance checks, one test per numbered criterion.

Each test prints a single PASS/FAIL line (run with -s to see them all; failed
checks show their line in the pytest report).  Everything is exact
arithmetic; random data is seeded and deterministic.

Criterion 6 is expected to fail at size 4 and is left failing on purpose: the
enumeration oracle is sound, and it finds a second solution branch for a
single 4x4 nilpotent block (second coefficient pinned at -1) that the
documented 9-point expectation omits.  The two-block example independently
confirms that branch (its second family pins the same coefficient at -1), so
the expectation, not the oracle, is wrong.  See test_criterion_06.
"""

import random

from ybx.bundled import (
    COORDS_42_CANONICAL_TO_GIVEN,
    NAMES_AS_GIVEN_TO_SHORT,
    NAMES_CANONICAL_TO_SHORT,
    example_41_golden_template,
    example_41_problem,
    golden_42_families,
    golden_42_system,
)
from ybx.cli import main
from ybx.formats import dumps_canonical, family_from_json, load_json, problem_to_json
from ybx.anticommutant import anticommutant_basis, pair_contributions
from ybx.jordan import (
    JordanSpec,
    assemble_jordan,
    jordan_block,
    jordan_form,
    nilpotent_part,
    similarity_from_jordan,
    validate_similarity,
)
from ybx.matrices import ExactMatrix, mat_inverse, mat_mul
from ybx.oracle import (
    branches_agree,
    cross_check_anticommutant,
    grid_enumerate_solutions,
    random_branch_values,
    random_gaussian,
)
from ybx.polynomials import ParamPolynomial, format_polynomial
from ybx.scalars import GaussianRational
from ybx.solver import (
    build_constraint_system,
    residual_ybe,
    sample,
    solve,
    solve_branches,
)

from conftest import random_invertible, random_paired_spec, random_spec


def _report(number: int, label: str, ok: bool, detail: str = "") -> bool:
    status = "PASS" if ok else "FAIL"
    line = f"ACCEPTANCE {number}: {status} - {label}"
    if detail and not ok:
        line += f" ({detail})"
    print(line)
    return ok


def test_criterion_01_example_41_end_to_end(tmp_path):
    problem_path = tmp_path / "problem.json"
    problem_path.write_text(dumps_canonical(problem_to_json(example_41_problem())))
    family_path = tmp_path / "family.json"
    exit_code = main(["solve", str(problem_path), str(family_path), "--frame", "original"])
    family = family_from_json(load_json(str(family_path)))
    golden = example_41_golden_template()

    ok = exit_code == 0
    ok = ok and len(family.branches) == 1
    ok = ok and family.branches[0].free_parameters == ("x", "y")
    detail = ""
    if ok:
        for i in range(8):
            for j in range(8):
                if family.template[i, j] != golden[i, j]:
                    ok = False
                    detail = (
                        f"entry ({i},{j}) = {format_polynomial(family.template[i, j])}, "
                        f"expected {format_polynomial(golden[i, j])}"
                    )
                    break
            if not ok:
                break
    # spot checks stated explicitly: (1,1) = (8y+4x)/33, (5,3) = (132y-66x)/33,
    # rows 4, 6, 7 zero (1-indexed)
    x = ParamPolynomial.variable("x")
    y = ParamPolynomial.variable("y")
    third = GaussianRational(1) / GaussianRational(33)
    ok = ok and family.template[0, 0] == (y * 8 + x * 4) * third
    ok = ok and family.template[4, 2] == (y * 132 - x * 66) * third
    ok = ok and all(
        family.template[i, j].is_zero() for i in (3, 5, 7 - 1) for j in range(8)
    )
    assert _report(1, "example 4.1 end-to-end original-frame template", ok, detail)


def test_criterion_02_constraint_system_equivalence():
    template, system = build_constraint_system((4, 3))
    branches = solve_branches(system, parameters=template.variables())
    renamed = [b.rename(NAMES_CANONICAL_TO_SHORT) for b in branches]
    renamed_system = [p.rename(NAMES_CANONICAL_TO_SHORT) for p in system]
    golden = golden_42_system()

    ok = True
    detail = ""
    for bi, branch in enumerate(renamed):
        for trial in range(100):
            values = random_branch_values(branch, random.Random(f"c2:{bi}:{trial}"))
            if values is None:
                continue
            bad = next((p for p in golden if p.evaluate(values)), None)
            if bad is not None:
                ok = False
                detail = f"branch {bi} violates {format_polynomial(bad)}"
                break
        if not ok:
            break
    if ok:
        for gi, fam in enumerate(golden_42_families()):
            for trial in range(100):
                values = random_branch_values(fam, random.Random(f"c2g:{gi}:{trial}"))
                if values is None:
                    continue
                bad = next((p for p in renamed_system if p.evaluate(values)), None)
                if bad is not None:
                    ok = False
                    detail = f"documented family {gi} violates a generated constraint"
                    break
            if not ok:
                break
    assert _report(2, "two-block constraint system equals the six expected equations", ok, detail)


def test_criterion_03_branch_count_and_shape():
    template, system = build_constraint_system((4, 3))
    branches = solve_branches(system, parameters=template.variables())
    renamed = [b.rename(NAMES_CANONICAL_TO_SHORT) for b in branches]
    golden = golden_42_families()

    ok = len(branches) == 4
    detail = "" if ok else f"got {len(branches)} branches"

    matched: dict[int, int] = {}
    if ok:
        for gi, fam in enumerate(golden):
            hits = [
                bi
                for bi, branch in enumerate(renamed)
                if branches_agree(fam, branch, 60, seed=900 + gi)
            ]
            if len(hits) != 1:
                ok = False
                detail = f"documented family {gi} matches branches {hits}"
                break
            matched[gi] = hits[0]
    if ok and len(set(matched.values())) != 4:
        ok = False
        detail = f"matching is not a bijection: {matched}"
    if ok:
        for gi, bi in matched.items():
            fam = golden[gi]
            branch = renamed[bi]
            if {p.terms for p in fam.disequalities} != {
                p.terms for p in branch.disequalities
            }:
                ok = False
                detail = f"family {gi} side conditions differ"
                break
            for condition in fam.disequalities:
                pinned = condition.variables()[0]
                rational = [
                    rf for _, rf in branch.assignments if not rf.is_polynomial()
                ]
                if not rational or not all(
                    rf.denominator == ParamPolynomial.variable(pinned) for rf in rational
                ):
                    ok = False
                    detail = f"family {gi}: expected rational entries over {pinned}"
                    break
            if not ok:
                break
    if ok:
        # matrix-level: canonical samples permute onto the as-given layout
        given_order_template, _ = build_constraint_system((3, 4))
        as_given = {v: k for k, v in NAMES_AS_GIVEN_TO_SHORT.items()}
        for bi, branch in enumerate(branches):
            values = random_branch_values(branch, random.Random(f"c3m:{bi}"))
            if values is None:
                ok = False
                detail = f"branch {bi} degenerate under sampling"
                break
            k_canonical = template.evaluate(values)
            short_values = {
                NAMES_CANONICAL_TO_SHORT[name]: v for name, v in values.items()
            }
            given_order_values = {as_given[short]: v for short, v in short_values.items()}
            k_given = given_order_template.evaluate(given_order_values)
            coords = COORDS_42_CANONICAL_TO_GIVEN
            if any(
                k_given[coords[i], coords[j]] != k_canonical[i, j]
                for i in range(7)
                for j in range(7)
            ):
                ok = False
                detail = f"branch {bi} does not permute onto the displayed layout"
                break
    assert _report(3, "two-block search yields the four documented branches", ok, detail)


def test_criterion_04_nonsingular_zero_family():
    rng = random.Random(404)
    ok = True
    detail = ""
    for case in range(200):
        if case % 3 == 0:
            spec = random_paired_spec(rng, max_n=8)
        else:
            spec = random_spec(rng, max_n=8, forbid_zero=True)
        family = solve(similarity_from_jordan(spec))
        if (
            len(family.branches) != 1
            or family.branches[0].free_parameters
            or not family.template.is_zero()
        ):
            ok = False
            detail = f"case {case}: {spec.groups}"
            break
    assert _report(4, "200 nonsingular inputs give the zero-only family", ok, detail)


def test_criterion_05_anticommutant_oracle_agreement():
    rng = random.Random(505)
    ok = True
    detail = ""
    for case in range(200):
        u = random_spec(rng, max_n=8)
        v = random_spec(rng, max_n=8)
        report = cross_check_anticommutant(u, v)
        structural_count = anticommutant_basis(u, v).dimension
        formula = sum(r for *_, r in pair_contributions(u, v))
        if not (report.span_match and structural_count == formula == report.oracle_dimension):
            ok = False
            detail = f"case {case}: {u.groups} vs {v.groups}: {report}"
            break
    assert _report(5, "200 random anticommutants match the vectorized kernel", ok, detail)


def _corner_family_grid_points(n: int, values) -> set:
    points = set()
    for xv in values:
        for yv in values:
            grid = [[GaussianRational(0)] * n for _ in range(n)]
            grid[0][n - 2] = GaussianRational(yv)
            grid[0][n - 1] = GaussianRational(xv)
            grid[1][n - 1] = -GaussianRational(yv)
            points.add(ExactMatrix.from_rows(grid).entries)
    return points


def test_criterion_06_single_block_grid_oracle():
    values = (-1, 0, 1)
    ok = True
    detail = ""
    for n in (3, 4):
        enumerated = {k.entries for k in grid_enumerate_solutions(jordan_block(0, n), values)}
        expected = _corner_family_grid_points(n, values)
        if enumerated != expected:
            extra = enumerated - expected
            ok = False
            detail = (
                f"size {n}: enumeration finds {len(enumerated)} points, expected "
                f"{len(expected)}; the size-4 block has a second branch with the "
                f"second coefficient pinned at -1 ({len(extra)} extra points), "
                f"which the two-block example's second family independently "
                f"exhibits, so the 9-point expectation is unattainable"
            )
            break
    assert _report(6, "grid enumeration equals the corner family for sizes 3 and 4", ok, detail)


def test_criterion_07_equivalence_property_suite():
    rng = random.Random(707)
    seen = {True: 0, False: 0}
    ok = True
    detail = ""
    for case in range(500):
        if case % 5 == 0:
            # all-size-one nilpotent part: every anticommutant member solves
            spec = random_spec(
                rng, max_n=4, require_zero=True, pool=(GaussianRational(0), GaussianRational(2))
            )
            spec = JordanSpec(
                tuple(
                    (eig, (1,) * sum(sizes)) if not eig else (eig, sizes)
                    for eig, sizes in spec.groups
                )
            )
        else:
            spec = random_spec(rng, max_n=6, require_zero=True)
        j = assemble_jordan(spec)
        basis = anticommutant_basis(spec, spec)
        k = ExactMatrix.zeros(spec.n, spec.n)
        for element in basis.basis:
            k = k + element * random_gaussian(rng)
        quad_zero = residual_ybe(j, k).is_zero()
        product_zero = mat_mul(mat_mul(k, k - j), j).is_zero()
        if quad_zero != product_zero:
            ok = False
            detail = f"case {case}: equivalence fails on {spec.groups}"
            break
        seen[quad_zero] += 1
    if ok and (seen[True] < 50 or seen[False] < 50):
        ok = False
        detail = f"need both outcomes at least 50 times, saw {seen}"
    assert _report(
        7,
        "500 anticommutant members: quadratic equation iff product form vanishes",
        ok,
        detail,
    )


def test_criterion_08_support_invariant():
    rng = random.Random(808)
    ok = True
    detail = ""
    checked = 0
    while checked < 200 and ok:
        spec = random_spec(rng, max_n=8, require_zero=True)
        sizes, dim = nilpotent_part(spec.canonical()[0])
        if sum(1 for s in sizes if s >= 4) > 1:
            continue  # keep the branch search cheap; coverage stays mixed
        family = solve(similarity_from_jordan(spec))
        for branch_index, branch in enumerate(family.branches):
            if checked >= 200:
                break
            values = random_branch_values(branch, random.Random(f"c8:{checked}"))
            if values is None or branch.residual_system:
                continue
            k = sample(family, branch_index, {n: values[n] for n in branch.free_parameters})
            for i in range(spec.n):
                for j in range(spec.n):
                    if (i >= dim or j >= dim) and k[i, j]:
                        ok = False
                        detail = f"{spec.groups}: nonzero at {(i, j)}"
                        break
                if not ok:
                    break
            checked += 1
    assert _report(8, "200 sampled solutions vanish outside the nilpotent block", ok, detail)


def test_criterion_09_jordan_round_trip():
    rng = random.Random(909)
    ok = True
    detail = ""
    for case in range(100):
        spec = random_spec(rng, max_n=6)
        canon, _ = spec.canonical()
        w = random_invertible(rng, canon.n)
        a = mat_mul(mat_mul(w, assemble_jordan(canon)), mat_inverse(w))
        data = jordan_form(a, [eig for eig, _ in canon.groups])
        if data.spec != canon:
            ok = False
            detail = f"case {case}: recovered {data.spec.groups}, expected {canon.groups}"
            break
        try:
            validate_similarity(a, data.w, data.spec)
        except Exception as exc:  # noqa: BLE001 - reported as failure detail
            ok = False
            detail = f"case {case}: {exc}"
            break
    assert _report(9, "100 exact Jordan round trips recover the canonical form", ok, detail)
