"""Anti-commuting solutions of the quadratic matrix equation A X A = X A X.

The solution set is computed in three stages.  First, every anti-commuting
candidate lies in the anticommutant of the Jordan form, which has an explicit
block-structured basis; a solution is additionally supported only on the
nilpotent (zero-eigenvalue) diagonal block, because blocks against nonzero
eigenvalues are killed by the quadratic condition.  Second, writing Y as a
linear template over the anticommutant parameters, the equation is (for
anti-commuting Y) equivalent to the quadratic system Y*(Y - J0)*J0 = 0 on the
nilpotent part.  Third, that degree-<=2 polynomial system is split into
explicit branches: parameter assignments plus "must stay nonzero" side
conditions, with honest residual systems when the case split cannot finish
within the depth limit.

A single nilpotent block has a closed-form family and skips the branch
search; size 4 is the documented exception with two branches (the second
pins the second coefficient at -1), which the general engine reproduces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .anticommutant import anticommutant_basis
from .errors import (
    DimensionMismatch,
    DisequalityViolated,
    MissingParameter,
    NotAnticommuting,
    ResidualNonzero,
)
from .jordan import JordanSpec, SimilarityData, assemble_jordan, jordan_block, nilpotent_part
from .matrices import ExactMatrix, first_nonzero_entry, mat_mul
from .polynomials import ParamMatrix, ParamPolynomial, RationalFunction
from .scalars import GaussianRational, as_gaussian

JORDAN_FRAME = "jordan"
ORIGINAL_FRAME = "original"
DEFAULT_DEPTH_LIMIT = 8


def residual_ybe(a: ExactMatrix, x: ExactMatrix) -> ExactMatrix:
    """A*X*A - X*A*X; zero exactly when x solves the equation for a."""
    if not a.is_square() or a.shape != x.shape:
        raise DimensionMismatch("residual_ybe", a.shape, x.shape)
    ax = mat_mul(a, x)
    xa = mat_mul(x, a)
    return mat_mul(ax, a) - mat_mul(xa, x)


def residual_anticommute(a: ExactMatrix, x: ExactMatrix) -> ExactMatrix:
    """A*X + X*A; zero exactly when x anti-commutes with a."""
    if not a.is_square() or a.shape != x.shape:
        raise DimensionMismatch("residual_anticommute", a.shape, x.shape)
    return mat_mul(a, x) + mat_mul(x, a)


def check_equivalence_lemma(a: ExactMatrix, b: ExactMatrix) -> tuple[bool, bool]:
    """For anti-commuting b: whether A*B*A = B*A*B and whether B*(B-A)*A = 0.

    The two truth values agree for every anti-commuting b; callers that want
    the equivalence verified should assert equality of the returned pair.
    Raises NotAnticommuting when the precondition fails.
    """
    if not residual_anticommute(a, b).is_zero():
        raise NotAnticommuting("inputs do not anti-commute")
    lhs_zero = residual_ybe(a, b).is_zero()
    rhs_zero = mat_mul(mat_mul(b, b - a), a).is_zero()
    return lhs_zero, rhs_zero


@dataclass(frozen=True, slots=True)
class SolutionBranch:
    """One stratum of the solution set.

    `assignments` pins some parameters to rational functions of the free
    ones, `disequalities` are polynomials that must evaluate nonzero, and a
    nonempty `residual_system` marks a branch the case split could not finish
    (its equations must additionally vanish).
    """

    assignments: tuple[tuple[str, RationalFunction], ...]
    disequalities: tuple[ParamPolynomial, ...]
    residual_system: tuple[ParamPolynomial, ...]
    free_parameters: tuple[str, ...]

    def assignment_map(self) -> dict[str, RationalFunction]:
        return dict(self.assignments)

    def is_fully_solved(self) -> bool:
        return not self.residual_system

    def rename(self, mapping: Mapping[str, str]) -> "SolutionBranch":
        """The same branch over renamed parameters."""
        return SolutionBranch(
            tuple(sorted((mapping.get(n, n), rf.rename(mapping)) for n, rf in self.assignments)),
            tuple(p.rename(mapping) for p in self.disequalities),
            tuple(p.rename(mapping) for p in self.residual_system),
            tuple(mapping.get(n, n) for n in self.free_parameters),
        )


@dataclass(frozen=True, slots=True)
class SolutionFamily:
    """All anti-commuting solutions of M Y M = Y M Y for one matrix M.

    `template` is the pre-branch linear parameterization; instantiating any
    branch at values satisfying its side conditions yields a matrix K with
    M*K + K*M = 0 and M*K*M = K*M*K, where M is `matrix` (the canonical
    Jordan form in the jordan frame, the original matrix after conversion).
    """

    n: int
    frame: str
    branches: tuple[SolutionBranch, ...]
    template: ParamMatrix
    matrix: ExactMatrix

    def parameters(self) -> tuple[str, ...]:
        return self.template.variables()


def _empty_branch(free: Sequence[str]) -> SolutionBranch:
    return SolutionBranch((), (), (), tuple(free))


def single_block_family(n: int) -> SolutionFamily:
    """All anti-commuting solutions for a single nilpotent block of size n.

    Sizes 1-3 and >= 5 have one closed-form branch (every scalar for n = 1;
    the two-parameter corner pattern otherwise).  Size 4 is special: the
    quadratic constraint also admits a branch with the second coefficient
    pinned at -1, so the general engine is used and two branches come back.
    """
    if n < 1:
        raise ValueError("block size must be >= 1")
    j = jordan_block(0, n)
    x = ParamPolynomial.variable("x")
    y = ParamPolynomial.variable("y")
    zero = ParamPolynomial.zero()
    if n == 1:
        template = ParamMatrix.from_rows([[x]])
        return SolutionFamily(1, JORDAN_FRAME, (_empty_branch(("x",)),), template, j)
    if n == 2:
        template = ParamMatrix.from_rows([[zero, x], [zero, zero]])
        return SolutionFamily(2, JORDAN_FRAME, (_empty_branch(("x",)),), template, j)
    if n == 3:
        template = ParamMatrix.from_rows(
            [[zero, y, x], [zero, zero, -y], [zero, zero, zero]]
        )
        return SolutionFamily(3, JORDAN_FRAME, (_empty_branch(("x", "y")),), template, j)
    if n == 4:
        template, system = build_constraint_system((4,))
        branches = solve_branches(system, DEFAULT_DEPTH_LIMIT, parameters=template.variables())
        return SolutionFamily(4, JORDAN_FRAME, tuple(branches), template, j)
    grid = [[zero] * n for _ in range(n)]
    grid[0][n - 2] = y
    grid[0][n - 1] = x
    grid[1][n - 1] = -y
    template = ParamMatrix.from_rows(grid)
    return SolutionFamily(n, JORDAN_FRAME, (_empty_branch(("x", "y")),), template, j)


def build_constraint_system(
    j0_sizes: Sequence[int],
) -> tuple[ParamMatrix, list[ParamPolynomial]]:
    """Linear template and quadratic constraint system for a nilpotent part.

    The template is the generic anticommutant member of the all-zero-eigenvalue
    Jordan matrix with the given block sizes; the system collects the nonzero
    entries of template * (template - J0) * J0, deduplicated in row-major
    order.  Solutions of the system are exactly the template instances that
    solve the quadratic matrix equation.
    """
    if not j0_sizes or any(s < 1 for s in j0_sizes):
        raise ValueError("need at least one nilpotent block of positive size")
    spec = JordanSpec(((as_gaussian(0), tuple(int(s) for s in j0_sizes)),))
    basis = anticommutant_basis(spec, spec)
    n0 = spec.n
    template = ParamMatrix.zeros(n0, n0)
    for name, element in zip(basis.parameter_names, basis.basis):
        template = template + ParamMatrix.from_exact(element).scale(
            ParamPolynomial.variable(name)
        )
    j0 = ParamMatrix.from_exact(assemble_jordan(spec))
    product = (template @ (template - j0)) @ j0
    system: list[ParamPolynomial] = []
    seen: set[tuple] = set()
    for entry in product.entries:
        if entry.is_zero():
            continue
        key = entry.monic()[0].terms
        if key not in seen:
            seen.add(key)
            system.append(entry)
    return template, system


# ---------------------------------------------------------------------------
# branch search


def _monic(p: ParamPolynomial) -> ParamPolynomial:
    return p.monic()[0]


def _factor(p: ParamPolynomial) -> list[ParamPolynomial]:
    """Split into nonconstant factors, radical-style (repeats collapsed).

    Handles the shapes the constraint systems produce: shared variable
    factors, pure monomials, and single-variable quadratics whose roots exist
    in Q(i).  Anything else comes back atomic.
    """
    if p.is_zero() or p.is_constant():
        return []
    rest = p
    shared_vars: list[str] = []
    while not rest.is_constant():
        shared = rest.common_variables()
        if not shared:
            break
        for v in shared:
            rest = rest.divide_by_variable(v)
            shared_vars.append(v)
    factors: list[ParamPolynomial] = [
        ParamPolynomial.variable(v) for v in sorted(set(shared_vars))
    ]
    if rest.is_constant():
        return factors
    factors.extend(_factor_atomic(rest))
    deduped: list[ParamPolynomial] = []
    seen: set[tuple] = set()
    for f in factors:
        key = _monic(f).terms
        if key not in seen:
            seen.add(key)
            deduped.append(_monic(f))
    return deduped


def _factor_atomic(p: ParamPolynomial) -> list[ParamPolynomial]:
    variables = p.variables()
    if len(variables) == 1 and p.degree() == 2:
        name = variables[0]
        a = p.coefficient_of(name, 2)
        b = p.coefficient_of(name, 1)
        c = p.coefficient_of(name, 0)
        if a.is_constant() and b.is_constant() and c.is_constant():
            av, bv, cv = a.constant_value(), b.constant_value(), c.constant_value()
            disc = bv**2 - as_gaussian(4) * av * cv
            root = disc.sqrt()
            if root is not None:
                two_a = (av + av).reciprocal()
                r1 = (-bv + root) * two_a
                r2 = (-bv - root) * two_a
                var = ParamPolynomial.variable(name)
                out = [var - ParamPolynomial.constant(r1)]
                if r1 != r2:
                    out.append(var - ParamPolynomial.constant(r2))
                return out
    return [_monic(p)]


def _product(polys: Sequence[ParamPolynomial]) -> ParamPolynomial:
    out = ParamPolynomial.constant(1)
    for p in polys:
        out = out * p
    return out


class _BranchState:
    """Mutable search state: equations, assignments, side conditions."""

    __slots__ = ("equations", "assignments", "disequalities", "depth")

    def __init__(self, equations, assignments, disequalities, depth):
        self.equations: list[ParamPolynomial] = equations
        self.assignments: dict[str, RationalFunction] = assignments
        self.disequalities: dict[tuple, ParamPolynomial] = disequalities
        self.depth: int = depth

    def clone(self) -> "_BranchState":
        return _BranchState(
            list(self.equations), dict(self.assignments), dict(self.disequalities), self.depth
        )

    def add_disequality(self, p: ParamPolynomial) -> bool:
        """Record p != 0; returns False when p is identically zero."""
        if p.is_zero():
            return False
        if p.is_constant():
            return True
        m = _monic(p)
        self.disequalities.setdefault(m.terms, m)
        return True

    def knows_nonzero(self, p: ParamPolynomial) -> bool:
        if p.is_constant():
            return bool(p.constant_value())
        factors = _factor(p)
        if not factors:
            return False
        return all(
            f.is_constant() or _monic(f).terms in self.disequalities for f in factors
        )

    def assign(self, name: str, value: RationalFunction) -> bool:
        """Substitute name := value everywhere; returns False if infeasible."""
        mapping = {name: value}
        new_diseqs: dict[tuple, ParamPolynomial] = {}
        for m in self.disequalities.values():
            if name in m.variables():
                m = m.substitute_rational(mapping).numerator
            if m.is_zero():
                return False
            if m.is_constant():
                continue
            m = _monic(m)
            new_diseqs.setdefault(m.terms, m)

        try:
            new_assignments = {
                var: rf.substitute_rational(mapping) for var, rf in self.assignments.items()
            }
        except ZeroDivisionError:
            return False
        new_assignments[name] = value

        new_equations = []
        for eq in self.equations:
            if name in eq.variables():
                eq = eq.substitute_rational(mapping).numerator
            new_equations.append(eq)

        self.disequalities = new_diseqs
        self.assignments = new_assignments
        self.equations = new_equations
        return True


def solve_branches(
    system: Sequence[ParamPolynomial],
    depth_limit: int = DEFAULT_DEPTH_LIMIT,
    parameters: Sequence[str] | None = None,
) -> list[SolutionBranch]:
    """Split a degree-<=2 polynomial system into explicit solution branches.

    Strategy, in priority order within each branch: solve parameters that
    appear linearly with constant (or recorded-nonzero) coefficient and
    substitute; collapse repeated and known-nonzero factors; otherwise split,
    either on a factorization f*g = 0 (branch f = 0 versus f != 0, g = 0) or
    on the coefficient of a linear occurrence being zero or not.  Splitting
    deeper than depth_limit stops the search and returns the remaining
    equations as an honest residual system instead of dropping the branch.
    Every step preserves the solution set, so when no residual systems remain
    the returned branches jointly cover all of it.  Duplicate branches are
    merged and a branch subsumed by an identical one with strictly fewer side
    conditions is dropped.
    """
    if parameters is None:
        seen: set[str] = set()
        for p in system:
            seen.update(p.variables())
        universe = tuple(sorted(seen))
    else:
        universe = tuple(parameters)

    out: list[SolutionBranch] = []
    state = _BranchState([_monic(p) for p in system if not p.is_zero()], {}, {}, 0)
    if any(p.is_constant() for p in state.equations):
        return []
    _explore(state, depth_limit, universe, out)
    return _merge_branches(out)


def _explore(state: _BranchState, depth_limit: int, universe, out: list[SolutionBranch]):
    while True:
        if not _normalize(state):
            return
        if not state.equations:
            out.append(_finalize(state, universe))
            return
        step = _solve_linear(state)
        if step is None:
            return
        if step:
            continue
        break
    if state.depth >= depth_limit:
        out.append(_finalize(state, universe))
        return
    split = _find_factor_split(state) or _find_coefficient_split(state)
    if split is None:
        out.append(_finalize(state, universe))
        return
    for child in split:
        if child is not None:
            _explore(child, depth_limit, universe, out)


def _normalize(state: _BranchState) -> bool:
    """Canonicalize equations; returns False when the branch is infeasible."""
    changed = True
    while changed:
        changed = False
        cleaned: list[ParamPolynomial] = []
        seen: set[tuple] = set()
        for eq in state.equations:
            if eq.is_zero():
                continue
            if eq.is_constant():
                return False
            eq = _monic(eq)
            factors = _factor(eq)
            live = [f for f in factors if not state.knows_nonzero(f)]
            if not live:
                return False
            if len(live) < len(factors) or _monic(_product(live)) != eq:
                eq = _monic(_product(live))
                changed = True
                if eq.is_constant():
                    return False
            if eq.terms not in seen:
                seen.add(eq.terms)
                cleaned.append(eq)
        state.equations = cleaned
    return True


def _solve_linear(state: _BranchState) -> bool | None:
    """One solve-and-substitute step; True if made, None if infeasible."""
    for name in sorted({v for eq in state.equations for v in eq.variables()}):
        for eq in state.equations:
            if eq.degree_in(name) != 1:
                continue
            coeff = eq.coefficient_of(name, 1)
            rest = eq.coefficient_of(name, 0)
            if coeff.is_constant():
                value = RationalFunction.from_polynomial(
                    -rest * coeff.constant_value().reciprocal()
                )
            elif state.knows_nonzero(coeff):
                value = RationalFunction.make(-rest, coeff)
                state.add_disequality(value.denominator)
            else:
                continue
            if not state.assign(name, value):
                return None
            return True
    return False


def _find_factor_split(state: _BranchState) -> list[_BranchState] | None:
    for idx, eq in enumerate(state.equations):
        factors = _factor(eq)
        if len(factors) < 2:
            continue
        head, tail = factors[0], _monic(_product(factors[1:]))
        zero_side = state.clone()
        zero_side.equations[idx] = head
        zero_side.depth += 1
        nonzero_side = state.clone()
        nonzero_side.equations[idx] = tail
        nonzero_side.depth += 1
        if not nonzero_side.add_disequality(head):
            return [zero_side]
        return [zero_side, nonzero_side]
    return None


def _find_coefficient_split(state: _BranchState) -> list[_BranchState] | None:
    for name in sorted({v for eq in state.equations for v in eq.variables()}):
        for idx, eq in enumerate(state.equations):
            if eq.degree_in(name) != 1:
                continue
            coeff = eq.coefficient_of(name, 1)
            if coeff.is_constant():
                continue
            rest = eq.coefficient_of(name, 0)
            vanishing = state.clone()
            vanishing.equations[idx] = _monic(coeff)
            vanishing.equations.append(rest)
            vanishing.depth += 1
            solving = state.clone()
            solving.depth += 1
            if not solving.add_disequality(coeff):
                return [vanishing]
            del solving.equations[idx]
            value = RationalFunction.make(-rest, coeff)
            solving.add_disequality(value.denominator)
            if not solving.assign(name, value):
                return [vanishing]
            return [vanishing, solving]
    return None


def _finalize(state: _BranchState, universe) -> SolutionBranch:
    diseqs = dict(state.disequalities)
    for rf in state.assignments.values():
        den = rf.denominator
        if den.is_constant():
            continue
        factors = _factor(den)
        if factors and all(f.terms in diseqs for f in factors):
            continue
        m = _monic(den)
        diseqs.setdefault(m.terms, m)
    ordered_diseqs = tuple(
        sorted(diseqs.values(), key=lambda p: (p.degree(), str(p)))
    )
    residual = tuple(sorted({_monic(eq).terms: _monic(eq) for eq in state.equations}.values(),
                            key=lambda p: (p.degree(), str(p))))
    assignments = tuple(sorted(state.assignments.items()))
    free = tuple(name for name in universe if name not in state.assignments)
    return SolutionBranch(assignments, ordered_diseqs, residual, free)


def _branch_signature(branch: SolutionBranch):
    return (
        tuple(
            (name, rf.numerator.terms, rf.denominator.terms) for name, rf in branch.assignments
        ),
        tuple(p.terms for p in branch.residual_system),
    )


def _merge_branches(branches: list[SolutionBranch]) -> list[SolutionBranch]:
    merged: list[SolutionBranch] = []
    seen: set = set()
    for branch in branches:
        key = (_branch_signature(branch), tuple(p.terms for p in branch.disequalities))
        if key in seen:
            continue
        seen.add(key)
        merged.append(branch)
    kept: list[SolutionBranch] = []
    for branch in merged:
        mine = set(p.terms for p in branch.disequalities)
        subsumed = any(
            other is not branch
            and _branch_signature(other) == _branch_signature(branch)
            and set(p.terms for p in other.disequalities) < mine
            for other in merged
        )
        if not subsumed:
            kept.append(branch)
    return kept


# ---------------------------------------------------------------------------
# full pipeline


def _embed_template(t0: ParamMatrix, n: int) -> ParamMatrix:
    if t0.rows == n:
        return t0
    grid = [[ParamPolynomial.zero()] * n for _ in range(n)]
    for i in range(t0.rows):
        for j in range(t0.cols):
            grid[i][j] = t0[i, j]
    return ParamMatrix.from_rows(grid)


def solve(sim: SimilarityData, depth_limit: int = DEFAULT_DEPTH_LIMIT) -> SolutionFamily:
    """All anti-commuting solutions of J Y J = Y J Y, in the canonical frame.

    Nonsingular input yields the zero-only family.  Otherwise the family is
    supported on the leading nilpotent block: a closed form for a single
    block, the branch search over the generated quadratic system for several.
    The result is in jordan frame (matrix = canonical Jordan form); convert
    with to_original.
    """
    sim_c = sim.canonicalized()
    spec = sim_c.spec
    n = spec.n
    j = assemble_jordan(spec)
    sizes, dim = nilpotent_part(spec)
    if dim == 0:
        return SolutionFamily(
            n, JORDAN_FRAME, (_empty_branch(()),), ParamMatrix.zeros(n, n), j
        )
    if len(sizes) == 1:
        core = single_block_family(sizes[0])
        return SolutionFamily(
            n, JORDAN_FRAME, core.branches, _embed_template(core.template, n), j
        )
    template, system = build_constraint_system(sizes)
    branches = solve_branches(system, depth_limit, parameters=template.variables())
    return SolutionFamily(
        n, JORDAN_FRAME, tuple(branches), _embed_template(template, n), j
    )


def to_original(family: SolutionFamily, sim: SimilarityData) -> SolutionFamily:
    """Conjugate a jordan-frame family by W into original coordinates."""
    if family.frame != JORDAN_FRAME:
        raise ValueError("family is not in jordan frame")
    sim_c = sim.canonicalized()
    if family.n != sim_c.spec.n:
        raise DimensionMismatch("to_original", (family.n, family.n), (sim_c.spec.n, sim_c.spec.n))
    if family.matrix != assemble_jordan(sim_c.spec):
        raise ValueError("family does not belong to this similarity data")
    template = (
        ParamMatrix.from_exact(sim_c.w) @ family.template
    ) @ ParamMatrix.from_exact(sim_c.w_inv)
    return SolutionFamily(family.n, ORIGINAL_FRAME, family.branches, template, sim_c.a)


def branch_values(
    branch: SolutionBranch, assignment: Mapping[str, GaussianRational]
) -> dict[str, GaussianRational]:
    """Full parameter valuation for a branch at the given free values.

    Checks the free parameters are exactly covered, side conditions hold, and
    evaluates the branch assignments.  Raises MissingParameter or
    DisequalityViolated accordingly.
    """
    free = set(branch.free_parameters)
    given = set(assignment)
    missing = sorted(free - given)
    if missing:
        raise MissingParameter(missing)
    extra = sorted(given - free)
    if extra:
        raise ValueError(f"unknown parameters for this branch: {', '.join(extra)}")
    values = {name: as_gaussian(v) for name, v in assignment.items()}
    for condition in branch.disequalities:
        if not condition.evaluate(values):
            raise DisequalityViolated(str(condition))
    for name, rf in branch.assignments:
        try:
            values[name] = rf.evaluate(values)
        except ZeroDivisionError:
            raise DisequalityViolated(str(rf.denominator)) from None
    return values


def sample(
    family: SolutionFamily,
    branch_index: int,
    assignment: Mapping[str, GaussianRational],
) -> ExactMatrix:
    """Instantiate one branch at concrete parameter values, verified.

    The returned matrix is checked to anti-commute with the family's matrix
    and to satisfy the quadratic equation; residual-system entries, if any,
    must evaluate to zero.  Raises MissingParameter, DisequalityViolated, or
    ResidualNonzero.
    """
    branch = family.branches[branch_index]
    values = branch_values(branch, assignment)
    for leftover in branch.residual_system:
        if leftover.evaluate(values):
            raise ResidualNonzero(f"unresolved constraint {leftover}")
    k = family.template.evaluate(values)
    anti = residual_anticommute(family.matrix, k)
    if not anti.is_zero():
        pos = first_nonzero_entry(anti)
        raise ResidualNonzero("anti-commutation", (pos[0], pos[1]))
    quad = residual_ybe(family.matrix, k)
    if not quad.is_zero():
        pos = first_nonzero_entry(quad)
        raise ResidualNonzero("equation", (pos[0], pos[1]))
    return k


def branch_matrix(family: SolutionFamily, branch_index: int) -> list[list[RationalFunction]]:
    """The template with one branch's assignments substituted symbolically."""
    branch = family.branches[branch_index]
    return family.template.substitute_rational(branch.assignment_map())


def branch_satisfied_by(
    branch: SolutionBranch, values: Mapping[str, GaussianRational]
) -> bool:
    """Whether a full parameter valuation lies in this branch's stratum.

    Side conditions must be nonzero, residual equations zero, and every
    assignment must hold with its denominator cleared.
    """
    for condition in branch.disequalities:
        if not condition.evaluate(values):
            return False
    for leftover in branch.residual_system:
        if leftover.evaluate(values):
            return False
    for name, rf in branch.assignments:
        lhs = values[name] * rf.denominator.evaluate(values)
        if lhs != rf.numerator.evaluate(values):
            return False
    return True
