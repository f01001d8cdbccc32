"""
Counting engine for graded DGA representations over finite fields.

A representation problem is compiled into a system of commutative polynomial
equations over F_q whose unknowns are the matrix entries allowed by the grading.
A planner picks which generator families to enumerate; every other unknown is
recovered by solving the blocks of equations that become linear once the
enumerated ones are fixed. The resulting plan is a flat list of steps, run by a
depth-first search that prunes on every equation as soon as it is determined.
"""
from __future__ import annotations

import collections
import concurrent.futures
import heapq
import itertools
import logging
import time
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

from replab import gf
from replab.errors import ProblemError
from replab.gf import FieldSpec, Matrix
from replab.ncdga import DgaPresentation, is_zero_mod

LOGGER = logging.getLogger(__name__)

ENUM, SOLVE, CHECK, CONSTRAINT = "enum", "solve", "check", "constraint"
PLANNER_MAX_EXPANSIONS = 20000

Monomial = Tuple[int, ...]
Poly = Dict[Monomial, int]


class UnitsTarget:
    """Every invertible matrix."""

    kind = "units"

    def contains(self, mat: Matrix) -> bool:
        return True

    def __repr__(self):
        return "UnitsTarget()"


class MatrixSetTarget:
    """An explicit set of matrices."""

    kind = "set"

    def __init__(self, matrices):
        self.matrices = frozenset(tuple(tuple(r) for r in mat) for mat in matrices)

    def contains(self, mat: Matrix) -> bool:
        return mat in self.matrices

    def __repr__(self):
        return f"MatrixSetTarget({len(self.matrices)} matrices)"


class PathSubsetTarget:
    """A path subset, tested by reconstructing the ring map; results are cached."""

    kind = "pathset"

    def __init__(self, spec):
        self.spec = spec
        self._cache: Dict[Matrix, bool] = {}

    def contains(self, mat: Matrix) -> bool:
        try:
            return self._cache[mat]
        except KeyError:
            from replab.pathsets import is_member

            found = self._cache[mat] = is_member(mat, self.spec)
            return found

    def __repr__(self):
        return f"PathSubsetTarget({self.spec!r})"


def _padd(a: Poly, b: Poly, add) -> Poly:
    out = dict(a)
    for mono, c in b.items():
        v = add[out.get(mono, 0)][c]
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return out


def _pmul(a: Poly, b: Poly, add, mul) -> Poly:
    out: Poly = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            mono = tuple(sorted(m1 + m2)) if m1 and m2 else (m1 or m2)
            v = add[out.get(mono, 0)][mul[c1][c2]]
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
    return out


def _pscale(a: Poly, c: int, mul) -> Poly:
    if c == 0:
        return {}
    return {mono: mul[c][v] for mono, v in a.items()}


def _mmul(A, B, add, mul):
    n, inner, ncols = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(ncols):
            acc: Poly = {}
            for k in range(inner):
                if A[i][k] and B[k][j]:
                    acc = _padd(acc, _pmul(A[i][k], B[k][j], add, mul), add)
            row.append(acc)
        out.append(row)
    return out


def _madd(A, B, add):
    return [[_padd(a, b, add) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _mscale(A, c, mul):
    return [[_pscale(a, c, mul) for a in row] for row in A]


class PolySystem:
    """
    Polynomial equations over F_q for the representations of ``dga`` on a graded
    vector space with differential ``d``, graded mod ``m``.

    Args:
        dga
        field
        degrees: Degrees of the basis vectors of V.
        d: Differential of V, as a matrix over ``field``.
        m: Grading modulus.
        targets: One target per component of ``dga``.

    Attributes:
        var_names: Readable name of each unknown.
        groups: Family label to unknowns; inverse matrices get their own family.
        equations: Each a list of ``(coeff, monomial)`` terms.
        layouts: Generator name (or ``name^-1``) to a matrix of unknown indices,
            None where the grading forces a zero.
        infeasible: True if some equation reduced to a nonzero constant.
    """

    def __init__(
        self,
        dga: DgaPresentation,
        field: FieldSpec,
        degrees: Sequence[int],
        d: Sequence[Sequence[int]],
        m: int,
        targets: Sequence,
    ):
        self.dga = dga
        self.field = field
        self.degrees = tuple(degrees)
        self.n = len(self.degrees)
        self.m = m
        self.d = tuple(tuple(r) for r in d)
        self.targets = list(targets)
        if len(self.targets) != len(dga.components):
            raise ProblemError(
                f"need one target per component ({len(dga.components)}), "
                f"got {len(self.targets)}"
            )
        self.var_names: List[str] = []
        self.groups: Dict[str, List[int]] = collections.OrderedDict()
        self.layouts: Dict[str, List[List[Optional[int]]]] = {}
        self.infeasible = False
        self._allocate()
        self.equations: List[List[Tuple[int, Monomial]]] = []
        self._build_equations()

    def allowed(self, i: int, j: int, degree: int) -> bool:
        return is_zero_mod(self.degrees[j] - self.degrees[i] - degree, self.m)

    def _allocate(self):
        for g in self.dga.generators:
            family = self.dga.family(g.name)
            self.layouts[g.name] = self._new_layout(g.name, g.degree, family)
            if g.invertible:
                self.layouts[f"{g.name}^-1"] = self._new_layout(
                    f"{g.name}^-1", -g.degree, f"{family}^-1"
                )

    def _new_layout(self, label: str, degree: int, family: str):
        layout = []
        for i in range(self.n):
            row = []
            for j in range(self.n):
                if self.allowed(i, j, degree):
                    v = len(self.var_names)
                    self.var_names.append(f"{label}[{i + 1},{j + 1}]")
                    self.groups.setdefault(family, []).append(v)
                    row.append(v)
                else:
                    row.append(None)
            layout.append(row)
        return layout

    def _poly_matrix(self, key: str):
        return [
            [{(v,): 1} if v is not None else {} for v in row]
            for row in self.layouts[key]
        ]

    def _const_matrix(self, mat):
        return [[{(): x} if x else {} for x in row] for row in mat]

    def _build_equations(self):
        add, mul, neg, _ = self.field.tables
        n = self.n
        identity = self._const_matrix(gf.mat_identity(n))
        dmat = self._const_matrix(self.d)
        letters = {}
        for g in self.dga.generators:
            letters[(g.name, 1)] = self._poly_matrix(g.name)
            if g.invertible:
                letters[(g.name, -1)] = self._poly_matrix(f"{g.name}^-1")
        minus_one = self.field.from_int(-1)
        for g in self.dga.generators:
            F = letters[(g.name, 1)]
            # d F - (-1)^|g| F d
            right = minus_one if g.degree % 2 == 0 else 1
            lhs = _madd(
                _mmul(dmat, F, add, mul),
                _mscale(_mmul(F, dmat, add, mul), right, mul),
                add,
            )
            rhs = [[{} for _ in range(n)] for _ in range(n)]
            for word, coeff in self.dga.d(g.name):
                term = _mscale(identity, self.field.from_int(coeff), mul)
                for letter in word:
                    term = _mmul(term, letters[letter], add, mul)
                rhs = _madd(rhs, term, add)
            self._add_matrix_equation(_madd(lhs, _mscale(rhs, minus_one, mul), add))
            if g.invertible:
                product = _mmul(F, letters[(g.name, -1)], add, mul)
                self._add_matrix_equation(
                    _madd(product, _mscale(identity, minus_one, mul), add)
                )

    def _add_matrix_equation(self, mat):
        for row in mat:
            for poly in row:
                if not poly:
                    continue
                if list(poly) == [()]:
                    self.infeasible = True
                    continue
                self.equations.append(sorted((c, mono) for mono, c in poly.items()))

    def component_layouts(self, index: int) -> List[List[List[Optional[int]]]]:
        return [self.layouts[b] for b in self.dga.components[index].basepoints]

    def component_vars(self, index: int) -> Set[int]:
        return {
            v
            for layout in self.component_layouts(index)
            for row in layout
            for v in row
            if v is not None
        }

    @property
    def num_vars(self) -> int:
        return len(self.var_names)


class Planner:
    """
    Chooses the generator families to enumerate, by uniform-cost search over sets of
    families, and lays the choice out as a sequence of search steps.
    """

    def __init__(self, system: PolySystem, constraint_components: Sequence[int]):
        self.system = system
        self.eq_vars = [
            set(v for _, mono in eq for v in mono) for eq in system.equations
        ]
        self.eq_monos = [[mono for _, mono in eq] for eq in system.equations]
        self.constraint_components = list(constraint_components)
        self.constraint_vars = set()
        for c in self.constraint_components:
            self.constraint_vars |= system.component_vars(c)
        self.relevant = set().union(*self.eq_vars) if self.eq_vars else set()
        self.relevant |= self.constraint_vars
        self.group_names = [
            name for name, vs in system.groups.items() if set(vs) & self.relevant
        ]

    def _is_linear(self, eq: int, assigned: Set[int]) -> bool:
        for mono in self.eq_monos[eq]:
            if sum(1 for v in mono if v not in assigned) > 1:
                return False
        return True

    def linear_blocks(self, assigned: Set[int], consumed: Set[int]):
        """Connected blocks of the equations that are linear in their unknowns."""
        parent: Dict[int, int] = {}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        eqs = []
        for e, vs in enumerate(self.eq_vars):
            if e in consumed:
                continue
            unknown = vs - assigned
            if unknown and self._is_linear(e, assigned):
                eqs.append((e, unknown))
                for v in unknown:
                    parent.setdefault(v, v)
                first = next(iter(unknown))
                for v in unknown:
                    ra, rb = find(first), find(v)
                    if ra != rb:
                        parent[rb] = ra
        blocks: Dict[int, Tuple[Set[int], List[int]]] = {}
        for e, unknown in eqs:
            root = find(next(iter(unknown)))
            W, E = blocks.setdefault(root, (set(), []))
            W |= unknown
            E.append(e)
        return sorted(
            blocks.values(), key=lambda b: (min(b[0]), len(b[1]))
        )

    def closure(self, assigned: Set[int], consumed: Set[int], final: bool):
        """
        Repeatedly solve blocks with at least as many equations as unknowns; in the
        final closure, underdetermined blocks are taken too, least deficit first.

        Returns:
            ``(assigned, consumed, rounds, deficit)``
        """
        assigned = set(assigned)
        consumed = set(consumed)
        rounds = []
        deficit = 0
        while True:
            blocks = self.linear_blocks(assigned, consumed)
            if not blocks:
                break
            take = [b for b in blocks if len(b[1]) >= len(b[0])]
            if not take:
                if not final:
                    break
                best = min(blocks, key=lambda b: len(b[0]) - len(b[1]))
                deficit += len(best[0]) - len(best[1])
                take = [best]
            rounds.append(take)
            for W, E in take:
                assigned |= W
                consumed |= set(E)
        return assigned, consumed, rounds, deficit

    def _vars(self, groups) -> Set[int]:
        out = set()
        for g in groups:
            out |= set(self.system.groups[g])
        return out

    def _goal_cost(self, groups) -> Optional[int]:
        assigned, _, _, deficit = self.closure(self._vars(groups), set(), final=True)
        if self.relevant <= assigned:
            return deficit
        return None

    def choose(self) -> List[str]:
        """Families to enumerate, minimizing enumerated unknowns plus solve deficits."""
        sizes = {g: len(self.system.groups[g]) for g in self.group_names}
        heap = [(0, 0, ())]
        seen = {frozenset()}
        best, best_cost = None, None
        counter = itertools.count(1)
        expansions = 0
        while heap and expansions < PLANNER_MAX_EXPANSIONS:
            cost, _, state = heapq.heappop(heap)
            if best_cost is not None and cost >= best_cost:
                break
            expansions += 1
            deficit = self._goal_cost(state)
            if deficit is not None:
                if best_cost is None or cost + deficit < best_cost:
                    best, best_cost = state, cost + deficit
            covered = self.closure(self._vars(state), set(), final=False)[0]
            for g in self.group_names:
                if g in state or set(self.system.groups[g]) <= covered:
                    continue
                nxt = frozenset(state) | {g}
                if nxt in seen:
                    continue
                seen.add(nxt)
                ordered = tuple(x for x in self.group_names if x in nxt)
                heapq.heappush(heap, (cost + sizes[g], next(counter), ordered))
        if best is None:
            LOGGER.debug("planner search capped; falling back to greedy choice")
            best = self._greedy()
        LOGGER.debug("planner chose %s (cost %s)", list(best), best_cost)
        return list(best)

    def _greedy(self) -> Tuple[str, ...]:
        state: List[str] = []
        while self._goal_cost(state) is None:
            covered = self.closure(self._vars(state), set(), final=False)[0]
            options = [g for g in self.group_names if g not in state]
            gain = {}
            for g in options:
                reach = self.closure(self._vars(state + [g]), set(), final=False)[0]
                gain[g] = len(reach - covered) / len(self.system.groups[g])
            state.append(
                max(options, key=lambda g: (gain[g], -self.group_names.index(g)))
            )
        return tuple(state)

    def order(self, groups: Sequence[str]) -> List[str]:
        """Order families so that equations and constraints are checked early."""
        remaining = list(groups)
        ordered: List[str] = []
        assigned: Set[int] = set()
        while remaining:

            def score(g):
                group = self.system.groups[g]
                new = self.closure(assigned | set(group), set(), final=False)[0]
                determined = sum(1 for vs in self.eq_vars if vs <= new)
                return (determined, -len(group), -self.group_names.index(g))

            g = max(remaining, key=score)
            remaining.remove(g)
            ordered.append(g)
            assigned |= set(self.system.groups[g])
        return ordered

    def steps(self, ordered: Sequence[str], naive: bool, materialize: bool):
        """
        Lay out the search steps for enumerating ``ordered`` in turn.

        Returns:
            ``(steps, free_vars)``; free unknowns occur in no equation or constraint.
        """
        system = self.system
        assigned: Set[int] = set()
        consumed: Set[int] = set()
        placed_components: Set[int] = set()
        raw_steps = []
        enum_groups = [list(system.groups[g]) for g in ordered]
        if not enum_groups:
            enum_groups = [[]]
        for idx, vs in enumerate(enum_groups):
            if vs:
                raw_steps.append((ENUM, vs))
            assigned |= set(vs)
            final = idx == len(enum_groups) - 1
            if naive and not final:
                continue
            closed = self.closure(assigned, consumed, final=final)
            assigned, consumed_new, rounds, _ = closed
            for blocks in rounds:
                for W, E in blocks:
                    raw_steps.append((SOLVE, sorted(W), E))
            consumed = consumed_new
            for e, vs_e in enumerate(self.eq_vars):
                if e not in consumed and vs_e <= assigned:
                    raw_steps.append((CHECK, e))
                    consumed.add(e)
            for c in self.constraint_components:
                if c not in placed_components and system.component_vars(c) <= assigned:
                    raw_steps.append((CONSTRAINT, c))
                    placed_components.add(c)
        missing = self.relevant - assigned
        if missing:
            raise ProblemError(
                f"search plan leaves unknowns undetermined: "
                f"{[system.var_names[v] for v in sorted(missing)][:5]}"
            )
        free_vars = [v for v in range(system.num_vars) if v not in self.relevant]
        compiled = []
        for i, step in enumerate(raw_steps):
            if step[0] == SOLVE:
                _, W, E = step
                later = set()
                for e, vs_e in enumerate(self.eq_vars):
                    if e not in E:
                        later |= vs_e
                needed = later | self.constraint_vars
                terminal = not materialize and not (set(W) & needed)
                compiled.append((SOLVE, W, self._compile_block(W, E), terminal))
            elif step[0] == CHECK:
                compiled.append((CHECK, self.system.equations[step[1]]))
            elif step[0] == CONSTRAINT:
                layouts = system.component_layouts(step[1])
                compiled.append((CONSTRAINT, step[1], layouts))
            else:
                compiled.append(step)
        if materialize and free_vars:
            compiled.append((ENUM, free_vars))
            free_vars = []
        return compiled, free_vars

    def _compile_block(self, W: Sequence[int], E: Sequence[int]):
        pos = {v: i for i, v in enumerate(W)}
        rows = []
        for e in E:
            terms = []
            for coeff, mono in self.system.equations[e]:
                unknown = [v for v in mono if v in pos]
                known = tuple(v for v in mono if v not in pos)
                terms.append((coeff, known, pos[unknown[0]] if unknown else -1))
            rows.append(terms)
        return rows


class CountingEngine:
    """
    Compiled search for the solutions of a :class:`PolySystem`.

    Args:
        system
        split: Key counts by the basepoint products of every component.
        naive: Enumerate every family except inverse matrices before checking.
        materialize: Plan for enumerating solutions rather than counting them.
    """

    def __init__(
        self,
        system: PolySystem,
        *,
        split: bool = False,
        naive: bool = False,
        materialize: bool = False,
    ):
        self.system = system
        self.field = system.field
        self.split = split
        self.naive = naive
        comps = [
            i for i, t in enumerate(system.targets)
            if split or getattr(t, "kind", "units") != "units"
        ]
        self.split_components = list(range(len(system.targets))) if split else []
        planner = Planner(system, comps)
        if naive:
            ordered = [
                g for g in planner.group_names if not g.endswith("^-1")
            ]
        else:
            ordered = planner.order(planner.choose())
        self.enumerated = ordered
        self.steps, self.free_vars = planner.steps(ordered, naive, materialize)
        LOGGER.debug(
            "plan for %s: enumerate %s, %d steps, %d free unknowns",
            system.dga.name, ordered, len(self.steps), len(self.free_vars),
        )

    def describe(self) -> List[str]:
        """Human-readable list of the plan's steps."""
        names = self.system.var_names
        out = []
        for step in self.steps:
            if step[0] == ENUM:
                out.append(f"enum {[names[v] for v in step[1]]}")
            elif step[0] == SOLVE:
                tag = " (terminal)" if step[3] else ""
                out.append(f"solve {[names[v] for v in step[1]]}{tag}")
            elif step[0] == CHECK:
                out.append(f"check {len(step[1])} terms")
            else:
                out.append(f"constraint component {step[1]}")
        return out

    def _matrix(self, layout, vals) -> Matrix:
        return tuple(
            tuple(vals[v] if v is not None else 0 for v in row) for row in layout
        )

    def _product(self, layouts, vals) -> Matrix:
        result = self._matrix(layouts[0], vals)
        for layout in layouts[1:]:
            result = gf.mat_mul(result, self._matrix(layout, vals), self.field)
        return result

    def _run(self, partition: Optional[Tuple[int, int]] = None) -> collections.Counter:
        result: collections.Counter = collections.Counter()
        if self.system.infeasible:
            return result
        field = self.field
        q = field.q
        add, mul, neg, _ = field.tables
        steps = self.steps
        nsteps = len(steps)
        vals = [0] * self.system.num_vars
        key: List[Matrix] = []
        targets = self.system.targets
        split_components = set(self.split_components)
        first_enum = next((i for i, s in enumerate(steps) if s[0] == ENUM), None)

        def rec(i: int, weight: int):
            if i == nsteps:
                result[tuple(key)] += weight
                return
            step = steps[i]
            kind = step[0]
            if kind == ENUM:
                vs = step[1]
                combos = itertools.product(range(q), repeat=len(vs))
                if partition is not None and i == first_enum:
                    w, workers = partition
                    combos = itertools.islice(combos, w, None, workers)
                for combo in combos:
                    for v, x in zip(vs, combo):
                        vals[v] = x
                    rec(i + 1, weight)
            elif kind == SOLVE:
                _, W, rows, terminal = step
                nW = len(W)
                coeffs = []
                rhs = []
                for terms in rows:
                    row = [0] * nW
                    b = 0
                    for c, known, upos in terms:
                        x = c
                        for v in known:
                            x = mul[x][vals[v]]
                            if not x:
                                break
                        if x:
                            if upos < 0:
                                b = add[b][neg[x]]
                            else:
                                row[upos] = add[row[upos]][x]
                    coeffs.append(row)
                    rhs.append(b)
                solved = gf.solve_affine(coeffs, rhs, field)
                if solved is None:
                    return
                particular, basis = solved
                if terminal:
                    rec(i + 1, weight * q ** len(basis))
                    return
                for cs in itertools.product(range(q), repeat=len(basis)):
                    sol = list(particular)
                    for c, vec in zip(cs, basis):
                        if c:
                            sol = [add[s][mul[c][x]] for s, x in zip(sol, vec)]
                    for v, x in zip(W, sol):
                        vals[v] = x
                    rec(i + 1, weight)
            elif kind == CHECK:
                total = 0
                for c, mono in step[1]:
                    x = c
                    for v in mono:
                        x = mul[x][vals[v]]
                        if not x:
                            break
                    total = add[total][x]
                if total == 0:
                    rec(i + 1, weight)
            else:
                _, comp, layouts = step
                prod = self._product(layouts, vals)
                if not targets[comp].contains(prod):
                    return
                if comp in split_components:
                    key.append(prod)
                    rec(i + 1, weight)
                    key.pop()
                else:
                    rec(i + 1, weight)

        rec(0, q ** len(self.free_vars))
        return result

    def count_split(self, threads: int = 1) -> collections.Counter:
        """Solution counts keyed by the tuple of split component products."""
        start = time.perf_counter()
        first_enum = next((s for s in self.steps if s[0] == ENUM), None)
        if threads > 1 and first_enum is not None:
            with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
                parts = pool.map(
                    _count_partition,
                    [self] * threads,
                    [(w, threads) for w in range(threads)],
                )
                result = collections.Counter()
                for part in parts:
                    result.update(part)
        else:
            result = self._run()
        LOGGER.info(
            "counted %d solutions for %s in %.3fs",
            sum(result.values()), self.system.dga.name, time.perf_counter() - start,
        )
        return result

    def count(self, threads: int = 1) -> int:
        return sum(self.count_split(threads=threads).values())

    def iter_solutions(self) -> Iterator[List[int]]:
        """Yield every solution as a list of unknown values."""
        if self.system.infeasible:
            return
        field = self.field
        q = field.q
        add, mul, neg, _ = field.tables
        steps = self.steps
        nsteps = len(steps)
        vals = [0] * self.system.num_vars
        targets = self.system.targets

        def rec(i: int):
            if i == nsteps:
                yield list(vals)
                return
            step = steps[i]
            kind = step[0]
            if kind == ENUM:
                vs = step[1]
                for combo in itertools.product(range(q), repeat=len(vs)):
                    for v, x in zip(vs, combo):
                        vals[v] = x
                    yield from rec(i + 1)
            elif kind == SOLVE:
                _, W, rows, _ = step
                coeffs, rhs = [], []
                for terms in rows:
                    row = [0] * len(W)
                    b = 0
                    for c, known, upos in terms:
                        x = c
                        for v in known:
                            x = mul[x][vals[v]]
                        if upos < 0:
                            b = add[b][neg[x]]
                        else:
                            row[upos] = add[row[upos]][x]
                    coeffs.append(row)
                    rhs.append(b)
                solved = gf.solve_affine(coeffs, rhs, field)
                if solved is None:
                    return
                particular, basis = solved
                for cs in itertools.product(range(q), repeat=len(basis)):
                    sol = list(particular)
                    for c, vec in zip(cs, basis):
                        sol = [add[s][mul[c][x]] for s, x in zip(sol, vec)]
                    for v, x in zip(W, sol):
                        vals[v] = x
                    yield from rec(i + 1)
            elif kind == CHECK:
                total = 0
                for c, mono in step[1]:
                    x = c
                    for v in mono:
                        x = mul[x][vals[v]]
                    total = add[total][x]
                if total == 0:
                    yield from rec(i + 1)
            else:
                _, comp, layouts = step
                if targets[comp].contains(self._product(layouts, vals)):
                    yield from rec(i + 1)

        yield from rec(0)

    def matrices(self, vals: Sequence[int]) -> Dict[str, Matrix]:
        """Generator images of a solution, keyed by generator name."""
        return {
            g.name: self._matrix(self.system.layouts[g.name], vals)
            for g in self.system.dga.generators
        }


def _count_partition(
    engine: CountingEngine, partition: Tuple[int, int]
) -> collections.Counter:
    return engine._run(partition)
