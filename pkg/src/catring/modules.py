"""Z/2-graded finitely presented right modules over a completed ring.

A module assigns to every (object, degree) slot a finitely presented
abelian group - a list of named generators and integer relation rows -
and to every basis monomial b: X -> Y of the ring an integer matrix
value(Y, eps) -> value(X, eps) for each degree (contravariant: right
modules are functors on the opposite category).  Row-vector convention
throughout: an element is a row over the slot's generators and a matrix
acts from the right.

The completed rings in scope are concentrated in degree 0 (every
presentation generator is an even morphism), so module maps and actions
preserve the Z/2-degree and suspension simply swaps the two layers; if a
presentation ever carried odd generators the degree bookkeeping here
would need a shifted action table, which is deliberately not guessed at.

The zero module is a first-class citizen: every operation accepts empty
generator lists, and matrices keep explicit (possibly zero) shapes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .completion import CategoryRing
from .intlin import (
    Lattice,
    group_invariants,
    hnf,
    left_kernel,
    mat_identity,
    mat_mul,
    solve_left,
)

Slot = tuple  # (object, degree)


class _AboveCap:
    def __repr__(self):
        return "AboveCap"

    def __bool__(self):
        return False


ABOVE_CAP = _AboveCap()


@dataclass(frozen=True)
class AbInvariants:
    """A finitely generated abelian group up to isomorphism."""

    free_rank: int
    torsion: tuple[int, ...]  # divisibility chain, entries > 1

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " (+) ".join(parts) if parts else "0"


def _shape_check(rows, nrows, ncols, what):
    if len(rows) != nrows:
        raise ValueError(f"{what}: expected {nrows} rows, got {len(rows)}")
    for row in rows:
        if len(row) != ncols:
            raise ValueError(f"{what}: expected width {ncols}, got {len(row)}")


class GradedModule:
    """A finitely presented graded right module; treat as immutable."""

    def __init__(self, ring: CategoryRing, gens, rels, act):
        self.ring = ring
        self.slots = [(x, e) for x in ring.objects for e in (0, 1)]
        self.gens = {s: tuple(gens.get(s, ())) for s in self.slots}
        self.rels = {s: tuple(tuple(r) for r in rels.get(s, ())) for s in self.slots}
        self.act = {}
        for fb in range(len(ring.flat)):
            for e in (0, 1):
                self.act[(fb, e)] = tuple(tuple(r) for r in act.get((fb, e), ()))

    def ngens(self, slot: Slot) -> int:
        return len(self.gens[slot])

    def value_invariants(self, slot: Slot) -> AbInvariants:
        free, tors = group_invariants(self.rels[slot], self.ngens(slot))
        return AbInvariants(free, tors)

    def is_zero(self) -> bool:
        return all(self.value_invariants(s).is_zero() for s in self.slots)

    def action(self, flat_idx: int, eps: int):
        return self.act[(flat_idx, eps)]

    def validate(self) -> None:
        """Re-check all module invariants; raises with a witness on failure."""
        ring = self.ring
        for s in self.slots:
            _shape_check(self.rels[s], len(self.rels[s]), self.ngens(s), f"relations at {s}")
        for fb, (x, y, _) in enumerate(ring.flat):
            for e in (0, 1):
                mat = self.act[(fb, e)]
                _shape_check(mat, self.ngens((y, e)), self.ngens((x, e)), f"action of basis {fb} deg {e}")
                # well-defined on the quotient
                lat = Lattice(self.ngens((x, e)))
                for row in self.rels[(x, e)]:
                    lat.add(row)
                for row in self.rels[(y, e)]:
                    img = mat_mul([row], mat, self.ngens((x, e)))[0]
                    if img not in lat:
                        raise ValueError(f"action of basis {fb} not well-defined at degree {e}")
        for x in ring.objects:
            fb = ring.offset[(x, x)] + ring.unit_pos[x]
            for e in (0, 1):
                n = self.ngens((x, e))
                lat = Lattice(n)
                for row in self.rels[(x, e)]:
                    lat.add(row)
                ident = mat_identity(n)
                for row_a, row_i in zip(self.act[(fb, e)], ident):
                    if [a - b for a, b in zip(row_a, row_i)] not in lat:
                        raise ValueError(f"unit of object {x} does not act as identity at degree {e}")
        # functoriality through the structure constants
        for fu, (x, y, _) in enumerate(ring.flat):
            for fv, (y2, z, _) in enumerate(ring.flat):
                if y2 != y:
                    continue
                vec = ring.table[(fu, fv)]
                off = ring.offset[(x, z)]
                for e in (0, 1):
                    lhs = mat_mul(self.act[(fv, e)], self.act[(fu, e)], self.ngens((x, e)))
                    n = self.ngens((x, e))
                    rhs = [[0] * n for _ in range(self.ngens((z, e)))]
                    for t, c in enumerate(vec):
                        if c:
                            for i, row in enumerate(self.act[(off + t, e)]):
                                for j, vv in enumerate(row):
                                    rhs[i][j] += c * vv
                    lat = Lattice(n)
                    for row in self.rels[(x, e)]:
                        lat.add(row)
                    for ra, rb in zip(lhs, rhs):
                        if [a - b for a, b in zip(ra, rb)] not in lat:
                            raise ValueError(
                                f"action is not functorial on basis pair ({fu}, {fv}) at degree {e}"
                            )


def zero_module(ring: CategoryRing) -> GradedModule:
    return GradedModule(ring, {}, {}, {})


def yoneda(ring: CategoryRing, obj: int, eps: int) -> GradedModule:
    """The representable module of one object, concentrated in one degree.

    Its value at (X, eps) is the free group on the basis words X -> obj,
    and a basis monomial acts by composition, read off the ring table.
    """
    if obj not in ring.objects:
        raise KeyError(f"unknown object {obj}")
    gens = {}
    act = {}
    for x in ring.objects:
        gens[(x, eps)] = tuple(ring.word_str(w, x) for w in ring.basis[(x, obj)])
    for fb, (x, y, _) in enumerate(ring.flat):
        rows = []
        for fu in range(len(ring.basis[(y, obj)])):
            rows.append(ring.table[(fb, ring.offset[(y, obj)] + fu)])
        act[(fb, eps)] = rows
        act[(fb, 1 - eps)] = ()
    return GradedModule(ring, gens, {}, act)


def suspend(module: GradedModule) -> GradedModule:
    """Swap the two degree layers at every object (an involution)."""
    ring = module.ring
    gens = {(x, 1 - e): module.gens[(x, e)] for x, e in module.slots}
    rels = {(x, 1 - e): module.rels[(x, e)] for x, e in module.slots}
    act = {(fb, 1 - e): module.act[(fb, e)] for fb, e in module.act}
    return GradedModule(ring, gens, rels, act)


def direct_sum(*modules: GradedModule) -> GradedModule:
    if not modules:
        raise ValueError("need at least one summand")
    ring = modules[0].ring
    if any(m.ring is not ring for m in modules):
        raise ValueError("summands live over different rings")
    gens, rels, act = {}, {}, {}
    for s in modules[0].slots:
        gens[s] = tuple(itertools.chain.from_iterable(m.gens[s] for m in modules))
        rows = []
        offset = 0
        total = sum(m.ngens(s) for m in modules)
        for m in modules:
            for r in m.rels[s]:
                row = [0] * total
                row[offset : offset + m.ngens(s)] = list(r)
                rows.append(row)
            offset += m.ngens(s)
        rels[s] = rows
    for key in modules[0].act:
        fb, e = key
        x, y, _ = ring.flat[fb]
        total_x = sum(m.ngens((x, e)) for m in modules)
        rows = []
        off_x = 0
        for m in modules:
            for r in m.act[key]:
                row = [0] * total_x
                row[off_x : off_x + m.ngens((x, e))] = list(r)
                rows.append(row)
            off_x += m.ngens((x, e))
        act[key] = rows
    return GradedModule(ring, gens, rels, act)


def trivial_group_module(ring: CategoryRing, degree0=(), degree1=()) -> GradedModule:
    """A graded abelian group as a module over the rank-one ring (k = 1).

    Each degree is a direct sum of cyclic groups; the order 0 stands for Z.
    """
    if len(ring.objects) != 1:
        raise ValueError("graded abelian groups only make sense over the rank-one ring")
    obj = ring.objects[0]
    gens, rels, act = {}, {}, {}
    for e, orders in ((0, degree0), (1, degree1)):
        names = tuple(f"g{i}" for i in range(len(orders)))
        rows = []
        for i, d in enumerate(orders):
            if d:
                row = [0] * len(orders)
                row[i] = d
                rows.append(row)
        gens[(obj, e)] = names
        rels[(obj, e)] = rows
        act[(0, e)] = mat_identity(len(orders))
    return GradedModule(ring, gens, rels, act)


def submodule_lattices(module: GradedModule, slot: Slot, vector) -> dict:
    """Per-slot lattices of the submodule generated by one element."""
    ring = module.ring
    x0, e0 = slot
    out = {}
    for s in module.slots:
        lat = Lattice(module.ngens(s))
        w, e = s
        if e == e0:
            for fu in range(len(ring.basis[(w, x0)])):
                fb = ring.offset[(w, x0)] + fu
                img = mat_mul([list(vector)], module.act[(fb, e0)], module.ngens((w, e0)))[0]
                lat.add(img)
        out[s] = lat
    return out


def quotient_by_element(module: GradedModule, slot: Slot, vector) -> GradedModule:
    """Quotient by the submodule generated by one element of one slot."""
    lats = submodule_lattices(module, slot, vector)
    rels = {}
    for s in module.slots:
        rows = [list(r) for r in module.rels[s]] + lats[s].basis()
        rels[s] = hnf(rows, module.ngens(s))
    return GradedModule(module.ring, module.gens, rels, module.act)


def yoneda_cyclic_quotient(ring: CategoryRing, obj: int, eps: int, src: int, pos: int) -> GradedModule:
    """Quotient of the representable module of `obj` by one basis monomial
    of its value at `src` (the cyclic-quotient family used in the
    projective-dimension search)."""
    y = yoneda(ring, obj, eps)
    vec = [0] * len(ring.basis[(src, obj)])
    vec[pos] = 1
    return quotient_by_element(y, (src, eps), vec)


# -- module maps -----------------------------------------------------


@dataclass
class ModuleMap:
    """A degree-preserving map, one matrix per slot (row convention)."""

    source: GradedModule
    target: GradedModule
    mats: dict

    def __post_init__(self):
        for s in self.source.slots:
            self.mats.setdefault(s, tuple())
            _shape_check(self.mats[s], self.source.ngens(s), self.target.ngens(s), f"map at {s}")
            self.mats[s] = tuple(tuple(r) for r in self.mats[s])

    def is_zero(self) -> bool:
        return all(not any(any(r) for r in self.mats[s]) for s in self.source.slots)

    def check(self) -> None:
        """Assert well-definedness and equivariance; raises on failure."""
        M, N = self.source, self.target
        for s in M.slots:
            lat = Lattice(N.ngens(s))
            for row in N.rels[s]:
                lat.add(row)
            for row in M.rels[s]:
                if mat_mul([list(row)], self.mats[s], N.ngens(s))[0] not in lat:
                    raise ValueError(f"map not well-defined at {s}")
        for fb, (x, y, _) in enumerate(M.ring.flat):
            for e in (0, 1):
                lhs = mat_mul(M.act[(fb, e)], self.mats[(x, e)], N.ngens((x, e)))
                rhs = mat_mul(self.mats[(y, e)], N.act[(fb, e)], N.ngens((x, e)))
                lat = Lattice(N.ngens((x, e)))
                for row in N.rels[(x, e)]:
                    lat.add(row)
                for ra, rb in zip(lhs, rhs):
                    if [a - b for a, b in zip(ra, rb)] not in lat:
                        raise ValueError(f"map does not commute with basis {fb} at degree {e}")


def compose_maps(first: ModuleMap, second: ModuleMap) -> ModuleMap:
    """first then second."""
    if first.target is not second.source:
        raise ValueError("maps are not composable")
    mats = {
        s: mat_mul(first.mats[s], second.mats[s], second.target.ngens(s))
        for s in first.source.slots
    }
    return ModuleMap(first.source, second.target, mats)


def identity_map(module: GradedModule) -> ModuleMap:
    return ModuleMap(module, module, {s: mat_identity(module.ngens(s)) for s in module.slots})


# -- Hom --------------------------------------------------------------


@dataclass
class HomGroup:
    """The group of module maps M -> N with explicit generating maps.

    `maps` is a basis of the full solution lattice; the group itself is
    that lattice modulo maps landing in the relation lattice of N, with
    `invariants` its isomorphism type.
    """

    invariants: AbInvariants
    maps: list
    _lattice: list = None
    _var_off: dict = None
    _nvars: int = 0

    def is_zero(self) -> bool:
        return self.invariants.is_zero()

    def coordinates_of(self, f: ModuleMap):
        """Integer coordinates of a map over `maps`, or None if the map
        is not a module map M -> N at all."""
        vec = _map_to_vector(f, self._var_off, self._nvars)
        return solve_left(self._lattice, self._nvars, vec)


def _hom_solution_lattice(M: GradedModule, N: GradedModule):
    """HNF basis of the lattice of module maps M -> N, as flat vectors."""
    slots = M.slots
    var_off = {}
    nvars = 0
    for s in slots:
        var_off[s] = nvars
        nvars += M.ngens(s) * N.ngens(s)

    equations = []  # each a dict var -> coeff
    slack_blocks = []  # (first equation index of the block, relation rows)

    def add_membership(exprs, slot):
        # exprs: list over columns q of N(slot) of var-coeff dicts
        base = len(equations)
        equations.extend(exprs)
        rel = N.rels[slot]
        if rel:
            slack_blocks.append((base, rel))

    for s in slots:
        gm, gn = M.ngens(s), N.ngens(s)
        for rrow in M.rels[s]:
            exprs = []
            for q in range(gn):
                expr = {}
                for p in range(gm):
                    if rrow[p]:
                        expr[var_off[s] + p * gn + q] = rrow[p]
                exprs.append(expr)
            add_membership(exprs, s)

    ring = M.ring
    for fb, (x, y, _) in enumerate(ring.flat):
        for e in (0, 1):
            sx, sy = (x, e), (y, e)
            gmx, gnx = M.ngens(sx), N.ngens(sx)
            gmy, gny = M.ngens(sy), N.ngens(sy)
            amat = M.act[(fb, e)]  # gmy x gmx
            nmat = N.act[(fb, e)]  # gny x gnx
            for gy in range(gmy):
                exprs = []
                for q in range(gnx):
                    expr = {}
                    for p in range(gmx):
                        c = amat[gy][p]
                        if c:
                            key = var_off[sx] + p * gnx + q
                            expr[key] = expr.get(key, 0) + c
                    for qq in range(gny):
                        c = nmat[qq][q]
                        if c:
                            key = var_off[sy] + gy * gny + qq
                            expr[key] = expr.get(key, 0) - c
                    exprs.append(expr)
                add_membership(exprs, sx)

    neq = len(equations)
    nslack = sum(len(rel) for _, rel in slack_blocks)
    rows = []
    for v in range(nvars):
        rows.append([0] * neq)
    for eq_idx, expr in enumerate(equations):
        for v, c in expr.items():
            rows[v][eq_idx] = c
    for base, rel in slack_blocks:
        width = len(rel[0]) if rel else 0
        for t, rrow in enumerate(rel):
            srow = [0] * neq
            for q in range(width):
                if rrow[q]:
                    srow[base + q] = rrow[q]
            rows.append(srow)

    kernel = left_kernel(rows, neq)
    sols = hnf([k[:nvars] for k in kernel], nvars)
    return sols, var_off, nvars


def _vector_to_map(M, N, vec, var_off) -> ModuleMap:
    mats = {}
    for s in M.slots:
        gm, gn = M.ngens(s), N.ngens(s)
        off = var_off[s]
        mats[s] = [[vec[off + p * gn + q] for q in range(gn)] for p in range(gm)]
    return ModuleMap(M, N, mats)


def _map_to_vector(f: ModuleMap, var_off, nvars):
    vec = [0] * nvars
    for s in f.source.slots:
        gn = f.target.ngens(s)
        off = var_off[s]
        for p, row in enumerate(f.mats[s]):
            for q, c in enumerate(row):
                vec[off + p * gn + q] = c
    return vec


def hom_module(M: GradedModule, N: GradedModule) -> HomGroup:
    """Degree-preserving module maps M -> N, as a group with generators.

    Solved as the integer lattice of commutation plus well-definedness
    constraints, divided by the maps whose image lies in the relation
    lattice of N.
    """
    if M.ring is not N.ring:
        raise ValueError("modules live over different rings")
    sols, var_off, nvars = _hom_solution_lattice(M, N)

    null_vecs = []
    for s in M.slots:
        gm, gn = M.ngens(s), N.ngens(s)
        off = var_off[s]
        for p in range(gm):
            for rrow in N.rels[s]:
                vec = [0] * nvars
                for q in range(gn):
                    vec[off + p * gn + q] = rrow[q]
                null_vecs.append(vec)

    coords = []
    for z in null_vecs:
        c = solve_left(sols, nvars, z)
        assert c is not None, "null map outside the solution lattice"
        coords.append(c)
    free, tors = group_invariants(coords, len(sols))
    maps = [_vector_to_map(M, N, v, var_off) for v in sols]
    return HomGroup(AbInvariants(free, tors), maps, sols, var_off, nvars)


# -- free modules and covers ------------------------------------------


class FreeModule(GradedModule):
    """Finite direct sum of representable modules, one per entry."""

    def __init__(self, ring: CategoryRing, entries):
        self.entries = tuple(entries)
        gens, act = {}, {}
        blocks = {}  # slot -> list of (entry index, start, size)
        for x in ring.objects:
            for e in (0, 1):
                names = []
                blk = []
                for j, (obj, eps) in enumerate(self.entries):
                    if eps != e:
                        continue
                    size = len(ring.basis[(x, obj)])
                    blk.append((j, len(names), size))
                    names.extend(f"e{j}:{ring.word_str(w, x)}" for w in ring.basis[(x, obj)])
                gens[(x, e)] = tuple(names)
                blocks[(x, e)] = blk
        for fb, (x, y, _) in enumerate(ring.flat):
            for e in (0, 1):
                gx = len(gens[(x, e)])
                rows = []
                for j, start, size in blocks[(y, e)]:
                    obj = self.entries[j][0]
                    xstart = next(st for (jj, st, _) in blocks[(x, e)] if jj == j)
                    for fu in range(size):
                        vec = ring.table[(fb, ring.offset[(y, obj)] + fu)]
                        row = [0] * gx
                        row[xstart : xstart + len(vec)] = list(vec)
                        rows.append(row)
                act[(fb, e)] = rows
        super().__init__(ring, gens, {}, act)
        self.blocks = blocks

    def unit_index(self, j: int) -> tuple[Slot, int]:
        """Slot and generator position of the Yoneda unit of entry j."""
        obj, eps = self.entries[j]
        slot = (obj, eps)
        start = next(st for (jj, st, _) in self.blocks[slot] if jj == j)
        return slot, start + self.ring.unit_pos[obj]

    def block_range(self, slot: Slot, j: int) -> tuple[int, int]:
        for jj, start, size in self.blocks[slot]:
            if jj == j:
                return start, size
        return 0, 0


def free_cover(module: GradedModule, order=None) -> ModuleMap:
    """Surjection from a free module onto `module`.

    Scans the listed generators slot by slot, adds a Yoneda entry for
    every generator not already inside the submodule generated by the
    earlier entries, then prunes entries that the remaining ones cover
    (so a representable module is covered by its own unit alone).  The
    Yoneda unit of each entry maps to its generator.  `order` optionally
    permutes the scan order (a permutation of the flat generator list),
    which changes the cover but not any derived invariant.
    """
    ring = module.ring
    listed = [(s, p) for s in module.slots for p in range(module.ngens(s))]
    if order is not None:
        if sorted(order) != list(range(len(listed))):
            raise ValueError("order must permute the generator list")
        listed = [listed[i] for i in order]

    def fresh_lattices():
        covered = {}
        for s in module.slots:
            lat = Lattice(module.ngens(s))
            for row in module.rels[s]:
                lat.add(row)
            covered[s] = lat
        return covered

    def engulf(covered, s, p):
        x0, e0 = s
        for w in ring.objects:
            tgt = (w, e0)
            for fu in range(len(ring.basis[(w, x0)])):
                fb = ring.offset[(w, x0)] + fu
                covered[tgt].add(list(module.act[(fb, e0)][p]))

    covered = fresh_lattices()
    chosen = []
    for (s, p) in listed:
        vec = [0] * module.ngens(s)
        vec[p] = 1
        if vec in covered[s]:
            continue
        chosen.append((s, p))
        engulf(covered, s, p)

    # prune entries covered by the others, in scan order
    i = 0
    while i < len(chosen):
        rest = chosen[:i] + chosen[i + 1 :]
        covered = fresh_lattices()
        for (s, p) in rest:
            engulf(covered, s, p)
        s, p = chosen[i]
        vec = [0] * module.ngens(s)
        vec[p] = 1
        if vec in covered[s]:
            chosen.pop(i)
        else:
            i += 1

    free = FreeModule(ring, [(s[0], s[1]) for s, _ in chosen])
    mats = {s: [[0] * module.ngens(s) for _ in range(free.ngens(s))] for s in module.slots}
    for j, (s, p) in enumerate(chosen):
        x0, e0 = s
        for w in ring.objects:
            slot = (w, e0)
            start, size = free.block_range(slot, j)
            for fu in range(size):
                fb = ring.offset[(w, x0)] + fu
                mats[slot][start + fu] = list(module.act[(fb, e0)][p])
    return ModuleMap(free, module, mats)


def kernel_of(f: ModuleMap) -> tuple[GradedModule, ModuleMap]:
    """Objectwise integer kernel with its induced action and inclusion."""
    M, N = f.source, f.target
    ring = M.ring
    basis_rows = {}
    for s in M.slots:
        gm, gn = M.ngens(s), N.ngens(s)
        stacked = [list(r) for r in f.mats[s]] + [list(r) for r in N.rels[s]]
        ker = left_kernel(stacked, gn)
        basis_rows[s] = hnf([k[:gm] for k in ker], gm)

    gens = {s: tuple(f"k{i}" for i in range(len(basis_rows[s]))) for s in M.slots}
    rels = {}
    for s in M.slots:
        rows = []
        for r in M.rels[s]:
            c = solve_left(basis_rows[s], M.ngens(s), list(r))
            assert c is not None, "module relations must lie in the kernel"
            rows.append(c)
        rels[s] = rows
    act = {}
    for fb, (x, y, _) in enumerate(ring.flat):
        for e in (0, 1):
            rows = []
            for v in basis_rows[(y, e)]:
                img = mat_mul([v], M.act[(fb, e)], M.ngens((x, e)))[0]
                c = solve_left(basis_rows[(x, e)], M.ngens((x, e)), img)
                assert c is not None, "kernel is not action-stable"
                rows.append(c)
            act[(fb, e)] = rows
    kernel = GradedModule(ring, gens, rels, act)
    incl = ModuleMap(kernel, M, {s: basis_rows[s] for s in M.slots})
    return kernel, incl


@dataclass
class Resolution:
    """An exact complex of free modules augmented over `module`.

    `frees[n]` covers the n-th syzygy; `differentials[n-1]` is the map
    frees[n] -> frees[n-1]; `augmentation` maps frees[0] onto the module.
    """

    module: GradedModule
    augmentation: ModuleMap
    differentials: list
    frees: list


def free_resolution(module: GradedModule, length: int, rng=None) -> Resolution:
    """Iterated cover-of-kernel resolution of the given length.

    Deterministic by default; passing a seeded random.Random shuffles each
    cover's generator scan, producing a different but equivalent
    resolution (used to test resolution independence).
    """
    if length < 0:
        raise ValueError("length must be nonnegative")

    def mkorder(m):
        n = sum(m.ngens(s) for s in m.slots)
        if rng is None:
            return None
        perm = list(range(n))
        rng.shuffle(perm)
        return perm

    aug = free_cover(module, mkorder(module))
    frees = [aug.source]
    diffs = []
    cur = aug
    for _ in range(length):
        ker, incl = kernel_of(cur)
        cov = free_cover(ker, mkorder(ker))
        diffs.append(compose_maps(cov, incl))
        frees.append(cov.source)
        cur = cov
    return Resolution(module, aug, diffs, frees)


# -- Ext ---------------------------------------------------------------


def _free_map_components(d: ModuleMap):
    """Ring-element matrix of a map between free modules.

    Component (j, i) is the coefficient vector (over the ring basis of
    source-entry-object(j) -> target-entry-object(i)) through which entry
    j of the source maps to entry i of the target; None when the degrees
    differ.
    """
    F, G = d.source, d.target
    ring = F.ring
    comps = {}
    for j in range(len(F.entries)):
        slot, upos = F.unit_index(j)
        row = d.mats[slot][upos]
        for i, (obj_i, eps_i) in enumerate(G.entries):
            if eps_i != slot[1]:
                comps[(j, i)] = None
                continue
            start, size = G.block_range(slot, i)
            comps[(j, i)] = tuple(row[start : start + size])
    return comps


def _hom_free_into(F: FreeModule, N: GradedModule, shift: int):
    """Presentation of the degree-`shift` maps F -> N: one block of
    N(obj, eps+shift) per entry."""
    gens_count = 0
    offsets = []
    rels = []
    for (obj, eps) in F.entries:
        slot = (obj, (eps + shift) % 2)
        n = N.ngens(slot)
        offsets.append((gens_count, slot))
        gens_count_new = gens_count + n
        for r in N.rels[slot]:
            row = [0] * gens_count + list(r)
            rels.append((row, gens_count_new))
        gens_count = gens_count_new
    rel_rows = [row + [0] * (gens_count - used) for row, used in rels]
    return gens_count, offsets, rel_rows


def _induced_matrix(d: ModuleMap, N: GradedModule, shift: int):
    """Matrix of Hom(-, N): Hom(target(d), N) -> Hom(source(d), N)."""
    F, G = d.source, d.target  # d: F -> G
    ring = F.ring
    comps = _free_map_components(d)
    src_n, src_off, _ = _hom_free_into(G, N, shift)
    tgt_n, tgt_off, _ = _hom_free_into(F, N, shift)
    mat = [[0] * tgt_n for _ in range(src_n)]
    for (j, i), vec in comps.items():
        if vec is None or not any(vec):
            continue
        obj_j, eps_j = F.entries[j]
        obj_i, _ = G.entries[i]
        e = (eps_j + shift) % 2
        off = ring.offset[(obj_j, obj_i)]
        gi, _ = src_off[i]
        gj, _ = tgt_off[j]
        for t, c in enumerate(vec):
            if not c:
                continue
            amat = N.act[(off + t, e)]  # N(obj_i) -> N(obj_j)
            for p, row in enumerate(amat):
                for q, v in enumerate(row):
                    if v:
                        mat[gi + p][gj + q] += c * v
    return mat


def _cohomology(ngens_b, rels_b, g_mat, ngens_c, rels_c, f_rows):
    """ker(g)/im(f) inside the presented group (ngens_b, rels_b)."""
    stacked = [list(r) for r in g_mat] + [list(r) for r in rels_c]
    ker = left_kernel(stacked, ngens_c)
    lattice = hnf([k[:ngens_b] for k in ker], ngens_b)
    image = [list(r) for r in f_rows] + [list(r) for r in rels_b]
    coords = []
    for row in image:
        c = solve_left(lattice, ngens_b, row)
        assert c is not None, "image does not lie in the kernel"
        coords.append(c)
    free, tors = group_invariants(coords, len(lattice))
    return AbInvariants(free, tors)


@dataclass
class ExtResult:
    """Invariant factors of one Ext group, per Z/2-degree."""

    degree: int
    by_degree: dict

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.by_degree.values())

    def __str__(self):
        return "; ".join(f"degree {e}: {v}" for e, v in sorted(self.by_degree.items()))


def ext(M: GradedModule, N: GradedModule, n: int, rng=None) -> ExtResult:
    """n-th Ext of M into N, per Z/2-degree.

    Computed as the n-th cohomology of Hom(F_*, N) for a free resolution
    F_* of M; the degree-1 component is the group of degree-shifting maps
    (equivalently Ext into the suspension).
    """
    if M.ring is not N.ring:
        raise ValueError("modules live over different rings")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    res = free_resolution(M, n + 1, rng)
    out = {}
    for shift in (0, 1):
        gb, _, rels_b = _hom_free_into(res.frees[n], N, shift)
        gc, _, rels_c = _hom_free_into(res.frees[n + 1], N, shift)
        g_mat = _induced_matrix(res.differentials[n], N, shift)
        if n == 0:
            f_rows = []
        else:
            f_rows = _induced_matrix(res.differentials[n - 1], N, shift)
        out[shift] = _cohomology(gb, rels_b, g_mat, gc, rels_c, f_rows)
    return ExtResult(n, out)


# -- projectivity ------------------------------------------------------


def is_projective(module: GradedModule) -> bool:
    """Does the canonical free cover split?

    Decided as integer feasibility of a section within the module-map
    solution space.  A slot with torsion rules splitting out immediately,
    since free modules have torsion-free values.
    """
    for s in module.slots:
        if module.value_invariants(s).torsion:
            return False
    cover = free_cover(module)
    F = cover.source
    M = module

    var_off = {}
    nvars = 0
    for s in M.slots:
        var_off[s] = nvars
        nvars += M.ngens(s) * F.ngens(s)

    equations = []  # dict var->coeff
    targets = []
    slack_cols = []  # (equation index base, relation rows) for split eqs

    # sigma is a module map into a free module: strict equations.
    for s in M.slots:
        gm, gf = M.ngens(s), F.ngens(s)
        for rrow in M.rels[s]:
            for q in range(gf):
                expr = {}
                for p in range(gm):
                    if rrow[p]:
                        expr[var_off[s] + p * gf + q] = rrow[p]
                equations.append(expr)
                targets.append(0)
    ring = M.ring
    for fb, (x, y, _) in enumerate(ring.flat):
        for e in (0, 1):
            sx, sy = (x, e), (y, e)
            amat = M.act[(fb, e)]
            fmat = F.act[(fb, e)]
            gfx, gfy = F.ngens(sx), F.ngens(sy)
            for gy in range(M.ngens(sy)):
                for q in range(gfx):
                    expr = {}
                    for p in range(M.ngens(sx)):
                        c = amat[gy][p]
                        if c:
                            key = var_off[sx] + p * gfx + q
                            expr[key] = expr.get(key, 0) + c
                    for qq in range(gfy):
                        c = fmat[qq][q]
                        if c:
                            key = var_off[sy] + gy * gfy + qq
                            expr[key] = expr.get(key, 0) - c
                    equations.append(expr)
                    targets.append(0)

    # splitting: sigma then cover = identity modulo relations.
    slack_specs = []
    for s in M.slots:
        gm, gf = M.ngens(s), F.ngens(s)
        pim = cover.mats[s]
        for p in range(gm):
            base = len(equations)
            for q in range(gm):
                expr = {}
                for t in range(gf):
                    c = pim[t][q]
                    if c:
                        key = var_off[s] + p * gf + t
                        expr[key] = expr.get(key, 0) + c
                equations.append(expr)
                targets.append(1 if p == q else 0)
            if M.rels[s]:
                slack_specs.append((base, M.rels[s]))

    neq = len(equations)
    rows = [[0] * neq for _ in range(nvars)]
    for idx, expr in enumerate(equations):
        for v, c in expr.items():
            rows[v][idx] = c
    for base, rel in slack_specs:
        for rrow in rel:
            srow = [0] * neq
            for q, c in enumerate(rrow):
                if c:
                    srow[base + q] = c
            rows.append(srow)

    return solve_left(rows, neq, targets) is not None


def projective_dimension(module: GradedModule, cap: int):
    """Least n <= cap whose n-th syzygy is projective, else ABOVE_CAP."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if is_projective(module):
        return 0
    cur = free_cover(module)
    for n in range(1, cap + 1):
        ker, _ = kernel_of(cur)
        if is_projective(ker):
            return n
        cur = free_cover(ker)
    return ABOVE_CAP


@dataclass
class UctTerms:
    """End terms of the two-sided universal-coefficient sequence.

    `hom` is the degree-0 Ext (the graded Hom), `ext1_shifted` the first
    Ext of the suspended module.  When `pd_within_one` is False the two
    groups are still correct Ext groups but do not assemble into the
    short exact sequence, whose hypothesis is a length-one resolution.
    """

    hom: ExtResult
    ext1_shifted: ExtResult
    pd_within_one: bool


def uct_terms(M: GradedModule, N: GradedModule, cap: int = 1) -> UctTerms:
    if M.ring is not N.ring:
        raise ValueError("modules live over different rings")
    hom = ext(M, N, 0)
    shifted = ext(suspend(M), N, 1)
    pd = projective_dimension(M, max(cap, 1))
    return UctTerms(hom, shifted, pd is not ABOVE_CAP and pd <= 1)
