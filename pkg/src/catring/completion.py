"""Length-graded linear completion of a presentation to a based ring.

The completion enumerates composable words of bounded length, imposes
every relation instance (relation padded on both sides by words, total
length within the bound) on the free Z-module they span, and reads the
quotient off an integer echelon whose pivots are the largest words of
their rows.  Words are ordered by length, then lexicographically by the
fixed generator enumeration; this order is compatible with composition,
so pivot rows are rewrite rules replacing a word by strictly smaller
ones.

A bound B is *certified* when the echelon data fits the monomial model
(every pivot either has unit coefficient, and is thereby eliminated, or
is a pure torsion row d*w = 0 giving a basis slot with modulus d) and
the product of every two surviving basis words has length at most B and
reduces inside the bound.  Completion stops when `window` consecutive
bounds are certified with identical basis, torsion and multiplication
table; since every echelon row is an integer combination of relation
instances, the certified table is exactly the presented ring's.

Torsion never appears for the rings in scope but is carried faithfully:
slots with a modulus keep their coefficients reduced into [0, d).
"""

from __future__ import annotations

from dataclasses import dataclass

from .intlin import xgcd
from .presentation import IDENTITY, Presentation


class CompletionError(Exception):
    pass


class NotStabilizedError(CompletionError):
    """The bound was exhausted before the quotient settled."""

    def __init__(self, message, trajectory):
        super().__init__(f"{message}; rank trajectory {trajectory}")
        self.trajectory = trajectory


class InconsistentPresentationError(CompletionError):
    """A unit collapsed to zero: the presented ring is degenerate."""


def _addmul(dst: dict, src: dict, c: int) -> None:
    for i, v in src.items():
        nv = dst.get(i, 0) + c * v
        if nv:
            dst[i] = nv
        else:
            dst.pop(i, None)


class _PairSpace:
    """Free Z-module on the words of one object pair, with its echelon."""

    __slots__ = ["words", "ids", "rows"]

    def __init__(self):
        self.words: list[tuple] = []
        self.ids: dict[tuple, int] = {}
        self.rows: dict[int, dict[int, int]] = {}

    def add_word(self, path: tuple) -> None:
        self.ids[path] = len(self.words)
        self.words.append(path)

    def insert(self, row: dict) -> None:
        rows = self.rows
        while row:
            m = max(row)
            piv = rows.get(m)
            if piv is None:
                if row[m] < 0:
                    row = {i: -v for i, v in row.items()}
                rows[m] = row
                return
            a, b = piv[m], row[m]
            if b % a == 0:
                _addmul(row, piv, -(b // a))
            else:
                x, y, g = xgcd(a, b)
                merged: dict[int, int] = {}
                for i, v in piv.items():
                    merged[i] = x * v
                _addmul(merged, row, y)
                rem = {i: (a // g) * v for i, v in row.items()}
                _addmul(rem, piv, -(b // g))
                rows[m] = merged
                row = rem

    def canonicalize(self) -> None:
        # Bring every row to the unique reduced form: each entry sitting on
        # another pivot's column is reduced into [0, that pivot).
        rows = self.rows
        for m in sorted(rows):
            row = rows[m]
            while True:
                i = max(
                    (j for j in row if j != m and j in rows and not 0 <= row[j] < rows[j][j]),
                    default=None,
                )
                if i is None:
                    break
                _addmul(row, rows[i], -(row[i] // rows[i][i]))

    def reduce(self, row: dict) -> dict:
        """Full reduction of a vector: unit pivots eliminated, torsion
        pivots reduced mod their modulus."""
        row = dict(row)
        rows = self.rows
        while True:
            i = max(
                (j for j in row if j in rows and not 0 <= row[j] < rows[j][j]),
                default=None,
            )
            if i is None:
                return row
            _addmul(row, rows[i], -(row[i] // rows[i][i]))

    def classify(self):
        """(eliminated ids, {id: modulus}, mixed row count)."""
        eliminated = set()
        moduli: dict[int, int] = {}
        mixed = 0
        for m, row in self.rows.items():
            if row[m] == 1:
                eliminated.add(m)
            elif len(row) == 1:
                moduli[m] = row[m]
            else:
                mixed += 1
        return eliminated, moduli, mixed


@dataclass(frozen=True)
class RingElement:
    """An element of one hom component, as coefficients over its basis."""

    ring: "CategoryRing"
    source: int
    target: int
    coeffs: tuple

    def __add__(self, other):
        self._check(other)
        return self.ring.element(
            self.source, self.target, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other):
        self._check(other)
        return self.ring.element(
            self.source, self.target, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self):
        return self.ring.element(self.source, self.target, [-a for a in self.coeffs])

    def _check(self, other):
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError("elements live in different components")

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def then(self, other: "RingElement") -> "RingElement":
        """Composition in diagram order: (x.then(y)) applies x first."""
        if self.target != other.source:
            raise ValueError("elements are not composable")
        return self.ring.compose(self, other)

    def __str__(self):
        return self.ring.element_str(self)


class CategoryRing:
    """A completed category ring: basis words, torsion and the table.

    `basis[(X, Y)]` lists the normal-form words of the component X -> Y in
    monomial order, `torsion[(X, Y)]` their moduli (None for free slots).
    `table[(u, v)]`, for flat basis indices with target(u) == source(v),
    is the coefficient vector of the composite "u then v" over the basis
    of (source(u), target(v)).
    """

    def __init__(self, presentation, basis, torsion, table, arrow_forms, stabilized_at, max_len, window):
        self.presentation = presentation
        self.objects = presentation.objects
        self.pairs = [(x, y) for x in self.objects for y in self.objects]
        self.basis = basis
        self.torsion = torsion
        self.table = table
        self.stabilized_at = stabilized_at
        self.max_len = max_len
        self.window = window

        self.flat: list[tuple[int, int, tuple]] = []
        self.flat_of: dict[tuple[int, int, tuple], int] = {}
        self.offset: dict[tuple[int, int], int] = {}
        for pair in self.pairs:
            self.offset[pair] = len(self.flat)
            for w in basis[pair]:
                self.flat_of[(pair[0], pair[1], w)] = len(self.flat)
                self.flat.append((pair[0], pair[1], w))
        self.unit_pos = {x: basis[(x, x)].index(()) for x in self.objects}
        # arrow_forms maps each non-identity generator index to its normal form
        self.arrow_forms = {
            gi: self.element(src, tgt, coeffs) for gi, (src, tgt, coeffs) in arrow_forms.items()
        }

    # -- elements ------------------------------------------------------

    def element(self, source, target, coeffs) -> RingElement:
        mods = self.torsion[(source, target)]
        reduced = tuple(c % d if d else c for c, d in zip(coeffs, [m or 0 for m in mods]))
        return RingElement(self, source, target, reduced)

    def zero(self, source, target) -> RingElement:
        return self.element(source, target, [0] * len(self.basis[(source, target)]))

    def unit(self, obj) -> RingElement:
        coeffs = [0] * len(self.basis[(obj, obj)])
        coeffs[self.unit_pos[obj]] = 1
        return self.element(obj, obj, coeffs)

    def basis_element(self, source, target, pos) -> RingElement:
        coeffs = [0] * len(self.basis[(source, target)])
        coeffs[pos] = 1
        return self.element(source, target, coeffs)

    def compose(self, x: RingElement, y: RingElement) -> RingElement:
        """x then y, i.e. the ring product y o x."""
        out = [0] * len(self.basis[(x.source, y.target)])
        off_x = self.offset[(x.source, x.target)]
        off_y = self.offset[(y.source, y.target)]
        for i, a in enumerate(x.coeffs):
            if not a:
                continue
            for j, b in enumerate(y.coeffs):
                if not b:
                    continue
                vec = self.table[(off_x + i, off_y + j)]
                ab = a * b
                for t, c in enumerate(vec):
                    if c:
                        out[t] += ab * c
        return self.element(x.source, y.target, out)

    # -- presentation-facing helpers ------------------------------------

    def rank(self, source, target) -> tuple[int, tuple[int, ...]]:
        """Basis size and torsion moduli of one component."""
        if (source, target) not in self.basis:
            raise KeyError(f"unknown component ({source}, {target})")
        mods = self.torsion[(source, target)]
        return len(self.basis[(source, target)]), tuple(m for m in mods if m)

    def total_rank(self) -> int:
        return len(self.flat)

    def word_str(self, word: tuple, obj: int | None = None) -> str:
        if not word:
            return f"1[{obj}]" if obj is not None else "1"
        names = [self.presentation.generators[gi].name() for gi in word]
        return "*".join(reversed(names))

    def element_str(self, elem: RingElement) -> str:
        parts = []
        words = self.basis[(elem.source, elem.target)]
        for c, w in zip(elem.coeffs, words):
            if not c:
                continue
            s = self.word_str(w, elem.source)
            if c == 1:
                parts.append(s)
            elif c == -1:
                parts.append(f"-{s}")
            else:
                parts.append(f"{c}*{s}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


DEFAULT_MAX_LEN = 12
DEFAULT_WINDOW = 2


def complete(pres: Presentation, max_len: int = DEFAULT_MAX_LEN, window: int = DEFAULT_WINDOW) -> CategoryRing:
    """Run the graded completion; deterministic in (pres, max_len, window).

    Raises NotStabilizedError when the bound is exhausted (carrying the
    rank trajectory) and InconsistentPresentationError when a unit
    collapses.
    """
    if window < 1:
        raise ValueError("window must be positive")
    pres.validate()
    gens = pres.generators
    arrows = pres.arrows
    objects = pres.objects
    pairs = [(x, y) for x in objects for y in objects]
    spaces = {pair: _PairSpace() for pair in pairs}

    # words_at[len] = list of (source, target, path) in lexicographic order
    words_at: list[list[tuple[int, int, tuple]]] = [[(x, x, ()) for x in objects]]
    for x in objects:
        spaces[(x, x)].add_word(())
    by_len_target: dict[tuple[int, int], list] = {}
    by_len_source: dict[tuple[int, int], list] = {}
    for x in objects:
        by_len_target.setdefault((0, x), []).append((x, x, ()))
        by_len_source.setdefault((0, x), []).append((x, x, ()))

    history: list[tuple] = []
    trajectory: list[int] = []

    def extend_words(length: int) -> None:
        layer = []
        for src, tgt, path in words_at[length - 1]:
            for a in arrows:
                g = gens[a]
                if g.source != tgt:
                    continue
                item = (src, g.target, path + (a,))
                layer.append(item)
                spaces[(src, g.target)].add_word(path + (a,))
                by_len_target.setdefault((length, g.target), []).append(item)
                by_len_source.setdefault((length, src), []).append(item)
        words_at.append(layer)

    def insert_instances(bound: int) -> None:
        # all relation instances of total padded length exactly `bound`
        for rel in pres.relations:
            lam = rel.max_word_len()
            pad = bound - lam
            if pad < 0:
                continue
            for lv in range(pad + 1):
                lu = pad - lv
                pres_v = by_len_target.get((lv, rel.source), [])
                pres_u = by_len_source.get((lu, rel.target), [])
                for vsrc, _, vpath in pres_v:
                    for _, utgt, upath in pres_u:
                        space = spaces[(vsrc, utgt)]
                        ids = space.ids
                        for s1, s2 in zip(rel.sides, rel.sides[1:]):
                            row: dict[int, int] = {}
                            for c, w in s1:
                                wid = ids[vpath + w + upath]
                                nv = row.get(wid, 0) + c
                                if nv:
                                    row[wid] = nv
                                else:
                                    row.pop(wid, None)
                            for c, w in s2:
                                wid = ids[vpath + w + upath]
                                nv = row.get(wid, 0) - c
                                if nv:
                                    row[wid] = nv
                                else:
                                    row.pop(wid, None)
                            if row:
                                space.insert(row)

    def snapshot(bound: int):
        content = {}
        total = 0
        all_monomial = True
        for pair in pairs:
            space = spaces[pair]
            eliminated, moduli, mixed = space.classify()
            if mixed:
                all_monomial = False
            unit = space.ids[()] if pair[0] == pair[1] else None
            if unit is not None and (unit in eliminated or unit in moduli):
                raise InconsistentPresentationError(
                    f"the identity of object {pair[0]} collapses; the presentation is inconsistent"
                )
            kept = [
                (space.words[i], moduli.get(i))
                for i in range(len(space.words))
                if i not in eliminated
            ]
            content[pair] = kept
            total += len(kept)
        trajectory.append(total)
        if not all_monomial:
            return None

        # closure certificate + table
        table = {}
        for px, py in pairs:
            for qy, qz in pairs:
                if py != qy:
                    continue
                tgt_space = spaces[(px, qz)]
                tgt_ids = {w: n for n, (w, _) in enumerate(content[(px, qz)])}
                for w_u, _ in content[(px, py)]:
                    for w_v, _ in content[(qy, qz)]:
                        prod = w_u + w_v
                        if len(prod) > bound:
                            return None
                        red = tgt_space.reduce({tgt_space.ids[prod]: 1})
                        vec = [0] * len(tgt_ids)
                        for i, c in red.items():
                            pos = tgt_ids.get(tgt_space.words[i])
                            if pos is None:
                                return None
                            vec[pos] = c
                        table[(px, py, w_u, qy, qz, w_v)] = tuple(vec)
        return (tuple(sorted((pair, tuple(kept)) for pair, kept in content.items())),
                tuple(sorted(table.items())))

    for bound in range(1, max_len + 1):
        extend_words(bound)
        if bound == 1:
            insert_instances(0)
        insert_instances(bound)
        for space in spaces.values():
            space.canonicalize()
        history.append(snapshot(bound))
        tail = history[-window:]
        if len(tail) == window and tail[0] is not None and all(t == tail[0] for t in tail):
            return _build_ring(pres, spaces, tail[0], bound, max_len, window)

    raise NotStabilizedError(
        f"no stabilization for k={pres.group_order} within max_len={max_len}", trajectory
    )


def _build_ring(pres, spaces, snap, bound, max_len, window):
    content, table_items = snap
    basis = {}
    torsion = {}
    for pair, kept in content:
        basis[pair] = [w for w, _ in kept]
        torsion[pair] = [m for _, m in kept]

    ring_table = {}
    flat_of = {}
    flat = []
    pairs = [(x, y) for x in pres.objects for y in pres.objects]
    for pair in pairs:
        for w in basis[pair]:
            flat_of[(pair[0], pair[1], w)] = len(flat)
            flat.append((pair[0], pair[1], w))
    for (px, py, w_u, qy, qz, w_v), vec in table_items:
        ring_table[(flat_of[(px, py, w_u)], flat_of[(qy, qz, w_v)])] = vec

    arrow_forms = {}
    for a in pres.arrows:
        g = pres.generators[a]
        space = spaces[(g.source, g.target)]
        red = space.reduce({space.ids[(a,)]: 1})
        pos = {w: n for n, w in enumerate(basis[(g.source, g.target)])}
        coeffs = [0] * len(pos)
        for i, c in red.items():
            coeffs[pos[space.words[i]]] = c
        arrow_forms[a] = (g.source, g.target, tuple(coeffs))

    return CategoryRing(pres, basis, torsion, ring_table, arrow_forms, bound, max_len, window)


def normal_form(ring: CategoryRing, data, source: int | None = None, target: int | None = None) -> RingElement:
    """Normal form of a word or a Z-combination of parallel words.

    `data` is either a word (tuple of generator indices in application
    order) or a tuple of (coefficient, word) pairs.  Endpoints are
    inferred from the words where possible; combinations containing only
    empty words need `source` (= `target`).
    """
    pres = ring.presentation
    if data and isinstance(data[0], int):
        data = ((1, tuple(data)),)
    elif data == ():
        data = ((1, ()),)

    endpoints = None
    for _, w in data:
        stripped = tuple(gi for gi in w if pres.generators[gi].kind != IDENTITY)
        if stripped:
            endpoints = pres.word_endpoints(stripped)
            break
    if endpoints is None:
        if source is None:
            raise ValueError("combination of identity words needs a source object")
        endpoints = (source, target if target is not None else source)
    src, tgt = endpoints
    if source is not None and source != src or target is not None and target != tgt:
        raise ValueError(f"declared endpoints ({source},{target}) do not match words ({src},{tgt})")

    acc = ring.zero(src, tgt)
    for c, w in data:
        stripped = []
        cur = src
        for gi in w:
            g = pres.generators[gi]
            if g.source != cur:
                raise ValueError(f"word {w} is not composable")
            cur = g.target
            if g.kind != IDENTITY:
                stripped.append(gi)
        if cur != tgt:
            raise ValueError("summands are not parallel")
        elem = ring.unit(src)
        for gi in stripped:
            elem = elem.then(ring.arrow_forms[gi])
        coeffs = [c * v for v in elem.coeffs]
        acc = acc + ring.element(src, tgt, coeffs)
    return acc


@dataclass
class VerificationReport:
    """Failures are hard errors; warnings flag unusual but valid data."""

    failures: list[str]
    warnings: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def random_associativity_probe(ring: CategoryRing, count: int = 1000, max_len: int = 6, seed: int = 0) -> list[str]:
    """Check associativity on pseudo-random composable word triples.

    Returns the list of failing triples (empty = pass); deterministic in
    the seed.
    """
    import random

    rng = random.Random(seed)
    pres = ring.presentation
    gens = pres.generators
    arrows = pres.arrows
    failures = []

    def random_word(start):
        length = rng.randint(0, max_len)
        path = []
        cur = start
        for _ in range(length):
            options = [a for a in arrows if gens[a].source == cur]
            if not options:
                break
            a = rng.choice(options)
            path.append(a)
            cur = gens[a].target
        return tuple(path), cur

    for _ in range(count):
        x = rng.choice(ring.objects)
        u, y = random_word(x)
        v, z = random_word(y)
        w, _ = random_word(z)
        eu = normal_form(ring, u, source=x, target=y)
        ev = normal_form(ring, v, source=y, target=z)
        ew = normal_form(ring, w, source=z)
        if eu.then(ev).then(ew) != eu.then(ev.then(ew)):
            failures.append(f"associativity fails on words {u} {v} {w}")
    return failures


def verify_ring(ring: CategoryRing) -> VerificationReport:
    """Check relations, unit laws and associativity on the whole table."""
    failures: list[str] = []
    warnings: list[str] = []
    pres = ring.presentation

    for rel in pres.relations:
        forms = [
            normal_form(ring, side, source=rel.source, target=rel.target) for side in rel.sides
        ]
        for other in forms[1:]:
            if other != forms[0]:
                failures.append(
                    f"relation {rel.tag} ({rel.source}->{rel.target}) does not hold in the table"
                )
                break

    for (x, y) in ring.pairs:
        for pos in range(len(ring.basis[(x, y)])):
            b = ring.basis_element(x, y, pos)
            if ring.unit(x).then(b) != b:
                failures.append(f"left unit fails on basis {pos} of ({x},{y})")
            if b.then(ring.unit(y)) != b:
                failures.append(f"right unit fails on basis {pos} of ({x},{y})")

    objs = ring.objects
    for x in objs:
        for y in objs:
            nu = len(ring.basis[(x, y)])
            for z in objs:
                nv = len(ring.basis[(y, z)])
                for w_obj in objs:
                    nw = len(ring.basis[(z, w_obj)])
                    for i in range(nu):
                        u = ring.basis_element(x, y, i)
                        for j in range(nv):
                            v = ring.basis_element(y, z, j)
                            uv = u.then(v)
                            for t in range(nw):
                                w = ring.basis_element(z, w_obj, t)
                                if uv.then(w) != u.then(v.then(w)):
                                    failures.append(
                                        f"associativity fails on basis triple "
                                        f"({x},{y},{i}) ({y},{z},{j}) ({z},{w_obj},{t})"
                                    )

    for pair in ring.pairs:
        mods = [m for m in ring.torsion[pair] if m]
        if mods:
            warnings.append(f"component {pair} carries torsion moduli {mods}")

    return VerificationReport(failures, warnings)
