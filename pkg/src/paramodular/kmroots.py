"""Hyperbolic rank-3 root data and Lie-type expansion checks.

The lattice is U(4t) + <2> with basis coordinates (n, l, m) and bilinear
form (x, y) = 2 x2 y2 - 4t (x1 y3 + x3 y1).  Each case record carries the
simple roots bounding the fundamental polyhedron, the odd subset, the Weyl
vector and (for the infinite cases) the symmetry generators that
materialize the root set; the printed Gram and Cartan tables are recomputed
from the vectors and compared entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class HypLattice:
    t: Fraction

    def pair(self, x, y) -> Fraction:
        return 2 * x[1] * y[1] - 4 * self.t * (x[0] * y[2] + x[2] * y[0])

    def norm(self, x) -> Fraction:
        return self.pair(x, x)

    def gram(self, vectors):
        return tuple(tuple(self.pair(a, b) for b in vectors) for a in vectors)


def reflect(lattice: HypLattice, delta, x):
    """x - (2 (x, delta)/(delta, delta)) delta; requires non-isotropic delta."""
    nn = lattice.norm(delta)
    if nn == 0:
        raise ValueError("cannot reflect in an isotropic vector")
    c = 2 * lattice.pair(x, delta) / nn
    return tuple(Fraction(xi) - c * di for xi, di in zip(x, delta))


def reflection_matrix(lattice: HypLattice, delta):
    cols = []
    for j in range(3):
        e = tuple(1 if i == j else 0 for i in range(3))
        cols.append(reflect(lattice, delta, e))
    return tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))


def mat_mul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
                 for i in range(3))


def mat_vec(a, v):
    return tuple(sum(a[i][k] * v[k] for k in range(3)) for i in range(3))


@dataclass
class RootDatum:
    case_id: str
    lattice: HypLattice
    roots: list
    odd: set                      # indices into roots forming the odd subset
    rho: tuple
    sym_gens: list = field(default_factory=list)
    printed_gram: tuple | None = None
    printed_cartan: tuple | None = None
    parabolic: bool = False
    # optional second table (full reflection group data) for validation
    roots0: list | None = None
    printed_gram0: tuple | None = None

    def gram(self):
        return self.lattice.gram(self.roots)

    def cartan(self):
        g = self.gram()
        out = []
        for i, row in enumerate(g):
            nn = g[i][i]
            line = []
            for x in row:
                v = 2 * Fraction(x) / nn
                if v.denominator != 1:
                    raise ValueError(f"non-integral Cartan entry {v} in {self.case_id}")
                line.append(v.numerator)
            out.append(tuple(line))
        return tuple(out)

    def check(self):
        """Validate the printed tables and the structural root-datum laws."""
        g = self.gram()
        if self.printed_gram is not None and g != tuple(
                tuple(Fraction(x) for x in row) for row in self.printed_gram):
            raise AssertionError(f"{self.case_id}: Gram matrix differs from the table")
        a = self.cartan()
        if self.printed_cartan is not None and a != tuple(
                tuple(int(x) for x in row) for row in self.printed_cartan):
            raise AssertionError(f"{self.case_id}: Cartan matrix differs from the table")
        for i, al in enumerate(self.roots):
            nn = self.lattice.norm(al)
            if nn <= 0:
                raise AssertionError(f"{self.case_id}: root {al} has nonpositive norm")
            pairings = [self.lattice.pair(al, e) for e in
                        ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
            from math import gcd
            gg = 0
            for p in pairings:
                if Fraction(p).denominator != 1:
                    raise AssertionError(f"{self.case_id}: non-integral pairing")
                gg = gcd(gg, int(p))
            if (2 * gg) % int(nn):
                raise AssertionError(f"{self.case_id}: norm of {al} does not divide "
                                     f"twice its pairing ideal")
            if self.lattice.pair(self.rho, al) != -Fraction(nn) / 2:
                raise AssertionError(f"{self.case_id}: Weyl-vector law fails at {al}")
        rr = self.lattice.norm(self.rho)
        if self.parabolic and rr != 0:
            raise AssertionError(f"{self.case_id}: expected parabolic (rho,rho)=0, got {rr}")
        if not self.parabolic and rr >= 0:
            raise AssertionError(f"{self.case_id}: expected elliptic (rho,rho)<0, got {rr}")
        if self.roots0 is not None and self.printed_gram0 is not None:
            g0 = self.lattice.gram(self.roots0)
            if g0 != tuple(tuple(Fraction(x) for x in row) for row in self.printed_gram0):
                raise AssertionError(f"{self.case_id}: auxiliary Gram table differs")
        for i in range(len(a)):
            for j in range(len(a)):
                if i == j:
                    if a[i][j] != 2:
                        raise AssertionError(f"{self.case_id}: Cartan diagonal not 2")
                elif a[i][j] > 0:
                    raise AssertionError(f"{self.case_id}: positive off-diagonal Cartan entry")
        return True


def _materialize(lattice, seeds, sym_gens, bound):
    """Close the seed roots under the symmetry reflections while components
    stay within the bound."""
    mats = [reflection_matrix(lattice, g) for g in sym_gens]
    seen = set()
    frontier = [tuple(Fraction(x) for x in s) for s in seeds]
    out = []
    while frontier:
        nxt = []
        for v in frontier:
            if v in seen:
                continue
            seen.add(v)
            if all(x.denominator == 1 for x in v):
                out.append(tuple(int(x) for x in v))
            for m in mats:
                w = mat_vec(m, v)
                if w not in seen and all(abs(x) <= bound for x in w):
                    nxt.append(w)
        frontier = nxt
    return sorted(out)


def build_datum(case_id: str, bound: int = 40) -> RootDatum:
    if case_id not in _CASES:
        raise KeyError(f"unknown case {case_id!r}; have {sorted(_CASES)}")
    datum = _CASES[case_id](bound)
    datum.check()
    return datum


def _case_t_I_odd(t):
    def make(bound):
        lat = HypLattice(Fraction(t))
        return RootDatum(
            f"t{t}_I_odd", lat,
            [(0, -1, 0), (1, 2, 0), (-1, 0, 1)], {0},
            (Fraction(2 * t + 3, 2 * t), Fraction(1, 2), Fraction(3, 2 * t)),
            printed_gram=((2, -4, 0), (-4, 8, -4 * t), (0, -4 * t, 8 * t)),
            printed_cartan=((2, -4, 0), (-1, 2, -t), (0, -1, 2)))
    return make


def _case_t_0_odd(t):
    def make(bound):
        lat = HypLattice(Fraction(t))
        return RootDatum(
            f"t{t}_0_odd", lat,
            [(0, -2, 0), (1, 2, 0), (-1, 0, 1)], set(),
            (Fraction(t + 2, t), Fraction(1), Fraction(2, t)),
            printed_gram=((8, -8, 0), (-8, 8, -4 * t), (0, -4 * t, 8 * t)),
            printed_cartan=((2, -2, 0), (-2, 2, -t), (0, -1, 2)))
    return make


def _case_t_I_odd_tilde(t):
    def make(bound):
        lat = HypLattice(Fraction(t))
        return RootDatum(
            f"t{t}_I_odd_tilde", lat,
            [(1, 2, 0), (-1, 0, 1), (1, -2, 0)], set(),
            (Fraction(t + 1, t), Fraction(0), Fraction(1, t)),
            sym_gens=[(0, -1, 0)],
            printed_gram=((8, -4 * t, -8), (-4 * t, 8 * t, -4 * t), (-8, -4 * t, 8)),
            printed_cartan=((2, -t, -2), (-1, 2, -1), (-2, -t, 2)))
    return make


def _case_t_II_odd(t):
    def make(bound):
        lat = HypLattice(Fraction(t))
        return RootDatum(
            f"t{t}_II_odd", lat,
            [(0, -2, 0), (-1, 0, 1), (t - 1, 2 * t, 1), (2, 2, 0)], set(),
            (Fraction(t + 1, t), Fraction(1), Fraction(1, t)),
            sym_gens=[(1, 2, 0)],
            printed_gram=((8, 0, -8 * t, -8),
                          (0, 8 * t, -4 * t * t + 8 * t, -8 * t),
                          (-8 * t, -4 * t * t + 8 * t, 8 * t, 0),
                          (-8, -8 * t, 0, 8)),
            printed_cartan=((2, 0, -2 * t, -2), (0, 2, -t + 2, -2),
                            (-2, -t + 2, 2, 0), (-2, -2 * t, 0, 2)))
    return make


def _case_t_1bar(t):
    def make(bound):
        lat = HypLattice(Fraction(t))
        roots = _materialize(lat, [(-1, 0, 1)], [(0, -1, 0), (1, 2, 0)], bound)
        datum = RootDatum(
            f"t{t}_1bar", lat, roots, set(range(len(roots))) - set(range(len(roots))),
            (Fraction(1), Fraction(0), Fraction(0)),
            sym_gens=[(0, -1, 0), (1, 2, 0)], parabolic=True)
        # defining predicate: primitive, norm 8t, pairings divisible by 4t,
        # (delta, rho) = -4t
        from math import gcd
        for v in _enumerate_box(lat, bound):
            if gcd(gcd(abs(v[0]), abs(v[1])), abs(v[2])) != 1:
                continue
            if lat.norm(v) != 8 * t or lat.pair(v, datum.rho) != -4 * t:
                continue
            pair_ideal = gcd(gcd(abs(int(lat.pair(v, (1, 0, 0)))),
                                 abs(int(lat.pair(v, (0, 1, 0))))),
                             abs(int(lat.pair(v, (0, 0, 1)))))
            if pair_ideal % (4 * t):
                continue
            if tuple(v) not in set(map(tuple, roots)) and max(map(abs, v)) <= bound // 8:
                raise AssertionError(f"t{t}_1bar: predicate root {v} missing from orbit")
        # all roots are even here: the odd subset is empty
        datum.odd = set()
        return datum
    return make


def _case_t_0_even(t):
    def make(bound):
        lat = HypLattice(Fraction(t))
        return RootDatum(
            f"t{t}_0_even", lat,
            [(0, -2, 0), (1, 2, 0), (0, 2, 1)], set(),
            (Fraction(2, t), Fraction(1), Fraction(2, t)),
            sym_gens=[(-1, 0, 1)],
            printed_gram=((8, -8, -8), (-8, 8, -4 * t + 8), (-8, -4 * t + 8, 8)),
            printed_cartan=((2, -2, -2), (-2, 2, -t + 2), (-2, -t + 2, 2)))
    return make


def _case_t_I_even(t):
    def make(bound):
        lat = HypLattice(Fraction(t))
        return RootDatum(
            f"t{t}_I_even", lat,
            [(0, -1, 0), (1, 2, 0), (0, 2, 1)], {0},
            (Fraction(3, 2 * t), Fraction(1, 2), Fraction(3, 2 * t)),
            sym_gens=[(-1, 0, 1)],
            printed_gram=((2, -4, -4), (-4, 8, -4 * t + 8), (-4, -4 * t + 8, 8)),
            printed_cartan=((2, -4, -4), (-1, 2, -t + 2), (-1, -t + 2, 2)))
    return make


def _case_t_I_even_tilde(t):
    def make(bound):
        lat = HypLattice(Fraction(t))
        return RootDatum(
            f"t{t}_I_even_tilde", lat,
            [(1, 2, 0), (0, 2, 1), (0, -2, 1), (1, -2, 0)], set(),
            (Fraction(1, t), Fraction(0), Fraction(1, t)),
            sym_gens=[(0, -1, 0), (-1, 0, 1)],
            printed_gram=((8, -4 * t + 8, -4 * t - 8, -8),
                          (-4 * t + 8, 8, -8, -4 * t - 8),
                          (-4 * t - 8, -8, 8, -4 * t + 8),
                          (-8, -4 * t - 8, -4 * t + 8, 8)),
            printed_cartan=((2, -t + 2, -t - 2, -2), (-t + 2, 2, -2, -t - 2),
                            (-t - 2, -2, 2, -t + 2), (-2, -t - 2, -t + 2, 2)))
    return make


_T_II_EVEN_ROOTS = {
    1: [(0, -1, 0), (1, 1, 0), (0, 1, 1)],
    2: [(0, -1, 0), (1, 1, 0), (1, 3, 1), (0, 1, 1)],
    3: [(0, -1, 0), (1, 1, 0), (2, 5, 1), (2, 7, 2), (1, 5, 2), (0, 1, 1)],
}


def _case_t_II_even(t):
    def make(bound):
        lat = HypLattice(Fraction(t))
        rho = (Fraction(1, 2 * t), Fraction(1, 2), Fraction(1, 2 * t))
        if t in _T_II_EVEN_ROOTS:
            roots = list(_T_II_EVEN_ROOTS[t])
        else:
            roots = _materialize(lat, [(0, -1, 0)], [(1, 2, 0), (-1, 0, 1)], bound)
            for v in _enumerate_box(lat, bound // 8):
                if lat.norm(v) == 2 and lat.pair(v, rho) == -1 and \
                        tuple(v) not in set(map(tuple, roots)):
                    raise AssertionError(f"t{t}_II_even: predicate root {v} missing")
        datum = RootDatum(
            f"t{t}_II_even", lat, roots, set(),
            rho, sym_gens=[(1, 2, 0), (-1, 0, 1)], parabolic=(t == 4))
        if t in _T_II_EVEN_ROOTS:
            g = datum.gram()
            if g != datum.cartan():
                raise AssertionError("norm-2 case must have Gram = Cartan")
        return datum
    return make


def _case_d2(bound):
    lat = HypLattice(Fraction(9))
    return RootDatum(
        "D2", lat,
        [(0, -1, 0), (1, 2, 0), (2, 9, 1), (1, 9, 2), (0, 2, 1)], {0},
        (Fraction(1, 6), Fraction(1, 2), Fraction(1, 6)),
        sym_gens=[(-1, 0, 1)],
        printed_gram=((2, -4, -18, -18, -4),
                      (-4, 8, 0, -36, -28),
                      (-18, 0, 18, -18, -36),
                      (-18, -36, -18, 18, 0),
                      (-4, -28, -36, 0, 8)),
        printed_cartan=((2, -4, -18, -18, -4),
                        (-1, 2, 0, -9, -7),
                        (-2, 0, 2, -2, -4),
                        (-2, -4, -2, 2, 0),
                        (-1, -7, -9, 0, 2)),
        roots0=[(0, -1, 0), (1, 2, 0), (2, 9, 1), (-1, 0, 1)],
        printed_gram0=((2, -4, -18, 0),
                       (-4, 8, 0, -36),
                       (-18, 0, 18, -36),
                       (0, -36, -36, 72)))


def _case_dhalf(bound):
    lat = HypLattice(Fraction(36))
    seeds = [(0, -1, 0), (1, 2, 0), (7, 32, 1), (5, 27, 1)]
    sym = [(2, 18, 1), (-1, 0, 1)]
    roots = _materialize(lat, seeds, sym, bound)
    odd_orbit = set(map(tuple, _materialize(lat, [(0, -1, 0)], sym, bound)))
    odd = {i for i, r in enumerate(roots) if tuple(r) in odd_orbit}
    datum = RootDatum(
        "Dhalf", lat, roots, odd,
        (Fraction(1, 24), Fraction(1, 2), Fraction(1, 24)),
        sym_gens=sym, parabolic=True,
        roots0=[(0, -1, 0), (1, 2, 0), (7, 32, 1), (5, 27, 1), (2, 18, 1), (-1, 0, 1)],
        printed_gram0=((2, -4, -64, -54, -36, 0),
                       (-4, 8, -16, -36, -72, -144),
                       (-64, -16, 32, 0, -144, -864),
                       (-54, -36, 0, 18, -36, -576),
                       (-36, -72, -144, -36, 72, -144),
                       (0, -144, -864, -576, -144, 288)))
    return datum


def _enumerate_box(lat, bound):
    b = max(2, bound)
    for n in range(-b, b + 1):
        for l in range(-2 * b, 2 * b + 1):
            for m in range(-b, b + 1):
                if (n, l, m) != (0, 0, 0):
                    yield (n, l, m)


_CASES = {}
for _t in (1, 2, 3, 4):
    _CASES[f"t{_t}_I_odd"] = _case_t_I_odd(_t)
    _CASES[f"t{_t}_0_odd"] = _case_t_0_odd(_t)
    _CASES[f"t{_t}_I_odd_tilde"] = _case_t_I_odd_tilde(_t)
    _CASES[f"t{_t}_II_even"] = _case_t_II_even(_t)
for _t in (2, 3, 4):
    _CASES[f"t{_t}_II_odd"] = _case_t_II_odd(_t)
    _CASES[f"t{_t}_1bar"] = _case_t_1bar(_t)
    _CASES[f"t{_t}_0_even"] = _case_t_0_even(_t)
    _CASES[f"t{_t}_I_even"] = _case_t_I_even(_t)
    _CASES[f"t{_t}_I_even_tilde"] = _case_t_I_even_tilde(_t)
_CASES["D2"] = _case_d2
_CASES["Dhalf"] = _case_dhalf


def case_ids():
    return sorted(_CASES)


# ----------------------------------------------------------------------
# Weyl group enumeration and the Lie-type expansion shape

@dataclass(frozen=True)
class WeylElement:
    matrix: tuple
    word: tuple
    sign: int


def enumerate_weyl(datum: RootDatum, height_bound: int) -> list:
    """All group elements whose image of rho stays within the exponent box
    (numerators at most height_bound), by breadth-first search over words in
    the simple reflections with matrix-level deduplication.  The sign is the
    parity of even-root letters; duplicate words must agree on it."""
    lat = datum.lattice
    t = lat.t
    gens = [reflection_matrix(lat, r) for r in datum.roots]
    gsign = [1 if i in datum.odd else -1 for i in range(len(datum.roots))]

    def inside(v, slack=1):
        q = abs(24 * v[0])
        r = abs(2 * v[1])
        s = abs(24 * t * v[2])
        return q <= height_bound * slack and s <= height_bound * slack \
            and r <= 4 * height_bound * slack

    ident = tuple(tuple(Fraction(1 if i == j else 0) for j in range(3)) for i in range(3))
    seen = {ident: (1, ())}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            sgn, word = seen[m]
            v = mat_vec(m, datum.rho)
            if not inside(v, slack=2):
                continue
            for i, g in enumerate(gens):
                m2 = mat_mul(g, m)
                s2 = sgn * gsign[i]
                if m2 in seen:
                    if seen[m2][0] != s2:
                        raise AssertionError("sign character ill-defined on equal matrices")
                    continue
                seen[m2] = (s2, (i,) + word)
                nxt.append(m2)
        frontier = nxt
        if len(seen) > 200000:
            raise RuntimeError("Weyl enumeration exceeded the safety cap")
    out = []
    for m, (sgn, word) in seen.items():
        if inside(mat_vec(m, datum.rho), slack=1):
            out.append(WeylElement(m, word, sgn))
    out.sort(key=lambda w: (len(w.word), w.word))
    return out


def reduce_to_root(datum: RootDatum, v, targets, max_steps: int = 4000):
    """Drive a positive-norm lattice point through simple reflections with
    positive pairing until it hits one of the target vectors (a simple root
    or a doubled odd one); positive real roots reach a simple root in
    finitely many steps, anything else runs out of steps and returns None."""
    lat = datum.lattice
    v = tuple(Fraction(x) for x in v)
    for _ in range(max_steps):
        if v in targets:
            return v
        for al in datum.roots:
            if lat.pair(v, al) > 0:
                v = reflect(lat, al, v)
                break
        else:
            return None
    return None


def lie_expansion_check(F, phi, datum: RootDatum, height_bound: int) -> dict:
    """Verify the two visible shapes of a Lie-type expansion.

    (i) the coefficient of F at the exponent w(rho) is sign(w) for every
        enumerated Weyl element with w(rho) inside the box;
    (ii) every positive-norm lattice point with nonzero product multiplicity
        f(nm, l) reduces into the simple-root set with the stated
        multiplicity pattern (+1 on even roots, -1 on odd roots, +1 on
        doubled odd roots).
    """
    lat = datum.lattice
    t = lat.t
    report = {"case": datum.case_id, "orbit_checked": 0, "roots_checked": 0}
    els = enumerate_weyl(datum, height_bound)
    for w in els:
        v = mat_vec(w.matrix, datum.rho)
        key = (24 * v[0], 2 * v[1], 24 * t * v[2])
        if any(x.denominator != 1 for x in key):
            raise AssertionError("orbit point leaves the exponent lattice")
        key = tuple(x.numerator for x in key)
        sq, ss = F.series.trunc[0], F.series.trunc[2]
        if key[0] < F.series.floor[0] or (sq is not None and key[0] > sq):
            continue
        if key[2] < F.series.floor[2] or (ss is not None and key[2] > ss):
            continue
        got = F.series.get(key)
        if got != w.sign:
            raise AssertionError(
                f"{datum.case_id}: coefficient {got} at {key} differs from sign {w.sign}")
        report["orbit_checked"] += 1

    roots = set(map(tuple, datum.roots))
    odd = {tuple(datum.roots[i]) for i in datum.odd}
    even = roots - odd
    doubled = {tuple(2 * x for x in r) for r in odd}
    targets = {tuple(Fraction(x) for x in r) for r in roots | doubled}
    bound_m = max(height_bound // 24, 1)

    def check_point(a, c):
        if lat.norm(a) <= 0:
            return
        red = reduce_to_root(datum, a, targets)
        if red is not None:
            red = tuple(int(x) for x in red)
        if red in even:
            ok = c == 1
        elif red in odd:
            ok = c == -1
        elif red in doubled:
            ok = c == 1
        else:
            ok = False
        if not ok:
            raise AssertionError(
                f"{datum.case_id}: positive-norm point {a} (reduced {red}) "
                f"has multiplicity {c} outside the real-root pattern")
        report["roots_checked"] += 1

    for (n24, l2), c in phi.series.terms():
        n, l = n24 // 24, l2 // 2
        # product factors (n/m, l, m), m >= 1, carry multiplicity f(n, l)
        for m in range(1, bound_m + 1):
            if n % m:
                continue
            check_point((n // m, l, m), c)
        # the m = 0 block: factors (k, l, 0) for k >= 1, and (0, l<0, 0)
        if n == 0:
            for k in range(1, bound_m + 1):
                check_point((k, l, 0), c)
            if l < 0:
                check_point((0, l, 0), c)
    return report


# registry binding case ids to the lift that realizes them
CASE_FORMS = {
    "t1_II_even": ("delta5", "phi_0_1"),
    "t2_II_even": ("delta2", "phi_0_2"),
    "t3_II_even": ("delta1", "phi_0_3"),
    "t4_II_even": ("delta_half", "phi_0_4"),
    "D2": ("d2", "phi_0_9"),
    "Dhalf": ("d_half", "phi_0_36"),
}
