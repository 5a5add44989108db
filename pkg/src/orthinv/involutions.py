"""Orthogonal involutions of GL_n(F): G-orbit labels, split T-orbits for the
torus T = E^x and similitude indices."""

from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .embeddings import integral_jsym_embedding
from .errors import HypothesisFailed, UnsupportedOrbit
from .field import CLASS_NAMES, squares_from_below, y_invariant
from .forms import SymMatrix, form_invariants, is_similar

SPLIT = "SplitJ"
NONQS = "NonQuasiSplit"
QSDISC = "QuasiSplitDisc"


@dataclass(frozen=True)
class GOrbitLabel:
    tag: str
    n: int
    disc0_class: int = 0

    def __post_init__(self):
        if self.tag == NONQS and self.n == 2:
            raise ValueError("there is no non-quasi-split orbit when n = 2")
        if self.tag == QSDISC and (self.n % 2 or self.disc0_class == 0):
            raise ValueError("quasi-split non-split orbits need n even and a nontrivial class")

    def __str__(self):
        if self.tag == QSDISC:
            return f"{QSDISC}({CLASS_NAMES[self.disc0_class]})"
        return self.tag

    def sort_key(self):
        return ({SPLIT: 0, NONQS: 1, QSDISC: 2}[self.tag], self.disc0_class)


class Involution:
    """theta_nu(g) = nu^-1 ᵗg^-1 nu, stored with nu scaled so that its first
    nonzero entry (row-major) is 1."""

    def __init__(self, nu):
        F = nu.field
        lead = next(x for row in nu.rows for x in row if not x.is_zero())
        self.nu = nu
        self.canonical = nu.scaled(lead.inverse()).rows
        self.field = F
        self.n = nu.n

    def __eq__(self, other):
        return isinstance(other, Involution) and self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def apply(self, g):
        M = self.nu.matrix
        Minv = linalg.inverse(M, self.field)
        gti = linalg.inverse(linalg.transpose(g), self.field)
        return linalg.matmul(linalg.matmul(Minv, gti), M)


@lru_cache(maxsize=None)
def j_invariants(F, n):
    return form_invariants(SymMatrix.antidiagonal(F, n))


def g_orbit_label(nu):
    F, n = nu.field, nu.n
    inv = form_invariants(nu)
    jinv = j_invariants(F, n)
    if n % 2:
        # the center moves the discriminant freely; normalize it to disc(J)
        z = F.square_classes.rep(inv.disc_class ^ jinv.disc_class)
        inv = form_invariants(nu.scaled(z))
        assert inv.disc_class == jinv.disc_class
        return GOrbitLabel(SPLIT if inv.hasse == jinv.hasse else NONQS, n)
    if inv.disc0_class != jinv.disc0_class:
        return GOrbitLabel(QSDISC, n, inv.disc0_class)
    if inv.hasse == jinv.hasse:
        return GOrbitLabel(SPLIT, n)
    return GOrbitLabel(NONQS, n)


def similitude_classes(nu):
    """Square classes z with z·nu similar to nu, i.e. mu(G_theta)(F^x)^2."""
    F = nu.field
    return frozenset(i for i, z in enumerate(F.square_classes.reps)
                     if is_similar(nu.scaled(z), nu))


@dataclass
class TOrbitRep:
    x: object
    nu: SymMatrix
    theta: Involution
    g_label: GOrbitLabel
    hasse: int
    disc0_class: int
    mu_classes: frozenset = frozenset()
    mT: int = 0
    mZ: int = 0


def coset_representatives(E, F_sub=0):
    """Representatives of E^x / ((E^x)^2 F^x) drawn from 1, u, pi_E, u*pi_E."""
    F = E.prefix(F_sub)
    image = {E.class_of(E.element(r)) for r in F.square_classes.reps}
    kept = []
    for x in (E.one, E.nonresidue, E.uniformizer, E.nonresidue * E.uniformizer):
        cx = E.class_of(x)
        if all((cx ^ E.class_of(k)) not in image for k in kept):
            kept.append(x)
    return kept


def split_t_orbit_census(E, F_sub=0, emb=None, reps=None):
    base = E.prefix_length(F_sub)
    F = E.prefix(base)
    emb = emb if emb is not None else integral_jsym_embedding(E, base)
    reps = reps if reps is not None else coset_representatives(E, base)
    census = []
    for x in reps:
        nu = SymMatrix(F, linalg.matmul(emb.J, emb.matrix_of(x)))
        inv = form_invariants(nu)
        census.append(TOrbitRep(x, nu, Involution(nu), g_orbit_label(nu), inv.hasse, inv.disc0_class))
    below = squares_from_below(E, base)
    labels = {c.g_label for c in census}
    for c in census:
        c.mu_classes = similitude_image(c.theta, labels)
        c.mT, c.mZ = m_indices(c, below)
    return census


def similitude_image(theta, census_labels=None):
    """mu(G_theta) modulo squares, for involutions met by the split T-orbit
    census.  Other orbits are rejected rather than extrapolated."""
    if census_labels is not None and g_orbit_label(theta.nu) not in census_labels:
        raise UnsupportedOrbit(f"{g_orbit_label(theta.nu)} carries no split T-orbit")
    return similitude_classes(theta.nu)


def m_indices(rep, below):
    """(m_T, m_Z) as indices of square-class subgroups.

    m_Z = [mu(G_theta) : (F^x)^2] and m_T = [mu(G_theta) : mu(T ∩ G_theta)],
    with mu(T ∩ G_theta) = (E^x)^2 ∩ F^x since T is theta-split.
    """
    mu = rep.mu_classes
    if not below <= mu:
        raise AssertionError("torus similitudes escape mu(G_theta)")
    return len(mu) // len(below), len(mu)


def is_theta_split(theta, emb, elements):
    for t in elements:
        M = emb.matrix_of(t)
        if not linalg.equal(theta.apply(M), linalg.inverse(M, emb.F)):
            return False
    return True


def default_e0_level(E, F_sub=0):
    """Smallest prefix above F_sub with only unramified steps above it."""
    base = E.prefix_length(F_sub)
    steps = E.spec.steps
    level = len(steps)
    while level > base and getattr(steps[level - 1], "e", 1) == 1:
        level -= 1
    return level


def mK0_check(E, F_sub=0, e0_level=None):
    """m_H(theta_J) for H = E_0^x GL_{n_0}(O_{E_0}), E/E_0 unramified, y = 2."""
    base = E.prefix_length(F_sub)
    if y_invariant(E, base) != 2:
        raise HypothesisFailed("the index computation needs a unique quadratic subextension")
    level = default_e0_level(E, base) if e0_level is None else e0_level
    if any(getattr(s, "e", 1) != 1 for s in E.spec.steps[level:]):
        raise HypothesisFailed("E/E_0 must be unramified")
    E0 = E.prefix(level)
    F = E.prefix(base)
    n0 = E.n // E0.n
    if n0 % 2:
        return 4 // y_invariant(E0, base)
    # O_{E_0}^x (E_0^x)^2 ∩ F^x: classes of F of even order in E_0
    good = sum(1 for r in F.square_classes.reps if E0.element(r).ord % 2 == 0)
    return 4 // good
