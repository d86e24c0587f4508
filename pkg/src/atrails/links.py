"""Torus-link verdicts for smooth circuit decompositions on the torus.

Classes are written ``(p, q)``: ``p`` counts longitudinal (bottom-to-top)
wraps and ``q`` meridional (left-to-right) wraps.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import GenusUnsupported, MixedEssentialClasses, NonSmooth, NotAnATrail
from .surface import EmbeddedGraph
from .transitions import CircuitDecomposition, TransitionSystem, is_smooth, trace


def canonicalize(c, oriented=False):
    p, q = c
    if oriented:
        return (p, q)
    if p < 0 or (p == 0 and q < 0):
        return (-p, -q)
    return (p, q)


def is_unknot_class(c) -> bool:
    return min(abs(c[0]), abs(c[1])) <= 1


@dataclass(frozen=True)
class TorusLinkClass:
    null_components: int
    essential: tuple[tuple[int, int], int] | None
    oriented: bool = False

    @property
    def total(self):
        if self.essential is None:
            return (0, 0)
        (p, q), s = self.essential
        return (s * p, s * q)


@dataclass(frozen=True)
class Unknot:
    def __str__(self):
        return "Unknot"


@dataclass(frozen=True)
class TorusKnot:
    p: int
    q: int

    def __str__(self):
        return f"TorusKnot({self.p},{self.q})"


@dataclass(frozen=True)
class TorusLink:
    p: int
    q: int
    strands: int
    null_components: int

    def __str__(self):
        return f"TorusLink({self.p},{self.q},{self.strands},{self.null_components})"


@dataclass(frozen=True)
class TrivialLink:
    components: int

    def __str__(self):
        return f"TrivialLink({self.components})"


@dataclass(frozen=True)
class Unclassified:
    reason: str

    def __str__(self):
        return f"Unclassified({self.reason})"


Verdict = Unknot | TorusKnot | TorusLink | TrivialLink | Unclassified


def _primitive(c):
    k = gcd(abs(c[0]), abs(c[1]))
    return (c[0] // k, c[1] // k), k


def link_class(g: EmbeddedGraph, dec: CircuitDecomposition, oriented=False) -> TorusLinkClass:
    if g.genus != 1:
        raise GenusUnsupported("torus-link classification needs genus 1; use the composite certificate")
    classes = [g.walk_class(c) for c in dec.circuits]
    nulls = sum(c == (0, 0) for c in classes)
    essential = [c for c in classes if c != (0, 0)]
    if not essential:
        return TorusLinkClass(nulls, None, oriented)
    base, _ = _primitive(essential[0])
    for c in essential:
        prim, k = _primitive(c)
        if k != 1:
            raise MixedEssentialClasses(f"component class {c} is not primitive")
        if prim not in (base, (-base[0], -base[1])):
            raise MixedEssentialClasses(f"components of classes {base} and {prim} cross")
    s = len(essential)
    return TorusLinkClass(nulls, (canonicalize(base, oriented), s), oriented)


def verdict_of(lc: TorusLinkClass) -> Verdict:
    """Null components are split unknots; next to a single essential strand
    they are dropped from the verdict (``TorusLinkClass`` still counts them)."""
    k = lc.null_components
    if lc.essential is None:
        return Unknot() if k == 1 else TrivialLink(k)
    (p, q), s = lc.essential
    if s == 1:
        return Unknot() if is_unknot_class((p, q)) else TorusKnot(p, q)
    if 0 in (p, q):
        # parallel meridians (or longitudes) bound disjoint disks
        return TrivialLink(k + s)
    return TorusLink(s * p, s * q, s, k)


def classify(g: EmbeddedGraph, dec, oriented=False) -> Verdict:
    """Verdict for a decomposition (or a smooth transition system)."""
    if isinstance(dec, TransitionSystem):
        if not is_smooth(g, dec):
            raise NonSmooth("transition system is not smooth")
        dec = trace(g, dec)
    return verdict_of(link_class(g, dec, oriented))


def is_unknot(g: EmbeddedGraph, atrail: TransitionSystem) -> bool:
    dec = trace(g, atrail)
    if len(dec) != 1:
        raise NotAnATrail("transition system has more than one circuit")
    if g.genus != 1:
        raise GenusUnsupported("torus-link classification needs genus 1")
    return is_unknot_class(g.walk_class(dec.circuits[0]))


def verdicts_equal(a: Verdict, b: Verdict, oriented=False) -> bool:
    if oriented or type(a) is not type(b) or not isinstance(a, (TorusKnot, TorusLink)):
        return a == b
    fa, fb = canonicalize((a.p, a.q)), canonicalize((b.p, b.q))
    return fa == fb and a.__dict__.keys() == b.__dict__.keys() and all(
        getattr(a, k) == getattr(b, k) for k in a.__dict__ if k not in ("p", "q"))


def ambient_note(v: Verdict):
    """``(p, q)`` and ``(q, p)`` torus links are isotopic in 3-space; mention it."""
    if isinstance(v, (TorusKnot, TorusLink)) and abs(v.p) != abs(v.q):
        return f"ambient-isotopic to the ({v.q},{v.p}) class"
    return ""
