from __future__ import annotations

from dataclasses import dataclass, field

from ..graph import VertexSet


@dataclass(frozen=True)
class PatternWitness:
    """A certified occurrence of an excluded structure.

    ``kind`` is one of ``"Kst"``, ``"KstStar"``, ``"Extension"``,
    ``"Skewered"``. ``X`` is the s-side and ``Y`` the other side. The
    kind-specific part lives in ``pairs`` (K*: sorted pair of X -> private
    vertex), ``hub`` (Extension: connected set contracted to the extra
    vertex) or ``path`` (Skewered: path through all of Y, in order).
    """

    kind: str
    X: VertexSet
    Y: VertexSet
    pairs: tuple[tuple[int, int, int], ...] = ()
    hub: VertexSet = ()
    path: VertexSet = ()

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind, "X": list(self.X), "Y": list(self.Y)}
        if self.kind == "KstStar":
            out["pairs"] = [list(p) for p in self.pairs]
        if self.kind == "Extension":
            out["hub"] = list(self.hub)
        if self.kind == "Skewered":
            out["path"] = list(self.path)
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "PatternWitness":
        return cls(
            d["kind"],
            tuple(d["X"]),
            tuple(d["Y"]),
            tuple(tuple(p) for p in d.get("pairs", ())),
            tuple(d.get("hub", ())),
            tuple(d.get("path", ())),
        )


@dataclass(frozen=True)
class RhoResult:
    """Lower bound (exact when ``exact``) on rho(G) with its witness.

    ``branch`` are the branch vertices of H and ``midpoints`` maps each edge
    (a, b) of H, a < b, to the vertex subdividing it.
    """

    value: int
    branch: VertexSet = ()
    midpoints: tuple[tuple[int, int, int], ...] = field(default=())
    exact: bool = False

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "exact": self.exact,
            "branch": list(self.branch),
            "midpoints": [list(m) for m in self.midpoints],
        }
