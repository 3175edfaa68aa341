"""Solvability certificates: rank equalities and vanishing projector products."""
from dataclasses import dataclass, field

from .quaternion import DEFAULT_TOL, rank

__all__ = ["RankCondition", "ProjectorCondition", "RankCertificate", "CertificateBuilder"]


@dataclass(frozen=True)
class RankCondition:
    id: str
    lhs: int
    rhs: int

    @property
    def holds(self):
        return self.lhs == self.rhs

    def describe(self):
        if self.holds:
            return f"{self.id}: {self.lhs} = {self.rhs} OK"
        return f"{self.id}: {self.lhs} != {self.rhs} FAIL"


@dataclass(frozen=True)
class ProjectorCondition:
    id: str
    residual: float
    bound: float

    @property
    def holds(self):
        return self.residual <= self.bound

    def describe(self):
        return f"{self.id}: |.| = {self.residual:.3e} (bound {self.bound:.1e}) {'OK' if self.holds else 'FAIL'}"


@dataclass
class RankCertificate:
    """Both routes of a solvability test.

    ``verdict`` is the conjunction over the rank route, which the theorems
    state in closed form; the projector route is carried alongside so the two
    can be compared.
    """

    kind: str
    rank_conditions: list = field(default_factory=list)
    projector_conditions: list = field(default_factory=list)

    @property
    def rank_verdict(self):
        return all(c.holds for c in self.rank_conditions)

    @property
    def projector_verdict(self):
        return all(c.holds for c in self.projector_conditions)

    @property
    def verdict(self):
        return self.rank_verdict

    @property
    def routes_agree(self):
        return self.rank_verdict == self.projector_verdict

    def __bool__(self):
        return self.verdict

    def rank_values(self):
        return {c.id: (c.lhs, c.rhs) for c in self.rank_conditions}

    def lines(self):
        out = [f"kind: {self.kind}", "rank conditions:"]
        out += ["  " + c.describe() for c in self.rank_conditions]
        out.append("projector conditions:")
        out += ["  " + c.describe() for c in self.projector_conditions]
        out.append(f"rank route: {'consistent' if self.rank_verdict else 'inconsistent'}")
        out.append(f"projector route: {'consistent' if self.projector_verdict else 'inconsistent'}")
        return out

    def to_dict(self):
        return {
            "kind": self.kind,
            "rank_conditions": [
                {"id": c.id, "lhs": c.lhs, "rhs": c.rhs, "holds": c.holds}
                for c in self.rank_conditions
            ],
            "projector_conditions": [
                {"id": c.id, "residual": c.residual, "bound": c.bound, "holds": c.holds}
                for c in self.projector_conditions
            ],
            "rank_verdict": self.rank_verdict,
            "projector_verdict": self.projector_verdict,
            "consistent": self.verdict,
        }


class CertificateBuilder:
    """Accumulates conditions; ``rank_eq`` materializes every block matrix."""

    def __init__(self, kind, tol=DEFAULT_TOL):
        self.cert = RankCertificate(kind)
        self.tol = tol

    def rank_eq(self, cid, lhs_matrix, *rhs_matrices):
        lhs = rank(lhs_matrix, self.tol)
        rhs = sum(rank(m, self.tol) for m in rhs_matrices)
        self.cert.rank_conditions.append(RankCondition(cid, lhs, rhs))

    def vanishes(self, cid, product, scale):
        """Record ``||product|| <= cond_tol * scale``.

        ``scale`` is ``1 + max ||input||`` of the equation being certified.
        """
        bound = self.tol.cond_tol * scale
        self.cert.projector_conditions.append(ProjectorCondition(cid, product.norm(), bound))
