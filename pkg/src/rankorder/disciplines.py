"""Fitted beta-like parameters of journal impact factors per scientific field.

Medicine and Education have identical fitted values and share one preset.
"""

import typing as t

import attr

from .exc import DomainError
from .models import BetaLikeParams


@attr.s(auto_attribs=True, frozen=True)
class Discipline:
    name: str
    k: float
    b: float
    a: float
    r_squared: float
    aliases: t.Tuple[str, ...] = ()

    def params(self, n: int) -> BetaLikeParams:
        return BetaLikeParams(k=self.k, a=self.a, b=self.b, n=n)


DISCIPLINES: t.Tuple[Discipline, ...] = (
    Discipline("physics", 0.0273, 0.991, 0.4058, 0.9999),
    Discipline("mathematics", 0.0437, 0.676, 0.2622, 0.9999),
    Discipline("computer-science", 0.0066, 1.0626, 0.2840, 0.9999),
    Discipline("agroscience", 0.0070, 0.9597, 0.2210, 0.9999),
    Discipline("environmental-science", 0.0358, 0.9357, 0.2781, 0.9800),
    Discipline("biosciences", 0.0304, 1.0161, 0.5140, 0.9999),
    Discipline("chemistry", 0.0549, 0.9733, 0.4560, 0.9999),
    Discipline("engineering", 0.0033, 1.0472, 0.3522, 0.9999),
    Discipline("geosciences", 0.0463, 0.8739, 0.3505, 0.9999),
    Discipline("material-science", 0.0408, 0.9072, 0.4477, 0.9999),
    Discipline("medicine", 0.0819, 0.7735, 0.4307, 0.9999, aliases=("education",)),
)


def get(name: str) -> Discipline:
    key = name.strip().lower().replace(" ", "-").replace("_", "-")
    for discipline in DISCIPLINES:
        if key == discipline.name or key in discipline.aliases:
            return discipline
    raise DomainError(
        f"Unknown discipline {name!r}; choose one of"
        f" {', '.join(d.name for d in DISCIPLINES)}"
    )
