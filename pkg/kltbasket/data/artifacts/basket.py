from fractions import Fraction
from math import prod
from typing import Dict, Sequence, Tuple

from .artifact import Artifact
from .germ import Germ
from ..rationals import format_rational, parse_rational

# rho = 1: K^2 = 10 - rho - sum gamma
GAMMA_TOTAL = 9


class Basket(Artifact):
    """
    An unordered multiset of germs with their orders and gamma values, kept sorted by germ
    label so that equal multisets compare and serialize equally.
    """
    __slots__ = Artifact.__slots__ + (
        "germs",
        "orders",
        "gammas",
    )

    def __init__(self, germs: Sequence[Germ], orders: Sequence[int], gammas: Sequence[Fraction]):
        if not len(germs) == len(orders) == len(gammas):
            raise ValueError("germs, orders and gammas must have equal length")
        rows = sorted(zip(germs, orders, gammas), key=lambda row: row[0].label())
        self.germs: Tuple[Germ, ...] = tuple(row[0] for row in rows)
        self.orders: Tuple[int, ...] = tuple(row[1] for row in rows)
        self.gammas: Tuple[Fraction, ...] = tuple(row[2] for row in rows)

    def __len__(self):
        return len(self.germs)

    def __str__(self):
        return f"<Basket: {self.label()} K2={self.k2}>"

    def __repr__(self):
        return self.__str__()

    def __lt__(self, other: "Basket"):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return len(self.germs), tuple(g.label() for g in self.germs)

    def label(self) -> str:
        return "{" + ", ".join(g.label() for g in self.germs) + "}"

    @property
    def gamma_sum(self) -> Fraction:
        return sum(self.gammas, Fraction(0))

    @property
    def order_product(self) -> int:
        return prod(self.orders)

    @property
    def k2(self) -> Fraction:
        return GAMMA_TOTAL - self.gamma_sum

    def bogomolov_sum(self) -> Fraction:
        return sum((1 - Fraction(1, r) for r in self.orders), Fraction(0))

    def to_json(self) -> Dict:
        return {
            "germs": [g.to_json() for g in self.germs],
            "orders": list(self.orders),
            "gammas": [format_rational(x) for x in self.gammas],
            "gamma_sum": format_rational(self.gamma_sum),
            "order_product": self.order_product,
            "K2": format_rational(self.k2),
        }

    @classmethod
    def from_json(cls, d: Dict) -> "Basket":
        return cls(
            [Germ.from_json(g) for g in d["germs"]],
            [int(r) for r in d["orders"]],
            [parse_rational(x) for x in d["gammas"]],
        )
