from .artifacts import (
    Artifact, Basket, ClassifierOutput, CyclicGerm, DIIFamily, EliminationRecord,
    ExternalPlurigenusRecord, ForkGerm, Germ, GermFamily, GermInvariants, InvalidGermError,
    LSCase, MiddleFamily, PlurigenusTable, StageReport, TailFamily, coprime_germ, germ_from_label,
)
from .rationals import format_rational, parse_rational
