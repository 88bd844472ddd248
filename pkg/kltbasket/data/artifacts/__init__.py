from .artifact import Artifact
from .basket import Basket
from .classifier_output import ClassifierOutput
from .external import ExternalPlurigenusRecord
from .family import DIIFamily, GermFamily, MiddleFamily, TailFamily
from .germ import CyclicGerm, ForkGerm, Germ, InvalidGermError, coprime_germ, germ_from_label
from .invariants import GermInvariants
from .ls_case import LSCase
from .plurigenus import PlurigenusTable
from .stage_report import EliminationRecord, StageReport
