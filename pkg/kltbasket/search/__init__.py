from fractions import Fraction

F1_BOGOMOLOV = "F1"
F2_GAMMA = "F2"
F3_SQUARE = "F3"
F4_TAIL = "F4"
F5_BLACHE = "F5"
F6_NONTAIL = "F6"
F7_PRODUCT = "F7"

STAGES = (F1_BOGOMOLOV, F2_GAMMA, F3_SQUARE, F4_TAIL, F5_BLACHE, F6_NONTAIL, F7_PRODUCT)
KLTBASKET_SUPPORTED_STAGES = set(STAGES)

# survivor counts by basket size (2, 3, 4); F1 and F2 run together inside the enumeration
PUBLISHED_COUNTS = {
    F2_GAMMA: (158, 131498, 34),
    F3_SQUARE: (149, 32234, 5),
    F4_TAIL: (87, 12166, 1),
    F5_BLACHE: (2, 855, 0),
    F6_NONTAIL: (0, 252, 0),
    F7_PRODUCT: (0, 1, 0),
}

DEFAULT_MLD = Fraction(5, 46)
DEFAULT_VOL_CAP = Fraction(1, 6351)
RESIDUAL_K2 = Fraction(1, 8533)

# the single basket left after every filter
RESIDUAL_CHAINS = ((2, 7, 2, 2, 2), (2, 2, 5, 2, 3), (2, 2, 2, 2, 2, 3, 3, 2))
