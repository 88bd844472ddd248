from fractions import Fraction

# b lies above this for every pair the classification considers
B_MIN = Fraction(6, 7) + Fraction(1, 938)
# every coefficient b_ij stays below this, i.e. (X, bS) is 1/7-klt
COEFF_CAP = Fraction(6, 7)
# rows with b above this are settled before the exclusion filters
B_SETTLED = Fraction(10, 11)

S_Y_SQ_MIN = -1

ON_S_ORDER_CAP = 763
OFF_S_ORDER_CAP = 42

CASE_ON_S_3 = 1
CASE_ON_S_4 = 2
CASE_OFF_S = 3

RETAINED_2A = "retained-2a"
RETAINED_2B = "retained-2b"
RETAINED_2C = "retained-2c"
EXCLUDED_B_BOUND = "excluded-b-bound"
EXCLUDED_MINUS_ONE = "excluded-minus-one"
EXCLUDED_MMP = "excluded-mmp"
OPEN = "open"
UNLISTED = "unlisted"

VERDICTS = (
    RETAINED_2A, RETAINED_2B, RETAINED_2C, EXCLUDED_B_BOUND, EXCLUDED_MINUS_ONE, EXCLUDED_MMP,
    OPEN, UNLISTED,
)
RETAINED = {RETAINED_2A, RETAINED_2B, RETAINED_2C}
