DU_VAL = "DuVal"
A_TYPE = "A"
D_I_TYPE = "D-I"
D_II_TYPE = "D-II"
E_I_TYPE = "E-I"
E_II_TYPE = "E-II"

GERM_TYPES = {
    DU_VAL, A_TYPE, D_I_TYPE, D_II_TYPE, E_I_TYPE, E_II_TYPE
}
