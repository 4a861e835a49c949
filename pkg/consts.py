# Kimberling centers as (k, name, first trilinear coordinate in the sidelengths a, b, c).
# The other two coordinates follow by cyclic rotation a -> b -> c -> a. Rational
# trilinears are stored in product form so that isosceles triangles stay finite.
CENTER_TABLE = (
    (1, "Incenter", "1"),
    (2, "Centroid", "b*c"),
    (3, "Circumcenter", "cosA"),
    (4, "Orthocenter", "cosB*cosC"),
    (5, "Nine-point center", "cosB*cosC + sinB*sinC"),
    (6, "Symmedian point", "a"),
    (7, "Gergonne point", "b*c*(c + a - b)*(a + b - c)"),
    (8, "Nagel point", "b*c*(b + c - a)"),
    (9, "Mittenpunkt", "b + c - a"),
    (10, "Spieker center", "b*c*(b + c)"),
    (11, "Feuerbach point", "b*c*(b - c)**2*(b + c - a)"),
    (12, "Harmonic conjugate of X11 wrt X1, X5", "b*c*(b + c)**2*(c + a - b)*(a + b - c)"),
    (13, "First isogonic center", "(sinB + sqrt(3)*cosB)*(sinC + sqrt(3)*cosC)"),
    (14, "Second isogonic center", "(sinB - sqrt(3)*cosB)*(sinC - sqrt(3)*cosC)"),
    (15, "First isodynamic point", "sinA + sqrt(3)*cosA"),
    (16, "Second isodynamic point", "sinA - sqrt(3)*cosA"),
    (20, "de Longchamps point", "cosA - cosB*cosC"),
    (21, "Schiffler point", "(cosC + cosA)*(cosA + cosB)"),
    (32, "Third power point", "a**3"),
    (35, "Isogonal conjugate of X79", "1 + 2*cosA"),
    (36, "Inverse-in-circumcircle of incenter", "1 - 2*cosA"),
    (39, "Brocard midpoint", "a*(b**2 + c**2)"),
    (40, "Bevan point", "cosB + cosC - cosA - 1"),
    (46, "Isogonal conjugate of X90", "cosB + cosC - cosA"),
    (55, "Insimilicenter of circumcircle and incircle", "a*(b + c - a)"),
    (56, "Exsimilicenter of circumcircle and incircle", "a*(c + a - b)*(a + b - c)"),
    (57, "Isogonal conjugate of X9", "(c + a - b)*(a + b - c)"),
    (63, "Isogonal conjugate of X19", "b**2 + c**2 - a**2"),
    (65, "Orthocenter of the intouch triangle", "cosB + cosC"),
    (69, "Retrocenter", "b*c*(b**2 + c**2 - a**2)"),
    (72, "Isogonal conjugate of X28", "(b + c)*(b**2 + c**2 - a**2)"),
    (76, "Third Brocard point", "b**3*c**3"),
    (78, "Isogonal conjugate of X34", "(b + c - a)*(b**2 + c**2 - a**2)"),
    (79, "Isogonal conjugate of X35", "(1 + 2*cosB)*(1 + 2*cosC)"),
    (80, "Reflection of incenter in Feuerbach point", "(1 - 2*cosB)*(1 - 2*cosC)"),
    (84, "Isogonal conjugate of X40", "(cosC + cosA - cosB - 1)*(cosA + cosB - cosC - 1)"),
    (88, "Isogonal conjugate of X44", "(c + a - 2*b)*(a + b - 2*c)"),
    (90, "Isogonal conjugate of X46", "(cosC + cosA - cosB)*(cosA + cosB - cosC)"),
    (99, "Steiner point", "b*c*(c**2 - a**2)*(a**2 - b**2)"),
    (100, "Anticomplement of Feuerbach point", "(c - a)*(a - b)"),
    (104, "Antipode of X100", "(cosC + cosA - 1)*(cosA + cosB - 1)"),
    (110, "Focus of Kiepert parabola", "a*(c**2 - a**2)*(a**2 - b**2)"),
    (119, "Complement of X104",
     "(cosB + cosC - 1)*(b*(cosA + cosB - 1) + c*(cosC + cosA - 1))/a"),
    (140, "Nine-point center of the medial triangle",
     "(b*(cosC*cosA + sinC*sinA) + c*(cosA*cosB + sinA*sinB))/a"),
    (141, "Complement of symmedian point", "(b**2 + c**2)/a"),
    (142, "Midpoint of X9 and X7", "(a*(b + c) - (b - c)**2)/a"),
    (144, "Anticomplement of X7",
     "((a + b - c)*(b + c - a) + (b + c - a)*(c + a - b) - (c + a - b)*(a + b - c))/a"),
    (145, "Anticomplement of Nagel point", "(3*a - b - c)/a"),
    (149, "Anticomplement of X100",
     "(b*(a - b)*(b - c) + c*(b - c)*(c - a) - a*(c - a)*(a - b))/a"),
    (153, "Anticomplement of X104",
     "(b*(cosA + cosB - 1)*(cosB + cosC - 1) + c*(cosB + cosC - 1)*(cosC + cosA - 1)"
     " - a*(cosC + cosA - 1)*(cosA + cosB - 1))/a"),
    (165, "Centroid of the excentral triangle",
     "(b + c - a)*(a + b - c) + (b + c - a)*(c + a - b) - (c + a - b)*(a + b - c)"),
    (190, "Yff parabolic point", "b*c*(c - a)*(a - b)"),
    (191, "X1-Ceva conjugate of X35", "(1 + 2*cosA)*(1 + 2*cosB + 2*cosC - 2*cosA)"),
    (200, "Isogonal conjugate of X269", "(b + c - a)**2"),
)

REQUIRED_CENTERS = frozenset(
    list(range(1, 17))
    + [20, 35, 36, 39, 40, 55, 56, 57, 63, 65, 72, 78, 79, 80, 84, 88, 90, 99, 100, 104, 110,
       119, 140, 142, 144, 145, 149, 153, 165, 190, 191, 200]
)

# Locus-type grid for (a, b) = (2, 1). Primes and subscripts are kept as published;
# compare through normalize_label().
TABLE1_COLUMNS = (
    ("confocal", "Conf."),
    ("incircle", "F.I"),
    ("poristic", "Por."),
    ("confocal_excentral", "Conf. Exc"),
    ("circumellipse", "F.II"),
    ("poristic_excentral", "Por. Exc."),
    ("homothetic", "F.III"),
    ("brocard", "Broc."),
)

TABLE1 = {
    1: ("E", "P", "P", "X", "X", "X", "4", "X"),
    2: ("E", "E", "C", "E", "C", "P", "P", "C"),
    3: ("E", "C", "P", "E", "P", "P", "E", "P"),
    4: ("E", "E", "C", "E", "C", "P", "E", "C"),
    5: ("E", "C", "C", "E", "C", "P", "E", "C"),
    6: ("4", "4", "E", "P", "E", "C", "E", "P"),
    7: ("E", "E", "C", "X", "X", "X", "X", "X"),
    8: ("E", "E", "C", "X", "X", "X", "X", "X"),
    9: ("P", "E", "C", "X", "X", "X", "X", "X"),
    10: ("E", "E", "C", "X", "X", "X", "X", "X"),
    11: ("E''", "C''", "C''", "X", "X", "C_5", "X", "X"),
    12: ("E", "C", "C", "X", "X", "X", "X", "X"),
    13: ("X", "X", "X", "X", "X", "X", "C", "C"),
    14: ("X", "X", "X", "X", "X", "X", "C", "C"),
    15: ("X", "X", "X", "X", "X", "X", "C", "P"),
    16: ("X", "X", "X", "X", "X", "X", "C", "P"),
    99: ("X", "X", "C'", "X", "C'", "C'", "E'", "C'"),
    100: ("E'", "E'", "C'", "X", "C'", "C'", "X", "C'"),
    110: ("X", "X", "C'", "E'", "C'", "C'", "X", "C'"),
}


def normalize_label(label: str) -> str:
    return label.replace("'", "").replace("_5", "")
