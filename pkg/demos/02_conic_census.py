"""Point and line classes of the conic Y = X^2 and the pencil through Y_inf."""

from conic_partitions import ProjLine, make_field, pencil_conic, standard_conic, tangent_pencil_index
from conic_partitions.conic import internal_counts_by_line_class, line_census, point_census

for p, h in [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1)]:
    C = standard_conic(make_field(p, h))
    per = {k.value: v for k, v in internal_counts_by_line_class(C).items()}
    print(f"q={p ** h:>2}", point_census(C), line_census(C), per)

F = make_field(7)
line = ProjLine(F, (2, -1, 3))  # Y = 2X + 3
s = tangent_pencil_index(line)
print(f"Y = 2X + 3 is tangent to Y = X^2 - {s}:", len(pencil_conic(F, s).points()), "points on that conic")
