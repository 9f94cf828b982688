"""The three families of line partitions, built and checked point by point."""

from conic_partitions import (
    PointClass, ProjPoint, baer_subplane_partition, conic_point_pencil_partition,
    external_pencil_partition, make_field, plane_of, standard_conic, verify_partition,
)

F = make_field(7)
ext = plane_of(F).point(int(standard_conic(F).tables.ids_with_class(PointClass.EXTERNAL)[0]))
for L in (external_pencil_partition(ext), conic_point_pencil_partition(ProjPoint(F, (0, 1, 0)))):
    r = verify_partition(L)
    print(L.provenance.value, "size", r.size, "exact", r.is_exact_partition,
          "secants", r.secant_count, "external", r.external_line_count)

F9 = make_field(3, 2)
L = baer_subplane_partition(F9)
r = verify_partition(L)
print("Baer subplane at q=9:", [l.label() for l in L.lines()])
print("exact", r.is_exact_partition, "conic points covered", r.all_conic_points_covered)
