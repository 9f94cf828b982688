"""Exhaustive search for partitions and their orbits under the stabilizer of C.

At q = 3 a third orbit turns up: four inscribed triangles, which partition
the three internal points but belong to neither pencil family.
"""

from conic_partitions import build_instance, classify_solutions, conic_stabilizer, make_field, solve_all

for p, h in [(3, 1), (5, 1), (7, 1), (3, 2)]:
    F = make_field(p, h)
    sols = solve_all(build_instance(F))
    report = classify_solutions(sols, conic_stabilizer(F))
    print(f"q={F.q}: sizes {sols.size_counts()}")
    for o in report.orbits:
        print(f"   {o.family_label.value:<17} {o.orbit_size:>3} solutions  e.g. "
              f"{[l.label() for l in o.canonical_form.lines()]}")
