"""Covers by q-1 lines: only the external pencils, except for q = 5 and 7."""

from conic_partitions import (
    FamilyLabel, Mode, build_instance, classify_solutions, conic_stabilizer, field_of_order,
    solve_all, verify_partition,
)

for q in (5, 7, 9, 11):
    F = field_of_order(q)
    sols = solve_all(build_instance(F, Mode.AT_LEAST_ONCE, q - 1))
    report = classify_solutions(sols, conic_stabilizer(F), cover_mode=True)
    print(f"q={q}: {len(sols)} covers, orbits", [(o.family_label.value, o.orbit_size) for o in report.orbits])
    for o in report.orbits:
        if o.family_label is FamilyLabel.EXCEPTIONAL_COVER:
            r = verify_partition(o.canonical_form)
            print("   exceptional:", r.secant_count, "secants,", r.external_line_count,
                  "external lines, multiply covered internal points:", r.multiply_covered_internal)
