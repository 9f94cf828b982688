"""Lines of a size-q partition through a point of C, read off against the pencil (q = 7)."""

from conic_partitions import build_instance, conic_stabilizer, make_field, solve_all, standard_conic, tangency_profile

F = make_field(7)
G = conic_stabilizer(F)
L = solve_all(build_instance(F, size_filter=7)).solutions[0]
print("partition:", [l.label() for l in L.lines()])
for P in standard_conic(F).points():
    prof = tangency_profile(L, P, G)
    print(f"{P.label():>9}  m={prof.m}  t={prof.t}  phi={prof.phi}  holds={prof.identity_holds}")
