"""GF(9) arithmetic and the quadratic character."""

from conic_partitions import enumerate_elements, field_of_order, make_field, quadratic_character

F = make_field(3, 2, [1, 0, 1])
print(F)
t = F.element(3)
print("t*t =", t * t, "  1/t =", t.inverse())
squares = [str(a) for a in enumerate_elements(F) if quadratic_character(a) == 1]
print("nonzero squares:", ", ".join(squares))

# -1 is a square exactly when q = 1 mod 4
for q in (3, 5, 7, 9, 11, 13):
    G = field_of_order(q)
    print(q, "chi(-1) =", quadratic_character(-G.one))
