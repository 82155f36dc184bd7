"""Walk through one forward switching on a 9-point configuration and
inspect the candidate sets around it."""

# %%
from hyperdeg import (
    CellLayout,
    DegreeSequence,
    Partition,
    SwitchingTuple,
    apply_forward,
    apply_reverse,
    diagnose_forward,
    edges_of,
    enumerate_forward_candidates,
    loop_part_count,
)

k = DegreeSequence([2, 2, 2, 1, 1, 1], 3)
layout = CellLayout.of(k)
print("cells:", layout.cell_of)

Q = Partition.from_parts([[0, 1, 4], [2, 6, 7], [3, 5, 8]])
print("Q      ", Q.parts, "edges", edges_of(Q, layout).edges, "loops", loop_part_count(Q, layout))

# %% Points 0 and 1 share vertex 1 inside the first part. Move them out to the
# parts holding points 2 and 8.
t = SwitchingTuple(0, 1, 2, 8)
Qp = apply_forward(Q, t, layout)
print("Q'     ", Qp.parts, "edges", edges_of(Qp, layout).edges, "loops", loop_part_count(Qp, layout))
print("legal: ", diagnose_forward(Q, t, layout))
print("undo:  ", apply_reverse(Qp, t, layout) == Q)

# %% Not every choice works. Here y2 lands in the cell of point 4, so the
# rebuilt part gets a fresh loop and the move is rejected.
bad = SwitchingTuple(0, 1, 6, 5)
print("Q'     ", apply_forward(Q, bad, layout).parts)
print("legal: ", diagnose_forward(Q, bad, layout))

# %% Over the whole candidate set:
cands = enumerate_forward_candidates(Q, layout)
legal = sum(diagnose_forward(Q, s, layout).legal for s in cands)
print(f"{legal} of {len(cands)} candidate tuples are legal")
