"""Brackets in the universal central extension of the double-loop algebra."""
from dyshift import build_cartan
from dyshift.liealg import H, eval_lie_word, model_for, mry_psi, uce_bracket, verify_t_relations_in_uce

a2t = build_cartan("A2~")
g = model_for(a2t)

for left, right in [((1, 1, 1), (-1, 1, -1)), ((1, 0, 1), (-1, 0, -1)), ((1, 0, 2), (-1, 0, 0))]:
    b = uce_bracket(mry_psi(left, a2t, g), mry_psi(right, a2t, g), g)
    print(f"[X{left}, X{right}] = {b}")

print("H(0,2) =", eval_lie_word(H(0, 2), a2t, g))
rep = verify_t_relations_in_uce(a2t, 2)
print(rep.summary())
