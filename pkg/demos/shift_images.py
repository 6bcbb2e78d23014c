"""Images of a few generators under the shift family and the formal shift operator."""
from dyshift import DOUBLE, YANGIAN, FreeAlgebra, build_cartan
from dyshift.morphisms import chi, gamma_gen, tau_c, tau_z
from dyshift.phi import phi_c, phi_z_gen

a2 = build_cartan("A2")
Y = FreeAlgebra(a2, YANGIAN)
D = FreeAlgebra(a2, DOUBLE)

x = Y.xp(1, 2)
print("tau_2(x_{1,2})      =", tau_c(x, 2))
print("tau_z(x_{1,2})      =", {k: str(v) for k, v in tau_z(x).items()})
print("chi_3(x_{1,2} h_11) =", chi(3, x * Y.h(1, 1)))
print("Gamma(h_{1,1})      =", gamma_gen(Y.h(1, 1)))

# negative modes only make sense after the shift, as series in z^-1
img = phi_z_gen(D.xp(1, -2), depth=4)
for k, v in sorted(img.data.items(), reverse=True):
    print(f"  z^{k}: {v}")
print("Phi_1(X+(1,-1)) mod J^3 =", phi_c(D.xp(1, -1), 1, 3))
