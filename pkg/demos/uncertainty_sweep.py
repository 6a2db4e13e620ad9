"""How the squeezing label reshapes the uncertainty ellipse.

Sweeps the label along the positive reals (pure squeezing) and around
the unit circle (coherent rotation), printing the variance data next to
the laws they satisfy: var_x / var_p = |lambda|^2 everywhere, and on the
circle the anticommutator mean follows tan(theta).
"""
import cmath
import math

from solvstates import SpectrumModel, build_ladder, uncertainty
from solvstates import intelligent as it


def main():
    model = SpectrumModel.poschl_teller(2.0, 2.0)
    z = 1.0

    print("real axis: pure squeezing, var_x / var_p locked to lambda^2\n")
    print(f"{'lambda':>8} {'var_x':>12} {'var_p':>12} {'ratio':>12} {'gap':>10}")
    for lam in (0.5, 1.0, 2.0, 4.0):
        state = it.gis_state(model, it.GISParameters(z, lam))
        out = uncertainty(build_ladder(model, state.n_max), state)
        gap = (out.rs_product - out.rs_bound) / out.rs_product
        print(f"{lam:8.2f} {out.var_x:12.6f} {out.var_p:12.6f}"
              f" {out.var_x / out.var_p:12.6f} {gap:10.1e}")

    print("\nunit circle: equal variances, <F> = tan(theta) <G>\n")
    print(f"{'theta':>8} {'var_x':>12} {'var_p':>12} {'<F>':>12} {'tan(theta)<G>':>14}")
    for theta in (-math.pi / 3, -math.pi / 6, 0.0, math.pi / 6, math.pi / 3):
        state = it.gis_state(model, it.GISParameters(z, cmath.exp(1j * theta)))
        out = uncertainty(build_ladder(model, state.n_max), state)
        print(f"{theta:8.3f} {out.var_x:12.6f} {out.var_p:12.6f}"
              f" {out.mean_f:12.6f} {math.tan(theta) * out.mean_g:14.6f}")

    print("\nevery state above saturates var_x var_p = (bound)^2;")
    print("the gap column shows how far the product sits from the bound.")


if __name__ == "__main__":
    main()
