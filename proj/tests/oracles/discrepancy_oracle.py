# Monte Carlo reference for mu_box_mass, numpy PCG64 seed 2024, 8e6 samples.
# mu = uniform on B_1 = {|z| <= 1} x [-1, 1]; mass of (center) o B_rho:
#   |z - z_c| <= rho and |t - t_c - 0.5 Im(z_c conj(z))| <= rho^2
# Run: python3 tests/oracles/discrepancy_oracle.py
import numpy as np

rng = np.random.default_rng(2024)
M = 8_000_000
phi = rng.uniform(0, 2 * np.pi, M)
r = np.sqrt(rng.uniform(0, 1, M))
x, y = r * np.cos(phi), r * np.sin(phi)
t = rng.uniform(-1, 1, M)

for (xc, yc, tc), rho in [((0.8, 0.0, 0.9), 0.6), ((0.4, -0.3, 0.2), 0.5),
                          ((-0.2, 0.5, -0.3), 0.35)]:
    inz = (x - xc)**2 + (y - yc)**2 <= rho**2
    # Im(z_c conj(z)) = yc x - xc y
    int_ = np.abs(t - tc - 0.5 * (yc * x - xc * y)) <= rho**2
    m = np.mean(inz & int_)
    se = np.sqrt(m * (1 - m) / M)
    print(f"mass(({xc},{yc},{tc}), rho={rho}) = {m:.8f} +- {se:.2e}")
