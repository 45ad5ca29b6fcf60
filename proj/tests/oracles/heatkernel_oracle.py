# Reference values for tests/test_heatkernel.cpp, mpmath dps=30.
# q_s^lambda(z) = (|l| / (4 pi sinh(|l| s)))^n exp(-(|l| |z|^2 / 4) coth(|l| s))
# Run: python3 tests/oracles/heatkernel_oracle.py
import mpmath as mp

mp.mp.dps = 30


def q_lambda(s, l, z2, n):
    al = abs(mp.mpf(l))
    return (al / (4 * mp.pi * mp.sinh(al * s)))**n * \
        mp.e**(-(al * z2 / 4) * mp.coth(al * s))


print("q_s_lambda")
for s, l, z2, n in [(0.5, 1.3, 0.49, 1), (0.2, -4.0, 1.21, 1), (0.3, 2.0, 0.25, 2)]:
    print(f"q_lambda({s},{l},{z2},{n}) = {q_lambda(s, l, z2, n)}")

# q_s(z, t) = (1/pi) int_0^inf cos(l t) q_s^lambda(z) dl  (n = 1)
print("q_s pointwise")
for s, z2, t in [(0.5, 0.0, 0.0), (0.5, 0.25, 0.4), (0.2, 1.0, -0.7)]:
    f = lambda l: mp.cos(l * t) * q_lambda(s, l, z2, 1)
    v = mp.quad(f, [0, 1, 10, 60, mp.inf]) / mp.pi
    print(f"q({s},|z|^2={z2},{t}) = {v}")
    if z2 == 0.0 and t == 0.0:
        print(f"  closed form 1/(16 s^2) = {1 / (16 * mp.mpf(s)**2)}")
