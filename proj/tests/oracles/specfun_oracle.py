# Reference values for tests/test_specfun.cpp, mpmath dps=30.
# Run: python3 tests/oracles/specfun_oracle.py
import mpmath as mp

mp.mp.dps = 30

print("laguerre")
for k, a, t in [(5, 0, 2.5), (10, 1, 7.3), (25, 0, 13.7), (60, 0, 41.0)]:
    print(f"L({k},{a},{t}) = {mp.laguerre(k, a, t)}")

print("laguerre_Lambda (r_k L_k^a e^{-t/2} t^{a/2})")
for k, a, t in [(12, 0, 20.0), (50, 0, 30.0), (100, 1, 150.0)]:
    r = mp.sqrt(mp.factorial(k) / mp.gamma(k + a + 1))
    v = r * mp.laguerre(k, a, t) * mp.e**(-t / 2) * mp.mpf(t)**(mp.mpf(a) / 2)
    print(f"Lambda({k},{a},{t}) = {v}")

print("hermite h_k (normalized)")
for k, x in [(0, 0.7), (4, 0.7), (9, 1.9)]:
    h = mp.hermite(k, x) * mp.e**(-x * x / 2) / mp.sqrt(2**k * mp.factorial(k) * mp.sqrt(mp.pi))
    print(f"h({k},{x}) = {h}")

print("bessel")
for m, x in [(0, 2.7), (1, 13.2), (3, 0.8)]:
    print(f"J({m},{x}) = {mp.besselj(m, x)}")
    print(f"Y({m},{x}) = {mp.bessely(m, x)}")

print("airy")
for u in [-3.2, 0.0, 1.7]:
    print(f"Ai({u}) = {mp.airyai(u)}")
    print(f"Bi({u}) = {mp.airybi(u)}")
    print(f"Aip({u}) = {mp.airyai(u, 1)}")

print("airy integrals IAi(u) = int_-inf^u Ai; int_-inf^0 Ai = 2/3")
for u in [0.0, 2.0, -4.0]:
    v = mp.mpf(2) / 3 + mp.quad(mp.airyai, [0, u]) if u >= 0 else \
        mp.mpf(2) / 3 - mp.quad(mp.airyai, [u, 0])
    print(f"IAi({u}) = {v}")
