#!/usr/bin/env python3
# Regenerates tests/oracle/reference_values.hpp with 40-digit mpmath evaluations.
# The C++ library never includes this header; only the tests do.
#
#   python3 tests/oracle/gen_reference_values.py > tests/oracle/reference_values.hpp

from mpmath import mp, mpf, mpc, airyai, airybi, pi, exp, quad, inf, sqrt, findroot

mp.dps = 40


def num(x):
    return mp.nstr(x, 20, min_fixed=-1, max_fixed=-1)


def quad4(z):
    return airyai(z), airyai(z, 1), airybi(z), airybi(z, 1)


def g(z, F, sign):
    return pi * airyai(z) * (airybi(z) + 1j * airyai(z)) - sign * F ** (mpf(1) / 3)


def newton(f, z):
    return findroot(f, mpc(z), tol=mpf(10) ** -35)


out = []
emit = out.append
emit("// Generated by tests/oracle/gen_reference_values.py (mpmath, 40 digits). Do not edit.")
emit("#pragma once")
emit("")
emit("#include <array>")
emit("")
emit("namespace airytrap::oracle {")
emit("")

emit("struct RealAiryRow { double x, ai, ai_prime, bi, bi_prime; };")
xs = [mpf(k) / 4 for k in range(-80, 81, 3)] + [mpf("-2.33811"), mpf("8.999"), mpf("9.001"), mpf("-8.999"), mpf("-9.001")]
emit(f"inline constexpr std::array<RealAiryRow, {len(xs)}> kRealAiry{{{{")
for x in xs:
    a, ap, b, bp = quad4(x)
    emit(f"    {{{num(x)}, {num(a)}, {num(ap)}, {num(b)}, {num(bp)}}},")
emit("}};")
emit("")

emit("struct ComplexAiryRow { double re, im, ai_re, ai_im, aip_re, aip_im, bi_re, bi_im, bip_re, bip_im; };")
pts = []
for r in [mpf("0.5"), mpf("2.5"), mpf("5.5"), mpf("8.7"), mpf("9.3"), mpf("13"), mpf("19")]:
    for deg in [10, 35, 60, 95, 120, 150, 170, -20, -130]:
        pts.append(r * exp(1j * pi * mpf(deg) / 180))
emit(f"inline constexpr std::array<ComplexAiryRow, {len(pts)}> kComplexAiry{{{{")
for z in pts:
    a, ap, b, bp = quad4(z)
    emit("    {" + ", ".join(num(v) for v in [z.real, z.imag, a.real, a.imag, ap.real, ap.imag, b.real, b.imag, bp.real, bp.imag]) + "},")
emit("}};")
emit("")

zeros = [findroot(airyai, mpf(-2.3381)), findroot(airyai, mpf(-4.0879)), findroot(airyai, mpf(-5.5206))]
emit(f"inline constexpr std::array<double, 3> kAiZeros{{{', '.join(num(z) for z in zeros)}}};")
a_n100 = findroot(airyai, mpf(-(3 * pi * (4 * 100 - 1) / 8) ** (mpf(2) / 3)))
emit(f"inline constexpr double kAiZero100 = {num(a_n100)};")
argmax = findroot(lambda t: airyai(t, 1), mpf(-1.0))
emit(f"inline constexpr double kAiArgmax = {num(argmax)};")
a1 = zeros[0]
integral = quad(lambda t: airyai(t) ** 2, [a1, 0, 5, inf])
emit(f"inline constexpr double kAiSquaredFromFirstZero = {num(integral)};")
emit(f"inline constexpr double kAiPrimeAtFirstZero = {num(airyai(a1, 1))};")
emit("")

emit("struct RootRow { double field, zeta_re, zeta_im, energy_re, energy_im; };")
pull_fields = ["0.001", "0.01", "0.05", "0.06", "0.08", "0.1", "0.3", "1", "3", "10"]
emit(f"inline constexpr std::array<RootRow, {len(pull_fields)}> kPullingRoots{{{{")
for fs in pull_fields:
    F = mpf(fs)
    seed = (mpf(1) / 4) * F ** (-mpf(2) / 3) * (1 + 1j * exp(-1 / (6 * F))) if F <= 0.3 else \
        4 ** (-mpf(2) / 3) * exp(2j * pi / 3) * mp.log(F)
    with mp.workdps(140):
        z = newton(lambda z: g(z, F, 1), seed)
        E = -F ** (mpf(2) / 3) * z
    emit(f"    {{{fs}, {num(z.real)}, {num(z.imag)}, {num(E.real)}, {num(E.imag)}}},")
emit("}};")
emit("")

emit("struct PushRow { double field, zeta_re, zeta_im, energy_re, energy_im, norm, abs_n0; };")
push_fields = ["0.002", "0.005", "0.01", "0.02", "0.04", "0.06", "0.1", "0.2"]
emit(f"inline constexpr std::array<PushRow, {len(push_fields)}> kPushingRoots{{{{")
for fs in push_fields:
    F = mpf(fs)
    z = newton(lambda z: g(z, F, -1), a1 + F ** (mpf(1) / 3) + 1.534j * F ** (mpf(2) / 3))
    E = -F ** (mpf(2) / 3) * z
    N = F ** (mpf(1) / 6) / sqrt(integral)
    N0 = N * airyai(z) / (airybi(z) + 1j * airyai(z))
    emit(f"    {{{fs}, {num(z.real)}, {num(z.imag)}, {num(E.real)}, {num(E.imag)}, {num(N)}, {num(abs(N0))}}},")
emit("}};")
emit("")


def tail_parts(E, F):
    z = -E * F ** (-mpf(2) / 3)
    c = F ** (mpf(1) / 3)
    A = 1 / airyai(z) - pi / c * airybi(z)
    B = pi / c * airyai(z)
    return A * A, B * B


def tail(E, F):
    a, b = tail_parts(E, F)
    return (a + b) / pi


emit("struct StationaryRow { double field, e_min, e_first_term_root, first_over_second, tail_min; };")
emit("inline constexpr std::array<StationaryRow, 3> kStationary{{")
for fs in ["0.02", "0.05", "0.1"]:
    F = mpf(fs)
    grid = [mpf(-0.5) + mpf(0.45) * k / 900 for k in range(901)]
    k = min(range(901), key=lambda k: tail(grid[k], F))
    e_min = findroot(lambda E: mp.diff(lambda e: tail(e, F), E), (grid[k - 1], grid[k + 1]), solver="anderson")
    e_root = findroot(lambda E: 1 / airyai(-E * F ** (-mpf(2) / 3)) - pi / F ** (mpf(1) / 3) * airybi(-E * F ** (-mpf(2) / 3)),
                      (grid[k - 3], grid[k + 3]), solver="anderson")
    a, b = tail_parts(e_min, F)
    emit(f"    {{{fs}, {num(e_min)}, {num(e_root)}, {num(a / b)}, {num(tail(e_min, F))}}},")
emit("}};")
emit("")
emit("}  // namespace airytrap::oracle")
print("\n".join(out))
