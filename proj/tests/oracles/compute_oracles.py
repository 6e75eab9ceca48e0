"""Brute-force reference values frozen in test_oracles.cpp.

C_prime: adaptive quadrature of (ln^2(1/|cos g|) + pi^2/4)^2 over [0, 2pi), split at the
log singularities.

Disk-pair slice integrals, disk centre c = 2i, radius 1, together with its mirror (centre -2i):
  T(z)  = -1/(2 pi) int 1/(zeta - z) dA
  Pi(z) = -1/pi    p.v. int 1/(zeta - z)^2 dA
The disk containing z is done in polar coordinates about z (1-D in angle, the p.v. of the
second integral reduces to the log of the ray length), the mirror disk by 2-D quadrature.
"""
import mpmath as mp

mp.mp.dps = 30

def c_prime():
    f = lambda g: (mp.log(1 / abs(mp.cos(g))) ** 2 + mp.pi ** 2 / 4) ** 2
    pts = [0, mp.pi / 2, 3 * mp.pi / 2, 2 * mp.pi]
    return mp.sqrt(mp.quad(f, pts))

def ray(z, c, R, th):
    # distance from z (inside the disk) to the circle along direction th
    d = mp.expj(th)
    w = z - c
    b = (mp.conj(d) * w).real
    return -b + mp.sqrt(b * b - (abs(w) ** 2 - R * R))

def disk_area_integral(z, c, R, power):
    # int_{|zeta-c|<R} (zeta - z)^(-power) dA for z outside, polar about c
    f = lambda r, t: r / (c + r * mp.expj(t) - z) ** power
    return mp.quad(f, [0, R], [0, 2 * mp.pi])

def slice_values(z, c=mp.mpc(0, 2), R=1):
    mirror = mp.conj(c)
    inner_T = mp.quad(lambda t: ray(z, c, R, t) * mp.expj(-t), [0, 2 * mp.pi])
    inner_Pi = mp.quad(lambda t: mp.log(ray(z, c, R, t)) * mp.expj(-2 * t), [0, 2 * mp.pi])
    T = -(inner_T + disk_area_integral(z, mirror, R, 1)) / (2 * mp.pi)
    Pi = -(inner_Pi + disk_area_integral(z, mirror, R, 2)) / mp.pi
    return T, Pi

if __name__ == "__main__":
    print("C_prime", mp.nstr(c_prime(), 17))
    for z in [mp.mpc(0.3, 2.2), mp.mpc(-0.5, 1.6), mp.mpc(0.1, 2.7)]:
        T, Pi = slice_values(z)
        print(mp.nstr(z, 4), "T", mp.nstr(T.real, 17), mp.nstr(T.imag, 17), "Pi", mp.nstr(Pi.real, 17), mp.nstr(Pi.imag, 17))
