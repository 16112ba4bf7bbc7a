# Compiled scalar kernels mirroring hcdetect._purekernels: FreeBSD-msun
# erf/erfc and AS 241 (PPND16) normal quantile, plus the fused two-sided
# p-value map. Algorithms and coefficients must stay in lockstep with the
# pure backend; tests assert cross-backend agreement to a few ulp.

from libc.math cimport exp, log, sqrt, fabs, NAN, INFINITY
import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef extern from *:
    """
    #include <stdint.h>
    #include <string.h>
    static inline double hc_zero_low_word(double x) {
        uint64_t u;
        memcpy(&u, &x, 8);
        u &= 0xFFFFFFFF00000000ULL;
        memcpy(&x, &u, 8);
        return x;
    }
    """
    double hc_zero_low_word(double x) nogil

cdef double ERX = 8.45062911510467529297e-01
cdef double EFX = 1.28379167095512586316e-01

cdef double pp0 = 1.28379167095512558561e-01
cdef double pp1 = -3.25042107247001499370e-01
cdef double pp2 = -2.84817495755985104766e-02
cdef double pp3 = -5.77027029648944159157e-03
cdef double pp4 = -2.37630166566501626084e-05
cdef double qq1 = 3.97917223959155352819e-01
cdef double qq2 = 6.50222499887672944485e-02
cdef double qq3 = 5.08130628187576562776e-03
cdef double qq4 = 1.32494738004321644526e-04
cdef double qq5 = -3.96022827877536812320e-06

cdef double pa0 = -2.36211856075265944077e-03
cdef double pa1 = 4.14856118683748331666e-01
cdef double pa2 = -3.72207876035701323847e-01
cdef double pa3 = 3.18346619901161753674e-01
cdef double pa4 = -1.10894694282396677476e-01
cdef double pa5 = 3.54783043256182359371e-02
cdef double pa6 = -2.16637559486879084300e-03
cdef double qa1 = 1.06420880400844228286e-01
cdef double qa2 = 5.40397917702171048937e-01
cdef double qa3 = 7.18286544141962662868e-02
cdef double qa4 = 1.26171219808761642112e-01
cdef double qa5 = 1.36370839120290507362e-02
cdef double qa6 = 1.19844998467991074170e-02

cdef double ra0 = -9.86494403484714822705e-03
cdef double ra1 = -6.93858572707181764372e-01
cdef double ra2 = -1.05586262253232909814e01
cdef double ra3 = -6.23753324503260060396e01
cdef double ra4 = -1.62396669462573470355e02
cdef double ra5 = -1.84605092906711035994e02
cdef double ra6 = -8.12874355063065934246e01
cdef double ra7 = -9.81432934416914548592e00
cdef double sa1 = 1.96512716674392571292e01
cdef double sa2 = 1.37657754143519042600e02
cdef double sa3 = 4.34565877475229228821e02
cdef double sa4 = 6.45387271733267880336e02
cdef double sa5 = 4.29008140027567833386e02
cdef double sa6 = 1.08635005541779435134e02
cdef double sa7 = 6.57024977031928170135e00
cdef double sa8 = -6.04244152148580987438e-02

cdef double rb0 = -9.86494292470009928597e-03
cdef double rb1 = -7.99283237680523006574e-01
cdef double rb2 = -1.77579549177547519889e01
cdef double rb3 = -1.60636384855821916062e02
cdef double rb4 = -6.37566443368389627722e02
cdef double rb5 = -1.02509513161107724954e03
cdef double rb6 = -4.83519191608651397019e02
cdef double sb1 = 3.03380607434824582924e01
cdef double sb2 = 3.25792512996573918826e02
cdef double sb3 = 1.53672958608443695994e03
cdef double sb4 = 3.19985821950859553908e03
cdef double sb5 = 2.55305040643316442583e03
cdef double sb6 = 4.74528541206955367215e02
cdef double sb7 = -2.24409524465858183362e01


cdef inline double _erf_scalar(double x) nogil:
    cdef double ax, z, r, s, P, Q, R, S, y, sign
    if x != x:
        return NAN
    ax = fabs(x)
    sign = 1.0 if x >= 0.0 else -1.0
    if ax >= 6.0:
        return sign
    if ax < 3.7252902984e-09:  # 2**-28
        return x + EFX * x
    if ax < 0.84375:
        z = x * x
        r = pp0 + z * (pp1 + z * (pp2 + z * (pp3 + z * pp4)))
        s = 1.0 + z * (qq1 + z * (qq2 + z * (qq3 + z * (qq4 + z * qq5))))
        y = r / s
        return x + x * y
    if ax < 1.25:
        s = ax - 1.0
        P = pa0 + s * (pa1 + s * (pa2 + s * (pa3 + s * (pa4 + s * (pa5 + s * pa6)))))
        Q = 1.0 + s * (qa1 + s * (qa2 + s * (qa3 + s * (qa4 + s * (qa5 + s * qa6)))))
        return sign * (ERX + P / Q)
    s = 1.0 / (ax * ax)
    if ax < 2.857142857142857:  # 1/0.35
        R = ra0 + s * (ra1 + s * (ra2 + s * (ra3 + s * (ra4 + s * (ra5 + s * (ra6 + s * ra7))))))
        S = 1.0 + s * (sa1 + s * (sa2 + s * (sa3 + s * (sa4 + s * (sa5 + s * (sa6 + s * (sa7 + s * sa8)))))))
    else:
        R = rb0 + s * (rb1 + s * (rb2 + s * (rb3 + s * (rb4 + s * (rb5 + s * rb6)))))
        S = 1.0 + s * (sb1 + s * (sb2 + s * (sb3 + s * (sb4 + s * (sb5 + s * (sb6 + s * sb7))))))
    z = hc_zero_low_word(ax)
    r = exp(-z * z - 0.5625) * exp((z - ax) * (z + ax) + R / S)
    return sign * (1.0 - r / ax)


cdef inline double _erfc_scalar(double x) nogil:
    cdef double ax, z, r, s, P, Q, R, S, y
    if x != x:
        return NAN
    ax = fabs(x)
    if ax >= 28.0:
        return 0.0 if x > 0.0 else 2.0
    if ax < 1.3877787807814457e-17:  # 2**-56
        return 1.0 - x
    if ax < 0.84375:
        z = x * x
        r = pp0 + z * (pp1 + z * (pp2 + z * (pp3 + z * pp4)))
        s = 1.0 + z * (qq1 + z * (qq2 + z * (qq3 + z * (qq4 + z * qq5))))
        y = r / s
        if ax < 0.25:
            return 1.0 - (x + x * y)
        r = x * y
        r += x - 0.5
        return 0.5 - r
    if ax < 1.25:
        s = ax - 1.0
        P = pa0 + s * (pa1 + s * (pa2 + s * (pa3 + s * (pa4 + s * (pa5 + s * pa6)))))
        Q = 1.0 + s * (qa1 + s * (qa2 + s * (qa3 + s * (qa4 + s * (qa5 + s * qa6)))))
        if x >= 0.0:
            return 1.0 - ERX - P / Q
        return 1.0 + (ERX + P / Q)
    if x < -6.0:
        return 2.0
    s = 1.0 / (ax * ax)
    if ax < 2.857142857142857:
        R = ra0 + s * (ra1 + s * (ra2 + s * (ra3 + s * (ra4 + s * (ra5 + s * (ra6 + s * ra7))))))
        S = 1.0 + s * (sa1 + s * (sa2 + s * (sa3 + s * (sa4 + s * (sa5 + s * (sa6 + s * (sa7 + s * sa8)))))))
    else:
        R = rb0 + s * (rb1 + s * (rb2 + s * (rb3 + s * (rb4 + s * (rb5 + s * rb6)))))
        S = 1.0 + s * (sb1 + s * (sb2 + s * (sb3 + s * (sb4 + s * (sb5 + s * (sb6 + s * sb7))))))
    z = hc_zero_low_word(ax)
    r = exp(-z * z - 0.5625) * exp((z - ax) * (z + ax) + R / S) / ax
    if x > 0.0:
        return r
    return 2.0 - r


cdef double nd_a0 = 3.3871328727963666080e0
cdef double nd_a1 = 1.3314166789178437745e2
cdef double nd_a2 = 1.9715909503065514427e3
cdef double nd_a3 = 1.3731693765509461125e4
cdef double nd_a4 = 4.5921953931549871457e4
cdef double nd_a5 = 6.7265770927008700853e4
cdef double nd_a6 = 3.3430575583588128105e4
cdef double nd_a7 = 2.5090809287301226727e3
cdef double nd_b1 = 4.2313330701600911252e1
cdef double nd_b2 = 6.8718700749205790830e2
cdef double nd_b3 = 5.3941960214247511077e3
cdef double nd_b4 = 2.1213794301586595867e4
cdef double nd_b5 = 3.9307895800092710610e4
cdef double nd_b6 = 2.8729085735721942674e4
cdef double nd_b7 = 5.2264952788528545610e3
cdef double nd_c0 = 1.42343711074968357734e0
cdef double nd_c1 = 4.63033784615654529590e0
cdef double nd_c2 = 5.76949722146069140550e0
cdef double nd_c3 = 3.64784832476320460504e0
cdef double nd_c4 = 1.27045825245236838258e0
cdef double nd_c5 = 2.41780725177450611770e-1
cdef double nd_c6 = 2.27238449892691845833e-2
cdef double nd_c7 = 7.74545014278341407640e-4
cdef double nd_d1 = 2.05319162663775882187e0
cdef double nd_d2 = 1.67638483018380384940e0
cdef double nd_d3 = 6.89767334985100004550e-1
cdef double nd_d4 = 1.48103976427480074590e-1
cdef double nd_d5 = 1.51986665636164571966e-2
cdef double nd_d6 = 5.47593808499534494600e-4
cdef double nd_d7 = 1.05075007164441684324e-9
cdef double nd_e0 = 6.65790464350110377720e0
cdef double nd_e1 = 5.46378491116411436990e0
cdef double nd_e2 = 1.78482653991729133580e0
cdef double nd_e3 = 2.96560571828504891230e-1
cdef double nd_e4 = 2.65321895265761230930e-2
cdef double nd_e5 = 1.24266094738807843860e-3
cdef double nd_e6 = 2.71155556874348757815e-5
cdef double nd_e7 = 2.01033439929228813265e-7
cdef double nd_f1 = 5.99832206555887937690e-1
cdef double nd_f2 = 1.36929880922735805310e-1
cdef double nd_f3 = 1.48753612908506148525e-2
cdef double nd_f4 = 7.86869131145613259100e-4
cdef double nd_f5 = 1.84631831751005468180e-5
cdef double nd_f6 = 1.42151175831644588870e-7
cdef double nd_f7 = 2.04426310338993978564e-15


cdef inline double _ndtri_scalar(double p) nogil:
    cdef double q, r, num, den, val
    if p != p:
        return NAN
    q = p - 0.5
    if fabs(q) <= 0.425:
        r = 0.180625 - q * q
        num = nd_a0 + r * (nd_a1 + r * (nd_a2 + r * (nd_a3 + r * (nd_a4 + r * (nd_a5 + r * (nd_a6 + r * nd_a7))))))
        den = 1.0 + r * (nd_b1 + r * (nd_b2 + r * (nd_b3 + r * (nd_b4 + r * (nd_b5 + r * (nd_b6 + r * nd_b7))))))
        return q * num / den
    r = p if q < 0.0 else 1.0 - p
    if r <= 0.0:
        return -INFINITY if p <= 0.0 else INFINITY
    r = sqrt(-log(r))
    if r <= 5.0:
        r -= 1.6
        num = nd_c0 + r * (nd_c1 + r * (nd_c2 + r * (nd_c3 + r * (nd_c4 + r * (nd_c5 + r * (nd_c6 + r * nd_c7))))))
        den = 1.0 + r * (nd_d1 + r * (nd_d2 + r * (nd_d3 + r * (nd_d4 + r * (nd_d5 + r * (nd_d6 + r * nd_d7))))))
    else:
        r -= 5.0
        num = nd_e0 + r * (nd_e1 + r * (nd_e2 + r * (nd_e3 + r * (nd_e4 + r * (nd_e5 + r * (nd_e6 + r * nd_e7))))))
        den = 1.0 + r * (nd_f1 + r * (nd_f2 + r * (nd_f3 + r * (nd_f4 + r * (nd_f5 + r * (nd_f6 + r * nd_f7))))))
    val = num / den
    return -val if q < 0.0 else val


cdef double P_CEIL = 0.99999
cdef double P_FLOOR = 2.0 ** -54
cdef double INV_SQRT2 = 0.7071067811865476


def erf(object x):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.ascontiguousarray(np.atleast_1d(np.asarray(x, dtype=np.float64)).ravel())
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(a)
    cdef Py_ssize_t i, n = a.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _erf_scalar(a[i])
    return out.reshape(np.shape(x)) if np.ndim(x) else float(out[0])


def erfc(object x):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.ascontiguousarray(np.atleast_1d(np.asarray(x, dtype=np.float64)).ravel())
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(a)
    cdef Py_ssize_t i, n = a.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _erfc_scalar(a[i])
    return out.reshape(np.shape(x)) if np.ndim(x) else float(out[0])


def ndtri(object p):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.ascontiguousarray(np.atleast_1d(np.asarray(p, dtype=np.float64)).ravel())
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(a)
    cdef Py_ssize_t i, n = a.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _ndtri_scalar(a[i])
    return out.reshape(np.shape(p)) if np.ndim(p) else float(out[0])


def two_sided_p(object z):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.ascontiguousarray(np.atleast_1d(np.asarray(z, dtype=np.float64)).ravel())
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(a)
    cdef Py_ssize_t i, n = a.shape[0]
    cdef double p
    with nogil:
        for i in range(n):
            p = _erfc_scalar(fabs(a[i]) * INV_SQRT2)
            if p >= 1.0:
                p = P_CEIL
            elif p < P_FLOOR:
                p = P_FLOOR
            out[i] = p
    return out.reshape(np.shape(z)) if np.ndim(z) else float(out[0])


def gaussian_tail_prob(object z):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.ascontiguousarray(np.atleast_1d(np.asarray(z, dtype=np.float64)).ravel())
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(a)
    cdef Py_ssize_t i, n = a.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _erfc_scalar(fabs(a[i]) * INV_SQRT2)
    return out.reshape(np.shape(z)) if np.ndim(z) else float(out[0])
