# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Semantics are mirrored exactly by ``_pykernels``."""
from libc.math cimport lgamma, log, log1p, exp, INFINITY


def simulate_block(const double[::1] hyp_u, const double[:, ::1] noise,
                   const double[:, ::1] flip_u, byz_u,
                   double p1, double theta, double tau,
                   double p10, double p01, Py_ssize_t n_fixed, double alpha,
                   const unsigned char[::1] decide_h1):
    cdef Py_ssize_t trials = noise.shape[0], n = noise.shape[1]
    cdef Py_ssize_t i, j, k
    cdef long e0 = 0, e1 = 0, t1 = 0
    cdef bint h1, v, u, byz
    cdef double shift
    cdef bint bernoulli = byz_u is not None
    cdef const double[:, ::1] bu
    if bernoulli:
        bu = byz_u
    with nogil:
        for i in range(trials):
            h1 = hyp_u[i] < p1
            shift = theta if h1 else 0.0
            k = 0
            for j in range(n):
                v = noise[i, j] + shift > tau
                if bernoulli:
                    byz = bu[i, j] < alpha
                else:
                    byz = j < n_fixed
                if byz:
                    if v:
                        u = flip_u[i, j] >= p01
                    else:
                        u = flip_u[i, j] < p10
                else:
                    u = v
                k += u
            if h1:
                t1 += 1
                if not decide_h1[k]:
                    e1 += 1
            elif decide_h1[k]:
                e0 += 1
    return e0, e1, trials - t1, t1


cdef inline double _xlog(double count, double p) nogil:
    if count == 0.0:
        return 0.0
    if p == 0.0:
        return -INFINITY
    return count * log(p)


cdef inline double _xlog1m(double count, double p) nogil:
    if count == 0.0:
        return 0.0
    if p == 1.0:
        return -INFINITY
    return count * log1p(-p)


def log_error_probability(Py_ssize_t n, double log_p0, double log_p1,
                          double pi10, double pi11):
    cdef Py_ssize_t k
    cdef double lgn = lgamma(n + 1.0)
    cdef double term, t0, t1, top = -INFINITY, acc = 0.0
    with nogil:
        for k in range(n + 1):
            t0 = log_p0 + _xlog(k, pi10) + _xlog1m(n - k, pi10)
            t1 = log_p1 + _xlog(k, pi11) + _xlog1m(n - k, pi11)
            term = t0 if t0 < t1 else t1
            if term == -INFINITY:
                continue
            term += lgn - lgamma(k + 1.0) - lgamma(n - k + 1.0)
            if term > top:
                acc = acc * exp(top - term) + 1.0
                top = term
            else:
                acc += exp(term - top)
    if top == -INFINITY:
        return -INFINITY
    return top + log(acc)
