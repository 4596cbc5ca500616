# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled integration kernel.

Mirror of lvstrat._kernel_py (Dormand-Prince 5(4), Hermite dense output,
extinction events, boundary clamping). Keep the two in sync.
"""
from libc.math cimport fabs, fmax, fmin, isfinite, isnan, pow as cpow, sqrt, NAN

import numpy as np

BACKEND = "cython"

FIELD_STRATEGIC = 0
FIELD_CLASSIC = 1

TERM_HORIZON = 0
TERM_EXTINCT_U = 1
TERM_EXTINCT_V = 2
TERM_FAILURE = 3

DEF A21 = 0.2
DEF A31 = 3.0 / 40.0
DEF A32 = 9.0 / 40.0
DEF A41 = 44.0 / 45.0
DEF A42 = -56.0 / 15.0
DEF A43 = 32.0 / 9.0
DEF A51 = 19372.0 / 6561.0
DEF A52 = -25360.0 / 2187.0
DEF A53 = 64448.0 / 6561.0
DEF A54 = -212.0 / 729.0
DEF A61 = 9017.0 / 3168.0
DEF A62 = -355.0 / 33.0
DEF A63 = 46732.0 / 5247.0
DEF A64 = 49.0 / 176.0
DEF A65 = -5103.0 / 18656.0
DEF B1 = 35.0 / 384.0
DEF B3 = 500.0 / 1113.0
DEF B4 = 125.0 / 192.0
DEF B5 = -2187.0 / 6784.0
DEF B6 = 11.0 / 84.0
DEF E1 = 71.0 / 57600.0
DEF E3 = -71.0 / 16695.0
DEF E4 = 71.0 / 1920.0
DEF E5 = -17253.0 / 339200.0
DEF E6 = 22.0 / 525.0
DEF E7 = -1.0 / 40.0

DEF MAX_STEPS = 5000000


cdef inline void _field(int fid, double q0, double q1, double q2, double q3,
                        double u, double v, bint v_absorbed,
                        double* du, double* dv) noexcept nogil:
    cdef double s
    if fid == 0:  # strategic
        s = 1.0 - u - v
        du[0] = u * s - q0 * q2 * u
        dv[0] = 0.0 if v_absorbed else q1 * v * s - q0 * u
    else:
        du[0] = u * (q0 - q1 * v)
        dv[0] = v * (-q3 + q2 * u)


cdef inline double _hermite(double theta, double h, double y0, double y1,
                            double f0, double f1) noexcept nogil:
    cdef double t2 = theta * theta
    cdef double t3 = t2 * theta
    return ((2.0 * t3 - 3.0 * t2 + 1.0) * y0
            + (t3 - 2.0 * t2 + theta) * h * f0
            + (-2.0 * t3 + 3.0 * t2) * y1
            + (t3 - t2) * h * f1)


cdef double _cross_theta(double level, double h, double y0, double y1,
                         double f0, double f1, double lo, double hi) noexcept nogil:
    cdef double flo = _hermite(lo, h, y0, y1, f0, f1) - level
    cdef double fhi = _hermite(hi, h, y0, y1, f0, f1) - level
    cdef double mid, fm
    cdef int i
    if flo * fhi > 0.0:
        return hi
    for i in range(90):
        mid = 0.5 * (lo + hi)
        fm = _hermite(mid, h, y0, y1, f0, f1) - level
        if flo * fm <= 0.0:
            hi = mid
        else:
            lo = mid
            flo = fm
        if hi - lo < 1e-16:
            break
    return 0.5 * (lo + hi)


def integrate_kernel(int field_id, double q0, double q1, double q2, double q3,
                     double u0, double v0, double t_end, double rel_tol,
                     double abs_tol, double max_step, double record_interval,
                     double extinction_eps, bint stop_at_extinction,
                     bint check_events):
    """See lvstrat._kernel_py.integrate_kernel."""
    cdef bint clamp = field_id == FIELD_STRATEGIC
    cdef double btol = fmax(1e-9, 10.0 * abs_tol)

    cdef list ts = [0.0]
    cdef list us = [u0]
    cdef list vs = [v0]

    cdef double ext_u_t = NAN
    cdef double ext_v_t = NAN
    cdef bint v_absorbed = clamp and v0 <= 0.0
    cdef int term = TERM_HORIZON

    if check_events:
        if u0 <= extinction_eps:
            ext_u_t = 0.0
            if stop_at_extinction:
                return (np.array(ts), np.array(us), np.array(vs),
                        TERM_EXTINCT_U, 0.0, ext_u_t, ext_v_t)
        if v0 <= extinction_eps:
            ext_v_t = 0.0
            if stop_at_extinction:
                return (np.array(ts), np.array(us), np.array(vs),
                        TERM_EXTINCT_V, 0.0, ext_u_t, ext_v_t)

    cdef double t = 0.0
    cdef double u = u0
    cdef double v = v0
    cdef double fu = 0.0, fv = 0.0
    _field(field_id, q0, q1, q2, q3, u, v, v_absorbed, &fu, &fv)
    cdef double h = fmin(max_step, 0.01 * t_end)
    cdef double next_rec = record_interval

    cdef long steps = 0
    cdef double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v, k5u, k5v, k6u, k6v, k7u, k7v
    cdef double yu, yv, un, vn, eu, ev, su, sv, err
    cdef double t_new, accept_t, accept_u, accept_v
    cdef double theta, theta_u, theta_v, theta_e, t_star, theta0
    cdef double eu_s, ev_s, rsu, rsv
    cdef bint out_v_zero, out_other, truncated

    while t < t_end:
        steps += 1
        if steps > MAX_STEPS or h < 1e-13 * fmax(1.0, t):
            term = TERM_FAILURE
            t_end = t
            break
        if t + h > t_end:
            h = t_end - t

        k1u = fu
        k1v = fv
        yu = u + h * A21 * k1u
        yv = v + h * A21 * k1v
        _field(field_id, q0, q1, q2, q3, yu, yv, v_absorbed, &k2u, &k2v)
        yu = u + h * (A31 * k1u + A32 * k2u)
        yv = v + h * (A31 * k1v + A32 * k2v)
        _field(field_id, q0, q1, q2, q3, yu, yv, v_absorbed, &k3u, &k3v)
        yu = u + h * (A41 * k1u + A42 * k2u + A43 * k3u)
        yv = v + h * (A41 * k1v + A42 * k2v + A43 * k3v)
        _field(field_id, q0, q1, q2, q3, yu, yv, v_absorbed, &k4u, &k4v)
        yu = u + h * (A51 * k1u + A52 * k2u + A53 * k3u + A54 * k4u)
        yv = v + h * (A51 * k1v + A52 * k2v + A53 * k3v + A54 * k4v)
        _field(field_id, q0, q1, q2, q3, yu, yv, v_absorbed, &k5u, &k5v)
        yu = u + h * (A61 * k1u + A62 * k2u + A63 * k3u + A64 * k4u + A65 * k5u)
        yv = v + h * (A61 * k1v + A62 * k2v + A63 * k3v + A64 * k4v + A65 * k5v)
        _field(field_id, q0, q1, q2, q3, yu, yv, v_absorbed, &k6u, &k6v)
        un = u + h * (B1 * k1u + B3 * k3u + B4 * k4u + B5 * k5u + B6 * k6u)
        vn = v + h * (B1 * k1v + B3 * k3v + B4 * k4v + B5 * k5v + B6 * k6v)
        _field(field_id, q0, q1, q2, q3, un, vn, v_absorbed, &k7u, &k7v)

        if not (isfinite(un) and isfinite(vn)):
            term = TERM_FAILURE
            t_end = t
            break

        eu = h * (E1 * k1u + E3 * k3u + E4 * k4u + E5 * k5u + E6 * k6u + E7 * k7u)
        ev = h * (E1 * k1v + E3 * k3v + E4 * k4v + E5 * k5v + E6 * k6v + E7 * k7v)
        su = abs_tol + rel_tol * fmax(fabs(u), fabs(un))
        sv = abs_tol + rel_tol * fmax(fabs(v), fabs(vn))
        err = sqrt(0.5 * ((eu / su) * (eu / su) + (ev / sv) * (ev / sv)))

        if err > 1.0:
            h *= fmax(0.2, 0.9 * cpow(err, -0.2))
            continue

        out_v_zero = False
        if clamp:
            out_v_zero = vn < -btol and not v_absorbed
            out_other = un < -btol or un > 1.0 + btol or vn > 1.0 + btol
            if out_other:
                h *= 0.5
                continue

        t_new = t + h
        accept_t = t_new
        accept_u = un
        accept_v = vn
        truncated = False

        if check_events:
            theta_u = 2.0
            theta_v = 2.0
            if isnan(ext_u_t) and u > extinction_eps >= un:
                theta_u = _cross_theta(extinction_eps, h, u, un, k1u, k7u, 0.0, 1.0)
            if isnan(ext_v_t) and v > extinction_eps >= vn:
                theta_v = _cross_theta(extinction_eps, h, v, vn, k1v, k7v, 0.0, 1.0)
            theta_e = fmin(theta_u, theta_v)
            if theta_e <= 1.0:
                t_star = t + theta_e * h
                if theta_u <= theta_v:
                    ext_u_t = t_star
                    term = TERM_EXTINCT_U
                else:
                    ext_v_t = t_star
                    term = TERM_EXTINCT_V
                if stop_at_extinction:
                    eu_s = _hermite(theta_e, h, u, un, k1u, k7u)
                    ev_s = _hermite(theta_e, h, v, vn, k1v, k7v)
                    while next_rec <= t_star + 1e-15 * t_end:
                        theta = (next_rec - t) / h
                        rsu = fmin(1.0, fmax(0.0, _hermite(theta, h, u, un, k1u, k7u)))
                        rsv = fmin(1.0, fmax(0.0, _hermite(theta, h, v, vn, k1v, k7v)))
                        ts.append(next_rec)
                        us.append(rsu)
                        vs.append(rsv)
                        next_rec += record_interval
                    u = eu_s
                    v = ev_s
                    if t_star - <double>ts[len(ts) - 1] > 1e-12:
                        ts.append(t_star)
                        us.append(fmin(1.0, fmax(0.0, u)))
                        vs.append(fmin(1.0, fmax(0.0, v)))
                    return (np.array(ts), np.array(us), np.array(vs),
                            term, t_star, ext_u_t, ext_v_t)
                term = TERM_HORIZON
                if theta_u <= theta_v and isnan(ext_v_t) and v > extinction_eps >= vn:
                    ext_v_t = t + _cross_theta(extinction_eps, h, v, vn, k1v, k7v, theta_e, 1.0) * h
                elif theta_v < theta_u and isnan(ext_u_t) and u > extinction_eps >= un:
                    ext_u_t = t + _cross_theta(extinction_eps, h, u, un, k1u, k7u, theta_e, 1.0) * h

        if out_v_zero:
            theta0 = _cross_theta(0.0, h, v, vn, k1v, k7v, 0.0, 1.0)
            accept_t = t + theta0 * h
            accept_u = _hermite(theta0, h, u, un, k1u, k7u)
            accept_v = 0.0
            v_absorbed = True
            truncated = True

        while next_rec <= accept_t + 1e-15 * t_end:
            theta = (next_rec - t) / h
            rsu = _hermite(theta, h, u, un, k1u, k7u)
            rsv = _hermite(theta, h, v, vn, k1v, k7v)
            if clamp:
                rsu = fmin(1.0, fmax(0.0, rsu))
                rsv = fmin(1.0, fmax(0.0, rsv))
            ts.append(next_rec)
            us.append(rsu)
            vs.append(rsv)
            next_rec += record_interval

        t = accept_t
        u = accept_u
        v = accept_v
        if clamp:
            u = fmin(1.0, fmax(0.0, u))
            v = fmin(1.0, fmax(0.0, v))
        if truncated:
            _field(field_id, q0, q1, q2, q3, u, v, v_absorbed, &fu, &fv)
        else:
            fu = k7u
            fv = k7v

        h *= fmin(5.0, fmax(0.2, 0.9 * cpow(fmax(err, 1e-10), -0.2)))
        h = fmin(h, max_step)

    if t_end - <double>ts[len(ts) - 1] > 1e-12 or term == TERM_FAILURE:
        if t_end - <double>ts[len(ts) - 1] > 1e-12:
            ts.append(t_end)
            us.append(fmin(1.0, fmax(0.0, u)) if clamp else u)
            vs.append(fmin(1.0, fmax(0.0, v)) if clamp else v)
    return (np.array(ts), np.array(us), np.array(vs), term,
            t_end, ext_u_t, ext_v_t)
