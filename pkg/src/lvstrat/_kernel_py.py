"""Pure-Python integration kernel.

Embedded Dormand-Prince 5(4) pair with cubic-Hermite dense output,
extinction-event location, and boundary clamping for the density fields.
``lvstrat._kernel_cy`` is the compiled twin; both expose the same
``integrate_kernel`` signature and semantics, and ``lvstrat.kernels``
picks one at import time.
"""
from __future__ import annotations

import math

import numpy as np

BACKEND = "python"

FIELD_STRATEGIC = 0
FIELD_CLASSIC = 1

TERM_HORIZON = 0
TERM_EXTINCT_U = 1
TERM_EXTINCT_V = 2
TERM_FAILURE = 3

# Dormand-Prince 5(4) tableau
_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
# b - b_hat, for the embedded error estimate
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71.0 / 57600.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)

_MAX_STEPS = 5_000_000


def _field(fid, q0, q1, q2, q3, u, v, v_absorbed):
    if fid == FIELD_STRATEGIC:
        # q0=a, q1=p, q2=c1
        s = 1.0 - u - v
        du = u * s - q0 * q2 * u
        dv = 0.0 if v_absorbed else q1 * v * s - q0 * u
        return du, dv
    # q0=a_birth, q1=b, q2=delta, q3=n
    return u * (q0 - q1 * v), v * (-q3 + q2 * u)


def _hermite(theta, h, y0, y1, f0, f1):
    t2 = theta * theta
    t3 = t2 * theta
    h00 = 2.0 * t3 - 3.0 * t2 + 1.0
    h10 = t3 - 2.0 * t2 + theta
    h01 = -2.0 * t3 + 3.0 * t2
    h11 = t3 - t2
    return h00 * y0 + h10 * h * f0 + h01 * y1 + h11 * h * f1


def _cross_theta(level, h, y0, y1, f0, f1, lo, hi):
    """Bisect for the theta in (lo, hi] where the Hermite interpolant hits level."""
    flo = _hermite(lo, h, y0, y1, f0, f1) - level
    fhi = _hermite(hi, h, y0, y1, f0, f1) - level
    if flo * fhi > 0.0:
        return hi
    for _ in range(90):
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


def integrate_kernel(
    field_id,
    q0,
    q1,
    q2,
    q3,
    u0,
    v0,
    t_end,
    rel_tol,
    abs_tol,
    max_step,
    record_interval,
    extinction_eps,
    stop_at_extinction,
    check_events,
):
    """Advance the 2-component field from (u0, v0) over [0, t_end].

    Returns (ts, us, vs, term_code, term_time, ext_u_time, ext_v_time)
    where the extinction times are NaN if the threshold was never crossed.
    """
    clamp = field_id == FIELD_STRATEGIC
    btol = max(1e-9, 10.0 * abs_tol)

    ts = [0.0]
    us = [u0]
    vs = [v0]

    ext_u_t = math.nan
    ext_v_t = math.nan
    v_absorbed = clamp and v0 <= 0.0

    # densities already at/below threshold at t=0
    if check_events:
        if u0 <= extinction_eps:
            ext_u_t = 0.0
            if stop_at_extinction:
                return (
                    np.array(ts),
                    np.array(us),
                    np.array(vs),
                    TERM_EXTINCT_U,
                    0.0,
                    ext_u_t,
                    ext_v_t,
                )
        if v0 <= extinction_eps:
            ext_v_t = 0.0
            if stop_at_extinction:
                return (
                    np.array(ts),
                    np.array(us),
                    np.array(vs),
                    TERM_EXTINCT_V,
                    0.0,
                    ext_u_t,
                    ext_v_t,
                )

    t = 0.0
    u = u0
    v = v0
    fu, fv = _field(field_id, q0, q1, q2, q3, u, v, v_absorbed)
    h = min(max_step, 0.01 * t_end)
    next_rec = record_interval

    def emit_upto(t_hi, h_step, uo, vo, un, vn, fuo, fvo, fun, fvn, t_lo):
        nonlocal next_rec
        while next_rec <= t_hi + 1e-15 * t_end:
            theta = (next_rec - t_lo) / h_step
            su = _hermite(theta, h_step, uo, un, fuo, fun)
            sv = _hermite(theta, h_step, vo, vn, fvo, fvn)
            if clamp:
                su = min(1.0, max(0.0, su))
                sv = min(1.0, max(0.0, sv))
            ts.append(next_rec)
            us.append(su)
            vs.append(sv)
            next_rec += record_interval

    def finish(term, term_t):
        if term_t - ts[-1] > 1e-12:
            ts.append(term_t)
            us.append(min(1.0, max(0.0, u)) if clamp else u)
            vs.append(min(1.0, max(0.0, v)) if clamp else v)
        return (
            np.array(ts),
            np.array(us),
            np.array(vs),
            term,
            term_t,
            ext_u_t,
            ext_v_t,
        )

    steps = 0
    while t < t_end:
        steps += 1
        if steps > _MAX_STEPS or h < 1e-13 * max(1.0, t):
            return finish(TERM_FAILURE, t)
        if t + h > t_end:
            h = t_end - t

        k1u, k1v = fu, fv
        yu = u + h * _A21 * k1u
        yv = v + h * _A21 * k1v
        k2u, k2v = _field(field_id, q0, q1, q2, q3, yu, yv, v_absorbed)
        yu = u + h * (_A31 * k1u + _A32 * k2u)
        yv = v + h * (_A31 * k1v + _A32 * k2v)
        k3u, k3v = _field(field_id, q0, q1, q2, q3, yu, yv, v_absorbed)
        yu = u + h * (_A41 * k1u + _A42 * k2u + _A43 * k3u)
        yv = v + h * (_A41 * k1v + _A42 * k2v + _A43 * k3v)
        k4u, k4v = _field(field_id, q0, q1, q2, q3, yu, yv, v_absorbed)
        yu = u + h * (_A51 * k1u + _A52 * k2u + _A53 * k3u + _A54 * k4u)
        yv = v + h * (_A51 * k1v + _A52 * k2v + _A53 * k3v + _A54 * k4v)
        k5u, k5v = _field(field_id, q0, q1, q2, q3, yu, yv, v_absorbed)
        yu = u + h * (_A61 * k1u + _A62 * k2u + _A63 * k3u + _A64 * k4u + _A65 * k5u)
        yv = v + h * (_A61 * k1v + _A62 * k2v + _A63 * k3v + _A64 * k4v + _A65 * k5v)
        k6u, k6v = _field(field_id, q0, q1, q2, q3, yu, yv, v_absorbed)
        un = u + h * (_B1 * k1u + _B3 * k3u + _B4 * k4u + _B5 * k5u + _B6 * k6u)
        vn = v + h * (_B1 * k1v + _B3 * k3v + _B4 * k4v + _B5 * k5v + _B6 * k6v)
        k7u, k7v = _field(field_id, q0, q1, q2, q3, un, vn, v_absorbed)

        if not (math.isfinite(un) and math.isfinite(vn)):
            return finish(TERM_FAILURE, t)

        eu = h * (_E1 * k1u + _E3 * k3u + _E4 * k4u + _E5 * k5u + _E6 * k6u + _E7 * k7u)
        ev = h * (_E1 * k1v + _E3 * k3v + _E4 * k4v + _E5 * k5v + _E6 * k6v + _E7 * k7v)
        su = abs_tol + rel_tol * max(abs(u), abs(un))
        sv = abs_tol + rel_tol * max(abs(v), abs(vn))
        err = math.sqrt(0.5 * ((eu / su) ** 2 + (ev / sv) ** 2))

        if err > 1.0:
            h *= max(0.2, 0.9 * err ** -0.2)
            continue

        # domain guard: overshoot beyond tolerance rejects the step
        if clamp:
            out_v_zero = vn < -btol and not v_absorbed
            out_other = un < -btol or un > 1.0 + btol or vn > 1.0 + btol
            if out_other:
                h *= 0.5
                continue
        else:
            out_v_zero = False

        t_new = t + h
        accept_t = t_new
        accept_u, accept_v = un, vn
        truncated = False

        if check_events:
            # earliest unhandled extinction-threshold crossing in this step
            theta_u = 2.0
            theta_v = 2.0
            if math.isnan(ext_u_t) and u > extinction_eps >= un:
                theta_u = _cross_theta(extinction_eps, h, u, un, k1u, k7u, 0.0, 1.0)
            if math.isnan(ext_v_t) and v > extinction_eps >= vn:
                theta_v = _cross_theta(extinction_eps, h, v, vn, k1v, k7v, 0.0, 1.0)
            theta_e = min(theta_u, theta_v)
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
                    emit_upto(t_star, h, u, v, un, vn, k1u, k1v, k7u, k7v, t)
                    u, v = eu_s, ev_s
                    return finish(term, t_star)
                # second threshold may be crossed in the same step
                if theta_u <= theta_v and math.isnan(ext_v_t) and v > extinction_eps >= vn:
                    ext_v_t = t + _cross_theta(extinction_eps, h, v, vn, k1v, k7v, theta_e, 1.0) * h
                elif theta_v < theta_u and math.isnan(ext_u_t) and u > extinction_eps >= un:
                    ext_u_t = t + _cross_theta(extinction_eps, h, u, un, k1u, k7u, theta_e, 1.0) * h

        if out_v_zero:
            # v reaches the absorbing boundary inside this step
            theta0 = _cross_theta(0.0, h, v, vn, k1v, k7v, 0.0, 1.0)
            accept_t = t + theta0 * h
            accept_u = _hermite(theta0, h, u, un, k1u, k7u)
            accept_v = 0.0
            v_absorbed = True
            truncated = True
            emit_upto(accept_t, h, u, v, un, vn, k1u, k1v, k7u, k7v, t)
        else:
            emit_upto(t_new, h, u, v, un, vn, k1u, k1v, k7u, k7v, t)

        t = accept_t
        u, v = accept_u, accept_v
        if clamp:
            u = min(1.0, max(0.0, u))
            v = min(1.0, max(0.0, v))
        if truncated:
            fu, fv = _field(field_id, q0, q1, q2, q3, u, v, v_absorbed)
        else:
            fu, fv = k7u, k7v

        h *= min(5.0, max(0.2, 0.9 * max(err, 1e-10) ** -0.2))
        h = min(h, max_step)

    return finish(TERM_HORIZON, t_end)
