//! Independent eigenvalue oracle for the Newtonian `-1/r` problem.

/// Radial `-1/r` problem `u'' = -2 (E + 1/r) u` with `u(0) = 0`, integrated
/// by RK4 out to `r_max`; the sign of `u(r_max)` flips across an eigenvalue.
pub fn shoot(e: f64) -> f64 {
    let h = 1e-3;
    let r_max = 25.0;
    let mut r = h;
    // u = r - r^2 + ... near the origin.
    let (mut u, mut du) = (h - h * h, 1.0 - 2.0 * h);
    let acc = |r: f64, u: f64| -2.0 * (e + 1.0 / r) * u;
    while r < r_max {
        let k1 = (du, acc(r, u));
        let k2 = (du + 0.5 * h * k1.1, acc(r + 0.5 * h, u + 0.5 * h * k1.0));
        let k3 = (du + 0.5 * h * k2.1, acc(r + 0.5 * h, u + 0.5 * h * k2.0));
        let k4 = (du + h * k3.1, acc(r + h, u + h * k3.0));
        u += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
        du += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        r += h;
    }
    u
}

/// Ground-state energy of the natural-unit `-1/r` problem by bisection on
/// the sign of the shot.
pub fn shooting_ground_state() -> f64 {
    let (mut lo, mut hi) = (-0.8, -0.3);
    let s_lo = shoot(lo).signum();
    assert_ne!(s_lo, shoot(hi).signum());
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if shoot(mid).signum() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
