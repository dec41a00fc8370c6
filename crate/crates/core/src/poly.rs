//! Real-root helpers for the low-degree polynomials used by the fixed-point,
//! preimage and partition solvers.
//!
//! Everything here is bracketing-based: the derivative (degree <= 2, closed
//! form) splits the line into monotone pieces, each sign change is bisected
//! and then Newton-polished. Coefficients are ascending: `c[k]` multiplies
//! `x^k`.

use alloc::vec::Vec;
// required for the float math methods without std; test and dev builds
// link std, whose inherent methods shadow the trait and make this "unused"
#[allow(unused_imports)]
use num_traits::Float;

pub(crate) fn eval(c: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &ck in c.iter().rev() {
        acc = acc * x + ck;
    }
    acc
}

pub(crate) fn deriv(c: &[f64]) -> Vec<f64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &ck)| k as f64 * ck)
        .collect()
}

/// Drop leading coefficients that are negligible relative to the largest one.
pub(crate) fn trim(c: &[f64]) -> &[f64] {
    let scale = c.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    if scale == 0.0 {
        return &c[..0];
    }
    let mut len = c.len();
    while len > 1 && c[len - 1].abs() <= 1e-11 * scale {
        len -= 1;
    }
    &c[..len]
}

/// Synthetic division by `(x - r)`; returns (quotient, remainder).
pub(crate) fn deflate(c: &[f64], r: f64) -> (Vec<f64>, f64) {
    let n = c.len();
    if n <= 1 {
        return (Vec::new(), c.first().copied().unwrap_or(0.0));
    }
    let mut q = alloc::vec![0.0; n - 1];
    let mut carry = c[n - 1];
    for k in (0..n - 1).rev() {
        q[k] = carry;
        carry = c[k] + carry * r;
    }
    (q, carry)
}

fn bisect(c: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = eval(c, lo);
    if flo == 0.0 {
        return lo;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = eval(c, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn newton_polish(c: &[f64], d: &[f64], mut x: f64) -> f64 {
    for _ in 0..4 {
        let fx = eval(c, x);
        let dx = eval(d, x);
        if dx == 0.0 {
            break;
        }
        let step = fx / dx;
        if !step.is_finite() {
            break;
        }
        x -= step;
    }
    x
}

/// All real roots of a polynomial of degree <= 3 (after trimming), ascending.
pub(crate) fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let c = trim(coeffs);
    let mut roots: Vec<f64> = Vec::new();
    match c.len() {
        0 | 1 => {}
        2 => roots.push(-c[0] / c[1]),
        3 => {
            let (a2, a1, a0) = (c[2], c[1], c[0]);
            let disc = a1 * a1 - 4.0 * a2 * a0;
            if disc >= 0.0 {
                let sq = disc.sqrt();
                // numerically stable pairing
                let q = -0.5 * (a1 + a1.signum() * sq);
                let (r1, r2) = if q == 0.0 {
                    (0.0, 0.0)
                } else {
                    (q / a2, a0 / q)
                };
                roots.push(r1);
                if disc > 0.0 {
                    roots.push(r2);
                }
            }
        }
        _ => {
            // cubic: split into monotone pieces at the derivative roots
            let d = deriv(c);
            let lead = c[c.len() - 1];
            let bound = 1.0
                + c[..c.len() - 1]
                    .iter()
                    .fold(0.0f64, |m, &v| m.max((v / lead).abs()));
            let mut breaks: Vec<f64> = alloc::vec![-bound];
            for r in real_roots(&d) {
                if r > -bound && r < bound {
                    breaks.push(r);
                }
            }
            breaks.push(bound);
            breaks.sort_by(|p, q| p.partial_cmp(q).unwrap());
            let scale = c.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
            for w in breaks.windows(2) {
                let (lo, hi) = (w[0], w[1]);
                let (flo, fhi) = (eval(c, lo), eval(c, hi));
                if flo == 0.0 {
                    roots.push(lo);
                } else if flo * fhi < 0.0 {
                    let r = bisect(c, lo, hi);
                    roots.push(newton_polish(c, &d, r));
                } else if fhi.abs() <= 1e-13 * scale && hi < bound {
                    // double root sitting exactly at a derivative root
                    roots.push(hi);
                }
            }
        }
    }
    roots.sort_by(|p, q| p.partial_cmp(q).unwrap());
    roots.dedup_by(|p, q| (*p - *q).abs() <= 1e-12 * (1.0 + p.abs()));
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_three_roots() {
        // (x-1)(x+2)(x-3) = x^3 - 2x^2 - 5x + 6
        let r = real_roots(&[6.0, -5.0, -2.0, 1.0]);
        assert_eq!(r.len(), 3);
        assert!((r[0] + 2.0).abs() < 1e-12);
        assert!((r[1] - 1.0).abs() < 1e-12);
        assert!((r[2] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn cubic_one_root() {
        // x^3 - x^2 - 2x + 4 has a single real root near -1.65063
        let r = real_roots(&[4.0, -2.0, -1.0, 1.0]);
        assert_eq!(r.len(), 1);
        assert!(eval(&[4.0, -2.0, -1.0, 1.0], r[0]).abs() < 1e-12);
    }

    #[test]
    fn deflation_roundtrip() {
        // (x-2)(x^2+1) = x^3 - 2x^2 + x - 2
        let (q, rem) = deflate(&[-2.0, 1.0, -2.0, 1.0], 2.0);
        assert!(rem.abs() < 1e-14);
        assert_eq!(q, alloc::vec![1.0, 0.0, 1.0]);
    }

    #[test]
    fn trim_drops_noise_leading_coeff() {
        let c = [1.0, 2.0, 1e-14];
        assert_eq!(trim(&c).len(), 2);
    }
}
