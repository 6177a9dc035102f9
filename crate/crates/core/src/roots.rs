//! Roots of a complex polynomial: eigenvalues of the companion matrix by
//! shifted Hessenberg QR, then Newton polish on the original coefficients.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

type C = Complex64;

const MAX_SWEEPS: usize = 60;

/// Roots of `Σ cₖ tᵏ` (ascending). The leading coefficient must be nonzero.
pub(crate) fn poly_roots(c: &[C]) -> Vec<C> {
    let d = c.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let lead = c[d];
    if d == 1 {
        return vec![-c[0] / lead];
    }
    // companion matrix in upper Hessenberg form
    let mut h = vec![vec![C::new(0.0, 0.0); d]; d];
    for j in 0..d {
        h[0][j] = -c[d - 1 - j] / lead;
    }
    for i in 1..d {
        h[i][i - 1] = C::new(1.0, 0.0);
    }
    let mut roots = hessenberg_eigenvalues(h);
    for r in roots.iter_mut() {
        *r = polish(c, *r);
    }
    roots
}

pub(crate) fn horner(c: &[C], t: C) -> (C, C) {
    let mut p = C::new(0.0, 0.0);
    let mut dp = C::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * t + p;
        p = p * t + a;
    }
    (p, dp)
}

fn polish(c: &[C], mut t: C) -> C {
    let (mut p, _) = horner(c, t);
    for _ in 0..8 {
        let (_, dp) = horner(c, t);
        if dp.norm() == 0.0 {
            break;
        }
        let next = t - p / dp;
        let (pn, _) = horner(c, next);
        if !(pn.norm() < p.norm()) {
            break;
        }
        t = next;
        p = pn;
    }
    t
}

fn hessenberg_eigenvalues(mut h: Vec<Vec<C>>) -> Vec<C> {
    let n = h.len();
    let mut out = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut iter = 0usize;
    loop {
        if hi == 0 {
            out.push(h[0][0]);
            break;
        }
        // look for a negligible subdiagonal entry
        let mut lo = hi;
        while lo > 0 {
            let s = h[lo][lo].norm() + h[lo - 1][lo - 1].norm();
            if h[lo][lo - 1].norm() <= f64::EPSILON * s {
                h[lo][lo - 1] = C::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            out.push(h[hi][hi]);
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > MAX_SWEEPS * n {
            // give up on this block; Newton polish still gets a chance
            for k in lo..=hi {
                out.push(h[k][k]);
            }
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            iter = 0;
            continue;
        }
        let mu = if iter % 11 == 10 {
            // exceptional shift to break cycles
            h[hi][hi] + C::new(h[hi][hi - 1].norm(), 0.0) * 0.75
        } else {
            wilkinson(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi])
        };
        qr_step(&mut h, lo, hi, mu);
    }
    out
}

fn wilkinson(a: C, b: C, c: C, d: C) -> C {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m1 = (a + d) * 0.5 + disc;
    let m2 = (a + d) * 0.5 - disc;
    if (m1 - d).norm() < (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

fn qr_step(h: &mut [Vec<C>], lo: usize, hi: usize, mu: C) {
    for k in lo..=hi {
        h[k][k] -= mu;
    }
    let mut rots: Vec<(f64, C)> = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (x, y) = (h[k][k], h[k + 1][k]);
        let r = crate::math::sqrt(x.norm_sqr() + y.norm_sqr());
        let (c, s) = if r == 0.0 {
            (1.0, C::new(0.0, 0.0))
        } else if x.norm() == 0.0 {
            (0.0, y.conj() / y.norm())
        } else {
            (x.norm() / r, (x / x.norm()) * y.conj() / r)
        };
        for j in k..=hi {
            let (p, q) = (h[k][j], h[k + 1][j]);
            h[k][j] = p * c + s * q;
            h[k + 1][j] = -s.conj() * p + q * c;
        }
        rots.push((c, s));
    }
    for (idx, k) in (lo..hi).enumerate() {
        let (c, s) = rots[idx];
        let top = (k + 2).min(hi);
        for row in h.iter_mut().take(top + 1).skip(lo) {
            let (p, q) = (row[k], row[k + 1]);
            row[k] = p * c + q * s.conj();
            row[k + 1] = -s * p + q * c;
        }
    }
    for k in lo..=hi {
        h[k][k] += mu;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_roots(r: &[C]) -> Vec<C> {
        let mut c = vec![C::new(1.0, 0.0)];
        for &z in r {
            let mut next = vec![C::new(0.0, 0.0); c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * z;
            }
            c = next;
        }
        c
    }

    #[test]
    fn recovers_chosen_roots() {
        let want = [
            C::new(1.0, 2.0),
            C::new(-0.5, 0.1),
            C::new(3.0, -1.0),
            C::new(0.2, 0.0),
            C::new(-2.0, -2.0),
            C::new(0.0, 0.7),
            C::new(1.5, 0.5),
            C::new(-0.3, -0.9),
        ];
        let got = poly_roots(&from_roots(&want));
        for w in want {
            let best = got.iter().map(|g| (g - w).norm()).fold(f64::MAX, f64::min);
            assert!(best < 1e-10, "{w}");
        }
    }

    #[test]
    fn real_quadratic() {
        let got = poly_roots(&[C::new(-1.0, 0.0), C::new(0.0, 0.0), C::new(1.0, 0.0)]);
        let mut re: Vec<f64> = got.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[0] + 1.0).abs() < 1e-14 && (re[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn double_root() {
        let got = poly_roots(&from_roots(&[C::new(0.0, 1.0), C::new(0.0, 1.0), C::new(2.0, 0.0)]));
        let near_i = got.iter().filter(|z| (*z - C::new(0.0, 1.0)).norm() < 1e-6).count();
        assert_eq!(near_i, 2);
    }
}
