//! Roots of univariate polynomials that lie in ℚ(i).
//!
//! Candidates come from a floating-point Durand–Kerner iteration and are
//! rounded to nearby Gaussian rationals; only candidates that are exact
//! roots are returned.

use num_traits::Zero;

use super::scalar::Scalar;
use super::unipoly::UniPoly;

const MAX_DEN: i64 = 1 << 20;

#[derive(Clone, Copy, Debug)]
struct C(f64, f64);

impl C {
    fn add(self, o: C) -> C {
        C(self.0 + o.0, self.1 + o.1)
    }
    fn sub(self, o: C) -> C {
        C(self.0 - o.0, self.1 - o.1)
    }
    fn mul(self, o: C) -> C {
        C(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn div(self, o: C) -> C {
        let d = o.0 * o.0 + o.1 * o.1;
        C((self.0 * o.0 + self.1 * o.1) / d, (self.1 * o.0 - self.0 * o.1) / d)
    }
    fn abs(self) -> f64 {
        self.0.hypot(self.1)
    }
}

fn horner(cs: &[C], x: C) -> C {
    cs.iter().rev().fold(C(0.0, 0.0), |acc, &c| acc.mul(x).add(c))
}

fn numeric_roots(p: &UniPoly) -> Option<Vec<C>> {
    let m = p.monic();
    let d = m.degree()?;
    let cs: Vec<C> = m
        .coeffs()
        .iter()
        .map(|c| {
            let (a, b) = c.to_f64_pair();
            C(a, b)
        })
        .collect();
    if cs.iter().any(|c| !c.0.is_finite() || !c.1.is_finite()) {
        return None;
    }
    let bound = 1.0 + cs[..d].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let mut z: Vec<C> = (0..d)
        .map(|k| {
            let a = 0.4 + 2.0 * std::f64::consts::PI * k as f64 / d as f64;
            C(bound * 0.5 * a.cos(), bound * 0.5 * a.sin())
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let mut den = C(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    den = den.mul(z[i].sub(z[j]));
                }
            }
            if den.abs() == 0.0 {
                den = C(1e-12, 0.0);
            }
            let step = horner(&cs, z[i]).div(den);
            z[i] = z[i].sub(step);
            moved = moved.max(step.abs());
        }
        if moved < 1e-14 * bound {
            break;
        }
    }
    Some(z)
}

/// Distinct roots of `p` in ℚ(i), in a deterministic order.
pub fn gaussian_rational_roots(p: &UniPoly) -> Vec<Scalar> {
    if p.is_zero() || p.is_constant() {
        return Vec::new();
    }
    // squarefree part
    let g = p.gcd(&p.derivative());
    let mut q = p.div_exact(&g).expect("gcd divides");
    let mut out: Vec<Scalar> = Vec::new();
    while let Some(d) = q.degree() {
        if d == 0 {
            break;
        }
        if d == 1 {
            let r = -(&q.coeff(0) / &q.coeff(1));
            out.push(r);
            break;
        }
        let Some(zs) = numeric_roots(&q) else { break };
        let mut found = None;
        for z in zs {
            if let Some(c) = Scalar::approx_from_f64(z.0, z.1, MAX_DEN) {
                if q.eval(&c).is_zero() {
                    found = Some(c);
                    break;
                }
            }
        }
        match found {
            Some(c) => {
                let lin = UniPoly::from_coeffs(vec![-c.clone(), Scalar::from_int(1)]);
                q = q.div_exact(&lin).expect("exact root");
                out.push(c);
            }
            None => break,
        }
    }
    out.sort_by(|a, b| {
        (a.re(), a.im())
            .partial_cmp(&(b.re(), b.im()))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    out
}
