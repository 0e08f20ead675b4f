//! Bezout identities for lists of univariate polynomials, and divided
//! differences.

use super::mpoly::{BiPoly, MPoly, Monomial, Var};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Monic gcd of `ps` together with cofactors `c_k` with `Σ c_k·p_k = g`.
///
/// Cofactors come from a left-to-right extended Euclid cascade. A cofactor
/// whose degree reaches `Σ deg p_k − deg g` is then reduced modulo the
/// complementary quotient `p_last / gcd(p_k, p_last)`, the excess being
/// moved onto the last cofactor; cofactors already below the bound are
/// kept as computed.
pub fn xgcd_list(ps: &[UniPoly]) -> Result<(UniPoly, Vec<UniPoly>)> {
    if ps.iter().all(UniPoly::is_zero) {
        return Err(Error::AllZeroInput);
    }
    let m = ps.len();
    let mut g = UniPoly::zero();
    let mut cof = vec![UniPoly::zero(); m];
    for (k, p) in ps.iter().enumerate() {
        if p.is_zero() || (!g.is_zero() && p.rem(&g).is_some_and(|r| r.is_zero())) {
            continue;
        }
        let (ng, u, v) = g.xgcd(p);
        for c in cof.iter_mut() {
            *c = &u * &*c;
        }
        cof[k] = &cof[k] + &v;
        g = ng;
    }

    let bound = ps.iter().map(UniPoly::deg0).sum::<usize>() - g.deg0();
    if let Some(last) = (0..m).rev().find(|&k| !ps[k].is_zero()) {
        for k in 0..last {
            if ps[k].is_zero() || cof[k].is_zero() || cof[k].deg0() < bound {
                continue;
            }
            let h = ps[k].gcd(&ps[last]);
            let modulus = ps[last].div_exact(&h).expect("gcd divides");
            let partner = ps[k].div_exact(&h).expect("gcd divides");
            let (q, r) = cof[k].div_rem(&modulus).expect("nonzero modulus");
            cof[k] = r;
            cof[last] = &cof[last] + &(&q * &partner);
        }
    }
    Ok((g, cof))
}

/// `(p(t) − p(r)) / (t − r)` as a polynomial in `t` and `r`.
pub fn divided_difference(p: &UniPoly) -> BiPoly {
    let mut out = MPoly::zero();
    for (k, c) in p.coeffs().iter().enumerate().skip(1) {
        for j in 0..k {
            let m = Monomial::from_pairs(vec![(Var::T, j as u32), (Var::R, (k - 1 - j) as u32)]);
            out.add_term(m, c);
        }
    }
    out
}

/// Evaluates a polynomial in `t`, `r` on the diagonal `r := t`.
pub fn restrict_diagonal(q: &BiPoly) -> UniPoly {
    let mut map = std::collections::BTreeMap::new();
    map.insert(Var::R, MPoly::var(Var::T));
    q.substitute(&map)
        .to_unipoly(Var::T)
        .expect("only t remains after r := t")
}

/// Checks `Σ c_k·p_k = g` exactly.
pub fn bezout_holds(ps: &[UniPoly], cof: &[UniPoly], g: &UniPoly) -> bool {
    ps.len() == cof.len()
        && ps
            .iter()
            .zip(cof)
            .fold(UniPoly::zero(), |acc, (p, c)| &acc + &(p * c))
            == *g
}
