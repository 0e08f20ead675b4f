//! Sparse multivariate polynomials over named variables.
//!
//! One representation serves the bivariate ring ℚ(i)[t, r] of divided
//! differences and the entry ring ℚ(i)[x_ij, t, s] of automorphism
//! payloads; the variable support is whatever actually occurs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::Scalar;
use super::unipoly::UniPoly;

/// A polynomial variable.
///
/// Matrix entries are 1-based, as in the file formats. `Y(k)` are generic
/// coordinates used for plane and space tame words and for auxiliary
/// elimination variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Var {
    T,
    R,
    S,
    X(u8, u8),
    Y(u16),
}

impl Var {
    pub fn name(&self) -> String {
        match self {
            Var::T => "t".into(),
            Var::R => "r".into(),
            Var::S => "s".into(),
            Var::X(i, j) => format!("x{i}_{j}"),
            Var::Y(k) => format!("y{k}"),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Product of variable powers, sorted by variable with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Self {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort();
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            let (a, b) = (self.0[i], o.0[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&o.0[j..]);
        Monomial(out)
    }

    pub fn render(&self) -> String {
        self.0
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    v.name()
                } else {
                    format!("{}^{e}", v.name())
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

/// Polynomials in the divided-difference ring ℚ(i)[t, r].
pub type BiPoly = MPoly;
/// Polynomials in matrix-entry variables (and `t`, `s`).
pub type EntryPoly = MPoly;

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        MPoly::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        MPoly::term(Scalar::one(), Monomial::var(v))
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    /// Lifts a univariate polynomial into the given variable.
    pub fn from_unipoly(p: &UniPoly, v: Var) -> Self {
        MPoly::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::from_pairs(vec![(v, k as u32)]), c.clone())),
        )
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// The set of variables that actually occur.
    pub fn support(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &Scalar, m: &Monomial) -> Self {
        MPoly::from_terms(self.terms.iter().map(|(n, a)| (n.mul(m), a * c)))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, at: &dyn Fn(Var) -> Scalar) -> Scalar {
        let mut cache: BTreeMap<Var, Vec<Scalar>> = BTreeMap::new();
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(x, e) in m.pairs() {
                let pows = cache.entry(x).or_insert_with(|| vec![Scalar::one(), at(x)]);
                while pows.len() <= e as usize {
                    let next = &pows[pows.len() - 1] * &pows[1];
                    pows.push(next);
                }
                v = &v * &pows[e as usize];
            }
            acc += &v;
        }
        acc
    }

    /// Substitutes a univariate polynomial for every variable.
    pub fn eval_unipoly(&self, at: &dyn Fn(Var) -> UniPoly) -> UniPoly {
        let images: BTreeMap<Var, UniPoly> = self.support().into_iter().map(|v| (v, at(v))).collect();
        let real = self.terms.values().all(Scalar::is_real)
            && images.values().all(|p| p.coeffs().iter().all(Scalar::is_real));
        if real {
            return self.eval_real_unipoly(&images);
        }
        let mut cache: BTreeMap<Var, Vec<UniPoly>> = BTreeMap::new();
        let mut acc = UniPoly::zero();
        for (m, c) in &self.terms {
            let mut v = UniPoly::constant(c.clone());
            for &(x, e) in m.pairs() {
                let pows = cache.entry(x).or_insert_with(|| vec![UniPoly::one(), images[&x].clone()]);
                while pows.len() <= e as usize {
                    let next = &pows[pows.len() - 1] * &pows[1];
                    pows.push(next);
                }
                v = &v * &pows[e as usize];
            }
            acc = &acc + &v;
        }
        acc
    }

    /// Real-coefficient evaluation with denominators cleared up front, so
    /// the inner products run on integers and reduce to lowest terms once.
    fn eval_real_unipoly(&self, images: &BTreeMap<Var, UniPoly>) -> UniPoly {
        struct IntPoly {
            num: Vec<BigInt>,
            den: BigInt,
        }
        fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
            if a.is_empty() || b.is_empty() {
                return Vec::new();
            }
            let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        }
        let mut pows: BTreeMap<Var, Vec<IntPoly>> = BTreeMap::new();
        let mut max_exp: BTreeMap<Var, u32> = BTreeMap::new();
        for m in self.terms.keys() {
            for &(x, e) in m.pairs() {
                let slot = max_exp.entry(x).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        for (&x, &emax) in &max_exp {
            let p = &images[&x];
            let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.re().denom()));
            let num: Vec<BigInt> = p
                .coeffs()
                .iter()
                .map(|c| c.re().numer() * (&den / c.re().denom()))
                .collect();
            let mut v = vec![
                IntPoly {
                    num: vec![BigInt::one()],
                    den: BigInt::one(),
                },
                IntPoly { num, den },
            ];
            for e in 2..=emax as usize {
                let next = IntPoly {
                    num: convolve(&v[e - 1].num, &v[1].num),
                    den: &v[e - 1].den * &v[1].den,
                };
                v.push(next);
            }
            pows.insert(x, v);
        }
        let total_den: BigInt = max_exp.iter().fold(BigInt::one(), |acc, (x, &e)| acc * &pows[x][e as usize].den);
        let coef_den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.re().denom()));
        let mut acc: Vec<BigInt> = Vec::new();
        for (m, c) in &self.terms {
            let mut num = vec![c.re().numer() * (&coef_den / c.re().denom())];
            let mut den = BigInt::one();
            for &(x, e) in m.pairs() {
                let p = &pows[&x][e as usize];
                num = convolve(&num, &p.num);
                den *= &p.den;
            }
            let scale = &total_den / &den;
            if acc.len() < num.len() {
                acc.resize(num.len(), BigInt::zero());
            }
            for (k, v) in num.into_iter().enumerate() {
                acc[k] += v * &scale;
            }
        }
        let d = total_den * coef_den;
        UniPoly::from_coeffs(
            acc.into_iter()
                .map(|v| Scalar::from(BigRational::new(v, d.clone())))
                .collect(),
        )
    }

    /// Substitutes polynomials for some variables; the rest stay symbolic.
    pub fn substitute(&self, map: &BTreeMap<Var, MPoly>) -> MPoly {
        let mut cache: BTreeMap<Var, Vec<MPoly>> = BTreeMap::new();
        let mut acc = MPoly::zero();
        for (m, c) in &self.terms {
            let mut v = MPoly::constant(c.clone());
            let mut keep = Vec::new();
            for &(x, e) in m.pairs() {
                match map.get(&x) {
                    Some(img) => {
                        let pows = cache.entry(x).or_insert_with(|| vec![MPoly::one(), img.clone()]);
                        while pows.len() <= e as usize {
                            let next = &pows[pows.len() - 1] * &pows[1];
                            pows.push(next);
                        }
                        v = &v * &pows[e as usize];
                    }
                    None => keep.push((x, e)),
                }
            }
            if !keep.is_empty() {
                v = v.mul_monomial(&Scalar::one(), &Monomial::from_pairs(keep));
            }
            acc = &acc + &v;
        }
        acc
    }

    /// Reads the polynomial as univariate in `v`, if no other variable occurs.
    pub fn to_unipoly(&self, v: Var) -> Option<UniPoly> {
        let mut coeffs = vec![Scalar::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            match m.pairs() {
                [] => coeffs[0] = c.clone(),
                [(w, e)] if *w == v => coeffs[*e as usize] = c.clone(),
                _ => return None,
            }
        }
        Some(UniPoly::from_coeffs(coeffs))
    }

    /// Canonical rendering: graded order, higher total degree first, ties
    /// broken lexicographically by the variable order `t > r > s > x.. > y..`.
    pub fn render(&self) -> String {
        let mut ts: Vec<(&Monomial, &Scalar)> = self.terms.iter().collect();
        ts.sort_by(|a, b| display_cmp(a.0, b.0));
        super::render::render_terms(ts.into_iter().map(|(m, c)| (c.clone(), m.render())))
    }
}

fn display_cmp(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    b.degree().cmp(&a.degree()).then_with(|| {
        // descending lex: compare exponents variable by variable
        let (pa, pb) = (a.pairs(), b.pairs());
        let mut i = 0;
        loop {
            match (pa.get(i), pb.get(i)) {
                (None, None) => return std::cmp::Ordering::Equal,
                (Some(_), None) => return std::cmp::Ordering::Less,
                (None, Some(_)) => return std::cmp::Ordering::Greater,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va != vb {
                        return va.cmp(&vb);
                    }
                    if ea != eb {
                        return eb.cmp(&ea);
                    }
                }
            }
            i += 1;
        }
    })
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let (mut big, small) = if self.terms.len() >= o.terms.len() {
            (self.clone(), o)
        } else {
            (o.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c);
        }
        big
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m, a) in &self.terms {
            for (n, b) in &o.terms {
                out.add_term(m.mul(n), &(a * b));
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, o: MPoly) -> MPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, o: &MPoly) -> MPoly {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
