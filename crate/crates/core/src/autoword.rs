//! Words in the generators of `Aut(SL_n)` used by the rectification.
//!
//! Words are stored as generator lists and never expanded into coordinate
//! maps; application substitutes the current curve into each payload.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::exactalg::{EntryPoly, MPoly, Monomial, PolyMatrix, Scalar, ScalarMatrix, UniPoly, Var};
use crate::rng;
use crate::slcurve::SlCurve;

/// One automorphism of `SL_n`. Row and column indices are 1-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Generator {
    /// `X ↦ E_ij(p(X))·X`; `p` must not involve row `i`.
    LeftElem { i: usize, j: usize, p: EntryPoly },
    /// `X ↦ X·E_ij(q(X))`; `q` must not involve column `j`.
    RightElem { i: usize, j: usize, q: EntryPoly },
    /// `X ↦ B·X`, `det B = 1`.
    ConstLeft(ScalarMatrix),
    /// `X ↦ X·B`, `det B = 1`.
    ConstRight(ScalarMatrix),
    /// `X ↦ A·X·diag(1, …, 1, 1/det A)`, `A` invertible.
    GlPair(ScalarMatrix),
    /// `X ↦ X·M(x_n1)` with `M(s)` unimodular and first column `e_1`.
    CurveRightMul(PolyMatrix),
}

fn check_indices(i: usize, j: usize, n: usize) -> Result<()> {
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::InvalidGenerator(format!(
            "indices ({i}, {j}) out of range for n = {n}"
        )));
    }
    if i == j {
        return Err(Error::InvalidGenerator(format!("diagonal position ({i}, {i})")));
    }
    Ok(())
}

fn check_payload(p: &EntryPoly, n: usize, forbidden: impl Fn(usize, usize) -> bool) -> Result<()> {
    for v in p.support() {
        match v {
            Var::X(k, l) if (k as usize) <= n && (l as usize) <= n => {
                if forbidden(k as usize, l as usize) {
                    return Err(Error::InvalidSupport(format!("payload uses forbidden variable {v}")));
                }
            }
            other => {
                return Err(Error::InvalidSupport(format!(
                    "payload uses {other}, which is not an entry variable of SL_{n}"
                )))
            }
        }
    }
    Ok(())
}

fn check_square(m_rows: usize, m_cols: usize, n: usize) -> Result<()> {
    if m_rows != n || m_cols != n {
        return Err(Error::SizeMismatch(format!(
            "expected a {n}x{n} matrix, got {m_rows}x{m_cols}"
        )));
    }
    Ok(())
}

/// Returns the generator if it is a valid automorphism of `SL_n`.
pub fn check_generator(g: Generator, n: usize) -> Result<Generator> {
    match &g {
        Generator::LeftElem { i, j, p } => {
            check_indices(*i, *j, n)?;
            check_payload(p, n, |k, _| k == *i)?;
        }
        Generator::RightElem { i, j, q } => {
            check_indices(*i, *j, n)?;
            check_payload(q, n, |_, l| l == *j)?;
        }
        Generator::ConstLeft(b) | Generator::ConstRight(b) => {
            check_square(b.rows(), b.cols(), n)?;
            let d = b.det();
            if !d.is_one() {
                return Err(Error::NotUnimodular(d.render()));
            }
        }
        Generator::GlPair(a) => {
            check_square(a.rows(), a.cols(), n)?;
            if a.det().is_zero() {
                return Err(Error::InvalidGenerator("GlPair matrix is singular".into()));
            }
        }
        Generator::CurveRightMul(m) => {
            check_square(m.rows(), m.cols(), n)?;
            let d = m.det();
            if d != UniPoly::one() {
                return Err(Error::NotUnimodular(d.render("s")));
            }
            for k in 0..n {
                let want = if k == 0 { UniPoly::one() } else { UniPoly::zero() };
                if m[(k, 0)] != want {
                    return Err(Error::FirstColumnNotPreserved(format!(
                        "entry ({}, 1) is {}",
                        k + 1,
                        m[(k, 0)].render("s")
                    )));
                }
            }
        }
    }
    Ok(g)
}

impl Generator {
    pub fn inverse(&self) -> Generator {
        match self {
            Generator::LeftElem { i, j, p } => Generator::LeftElem {
                i: *i,
                j: *j,
                p: -p,
            },
            Generator::RightElem { i, j, q } => Generator::RightElem {
                i: *i,
                j: *j,
                q: -q,
            },
            Generator::ConstLeft(b) => Generator::ConstLeft(b.inverse().expect("unimodular")),
            Generator::ConstRight(b) => Generator::ConstRight(b.inverse().expect("unimodular")),
            Generator::GlPair(a) => Generator::GlPair(a.inverse().expect("invertible")),
            // det M = 1, so the adjugate is the inverse
            Generator::CurveRightMul(m) => Generator::CurveRightMul(m.adjugate()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Generator::LeftElem { .. } => "left",
            Generator::RightElem { .. } => "right",
            Generator::ConstLeft(_) => "constleft",
            Generator::ConstRight(_) => "constright",
            Generator::GlPair(_) => "glpair",
            Generator::CurveRightMul(_) => "curvemul",
        }
    }

    fn apply_poly(&self, x: &PolyMatrix) -> PolyMatrix {
        let n = x.rows();
        let at = |v: Var| -> UniPoly {
            match v {
                Var::X(k, l) => x[(k as usize - 1, l as usize - 1)].clone(),
                _ => unreachable!("validated payload"),
            }
        };
        match self {
            Generator::LeftElem { i, j, p } => {
                let val = p.eval_unipoly(&at);
                let mut out = x.clone();
                for c in 0..n {
                    out[(i - 1, c)] = &x[(i - 1, c)] + &(&val * &x[(j - 1, c)]);
                }
                out
            }
            Generator::RightElem { i, j, q } => {
                let val = q.eval_unipoly(&at);
                let mut out = x.clone();
                for r in 0..n {
                    out[(r, j - 1)] = &x[(r, j - 1)] + &(&val * &x[(r, i - 1)]);
                }
                out
            }
            Generator::ConstLeft(b) => PolyMatrix::from_scalars(b).mul(x),
            Generator::ConstRight(b) => x.mul(&PolyMatrix::from_scalars(b)),
            Generator::GlPair(a) => {
                let mut out = PolyMatrix::from_scalars(a).mul(x);
                let scale = a.det().inv().expect("invertible");
                for r in 0..n {
                    out[(r, n - 1)] = out[(r, n - 1)].scale(&scale);
                }
                out
            }
            Generator::CurveRightMul(m) => {
                let corner = x[(n - 1, 0)].clone();
                x.mul(&m.compose(&corner))
            }
        }
    }

    fn apply_scalar(&self, x: &ScalarMatrix) -> ScalarMatrix {
        let n = x.rows();
        let at = |v: Var| -> Scalar {
            match v {
                Var::X(k, l) => x[(k as usize - 1, l as usize - 1)].clone(),
                _ => unreachable!("validated payload"),
            }
        };
        match self {
            Generator::LeftElem { i, j, p } => {
                let val = p.eval(&at);
                let mut out = x.clone();
                for c in 0..n {
                    out[(i - 1, c)] = &x[(i - 1, c)] + &(&val * &x[(j - 1, c)]);
                }
                out
            }
            Generator::RightElem { i, j, q } => {
                let val = q.eval(&at);
                let mut out = x.clone();
                for r in 0..n {
                    out[(r, j - 1)] = &x[(r, j - 1)] + &(&val * &x[(r, i - 1)]);
                }
                out
            }
            Generator::ConstLeft(b) => b.mul(x),
            Generator::ConstRight(b) => x.mul(b),
            Generator::GlPair(a) => {
                let mut out = a.mul(x);
                let scale = a.det().inv().expect("invertible");
                for r in 0..n {
                    out[(r, n - 1)] = &out[(r, n - 1)] * &scale;
                }
                out
            }
            Generator::CurveRightMul(m) => {
                let corner = x[(n - 1, 0)].clone();
                x.mul(&m.eval(&corner))
            }
        }
    }
}

/// A composable sequence of validated generators, applied left to right.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AutWord {
    n: usize,
    gens: Vec<Generator>,
}

impl AutWord {
    pub fn empty(n: usize) -> Self {
        AutWord { n, gens: Vec::new() }
    }

    pub fn new(n: usize, gens: Vec<Generator>) -> Result<Self> {
        let gens = gens
            .into_iter()
            .map(|g| check_generator(g, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(AutWord { n, gens })
    }

    pub fn single(n: usize, g: Generator) -> Result<Self> {
        AutWord::new(n, vec![g])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn push(&mut self, g: Generator) -> Result<()> {
        self.gens.push(check_generator(g, self.n)?);
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &AutWord) -> Result<AutWord> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(format!(
                "cannot compose words for n = {} and n = {}",
                self.n, other.n
            )));
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(AutWord { n: self.n, gens })
    }
}

/// Applies the word to a curve, generator by generator, and revalidates.
pub fn apply_word(w: &AutWord, c: &SlCurve) -> Result<SlCurve> {
    if w.n != c.n() {
        return Err(Error::SizeMismatch(format!(
            "word for n = {} applied to a curve with n = {}",
            w.n,
            c.n()
        )));
    }
    if w.is_empty() {
        return Ok(c.clone());
    }
    let mut x = c.entries().clone();
    for g in &w.gens {
        x = g.apply_poly(&x);
    }
    SlCurve::validate(x)
}

/// Applies the word to a single matrix with `det = 1`.
pub fn apply_word_matrix(w: &AutWord, x: &ScalarMatrix) -> Result<ScalarMatrix> {
    if x.rows() != w.n || x.cols() != w.n {
        return Err(Error::SizeMismatch(format!(
            "word for n = {} applied to a {}x{} matrix",
            w.n,
            x.rows(),
            x.cols()
        )));
    }
    let d = x.det();
    if !d.is_one() {
        return Err(Error::NotUnimodular(d.render()));
    }
    let mut y = x.clone();
    for g in &w.gens {
        y = g.apply_scalar(&y);
    }
    Ok(y)
}

pub fn invert_word(w: &AutWord) -> AutWord {
    AutWord {
        n: w.n,
        gens: w.gens.iter().rev().map(Generator::inverse).collect(),
    }
}

fn nonzero_small(r: &mut rng::Rng, bound: i64) -> i64 {
    loop {
        let v = r.gen_range(-bound..=bound);
        if v != 0 {
            return v;
        }
    }
}

/// Random payload of total degree at most `max_deg` in `vars`, one or two
/// terms with small integer coefficients.
fn random_payload(r: &mut rng::Rng, vars: &[Var], max_deg: u32) -> EntryPoly {
    let mut p = MPoly::zero();
    let nterms = r.gen_range(1..=2);
    for _ in 0..nterms {
        let c = Scalar::from_int(nonzero_small(r, 3));
        let d = if max_deg == 0 { 0 } else { r.gen_range(1..=max_deg) };
        let pairs: Vec<(Var, u32)> = (0..d).map(|_| (vars[r.gen_range(0..vars.len())], 1)).collect();
        p.add_term(Monomial::from_pairs(pairs), &c);
    }
    if p.is_zero() {
        p = MPoly::one();
    }
    p
}

/// Product of a few integer elementary matrices (determinant one).
pub fn random_unimodular(r: &mut rng::Rng, n: usize, factors: usize, bound: i64) -> ScalarMatrix {
    let mut m = ScalarMatrix::identity(n);
    for _ in 0..factors {
        let i = r.gen_range(0..n);
        let mut j = r.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let e = ScalarMatrix::elementary(n, i, j, Scalar::from_int(nonzero_small(r, bound)));
        m = m.mul(&e);
    }
    m
}

fn random_generator(r: &mut rng::Rng, n: usize, max_deg: u32) -> Generator {
    let pick_pair = |r: &mut rng::Rng| {
        let i = r.gen_range(1..=n);
        let mut j = r.gen_range(1..n);
        if j >= i {
            j += 1;
        }
        (i, j)
    };
    let roll = r.gen_range(0..20);
    match roll {
        0..=6 => {
            let (i, j) = pick_pair(r);
            let vars: Vec<Var> = (1..=n)
                .filter(|&k| k != i)
                .flat_map(|k| (1..=n).map(move |l| Var::X(k as u8, l as u8)))
                .collect();
            Generator::LeftElem {
                i,
                j,
                p: random_payload(r, &vars, max_deg),
            }
        }
        7..=13 => {
            let (i, j) = pick_pair(r);
            let vars: Vec<Var> = (1..=n)
                .flat_map(|k| (1..=n).filter(move |&l| l != j).map(move |l| Var::X(k as u8, l as u8)))
                .collect();
            Generator::RightElem {
                i,
                j,
                q: random_payload(r, &vars, max_deg),
            }
        }
        14..=15 => Generator::ConstLeft(random_unimodular(r, n, 2, 2)),
        16..=17 => Generator::ConstRight(random_unimodular(r, n, 2, 2)),
        _ => {
            let mut a = random_unimodular(r, n, 1, 2);
            let scale = [2i64, -1, -2, 3][r.gen_range(0..4)];
            for c in 0..n {
                a[(0, c)] = &a[(0, c)] * &Scalar::from_int(scale);
            }
            Generator::GlPair(a)
        }
    }
}

/// A deterministic pseudo-random word of exactly `max_len` generators with
/// payload degree at most `max_deg`.
pub fn random_word(seed: u64, n: usize, max_len: usize, max_deg: u32) -> AutWord {
    let mut r = rng::stream(seed, 0x776f_7264);
    let gens = (0..max_len).map(|_| random_generator(&mut r, n, max_deg)).collect();
    AutWord::new(n, gens).expect("random generators are valid by construction")
}

/// Variables a payload may use in each generator family.
pub fn allowed_variables(g: &Generator, n: usize) -> BTreeSet<Var> {
    let all = (1..=n).flat_map(|k| (1..=n).map(move |l| Var::X(k as u8, l as u8)));
    match g {
        Generator::LeftElem { i, .. } => all.filter(|v| !matches!(v, Var::X(k, _) if *k as usize == *i)).collect(),
        Generator::RightElem { j, .. } => all.filter(|v| !matches!(v, Var::X(_, l) if *l as usize == *j)).collect(),
        _ => BTreeSet::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{GroebnerBudget, Mat};
    use crate::slcurve::is_embedding;

    fn x(i: u8, j: u8) -> MPoly {
        MPoly::var(Var::X(i, j))
    }
    fn u(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(cs)
    }

    #[test]
    fn check_generator_examples() {
        assert!(check_generator(
            Generator::LeftElem { i: 1, j: 2, p: x(2, 1).pow(2) },
            2
        )
        .is_ok());
        assert!(matches!(
            check_generator(Generator::LeftElem { i: 1, j: 2, p: x(1, 1) }, 2),
            Err(Error::InvalidSupport(_))
        ));
        let m = Mat::from_rows(vec![vec![u(&[1]), u(&[0, -1])], vec![u(&[0]), u(&[1])]]).unwrap();
        assert!(check_generator(Generator::CurveRightMul(m), 2).is_ok());
        let bad = Mat::from_rows(vec![vec![u(&[1]), u(&[0])], vec![u(&[0, 1]), u(&[1])]]).unwrap();
        assert!(matches!(
            check_generator(Generator::CurveRightMul(bad), 2),
            Err(Error::FirstColumnNotPreserved(_))
        ));
        assert!(matches!(
            check_generator(Generator::ConstLeft(ScalarMatrix::from_fn(2, 2, |i, j| if i == j { Scalar::from_int(2) } else { Scalar::zero() })), 2),
            Err(Error::NotUnimodular(_))
        ));
        assert!(matches!(
            check_generator(Generator::RightElem { i: 2, j: 1, q: x(2, 1) }, 2),
            Err(Error::InvalidSupport(_))
        ));
        assert!(matches!(
            check_generator(Generator::RightElem { i: 2, j: 1, q: MPoly::var(Var::T) }, 2),
            Err(Error::InvalidSupport(_))
        ));
    }

    #[test]
    fn curve_multiplier_straightens_sl2_example() {
        let c = SlCurve::validate(
            Mat::from_rows(vec![vec![u(&[1]), u(&[0, 1])], vec![u(&[0, 1]), u(&[1, 0, 1])]]).unwrap(),
        )
        .unwrap();
        let m = Mat::from_rows(vec![vec![u(&[1]), u(&[0, -1])], vec![u(&[0]), u(&[1])]]).unwrap();
        let w = AutWord::single(2, Generator::CurveRightMul(m)).unwrap();
        assert_eq!(apply_word(&w, &c).unwrap(), SlCurve::standard(2));
    }

    #[test]
    fn glpair_example() {
        let a = ScalarMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => Scalar::from_int(2),
            (1, 1) => Scalar::one(),
            _ => Scalar::zero(),
        });
        let w = AutWord::single(2, Generator::GlPair(a)).unwrap();
        let out = apply_word(&w, &SlCurve::standard(2)).unwrap();
        let want = Mat::from_rows(vec![
            vec![u(&[2]), u(&[0])],
            vec![u(&[0, 1]), UniPoly::constant(Scalar::from_ratio(1, 2))],
        ])
        .unwrap();
        assert_eq!(out.entries(), &want);
    }

    #[test]
    fn empty_word_is_identity() {
        let c = SlCurve::standard(3);
        assert_eq!(apply_word(&AutWord::empty(3), &c).unwrap(), c);
        assert!(invert_word(&AutWord::empty(3)).is_empty());
        assert!(matches!(
            apply_word(&AutWord::empty(2), &c),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn invert_elementary() {
        let w = AutWord::single(2, Generator::LeftElem { i: 1, j: 2, p: x(2, 1) }).unwrap();
        assert_eq!(
            invert_word(&w).gens(),
            &[Generator::LeftElem { i: 1, j: 2, p: -x(2, 1) }]
        );
    }

    #[test]
    fn random_word_determinism() {
        assert!(random_word(0, 3, 0, 0).is_empty());
        assert_eq!(random_word(11, 3, 4, 2), random_word(11, 3, 4, 2));
        assert_ne!(random_word(11, 3, 4, 2), random_word(12, 3, 4, 2));
    }

    #[test]
    fn random_words_roundtrip_and_preserve_embedding() {
        let e = SlCurve::standard(3);
        for seed in 0..12 {
            let w = random_word(seed, 3, 1 + (seed as usize % 6), 2);
            let c = apply_word(&w, &e).unwrap();
            assert_eq!(apply_word(&invert_word(&w), &c).unwrap(), e, "seed {seed}");
            assert_eq!(invert_word(&invert_word(&w)), w);
            if seed < 6 {
                assert!(is_embedding(&c, GroebnerBudget::default()).unwrap().is_embedding);
            }
        }
    }

    #[test]
    fn pointwise_agreement() {
        let e = SlCurve::standard(3);
        for seed in 0..8 {
            let w = random_word(100 + seed, 3, 4, 2);
            let c = apply_word(&w, &e).unwrap();
            for t0 in [-2i64, 0, 3] {
                let t0 = Scalar::from_int(t0);
                assert_eq!(apply_word_matrix(&w, &e.eval(&t0)).unwrap(), c.eval(&t0));
            }
        }
    }
}
