//! Curves in `SL_2` and their relation to curves in ℂ² and ℂ³.
//!
//! Two constructions live here. A triple `(g1, g2, g3)` with
//! `g2 | g1·g3 − 1` lifts to the `SL_2` curve with rows
//! `(g1, (g1g3 − 1)/g2)`, `(g2, g3)`; a best-effort tame normalization tries
//! to reach that divisibility. And for an `SL_2` curve whose first column
//! embeds into ℂ², the Abhyankar–Moh degree reduction straightens the first
//! column to `(1, t)`; every origin-preserving plane move lifts to an
//! automorphism of `SL_2`, after which the final right multiplication
//! finishes the rectification.

use num_traits::{One, Zero};
use rand::Rng as _;

use crate::autoword::{apply_word, AutWord, Generator};
use crate::error::{Error, Result};
use crate::exactalg::groebner::GroebnerBudget;
use crate::exactalg::roots::gaussian_rational_roots;
use crate::exactalg::{EntryPoly, MPoly, Monomial, Scalar, ScalarMatrix, UniPoly, Var};
use crate::rectifier::{final_rectify, first_column_standard, stage, Certificate, Fact};
use crate::rng;
use crate::slcurve::{embedding_report, EmbeddingReport, SlCurve};

const TAG_DIVISIBILITY: u64 = 0x6469_7669;

/// A polynomial curve `t ↦ (g1, g2, g3)` in ℂ³.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct C3Triple {
    pub g1: UniPoly,
    pub g2: UniPoly,
    pub g3: UniPoly,
}

impl C3Triple {
    pub fn new(g1: UniPoly, g2: UniPoly, g3: UniPoly) -> Self {
        C3Triple { g1, g2, g3 }
    }

    pub fn coords(&self) -> [&UniPoly; 3] {
        [&self.g1, &self.g2, &self.g3]
    }

    fn coord_mut(&mut self, axis: usize) -> &mut UniPoly {
        match axis {
            1 => &mut self.g1,
            2 => &mut self.g2,
            _ => &mut self.g3,
        }
    }

    /// Remainder of `g1·g3 − 1` modulo `g2`; `None` if `g2 = 0`.
    pub fn remainder(&self) -> Option<UniPoly> {
        (&(&self.g1 * &self.g3) - &UniPoly::one()).rem(&self.g2)
    }

    pub fn is_divisible(&self) -> bool {
        self.remainder().is_some_and(|r| r.is_zero())
    }
}

pub fn triple_embedding(tr: &C3Triple, budget: GroebnerBudget) -> Result<EmbeddingReport> {
    embedding_report(&[tr.g1.clone(), tr.g2.clone(), tr.g3.clone()], budget)
}

/// Rows `(g1, (g1g3 − 1)/g2)`, `(g2, g3)`.
pub fn lift_c3_to_sl2(tr: &C3Triple) -> Result<SlCurve> {
    let num = &(&tr.g1 * &tr.g3) - &UniPoly::one();
    let q = match num.div_rem(&tr.g2) {
        Some((q, r)) if r.is_zero() => q,
        Some((_, r)) => return Err(Error::DivisibilityFails(r.render("t"))),
        None => return Err(Error::DivisibilityFails(num.render("t"))),
    };
    let m = crate::exactalg::Mat::from_rows(vec![vec![tr.g1.clone(), q], vec![tr.g2.clone(), tr.g3.clone()]])
        .expect("2x2");
    SlCurve::validate(m)
}

/// A tame automorphism of ℂ³ with coordinates `y1, y2, y3`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SpaceMove {
    /// `y ↦ A·y`.
    Linear(ScalarMatrix),
    /// `y_axis ↦ y_axis + h`, `h` free of `y_axis`.
    Elementary { axis: usize, h: MPoly },
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SpaceTameWord {
    pub moves: Vec<SpaceMove>,
}

impl SpaceMove {
    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceMove::Linear(a) => {
                if a.rows() != 3 || a.cols() != 3 || a.det().is_zero() {
                    return Err(Error::InvalidGenerator("linear move must be an invertible 3x3 matrix".into()));
                }
            }
            SpaceMove::Elementary { axis, h } => {
                if !(1..=3).contains(axis) {
                    return Err(Error::InvalidGenerator(format!("axis {axis} out of range")));
                }
                for v in h.support() {
                    match v {
                        Var::Y(k) if (1..=3).contains(&k) && k as usize != *axis => {}
                        other => {
                            return Err(Error::InvalidSupport(format!("space move on y{axis} uses {other}")))
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, tr: &C3Triple) -> C3Triple {
        match self {
            SpaceMove::Linear(a) => {
                let row = |i: usize| {
                    tr.coords()
                        .iter()
                        .enumerate()
                        .fold(UniPoly::zero(), |acc, (j, g)| &acc + &g.scale(&a[(i, j)]))
                };
                C3Triple::new(row(0), row(1), row(2))
            }
            SpaceMove::Elementary { axis, h } => {
                let at = |v: Var| match v {
                    Var::Y(1) => tr.g1.clone(),
                    Var::Y(2) => tr.g2.clone(),
                    Var::Y(3) => tr.g3.clone(),
                    _ => UniPoly::zero(),
                };
                let mut out = tr.clone();
                let shifted = &out.coord_mut(*axis).clone() + &h.eval_unipoly(&at);
                *out.coord_mut(*axis) = shifted;
                out
            }
        }
    }
}

impl SpaceTameWord {
    pub fn apply(&self, tr: &C3Triple) -> Result<C3Triple> {
        let mut cur = tr.clone();
        for m in &self.moves {
            m.validate()?;
            cur = m.apply(&cur);
        }
        Ok(cur)
    }
}

fn y_poly(q: &UniPoly, k: u16) -> MPoly {
    MPoly::from_unipoly(q, Var::Y(k))
}

/// Small shifts `1, −1, 2, −2, …`.
fn shift(k: usize) -> Scalar {
    let m = (k / 2 + 1) as i64;
    Scalar::from_int(if k.is_multiple_of(2) { m } else { -m })
}

/// Solves `Σ x_k·cols[k] = rhs`; every vector has the same length.
fn solve_columns(cols: &[Vec<Scalar>], rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    let m = rhs.len();
    let n = cols.len();
    let mut a: Vec<Vec<Scalar>> = (0..m)
        .map(|i| {
            let mut row: Vec<Scalar> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][n].clone();
    }
    Some(x)
}

fn residue_vector(p: &UniPoly, modulus: &UniPoly, d: usize) -> Vec<Scalar> {
    let r = p.rem(modulus).expect("nonzero modulus");
    (0..d).map(|k| r.coeff(k)).collect()
}

/// Steps (1) and (2) of the heuristic on a fixed `g2`: shift `g1` until it
/// is a unit modulo `g2`, then look for `q` with `g1·(g3 + q(g1)) ≡ 1`.
fn try_normalize(tr: &C3Triple) -> Option<Vec<SpaceMove>> {
    if tr.is_divisible() {
        return Some(Vec::new());
    }
    let g2 = &tr.g2;
    let d = g2.degree()?;
    let mut moves = Vec::new();
    let mut g1 = tr.g1.clone();
    if !g1.gcd(g2).is_constant() {
        let c = (0..2 * d + 2).map(shift).find(|c| {
            let s = &tr.g1 + &UniPoly::constant(c.clone());
            s.gcd(g2).is_constant()
        })?;
        g1 = &tr.g1 + &UniPoly::constant(c.clone());
        moves.push(SpaceMove::Elementary {
            axis: 1,
            h: MPoly::constant(c),
        });
    }
    let (_, u, _) = g1.xgcd(g2);
    let g = g1.gcd(g2);
    // u·g1 ≡ g (a nonzero constant) modulo g2
    let inv = u.scale(&g.leading().inv().expect("nonzero gcd"));
    let target = residue_vector(&(&inv - &tr.g3), g2, d);
    let mut powers = vec![residue_vector(&UniPoly::one(), g2, d)];
    let mut pow = UniPoly::one();
    for deg in 0..d.max(1) {
        if deg > 0 {
            pow = (&pow * &g1).rem(g2).expect("nonzero modulus");
            powers.push(residue_vector(&pow, g2, d));
        }
        if let Some(x) = solve_columns(&powers, &target) {
            let q = UniPoly::from_coeffs(x);
            if !q.is_zero() {
                moves.push(SpaceMove::Elementary { axis: 3, h: y_poly(&q, 1) });
            }
            return Some(moves);
        }
    }
    None
}

/// Best-effort tame normalization of a triple to `g2 | g1·g3 − 1`.
///
/// `budget` counts the random moves `y2 ↦ y2 + r(y1, y3)` tried after the
/// direct attempt fails. Failure says nothing about whether a suitable
/// automorphism exists.
pub fn attempt_divisibility(tr: &C3Triple, seed: u64, budget: usize) -> Result<(SpaceTameWord, C3Triple)> {
    let mut r = rng::stream(seed, TAG_DIVISIBILITY);
    let mut word = SpaceTameWord::default();
    let mut cur = tr.clone();
    for round in 0..=budget {
        if round > 0 {
            let (a, b) = [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2)][r.gen_range(0..5)];
            let c = r.gen_range(1..=3i64) * if r.gen_bool(0.5) { 1 } else { -1 };
            let m = Monomial::from_pairs(vec![(Var::Y(1), a), (Var::Y(3), b)]);
            let mv = SpaceMove::Elementary {
                axis: 2,
                h: MPoly::term(Scalar::from_int(c), m),
            };
            cur = mv.apply(&cur);
            word.moves.push(mv);
        }
        if let Some(moves) = try_normalize(&cur) {
            for m in moves {
                cur = m.apply(&cur);
                word.moves.push(m);
            }
            debug_assert!(cur.is_divisible());
            return Ok((word, cur));
        }
    }
    Err(Error::HeuristicFailed { budget })
}

/// An origin-preserving automorphism of the plane with coordinates `(x, z)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PlaneMove {
    /// `(x, z)ᵀ ↦ A·(x, z)ᵀ`.
    Linear(ScalarMatrix),
    /// Axis 1: `x ↦ x + h(z)`; axis 2: `z ↦ z + h(x)`. `h(0) = 0`.
    Elementary { axis: usize, h: UniPoly },
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PlaneTameWord {
    pub moves: Vec<PlaneMove>,
}

impl PlaneMove {
    pub fn validate(&self) -> Result<()> {
        match self {
            PlaneMove::Linear(a) => {
                if a.rows() != 2 || a.cols() != 2 || a.det().is_zero() {
                    return Err(Error::InvalidGenerator("linear move must be an invertible 2x2 matrix".into()));
                }
            }
            PlaneMove::Elementary { axis, h } => {
                if !(1..=2).contains(axis) {
                    return Err(Error::InvalidGenerator(format!("axis {axis} out of range")));
                }
                if !h.coeff(0).is_zero() {
                    return Err(Error::InvalidGenerator("elementary move does not fix the origin".into()));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, (x, z): (&UniPoly, &UniPoly)) -> (UniPoly, UniPoly) {
        match self {
            PlaneMove::Linear(a) => (
                &x.scale(&a[(0, 0)]) + &z.scale(&a[(0, 1)]),
                &x.scale(&a[(1, 0)]) + &z.scale(&a[(1, 1)]),
            ),
            PlaneMove::Elementary { axis: 1, h } => (x + &h.compose(z), z.clone()),
            PlaneMove::Elementary { h, .. } => (x.clone(), z + &h.compose(x)),
        }
    }

    pub fn apply_point(&self, (x, z): (&Scalar, &Scalar)) -> (Scalar, Scalar) {
        match self {
            PlaneMove::Linear(a) => {
                let v = a.mul_vec(&[x.clone(), z.clone()]);
                (v[0].clone(), v[1].clone())
            }
            PlaneMove::Elementary { axis: 1, h } => (x + &h.eval(z), z.clone()),
            PlaneMove::Elementary { h, .. } => (x.clone(), z + &h.eval(x)),
        }
    }
}

impl PlaneTameWord {
    pub fn apply(&self, x: &UniPoly, z: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let mut cur = (x.clone(), z.clone());
        for m in &self.moves {
            m.validate()?;
            cur = m.apply((&cur.0, &cur.1));
        }
        Ok(cur)
    }
}

/// `t ↦ a·t + b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineReparam {
    pub a: Scalar,
    pub b: Scalar,
}

impl AffineReparam {
    pub fn identity() -> Self {
        AffineReparam {
            a: Scalar::one(),
            b: Scalar::zero(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == AffineReparam::identity()
    }

    pub fn as_poly(&self) -> UniPoly {
        UniPoly::from_coeffs(vec![self.b.clone(), self.a.clone()])
    }
}

fn origin_crossing(x: &UniPoly, z: &UniPoly) -> Option<String> {
    let g = x.gcd(z);
    if g.is_constant() {
        return None;
    }
    Some(match gaussian_rational_roots(&g).first() {
        Some(t0) => t0.render(),
        None => format!("a root of {}", g.render("t")),
    })
}

/// Straightens the plane curve `t ↦ (x(t), z(t))` to `t ↦ (1, t)` by
/// origin-preserving tame moves.
///
/// Each round removes the leading term of the coordinate of higher degree
/// with a power of the other one; once a coordinate is constant, a linear
/// move finishes. For an embedding the degrees always divide one another.
pub fn ams_straighten(x: &UniPoly, z: &UniPoly, budget: GroebnerBudget) -> Result<(PlaneTameWord, AffineReparam)> {
    let report = embedding_report(&[x.clone(), z.clone()], budget)?;
    if !report.is_embedding {
        return Err(Error::NotAnEmbedding(Box::new(report)));
    }
    if let Some(t0) = origin_crossing(x, z) {
        return Err(Error::OriginOnCurve(t0));
    }
    let mut word = PlaneTameWord::default();
    let (mut x, mut z) = (x.clone(), z.clone());
    while !x.is_constant() && !z.is_constant() {
        let (dx, dz) = (x.deg0(), z.deg0());
        let (axis, hi, lo, dh, dl) = if dx >= dz { (1, &x, &z, dx, dz) } else { (2, &z, &x, dz, dx) };
        if dh % dl != 0 {
            return Err(Error::DegreeObstruction(dh, dl));
        }
        let k = dh / dl;
        let c = &hi.leading() / &lo.leading().pow(k as u32);
        let mv = PlaneMove::Elementary {
            axis,
            h: UniPoly::monomial(-c, k),
        };
        (x, z) = mv.apply((&x, &z));
        word.moves.push(mv);
    }
    // one coordinate is a nonzero constant a, the other is b·t + c
    let (a, lin, swap) = if x.is_constant() { (x.coeff(0), &z, false) } else { (z.coeff(0), &x, true) };
    let (b, c) = (lin.coeff(1), lin.coeff(0));
    let ia = a.inv().expect("curve avoids the origin");
    let ib = b.inv().expect("embedding");
    let shift = -(&c * &(&ia * &ib));
    let rows = if swap {
        vec![vec![Scalar::zero(), ia], vec![ib, shift]]
    } else {
        vec![vec![ia, Scalar::zero()], vec![shift, ib]]
    };
    let m = ScalarMatrix::from_rows(rows).expect("2x2");
    if m != ScalarMatrix::identity(2) {
        word.moves.push(PlaneMove::Linear(m));
    }
    Ok((word, AffineReparam::identity()))
}

/// `h(y)/y` as a payload in the entry variable `v`.
fn divided_payload(h: &UniPoly, v: Var) -> EntryPoly {
    let q = UniPoly::from_coeffs(h.coeffs().iter().skip(1).cloned().collect());
    MPoly::from_unipoly(&q, v)
}

/// Lifts a plane word move by move to `SL_2`: the first column of the
/// lifted action is the plane action on the first column.
pub fn lift_plane_word(w: &PlaneTameWord) -> Result<AutWord> {
    let gens = w
        .moves
        .iter()
        .map(|m| {
            m.validate()?;
            Ok(match m {
                PlaneMove::Linear(a) => Generator::GlPair(a.clone()),
                PlaneMove::Elementary { axis: 1, h } => Generator::LeftElem {
                    i: 1,
                    j: 2,
                    p: divided_payload(h, Var::X(2, 1)),
                },
                PlaneMove::Elementary { h, .. } => Generator::LeftElem {
                    i: 2,
                    j: 1,
                    p: divided_payload(h, Var::X(1, 1)),
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    AutWord::new(2, gens)
}

/// Rectification of an `SL_2` curve whose first column embeds into ℂ².
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sl2Rectification {
    pub plane: PlaneTameWord,
    pub reparam: AffineReparam,
    pub certificate: Certificate,
}

pub fn rectify_sl2(c: &SlCurve, budget: GroebnerBudget) -> Result<Sl2Rectification> {
    if c.n() != 2 {
        return Err(Error::UnsupportedSize(c.n()));
    }
    let mut out = Sl2Rectification {
        plane: PlaneTameWord::default(),
        reparam: AffineReparam::identity(),
        certificate: Certificate {
            input: c.clone(),
            stages: Vec::new(),
            final_curve: SlCurve::standard(2),
        },
    };
    if c.is_standard() {
        return Ok(out);
    }
    let (plane, reparam) = ams_straighten(c.entry(0, 0), c.entry(1, 0), budget)?;
    if !reparam.is_identity() {
        return Err(Error::PreconditionFailed("straightening needs a reparametrization".into()));
    }
    let w = lift_plane_word(&plane)?;
    let c1 = apply_word(&w, c)?;
    debug_assert!(first_column_standard(&c1));
    let (w2, c2) = final_rectify(&c1)?;
    out.certificate.stages = vec![
        stage("ams-lift", w, c1, vec![Fact::FirstColumnStandard]),
        stage("final", w2, c2, vec![Fact::StandardEmbedding]),
    ];
    out.plane = plane;
    out.reparam = reparam;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autoword::apply_word_matrix;

    fn u(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(cs)
    }

    fn triple(a: &[i64], b: &[i64], c: &[i64]) -> C3Triple {
        C3Triple::new(u(a), u(b), u(c))
    }

    fn gb() -> GroebnerBudget {
        GroebnerBudget::default()
    }

    #[test]
    fn lift_examples() {
        let c = lift_c3_to_sl2(&triple(&[0, 1], &[1], &[0])).unwrap();
        assert_eq!(c.entry(0, 1), &u(&[-1]));
        let c = lift_c3_to_sl2(&triple(&[0, 1], &[1], &[0, 0, 1])).unwrap();
        assert_eq!(c.entry(0, 1), &u(&[-1, 0, 0, 1]));
        assert_eq!(c.entries().det(), UniPoly::one());
        match lift_c3_to_sl2(&triple(&[0, 1], &[0, 1], &[0, 1])) {
            Err(Error::DivisibilityFails(r)) => assert_eq!(r, "-1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn divisibility_examples() {
        let tr = triple(&[0, 1], &[1], &[0]);
        let (w, out) = attempt_divisibility(&tr, 0, 0).unwrap();
        assert!(w.moves.is_empty());
        assert_eq!(out, tr);

        let tr = triple(&[0, 1], &[0, 1], &[0, 1]);
        let (w, out) = attempt_divisibility(&tr, 0, 0).unwrap();
        let expected = vec![
            SpaceMove::Elementary { axis: 1, h: MPoly::one() },
            SpaceMove::Elementary { axis: 3, h: MPoly::one() },
        ];
        assert_eq!(w.moves, expected);
        assert_eq!(out, triple(&[1, 1], &[0, 1], &[1, 1]));
        assert_eq!(w.apply(&tr).unwrap(), out);

        let hard = triple(&[1, 0, 1], &[0, 0, 1], &[0, 1]);
        assert!(matches!(
            attempt_divisibility(&hard, 0, 0),
            Err(Error::HeuristicFailed { budget: 0 })
        ));
        let (w, out) = attempt_divisibility(&hard, 0, 8).unwrap();
        assert!(out.is_divisible());
        assert_eq!(w.apply(&hard).unwrap(), out);
        assert!(triple_embedding(&out, gb()).unwrap().is_embedding);
    }

    #[test]
    fn ams_examples() {
        let (w, rp) = ams_straighten(&u(&[1]), &u(&[0, 1]), gb()).unwrap();
        assert!(w.moves.is_empty() && rp.is_identity());

        let (x, z) = (u(&[1, 0, 1]), u(&[0, 1]));
        let (w, _) = ams_straighten(&x, &z, gb()).unwrap();
        assert_eq!(w.apply(&x, &z).unwrap(), (u(&[1]), u(&[0, 1])));

        // t ↦ (1, t³ + t) meets itself at t = 0, ±i
        assert!(matches!(
            ams_straighten(&u(&[1]), &u(&[0, 1, 0, 1]), gb()),
            Err(Error::NotAnEmbedding(_))
        ));
        assert!(matches!(
            ams_straighten(&u(&[0, 1]), &u(&[0, 0, 1]), gb()),
            Err(Error::OriginOnCurve(t)) if t == "0"
        ));
    }

    fn sl2_point(r: &mut rng::Rng) -> ScalarMatrix {
        loop {
            let mut v = || Scalar::from_ratio(r.gen_range(-9..=9), r.gen_range(1..=4));
            let (a, b, c) = (v(), v(), v());
            if a.is_zero() {
                continue;
            }
            // d = (1 + b·c)/a
            let d = &(&Scalar::one() + &(&b * &c)) / &a;
            return ScalarMatrix::from_rows(vec![vec![a, b], vec![c, d]]).unwrap();
        }
    }

    #[test]
    fn lifted_moves_commute_with_projection() {
        let moves = vec![
            PlaneMove::Linear(ScalarMatrix::from_rows(vec![
                vec![Scalar::from_int(2), Scalar::zero()],
                vec![Scalar::zero(), Scalar::from_ratio(1, 2)],
            ]).unwrap()),
            PlaneMove::Linear(ScalarMatrix::from_rows(vec![
                vec![Scalar::from_int(1), Scalar::from_int(3)],
                vec![Scalar::from_int(-1), Scalar::from_int(2)],
            ]).unwrap()),
            PlaneMove::Elementary { axis: 2, h: u(&[0, 0, 1]) },
            PlaneMove::Elementary { axis: 1, h: u(&[0, -2, 0, 5]) },
        ];
        let mut r = rng::stream(7, 1);
        for m in moves {
            let w = lift_plane_word(&PlaneTameWord { moves: vec![m.clone()] }).unwrap();
            for _ in 0..20 {
                let x = sl2_point(&mut r);
                let y = apply_word_matrix(&w, &x).unwrap();
                let want = m.apply_point((&x[(0, 0)], &x[(1, 0)]));
                assert_eq!((y[(0, 0)].clone(), y[(1, 0)].clone()), want);
            }
        }
        assert!(lift_plane_word(&PlaneTameWord::default()).unwrap().is_empty());
    }

    #[test]
    fn rectifies_lifted_plane_images() {
        let w = AutWord::new(
            2,
            vec![
                Generator::LeftElem { i: 1, j: 2, p: MPoly::from_unipoly(&u(&[1, 2]), Var::X(2, 1)) },
                Generator::RightElem { i: 1, j: 2, q: MPoly::from_unipoly(&u(&[0, 0, 1]), Var::X(1, 1)) },
                Generator::LeftElem { i: 2, j: 1, p: MPoly::from_unipoly(&u(&[0, -1]), Var::X(1, 1)) },
            ],
        )
        .unwrap();
        let c = apply_word(&w, &SlCurve::standard(2)).unwrap();
        let rect = rectify_sl2(&c, gb()).unwrap();
        rect.certificate.verify(gb()).unwrap();
        assert_eq!(apply_word(&rect.certificate.word(), &c).unwrap(), SlCurve::standard(2));
    }

    #[test]
    fn sl2_size_guard() {
        assert!(matches!(
            rectify_sl2(&SlCurve::standard(3), gb()),
            Err(Error::UnsupportedSize(3))
        ));
        let r = rectify_sl2(&SlCurve::standard(2), gb()).unwrap();
        assert!(r.certificate.stages.is_empty());
    }
}
