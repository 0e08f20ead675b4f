//! Rectification of embeddings `ℂ → SL_n`, `n ≥ 3`.
//!
//! The pipeline has four steps:
//! 1. Rank normalization: a random automorphism word so that `f(0) − f(1)`
//!    and `f′(0)` are invertible.
//! 2. Generic projection: a constant right multiplication after which the
//!    first `n − 1` columns already embed.
//! 3. First-column straightening: the first column becomes `(1, 0, …, 0, t)ᵀ`.
//! 4. Final rectification: `X ↦ X·f(x_n1)⁻¹·E_n1(x_n1)`.
//!
//! Every random choice is verified exactly before it is accepted. The
//! result is a [`Certificate`] that can be replayed without trusting the
//! search.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng as _;

use crate::autoword::{
    apply_word, check_generator, invert_word, random_unimodular, AutWord, Generator,
};
use crate::error::{Error, Result};
use crate::exactalg::{
    implicitize_section, lift_through_section, section_holds, xgcd_list, EntryPoly, GroebnerBudget, MPoly, PolyMatrix,
    Scalar, ScalarMatrix, UniPoly, Var,
};
use crate::rng;
use crate::slcurve::{columns_embed, is_embedding, rank_conditions, SlCurve};

const TAG_NORMALIZE: u64 = 0x6e6f_726d;
const TAG_PROJECT: u64 = 0x7072_6f6a;
const TAG_SEPARATE: u64 = 0x7365_7061;

/// Bounds for the randomized searches and the exact algebra behind them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_trials: usize,
    /// Upper bound for payload degrees drawn by the rank normalization.
    pub max_degree: u32,
    pub groebner: GroebnerBudget,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_trials: 64,
            max_degree: 24,
            groebner: GroebnerBudget::default(),
        }
    }
}

/// The separating covector of the straightening step and the constant
/// moves built from it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeparatingData {
    pub v: Vec<Scalar>,
    /// Left factor: unimodular, last row proportional to `vᵀ`.
    pub b: ScalarMatrix,
    /// Right factor: signed cyclic column shift moving the projected
    /// columns to positions `2..n`.
    pub p: ScalarMatrix,
}

/// Bezout cofactors `p̃_k`, the section `τ` and the lifted payloads `p_k`,
/// indexed by column `k = 2..n`.
///
/// `p_k` agrees with `p̃_k ∘ τ` on the column block of the curve (both
/// restrict to `p̃_k(t)`), but is assembled from products of single entry
/// variables so that it stays sparse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BezoutSolution {
    pub tildes: Vec<UniPoly>,
    pub section: EntryPoly,
    pub lifted: Vec<EntryPoly>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Fact {
    /// `det(f(0) − f(1)) ≠ 0` and `det f′(0) ≠ 0`.
    RankConditions,
    /// The first `n − 1` columns embed.
    TruncationEmbeds,
    Separating(SeparatingData),
    Bezout(BezoutSolution),
    /// The lower left entry is `t`.
    CornerIsT,
    /// The first column is `(1, 0, …, 0, t)ᵀ`.
    FirstColumnStandard,
    /// The curve is `E_n1(t)`.
    StandardEmbedding,
}

impl Fact {
    pub fn name(&self) -> &'static str {
        match self {
            Fact::RankConditions => "rank-conditions",
            Fact::TruncationEmbeds => "truncation-embeds",
            Fact::Separating(_) => "separating",
            Fact::Bezout(_) => "bezout",
            Fact::CornerIsT => "corner-is-t",
            Fact::FirstColumnStandard => "first-column-standard",
            Fact::StandardEmbedding => "standard-embedding",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Stage {
    pub name: String,
    pub word: AutWord,
    pub curve: SlCurve,
    pub facts: Vec<Fact>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    pub input: SlCurve,
    pub stages: Vec<Stage>,
    pub final_curve: SlCurve,
}

impl Certificate {
    /// Concatenation of all stage words.
    pub fn word(&self) -> AutWord {
        let mut w = AutWord::empty(self.input.n());
        for s in &self.stages {
            w = w.then(&s.word).expect("stage words share n");
        }
        w
    }

    /// Replays every stage and rechecks every recorded fact. Returns a
    /// description of the first disagreement.
    pub fn verify(&self, budget: GroebnerBudget) -> std::result::Result<(), String> {
        let n = self.input.n();
        let mut cur = self.input.clone();
        for (k, s) in self.stages.iter().enumerate() {
            let label = format!("stage {} ({})", k + 1, s.name);
            if s.word.n() != n || s.curve.n() != n {
                return Err(format!("{label}: size mismatch"));
            }
            for g in s.word.gens() {
                check_generator(g.clone(), n).map_err(|e| format!("{label}: {e}"))?;
            }
            let next = apply_word(&s.word, &cur).map_err(|e| format!("{label}: {e}"))?;
            if next != s.curve {
                return Err(format!("{label}: replayed curve differs from the recorded curve"));
            }
            for f in &s.facts {
                check_fact(f, &cur, &s.curve, &s.word, budget)
                    .map_err(|msg| format!("{label}: fact {} fails: {msg}", f.name()))?;
            }
            cur = next;
        }
        if cur != self.final_curve {
            return Err("final curve differs from the replayed curve".into());
        }
        if !self.final_curve.is_standard() {
            return Err("final curve is not the standard embedding".into());
        }
        Ok(())
    }
}

fn check_fact(
    f: &Fact,
    before: &SlCurve,
    after: &SlCurve,
    word: &AutWord,
    budget: GroebnerBudget,
) -> std::result::Result<(), String> {
    let n = after.n();
    let ok = |b: bool, msg: &str| if b { Ok(()) } else { Err(msg.to_string()) };
    match f {
        Fact::RankConditions => ok(rank_conditions(after), "rank conditions do not hold"),
        Fact::TruncationEmbeds => match columns_embed(after, 0..n - 1, budget) {
            Ok(b) => ok(b, "first n-1 columns do not embed"),
            Err(e) => Err(format!("could not re-verify: {e}")),
        },
        Fact::Separating(sep) => {
            ok(separating_holds(sep, before), "separating data does not verify")?;
            let expected = vec![Generator::ConstLeft(sep.b.clone()), Generator::ConstRight(sep.p.clone())];
            ok(word.gens() == expected.as_slice(), "stage word is not B·X·P")
        }
        Fact::Bezout(sol) => {
            ok(bezout_holds(sol, before), "Bezout or section identity fails")?;
            ok(
                word.gens() == bezout_generators(sol).as_slice(),
                "stage word does not match the lifted payloads",
            )
        }
        Fact::CornerIsT => ok(after.entry(n - 1, 0) == &UniPoly::t(), "lower left entry is not t"),
        Fact::FirstColumnStandard => ok(first_column_standard(after), "first column is not (1,0,...,0,t)"),
        Fact::StandardEmbedding => ok(after.is_standard(), "curve is not E_n1(t)"),
    }
}

/// Exhaustive re-check of a [`SeparatingData`] against the curve it was
/// chosen for.
pub fn separating_holds(sep: &SeparatingData, c: &SlCurve) -> bool {
    let n = c.n();
    if sep.v.len() != n || sep.b.rows() != n || sep.p.rows() != n || sep.b.cols() != n || sep.p.cols() != n {
        return false;
    }
    if !sep.b.det().is_one() || !sep.p.det().is_one() {
        return false;
    }
    // last row of B is λ·v for some λ ≠ 0
    let Some(m) = sep.v.iter().position(|x| !x.is_zero()) else { return false };
    let lambda = &sep.b[(n - 1, m)] / &sep.v[m];
    if lambda.is_zero() || (0..n).any(|j| sep.b[(n - 1, j)] != &lambda * &sep.v[j]) {
        return false;
    }
    if sep.p != column_shift(n) {
        return false;
    }
    covector_gcd_is_unit(&sep.v, c)
}

fn covector_gcd_is_unit(v: &[Scalar], c: &SlCurve) -> bool {
    matches!(xgcd_list(&covector_block(v, c)), Ok((g, _)) if g == UniPoly::one())
}

/// `vᵀ·A(t)` for the block `A` of the first `n − 1` columns.
fn covector_block(v: &[Scalar], c: &SlCurve) -> Vec<UniPoly> {
    let n = c.n();
    (0..n - 1)
        .map(|j| {
            (0..n).fold(UniPoly::zero(), |acc, i| &acc + &c.entry(i, j).scale(&v[i]))
        })
        .collect()
}

/// `Σ f_nk·p̃_k = t − f_n1`, `τ` restricts to `t` on columns `2..n`, and
/// `p_k` restricts to `p̃_k = (p̃_k ∘ τ)|` there, with support in columns `2..n`.
pub fn bezout_holds(sol: &BezoutSolution, c: &SlCurve) -> bool {
    let n = c.n();
    if sol.tildes.len() != n - 1 || sol.lifted.len() != n - 1 {
        return false;
    }
    let lhs = (1..n).fold(UniPoly::zero(), |acc, k| &acc + &(c.entry(n - 1, k) * &sol.tildes[k - 1]));
    if lhs != &UniPoly::t() - c.entry(n - 1, 0) {
        return false;
    }
    let block = block_assignments(c);
    if !section_holds(&sol.section, &block) {
        return false;
    }
    sol.tildes
        .iter()
        .zip(&sol.lifted)
        .all(|(pt, pk)| restricts_to(pk, &block, pt))
        && sol
            .lifted
            .iter()
            .all(|p| p.support().iter().all(|v| matches!(v, Var::X(_, j) if *j >= 2)))
}

pub(crate) fn first_column_standard(c: &SlCurve) -> bool {
    let n = c.n();
    (0..n).all(|i| {
        let want = if i == 0 {
            UniPoly::one()
        } else if i == n - 1 {
            UniPoly::t()
        } else {
            UniPoly::zero()
        };
        c.entry(i, 0) == &want
    })
}

fn restricts_to(p: &EntryPoly, block: &BTreeMap<Var, UniPoly>, target: &UniPoly) -> bool {
    p.support().iter().all(|v| block.contains_key(v)) && &p.eval_unipoly(&|v| block[&v].clone()) == target
}

fn block_assignments(c: &SlCurve) -> BTreeMap<Var, UniPoly> {
    let n = c.n();
    let mut m = BTreeMap::new();
    for i in 0..n {
        for j in 1..n {
            m.insert(Var::X(i as u8 + 1, j as u8 + 1), c.entry(i, j).clone());
        }
    }
    m
}

fn require_n3(c: &SlCurve) -> Result<()> {
    if c.n() < 3 {
        return Err(Error::PreconditionFailed(format!(
            "this step needs n >= 3, got n = {}",
            c.n()
        )));
    }
    Ok(())
}

/// `rank(f(0) − f(1)) + rank f′(0)`; the rank conditions hold at `2n`.
fn rank_score(c: &SlCurve) -> usize {
    let zero = Scalar::zero();
    c.eval(&zero).sub(&c.eval(&Scalar::one())).rank() + c.derivative_at(&zero).rank()
}

/// Every move `row i += c·x_kl·row j` and `col j += c·x_kl·col i` with a
/// single entry variable as payload, `c` drawn from the seeded stream.
fn degree_one_moves(n: usize, r: &mut rng::Rng) -> Vec<Generator> {
    let mut out = Vec::new();
    let mut coef = || {
        let v: i64 = r.gen_range(1..=3);
        Scalar::from_int(if r.gen_bool(0.5) { v } else { -v })
    };
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            for k in 1..=n {
                for l in 1..=n {
                    let x = MPoly::var(Var::X(k as u8, l as u8));
                    if k != i {
                        out.push(Generator::LeftElem { i, j, p: x.scale(&coef()) });
                    }
                    if l != j {
                        out.push(Generator::RightElem { i, j, q: x.scale(&coef()) });
                    }
                }
            }
        }
    }
    out
}

/// Seeded greedy search for a word after which the rank conditions hold.
///
/// Each round tries every single-variable elementary move and keeps the
/// one that raises `rank(f(0) − f(1)) + rank f′(0)` the most, preferring
/// low degree; when no move helps, a random constant move on both sides
/// changes the directions the next round can reach. Whole random words
/// reach the same goal but multiply degrees, which the later exact
/// embedding tests cannot afford.
pub fn normalize_rank(c: &SlCurve, seed: u64, budget: &SearchBudget) -> Result<(AutWord, SlCurve)> {
    let n = c.n();
    let mut word = AutWord::empty(n);
    let mut cur = c.clone();
    let mut score = rank_score(&cur);
    let mut r = rng::stream(seed, TAG_NORMALIZE);
    for _ in 0..budget.max_trials {
        if score == 2 * n {
            return Ok((word, cur));
        }
        let mut best: Option<(usize, usize, Generator, SlCurve)> = None;
        for g in degree_one_moves(n, &mut r) {
            let out = apply_word(&AutWord::single(n, g.clone())?, &cur)?;
            let s = rank_score(&out);
            if s <= score {
                continue;
            }
            let d = out.degree();
            let better = match &best {
                None => true,
                Some((bs, bd, _, _)) => s > *bs || (s == *bs && d < *bd),
            };
            if better {
                best = Some((s, d, g, out));
            }
        }
        match best {
            Some((s, _, g, out)) => {
                word.push(g)?;
                cur = out;
                score = s;
            }
            None => {
                let mix = vec![
                    Generator::ConstLeft(random_unimodular(&mut r, n, 2 * n, 2)),
                    Generator::ConstRight(random_unimodular(&mut r, n, 2 * n, 2)),
                ];
                let w = AutWord::new(n, mix)?;
                cur = apply_word(&w, &cur)?;
                word = word.then(&w)?;
            }
        }
    }
    if score == 2 * n {
        return Ok((word, cur));
    }
    Err(Error::SearchExhausted {
        trials: budget.max_trials,
    })
}

/// A constant right multiplication after which the first `n − 1` columns
/// form a closed embedding. The identity is tried first.
pub fn generic_projection(c: &SlCurve, seed: u64, budget: &SearchBudget) -> Result<(AutWord, SlCurve)> {
    require_n3(c)?;
    if !rank_conditions(c) {
        return Err(Error::PreconditionFailed("rank conditions do not hold".into()));
    }
    let n = c.n();
    let mut r = rng::stream(seed, TAG_PROJECT);
    for trial in 0..budget.max_trials {
        let b = if trial == 0 {
            ScalarMatrix::identity(n)
        } else {
            let bound = 3 + (trial / 8) as i64;
            random_unimodular(&mut r, n, 2 * n, bound)
        };
        let w = AutWord::single(n, Generator::ConstRight(b))?;
        let out = apply_word(&w, c)?;
        if columns_embed(&out, 0..n - 1, budget.groebner)? {
            return Ok((w, out));
        }
    }
    Err(Error::SearchExhausted {
        trials: budget.max_trials,
    })
}

/// `X·P`: new column 1 is `±` old column `n`, new column `k` is old
/// column `k − 1`; the sign makes `det P = 1`.
fn column_shift(n: usize) -> ScalarMatrix {
    let sign = if n % 2 == 1 { Scalar::one() } else { -Scalar::one() };
    ScalarMatrix::from_fn(n, n, |i, j| {
        if j == 0 && i == n - 1 {
            sign.clone()
        } else if j > 0 && i == j - 1 {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// Unimodular matrix whose rows are `e_k` (`k ≠ m`) followed by `λ·vᵀ`.
fn covector_matrix(v: &[Scalar]) -> ScalarMatrix {
    let n = v.len();
    let m = v.iter().position(|x| !x.is_zero()).expect("nonzero covector");
    let others: Vec<usize> = (0..n).filter(|&k| k != m).collect();
    let mut b = ScalarMatrix::from_fn(n, n, |i, j| {
        if i < n - 1 {
            if others[i] == j {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        } else {
            v[j].clone()
        }
    });
    let lambda = b.det().inv().expect("v_m != 0");
    for j in 0..n {
        b[(n - 1, j)] = &b[(n - 1, j)] * &lambda;
    }
    b
}

/// Unimodular `(n−1)×(n−1)` matrix sending `w ≠ 0` to `e_1`.
fn to_first_basis_vector(w: &[Scalar]) -> ScalarMatrix {
    let d = w.len();
    let m = w.iter().position(|x| !x.is_zero()).expect("nonzero vector");
    let others: Vec<usize> = (0..d).filter(|&k| k != m).collect();
    // columns: w, then e_k for k ≠ m
    let mut basis = ScalarMatrix::from_fn(d, d, |i, j| {
        if j == 0 {
            w[i].clone()
        } else if others[j - 1] == i {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let inv = basis.det().inv().expect("independent columns");
    for i in 0..d {
        basis[(i, 1)] = &basis[(i, 1)] * &inv;
    }
    basis.inverse().expect("unimodular")
}

fn choose_separating(c: &SlCurve, seed: u64, budget: &SearchBudget) -> Result<SeparatingData> {
    let n = c.n();
    let mut r = rng::stream(seed, TAG_SEPARATE);
    for trial in 0..budget.max_trials {
        let bound = 3 + (trial / 8) as i64;
        let v: Vec<Scalar> = (0..n).map(|_| Scalar::from_int(r.gen_range(-bound..=bound))).collect();
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        if covector_gcd_is_unit(&v, c) {
            return Ok(SeparatingData {
                b: covector_matrix(&v),
                p: column_shift(n),
                v,
            });
        }
    }
    Err(Error::SearchExhausted {
        trials: budget.max_trials,
    })
}

fn solve_bezout(c: &SlCurve, budget: &SearchBudget) -> Result<BezoutSolution> {
    let n = c.n();
    let last: Vec<UniPoly> = (1..n).map(|k| c.entry(n - 1, k).clone()).collect();
    let (g, cof) = xgcd_list(&last)?;
    if g != UniPoly::one() {
        return Err(Error::PreconditionFailed(format!(
            "last row of the column block has gcd {}",
            g.render("t")
        )));
    }
    let target = &UniPoly::t() - c.entry(n - 1, 0);
    let mut tildes: Vec<UniPoly> = cof.iter().map(|q| q * &target).collect();
    reduce_cofactors(&last, &mut tildes);
    let block = block_assignments(c);
    let section = implicitize_section(&block, budget.groebner)?;
    let lifted = tildes
        .iter()
        .map(|p| lift_through_section(p, &block, budget.groebner))
        .collect::<Result<Vec<_>>>()?;
    Ok(BezoutSolution {
        tildes,
        section,
        lifted,
    })
}

/// Lowers cofactor degrees along the syzygies `f_j·e_k − f_k·e_j`: any
/// cofactor whose degree exceeds every entry degree is reduced modulo the
/// entry `f_j` of largest degree and the quotient is moved onto `p̃_j`. The
/// Bezout sum is unchanged.
fn reduce_cofactors(entries: &[UniPoly], tildes: &mut [UniPoly]) {
    let dmax = entries.iter().map(UniPoly::deg0).max().unwrap_or(0);
    let Some(j) = entries.iter().position(|f| f.deg0() == dmax && !f.is_zero()) else { return };
    for k in 0..tildes.len() {
        if k == j || tildes[k].deg0() <= dmax {
            continue;
        }
        let (q, r) = tildes[k].div_rem(&entries[j]).expect("nonzero divisor");
        tildes[j] = &tildes[j] + &(&q * &entries[k]);
        tildes[k] = r;
    }
}

fn bezout_generators(sol: &BezoutSolution) -> Vec<Generator> {
    sol.lifted
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(k, p)| Generator::RightElem {
            i: k + 2,
            j: 1,
            q: p.clone(),
        })
        .collect()
}

pub(crate) fn stage(name: &str, word: AutWord, curve: SlCurve, facts: Vec<Fact>) -> Stage {
    Stage {
        name: name.to_string(),
        word,
        curve,
        facts,
    }
}

/// The straightening step as three certified stages: separation,
/// Bezout lift, and clearing.
pub fn straighten_stages(c: &SlCurve, seed: u64, budget: &SearchBudget) -> Result<Vec<Stage>> {
    require_n3(c)?;
    let n = c.n();
    let mut stages = Vec::new();

    let sep = choose_separating(c, seed, budget)?;
    let w = AutWord::new(n, vec![Generator::ConstLeft(sep.b.clone()), Generator::ConstRight(sep.p.clone())])?;
    let c1 = apply_word(&w, c)?;
    stages.push(stage("separate", w, c1.clone(), vec![Fact::Separating(sep)]));

    let sol = solve_bezout(&c1, budget)?;
    let w = AutWord::new(n, bezout_generators(&sol))?;
    let c2 = apply_word(&w, &c1)?;
    if c2.entry(n - 1, 0) != &UniPoly::t() {
        return Err(Error::PreconditionFailed("Bezout lift did not produce corner t".into()));
    }
    stages.push(stage("bezout", w, c2.clone(), vec![Fact::Bezout(sol), Fact::CornerIsT]));

    let w = clearing_word(&c2)?;
    let c3 = apply_word(&w, &c2)?;
    stages.push(stage("clear", w, c3, vec![Fact::FirstColumnStandard]));
    Ok(stages)
}

/// Constant move sending the first column at `t = 0` to `e_1`, then row
/// operations with payloads in `x_n1` that remove the remaining `t`-terms.
fn clearing_word(c: &SlCurve) -> Result<AutWord> {
    let n = c.n();
    let mut word = AutWord::empty(n);
    let zero = Scalar::zero();
    let w0: Vec<Scalar> = (0..n - 1).map(|i| c.entry(i, 0).eval(&zero)).collect();
    let cp = to_first_basis_vector(&w0);
    let big = ScalarMatrix::from_fn(n, n, |i, j| {
        if i < n - 1 && j < n - 1 {
            cp[(i, j)].clone()
        } else if i == j {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let mut cur = c.clone();
    if big != ScalarMatrix::identity(n) {
        let g = Generator::ConstLeft(big);
        cur = apply_word(&AutWord::single(n, g.clone())?, &cur)?;
        word.push(g)?;
    }
    let s = UniPoly::t();
    for i in 0..n - 1 {
        let ci = cur.entry(i, 0);
        let delta = if i == 0 { UniPoly::one() } else { UniPoly::zero() };
        let num = ci - &delta;
        let (r, rem) = num.div_rem(&s).expect("t != 0");
        if !rem.is_zero() {
            return Err(Error::DivisionObstruction(format!(
                "entry ({}, 1) at t = 0 is {}",
                i + 1,
                ci.coeff(0).render()
            )));
        }
        if !r.is_zero() {
            word.push(Generator::LeftElem {
                i: i + 1,
                j: n,
                p: -&MPoly::from_unipoly(&r, Var::X(n as u8, 1)),
            })?;
        }
    }
    Ok(word)
}

/// Makes the first column `(1, 0, …, 0, t)ᵀ`.
pub fn straighten_first_column(c: &SlCurve, seed: u64, budget: &SearchBudget) -> Result<(AutWord, SlCurve)> {
    let stages = straighten_stages(c, seed, budget)?;
    let mut w = AutWord::empty(c.n());
    for s in &stages {
        w = w.then(&s.word)?;
    }
    let out = stages.last().expect("three stages").curve.clone();
    Ok((w, out))
}

/// `X ↦ X·c(x_n1)⁻¹·E_n1(x_n1)` for a curve with standard first column.
pub fn final_rectify(c: &SlCurve) -> Result<(AutWord, SlCurve)> {
    if !first_column_standard(c) {
        return Err(Error::PreconditionFailed("first column is not (1,0,...,0,t)".into()));
    }
    let n = c.n();
    let m = c
        .entries()
        .adjugate()
        .mul(&PolyMatrix::elementary(n, n - 1, 0, UniPoly::t()));
    let w = AutWord::single(n, Generator::CurveRightMul(m))?;
    let out = apply_word(&w, c)?;
    debug_assert!(out.is_standard());
    Ok((w, out))
}

/// Full certified rectification to `E_n1(t)`.
pub fn rectify(c: &SlCurve, seed: u64, budget: &SearchBudget) -> Result<Certificate> {
    if c.n() < 3 {
        return Err(Error::UnsupportedSize(c.n()));
    }
    let report = is_embedding(c, budget.groebner)?;
    if !report.is_embedding {
        return Err(Error::NotAnEmbedding(Box::new(report)));
    }
    let n = c.n();
    let mut stages = Vec::new();
    if !c.is_standard() {
        let (w, c1) = normalize_rank(c, rng::derive(seed, 1), budget)?;
        stages.push(stage("normalize-rank", w, c1.clone(), vec![Fact::RankConditions]));
        let (w, c2) = generic_projection(&c1, rng::derive(seed, 2), budget)?;
        stages.push(stage("projection", w, c2.clone(), vec![Fact::TruncationEmbeds]));
        let st = straighten_stages(&c2, rng::derive(seed, 3), budget)?;
        let c3 = st.last().expect("three stages").curve.clone();
        stages.extend(st);
        let (w, c4) = final_rectify(&c3)?;
        stages.push(stage("final", w, c4, vec![Fact::StandardEmbedding]));
    }
    Ok(Certificate {
        input: c.clone(),
        final_curve: SlCurve::standard(n),
        stages,
    })
}

/// A word carrying `f` to `g`: rectify `f`, then undo the rectification of `g`.
pub fn equivalence(f: &SlCurve, g: &SlCurve, seed: u64, budget: &SearchBudget) -> Result<AutWord> {
    if f.n() != g.n() {
        return Err(Error::SizeMismatch(format!("n = {} versus n = {}", f.n(), g.n())));
    }
    let cf = rectify(f, seed, budget)?;
    let cg = rectify(g, seed, budget)?;
    cf.word().then(&invert_word(&cg.word()))
}
