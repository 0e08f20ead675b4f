//! Buchberger's algorithm with the sugar selection strategy and the
//! Gebauer–Möller pair criteria.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::mpoly::{MPoly, Monomial, Var};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Monomial order over an ordered variable list (first variable largest).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Block order: graded reverse lex on the first `k` variables, ties
    /// broken by graded reverse lex on the rest. Eliminates the first block.
    Elimination(usize),
}

/// Deterministic resource limits; exceeding any of them aborts the run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerBudget {
    /// Maximum number of single-term reduction steps.
    pub max_steps: u64,
    pub max_basis: usize,
    pub max_degree: u32,
}

impl Default for GroebnerBudget {
    fn default() -> Self {
        GroebnerBudget {
            max_steps: 1_000_000,
            max_basis: 5_000,
            max_degree: 2_000,
        }
    }
}

impl GroebnerBudget {
    pub fn with_steps(max_steps: u64) -> Self {
        GroebnerBudget {
            max_steps,
            ..GroebnerBudget::default()
        }
    }
}

type Exp = Box<[u32]>;

#[derive(Clone, Debug)]
struct Term {
    exp: Exp,
    coef: Scalar,
}

#[derive(Clone, Debug)]
struct Poly {
    // sorted strictly descending in the active order
    terms: Vec<Term>,
    sugar: u32,
}

struct Ctx {
    nvars: usize,
    order: MonomialOrder,
    budget: GroebnerBudget,
    steps: u64,
}

fn deg(e: &[u32]) -> u32 {
    e.iter().sum()
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    deg(a).cmp(&deg(b)).then_with(|| {
        for k in (0..a.len()).rev() {
            if a[k] != b[k] {
                return b[k].cmp(&a[k]);
            }
        }
        Ordering::Equal
    })
}

impl Ctx {
    fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.order {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Elimination(k) => {
                let k = k.min(self.nvars);
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }

    fn from_mpoly(&self, p: &MPoly, vars: &[Var]) -> Result<Poly> {
        let mut terms = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms() {
            let mut e = vec![0u32; self.nvars];
            for &(v, k) in m.pairs() {
                let idx = vars.iter().position(|&w| w == v).ok_or_else(|| {
                    Error::VariableContext(format!("variable {v} not in the ideal's context"))
                })?;
                e[idx] = k;
            }
            terms.push(Term {
                exp: e.into_boxed_slice(),
                coef: c.clone(),
            });
        }
        terms.sort_by(|a, b| self.cmp(&b.exp, &a.exp));
        let sugar = terms.iter().map(|t| deg(&t.exp)).max().unwrap_or(0);
        Ok(Poly { terms, sugar })
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget.max_steps {
            return Err(Error::ResourceExceeded(format!(
                "Groebner reduction budget of {} steps exhausted",
                self.budget.max_steps
            )));
        }
        Ok(())
    }

    /// `a - c·x^shift·b`, both sorted descending.
    fn sub_mul(&self, a: &[Term], c: &Scalar, shift: &[u32], b: &[Term]) -> Vec<Term> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let shifted = |t: &Term| -> Exp { t.exp.iter().zip(shift).map(|(x, y)| x + y).collect() };
        let (mut i, mut j) = (0, 0);
        let mut bj: Option<Exp> = b.first().map(shifted);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), &bj) {
                (Some(ta), Some(eb)) => self.cmp(&ta.exp, eb),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => unreachable!(),
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        exp: bj.take().unwrap(),
                        coef: -(c * &b[j].coef),
                    });
                    j += 1;
                    bj = b.get(j).map(shifted);
                }
                Ordering::Equal => {
                    let v = &a[i].coef - &(c * &b[j].coef);
                    if !v.is_zero() {
                        out.push(Term {
                            exp: a[i].exp.clone(),
                            coef: v,
                        });
                    }
                    i += 1;
                    j += 1;
                    bj = b.get(j).map(shifted);
                }
            }
        }
        out
    }

    /// Full reduction of `p` modulo `basis` (all monic); result is monic.
    fn reduce(&mut self, mut p: Poly, basis: &[Poly]) -> Result<Poly> {
        let mut done: Vec<Term> = Vec::new();
        let mut rest = std::mem::take(&mut p.terms);
        let mut start = 0;
        while start < rest.len() {
            let lead = &rest[start];
            match basis.iter().find(|g| divides(&g.terms[0].exp, &lead.exp)) {
                Some(g) => {
                    self.tick()?;
                    let shift: Vec<u32> = lead
                        .exp
                        .iter()
                        .zip(g.terms[0].exp.iter())
                        .map(|(a, b)| a - b)
                        .collect();
                    p.sugar = p.sugar.max(g.sugar + deg(&shift));
                    let c = lead.coef.clone();
                    rest = self.sub_mul(&rest[start..], &c, &shift, &g.terms);
                    start = 0;
                }
                None => {
                    done.push(rest[start].clone());
                    start += 1;
                }
            }
        }
        p.terms = done;
        make_monic(&mut p);
        Ok(p)
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn make_monic(p: &mut Poly) {
    if let Some(l) = p.terms.first() {
        if !l.coef.is_one() {
            let inv = l.coef.inv().expect("nonzero leading coefficient");
            for t in &mut p.terms {
                t.coef = &t.coef * &inv;
            }
        }
    }
}

fn is_const(p: &Poly) -> bool {
    p.terms.len() == 1 && p.terms[0].exp.iter().all(|&e| e == 0)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exp,
    sugar: u32,
}

fn to_mpoly(p: &Poly, vars: &[Var]) -> MPoly {
    MPoly::from_terms(p.terms.iter().map(|t| {
        (
            Monomial::from_pairs(vars.iter().copied().zip(t.exp.iter().copied()).collect()),
            t.coef.clone(),
        )
    }))
}

/// Computes the reduced Gröbner basis of `gens` over the ordered variable
/// list `vars`, sorted by leading monomial, largest first. The zero ideal
/// yields an empty basis.
pub fn groebner(
    gens: &[MPoly],
    vars: &[Var],
    order: MonomialOrder,
    budget: GroebnerBudget,
) -> Result<Vec<MPoly>> {
    let mut ctx = Ctx {
        nvars: vars.len(),
        order,
        budget,
        steps: 0,
    };
    let basis = buchberger(&mut ctx, gens, vars)?;
    Ok(basis.iter().map(|p| to_mpoly(p, vars)).collect())
}

fn buchberger(ctx: &mut Ctx, gens: &[MPoly], vars: &[Var]) -> Result<Vec<Poly>> {
    let mut input: Vec<Poly> = Vec::new();
    for g in gens {
        let mut p = ctx.from_mpoly(g, vars)?;
        if p.terms.is_empty() {
            continue;
        }
        make_monic(&mut p);
        if is_const(&p) {
            return Ok(vec![p]);
        }
        input.push(p);
    }
    // low-degree generators first
    input.sort_by(|a, b| {
        a.sugar
            .cmp(&b.sugar)
            .then_with(|| a.terms.len().cmp(&b.terms.len()))
            .then_with(|| ctx.cmp(&a.terms[0].exp, &b.terms[0].exp))
    });

    let mut all: Vec<Poly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for p in input {
        let cur: Vec<Poly> = active_polys(&all, &active);
        let h = ctx.reduce(p, &cur)?;
        if h.terms.is_empty() {
            continue;
        }
        if is_const(&h) {
            return Ok(vec![h]);
        }
        add_with_update(&mut all, &mut active, &mut pairs, h);
    }

    while !pairs.is_empty() {
        // sugar strategy: smallest sugar, then smallest lcm, then indices
        let (best, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| ctx.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        if deg(&pair.lcm) > ctx.budget.max_degree {
            return Err(Error::ResourceExceeded(format!(
                "Groebner degree budget of {} exceeded",
                ctx.budget.max_degree
            )));
        }
        let s = spoly(ctx, &all[pair.i], &all[pair.j], &pair.lcm);
        let cur = active_polys(&all, &active);
        let h = ctx.reduce(s, &cur)?;
        if h.terms.is_empty() {
            continue;
        }
        if is_const(&h) {
            return Ok(vec![h]);
        }
        add_with_update(&mut all, &mut active, &mut pairs, h);
        if active.iter().filter(|&&a| a).count() > ctx.budget.max_basis {
            return Err(Error::ResourceExceeded(format!(
                "Groebner basis size budget of {} exceeded",
                ctx.budget.max_basis
            )));
        }
    }

    interreduce(ctx, active_polys(&all, &active))
}

fn active_polys(all: &[Poly], active: &[bool]) -> Vec<Poly> {
    all.iter()
        .zip(active)
        .filter(|(_, &a)| a)
        .map(|(p, _)| p.clone())
        .collect()
}

fn spoly(ctx: &Ctx, f: &Poly, g: &Poly, l: &[u32]) -> Poly {
    let sf: Vec<u32> = l.iter().zip(f.terms[0].exp.iter()).map(|(a, b)| a - b).collect();
    let sg: Vec<u32> = l.iter().zip(g.terms[0].exp.iter()).map(|(a, b)| a - b).collect();
    let fs = ctx.sub_mul(&[], &-Scalar::one(), &sf, &f.terms);
    let terms = ctx.sub_mul(&fs, &Scalar::one(), &sg, &g.terms);
    Poly {
        terms,
        sugar: (f.sugar + deg(&sf)).max(g.sugar + deg(&sg)),
    }
}

/// Gebauer–Möller installation of a new basis element.
fn add_with_update(
    all: &mut Vec<Poly>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    h: Poly,
) {
    let k = all.len();
    let lh = h.terms[0].exp.clone();
    let mk_pair = |i: usize, all: &[Poly]| -> Pair {
        let li = &all[i].terms[0].exp;
        let l = lcm(li, &lh);
        let si: u32 = all[i].sugar + deg(&l) - deg(li);
        let sh: u32 = h.sugar + deg(&l) - deg(&lh);
        Pair {
            i,
            j: k,
            lcm: l,
            sugar: si.max(sh),
        }
    };
    let mut c: Vec<Pair> = (0..k).filter(|&i| active[i]).map(|i| mk_pair(i, all)).collect();
    let mut d: Vec<Pair> = Vec::new();
    while !c.is_empty() {
        let p = c.remove(0);
        let li = &all[p.i].terms[0].exp;
        let keep = coprime(li, &lh)
            || (!c.iter().any(|q| divides(&q.lcm, &p.lcm))
                && !d.iter().any(|q| divides(&q.lcm, &p.lcm)));
        if keep {
            d.push(p);
        }
    }
    let e: Vec<Pair> = d
        .into_iter()
        .filter(|p| !coprime(&all[p.i].terms[0].exp, &lh))
        .collect();
    pairs.retain(|p| {
        if !divides(&lh, &p.lcm) {
            return true;
        }
        let lih = lcm(&all[p.i].terms[0].exp, &lh);
        let ljh = lcm(&all[p.j].terms[0].exp, &lh);
        lih == p.lcm || ljh == p.lcm
    });
    pairs.extend(e);
    for i in 0..k {
        if active[i] && divides(&lh, &all[i].terms[0].exp) {
            active[i] = false;
        }
    }
    all.push(h);
    active.push(true);
}

fn interreduce(ctx: &mut Ctx, mut basis: Vec<Poly>) -> Result<Vec<Poly>> {
    basis.sort_by(|a, b| ctx.cmp(&a.terms[0].exp, &b.terms[0].exp));
    let mut minimal: Vec<Poly> = Vec::new();
    for p in basis {
        if !minimal
            .iter()
            .any(|q| divides(&q.terms[0].exp, &p.terms[0].exp))
        {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != idx)
            .map(|(_, p)| p.clone())
            .collect();
        // the leading term is irreducible by a minimal basis; reduce the tail
        let p = minimal[idx].clone();
        let lead = p.terms[0].clone();
        let tail = Poly {
            terms: p.terms[1..].to_vec(),
            sugar: p.sugar,
        };
        let mut red = tail_reduce(ctx, tail, &others)?;
        red.terms.insert(0, lead);
        out.push(red);
    }
    out.sort_by(|a, b| ctx.cmp(&b.terms[0].exp, &a.terms[0].exp));
    Ok(out)
}

fn tail_reduce(ctx: &mut Ctx, p: Poly, basis: &[Poly]) -> Result<Poly> {
    // like `reduce` but without renormalizing
    let mut done: Vec<Term> = Vec::new();
    let mut rest = p.terms;
    let mut start = 0;
    while start < rest.len() {
        let lead = &rest[start];
        match basis.iter().find(|g| divides(&g.terms[0].exp, &lead.exp)) {
            Some(g) => {
                ctx.tick()?;
                let shift: Vec<u32> = lead
                    .exp
                    .iter()
                    .zip(g.terms[0].exp.iter())
                    .map(|(a, b)| a - b)
                    .collect();
                let c = lead.coef.clone();
                rest = ctx.sub_mul(&rest[start..], &c, &shift, &g.terms);
                start = 0;
            }
            None => {
                done.push(rest[start].clone());
                start += 1;
            }
        }
    }
    Ok(Poly {
        terms: done,
        sugar: p.sugar,
    })
}

/// Normal form of `p` modulo a basis (need not be Gröbner), in the given order.
pub fn normal_form(
    p: &MPoly,
    basis: &[MPoly],
    vars: &[Var],
    order: MonomialOrder,
    budget: GroebnerBudget,
) -> Result<MPoly> {
    let mut ctx = Ctx {
        nvars: vars.len(),
        order,
        budget,
        steps: 0,
    };
    let mut bs = Vec::new();
    for b in basis {
        let mut q = ctx.from_mpoly(b, vars)?;
        if q.terms.is_empty() {
            continue;
        }
        make_monic(&mut q);
        bs.push(q);
    }
    let pp = ctx.from_mpoly(p, vars)?;
    let r = tail_reduce(&mut ctx, pp, &bs)?;
    Ok(to_mpoly(&r, vars))
}

/// Leading monomial of `p` in the given order, as an exponent vector.
pub fn leading_exponents(p: &MPoly, vars: &[Var], order: MonomialOrder) -> Option<Vec<u32>> {
    let ctx = Ctx {
        nvars: vars.len(),
        order,
        budget: GroebnerBudget::default(),
        steps: 0,
    };
    let q = ctx.from_mpoly(p, vars).ok()?;
    q.terms.first().map(|t| t.exp.to_vec())
}

/// S-polynomial of two polynomials (monic-normalized), for oracle checks.
pub fn s_polynomial(f: &MPoly, g: &MPoly, vars: &[Var], order: MonomialOrder) -> Result<MPoly> {
    let ctx = Ctx {
        nvars: vars.len(),
        order,
        budget: GroebnerBudget::default(),
        steps: 0,
    };
    let mut a = ctx.from_mpoly(f, vars)?;
    let mut b = ctx.from_mpoly(g, vars)?;
    if a.terms.is_empty() || b.terms.is_empty() {
        return Ok(MPoly::zero());
    }
    make_monic(&mut a);
    make_monic(&mut b);
    let l = lcm(&a.terms[0].exp, &b.terms[0].exp);
    Ok(to_mpoly(&spoly(&ctx, &a, &b, &l), vars))
}

/// True iff the ideal generated by `gens` contains 1.
pub fn is_unit_ideal(gens: &[MPoly], vars: &[Var], budget: GroebnerBudget) -> Result<bool> {
    if gens.iter().any(|g| g.is_constant() && !g.is_zero()) {
        return Ok(true);
    }
    let gb = groebner(gens, vars, MonomialOrder::GrevLex, budget)?;
    Ok(gb.len() == 1 && gb[0].is_constant())
}

/// Collects the variables occurring in `gens`, in `Var` order.
pub fn context_vars(gens: &[MPoly]) -> Vec<Var> {
    let mut s = std::collections::BTreeSet::new();
    for g in gens {
        s.extend(g.support());
    }
    s.into_iter().collect()
}
