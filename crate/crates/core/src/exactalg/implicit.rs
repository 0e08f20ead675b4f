//! Section polynomials of parametrized curves.
//!
//! Given `v ↦ f_v(t)`, find `τ` in the variables `v` with `τ(…, f_v(t), …) = t`.
//! Such `τ` exists exactly when `t` lies in the subalgebra generated by
//! the `f_v`, which for a curve in affine space means the parametrization
//! is a closed embedding.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::groebner::{groebner, leading_exponents, GroebnerBudget, MonomialOrder};
use super::mpoly::{EntryPoly, MPoly, Monomial, Var};
use super::scalar::Scalar;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// First index used for auxiliary elimination variables.
const AUX_BASE: u16 = 10_000;

#[derive(Clone, Debug)]
struct Gen {
    expr: MPoly,
    poly: UniPoly,
}

impl Gen {
    fn sub_scaled(&self, c: &Scalar, other: &Gen) -> Gen {
        Gen {
            expr: &self.expr - &other.expr.scale(c),
            poly: &self.poly - &other.poly.scale(c),
        }
    }

    fn pow(&self, k: u32) -> Gen {
        Gen {
            expr: self.expr.pow(k),
            poly: self.poly.pow(k),
        }
    }

    /// Drops the constant term so every generator vanishes at t = 0.
    fn centered(mut self) -> Gen {
        let c = self.poly.coeff(0);
        if !c.is_zero() {
            self.poly = &self.poly - &UniPoly::constant(c.clone());
            self.expr = &self.expr - &MPoly::constant(c);
        }
        self
    }
}

/// Computes a section polynomial `τ` for the assignment `v ↦ f_v(t)`.
///
/// The subalgebra generated by the `f_v` is completed to a SAGBI basis;
/// a degree-one element is `τ` up to scaling. Only if that hits the degree
/// cap is `t` eliminated from the graph ideal `{v − f_v(t)}` with a block
/// order, the basis element with leading monomial `t` supplying `τ`. The
/// result is checked by substitution before it is returned.
pub fn implicitize_section(
    assignments: &BTreeMap<Var, UniPoly>,
    budget: GroebnerBudget,
) -> Result<EntryPoly> {
    let gens = match prepass(assignments, budget)? {
        Prepass::Section(tau, _) => return checked(tau, assignments),
        Prepass::NoSection => return Err(Error::NotASection),
        Prepass::Residual(gens) => gens,
    };
    if gens.is_empty() {
        return Err(Error::NotASection);
    }
    let mut vars = vec![Var::T];
    let mut ideal = Vec::with_capacity(gens.len());
    let mut back = BTreeMap::new();
    for (k, g) in gens.iter().enumerate() {
        let y = Var::Y(AUX_BASE + k as u16);
        vars.push(y);
        ideal.push(&MPoly::var(y) - &MPoly::from_unipoly(&g.poly, Var::T));
        back.insert(y, g.expr.clone());
    }
    let order = MonomialOrder::Elimination(1);
    let basis = groebner(&ideal, &vars, order, budget)?;
    let mut t_lead = vec![0u32; vars.len()];
    t_lead[0] = 1;
    for b in &basis {
        if leading_exponents(b, &vars, order).as_deref() == Some(&t_lead[..]) {
            // b = t − τ'(y), monic
            let tau_y = &MPoly::var(Var::T) - b;
            return checked(tau_y.substitute(&back), assignments);
        }
    }
    Err(Error::NotASection)
}

enum Prepass {
    /// `τ` and the completed basis, sorted by degree.
    Section(EntryPoly, Vec<Gen>),
    /// The subalgebra basis is complete and has no element of degree one.
    NoSection,
    /// Gave up at the degree cap; the remaining basis is returned.
    Residual(Vec<Gen>),
}

/// Degrees reachable as sums of basis degrees, with one factor recorded
/// per reachable degree (largest basis degree preferred).
fn semigroup_table(degrees: &[usize], up_to: usize) -> Vec<Option<usize>> {
    let mut table: Vec<Option<usize>> = vec![None; up_to + 1];
    let mut reach = vec![false; up_to + 1];
    reach[0] = true;
    for d in 1..=up_to {
        for (k, &dk) in degrees.iter().enumerate().rev() {
            if dk <= d && reach[d - dk] {
                table[d] = Some(k);
                reach[d] = true;
                break;
            }
        }
    }
    table
}

/// Subtracts products of basis elements until the degree of `h` is no
/// longer in the degree semigroup of `basis` (sorted by degree).
fn subduce(mut h: Gen, basis: &[Gen]) -> Gen {
    let degrees: Vec<usize> = basis.iter().map(|g| g.poly.deg0()).collect();
    let table = semigroup_table(&degrees, h.poly.deg0());
    while let Some(d) = h.poly.degree() {
        if d == 0 {
            break;
        }
        let Some(mut k) = table[d] else { break };
        let mut prod = basis[k].clone();
        let mut rest = d - degrees[k];
        while rest > 0 {
            k = table[rest].expect("reachable");
            prod = Gen {
                expr: &prod.expr * &basis[k].expr,
                poly: &prod.poly * &basis[k].poly,
            };
            rest -= degrees[k];
        }
        let c = &h.poly.leading() / &prod.poly.leading();
        h = h.sub_scaled(&c, &prod);
    }
    h.centered()
}

fn monic(mut g: Gen) -> Gen {
    let inv = g.poly.leading().inv().expect("nonzero");
    if !inv.is_one() {
        g.poly = g.poly.scale(&inv);
        g.expr = g.expr.scale(&inv);
    }
    g
}

/// Univariate SAGBI completion of the subalgebra generated by the
/// assignments: linear echelon form, subduction by products of basis
/// elements, and S-pairs `g_a^(d_b/e) − g_b^(d_a/e)` in order of
/// increasing degree. `t` lies in the subalgebra exactly when a degree-one
/// element appears; degree semigroups are finitely generated, so the
/// completion terminates.
fn prepass(assignments: &BTreeMap<Var, UniPoly>, budget: GroebnerBudget) -> Result<Prepass> {
    let gens: Vec<Gen> = assignments
        .iter()
        .filter(|(_, p)| !p.is_constant())
        .map(|(&v, p)| {
            Gen {
                expr: MPoly::var(v),
                poly: p.clone(),
            }
            .centered()
        })
        .collect();
    let mut basis: Vec<Gen> = Vec::new();
    for g in echelon(gens) {
        let g = subduce(g, &basis);
        if !g.poly.is_constant() {
            basis.push(monic(g));
            basis.sort_by_key(|g| g.poly.deg0());
        }
    }
    let cap = budget.max_degree as usize;
    let mut done: std::collections::BTreeSet<(usize, usize)> = Default::default();
    let mut steps: u64 = 0;
    loop {
        if let Some(g) = basis.iter().find(|g| g.poly.degree() == Some(1)) {
            return Ok(Prepass::Section(g.expr.clone(), basis));
        }
        let degrees: Vec<usize> = basis.iter().map(|g| g.poly.deg0()).collect();
        let mut next: Option<(usize, usize, usize)> = None;
        let mut capped = false;
        for a in 0..basis.len() {
            for b in a + 1..basis.len() {
                if done.contains(&(degrees[a], degrees[b])) {
                    continue;
                }
                let l = lcm(degrees[a], degrees[b]);
                if l > cap {
                    capped = true;
                } else if next.is_none_or(|(bl, _, _)| l < bl) {
                    next = Some((l, a, b));
                }
            }
        }
        let Some((l, a, b)) = next else {
            return Ok(if capped { Prepass::Residual(basis) } else { Prepass::NoSection });
        };
        steps += 1;
        if steps > budget.max_steps {
            return Err(Error::ResourceExceeded(
                "subalgebra completion exceeded the step budget".into(),
            ));
        }
        done.insert((degrees[a], degrees[b]));
        let pa = basis[a].pow((l / degrees[a]) as u32);
        let pb = basis[b].pow((l / degrees[b]) as u32);
        let s = subduce(pa.sub_scaled(&Scalar::one(), &pb), &basis);
        if !s.poly.is_constant() {
            basis.push(monic(s));
            basis.sort_by_key(|g| g.poly.deg0());
        }
    }
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Decides `t ∈ ℂ[f_v]` by subalgebra completion alone, without any
/// Gröbner basis. `None` means the degree cap was reached first.
pub fn subalgebra_section(
    assignments: &BTreeMap<Var, UniPoly>,
    budget: GroebnerBudget,
) -> Option<Option<EntryPoly>> {
    match prepass(assignments, budget) {
        Ok(Prepass::Section(tau, _)) if section_holds(&tau, assignments) => Some(Some(tau)),
        Ok(Prepass::NoSection) => Some(None),
        _ => None,
    }
}

fn checked(tau: MPoly, assignments: &BTreeMap<Var, UniPoly>) -> Result<EntryPoly> {
    if section_holds(&tau, assignments) {
        Ok(tau)
    } else {
        Err(Error::NotASection)
    }
}

/// `τ(…, f_v(t), …) = t` as an exact identity.
pub fn section_holds(tau: &EntryPoly, assignments: &BTreeMap<Var, UniPoly>) -> bool {
    if tau.support().iter().any(|v| !assignments.contains_key(v)) {
        return false;
    }
    tau.eval_unipoly(&|v| assignments[&v].clone()) == UniPoly::t()
}

/// A polynomial `P` in the assignment variables with `P(…, f_v(t), …) = h(t)`,
/// built from short products.
///
/// Greedy leading-term reduction: the highest-degree variables whose
/// degrees fit are multiplied together, and the remaining degree (below
/// every variable degree) is covered by a product of subalgebra basis
/// elements. This keeps the result sparse, whereas the literal composition
/// `h ∘ τ` expands a many-term `τ` to a high power.
pub fn lift_through_section(
    h: &UniPoly,
    assignments: &BTreeMap<Var, UniPoly>,
    budget: GroebnerBudget,
) -> Result<EntryPoly> {
    let basis = match prepass(assignments, budget)? {
        Prepass::Section(_, basis) => basis,
        Prepass::NoSection => return Err(Error::NotASection),
        Prepass::Residual(_) => {
            return Err(Error::ResourceExceeded(
                "subalgebra completion reached the degree cap".into(),
            ))
        }
    };
    let mut gens: Vec<(Var, usize, &UniPoly)> = assignments
        .iter()
        .filter(|(_, p)| !p.is_constant())
        .map(|(&v, p)| (v, p.deg0(), p))
        .collect();
    // largest degree first, then variable order, so the choice is deterministic
    gens.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let min_var = gens.last().map_or(0, |g| g.1);
    let degrees: Vec<usize> = basis.iter().map(|g| g.poly.deg0()).collect();
    let table = semigroup_table(&degrees, min_var);
    let mut fill: BTreeMap<usize, Gen> = BTreeMap::new();
    fill.insert(
        0,
        Gen {
            expr: MPoly::one(),
            poly: UniPoly::one(),
        },
    );
    let mut h = h.clone();
    let mut out = MPoly::zero();
    while let Some(d) = h.degree() {
        if d == 0 {
            out = &out + &MPoly::constant(h.coeff(0));
            break;
        }
        let mut rem = d;
        let mut mono = Vec::new();
        let mut poly = UniPoly::one();
        while let Some(&(v, dv, p)) = gens.iter().find(|g| g.1 <= rem) {
            mono.push((v, 1));
            poly = &poly * p;
            rem -= dv;
        }
        let filler = fill_product(rem, &basis, &degrees, &table, &mut fill);
        poly = &poly * &filler.poly;
        let c = &h.leading() / &poly.leading();
        h = &h - &poly.scale(&c);
        out = &out + &filler.expr.mul_monomial(&c, &Monomial::from_pairs(mono));
    }
    Ok(out)
}

fn fill_product(
    d: usize,
    basis: &[Gen],
    degrees: &[usize],
    table: &[Option<usize>],
    memo: &mut BTreeMap<usize, Gen>,
) -> Gen {
    if let Some(g) = memo.get(&d) {
        return g.clone();
    }
    // the basis contains a degree-one element, so every degree is reachable
    let k = table[d].expect("degree-one element present");
    let rest = fill_product(d - degrees[k], basis, degrees, table, memo);
    let g = Gen {
        expr: &rest.expr * &basis[k].expr,
        poly: &rest.poly * &basis[k].poly,
    };
    memo.insert(d, g.clone());
    g
}

/// Gaussian elimination on leading coefficients: distinct degrees, no
/// constants, each generator monic.
fn echelon(mut gens: Vec<Gen>) -> Vec<Gen> {
    let mut out: Vec<Gen> = Vec::new();
    while let Some(mut g) = gens.pop() {
        loop {
            let Some(d) = g.poly.degree() else { break };
            if d == 0 {
                break;
            }
            match out.iter().find(|h| h.poly.degree() == Some(d)) {
                Some(h) => g = g.sub_scaled(&g.poly.leading(), h).centered(),
                None => break,
            }
        }
        if g.poly.is_constant() {
            continue;
        }
        let inv = g.poly.leading().inv().expect("nonzero");
        if !inv.is_one() {
            g.poly = g.poly.scale(&inv);
            g.expr = g.expr.scale(&inv);
        }
        out.push(g);
    }
    out.sort_by_key(|g| g.poly.degree());
    out
}
