//! Commands behind the `slnrectify` binary, as pure functions from input
//! documents to an [`Outcome`]. The binary only does file I/O.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 2 | malformed or inconsistent input |
//! | 3 | input is not an embedding |
//! | 4 | search, resource or heuristic failure |
//! | 5 | unsupported size or path |
//! | 6 | certificate replay mismatch |

pub mod format;

use slnrectify_core::autoword::{apply_word, invert_word, AutWord};
use slnrectify_core::exactalg::{GroebnerBudget, PolyMatrix};
use slnrectify_core::rectifier::{equivalence, rectify, Certificate, SearchBudget, Stage};
use slnrectify_core::sl2bridge::{attempt_divisibility, lift_c3_to_sl2, rectify_sl2, triple_embedding, Sl2Rectification};
use slnrectify_core::slcurve::{is_embedding, SlCurve};
use slnrectify_core::Error;

use format::{CertDoc, FormatError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NOT_EMBEDDING: i32 = 3;
pub const EXIT_FAILED: i32 = 4;
pub const EXIT_UNSUPPORTED: i32 = 5;
pub const EXIT_MISMATCH: i32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub max_trials: usize,
    pub max_degree: u32,
    pub groebner_budget: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            max_trials: 64,
            max_degree: 24,
            groebner_budget: 1_000_000,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.max_trials == 0 || self.max_degree == 0 || self.groebner_budget == 0 {
            return Err("--max-trials, --max-degree and --groebner-budget must be positive".into());
        }
        Ok(())
    }

    pub fn groebner(&self) -> GroebnerBudget {
        GroebnerBudget::with_steps(self.groebner_budget)
    }

    pub fn search(&self) -> SearchBudget {
        SearchBudget {
            max_trials: self.max_trials,
            max_degree: self.max_degree,
            groebner: self.groebner(),
        }
    }
}

/// Result of a command: exit code, the artifact document (if any), an
/// optional secondary document, and a human-readable report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub artifact: Option<String>,
    pub secondary: Option<String>,
    pub report: String,
}

impl Outcome {
    fn ok(artifact: Option<String>, report: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_OK,
            artifact,
            secondary: None,
            report: report.into(),
        }
    }

    fn fail(code: i32, report: impl Into<String>) -> Self {
        Outcome {
            code,
            artifact: None,
            secondary: None,
            report: report.into(),
        }
    }
}

fn parse_failure(what: &str, e: FormatError) -> Outcome {
    Outcome::fail(EXIT_PARSE, format!("{what}: {e}"))
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotAnEmbedding(_) => EXIT_NOT_EMBEDDING,
        Error::UnsupportedSize(_) => EXIT_UNSUPPORTED,
        Error::SizeMismatch(_)
        | Error::NotUnimodular(_)
        | Error::InvalidSupport(_)
        | Error::InvalidGenerator(_)
        | Error::FirstColumnNotPreserved(_)
        | Error::VariableContext(_)
        | Error::AllZeroInput => EXIT_PARSE,
        _ => EXIT_FAILED,
    }
}

fn from_error(e: Error) -> Outcome {
    Outcome::fail(exit_code(&e), e.to_string())
}

fn read_curve(src: &str, what: &str) -> Result<SlCurve, Outcome> {
    let m = format::parse_curve(src).map_err(|e| parse_failure(what, e))?;
    SlCurve::validate(m).map_err(|e| Outcome::fail(EXIT_PARSE, format!("{what}: {e}")))
}

fn print_cert(c: &Certificate) -> String {
    format::print_certificate(&CertDoc::from_certificate(c))
}

fn sl2_path(c: &SlCurve, cfg: &RunConfig) -> Result<Sl2Rectification, Outcome> {
    let report = is_embedding(c, cfg.groebner()).map_err(from_error)?;
    if !report.is_embedding {
        return Err(Outcome::fail(EXIT_NOT_EMBEDDING, report.to_string()));
    }
    rectify_sl2(c, cfg.groebner()).map_err(|e| {
        Outcome::fail(
            EXIT_UNSUPPORTED,
            format!("n = 2 is only supported when the first column embeds into the plane: {e}"),
        )
    })
}

pub fn cmd_verify(curve: &str, cfg: &RunConfig) -> Outcome {
    let c = match read_curve(curve, "curve") {
        Ok(c) => c,
        Err(o) => return o,
    };
    match is_embedding(&c, cfg.groebner()) {
        Ok(r) if r.is_embedding => Outcome::ok(None, r.to_string()),
        Ok(r) => Outcome::fail(EXIT_NOT_EMBEDDING, r.to_string()),
        Err(e) => from_error(e),
    }
}

pub fn cmd_rectify(curve: &str, cfg: &RunConfig) -> Outcome {
    let c = match read_curve(curve, "curve") {
        Ok(c) => c,
        Err(o) => return o,
    };
    if c.n() == 2 {
        return match sl2_path(&c, cfg) {
            Ok(r) => Outcome::ok(
                Some(print_cert(&r.certificate)),
                format!(
                    "rectified along the plane path: {} stages, {} plane moves, reparametrization t -> {}",
                    r.certificate.stages.len(),
                    r.plane.moves.len(),
                    r.reparam.as_poly()
                ),
            ),
            Err(o) => o,
        };
    }
    match rectify(&c, cfg.seed, &cfg.search()) {
        Ok(cert) => {
            let report = format!("rectified: {} stages, {} generators", cert.stages.len(), cert.word().len());
            Outcome::ok(Some(print_cert(&cert)), report)
        }
        Err(e) => from_error(e),
    }
}

pub fn cmd_equiv(f: &str, g: &str, cfg: &RunConfig) -> Outcome {
    let (f, g) = match (read_curve(f, "first curve"), read_curve(g, "second curve")) {
        (Ok(f), Ok(g)) => (f, g),
        (Err(o), _) | (_, Err(o)) => return o,
    };
    if f.n() != g.n() {
        return Outcome::fail(EXIT_PARSE, format!("size mismatch: n = {} versus n = {}", f.n(), g.n()));
    }
    let word = if f.n() == 2 {
        let (rf, rg) = match (sl2_path(&f, cfg), sl2_path(&g, cfg)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(o), _) | (_, Err(o)) => return o,
        };
        rf.certificate.word().then(&invert_word(&rg.certificate.word()))
    } else {
        equivalence(&f, &g, cfg.seed, &cfg.search())
    };
    match word {
        Ok(w) => Outcome::ok(
            Some(format::print_word(w.n(), w.gens())),
            format!("equivalence word with {} generators", w.len()),
        ),
        Err(e) => from_error(e),
    }
}

pub fn cmd_apply(word: &str, curve: &str) -> Outcome {
    let (n, gens) = match format::parse_word(word) {
        Ok(v) => v,
        Err(e) => return parse_failure("word", e),
    };
    let c = match read_curve(curve, "curve") {
        Ok(c) => c,
        Err(o) => return o,
    };
    if n != c.n() {
        return Outcome::fail(EXIT_PARSE, format!("word is for n = {n}, curve has n = {}", c.n()));
    }
    match AutWord::new(n, gens).and_then(|w| apply_word(&w, &c)) {
        Ok(out) => Outcome::ok(Some(format::print_curve(out.entries())), "applied"),
        Err(e) => Outcome::fail(EXIT_PARSE, format!("word: {e}")),
    }
}

fn rebuild(doc: CertDoc) -> Result<Certificate, String> {
    let curve = |m: PolyMatrix, what: &str| SlCurve::validate(m).map_err(|e| format!("{what}: {e}"));
    let input = curve(doc.input, "input curve")?;
    let mut stages = Vec::new();
    for (k, s) in doc.stages.into_iter().enumerate() {
        let label = format!("stage {} ({})", k + 1, s.name);
        stages.push(Stage {
            word: AutWord::new(doc.n, s.gens).map_err(|e| format!("{label}: {e}"))?,
            curve: curve(s.curve, &label)?,
            name: s.name,
            facts: s.facts,
        });
    }
    Ok(Certificate {
        input,
        stages,
        final_curve: curve(doc.final_curve, "final curve")?,
    })
}

pub fn cmd_verify_cert(cert: &str, cfg: &RunConfig) -> Outcome {
    let doc = match format::parse_certificate(cert) {
        Ok(d) => d,
        Err(e) => return parse_failure("certificate", e),
    };
    let stages = doc.stages.len();
    match rebuild(doc).and_then(|c| c.verify(cfg.groebner())) {
        Ok(()) => Outcome::ok(None, format!("certificate verified: {stages} stages replayed")),
        Err(msg) => Outcome::fail(EXIT_MISMATCH, format!("replay mismatch: {msg}")),
    }
}

pub fn cmd_lift3(triple: &str, cfg: &RunConfig, normalize: bool) -> Outcome {
    let tr = match format::parse_triple(triple) {
        Ok(t) => t,
        Err(e) => return parse_failure("triple", e),
    };
    match triple_embedding(&tr, cfg.groebner()) {
        Ok(r) if !r.is_embedding => return Outcome::fail(EXIT_NOT_EMBEDDING, format!("triple: {r}")),
        Ok(_) => {}
        Err(e) => return from_error(e),
    }
    let (tame, tr) = if normalize && !tr.is_divisible() {
        match attempt_divisibility(&tr, cfg.seed, cfg.max_trials) {
            Ok((w, out)) => (Some(w), out),
            Err(e) => return from_error(e),
        }
    } else {
        (None, tr)
    };
    match lift_c3_to_sl2(&tr) {
        Ok(c) => {
            let mut o = Outcome::ok(
                Some(format::print_curve(c.entries())),
                format!(
                    "lifted triple ({}, {}, {}); embedding",
                    tr.g1, tr.g2, tr.g3
                ),
            );
            o.secondary = tame.map(|w| format::print_tame_word(&w));
            o
        }
        Err(e) => from_error(e),
    }
}
