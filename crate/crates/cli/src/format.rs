//! Line-oriented text formats for curves, words, triples, tame words and
//! certificates.
//!
//! Every document starts with the version line `slnrectify/1`. Blank lines
//! and lines starting with `#` are ignored; leading indentation is not
//! significant. Polynomials use the canonical rendering of the core crate:
//! curve entries in `t`, curve multipliers in `s`, payloads in `x<i>_<j>`,
//! tame-word payloads in `y1, y2, y3`. Matrices are written row by row,
//! entries separated by `,` and rows by `;`.
//!
//! Parsing is purely syntactic: a document describing a matrix with the
//! wrong determinant still parses, so that replay can report it as a
//! mismatch rather than as malformed input.

use std::fmt::Write as _;

use slnrectify_core::autoword::Generator;
use slnrectify_core::exactalg::{parse_poly, parse_scalar, EntryPoly, Mat, MPoly, PolyMatrix, Scalar, ScalarMatrix, UniPoly, Var};
use slnrectify_core::rectifier::{BezoutSolution, Certificate, Fact, SeparatingData};
use slnrectify_core::sl2bridge::{C3Triple, SpaceMove, SpaceTameWord};
use thiserror::Error;

pub const HEADER: &str = "slnrectify/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

type FResult<T> = Result<T, FormatError>;

#[derive(Clone, Copy)]
struct Line<'a> {
    no: usize,
    /// Column of the first character of `text` in the original line.
    col: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn err<T>(&self, offset: usize, msg: impl Into<String>) -> FResult<T> {
        Err(FormatError {
            line: self.no,
            col: self.col + offset,
            msg: msg.into(),
        })
    }

    /// Splits `head : body`, returning the body with its column offset.
    fn split_colon(&self) -> FResult<(&'a str, Line<'a>)> {
        let Some(k) = self.text.find(':') else {
            return self.err(self.text.len(), "expected ':'");
        };
        let rest = &self.text[k + 1..];
        let skip = rest.len() - rest.trim_start().len();
        Ok((
            self.text[..k].trim(),
            Line {
                no: self.no,
                col: self.col + k + 1 + skip,
                text: rest.trim(),
            },
        ))
    }
}

struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        let mut lines = Vec::new();
        let mut last_line = 0;
        for (k, raw) in src.lines().enumerate() {
            last_line = k + 1;
            let text = raw.trim_start();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            lines.push(Line {
                no: k + 1,
                col: raw.len() - text.len() + 1,
                text: text.trim_end(),
            });
        }
        Cursor { lines, pos: 0, last_line }
    }

    fn next(&mut self) -> FResult<Line<'a>> {
        match self.lines.get(self.pos) {
            Some(l) => {
                self.pos += 1;
                Ok(*l)
            }
            None => Err(FormatError {
                line: self.last_line + 1,
                col: 1,
                msg: "unexpected end of input".into(),
            }),
        }
    }

    fn finish(&self) -> FResult<()> {
        match self.lines.get(self.pos) {
            Some(l) => l.err(0, "trailing content"),
            None => Ok(()),
        }
    }

    fn header(&mut self) -> FResult<()> {
        let l = self.next()?;
        if l.text != HEADER {
            return l.err(0, format!("expected header '{HEADER}'"));
        }
        Ok(())
    }

    /// Reads a line `keyword k1=v1 k2=v2 …` and returns the values in order.
    fn keyword(&mut self, kw: &str, keys: &[&str]) -> FResult<(Line<'a>, Vec<usize>)> {
        let l = self.next()?;
        let mut toks = l.text.split_whitespace();
        if toks.next() != Some(kw) {
            return l.err(0, format!("expected '{kw}'"));
        }
        let mut vals = Vec::new();
        for key in keys {
            let Some(tok) = toks.next() else {
                return l.err(l.text.len(), format!("expected '{key}=<number>'"));
            };
            let at = token_offset(l.text, tok);
            match tok.strip_prefix(key).and_then(|r| r.strip_prefix('=')).map(str::parse::<usize>) {
                Some(Ok(v)) => vals.push(v),
                _ => return l.err(at, format!("expected '{key}=<number>'")),
            }
        }
        if let Some(tok) = toks.next() {
            return l.err(token_offset(l.text, tok), "unexpected token");
        }
        Ok((l, vals))
    }
}

fn token_offset(text: &str, tok: &str) -> usize {
    tok.as_ptr() as usize - text.as_ptr() as usize
}

fn parse_index(l: &Line, tok: Option<&str>, n: usize, what: &str) -> FResult<usize> {
    let Some(tok) = tok else {
        return l.err(l.text.len(), format!("expected {what}"));
    };
    match tok.parse::<usize>() {
        Ok(v) if (1..=n).contains(&v) => Ok(v),
        _ => l.err(token_offset(l.text, tok), format!("expected {what} in 1..={n}")),
    }
}

fn poly(l: &Line) -> FResult<MPoly> {
    parse_poly(l.text).map_err(|e| FormatError {
        line: l.no,
        col: l.col + e.col - 1,
        msg: e.msg,
    })
}

fn unipoly(l: &Line, v: Var) -> FResult<UniPoly> {
    let p = poly(l)?;
    match p.to_unipoly(v) {
        Some(u) => Ok(u),
        None => l.err(0, format!("expected a polynomial in {v} only")),
    }
}

fn scalar_list(l: &Line) -> FResult<Vec<Scalar>> {
    let mut out = Vec::new();
    let mut off = 0;
    for part in l.text.split(',') {
        let skip = part.len() - part.trim_start().len();
        let sub = Line {
            no: l.no,
            col: l.col + off + skip,
            text: part.trim(),
        };
        out.push(parse_scalar(sub.text).map_err(|e| FormatError {
            line: l.no,
            col: sub.col + e.col - 1,
            msg: e.msg,
        })?);
        off += part.len() + 1;
    }
    Ok(out)
}

fn split_rows<'a>(l: &Line<'a>, n: usize) -> FResult<Vec<Line<'a>>> {
    let mut rows = Vec::new();
    let mut off = 0;
    for part in l.text.split(';') {
        let skip = part.len() - part.trim_start().len();
        rows.push(Line {
            no: l.no,
            col: l.col + off + skip,
            text: part.trim(),
        });
        off += part.len() + 1;
    }
    if rows.len() != n {
        return l.err(0, format!("expected {n} rows, found {}", rows.len()));
    }
    Ok(rows)
}

fn scalar_matrix(l: &Line, n: usize) -> FResult<ScalarMatrix> {
    let mut rows = Vec::new();
    for r in split_rows(l, n)? {
        let v = scalar_list(&r)?;
        if v.len() != n {
            return r.err(0, format!("expected {n} entries, found {}", v.len()));
        }
        rows.push(v);
    }
    Ok(Mat::from_rows(rows).expect("square"))
}

fn poly_matrix_inline(l: &Line, n: usize, v: Var) -> FResult<PolyMatrix> {
    let mut rows = Vec::new();
    for r in split_rows(l, n)? {
        let mut row = Vec::new();
        let mut off = 0;
        for part in r.text.split(',') {
            let skip = part.len() - part.trim_start().len();
            row.push(unipoly(
                &Line {
                    no: r.no,
                    col: r.col + off + skip,
                    text: part.trim(),
                },
                v,
            )?);
            off += part.len() + 1;
        }
        if row.len() != n {
            return r.err(0, format!("expected {n} entries, found {}", row.len()));
        }
        rows.push(row);
    }
    Ok(Mat::from_rows(rows).expect("square"))
}

fn render_scalar_matrix(m: &ScalarMatrix) -> String {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(Scalar::render).collect::<Vec<_>>().join(", "))
        .collect::<Vec<_>>()
        .join("; ")
}

fn render_poly_matrix(m: &PolyMatrix, var: &str) -> String {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|p| p.render(var)).collect::<Vec<_>>().join(", "))
        .collect::<Vec<_>>()
        .join("; ")
}

// ---------------------------------------------------------------- curves

fn read_entries(cur: &mut Cursor, n: usize) -> FResult<PolyMatrix> {
    let mut cells: Vec<Option<UniPoly>> = vec![None; n * n];
    for _ in 0..n * n {
        let l = cur.next()?;
        let (head, body) = l.split_colon()?;
        let mut toks = head.split_whitespace();
        if toks.next() != Some("entry") {
            return l.err(0, "expected 'entry <i> <j> : <poly>'");
        }
        let i = parse_index(&l, toks.next(), n, "row index")?;
        let j = parse_index(&l, toks.next(), n, "column index")?;
        if toks.next().is_some() {
            return l.err(0, "expected 'entry <i> <j> : <poly>'");
        }
        let slot = &mut cells[(i - 1) * n + (j - 1)];
        if slot.is_some() {
            return l.err(0, format!("duplicate entry ({i}, {j})"));
        }
        *slot = Some(unipoly(&body, Var::T)?);
    }
    let cells: Vec<UniPoly> = cells.into_iter().map(|c| c.expect("n² distinct entries")).collect();
    Ok(Mat::from_fn(n, n, |i, j| cells[i * n + j].clone()))
}

fn write_entries(out: &mut String, m: &PolyMatrix) {
    for ((i, j), p) in m.entries() {
        let _ = writeln!(out, "entry {} {} : {}", i + 1, j + 1, p.render("t"));
    }
}

/// Parses a curve document into its matrix of entries.
pub fn parse_curve(src: &str) -> FResult<PolyMatrix> {
    let mut cur = Cursor::new(src);
    cur.header()?;
    let (l, v) = cur.keyword("curve", &["n"])?;
    if v[0] < 2 {
        return l.err(0, "n must be at least 2");
    }
    let m = read_entries(&mut cur, v[0])?;
    cur.finish()?;
    Ok(m)
}

pub fn print_curve(m: &PolyMatrix) -> String {
    let mut out = format!("{HEADER}\ncurve n={}\n", m.rows());
    write_entries(&mut out, m);
    out
}

// ----------------------------------------------------------------- words

fn read_generator(l: &Line, n: usize) -> FResult<Generator> {
    let (head, body) = l.split_colon()?;
    let mut toks = head.split_whitespace();
    let kind = toks.next().unwrap_or("");
    let g = match kind {
        "left" | "right" => {
            let i = parse_index(l, toks.next(), n, "index i")?;
            let j = parse_index(l, toks.next(), n, "index j")?;
            let p = poly(&body)?;
            if kind == "left" {
                Generator::LeftElem { i, j, p }
            } else {
                Generator::RightElem { i, j, q: p }
            }
        }
        "constleft" => Generator::ConstLeft(scalar_matrix(&body, n)?),
        "constright" => Generator::ConstRight(scalar_matrix(&body, n)?),
        "glpair" => Generator::GlPair(scalar_matrix(&body, n)?),
        "curvemul" => Generator::CurveRightMul(poly_matrix_inline(&body, n, Var::S)?),
        _ => return l.err(0, format!("unknown generator kind '{kind}'")),
    };
    if let Some(tok) = toks.next() {
        return l.err(token_offset(l.text, tok), "unexpected token");
    }
    Ok(g)
}

fn write_generator(out: &mut String, g: &Generator) {
    let _ = match g {
        Generator::LeftElem { i, j, p } => writeln!(out, "left {i} {j} : {}", p.render()),
        Generator::RightElem { i, j, q } => writeln!(out, "right {i} {j} : {}", q.render()),
        Generator::ConstLeft(m) | Generator::ConstRight(m) | Generator::GlPair(m) => {
            writeln!(out, "{} : {}", g.kind(), render_scalar_matrix(m))
        }
        Generator::CurveRightMul(m) => writeln!(out, "curvemul : {}", render_poly_matrix(m, "s")),
    };
}

fn read_generators(cur: &mut Cursor, n: usize, len: usize) -> FResult<Vec<Generator>> {
    (0..len).map(|_| read_generator(&cur.next()?, n)).collect()
}

/// Parses a word document into its size and unvalidated generators.
pub fn parse_word(src: &str) -> FResult<(usize, Vec<Generator>)> {
    let mut cur = Cursor::new(src);
    cur.header()?;
    let (l, v) = cur.keyword("word", &["n", "len"])?;
    if v[0] < 2 {
        return l.err(0, "n must be at least 2");
    }
    let gens = read_generators(&mut cur, v[0], v[1])?;
    cur.finish()?;
    Ok((v[0], gens))
}

pub fn print_word(n: usize, gens: &[Generator]) -> String {
    let mut out = format!("{HEADER}\nword n={n} len={}\n", gens.len());
    for g in gens {
        write_generator(&mut out, g);
    }
    out
}

// --------------------------------------------------------------- triples

pub fn parse_triple(src: &str) -> FResult<C3Triple> {
    let mut cur = Cursor::new(src);
    cur.header()?;
    cur.keyword("triple", &[])?;
    let mut gs = Vec::new();
    for k in 1..=3 {
        let l = cur.next()?;
        let (head, body) = l.split_colon()?;
        if head != format!("g{k}") {
            return l.err(0, format!("expected 'g{k} : <poly>'"));
        }
        gs.push(unipoly(&body, Var::T)?);
    }
    cur.finish()?;
    let g3 = gs.pop().expect("three");
    let g2 = gs.pop().expect("three");
    let g1 = gs.pop().expect("three");
    Ok(C3Triple::new(g1, g2, g3))
}

pub fn print_triple(tr: &C3Triple) -> String {
    format!(
        "{HEADER}\ntriple\ng1 : {}\ng2 : {}\ng3 : {}\n",
        tr.g1.render("t"),
        tr.g2.render("t"),
        tr.g3.render("t")
    )
}

pub fn parse_tame_word(src: &str) -> FResult<SpaceTameWord> {
    let mut cur = Cursor::new(src);
    cur.header()?;
    let (_, v) = cur.keyword("tame3", &["len"])?;
    let mut moves = Vec::new();
    for _ in 0..v[0] {
        let l = cur.next()?;
        let (head, body) = l.split_colon()?;
        let mut toks = head.split_whitespace();
        let mv = match toks.next() {
            Some("linear") => SpaceMove::Linear(scalar_matrix(&body, 3)?),
            Some("elem") => SpaceMove::Elementary {
                axis: parse_index(&l, toks.next(), 3, "axis")?,
                h: poly(&body)?,
            },
            _ => return l.err(0, "expected 'linear' or 'elem <axis>'"),
        };
        if toks.next().is_some() {
            return l.err(0, "unexpected token");
        }
        moves.push(mv);
    }
    cur.finish()?;
    Ok(SpaceTameWord { moves })
}

pub fn print_tame_word(w: &SpaceTameWord) -> String {
    let mut out = format!("{HEADER}\ntame3 len={}\n", w.moves.len());
    for m in &w.moves {
        let _ = match m {
            SpaceMove::Linear(a) => writeln!(out, "linear : {}", render_scalar_matrix(a)),
            SpaceMove::Elementary { axis, h } => writeln!(out, "elem {axis} : {}", h.render()),
        };
    }
    out
}

// ---------------------------------------------------------- certificates

/// A certificate as written, before any semantic validation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CertDoc {
    pub n: usize,
    pub input: PolyMatrix,
    pub stages: Vec<StageDoc>,
    pub final_curve: PolyMatrix,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StageDoc {
    pub name: String,
    pub gens: Vec<Generator>,
    pub curve: PolyMatrix,
    pub facts: Vec<Fact>,
}

impl CertDoc {
    pub fn from_certificate(c: &Certificate) -> Self {
        CertDoc {
            n: c.input.n(),
            input: c.input.entries().clone(),
            stages: c
                .stages
                .iter()
                .map(|s| StageDoc {
                    name: s.name.clone(),
                    gens: s.word.gens().to_vec(),
                    curve: s.curve.entries().clone(),
                    facts: s.facts.clone(),
                })
                .collect(),
            final_curve: c.final_curve.entries().clone(),
        }
    }
}

fn labelled<'a>(cur: &mut Cursor<'a>, label: &str) -> FResult<(Line<'a>, Line<'a>)> {
    let l = cur.next()?;
    let (head, body) = l.split_colon()?;
    if head != label {
        return l.err(0, format!("expected '{label} : …'"));
    }
    Ok((l, body))
}

fn read_fact(cur: &mut Cursor, n: usize) -> FResult<Fact> {
    let l = cur.next()?;
    let mut toks = l.text.split_whitespace();
    if toks.next() != Some("fact") {
        return l.err(0, "expected 'fact <name>'");
    }
    let name = toks.next().unwrap_or("");
    let f = match name {
        "rank-conditions" => Fact::RankConditions,
        "truncation-embeds" => Fact::TruncationEmbeds,
        "corner-is-t" => Fact::CornerIsT,
        "first-column-standard" => Fact::FirstColumnStandard,
        "standard-embedding" => Fact::StandardEmbedding,
        "separating" => {
            let (vl, vb) = labelled(cur, "v")?;
            let v = scalar_list(&vb)?;
            if v.len() != n {
                return vl.err(0, format!("expected {n} entries"));
            }
            let b = scalar_matrix(&labelled(cur, "b")?.1, n)?;
            let p = scalar_matrix(&labelled(cur, "p")?.1, n)?;
            Fact::Separating(SeparatingData { v, b, p })
        }
        "bezout" => {
            let mut tildes = Vec::new();
            for k in 2..=n {
                tildes.push(unipoly(&labelled(cur, &format!("tilde {k}"))?.1, Var::T)?);
            }
            let section = poly(&labelled(cur, "section")?.1)?;
            let mut lifted: Vec<EntryPoly> = Vec::new();
            for k in 2..=n {
                lifted.push(poly(&labelled(cur, &format!("lifted {k}"))?.1)?);
            }
            Fact::Bezout(BezoutSolution { tildes, section, lifted })
        }
        _ => return l.err(token_offset(l.text, name), format!("unknown fact '{name}'")),
    };
    if let Some(tok) = toks.next() {
        return l.err(token_offset(l.text, tok), "unexpected token");
    }
    Ok(f)
}

fn write_fact(out: &mut String, f: &Fact) {
    let _ = writeln!(out, "fact {}", f.name());
    match f {
        Fact::Separating(s) => {
            let v: Vec<String> = s.v.iter().map(Scalar::render).collect();
            let _ = writeln!(out, "  v : {}", v.join(", "));
            let _ = writeln!(out, "  b : {}", render_scalar_matrix(&s.b));
            let _ = writeln!(out, "  p : {}", render_scalar_matrix(&s.p));
        }
        Fact::Bezout(sol) => {
            for (k, p) in sol.tildes.iter().enumerate() {
                let _ = writeln!(out, "  tilde {} : {}", k + 2, p.render("t"));
            }
            let _ = writeln!(out, "  section : {}", sol.section.render());
            for (k, p) in sol.lifted.iter().enumerate() {
                let _ = writeln!(out, "  lifted {} : {}", k + 2, p.render());
            }
        }
        _ => {}
    }
}

pub fn parse_certificate(src: &str) -> FResult<CertDoc> {
    let mut cur = Cursor::new(src);
    cur.header()?;
    let (l, v) = cur.keyword("certificate", &["n", "stages"])?;
    let (n, count) = (v[0], v[1]);
    if n < 2 {
        return l.err(0, "n must be at least 2");
    }
    cur.keyword("input", &[])?;
    let input = read_entries(&mut cur, n)?;
    let mut stages = Vec::new();
    for k in 1..=count {
        let l = cur.next()?;
        let toks: Vec<&str> = l.text.split_whitespace().collect();
        if toks.len() != 5 || toks[0] != "stage" || toks[1] != k.to_string() {
            return l.err(0, format!("expected 'stage {k} <name> gens=<g> facts=<f>'"));
        }
        let count_of = |tok: &str, key: &str| -> FResult<usize> {
            match tok.strip_prefix(key).and_then(|r| r.strip_prefix('=')).map(str::parse::<usize>) {
                Some(Ok(v)) => Ok(v),
                _ => l.err(token_offset(l.text, tok), format!("expected '{key}=<number>'")),
            }
        };
        let g = count_of(toks[3], "gens")?;
        let f = count_of(toks[4], "facts")?;
        let gens = read_generators(&mut cur, n, g)?;
        let curve = read_entries(&mut cur, n)?;
        let facts = (0..f).map(|_| read_fact(&mut cur, n)).collect::<FResult<Vec<_>>>()?;
        stages.push(StageDoc {
            name: toks[2].to_string(),
            gens,
            curve,
            facts,
        });
    }
    cur.keyword("final", &[])?;
    let final_curve = read_entries(&mut cur, n)?;
    cur.finish()?;
    Ok(CertDoc {
        n,
        input,
        stages,
        final_curve,
    })
}

pub fn print_certificate(doc: &CertDoc) -> String {
    let mut out = format!("{HEADER}\ncertificate n={} stages={}\ninput\n", doc.n, doc.stages.len());
    write_entries(&mut out, &doc.input);
    for (k, s) in doc.stages.iter().enumerate() {
        let _ = writeln!(
            out,
            "stage {} {} gens={} facts={}",
            k + 1,
            s.name,
            s.gens.len(),
            s.facts.len()
        );
        for g in &s.gens {
            write_generator(&mut out, g);
        }
        write_entries(&mut out, &s.curve);
        for f in &s.facts {
            write_fact(&mut out, f);
        }
    }
    out.push_str("final\n");
    write_entries(&mut out, &doc.final_curve);
    out
}
