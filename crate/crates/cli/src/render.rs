//! Text and LaTeX renderings of the output documents.

use std::fmt::Write;

use serde::Serialize;

use crate::doc::*;
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Tex,
    Json,
}

pub trait Render: Serialize {
    fn text(&self) -> String;
    fn tex(&self) -> String;

    fn render(&self, format: Format) -> Result<String, CliError> {
        Ok(match format {
            Format::Text => self.text(),
            Format::Tex => self.tex(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self)?;
                s.push('\n');
                s
            }
        })
    }
}

/// `p/q` as `p` when `q = 1`.
fn compact(pq: &str) -> String {
    match pq.strip_suffix("/1") {
        Some(p) => p.to_string(),
        None => pq.to_string(),
    }
}

fn bindings_line(b: &std::collections::BTreeMap<String, String>) -> String {
    b.iter().map(|(k, v)| format!("{}={}", k, compact(v))).collect::<Vec<_>>().join(" ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn status(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn tex_ident(name: &str) -> String {
    match name {
        "d" => "\\partial".into(),
        "x" => "\\lambda".into(),
        "y" => "\\mu".into(),
        "z" => "\\nu".into(),
        "alpha" | "beta" | "gamma" | "delta" | "epsilon" | "zeta" | "eta" | "theta" | "kappa" | "rho" => {
            format!("\\{}", name)
        }
        _ => name.to_string(),
    }
}

/// Converts the text grammar (polynomials, elements, basis labels) to LaTeX:
/// formal symbols and Greek names become macros, `p/q` becomes `\frac{p}{q}`,
/// `*` becomes juxtaposition and exponents are braced.
pub fn tex(text: &str) -> String {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: String = chars[start..i].iter().collect();
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                let s = i + 1;
                i = s;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let den: String = chars[s..i].iter().collect();
                write!(out, "\\frac{{{}}}{{{}}}", num, den).unwrap();
            } else {
                out.push_str(&num);
            }
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric()) {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            let t = tex_ident(&name);
            out.push_str(&t);
            if t.starts_with('\\') && i < chars.len() && chars[i].is_ascii_alphanumeric() {
                out.push(' ');
            }
        } else if c == '*' {
            if !out.ends_with(' ') {
                out.push(' ');
            }
            i += 1;
        } else if c == '^' {
            let start = i + 1;
            i = start;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let e: String = chars[start..i].iter().collect();
            write!(out, "^{{{}}}", e).unwrap();
        } else {
            out.push(c);
            i += 1;
        }
    }
    out
}

fn tex_doc(body: &str) -> String {
    format!("\\begin{{align*}}\n{}\\end{{align*}}\n", body)
}

/// One `&` relation per line, joined by `\\`.
fn align(lines: &[String]) -> String {
    let mut body = String::new();
    for (k, l) in lines.iter().enumerate() {
        body.push_str(l);
        if k + 1 < lines.len() {
            body.push_str(" \\\\");
        }
        body.push('\n');
    }
    tex_doc(&body)
}

fn check_text(out: &mut String, what: &str, c: &CheckDoc) {
    writeln!(out, "  {}: {} ({} checked)", what, status(c.passed), c.checked).unwrap();
    for f in &c.failures {
        if f.gens.is_empty() {
            writeln!(out, "    {}", f.residual).unwrap();
        } else {
            writeln!(out, "    ({}): {}", f.gens.join(", "), f.residual).unwrap();
        }
    }
}

fn check_tex(out: &mut Vec<String>, what: &str, c: &CheckDoc) {
    out.push(format!("&\\text{{{}: {} ({} checked)}}", what, status(c.passed), c.checked));
    for f in &c.failures {
        if f.gens.len() >= 2 && !f.residual.starts_with("computed") {
            out.push(format!("({}) &: {}", f.gens.join(", "), tex(&f.residual)));
        } else {
            out.push(format!("&\\text{{{} {}}}", f.gens.join(", "), f.residual.replace('_', "\\_")));
        }
    }
}

impl Render for AxiomDoc {
    fn text(&self) -> String {
        let mut out = String::new();
        check_text(&mut out, "skew-symmetry", &self.skew);
        check_text(&mut out, "Jacobi identity", &self.jacobi);
        out
    }

    fn tex(&self) -> String {
        let mut lines = Vec::new();
        check_tex(&mut lines, "skew-symmetry", &self.skew);
        check_tex(&mut lines, "Jacobi identity", &self.jacobi);
        align(&lines)
    }
}

impl Render for VerifyDoc {
    fn text(&self) -> String {
        let mut out = format!("algebra {}\n", self.algebra);
        out.push_str(&self.symbolic.text());
        for p in &self.grid {
            writeln!(out, "at {}", bindings_line(&p.bindings)).unwrap();
            out.push_str(&p.axioms.text());
        }
        writeln!(out, "result: {}", status(self.passed)).unwrap();
        out
    }

    fn tex(&self) -> String {
        let mut lines = vec![format!("&\\text{{algebra }} {}", self.algebra)];
        check_tex(&mut lines, "skew-symmetry", &self.symbolic.skew);
        check_tex(&mut lines, "Jacobi identity", &self.symbolic.jacobi);
        for p in &self.grid {
            lines.push(format!("&\\text{{at {}}}", bindings_line(&p.bindings)));
            check_tex(&mut lines, "skew-symmetry", &p.axioms.skew);
            check_tex(&mut lines, "Jacobi identity", &p.axioms.jacobi);
        }
        align(&lines)
    }
}

fn lie_basis(doc: &FiniteLieDoc, k: usize) -> String {
    let b = &doc.basis[k];
    format!("{}_{}", b.gen, compact(&b.label))
}

fn lie_relations(doc: &FiniteLieDoc) -> Vec<(String, String, String)> {
    doc.brackets
        .iter()
        .map(|s| {
            let terms: Vec<String> = s
                .terms
                .iter()
                .map(|t| {
                    let c = compact(&t.coeff);
                    match c.as_str() {
                        "1" => lie_basis(doc, t.k),
                        "-1" => format!("-{}", lie_basis(doc, t.k)),
                        _ => format!("{}*{}", c, lie_basis(doc, t.k)),
                    }
                })
                .collect();
            (lie_basis(doc, s.i), lie_basis(doc, s.j), terms.join(" + ").replace("+ -", "- "))
        })
        .collect()
}

fn series(s: &[usize]) -> String {
    s.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
}

impl Render for QuotientDoc {
    fn text(&self) -> String {
        let mut out = format!("truncated quotient at level {} (dimension {})\n", self.level, self.lie.basis.len());
        let basis: Vec<String> = (0..self.lie.basis.len()).map(|k| lie_basis(&self.lie, k)).collect();
        writeln!(out, "  basis: {}", basis.join(", ")).unwrap();
        for (a, b, v) in lie_relations(&self.lie) {
            writeln!(out, "  [{}, {}] = {}", a, b, v).unwrap();
        }
        writeln!(out, "  derived series: {}", series(&self.derived_series)).unwrap();
        match self.derived_length {
            Some(n) => writeln!(out, "  solvable: yes (derived length {})", n).unwrap(),
            None => writeln!(out, "  solvable: no").unwrap(),
        }
        writeln!(out, "  nilpotent: {}", yes(self.nilpotent)).unwrap();
        out
    }

    fn tex(&self) -> String {
        let mut lines: Vec<String> = lie_relations(&self.lie)
            .into_iter()
            .map(|(a, b, v)| format!("[{}, {}] &= {}", tex(&a), tex(&b), tex(&v)))
            .collect();
        lines.push(format!("&\\text{{derived series: }} {}", series(&self.derived_series)));
        lines.push(format!(
            "&\\text{{solvable: {}, nilpotent: {}}}",
            match self.derived_length {
                Some(n) => format!("yes (derived length {})", n),
                None => "no".into(),
            },
            yes(self.nilpotent)
        ));
        align(&lines)
    }
}

impl Render for AnnDoc {
    fn text(&self) -> String {
        let mut out = String::new();
        match &self.closed_form {
            Some(c) => check_text(&mut out, &format!("closed form, labels <= {}", compact(&self.max_label)), c),
            None => out.push_str("  closed form: none registered\n"),
        }
        match &self.filtration {
            Some(c) => check_text(&mut out, &format!("filtration, degrees <= {}", compact(&self.max_label)), c),
            None => out.push_str("  filtration: skipped\n"),
        }
        out.push_str("  brackets on labels <= 1:\n");
        for r in &self.table {
            writeln!(out, "    [{}, {}] = {}", r.left, r.right, r.value).unwrap();
        }
        for r in &self.partial {
            writeln!(out, "    d {} = {}", r.right, r.value).unwrap();
        }
        out
    }

    fn tex(&self) -> String {
        let mut lines = Vec::new();
        if let Some(c) = &self.closed_form {
            check_tex(&mut lines, "closed form", c);
        }
        if let Some(c) = &self.filtration {
            check_tex(&mut lines, "filtration", c);
        }
        for r in &self.table {
            lines.push(format!("[{}, {}] &= {}", tex(&r.left), tex(&r.right), tex(&r.value)));
        }
        for r in &self.partial {
            lines.push(format!("\\partial {} &= {}", tex(&r.right), tex(&r.value)));
        }
        align(&lines)
    }
}

fn action_text(a: &Rank1ActionDoc, order: &[String]) -> String {
    order
        .iter()
        .map(|g| format!("{}: {}", g, a.actions.get(g).map(String::as_str).unwrap_or("0")))
        .collect::<Vec<_>>()
        .join(", ")
}

fn action_tex(a: &Rank1ActionDoc, order: &[String]) -> Vec<String> {
    order
        .iter()
        .map(|g| format!("{}_\\lambda v &= ({})\\, v", g, tex(a.actions.get(g).map(String::as_str).unwrap_or("0"))))
        .collect()
}

fn verdict_tex(v: &VerdictDoc) -> String {
    let words: Vec<String> = v
        .summary
        .split(' ')
        .map(|w| match w {
            "!=" => "$\\neq$".to_string(),
            "<=" => "$\\leq$".to_string(),
            _ if tex_ident(w).starts_with('\\') => format!("${}$", tex_ident(w)),
            _ => w.to_string(),
        })
        .collect();
    format!("&\\text{{{}}}", words.join(" "))
}

impl Render for ClassifyDoc {
    fn text(&self) -> String {
        let mut out = format!("rank-one modules over {}", self.algebra);
        if !self.params.is_empty() {
            write!(out, " at {}", bindings_line(&self.params)).unwrap();
        }
        writeln!(out, " (degree <= {}, submodule degree <= {})", self.degree, self.dmax).unwrap();
        for (k, f) in self.families.iter().enumerate() {
            writeln!(out, "  family {}: {}", k + 1, action_text(&f.action, &self.generators)).unwrap();
            if !f.free.is_empty() {
                writeln!(out, "    parameters: {}", f.free.join(", ")).unwrap();
            }
            writeln!(out, "    {}", f.verdict.summary).unwrap();
        }
        out
    }

    fn tex(&self) -> String {
        let mut lines = Vec::new();
        for (k, f) in self.families.iter().enumerate() {
            lines.push(format!("&\\text{{family {}}}", k + 1));
            lines.extend(action_tex(&f.action, &self.generators));
            lines.push(verdict_tex(&f.verdict));
        }
        align(&lines)
    }
}

impl Render for SubmodulesDoc {
    fn text(&self) -> String {
        let mut out = format!("module {}\n", action_text(&self.action, &self.generators));
        if self.witnesses.is_empty() {
            writeln!(out, "  no submodule generator of degree <= {}", self.dmax).unwrap();
        }
        for w in &self.witnesses {
            writeln!(out, "  submodule generated by ({}) v", w.p).unwrap();
            writeln!(out, "    induced action: {}", action_text(&w.induced, &self.generators)).unwrap();
        }
        writeln!(out, "  {}", self.verdict.summary).unwrap();
        out
    }

    fn tex(&self) -> String {
        let mut lines = action_tex(&self.action, &self.generators);
        for w in &self.witnesses {
            lines.push(format!("&\\text{{submodule generated by }} ({})\\, v", tex(&w.p)));
        }
        lines.push(verdict_tex(&self.verdict));
        align(&lines)
    }
}

impl Render for Dossier {
    fn text(&self) -> String {
        let a = &self.algebra;
        let mut out = format!("algebra {}", a.name);
        if !a.bindings.is_empty() {
            write!(out, " at {}", bindings_line(&a.bindings)).unwrap();
        }
        out.push('\n');
        out.push_str("(d is the derivation, x the bracket variable)\n\n");
        out.push_str("generators\n");
        for g in &a.generators {
            writeln!(out, "  {}  offset {}  shift {}", g.name, compact(&g.offset), compact(&g.shift)).unwrap();
        }
        out.push_str("\nbrackets\n");
        for r in &a.brackets {
            writeln!(out, "  [{}_x {}] = {}", r.left, r.right, r.value).unwrap();
        }
        out.push_str("\naxioms\n");
        out.push_str(&self.axioms.text());
        out.push_str("\nj-th products\n");
        for p in &self.products {
            writeln!(out, "  {}_({}) {} = {}", p.left, p.j, p.right, p.value).unwrap();
        }
        out.push_str("\nannihilation algebra\n");
        out.push_str(&self.annihilation.text());
        if let Some(q) = &self.quotient {
            out.push('\n');
            out.push_str(&q.text());
        }
        if let Some(m) = &self.modules {
            out.push('\n');
            out.push_str(&m.text());
        }
        if !self.notes.is_empty() {
            out.push_str("\nnotes\n");
            for n in &self.notes {
                writeln!(out, "  {}", n).unwrap();
            }
        }
        out
    }

    fn tex(&self) -> String {
        let a = &self.algebra;
        let mut out = format!("% {}", a.name);
        if !a.bindings.is_empty() {
            write!(out, " at {}", bindings_line(&a.bindings)).unwrap();
        }
        out.push('\n');
        let brackets: Vec<String> = a
            .brackets
            .iter()
            .map(|r| format!("[{}_\\lambda {}] &= {}", r.left, r.right, tex(&r.value)))
            .collect();
        out.push_str(&align(&brackets));
        out.push_str(&self.axioms.tex());
        let products: Vec<String> =
            self.products.iter().map(|p| format!("{}_{{({})}} {} &= {}", p.left, p.j, p.right, tex(&p.value))).collect();
        if !products.is_empty() {
            out.push_str(&align(&products));
        }
        out.push_str(&self.annihilation.tex());
        if let Some(q) = &self.quotient {
            out.push_str(&q.tex());
        }
        if let Some(m) = &self.modules {
            out.push_str(&m.tex());
        }
        for n in &self.notes {
            writeln!(out, "% {}", n).unwrap();
        }
        out
    }
}
