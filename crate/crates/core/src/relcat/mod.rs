//! The relation catalog: every named relation and Demazure-subalgebra element,
//! loaded from tab-separated data files and checked by the verification
//! backends.
//!
//! Data files (one relation equation per line):
//!
//! ```text
//! relations_m<m>.tsv   id  lhs  rhs  m  backends  citation
//! rank1.tsv            id  lhs  rhs  *  backends  citation
//! kernel_m<m>.tsv      id  element  m  membership  citation
//! ```
//!
//! Lines sharing an id form one relation with several equations. The
//! citation starts with `defining`, `derived` or `rank-1`. The built-in copies
//! are compiled in; `HECKEFORGE_DATA` points at a directory that overrides
//! them.

mod counterexample;
mod hopf;
mod module;
mod verify;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::coxeter::DihedralDatum;
use crate::freed::{smash_normal_form, FreeDElement};
use crate::report::sha256_hex;
use crate::skewalg::{parse, Expr};
use crate::{Error, Result};

pub use counterexample::{
    b2_targets, conj133_generators, conj133_search, g2_targets, Conj133Search, ConjOutcome, G2_TARGETS,
};
pub use module::{module_action_check, ModuleActionReport, ModuleFailure};
pub use hopf::{antipode_expr, counit_expr, hopf_generator_checks, CounitCheck, HopfCheck, HopfReport};
pub use verify::{
    check_kernel_entry, verify, verify_catalog, verify_skew, Certifier, EquationCert, KernelEntryReport, PartCert,
    PartCertificate, RelationReport, SkewCheck, Status, VerifyOptions,
};

pub const DATA_ENV: &str = "HECKEFORGE_DATA";

const RANK1: &str = include_str!("../../data/rank1.tsv");

fn builtin(name: &str) -> Option<&'static str> {
    Some(match name {
        "relations_m2.tsv" => include_str!("../../data/relations_m2.tsv"),
        "relations_m3.tsv" => include_str!("../../data/relations_m3.tsv"),
        "relations_m4.tsv" => include_str!("../../data/relations_m4.tsv"),
        "relations_m5.tsv" => include_str!("../../data/relations_m5.tsv"),
        "relations_m6.tsv" => include_str!("../../data/relations_m6.tsv"),
        "kernel_m2.tsv" => include_str!("../../data/kernel_m2.tsv"),
        "kernel_m3.tsv" => include_str!("../../data/kernel_m3.tsv"),
        "kernel_m4.tsv" => include_str!("../../data/kernel_m4.tsv"),
        "kernel_m5.tsv" => include_str!("../../data/kernel_m5.tsv"),
        "kernel_m6.tsv" => include_str!("../../data/kernel_m6.tsv"),
        "rank1.tsv" => RANK1,
        _ => return None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Backend {
    #[serde(rename = "SKEW")]
    Skew,
    #[serde(rename = "CERT")]
    Cert,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Skew => "SKEW",
            Backend::Cert => "CERT",
        })
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_uppercase().as_str() {
            "SKEW" => Ok(Backend::Skew),
            "CERT" => Ok(Backend::Cert),
            other => Err(format!("unknown backend `{other}` (expected SKEW or CERT)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Rank1,
    Defining,
    Derived,
}

#[derive(Clone, Debug)]
pub struct Equation {
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Equation {
    pub fn difference(&self) -> Expr {
        Expr::sub(self.lhs.clone(), self.rhs.clone())
    }
}

#[derive(Clone, Debug)]
pub struct Relation {
    pub id: String,
    pub m: u32,
    pub kind: RelationKind,
    pub equations: Vec<Equation>,
    pub backends: Vec<Backend>,
    pub citation: String,
}

/// Where a cataloged element of `D̂(W)` is expected to lie.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    /// Annihilated by the counit and all twisted derivations.
    Kernel,
    /// In the two-sided ideal generated by the kernel, but not in the kernel.
    Ideal,
}

#[derive(Clone, Debug)]
pub struct KernelElementEntry {
    pub id: String,
    pub m: u32,
    pub source: String,
    pub element: FreeDElement,
    pub membership: Membership,
    pub citation: String,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub m: u32,
    pub relations: Vec<Relation>,
    pub kernel_elements: Vec<KernelElementEntry>,
    /// SHA-256 of the data files the catalog was read from, in load order.
    pub hash: String,
}

/// `(defining, derived)` relation counts for the orders with a fixed
/// presentation.
pub fn expected_counts(m: u32) -> Option<(usize, usize)> {
    match m {
        4 => Some((6, 5)),
        5 => Some((9, 8)),
        6 => Some((12, 11)),
        _ => None,
    }
}

fn data_dir() -> Option<PathBuf> {
    std::env::var_os(DATA_ENV).map(PathBuf::from)
}

fn read_file(dir: Option<&Path>, name: &str) -> Result<String> {
    match dir {
        Some(d) => Ok(std::fs::read_to_string(d.join(name))?),
        None => builtin(name).map(str::to_owned).ok_or_else(|| Error::Catalog {
            file: name.into(),
            line: 0,
            msg: "no built-in copy".into(),
        }),
    }
}

/// Loads the catalog for `m`, honoring `HECKEFORGE_DATA`.
pub fn catalog(m: u32) -> Result<Catalog> {
    Catalog::load(m, data_dir().as_deref())
}

impl Catalog {
    /// Loads from `dir`, or from the built-in data when `None`.
    pub fn load(m: u32, dir: Option<&Path>) -> Result<Catalog> {
        let d = DihedralDatum::new(m)?;
        let files = ["rank1.tsv".to_string(), format!("relations_m{m}.tsv"), format!("kernel_m{m}.tsv")];
        let mut contents = Vec::new();
        for f in &files {
            contents.push(read_file(dir, f)?);
        }
        let hash = sha256_hex(contents.concat().as_bytes());
        let mut relations = parse_relations(&files[0], &contents[0], m)?;
        relations.extend(parse_relations(&files[1], &contents[1], m)?);
        let kernel_elements = parse_kernel(&files[2], &contents[2], d)?;
        let cat = Catalog { m, relations, kernel_elements, hash };
        if let Some((def, der)) = expected_counts(m) {
            let (a, b) = (cat.count(RelationKind::Defining), cat.count(RelationKind::Derived));
            if (a, b) != (def, der) {
                return Err(Error::Catalog {
                    file: files[1].clone(),
                    line: 0,
                    msg: format!("expected {def} defining + {der} derived relations, found {a} + {b}"),
                });
            }
        }
        Ok(cat)
    }

    pub fn count(&self, kind: RelationKind) -> usize {
        self.relations.iter().filter(|r| r.kind == kind).count()
    }

    pub fn relation(&self, id: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.id == id)
    }

    pub fn kernel_element(&self, id: &str) -> Option<&KernelElementEntry> {
        self.kernel_elements.iter().find(|e| e.id == id)
    }
}

fn catalog_err(file: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::Catalog { file: file.into(), line, msg: msg.into() }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

fn parse_expr(file: &str, line: usize, src: &str) -> Result<Expr> {
    parse(src).map_err(|e| catalog_err(file, line, format!("`{src}`: {e}")))
}

fn parse_relations(file: &str, text: &str, m: u32) -> Result<Vec<Relation>> {
    let mut out: Vec<Relation> = Vec::new();
    for (ln, line) in data_lines(text) {
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 6 {
            return Err(catalog_err(file, ln, format!("expected 6 tab-separated fields, found {}", f.len())));
        }
        let row_m = f[3].trim();
        if row_m != "*" && row_m.parse::<u32>().ok() != Some(m) {
            return Err(catalog_err(file, ln, format!("m field `{row_m}` does not match {m}")));
        }
        let mut backends = Vec::new();
        for b in f[4].split(',') {
            backends.push(b.parse::<Backend>().map_err(|e| catalog_err(file, ln, e))?);
        }
        backends.sort();
        backends.dedup();
        if backends.is_empty() {
            return Err(catalog_err(file, ln, "no backends"));
        }
        if m == 5 && backends.contains(&Backend::Skew) && row_m != "*" {
            return Err(catalog_err(file, ln, "m = 5 has no integral Cartan datum, SKEW is not available"));
        }
        if m == 5 {
            backends.retain(|b| *b != Backend::Skew);
        }
        let citation = f[5].trim().to_string();
        let kind = match citation.split(':').next().unwrap_or("").trim() {
            "defining" => RelationKind::Defining,
            "derived" => RelationKind::Derived,
            "rank-1" => RelationKind::Rank1,
            other => return Err(catalog_err(file, ln, format!("unknown relation kind `{other}`"))),
        };
        let eq = Equation { lhs: parse_expr(file, ln, f[1])?, rhs: parse_expr(file, ln, f[2])? };
        let id = f[0].trim();
        match out.last_mut() {
            Some(r) if r.id == id => {
                if r.kind != kind || r.backends != backends {
                    return Err(catalog_err(file, ln, format!("inconsistent continuation of `{id}`")));
                }
                r.equations.push(eq);
            }
            _ => {
                if out.iter().any(|r| r.id == id) {
                    return Err(catalog_err(file, ln, format!("duplicate id `{id}`")));
                }
                out.push(Relation { id: id.into(), m, kind, equations: vec![eq], backends, citation });
            }
        }
    }
    Ok(out)
}

fn parse_kernel(file: &str, text: &str, d: DihedralDatum) -> Result<Vec<KernelElementEntry>> {
    let mut out: Vec<KernelElementEntry> = Vec::new();
    for (ln, line) in data_lines(text) {
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 5 {
            return Err(catalog_err(file, ln, format!("expected 5 tab-separated fields, found {}", f.len())));
        }
        if f[2].trim().parse::<u32>().ok() != Some(d.m() as u32) {
            return Err(catalog_err(file, ln, format!("m field `{}` does not match {}", f[2], d.m())));
        }
        let expr = parse_expr(file, ln, f[1])?;
        let sm = smash_normal_form(d, &expr).map_err(|e| catalog_err(file, ln, e.to_string()))?;
        let element = sm.part(d.identity());
        if sm.terms().any(|(w, _)| !w.is_identity()) {
            return Err(catalog_err(file, ln, "element has a nontrivial group part"));
        }
        let membership = match f[3].trim() {
            "kernel" => Membership::Kernel,
            "ideal" => Membership::Ideal,
            other => return Err(catalog_err(file, ln, format!("unknown membership `{other}`"))),
        };
        // the kernel condition is cheap to check directly; ideal membership
        // is left to the certificate backend
        let in_k = crate::freed::in_kernel(d, &element);
        if in_k != (membership == Membership::Kernel) {
            return Err(catalog_err(
                file,
                ln,
                format!("`{}` is tagged {:?} but kernel membership is {in_k}", f[0].trim(), membership),
            ));
        }
        out.push(KernelElementEntry {
            id: f[0].trim().into(),
            m: d.m() as u32,
            source: f[1].trim().into(),
            element,
            membership,
            citation: f[4].trim().into(),
        });
    }
    Ok(out)
}
