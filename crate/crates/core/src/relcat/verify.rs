use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::{Backend, Catalog, KernelElementEntry, Membership, Relation, RelationKind};
use crate::coxeter::DihedralDatum;
use crate::freed::{
    kernel_k12, smash_normal_form, FreeDElement, IdealCertificate, IdealGenerator, IdealOutcome, IdealSearch,
    KernelBasis, Triple, Word,
};
use crate::report::sha256_hex;
use crate::skewalg::DemazureDatum;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Failed,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// How far above a target's degree the ideal search may go.
    pub slack: usize,
    /// Wall-clock budget per relation.
    pub budget: Option<Duration>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { slack: 2, budget: None }
    }
}

impl VerifyOptions {
    fn deadline(&self) -> Option<Instant> {
        self.budget.map(|b| Instant::now() + b)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SkewCheck {
    pub equation: usize,
    pub zero: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum PartCert {
    Found { certificate: IdealCertificate },
    NotFound { maxdeg: usize },
}

impl PartCert {
    pub fn is_found(&self) -> bool {
        matches!(self, PartCert::Found { .. })
    }
}

/// Certificate for the coefficient `x_w` of one group element `w` in the
/// normal form of `lhs - rhs`.
#[derive(Clone, Debug, Serialize)]
pub struct PartCertificate {
    /// Reduced word of `w`.
    pub group: Vec<u8>,
    pub degree: usize,
    #[serde(flatten)]
    pub cert: PartCert,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquationCert {
    pub equation: usize,
    pub parts: Vec<PartCertificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub id: String,
    pub m: u32,
    pub kind: RelationKind,
    pub backend: Backend,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skew: Vec<SkewCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cert: Vec<EquationCert>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Kept out of the JSON so that reports are reproducible byte for byte.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl RelationReport {
    fn new(rel: &Relation, backend: Backend) -> Self {
        RelationReport {
            id: rel.id.clone(),
            m: rel.m,
            kind: rel.kind,
            backend,
            status: Status::Failed,
            skew: Vec::new(),
            cert: Vec::new(),
            error: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Verified
    }
}

/// Evaluates every equation in the Demazure representation of the datum for
/// `rel.m` and checks that `lhs - rhs` is exactly zero.
pub fn verify_skew(rel: &Relation) -> Result<RelationReport> {
    let datum = DemazureDatum::for_m(rel.m).ok_or_else(|| Error::Backend("SKEW".into(), rel.id.clone()))?;
    let start = Instant::now();
    let mut rep = RelationReport::new(rel, Backend::Skew);
    for (i, eq) in rel.equations.iter().enumerate() {
        let zero = datum.eval(&eq.difference())?.is_zero();
        rep.skew.push(SkewCheck { equation: i, zero });
    }
    rep.status = if rep.skew.iter().all(|c| c.zero) { Status::Verified } else { Status::Failed };
    rep.elapsed = start.elapsed();
    Ok(rep)
}

/// Ideal-membership certificates against the integer kernel basis, with the
/// truncated searches cached per degree.
pub struct Certifier {
    datum: DihedralDatum,
    kernel: KernelBasis,
    gens: Vec<IdealGenerator>,
    gens_hash: String,
    searches: BTreeMap<usize, IdealSearch>,
    opts: VerifyOptions,
}

impl Certifier {
    pub fn new(datum: DihedralDatum, opts: VerifyOptions) -> Self {
        Self::with_kernel(datum, kernel_k12(datum, datum.m() as usize), opts)
    }

    pub fn with_kernel(datum: DihedralDatum, kernel: KernelBasis, opts: VerifyOptions) -> Self {
        let gens: Vec<IdealGenerator> =
            kernel.basis.iter().enumerate().map(|(i, x)| IdealGenerator::new(format!("K[{i}]"), x.clone())).collect();
        let elements: Vec<&FreeDElement> = gens.iter().map(|g| &g.element).collect();
        let gens_hash = sha256_hex(serde_json::to_string(&elements).expect("serializable").as_bytes());
        Certifier { datum, kernel, gens, gens_hash, searches: BTreeMap::new(), opts }
    }

    pub fn datum(&self) -> DihedralDatum {
        self.datum
    }

    pub fn kernel(&self) -> &KernelBasis {
        &self.kernel
    }

    pub fn generators(&self) -> &[IdealGenerator] {
        &self.gens
    }

    /// SHA-256 of the JSON list of generators that certificates index into.
    pub fn gens_hash(&self) -> &str {
        &self.gens_hash
    }

    pub fn options(&self) -> &VerifyOptions {
        &self.opts
    }

    fn search(&mut self, maxdeg: usize, deadline: Option<Instant>) -> Result<&mut IdealSearch> {
        if !self.searches.contains_key(&maxdeg) {
            let s = IdealSearch::build(self.datum.m(), self.gens.clone(), maxdeg, true, deadline)?;
            self.searches.insert(maxdeg, s);
        }
        Ok(self.searches.get_mut(&maxdeg).unwrap())
    }

    /// Finds `x` in the ideal generated by the kernel: first as a direct
    /// combination of basis vectors, then by truncated search at degrees
    /// `deg x ..= deg x + slack`.
    pub fn certify(&mut self, x: &FreeDElement, deadline: Option<Instant>) -> Result<PartCert> {
        let dg = x.degree();
        if x.is_zero() {
            let certificate = IdealCertificate { target: x.clone(), maxdeg: 0, triples: Vec::new() };
            return Ok(PartCert::Found { certificate });
        }
        if self.kernel.saturated && dg <= self.kernel.maxdeg {
            if let Some(coords) = self.kernel.coordinates(x) {
                let triples = coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(g, c)| Triple { u: Word::empty(), g, v: Word::empty(), c })
                    .collect();
                let certificate = IdealCertificate { target: x.clone(), maxdeg: dg, triples };
                assert!(certificate.verify(&self.gens), "direct kernel certificate does not replay");
                return Ok(PartCert::Found { certificate });
            }
        }
        let top = dg + self.opts.slack;
        for md in dg.max(1)..=top {
            if let IdealOutcome::Found(certificate) = self.search(md, deadline)?.member(x) {
                return Ok(PartCert::Found { certificate });
            }
        }
        Ok(PartCert::NotFound { maxdeg: top })
    }

    /// Normal form of every equation's difference, each group part certified.
    pub fn certify_relation(&mut self, rel: &Relation) -> RelationReport {
        let start = Instant::now();
        let deadline = self.opts.deadline();
        let mut rep = RelationReport::new(rel, Backend::Cert);
        let mut ok = true;
        for (i, eq) in rel.equations.iter().enumerate() {
            let nf = match smash_normal_form(self.datum, &eq.difference()) {
                Ok(nf) => nf,
                Err(e) => {
                    rep.error = Some(e.to_string());
                    ok = false;
                    break;
                }
            };
            let mut parts = Vec::new();
            for (w, x) in nf.terms() {
                match self.certify(x, deadline) {
                    Ok(cert) => {
                        ok &= cert.is_found();
                        parts.push(PartCertificate { group: w.reduced_word().to_vec(), degree: x.degree(), cert });
                    }
                    Err(e) => {
                        rep.error = Some(e.to_string());
                        ok = false;
                        break;
                    }
                }
            }
            rep.cert.push(EquationCert { equation: i, parts });
            if rep.error.is_some() {
                break;
            }
        }
        rep.status = if ok { Status::Verified } else { Status::Failed };
        rep.elapsed = start.elapsed();
        rep
    }
}

/// Runs one backend on one relation.
pub fn verify(rel: &Relation, backend: Backend, certifier: &mut Certifier) -> Result<RelationReport> {
    if !rel.backends.contains(&backend) {
        return Err(Error::Backend(backend.to_string(), rel.id.clone()));
    }
    match backend {
        Backend::Skew => verify_skew(rel),
        Backend::Cert => Ok(certifier.certify_relation(rel)),
    }
}

/// Runs every applicable backend (optionally only `only`) over the catalog.
/// SKEW jobs run on the current rayon pool; reports come back in catalog
/// order with SKEW before CERT for each relation.
pub fn verify_catalog(cat: &Catalog, only: Option<Backend>, certifier: &mut Certifier) -> Result<Vec<RelationReport>> {
    let wanted = |b: &Backend| only.is_none_or(|o| o == *b);
    let skew: Vec<Result<Option<RelationReport>>> = cat
        .relations
        .par_iter()
        .map(|r| {
            if r.backends.contains(&Backend::Skew) && wanted(&Backend::Skew) {
                verify_skew(r).map(Some)
            } else {
                Ok(None)
            }
        })
        .collect();
    let mut out = Vec::new();
    for (r, s) in cat.relations.iter().zip(skew) {
        if let Some(rep) = s? {
            out.push(rep);
        }
        if r.backends.contains(&Backend::Cert) && wanted(&Backend::Cert) {
            out.push(certifier.certify_relation(r));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelEntryReport {
    pub id: String,
    pub membership: Membership,
    pub degree: usize,
    /// Whether the element lies in the computed kernel lattice.
    pub in_kernel: bool,
    /// Ideal certificate, for entries expected outside the kernel.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal: Option<PartCert>,
    pub status: Status,
}

/// Checks a cataloged element against its expected membership.
pub fn check_kernel_entry(entry: &KernelElementEntry, certifier: &mut Certifier) -> Result<KernelEntryReport> {
    let in_kernel = certifier.kernel().contains(&entry.element);
    let (ideal, ok) = match entry.membership {
        Membership::Kernel => (None, in_kernel),
        Membership::Ideal => {
            let deadline = certifier.options().deadline();
            let c = certifier.certify(&entry.element, deadline)?;
            let found = c.is_found();
            (Some(c), found && !in_kernel)
        }
    };
    Ok(KernelEntryReport {
        id: entry.id.clone(),
        membership: entry.membership,
        degree: entry.element.degree(),
        in_kernel,
        ideal,
        status: if ok { Status::Verified } else { Status::Failed },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relcat::catalog;

    #[test]
    fn b2_relations_pass_both_backends() {
        let cat = catalog(4).unwrap();
        let mut c = Certifier::new(DihedralDatum::new(4).unwrap(), VerifyOptions::default());
        let reps = verify_catalog(&cat, None, &mut c).unwrap();
        assert_eq!(reps.len(), 2 * cat.relations.len());
        for r in &reps {
            assert!(r.passed(), "{} {}", r.id, r.backend);
        }
    }

    #[test]
    fn relation_ten_certificate_target() {
        let cat = catalog(4).unwrap();
        let mut c = Certifier::new(DihedralDatum::new(4).unwrap(), VerifyOptions::default());
        let rep = verify(cat.relation("B-relation10").unwrap(), Backend::Cert, &mut c).unwrap();
        let parts = &rep.cert[0].parts;
        assert_eq!(parts.len(), 1);
        assert!(parts[0].group.is_empty());
        let PartCert::Found { certificate } = &parts[0].cert else { panic!("not found") };
        let expect = FreeDElement::from_pairs(&[(1, &[1, 3]), (-1, &[3, 1])]);
        assert_eq!(certificate.target, expect);
        assert_eq!(certificate.replay(c.generators()), expect);
    }

    #[test]
    fn wrong_relation_fails_both_backends() {
        let mut cat = catalog(4).unwrap();
        let rel = cat.relations.iter_mut().find(|r| r.id == "B-relation5").unwrap();
        // drop one summand of the right-hand side
        rel.equations[0].rhs = crate::skewalg::parse("D1 D2 s1 s2 + s1 D2 D1 s2 + s1 s2 D1 D2 + s1 s2 D1 s2").unwrap();
        let rel = rel.clone();
        let mut c = Certifier::new(DihedralDatum::new(4).unwrap(), VerifyOptions::default());
        assert!(!verify_skew(&rel).unwrap().passed());
        assert!(!c.certify_relation(&rel).passed());
    }

    #[test]
    fn inapplicable_backend_is_an_error() {
        let cat = catalog(5).unwrap();
        let mut c = Certifier::new(DihedralDatum::new(5).unwrap(), VerifyOptions::default());
        let rel = cat.relation("I25-relation17").unwrap();
        assert!(matches!(verify(rel, Backend::Skew, &mut c), Err(Error::Backend(..))));
    }

    #[test]
    fn budget_guard_fails_loudly() {
        let d = DihedralDatum::new(5).unwrap();
        let opts = VerifyOptions { slack: 2, budget: Some(Duration::ZERO) };
        let mut c = Certifier::new(d, opts);
        let x = crate::freed::conj133_family(d).into_iter().find(|e| e.kind == crate::freed::Conj133Kind::Braid).unwrap();
        // the braid element is outside the kernel, so a search is needed
        let big = x.element.mul(&x.element);
        assert!(matches!(c.certify(&big, Some(Instant::now())), Err(Error::Budget(_))));
    }
}
