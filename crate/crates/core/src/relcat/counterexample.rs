use serde::Serialize;

use super::catalog;
use crate::coxeter::DihedralDatum;
use crate::freed::{
    conj133_family, kernel_k12, FreeDElement, IdealCertificate, IdealGenerator, IdealOutcome, IdealSearch,
};
use crate::Result;

/// Ids of the three order-6 elements that lie outside the conjectured ideal.
pub const G2_TARGETS: [&str; 3] = ["G2-K12W2-element1", "G2-K12W2-element2", "G2-K12W2-element3"];

#[derive(Clone, Debug, Serialize)]
pub struct ConjOutcome {
    pub id: String,
    pub degree: usize,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<IdealCertificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Conj133Search {
    pub m: u32,
    pub generators: Vec<String>,
    /// Truncation degree; a NOT_FOUND is relative to it.
    pub maxdeg: usize,
    pub outcomes: Vec<ConjOutcome>,
}

impl Conj133Search {
    pub fn found(&self) -> usize {
        self.outcomes.iter().filter(|o| o.found).count()
    }
}

pub fn conj133_generators(d: DihedralDatum) -> Vec<IdealGenerator> {
    conj133_family(d).into_iter().map(|e| IdealGenerator::new(e.label(), e.element)).collect()
}

/// Membership of each target in the ideal generated by the conjectured
/// relations, truncated at `maxdeg`. Non-membership is decided mod `p`
/// without tracking; found targets get a replayed certificate.
pub fn conj133_search(d: DihedralDatum, targets: &[(String, FreeDElement)], maxdeg: usize) -> Conj133Search {
    let gens = conj133_generators(d);
    let names = gens.iter().map(|g| g.label.clone()).collect();
    let mut probe = IdealSearch::new(d.m(), gens.clone(), maxdeg, false);
    let hits: Vec<bool> = targets.iter().map(|(_, x)| probe.contains_mod_p(x)).collect();
    drop(probe);
    let mut tracked = hits.iter().any(|&h| h).then(|| IdealSearch::new(d.m(), gens, maxdeg, true));
    let outcomes = targets
        .iter()
        .zip(hits)
        .map(|((id, x), hit)| {
            let certificate = match (hit, tracked.as_mut()) {
                (true, Some(s)) => match s.member(x) {
                    IdealOutcome::Found(c) => Some(c),
                    IdealOutcome::NotFound { .. } => None,
                },
                _ => None,
            };
            ConjOutcome { id: id.clone(), degree: x.degree(), found: certificate.is_some(), certificate }
        })
        .collect();
    Conj133Search { m: d.m() as u32, generators: names, maxdeg, outcomes }
}

/// Every cataloged order-4 kernel element and every vector of the computed
/// kernel basis.
pub fn b2_targets() -> Result<Vec<(String, FreeDElement)>> {
    let d = DihedralDatum::new(4)?;
    let cat = catalog(4)?;
    let mut out: Vec<(String, FreeDElement)> =
        cat.kernel_elements.iter().map(|e| (e.id.clone(), e.element.clone())).collect();
    let k = kernel_k12(d, 4);
    out.extend(k.basis.into_iter().enumerate().map(|(i, x)| (format!("K[{i}]"), x)));
    Ok(out)
}

pub fn g2_targets() -> Result<Vec<(String, FreeDElement)>> {
    let cat = catalog(6)?;
    Ok(G2_TARGETS
        .iter()
        .map(|id| (id.to_string(), cat.kernel_element(id).expect("order-6 catalog entry").element.clone()))
        .collect())
}
