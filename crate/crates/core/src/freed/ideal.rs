use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use super::modp::{self, Echelon};
use super::{word_basis, FreeDElement, Word};
use crate::{Error, Result};

/// A named generator of a two-sided ideal of `D̂(W)`.
#[derive(Clone, Debug)]
pub struct IdealGenerator {
    pub label: String,
    pub element: FreeDElement,
}

impl IdealGenerator {
    pub fn new(label: impl Into<String>, element: FreeDElement) -> Self {
        IdealGenerator { label: label.into(), element }
    }
}

/// `c · u · g · v` with `g` an index into the generator list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triple {
    pub u: Word,
    pub g: usize,
    pub v: Word,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub c: BigInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealCertificate {
    pub target: FreeDElement,
    pub maxdeg: usize,
    pub triples: Vec<Triple>,
}

impl IdealCertificate {
    /// `Σ c · u · g · v`, reduced.
    pub fn replay(&self, gens: &[IdealGenerator]) -> FreeDElement {
        let mut acc = FreeDElement::zero();
        for t in &self.triples {
            acc.add_scaled(&gens[t.g].element.sandwich(&t.u, &t.v), &t.c);
        }
        acc
    }

    pub fn verify(&self, gens: &[IdealGenerator]) -> bool {
        self.triples.iter().all(|t| t.g < gens.len() && t.u.len() + gens[t.g].element.degree() + t.v.len() <= self.maxdeg)
            && self.replay(gens) == self.target
    }
}

#[derive(Clone, Debug)]
pub enum IdealOutcome {
    Found(IdealCertificate),
    /// Not in the span of the truncated products; conclusive only for the
    /// truncation degree.
    NotFound { maxdeg: usize },
}

impl IdealOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, IdealOutcome::Found(_))
    }
}

/// The span of all `u · g · v` with `len(u) + deg(g) + len(v) ≤ maxdeg`,
/// held in echelon form mod `p`.
///
/// A target reducing to zero mod `p` yields a combination of products that is
/// lifted to integers and replayed exactly before it is returned; a nonzero
/// remainder mod `p` rules out membership over the integers as well.
pub struct IdealSearch {
    gens: Vec<IdealGenerator>,
    maxdeg: usize,
    index: HashMap<Word, u32>,
    words: Vec<Word>,
    rows: Vec<(u32, Word, Word)>,
    echelon: Echelon,
}

impl IdealSearch {
    /// Builds the truncated span. With `track` off only non-membership can
    /// be decided.
    pub fn new(m: u8, gens: Vec<IdealGenerator>, maxdeg: usize, track: bool) -> Self {
        Self::build(m, gens, maxdeg, track, None).expect("no deadline was set")
    }

    /// As [`IdealSearch::new`], giving up with [`Error::Budget`] once
    /// `deadline` has passed.
    pub fn build(m: u8, gens: Vec<IdealGenerator>, maxdeg: usize, track: bool, deadline: Option<Instant>) -> Result<Self> {
        let words = word_basis(m, maxdeg);
        let index: HashMap<Word, u32> = words.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        let mut by_len: Vec<Vec<&Word>> = vec![Vec::new(); maxdeg + 1];
        for w in &words {
            by_len[w.len()].push(w);
        }
        let mut search =
            IdealSearch { gens, maxdeg, echelon: Echelon::new(words.len(), track), index, words: Vec::new(), rows: Vec::new() };
        let mut inserted = 0usize;
        for gi in 0..search.gens.len() {
            let g = search.gens[gi].element.clone();
            if g.is_zero() || g.degree() > maxdeg {
                continue;
            }
            let room = maxdeg - g.degree();
            for lu in 0..=room {
                for u in &by_len[lu] {
                    let left = g.mul_word_left(u);
                    for lv in 0..=room - lu {
                        for v in &by_len[lv] {
                            let prod = left.mul_word_right(v);
                            let row = search.sparse(&prod);
                            if row.is_empty() {
                                continue;
                            }
                            inserted += 1;
                            if inserted.is_multiple_of(1024) && deadline.is_some_and(|t| Instant::now() > t) {
                                return Err(Error::Budget(format!("ideal search at maxdeg {maxdeg}")));
                            }
                            let tag = search.rows.len() as u32;
                            search.echelon.insert(&row, tag);
                            if track {
                                search.rows.push((gi as u32, (*u).clone(), (*v).clone()));
                            }
                        }
                    }
                }
            }
        }
        search.words = words;
        Ok(search)
    }

    fn sparse(&self, x: &FreeDElement) -> Vec<(u32, u64)> {
        let mut row: Vec<(u32, u64)> = x.terms().map(|(w, c)| (self.index[w], modp::from_bigint(c))).collect();
        row.sort_unstable_by_key(|&(c, _)| c);
        row.retain(|&(_, v)| v != 0);
        row
    }

    pub fn generators(&self) -> &[IdealGenerator] {
        &self.gens
    }

    pub fn maxdeg(&self) -> usize {
        self.maxdeg
    }

    /// Dimension of the truncated span.
    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn ncols(&self) -> usize {
        self.words.len()
    }

    /// Whether `target` is in the truncated span mod `p`.
    pub fn contains_mod_p(&mut self, target: &FreeDElement) -> bool {
        if target.degree() > self.maxdeg {
            return false;
        }
        let row = self.sparse(target);
        self.echelon.reduce(&row).0.is_empty()
    }

    pub fn member(&mut self, target: &FreeDElement) -> IdealOutcome {
        let not_found = IdealOutcome::NotFound { maxdeg: self.maxdeg };
        if target.degree() > self.maxdeg {
            return not_found;
        }
        let row = self.sparse(target);
        let (rem, combo) = self.echelon.reduce(&row);
        if !rem.is_empty() {
            return not_found;
        }
        let combo = combo.expect("ideal search built without tracking cannot produce certificates");
        let mut triples = Vec::with_capacity(combo.len());
        for (tag, v) in combo {
            let c = modp::lift_int(v).expect("certificate coefficient does not lift to an integer");
            let (g, u, w) = &self.rows[tag as usize];
            triples.push(Triple { u: u.clone(), g: *g as usize, v: w.clone(), c });
        }
        let cert = IdealCertificate { target: target.clone(), maxdeg: self.maxdeg, triples };
        assert!(cert.verify(&self.gens), "lifted certificate does not replay to the target");
        IdealOutcome::Found(cert)
    }
}

/// One-shot membership test of `target` in the ideal generated by `gens`,
/// truncated at `maxdeg`.
pub fn ideal_member(m: u8, target: &FreeDElement, gens: &[IdealGenerator], maxdeg: usize) -> IdealOutcome {
    IdealSearch::new(m, gens.to_vec(), maxdeg, true).member(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::DihedralDatum;
    use crate::freed::kernel_k12;

    fn kernel_gens(m: u32) -> Vec<IdealGenerator> {
        let k = kernel_k12(DihedralDatum::new(m).unwrap(), m as usize);
        k.basis.into_iter().enumerate().map(|(i, x)| IdealGenerator::new(format!("k{i}"), x)).collect()
    }

    #[test]
    fn kernel_element_has_certificate() {
        let gens = kernel_gens(4);
        let target = FreeDElement::from_pairs(&[(1, &[1, 3]), (-1, &[3, 1])]);
        match ideal_member(4, &target, &gens, 4) {
            IdealOutcome::Found(cert) => {
                assert!(cert.verify(&gens));
                assert_eq!(cert.replay(&gens), target);
            }
            IdealOutcome::NotFound { .. } => panic!("kernel element not found"),
        }
    }

    #[test]
    fn products_with_generators_are_found() {
        let gens = kernel_gens(3);
        let g = &gens[0].element;
        let target = g.sandwich(&Word::from_letters(&[2]), &Word::from_letters(&[1, 3])).scale(&BigInt::from(-3));
        let IdealOutcome::Found(cert) = ideal_member(3, &target, &gens, 3 + g.degree()) else {
            panic!("sandwich not found");
        };
        assert!(cert.verify(&gens));
    }

    #[test]
    fn generators_are_not_in_proper_ideal() {
        // the counit is a ring map vanishing on the kernel, so 1 is never in the ideal
        let gens = kernel_gens(4);
        let mut s = IdealSearch::new(4, gens, 5, false);
        assert!(!s.contains_mod_p(&FreeDElement::one()));
        assert!(!s.contains_mod_p(&FreeDElement::letter(2)));
        assert!(matches!(s.member(&FreeDElement::one()), IdealOutcome::NotFound { maxdeg: 5 }));
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let gens = kernel_gens(4);
        let target = FreeDElement::from_pairs(&[(1, &[1, 3]), (-1, &[3, 1])]);
        let IdealOutcome::Found(mut cert) = ideal_member(4, &target, &gens, 4) else { panic!() };
        cert.triples[0].c += 1;
        assert!(!cert.verify(&gens));
    }
}
