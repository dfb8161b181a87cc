use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::verify::{Certifier, RelationReport, Status};
use super::{catalog, Equation, Relation, RelationKind};
use crate::coxeter::{DihedralDatum, ReflectionIndex};
use crate::freed::smash_normal_form;
use crate::report::ser_bigint;
use crate::skewalg::{hat_conjugator, Expr};
use crate::{Error, Result};

/// `ε` on the smash model: `ε(s_i) = 1`, `ε(D) = 0`, extended multiplicatively.
pub fn counit_expr(e: &Expr) -> Result<BigInt> {
    Ok(match e {
        Expr::Int(c) => c.clone(),
        Expr::S(_) => BigInt::one(),
        Expr::D(_) | Expr::Dh(_) => BigInt::zero(),
        Expr::X(_) | Expr::Q(_) => return Err(Error::BadAtom(e.to_string())),
        Expr::Neg(a) => -counit_expr(a)?,
        Expr::Add(a, b) => counit_expr(a)? + counit_expr(b)?,
        Expr::Sub(a, b) => counit_expr(a)? - counit_expr(b)?,
        Expr::Mul(a, b) => counit_expr(a)? * counit_expr(b)?,
    })
}

fn word_expr(letters: &[u8]) -> Expr {
    Expr::product(letters.iter().map(|&i| Expr::S(i)))
}

fn antipode_atom(d: DihedralDatum, e: &Expr) -> Result<Expr> {
    let minus_sd = |i: u8| Expr::Neg(Box::new(Expr::mul(Expr::S(i), Expr::D(i))));
    Ok(match e {
        Expr::Int(_) | Expr::S(_) => e.clone(),
        Expr::D(i) => minus_sd(*i),
        Expr::Dh(k) => {
            if *k == 0 || *k > d.m() {
                return Err(Error::BadAtom(e.to_string()));
            }
            // D̂_k = w D_i w⁻¹, so S(D̂_k) = w S(D_i) w⁻¹
            let (w, i) = hat_conjugator(d, ReflectionIndex(*k));
            Expr::product([word_expr(w.reduced_word()), minus_sd(i), word_expr(w.inverse().reduced_word())])
        }
        Expr::X(_) | Expr::Q(_) => return Err(Error::BadAtom(e.to_string())),
        _ => unreachable!("not an atom"),
    })
}

/// The antipode: products reversed, `s_i ↦ s_i`, `D_i ↦ -s_i D_i`.
pub fn antipode_expr(d: DihedralDatum, e: &Expr) -> Result<Expr> {
    Ok(match e {
        Expr::Neg(a) => Expr::Neg(Box::new(antipode_expr(d, a)?)),
        Expr::Add(a, b) => Expr::add(antipode_expr(d, a)?, antipode_expr(d, b)?),
        Expr::Sub(a, b) => Expr::sub(antipode_expr(d, a)?, antipode_expr(d, b)?),
        Expr::Mul(a, b) => Expr::mul(antipode_expr(d, b)?, antipode_expr(d, a)?),
        atom => antipode_atom(d, atom)?,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounitCheck {
    pub id: String,
    pub equation: usize,
    #[serde(serialize_with = "ser_bigint")]
    pub lhs: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub rhs: BigInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfReport {
    pub m: u32,
    pub generator_axioms: Vec<HopfCheck>,
    pub counit: Vec<CounitCheck>,
    /// CERT reports for the antipode images of the defining relations.
    pub antipode: Vec<RelationReport>,
    pub status: Status,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Verified
    }
}

fn smash_zero(d: DihedralDatum, e: &Expr) -> Result<bool> {
    Ok(smash_normal_form(d, e)?.is_zero())
}

/// Generator-level Hopf checks in the smash model: counit and antipode
/// axioms on `s_i` and `D_i`, the counit on both sides of every relation,
/// and CERT verification of the antipode image of every defining relation.
pub fn hopf_generator_checks(certifier: &mut Certifier) -> Result<HopfReport> {
    let d = certifier.datum();
    let m = d.m() as u32;
    let cat = catalog(m)?;
    let mut axioms = Vec::new();
    for i in 1..=2u8 {
        let (s, dd) = (Expr::S(i), Expr::D(i));
        axioms.push(HopfCheck { name: format!("counit(s{i}) = 1"), passed: counit_expr(&s)?.is_one() });
        axioms.push(HopfCheck { name: format!("counit(D{i}) = 0"), passed: counit_expr(&dd)?.is_zero() });
        let ss = antipode_expr(d, &s)?;
        axioms.push(HopfCheck {
            name: format!("S(s{i}) s{i} = 1"),
            passed: smash_zero(d, &Expr::sub(Expr::mul(ss.clone(), s.clone()), Expr::int(1)))?,
        });
        axioms.push(HopfCheck {
            name: format!("S(s{i})^2 = 1"),
            passed: smash_zero(d, &Expr::sub(Expr::mul(ss.clone(), ss), Expr::int(1)))?,
        });
        // Δ(D_i) = D_i ⊗ 1 + s_i ⊗ D_i
        let sd = antipode_expr(d, &dd)?;
        let left = Expr::add(Expr::mul(sd.clone(), Expr::int(1)), Expr::mul(antipode_expr(d, &s)?, dd.clone()));
        axioms.push(HopfCheck { name: format!("m(S⊗id)Δ(D{i}) = 0"), passed: smash_zero(d, &left)? });
        let right = Expr::add(Expr::mul(dd.clone(), Expr::int(1)), Expr::mul(s.clone(), sd));
        axioms.push(HopfCheck { name: format!("m(id⊗S)Δ(D{i}) = 0"), passed: smash_zero(d, &right)? });
    }
    let mut counit = Vec::new();
    for r in &cat.relations {
        for (j, eq) in r.equations.iter().enumerate() {
            counit.push(CounitCheck { id: r.id.clone(), equation: j, lhs: counit_expr(&eq.lhs)?, rhs: counit_expr(&eq.rhs)? });
        }
    }
    let mut antipode = Vec::new();
    for r in cat.relations.iter().filter(|r| r.kind != RelationKind::Derived) {
        let mut equations = Vec::new();
        for eq in &r.equations {
            equations.push(Equation { lhs: antipode_expr(d, &eq.lhs)?, rhs: antipode_expr(d, &eq.rhs)? });
        }
        let image = Relation { id: format!("S({})", r.id), equations, ..r.clone() };
        antipode.push(certifier.certify_relation(&image));
    }
    let ok = axioms.iter().all(|a| a.passed)
        && counit.iter().all(|c| c.lhs == c.rhs)
        && antipode.iter().all(|a| a.passed());
    Ok(HopfReport {
        m,
        generator_axioms: axioms,
        counit,
        antipode,
        status: if ok { Status::Verified } else { Status::Failed },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relcat::VerifyOptions;
    use crate::skewalg::parse;

    #[test]
    fn counit_of_relation_five() {
        let cat = catalog(4).unwrap();
        let eq = &cat.relation("B-relation5").unwrap().equations[0];
        assert_eq!(counit_expr(&eq.lhs).unwrap(), BigInt::zero());
        assert_eq!(counit_expr(&eq.rhs).unwrap(), BigInt::zero());
        assert_eq!(counit_expr(&parse("s1 s2 - 3 s1 + D1").unwrap()).unwrap(), BigInt::from(-2));
    }

    #[test]
    fn antipode_reverses_products() {
        let d = DihedralDatum::new(4).unwrap();
        let s = antipode_expr(d, &parse("s1 D2").unwrap()).unwrap();
        let expect = parse("-(s2 D2) s1").unwrap();
        assert!(smash_normal_form(d, &Expr::sub(s, expect)).unwrap().is_zero());
    }

    #[test]
    fn antipode_of_hat_generator_matches_conjugation() {
        // S is an anti-automorphism, so S(w D_i w⁻¹) = w S(D_i) w⁻¹ however
        // D̂_k is written
        let d = DihedralDatum::new(6).unwrap();
        for k in 1..=6u8 {
            let (w, i) = hat_conjugator(d, ReflectionIndex(k));
            let conj = Expr::product([word_expr(w.reduced_word()), Expr::D(i), word_expr(w.inverse().reduced_word())]);
            let a = antipode_expr(d, &Expr::Dh(k)).unwrap();
            let b = antipode_expr(d, &conj).unwrap();
            assert!(smash_normal_form(d, &Expr::sub(a, b)).unwrap().is_zero(), "k={k}");
        }
    }

    #[test]
    fn b2_hopf_checks_pass() {
        let mut c = Certifier::new(DihedralDatum::new(4).unwrap(), VerifyOptions::default());
        let rep = hopf_generator_checks(&mut c).unwrap();
        for a in &rep.generator_axioms {
            assert!(a.passed, "{}", a.name);
        }
        for r in &rep.antipode {
            assert!(r.passed(), "{}", r.id);
        }
        assert!(rep.passed());
    }
}
