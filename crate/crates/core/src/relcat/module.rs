use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{catalog, RelationKind};
use crate::exact::{Exponent, LaurentPoly, RatFunc};
use crate::skewalg::{DemazureDatum, Expr};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct ModuleFailure {
    pub id: String,
    pub equation: usize,
    pub input: Vec<i32>,
    /// `non_polynomial` when a division left a denominator.
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleActionReport {
    pub datum: String,
    pub m: u32,
    pub relations: usize,
    pub inputs: Vec<Vec<i32>>,
    pub applications: usize,
    /// `D_i(fg) = D_i(f) g + s_i(f) D_i(g)` on pairs of inputs.
    pub leibniz_checked: usize,
    pub failures: Vec<ModuleFailure>,
}

impl ModuleActionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn monomial(dim: usize, e: &[i32]) -> RatFunc {
    RatFunc::from_poly(LaurentPoly::monomial(BigInt::from(1), Exponent::from_slice(&e[..dim])))
}

fn polynomial(f: RatFunc) -> Option<LaurentPoly> {
    f.as_poly().cloned()
}

/// Applies both sides of every rank-1 and defining relation for the datum's
/// order to `t_1`, `t_2` and `samples` random Laurent monomials, requiring
/// Laurent-polynomial values that agree exactly.
pub fn module_action_check(datum: &DemazureDatum, samples: usize, seed: u64) -> Result<ModuleActionReport> {
    let m = datum.group().m() as u32;
    let dim = datum.dim();
    let cat = catalog(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inputs: Vec<Vec<i32>> = (0..dim).map(|i| (0..dim).map(|j| i32::from(i == j)).collect()).collect();
    inputs.extend((0..samples).map(|_| (0..dim).map(|_| rng.gen_range(-4..=4)).collect()));
    let mut rep = ModuleActionReport {
        datum: datum.name.clone(),
        m,
        relations: 0,
        inputs: inputs.clone(),
        applications: 0,
        leibniz_checked: 0,
        failures: Vec::new(),
    };
    let fail = |rep: &mut ModuleActionReport, id: &str, equation: usize, input: &[i32], reason: &str| {
        rep.failures.push(ModuleFailure { id: id.into(), equation, input: input.to_vec(), reason: reason.into() });
    };
    for r in cat.relations.iter().filter(|r| r.kind != RelationKind::Derived) {
        rep.relations += 1;
        for (j, eq) in r.equations.iter().enumerate() {
            let (lhs, rhs) = (datum.eval(&eq.lhs)?, datum.eval(&eq.rhs)?);
            for e in &inputs {
                let f = monomial(dim, e);
                rep.applications += 1;
                match (polynomial(lhs.apply(&f)), polynomial(rhs.apply(&f))) {
                    (Some(a), Some(b)) if a == b => {}
                    (Some(_), Some(_)) => fail(&mut rep, &r.id, j, e, "unequal"),
                    _ => fail(&mut rep, &r.id, j, e, "non_polynomial"),
                }
            }
        }
    }
    for i in 1..=2u8 {
        let di = datum.eval(&Expr::D(i))?;
        let si = datum.eval(&Expr::S(i))?;
        for pair in inputs.windows(2) {
            let (f, g) = (monomial(dim, &pair[0]), monomial(dim, &pair[1]));
            let lhs = di.apply(&f.mul(&g));
            let rhs = di.apply(&f).mul(&g).add(&si.apply(&f).mul(&di.apply(&g)));
            rep.leibniz_checked += 1;
            if lhs.as_poly().is_none() || !lhs.sub(&rhs).is_zero() {
                let label = format!("leibniz D{i}");
                let input: Vec<i32> = pair.concat();
                fail(&mut rep, &label, 0, &input, "unequal");
            }
        }
    }
    if rep.relations == 0 {
        return Err(Error::Backend("module action".into(), format!("m = {m}")));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b2_action_is_polynomial_and_consistent() {
        let rep = module_action_check(&DemazureDatum::b2(), 5, 1).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(rep.inputs.len(), 7);
        assert!(rep.applications > 0);
    }

    #[test]
    fn wrong_relation_is_caught() {
        let d = DemazureDatum::b2();
        let bad = d.eval(&crate::skewalg::parse("D1 D2 - D2 D1").unwrap()).unwrap();
        let f = monomial(2, &[1, 0]);
        assert!(!bad.apply(&f).is_zero());
    }
}
