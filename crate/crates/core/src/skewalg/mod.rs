//! The skew group algebra `Q ⋊ ZW` and the Demazure assignment
//! `s_i ↦ s_i`, `D_i ↦ (1 - t^{v_i})^{-1}(1 - s_i)`.

mod expr;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

pub use expr::{parse, Expr};

use crate::coxeter::{DihedralDatum, GroupElement, ReflectionIndex};
use crate::exact::{Exponent, LaurentPoly, MonomialAction, RatFunc};
use crate::{Error, Result};

/// Coordinates of the `q` parameters when the exponent lattice carries them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeInfo {
    /// Exponent coordinate holding `q_1` and `q_2` (equal when conjugate).
    pub q_coord: [usize; 2],
}

/// A rank-2 Cartan datum with its monomial action and the denominator
/// exponents of the Demazure generators.
#[derive(Clone, Debug)]
pub struct DemazureDatum {
    pub name: String,
    pub a12: i32,
    pub a21: i32,
    action: Arc<MonomialAction>,
    v: [Exponent; 2],
    lattice: Option<LatticeInfo>,
    names: Vec<String>,
}

impl PartialEq for DemazureDatum {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.a12 == other.a12 && self.a21 == other.a21 && self.v == other.v
    }
}

/// `m` from a Cartan pair: `2 + a12 a21` when the product is at most 2,
/// and 6 when it is 3.
pub fn coxeter_m(a12: i32, a21: i32) -> Option<u32> {
    match a12 * a21 {
        p @ 0..=2 => Some(2 + p as u32),
        3 => Some(6),
        _ => None,
    }
}

impl DemazureDatum {
    /// Data in the variables `t1, t2` with `s_i(t_j) = t_i^{-a_ij} t_j` and
    /// `v_i = e_i`.
    pub fn cartan(name: &str, a12: i32, a21: i32) -> Self {
        let m = coxeter_m(a12, a21).expect("Cartan pair of finite type");
        let d = DihedralDatum::new(m).unwrap();
        let action = MonomialAction::from_cartan(d, a12, a21, 2);
        DemazureDatum {
            name: name.to_string(),
            a12,
            a21,
            action: Arc::new(action),
            v: [Exponent::unit(2, 0), Exponent::unit(2, 1)],
            lattice: None,
            names: vec!["t1".into(), "t2".into()],
        }
    }

    /// General constructor used by the coweight-lattice data.
    pub fn with_lattice(
        name: &str,
        a12: i32,
        a21: i32,
        action: MonomialAction,
        v: [Exponent; 2],
        lattice: LatticeInfo,
        names: Vec<String>,
    ) -> Self {
        DemazureDatum { name: name.to_string(), a12, a21, action: Arc::new(action), v, lattice: Some(lattice), names }
    }

    pub fn a1xa1() -> Self {
        Self::cartan("A1xA1", 0, 0)
    }

    pub fn a2() -> Self {
        Self::cartan("A2", -1, -1)
    }

    pub fn b2() -> Self {
        Self::cartan("B2", -2, -1)
    }

    pub fn g2() -> Self {
        Self::cartan("G2", -3, -1)
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "A1xA1" => Ok(Self::a1xa1()),
            "A2" => Ok(Self::a2()),
            "B2" => Ok(Self::b2()),
            "G2" => Ok(Self::g2()),
            _ => Err(Error::UnknownDatum(name.to_string())),
        }
    }

    /// The built-in datum whose Coxeter group has order parameter `m`.
    pub fn for_m(m: u32) -> Option<Self> {
        match m {
            2 => Some(Self::a1xa1()),
            3 => Some(Self::a2()),
            4 => Some(Self::b2()),
            6 => Some(Self::g2()),
            _ => None,
        }
    }

    pub fn action(&self) -> &MonomialAction {
        &self.action
    }

    pub fn group(&self) -> DihedralDatum {
        self.action.datum()
    }

    pub fn dim(&self) -> usize {
        self.action.dim()
    }

    pub fn denominator(&self, i: u8) -> &Exponent {
        &self.v[i as usize - 1]
    }

    pub fn lattice(&self) -> Option<&LatticeInfo> {
        self.lattice.as_ref()
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.names.iter().map(|s| s.as_str()).collect()
    }

    pub fn zero(&self) -> SkewElement {
        SkewElement { datum: self.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(&self, f: RatFunc) -> SkewElement {
        self.term(f, self.group().identity())
    }

    pub fn int(&self, c: i64) -> SkewElement {
        self.scalar(RatFunc::from_int(self.dim(), c))
    }

    pub fn one(&self) -> SkewElement {
        self.int(1)
    }

    pub fn term(&self, f: RatFunc, w: GroupElement) -> SkewElement {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(w, f);
        }
        SkewElement { datum: self.clone(), terms }
    }

    pub fn group_element(&self, w: GroupElement) -> SkewElement {
        self.term(RatFunc::one(self.dim()), w)
    }

    /// Image of `D_i`: `τ_i·e - τ_i·s_i` with `τ_i = 1/(1 - t^{v_i})`.
    pub fn demazure(&self, i: u8) -> SkewElement {
        let tau = RatFunc::inv_one_minus(self.denominator(i));
        let mut out = self.term(tau.clone(), self.group().identity());
        out.terms.insert(self.group().simple(i), tau.neg());
        out
    }

    /// Image of the reflection-indexed generator `D_{r_k}`, written as
    /// `w D_i w⁻¹` with `w s_i w⁻¹ = r_k` and `ℓ(w s_i) > ℓ(w)`.
    pub fn demazure_hat(&self, k: u8) -> SkewElement {
        let (w, i) = hat_conjugator(self.group(), ReflectionIndex(k));
        let g = self.group_element(w);
        let gi = self.group_element(w.inverse());
        g.mul(&self.demazure(i)).mul(&gi)
    }

    pub fn monomial(&self, e: Exponent) -> SkewElement {
        self.scalar(RatFunc::from_poly(LaurentPoly::monomial(BigInt::one(), e)))
    }

    /// Evaluates an expression homomorphically.
    pub fn eval(&self, e: &Expr) -> Result<SkewElement> {
        Ok(match e {
            Expr::Int(c) => self.scalar(RatFunc::from_poly(LaurentPoly::constant(self.dim(), c.clone()))),
            Expr::S(i) => self.group_element(self.group().simple(*i)),
            Expr::D(i) => self.demazure(*i),
            Expr::Dh(k) => {
                if *k > self.group().m() {
                    return Err(Error::BadAtom(format!("Dh{}", k)));
                }
                self.demazure_hat(*k)
            }
            Expr::X(v) => {
                if self.lattice.is_none() || v.len() != 2 {
                    return Err(Error::BadAtom(e.to_string()));
                }
                let mut x = Exponent::zero(self.dim());
                x.0[0] = v[0];
                x.0[1] = v[1];
                self.monomial(x)
            }
            Expr::Q(i) => {
                let l = self.lattice.as_ref().ok_or_else(|| Error::BadAtom(e.to_string()))?;
                self.monomial(Exponent::unit(self.dim(), l.q_coord[*i as usize - 1]))
            }
            Expr::Neg(a) => self.eval(a)?.neg(),
            Expr::Add(a, b) => self.eval(a)?.add(&self.eval(b)?),
            Expr::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?),
            Expr::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?),
        })
    }
}

/// Shortest `w` and `i` with `w s_i w⁻¹ = r_k` and `ℓ(w s_i) > ℓ(w)`;
/// ties prefer `i = 1`, then the smaller group index.
pub fn hat_conjugator(d: DihedralDatum, k: ReflectionIndex) -> (GroupElement, u8) {
    let target = d.reflection(k);
    let mut best: Option<(usize, u8, usize, GroupElement)> = None;
    for w in d.elements() {
        for i in 1..=2u8 {
            let s = d.simple(i);
            if w.mul(s).mul(w.inverse()) == target && d.ascends(w, i) {
                let key = (w.length(), i, w.index(), w);
                if best.as_ref().is_none_or(|b| (key.0, key.1, key.2) < (b.0, b.1, b.2)) {
                    best = Some(key);
                }
            }
        }
    }
    let (_, i, _, w) = best.expect("every reflection is conjugate to a simple one");
    (w, i)
}

/// `Σ_w f_w · w` with rational-function coefficients.
#[derive(Clone, Debug)]
pub struct SkewElement {
    datum: DemazureDatum,
    terms: BTreeMap<GroupElement, RatFunc>,
}

impl PartialEq for SkewElement {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl SkewElement {
    pub fn datum(&self) -> &DemazureDatum {
        &self.datum
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: GroupElement) -> RatFunc {
        self.terms.get(&w).cloned().unwrap_or_else(|| RatFunc::zero(self.datum.dim()))
    }

    /// Exact zero test.
    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|f| f.is_zero())
    }

    fn insert_add(&mut self, w: GroupElement, f: RatFunc) {
        if f.is_zero() {
            return;
        }
        let cur = self.terms.remove(&w);
        let next = match cur {
            Some(c) => c.add(&f),
            None => f,
        };
        if !next.is_zero() {
            self.terms.insert(w, next);
        }
    }

    pub fn add(&self, other: &SkewElement) -> SkewElement {
        let mut out = self.clone();
        for (w, f) in &other.terms {
            out.insert_add(*w, f.clone());
        }
        out
    }

    pub fn neg(&self) -> SkewElement {
        SkewElement { datum: self.datum.clone(), terms: self.terms.iter().map(|(w, f)| (*w, f.neg())).collect() }
    }

    pub fn sub(&self, other: &SkewElement) -> SkewElement {
        self.add(&other.neg())
    }

    pub fn try_mul(&self, other: &SkewElement) -> Result<SkewElement> {
        if self.datum != other.datum {
            return Err(Error::BadAtom(format!("datum mismatch: {} vs {}", self.datum.name, other.datum.name)));
        }
        Ok(self.mul(other))
    }

    /// `(f·w)(g·v) = (f·w(g))·(wv)`.
    pub fn mul(&self, other: &SkewElement) -> SkewElement {
        let act = self.datum.action();
        let mut acc: BTreeMap<GroupElement, Vec<RatFunc>> = BTreeMap::new();
        for (w, f) in &self.terms {
            for (v, g) in &other.terms {
                acc.entry(w.mul(*v)).or_default().push(f.mul(&act.act(*w, g)));
            }
        }
        let mut terms = BTreeMap::new();
        for (w, parts) in acc {
            let s = sum_ratfuncs(self.datum.dim(), parts);
            if !s.is_zero() {
                terms.insert(w, s);
            }
        }
        SkewElement { datum: self.datum.clone(), terms }
    }

    /// Applies the operator to a rational function: `(f·w)(g) = f·w(g)`.
    pub fn apply(&self, g: &RatFunc) -> RatFunc {
        let act = self.datum.action();
        let parts = self.terms.iter().map(|(w, f)| f.mul(&act.act(*w, g))).collect();
        sum_ratfuncs(self.datum.dim(), parts)
    }

    pub fn to_json(&self) -> Value {
        let names = self.datum.var_names();
        Value::Array(
            self.terms
                .iter()
                .map(|(w, f)| {
                    json!({
                        "word": w.to_string(),
                        "coeff_num": f.num().render(&names),
                        "coeff_den_factors": f.den_factors(),
                    })
                })
                .collect(),
        )
    }
}

/// Sums rational functions, grouping by denominator first so that the
/// common-denominator lift happens once per distinct denominator.
pub fn sum_ratfuncs(dim: usize, parts: Vec<RatFunc>) -> RatFunc {
    let mut by_den: BTreeMap<Vec<(Vec<i32>, u32)>, RatFunc> = BTreeMap::new();
    for p in parts {
        if p.is_zero() {
            continue;
        }
        let key = p.den_factors();
        match by_den.remove(&key) {
            Some(acc) => {
                by_den.insert(key, acc.add(&p));
            }
            None => {
                by_den.insert(key, p);
            }
        }
    }
    by_den.into_values().fold(RatFunc::zero(dim), |acc, x| acc.add(&x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(d: &DemazureDatum, s: &str) -> SkewElement {
        d.eval(&parse(s).unwrap()).unwrap()
    }

    fn builtins() -> Vec<DemazureDatum> {
        vec![DemazureDatum::a1xa1(), DemazureDatum::a2(), DemazureDatum::b2(), DemazureDatum::g2()]
    }

    #[test]
    fn cartan_table() {
        assert_eq!(coxeter_m(0, 0), Some(2));
        assert_eq!(coxeter_m(-1, -1), Some(3));
        assert_eq!(coxeter_m(-2, -1), Some(4));
        assert_eq!(coxeter_m(-3, -1), Some(6));
        for d in builtins() {
            assert_eq!(Some(d.group().m() as u32), coxeter_m(d.a12, d.a21));
        }
    }

    #[test]
    fn rank_one_relations() {
        for d in builtins() {
            for i in 1..=2 {
                let di = d.demazure(i);
                assert!(di.mul(&di).sub(&di).is_zero(), "{} D{} idempotent", d.name, i);
                let s = d.group_element(d.group().simple(i));
                let lhs = s.mul(&di).add(&di.mul(&s));
                assert!(lhs.sub(&s.sub(&d.one())).is_zero());
            }
        }
    }

    #[test]
    fn braid_images() {
        for d in builtins() {
            let m = d.group().m();
            let alt = |first: u8| -> String {
                (0..m).map(|j| if j % 2 == 0 { format!("s{}", first) } else { format!("s{}", 3 - first) }).collect::<Vec<_>>().join(" ")
            };
            assert!(ev(&d, &format!("{} - {}", alt(1), alt(2))).is_zero());
            assert!(ev(&d, &format!("{} - {}", alt(1).replace('s', "D"), alt(2).replace('s', "D"))).is_zero());
        }
    }

    #[test]
    fn demazure_on_polynomials() {
        let d = DemazureDatum::b2();
        let t2 = RatFunc::from_poly(LaurentPoly::var(2, 1));
        let got = d.demazure(1).apply(&t2);
        let one = LaurentPoly::one(2);
        let expect = &LaurentPoly::var(2, 1) * &(&one + &LaurentPoly::var(2, 0));
        assert_eq!(got.as_poly(), Some(&expect));
        for i in 1..=2 {
            assert!(d.demazure(i).apply(&RatFunc::one(2)).is_zero());
        }
        assert!(!d.demazure(1).is_zero());
    }

    #[test]
    fn b2_relation_examples() {
        let d = DemazureDatum::b2();
        assert!(ev(&d, "D1 s2 s1 s2 - s2 s1 s2 D1").is_zero());
        assert!(ev(&d, "D2 s1 s2 D1 - (D1 D2 s1 s2 + s1 D2 D1 s2 + s1 s2 D1 D2 + s1 s2 D1 s2 + s1 D2 s1 s2)").is_zero());
        assert!(ev(&d, "Dh1 Dh2 Dh3 Dh4 - Dh4 Dh3 Dh2 Dh1").is_zero());
        assert!(ev(&d, "1").sub(&d.one()).is_zero());
    }

    #[test]
    fn g2_commuting_hats() {
        let d = DemazureDatum::g2();
        assert!(ev(&d, "Dh3 Dh6 - Dh6 Dh3").is_zero());
    }

    #[test]
    fn hat_generators_follow_conjugation() {
        for d in builtins() {
            let g = d.group();
            assert_eq!(hat_conjugator(g, ReflectionIndex(1)), (g.identity(), 1));
            assert_eq!(hat_conjugator(g, ReflectionIndex(g.m())), (g.identity(), 2));
            for w in g.elements() {
                let wel = d.group_element(w);
                let winv = d.group_element(w.inverse());
                for k in 1..=g.m() {
                    let (k2, flipped) = g.conj_action(w, ReflectionIndex(k));
                    let lhs = wel.mul(&d.demazure_hat(k)).mul(&winv);
                    let rhs = if flipped {
                        d.one().sub(&d.demazure_hat(k2.0))
                    } else {
                        d.demazure_hat(k2.0)
                    };
                    // w D_r w⁻¹ = D_{wrw⁻¹} or 1 - D_{wrw⁻¹} - wrw⁻¹
                    let rhs = if flipped {
                        rhs.sub(&d.group_element(g.reflection(k2)))
                    } else {
                        rhs
                    };
                    assert!(lhs.sub(&rhs).is_zero(), "{} w={} k={}", d.name, w, k);
                }
            }
        }
    }

    #[test]
    fn lattice_atoms_need_lattice() {
        let d = DemazureDatum::b2();
        assert!(matches!(d.eval(&parse("X[1,0]").unwrap()), Err(Error::BadAtom(_))));
        assert!(matches!(d.eval(&parse("q1").unwrap()), Err(Error::BadAtom(_))));
    }

    #[test]
    fn json_rendering() {
        let d = DemazureDatum::b2();
        let v = d.demazure(1).to_json();
        assert_eq!(v[0]["word"], "e");
        assert_eq!(v[1]["word"], "s1");
    }
}
