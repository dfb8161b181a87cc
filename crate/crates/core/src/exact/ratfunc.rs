use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Exponent, LaurentPoly};

/// The factor `1 - t^v`, with `v` normalized to have positive leading
/// coordinate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DenomFactor(Exponent);

impl DenomFactor {
    /// Normalizes `1 - t^u`; returns the factor and the unit monomial `c·t^e`
    /// with `1/(1 - t^u) = c·t^e / (1 - t^v)`.
    pub fn normalize(u: &Exponent) -> (DenomFactor, Option<Exponent>) {
        assert!(!u.is_zero(), "denominator factor 1 - t^0 vanishes");
        if u.leading_sign() > 0 {
            (DenomFactor(u.clone()), None)
        } else {
            // 1 - t^u = -t^u (1 - t^{-u})
            let v = u.neg();
            (DenomFactor(v.clone()), Some(v))
        }
    }

    pub fn new(v: Exponent) -> Option<DenomFactor> {
        if v.leading_sign() > 0 {
            Some(DenomFactor(v))
        } else {
            None
        }
    }

    pub fn exponent(&self) -> &Exponent {
        &self.0
    }

    pub fn poly(&self) -> LaurentPoly {
        LaurentPoly::one_minus(&self.0)
    }
}

/// A Laurent polynomial over a product of `(1 - t^v)` factors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: BTreeMap<DenomFactor, u32>,
}

impl RatFunc {
    pub fn zero(nvars: usize) -> Self {
        RatFunc { num: LaurentPoly::zero(nvars), den: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        RatFunc::from_poly(LaurentPoly::one(nvars))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: BTreeMap::new() }
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        RatFunc::from_poly(LaurentPoly::constant(nvars, BigInt::from(c)))
    }

    /// `1 / (1 - t^u)` for any nonzero `u`.
    pub fn inv_one_minus(u: &Exponent) -> Self {
        let n = u.dim();
        let (f, unit) = DenomFactor::normalize(u);
        let num = match unit {
            None => LaurentPoly::one(n),
            Some(e) => LaurentPoly::monomial(-BigInt::one(), e),
        };
        let mut den = BTreeMap::new();
        den.insert(f, 1);
        RatFunc { num, den }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> impl Iterator<Item = (&DenomFactor, u32)> {
        self.den.iter().map(|(f, &k)| (f, k))
    }

    /// Exact zero test: the denominator is never zero, so only the numerator
    /// matters.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    /// The polynomial value, if the denominator has cancelled completely.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn scale_int(&self, c: &BigInt) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> RatFunc {
        let mut r = RatFunc { num: &self.num * p, den: self.den.clone() };
        r.cancel_normalize();
        r
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut den = self.den.clone();
        for (f, &k) in &other.den {
            let e = den.entry(f.clone()).or_insert(0);
            *e = (*e).max(k);
        }
        let lift = |r: &RatFunc| -> LaurentPoly {
            let mut p = r.num.clone();
            for (f, &k) in &den {
                let have = r.den.get(f).copied().unwrap_or(0);
                if k > have {
                    p = &p * &f.poly().pow(k - have);
                }
            }
            p
        };
        let num = &lift(self) + &lift(other);
        let mut r = RatFunc { num, den };
        r.cancel_normalize();
        r
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        let mut den = self.den.clone();
        for (f, &k) in &other.den {
            *den.entry(f.clone()).or_insert(0) += k;
        }
        let mut r = RatFunc { num: &self.num * &other.num, den };
        r.cancel_normalize();
        r
    }

    /// Cancels every denominator factor that divides the numerator exactly.
    /// The value is unchanged; a zero numerator clears the denominator.
    pub fn cancel_normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let factors: Vec<DenomFactor> = self.den.keys().cloned().collect();
        for f in factors {
            while let Some(k) = self.den.get(&f).copied() {
                match self.num.div_one_minus(f.exponent()) {
                    Some(q) => {
                        self.num = q;
                        if k == 1 {
                            self.den.remove(&f);
                        } else {
                            self.den.insert(f.clone(), k - 1);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    /// Maps every exponent through a linear map that sends denominators to
    /// denominators, renormalizing factors whose image has negative leading
    /// coordinate.
    pub fn map_linear(&self, f: impl Fn(&Exponent) -> Exponent) -> RatFunc {
        let mut num = self.num.map_exponents(&f);
        let mut den = BTreeMap::new();
        for (d, &k) in &self.den {
            let (nf, unit) = DenomFactor::normalize(&f(d.exponent()));
            if let Some(e) = unit {
                let u = LaurentPoly::monomial(-BigInt::one(), e).pow(k);
                num = &num * &u;
            }
            *den.entry(nf).or_insert(0) += k;
        }
        let mut r = RatFunc { num, den };
        r.cancel_normalize();
        r
    }

    pub fn render(&self, names: &[&str]) -> String {
        let num = self.num.render(names);
        if self.den.is_empty() {
            return num;
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(f, &k)| {
                let base = format!("(1 - {})", LaurentPoly::monomial(BigInt::one(), f.0.clone()).render(names));
                if k == 1 {
                    base
                } else {
                    format!("{}^{}", base, k)
                }
            })
            .collect();
        format!("({}) / {}", num, den.join("*"))
    }

    /// Denominator factors as `[exponent, multiplicity]` pairs, for reports.
    pub fn den_factors(&self) -> Vec<(Vec<i32>, u32)> {
        self.den.iter().map(|(f, &k)| (f.0.as_slice().to_vec(), k)).collect()
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[i32]) -> Exponent {
        Exponent::from_slice(v)
    }

    fn tau(v: &[i32]) -> RatFunc {
        RatFunc::inv_one_minus(&e(v))
    }

    // Cross-multiplied oracle: a/b == c/d iff a*d == c*b after clearing the
    // factored denominators into polynomials.
    fn cleared(r: &RatFunc) -> (LaurentPoly, LaurentPoly) {
        let mut d = LaurentPoly::one(r.nvars());
        for (f, k) in r.den() {
            d = &d * &f.poly().pow(k);
        }
        (r.num().clone(), d)
    }

    fn same_value(a: &RatFunc, b: &RatFunc) -> bool {
        let (n1, d1) = cleared(a);
        let (n2, d2) = cleared(b);
        &n1 * &d2 == &n2 * &d1
    }

    #[test]
    fn additive_inverse() {
        let t1 = tau(&[1, 0]);
        assert!(t1.add(&t1.neg()).is_zero());
        assert!(t1.sub(&t1).is_zero());
        assert!(!t1.is_zero());
    }

    #[test]
    fn b2_tau_identity() {
        let t1 = tau(&[1, 0]);
        let t2 = tau(&[0, 1]);
        let t12 = tau(&[2, 1]);
        let t21 = tau(&[1, 1]);
        let terms = [
            t2.mul(&t1),
            t1.mul(&t12).neg(),
            t12.mul(&t21).neg(),
            t21.mul(&t2).neg(),
            t12.clone(),
            t21.clone(),
        ];
        let sum = terms.iter().fold(RatFunc::zero(2), |acc, x| acc.add(x));
        assert!(sum.is_zero());
        let a = t1.mul(&t2).mul(&t12).mul(&t21);
        let b = t1.mul(&t12).mul(&t21).mul(&t2);
        assert!(a.sub(&b).is_zero());
    }

    #[test]
    fn cancellation() {
        let one = LaurentPoly::one(2);
        let t1 = LaurentPoly::var(2, 0);
        let num = &one - &(&t1 * &t1);
        let r = RatFunc::from_poly(num).mul(&tau(&[1, 0]));
        assert_eq!(r.as_poly(), Some(&(&one + &t1)));
    }

    #[test]
    fn unit_normalization() {
        // 1/(1 - t1^-1) = -t1/(1 - t1) = 1 - 1/(1 - t1)
        let a = tau(&[-1, 0]);
        let b = RatFunc::one(2).sub(&tau(&[1, 0]));
        assert!(a.sub(&b).is_zero());
        assert!(same_value(&a, &b));
        let (f, unit) = DenomFactor::normalize(&e(&[0, -2]));
        assert_eq!(f.exponent(), &e(&[0, 2]));
        assert_eq!(unit, Some(e(&[0, 2])));
    }

    #[test]
    fn addition_keeps_value() {
        let a = tau(&[1, 0]).mul(&tau(&[2, 1]));
        let b = tau(&[1, 1]).mul_poly(&LaurentPoly::var(2, 1));
        let s = a.add(&b);
        let mut expect = cleared(&a);
        let (nb, db) = cleared(&b);
        expect = (&(&expect.0 * &db) + &(&nb * &expect.1), &expect.1 * &db);
        let got = cleared(&s);
        assert_eq!(&got.0 * &expect.1, &expect.0 * &got.1);
    }
}
