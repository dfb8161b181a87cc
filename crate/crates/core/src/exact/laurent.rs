use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

/// Exponent vector of a Laurent monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Exponent(pub SmallVec<[i32; 4]>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Exponent(SmallVec::from_elem(0, n))
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = Exponent::zero(n);
        e.0[i] = 1;
        e
    }

    pub fn from_slice(v: &[i32]) -> Self {
        Exponent(SmallVec::from_slice(v))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.dim(), other.dim());
        Exponent(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.dim(), other.dim());
        Exponent(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Exponent {
        Exponent(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i32) -> Exponent {
        Exponent(self.0.iter().map(|a| a * k).collect())
    }

    /// Sign of the first nonzero coordinate (0 for the zero vector).
    pub fn leading_sign(&self) -> i32 {
        self.0.iter().find(|&&x| x != 0).map_or(0, |x| x.signum())
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Sparse Laurent polynomial with integer coefficients. Zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::monomial(c, Exponent::zero(nvars))
    }

    pub fn monomial(c: BigInt, e: Exponent) -> Self {
        let nvars = e.dim();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { nvars, terms }
    }

    /// The single variable `t_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(BigInt::one(), Exponent::unit(nvars, i))
    }

    /// `1 - t^v`.
    pub fn one_minus(v: &Exponent) -> Self {
        let n = v.dim();
        let mut p = LaurentPoly::one(n);
        p.add_term(v.clone(), -BigInt::one());
        p
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Exponent, BigInt)>) -> Self {
        let mut p = LaurentPoly::zero(nvars);
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(e, c)| e.is_zero() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Returns the constant and exponent if this is a single monomial.
    pub fn as_monomial(&self) -> Option<(&Exponent, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, e: Exponent, c: BigInt) {
        debug_assert_eq!(e.dim(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &LaurentPoly, c: &BigInt) {
        for (e, a) in &other.terms {
            self.add_term(e.clone(), a * c);
        }
    }

    pub fn try_add(&self, other: &LaurentPoly) -> crate::Result<LaurentPoly> {
        self.check_dim(other)?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> crate::Result<LaurentPoly> {
        self.check_dim(other)?;
        Ok(self * other)
    }

    fn check_dim(&self, other: &LaurentPoly) -> crate::Result<()> {
        if self.nvars != other.nvars {
            return Err(crate::Error::DimensionMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn shift(&self, e: &Exponent) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(x, c)| (x.add(e), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(x, a)| (x.clone(), a * c)).collect(),
        }
    }

    /// Applies an exponent map to every monomial.
    pub fn map_exponents(&self, f: impl Fn(&Exponent) -> Exponent) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient by `1 - t^v`, or `None` if it does not divide.
    ///
    /// Monomials split into chains `x + Z v`; on each chain the problem is
    /// univariate division by `1 - y`, whose quotient is the running prefix
    /// sum and which succeeds iff the chain coefficients sum to zero.
    pub fn div_one_minus(&self, v: &Exponent) -> Option<LaurentPoly> {
        assert!(!v.is_zero(), "division by 1 - t^0");
        let (v, flipped) = if v.leading_sign() < 0 { (v.neg(), true) } else { (v.clone(), false) };
        let i = v.0.iter().position(|&x| x != 0).unwrap();
        let vi = v.0[i];
        let mut chains: BTreeMap<Exponent, BTreeMap<i32, &BigInt>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e.0[i].div_euclid(vi);
            let base = e.sub(&v.scale(k));
            chains.entry(base).or_default().insert(k, c);
        }
        let mut q = LaurentPoly::zero(self.nvars);
        for (base, chain) in chains {
            let mut run = BigInt::zero();
            let mut ks = chain.iter().peekable();
            while let Some((&k, &c)) = ks.next() {
                run += c;
                let next = ks.peek().map(|(&k2, _)| k2);
                if run.is_zero() {
                    continue;
                }
                {
                    let k2 = next?;
                    for j in k..k2 {
                        q.add_term(base.add(&v.scale(j)), run.clone());
                    }
                }
            }
        }
        if flipped {
            // 1 - t^{-v} = -t^{-v}(1 - t^v)
            q = q.shift(&v).scale(&-BigInt::one());
        }
        Some(q)
    }

    /// Rendering such as `-1*t1^-1*t2^2 + 3` with the given variable names.
    pub fn render(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let mut mono: Vec<String> = Vec::new();
            for (j, &x) in e.0.iter().enumerate() {
                let name = names.get(j).map_or_else(|| format!("t{}", j + 1), |s| s.to_string());
                match x {
                    0 => {}
                    1 => mono.push(name),
                    _ => mono.push(format!("{}^{}", name, x)),
                }
            }
            let neg = c.is_negative();
            let abs = c.abs();
            let body = if mono.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", abs, mono.join("*"))
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "Laurent polynomial dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "Laurent polynomial dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "Laurent polynomial dimension mismatch");
        let mut acc: std::collections::HashMap<Exponent, BigInt> = std::collections::HashMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                *acc.entry(e1.add(e2)).or_default() += c1 * c2;
            }
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}
