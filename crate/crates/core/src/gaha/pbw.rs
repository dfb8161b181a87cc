//! Rewriting to the PBW form `Σ D̂-word · w · f(X, q)`.
//!
//! Monomials are sequences of letters `D̂_k`, group elements and Laurent
//! polynomials. The rewrite rules act on adjacent pairs:
//!
//! ```text
//! f g        -> (fg)
//! v w        -> (vw)
//! D̂_a D̂_a    -> D̂_a
//! f w        -> w (w⁻¹ f)
//! f D̂_k      -> D̂_k (r_k f) - D̂_k(r_k f)
//! w D̂_a      -> D̂_{a'} w                       if ℓ(w r_a) > ℓ(w)
//!            -> w - D̂_{a'} w - w r_a            otherwise, r_{a'} = w r_a w⁻¹
//! ```
//!
//! where `D̂_k(g)` in the `f D̂_k` rule is the divided difference applied to
//! a polynomial. Each rule either shortens the monomial or keeps its length
//! and removes exactly one out-of-order pair (a polynomial before a group
//! element or `D̂`, or a group element before a `D̂`) without creating
//! another, so `(length, out-of-order pairs)` decreases lexicographically
//! under any redex choice.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use super::RootDatum;
use crate::coxeter::{GroupElement, ReflectionIndex};
use crate::exact::{LaurentPoly, RatFunc};
use crate::freed::Word;
use crate::skewalg::{Expr, SkewElement};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Letter {
    D(u8),
    G(GroupElement),
    P(LaurentPoly),
}

type Mono = (BigInt, Vec<Letter>);

/// `Σ u · w · f` keyed by `(u, w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwElement {
    dim: usize,
    terms: BTreeMap<(Word, GroupElement), LaurentPoly>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PbwTerm {
    pub d_word: Word,
    pub group: String,
    pub coeff: String,
}

impl PbwElement {
    fn zero(dim: usize) -> Self {
        PbwElement { dim, terms: BTreeMap::new() }
    }

    fn add_term(&mut self, u: Word, w: GroupElement, f: LaurentPoly) {
        if f.is_zero() {
            return;
        }
        let key = (u, w);
        let next = match self.terms.remove(&key) {
            Some(g) => &g + &f,
            None => f,
        };
        if !next.is_zero() {
            self.terms.insert(key, next);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &GroupElement, &LaurentPoly)> {
        self.terms.iter().map(|((u, w), f)| (u, w, f))
    }

    pub fn coeff(&self, u: &Word, w: GroupElement) -> LaurentPoly {
        self.terms.get(&(u.clone(), w)).cloned().unwrap_or_else(|| LaurentPoly::zero(self.dim))
    }

    pub fn to_terms(&self, d: &RootDatum) -> Vec<PbwTerm> {
        let names = d.operator().var_names();
        self.terms()
            .map(|(u, w, f)| PbwTerm { d_word: u.clone(), group: w.to_string(), coeff: f.render(&names) })
            .collect()
    }

    pub fn render(&self, d: &RootDatum) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let names = d.operator().var_names();
        let parts: Vec<String> = self
            .terms()
            .map(|(u, w, f)| {
                let dw: Vec<String> = u.letters().iter().map(|k| format!("Dh{k}")).collect();
                let dw = if dw.is_empty() { "1".to_string() } else { dw.join(" ") };
                format!("{dw} · {w} · ({})", f.render(&names))
            })
            .collect();
        parts.join(" + ")
    }

    /// Image in the operator model.
    pub fn operator_image(&self, d: &RootDatum) -> Result<SkewElement> {
        let op = d.operator();
        let mut out = op.zero();
        for (u, w, f) in self.terms() {
            let du = op.eval(&Expr::product(u.letters().iter().map(|&k| Expr::Dh(k))))?;
            let t = du.mul(&op.group_element(*w)).mul(&op.scalar(RatFunc::from_poly(f.clone())));
            out = out.add(&t);
        }
        Ok(out)
    }
}

fn expand(d: &RootDatum, e: &Expr) -> Result<Vec<Mono>> {
    let g = d.group();
    let one = || BigInt::one();
    Ok(match e {
        Expr::Int(c) => vec![(c.clone(), Vec::new())],
        Expr::S(i) => vec![(one(), vec![Letter::G(g.simple(*i))])],
        Expr::D(i) => vec![(one(), vec![Letter::D(if *i == 1 { 1 } else { g.m() })])],
        Expr::Dh(k) => {
            if *k == 0 || *k > g.m() {
                return Err(Error::BadAtom(e.to_string()));
            }
            vec![(one(), vec![Letter::D(*k)])]
        }
        Expr::X(v) => {
            if v.len() != 2 {
                return Err(Error::BadAtom(e.to_string()));
            }
            vec![(one(), vec![Letter::P(d.x(&d.coweight([v[0], v[1]])))])]
        }
        Expr::Q(i) => vec![(one(), vec![Letter::P(d.q(*i))])],
        Expr::Neg(a) => expand(d, a)?.into_iter().map(|(c, l)| (-c, l)).collect(),
        Expr::Add(a, b) => {
            let mut x = expand(d, a)?;
            x.extend(expand(d, b)?);
            x
        }
        Expr::Sub(a, b) => {
            let mut x = expand(d, a)?;
            x.extend(expand(d, b)?.into_iter().map(|(c, l)| (-c, l)));
            x
        }
        Expr::Mul(a, b) => {
            let (xa, xb) = (expand(d, a)?, expand(d, b)?);
            let mut out = Vec::with_capacity(xa.len() * xb.len());
            for (ca, la) in &xa {
                for (cb, lb) in &xb {
                    let mut l = la.clone();
                    l.extend(lb.iter().cloned());
                    out.push((ca * cb, l));
                }
            }
            out
        }
    })
}

/// Drops identity group letters and folds constant polynomials into the
/// coefficient.
fn clean(mono: Mono) -> Option<Mono> {
    let (mut c, letters) = mono;
    let mut out = Vec::with_capacity(letters.len());
    for l in letters {
        match l {
            Letter::G(w) if w.is_identity() => {}
            Letter::P(f) => {
                if f.is_zero() {
                    return None;
                }
                match f.as_monomial() {
                    Some((e, k)) if e.is_zero() => c *= k,
                    _ => out.push(Letter::P(f)),
                }
            }
            l => out.push(l),
        }
    }
    (!c.is_zero()).then_some((c, out))
}

fn is_redex(a: &Letter, b: &Letter) -> bool {
    match (a, b) {
        (Letter::P(_), _) => true,
        (Letter::G(_), Letter::G(_)) | (Letter::G(_), Letter::D(_)) => true,
        (Letter::D(x), Letter::D(y)) => x == y,
        _ => false,
    }
}

fn find_redex(letters: &[Letter], strategy: Strategy) -> Option<usize> {
    let mut it = (0..letters.len().saturating_sub(1)).filter(|&j| is_redex(&letters[j], &letters[j + 1]));
    match strategy {
        Strategy::Leftmost => it.next(),
        Strategy::Rightmost => it.next_back(),
    }
}

fn splice(letters: &[Letter], j: usize, mid: Vec<Letter>) -> Vec<Letter> {
    let mut out = letters[..j].to_vec();
    out.extend(mid);
    out.extend_from_slice(&letters[j + 2..]);
    out
}

fn rewrite_at(d: &RootDatum, c: &BigInt, letters: &[Letter], j: usize) -> Result<Vec<Mono>> {
    let g = d.group();
    let act = d.operator().action();
    let one = |mid: Vec<Letter>| vec![(c.clone(), splice(letters, j, mid))];
    Ok(match (&letters[j], &letters[j + 1]) {
        (Letter::P(f), Letter::P(h)) => one(vec![Letter::P(f * h)]),
        (Letter::G(v), Letter::G(w)) => one(vec![Letter::G(v.mul(*w))]),
        (Letter::D(a), Letter::D(_)) => one(vec![Letter::D(*a)]),
        (Letter::P(f), Letter::G(w)) => one(vec![Letter::G(*w), Letter::P(act.act_poly(w.inverse(), f))]),
        (Letter::P(f), Letter::D(k)) => {
            let r = g.reflection(ReflectionIndex(*k));
            let rf = act.act_poly(r, f);
            let corr = d.hat_divided_difference(*k, &rf)?;
            vec![
                (c.clone(), splice(letters, j, vec![Letter::D(*k), Letter::P(rf)])),
                (-c, splice(letters, j, vec![Letter::P(corr)])),
            ]
        }
        (Letter::G(w), Letter::D(a)) => {
            let (a2, flipped) = g.conj_action(*w, ReflectionIndex(*a));
            if flipped {
                let wr = w.mul(g.reflection(ReflectionIndex(*a)));
                vec![
                    (c.clone(), splice(letters, j, vec![Letter::G(*w)])),
                    (-c, splice(letters, j, vec![Letter::D(a2.0), Letter::G(*w)])),
                    (-c, splice(letters, j, vec![Letter::G(wr)])),
                ]
            } else {
                one(vec![Letter::D(a2.0), Letter::G(*w)])
            }
        }
        _ => unreachable!("not a redex"),
    })
}

/// Reads off `(u, w, f)` from a monomial with no redex.
fn normal_part(d: &RootDatum, letters: &[Letter]) -> (Word, GroupElement, LaurentPoly) {
    let mut u = Vec::new();
    let mut w = d.group().identity();
    let mut f = LaurentPoly::one(d.dim());
    for l in letters {
        match l {
            Letter::D(k) => u.push(*k),
            Letter::G(v) => w = *v,
            Letter::P(p) => f = p.clone(),
        }
    }
    (Word::from_letters(&u), w, f)
}

/// Rewrites an expression over `s_i, D_i, Dh<k>, X[a,b], q_i` and integers to
/// PBW form, always contracting the leftmost or always the rightmost redex.
pub fn pbw_rewrite(d: &RootDatum, e: &Expr, strategy: Strategy) -> Result<PbwElement> {
    let mut out = PbwElement::zero(d.dim());
    let mut stack: Vec<Mono> = expand(d, e)?.into_iter().filter_map(clean).collect();
    while let Some((c, letters)) = stack.pop() {
        match find_redex(&letters, strategy) {
            None => {
                let (u, w, f) = normal_part(d, &letters);
                out.add_term(u, w, f.scale(&c));
            }
            Some(j) => stack.extend(rewrite_at(d, &c, &letters, j)?.into_iter().filter_map(clean)),
        }
    }
    Ok(out)
}

/// A product of `0..=max_len` random generators: `s_i`, `D_i`, `X[a,b]` with
/// entries in `[-2, 2]`, and `q_i`.
pub fn random_word(rng: &mut impl Rng, max_len: usize) -> Expr {
    let len = rng.gen_range(0..=max_len);
    Expr::product((0..len).map(|_| match rng.gen_range(0..7) {
        0 | 1 => Expr::S(rng.gen_range(1..=2)),
        2 | 3 => Expr::D(rng.gen_range(1..=2)),
        4 | 5 => Expr::X(vec![rng.gen_range(-2..=2), rng.gen_range(-2..=2)]),
        _ => Expr::Q(rng.gen_range(1..=2)),
    }))
}

#[derive(Clone, Debug, Serialize)]
pub struct PbwProbeReport {
    pub trials: usize,
    /// Words whose leftmost and rightmost rewrites agree.
    pub strategies_agree: usize,
    /// Words whose PBW form has the same operator image as the word.
    pub operator_agree: usize,
    /// Up to five failing words.
    pub failures: Vec<String>,
}

impl PbwProbeReport {
    pub fn passed(&self) -> bool {
        self.strategies_agree == self.trials && self.operator_agree == self.trials
    }
}

/// Rewrites `trials` random words under both strategies and compares the
/// results with each other and with the operator image of the word.
pub fn pbw_confluence_probe(d: &RootDatum, trials: usize, rng: &mut impl Rng) -> Result<PbwProbeReport> {
    let mut rep = PbwProbeReport { trials, strategies_agree: 0, operator_agree: 0, failures: Vec::new() };
    for _ in 0..trials {
        let e = random_word(rng, 6);
        let left = pbw_rewrite(d, &e, Strategy::Leftmost)?;
        let right = pbw_rewrite(d, &e, Strategy::Rightmost)?;
        let same = left == right;
        let sound = left.operator_image(d)? == d.operator().eval(&e)?;
        rep.strategies_agree += same as usize;
        rep.operator_agree += sound as usize;
        if (!same || !sound) && rep.failures.len() < 5 {
            rep.failures.push(e.to_string());
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skewalg::parse;
    use rand::SeedableRng;

    fn nf(d: &RootDatum, s: &str) -> PbwElement {
        pbw_rewrite(d, &parse(s).unwrap(), Strategy::Leftmost).unwrap()
    }

    #[test]
    fn x_moves_right_past_group_elements() {
        let d = RootDatum::b2();
        let p = nf(&d, "X[1,0] s1");
        assert_eq!(p.len(), 1);
        let s1 = d.group().simple(1);
        let f = p.coeff(&Word::empty(), s1);
        assert_eq!(f, d.x(&d.reflect(1, &d.coweight([1, 0]))));
        // already in PBW form
        let q = nf(&d, "s1 X[1,0]");
        assert_eq!(q.coeff(&Word::empty(), s1), d.x(&d.coweight([1, 0])));
    }

    #[test]
    fn x_moves_right_past_demazure() {
        let d = RootDatum::b2();
        let p = nf(&d, "X[1,0] D1");
        assert_eq!(p.len(), 2);
        let e = d.group().identity();
        let l = d.coweight([1, 0]);
        let sl = d.reflect(1, &l);
        assert_eq!(p.coeff(&Word::letter(1), e), d.x(&sl));
        // X^λ D_1 = D_1 X^{s_1 λ} - D_1(X^{s_1 λ})
        assert_eq!(p.coeff(&Word::empty(), e), -&d.divided_difference(1, &d.x(&sl)).unwrap());
        assert_eq!(p.operator_image(&d).unwrap(), d.operator().eval(&parse("X[1,0] D1").unwrap()).unwrap());
    }

    #[test]
    fn idempotent_and_identity() {
        let d = RootDatum::g2();
        assert_eq!(nf(&d, "D1 D1"), nf(&d, "D1"));
        let one = nf(&d, "1");
        assert_eq!(one.len(), 1);
        assert!(one.coeff(&Word::empty(), d.group().identity()).is_one());
        assert!(nf(&d, "s1 s1 - 1").is_zero());
    }

    #[test]
    fn conjugated_generator_is_a_hat_letter() {
        let d = RootDatum::b2();
        let p = nf(&d, "s1 D2 s1");
        assert_eq!(p.len(), 1);
        let (u, w, f) = p.terms().next().unwrap();
        assert!(w.is_identity() && f.is_one());
        assert_eq!(u.len(), 1);
        assert_eq!(d.group().reflection(ReflectionIndex(u.letters()[0])), d.group().simple(1).mul(d.group().simple(2)).mul(d.group().simple(1)));
        assert_eq!(p.operator_image(&d).unwrap(), d.operator().eval(&parse("s1 D2 s1").unwrap()).unwrap());
    }

    #[test]
    fn probe_agrees_on_small_sample() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for d in [RootDatum::a1xa1(), RootDatum::a2(), RootDatum::b2(), RootDatum::g2()] {
            let rep = pbw_confluence_probe(&d, 40, &mut rng).unwrap();
            assert!(rep.passed(), "{}: {:?}", d.name, rep.failures);
        }
    }
}
