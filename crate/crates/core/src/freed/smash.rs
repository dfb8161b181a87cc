use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{FreeDElement, Word};
use crate::coxeter::{DihedralDatum, GroupElement, ReflectionIndex};
use crate::skewalg::Expr;
use crate::{Error, Result};

/// `Σ_w x_w · w` with `x_w ∈ D̂(W)` written to the left of the group part.
///
/// Moving a group element past a generator uses
/// `g D̂_a = D̂_{a'} g` when `ℓ(g r_a) > ℓ(g)`, and otherwise
/// `g D̂_a = (1 - D̂_{a'}) g - g r_a`, where `r_{a'} = g r_a g⁻¹`.
/// For `g = s_i` and `a` the index of `s_i` this is `s_i D_i + D_i s_i = s_i - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmashElement {
    datum: DihedralDatum,
    terms: BTreeMap<GroupElement, FreeDElement>,
}

impl SmashElement {
    pub fn zero(datum: DihedralDatum) -> Self {
        SmashElement { datum, terms: BTreeMap::new() }
    }

    pub fn from_parts(datum: DihedralDatum, x: FreeDElement, w: GroupElement) -> Self {
        let mut s = SmashElement::zero(datum);
        s.add_part(w, &x);
        s
    }

    pub fn group(datum: DihedralDatum, w: GroupElement) -> Self {
        SmashElement::from_parts(datum, FreeDElement::one(), w)
    }

    pub fn datum(&self) -> DihedralDatum {
        self.datum
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &FreeDElement)> {
        self.terms.iter()
    }

    pub fn part(&self, w: GroupElement) -> FreeDElement {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_part(&mut self, w: GroupElement, x: &FreeDElement) {
        if x.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_default();
        *e = e.add(x);
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &SmashElement) -> SmashElement {
        let mut out = self.clone();
        for (w, x) in &other.terms {
            out.add_part(*w, x);
        }
        out
    }

    pub fn neg(&self) -> SmashElement {
        SmashElement { datum: self.datum, terms: self.terms.iter().map(|(w, x)| (*w, x.neg())).collect() }
    }

    pub fn sub(&self, other: &SmashElement) -> SmashElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> SmashElement {
        let mut out = SmashElement::zero(self.datum);
        for (w, x) in &self.terms {
            out.add_part(*w, &x.scale(c));
        }
        out
    }

    /// `g · word` rewritten as `Σ_h y_h · h`.
    pub fn move_group_past(datum: DihedralDatum, g: GroupElement, word: &Word) -> SmashElement {
        let mut state: BTreeMap<GroupElement, FreeDElement> = BTreeMap::new();
        state.insert(g, FreeDElement::one());
        for &a in word.letters() {
            let mut next: BTreeMap<GroupElement, FreeDElement> = BTreeMap::new();
            for (h, p) in state {
                let (a2, flipped) = datum.conj_action(h, ReflectionIndex(a));
                let letter = FreeDElement::letter(a2.0);
                if flipped {
                    let keep = p.sub(&p.mul(&letter));
                    merge(&mut next, h, keep);
                    let hr = h.mul(datum.reflection(ReflectionIndex(a)));
                    merge(&mut next, hr, p.neg());
                } else {
                    merge(&mut next, h, p.mul(&letter));
                }
            }
            state = next;
        }
        SmashElement { datum, terms: state.into_iter().filter(|(_, x)| !x.is_zero()).collect() }
    }

    pub fn mul(&self, other: &SmashElement) -> SmashElement {
        assert_eq!(self.datum, other.datum, "smash elements over different groups");
        let mut out = SmashElement::zero(self.datum);
        for (g, x) in &self.terms {
            for (h, y) in &other.terms {
                for (word, c) in y.terms() {
                    let moved = SmashElement::move_group_past(self.datum, *g, word);
                    for (g2, z) in moved.terms {
                        let part = x.mul(&z).scale(c);
                        out.add_part(g2.mul(*h), &part);
                    }
                }
            }
        }
        out
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate(&self, g: GroupElement) -> SmashElement {
        let gs = SmashElement::group(self.datum, g);
        let gi = SmashElement::group(self.datum, g.inverse());
        gs.mul(self).mul(&gi)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, x)| format!("({})·{}", x.render(), w)).collect();
        parts.join(" + ")
    }
}

fn merge(map: &mut BTreeMap<GroupElement, FreeDElement>, w: GroupElement, x: FreeDElement) {
    if x.is_zero() {
        return;
    }
    let e = map.entry(w).or_default();
    *e = e.add(&x);
}

/// Normal form of an expression over `s1, s2, D1, D2, Dh<k>` and integers,
/// with `D1 ↦ D̂_1`, `D2 ↦ D̂_m`.
pub fn smash_normal_form(datum: DihedralDatum, e: &Expr) -> Result<SmashElement> {
    let m = datum.m();
    Ok(match e {
        Expr::Int(c) => SmashElement::from_parts(datum, FreeDElement::one().scale(c), datum.identity()),
        Expr::S(i) => SmashElement::group(datum, datum.simple(*i)),
        Expr::D(i) => {
            let k = if *i == 1 { 1 } else { m };
            SmashElement::from_parts(datum, FreeDElement::letter(k), datum.identity())
        }
        Expr::Dh(k) => {
            if *k > m {
                return Err(Error::BadAtom(e.to_string()));
            }
            SmashElement::from_parts(datum, FreeDElement::letter(*k), datum.identity())
        }
        Expr::X(_) | Expr::Q(_) => return Err(Error::BadAtom(e.to_string())),
        Expr::Neg(a) => smash_normal_form(datum, a)?.neg(),
        Expr::Add(a, b) => smash_normal_form(datum, a)?.add(&smash_normal_form(datum, b)?),
        Expr::Sub(a, b) => smash_normal_form(datum, a)?.sub(&smash_normal_form(datum, b)?),
        Expr::Mul(a, b) => smash_normal_form(datum, a)?.mul(&smash_normal_form(datum, b)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::RatFunc;
    use crate::skewalg::{parse, DemazureDatum, SkewElement};
    use proptest::prelude::*;

    fn nf(m: u32, s: &str) -> SmashElement {
        smash_normal_form(DihedralDatum::new(m).unwrap(), &parse(s).unwrap()).unwrap()
    }

    // Image of a smash element in the Demazure representation.
    fn image(d: &DemazureDatum, s: &SmashElement) -> SkewElement {
        let mut out = d.zero();
        for (w, x) in s.terms() {
            let mut xs = d.zero();
            for (word, c) in x.terms() {
                let mut p = d.scalar(RatFunc::from_poly(crate::exact::LaurentPoly::constant(d.dim(), c.clone())));
                for &k in word.letters() {
                    p = p.mul(&d.demazure_hat(k));
                }
                xs = xs.add(&p);
            }
            out = out.add(&xs.mul(&d.group_element(*w)));
        }
        out
    }

    #[test]
    fn b2_braid_commutation() {
        let a = nf(4, "s2 s1 s2 D1");
        let b = nf(4, "D1 s2 s1 s2");
        assert_eq!(a, b);
        let g = DihedralDatum::new(4).unwrap();
        let w = g.simple(2).mul(g.simple(1)).mul(g.simple(2));
        assert_eq!(a.part(w), FreeDElement::letter(1));
    }

    #[test]
    fn rank_one_rewrite() {
        // s1 D1 = (1 - D̂1) s1 - 1
        let g = DihedralDatum::new(4).unwrap();
        let got = nf(4, "s1 D1");
        let mut expect = SmashElement::from_parts(g, FreeDElement::one().sub(&FreeDElement::letter(1)), g.simple(1));
        expect = expect.sub(&SmashElement::group(g, g.identity()));
        assert_eq!(got, expect);
        assert!(nf(4, "s1 D1 + D1 s1 - s1 + 1").is_zero());
    }

    #[test]
    fn relation_ten_target() {
        let g = DihedralDatum::new(4).unwrap();
        let got = nf(4, "D1 s2 D1 s2 - s2 D1 s2 D1");
        let expect = FreeDElement::from_pairs(&[(1, &[1, 3]), (-1, &[3, 1])]);
        assert_eq!(got, SmashElement::from_parts(g, expect, g.identity()));
    }

    #[test]
    fn rejects_lattice_atoms() {
        let g = DihedralDatum::new(4).unwrap();
        assert!(smash_normal_form(g, &parse("X[1,0] s1").unwrap()).is_err());
    }

    fn arb_word_expr(m: u8) -> impl Strategy<Value = String> {
        let atoms = vec!["s1", "s2", "D1", "D2"];
        let _ = m;
        prop::collection::vec(prop::collection::vec(prop::sample::select(atoms), 1..6), 1..3)
            .prop_map(|terms| terms.iter().map(|t| t.join(" ")).collect::<Vec<_>>().join(" - "))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn respects_demazure_image_b2(src in arb_word_expr(4)) {
            let d = DemazureDatum::b2();
            let e = parse(&src).unwrap();
            let s = smash_normal_form(d.group(), &e).unwrap();
            prop_assert!(image(&d, &s).sub(&d.eval(&e).unwrap()).is_zero());
        }

        #[test]
        fn respects_demazure_image_g2(src in arb_word_expr(6)) {
            let d = DemazureDatum::g2();
            let e = parse(&src).unwrap();
            let s = smash_normal_form(d.group(), &e).unwrap();
            prop_assert!(image(&d, &s).sub(&d.eval(&e).unwrap()).is_zero());
        }

        #[test]
        fn associative(a in arb_word_expr(4), b in arb_word_expr(4), c in arb_word_expr(4)) {
            let g = DihedralDatum::new(4).unwrap();
            let f = |s: &str| smash_normal_form(g, &parse(s).unwrap()).unwrap();
            let (x, y, z) = (f(&a), f(&b), f(&c));
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        }
    }
}
