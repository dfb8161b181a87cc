//! The algebra `D̂(W)` spanned by adjacent-repeat-free words in the
//! reflection-indexed generators `D̂_k = D_{r_k}`, with `D̂_k² = D̂_k`.

mod conj133;
mod ideal;
mod kernel;
pub mod modp;
mod smash;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::coxeter::{DihedralDatum, GroupElement, ReflectionIndex};

pub use conj133::{conj133_family, Conj133Element, Conj133Kind};
pub use ideal::{ideal_member, IdealCertificate, IdealGenerator, IdealOutcome, IdealSearch, Triple};
pub use kernel::{in_kernel, kernel_k12, KernelBasis};
pub use smash::{smash_normal_form, SmashElement};

/// Adjacent-repeat-free word in reflection indices; ordered by length, then
/// lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[u8; 8]>);

impl Word {
    pub fn empty() -> Word {
        Word(SmallVec::new())
    }

    pub fn letter(k: u8) -> Word {
        Word(SmallVec::from_slice(&[k]))
    }

    /// Builds a word, collapsing adjacent repeats.
    pub fn from_letters(letters: &[u8]) -> Word {
        let mut w = SmallVec::new();
        for &k in letters {
            if w.last() != Some(&k) {
                w.push(k);
            }
        }
        Word(w)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    /// Concatenation followed by `D̂_k D̂_k = D̂_k` at the seam.
    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.0.clone();
        let skip = usize::from(!other.0.is_empty() && w.last() == other.0.first());
        w.extend_from_slice(&other.0[skip..]);
        Word(w)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// All words of length at most `maxdeg` over `1..=m`, in word order.
pub fn word_basis(m: u8, maxdeg: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..maxdeg {
        let mut next = Vec::with_capacity(layer.len() * m as usize);
        for w in &layer {
            for k in 1..=m {
                if w.0.last() != Some(&k) {
                    let mut v = w.0.clone();
                    v.push(k);
                    next.push(Word(v));
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Integer combination of words.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeDElement {
    terms: BTreeMap<Word, BigInt>,
}

impl FreeDElement {
    pub fn zero() -> Self {
        FreeDElement::default()
    }

    pub fn one() -> Self {
        FreeDElement::word(Word::empty())
    }

    pub fn int(c: i64) -> Self {
        FreeDElement::term(Word::empty(), BigInt::from(c))
    }

    pub fn word(w: Word) -> Self {
        FreeDElement::term(w, BigInt::one())
    }

    pub fn letter(k: u8) -> Self {
        FreeDElement::word(Word::letter(k))
    }

    pub fn term(w: Word, c: BigInt) -> Self {
        let mut e = FreeDElement::zero();
        e.add_term(w, c);
        e
    }

    /// Builds an element from `(coefficient, letters)` pairs.
    pub fn from_pairs(pairs: &[(i64, &[u8])]) -> Self {
        let mut e = FreeDElement::zero();
        for &(c, w) in pairs {
            e.add_term(Word::from_letters(w), BigInt::from(c));
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    pub fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
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

    pub fn add_scaled(&mut self, other: &FreeDElement, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            self.add_term(w.clone(), a * c);
        }
    }

    pub fn add(&self, other: &FreeDElement) -> FreeDElement {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::one());
        out
    }

    pub fn sub(&self, other: &FreeDElement) -> FreeDElement {
        let mut out = self.clone();
        out.add_scaled(other, &-BigInt::one());
        out
    }

    pub fn neg(&self) -> FreeDElement {
        FreeDElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> FreeDElement {
        if c.is_zero() {
            return FreeDElement::zero();
        }
        FreeDElement { terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect() }
    }

    /// Product with idempotent collapse at each seam.
    pub fn mul(&self, other: &FreeDElement) -> FreeDElement {
        let mut out = FreeDElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_word_left(&self, u: &Word) -> FreeDElement {
        let mut out = FreeDElement::zero();
        for (w, c) in &self.terms {
            out.add_term(u.concat(w), c.clone());
        }
        out
    }

    pub fn mul_word_right(&self, v: &Word) -> FreeDElement {
        let mut out = FreeDElement::zero();
        for (w, c) in &self.terms {
            out.add_term(w.concat(v), c.clone());
        }
        out
    }

    /// `u · self · v`.
    pub fn sandwich(&self, u: &Word, v: &Word) -> FreeDElement {
        let mut out = FreeDElement::zero();
        for (w, c) in &self.terms {
            out.add_term(u.concat(w).concat(v), c.clone());
        }
        out
    }

    /// Applies a letter permutation to every word.
    pub fn map_letters(&self, f: impl Fn(u8) -> u8) -> FreeDElement {
        let mut out = FreeDElement::zero();
        for (w, c) in &self.terms {
            let letters: Vec<u8> = w.letters().iter().map(|&k| f(k)).collect();
            out.add_term(Word::from_letters(&letters), c.clone());
        }
        out
    }

    /// Coefficient of the empty word.
    pub fn counit(&self) -> BigInt {
        self.coeff(&Word::empty())
    }

    /// Largest absolute coefficient.
    pub fn max_coeff(&self) -> BigInt {
        use num_traits::Signed;
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Text such as `-[2] + [2,3] + 1`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if w.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                }
                let letters: Vec<String> = w.0.iter().map(|k| k.to_string()).collect();
                out.push_str(&format!("[{}]", letters.join(",")));
            }
        }
        out
    }

    /// Parses the output of [`FreeDElement::render`]: bracketed words with
    /// integer coefficients, a bare integer being the empty word.
    pub fn parse(src: &str) -> crate::Result<FreeDElement> {
        let err = |pos: usize, msg: &str| crate::Error::Syntax { pos, msg: msg.to_string() };
        let b = src.as_bytes();
        let mut i = 0;
        let mut out = FreeDElement::zero();
        let mut sign = BigInt::one();
        let mut expect_term = true;
        while i < b.len() {
            match b[i] {
                b' ' | b'\t' => i += 1,
                b'+' | b'-' => {
                    if b[i] == b'-' {
                        sign = -sign;
                    }
                    expect_term = true;
                    i += 1;
                }
                b'0'..=b'9' | b'[' => {
                    if !expect_term {
                        return Err(err(i, "expected `+` or `-`"));
                    }
                    let start = i;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                    let c: BigInt = if i > start { src[start..i].parse().unwrap() } else { BigInt::one() };
                    let mut letters = Vec::new();
                    if i < b.len() && b[i] == b'[' {
                        let close = src[i..].find(']').ok_or_else(|| err(i, "unclosed `[`"))? + i;
                        for part in src[i + 1..close].split(',').filter(|s| !s.trim().is_empty()) {
                            letters.push(part.trim().parse::<u8>().map_err(|_| err(i, "bad letter"))?);
                        }
                        i = close + 1;
                    }
                    out.add_term(Word::from_letters(&letters), &sign * c);
                    sign = BigInt::one();
                    expect_term = false;
                }
                _ => return Err(err(i, "unexpected character")),
            }
        }
        if expect_term && !src.trim().is_empty() {
            return Err(err(src.len(), "dangling sign"));
        }
        Ok(out)
    }
}

impl fmt::Debug for FreeDElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Image of a single generator under `w`: `D̂_{k'}` or `1 - D̂_{k'}`.
pub fn act_letter(d: DihedralDatum, w: GroupElement, k: u8) -> FreeDElement {
    let (k2, flipped) = d.conj_action(w, ReflectionIndex(k));
    if flipped {
        let mut e = FreeDElement::one();
        e.add_term(Word::letter(k2.0), -BigInt::one());
        e
    } else {
        FreeDElement::letter(k2.0)
    }
}

/// The module-algebra action of `w`, extended multiplicatively over words.
pub fn fd_act(d: DihedralDatum, w: GroupElement, a: &FreeDElement) -> FreeDElement {
    if w.is_identity() {
        return a.clone();
    }
    let images: Vec<FreeDElement> = (1..=d.m()).map(|k| act_letter(d, w, k)).collect();
    let mut out = FreeDElement::zero();
    for (word, c) in a.terms() {
        let mut prod = FreeDElement::int(1);
        for &k in word.letters() {
            prod = prod.mul(&images[k as usize - 1]);
        }
        out.add_scaled(&prod, c);
    }
    out
}

/// Twisted derivation: `d_k(D̂_j) = δ_kj`, `d_k(xy) = d_k(x) y + s̄_k(x) d_k(y)`
/// where `s̄_k = r_k`.
pub fn derivation(d: DihedralDatum, k: u8, a: &FreeDElement) -> FreeDElement {
    let rk = d.reflection(ReflectionIndex(k));
    let images: Vec<FreeDElement> = (1..=d.m()).map(|j| act_letter(d, rk, j)).collect();
    let mut out = FreeDElement::zero();
    for (word, c) in a.terms() {
        // prefix image accumulated left to right
        let mut prefix = FreeDElement::int(1);
        let letters = word.letters();
        for (j, &x) in letters.iter().enumerate() {
            if x == k {
                let suffix = Word(SmallVec::from_slice(&letters[j + 1..]));
                out.add_scaled(&prefix.mul_word_right(&suffix), c);
            }
            prefix = prefix.mul(&images[x as usize - 1]);
        }
    }
    out
}

/// The counit: coefficient of the empty word.
pub fn counit(a: &FreeDElement) -> BigInt {
    a.counit()
}
