//! Finite dihedral groups `I_2(m)` in `(rotation, flip)` normal form.
//!
//! An element is stored as `ρ^rot · σ^flip` where `σ = s1` and `ρ = s2 s1`,
//! so `s2 = ρσ`. Every reflection is a flip; the reflections are enumerated
//! in the alternating order `r_k = s1 s2 s1 ⋯` (`2k - 1` letters), which puts
//! `r_1 = s1` and `r_m = s2`.

use std::fmt;
use std::sync::OnceLock;

use crate::Error;

/// Largest supported order parameter.
pub const MAX_M: u8 = 6;

/// The order parameter `m` of a rank-2 Coxeter group; `(s1 s2)^m = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralDatum {
    m: u8,
}

impl DihedralDatum {
    pub fn new(m: u32) -> Result<Self, Error> {
        match m {
            0 => Err(Error::InfiniteGroup),
            2..=6 => Ok(DihedralDatum { m: m as u8 }),
            _ => Err(Error::UnsupportedOrder(m)),
        }
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn order(&self) -> usize {
        2 * self.m as usize
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { m: self.m, rot: 0, flip: false }
    }

    /// Simple generator `s1` or `s2`.
    pub fn simple(&self, i: u8) -> GroupElement {
        debug_assert!(i == 1 || i == 2);
        GroupElement { m: self.m, rot: if i == 1 { 0 } else { 1 }, flip: true }
    }

    /// All `2m` elements, in index order (rotations first, then flips).
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(move |i| GroupElement::from_index(self.m, i))
    }

    pub fn longest(&self) -> GroupElement {
        let t = table(self.m);
        let idx = (0..self.order()).find(|&i| t.length[i] == self.m).unwrap();
        GroupElement::from_index(self.m, idx)
    }

    /// The reflection `r_k = s1 s2 s1 ⋯` with `2k - 1` letters.
    pub fn reflection(&self, k: ReflectionIndex) -> GroupElement {
        let m = self.m as i32;
        let rot = (-(k.0 as i32 - 1)).rem_euclid(m) as u8;
        GroupElement { m: self.m, rot, flip: true }
    }

    /// `r_1, …, r_m` paired with their indices.
    pub fn reflections(&self) -> Vec<(ReflectionIndex, GroupElement)> {
        (1..=self.m).map(|k| (ReflectionIndex(k), self.reflection(ReflectionIndex(k)))).collect()
    }

    /// Index of a reflection element, or `None` for rotations.
    pub fn reflection_index(&self, g: GroupElement) -> Option<ReflectionIndex> {
        if !g.flip {
            return None;
        }
        let m = self.m as i32;
        let k = ((-(g.rot as i32)).rem_euclid(m) + 1) as u8;
        Some(ReflectionIndex(k))
    }

    /// Conjugation `w r_k w⁻¹` together with whether the Demazure generator
    /// flips, i.e. whether `ℓ(w r_k) < ℓ(w)`.
    pub fn conj_action(&self, w: GroupElement, k: ReflectionIndex) -> (ReflectionIndex, bool) {
        let t = table(self.m);
        let i = w.index() * self.m as usize + (k.0 as usize - 1);
        t.conj[i]
    }

    /// `ℓ(w · s_i) = ℓ(w) + 1`?
    pub fn ascends(&self, w: GroupElement, i: u8) -> bool {
        w.mul(self.simple(i)).length() > w.length()
    }
}

/// `k` in `1..=m`, naming the reflection `r_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReflectionIndex(pub u8);

impl ReflectionIndex {
    pub fn get(self) -> u8 {
        self.0
    }
}

/// An element of `I_2(m)`; `m` travels with the element so products can be
/// checked for compatibility.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    m: u8,
    rot: u8,
    flip: bool,
}

impl GroupElement {
    pub fn new(m: u8, rot: u8, flip: bool) -> Self {
        debug_assert!(rot < m);
        GroupElement { m, rot, flip }
    }

    fn from_index(m: u8, i: usize) -> Self {
        let m_us = m as usize;
        GroupElement { m, rot: (i % m_us) as u8, flip: i >= m_us }
    }

    /// Dense index in `0..2m`.
    pub fn index(&self) -> usize {
        self.rot as usize + if self.flip { self.m as usize } else { 0 }
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn rot(&self) -> u8 {
        self.rot
    }

    pub fn flip(&self) -> bool {
        self.flip
    }

    pub fn is_identity(&self) -> bool {
        self.rot == 0 && !self.flip
    }

    pub fn try_mul(&self, other: &GroupElement) -> Result<GroupElement, Error> {
        if self.m != other.m {
            return Err(Error::GroupMismatch(self.m, other.m));
        }
        Ok(self.mul(*other))
    }

    /// `(ρ^a σ^e)(ρ^b σ^f) = ρ^(a + (-1)^e b) σ^(e+f)`.
    pub fn mul(self, other: GroupElement) -> GroupElement {
        assert_eq!(self.m, other.m, "group elements from different dihedral groups");
        let m = self.m as i32;
        let b = if self.flip { -(other.rot as i32) } else { other.rot as i32 };
        GroupElement {
            m: self.m,
            rot: (self.rot as i32 + b).rem_euclid(m) as u8,
            flip: self.flip ^ other.flip,
        }
    }

    pub fn inverse(self) -> GroupElement {
        if self.flip {
            self
        } else {
            GroupElement { m: self.m, rot: ((self.m - self.rot) % self.m), flip: false }
        }
    }

    pub fn length(&self) -> usize {
        table(self.m).length[self.index()] as usize
    }

    /// A reduced word in `{1, 2}`; for the longest element the word starting
    /// with `s1` is returned.
    pub fn reduced_word(&self) -> &'static [u8] {
        &table(self.m).words[self.index()]
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.reduced_word();
        if w.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = w.iter().map(|i| format!("s{}", i)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

struct GroupTable {
    length: Vec<u8>,
    words: Vec<Vec<u8>>,
    conj: Vec<(ReflectionIndex, bool)>,
}

fn table(m: u8) -> &'static GroupTable {
    static TABLES: [OnceLock<GroupTable>; MAX_M as usize + 1] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    assert!((2..=MAX_M).contains(&m), "unsupported dihedral order {}", m);
    TABLES[m as usize].get_or_init(|| build_table(m))
}

// BFS from the identity, extending words on the right; the s1 branch is
// explored first so the longest element gets the word starting with s1.
fn build_table(m: u8) -> GroupTable {
    let n = 2 * m as usize;
    let d = DihedralDatum { m };
    let gens = [d.simple(1), d.simple(2)];
    let mut length = vec![u8::MAX; n];
    let mut words: Vec<Vec<u8>> = vec![Vec::new(); n];
    let mut frontier = vec![d.identity()];
    length[0] = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in frontier {
            for (gi, g) in gens.iter().enumerate() {
                let v = w.mul(*g);
                if length[v.index()] == u8::MAX {
                    length[v.index()] = length[w.index()] + 1;
                    let mut word = words[w.index()].clone();
                    word.push(gi as u8 + 1);
                    words[v.index()] = word;
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    let mut conj = Vec::with_capacity(n * m as usize);
    for wi in 0..n {
        let w = GroupElement::from_index(m, wi);
        for k in 1..=m {
            let r = d.reflection(ReflectionIndex(k));
            let c = w.mul(r).mul(w.inverse());
            let kk = d.reflection_index(c).expect("conjugate of a reflection is a reflection");
            let flipped = length[w.mul(r).index()] < length[wi];
            conj.push((kk, flipped));
        }
    }
    GroupTable { length, words, conj }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(d: &DihedralDatum, w: &[u8]) -> GroupElement {
        w.iter().fold(d.identity(), |acc, &i| acc.mul(d.simple(i)))
    }

    #[test]
    fn involution_and_braid() {
        for m in 2..=6 {
            let d = DihedralDatum::new(m).unwrap();
            let s1 = d.simple(1);
            let s2 = d.simple(2);
            assert!(s1.mul(s1).is_identity());
            assert!(s2.mul(s2).is_identity());
            let alt1: Vec<u8> = (0..m).map(|i| if i % 2 == 0 { 1 } else { 2 }).collect();
            let alt2: Vec<u8> = (0..m).map(|i| if i % 2 == 0 { 2 } else { 1 }).collect();
            assert_eq!(word(&d, &alt1), word(&d, &alt2));
            // s1 s2 has order exactly m
            let r = s1.mul(s2);
            let mut p = r;
            for _ in 1..m {
                assert!(!p.is_identity());
                p = p.mul(r);
            }
            assert!(p.is_identity());
        }
    }

    #[test]
    fn b2_products() {
        let d = DihedralDatum::new(4).unwrap();
        assert_eq!(word(&d, &[1, 2, 1, 2]), word(&d, &[2, 1, 2, 1]));
        // brute force over the group table: s2 s1 s2 · s1 · s2 s1 s2 = s1
        let lhs = word(&d, &[2, 1, 2]).mul(d.simple(1)).mul(word(&d, &[2, 1, 2]));
        let mut brute = None;
        for g in d.elements() {
            if g == lhs {
                brute = Some(g);
            }
        }
        assert_eq!(brute, Some(d.simple(1)));
    }

    #[test]
    fn lengths() {
        let d = DihedralDatum::new(4).unwrap();
        assert_eq!(d.identity().length(), 0);
        assert_eq!(word(&d, &[1, 2, 1]).length(), 3);
        assert_eq!(word(&d, &[1, 2, 1, 2]).length(), 4);
        for m in 2..=6 {
            let d = DihedralDatum::new(m).unwrap();
            let longest: Vec<_> = d.elements().filter(|g| g.length() == m as usize).collect();
            assert_eq!(longest.len(), 1);
            for w in d.elements() {
                assert!(w.length() <= m as usize);
                for i in 1..=2 {
                    let l = w.mul(d.simple(i)).length() as i64;
                    assert_eq!((l - w.length() as i64).abs(), 1);
                }
                assert_eq!(word(&d, w.reduced_word()), w);
            }
        }
    }

    // Exhaustive word search: minimal word length agrees with the BFS table.
    #[test]
    fn length_matches_word_enumeration() {
        for m in 2..=6u32 {
            let d = DihedralDatum::new(m).unwrap();
            let mut best = vec![usize::MAX; d.order()];
            for len in 0..=m as usize {
                for bits in 0..(1u32 << len) {
                    let w: Vec<u8> = (0..len).map(|i| if bits >> i & 1 == 0 { 1 } else { 2 }).collect();
                    let g = word(&d, &w);
                    best[g.index()] = best[g.index()].min(len);
                }
            }
            for g in d.elements() {
                assert_eq!(best[g.index()], g.length());
            }
        }
    }

    #[test]
    fn reflection_order() {
        let d = DihedralDatum::new(4).unwrap();
        assert_eq!(d.reflection(ReflectionIndex(2)), word(&d, &[1, 2, 1]));
        assert_eq!(d.reflection(ReflectionIndex(4)), d.simple(2));
        for m in 2..=6 {
            let d = DihedralDatum::new(m).unwrap();
            assert_eq!(d.reflection(ReflectionIndex(1)), d.simple(1));
            assert_eq!(d.reflection(ReflectionIndex(m as u8)), d.simple(2));
            let refl = d.reflections();
            for (k, r) in &refl {
                assert!(r.mul(*r).is_identity());
                assert_eq!(r.length() % 2, 1);
                assert_eq!(d.reflection_index(*r), Some(*k));
            }
            let mut set: Vec<_> = refl.iter().map(|(_, r)| *r).collect();
            set.sort();
            set.dedup();
            assert_eq!(set.len(), m as usize);
        }
    }

    #[test]
    fn conjugation_examples() {
        let d = DihedralDatum::new(4).unwrap();
        assert_eq!(d.conj_action(d.simple(1), ReflectionIndex(2)), (ReflectionIndex(4), false));
        assert_eq!(d.conj_action(d.simple(2), ReflectionIndex(1)), (ReflectionIndex(3), false));
        // the published B2 table for the action of r_j on the generators:
        // entry (j, k) -> (k', flipped)
        let table = [
            [(1, true), (4, false), (3, false), (2, false)],
            [(3, true), (2, true), (1, true), (4, false)],
            [(1, false), (4, true), (3, true), (2, true)],
            [(3, false), (2, false), (1, false), (4, true)],
        ];
        for (j, row) in table.iter().enumerate() {
            let r = d.reflection(ReflectionIndex(j as u8 + 1));
            for (k, &(k2, flipped)) in row.iter().enumerate() {
                assert_eq!(d.conj_action(r, ReflectionIndex(k as u8 + 1)), (ReflectionIndex(k2), flipped));
            }
        }
        for k in 1..=4 {
            assert_eq!(d.conj_action(d.identity(), ReflectionIndex(k)), (ReflectionIndex(k), false));
        }
    }

    #[test]
    fn conjugation_properties() {
        for m in 2..=6 {
            let d = DihedralDatum::new(m).unwrap();
            for w in d.elements() {
                let mut image: Vec<u8> =
                    (1..=m as u8).map(|k| d.conj_action(w, ReflectionIndex(k)).0 .0).collect();
                image.sort();
                assert_eq!(image, (1..=m as u8).collect::<Vec<_>>());
            }
            for k in 1..=m as u8 {
                let r = d.reflection(ReflectionIndex(k));
                assert!(d.conj_action(r, ReflectionIndex(k)).1);
            }
            // composition: flipping parities compose like affine maps x ↦ ±x + c
            for w1 in d.elements() {
                for w2 in d.elements() {
                    for k in 1..=m as u8 {
                        let (k2, f2) = d.conj_action(w2, ReflectionIndex(k));
                        let (k1, f1) = d.conj_action(w1, k2);
                        let (k12, f12) = d.conj_action(w1.mul(w2), ReflectionIndex(k));
                        assert_eq!(k1, k12);
                        assert_eq!(f1 ^ f2, f12);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(matches!(DihedralDatum::new(0), Err(Error::InfiniteGroup)));
        assert!(matches!(DihedralDatum::new(7), Err(Error::UnsupportedOrder(7))));
        let a = DihedralDatum::new(4).unwrap().simple(1);
        let b = DihedralDatum::new(6).unwrap().simple(1);
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn renders_reduced_words() {
        let d = DihedralDatum::new(4).unwrap();
        assert_eq!(d.identity().to_string(), "e");
        assert_eq!(word(&d, &[1, 2, 1]).to_string(), "s1 s2 s1");
        assert_eq!(d.longest().to_string(), "s1 s2 s1 s2");
    }
}
