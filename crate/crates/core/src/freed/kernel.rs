use std::cmp::Reverse;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use num_traits::{One, Zero};

use super::modp::{self, Echelon};
use super::{derivation, word_basis, FreeDElement, Word};
use crate::coxeter::DihedralDatum;

/// Integer basis of `{x : deg x ≤ maxdeg, ε(x) = 0, d_k(x) = 0 for all k}`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct KernelBasis {
    pub m: u8,
    pub maxdeg: usize,
    /// Number of words of degree at most `maxdeg`.
    pub ncols: usize,
    /// Rank of the constraint matrix.
    pub rank: usize,
    /// Whether every vector lifted to an integer vector directly, in which
    /// case the basis spans the whole integer kernel.
    pub saturated: bool,
    pub basis: Vec<FreeDElement>,
}

/// Constraint map `x ↦ (ε(x), d_1(x), …, d_m(x))` evaluated on each basis
/// word, stored by column. Rows are indexed by `(k, output word)` with
/// `k = 0` for `ε`, numbered by decreasing output length.
struct Constraints {
    columns: Vec<Vec<(u32, BigInt)>>,
    nrows: usize,
}

impl Constraints {
    fn new(d: DihedralDatum, words: &[Word]) -> Self {
        let mut cols: Vec<Vec<((Reverse<usize>, u8, Word), BigInt)>> = Vec::with_capacity(words.len());
        for w in words {
            let x = FreeDElement::word(w.clone());
            let mut col = Vec::new();
            if w.is_empty() {
                col.push(((Reverse(0), 0, Word::empty()), BigInt::one()));
            }
            for k in 1..=d.m() {
                for (out, c) in derivation(d, k, &x).terms() {
                    col.push(((Reverse(out.len()), k, out.clone()), c.clone()));
                }
            }
            cols.push(col);
        }
        let mut keys: Vec<&(Reverse<usize>, u8, Word)> = cols.iter().flatten().map(|(k, _)| k).collect();
        keys.sort();
        keys.dedup();
        let index: HashMap<&(Reverse<usize>, u8, Word), u32> =
            keys.iter().enumerate().map(|(i, k)| (*k, i as u32)).collect();
        let columns = cols.iter().map(|col| col.iter().map(|(k, c)| (index[k], c.clone())).collect()).collect();
        Constraints { columns, nrows: keys.len() }
    }

    fn rows(&self) -> Vec<Vec<(u32, BigInt)>> {
        let mut rows = vec![Vec::new(); self.nrows];
        for (j, col) in self.columns.iter().enumerate() {
            for (r, c) in col {
                rows[*r as usize].push((j as u32, c.clone()));
            }
        }
        rows
    }

    /// Exact product of the constraint matrix with a coefficient vector.
    fn annihilates(&self, x: &[(usize, BigInt)]) -> bool {
        let mut acc: HashMap<u32, BigInt> = HashMap::new();
        for (j, a) in x {
            for (r, c) in &self.columns[*j] {
                *acc.entry(*r).or_default() += a * c;
            }
        }
        acc.values().all(|v| v.is_zero())
    }
}

/// Computes the kernel of the counit and all twisted derivations on
/// `D̂(W)_{≤ maxdeg}`.
///
/// Elimination runs mod `p` with the smallest word of each row as its pivot.
/// The reduced echelon form then gives one vector per free word `f`, equal to
/// `f` minus a combination of smaller pivot words, so the basis respects the
/// degree filtration. When all entries lift to integers the basis spans the
/// full integer kernel; otherwise the offending vectors are reconstructed as
/// rationals and made primitive. Every vector is checked exactly.
pub fn kernel_k12(d: DihedralDatum, maxdeg: usize) -> KernelBasis {
    let words = word_basis(d.m(), maxdeg);
    let n = words.len();
    // columns are reversed so that the echelon's largest-column pivot is the
    // smallest word
    let rev = |c: u32| n as u32 - 1 - c;
    let cons = Constraints::new(d, &words);
    let mut ech = Echelon::new(n, false);
    for (i, r) in cons.rows().into_iter().enumerate() {
        let row = modp::sparse_from_ints(r.into_iter().map(|(c, v)| (rev(c), v)));
        if !row.is_empty() {
            ech.insert(&row, i as u32);
        }
    }
    let rank = ech.rank();
    let mut by_free: HashMap<u32, Vec<(u32, u64)>> = HashMap::new();
    let mut is_pivot = vec![false; n];
    for (lead, row) in ech.rref() {
        is_pivot[rev(lead) as usize] = true;
        for &(c, v) in &row[..row.len() - 1] {
            by_free.entry(rev(c)).or_default().push((rev(lead), v));
        }
    }
    let mut basis = Vec::with_capacity(n - rank);
    let mut saturated = true;
    for f in (0..n).filter(|&f| !is_pivot[f]) {
        let entries = by_free.remove(&(f as u32)).unwrap_or_default();
        let lifted: Option<Vec<BigInt>> = entries.iter().map(|&(_, v)| modp::lift_int(modp::sub(0, v))).collect();
        let x = match lifted {
            Some(cs) => {
                let mut x = FreeDElement::term(words[f].clone(), BigInt::one());
                for (&(p, _), c) in entries.iter().zip(cs) {
                    x.add_term(words[p as usize].clone(), c);
                }
                x
            }
            None => {
                saturated = false;
                primitive_lift(&words, f, &entries)
            }
        };
        basis.push(x);
    }
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let bad = basis.par_iter().find_any(|x| {
        let coords: Vec<(usize, BigInt)> = x.terms().map(|(w, c)| (index[w], c.clone())).collect();
        !cons.annihilates(&coords)
    });
    if let Some(x) = bad {
        panic!("lifted kernel vector fails exact check: {}", x.render());
    }
    KernelBasis { m: d.m(), maxdeg, ncols: n, rank, saturated, basis }
}

/// Rational reconstruction of `f - Σ a_p p`, scaled to a primitive integer
/// vector.
fn primitive_lift(words: &[Word], f: usize, entries: &[(u32, u64)]) -> FreeDElement {
    let mut fracs: Vec<(usize, BigInt, BigInt)> = vec![(f, BigInt::one(), BigInt::one())];
    for &(p, v) in entries {
        let (num, den) = modp::rational_reconstruct(modp::sub(0, v)).expect("kernel entry has no small rational lift");
        fracs.push((p as usize, num, den));
    }
    let l = fracs.iter().fold(BigInt::one(), |acc, (_, _, den)| acc.lcm(den));
    let mut x = FreeDElement::zero();
    for (i, num, den) in fracs {
        x.add_term(words[i].clone(), num * (&l / den));
    }
    let g = x.terms().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
    x.terms().map(|(w, c)| (w.clone(), c / &g)).fold(FreeDElement::zero(), |mut acc, (w, c)| {
        acc.add_term(w, c);
        acc
    })
}

/// Exact check `ε(x) = 0` and `d_k(x) = 0` for all `k`.
pub fn in_kernel(d: DihedralDatum, x: &FreeDElement) -> bool {
    x.counit().is_zero() && (1..=d.m()).all(|k| derivation(d, k, x).is_zero())
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Writes `x` in the basis, exactly; `None` if `x` is not in the integer
    /// span. Each basis vector has a unit entry on its own free word, which
    /// no other basis vector touches.
    ///
    /// Only valid for saturated bases.
    pub fn coordinates(&self, x: &FreeDElement) -> Option<Vec<BigInt>> {
        if x.degree() > self.maxdeg {
            return None;
        }
        let mut coords = Vec::with_capacity(self.basis.len());
        let mut acc = FreeDElement::zero();
        for b in &self.basis {
            let free = self.free_word(b);
            let c = x.coeff(free);
            acc.add_scaled(b, &c);
            coords.push(c);
        }
        if &acc == x {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, x: &FreeDElement) -> bool {
        self.coordinates(x).is_some()
    }

    /// The free word of a basis vector: the largest word in its support.
    fn free_word<'a>(&self, b: &'a FreeDElement) -> &'a Word {
        b.terms().next_back().map(|(w, _)| w).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(pairs: &[(i64, &[u8])]) -> FreeDElement {
        FreeDElement::from_pairs(pairs)
    }

    #[test]
    fn b2_examples() {
        let d = DihedralDatum::new(4).unwrap();
        let k = kernel_k12(d, 4);
        assert!(k.contains(&fe(&[(1, &[1, 3]), (-1, &[3, 1])])));
        let q = fe(&[(-1, &[2]), (1, &[2, 3]), (-1, &[3]), (-1, &[4, 1]), (1, &[3, 4]), (1, &[1, 2])]);
        assert!(k.contains(&q));
        assert!(!k.contains(&fe(&[(1, &[1, 3])])));
        let k3 = kernel_k12(d, 3);
        assert_eq!(k3.dim(), 12);
    }
}
