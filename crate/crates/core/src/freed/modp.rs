//! Sparse linear algebra over `F_p`, `p = 2^61 - 1`.
//!
//! Used as a fast filter: every positive answer is lifted to the integers and
//! verified exactly by the callers, and a negative membership answer mod `p`
//! implies the same over `Z`.

use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub const P: u64 = (1 << 61) - 1;

#[inline]
pub fn reduce128(x: u128) -> u64 {
    let lo = (x as u64) & P;
    let hi = (x >> 61) as u64;
    let mut r = lo + (hi & P) + ((x >> 122) as u64);
    while r >= P {
        r -= P;
    }
    r
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    reduce128(a as u128 * b as u128)
}

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64) -> u64 {
    assert!(a != 0, "inverse of zero mod p");
    pow(a, P - 2)
}

pub fn from_i64(c: i64) -> u64 {
    if c >= 0 {
        (c as u64) % P
    } else {
        sub(0, ((-(c as i128)) as u64) % P)
    }
}

pub fn from_bigint(c: &BigInt) -> u64 {
    let r = c.mod_floor(&BigInt::from(P));
    r.to_u64().unwrap()
}

/// Smallest-height `n/d` congruent to `a` with `|n|, d < sqrt(p/2)`.
pub fn rational_reconstruct(a: u64) -> Option<(BigInt, BigInt)> {
    let bound: i128 = ((P / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (P as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
    let (n, d) = (BigInt::from(n), BigInt::from(d));
    let g = n.gcd(&d);
    if g.is_zero() {
        return Some((n, d));
    }
    Some((n / &g, d / g))
}

/// Symmetric integer representative in `(-p/2, p/2]`.
pub fn symmetric(a: u64) -> i64 {
    if a > P / 2 {
        -((P - a) as i64)
    } else {
        a as i64
    }
}

/// Sparse row: `(column, value)` pairs with strictly increasing columns and
/// nonzero values.
pub type SparseRow = Vec<(u32, u64)>;

/// Row echelon form with the largest column of each row as its pivot.
///
/// Optionally records, for every stored row, the combination of inserted
/// input rows it equals.
pub struct Echelon {
    ncols: usize,
    pivot_of: Vec<u32>,
    rows: Vec<SparseRow>,
    combos: Option<Vec<SparseRow>>,
    acc: Vec<u64>,
    queued: Vec<bool>,
    combo_acc: Vec<(u32, u64)>,
}

const NONE: u32 = u32::MAX;

impl Echelon {
    pub fn new(ncols: usize, track: bool) -> Self {
        Echelon {
            ncols,
            pivot_of: vec![NONE; ncols],
            rows: Vec::new(),
            combos: if track { Some(Vec::new()) } else { None },
            acc: vec![0; ncols],
            queued: vec![false; ncols],
            combo_acc: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivot_of[col as usize] != NONE
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Fully reduces `row` by the stored pivots. Returns the remainder and,
    /// when tracking, the combination `c` of input rows with
    /// `row - Σ c_i input_i = remainder`.
    pub fn reduce(&mut self, row: &[(u32, u64)]) -> (SparseRow, Option<SparseRow>) {
        let mut heap: BinaryHeap<u32> = BinaryHeap::with_capacity(row.len() * 4);
        for &(c, v) in row {
            let ci = c as usize;
            self.acc[ci] = add(self.acc[ci], v);
            if !self.queued[ci] {
                self.queued[ci] = true;
                heap.push(c);
            }
        }
        let tracking = self.combos.is_some();
        self.combo_acc.clear();
        let mut rem: SparseRow = Vec::new();
        while let Some(c) = heap.pop() {
            let ci = c as usize;
            self.queued[ci] = false;
            let f = self.acc[ci];
            if f == 0 {
                continue;
            }
            self.acc[ci] = 0;
            let p = self.pivot_of[ci];
            if p == NONE {
                rem.push((c, f));
                continue;
            }
            let prow = &self.rows[p as usize];
            // pivot row is monic in its last entry
            for &(c2, v2) in &prow[..prow.len() - 1] {
                let i2 = c2 as usize;
                self.acc[i2] = sub(self.acc[i2], mul(f, v2));
                if !self.queued[i2] {
                    self.queued[i2] = true;
                    heap.push(c2);
                }
            }
            if tracking {
                let combo = &self.combos.as_ref().unwrap()[p as usize];
                for &(r, v) in combo {
                    self.combo_acc.push((r, mul(f, v)));
                }
            }
        }
        rem.reverse();
        let combo = if tracking { Some(compress(&mut self.combo_acc)) } else { None };
        (rem, combo)
    }

    /// Inserts an input row with identifier `tag`; returns whether it was
    /// independent of the rows already present.
    pub fn insert(&mut self, row: &[(u32, u64)], tag: u32) -> bool {
        let (rem, combo) = self.reduce(row);
        if rem.is_empty() {
            return false;
        }
        let (lead, lv) = *rem.last().unwrap();
        let li = inv(lv);
        let rem: SparseRow = rem.into_iter().map(|(c, v)| (c, mul(v, li))).collect();
        if let Some(combos) = self.combos.as_mut() {
            // stored = (input - Σ c_i input_i) / lv
            let mut parts: Vec<(u32, u64)> = combo.unwrap().into_iter().map(|(r, v)| (r, sub(0, mul(v, li)))).collect();
            parts.push((tag, li));
            combos.push(compress(&mut parts));
        }
        self.pivot_of[lead as usize] = self.rows.len() as u32;
        self.rows.push(rem);
        true
    }

    /// Reduced row echelon form: every pivot column appears only in its own
    /// row. Returns `(pivot column, row)` pairs sorted by pivot column.
    pub fn rref(&mut self) -> Vec<(u32, SparseRow)> {
        let mut order: Vec<(u32, usize)> =
            self.rows.iter().enumerate().map(|(i, r)| (r.last().unwrap().0, i)).collect();
        order.sort();
        let saved_combos = self.combos.take();
        for &(lead, i) in &order {
            let row = std::mem::take(&mut self.rows[i]);
            let tail = &row[..row.len() - 1];
            // temporarily hide this pivot so its own column is not reduced
            self.pivot_of[lead as usize] = NONE;
            let (mut rem, _) = self.reduce(tail);
            self.pivot_of[lead as usize] = i as u32;
            rem.push((lead, 1));
            self.rows[i] = rem;
        }
        self.combos = saved_combos;
        order.into_iter().map(|(lead, i)| (lead, self.rows[i].clone())).collect()
    }
}

fn compress(parts: &mut Vec<(u32, u64)>) -> SparseRow {
    parts.sort_unstable_by_key(|&(r, _)| r);
    let mut out: SparseRow = Vec::with_capacity(parts.len());
    for &(r, v) in parts.iter() {
        match out.last_mut() {
            Some((lr, lv)) if *lr == r => *lv = add(*lv, v),
            _ => out.push((r, v)),
        }
    }
    out.retain(|&(_, v)| v != 0);
    out
}

/// Converts a dense-ish integer row into a sparse modular row.
pub fn sparse_from_ints(entries: impl IntoIterator<Item = (u32, BigInt)>) -> SparseRow {
    let mut parts: Vec<(u32, u64)> = entries.into_iter().map(|(c, v)| (c, from_bigint(&v))).collect();
    compress(&mut parts)
}

/// Lifts a modular value to a small integer when it is one.
pub fn lift_int(a: u64) -> Option<BigInt> {
    let s = symmetric(a);
    if s.unsigned_abs() < (1 << 40) {
        Some(BigInt::from(s))
    } else {
        rational_reconstruct(a).filter(|(_, d)| d == &BigInt::from(1)).map(|(n, _)| n).filter(|n| n.abs() < BigInt::from(1u64 << 60))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let a = 123456789u64;
        assert_eq!(mul(a, inv(a)), 1);
        assert_eq!(add(P - 1, 2), 1);
        assert_eq!(sub(1, 2), P - 1);
        assert_eq!(from_i64(-1), P - 1);
        assert_eq!(from_bigint(&BigInt::from(-5)), P - 5);
        assert_eq!(symmetric(P - 5), -5);
    }

    #[test]
    fn reconstruct() {
        let x = mul(from_i64(-3), inv(7));
        assert_eq!(rational_reconstruct(x), Some((BigInt::from(-3), BigInt::from(7))));
        assert_eq!(lift_int(from_i64(-42)), Some(BigInt::from(-42)));
    }

    #[test]
    fn echelon_membership_and_tracking() {
        let mut e = Echelon::new(4, true);
        // r0 = x0 + x2, r1 = x1 + x2, r2 = x0 - x1 (dependent)
        assert!(e.insert(&[(0, 1), (2, 1)], 0));
        assert!(e.insert(&[(1, 1), (2, 1)], 1));
        assert!(!e.insert(&[(0, 1), (1, P - 1)], 2));
        assert_eq!(e.rank(), 2);
        let target = vec![(0, 2), (1, 3), (2, 5)];
        let (rem, combo) = e.reduce(&target);
        assert!(rem.is_empty());
        let combo = combo.unwrap();
        assert_eq!(combo, vec![(0, 2), (1, 3)]);
        let (rem, _) = e.reduce(&[(3, 1)]);
        assert_eq!(rem, vec![(3, 1)]);
    }

    #[test]
    fn rref_clears_pivot_columns() {
        let mut e = Echelon::new(3, false);
        e.insert(&[(0, 1), (1, 1)], 0);
        e.insert(&[(0, 2), (1, 1), (2, 1)], 1);
        let rows = e.rref();
        for (lead, row) in &rows {
            for (other, r2) in &rows {
                if other != lead {
                    assert!(r2.iter().all(|&(c, _)| c != *lead));
                }
            }
            assert_eq!(row.last(), Some(&(*lead, 1)));
        }
    }
}
