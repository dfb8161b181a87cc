use crate::coxeter::{DihedralDatum, GroupElement};

use super::{Exponent, LaurentPoly, RatFunc};

type Matrix = Vec<Vec<i32>>;

/// Linear action of a dihedral group on an exponent lattice, `w·t^v = t^{M_w v}`.
///
/// The first two coordinates carry the rank-2 action; any further
/// coordinates (central parameters) are fixed.
#[derive(Clone, Debug)]
pub struct MonomialAction {
    datum: DihedralDatum,
    dim: usize,
    /// Matrix for every group element, indexed by `GroupElement::index`.
    mats: Vec<Matrix>,
}

impl MonomialAction {
    /// Builds the action from the two simple reflection matrices on the first
    /// two coordinates and checks the Coxeter relations.
    pub fn new(datum: DihedralDatum, m1: [[i32; 2]; 2], m2: [[i32; 2]; 2], dim: usize) -> Self {
        assert!(dim >= 2);
        let embed = |m: [[i32; 2]; 2]| -> Matrix {
            let mut out = identity(dim);
            for r in 0..2 {
                for c in 0..2 {
                    out[r][c] = m[r][c];
                }
            }
            out
        };
        let gens = [embed(m1), embed(m2)];
        let id = identity(dim);
        for g in &gens {
            assert_eq!(matmul(g, g), id, "simple reflection matrix is not an involution");
        }
        let rot = matmul(&gens[0], &gens[1]);
        let mut p = rot.clone();
        for _ in 1..datum.m() {
            assert_ne!(p, id, "M1 M2 has order smaller than m");
            p = matmul(&p, &rot);
        }
        assert_eq!(p, id, "M1 M2 does not have order m");
        let mats = datum
            .elements()
            .map(|w| {
                w.reduced_word().iter().fold(identity(dim), |acc, &i| matmul(&acc, &gens[i as usize - 1]))
            })
            .collect();
        MonomialAction { datum, dim, mats }
    }

    /// Action from a Cartan pair: column `j` of `M_i` is `e_j - a_ij e_i`,
    /// so `s_i(t_j) = t_i^{-a_ij} t_j`.
    pub fn from_cartan(datum: DihedralDatum, a12: i32, a21: i32, dim: usize) -> Self {
        let m1 = [[-1, -a12], [0, 1]];
        let m2 = [[1, 0], [-a21, -1]];
        MonomialAction::new(datum, m1, m2, dim)
    }

    pub fn datum(&self) -> DihedralDatum {
        self.datum
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, w: GroupElement) -> &Matrix {
        &self.mats[w.index()]
    }

    pub fn act_exponent(&self, w: GroupElement, v: &Exponent) -> Exponent {
        let m = self.matrix(w);
        Exponent((0..self.dim).map(|r| (0..self.dim).map(|c| m[r][c] * v.0[c]).sum()).collect())
    }

    pub fn act_poly(&self, w: GroupElement, f: &LaurentPoly) -> LaurentPoly {
        if w.is_identity() {
            return f.clone();
        }
        f.map_exponents(|e| self.act_exponent(w, e))
    }

    pub fn act(&self, w: GroupElement, f: &RatFunc) -> RatFunc {
        if w.is_identity() {
            return f.clone();
        }
        f.map_linear(|e| self.act_exponent(w, e))
    }
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|r| (0..n).map(|c| i32::from(r == c)).collect()).collect()
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n).map(|r| (0..n).map(|c| (0..n).map(|k| a[r][k] * b[k][c]).sum()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn action(a12: i32, a21: i32, m: u32) -> MonomialAction {
        MonomialAction::from_cartan(DihedralDatum::new(m).unwrap(), a12, a21, 2)
    }

    fn mono(e: &[i32]) -> LaurentPoly {
        LaurentPoly::monomial(BigInt::from(1), Exponent::from_slice(e))
    }

    #[test]
    fn builtin_cartan_data() {
        for (a12, a21, m) in [(0, 0, 2), (-1, -1, 3), (-2, -1, 4), (-3, -1, 6)] {
            let a = action(a12, a21, m);
            let d = a.datum();
            for w1 in d.elements() {
                for w2 in d.elements() {
                    let v = Exponent::from_slice(&[3, -2]);
                    assert_eq!(a.act_exponent(w1.mul(w2), &v), a.act_exponent(w1, &a.act_exponent(w2, &v)));
                }
            }
        }
    }

    #[test]
    fn simple_reflection_on_t2() {
        let b2 = action(-2, -1, 4);
        let s1 = b2.datum().simple(1);
        assert_eq!(b2.act_poly(s1, &mono(&[0, 1])), mono(&[2, 1]));
        let g2 = action(-3, -1, 6);
        let s1 = g2.datum().simple(1);
        assert_eq!(g2.act_poly(s1, &mono(&[0, 1])), mono(&[3, 1]));
        assert_eq!(g2.act_poly(s1, &mono(&[1, 0])), mono(&[-1, 0]));
    }

    #[test]
    fn s1_tau1_is_one_minus_tau1() {
        let b2 = action(-2, -1, 4);
        let s1 = b2.datum().simple(1);
        let tau1 = RatFunc::inv_one_minus(&Exponent::from_slice(&[1, 0]));
        let lhs = b2.act(s1, &tau1).add(&tau1);
        assert!(lhs.sub(&RatFunc::one(2)).is_zero());
    }

    #[test]
    #[should_panic]
    fn rejects_wrong_order() {
        action(-2, -1, 3);
    }
}
