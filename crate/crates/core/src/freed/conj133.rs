use super::FreeDElement;
use crate::coxeter::DihedralDatum;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conj133Kind {
    /// Quadratic-linear relation for divisor `n`, offset `r`, gap `p`.
    QuadraticLinear { n: u8, r: u8, p: u8 },
    /// Yang-Baxter type relation for divisor `n`, offset `r`, split `t`.
    YangBaxter { n: u8, r: u8, t: u8 },
    /// `D̂_1 D̂_m D̂_1 ⋯ = D̂_m D̂_1 D̂_m ⋯` with `m` factors on each side.
    Braid,
}

/// One relation of the conjectured presentation, as `lhs - rhs`.
#[derive(Clone, Debug)]
pub struct Conj133Element {
    pub kind: Conj133Kind,
    /// Whether the roles of `s_1` and `s_2` are swapped, i.e. `D_k` is read
    /// as `D̂_{m+1-k}`.
    pub swapped: bool,
    pub element: FreeDElement,
}

impl Conj133Element {
    pub fn label(&self) -> String {
        let base = match self.kind {
            Conj133Kind::QuadraticLinear { n, r, p } => format!("quadratic-linear n={n} r={r} p={p}"),
            Conj133Kind::YangBaxter { n, r, t } => format!("yang-baxter n={n} r={r} t={t}"),
            Conj133Kind::Braid => "braid".into(),
        };
        if self.swapped {
            format!("{base} (swapped)")
        } else {
            base
        }
    }

    /// Yang-Baxter relations at `t = 0` or `t = m/n` contain an empty product,
    /// taken to be 1.
    pub fn uses_empty_product(&self, m: u8) -> bool {
        matches!(self.kind, Conj133Kind::YangBaxter { n, t, .. } if t == 0 || t == m / n)
    }
}

fn one_minus(k: u8) -> FreeDElement {
    FreeDElement::one().sub(&FreeDElement::letter(k))
}

fn product(factors: impl Iterator<Item = FreeDElement>) -> FreeDElement {
    factors.fold(FreeDElement::one(), |acc, f| acc.mul(&f))
}

/// The quadratic-linear, Yang-Baxter and braid relations among the `D̂_k`,
/// for both orderings of the simple reflections: `D_k = D_{s_1 s_2 ⋯}` and
/// `D_k = D_{s_2 s_1 ⋯}` (`2k - 1` letters). Relations that vanish
/// identically, and repeats up to sign, are omitted.
pub fn conj133_family(d: DihedralDatum) -> Vec<Conj133Element> {
    let m = d.m();
    let mut out: Vec<Conj133Element> = Vec::new();
    for e in ordered_family(m) {
        let mirror = Conj133Element {
            kind: e.kind.clone(),
            swapped: true,
            element: e.element.map_letters(|k| m + 1 - k),
        };
        for x in [e, mirror] {
            let dup = out.iter().any(|f| f.element == x.element || f.element == x.element.neg());
            if !dup {
                out.push(x);
            }
        }
    }
    out
}

fn ordered_family(m: u8) -> Vec<Conj133Element> {
    let mut out = Vec::new();
    for n in (1..=m).filter(|n| m.is_multiple_of(*n)) {
        let q = m / n;
        for r in 1..=n {
            let idx = |a: u8| r + a * n;
            // 1 ≤ p < q/2
            for p in (1..q).filter(|&p| 2 * p < q) {
                let mut x = FreeDElement::zero();
                for a in 0..q {
                    for b in a + 1..q {
                        let w = FreeDElement::letter(idx(a)).mul(&FreeDElement::letter(idx(b)));
                        if b - a == q - p {
                            x = x.add(&w);
                        }
                        if b - a == p {
                            let w2 = FreeDElement::letter(idx(b)).mul(&FreeDElement::letter(idx(a)));
                            x = x.sub(&w2);
                        }
                    }
                }
                for c in p..q - p {
                    x = x.add(&FreeDElement::letter(idx(c)));
                }
                out.push(Conj133Element { kind: Conj133Kind::QuadraticLinear { n, r, p }, swapped: false, element: x });
            }
            for t in 0..=q {
                let lhs = product((t..q).map(|a| one_minus(idx(a))).chain((0..t).map(|b| FreeDElement::letter(idx(b)))));
                let rhs =
                    product((0..t).rev().map(|b| FreeDElement::letter(idx(b))).chain((t..q).rev().map(|a| one_minus(idx(a)))));
                let x = lhs.sub(&rhs);
                if !x.is_zero() {
                    out.push(Conj133Element { kind: Conj133Kind::YangBaxter { n, r, t }, swapped: false, element: x });
                }
            }
        }
    }
    let alt = |first: u8, second: u8| product((0..m).map(|i| FreeDElement::letter(if i % 2 == 0 { first } else { second })));
    let braid = alt(1, m).sub(&alt(m, 1));
    out.push(Conj133Element { kind: Conj133Kind::Braid, swapped: false, element: braid });
    out
}
