//! Mod-2 Milnor K-theory of fields given by explicit data.
//!
//! `K^M_*(F)/2` is the quotient of the tensor algebra on `F^*/F^{*2}` by the
//! Steinberg relations `{a} ⊗ {1 - a}`. For a finite field of odd order the
//! square classes form a line spanned by any non-square, and the relation
//! space is computed by enumerating the field.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::f2::{BitVec, Subspace};
use crate::homology::{koszul_certificate, KoszulVerdict};
use crate::quadratic::{GradedDims, Limits, QuadraticPresentation};

/// Largest field order that [`FiniteField::new`] accepts.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Where the square classes and Steinberg relations come from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// The field with `q` elements, `q` an odd prime power.
    FiniteField { q: u64 },
    /// A basis of square classes and the pairs `(i, j)` with
    /// `e_i ⊗ e_j` a Steinberg relation. Exactly the listed relations are
    /// imposed; graded commutativity is not added.
    Explicit {
        classes: Vec<String>,
        steinberg: Vec<(usize, usize)>,
    },
}

/// `F_q` as polynomials over `F_p` modulo a monic irreducible of degree `k`.
///
/// Elements are the integers `0..q`, read as base-`p` digit strings with the
/// constant coefficient first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    k: usize,
    /// Low coefficients of the modulus; the leading 1 is implicit.
    modulus: Vec<u64>,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower { q });
        }
        if q.is_multiple_of(2) {
            return Err(Error::EvenCharacteristic { q });
        }
        if q > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge {
                q,
                limit: MAX_FIELD_ORDER,
            });
        }
        let p = (3..=q)
            .step_by(2)
            .find(|&d| q.is_multiple_of(d))
            .expect("q divides itself");
        let mut rest = q;
        let mut k = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower { q });
        }
        let modulus = find_irreducible(p, k);
        Ok(FiniteField { p, k, modulus })
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn one(&self) -> u64 {
        1
    }

    fn digits(&self, mut x: u64) -> Vec<u64> {
        let mut out = vec![0; self.k];
        for d in out.iter_mut() {
            *d = x % self.p;
            x /= self.p;
        }
        out
    }

    fn encode(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (a, b) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = a.iter().zip(&b).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let a: Vec<u64> = self.digits(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.encode(&a)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let (a, b) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.k];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        reduce_mod(&mut prod, &self.modulus, self.p);
        self.encode(&prod[..self.k])
    }

    /// Whether `a` is a nonzero square.
    pub fn is_square(&self, a: u64) -> bool {
        self.squares()[a as usize]
    }

    /// Indicator of the nonzero squares, indexed by element.
    pub fn squares(&self) -> Vec<bool> {
        let mut out = vec![false; self.order() as usize];
        for x in 1..self.order() {
            out[self.mul(x, x) as usize] = true;
        }
        out
    }
}

/// Reduces `poly` (low coefficient first) modulo the monic polynomial
/// `x^k + Σ modulus[i] x^i` in place.
fn reduce_mod(poly: &mut [u64], modulus: &[u64], p: u64) {
    let k = modulus.len();
    for top in (k..poly.len()).rev() {
        let c = poly[top];
        if c == 0 {
            continue;
        }
        poly[top] = 0;
        for (i, m) in modulus.iter().enumerate() {
            poly[top - k + i] = (poly[top - k + i] + (p - m) * c) % p;
        }
    }
}

/// First monic irreducible of degree `k` over `F_p`, by trial division by all
/// monic polynomials of degree `1..=k/2`.
fn find_irreducible(p: u64, k: usize) -> Vec<u64> {
    let monic = |degree: usize, index: u64| -> Vec<u64> {
        let mut low = Vec::with_capacity(degree);
        let mut rest = index;
        for _ in 0..degree {
            low.push(rest % p);
            rest /= p;
        }
        low
    };
    let divides = |divisor: &[u64], f: &[u64]| -> bool {
        let mut full = f.to_vec();
        full.push(1);
        reduce_mod(&mut full, divisor, p);
        full[..divisor.len()].iter().all(|&c| c == 0)
    };
    (0..p.pow(k as u32))
        .map(|index| monic(k, index))
        .find(|f| (1..=k / 2).all(|d| (0..p.pow(d as u32)).all(|i| !divides(&monic(d, i), f))))
        .expect("irreducible polynomials exist in every degree")
}

/// The quadratic presentation of `K^M_*(F)/2`.
///
/// For `F_q` the single generator is the non-square class `u`, and the
/// relation `u ⊗ u` is present iff some `a` has both `a` and `1 - a`
/// non-square; symbols with a square entry are zero.
pub fn steinberg_subspace(f: &FieldSpec) -> Result<QuadraticPresentation> {
    match f {
        FieldSpec::FiniteField { q } => {
            let field = FiniteField::new(*q)?;
            let squares = field.squares();
            let non_square = |a: u64| a != 0 && !squares[a as usize];
            let hit = (2..field.order()).any(|a| non_square(a) && non_square(field.sub(field.one(), a)));
            let relations = if hit {
                Subspace::span(1, [BitVec::unit(1, 0)])
            } else {
                Subspace::zero(1)
            };
            QuadraticPresentation::new(vec![String::from("u")], relations)
        }
        FieldSpec::Explicit { classes, steinberg } => {
            let terms: Vec<Vec<(usize, usize)>> = steinberg.iter().map(|&pair| vec![pair]).collect();
            QuadraticPresentation::from_labelled_terms(classes.clone(), &terms)
        }
    }
}

/// `K^M_*(F)/2` up to `max_degree`, with a Koszulity certificate for its
/// presentation in the same range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilnorReport {
    pub dims: GradedDims,
    pub presentation: QuadraticPresentation,
    pub koszul: KoszulVerdict,
}

pub fn milnor_mod2(f: &FieldSpec, max_degree: usize, limits: &Limits) -> Result<MilnorReport> {
    let presentation = steinberg_subspace(f)?;
    let dims = presentation.algebra_dims(max_degree, limits)?;
    let koszul = koszul_certificate(&presentation, max_degree, limits)?;
    Ok(MilnorReport {
        dims,
        presentation,
        koszul,
    })
}

/// Quotient of a Milnor presentation by the ideal generated by a subspace of
/// degree-one classes (the annihilator data must be supplied).
pub fn isotropic_quotient(q: &QuadraticPresentation, annihilators: &Subspace) -> Result<QuadraticPresentation> {
    q.quotient_by_degree_one(annihilators)
}

/// Human-readable list of the relations `{a} ⊗ {1 - a}` of `F_q` with both
/// entries non-square.
pub fn nonzero_steinberg_symbols(q: u64) -> Result<Vec<String>> {
    let field = FiniteField::new(q)?;
    let squares = field.squares();
    let non_square = |a: u64| a != 0 && !squares[a as usize];
    Ok((2..field.order())
        .filter(|&a| non_square(a) && non_square(field.sub(1, a)))
        .map(|a| format!("{{{a}}}⊗{{{}}}", field.sub(1, a)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::BitMatrix;

    /// Degreewise ideal in `V^{⊗n}`, spanned by every `e_w ⊗ r ⊗ e_w'`.
    fn ideal_oracle_dims(dim: usize, relations: &[BitVec], max_n: usize) -> Vec<usize> {
        (0..=max_n)
            .map(|n| {
                let size = dim.pow(n as u32);
                if n < 2 {
                    return size;
                }
                let mut gens = Vec::new();
                for pos in 0..n - 1 {
                    let right = dim.pow((n - 2 - pos) as u32);
                    for left in 0..dim.pow(pos as u32) {
                        for tail in 0..right {
                            for r in relations {
                                gens.push(BitVec::from_indices(
                                    size,
                                    r.ones().map(|c| (left * dim * dim + c) * right + tail),
                                ));
                            }
                        }
                    }
                }
                size - BitMatrix::from_rows(size, &gens).rank()
            })
            .collect()
    }

    /// Legendre symbol by Euler's criterion, for prime `p`.
    fn is_square_mod(a: u64, p: u64) -> bool {
        let mut acc = 1;
        for _ in 0..(p - 1) / 2 {
            acc = acc * a % p;
        }
        acc == 1
    }

    #[test]
    fn field_orders() {
        assert_eq!(FiniteField::new(9).unwrap().characteristic(), 3);
        assert_eq!(FiniteField::new(27).unwrap().degree(), 3);
        assert_eq!(FiniteField::new(4), Err(Error::EvenCharacteristic { q: 4 }));
        assert_eq!(FiniteField::new(2), Err(Error::EvenCharacteristic { q: 2 }));
        assert_eq!(FiniteField::new(15), Err(Error::NotPrimePower { q: 15 }));
        assert_eq!(FiniteField::new(1), Err(Error::NotPrimePower { q: 1 }));
        assert!(matches!(
            FiniteField::new(1 << 21 | 1),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn field_axioms() {
        for q in [3, 5, 7, 9, 25, 27] {
            let f = FiniteField::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert!((1..q).any(|b| f.mul(a, b) == 1), "q={q} a={a} not invertible");
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in [0, 1, q - 1] {
                        let lhs = f.mul(a, f.add(b, c));
                        assert_eq!(lhs, f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            // half the nonzero elements are squares
            let count = f.squares().iter().filter(|&&s| s).count() as u64;
            assert_eq!(count, (q - 1) / 2);
        }
    }

    #[test]
    fn squares_agree_with_euler_criterion() {
        for p in [3, 5, 7, 11, 13] {
            let f = FiniteField::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.is_square(a), is_square_mod(a, p));
            }
        }
    }

    #[test]
    fn steinberg_examples() {
        let u_sq = QuadraticPresentation::new(vec!["u".into()], Subspace::full(1)).unwrap();
        for q in [3, 5, 7, 9] {
            assert_eq!(
                steinberg_subspace(&FieldSpec::FiniteField { q }).unwrap(),
                u_sq,
                "q={q}"
            );
        }
        assert_eq!(nonzero_steinberg_symbols(3).unwrap(), ["{2}⊗{2}"]);
        assert_eq!(nonzero_steinberg_symbols(5).unwrap(), ["{3}⊗{3}"]);
        assert!(nonzero_steinberg_symbols(7).unwrap().contains(&"{3}⊗{5}".into()));
        assert!(steinberg_subspace(&FieldSpec::FiniteField { q: 8 }).is_err());
    }

    #[test]
    fn milnor_dims_of_finite_fields() {
        let limits = Limits::default();
        for q in [3, 5, 7, 9] {
            let r = milnor_mod2(&FieldSpec::FiniteField { q }, 4, &limits).unwrap();
            assert_eq!(r.dims, [1, 1, 0, 0, 0]);
            assert!(r.koszul.is_positive());
        }
    }

    #[test]
    fn milnor_matches_ideal_oracle_for_prime_fields() {
        let limits = Limits::default();
        for p in [3u64, 5] {
            // relation vectors straight from the field: class(a)·class(1-a)
            let class = |a: u64| !is_square_mod(a, p);
            let relations: Vec<BitVec> = (2..p)
                .map(|a| BitVec::from_indices(1, (class(a) && class((p + 1 - a) % p)).then_some(0)))
                .collect();
            let ours = milnor_mod2(&FieldSpec::FiniteField { q: p }, 5, &limits).unwrap();
            assert_eq!(ours.dims.as_slice(), ideal_oracle_dims(1, &relations, 5));
        }
    }

    #[test]
    fn explicit_specs() {
        let limits = Limits::default();
        let free = FieldSpec::Explicit {
            classes: vec!["a".into()],
            steinberg: vec![],
        };
        assert_eq!(milnor_mod2(&free, 4, &limits).unwrap().dims, [1, 1, 1, 1, 1]);

        let two = FieldSpec::Explicit {
            classes: vec!["a".into(), "b".into()],
            steinberg: vec![(0, 1), (1, 1)],
        };
        let r = milnor_mod2(&two, 4, &limits).unwrap();
        let rels = [BitVec::unit(4, 1), BitVec::unit(4, 3)];
        assert_eq!(r.dims.as_slice(), ideal_oracle_dims(2, &rels, 4));

        let bad = FieldSpec::Explicit {
            classes: vec!["a".into()],
            steinberg: vec![(0, 1)],
        };
        assert_eq!(
            steinberg_subspace(&bad),
            Err(Error::IndexOutOfRange { index: 1, bound: 1 })
        );
    }

    #[test]
    fn isotropic_quotient_of_everything_is_the_field() {
        let limits = Limits::default();
        for q in [3, 5, 7, 9] {
            let pres = steinberg_subspace(&FieldSpec::FiniteField { q }).unwrap();
            let iso = isotropic_quotient(&pres, &Subspace::full(1)).unwrap();
            assert_eq!(iso.algebra_dims(4, &limits).unwrap(), [1, 0, 0, 0, 0]);
        }
    }
}
