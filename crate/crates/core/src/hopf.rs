//! The tensor coalgebra with the shuffle product, and divided power algebras.
//!
//! Elements are formal sums over the two-element field stored as sets of
//! basis keys: inserting a key that is already present removes it. Keys are
//! index words for `T^c(V)` and exponent vectors for `Γ(W)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVec, Subspace};
use crate::quadratic::{Limits, QuadraticPresentation};

pub type Word = Vec<usize>;

fn toggle<T: Ord>(set: &mut BTreeSet<T>, key: T) {
    if !set.remove(&key) {
        set.insert(key);
    }
}

fn check_letters(dim: usize, word: &[usize]) -> Result<()> {
    match word.iter().find(|&&i| i >= dim) {
        Some(&index) => Err(Error::IndexOutOfRange { index, bound: dim }),
        None => Ok(()),
    }
}

/// An element of `T^c(V)`: a sum of index words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorWordElement {
    dim_v: usize,
    terms: BTreeSet<Word>,
}

impl TensorWordElement {
    pub fn zero(dim_v: usize) -> Self {
        TensorWordElement {
            dim_v,
            terms: BTreeSet::new(),
        }
    }

    /// The unit: the empty word.
    pub fn one(dim_v: usize) -> Self {
        let mut e = Self::zero(dim_v);
        e.terms.insert(Vec::new());
        e
    }

    pub fn from_word(dim_v: usize, word: &[usize]) -> Result<Self> {
        Self::from_words(dim_v, [word.to_vec()])
    }

    pub fn from_words<I: IntoIterator<Item = Word>>(dim_v: usize, words: I) -> Result<Self> {
        let mut e = Self::zero(dim_v);
        for w in words {
            check_letters(dim_v, &w)?;
            toggle(&mut e.terms, w);
        }
        Ok(e)
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn terms(&self) -> &BTreeSet<Word> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let terms = self.terms.symmetric_difference(&other.terms).cloned().collect();
        TensorWordElement {
            dim_v: self.dim_v,
            terms,
        }
    }

    /// Bilinear extension of the shuffle product.
    pub fn shuffle(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim_v);
        for u in &self.terms {
            for v in &other.terms {
                shuffle_into(u, v, &mut out.terms);
            }
        }
        out
    }

    /// Deconcatenation coproduct.
    pub fn coproduct(&self) -> TensorPair {
        let mut out = TensorPair::default();
        for w in &self.terms {
            for split in deconcatenate(w) {
                toggle(&mut out.terms, split);
            }
        }
        out
    }

    /// Coefficient of the empty word.
    pub fn counit(&self) -> bool {
        self.terms.contains(&Vec::new())
    }
}

/// An element of `T^c(V) ⊗ T^c(V)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TensorPair {
    pub terms: BTreeSet<(Word, Word)>,
}

impl TensorPair {
    /// `(a ⊗ b)·(c ⊗ d) = (a ⧢ c) ⊗ (b ⧢ d)`, extended bilinearly.
    pub fn shuffle(&self, other: &TensorPair) -> TensorPair {
        let mut out = TensorPair::default();
        let mut left = BTreeSet::new();
        let mut right = BTreeSet::new();
        for (a, b) in &self.terms {
            for (c, d) in &other.terms {
                left.clear();
                right.clear();
                shuffle_into(a, c, &mut left);
                shuffle_into(b, d, &mut right);
                for l in &left {
                    for r in &right {
                        toggle(&mut out.terms, (l.clone(), r.clone()));
                    }
                }
            }
        }
        out
    }

    /// `(ε ⊗ id)`: keep terms whose left factor is empty.
    pub fn counit_left(&self) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for (a, b) in &self.terms {
            if a.is_empty() {
                toggle(&mut out, b.clone());
            }
        }
        out
    }

    /// `(id ⊗ ε)`: keep terms whose right factor is empty.
    pub fn counit_right(&self) -> BTreeSet<Word> {
        let mut out = BTreeSet::new();
        for (a, b) in &self.terms {
            if b.is_empty() {
                toggle(&mut out, a.clone());
            }
        }
        out
    }
}

/// Toggles every `(|u|, |v|)`-shuffle of `u` and `v` into `out`.
fn shuffle_into(u: &[usize], v: &[usize], out: &mut BTreeSet<Word>) {
    let mut buf = Vec::with_capacity(u.len() + v.len());
    shuffle_rec(u, v, &mut buf, out);
}

fn shuffle_rec(u: &[usize], v: &[usize], buf: &mut Word, out: &mut BTreeSet<Word>) {
    if u.is_empty() || v.is_empty() {
        let mut w = buf.clone();
        w.extend_from_slice(u);
        w.extend_from_slice(v);
        toggle(out, w);
        return;
    }
    buf.push(u[0]);
    shuffle_rec(&u[1..], v, buf, out);
    buf.pop();
    buf.push(v[0]);
    shuffle_rec(u, &v[1..], buf, out);
    buf.pop();
}

/// The shuffle product of two words, reduced mod 2.
pub fn shuffle(u: &[usize], v: &[usize], dim_v: usize) -> Result<TensorWordElement> {
    check_letters(dim_v, u)?;
    check_letters(dim_v, v)?;
    let mut out = TensorWordElement::zero(dim_v);
    shuffle_into(u, v, &mut out.terms);
    Ok(out)
}

/// All splits `w = w' · w''`, including the two trivial ones.
pub fn deconcatenate(w: &[usize]) -> Vec<(Word, Word)> {
    (0..=w.len()).map(|k| (w[..k].to_vec(), w[k..].to_vec())).collect()
}

/// Every word of length `len` over `dim` letters, in lexicographic order.
pub fn all_words(dim: usize, len: usize) -> Vec<Word> {
    let count = dim.pow(len as u32);
    (0..count)
        .map(|mut index| {
            let mut w = vec![0; len];
            for slot in w.iter_mut().rev() {
                *slot = index % dim;
                index /= dim;
            }
            w
        })
        .collect()
}

/// Outcome of the exhaustive shuffle-bialgebra sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleAxiomReport {
    pub dim_v: usize,
    pub max_total_length: usize,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub commutativity_failures: Vec<(Word, Word)>,
    pub associativity_failures: Vec<(Word, Word, Word)>,
    pub unit_failures: Vec<Word>,
    pub bialgebra_failures: Vec<(Word, Word)>,
    pub counit_failures: Vec<Word>,
}

impl ShuffleAxiomReport {
    pub fn passed(&self) -> bool {
        self.commutativity_failures.is_empty()
            && self.associativity_failures.is_empty()
            && self.unit_failures.is_empty()
            && self.bialgebra_failures.is_empty()
            && self.counit_failures.is_empty()
    }
}

/// Checks commutativity, associativity and unitality of the shuffle product,
/// the counit axioms, and `Δ(u ⧢ v) = Δ(u) ⧢ Δ(v)`, on every word (pair,
/// triple) of total length at most `max_total_length`.
pub fn verify_shuffle_axioms(dim_v: usize, max_total_length: usize) -> ShuffleAxiomReport {
    let words: Vec<Word> = (0..=max_total_length).flat_map(|n| all_words(dim_v, n)).collect();
    let element = |w: &Word| TensorWordElement::from_word(dim_v, w).expect("letters in range");
    let one = TensorWordElement::one(dim_v);
    let mut report = ShuffleAxiomReport {
        dim_v,
        max_total_length,
        pairs_checked: 0,
        triples_checked: 0,
        commutativity_failures: Vec::new(),
        associativity_failures: Vec::new(),
        unit_failures: Vec::new(),
        bialgebra_failures: Vec::new(),
        counit_failures: Vec::new(),
    };

    for w in &words {
        let e = element(w);
        if e.shuffle(&one) != e || one.shuffle(&e) != e {
            report.unit_failures.push(w.clone());
        }
        let delta = e.coproduct();
        if delta.counit_left() != e.terms || delta.counit_right() != e.terms {
            report.counit_failures.push(w.clone());
        }
    }

    for u in &words {
        for v in words.iter().filter(|v| u.len() + v.len() <= max_total_length) {
            report.pairs_checked += 1;
            let (eu, ev) = (element(u), element(v));
            let uv = eu.shuffle(&ev);
            if uv != ev.shuffle(&eu) {
                report.commutativity_failures.push((u.clone(), v.clone()));
            }
            if uv.coproduct() != eu.coproduct().shuffle(&ev.coproduct()) {
                report.bialgebra_failures.push((u.clone(), v.clone()));
            }
            for w in words.iter().filter(|w| u.len() + v.len() + w.len() <= max_total_length) {
                report.triples_checked += 1;
                let ew = element(w);
                if uv.shuffle(&ew) != eu.shuffle(&ev.shuffle(&ew)) {
                    report.associativity_failures.push((u.clone(), v.clone(), w.clone()));
                }
            }
        }
    }
    report
}

/// An element of the divided power algebra `Γ(W)`: a sum of monomials
/// `γ_{a_1}(w_1)···γ_{a_k}(w_k)`, each stored as its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DividedPowerElement {
    dim_w: usize,
    terms: BTreeSet<Vec<usize>>,
}

impl DividedPowerElement {
    pub fn zero(dim_w: usize) -> Self {
        DividedPowerElement {
            dim_w,
            terms: BTreeSet::new(),
        }
    }

    pub fn monomial(dim_w: usize, exponents: &[usize]) -> Result<Self> {
        Self::from_monomials(dim_w, [exponents.to_vec()])
    }

    pub fn from_monomials<I: IntoIterator<Item = Vec<usize>>>(dim_w: usize, monomials: I) -> Result<Self> {
        let mut e = Self::zero(dim_w);
        for m in monomials {
            if m.len() != dim_w {
                return Err(Error::DimensionMismatch {
                    expected: dim_w,
                    found: m.len(),
                });
            }
            toggle(&mut e.terms, m);
        }
        Ok(e)
    }

    pub fn dim_w(&self) -> usize {
        self.dim_w
    }

    pub fn terms(&self) -> &BTreeSet<Vec<usize>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.dim_w != other.dim_w {
            return Err(Error::DimensionMismatch {
                expected: self.dim_w,
                found: other.dim_w,
            });
        }
        let mut out = Self::zero(self.dim_w);
        for a in &self.terms {
            for b in &other.terms {
                if let Some(c) = divided_power_monomial_product(a, b) {
                    toggle(&mut out.terms, c);
                }
            }
        }
        Ok(out)
    }
}

/// `γ_a · γ_b = binom(a+b, a) γ_{a+b}` coordinatewise. By Lucas, the binomial
/// is odd exactly when `a` and `b` share no binary digit.
pub fn divided_power_monomial_product(a: &[usize], b: &[usize]) -> Option<Vec<usize>> {
    if a.iter().zip(b).any(|(&x, &y)| x & y != 0) {
        return None;
    }
    Some(a.iter().zip(b).map(|(&x, &y)| x + y).collect())
}

pub fn divided_power_multiply(a: &DividedPowerElement, b: &DividedPowerElement) -> Result<DividedPowerElement> {
    a.multiply(b)
}

/// `Δγ_a = Σ_{b ≤ a} γ_b ⊗ γ_{a-b}`, coordinatewise.
pub fn divided_power_coproduct(exponents: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    let mut b = vec![0; exponents.len()];
    loop {
        out.push((b.clone(), exponents.iter().zip(&b).map(|(a, b)| a - b).collect()));
        // odometer over 0..=a_k
        let mut k = exponents.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if b[k] < exponents[k] {
                b[k] += 1;
                break;
            }
            b[k] = 0;
        }
    }
}

/// Exponent vectors of total degree `n`, in lexicographic order.
pub fn divided_power_basis(dim_w: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(dim: usize, remaining: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() + 1 == dim {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=remaining {
            prefix.push(k);
            rec(dim, remaining - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if dim_w == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(dim_w, n, &mut Vec::new(), &mut out);
    out
}

/// The graded connected coalgebras the library knows about.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coalgebra {
    /// `T^c(V)` with deconcatenation; keys are index words.
    Tensor { dim: usize },
    /// `Γ(W)`; keys are exponent vectors of length `dim`.
    DividedPower { dim: usize },
    /// `C(V, R) ⊆ T^c(V)`; keys are index words, elements must lie in the
    /// degreewise intersection.
    Quadratic(QuadraticPresentation),
}

impl Coalgebra {
    /// Dimension of `V` (or `W`).
    pub fn dim(&self) -> usize {
        match self {
            Coalgebra::Tensor { dim } | Coalgebra::DividedPower { dim } => *dim,
            Coalgebra::Quadratic(q) => q.dim_v(),
        }
    }

    pub fn unit_key(&self) -> Vec<usize> {
        match self {
            Coalgebra::DividedPower { dim } => vec![0; *dim],
            _ => Vec::new(),
        }
    }

    pub fn key_degree(&self, key: &[usize]) -> usize {
        match self {
            Coalgebra::DividedPower { .. } => key.iter().sum(),
            _ => key.len(),
        }
    }

    pub fn validate_key(&self, key: &[usize]) -> Result<()> {
        match self {
            Coalgebra::DividedPower { dim } => {
                if key.len() != *dim {
                    return Err(Error::DimensionMismatch {
                        expected: *dim,
                        found: key.len(),
                    });
                }
                Ok(())
            }
            _ => check_letters(self.dim(), key),
        }
    }

    /// Full coproduct of a basis key, trivial splits included.
    pub fn coproduct_key(&self, key: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
        match self {
            Coalgebra::DividedPower { .. } => divided_power_coproduct(key),
            _ => deconcatenate(key),
        }
    }

    /// Product of two basis keys in the Hopf structure: the shuffle product on
    /// words, the divided power product on exponent vectors.
    pub fn multiply_keys(&self, a: &[usize], b: &[usize]) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        match self {
            Coalgebra::DividedPower { .. } => {
                if let Some(c) = divided_power_monomial_product(a, b) {
                    out.insert(c);
                }
            }
            _ => shuffle_into(a, b, &mut out),
        }
        out
    }

    /// Whether a homogeneous degree-`degree` sum of keys lies in the
    /// coalgebra. Only the quadratic case can fail.
    pub fn contains(&self, terms: &BTreeSet<Vec<usize>>, degree: usize, limits: &Limits) -> Result<bool> {
        let Coalgebra::Quadratic(q) = self else {
            return Ok(true);
        };
        let d = q.dim_v();
        let component = q.coalgebra_component(degree, limits)?;
        let v = BitVec::from_indices(
            component.ambient_dim(),
            terms.iter().map(|w| w.iter().fold(0, |acc, &i| acc * d + i)),
        );
        Ok(component.contains(&v))
    }
}

/// Primitive elements in degree `n`: the part of the degree-`n` component
/// killed by the reduced coproduct `Δ̄(c) = Δ(c) - 1⊗c - c⊗1`.
///
/// For word-based coalgebras the ambient space is `V^{⊗n}` in lexicographic
/// word order; for `Γ(W)` it is spanned by [`divided_power_basis`]. Degree
/// zero has no primitives.
pub fn primitives(coalgebra: &Coalgebra, n: usize, limits: &Limits) -> Result<Subspace> {
    match coalgebra {
        Coalgebra::Tensor { dim } => {
            let ambient = limits.ambient(*dim, n)?;
            word_primitives(&Subspace::full(ambient), n)
        }
        Coalgebra::Quadratic(q) => {
            let component = q.coalgebra_component(n, limits)?;
            word_primitives(&component, n)
        }
        Coalgebra::DividedPower { dim } => {
            if n > limits.max_degree {
                return Err(Error::DegreeCap {
                    degree: n,
                    cap: limits.max_degree,
                });
            }
            let basis = divided_power_basis(*dim, n);
            if n == 0 {
                return Ok(Subspace::zero(basis.len()));
            }
            let mut target: BTreeMap<(Vec<usize>, Vec<usize>), usize> = BTreeMap::new();
            let images: Vec<Vec<usize>> = basis
                .iter()
                .map(|a| {
                    divided_power_coproduct(a)
                        .into_iter()
                        .filter(|(b, c)| b.iter().any(|&x| x > 0) && c.iter().any(|&x| x > 0))
                        .map(|pair| {
                            let next = target.len();
                            *target.entry(pair).or_insert(next)
                        })
                        .collect()
                })
                .collect();
            let rows: Vec<BitVec> = images
                .into_iter()
                .map(|idx| BitVec::from_indices(target.len(), idx))
                .collect();
            Ok(BitMatrix::from_rows(target.len(), &rows).left_kernel())
        }
    }
}

/// Primitives of a degree-`n` subspace of `T^c(V)`. Splitting a vector at
/// position `p` leaves its coordinates unchanged, so `Δ̄(v)` is `n - 1`
/// stacked copies of `v`.
fn word_primitives(component: &Subspace, n: usize) -> Result<Subspace> {
    let ambient = component.ambient_dim();
    if n == 0 {
        return Ok(Subspace::zero(ambient));
    }
    let splits = n - 1;
    let basis: Vec<BitVec> = component.basis_vectors().collect();
    let rows: Vec<BitVec> = basis
        .iter()
        .map(|b| {
            BitVec::from_indices(
                splits * ambient,
                (0..splits).flat_map(|p| b.ones().map(move |c| p * ambient + c)),
            )
        })
        .collect();
    let combos = BitMatrix::from_rows(splits * ambient, &rows).left_kernel();
    Ok(Subspace::span(
        ambient,
        combos.basis_vectors().map(|c| {
            let mut v = BitVec::zeros(ambient);
            for k in c.ones() {
                v.xor_assign(&basis[k]);
            }
            v
        }),
    ))
}

/// Comparison of `Γ` on a line with `F_2[y_1, y_2, y_4, …]/(y_{2^k}^2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GmgaReport {
    pub max_degree: usize,
    /// `dim Γ_m` for `m ≤ max_degree`.
    pub divided_power_dims: Vec<usize>,
    /// Number of square-free monomials in the `y_{2^k}` of degree `m`.
    pub monomial_counts: Vec<usize>,
    pub dims_match: bool,
    pub products_checked: usize,
    pub table_match: bool,
    /// First `(a, b)` where `γ_a·γ_b` and the matching `y`-product disagree.
    pub first_mismatch: Option<(usize, usize)>,
}

impl GmgaReport {
    pub fn passed(&self) -> bool {
        self.dims_match && self.table_match
    }
}

/// The `y`-monomial matched with `γ_m`: one `y_{2^k}` per binary digit of `m`.
pub fn gamma_to_y_monomial(m: usize) -> BTreeSet<usize> {
    (0..usize::BITS as usize)
        .filter(|k| m >> k & 1 == 1)
        .map(|k| 1usize << k)
        .collect()
}

/// Product in `F_2[y_{2^k}]/(y_{2^k}^2)` of square-free monomials given as
/// sets of subscripts.
fn y_product(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> Option<BTreeSet<usize>> {
    if a.intersection(b).next().is_some() {
        return None;
    }
    Some(a.union(b).copied().collect())
}

/// Checks that `Γ(W)` with `dim W = 1` has the graded dimensions and the
/// multiplication table of `F_2[y_1, y_2, …, y_{2^k}, …]/(y_1^2, y_2^2, …)`
/// under `γ_m ↔ Π y_{2^k}` over the binary digits of `m`, for degrees up to
/// `max_degree`.
pub fn gmga_check(max_degree: usize) -> GmgaReport {
    let divided_power_dims: Vec<usize> = (0..=max_degree).map(|m| divided_power_basis(1, m).len()).collect();

    // Square-free monomials: subsets of {1, 2, 4, …} ≤ max_degree, by sum.
    let powers: Vec<usize> = (0..usize::BITS)
        .map(|k| 1usize << k)
        .take_while(|&p| p <= max_degree)
        .collect();
    let mut monomial_counts = vec![0; max_degree + 1];
    for subset in 0u64..1 << powers.len() {
        let sum: usize = (0..powers.len())
            .filter(|&k| subset >> k & 1 == 1)
            .map(|k| powers[k])
            .sum();
        if sum <= max_degree {
            monomial_counts[sum] += 1;
        }
    }
    let dims_match = divided_power_dims == monomial_counts;

    let mut products_checked = 0;
    let mut first_mismatch = None;
    for a in 0..=max_degree {
        for b in 0..=max_degree - a {
            products_checked += 1;
            let lhs = DividedPowerElement::monomial(1, &[a])
                .and_then(|x| x.multiply(&DividedPowerElement::monomial(1, &[b])?))
                .expect("dimension one");
            let lhs: BTreeSet<BTreeSet<usize>> = lhs.terms().iter().map(|m| gamma_to_y_monomial(m[0])).collect();
            let rhs: BTreeSet<BTreeSet<usize>> = y_product(&gamma_to_y_monomial(a), &gamma_to_y_monomial(b))
                .into_iter()
                .collect();
            if lhs != rhs && first_mismatch.is_none() {
                first_mismatch = Some((a, b));
            }
        }
    }
    GmgaReport {
        max_degree,
        divided_power_dims,
        monomial_counts,
        dims_match,
        products_checked,
        table_match: first_mismatch.is_none(),
        first_mismatch,
    }
}
