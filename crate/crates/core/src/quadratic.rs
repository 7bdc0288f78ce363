//! Quadratic data `(V, R)` with `R ⊆ V ⊗ V`.
//!
//! Tensor words of length `n` over a `d`-dimensional `V` are indexed
//! lexicographically: the word `(i_1, …, i_n)` sits at
//! `i_1·d^(n-1) + … + i_n`. Every embedding `V^{⊗i} ⊗ R ⊗ V^{⊗j}` is
//! computed with that index arithmetic.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::f2::{BitVec, Echelon, Subspace};

/// Guards against tensor spaces that do not fit a dense representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Highest degree any degreewise computation may reach.
    pub max_degree: usize,
    /// Largest admissible `dim V^n`.
    pub max_ambient: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 6,
            max_ambient: 1 << 20,
        }
    }
}

impl Limits {
    pub fn with_max_degree(max_degree: usize) -> Self {
        Limits {
            max_degree,
            ..Limits::default()
        }
    }

    /// `dim V^n`, or the error explaining why degree `n` is refused.
    pub fn ambient(&self, dim_v: usize, n: usize) -> Result<usize> {
        if n > self.max_degree {
            return Err(Error::DegreeCap {
                degree: n,
                cap: self.max_degree,
            });
        }
        let too_large = Error::AmbientTooLarge {
            degree: n,
            ambient: usize::MAX,
            limit: self.max_ambient,
        };
        let ambient = u32::try_from(n)
            .ok()
            .and_then(|n| dim_v.checked_pow(n))
            .ok_or(too_large)?;
        if ambient > self.max_ambient {
            return Err(Error::AmbientTooLarge {
                degree: n,
                ambient,
                limit: self.max_ambient,
            });
        }
        Ok(ambient)
    }
}

/// Graded dimensions in degrees `0..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedDims(pub Vec<usize>);

impl GradedDims {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, n: usize) -> Option<usize> {
        self.0.get(n).copied()
    }

    pub fn max_degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl PartialEq<[usize]> for GradedDims {
    fn eq(&self, other: &[usize]) -> bool {
        self.0 == other
    }
}

impl<const N: usize> PartialEq<[usize; N]> for GradedDims {
    fn eq(&self, other: &[usize; N]) -> bool {
        self.0 == other
    }
}

/// A quadratic datum: generators of `V` and a relation space `R ⊆ V ⊗ V`.
///
/// Relations are canonicalized on construction, so two presentations with the
/// same generator labels and the same relation space compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticPresentation {
    generators: Vec<String>,
    relations: Subspace,
}

impl QuadraticPresentation {
    pub fn new(generators: Vec<String>, relations: Subspace) -> Result<Self> {
        let d = generators.len();
        if relations.ambient_dim() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: relations.ambient_dim(),
            });
        }
        Ok(QuadraticPresentation { generators, relations })
    }

    /// Generators labelled `x1, …, xd`.
    pub fn with_default_names(dim_v: usize, relations: Subspace) -> Result<Self> {
        Self::new(default_names(dim_v), relations)
    }

    /// Relations given as sums of words `x_i x_j`, each relation a list of
    /// index pairs added over the two-element field.
    pub fn from_relation_terms(dim_v: usize, relations: &[Vec<(usize, usize)>]) -> Result<Self> {
        Self::from_labelled_terms(default_names(dim_v), relations)
    }

    pub fn from_labelled_terms(generators: Vec<String>, relations: &[Vec<(usize, usize)>]) -> Result<Self> {
        let d = generators.len();
        let mut vectors = Vec::with_capacity(relations.len());
        for rel in relations {
            let mut v = BitVec::zeros(d * d);
            for &(i, j) in rel {
                for index in [i, j] {
                    if index >= d {
                        return Err(Error::IndexOutOfRange { index, bound: d });
                    }
                }
                v.flip(i * d + j);
            }
            vectors.push(v);
        }
        Self::new(generators, Subspace::span(d * d, vectors))
    }

    /// The free (tensor) algebra: no relations.
    pub fn free(d: usize) -> Self {
        Self::with_default_names(d, Subspace::zero(d * d)).expect("ambient matches")
    }

    /// `F_2[x_1..x_d]/(x_i x_j)`: every quadratic word is a relation.
    pub fn square_zero(d: usize) -> Self {
        Self::with_default_names(d, Subspace::full(d * d)).expect("ambient matches")
    }

    /// The exterior algebra over the two-element field: `x_i x_i` and
    /// `x_i x_j + x_j x_i`.
    pub fn exterior(n: usize) -> Self {
        let mut rels = Vec::new();
        for i in 0..n {
            rels.push(vec![(i, i)]);
            for j in i + 1..n {
                rels.push(vec![(i, j), (j, i)]);
            }
        }
        Self::from_relation_terms(n, &rels).expect("indices in range")
    }

    /// The commutative polynomial ring: `x_i x_j + x_j x_i` for `i < j`.
    pub fn polynomial(n: usize) -> Self {
        let mut rels = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                rels.push(vec![(i, j), (j, i)]);
            }
        }
        Self::from_relation_terms(n, &rels).expect("indices in range")
    }

    #[inline]
    pub fn dim_v(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// Each canonical relation as its list of words `(i, j)`.
    pub fn relation_terms(&self) -> Vec<Vec<(usize, usize)>> {
        let d = self.dim_v();
        self.relations
            .basis_vectors()
            .map(|v| v.ones().map(|c| (c / d, c % d)).collect())
            .collect()
    }

    /// Degree-`n` part of the two-sided ideal `(R)`:
    /// `Σ_{i+j=n-2} V^{⊗i} ⊗ R ⊗ V^{⊗j}` inside `V^{⊗n}`.
    pub fn ideal_component(&self, n: usize, limits: &Limits) -> Result<Subspace> {
        let mut tower = IdealTower::new(self, limits);
        for _ in 0..n {
            tower.advance()?;
        }
        Ok(tower.current)
    }

    /// Graded dimensions of `A(V, R) = T(V)/(R)` in degrees `0..=max_n`.
    pub fn algebra_dims(&self, max_n: usize, limits: &Limits) -> Result<GradedDims> {
        let mut tower = IdealTower::new(self, limits);
        let mut dims = vec![1];
        for _ in 0..max_n {
            tower.advance()?;
            dims.push(tower.current.ambient_dim() - tower.current.dim());
        }
        Ok(GradedDims(dims))
    }

    /// Degree-`n` component `⋂_{i+j=n-2} V^{⊗i} ⊗ R ⊗ V^{⊗j}` of the
    /// quadratic coalgebra `C(V, R) ⊆ T^c(V)`.
    pub fn coalgebra_component(&self, n: usize, limits: &Limits) -> Result<Subspace> {
        let mut tower = CoalgebraTower::new(self, limits);
        for _ in 0..n {
            tower.advance()?;
        }
        Ok(tower.current)
    }

    /// Graded dimensions of `C(V, R)` in degrees `0..=max_n`.
    pub fn coalgebra_dims(&self, max_n: usize, limits: &Limits) -> Result<GradedDims> {
        let mut tower = CoalgebraTower::new(self, limits);
        let mut dims = vec![1];
        for _ in 0..max_n {
            tower.advance()?;
            dims.push(tower.current.dim());
        }
        Ok(GradedDims(dims))
    }

    /// The quadratic dual `(V*, R^⊥)` under the coordinate pairing.
    ///
    /// Dual generators carry a trailing `*`, which is removed again by a
    /// second dualization, so this is an involution.
    pub fn dual(&self) -> QuadraticPresentation {
        let generators = self
            .generators
            .iter()
            .map(|g| match g.strip_suffix('*') {
                Some(base) => String::from(base),
                None => format!("{g}*"),
            })
            .collect();
        QuadraticPresentation {
            generators,
            relations: self.relations.perp(),
        }
    }

    /// The presentation of `A(V, R)/(U)` for a subspace `U ⊆ V`: generators
    /// `V/U` and relations the image of `R` in `(V/U) ⊗ (V/U)`.
    ///
    /// `V/U` is given the basis of non-pivot coordinates of `U`, keeping
    /// their labels.
    pub fn quotient_by_degree_one(&self, u: &Subspace) -> Result<QuadraticPresentation> {
        let d = self.dim_v();
        if u.ambient_dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: u.ambient_dim(),
            });
        }
        let kept = u.non_pivots();
        let e = kept.len();
        let mut position = vec![usize::MAX; d];
        for (k, &c) in kept.iter().enumerate() {
            position[c] = k;
        }
        // Image of each generator in V/U.
        let images: Vec<BitVec> = (0..d)
            .map(|c| {
                let r = u.reduce(&BitVec::unit(d, c));
                BitVec::from_indices(e, r.ones().map(|i| position[i]))
            })
            .collect();
        let relations = self.relations.basis_vectors().map(|rel| {
            let mut out = BitVec::zeros(e * e);
            for word in rel.ones() {
                out.xor_assign(&images[word / d].tensor(&images[word % d]));
            }
            out
        });
        let relations = Subspace::span(e * e, relations);
        let generators = kept.iter().map(|&c| self.generators[c].clone()).collect();
        Self::new(generators, relations)
    }
}

fn default_names(d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("x{i}")).collect()
}

/// Walks `I_n = I_{n-1} ⊗ V + V^{⊗(n-2)} ⊗ R` upwards from `I_0 = 0`.
struct IdealTower<'a> {
    q: &'a QuadraticPresentation,
    limits: &'a Limits,
    degree: usize,
    current: Subspace,
}

impl<'a> IdealTower<'a> {
    fn new(q: &'a QuadraticPresentation, limits: &'a Limits) -> Self {
        IdealTower {
            q,
            limits,
            degree: 0,
            current: Subspace::zero(1),
        }
    }

    fn advance(&mut self) -> Result<()> {
        let d = self.q.dim_v();
        let n = self.degree + 1;
        let ambient = self.limits.ambient(d, n)?;
        self.current = match n {
            _ if d == 0 => Subspace::zero(0),
            1 => Subspace::zero(ambient),
            2 => self.q.relations.clone(),
            _ => {
                let mut e = Echelon::from_subspace(&self.current.embed(1, d));
                let shifted = self.q.relations.embed(ambient / (d * d), 1);
                if e.rank() < ambient {
                    for v in shifted.basis_vectors() {
                        e.insert(v);
                    }
                }
                e.finish()
            }
        };
        self.degree = n;
        Ok(())
    }
}

/// Walks `C_n = (C_{n-1} ⊗ V) ∩ (V^{⊗(n-2)} ⊗ R)` upwards from `C_0 = F`.
struct CoalgebraTower<'a> {
    q: &'a QuadraticPresentation,
    limits: &'a Limits,
    degree: usize,
    current: Subspace,
}

impl<'a> CoalgebraTower<'a> {
    fn new(q: &'a QuadraticPresentation, limits: &'a Limits) -> Self {
        CoalgebraTower {
            q,
            limits,
            degree: 0,
            current: Subspace::full(1),
        }
    }

    fn advance(&mut self) -> Result<()> {
        let d = self.q.dim_v();
        let n = self.degree + 1;
        let ambient = self.limits.ambient(d, n)?;
        self.current = match n {
            _ if d == 0 => Subspace::zero(0),
            1 => Subspace::full(ambient),
            2 => self.q.relations.clone(),
            _ => {
                let extended = self.current.embed(1, d);
                let shifted = self.q.relations.embed(ambient / (d * d), 1);
                extended.intersect(&shifted)?
            }
        };
        self.degree = n;
        Ok(())
    }
}

/// Result of comparing `H_A(t) · H_{A^!}(-t)` with `1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertCheck {
    pub max_degree: usize,
    pub passed: bool,
    pub first_failure: Option<usize>,
    /// Coefficients of the signed convolution, degree by degree.
    pub product: Vec<i128>,
}

/// Checks the coefficientwise identity `H_A(t) · H_{A^!}(-t) = 1` up to
/// degree `max_n`, a necessary condition for Koszulity.
pub fn hilbert_product_check(q: &QuadraticPresentation, max_n: usize, limits: &Limits) -> Result<HilbertCheck> {
    let a = q.algebra_dims(max_n, limits)?;
    let b = q.dual().algebra_dims(max_n, limits)?;
    let product = signed_convolution(a.as_slice(), b.as_slice());
    let first_failure = product
        .iter()
        .enumerate()
        .find(|&(n, &c)| c != i128::from(n == 0))
        .map(|(n, _)| n);
    Ok(HilbertCheck {
        max_degree: max_n,
        passed: first_failure.is_none(),
        first_failure,
        product,
    })
}

/// Coefficients of `a(t) · b(-t)`, truncated to the shorter length.
pub fn signed_convolution(a: &[usize], b: &[usize]) -> Vec<i128> {
    let len = a.len().min(b.len());
    (0..len)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    let term = a[n - k] as i128 * b[k] as i128;
                    if k % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect()
}

/// Coefficients of `1 / h(t)` up to the length of `h`; `h[0]` must be 1.
pub fn inverse_series(h: &[usize]) -> Vec<i128> {
    let mut inv: Vec<i128> = Vec::with_capacity(h.len());
    for n in 0..h.len() {
        if n == 0 {
            inv.push(1);
            continue;
        }
        let s: i128 = (1..=n).map(|k| h[k] as i128 * inv[n - k]).sum();
        inv.push(-s);
    }
    inv
}

/// The truncated multiplicative structure of `A(V, R)` in degrees
/// `0..=max_degree`, with a monomial basis of normal words in each degree.
///
/// A word is normal in degree `n` when its coordinate is not a pivot of the
/// canonical basis of `I_n`; the normal words form a basis of `A_n`.
#[derive(Debug, Clone)]
pub struct TruncatedAlgebra {
    dim_v: usize,
    ideals: Vec<Subspace>,
    normal_words: Vec<Vec<usize>>,
    normal_index: Vec<Vec<usize>>,
    row_of_pivot: Vec<Vec<usize>>,
}

impl TruncatedAlgebra {
    pub fn new(q: &QuadraticPresentation, max_degree: usize, limits: &Limits) -> Result<Self> {
        let mut tower = IdealTower::new(q, limits);
        let mut ideals = vec![tower.current.clone()];
        for _ in 0..max_degree {
            tower.advance()?;
            ideals.push(tower.current.clone());
        }
        let mut normal_words = Vec::with_capacity(ideals.len());
        let mut normal_index = Vec::with_capacity(ideals.len());
        let mut row_of_pivot = Vec::with_capacity(ideals.len());
        for ideal in &ideals {
            let words = ideal.non_pivots();
            let mut index = vec![usize::MAX; ideal.ambient_dim()];
            for (k, &w) in words.iter().enumerate() {
                index[w] = k;
            }
            let mut rows = vec![usize::MAX; ideal.ambient_dim()];
            for (r, &p) in ideal.pivots().iter().enumerate() {
                rows[p] = r;
            }
            normal_words.push(words);
            normal_index.push(index);
            row_of_pivot.push(rows);
        }
        Ok(TruncatedAlgebra {
            dim_v: q.dim_v(),
            ideals,
            normal_words,
            normal_index,
            row_of_pivot,
        })
    }

    pub fn max_degree(&self) -> usize {
        self.ideals.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.normal_words[n].len()
    }

    pub fn dims(&self) -> GradedDims {
        GradedDims(self.normal_words.iter().map(Vec::len).collect())
    }

    /// Tensor-word index of the `k`-th normal word in degree `n`.
    pub fn normal_word(&self, n: usize, k: usize) -> usize {
        self.normal_words[n][k]
    }

    /// Class of the tensor word with index `word` in `A_n`, in normal-word
    /// coordinates.
    pub fn reduce_word(&self, n: usize, word: usize) -> BitVec {
        let dim = self.dim(n);
        let k = self.normal_index[n][word];
        if k != usize::MAX {
            return BitVec::unit(dim, k);
        }
        // word is a pivot: word ≡ (row - e_word), supported on normal words.
        let row = self.ideals[n].basis().row(self.row_of_pivot[n][word]);
        BitVec::from_indices(dim, row.ones().filter(|&c| c != word).map(|c| self.normal_index[n][c]))
    }

    /// Product of the `a`-th basis element of `A_p` and the `b`-th basis
    /// element of `A_q`, as a vector in `A_{p+q}`.
    pub fn multiply(&self, p: usize, a: usize, q: usize, b: usize) -> BitVec {
        let width = self.dim_v.pow(q as u32);
        let word = self.normal_word(p, a) * width + self.normal_word(q, b);
        self.reduce_word(p + q, word)
    }
}
