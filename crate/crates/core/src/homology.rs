//! Bar homology of quadratic algebras.
//!
//! `Tor^A_{i,j}(F, F)` is computed from the reduced bar complex
//! `⊕ Ā^{⊗i}`, where `Ā` is the augmentation ideal. Bidegrees are written
//! `(i, j)` with `i` homological and `j` internal. The differential sums the
//! adjacent multiplication maps; in characteristic two there are no signs.
//!
//! Each internal degree `j` is a finite complex, handled slice by slice:
//! `dim Tor_{i,j} = dim C_{i,j} - rank d_i - rank d_{i+1}`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::f2::{rank_of_rows, BitVec};
use crate::quadratic::{GradedDims, Limits, QuadraticPresentation, TruncatedAlgebra};

/// Bigraded dimensions `Tor_{i,j}` for internal degrees `j ≤ max_internal`.
/// Only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TorTable {
    pub max_internal: usize,
    pub entries: BTreeMap<(usize, usize), usize>,
}

impl TorTable {
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries sorted by `(j, i)`.
    pub fn sorted_entries(&self) -> Vec<(usize, usize, usize)> {
        let mut out: Vec<_> = self.entries.iter().map(|(&(i, j), &d)| (i, j, d)).collect();
        out.sort_by_key(|&(i, j, _)| (j, i));
        out
    }

    /// `Tor_{i,i}` for `i ≤ max_internal`.
    pub fn diagonal(&self) -> GradedDims {
        GradedDims((0..=self.max_internal).map(|i| self.get(i, i)).collect())
    }

    /// `Σ_i (-1)^i Tor_{i,j}` for each internal degree `j`.
    pub fn euler_characteristics(&self) -> Vec<i128> {
        (0..=self.max_internal)
            .map(|j| {
                (0..=j)
                    .map(|i| {
                        let d = self.get(i, j) as i128;
                        if i % 2 == 0 {
                            d
                        } else {
                            -d
                        }
                    })
                    .sum()
            })
            .collect()
    }
}

/// The bar complex of a truncated algebra in one internal degree.
struct BarSlice<'a> {
    algebra: &'a TruncatedAlgebra,
    /// `chains[i]`: compositions of `j` into `i` parts, each with the offset of
    /// its block in `C_{i,j}`.
    chains: Vec<BTreeMap<Vec<usize>, usize>>,
    dims: Vec<usize>,
}

impl<'a> BarSlice<'a> {
    fn new(algebra: &'a TruncatedAlgebra, j: usize) -> Self {
        let mut chains = vec![BTreeMap::new(); j + 2];
        let mut dims = vec![0; j + 2];
        if j == 0 {
            chains[0].insert(Vec::new(), 0);
            dims[0] = 1;
        }
        let mut parts = Vec::new();
        Self::compositions(algebra, j, &mut parts, &mut chains, &mut dims);
        BarSlice { algebra, chains, dims }
    }

    fn compositions(
        algebra: &TruncatedAlgebra,
        remaining: usize,
        parts: &mut Vec<usize>,
        chains: &mut [BTreeMap<Vec<usize>, usize>],
        dims: &mut [usize],
    ) {
        if remaining == 0 {
            if parts.is_empty() {
                return;
            }
            let i = parts.len();
            let size: usize = parts.iter().map(|&p| algebra.dim(p)).product();
            chains[i].insert(parts.clone(), dims[i]);
            dims[i] += size;
            return;
        }
        for p in 1..=remaining {
            if algebra.dim(p) == 0 {
                continue;
            }
            parts.push(p);
            Self::compositions(algebra, remaining - p, parts, chains, dims);
            parts.pop();
        }
    }

    /// Index of a tuple of basis elements inside its block.
    fn block_index(&self, parts: &[usize], tuple: &[usize]) -> usize {
        parts
            .iter()
            .zip(tuple)
            .fold(0, |acc, (&p, &t)| acc * self.algebra.dim(p) + t)
    }

    /// Rank of `d_i : C_{i,j} → C_{i-1,j}`.
    fn differential_rank(&self, i: usize) -> usize {
        if i < 2 || i >= self.chains.len() || self.dims[i] == 0 || self.dims[i - 1] == 0 {
            return 0;
        }
        let target_dim = self.dims[i - 1];
        let mut rows = Vec::with_capacity(self.dims[i]);
        let mut tuple = vec![0usize; i];
        for parts in self.chains[i].keys() {
            let sizes: Vec<usize> = parts.iter().map(|&p| self.algebra.dim(p)).collect();
            tuple.iter_mut().for_each(|t| *t = 0);
            loop {
                rows.push(self.boundary(parts, &tuple, target_dim));
                if !advance_tuple(&mut tuple, &sizes) {
                    break;
                }
            }
        }
        rank_of_rows(target_dim, rows)
    }

    fn boundary(&self, parts: &[usize], tuple: &[usize], target_dim: usize) -> BitVec {
        let i = parts.len();
        let mut row = BitVec::zeros(target_dim);
        let mut merged_parts = Vec::with_capacity(i - 1);
        let mut merged_tuple = Vec::with_capacity(i - 1);
        for k in 0..i - 1 {
            let (p, q) = (parts[k], parts[k + 1]);
            merged_parts.clear();
            merged_parts.extend_from_slice(&parts[..k]);
            merged_parts.push(p + q);
            merged_parts.extend_from_slice(&parts[k + 2..]);
            let Some(&offset) = self.chains[i - 1].get(&merged_parts) else {
                continue; // A_{p+q} = 0
            };
            let product = self.algebra.multiply(p, tuple[k], q, tuple[k + 1]);
            for s in product.ones() {
                merged_tuple.clear();
                merged_tuple.extend_from_slice(&tuple[..k]);
                merged_tuple.push(s);
                merged_tuple.extend_from_slice(&tuple[k + 2..]);
                row.flip(offset + self.block_index(&merged_parts, &merged_tuple));
            }
        }
        row
    }
}

/// Odometer over `0..sizes[0] × 0..sizes[1] × …`, last index fastest.
fn advance_tuple(tuple: &mut [usize], sizes: &[usize]) -> bool {
    for k in (0..tuple.len()).rev() {
        tuple[k] += 1;
        if tuple[k] < sizes[k] {
            return true;
        }
        tuple[k] = 0;
    }
    false
}

/// The bigraded `Tor` table of `A(V, R)` for internal degrees up to
/// `max_internal`.
pub fn tor_table(q: &QuadraticPresentation, max_internal: usize, limits: &Limits) -> Result<TorTable> {
    let algebra = TruncatedAlgebra::new(q, max_internal, limits)?;
    let mut entries = BTreeMap::new();
    for j in 0..=max_internal {
        let slice = BarSlice::new(&algebra, j);
        let ranks: Vec<usize> = (0..=j + 1).map(|i| slice.differential_rank(i)).collect();
        for i in 0..=j {
            let dim = slice.dims[i] - ranks[i] - ranks[i + 1];
            if dim != 0 {
                entries.insert((i, j), dim);
            }
        }
    }
    Ok(TorTable { max_internal, entries })
}

/// Outcome of a bounded Koszulity check.
///
/// A positive verdict certifies Koszulity only through internal degree
/// `koszul_up_to`; nothing is claimed beyond it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulVerdict {
    pub max_internal: usize,
    /// Largest `N` such that every check passed in internal degrees `≤ N`.
    pub koszul_up_to: usize,
    /// Whether `Tor_{i,i}` agreed with the quadratic dual coalgebra in every
    /// checked degree.
    pub diagonal_match: bool,
    /// Whether every off-diagonal `Tor_{i,j}` vanished.
    pub off_diagonal_zero: bool,
    /// First failing bidegree `(i, j)` in `(j, i)` order.
    pub first_violation: Option<(usize, usize)>,
    pub tor: TorTable,
    pub coalgebra_dims: GradedDims,
}

impl KoszulVerdict {
    pub fn is_positive(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Certifies Koszulity of `A(V, R)` up to internal degree `max_internal`:
/// `Tor` must be concentrated on the diagonal, and its diagonal must have the
/// dimensions of the quadratic coalgebra `C(V, R)`.
///
/// The comparison is on graded dimensions. For a quadratic algebra the
/// diagonal of bar homology is canonically identified with `C(V, R)`, so
/// equal dimensions there together with vanishing off the diagonal is the
/// whole condition.
pub fn koszul_certificate(q: &QuadraticPresentation, max_internal: usize, limits: &Limits) -> Result<KoszulVerdict> {
    let tor = tor_table(q, max_internal, limits)?;
    let coalgebra_dims = q.coalgebra_dims(max_internal, limits)?;
    let mut first_violation = None;
    let mut diagonal_match = true;
    let mut off_diagonal_zero = true;
    for j in 0..=max_internal {
        for i in 0..=j {
            let ok = if i == j {
                let good = tor.get(i, j) == coalgebra_dims.0[j];
                diagonal_match &= good;
                good
            } else {
                let good = tor.get(i, j) == 0;
                off_diagonal_zero &= good;
                good
            };
            if !ok && first_violation.is_none() {
                first_violation = Some((i, j));
            }
        }
    }
    let koszul_up_to = match first_violation {
        None => max_internal,
        Some((_, j)) => j.saturating_sub(1),
    };
    Ok(KoszulVerdict {
        max_internal,
        koszul_up_to,
        diagonal_match,
        off_diagonal_zero,
        first_violation,
        tor,
        coalgebra_dims,
    })
}
