//! Finite weight-graded comodules over a graded connected coalgebra.
//!
//! A comodule is a weighted basis plus a list of transitions. A transition
//! `(from, to, key)` puts `e_to ⊗ key` into `ρ(e_from)`; the grouplike term
//! `e ⊗ 1` is always present and never stored. Transitions lower the weight by
//! the degree of the key, so `W^{≤c}` is a subcomodule for every `c`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hopf::Coalgebra;
use crate::quadratic::Limits;

type Key = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub label: String,
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: usize,
    pub to: usize,
    pub key: Key,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedComodule {
    pub coalgebra: Coalgebra,
    pub basis: Vec<BasisElement>,
    pub transitions: Vec<Transition>,
}

/// Coefficients `c_{to, from}` of the coaction, reduced mod 2, excluding the
/// implicit unit on the diagonal.
type Matrix = BTreeMap<(usize, usize), BTreeSet<Key>>;

fn toggle<T: Ord>(set: &mut BTreeSet<T>, key: T) {
    if !set.remove(&key) {
        set.insert(key);
    }
}

impl GradedComodule {
    pub fn new(coalgebra: Coalgebra, basis: Vec<BasisElement>, transitions: Vec<Transition>) -> Self {
        GradedComodule {
            coalgebra,
            basis,
            transitions,
        }
    }

    /// Basis elements with the given weights and no transitions.
    pub fn trivial(coalgebra: Coalgebra, weights: &[i64]) -> Self {
        let basis = weights
            .iter()
            .enumerate()
            .map(|(i, &weight)| BasisElement {
                label: format!("e{i}"),
                weight,
            })
            .collect();
        Self::new(coalgebra, basis, Vec::new())
    }

    /// `e0` of weight 0, `e1` of weight 1, and `ρ(e1) = e1 ⊗ 1 + e0 ⊗ x` over
    /// `T^c(⟨x⟩)`.
    pub fn standard_extension() -> Self {
        let mut m = Self::trivial(Coalgebra::Tensor { dim: 1 }, &[0, 1]);
        m.transitions.push(Transition {
            from: 1,
            to: 0,
            key: vec![0],
        });
        m
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Unknown basis indices and malformed keys are structural errors rather
    /// than validation failures.
    fn check_references(&self) -> Result<()> {
        let n = self.basis.len();
        for (k, t) in self.transitions.iter().enumerate() {
            for index in [t.from, t.to] {
                if index >= n {
                    return Err(Error::InvalidComodule(format!(
                        "transition {k} refers to basis element {index}, but there are {n}"
                    )));
                }
            }
            self.coalgebra
                .validate_key(&t.key)
                .map_err(|e| Error::InvalidComodule(format!("transition {k}: {e}")))?;
        }
        Ok(())
    }

    fn matrix(&self) -> Matrix {
        let mut m = Matrix::new();
        for t in &self.transitions {
            toggle(m.entry((t.to, t.from)).or_default(), t.key.clone());
        }
        m.retain(|_, keys| !keys.is_empty());
        m
    }

    /// `c_{to, from}` including the unit on the diagonal.
    fn coefficient(&self, m: &Matrix, to: usize, from: usize) -> BTreeSet<Key> {
        let mut keys = m.get(&(to, from)).cloned().unwrap_or_default();
        if to == from {
            toggle(&mut keys, self.coalgebra.unit_key());
        }
        keys
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ComoduleReport {
    /// Transitions with `weight(to) ≠ weight(from) - deg(key)`.
    pub weight_failures: Vec<usize>,
    /// Transitions with a degree-zero key.
    pub counit_failures: Vec<usize>,
    /// Pairs `(from, to)` where the two ways of applying the coaction twice
    /// differ.
    pub coassociativity_failures: Vec<(usize, usize)>,
    /// Pairs `(from, to)` whose coefficient is not in the coalgebra.
    pub membership_failures: Vec<(usize, usize)>,
}

impl ComoduleReport {
    pub fn passed(&self) -> bool {
        self.weight_failures.is_empty()
            && self.counit_failures.is_empty()
            && self.coassociativity_failures.is_empty()
            && self.membership_failures.is_empty()
    }

    /// The first failure, in words.
    pub fn first_failure(&self) -> Option<String> {
        if let Some(k) = self.weight_failures.first() {
            return Some(format!("transition {k} is not weight compatible"));
        }
        if let Some(k) = self.counit_failures.first() {
            return Some(format!("transition {k} has a degree-zero word"));
        }
        if let Some((f, t)) = self.coassociativity_failures.first() {
            return Some(format!("coaction is not coassociative from {f} to {t}"));
        }
        if let Some((f, t)) = self.membership_failures.first() {
            return Some(format!("coefficient from {f} to {t} is not in the coalgebra"));
        }
        None
    }
}

/// Checks weight compatibility, the counit and coassociativity. For
/// `C(V, R)` it also checks that every coefficient lies in `C`.
pub fn validate(m: &GradedComodule, limits: &Limits) -> Result<ComoduleReport> {
    m.check_references()?;
    let mut report = ComoduleReport::default();
    for (k, t) in m.transitions.iter().enumerate() {
        let degree = m.coalgebra.key_degree(&t.key);
        if degree == 0 {
            report.counit_failures.push(k);
        }
        if m.basis[t.to].weight != m.basis[t.from].weight - degree as i64 {
            report.weight_failures.push(k);
        }
    }

    let matrix = m.matrix();
    let n = m.dim();
    for f in 0..n {
        for s in 0..n {
            // Δ(c_{s,f}) against Σ_t c_{s,t} ⊗ c_{t,f}
            let mut lhs = BTreeSet::new();
            for key in m.coefficient(&matrix, s, f) {
                for split in m.coalgebra.coproduct_key(&key) {
                    toggle(&mut lhs, split);
                }
            }
            let mut rhs = BTreeSet::new();
            for t in 0..n {
                let left = m.coefficient(&matrix, s, t);
                if left.is_empty() {
                    continue;
                }
                for b in m.coefficient(&matrix, t, f) {
                    for a in &left {
                        toggle(&mut rhs, (a.clone(), b.clone()));
                    }
                }
            }
            if lhs != rhs {
                report.coassociativity_failures.push((f, s));
            }
        }
    }

    if matches!(m.coalgebra, Coalgebra::Quadratic(_)) {
        for (&(to, from), keys) in &matrix {
            let mut by_degree: BTreeMap<usize, BTreeSet<Key>> = BTreeMap::new();
            for key in keys {
                by_degree
                    .entry(m.coalgebra.key_degree(key))
                    .or_default()
                    .insert(key.clone());
            }
            for (degree, terms) in by_degree {
                if !m.coalgebra.contains(&terms, degree, limits)? {
                    report.membership_failures.push((from, to));
                    break;
                }
            }
        }
    }
    Ok(report)
}

fn require_valid(m: &GradedComodule, limits: &Limits) -> Result<()> {
    match validate(m, limits)?.first_failure() {
        Some(reason) => Err(Error::InvalidComodule(reason)),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationLayer {
    pub weight: i64,
    /// Basis elements of weight at most `weight`.
    pub basis: Vec<usize>,
    /// No transition leaves the layer.
    pub closed: bool,
    /// No transition stays inside weight exactly `weight`.
    pub quotient_trivial: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFiltration {
    /// One layer per weight that occurs, increasing.
    pub layers: Vec<FiltrationLayer>,
}

impl WeightFiltration {
    pub fn breakpoints(&self) -> Vec<i64> {
        self.layers.iter().map(|l| l.weight).collect()
    }

    pub fn layer_dims(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.basis.len()).collect()
    }

    pub fn is_sound(&self) -> bool {
        self.layers.iter().all(|l| l.closed && l.quotient_trivial)
    }
}

pub fn weight_filtration(m: &GradedComodule, limits: &Limits) -> Result<WeightFiltration> {
    require_valid(m, limits)?;
    let matrix = m.matrix();
    let weights: BTreeSet<i64> = m.basis.iter().map(|b| b.weight).collect();
    let layers = weights
        .into_iter()
        .map(|c| {
            let basis: Vec<usize> = (0..m.dim()).filter(|&i| m.basis[i].weight <= c).collect();
            let inside = |i: usize| m.basis[i].weight <= c;
            let on_level = |i: usize| m.basis[i].weight == c;
            let closed = matrix.keys().all(|&(to, from)| !inside(from) || inside(to));
            let quotient_trivial = matrix.keys().all(|&(to, from)| !(on_level(from) && on_level(to)));
            FiltrationLayer {
                weight: c,
                basis,
                closed,
                quotient_trivial,
            }
        })
        .collect();
    Ok(WeightFiltration { layers })
}

/// Dimensions of the graded pieces `gr_c^W`.
pub fn fiber_functor(m: &GradedComodule, limits: &Limits) -> Result<BTreeMap<i64, usize>> {
    require_valid(m, limits)?;
    let mut dims = BTreeMap::new();
    for b in &m.basis {
        *dims.entry(b.weight).or_insert(0) += 1;
    }
    Ok(dims)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnipotenceReport {
    /// `(transition, reason)` for each transition that does not strictly
    /// lower the weight.
    pub failures: Vec<(usize, String)>,
}

impl UnipotenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every transition must go strictly down in weight with a positive-degree
/// key.
pub fn unipotence_check(m: &GradedComodule) -> UnipotenceReport {
    let n = m.dim();
    let failures = m
        .transitions
        .iter()
        .enumerate()
        .filter_map(|(k, t)| {
            let reason = if t.from >= n || t.to >= n {
                format!("unknown basis element in {} -> {}", t.from, t.to)
            } else if m.coalgebra.validate_key(&t.key).is_err() {
                String::from("malformed word")
            } else if m.coalgebra.key_degree(&t.key) == 0 {
                String::from("degree-zero word; the grouplike part is implicit")
            } else if m.basis[t.to].weight >= m.basis[t.from].weight {
                format!(
                    "weight does not decrease ({} -> {})",
                    m.basis[t.from].weight, m.basis[t.to].weight
                )
            } else {
                return None;
            };
            Some((k, reason))
        })
        .collect();
    UnipotenceReport { failures }
}

/// `m1 ⊗ m2` with coaction `e_a ⊗ e_b ↦ Σ e_s ⊗ e_t ⊗ c_{s,a} c_{t,b}`,
/// the product taken in the Hopf structure of the coalgebra.
///
/// Basis element `(a, b)` has index `a · dim m2 + b`.
pub fn tensor_comodule(m1: &GradedComodule, m2: &GradedComodule, limits: &Limits) -> Result<GradedComodule> {
    if m1.coalgebra != m2.coalgebra {
        return Err(Error::CoalgebraMismatch);
    }
    require_valid(m1, limits)?;
    require_valid(m2, limits)?;
    let coalgebra = m1.coalgebra.clone();
    let (n1, n2) = (m1.dim(), m2.dim());
    let (x1, x2) = (m1.matrix(), m2.matrix());

    let basis = m1
        .basis
        .iter()
        .flat_map(|a| {
            m2.basis.iter().map(move |b| BasisElement {
                label: format!("{}⊗{}", a.label, b.label),
                weight: a.weight + b.weight,
            })
        })
        .collect();

    let mut transitions = Vec::new();
    for a in 0..n1 {
        for b in 0..n2 {
            for s in 0..n1 {
                let left = m1.coefficient(&x1, s, a);
                if left.is_empty() {
                    continue;
                }
                for t in 0..n2 {
                    if (s, t) == (a, b) {
                        continue;
                    }
                    let right = m2.coefficient(&x2, t, b);
                    let mut product = BTreeSet::new();
                    for u in &left {
                        for v in &right {
                            for w in coalgebra.multiply_keys(u, v) {
                                toggle(&mut product, w);
                            }
                        }
                    }
                    if product.is_empty() {
                        continue;
                    }
                    if matches!(coalgebra, Coalgebra::Quadratic(_)) {
                        let degree = (m1.basis[a].weight - m1.basis[s].weight + m2.basis[b].weight - m2.basis[t].weight)
                            as usize;
                        if !coalgebra.contains(&product, degree, limits)? {
                            return Err(Error::NotClosedUnderProduct { degree });
                        }
                    }
                    for key in product {
                        transitions.push(Transition {
                            from: a * n2 + b,
                            to: s * n2 + t,
                            key,
                        });
                    }
                }
            }
        }
    }
    Ok(GradedComodule {
        coalgebra,
        basis,
        transitions,
    })
}
