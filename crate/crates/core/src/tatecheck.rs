//! Numerical checks on bigraded hom tables.
//!
//! A table records `dim [1, Σ^l 1(w)]` at key `(l, w)`. Entries of dimension
//! zero are the same as missing entries.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::homology::{koszul_certificate, KoszulVerdict};
use crate::quadratic::{Limits, QuadraticPresentation};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct HomTable {
    pub entries: BTreeMap<(i64, i64), u64>,
    pub source: Option<String>,
    /// Dimension of the variety the table comes from, if any.
    pub d: Option<u64>,
}

impl HomTable {
    pub fn new<I: IntoIterator<Item = ((i64, i64), u64)>>(entries: I) -> Self {
        HomTable {
            entries: entries.into_iter().collect(),
            ..Self::default()
        }
    }

    /// The diagonal table `{(n, n): dims[n]}`.
    pub fn from_algebra_dims(dims: &[usize]) -> Self {
        Self::new(
            dims.iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(n, &k)| ((n as i64, n as i64), k as u64)),
        )
    }

    pub fn get(&self, l: i64, w: i64) -> u64 {
        self.entries.get(&(l, w)).copied().unwrap_or(0)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = ((i64, i64), u64)> + '_ {
        self.entries.iter().filter(|(_, &k)| k > 0).map(|(&key, &k)| (key, k))
    }

    /// Smallest box `(l_min, l_max, w_min, w_max)` holding the support and
    /// the origin.
    pub fn window(&self) -> (i64, i64, i64, i64) {
        self.nonzero()
            .map(|(key, _)| key)
            .chain([(0, 0)])
            .fold((0, 0, 0, 0), |(a, b, c, d), (l, w)| {
                (a.min(l), b.max(l), c.min(w), d.max(w))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TateCondition {
    /// No maps to negative twists: `(l, w < 0)` vanishes.
    Cond1,
    /// In twist zero only the unit survives: `(l ≠ 0, 0)` vanishes.
    Cond2,
    /// `(0, 0)` is one-dimensional.
    Cond3,
    /// Beilinson–Soulé: `(l ≤ 0, w > 0)` vanishes.
    BeilinsonSoule,
}

impl TateCondition {
    pub fn label(self) -> &'static str {
        match self {
            TateCondition::Cond1 => "COND1",
            TateCondition::Cond2 => "COND2",
            TateCondition::Cond3 => "COND3",
            TateCondition::BeilinsonSoule => "BS",
        }
    }

    /// The condition a single nonzero entry at `(l, w)` would break, if any.
    /// The origin is handled separately since only its dimension matters.
    pub fn violated_by(l: i64, w: i64) -> Option<TateCondition> {
        match (l, w) {
            (_, w) if w < 0 => Some(TateCondition::Cond1),
            (0, 0) => None,
            (_, 0) => Some(TateCondition::Cond2),
            (l, _) if l <= 0 => Some(TateCondition::BeilinsonSoule),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TateViolation {
    pub condition: TateCondition,
    pub l: i64,
    pub w: i64,
    pub dim: u64,
}

impl fmt::Display for TateViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({},{}) dim={}", self.condition.label(), self.l, self.w, self.dim)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TateReport {
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    pub bs: bool,
    /// Sorted by condition, then key.
    pub violations: Vec<TateViolation>,
    /// `(l_min, l_max, w_min, w_max)`: the conditions quantify over all
    /// integers, but only this box can hold nonzero entries.
    pub window: (i64, i64, i64, i64),
}

impl TateReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_tate_type(t: &HomTable) -> TateReport {
    let mut violations: Vec<TateViolation> = t
        .nonzero()
        .filter_map(|((l, w), dim)| {
            TateCondition::violated_by(l, w).map(|condition| TateViolation { condition, l, w, dim })
        })
        .collect();
    let unit = t.get(0, 0);
    if unit != 1 {
        violations.push(TateViolation {
            condition: TateCondition::Cond3,
            l: 0,
            w: 0,
            dim: unit,
        });
    }
    violations.sort();
    let fails = |c: TateCondition| violations.iter().any(|v| v.condition == c);
    TateReport {
        cond1: !fails(TateCondition::Cond1),
        cond2: !fails(TateCondition::Cond2),
        cond3: !fails(TateCondition::Cond3),
        bs: !fails(TateCondition::BeilinsonSoule),
        window: t.window(),
        violations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VanishingRule {
    /// `l > 2w`
    AboveTwiceWeight,
    /// `l < w`
    BelowWeight,
    /// `l > w + d`
    AboveWeightPlusDimension,
}

impl VanishingRule {
    pub fn label(self) -> &'static str {
        match self {
            VanishingRule::AboveTwiceWeight => "l>2w",
            VanishingRule::BelowWeight => "l<w",
            VanishingRule::AboveWeightPlusDimension => "l>w+d",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingViolation {
    pub l: i64,
    pub w: i64,
    pub dim: u64,
    pub rules: Vec<VanishingRule>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingReport {
    pub d: u64,
    pub violations: Vec<VanishingViolation>,
}

impl VanishingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Flags every nonzero entry in one of the regions that must vanish for a
/// variety of dimension `d`.
pub fn check_vanishing_range(t: &HomTable, d: u64) -> VanishingReport {
    let d = d as i128;
    let violations = t
        .nonzero()
        .filter_map(|((l, w), dim)| {
            let (l128, w128) = (l as i128, w as i128);
            let rules: Vec<VanishingRule> = [
                (l128 > 2 * w128, VanishingRule::AboveTwiceWeight),
                (l128 < w128, VanishingRule::BelowWeight),
                (l128 > w128 + d, VanishingRule::AboveWeightPlusDimension),
            ]
            .into_iter()
            .filter_map(|(hit, rule)| hit.then_some(rule))
            .collect();
            (!rules.is_empty()).then_some(VanishingViolation { l, w, dim, rules })
        })
        .collect();
    VanishingReport {
        d: d as u64,
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeartPrediction {
    pub max_degree: usize,
    /// Nonzero entries away from `l = w ≥ 0`.
    pub off_diagonal: Vec<((i64, i64), u64)>,
    /// Absent when the table is not diagonal.
    pub koszul: Option<KoszulVerdict>,
}

impl HeartPrediction {
    /// Equivalence predicted up to `max_degree`: diagonal table matching the
    /// algebra, and the algebra Koszul in that range.
    pub fn predicted(&self) -> bool {
        self.off_diagonal.is_empty() && self.koszul.as_ref().is_some_and(KoszulVerdict::is_positive)
    }
}

/// Compares a table with a presentation and certifies Koszulity.
///
/// Diagonal entries beyond `max_degree` are not examined. A diagonal table
/// whose dimensions differ from `A(V, R)` is an error naming the first
/// differing degree.
pub fn predict_heart_equivalence(
    q: &QuadraticPresentation,
    t: &HomTable,
    max_degree: usize,
    limits: &Limits,
) -> Result<HeartPrediction> {
    let off_diagonal: Vec<((i64, i64), u64)> = t.nonzero().filter(|&((l, w), _)| l != w || w < 0).collect();
    if !off_diagonal.is_empty() {
        return Ok(HeartPrediction {
            max_degree,
            off_diagonal,
            koszul: None,
        });
    }
    let dims = q.algebra_dims(max_degree, limits)?;
    for (n, &algebra) in dims.as_slice().iter().enumerate() {
        let table = t.get(n as i64, n as i64);
        if table != algebra as u64 {
            return Err(Error::HilbertMismatch {
                degree: n,
                table,
                algebra,
            });
        }
    }
    Ok(HeartPrediction {
        max_degree,
        off_diagonal,
        koszul: Some(koszul_certificate(q, max_degree, limits)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn table(entries: &[((i64, i64), u64)]) -> HomTable {
        HomTable::new(entries.iter().copied())
    }

    #[test]
    fn tate_examples() {
        assert!(check_tate_type(&table(&[((0, 0), 1)])).passed());
        assert!(check_tate_type(&table(&[((0, 0), 1), ((1, 1), 2)])).passed());
        let r = check_tate_type(&table(&[((0, 0), 1), ((-1, 1), 1)]));
        assert!(r.cond1 && r.cond2 && r.cond3 && !r.bs);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].to_string(), "BS (-1,1) dim=1");
    }

    #[test]
    fn each_condition_separately() {
        let r = check_tate_type(&table(&[((0, 0), 1), ((3, -1), 1)]));
        assert!(!r.cond1 && r.cond2 && r.cond3 && r.bs);
        let r = check_tate_type(&table(&[((0, 0), 1), ((2, 0), 4)]));
        assert!(r.cond1 && !r.cond2 && r.cond3 && r.bs);
        assert_eq!(r.violations[0].to_string(), "COND2 (2,0) dim=4");
        let r = check_tate_type(&table(&[((0, 0), 2)]));
        assert!(r.cond1 && r.cond2 && !r.cond3 && r.bs);
        let r = check_tate_type(&HomTable::default());
        assert_eq!(r.violations[0].to_string(), "COND3 (0,0) dim=0");
        // (0, 1) is l ≤ 0 with w > 0
        let r = check_tate_type(&table(&[((0, 0), 1), ((0, 1), 1)]));
        assert!(!r.bs);
    }

    #[test]
    fn zero_entries_are_ignored() {
        assert!(check_tate_type(&table(&[((0, 0), 1), ((-5, 3), 0), ((1, -1), 0)])).passed());
    }

    #[test]
    fn window_covers_support() {
        let t = table(&[((0, 0), 1), ((3, 2), 1), ((-1, 5), 0)]);
        assert_eq!(check_tate_type(&t).window, (0, 3, 0, 2));
    }

    #[test]
    fn vanishing_examples() {
        let diag = table(&[((0, 0), 1), ((1, 1), 2), ((2, 2), 1)]);
        for d in 0..4 {
            assert!(check_vanishing_range(&diag, d).passed());
        }
        let r = check_vanishing_range(&table(&[((3, 1), 1)]), 1);
        assert_eq!(
            r.violations[0].rules,
            [VanishingRule::AboveTwiceWeight, VanishingRule::AboveWeightPlusDimension]
        );
        for d in 0..5 {
            let r = check_vanishing_range(&table(&[((1, 2), 1)]), d);
            assert_eq!(r.violations[0].rules, [VanishingRule::BelowWeight]);
        }
        // inside the band w ≤ l ≤ min(2w, w + d)
        assert!(check_vanishing_range(&table(&[((3, 2), 1)]), 1).passed());
        assert!(!check_vanishing_range(&table(&[((3, 2), 1)]), 0).passed());
    }

    #[test]
    fn prediction_examples() {
        let limits = Limits::default();
        let sz = QuadraticPresentation::square_zero(2);
        let t = table(&[((0, 0), 1), ((1, 1), 2)]);
        assert!(predict_heart_equivalence(&sz, &t, 6, &limits).unwrap().predicted());

        let ext = QuadraticPresentation::exterior(2);
        let t = table(&[((0, 0), 1), ((1, 1), 2), ((2, 2), 1)]);
        assert!(predict_heart_equivalence(&ext, &t, 6, &limits).unwrap().predicted());

        let t = table(&[((0, 0), 1), ((1, 1), 2), ((2, 2), 1)]);
        assert_eq!(
            predict_heart_equivalence(&sz, &t, 6, &limits),
            Err(Error::HilbertMismatch {
                degree: 2,
                table: 1,
                algebra: 0
            })
        );

        let t = table(&[((0, 0), 1), ((1, 1), 2), ((2, 1), 1)]);
        let p = predict_heart_equivalence(&sz, &t, 6, &limits).unwrap();
        assert!(!p.predicted());
        assert_eq!(p.off_diagonal, [((2, 1), 1)]);
    }

    #[test]
    fn prediction_from_own_dims_tracks_certificate() {
        let limits = Limits::default();
        let non_koszul = QuadraticPresentation::from_relation_terms(
            3,
            &[
                vec![(0, 0), (1, 0), (2, 0), (2, 2)],
                vec![(0, 1), (2, 0)],
                vec![(0, 2), (1, 0), (2, 0), (2, 1), (2, 2)],
                vec![(1, 1), (2, 0), (2, 2)],
            ],
        )
        .unwrap();
        for q in [
            QuadraticPresentation::polynomial(2),
            QuadraticPresentation::free(2),
            non_koszul,
        ] {
            let n = 5;
            let t = HomTable::from_algebra_dims(q.algebra_dims(n, &limits).unwrap().as_slice());
            let p = predict_heart_equivalence(&q, &t, n, &limits).unwrap();
            let cert = koszul_certificate(&q, n, &limits).unwrap();
            assert_eq!(p.predicted(), cert.is_positive());
        }
    }
}
