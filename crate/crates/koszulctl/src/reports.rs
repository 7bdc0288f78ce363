//! Output documents, one per verb. Each serializes to JSON and renders as
//! text; every JSON document parses back into the same type.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use koszul_core::homology::KoszulVerdict;
use koszul_core::hopf::{GmgaReport, ShuffleAxiomReport};
use koszul_core::quadratic::HilbertCheck;
use koszul_core::tatecheck::{HeartPrediction, TateReport, VanishingReport};
use koszul_core::weight::{ComoduleReport, GradedComodule, UnipotenceReport, WeightFiltration};
use koszul_core::QuadraticPresentation;

use crate::formats::{ComoduleFile, HomEntry, PresentationFile, TorTableFile};

/// Renders `values` under a `degree` header row.
pub fn degree_table(name: &str, values: &[String]) -> String {
    let width = values
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(1)
        .max(values.len().to_string().len());
    let label = name.len().max("degree".len());
    let mut out = format!("{:<label$}", "degree");
    for n in 0..values.len() {
        write!(out, " {n:>width$}").unwrap();
    }
    write!(out, "\n{name:<label$}").unwrap();
    for v in values {
        write!(out, " {v:>width$}").unwrap();
    }
    out.push('\n');
    out
}

fn dims_table(name: &str, dims: &[usize]) -> String {
    degree_table(name, &dims.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn render_presentation(q: &QuadraticPresentation) -> String {
    let g = q.generators();
    let mut out = format!("generators ({}): {}\n", g.len(), g.join(", "));
    let rels = q.relation_terms();
    writeln!(out, "relations ({}):", rels.len()).unwrap();
    for rel in rels {
        let words: Vec<String> = rel.iter().map(|&(i, j)| format!("{}{}", g[i], g[j])).collect();
        writeln!(out, "  {}", words.join(" + ")).unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualReport {
    #[serde(flatten)]
    pub presentation: PresentationFile,
}

impl DualReport {
    pub fn new(dual: &QuadraticPresentation) -> Self {
        DualReport {
            presentation: PresentationFile::from_presentation(dual),
        }
    }

    pub fn text(&self) -> String {
        render_presentation(
            &self
                .presentation
                .to_presentation()
                .expect("emitted from a valid presentation"),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub max_degree: usize,
    pub passed: bool,
    pub algebra_dims: Vec<usize>,
    pub dual_algebra_dims: Vec<usize>,
    pub coalgebra_dims: Vec<usize>,
    /// Coefficients of `H_A(t) · H_{A^!}(-t)`.
    pub product: Vec<i64>,
    pub first_failure: Option<usize>,
}

impl HilbertReport {
    pub fn new(check: &HilbertCheck, algebra: &[usize], dual: &[usize], coalgebra: &[usize]) -> Self {
        HilbertReport {
            max_degree: check.max_degree,
            passed: check.passed,
            algebra_dims: algebra.to_vec(),
            dual_algebra_dims: dual.to_vec(),
            coalgebra_dims: coalgebra.to_vec(),
            product: check.product.iter().map(|&c| c as i64).collect(),
            first_failure: check.first_failure,
        }
    }

    pub fn text(&self) -> String {
        let mut out = dims_table("A", &self.algebra_dims);
        out += &dims_table("A^!", &self.dual_algebra_dims);
        out += &dims_table("C", &self.coalgebra_dims);
        out += &degree_table(
            "H_A(t)H_A!(-t)",
            &self.product.iter().map(ToString::to_string).collect::<Vec<_>>(),
        );
        match self.first_failure {
            None => writeln!(out, "hilbert identity holds up to degree {}", self.max_degree).unwrap(),
            Some(n) => writeln!(out, "hilbert identity FAILS in degree {n}").unwrap(),
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorReport {
    pub max_degree: usize,
    #[serde(flatten)]
    pub table: TorTableFile,
}

impl TorReport {
    pub fn text(&self) -> String {
        render_tor(self.max_degree, &self.table)
    }
}

/// Rows `i`, columns `j`.
fn render_tor(max_degree: usize, t: &TorTableFile) -> String {
    let get = |i: usize, j: usize| t.entries.iter().find(|e| e.i == i && e.j == j).map_or(0, |e| e.dim);
    let width = t
        .entries
        .iter()
        .map(|e| e.dim.to_string().len())
        .chain([max_degree.to_string().len()])
        .max()
        .unwrap_or(1);
    let mut out = String::from("Tor  j");
    for j in 0..=max_degree {
        write!(out, " {j:>width$}").unwrap();
    }
    out.push('\n');
    for i in 0..=max_degree {
        write!(out, "i={i:<3} ").unwrap();
        for j in 0..=max_degree {
            if i > j {
                write!(out, " {:>width$}", ".").unwrap();
            } else {
                write!(out, " {:>width$}", get(i, j)).unwrap();
            }
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulReport {
    pub max_degree: usize,
    pub positive: bool,
    pub koszul_up_to: usize,
    pub diagonal_match: bool,
    pub off_diagonal_zero: bool,
    /// `[i, j]`
    pub first_violation: Option<[usize; 2]>,
    pub coalgebra_dims: Vec<usize>,
    pub tor: TorTableFile,
}

impl KoszulReport {
    pub fn new(v: &KoszulVerdict) -> Self {
        KoszulReport {
            max_degree: v.max_internal,
            positive: v.is_positive(),
            koszul_up_to: v.koszul_up_to,
            diagonal_match: v.diagonal_match,
            off_diagonal_zero: v.off_diagonal_zero,
            first_violation: v.first_violation.map(|(i, j)| [i, j]),
            coalgebra_dims: v.coalgebra_dims.as_slice().to_vec(),
            tor: TorTableFile::from_table(&v.tor),
        }
    }

    pub fn text(&self) -> String {
        let mut out = render_tor(self.max_degree, &self.tor);
        out += &dims_table("C", &self.coalgebra_dims);
        match self.first_violation {
            None => writeln!(out, "koszul up to degree {}", self.koszul_up_to).unwrap(),
            Some([i, j]) => writeln!(
                out,
                "NOT koszul: Tor_{{{i},{j}}} violates the certificate; koszul up to degree {}",
                self.koszul_up_to
            )
            .unwrap(),
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MilnorReport {
    pub q: Option<u64>,
    /// `{a}⊗{1-a}` with both entries non-square, for finite fields.
    pub steinberg_symbols: Option<Vec<String>>,
    pub dims: Vec<usize>,
    pub presentation: PresentationFile,
    pub koszul: KoszulReport,
}

impl MilnorReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        if let Some(q) = self.q {
            writeln!(out, "field: F_{q}").unwrap();
        }
        if let Some(symbols) = &self.steinberg_symbols {
            writeln!(out, "nonzero steinberg symbols: {}", symbols.join(", ")).unwrap();
        }
        out += &render_presentation(
            &self
                .presentation
                .to_presentation()
                .expect("emitted from a valid presentation"),
        );
        out += &dims_table("K/2", &self.dims);
        out += &self.koszul.text();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TateViolationFile {
    pub condition: String,
    pub l: i64,
    pub w: i64,
    pub dim: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub l_min: i64,
    pub l_max: i64,
    pub w_min: i64,
    pub w_max: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TateCheckReport {
    pub passed: bool,
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    pub bs: bool,
    pub violations: Vec<TateViolationFile>,
    pub checked_window: Window,
}

impl TateCheckReport {
    pub fn new(r: &TateReport) -> Self {
        let (l_min, l_max, w_min, w_max) = r.window;
        TateCheckReport {
            passed: r.passed(),
            cond1: r.cond1,
            cond2: r.cond2,
            cond3: r.cond3,
            bs: r.bs,
            violations: r
                .violations
                .iter()
                .map(|v| TateViolationFile {
                    condition: v.condition.label().to_string(),
                    l: v.l,
                    w: v.w,
                    dim: v.dim,
                })
                .collect(),
            checked_window: Window {
                l_min,
                l_max,
                w_min,
                w_max,
            },
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for v in &self.violations {
            writeln!(out, "{} ({},{}) dim={}", v.condition, v.l, v.w, v.dim).unwrap();
        }
        let mark = |ok: bool| if ok { "pass" } else { "FAIL" };
        writeln!(
            out,
            "COND1 {}  COND2 {}  COND3 {}  BS {}",
            mark(self.cond1),
            mark(self.cond2),
            mark(self.cond3),
            mark(self.bs)
        )
        .unwrap();
        let w = self.checked_window;
        writeln!(
            out,
            "checked window: l in [{}, {}], w in [{}, {}]; no nonzero entries outside",
            w.l_min, w.l_max, w.w_min, w.w_max
        )
        .unwrap();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingViolationFile {
    pub l: i64,
    pub w: i64,
    pub dim: u64,
    pub rules: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishCheckReport {
    pub d: u64,
    pub passed: bool,
    pub violations: Vec<VanishingViolationFile>,
}

impl VanishCheckReport {
    pub fn new(r: &VanishingReport) -> Self {
        VanishCheckReport {
            d: r.d,
            passed: r.passed(),
            violations: r
                .violations
                .iter()
                .map(|v| VanishingViolationFile {
                    l: v.l,
                    w: v.w,
                    dim: v.dim,
                    rules: v.rules.iter().map(|r| r.label().to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for v in &self.violations {
            writeln!(out, "VANISH ({},{}) dim={} [{}]", v.l, v.w, v.dim, v.rules.join(", ")).unwrap();
        }
        writeln!(
            out,
            "vanishing ranges for d={}: {}",
            self.d,
            if self.passed { "pass" } else { "FAIL" }
        )
        .unwrap();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertMismatch {
    pub degree: usize,
    pub table: u64,
    pub algebra: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictReport {
    pub max_degree: usize,
    pub predicted: bool,
    pub off_diagonal: Vec<HomEntry>,
    pub hilbert_mismatch: Option<HilbertMismatch>,
    pub koszul: Option<KoszulReport>,
}

impl PredictReport {
    pub fn new(p: &HeartPrediction) -> Self {
        PredictReport {
            max_degree: p.max_degree,
            predicted: p.predicted(),
            off_diagonal: p
                .off_diagonal
                .iter()
                .map(|&((l, w), dim)| HomEntry { l, w, dim })
                .collect(),
            hilbert_mismatch: None,
            koszul: p.koszul.as_ref().map(KoszulReport::new),
        }
    }

    pub fn mismatch(max_degree: usize, m: HilbertMismatch) -> Self {
        PredictReport {
            max_degree,
            predicted: false,
            off_diagonal: Vec::new(),
            hilbert_mismatch: Some(m),
            koszul: None,
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for e in &self.off_diagonal {
            writeln!(out, "OFFDIAG ({},{}) dim={}", e.l, e.w, e.dim).unwrap();
        }
        if let Some(m) = self.hilbert_mismatch {
            writeln!(
                out,
                "HILBERT degree {}: table has {}, algebra has {}",
                m.degree, m.table, m.algebra
            )
            .unwrap();
        }
        if let Some(k) = &self.koszul {
            out += &k.text();
        }
        if self.predicted {
            writeln!(out, "equivalence predicted up to degree {}", self.max_degree).unwrap();
        } else {
            writeln!(out, "equivalence NOT predicted up to degree {}", self.max_degree).unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShuffleSummary {
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub commutativity_failures: usize,
    pub associativity_failures: usize,
    pub unit_failures: usize,
    pub bialgebra_failures: usize,
    pub counit_failures: usize,
}

impl ShuffleSummary {
    pub fn new(r: &ShuffleAxiomReport) -> Self {
        ShuffleSummary {
            pairs_checked: r.pairs_checked,
            triples_checked: r.triples_checked,
            commutativity_failures: r.commutativity_failures.len(),
            associativity_failures: r.associativity_failures.len(),
            unit_failures: r.unit_failures.len(),
            bialgebra_failures: r.bialgebra_failures.len(),
            counit_failures: r.counit_failures.len(),
        }
    }
}

/// Primitive dimensions in degrees `1..=max_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveDims {
    pub tensor: Vec<usize>,
    pub divided_power: Vec<usize>,
    pub quadratic: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfReport {
    pub dim: usize,
    pub max_length: usize,
    pub passed: bool,
    pub shuffle: ShuffleSummary,
    pub primitives: PrimitiveDims,
    pub primitives_in_degree_one: bool,
}

impl HopfReport {
    pub fn text(&self) -> String {
        let s = &self.shuffle;
        let mut out = format!(
            "shuffle axioms over {} letters, total length <= {}: {} pairs, {} triples\n",
            self.dim, self.max_length, s.pairs_checked, s.triples_checked
        );
        writeln!(
            out,
            "failures: commutativity {} associativity {} unit {} bialgebra {} counit {}",
            s.commutativity_failures,
            s.associativity_failures,
            s.unit_failures,
            s.bialgebra_failures,
            s.counit_failures
        )
        .unwrap();
        let shifted = |v: &[usize]| {
            let mut cells = vec![String::from("-")];
            cells.extend(v.iter().map(ToString::to_string));
            cells
        };
        out += &degree_table("Prim T^c", &shifted(&self.primitives.tensor));
        out += &degree_table("Prim Gamma", &shifted(&self.primitives.divided_power));
        if let Some(q) = &self.primitives.quadratic {
            out += &degree_table("Prim C", &shifted(q));
        }
        writeln!(out, "{}", if self.passed { "pass" } else { "FAIL" }).unwrap();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GmgaFile {
    pub max_degree: usize,
    pub passed: bool,
    pub divided_power_dims: Vec<usize>,
    pub monomial_counts: Vec<usize>,
    pub products_checked: usize,
    pub first_mismatch: Option<[usize; 2]>,
}

impl GmgaFile {
    pub fn new(r: &GmgaReport) -> Self {
        GmgaFile {
            max_degree: r.max_degree,
            passed: r.passed(),
            divided_power_dims: r.divided_power_dims.clone(),
            monomial_counts: r.monomial_counts.clone(),
            products_checked: r.products_checked,
            first_mismatch: r.first_mismatch.map(|(a, b)| [a, b]),
        }
    }

    pub fn text(&self) -> String {
        let mut out = dims_table("Gamma", &self.divided_power_dims);
        out += &dims_table("y-monomials", &self.monomial_counts);
        writeln!(out, "{} products compared", self.products_checked).unwrap();
        match self.first_mismatch {
            None if self.passed => writeln!(out, "pass").unwrap(),
            None => writeln!(out, "FAIL: dimensions differ").unwrap(),
            Some([a, b]) => writeln!(out, "FAIL: gamma_{a} * gamma_{b}").unwrap(),
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationFile {
    pub passed: bool,
    pub weight_failures: Vec<usize>,
    pub counit_failures: Vec<usize>,
    pub coassociativity_failures: Vec<[usize; 2]>,
    pub membership_failures: Vec<[usize; 2]>,
}

impl ValidationFile {
    pub fn new(r: &ComoduleReport) -> Self {
        let pairs = |v: &[(usize, usize)]| v.iter().map(|&(a, b)| [a, b]).collect();
        ValidationFile {
            passed: r.passed(),
            weight_failures: r.weight_failures.clone(),
            counit_failures: r.counit_failures.clone(),
            coassociativity_failures: pairs(&r.coassociativity_failures),
            membership_failures: pairs(&r.membership_failures),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerFile {
    pub weight: i64,
    pub basis: Vec<String>,
    pub closed: bool,
    pub quotient_trivial: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberEntry {
    pub weight: i64,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnipotenceFailure {
    pub transition: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComoduleCheckReport {
    pub passed: bool,
    pub dim: usize,
    pub validation: ValidationFile,
    pub unipotent: bool,
    pub unipotence_failures: Vec<UnipotenceFailure>,
    /// Present when validation passed.
    pub filtration: Option<Vec<LayerFile>>,
    pub fiber: Option<Vec<FiberEntry>>,
    /// The tensor product, when two comodules were given.
    pub tensor: Option<ComoduleFile>,
}

impl ComoduleCheckReport {
    pub fn new(
        m: &GradedComodule,
        validation: &ComoduleReport,
        unipotence: &UnipotenceReport,
        filtration: Option<&WeightFiltration>,
        fiber: Option<Vec<FiberEntry>>,
    ) -> Self {
        let filtration = filtration.map(|f| {
            f.layers
                .iter()
                .map(|l| LayerFile {
                    weight: l.weight,
                    basis: l.basis.iter().map(|&i| m.basis[i].label.clone()).collect(),
                    closed: l.closed,
                    quotient_trivial: l.quotient_trivial,
                })
                .collect::<Vec<_>>()
        });
        let sound = filtration
            .as_ref()
            .is_some_and(|layers| layers.iter().all(|l| l.closed && l.quotient_trivial));
        ComoduleCheckReport {
            passed: validation.passed() && unipotence.passed() && sound,
            dim: m.dim(),
            validation: ValidationFile::new(validation),
            unipotent: unipotence.passed(),
            unipotence_failures: unipotence
                .failures
                .iter()
                .map(|(k, reason)| UnipotenceFailure {
                    transition: *k,
                    reason: reason.clone(),
                })
                .collect(),
            filtration,
            fiber,
            tensor: None,
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        if self.tensor.is_some() {
            writeln!(out, "tensor product of dimension {}", self.dim).unwrap();
        }
        let v = &self.validation;
        for k in &v.weight_failures {
            writeln!(out, "WEIGHT transition {k}").unwrap();
        }
        for k in &v.counit_failures {
            writeln!(out, "COUNIT transition {k}").unwrap();
        }
        for [f, t] in &v.coassociativity_failures {
            writeln!(out, "COASSOC {f} -> {t}").unwrap();
        }
        for [f, t] in &v.membership_failures {
            writeln!(out, "MEMBERSHIP {f} -> {t}").unwrap();
        }
        for u in &self.unipotence_failures {
            writeln!(out, "UNIPOTENCE transition {}: {}", u.transition, u.reason).unwrap();
        }
        if let Some(layers) = &self.filtration {
            for l in layers {
                writeln!(
                    out,
                    "W<={}: {} [{}]{}{}",
                    l.weight,
                    l.basis.len(),
                    l.basis.join(", "),
                    if l.closed { "" } else { " NOT CLOSED" },
                    if l.quotient_trivial { "" } else { " NONTRIVIAL QUOTIENT" }
                )
                .unwrap();
            }
        }
        if let Some(fiber) = &self.fiber {
            let cells: Vec<String> = fiber.iter().map(|e| format!("{}:{}", e.weight, e.dim)).collect();
            writeln!(out, "fiber: {{{}}}", cells.join(", ")).unwrap();
        }
        writeln!(out, "{}", if self.passed { "pass" } else { "FAIL" }).unwrap();
        out
    }
}
