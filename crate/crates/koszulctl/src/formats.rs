//! JSON file formats and their conversion to core types.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use koszul_core::hopf::Coalgebra;
use koszul_core::milnor::FieldSpec;
use koszul_core::tatecheck::HomTable;
use koszul_core::weight::{BasisElement, GradedComodule, Transition};
use koszul_core::{QuadraticPresentation, TorTable};

use crate::error::CliError;

/// `{"dim": 2, "generators": ["x","y"], "relations": [[[0,1],[1,0]], …]}`
///
/// Each relation is a sum of words `x_i x_j`. `generators` is optional and
/// defaults to `x1, …, xd`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    pub relations: Vec<Vec<[usize; 2]>>,
}

impl PresentationFile {
    pub fn from_presentation(q: &QuadraticPresentation) -> Self {
        PresentationFile {
            dim: q.dim_v(),
            generators: Some(q.generators().to_vec()),
            relations: q
                .relation_terms()
                .into_iter()
                .map(|rel| rel.into_iter().map(|(i, j)| [i, j]).collect())
                .collect(),
        }
    }

    pub fn to_presentation(&self) -> Result<QuadraticPresentation, CliError> {
        let generators = match &self.generators {
            Some(g) if g.len() != self.dim => {
                return Err(CliError::schema(format!(
                    "\"generators\" has {} labels but \"dim\" is {}",
                    g.len(),
                    self.dim
                )))
            }
            Some(g) => g.clone(),
            None => (1..=self.dim).map(|i| format!("x{i}")).collect(),
        };
        let terms: Vec<Vec<(usize, usize)>> = self
            .relations
            .iter()
            .map(|rel| rel.iter().map(|&[i, j]| (i, j)).collect())
            .collect();
        QuadraticPresentation::from_labelled_terms(generators, &terms)
            .map_err(|e| CliError::schema(format!("relations: {e}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorEntry {
    pub i: usize,
    pub j: usize,
    pub dim: usize,
}

/// `{"entries": [{"i": 0, "j": 0, "dim": 1}, …]}`, sorted by `(j, i)`,
/// nonzero entries only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorTableFile {
    pub entries: Vec<TorEntry>,
}

impl TorTableFile {
    pub fn from_table(t: &TorTable) -> Self {
        TorTableFile {
            entries: t
                .sorted_entries()
                .into_iter()
                .map(|(i, j, dim)| TorEntry { i, j, dim })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomEntry {
    pub l: i64,
    pub w: i64,
    pub dim: u64,
}

/// `{"d": 1, "entries": [{"l": 0, "w": 0, "dim": 1}, …]}`. Key `(l, w)` is
/// `dim [1, Σ^l 1(w)]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomTableFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub entries: Vec<HomEntry>,
}

impl HomTableFile {
    pub fn to_table(&self) -> Result<HomTable, CliError> {
        let mut table = HomTable {
            d: self.d,
            source: self.source.clone(),
            ..HomTable::default()
        };
        for e in &self.entries {
            if table.entries.insert((e.l, e.w), e.dim).is_some() {
                return Err(CliError::schema(format!("entry ({},{}) listed twice", e.l, e.w)));
            }
        }
        Ok(table)
    }

    pub fn from_table(t: &HomTable) -> Self {
        HomTableFile {
            d: t.d,
            source: t.source.clone(),
            entries: t.entries.iter().map(|(&(l, w), &dim)| HomEntry { l, w, dim }).collect(),
        }
    }
}

/// `{"classes": ["a","b"], "steinberg": [[0,1], …]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MilnorFile {
    pub classes: Vec<String>,
    pub steinberg: Vec<[usize; 2]>,
}

impl MilnorFile {
    pub fn to_spec(&self) -> Result<FieldSpec, CliError> {
        let n = self.classes.len();
        if let Some([i, j]) = self.steinberg.iter().find(|[i, j]| *i >= n || *j >= n) {
            return Err(CliError::schema(format!(
                "steinberg pair [{i},{j}] refers to a class beyond the {n} listed"
            )));
        }
        Ok(FieldSpec::Explicit {
            classes: self.classes.clone(),
            steinberg: self.steinberg.iter().map(|&[i, j]| (i, j)).collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoalgebraKind {
    Tensor,
    DividedPower,
    Quadratic,
}

/// `{"kind": "tensor", "dim": 1}`, `{"kind": "divided_power", "dim": 2}` or
/// `{"kind": "quadratic", "presentation": {…}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoalgebraFile {
    pub kind: CoalgebraKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<PresentationFile>,
}

impl CoalgebraFile {
    pub fn from_coalgebra(c: &Coalgebra) -> Self {
        match c {
            Coalgebra::Tensor { dim } => CoalgebraFile {
                kind: CoalgebraKind::Tensor,
                dim: Some(*dim),
                presentation: None,
            },
            Coalgebra::DividedPower { dim } => CoalgebraFile {
                kind: CoalgebraKind::DividedPower,
                dim: Some(*dim),
                presentation: None,
            },
            Coalgebra::Quadratic(q) => CoalgebraFile {
                kind: CoalgebraKind::Quadratic,
                dim: Some(q.dim_v()),
                presentation: Some(PresentationFile::from_presentation(q)),
            },
        }
    }

    pub fn to_coalgebra(&self) -> Result<Coalgebra, CliError> {
        let dim = || {
            self.dim
                .ok_or_else(|| CliError::schema("coalgebra needs \"dim\"".to_string()))
        };
        match self.kind {
            CoalgebraKind::Tensor => Ok(Coalgebra::Tensor { dim: dim()? }),
            CoalgebraKind::DividedPower => Ok(Coalgebra::DividedPower { dim: dim()? }),
            CoalgebraKind::Quadratic => {
                let p = self
                    .presentation
                    .as_ref()
                    .ok_or_else(|| CliError::schema("quadratic coalgebra needs \"presentation\"".to_string()))?;
                if let Some(d) = self.dim {
                    if d != p.dim {
                        return Err(CliError::schema(format!(
                            "coalgebra \"dim\" is {d} but its presentation has {}",
                            p.dim
                        )));
                    }
                }
                Ok(Coalgebra::Quadratic(p.to_presentation()?))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisFile {
    pub label: String,
    pub weight: i64,
}

/// For `divided_power` coalgebras `word` is an exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoactionFile {
    pub from: usize,
    pub to: usize,
    pub word: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComoduleFile {
    pub coalgebra: CoalgebraFile,
    pub basis: Vec<BasisFile>,
    pub coaction: Vec<CoactionFile>,
}

impl ComoduleFile {
    pub fn to_comodule(&self) -> Result<GradedComodule, CliError> {
        let n = self.basis.len();
        let labels: BTreeSet<&str> = self.basis.iter().map(|b| b.label.as_str()).collect();
        if labels.len() != n {
            return Err(CliError::schema("basis labels must be distinct".to_string()));
        }
        if let Some((k, c)) = self.coaction.iter().enumerate().find(|(_, c)| c.from >= n || c.to >= n) {
            return Err(CliError::schema(format!(
                "coaction entry {k} ({} -> {}) refers to a basis element beyond the {n} listed",
                c.from, c.to
            )));
        }
        Ok(GradedComodule::new(
            self.coalgebra.to_coalgebra()?,
            self.basis
                .iter()
                .map(|b| BasisElement {
                    label: b.label.clone(),
                    weight: b.weight,
                })
                .collect(),
            self.coaction
                .iter()
                .map(|c| Transition {
                    from: c.from,
                    to: c.to,
                    key: c.word.clone(),
                })
                .collect(),
        ))
    }

    pub fn from_comodule(m: &GradedComodule) -> Self {
        ComoduleFile {
            coalgebra: CoalgebraFile::from_coalgebra(&m.coalgebra),
            basis: m
                .basis
                .iter()
                .map(|b| BasisFile {
                    label: b.label.clone(),
                    weight: b.weight,
                })
                .collect(),
            coaction: m
                .transitions
                .iter()
                .map(|t| CoactionFile {
                    from: t.from,
                    to: t.to,
                    word: t.key.clone(),
                })
                .collect(),
        }
    }
}
