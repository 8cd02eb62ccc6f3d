//! Serializable results of the command-line operations. Every report is plain
//! data (vectors and strings, no hash maps), so its JSON form is deterministic
//! and parses back to an equal value.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::hochschild::{Complex, ComplexSpec, PairConstraint, Variant};
use crate::multimodule::{ActionTag, ModuleSpec};
use crate::ordering::{ActionClassReport, NncmoResult, Witness};
use crate::simplicial::{SimplexRef, SimplicialSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Validate(ValidateReport),
    Nncmo(NncmoReport),
    Cyclic(CyclicReport),
    Actions(ActionsReport),
    Homology(HomologyReport),
    Cohomology(HomologyReport),
    PairConstraints(PairReport),
}

impl Report {
    /// 0 for a positive outcome, 2 for a negative verdict or a refusal.
    pub fn exit_code(&self) -> i32 {
        let negative = match self {
            Report::Nncmo(r) => !r.admits,
            Report::Cyclic(r) => r.witness.is_some(),
            Report::Homology(r) | Report::Cohomology(r) => r.refusal.is_some(),
            Report::Validate(_) | Report::Actions(_) | Report::PairConstraints(_) => false,
        };
        if negative {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            file: "<json>".into(),
            line: e.line(),
            message: e.to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexInfo {
    pub name: String,
    pub dim: usize,
    pub faces: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraInfo {
    pub field: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub commutative: bool,
    pub center_dim: usize,
}

impl AlgebraInfo {
    pub fn of(alg: &AlgebraSpec) -> AlgebraInfo {
        AlgebraInfo {
            field: alg.field().to_string(),
            dim: alg.dim(),
            basis: alg.basis_names().to_vec(),
            commutative: alg.is_commutative(),
            center_dim: alg.center().len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleInfo {
    pub dim: usize,
    pub actions: Vec<(String, ActionTag)>,
}

impl ModuleInfo {
    pub fn of(m: &ModuleSpec) -> ModuleInfo {
        ModuleInfo { dim: m.dim(), actions: m.actions().iter().map(|a| (a.name.clone(), a.tag)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub input: String,
    pub dimension: usize,
    pub nondegenerate: Vec<SimplexInfo>,
    pub cutoff: usize,
    pub level_sizes: Vec<usize>,
    pub algebra: Option<AlgebraInfo>,
    pub module: Option<ModuleInfo>,
}

impl ValidateReport {
    pub fn new(input: &str, x: &SimplicialSet, cutoff: usize) -> ValidateReport {
        ValidateReport {
            input: input.to_string(),
            dimension: x.dimension(),
            nondegenerate: x
                .nondegenerate()
                .iter()
                .map(|s| SimplexInfo {
                    name: s.name.clone(),
                    dim: s.dim,
                    faces: s.faces.iter().map(|f| face_text(x, f)).collect(),
                })
                .collect(),
            cutoff,
            level_sizes: x.materialize(cutoff).iter().map(|l| l.simplices.len()).collect(),
            algebra: None,
            module: None,
        }
    }
}

/// A face as written in input files: `s1 s0 v0`.
fn face_text(x: &SimplicialSet, s: &SimplexRef) -> String {
    let mut parts: Vec<String> = s.word.iter().map(|j| format!("s{j}")).collect();
    parts.push(x.simplex(s.base).name.clone());
    parts.join(" ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelOrder {
    pub level: usize,
    pub simplices: Vec<String>,
}

fn level_orders(x: &SimplicialSet, levels: &[Vec<SimplexRef>]) -> Vec<LevelOrder> {
    levels
        .iter()
        .enumerate()
        .map(|(level, l)| LevelOrder { level, simplices: l.iter().map(|s| x.label(s)).collect() })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NncmoReport {
    pub input: String,
    pub cutoff: usize,
    pub dimension: usize,
    /// `classify`, `search` or `oracle`.
    pub method: String,
    pub admits: bool,
    /// Number of fibers given an order when the set admits one.
    pub ordered_fibers: usize,
    pub witness: Option<Witness>,
}

impl NncmoReport {
    pub fn new(input: &str, x: &SimplicialSet, cutoff: usize, method: &str, result: &NncmoResult) -> NncmoReport {
        let (admits, ordered_fibers, witness) = match result {
            NncmoResult::Admits(a) => (true, a.fibers().count(), None),
            NncmoResult::Fails(w) => (false, 0, Some(w.clone())),
        };
        NncmoReport {
            input: input.to_string(),
            cutoff,
            dimension: x.dimension(),
            method: method.to_string(),
            admits,
            ordered_fibers,
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicReport {
    pub input: String,
    pub cutoff: usize,
    pub levels: Vec<LevelOrder>,
    /// Present when no ordering exists because the set has dimension two or
    /// more.
    pub witness: Option<Witness>,
}

impl CyclicReport {
    pub fn new(input: &str, x: &SimplicialSet, cutoff: usize, levels: &[Vec<SimplexRef>]) -> CyclicReport {
        CyclicReport { input: input.to_string(), cutoff, levels: level_orders(x, levels), witness: None }
    }

    pub fn failed(input: &str, cutoff: usize, witness: Witness) -> CyclicReport {
        CyclicReport { input: input.to_string(), cutoff, levels: Vec::new(), witness: Some(witness) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionsReport {
    pub input: String,
    pub classes: ActionClassReport,
}

/// Which module action a class of sites was given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionUse {
    pub class: usize,
    pub kind: String,
    pub action: String,
    pub example_sites: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub degree: usize,
    pub dim: usize,
    pub betti: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refusal {
    pub reason: String,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub input: String,
    pub algebra: AlgebraInfo,
    pub module: ModuleInfo,
    pub variant: Variant,
    pub normalized: bool,
    pub max_degree: usize,
    pub actions: Vec<ActionUse>,
    pub table: Vec<DegreeRow>,
    pub caveats: Vec<String>,
    pub refusal: Option<Refusal>,
}

impl HomologyReport {
    fn base(input: &str, spec: &ComplexSpec) -> HomologyReport {
        let actions = spec
            .classes
            .classes
            .iter()
            .map(|c| ActionUse {
                class: c.id,
                kind: c.kind.to_string(),
                action: spec.action_map.get(&c.id).cloned().unwrap_or_default(),
                example_sites: c.sites.iter().take(3).map(|s| format!("{} d{}", s.label, s.face)).collect(),
            })
            .collect();
        HomologyReport {
            input: input.to_string(),
            algebra: AlgebraInfo::of(spec.algebra()),
            module: ModuleInfo::of(&spec.module),
            variant: spec.variant,
            normalized: spec.normalized,
            max_degree: spec.max_degree,
            actions,
            table: Vec::new(),
            caveats: Vec::new(),
            refusal: None,
        }
    }

    pub fn computed(input: &str, spec: &ComplexSpec, complex: &Complex) -> HomologyReport {
        let mut r = HomologyReport::base(input, spec);
        r.table = (0..complex.dims.len())
            .map(|n| DegreeRow { degree: n, dim: complex.dims[n], betti: complex.betti[n] })
            .collect();
        r.caveats = complex.caveats.clone();
        r
    }

    pub fn refused(input: &str, spec: &ComplexSpec, reason: String, witness: Option<Witness>) -> HomologyReport {
        let mut r = HomologyReport::base(input, spec);
        r.refusal = Some(Refusal { reason, witness });
        r
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub x: String,
    pub y: String,
    pub x_dimension: usize,
    pub y_dimension: usize,
    pub constraint: PairConstraint,
    pub explanation: String,
}

// ---- human-readable output ----

fn write_witness(f: &mut fmt::Formatter<'_>, w: &Witness) -> fmt::Result {
    writeln!(f, "witness at level {}: fiber over {}", w.level, w.target_label)?;
    writeln!(f, "  simplices: {}", w.fiber_labels.join(", "))?;
    writeln!(
        f,
        "  factorizations: {} = {}",
        crate::ordering::composition_name(&w.factorization_a),
        crate::ordering::composition_name(&w.factorization_b)
    )?;
    writeln!(f, "  {}", w.explanation)
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Report::Validate(r) => {
                writeln!(f, "{}: valid, dimension {}", r.input, r.dimension)?;
                for s in &r.nondegenerate {
                    writeln!(f, "  {} dim={} faces=[{}]", s.name, s.dim, s.faces.join(", "))?;
                }
                let sizes: Vec<String> = r.level_sizes.iter().map(ToString::to_string).collect();
                writeln!(f, "level sizes 0..={}: {}", r.cutoff, sizes.join(" "))?;
                if let Some(a) = &r.algebra {
                    writeln!(
                        f,
                        "algebra over {}: dim {}, basis {}, {}, center dim {}",
                        a.field,
                        a.dim,
                        a.basis.join(" "),
                        if a.commutative { "commutative" } else { "noncommutative" },
                        a.center_dim
                    )?;
                }
                if let Some(m) = &r.module {
                    let acts: Vec<String> = m.actions.iter().map(|(n, t)| format!("{n} ({t})")).collect();
                    writeln!(f, "module: dim {}, actions {}", m.dim, acts.join(", "))?;
                }
                Ok(())
            }
            Report::Nncmo(r) => {
                if r.admits {
                    writeln!(
                        f,
                        "{}: admits an NNCMO up to level {} ({} fibers ordered, {})",
                        r.input, r.cutoff, r.ordered_fibers, r.method
                    )
                } else {
                    writeln!(f, "{}: no NNCMO up to level {} ({})", r.input, r.cutoff, r.method)?;
                    match &r.witness {
                        Some(w) => write_witness(f, w),
                        None => Ok(()),
                    }
                }
            }
            Report::Cyclic(r) => {
                if let Some(w) = &r.witness {
                    writeln!(f, "{}: no cyclic ordering (dimension at least two)", r.input)?;
                    return write_witness(f, w);
                }
                for l in &r.levels {
                    let body = if l.simplices.is_empty() { "(basepoint only)".to_string() } else { l.simplices.join(" < ") };
                    writeln!(f, "level {}: {body}", l.level)?;
                }
                Ok(())
            }
            Report::Actions(r) => {
                writeln!(f, "{}: {} action classes up to level {}", r.input, r.classes.classes.len(), r.classes.cutoff)?;
                for c in &r.classes.classes {
                    let sites: Vec<String> = c.sites.iter().take(4).map(|s| format!("{} d{}", s.label, s.face)).collect();
                    let more = if c.sites.len() > 4 { format!(", ... ({} sites)", c.sites.len()) } else { String::new() };
                    writeln!(f, "  class {} {}: {}{more}", c.id, c.kind, sites.join(", "))?;
                }
                for n in &r.classes.notes {
                    writeln!(f, "note: {n}")?;
                }
                Ok(())
            }
            Report::Homology(r) | Report::Cohomology(r) => {
                let name = match r.variant {
                    Variant::Chain => "homology",
                    Variant::Cochain => "cohomology",
                };
                if let Some(refusal) = &r.refusal {
                    writeln!(f, "{}: {name} refused: {}", r.input, refusal.reason)?;
                    return match &refusal.witness {
                        Some(w) => write_witness(f, w),
                        None => Ok(()),
                    };
                }
                writeln!(
                    f,
                    "{}: {name}{} over {} (algebra dim {}, module dim {})",
                    r.input,
                    if r.normalized { " (normalized)" } else { "" },
                    r.algebra.field,
                    r.algebra.dim,
                    r.module.dim
                )?;
                for a in &r.actions {
                    writeln!(f, "  class {} ({}) -> {}", a.class, a.kind, a.action)?;
                }
                writeln!(f, "{:>6} {:>8} {:>6}", "degree", "dim", "betti")?;
                for row in &r.table {
                    writeln!(f, "{:>6} {:>8} {:>6}", row.degree, row.dim, row.betti)?;
                }
                for c in &r.caveats {
                    writeln!(f, "note: {c}")?;
                }
                Ok(())
            }
            Report::PairConstraints(r) => {
                writeln!(f, "{} (dim {}) inside {} (dim {}): {}", r.x, r.x_dimension, r.y, r.y_dimension, r.constraint)?;
                writeln!(f, "  {}", r.explanation)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::build_complex;
    use crate::ordering::{classify_actions, classify_nncmo, cyclic_ordering};
    use crate::scalar::Field;

    fn roundtrip(r: &Report) {
        let json = r.to_json();
        assert_eq!(&Report::from_json(&json).unwrap(), r);
        assert_eq!(Report::from_json(&json).unwrap().to_json(), json);
    }

    #[test]
    fn reports_round_trip() {
        let x = SimplicialSet::sphere2();
        let nncmo = classify_nncmo(&x, 4).unwrap();
        roundtrip(&Report::Nncmo(NncmoReport::new("sphere2", &x, 4, "classify", &nncmo)));
        let c = SimplicialSet::circle();
        roundtrip(&Report::Cyclic(CyclicReport::new("circle", &c, 4, &cyclic_ordering(&c, 4).unwrap())));
        roundtrip(&Report::Actions(ActionsReport { input: "circle".into(), classes: classify_actions(&c, 3).unwrap() }));
        let mut v = ValidateReport::new("sphere2", &x, 3);
        v.algebra = Some(AlgebraInfo::of(&AlgebraSpec::upper_tri(Field::Rationals, 2).unwrap()));
        roundtrip(&Report::Validate(v));
        let alg = AlgebraSpec::upper_tri(Field::Rationals, 2).unwrap();
        let m = ModuleSpec::regular_bimodule(&alg).unwrap();
        let spec = ComplexSpec::auto(&c, &m, Variant::Cochain, 3).unwrap();
        let complex = build_complex(&spec).unwrap();
        let r = Report::Cohomology(HomologyReport::computed("circle", &spec, &complex));
        assert_eq!(r.exit_code(), 0);
        roundtrip(&r);
    }

    #[test]
    fn negative_verdicts_exit_with_two() {
        let x = SimplicialSet::sphere2();
        let r = Report::Nncmo(NncmoReport::new("s", &x, 4, "classify", &classify_nncmo(&x, 4).unwrap()));
        assert_eq!(r.exit_code(), 2);
        assert!(r.to_string().contains("[00112]"));
    }
}
