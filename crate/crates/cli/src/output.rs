//! Structured command outputs and their JSON/text rendering.

use anyhow::Result;
use serde::{Serialize, Serializer};
use spinal_core::covers::{CoversError, SearchBounds};
use spinal_core::obstructions::{
    find_planar_torsion, is_lefschetz_amenable, is_symmetric, is_uniform, AmenabilityOutcome,
    BranchedWitness, ExactnessFlags, SymmetryOutcome, SymmetryWitness, TorsionWitness,
    UniformityOutcome, VerdictEntry,
};
use spinal_core::sob::{SpinalOpenBook, VertebraId};
use spinal_core::surfaces::Surface;

/// Prints JSON (pretty, trailing newline) or the given text rendering.
/// A closed stdout (e.g. piping into `head`) is not an error.
pub fn emit<T: Serialize>(json: bool, value: &T, text: impl Fn(&T) -> String) -> Result<()> {
    use std::io::Write;
    let rendered = if json {
        serde_json::to_string_pretty(value)?
    } else {
        text(value)
    };
    let mut stdout = std::io::stdout().lock();
    match writeln!(stdout, "{rendered}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

#[derive(Debug, Serialize)]
pub struct ValidateOutput {
    pub connected_components: usize,
    #[serde(flatten)]
    pub report: spinal_core::ValidationReport,
}

/// `true`, `false`, or `"bound-exceeded"` when the cover search gave up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOrBound {
    Value(bool),
    BoundExceeded,
}

impl Serialize for BoolOrBound {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            BoolOrBound::Value(b) => ser.serialize_bool(*b),
            BoolOrBound::BoundExceeded => ser.serialize_str("bound-exceeded"),
        }
    }
}

/// Per-vertebra summary of the uniform structure's covers.
#[derive(Debug, Clone, Serialize)]
pub struct CoverSummary {
    pub vertebra: VertebraId,
    pub degree: u32,
    pub branching: usize,
}

#[derive(Debug, Serialize)]
pub struct ClassifyOutput {
    pub symmetric: bool,
    pub symmetric_witness: Option<SymmetryWitness>,
    pub uniform: BoolOrBound,
    pub uniform_base: Option<Surface>,
    pub uniform_covers: Option<Vec<CoverSummary>>,
    pub amenable: BoolOrBound,
    pub amenable_witness: Option<BranchedWitness>,
    pub torsion: Option<TorsionWitness>,
    pub verdicts: Vec<VerdictEntry>,
}

pub fn classify(
    sob: &SpinalOpenBook,
    max_base_genus: u32,
    flags: &ExactnessFlags,
) -> Result<ClassifyOutput> {
    let bounds = SearchBounds::default();
    let symmetry = is_symmetric(sob)?;
    let (symmetric, symmetric_witness) = match symmetry {
        SymmetryOutcome::Symmetric { .. } => (true, None),
        SymmetryOutcome::NotSymmetric { witness } => (false, Some(witness)),
    };

    let (uniform, uniform_base, uniform_covers) = match is_uniform(sob, max_base_genus, &bounds) {
        Ok(UniformityOutcome::Uniform { base, assignments }) => (
            BoolOrBound::Value(true),
            Some(base),
            Some(
                assignments
                    .iter()
                    .map(|a| CoverSummary {
                        vertebra: a.vertebra,
                        degree: a.degree,
                        branching: a.branching,
                    })
                    .collect(),
            ),
        ),
        Ok(UniformityOutcome::NotUniform { .. }) => (BoolOrBound::Value(false), None, None),
        Err(e) if is_bound_error(&e) => (BoolOrBound::BoundExceeded, None, None),
        Err(e) => return Err(e.into()),
    };

    let (amenable, amenable_witness) = match is_lefschetz_amenable(sob, max_base_genus, &bounds) {
        Ok(AmenabilityOutcome::Amenable) => (BoolOrBound::Value(true), None),
        Ok(AmenabilityOutcome::NotAmenable {
            branched_witness, ..
        }) => (BoolOrBound::Value(false), branched_witness),
        Err(e) if is_bound_error(&e) => (BoolOrBound::BoundExceeded, None),
        Err(e) => return Err(e.into()),
    };

    let torsion = find_planar_torsion(sob, flags)?;
    let verdicts = spinal_core::obstructions::verdict(sob, flags)?;

    Ok(ClassifyOutput {
        symmetric,
        symmetric_witness,
        uniform,
        uniform_base,
        uniform_covers,
        amenable,
        amenable_witness,
        torsion,
        verdicts,
    })
}

fn is_bound_error(e: &spinal_core::obstructions::ObstructionsError) -> bool {
    matches!(
        e,
        spinal_core::obstructions::ObstructionsError::Covers(CoversError::SearchBoundExceeded(_))
    )
}

pub fn classify_text(out: &ClassifyOutput) -> String {
    let mut lines = Vec::new();
    lines.push(format!("symmetric: {}", out.symmetric));
    lines.push(format!("uniform:   {:?}", out.uniform));
    if let Some(base) = &out.uniform_base {
        lines.push(format!("  base: {base:?}"));
    }
    lines.push(format!("amenable:  {:?}", out.amenable));
    match &out.torsion {
        Some(w) => lines.push(format!(
            "torsion:   order {} at paper {} ({:?})",
            w.order, w.piece, w.separating
        )),
        None => lines.push("torsion:   none".into()),
    }
    if out.verdicts.is_empty() {
        lines.push("verdicts:  none".into());
    } else {
        for v in &out.verdicts {
            lines.push(format!("verdict:   {:?} ({})", v.verdict, v.citation));
        }
    }
    lines.join("\n")
}

#[derive(Debug, Serialize)]
pub struct LefschetzBoundary {
    pub allowable: bool,
    pub euler_total: i64,
    pub boundary: SpinalOpenBook,
}

#[derive(Debug, Serialize)]
pub struct CircleBundleVerdicts {
    pub verdicts: Vec<VerdictEntry>,
    pub notes: Vec<String>,
}

pub fn circle_bundle_text(out: &CircleBundleVerdicts) -> String {
    let mut lines: Vec<String> = out
        .verdicts
        .iter()
        .map(|v| format!("verdict: {:?} ({})", v.verdict, v.citation))
        .collect();
    for n in &out.notes {
        lines.push(format!("note: {n}"));
    }
    if lines.is_empty() {
        lines.push("no verdicts".into());
    }
    lines.join("\n")
}
