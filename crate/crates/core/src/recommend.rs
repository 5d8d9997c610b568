//! Boolean constraint rules mapping a problem to a platform recommendation.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::complexity::{speedup, AlgebraError, GrowthClass, Speedup, SpeedupType};
use crate::problems::{CaseStudy, Problem, ResourceProfile};

pub const HYBRID_QUANTUM_MESSAGE: &str =
    "Quantum Computing (with hybrid architecture involving Classical Components) is a plausible choice under NISQ.";
pub const CLASSICAL_OR_QUANTUM_MESSAGE: &str = "Both Classical as well as Quantum Computing (with hybrid architecture) are plausible choices. Underlying computational problem for this application can be solved approximately using classical methods in polynomial time. For more accurate solutions or for computational speedups on larger instance sizes, a quantum processing unit with hybrid architecture may be a better choice.";
pub const CLASSICAL_MESSAGE: &str = "Classical Computing is Sufficient. The computational problem underlying this application has well-known classical algorithm(s) that provide exact solutions.";
pub const FALLBACK_MESSAGE: &str =
    "No platform recommendation could be derived for this application; consult an algorithm design expert.";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Case {
    HybridQuantum,
    ClassicalOrQuantum,
    Classical,
    FallbackExpert,
}

impl Case {
    pub fn message(self) -> &'static str {
        match self {
            Case::HybridQuantum => HYBRID_QUANTUM_MESSAGE,
            Case::ClassicalOrQuantum => CLASSICAL_OR_QUANTUM_MESSAGE,
            Case::Classical => CLASSICAL_MESSAGE,
            Case::FallbackExpert => FALLBACK_MESSAGE,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::HybridQuantum => "HYBRID_QUANTUM",
            Case::ClassicalOrQuantum => "CLASSICAL_OR_QUANTUM",
            Case::Classical => "CLASSICAL",
            Case::FallbackExpert => "FALLBACK_EXPERT",
        })
    }
}

/// C1..C10, indexed from zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ConstraintVector(pub [bool; 10]);

impl ConstraintVector {
    pub fn derive(kind: SpeedupType, classical: GrowthClass, profile: &ResourceProfile) -> Self {
        ConstraintVector([
            kind == SpeedupType::ExpPlus,
            profile.cpu_bound,
            profile.memory_bound,
            profile.intermediate_memory_high,
            kind == SpeedupType::PolyPlus,
            kind == SpeedupType::PolyMinus,
            classical < GrowthClass::Exponential,
            classical <= GrowthClass::Polynomial,
            profile.io_bound,
            profile.io_volume_high,
        ])
    }

    /// `c(1)` is C1.
    pub fn c(&self, i: usize) -> bool {
        self.0[i - 1]
    }
}

impl Serialize for ConstraintVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(10))?;
        for (i, v) in self.0.iter().enumerate() {
            map.serialize_entry(&format!("C{}", i + 1), v)?;
        }
        map.end()
    }
}

/// Conjunctive clauses of the three case formulas, in evaluation order.
pub const CLAUSES: [(Case, &str); 6] = [
    (Case::HybridQuantum, "C1 AND C2"),
    (Case::HybridQuantum, "C1 AND C3 AND C4"),
    (Case::ClassicalOrQuantum, "(C5 OR C6) AND C7 AND C2"),
    (Case::ClassicalOrQuantum, "(C5 OR C6) AND C7 AND C3 AND C4"),
    (Case::Classical, "C6 AND C8 AND C9"),
    (Case::Classical, "C6 AND C8 AND C3 AND C10"),
];

fn clause_holds(index: usize, c: &ConstraintVector) -> bool {
    let c = |i| c.c(i);
    match index {
        0 => c(1) && c(2),
        1 => c(1) && c(3) && c(4),
        2 => (c(5) || c(6)) && c(7) && c(2),
        3 => (c(5) || c(6)) && c(7) && c(3) && c(4),
        4 => c(6) && c(8) && c(9),
        5 => c(6) && c(8) && c(3) && c(10),
        _ => false,
    }
}

/// First satisfied clause decides; none gives the expert fallback.
pub fn classify_constraints(c: &ConstraintVector) -> (Case, Option<&'static str>) {
    (0..CLAUSES.len())
        .find(|&i| clause_holds(i, c))
        .map(|i| (CLAUSES[i].0, Some(CLAUSES[i].1)))
        .unwrap_or((Case::FallbackExpert, None))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstraintTrace {
    #[serde(flatten)]
    pub constraints: ConstraintVector,
    pub fired_clause: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Recommendation {
    pub case: Case,
    pub message: String,
    pub resource_estimate: Option<String>,
    pub case_studies: Vec<CaseStudy>,
    pub constraint_trace: Option<ConstraintTrace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Recommendation {
    pub fn fallback(note: Option<String>) -> Self {
        Recommendation {
            case: Case::FallbackExpert,
            message: FALLBACK_MESSAGE.to_string(),
            resource_estimate: None,
            case_studies: vec![],
            constraint_trace: None,
            note,
        }
    }

    pub fn from_constraints(
        constraints: ConstraintVector,
        resource_estimate: Option<&str>,
        case_studies: &[CaseStudy],
    ) -> Self {
        let (case, fired_clause) = classify_constraints(&constraints);
        let mut message = case.message().to_string();
        if case == Case::Classical {
            if let Some(study) = case_studies.first() {
                message.push_str(&format!(" Here's an example of how it was solved in {}.", study.context));
            }
        }
        let assets = case != Case::FallbackExpert;
        Recommendation {
            case,
            message,
            resource_estimate: resource_estimate.filter(|_| assets).map(str::to_string),
            case_studies: if assets { case_studies.to_vec() } else { vec![] },
            constraint_trace: Some(ConstraintTrace { constraints, fired_clause }),
            note: None,
        }
    }
}

pub fn derive_constraints(problem: &Problem) -> Result<(ConstraintVector, Speedup), AlgebraError> {
    let s = speedup(&problem.classical, &problem.quantum)?;
    let c = ConstraintVector::derive(s.kind, problem.classical.growth_class(), &problem.record.profile);
    Ok((c, s))
}

pub fn classify(problem: &Problem) -> Recommendation {
    match derive_constraints(problem) {
        Ok((c, _)) => Recommendation::from_constraints(
            c,
            problem.record.resource_estimate.as_deref(),
            &problem.record.case_studies,
        ),
        Err(e) => Recommendation::fallback(Some(format!("speedup of '{}' could not be computed: {e}", problem.id()))),
    }
}
