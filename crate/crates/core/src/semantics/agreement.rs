use crate::algebra::{classify, MapKind, ValueMap};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::matrix::Matrix;
use crate::semantics::eval::{entails_with, is_countervaluation, EntailOptions};

/// One entailment decided in both matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementCase {
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
    pub holds_source: bool,
    pub holds_target: bool,
    /// Whether the source countervaluation, pushed through the map, is a
    /// countervaluation in the target. `None` when the entailment holds.
    pub image_refutes: Option<bool>,
}

impl AgreementCase {
    pub fn consistent(&self) -> bool {
        self.holds_source == self.holds_target && self.image_refutes != Some(false)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AgreementReport {
    pub cases: Vec<AgreementCase>,
}

impl AgreementReport {
    pub fn all_agree(&self) -> bool {
        self.cases.iter().all(AgreementCase::consistent)
    }

    pub fn disagreements(&self) -> impl Iterator<Item = &AgreementCase> {
        self.cases.iter().filter(|c| !c.consistent())
    }
}

/// Decides every entailment of `suite` separately in `m1` and `m2`. The map
/// must be an epimorphism, which is checked first.
pub fn check_consequence_agreement(
    m1: &Matrix,
    m2: &Matrix,
    epi: &ValueMap,
    suite: &[(Vec<Formula>, Formula)],
    options: &EntailOptions,
) -> Result<AgreementReport> {
    match classify(m1, m2, epi)? {
        Some(f) if matches!(f.kind, MapKind::Epi | MapKind::Iso) => {}
        _ => {
            return Err(Error::InvalidMap(format!(
                "not an epimorphism from {} onto {}",
                m1.name(),
                m2.name()
            )))
        }
    }
    let mut report = AgreementReport::default();
    for (premises, conclusion) in suite {
        let source = entails_with(m1, premises, conclusion, options)?;
        let target = entails_with(m2, premises, conclusion, options)?;
        let image_refutes = match &source.countervaluation {
            Some(v) => Some(is_countervaluation(
                m2,
                premises,
                conclusion,
                &v.map_values(|x| epi.apply(x)),
            )?),
            None => None,
        };
        report.cases.push(AgreementCase {
            premises: premises.clone(),
            conclusion: conclusion.clone(),
            holds_source: source.holds,
            holds_target: target.holds,
            image_refutes,
        });
    }
    Ok(report)
}
