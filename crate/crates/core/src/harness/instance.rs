use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::extension::GkpInstance;
use crate::group::{GeneratorWord, GroupDescriptor, GroupElement};
use crate::hardness::{CnfFormula, ExponentialExpression, PolyEquationSystem};
use crate::knapsack::KnapsackInstance;
use crate::rational::Automaton;

/// Membership of `word` in the evaluated language of an acyclic automaton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AratmpInstance {
    pub group: GroupDescriptor,
    pub automaton: Automaton,
    pub word: GeneratorWord,
}

/// Knapsack over a group given by a co-word grammar; bases and target are
/// words. `group`, when present, is used to validate the grammar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocfInstance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDescriptor>,
    pub bases: Vec<GeneratorWord>,
    pub target: GeneratorWord,
}

/// `E = target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpressionInstance {
    pub expression: ExponentialExpression,
    pub target: GroupElement,
}

/// Every instance file: `{"kind": "...", ...payload}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InstanceFile {
    Ssp(KnapsackInstance),
    Kp(KnapsackInstance),
    Gkp(GkpInstance),
    Aratmp(AratmpInstance),
    Cocf(CocfInstance),
    Expression(ExpressionInstance),
    System(PolyEquationSystem),
    Cnf(CnfFormula),
}

fn check_word(group: &GroupDescriptor, w: &GeneratorWord) -> Result<(), HarnessError> {
    let n = group.generator_count() as u64;
    match w.letters().iter().find(|l| l.unsigned_abs() > n) {
        Some(l) => Err(HarnessError::InvalidInstance(format!(
            "letter {l} outside a group with {n} generators"
        ))),
        None => Ok(()),
    }
}

impl InstanceFile {
    pub fn kind(&self) -> &'static str {
        match self {
            InstanceFile::Ssp(_) => "ssp",
            InstanceFile::Kp(_) => "kp",
            InstanceFile::Gkp(_) => "gkp",
            InstanceFile::Aratmp(_) => "aratmp",
            InstanceFile::Cocf(_) => "cocf",
            InstanceFile::Expression(_) => "expression",
            InstanceFile::System(_) => "system",
            InstanceFile::Cnf(_) => "cnf",
        }
    }

    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let inst: InstanceFile =
            serde_json::from_str(text).map_err(|e| HarnessError::InvalidInstance(e.to_string()))?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        match self {
            InstanceFile::Ssp(i) | InstanceFile::Kp(i) => {
                i.group.validate()?;
                i.validate()?;
            }
            InstanceFile::Gkp(i) => {
                i.group.validate()?;
                i.validate()?;
            }
            InstanceFile::Aratmp(i) => {
                i.group.validate()?;
                i.automaton.validate()?;
                for (_, w, _) in &i.automaton.transitions {
                    check_word(&i.group, w)?;
                }
                check_word(&i.group, &i.word)?;
            }
            InstanceFile::Cocf(i) => {
                if let Some(g) = &i.group {
                    g.validate()?;
                    for w in i.bases.iter().chain(std::iter::once(&i.target)) {
                        check_word(g, w)?;
                    }
                }
            }
            InstanceFile::Expression(i) => {
                i.expression.group.validate()?;
                i.expression.validate()?;
                i.expression.group.check(&i.target)?;
            }
            InstanceFile::System(s) => s.validate()?,
            InstanceFile::Cnf(_) => {}
        }
        Ok(())
    }

    fn wrong(&self, expected: &str) -> HarnessError {
        HarnessError::WrongKind {
            expected: expected.into(),
            found: self.kind().into(),
        }
    }

    /// The knapsack instance of an `ssp` or `kp` file.
    pub fn knapsack(self) -> Result<KnapsackInstance, HarnessError> {
        match self {
            InstanceFile::Ssp(i) | InstanceFile::Kp(i) => Ok(i),
            other => Err(other.wrong("ssp or kp")),
        }
    }

    pub fn gkp(self) -> Result<GkpInstance, HarnessError> {
        match self {
            InstanceFile::Gkp(i) => Ok(i),
            other => Err(other.wrong("gkp")),
        }
    }

    pub fn aratmp(self) -> Result<AratmpInstance, HarnessError> {
        match self {
            InstanceFile::Aratmp(i) => Ok(i),
            other => Err(other.wrong("aratmp")),
        }
    }

    pub fn cocf(self) -> Result<CocfInstance, HarnessError> {
        match self {
            InstanceFile::Cocf(i) => Ok(i),
            other => Err(other.wrong("cocf")),
        }
    }

    pub fn expression(self) -> Result<ExpressionInstance, HarnessError> {
        match self {
            InstanceFile::Expression(i) => Ok(i),
            other => Err(other.wrong("expression")),
        }
    }
}
