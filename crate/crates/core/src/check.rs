//! Verification reports and the element-quantification policy.
//!
//! Several conditions (p-compatibility of morphisms, the Jacobson identity
//! for arbitrary elements) are not linear in the quantified element, so they
//! are evaluated element by element: over the whole space when it is small,
//! otherwise over the basis plus a seeded pseudo-random sample. Every check
//! records which of the two happened.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::field::PrimeField;

pub const DEFAULT_EXHAUSTIVE_LIMIT: u64 = 10_000;
pub const DEFAULT_SAMPLES: usize = 512;
pub const DEFAULT_SEED: u64 = 0x5eed_1e5e;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckConfig {
    /// Element-quantified checks enumerate the space when `p^n` is at most this.
    pub exhaustive_limit: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Only basis vectors (or basis tuples) were needed.
    Basis,
    Exhaustive,
    Sampled,
}

impl Mode {
    /// The weaker of two modes, used when combining checks.
    pub fn meet(self, other: Mode) -> Mode {
        match (self, other) {
            (Mode::Sampled, _) | (_, Mode::Sampled) => Mode::Sampled,
            (Mode::Exhaustive, _) | (_, Mode::Exhaustive) => Mode::Exhaustive,
            _ => Mode::Basis,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Basis => "basis",
            Mode::Exhaustive => "exhaustive",
            Mode::Sampled => "sampled",
        })
    }
}

/// Elements of F_p^n chosen according to a [`CheckConfig`].
#[derive(Clone, Debug)]
pub struct ElementSample {
    pub mode: Mode,
    pub elements: Vec<Vec<u32>>,
}

impl CheckConfig {
    pub fn with_seed(seed: u64) -> Self {
        CheckConfig {
            seed,
            ..Self::default()
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn is_exhaustive(&self, field: PrimeField, n: usize) -> bool {
        field.space_size(n) <= self.exhaustive_limit
    }

    /// Every element when the space is small, else basis plus random vectors.
    pub fn elements(&self, field: PrimeField, n: usize) -> ElementSample {
        if self.is_exhaustive(field, n) {
            return ElementSample {
                mode: Mode::Exhaustive,
                elements: field.all_vectors(n).collect(),
            };
        }
        let mut rng = self.rng();
        let mut elements: Vec<Vec<u32>> = (0..n).map(|i| field.unit_vec(n, i)).collect();
        for _ in 0..self.samples {
            elements.push(random_vector(&mut rng, field, n));
        }
        ElementSample {
            mode: Mode::Sampled,
            elements,
        }
    }
}

pub fn random_vector<R: Rng>(rng: &mut R, field: PrimeField, n: usize) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..field.p())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, mode: Mode) -> Self {
        Check {
            name: name.into(),
            passed: true,
            mode,
            detail: None,
        }
    }

    pub fn fail(name: impl Into<String>, mode: Mode, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: false,
            mode,
            detail: Some(detail.into()),
        }
    }

    /// Passing check when `failure` is `None`.
    pub fn from_result(name: impl Into<String>, mode: Mode, failure: Option<String>) -> Self {
        match failure {
            None => Check::pass(name, mode),
            Some(d) => Check::fail(name, mode, d),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Appends another report's checks under `prefix`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}: {}", c.name);
            self.checks.push(c);
        }
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn mode(&self) -> Mode {
        self.checks
            .iter()
            .fold(Mode::Basis, |m, c| m.meet(c.mode))
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(
                f,
                "{}: {} ({})",
                c.name,
                if c.passed { "pass" } else { "FAIL" },
                c.mode
            )?;
            if let Some(d) = &c.detail {
                write!(f, " -- {d}")?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}
