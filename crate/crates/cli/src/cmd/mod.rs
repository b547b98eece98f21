pub mod explore;
pub mod frenet;
pub mod generate;
pub mod indicatrix;
pub mod iterate;
pub mod minval;
pub mod verify;

use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    /// A tolerance or validation check failed.
    Failure,
    /// The explorer found a conjecture violation.
    Finding,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Failure => 1,
            Status::Finding => 2,
        }
    }
}

pub struct Run {
    pub status: Status,
    pub tolerances: BTreeMap<String, f64>,
    pub seed: Option<u64>,
}

impl Run {
    pub fn new(status: Status) -> Self {
        Self {
            status,
            tolerances: BTreeMap::new(),
            seed: None,
        }
    }

    pub fn tolerance(mut self, name: &str, value: f64) -> Self {
        self.tolerances.insert(name.to_string(), value);
        self
    }
}
