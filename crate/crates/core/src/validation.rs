use alloc::string::String;
use alloc::vec::Vec;

/// Outcome of a structural check: empty `failures` means the check passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Validation {
    pub failures: Vec<String>,
}

impl Validation {
    pub fn new() -> Self {
        Validation::default()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, message: String) {
        self.failures.push(message);
    }

    pub fn merge(&mut self, other: Validation) {
        self.failures.extend(other.failures);
    }
}
