//! Outcome records shared by the verification routines.

use std::fmt::Debug;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub id: String,
    pub tested: usize,
    pub failures: usize,
    /// Every tuple in the bounded grid was tested (otherwise a seeded sample).
    pub exhaustive: bool,
    /// The first failing input, verbatim.
    pub witness: Option<String>,
    /// SHA-256 (truncated) of the tested inputs in order, so two reports can be
    /// compared for coverage without listing every tuple.
    pub inputs: String,
}

impl CheckOutcome {
    pub fn new(id: impl Into<String>, exhaustive: bool) -> Self {
        CheckOutcome { id: id.into(), tested: 0, failures: 0, exhaustive, witness: None, inputs: String::new() }
    }

    pub fn with_inputs<T: Debug>(mut self, items: &[T]) -> Self {
        self.inputs = inputs_digest(items);
        self
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.tested += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn summary(&self) -> String {
        let scope = if self.exhaustive { "exhaustive" } else { "sampled" };
        match &self.witness {
            None => format!("{}: {} tuples ({scope}), ok", self.id, self.tested),
            Some(w) => format!("{}: {}/{} failed ({scope}); first: {w}", self.id, self.failures, self.tested),
        }
    }
}

/// The first 8 bytes of SHA-256 over the `Debug` text of `items`, one per line, in hex.
pub fn inputs_digest<T: Debug>(items: &[T]) -> String {
    let mut h = Sha256::new();
    for item in items {
        h.update(format!("{item:?}\n").as_bytes());
    }
    h.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Runs `check` over `items` in parallel; `check` returns a witness on failure.
/// Results are folded in input order, so the outcome matches a serial run.
pub fn run_parallel<T: Sync + Debug>(
    id: &str,
    exhaustive: bool,
    items: &[T],
    check: impl Fn(&T) -> crate::Result<Option<String>> + Sync,
) -> crate::Result<CheckOutcome> {
    use rayon::prelude::*;
    let results: Vec<crate::Result<Option<String>>> = items.par_iter().map(&check).collect();
    let mut out = CheckOutcome::new(id, exhaustive).with_inputs(items);
    for r in results {
        let w = r?;
        let ok = w.is_none();
        out.record(ok, || w.unwrap_or_default());
    }
    Ok(out)
}
