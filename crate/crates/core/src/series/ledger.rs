use std::collections::BTreeMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::numkernel::Natural;

/// Runtime monitor for the uniqueness of `m` across odd perfect numbers `p^i · m²`.
///
/// Recording a key already filed under a different number is a hard failure.
/// Check-and-insert happens under one lock, so concurrent recorders cannot both win.
#[derive(Debug, Default)]
pub struct HornfeckLedger {
    entries: Mutex<BTreeMap<Natural, Natural>>,
}

impl HornfeckLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Files `n` under key `m`. Re-recording the same pair is a no-op.
    pub fn record(&self, m: &Natural, n: &Natural) -> Result<()> {
        let mut entries = self.entries.lock().unwrap_or_else(|e| e.into_inner());
        match entries.get(m) {
            Some(existing) if existing != n => Err(Error::HornfeckViolation {
                m: m.clone(),
                existing: existing.clone(),
                incoming: n.clone(),
            }),
            Some(_) => Ok(()),
            None => {
                entries.insert(m.clone(), n.clone());
                Ok(())
            }
        }
    }

    pub fn len(&self) -> usize {
        self.entries.lock().unwrap_or_else(|e| e.into_inner()).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn entries(&self) -> BTreeMap<Natural, Natural> {
        self.entries
            .lock()
            .unwrap_or_else(|e| e.into_inner())
            .clone()
    }
}
