use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::error::Exhausted;

/// Default wall-clock budget for searches.
pub const DEFAULT_BUDGET: Duration = Duration::from_secs(600);

/// Resource limits for a search. Exceeding either is reported as an error
/// carrying whatever was found so far.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub time: Option<Duration>,
    pub nodes: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            time: Some(DEFAULT_BUDGET),
            nodes: None,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            time: None,
            nodes: None,
        }
    }

    pub fn seconds(secs: f64) -> Self {
        Budget {
            time: Some(Duration::from_secs_f64(secs)),
            nodes: None,
        }
    }

    pub fn with_nodes(mut self, nodes: u64) -> Self {
        self.nodes = Some(nodes);
        self
    }
}

/// Shared, thread-safe accounting against a [`Budget`].
#[derive(Debug)]
pub(crate) struct Meter {
    budget: Budget,
    start: Instant,
    nodes: AtomicU64,
    stopped: AtomicBool,
    cause: Mutex<Option<Exhausted>>,
}

impl Meter {
    pub(crate) fn new(budget: Budget) -> Self {
        Meter {
            budget,
            start: Instant::now(),
            nodes: AtomicU64::new(0),
            stopped: AtomicBool::new(false),
            cause: Mutex::new(None),
        }
    }

    fn stop(&self, cause: Exhausted) {
        let mut slot = self.cause.lock().unwrap();
        slot.get_or_insert(cause);
        self.stopped.store(true, Ordering::Relaxed);
    }

    /// Counts one search node; returns false once the search must stop.
    #[inline]
    pub(crate) fn tick(&self) -> bool {
        if self.stopped.load(Ordering::Relaxed) {
            return false;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(cap) = self.budget.nodes {
            if n > cap {
                self.stop(Exhausted::Nodes(cap));
                return false;
            }
        }
        if n.is_multiple_of(1024) {
            if let Some(limit) = self.budget.time {
                if self.start.elapsed() > limit {
                    self.stop(Exhausted::Time(limit));
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn exhausted(&self) -> Option<Exhausted> {
        *self.cause.lock().unwrap()
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_cap_trips() {
        let meter = Meter::new(Budget::unlimited().with_nodes(3));
        assert!(meter.tick() && meter.tick() && meter.tick());
        assert!(!meter.tick());
        assert_eq!(meter.exhausted(), Some(Exhausted::Nodes(3)));
        assert!(!meter.tick());
    }
}
