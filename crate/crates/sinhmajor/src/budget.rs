use std::time::{Duration, Instant};

use sinhmajor_core::classifier::Budget;

/// Wall-clock budget for the classifier probes.
#[derive(Clone, Copy, Debug)]
pub struct Deadline {
    end: Instant,
}

impl Deadline {
    pub fn after(limit: Duration) -> Self {
        Deadline {
            end: Instant::now() + limit,
        }
    }

    pub fn from_millis(ms: u64) -> Self {
        Self::after(Duration::from_millis(ms))
    }
}

impl Budget for Deadline {
    fn exhausted(&mut self) -> bool {
        Instant::now() >= self.end
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expires() {
        let mut d = Deadline::from_millis(0);
        assert!(d.exhausted());
        let mut d = Deadline::after(Duration::from_secs(3600));
        assert!(!d.exhausted());
    }
}
