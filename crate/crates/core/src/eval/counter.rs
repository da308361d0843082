use crate::algebra::bits_for;

/// Count compressed to `min(c, T)` and `c mod P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThresholdPeriodCounter {
    capped: u64,
    residue: u64,
    threshold: u64,
    period: u64,
}

impl ThresholdPeriodCounter {
    pub fn new(threshold: u64, period: u64) -> Self {
        assert!(period >= 1, "period must be positive");
        ThresholdPeriodCounter {
            capped: 0,
            residue: 0,
            threshold,
            period,
        }
    }

    pub fn increment(&mut self) {
        self.capped = (self.capped + 1).min(self.threshold);
        self.residue = (self.residue + 1) % self.period;
    }

    pub fn capped(&self) -> u64 {
        self.capped
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    /// Below the threshold the exact count; otherwise the least `c' >= T`
    /// congruent to the true count modulo `P`.
    pub fn reconstruct(&self) -> u64 {
        if self.capped < self.threshold {
            self.capped
        } else {
            let t = self.threshold;
            t + (self.residue + self.period - t % self.period) % self.period
        }
    }

    pub fn bits(&self) -> u64 {
        bits_for(self.threshold as u128 + 1) + bits_for(self.period as u128)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteSemigroup;

    #[test]
    fn exact_below_threshold_congruent_above() {
        let mut c = ThresholdPeriodCounter::new(7, 3);
        for count in 1..=40u64 {
            c.increment();
            let r = c.reconstruct();
            if count < 7 {
                assert_eq!(r, count);
            } else {
                assert!((7..10).contains(&r));
                assert_eq!(r % 3, count % 3);
            }
        }
        assert_eq!(c.bits(), 3 + 2);
    }

    #[test]
    fn powers_survive_compression() {
        let m = FiniteSemigroup::cyclic_group(4).direct_product(&FiniteSemigroup::trivial());
        let w = m.idempotent_power() as u64;
        let t = w + 2 * m.size() as u64 + 2;
        for x in 0..m.size() {
            let mut c = ThresholdPeriodCounter::new(t, w);
            for count in 1..=3 * t {
                c.increment();
                assert_eq!(m.pow(x, count as usize), m.pow(x, c.reconstruct() as usize));
            }
        }
    }
}
