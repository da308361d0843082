use super::A;
use crate::algebra::bits_for;
use crate::eval::{position_bits, Answer, DeliveryAudit, EvalError, Evaluator, StreamEvent};

fn sum(l: u128, r: u128) -> u128 {
    if r < l {
        0
    } else {
        (l + r) * (r - l + 1) / 2
    }
}

fn sum_sq(l: u128, r: u128) -> u128 {
    let upto = |m: u128| m * (m + 1) * (2 * m + 1) / 6;
    if r < l {
        0
    } else {
        upto(r) - upto(l - 1)
    }
}

/// Membership in `a*b*a*b*a*` from `b_min`, `b_max` and the count, sum and
/// sum of squares of the `a` positions.
///
/// Between `b_min` and `b_max` the `a`s must form one interval strictly
/// inside. Count and sum pin down the only possible interval; an integer set
/// with the same count and sum has a larger sum of squares unless it is that
/// interval.
pub struct AbabaEvaluator {
    b_min: u128,
    b_max: u128,
    n_a: u128,
    p_a: u128,
    q_a: u128,
    audit: DeliveryAudit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Candidate {
    pub l: u128,
    pub r: u128,
}

/// The unique interval with `count` elements summing to `total`, if any.
pub(crate) fn candidate_interval(count: u128, total: u128) -> Option<Candidate> {
    if count == 0 {
        return None;
    }
    let base = count * (count - 1) / 2;
    if total < base + count || !(total - base).is_multiple_of(count) {
        return None;
    }
    let l = (total - base) / count;
    Some(Candidate { l, r: l + count - 1 })
}

impl AbabaEvaluator {
    pub fn new(n: usize) -> Self {
        AbabaEvaluator {
            b_min: u128::MAX,
            b_max: 0,
            n_a: 0,
            p_a: 0,
            q_a: 0,
            audit: DeliveryAudit::new(n, 2),
        }
    }
}

impl Evaluator for AbabaEvaluator {
    fn len(&self) -> usize {
        self.audit.length()
    }

    fn feed(&mut self, ev: StreamEvent) -> Result<(), EvalError> {
        self.audit.record(&ev)?;
        let p = ev.position as u128;
        if ev.letter == A {
            self.n_a += 1;
            self.p_a += p;
            self.q_a += p * p;
        } else {
            self.b_min = self.b_min.min(p);
            self.b_max = self.b_max.max(p);
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<Answer, EvalError> {
        self.audit.close()?;
        let n = self.audit.length() as u128;
        if self.n_a == n {
            return Ok(Answer::Verdict(true));
        }
        // drop the a's forced before b_min and after b_max
        let (lo, hi) = (self.b_min, self.b_max);
        let n_a = self.n_a - (lo - 1) - (n - hi);
        let p_a = self.p_a - sum(1, lo - 1) - sum(hi + 1, n);
        let q_a = self.q_a - sum_sq(1, lo - 1) - sum_sq(hi + 1, n);
        if n_a == 0 {
            return Ok(Answer::Verdict(true));
        }
        let accept = candidate_interval(n_a, p_a)
            .is_some_and(|c| lo < c.l && c.r < hi && sum_sq(c.l, c.r) == q_a);
        Ok(Answer::Verdict(accept))
    }

    fn state_bits(&self) -> u64 {
        let n = self.audit.length() as u128;
        3 * position_bits(self.audit.length())
            + bits_for(sum(1, n) + 1)
            + bits_for(sum_sq(1, n) + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn accepts(word: &str) -> bool {
        let w: Vec<usize> = word.bytes().map(|c| (c - b'a') as usize).collect();
        let mut e = AbabaEvaluator::new(w.len());
        for p in (1..=w.len()).step_by(2).chain((2..=w.len()).step_by(2)) {
            e.feed(StreamEvent::new(w[p - 1], p, w.len())).unwrap();
        }
        e.finish().unwrap() == Answer::Verdict(true)
    }

    #[test]
    fn examples() {
        assert!(accepts("ababa"));
        assert!(!accepts("babab"));
        assert!(accepts("aaa"));
        assert!(accepts("bbb"));
        assert!(accepts("abbaaab"));
        assert!(!accepts("abababa"));
        assert!(accepts(""));
    }

    #[test]
    fn candidate_is_unique() {
        assert_eq!(candidate_interval(1, 3), Some(Candidate { l: 3, r: 3 }));
        assert_eq!(candidate_interval(2, 6), None);
        assert_eq!(candidate_interval(2, 5), Some(Candidate { l: 2, r: 3 }));
        for count in 1..20u128 {
            for total in 0..300u128 {
                let hits = (1..300u128).filter(|&l| sum(l, l + count - 1) == total).count();
                assert_eq!(hits, candidate_interval(count, total).is_some() as usize);
            }
        }
    }
}
