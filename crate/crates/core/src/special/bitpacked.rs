use super::interval::IntervalTables;
use super::IntervalMergeEvaluator;
use crate::algebra::Elem;
use crate::eval::{Answer, DeliveryAudit, EvalError, Evaluator, StreamEvent, Target};

/// Left endpoint of the run of set cells containing `p` once `p` is set.
///
/// Cell `q` of a block of width `b` lives at integer bit `b - q`, so cell 1
/// is the most significant data bit and the never-set cell 0 sits above it.
/// Adding `2^(b-p)` to the word with `p` set carries through the run toward
/// cell 0 and stops on the first clear cell, which the mask isolates.
#[inline]
pub fn carry_left_endpoint(v: u64, b: u32, p: u32) -> u32 {
    debug_assert!(p >= 1 && p <= b && b < 64);
    debug_assert_eq!(v >> b, 0, "safety bit must stay clear");
    let unit = 1u64 << (b - p);
    let with_p = v | unit;
    let stop = (with_p + unit) & !with_p;
    b - stop.trailing_zeros() + 1
}

/// Reference for [`carry_left_endpoint`]: walk left while cells are set.
pub fn scan_left_endpoint(v: u64, b: u32, p: u32) -> u32 {
    let mut l = p;
    while l > 1 && v >> (b - (l - 1)) & 1 == 1 {
        l -= 1;
    }
    l
}

/// Bit-packed interval merging in `Θ(n)` bits.
///
/// Positions are grouped in blocks of `b = max(1, ⌈log2 n⌉ - 1)` cells. Inside
/// a block runs are tracked in one machine word with a value slot per cell;
/// a completed block is handed as a single symbol to block-level interval
/// tables. Words shorter than 4 go straight to the block-level tables.
pub struct BitpackedEvaluator {
    inner: Inner,
}

enum Inner {
    Small(IntervalMergeEvaluator),
    Packed(Packed),
}

struct Packed {
    target: Target,
    width: u32,
    bits: Vec<u64>,
    slots: Vec<Elem>,
    blocks: IntervalTables,
    audit: DeliveryAudit,
}

impl BitpackedEvaluator {
    pub fn new(target: Target, n: usize) -> Self {
        if n < 4 {
            return BitpackedEvaluator {
                inner: Inner::Small(IntervalMergeEvaluator::new(target, n)),
            };
        }
        let log = usize::BITS - (n - 1).leading_zeros();
        let width = log.saturating_sub(1).max(1);
        let count = n.div_ceil(width as usize);
        BitpackedEvaluator {
            inner: Inner::Packed(Packed {
                width,
                bits: vec![0; count],
                slots: vec![0; count * width as usize],
                blocks: IntervalTables::new(count),
                audit: DeliveryAudit::new(n, target.alphabet_size()),
                target,
            }),
        }
    }

    /// Cells per block, or `None` below the packing threshold.
    pub fn block_width(&self) -> Option<u32> {
        match &self.inner {
            Inner::Small(_) => None,
            Inner::Packed(p) => Some(p.width),
        }
    }
}

impl Packed {
    fn block_len(&self, i: usize) -> u32 {
        let w = self.width as usize;
        (self.audit.length() - i * w).min(w) as u32
    }

    fn feed(&mut self, ev: StreamEvent) -> Result<(), EvalError> {
        self.audit.record(&ev)?;
        let b = self.width;
        let (i, j) = ((ev.position - 1) / b as usize, ((ev.position - 1) % b as usize) as u32 + 1);
        let len = self.block_len(i);
        let base = i * b as usize;
        let s = &self.target.algebra;
        let v = self.bits[i];
        let cell = |q: u32| 1u64 << (b - q);

        let mut value = self.target.image(ev.letter);
        if j < len && v & cell(j + 1) != 0 {
            value = s.mul(value, self.slots[base + j as usize]);
        }
        let mut left = j;
        if j > 1 && v & cell(j - 1) != 0 {
            left = carry_left_endpoint(v, b, j);
            value = s.mul(self.slots[base + left as usize - 1], value);
        }
        self.slots[base + left as usize - 1] = value;
        let v = v | cell(j);
        self.bits[i] = v;

        let full = ((1u64 << len) - 1) << (b - len);
        if v == full {
            let block_value = self.slots[base];
            self.blocks.complete(i + 1, block_value, |x, y| s.mul(x, y));
        }
        Ok(())
    }

    fn state_bits(&self) -> u64 {
        let count = self.bits.len() as u64;
        let elem = self.target.element_bits();
        count * (self.width as u64 + 1) + self.slots.len() as u64 * elem + self.blocks.bits(elem)
    }
}

impl Evaluator for BitpackedEvaluator {
    fn len(&self) -> usize {
        match &self.inner {
            Inner::Small(e) => e.len(),
            Inner::Packed(p) => p.audit.length(),
        }
    }

    fn feed(&mut self, ev: StreamEvent) -> Result<(), EvalError> {
        match &mut self.inner {
            Inner::Small(e) => e.feed(ev),
            Inner::Packed(p) => p.feed(ev),
        }
    }

    fn finish(&mut self) -> Result<Answer, EvalError> {
        match &mut self.inner {
            Inner::Small(e) => e.finish(),
            Inner::Packed(p) => {
                p.audit.close()?;
                p.target.answer(p.blocks.total())
            }
        }
    }

    fn state_bits(&self) -> u64 {
        match &self.inner {
            Inner::Small(e) => e.state_bits(),
            Inner::Packed(p) => p.state_bits(),
        }
    }
}
