use super::{A, B};
use crate::algebra::bits_for;
use crate::eval::{Answer, DeliveryAudit, EvalError, Evaluator, StreamEvent};
use crate::langkit::Symbol;

/// Memorized blocks allowed before the word is known to have too many
/// letter changes for `a*b*a*b*a*b*`.
const MAX_MEMORIZED: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Block {
    Empty,
    /// Every letter seen so far in the block was this one.
    Letter(Symbol),
    /// Saw a second letter; `first` is the letter of the cells seen before.
    Memorized { first: Symbol, slot: usize },
}

/// Membership in `a*b*a*b*a*b*` in `O(√n)` bits.
///
/// The word is cut into blocks of `b = ⌈√n⌉` cells. A block stays summarized
/// by one letter until a different letter arrives in it, at which point every
/// later cell of that block is stored. A seventh such block means too many
/// letter changes, so the evaluator rejects early and ignores the rest.
pub struct AbababEvaluator {
    width: usize,
    blocks: Vec<Block>,
    tables: Vec<Vec<Option<Symbol>>>,
    rejected: bool,
    audit: DeliveryAudit,
}

impl AbababEvaluator {
    pub fn new(n: usize) -> Self {
        let width = (1..).find(|b| b * b >= n).unwrap_or(1).max(1);
        AbababEvaluator {
            width,
            blocks: vec![Block::Empty; n.div_ceil(width)],
            tables: Vec::new(),
            rejected: false,
            audit: DeliveryAudit::new(n, 2),
        }
    }

    pub fn block_width(&self) -> usize {
        self.width
    }

    pub fn memorized_blocks(&self) -> usize {
        self.tables.len()
    }

    pub fn rejected_early(&self) -> bool {
        self.rejected
    }

    fn block_len(&self, i: usize) -> usize {
        let n = self.audit.length();
        (n - i * self.width).min(self.width)
    }

    fn cell(&self, i: usize, j: usize) -> Symbol {
        match self.blocks[i] {
            Block::Letter(x) => x,
            Block::Memorized { first, slot } => self.tables[slot][j].unwrap_or(first),
            Block::Empty => unreachable!("finish is audited"),
        }
    }

    /// The word rebuilt from the block summaries, or `None` after an early
    /// reject. Only meaningful once every position has been delivered.
    pub fn reconstruct(&self) -> Option<Vec<Symbol>> {
        if self.rejected {
            return None;
        }
        let mut w = Vec::with_capacity(self.audit.length());
        for i in 0..self.blocks.len() {
            w.extend((0..self.block_len(i)).map(|j| self.cell(i, j)));
        }
        Some(w)
    }
}

impl Evaluator for AbababEvaluator {
    fn len(&self) -> usize {
        self.audit.length()
    }

    fn feed(&mut self, ev: StreamEvent) -> Result<(), EvalError> {
        self.audit.record(&ev)?;
        if self.rejected {
            return Ok(());
        }
        let (i, j) = ((ev.position - 1) / self.width, (ev.position - 1) % self.width);
        match self.blocks[i] {
            Block::Empty => self.blocks[i] = Block::Letter(ev.letter),
            Block::Letter(x) if x == ev.letter => {}
            Block::Letter(x) => {
                if self.tables.len() == MAX_MEMORIZED {
                    self.rejected = true;
                    self.tables = Vec::new();
                    return Ok(());
                }
                let mut table = vec![None; self.block_len(i)];
                table[j] = Some(ev.letter);
                self.blocks[i] = Block::Memorized {
                    first: x,
                    slot: self.tables.len(),
                };
                self.tables.push(table);
            }
            Block::Memorized { slot, .. } => self.tables[slot][j] = Some(ev.letter),
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<Answer, EvalError> {
        self.audit.close()?;
        if self.rejected {
            return Ok(Answer::Verdict(false));
        }
        // phases 0..=5 alternate a, b, a, b, a, b
        let mut phase = 0usize;
        for i in 0..self.blocks.len() {
            for j in 0..self.block_len(i) {
                let want = if phase.is_multiple_of(2) { A } else { B };
                if self.cell(i, j) != want {
                    phase += 1;
                    if phase > 5 {
                        return Ok(Answer::Verdict(false));
                    }
                }
            }
        }
        Ok(Answer::Verdict(true))
    }

    /// Two bits per block state, one reject flag, and per stored table its
    /// first letter, its slot number and a presence bit plus letter per cell.
    fn state_bits(&self) -> u64 {
        let table = 1 + bits_for(MAX_MEMORIZED as u128 + 1) + 2 * self.width as u64;
        2 * self.blocks.len() as u64 + 1 + self.tables.len() as u64 * table
    }
}
